"""Dense multilinear algebra over a fixed basis with an indefinite metric.

Covariant tensors of rank 1..4 are stored as dense numpy arrays indexed
against a fixed basis.  Dimensions stay small (d <= 9), so nothing here
tries to be clever about memory or sparsity; everything is einsum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch, DegenerateMetric, DimensionMismatch

MAX_DIM = 9


@dataclass(frozen=True)
class Tolerance:
    """Mixed absolute/relative comparison thresholds.

    Equality is |a - b| <= abs_tol + rel_tol * max(|a|, |b|).
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")

    def close(self, a, b) -> bool:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        bound = self.abs_tol + self.rel_tol * np.maximum(np.abs(a), np.abs(b))
        return bool(np.all(np.abs(a - b) <= bound))

    def ok(self, residual: float, scale: float = 1.0) -> bool:
        """Whether a residual is negligible at the given scale."""
        return abs(residual) <= self.abs_tol + self.rel_tol * abs(scale)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class MultilinearForm:
    """Dense covariant tensor of rank 1..4 over a fixed basis."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim < 1 or arr.ndim > 4:
            raise ArityMismatch(f"rank must be 1..4, got {arr.ndim}")
        if len(set(arr.shape)) != 1:
            raise DimensionMismatch(f"all axes must agree, got shape {arr.shape}")
        if arr.shape[0] > MAX_DIM:
            raise DimensionMismatch(f"dimension {arr.shape[0]} exceeds the supported {MAX_DIM}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "entries", arr)

    @property
    def rank(self) -> int:
        return self.entries.ndim

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def max_norm(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def evaluate(self, *args) -> float:
        """Evaluate on rank-many vectors."""
        if len(args) != self.rank:
            raise ArityMismatch(f"expected {self.rank} vectors, got {len(args)}")
        out = self.entries
        for v in args:
            v = np.asarray(v, dtype=float)
            if v.shape != (self.dim,):
                raise DimensionMismatch(f"vector of length {v.shape} against dimension {self.dim}")
            out = np.tensordot(out, v, axes=([0], [0]))
        return float(out)

    __call__ = evaluate

    def __add__(self, other: "MultilinearForm") -> "MultilinearForm":
        return MultilinearForm(self.entries + other.entries)

    def __sub__(self, other: "MultilinearForm") -> "MultilinearForm":
        return MultilinearForm(self.entries - other.entries)

    def __neg__(self) -> "MultilinearForm":
        return MultilinearForm(-self.entries)

    def __mul__(self, c: float) -> "MultilinearForm":
        return MultilinearForm(self.entries * float(c))

    __rmul__ = __mul__


def _as_square(m, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def check_metric(g, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Validate symmetry and nondegeneracy of a metric candidate."""
    g = _as_square(g, "metric")
    if np.max(np.abs(g - g.T)) > tol.abs_tol + tol.rel_tol * np.max(np.abs(g)):
        raise DegenerateMetric("metric is not symmetric")
    eig = np.linalg.eigvalsh(0.5 * (g + g.T))
    if np.min(np.abs(eig)) <= tol.abs_tol:
        raise DegenerateMetric("metric has an eigenvalue inside the zero band")
    return g


def invert_metric(g, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a symmetric nondegenerate bilinear form."""
    g = check_metric(g, tol)
    g_inv = np.linalg.inv(g)
    return 0.5 * (g_inv + g_inv.T)


def signature(g, tol: Tolerance = DEFAULT_TOL) -> tuple[int, int]:
    """Counts (positive, negative) of eigenvalues; errors on the zero band."""
    g = check_metric(g, tol)
    eig = np.linalg.eigvalsh(0.5 * (g + g.T))
    return int(np.sum(eig > 0)), int(np.sum(eig < 0))


def ricci_contract(T: MultilinearForm, g_inv) -> MultilinearForm:
    """rho(y, z) = g^{ij} T(e_i, y, z, e_j)."""
    if T.rank != 4:
        raise ArityMismatch(f"ricci_contract needs rank 4, got {T.rank}")
    g_inv = _as_square(g_inv, "inverse metric")
    return MultilinearForm(np.einsum("il,ijkl->jk", g_inv, T.entries))


def scalar_contract(rho: MultilinearForm, g_inv) -> float:
    """Full trace g^{ij} rho(e_i, e_j) of a rank-2 form."""
    if rho.rank != 2:
        raise ArityMismatch(f"scalar_contract needs rank 2, got {rho.rank}")
    g_inv = _as_square(g_inv, "inverse metric")
    return float(np.einsum("ij,ij->", g_inv, rho.entries))


def trace_endo(A) -> float:
    return float(np.trace(_as_square(A, "endomorphism")))


def trace_compose(A, B) -> float:
    """trace(A o B) for endomorphisms as matrices."""
    A = _as_square(A, "endomorphism")
    B = _as_square(B, "endomorphism")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    return float(np.trace(A @ B))


def substitute_endo_first_two(T: MultilinearForm, A) -> MultilinearForm:
    """T(Ax, Ay, z, u) as a rank-4 form."""
    A = _as_square(A)
    return MultilinearForm(np.einsum("abkl,ai,bj->ijkl", T.entries, A, A))


def substitute_endo_last_two(T: MultilinearForm, B) -> MultilinearForm:
    """T(x, y, Bz, Bu) as a rank-4 form."""
    B = _as_square(B)
    return MultilinearForm(np.einsum("ijab,ak,bl->ijkl", T.entries, B, B))


def twist_last(T: MultilinearForm, B) -> MultilinearForm:
    """T(x, y, z, Bu) as a rank-4 form."""
    B = _as_square(B)
    return MultilinearForm(np.einsum("ijka,al->ijkl", T.entries, B))
