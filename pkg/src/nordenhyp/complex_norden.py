"""Even-dimensional ambient structures: an anti-compatible complex structure J
over an indefinite metric, the pi'-tensor family, the constant-curvature
model and its sectional curvatures.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BadIndex, DegenerateSection, DependentVectors
from .multilinear import (
    DEFAULT_TOL,
    MultilinearForm,
    Tolerance,
    invert_metric,
    signature,
    twist_last,
)
from .report import Check, ValidationReport


def span_residual(basis_cols: np.ndarray, v: np.ndarray) -> float:
    """Max-norm least-squares distance from v to the span of the columns."""
    coef, *_ = np.linalg.lstsq(basis_cols, v, rcond=None)
    return float(np.max(np.abs(basis_cols @ coef - v)))


class SectionKind(enum.Enum):
    HOLOMORPHIC = "holomorphic"
    TOTALLY_REAL = "totally_real"
    GENERIC = "generic"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ComplexNordenPoint:
    """Tangent-space data (g, J) of dimension 2 * n_prime.

    g is anti-compatible with J: g(Jx, Jy) = -g(x, y), which forces the
    neutral signature (n_prime, n_prime).
    """

    n_prime: int
    g: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        d = 2 * self.n_prime
        g = np.asarray(self.g, dtype=float)
        J = np.asarray(self.J, dtype=float)
        if g.shape != (d, d) or J.shape != (d, d):
            raise ValueError(f"g and J must be {d}x{d}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "J", J)

    @property
    def dim(self) -> int:
        return 2 * self.n_prime

    @cached_property
    def g_inv(self) -> np.ndarray:
        return invert_metric(self.g)

    @cached_property
    def gJ(self) -> np.ndarray:
        """Matrix of g(x, Jy); symmetric for a valid point."""
        return self.g @ self.J

    @classmethod
    def standard(cls, n_prime: int) -> "ComplexNordenPoint":
        """Flat model: basis {a_1..a_n', Ja_1..Ja_n'}, diagonal metric."""
        d = 2 * n_prime
        g = np.diag(np.concatenate([np.ones(n_prime), -np.ones(n_prime)]))
        J = np.zeros((d, d))
        for i in range(n_prime):
            J[n_prime + i, i] = 1.0
            J[i, n_prime + i] = -1.0
        return cls(n_prime, g, J)

    def congruence(self, S: np.ndarray) -> "ComplexNordenPoint":
        """Re-express the structure in the basis whose vectors are the columns of S."""
        S = np.asarray(S, dtype=float)
        S_inv = np.linalg.inv(S)
        return ComplexNordenPoint(self.n_prime, S.T @ self.g @ S, S_inv @ self.J @ S)


@dataclass(frozen=True)
class AmbientModel:
    """Constant totally real sectional curvatures attached to a point."""

    point: ComplexNordenPoint
    nu_prime: float
    nu_tilde_prime: float


def validate_complex_norden(point: ComplexNordenPoint, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    """Axiom residuals: J^2 = -Id, anti-compatibility, symmetry, signature."""
    d = point.dim
    g, J = point.g, point.J
    checks = [
        Check("J_squared", float(np.max(np.abs(J @ J + np.eye(d)))), tol.abs_tol),
        Check("norden_compatibility", float(np.max(np.abs(J.T @ g @ J + g))), tol.abs_tol),
        Check("metric_symmetric", float(np.max(np.abs(g - g.T))), tol.abs_tol),
    ]
    try:
        p, q = signature(g, tol)
        sig_res = 0.0 if (p, q) == (point.n_prime, point.n_prime) else 1.0
    except Exception:
        sig_res = 1.0
    checks.append(Check("signature_neutral", sig_res, 0.5))
    return ValidationReport(tuple(checks))


def associated_metric_prime(point: ComplexNordenPoint) -> np.ndarray:
    """The twin metric g~'(x, y) = g'(x, Jy)."""
    m = point.gJ
    return 0.5 * (m + m.T)


def pi_prime(i: int, point: ComplexNordenPoint) -> MultilinearForm:
    """The three curvature-like building blocks over (g', J)."""
    if i not in (1, 2, 3):
        raise BadIndex(f"pi_prime index must be 1..3, got {i}")
    g = point.g
    gJ = associated_metric_prime(point)
    if i == 1:
        ent = np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g)
    elif i == 2:
        ent = np.einsum("jk,il->ijkl", gJ, gJ) - np.einsum("ik,jl->ijkl", gJ, gJ)
    else:
        ent = (
            -np.einsum("jk,il->ijkl", g, gJ)
            + np.einsum("ik,jl->ijkl", g, gJ)
            - np.einsum("jk,il->ijkl", gJ, g)
            + np.einsum("ik,jl->ijkl", gJ, g)
        )
    return MultilinearForm(ent)


def model_curvature(model: AmbientModel) -> MultilinearForm:
    """Curvature of the constant totally-real-curvature model."""
    p = model.point
    return (
        model.nu_prime * (pi_prime(1, p) - pi_prime(2, p))
        + model.nu_tilde_prime * pi_prime(3, p)
    )


def associated_curvature(R: MultilinearForm, J: np.ndarray) -> MultilinearForm:
    """R~(x, y, z, u) = R(x, y, z, Ju)."""
    return twist_last(R, J)


def sectional_curvature_prime(
    R: MultilinearForm, g: np.ndarray, x, y, tol: Tolerance = DEFAULT_TOL
) -> float:
    """R(x, y, y, x) normalized by the plane's metric area factor."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    denom = (y @ g @ y) * (x @ g @ x) - (x @ g @ y) ** 2
    if abs(denom) <= tol.abs_tol:
        raise DegenerateSection(f"area factor {denom!r} within tolerance of zero")
    return R.evaluate(x, y, y, x) / denom


def classify_section_prime(
    point: ComplexNordenPoint, x, y, tol: Tolerance = DEFAULT_TOL
) -> SectionKind:
    """Classify the plane span{x, y} relative to J.

    Boundary cases resolve to GENERIC: both membership tests use absolute
    residual thresholds so a nearly-special plane is never promoted.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    basis = np.column_stack([x, y])
    if np.linalg.matrix_rank(basis, tol=1e-12) < 2:
        raise DependentVectors("section basis is linearly dependent")
    g, J = point.g, point.J
    denom = (y @ g @ y) * (x @ g @ x) - (x @ g @ y) ** 2
    if abs(denom) <= tol.abs_tol:
        return SectionKind.DEGENERATE
    scale = max(1.0, float(np.max(np.abs(basis))))
    if max(span_residual(basis, J @ x), span_residual(basis, J @ y)) <= tol.abs_tol * scale:
        return SectionKind.HOLOMORPHIC
    pairings = [abs(float(a @ point.gJ @ b)) for a in (x, y) for b in (x, y)]
    if max(pairings) <= tol.abs_tol * scale * scale:
        return SectionKind.TOTALLY_REAL
    return SectionKind.GENERIC
