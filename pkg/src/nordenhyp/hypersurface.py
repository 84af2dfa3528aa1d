"""Time-like hypersurface construction and its curvature apparatus.

The ambient data is an even-dimensional point with a time-like unit
normal; the induced odd-dimensional structure, the class forms of the
second fundamental tensor, the induced curvature tensor with its scalar
and special sectional curvatures, and the two routes to the canonical
curvature tensor all live here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complex_norden import ComplexNordenPoint
from .contact_norden import (
    CONSTRUCTIVE_TAGS,
    ContactNordenPoint,
    ContactSectionKind,
    F4,
    F5,
    F6,
    F11,
    F4_F5,
    classify_section,
    pi,
)
from .errors import (
    BadIndex,
    DegenerateSection,
    DegenerateTangentMetric,
    InconsistentStructure,
    NotConstructive,
    NotTimelike,
    WrongSectionKind,
)
from .multilinear import (
    DEFAULT_TOL,
    MultilinearForm,
    Tolerance,
    ricci_contract,
    scalar_contract,
    substitute_endo_first_two,
    substitute_endo_last_two,
    trace_compose,
    trace_endo,
    twist_last,
)


@dataclass(frozen=True)
class TimelikeNormalFrame:
    """Ambient point plus a unit time-like normal, g'(N, N) = -1."""

    ambient: ComplexNordenPoint
    N: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "N", np.asarray(self.N, dtype=float))

    def normal_square(self) -> float:
        return float(self.N @ self.ambient.g @ self.N)


@dataclass(frozen=True)
class InducedStructure:
    """The induced contact structure, with the embedding that produced it.

    tangent_basis has the 2n'+1... 2n'-1 tangent vectors as columns in
    ambient coordinates; point carries the structure tensors expressed in
    that basis.
    """

    t: float
    tangent_basis: np.ndarray
    point: ContactNordenPoint
    frame: TimelikeNormalFrame


@dataclass(frozen=True)
class HyperScalars:
    """Pointwise scalar data entering the class forms and curvature formulas.

    Omega is the rank-11 covector parameter as a vector, omega(.) = g(., Omega);
    it is projected onto ker eta where consumed, since the class form only
    ever sees that component.
    """

    t: float
    dt_xi: float = 0.0
    theta_xi: float = 0.0
    theta_star_xi: float = 0.0
    xi_theta_xi: float = 0.0
    xi_theta_star_xi: float = 0.0
    Omega: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if not -math.pi / 2 < self.t < math.pi / 2:
            raise ValueError(f"t = {self.t} outside (-pi/2, pi/2)")
        if self.Omega is not None:
            object.__setattr__(self, "Omega", np.asarray(self.Omega, dtype=float))

    @property
    def cos_t(self) -> float:
        return math.cos(self.t)

    @property
    def sin_t(self) -> float:
        return math.sin(self.t)

    @property
    def tan_t(self) -> float:
        return math.tan(self.t)


@dataclass(frozen=True)
class ScalarCurvatures:
    tau: float
    tau_tilde: float


def induce(frame: TimelikeNormalFrame, tol: Tolerance = DEFAULT_TOL) -> InducedStructure:
    """Build the induced contact structure from a time-like normal.

    The tangent basis is a Euclidean-orthonormal basis of the g'-orthogonal
    complement of N (the nullspace of (G N)^T, via SVD).  Orthonormalizing
    with respect to g' itself would be fragile near null vectors; the
    Euclidean basis keeps the induced Gram matrix well conditioned and
    nothing downstream needs g-orthonormality.
    """
    amb = frame.ambient
    G, J, N = amb.g, amb.J, frame.N
    nsq = frame.normal_square()
    if abs(nsq + 1.0) > tol.abs_tol + tol.rel_tol:
        raise NotTimelike(f"g'(N, N) = {nsq}, expected -1")
    JN = J @ N
    t = math.atan(float(N @ G @ JN))
    cos_t, sin_t = math.cos(t), math.sin(t)
    d_amb = amb.dim
    d = d_amb - 1

    # Tangent space = nullspace of (G N)^T; the right-singular vectors past
    # the single nonzero singular value span it orthonormally.
    GN = G @ N
    _, _, vt = np.linalg.svd(GN.reshape(1, -1))
    B = vt[1:].T
    gram = B.T @ G @ B
    if np.min(np.abs(np.linalg.eigvalsh(gram))) <= tol.abs_tol:
        raise DegenerateTangentMetric("induced metric is degenerate on the tangent space")

    g_hyp = B.T @ G @ B
    eta_hyp = cos_t * (B.T @ (G @ JN))
    correction = cos_t * N - sin_t * JN
    phi_ambient = J @ B + np.outer(correction, cos_t * (G @ JN) @ B)
    xi_ambient = sin_t * N + cos_t * JN

    coords, *_ = np.linalg.lstsq(B, np.column_stack([phi_ambient, xi_ambient]), rcond=None)
    resid = float(np.max(np.abs(B @ coords - np.column_stack([phi_ambient, xi_ambient]))))
    if resid > tol.abs_tol + tol.rel_tol * max(1.0, float(np.max(np.abs(B)))):
        raise InconsistentStructure(f"induced tensors are not tangent, residual {resid:.3e}")
    phi_hyp = coords[:, :d]
    xi_hyp = coords[:, d]
    point = ContactNordenPoint((d - 1) // 2, g_hyp, phi_hyp, xi_hyp, eta_hyp)
    return InducedStructure(t=t, tangent_basis=B, point=point, frame=frame)


def pi_relations_residual(structure: InducedStructure) -> float:
    """Residual of the ambient/hypersurface tensor identities.

    Checks g'(y, Jz) = g(y, phi z) + tan t eta(y) eta(z) together with
    pi'_1 = pi_1, pi'_2 = pi_2 + tan t pi_5 and pi'_3 = pi_3 - tan t pi_4,
    comparing pulled-back ambient tensors with the induced ones.
    """
    from .complex_norden import pi_prime

    amb = structure.frame.ambient
    B = structure.tangent_basis
    p = structure.point
    tan_t = math.tan(structure.t)

    res = []
    metric_rel = B.T @ (amb.g @ amb.J) @ B
    res.append(float(np.max(np.abs(metric_rel - (p.g_phi + tan_t * np.outer(p.eta, p.eta))))))

    def pull(form: MultilinearForm) -> np.ndarray:
        return np.einsum("ijkl,ia,jb,kc,ld->abcd", form.entries, B, B, B, B)

    pis = {i: pi(i, p).entries for i in range(1, 6)}
    res.append(float(np.max(np.abs(pull(pi_prime(1, amb)) - pis[1]))))
    res.append(float(np.max(np.abs(pull(pi_prime(2, amb)) - (pis[2] + tan_t * pis[5])))))
    res.append(float(np.max(np.abs(pull(pi_prime(3, amb)) - (pis[3] - tan_t * pis[4])))))
    return max(res)


def _omega_part(point: ContactNordenPoint, scalars: HyperScalars) -> np.ndarray:
    Omega = scalars.Omega if scalars.Omega is not None else np.zeros(point.dim)
    # only the ker-eta component of Omega enters the class form
    return Omega - float(point.eta @ Omega) * point.xi


def shape_from_class(
    point: ContactNordenPoint,
    tag: str,
    scalars: HyperScalars,
    tol: Tolerance = DEFAULT_TOL,
) -> np.ndarray:
    """Second fundamental tensor of a constructive class, as a matrix.

    The g-self-adjointness of the result is re-verified as a postcondition.
    """
    if tag == F6:
        raise NotConstructive("F6 constrains A but has no closed form; see validate_F6_shape")
    if tag not in CONSTRUCTIVE_TAGS:
        raise BadIndex(f"unknown class tag {tag!r}")
    cos_t, sin_t = scalars.cos_t, scalars.sin_t
    phi, phi2 = point.phi, point.phi @ point.phi
    two_n = 2 * point.n

    A = -(scalars.dt_xi / (2 * cos_t)) * np.outer(point.xi, point.eta)
    if tag in (F4, F4_F5):
        A -= (scalars.theta_xi / two_n) * (sin_t * phi - cos_t * phi2)
    if tag in (F5, F4_F5):
        A += (scalars.theta_star_xi / two_n) * (cos_t * phi + sin_t * phi2)
    if tag == F11:
        Omega = _omega_part(point, scalars)
        omega_cov = point.g @ Omega
        A -= cos_t * (np.outer(Omega, point.eta) + np.outer(point.xi, omega_cov))
        A -= sin_t * (np.outer(phi @ Omega, point.eta) + np.outer(point.xi, phi.T @ omega_cov))

    sym_res = float(np.max(np.abs(point.g @ A - A.T @ point.g)))
    if sym_res > tol.abs_tol + tol.rel_tol * max(1.0, float(np.max(np.abs(A)))):
        raise InconsistentStructure(f"shape operator not g-self-adjoint, residual {sym_res:.3e}")
    return A


def validate_F6_shape(
    point: ContactNordenPoint, A: np.ndarray, scalars: HyperScalars
) -> float:
    """Max residual of the three F6 conditions on A."""
    phi = point.phi
    res = [
        float(np.max(np.abs(A @ phi - phi @ A))),
        abs(trace_endo(A) - scalars.dt_xi / (2 * scalars.cos_t)),
        abs(trace_compose(A, phi)),
    ]
    return max(res)


def F_from_A(point: ContactNordenPoint, A: np.ndarray, t: float) -> MultilinearForm:
    """Structure tensor induced by the shape operator at hypersurface angle t."""
    cos_t, sin_t = math.cos(t), math.sin(t)
    g, eta = point.g, point.eta
    AgP = A.T @ point.g @ point.phi  # [i, j] = g(A e_i, phi e_j)
    Ag = A.T @ g  # [i, j] = g(A e_i, e_j)
    eta_A = A.T @ eta  # eta(A e_i)
    ent = sin_t * (np.einsum("ij,k->ijk", AgP, eta) + np.einsum("ik,j->ijk", AgP, eta))
    ent -= cos_t * (
        np.einsum("ij,k->ijk", Ag, eta)
        + np.einsum("ik,j->ijk", Ag, eta)
        - 2.0 * np.einsum("i,j,k->ijk", eta_A, eta, eta)
    )
    return MultilinearForm(ent)


def gauss_induced_R(
    point: ContactNordenPoint,
    A: np.ndarray,
    scalars: HyperScalars,
    nu: float,
    nu_tilde: float,
) -> MultilinearForm:
    """Induced curvature of a hypersurface of the constant-curvature model."""
    tan_t = scalars.tan_t
    p1, p2, p3, p4, p5 = (pi(i, point) for i in range(1, 6))
    R = nu * (p1 - p2 - tan_t * p5) + nu_tilde * (p3 - tan_t * p4)
    return R - substitute_endo_first_two(p1, A)


def gauss_identities_residual(
    point: ContactNordenPoint,
    R: MultilinearForm,
    A: np.ndarray,
    scalars: HyperScalars,
    nu: float,
    nu_tilde: float,
) -> float:
    """Residual of the two companion curvature identities of the construction."""
    tan_t = scalars.tan_t
    phi = point.phi
    p1, p2, p3, p4, p5 = (pi(i, point) for i in range(1, 6))

    lhs = substitute_endo_last_two(R, phi)
    rhs = -(R - nu * (p4 - tan_t * p5) + nu_tilde * (p5 + tan_t * p4))
    rhs = rhs - substitute_endo_first_two(p1 + p2, A)
    res1 = (lhs - rhs).max_norm

    def raise_xi(form: MultilinearForm) -> np.ndarray:
        w = np.einsum("ijal,a->ijl", form.entries, point.xi)
        return np.einsum("ml,ijl->ijm", point.g_inv, w)

    lhs2 = raise_xi(R)
    rhs_form = nu * (p4 - tan_t * p5) - nu_tilde * (p5 + tan_t * p4)
    rhs2 = raise_xi(rhs_form) - raise_xi(substitute_endo_first_two(p1, A))
    res2 = float(np.max(np.abs(lhs2 - rhs2)))
    return max(res1, res2)


def codazzi_rhs(
    point: ContactNordenPoint, nu: float, nu_tilde: float, t: float, x, y
) -> np.ndarray:
    """Right-hand side of the derivative identity for A, as a tangent vector.

    The left side is a covariant derivative along the manifold and is out
    of scope; this side exists so the main-class relations can be checked
    through it.
    """
    cos_t = math.cos(t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    form = nu * pi(5, point) + nu_tilde * pi(4, point)
    w = np.einsum("ijal,i,j,a->l", form.entries, x, y, point.xi)
    return (point.g_inv @ w) / cos_t


def scalar_curvatures(R: MultilinearForm, point: ContactNordenPoint) -> ScalarCurvatures:
    """tau and its twisted companion by double contraction."""
    g_inv = point.g_inv
    tau = scalar_contract(ricci_contract(R, g_inv), g_inv)
    R_twist = twist_last(R, point.phi)
    tau_tilde = scalar_contract(ricci_contract(R_twist, g_inv), g_inv)
    return ScalarCurvatures(tau=tau, tau_tilde=tau_tilde)


def closed_form_scalars(
    A: np.ndarray,
    scalars: HyperScalars,
    nu: float,
    nu_tilde: float,
    point: ContactNordenPoint,
) -> ScalarCurvatures:
    """tau and tau~ through the trace closed forms."""
    n = point.n
    tan_t = scalars.tan_t
    phi = point.phi
    tr_A = trace_endo(A)
    tr_A2 = trace_compose(A, A)
    tr_Aphi = trace_compose(A, phi)
    tr_A2phi = float(np.trace(A @ A @ phi))
    tau = 4 * n**2 * nu - 4 * n * nu_tilde * tan_t - tr_A**2 + tr_A2
    # sign of the nu tan t term is pinned by the contraction: the twisted
    # traces of the five generator tensors are (0, 0, 2n(2n-1), 0, -2n)
    tau_tilde = (
        2 * n * nu * tan_t + 2 * n * (2 * n - 1) * nu_tilde - tr_A * tr_Aphi + tr_A2phi
    )
    return ScalarCurvatures(tau=tau, tau_tilde=tau_tilde)


def _pi1_vectors(g: np.ndarray, a, b, c, d) -> float:
    return float((b @ g @ c) * (a @ g @ d) - (a @ g @ c) * (b @ g @ d))


def special_sectional(
    point: ContactNordenPoint,
    A: np.ndarray,
    scalars: HyperScalars,
    nu: float,
    nu_tilde: float,
    kind: ContactSectionKind,
    x,
    y=None,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Closed-form sectional curvature for the three special section kinds.

    For XI_SECTION the plane is {xi, x}; for PHI_HOLOMORPHIC it is
    {phi x, phi^2 x} built from x; for TOTALLY_REAL both x and y are
    required and must span a totally real plane in ker eta.
    """
    g, phi, xi = point.g, point.phi, point.xi
    x = np.asarray(x, dtype=float)
    tan_t = scalars.tan_t

    if kind == ContactSectionKind.XI_SECTION:
        denom = float(x @ g @ x) - float(point.eta @ x) ** 2
        if abs(denom) <= tol.abs_tol:
            raise DegenerateSection("g(x, x) - eta(x)^2 within tolerance of zero")
        return (
            nu
            - nu_tilde * tan_t
            - (nu * tan_t + nu_tilde) * float(x @ point.g_phi @ x) / denom
            - _pi1_vectors(g, A @ xi, A @ x, x, xi) / denom
        )
    if kind == ContactSectionKind.PHI_HOLOMORPHIC:
        px = phi @ x
        p2x = phi @ px
        denom = _pi1_vectors(g, px, p2x, p2x, px)
        if abs(denom) <= tol.abs_tol:
            raise DegenerateSection("phi-holomorphic area factor within tolerance of zero")
        return -_pi1_vectors(g, A @ px, A @ p2x, p2x, px) / denom
    if kind == ContactSectionKind.TOTALLY_REAL:
        if y is None:
            raise WrongSectionKind("totally real sections need both x and y")
        y = np.asarray(y, dtype=float)
        if classify_section(point, x, y, tol) != ContactSectionKind.TOTALLY_REAL:
            raise WrongSectionKind("{x, y} is not a totally real section")
        if max(abs(float(point.eta @ x)), abs(float(point.eta @ y))) > tol.abs_tol:
            raise WrongSectionKind("totally real section must lie in ker eta")
        denom = _pi1_vectors(g, x, y, y, x)
        if abs(denom) <= tol.abs_tol:
            raise DegenerateSection("totally real area factor within tolerance of zero")
        return nu - _pi1_vectors(g, A @ x, A @ y, y, x) / denom
    raise WrongSectionKind(f"no closed form for section kind {kind}")


def canonical_K_from_R(
    point: ContactNordenPoint, R: MultilinearForm, A: np.ndarray, t: float
) -> MultilinearForm:
    """Canonical curvature assembled from R, A and the angle t."""
    cos_t, sin_t = math.cos(t), math.sin(t)
    phi = point.phi
    phi2 = phi @ phi
    p1, p2, p3, p4, p5 = (pi(i, point) for i in range(1, 6))
    K = substitute_endo_last_two(R, phi2)
    K = K + substitute_endo_last_two(substitute_endo_first_two(p1, A), phi)
    mix = sin_t * (sin_t * (p1 - p2 - p4) - cos_t * (p3 + p5))
    return K + substitute_endo_first_two(mix, A)


def canonical_K_model(
    point: ContactNordenPoint,
    A: np.ndarray,
    scalars: HyperScalars,
    nu: float,
    nu_tilde: float,
) -> tuple[MultilinearForm, float, float]:
    """Canonical curvature and its scalars through the model closed forms."""
    n = point.n
    cos_t, sin_t = scalars.cos_t, scalars.sin_t
    phi, xi, eta, g = point.phi, point.xi, point.eta, point.g
    p1, p2, p3, p4, p5 = (pi(i, point) for i in range(1, 6))
    kaehler_block = p1 - p2 - p4
    twisted_block = p3 + p5
    K = nu * kaehler_block + nu_tilde * twisted_block
    K = K - cos_t * substitute_endo_first_two(
        cos_t * kaehler_block + sin_t * twisted_block, A
    )

    tr_A = trace_endo(A)
    tr_A2 = trace_compose(A, A)
    tr_Aphi = trace_compose(A, phi)
    tr_Aphi2 = float(np.trace(A @ phi @ A @ phi))
    tr_A2phi = float(np.trace(A @ A @ phi))
    Axi = A @ xi
    eta_Axi = float(eta @ Axi)
    a = (
        tr_A**2
        - tr_A2
        - tr_Aphi**2
        + tr_Aphi2
        - 2 * eta_Axi * tr_A
        + 2 * float(Axi @ g @ Axi)
    )
    b = tr_A2phi - tr_A * tr_Aphi + eta_Axi * tr_Aphi - float((phi @ Axi) @ g @ Axi)
    tau_K = 4 * n * (n - 1) * nu - cos_t * (a * cos_t + 2 * b * sin_t)
    tau_K_tilde = 4 * n * (n - 1) * nu_tilde - cos_t * (a * sin_t - 2 * b * cos_t)
    return K, tau_K, tau_K_tilde
