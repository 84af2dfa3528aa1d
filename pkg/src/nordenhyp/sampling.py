"""Seeded random instances for the property batteries.

All randomness flows through numpy's PCG64 generator so identical seeds
reproduce identical reports across platforms.  Valid structures are built
by congruence from the standard models rather than rejection sampling:
the axioms are basis-independent, so a well-conditioned change of basis
keeps them exact.
"""
from __future__ import annotations

import numpy as np

from .complex_norden import ComplexNordenPoint
from .contact_norden import ContactNordenPoint
from .hypersurface import HyperScalars, TimelikeNormalFrame
from .main_class import MainClassData


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_congruence(gen: np.random.Generator, d: int, scale: float = 0.3) -> np.ndarray:
    """Well-conditioned random basis change: identity plus a small perturbation."""
    return np.eye(d) + scale * gen.uniform(-1.0, 1.0, size=(d, d))


def random_contact_point(
    gen: np.random.Generator, n: int, fault: float = 0.0
) -> ContactNordenPoint:
    """Congruence-randomized standard contact point; fault perturbs phi."""
    point = ContactNordenPoint.standard(n).congruence(random_congruence(gen, 2 * n + 1))
    if fault:
        phi = point.phi.copy()
        i, j = gen.integers(0, point.dim, size=2)
        phi[i, j] += fault
        point = ContactNordenPoint(point.n, point.g, phi, point.xi, point.eta)
    return point


def random_complex_point(
    gen: np.random.Generator, n_prime: int, fault: float = 0.0
) -> ComplexNordenPoint:
    point = ComplexNordenPoint.standard(n_prime).congruence(
        random_congruence(gen, 2 * n_prime)
    )
    if fault:
        J = point.J.copy()
        i, j = gen.integers(0, point.dim, size=2)
        J[i, j] += fault
        point = ComplexNordenPoint(point.n_prime, point.g, J)
    return point


def random_timelike_frame(
    gen: np.random.Generator, n_prime: int, fault: float = 0.0
) -> TimelikeNormalFrame:
    """Standard flat ambient with a random time-like unit normal.

    Mixes a sinh-parameterized {a_i, Ja_i}-plane normal with a small
    random tangential component, then renormalizes; resamples until the
    square is safely negative.
    """
    ambient = ComplexNordenPoint.standard(n_prime)
    g = ambient.g
    while True:
        i = int(gen.integers(0, n_prime))
        s = gen.uniform(-1.2, 1.2)
        v = np.zeros(ambient.dim)
        v[i] = np.sinh(s)
        v[n_prime + i] = np.cosh(s)
        v = v + 0.3 * gen.uniform(-1.0, 1.0, size=ambient.dim)
        sq = float(v @ g @ v)
        if sq < -0.1:
            break
    N = v / np.sqrt(-sq)
    if fault:
        N = N + fault
    return TimelikeNormalFrame(ambient=ambient, N=N)


def random_hyper_scalars(
    gen: np.random.Generator,
    point: ContactNordenPoint | None = None,
    with_omega: bool = False,
    derivative_free: bool = False,
) -> HyperScalars:
    t = float(gen.uniform(-1.2, 1.2))
    Omega = None
    if with_omega and point is not None:
        Omega = gen.uniform(-1.0, 1.0, size=point.dim)
        Omega = Omega - float(point.eta @ Omega) * point.xi
    def deriv() -> float:
        return 0.0 if derivative_free else float(gen.uniform(-2.0, 2.0))

    return HyperScalars(
        t=t,
        dt_xi=deriv(),
        theta_xi=float(gen.uniform(-2.0, 2.0)),
        theta_star_xi=float(gen.uniform(-2.0, 2.0)),
        xi_theta_xi=deriv(),
        xi_theta_star_xi=deriv(),
        Omega=Omega,
    )


def random_main_class_data(
    gen: np.random.Generator, n: int, fault: float = 0.0, derivative_free: bool = False
) -> MainClassData:
    point = random_contact_point(gen, n, fault=fault)
    scalars = random_hyper_scalars(gen, point, derivative_free=derivative_free)
    return MainClassData(point=point, scalars=scalars)


def random_nu_pair(gen: np.random.Generator) -> tuple[float, float]:
    return float(gen.uniform(-2.0, 2.0)), float(gen.uniform(-2.0, 2.0))


def random_totally_real_pair(
    gen: np.random.Generator, n_prime: int
) -> tuple[np.ndarray, np.ndarray]:
    """A random totally real plane of the standard flat ambient model.

    Drawn from the span of the "real" half-basis, where every J-pairing
    vanishes identically; rejection keeps the plane nondegenerate.
    """
    ambient = ComplexNordenPoint.standard(n_prime)
    g = ambient.g
    while True:
        coeffs = gen.uniform(-1.0, 1.0, size=(n_prime, 2))
        x = np.zeros(ambient.dim)
        y = np.zeros(ambient.dim)
        x[:n_prime] = coeffs[:, 0]
        y[:n_prime] = coeffs[:, 1]
        area = (y @ g @ y) * (x @ g @ x) - (x @ g @ y) ** 2
        if abs(area) > 0.05:
            return x, y
