import numpy as np
import pytest

from nordenhyp.complex_norden import (
    AmbientModel,
    ComplexNordenPoint,
    SectionKind,
    associated_curvature,
    associated_metric_prime,
    classify_section_prime,
    model_curvature,
    pi_prime,
    sectional_curvature_prime,
    validate_complex_norden,
)
from nordenhyp.contact_norden import is_curvature_like
from nordenhyp.errors import BadIndex, DegenerateSection, DependentVectors
from nordenhyp.sampling import random_complex_point, random_totally_real_pair


@pytest.mark.parametrize("n_prime", [1, 2, 3, 4])
def test_standard_point_valid(n_prime):
    rep = validate_complex_norden(ComplexNordenPoint.standard(n_prime))
    assert rep.passed, rep.render_text()


def test_congruence_preserves_axioms(gen):
    for n_prime in (2, 3):
        p = random_complex_point(gen, n_prime)
        assert validate_complex_norden(p).passed


def test_perturbed_J_fails(gen):
    p = random_complex_point(gen, 2, fault=1e-3)
    rep = validate_complex_norden(p)
    assert not rep.passed
    assert rep["J_squared"].residual > 1e-4 or rep["norden_compatibility"].residual > 1e-4


def test_associated_metric_symmetric(gen):
    p = random_complex_point(gen, 3)
    m = associated_metric_prime(p)
    assert np.allclose(m, m.T)
    x, y = (gen.uniform(-1, 1, size=p.dim) for _ in range(2))
    assert x @ m @ y == pytest.approx(float(x @ p.g @ (p.J @ y)))


def test_pi_prime_index_guard(gen):
    with pytest.raises(BadIndex):
        pi_prime(4, random_complex_point(gen, 2))


def test_pi_prime_curvature_like(gen):
    p = random_complex_point(gen, 2)
    for i in (1, 2, 3):
        assert is_curvature_like(pi_prime(i, p)) < 1e-12


class TestModelCurvature:
    def setup_method(self):
        self.p = ComplexNordenPoint.standard(3)
        self.model = AmbientModel(point=self.p, nu_prime=3.0, nu_tilde_prime=-1.0)
        self.R = model_curvature(self.model)
        self.Rt = associated_curvature(self.R, self.p.J)

    def test_totally_real_sections(self, gen):
        for _ in range(25):
            x, y = random_totally_real_pair(gen, 3)
            assert sectional_curvature_prime(self.R, self.p.g, x, y) == pytest.approx(3.0)
            assert sectional_curvature_prime(self.Rt, self.p.g, x, y) == pytest.approx(-1.0)

    def test_holomorphic_sections_flat(self, gen):
        hits = 0
        for _ in range(25):
            v = gen.uniform(-1, 1, size=self.p.dim)
            try:
                k = sectional_curvature_prime(self.R, self.p.g, v, self.p.J @ v)
            except DegenerateSection:
                continue
            hits += 1
            assert abs(k) < 1e-10
        assert hits > 0

    def test_degenerate_section_raises(self):
        x = np.zeros(6)
        x[0], x[3] = 1.0, 1.0  # null vector of the standard metric
        y = np.zeros(6)
        y[1] = 1.0  # orthogonal to x, so the area factor vanishes
        with pytest.raises(DegenerateSection):
            sectional_curvature_prime(self.R, self.p.g, x, y)


class TestClassify:
    def setup_method(self):
        self.p = ComplexNordenPoint.standard(2)

    def test_holomorphic(self, gen):
        v = gen.uniform(-1, 1, size=4)
        assert classify_section_prime(self.p, v, self.p.J @ v) == SectionKind.HOLOMORPHIC

    def test_totally_real(self):
        x = np.array([1.0, 0, 0, 0])
        y = np.array([0, 1.0, 0, 0])
        assert classify_section_prime(self.p, x, y) == SectionKind.TOTALLY_REAL

    def test_generic(self):
        x = np.array([1.0, 0, 0, 0])
        y = np.array([0, 1.0, 0.5, 0])
        assert classify_section_prime(self.p, x, y) == SectionKind.GENERIC

    def test_degenerate_precedes(self):
        # two orthogonal null vectors: the area factor vanishes
        x = np.array([1.0, 0, 1.0, 0])
        y = np.array([0, 1.0, 0, 1.0])
        assert classify_section_prime(self.p, x, y) == SectionKind.DEGENERATE

    def test_dependent_vectors(self):
        x = np.array([1.0, 0, 0, 0])
        with pytest.raises(DependentVectors):
            classify_section_prime(self.p, x, 2.0 * x)
