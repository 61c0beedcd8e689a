import math

import networkx as nx
import numpy as np
import pytest

from app.models.graph import MulticoneParams
from app.models.spectra import MatrixKind
from app.services.numeric_service import group_values, numeric_service
from app.services.polynomial_service import polynomial_service
from app.utils.corpus import atlas_up_to
from app.utils.exceptions import KindMismatchError, SampleTooCloseError, ValidationError
from app.utils.graph_ops import complement, make_cycle, multicone

SQRT5 = math.sqrt(5)


def test_k4_adjacency(k4):
    spectrum = numeric_service.eigenvalues_numeric(k4)
    assert spectrum.values == pytest.approx([3, -1, -1, -1])
    assert [mult for _, mult in spectrum.groups] == [1, 3]


def test_wheel_adjacency(w5):
    spectrum = numeric_service.eigenvalues_numeric(w5)
    assert spectrum.values == pytest.approx([1 + SQRT5, 0, 0, 1 - SQRT5, -2], abs=1e-9)


def test_wheel_laplacian_groups(w5):
    spectrum = numeric_service.eigenvalues_numeric(w5, MatrixKind.LAPLACIAN)
    assert [(round(v, 9), m) for v, m in spectrum.groups] == [(5.0, 2), (3.0, 2), (0.0, 1)]
    assert spectrum.to_report()["groups"] == [[5.0, 2], [3.0, 2], [0.0, 1]]


def test_signless_laplacian(k4):
    spectrum = numeric_service.signless_laplacian_spectrum(k4)
    assert spectrum.values == pytest.approx([6, 2, 2, 2])


def test_spectral_radius(w5):
    assert numeric_service.spectral_radius(w5) == pytest.approx(1 + SQRT5)


def test_group_values_uses_consecutive_gaps():
    assert group_values([2.0, 2.0 + 5e-8, 1.0], 1e-7) == [(pytest.approx(2.0), 2), (1.0, 1)]


def test_numeric_equality(star4, c4_plus_k1, k4):
    a = numeric_service.eigenvalues_numeric(star4)
    b = numeric_service.eigenvalues_numeric(c4_plus_k1)
    assert numeric_service.spectra_equal_numeric(a, b)
    assert not numeric_service.spectra_equal_numeric(a, numeric_service.eigenvalues_numeric(k4))


def test_numeric_equality_kind_guard(k4):
    a = numeric_service.eigenvalues_numeric(k4)
    b = numeric_service.eigenvalues_numeric(k4, MatrixKind.LAPLACIAN)
    with pytest.raises(KindMismatchError):
        numeric_service.spectra_equal_numeric(a, b)


class TestMainAngles:
    def test_squared_angles_sum_to_one(self, w5):
        angles = numeric_service.main_angles(w5)
        assert np.allclose(angles.squared_sums(), 1.0)
        assert len(angles.eigenvalues) == 4

    def test_identity_on_k4(self, k4):
        assert numeric_service.main_angle_identity_residual(k4, 0, [5.0]) < 1e-6

    def test_identity_at_wheel_hub(self, w5):
        assert numeric_service.main_angle_identity_residual(w5, 0, [4.0]) < 1e-6

    def test_identity_at_rim_vertex(self, w5):
        assert numeric_service.main_angle_identity_residual(w5, 2, [5.0, -4.0]) < 1e-6

    def test_sample_too_close(self, k4):
        with pytest.raises(SampleTooCloseError):
            numeric_service.main_angle_identity_residual(k4, 0, [3.2])

    def test_vertex_out_of_range(self, k4):
        with pytest.raises(ValidationError):
            numeric_service.main_angle_identity_residual(k4, 4, [5.0])


def _larger_graphs():
    return [
        make_cycle(10),
        complement(make_cycle(9)),
        multicone(MulticoneParams(1, 1, 9)),
        multicone(MulticoneParams(2, 2, 4)),
        multicone(MulticoneParams(1, 3, 3)),
    ]


@pytest.mark.parametrize("kind", list(MatrixKind))
def test_numeric_eigenvalues_are_roots_of_the_exact_polynomial(kind):
    for g in atlas_up_to(6) + _larger_graphs():
        p = polynomial_service.char_poly_exact(g, kind)
        for value in numeric_service.eigenvalues_numeric(g, kind).values:
            scale = sum(abs(c) * abs(value) ** (p.degree - i) for i, c in enumerate(p.coeffs))
            assert abs(p.evaluate(value)) <= 1e-7 * max(1.0, scale)


def test_bipartite_adjacency_spectra_are_symmetric():
    bipartite = [g for g in atlas_up_to(7) if nx.is_bipartite(g.to_networkx())]
    assert len(bipartite) > 100
    for g in bipartite:
        values = numeric_service.eigenvalues_numeric(g).values
        assert values == pytest.approx([-v for v in reversed(values)], abs=1e-9)
