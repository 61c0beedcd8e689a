from fractions import Fraction

import numpy as np
import pytest

from app.models.spectra import CharPoly, MatrixKind
from app.services.polynomial_service import fits_int64, polynomial_service
from app.utils.corpus import atlas_up_to
from app.utils.exceptions import InvariantBreachError, KindMismatchError
from app.utils.graph_ops import copies, make_complete, make_cycle, make_empty


class TestCharPolyExact:
    def test_k4(self, k4):
        assert polynomial_service.char_poly_exact(k4).coeffs == (1, 0, -6, -8, -3)

    def test_c4(self, c4):
        assert polynomial_service.char_poly_exact(c4).coeffs == (1, 0, -4, 0, 0)

    def test_k2_laplacian(self):
        p = polynomial_service.char_poly_exact(make_complete(2), MatrixKind.LAPLACIAN)
        assert p.coeffs == (1, -2, 0)
        assert p.kind == MatrixKind.LAPLACIAN

    def test_wheel_laplacian_roots(self, w5):
        p = polynomial_service.char_poly_exact(w5, MatrixKind.LAPLACIAN)
        assert p.root_multiplicity(5) == 2
        assert p.root_multiplicity(3) == 2
        assert p.root_multiplicity(0) == 1

    def test_k4_signless_laplacian(self, k4):
        p = polynomial_service.char_poly_exact(k4, MatrixKind.SIGNLESS_LAPLACIAN)
        assert p.root_multiplicity(6) == 1
        assert p.root_multiplicity(2) == 3

    def test_disconnected_polynomial_is_product(self, c4):
        square = polynomial_service.char_poly_exact(c4) * polynomial_service.char_poly_exact(c4)
        assert polynomial_service.char_poly_exact(copies(2, c4)).coeffs == square.coeffs

    def test_product_with_isolated_vertex(self, c4, c4_plus_k1):
        p = polynomial_service.char_poly_exact(c4) * polynomial_service.char_poly_exact(make_empty(1))
        assert p.coeffs == polynomial_service.char_poly_exact(c4_plus_k1).coeffs


class TestCospectrality:
    def test_star_and_c4_plus_k1(self, star4, c4_plus_k1):
        assert polynomial_service.char_poly_exact(star4).coeffs == (1, 0, -4, 0, 0, 0)
        assert polynomial_service.cospectral_exact(star4, c4_plus_k1)

    def test_different_edge_counts(self, k4, c4):
        assert not polynomial_service.cospectral_exact(k4, c4)

    def test_different_orders(self, k4):
        assert not polynomial_service.cospectral_exact(k4, make_complete(5))

    def test_star_is_not_laplacian_cospectral_with_c4_plus_k1(self, star4, c4_plus_k1):
        assert not polynomial_service.cospectral_exact(star4, c4_plus_k1, MatrixKind.LAPLACIAN)


class TestBatch:
    def test_batch_matches_single(self, k4, c4, w5):
        stack = np.stack([k4.adjacency_matrix(), c4.adjacency_matrix()])
        rows = polynomial_service.char_poly_batch(stack)
        assert rows.shape == (2, 5)
        assert tuple(rows[0]) == (1, 0, -6, -8, -3)
        assert tuple(rows[1]) == (1, 0, -4, 0, 0)

    def test_batch_laplacian(self, w5):
        rows = polynomial_service.char_poly_batch(w5.adjacency_matrix()[None], MatrixKind.LAPLACIAN)
        assert tuple(int(c) for c in rows[0]) == polynomial_service.char_poly_exact(w5, MatrixKind.LAPLACIAN).coeffs

    def test_int64_range(self):
        assert fits_int64(12)
        assert not fits_int64(13)


class TestPolynomialQueries:
    def test_evaluate_at_spectral_radius(self, k4):
        p = polynomial_service.char_poly_exact(k4)
        assert polynomial_service.poly_evaluate(p, 3) == 0
        assert polynomial_service.poly_evaluate(p, Fraction(1, 2)) == Fraction(-135, 16)

    def test_power_sums_count_closed_walks(self, k4):
        p = polynomial_service.char_poly_exact(k4)
        assert polynomial_service.power_sums(p, 3) == [0, 12, 24]

    def test_root_counts(self, k4):
        p = polynomial_service.char_poly_exact(k4)
        assert polynomial_service.root_multiplicity(p, -1) == 3
        assert polynomial_service.positive_root_count(p) == 1
        assert p.roots_above(-2) == 4

    def test_kind_guard(self, k4):
        p = polynomial_service.char_poly_exact(k4, MatrixKind.LAPLACIAN)
        with pytest.raises(KindMismatchError):
            polynomial_service.require_kind(p, MatrixKind.ADJACENCY)

    def test_rendering_and_json(self, k4):
        p = polynomial_service.char_poly_exact(k4)
        assert str(p) == "x^4 - 6x^2 - 8x - 3"
        assert p.to_json() == ["1", "0", "-6", "-8", "-3"]
        assert len(p.fingerprint) == 64

    def test_must_be_monic(self):
        with pytest.raises(InvariantBreachError):
            CharPoly((2, 1))

    def test_cycle_polynomial_has_degree_root(self):
        p = polynomial_service.char_poly_exact(make_cycle(7))
        assert p.has_root(2)
        assert not p.has_root(-2)


def test_regular_laplacian_is_reflected_adjacency():
    # p_L(x) = (-1)^n p_A(r - x) for r-regular graphs; degree + 1 points pin the identity
    regular = [g for g in atlas_up_to(7) if len(set(g.degrees())) == 1]
    assert len(regular) > 10
    for g in regular:
        r = g.degrees()[0]
        pa = polynomial_service.char_poly_exact(g, MatrixKind.ADJACENCY)
        pl = polynomial_service.char_poly_exact(g, MatrixKind.LAPLACIAN)
        sign = (-1) ** g.n
        for x in range(-2, g.n + 3):
            assert pl.evaluate(x) == sign * pa.evaluate(r - x)
