"""
Closed-form spectra of cycles, multicone graphs and their complements and joins
"""
import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from app.models.graph import MulticoneParams
from app.models.spectra import (
    CharPoly,
    ClosedSpectrum,
    EigenvalueDescriptor,
    MatrixKind,
    QuadraticSurd,
    RationalEigenvalue,
    cosine_eigenvalue,
    poly_multiply,
)
from app.services.polynomial_service import polynomial_service
from app.utils.exceptions import (
    InvalidParameterError,
    InvariantBreachError,
    MalformedSpectrumError,
    RegularityViolationError,
)

logger = logging.getLogger(__name__)


def merge_descriptors(descriptors: Sequence[EigenvalueDescriptor]) -> Tuple[EigenvalueDescriptor, ...]:
    """Combine equal eigenvalues, drop empty ones, order by descending value"""
    merged: Dict[object, EigenvalueDescriptor] = {}
    for d in descriptors:
        if d.mult <= 0:
            continue
        exact = d.exact_value()
        if exact is not None:
            d = RationalEigenvalue(d.mult, exact)
        key = exact if exact is not None else d.with_mult(0)
        if key in merged:
            merged[key] = merged[key].with_mult(merged[key].mult + d.mult)
        else:
            merged[key] = d
    return tuple(sorted(merged.values(), key=lambda d: (-d.value(), str(d))))


def _rational(mult: int, value) -> RationalEigenvalue:
    return RationalEigenvalue(mult, Fraction(value))


def _cosine_range(n: int) -> range:
    """k with 0 < k < n/2; empty for n = 3 and n = 4 on the even side"""
    return range(1, (n - 1) // 2 + 1)


class ClosedFormService:
    """Symbolic spectra from the multicone formulas"""

    def cycle_spectrum(self, n: int, kind: MatrixKind = MatrixKind.ADJACENCY) -> ClosedSpectrum:
        if n < 3:
            raise InvalidParameterError("Cycle length must be at least 3", field="n", value=n)
        kind = MatrixKind(kind)
        a, b = {
            MatrixKind.ADJACENCY: (0, 2),
            MatrixKind.LAPLACIAN: (2, -2),
            MatrixKind.SIGNLESS_LAPLACIAN: (2, 2),
        }[kind]
        descriptors: List[EigenvalueDescriptor] = [cosine_eigenvalue(1, a, b, 0, n)]
        descriptors.extend(cosine_eigenvalue(2, a, b, k, n) for k in _cosine_range(n))
        if n % 2 == 0:
            descriptors.append(cosine_eigenvalue(1, a, b, n // 2, n))
        return ClosedSpectrum(kind, merge_descriptors(descriptors))

    def join_char_poly(self, p1: CharPoly, r1: int, n1: int, p2: CharPoly, r2: int, n2: int) -> CharPoly:
        """
        Adjacency polynomial of the join of an r1-regular and an r2-regular graph

        Args:
            p1, p2: Adjacency polynomials of the two regular graphs
            r1, r2: Their degrees (roots of p1, p2)
            n1, n2: Their vertex counts

        Returns:
            p1 * p2 / ((x - r1)(x - r2)) * ((x - r1)(x - r2) - n1 n2)
        """
        for p, n in ((p1, n1), (p2, n2)):
            polynomial_service.require_kind(p, MatrixKind.ADJACENCY)
            if p.degree != n:
                raise InvalidParameterError(f"Polynomial degree {p.degree} does not match vertex count {n}", field="n", value=n)
        q1, rem1 = p1.divide_linear(r1)
        if rem1 != 0:
            raise RegularityViolationError(r1, n1)
        q2, rem2 = p2.divide_linear(r2)
        if rem2 != 0:
            raise RegularityViolationError(r2, n2)
        quotient = (1, -(r1 + r2), r1 * r2 - n1 * n2)
        coeffs = poly_multiply(poly_multiply(q1, q2), quotient)
        return CharPoly(tuple(int(c) for c in coeffs), MatrixKind.ADJACENCY)

    def multicone_adjacency_spectrum(self, p: MulticoneParams) -> ClosedSpectrum:
        w, m, n = p.w, p.m, p.n
        descriptors: List[EigenvalueDescriptor] = [_rational(w - 1, -1)]
        descriptors.extend(cosine_eigenvalue(2 * m, 0, 2, k, n) for k in _cosine_range(n))
        descriptors.append(_rational(m - 1, 2))
        if n % 2 == 0:
            descriptors.append(_rational(m, -2))
        omega, gamma = w + 1, 2 * (w - 1) - m * n * w
        descriptors.append(QuadraticSurd(1, omega, gamma, 1))
        descriptors.append(QuadraticSurd(1, omega, gamma, -1))
        return self._checked(MatrixKind.ADJACENCY, descriptors, p)

    def multicone_laplacian_spectrum(self, p: MulticoneParams) -> ClosedSpectrum:
        w, m, n = p.w, p.m, p.n
        descriptors: List[EigenvalueDescriptor] = [_rational(w, w + m * n)]
        descriptors.extend(cosine_eigenvalue(2 * m, w + 2, -2, k, n) for k in _cosine_range(n))
        descriptors.append(_rational(m - 1, w))
        if n % 2 == 0:
            descriptors.append(_rational(m, w + 4))
        descriptors.append(_rational(1, 0))
        return self._checked(MatrixKind.LAPLACIAN, descriptors, p)

    def multicone_signless_laplacian_spectrum(self, p: MulticoneParams) -> ClosedSpectrum:
        w, m, n = p.w, p.m, p.n
        descriptors: List[EigenvalueDescriptor] = [_rational(w - 1, w - 2 + m * n)]
        descriptors.extend(cosine_eigenvalue(2 * m, w + 2, 2, k, n) for k in _cosine_range(n))
        descriptors.append(_rational(m - 1, w + 4))
        if n % 2 == 0:
            descriptors.append(_rational(m, w))
        # Equitable quotient on (clique, cycles)
        omega = 3 * w + m * n + 2
        gamma = (2 * w - 2 + m * n) * (w + 4) - w * m * n
        descriptors.append(QuadraticSurd(1, omega, gamma, 1))
        descriptors.append(QuadraticSurd(1, omega, gamma, -1))
        return self._checked(MatrixKind.SIGNLESS_LAPLACIAN, descriptors, p)

    def multicone_spectrum(self, p: MulticoneParams, kind: MatrixKind) -> ClosedSpectrum:
        kind = MatrixKind(kind)
        if kind == MatrixKind.ADJACENCY:
            return self.multicone_adjacency_spectrum(p)
        if kind == MatrixKind.LAPLACIAN:
            return self.multicone_laplacian_spectrum(p)
        return self.multicone_signless_laplacian_spectrum(p)

    def complement_multicone_c3_spectrum(self, w: int, m: int) -> ClosedSpectrum:
        """Adjacency spectrum of the complement of K_w joined with m triangles, i.e. wK1 with K_{3,...,3}"""
        if w < 1:
            raise InvalidParameterError("Clique size w must be at least 1", field="w", value=w)
        if m < 1:
            raise InvalidParameterError("Cycle count m must be at least 1", field="m", value=m)
        descriptors = [_rational(m - 1, -3), _rational(2 * m + w, 0), _rational(1, 3 * m - 3)]
        return ClosedSpectrum(MatrixKind.ADJACENCY, merge_descriptors(descriptors))

    def complement_laplacian_spectrum(self, s: ClosedSpectrum) -> ClosedSpectrum:
        """{n - mu_1, ..., n - mu_(n-1), 0} for the Laplacian spectrum of G on n vertices"""
        rest = self._without_one_zero(s)
        n = s.vertex_count
        descriptors = [d.negated().shifted(n) for d in rest] + [_rational(1, 0)]
        return ClosedSpectrum(MatrixKind.LAPLACIAN, merge_descriptors(descriptors))

    def join_laplacian_spectrum(self, s_g: ClosedSpectrum, s_h: ClosedSpectrum) -> ClosedSpectrum:
        """Laplacian spectrum of the join from the Laplacian spectra of its two sides"""
        n, m = s_g.vertex_count, s_h.vertex_count
        descriptors: List[EigenvalueDescriptor] = [_rational(1, n + m)]
        descriptors.extend(d.shifted(m) for d in self._without_one_zero(s_g))
        descriptors.extend(d.shifted(n) for d in self._without_one_zero(s_h))
        descriptors.append(_rational(1, 0))
        return ClosedSpectrum(MatrixKind.LAPLACIAN, merge_descriptors(descriptors))

    def _without_one_zero(self, s: ClosedSpectrum) -> List[EigenvalueDescriptor]:
        if s.kind != MatrixKind.LAPLACIAN:
            raise MalformedSpectrumError(f"expected a Laplacian spectrum, got kind {s.kind.value}")
        out: List[EigenvalueDescriptor] = []
        removed = False
        for d in s.descriptors:
            exact = d.exact_value()
            if exact is not None and exact < 0:
                raise MalformedSpectrumError(f"negative Laplacian eigenvalue {exact}")
            if not removed and exact == 0:
                removed = True
                if d.mult > 1:
                    out.append(d.with_mult(d.mult - 1))
                continue
            out.append(d)
        if not removed:
            raise MalformedSpectrumError("Laplacian spectrum has no zero eigenvalue")
        return out

    def _checked(self, kind: MatrixKind, descriptors: List[EigenvalueDescriptor], p: MulticoneParams) -> ClosedSpectrum:
        spectrum = ClosedSpectrum(kind, merge_descriptors(descriptors))
        if spectrum.vertex_count != p.vertex_count:
            raise InvariantBreachError(
                f"{kind.value}-spectrum of {p} has total multiplicity {spectrum.vertex_count}, expected {p.vertex_count}",
                "multicone_spectrum",
            )
        return spectrum


# Global instance
closed_form_service = ClosedFormService()
