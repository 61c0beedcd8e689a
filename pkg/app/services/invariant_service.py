"""
Spectrum-derived invariants, the spectral radius bound and the structural
recognizers they are checked against
"""
import logging
import math
from collections import Counter
from typing import List, Optional, Tuple

import numpy as np

from app.config import settings
from app.models.graph import Graph
from app.models.reports import (
    BoundReport,
    CheckResult,
    DegreeProfile,
    InvariantReport,
    JoinReport,
    MultipartiteReport,
    RegularityReport,
    ReportStatus,
    SpectrumFacts,
    StructureClass,
    ThreeEigenvalueReport,
)
from app.models.spectra import CharPoly, MatrixKind
from app.services.numeric_service import numeric_service
from app.services.polynomial_service import polynomial_service
from app.utils.exceptions import InvariantBreachError, UnsupportedInputError
from app.utils.graph6 import g6_encode
from app.utils.graph_ops import complement, components, diameter, induced_subgraph, is_connected

logger = logging.getLogger(__name__)

# Band in which a float eigenvalue is too close to zero to be counted by sign
_GUARD_LOW = 1e-11
_GUARD_HIGH = 1e-7


def _exact_half(value: int, what: str) -> int:
    if value % 2:
        raise InvariantBreachError(f"{what} trace {value} is odd", "facts_from_spectrum")
    return value // 2


class InvariantService:
    """Invariants read off exact polynomials, plus the recognizers used to cross-check them"""

    def facts_from_spectrum(self, p: CharPoly, kind: MatrixKind) -> SpectrumFacts:
        """
        Everything the spectrum determines about the graph

        Args:
            p: Exact characteristic polynomial
            kind: Matrix kind p was computed for

        Returns:
            SpectrumFacts; Laplacian fields are filled only for the Laplacian kind
        """
        kind = MatrixKind(kind)
        polynomial_service.require_kind(p, kind)
        n = p.degree

        if kind == MatrixKind.ADJACENCY:
            sums = polynomial_service.power_sums(p, 6)
            edges = _exact_half(sums[1], "adjacency")
            if sums[2] % 6:
                raise InvariantBreachError(f"closed 3-walk count {sums[2]} not divisible by 6", "facts_from_spectrum")
            regular = False
            if (2 * edges) % n == 0:
                r = 2 * edges // n
                regular = p.has_root(r) and p.roots_above(r) == 0
            bipartite = all(p.coeffs[k] == 0 for k in range(1, n + 1, 2))
            return SpectrumFacts(
                kind=kind,
                vertex_count=n,
                edge_count=edges,
                closed_walk_counts={length: sums[length - 1] for length in range(2, 7)},
                triangle_count=sums[2] // 6,
                is_regular_by_spectrum=regular,
                is_bipartite_by_spectrum=bipartite,
            )

        sums = polynomial_service.power_sums(p, 2)
        edges = _exact_half(sums[0], kind.value)
        facts = SpectrumFacts(kind=kind, vertex_count=n, edge_count=edges, sum_sq_degrees=sums[1] - 2 * edges)
        if kind == MatrixKind.LAPLACIAN:
            comps = p.root_multiplicity(0)
            trees = 0
            if comps == 1:
                product = (-1) ** (n - 1) * p.coefficient(1)
                if product % n:
                    raise InvariantBreachError(f"eigenvalue product {product} not divisible by {n}", "facts_from_spectrum")
                trees = product // n
            facts.component_count = comps
            facts.spanning_tree_count = trees
        return facts

    def spectral_radius_bound(self, g: Graph) -> BoundReport:
        """
        Upper bound on the spectral radius from vertex count, edge count and minimum degree

        Equality is decided from the degree structure, not by comparing floats.
        """
        if not is_connected(g):
            raise UnsupportedInputError("Spectral radius bound is stated for connected graphs only", "spectral_radius_bound")
        n, m = g.n, g.edge_count
        degrees = g.degrees()
        delta = min(degrees)
        bound = (delta - 1) / 2 + math.sqrt(2 * m - n * delta + (delta + 1) ** 2 / 4)
        rho = numeric_service.spectral_radius(g)

        distinct = set(degrees)
        bidegrees = None
        if len(distinct) == 1:
            structure = StructureClass.REGULAR
        elif distinct == {delta, n - 1}:
            structure = StructureClass.BIDEGREED
            bidegrees = (delta, n - 1)
        else:
            structure = StructureClass.NEITHER
        return BoundReport(
            rho=rho,
            delta=delta,
            vertex_count=n,
            edge_count=m,
            bound=bound,
            equality_holds=structure != StructureClass.NEITHER,
            structure_class=structure,
            bidegrees=bidegrees,
        )

    def has_join_eigenvalue(self, g: Graph) -> bool:
        """n is a Laplacian eigenvalue, decided by exact divisibility"""
        p = polynomial_service.char_poly_exact(g, MatrixKind.LAPLACIAN)
        return p.root_multiplicity(g.n) > 0

    def is_join(self, g: Graph) -> bool:
        return g.n >= 2 and not is_connected(complement(g))

    def join_report(self, g: Graph) -> JoinReport:
        eigen = self.has_join_eigenvalue(g)
        structural = self.is_join(g)
        return JoinReport(has_join_eigenvalue=eigen, is_join=structural, consistent=eigen == structural)

    def regularity_report(self, g: Graph) -> RegularityReport:
        degrees = g.degrees()
        regular = len(set(degrees)) == 1
        rho = numeric_service.spectral_radius(g)
        average = 2 * g.edge_count / g.n
        image = g.adjacency_matrix() @ np.ones(g.n, dtype=np.int64)
        ones_eigen = bool(np.all(image == image[0]))
        close = abs(rho - average) <= settings.EIGEN_MATCH_TOLERANCE * max(1.0, average)
        return RegularityReport(
            is_regular=regular,
            rho=rho,
            average_degree=average,
            rho_equals_average=close,
            ones_is_eigenvector=ones_eigen,
            consistent=regular == close == ones_eigen,
        )

    def recognize_complete_multipartite(self, g: Graph) -> Optional[List[int]]:
        """Part sizes (descending) when the non-isolated vertices form a complete multipartite graph"""
        active = [v for v in range(g.n) if g.adj[v]]
        if not active:
            return None
        rest = induced_subgraph(g, active)
        co = complement(rest)
        parts = []
        # Each part is a clique of the complement, i.e. a component of full internal degree
        for comp in components(co):
            if any(co.adj[v].bit_count() != len(comp) - 1 for v in comp):
                return None
            parts.append(len(comp))
        return sorted(parts, reverse=True)

    def positive_eigenvalue_count_with_guard(self, g: Graph) -> Tuple[int, bool]:
        values = np.array(numeric_service.eigenvalues_numeric(g, MatrixKind.ADJACENCY).values)
        magnitudes = np.abs(values)
        if np.any((magnitudes > _GUARD_LOW) & (magnitudes < _GUARD_HIGH)):
            logger.debug(f"Borderline eigenvalue near zero on {g.n} vertices; counting exactly")
            p = polynomial_service.char_poly_exact(g, MatrixKind.ADJACENCY)
            return polynomial_service.positive_root_count(p), True
        return int(np.sum(values > settings.POSITIVE_EIGENVALUE_THRESHOLD)), False

    def positive_eigenvalue_count(self, g: Graph) -> int:
        return self.positive_eigenvalue_count_with_guard(g)[0]

    def multipartite_report(self, g: Graph) -> MultipartiteReport:
        parts = self.recognize_complete_multipartite(g)
        count, guarded = self.positive_eigenvalue_count_with_guard(g)
        return MultipartiteReport(
            parts=parts,
            positive_eigenvalue_count=count,
            exact_guard_used=guarded,
            consistent=(count == 1) == (parts is not None),
        )

    def three_eigenvalue_report(self, g: Graph) -> ThreeEigenvalueReport:
        """
        Structure checks for connected non-regular graphs with exactly three distinct eigenvalues

        Returns a not_applicable report when the preconditions fail.
        """
        if not is_connected(g):
            return ThreeEigenvalueReport(status=ReportStatus.NOT_APPLICABLE, reason="graph is disconnected")
        if len(set(g.degrees())) == 1:
            return ThreeEigenvalueReport(status=ReportStatus.NOT_APPLICABLE, reason="graph is regular")
        spectrum = numeric_service.eigenvalues_numeric(g, MatrixKind.ADJACENCY)
        distinct = spectrum.distinct
        if len(distinct) != 3:
            return ThreeEigenvalueReport(
                status=ReportStatus.NOT_APPLICABLE,
                reason=f"{len(distinct)} distinct eigenvalues",
                eigenvalues=distinct,
            )

        theta0, theta1, theta2 = distinct
        tol = settings.GROUPING_TOLERANCE
        parts = self.recognize_complete_multipartite(g)
        bipartite = parts is not None and len(parts) == 2
        integral = abs(theta0 - round(theta0)) <= tol
        diam = diameter(g)
        checks = [
            CheckResult(name="diameter_two", passed=diam == 2, detail=f"diameter {diam}"),
            CheckResult(
                name="theta0_integral_unless_complete_bipartite",
                passed=integral or bipartite,
                detail=f"theta0 {theta0:.9f}, complete bipartite {bipartite}",
            ),
            CheckResult(
                name="theta1_nonnegative_zero_iff_complete_bipartite",
                passed=theta1 >= -tol and ((abs(theta1) <= tol) == bipartite),
                detail=f"theta1 {theta1:.9f}",
            ),
            CheckResult(
                name="theta2_at_most_minus_sqrt2",
                passed=theta2 <= -math.sqrt(2) + tol,
                detail=f"theta2 {theta2:.9f}",
            ),
        ]
        return ThreeEigenvalueReport(
            status=ReportStatus.OK,
            eigenvalues=distinct,
            complete_bipartite=bipartite,
            checks=checks,
        )

    def bidegreed_profile(self, g: Graph) -> DegreeProfile:
        counts = sorted(Counter(g.degrees()).items(), reverse=True)
        shape = {1: "regular", 2: "bidegreed"}.get(len(counts), "other")
        return DegreeProfile(shape=shape, degrees=counts)

    def invariant_report(self, g: Graph) -> InvariantReport:
        connected = is_connected(g)
        return InvariantReport(
            graph6=g6_encode(g).decode("ascii"),
            vertex_count=g.n,
            edge_count=g.edge_count,
            connected=connected,
            adjacency_facts=self.facts_from_spectrum(
                polynomial_service.char_poly_exact(g, MatrixKind.ADJACENCY), MatrixKind.ADJACENCY
            ),
            laplacian_facts=self.facts_from_spectrum(
                polynomial_service.char_poly_exact(g, MatrixKind.LAPLACIAN), MatrixKind.LAPLACIAN
            ),
            bound=self.spectral_radius_bound(g) if connected else None,
            regularity=self.regularity_report(g),
            join=self.join_report(g),
            multipartite=self.multipartite_report(g),
            three_eigenvalue=self.three_eigenvalue_report(g),
            degree_profile=self.bidegreed_profile(g),
        )


# Global instance
invariant_service = InvariantService()
