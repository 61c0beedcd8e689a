"""
Registry of the multicone spectral claims, each rerunnable as an instance check
"""
import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.models.graph import Graph, MulticoneParams
from app.models.reports import ClaimResult, SuiteSummary
from app.models.search import CorpusSource, LabeledEnumeration, SearchSpace, graph_from_mask
from app.models.spectra import MatrixKind
from app.services.closed_form_service import closed_form_service
from app.services.invariant_service import invariant_service
from app.services.numeric_service import numeric_service
from app.services.perfection_service import perfection_service
from app.services.polynomial_service import kind_matrix, polynomial_service
from app.services.search_service import search_service
from app.utils.corpus import atlas_corpus, atlas_up_to
from app.utils.exceptions import BaseSpectraError, InvalidParameterError
from app.utils.graph6 import g6_decode, g6_encode
from app.utils.graph_ops import (
    complement,
    component_count,
    is_connected,
    join,
    make_complete,
    make_cycle,
    make_empty,
    multicone,
    triangle_count,
)
from app.utils.logging_config import log_claim_result

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str, Optional[Dict[str, Any]]]

GRAPH6_VECTORS = {"Bw": "K3", "Cl": "C4", "C~": "K4", "B?": "3K1"}


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    check: Callable[[bool], Outcome]


def _multicone_grid(w_max: int, m_max: int, n_range: range) -> List[MulticoneParams]:
    return [MulticoneParams(w, m, n) for w in range(1, w_max + 1) for m in range(1, m_max + 1) for n in n_range]


def _kirchhoff_trees(g: Graph) -> int:
    if g.n == 1:
        return 1
    minor = kind_matrix(g, MatrixKind.LAPLACIAN, dtype=np.float64)[1:, 1:]
    return int(round(np.linalg.det(minor)))


def check_closed_forms(full: bool) -> Outcome:
    failures = []
    grid = _multicone_grid(4, 4, range(3, 9))
    kinds = (MatrixKind.ADJACENCY, MatrixKind.LAPLACIAN, MatrixKind.SIGNLESS_LAPLACIAN)
    for p in grid:
        g = multicone(p)
        for kind in kinds:
            closed = closed_form_service.multicone_spectrum(p, kind)
            numeric = numeric_service.eigenvalues_numeric(g, kind)
            if not closed.matches(numeric.values, 1e-9):
                failures.append(f"{p} {kind.value}")
    detail = f"{len(grid)} parameter triples x {len(kinds)} kinds"
    return not failures, detail if not failures else f"mismatch at {failures[:5]}", {"cases": len(grid) * len(kinds)}


def check_bound_meets_surd(full: bool) -> Outcome:
    failures = []
    grid = _multicone_grid(4, 4, range(3, 9))
    for p in grid:
        g = multicone(p)
        bound = invariant_service.spectral_radius_bound(g)
        surd = (p.w + 1 + math.sqrt((p.w - 3) ** 2 + 4 * p.m * p.n * p.w)) / 2
        profile = invariant_service.bidegreed_profile(g)
        expected = sorted({p.hub_degree: p.w, p.rim_degree: p.m * p.n}.items(), reverse=True) \
            if p.hub_degree != p.rim_degree else [(p.hub_degree, p.vertex_count)]
        if not (bound.equality_holds and abs(bound.bound - surd) < 1e-9 and abs(bound.rho - surd) < 1e-8
                and profile.degrees == expected and bound.delta == p.w + 2):
            failures.append(str(p))
    return not failures, f"{len(grid)} multicone graphs" if not failures else f"failed at {failures[:5]}", None


def check_join_polynomial(full: bool) -> Outcome:
    regular = [g for g in atlas_up_to(5) if len(set(g.degrees())) == 1]
    cases = 0
    failures = []
    for g in regular:
        for h in regular:
            if g.n + h.n > 10:
                continue
            cases += 1
            joined = closed_form_service.join_char_poly(
                polynomial_service.char_poly_exact(g), g.degrees()[0], g.n,
                polynomial_service.char_poly_exact(h), h.degrees()[0], h.n,
            )
            if joined.coeffs != polynomial_service.char_poly_exact(join(g, h)).coeffs:
                failures.append(f"{g6_encode(g).decode()}~{g6_encode(h).decode()}")
    return not failures, f"{cases} regular pairs" if not failures else f"failed at {failures[:5]}", {"cases": cases}


def check_disconnected_mates(full: bool) -> Outcome:
    reports = search_service.verify_disconnected_mates()
    passed = all(r.passed for r in reports)
    counts = [r.vertex_counts[0] for r in reports]
    return passed, f"vertex counts {counts}", {"pairs": [r.model_dump(mode="json") for r in reports]}


def _certify_many(cases: Sequence[Tuple[MulticoneParams, MatrixKind, SearchSpace]]) -> Outcome:
    rows = []
    ok = True
    for p, kind, space in cases:
        cert = search_service.certify_ds(p, kind, space)
        rows.append({"params": str(p), "kind": kind.value, "verdict": cert.report.verdict.value,
                     "consistent": cert.consistent})
        if cert.consistent is False:
            ok = False
    return ok, "; ".join(f"{r['params']} {r['kind']}: {r['verdict']}" for r in rows), {"certifications": rows}


def check_adjacency_ds(full: bool) -> Outcome:
    cases = [
        (MulticoneParams(1, 1, 3), MatrixKind.ADJACENCY, SearchSpace.labeled(4, connected_only=True)),
        (MulticoneParams(1, 1, 4), MatrixKind.ADJACENCY, SearchSpace.labeled(5, connected_only=True)),
        (MulticoneParams(1, 1, 5), MatrixKind.ADJACENCY, SearchSpace.labeled(6, connected_only=True)),
        (MulticoneParams(2, 1, 4), MatrixKind.ADJACENCY, SearchSpace.labeled(6, connected_only=True)),
    ]
    if full:
        cases.append((MulticoneParams(1, 2, 3), MatrixKind.ADJACENCY, SearchSpace.labeled(7, connected_only=True)))
    return _certify_many(cases)


def check_wheel7_adjacency(full: bool) -> Outcome:
    """Recorded neutrally: the scan must complete and every mate must re-verify"""
    p = MulticoneParams(1, 1, 6)
    if full:
        space = SearchSpace.labeled(7, connected_only=True)
    else:
        space = SearchSpace.corpus(CorpusSource.from_graphs(atlas_corpus(7), "atlas"), 7, connected_only=True)
    cert = search_service.certify_ds(p, MatrixKind.ADJACENCY, space)
    mates = [g6_decode(m.graph6) for m in cert.report.mates]
    target = multicone(p)
    verified = all(polynomial_service.cospectral_exact(g, target, MatrixKind.ADJACENCY) for g in mates)
    return verified, f"{cert.report.space.source} scan verdict {cert.report.verdict.value}", {
        "verdict": cert.report.verdict.value, "mates": [m.graph6 for m in cert.report.mates]
    }


def check_laplacian_wheels(full: bool) -> Outcome:
    found = {}
    for p in (MulticoneParams(1, 1, 4), MulticoneParams(1, 1, 5), MulticoneParams(1, 1, 6)):
        n = p.vertex_count
        space = SearchSpace.corpus(CorpusSource.from_graphs(atlas_corpus(n), "atlas"), n)
        report = search_service.find_cospectral_mates(multicone(p), space, MatrixKind.LAPLACIAN, label=str(p), params=p)
        found[f"W{n}"] = [m.graph6 for m in report.mates]
    passed = bool(found["W7"]) and not found["W5"] and not found["W6"]
    return passed, ", ".join(f"{k}: {len(v)} mate(s)" for k, v in found.items()), {"mates": found}


def check_spectrum_facts(full: bool) -> Outcome:
    graphs = atlas_up_to(6)
    failures = []
    for g in graphs:
        a = invariant_service.facts_from_spectrum(polynomial_service.char_poly_exact(g, MatrixKind.ADJACENCY), MatrixKind.ADJACENCY)
        lap = invariant_service.facts_from_spectrum(polynomial_service.char_poly_exact(g, MatrixKind.LAPLACIAN), MatrixKind.LAPLACIAN)
        comps = component_count(g)
        trees = _kirchhoff_trees(g) if comps == 1 else 0
        if (a.edge_count != g.edge_count or a.triangle_count != triangle_count(g)
                or lap.component_count != comps or lap.spanning_tree_count != trees
                or lap.sum_sq_degrees != sum(d * d for d in g.degrees())):
            failures.append(g6_encode(g).decode())
    return not failures, f"{len(graphs)} graphs" if not failures else f"failed at {failures[:5]}", {"cases": len(graphs)}


def check_bound_equivalence(full: bool) -> Outcome:
    graphs = [g for g in atlas_up_to(7) if is_connected(g)]
    failures = []
    for g in graphs:
        report = invariant_service.spectral_radius_bound(g)
        if report.equality_holds != (abs(report.rho - report.bound) < 1e-8):
            failures.append(g6_encode(g).decode())
    return not failures, f"{len(graphs)} connected graphs" if not failures else f"failed at {failures[:5]}", {"cases": len(graphs)}


def check_join_and_multipartite(full: bool) -> Outcome:
    graphs = atlas_up_to(6)
    join_failures = []
    multipartite_failures = []
    guarded = 0
    for g in graphs:
        if not invariant_service.join_report(g).consistent:
            join_failures.append(g6_encode(g).decode())
        report = invariant_service.multipartite_report(g)
        guarded += report.exact_guard_used
        if not report.consistent:
            multipartite_failures.append(g6_encode(g).decode())
    passed = not join_failures and not multipartite_failures
    detail = f"{len(graphs)} graphs, exact guard used {guarded} times"
    if not passed:
        detail = f"join failures {join_failures[:5]}, multipartite failures {multipartite_failures[:5]}"
    return passed, detail, {"cases": len(graphs), "guarded": guarded}


def check_complement_c3(full: bool) -> Outcome:
    failures = []
    cases = 0
    for w in range(1, 4):
        for m in range(1, 5):
            cases += 1
            g = complement(multicone(MulticoneParams(w, m, 3)))
            closed = closed_form_service.complement_multicone_c3_spectrum(w, m)
            numeric = numeric_service.eigenvalues_numeric(g, MatrixKind.ADJACENCY)
            parts = invariant_service.recognize_complete_multipartite(g)
            expected_parts = [3] * m if m > 1 else None
            if not closed.matches(numeric.values, 1e-9) or parts != expected_parts:
                failures.append(f"w={w} m={m}")
    return not failures, f"{cases} cases" if not failures else f"failed at {failures}", {"cases": cases}


def check_perfect_grid(full: bool) -> Outcome:
    failures = []
    cases = 0
    for p in _multicone_grid(3, 3, range(3, 9)):
        if p.vertex_count > 20:
            continue
        cases += 1
        report = perfection_service.multicone_report(p)
        if report.perfect != report.predicate:
            failures.append(str(p))
        if report.witness and not perfection_service.validate_witness(multicone(p), report.witness):
            failures.append(f"{p} witness")
    return not failures, f"{cases} multicone graphs" if not failures else f"failed at {failures}", {"cases": cases}


def check_complement_symmetry(full: bool) -> Outcome:
    if full:
        rng = np.random.default_rng(20240607)
        graphs = []
        for _ in range(10000):
            n = int(rng.integers(8, 10))
            pairs = n * (n - 1) // 2
            graphs.append(graph_from_mask(n, int(rng.integers(0, 1 << pairs))))
    else:
        graphs = atlas_up_to(7)
    failures = []
    for g in graphs:
        if perfection_service.is_perfect(g).perfect != perfection_service.is_perfect(complement(g)).perfect:
            failures.append(g6_encode(g).decode())
    return not failures, f"{len(graphs)} graphs" if not failures else f"failed at {failures[:5]}", {"cases": len(graphs)}


def check_main_angle_identity(full: bool) -> Outcome:
    graphs = [g for g in atlas_up_to(6) if is_connected(g)]
    worst = 0.0
    failures = []
    for g in graphs:
        rho = numeric_service.spectral_radius(g)
        samples = [rho + 1.5, -rho - 1.5]
        scale = max(abs(float(polynomial_service.char_poly_exact(g).evaluate(y))) for y in samples)
        for j in range(g.n):
            residual = numeric_service.main_angle_identity_residual(g, j, samples)
            worst = max(worst, residual / max(1.0, scale))
            if residual >= 1e-6 * max(1.0, scale):
                failures.append(f"{g6_encode(g).decode()}:{j}")
    return not failures, f"{len(graphs)} graphs, worst relative residual {worst:.2e}", {"cases": len(graphs)}


def check_graph6_codec(full: bool) -> Outcome:
    failures = []
    builders = {"K3": make_complete(3), "C4": make_cycle(4), "K4": make_complete(4), "3K1": make_empty(3)}
    for text, name in GRAPH6_VECTORS.items():
        if g6_encode(builders[name]) != text.encode() or g6_decode(text) != builders[name]:
            failures.append(text)
    cases = 0
    for n in range(1, 6):
        for g in LabeledEnumeration(n).graphs():
            cases += 1
            if g6_decode(g6_encode(g)) != g:
                failures.append(g6_encode(g).decode())
    return not failures, f"{len(GRAPH6_VECTORS)} vectors, {cases} labeled graphs" if not failures else f"failed at {failures[:5]}", None


def check_laplacian_transfer(full: bool) -> Outcome:
    params = [MulticoneParams(1, 1, 4), MulticoneParams(1, 1, 5)]
    if full:
        params.append(MulticoneParams(1, 2, 3))
    rows = []
    for p in params:
        report = search_service.laplacian_perfect_transfer(p, SearchSpace.labeled(p.vertex_count))
        rows.append(report.model_dump(mode="json"))
    passed = all(r["agrees"] is not False for r in rows)
    return passed, f"{len(rows)} instances, {sum(r['certified'] for r in rows)} certified", {"instances": rows}


CLAIMS: Tuple[Claim, ...] = (
    Claim("graph6-codec", "graph6 vectors and exhaustive round trip up to 5 vertices", check_graph6_codec),
    Claim("closed-forms", "closed-form A, L and Q spectra of K_w~mC_n match the eigensolver", check_closed_forms),
    Claim("bound-meets-surd", "spectral radius bound is attained by multicone graphs at delta = w+2", check_bound_meets_surd),
    Claim("join-polynomial", "join polynomial of regular graphs equals the exact polynomial of the join", check_join_polynomial),
    Claim("disconnected-mates", "disconnected graphs adjacency-cospectral with K3~10C4, K3~11C5, K3~5C6", check_disconnected_mates),
    Claim("adjacency-ds", "no connected adjacency mates for small multicone graphs", check_adjacency_ds),
    Claim("wheel7-adjacency", "adjacency scan around W7 completes with verified mates", check_wheel7_adjacency),
    Claim("laplacian-wheels", "W7 has a Laplacian mate on 7 vertices, W5 and W6 have none", check_laplacian_wheels),
    Claim("spectrum-facts", "edges, triangles, components and spanning trees from the spectrum", check_spectrum_facts),
    Claim("bound-equivalence", "bound equality iff regular or bidegreed {delta, n-1}", check_bound_equivalence),
    Claim("join-multipartite", "join eigenvalue iff join; one positive eigenvalue iff complete multipartite", check_join_and_multipartite),
    Claim("complement-c3", "complement of K_w~mC3 spectrum and its parts", check_complement_c3),
    Claim("perfect-grid", "K_w~mC_n is perfect iff n is even or 3", check_perfect_grid),
    Claim("complement-symmetry", "a graph is perfect iff its complement is", check_complement_symmetry),
    Claim("main-angle-identity", "vertex-deleted polynomial identity through main angles", check_main_angle_identity),
    Claim("laplacian-transfer", "perfectness of Laplacian-certified multicone instances", check_laplacian_transfer),
)


class ClaimsService:
    """Runs registered claims and summarises them as a suite"""

    def __init__(self, claims: Sequence[Claim] = CLAIMS):
        self.claims = {c.claim_id: c for c in claims}

    def run_claim(self, claim_id: str, full: bool = False) -> ClaimResult:
        claim = self.claims.get(claim_id)
        if claim is None:
            raise InvalidParameterError(f"Unknown claim: {claim_id}", field="claim", value=claim_id)
        started = time.perf_counter()
        try:
            passed, detail, data = claim.check(full)
        except BaseSpectraError as e:
            passed, detail, data = False, f"{e.error_code}: {e.detail}", None
        log_claim_result(
            logger,
            claim_id,
            "pass" if passed else "fail",
            cases=(data or {}).get("cases", 1),
            duration_ms=(time.perf_counter() - started) * 1000,
        )
        return ClaimResult(claim_id=claim_id, description=claim.description, passed=passed, detail=detail, data=data)

    def run_suite(self, full: bool = False, only: Optional[Sequence[str]] = None) -> SuiteSummary:
        """
        Run every registered claim (or the selected ones)

        Args:
            full: Include the long labeled scans and the large random sample
            only: Restrict to these claim ids

        Returns:
            SuiteSummary; claim failures are reported, not raised
        """
        ids = list(only) if only else list(self.claims)
        results = [self.run_claim(claim_id, full) for claim_id in ids]
        passed = sum(r.passed for r in results)
        return SuiteSummary(total=len(results), passed=passed, failed=len(results) - passed, full=full, claims=results)


# Global instance
claims_service = ClaimsService()
