from fastapi import APIRouter, Query
from typing import Any, Dict
import logging

from app.models.graph import MulticoneParams
from app.models.reports import InvariantReport, PerfectReport
from app.models.requests import (
    CompareRequest,
    CompareResponse,
    InvariantsRequest,
    PerfectRequest,
    SpectrumRequest,
    SpectrumResponse,
)
from app.models.spectra import MatrixKind
from app.services.closed_form_service import closed_form_service
from app.services.invariant_service import invariant_service
from app.services.numeric_service import numeric_service
from app.services.perfection_service import perfection_service
from app.services.polynomial_service import polynomial_service
from app.utils.family_parser import resolve_graph
from app.utils.graph6 import g6_encode
from app.utils.isomorphism import decide_isomorphism

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/spectra", tags=["spectra"])


@router.post("/spectrum", response_model=SpectrumResponse)
def spectrum(request: SpectrumRequest):
    """Numeric spectrum with multiplicities and the exact characteristic polynomial"""
    g, _, label = resolve_graph(request.expr, request.g6)
    logger.info(f"Spectrum request: {label} ({request.kind.value})")
    numeric = numeric_service.eigenvalues_numeric(g, request.kind)
    report = numeric.to_report()
    return SpectrumResponse(
        graph6=g6_encode(g).decode("ascii"),
        kind=request.kind,
        tol=report["tol"],
        groups=report["groups"],
        char_poly=polynomial_service.char_poly_exact(g, request.kind).to_json(),
    )


@router.post("/compare", response_model=CompareResponse)
def compare(request: CompareRequest):
    a, _, _ = resolve_graph(request.a.expr, request.a.g6)
    b, _, _ = resolve_graph(request.b.expr, request.b.g6)
    pa = polynomial_service.char_poly_exact(a, request.kind)
    pb = polynomial_service.char_poly_exact(b, request.kind)
    return CompareResponse(
        kind=request.kind,
        cospectral=pa.coeffs == pb.coeffs,
        isomorphic=decide_isomorphism(a, b),
        vertex_counts=(a.n, b.n),
        fingerprints=(pa.fingerprint, pb.fingerprint),
    )


@router.post("/invariants", response_model=InvariantReport)
def invariants(request: InvariantsRequest):
    g, _, label = resolve_graph(request.expr, request.g6)
    logger.info(f"Invariant report for {label}")
    return invariant_service.invariant_report(g)


@router.post("/perfect", response_model=PerfectReport)
def perfect(request: PerfectRequest):
    g, params, _ = resolve_graph(request.expr, request.g6)
    if params is not None:
        return perfection_service.multicone_report(params, request.max_len)
    return perfection_service.is_perfect(g, request.max_len)


@router.get("/closed/{kind}")
def closed(kind: str, w: int = Query(..., ge=1), m: int = Query(..., ge=1), n: int = Query(..., ge=3)) -> Dict[str, Any]:
    """Closed-form spectrum of K_w joined with mC_n"""
    p = MulticoneParams(w, m, n)
    return closed_form_service.multicone_spectrum(p, MatrixKind.parse(kind)).to_json()
