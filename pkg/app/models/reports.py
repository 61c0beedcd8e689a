from pydantic import BaseModel
from typing import Optional, Dict, Any, List, Tuple
from enum import Enum

from app.models.spectra import MatrixKind


class StructureClass(str, Enum):
    REGULAR = "regular"
    BIDEGREED = "bidegreed"
    NEITHER = "neither"


class DsVerdict(str, Enum):
    UNIQUE_AMONG_CONNECTED = "unique_among_connected"
    MATES_FOUND = "mates_found"
    UNIQUE_OVERALL = "unique_overall"


class WitnessKind(str, Enum):
    ODD_HOLE = "odd_hole"
    ODD_ANTIHOLE = "odd_antihole"


class ReportStatus(str, Enum):
    OK = "ok"
    NOT_APPLICABLE = "not_applicable"


# Invariants

class SpectrumFacts(BaseModel):
    kind: MatrixKind
    vertex_count: int
    edge_count: int
    closed_walk_counts: Optional[Dict[int, int]] = None  # adjacency: length -> count
    triangle_count: Optional[int] = None
    is_regular_by_spectrum: Optional[bool] = None
    is_bipartite_by_spectrum: Optional[bool] = None
    spanning_tree_count: Optional[int] = None  # Laplacian only
    component_count: Optional[int] = None
    sum_sq_degrees: Optional[int] = None


class BoundReport(BaseModel):
    rho: float
    delta: int
    vertex_count: int
    edge_count: int
    bound: float
    equality_holds: bool
    structure_class: StructureClass
    bidegrees: Optional[Tuple[int, int]] = None


class RegularityReport(BaseModel):
    is_regular: bool
    rho: float
    average_degree: float
    rho_equals_average: bool
    ones_is_eigenvector: bool
    consistent: bool


class JoinReport(BaseModel):
    has_join_eigenvalue: bool
    is_join: bool
    consistent: bool


class MultipartiteReport(BaseModel):
    parts: Optional[List[int]] = None
    positive_eigenvalue_count: int
    exact_guard_used: bool
    consistent: bool


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str


class ThreeEigenvalueReport(BaseModel):
    status: ReportStatus
    reason: Optional[str] = None
    eigenvalues: List[float] = []
    complete_bipartite: Optional[bool] = None
    checks: List[CheckResult] = []

    @property
    def all_passed(self) -> bool:
        return self.status == ReportStatus.OK and all(c.passed for c in self.checks)


class DegreeProfile(BaseModel):
    shape: str  # regular | bidegreed | other
    degrees: List[Tuple[int, int]]  # (degree, count), highest degree first

    def __str__(self) -> str:
        body = ", ".join(f"{d}^{c}" for d, c in self.degrees)
        return f"{self.shape.capitalize()}({body})"


class InvariantReport(BaseModel):
    graph6: str
    vertex_count: int
    edge_count: int
    connected: bool
    adjacency_facts: SpectrumFacts
    laplacian_facts: SpectrumFacts
    bound: Optional[BoundReport] = None
    regularity: RegularityReport
    join: JoinReport
    multipartite: MultipartiteReport
    three_eigenvalue: ThreeEigenvalueReport
    degree_profile: DegreeProfile


# Cospectral search

class SpaceSummary(BaseModel):
    source: str  # labeled | corpus
    vertex_count: int
    connected_only: bool
    edge_count: Optional[int] = None
    scanned: int = 0
    candidates: int = 0
    polynomial_matches: int = 0


class MateRecord(BaseModel):
    graph6: str
    connected: bool
    isomorphic_to_target: bool
    edge_count: int
    component_count: int


class DsReport(BaseModel):
    target_graph6: str
    target_label: Optional[str] = None
    params: Optional[Dict[str, int]] = None  # w, m, n for multicone targets
    kind: MatrixKind
    fingerprint: str
    space: SpaceSummary
    mates: List[MateRecord]
    verdict: DsVerdict


class CertificationReport(BaseModel):
    params: Dict[str, int]
    kind: MatrixKind
    report: DsReport
    expectation: Optional[str] = None  # "unique" or None when no outcome is expected
    consistent: Optional[bool] = None
    note: str


class MateDegreeRow(BaseModel):
    graph6: str
    min_degree: int
    degree_profile: str
    min_degree_ok: bool
    profile_ok: bool


class MateDegreeAudit(BaseModel):
    params: Dict[str, int]
    expected_min_degree: int
    rows: List[MateDegreeRow]
    all_ok: bool


class DisconnectedMateReport(BaseModel):
    label: str
    left: str
    right: str
    vertex_counts: Tuple[int, int]
    edge_counts: Tuple[int, int]
    component_counts: Tuple[int, int]
    cospectral: bool
    non_isomorphic: bool
    passed: bool
    message: str


class TransferReport(BaseModel):
    params: Dict[str, int]
    ds_verdict: DsVerdict
    certified: bool
    perfect: Optional[bool] = None
    predicate: bool
    agrees: Optional[bool] = None


# Perfection

class BergeWitness(BaseModel):
    kind: WitnessKind
    vertices: List[int]


class PerfectReport(BaseModel):
    perfect: bool
    max_len: int
    witness: Optional[BergeWitness] = None
    predicate: Optional[bool] = None  # multicone inputs only


# Claim registry

class ClaimResult(BaseModel):
    claim_id: str
    description: str
    passed: bool
    detail: str
    data: Optional[Dict[str, Any]] = None


class SuiteSummary(BaseModel):
    total: int
    passed: int
    failed: int
    full: bool
    claims: List[ClaimResult]

    @property
    def all_passed(self) -> bool:
        return self.failed == 0
