from pydantic import BaseModel, model_validator
from typing import Optional

from app.models.spectra import MatrixKind


class GraphInput(BaseModel):
    expr: Optional[str] = None
    g6: Optional[str] = None

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.expr is None) == (self.g6 is None):
            raise ValueError("Provide exactly one of 'expr' or 'g6'")
        return self


class SpectrumRequest(GraphInput):
    kind: MatrixKind = MatrixKind.ADJACENCY


class InvariantsRequest(GraphInput):
    pass


class PerfectRequest(GraphInput):
    max_len: Optional[int] = None


class CompareRequest(BaseModel):
    a: GraphInput
    b: GraphInput
    kind: MatrixKind = MatrixKind.ADJACENCY


class SpectrumResponse(BaseModel):
    graph6: str
    kind: MatrixKind
    tol: float
    groups: list
    char_poly: list


class CompareResponse(BaseModel):
    kind: MatrixKind
    cospectral: bool
    isomorphic: bool
    vertex_counts: tuple
    fingerprints: tuple
