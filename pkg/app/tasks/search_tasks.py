"""
Scan partitions for the cospectral-mate search

Each task is a pure function of its arguments so joblib can ship it to a
worker process; the reducer in search_service merges results in partition order.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from app.models.graph import Graph
from app.models.spectra import MatrixKind
from app.services.polynomial_service import fits_int64, polynomial_service
from app.utils.graph6 import edge_positions

logger = logging.getLogger(__name__)


@dataclass
class PartitionResult:
    scanned: int = 0
    candidates: int = 0
    matches: List[int] = field(default_factory=list)  # masks for labeled scans, corpus indices otherwise


def _matching_rows(coeffs: np.ndarray, target: Sequence[int]) -> np.ndarray:
    return np.all(coeffs == np.asarray(target, dtype=np.int64)[None, :], axis=1)


def scan_mask_range(
    n: int,
    start: int,
    stop: int,
    kind: str,
    target: Tuple[int, ...],
    edge_count: int,
    batch_size: int,
) -> PartitionResult:
    """
    Scan labeled graphs with edge masks in [start, stop)

    Args:
        n: Vertex count
        start, stop: Mask range
        kind: MatrixKind value
        target: Target polynomial coefficients (degree-descending)
        edge_count: Only masks with this many set bits reach the polynomial step
        batch_size: Masks per vectorised batch

    Returns:
        PartitionResult with the masks whose polynomial equals the target
    """
    positions = edge_positions(n)
    rows_i = np.array([i for i, _ in positions], dtype=np.intp)
    rows_j = np.array([j for _, j in positions], dtype=np.intp)
    shifts = np.arange(len(positions), dtype=np.int64)
    result = PartitionResult()

    for lo in range(start, stop, batch_size):
        hi = min(stop, lo + batch_size)
        masks = np.arange(lo, hi, dtype=np.int64)
        result.scanned += hi - lo
        bits = (masks[:, None] >> shifts[None, :]) & 1
        keep = bits.sum(axis=1) == edge_count
        if not keep.any():
            continue
        masks = masks[keep]
        bits = bits[keep]
        result.candidates += len(masks)

        adjacency = np.zeros((len(masks), n, n), dtype=np.int64)
        adjacency[:, rows_i, rows_j] = bits
        adjacency[:, rows_j, rows_i] = bits
        coeffs = polynomial_service.char_poly_batch(adjacency, MatrixKind(kind))
        result.matches.extend(int(m) for m in masks[_matching_rows(coeffs, target)])
    return result


def scan_corpus_chunk(
    n: int,
    offset: int,
    rows: Sequence[Tuple[int, ...]],
    kind: str,
    target: Tuple[int, ...],
    edge_count: int,
) -> PartitionResult:
    """Scan a chunk of corpus graphs (given as adjacency bit-rows) on n vertices"""
    result = PartitionResult(scanned=len(rows))
    selected = [(offset + k, r) for k, r in enumerate(rows) if sum(x.bit_count() for x in r) == 2 * edge_count]
    result.candidates = len(selected)
    if not selected:
        return result

    if fits_int64(n):
        adjacency = np.zeros((len(selected), n, n), dtype=np.int64)
        for b, (_, r) in enumerate(selected):
            for i, row in enumerate(r):
                for j in range(n):
                    if row >> j & 1:
                        adjacency[b, i, j] = 1
        coeffs = polynomial_service.char_poly_batch(adjacency, MatrixKind(kind))
        hits = _matching_rows(coeffs, target)
        result.matches = [index for (index, _), hit in zip(selected, hits) if hit]
        return result

    for index, r in selected:
        p = polynomial_service.char_poly_exact(Graph(n, tuple(r)), MatrixKind(kind))
        if p.coeffs == tuple(target):
            result.matches.append(index)
    return result
