"""
Exact characteristic polynomials of adjacency, Laplacian and signless Laplacian
matrices, computed with the Faddeev-LeVerrier recurrence in integer arithmetic.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Union

import numpy as np

from app.config import settings
from app.models.graph import Graph
from app.models.spectra import CharPoly, Exact, MatrixKind, sign_changes
from app.utils.exceptions import InvariantBreachError, KindMismatchError, SizeLimitError
from app.utils.graph_ops import components, induced_subgraph

logger = logging.getLogger(__name__)

_INT64_SAFE = 2 ** 62


def kind_matrix(g: Graph, kind: MatrixKind, dtype=np.int64) -> np.ndarray:
    """A, D - A or D + A as a dense matrix"""
    a = g.adjacency_matrix(dtype=dtype)
    if kind == MatrixKind.ADJACENCY:
        return a
    d = np.diag(np.array(g.degrees(), dtype=dtype))
    return d - a if kind == MatrixKind.LAPLACIAN else d + a


def kind_matrix_batch(adjacency: np.ndarray, kind: MatrixKind) -> np.ndarray:
    """Same as kind_matrix for a (B, n, n) stack of adjacency matrices"""
    if kind == MatrixKind.ADJACENCY:
        return adjacency
    degrees = adjacency.sum(axis=2)
    n = adjacency.shape[1]
    d = degrees[:, :, None] * np.eye(n, dtype=adjacency.dtype)[None, :, :]
    return d - adjacency if kind == MatrixKind.LAPLACIAN else d + adjacency


def fits_int64(n: int) -> bool:
    """Entry growth of the recurrence stays below 2**62 for these sizes"""
    return (2 * n + 1) ** (n + 1) < _INT64_SAFE


def _faddeev_leverrier(matrix: np.ndarray) -> List[int]:
    n = matrix.shape[0]
    identity = np.eye(n, dtype=matrix.dtype)
    coeffs = [1]
    m = np.zeros_like(matrix)
    for k in range(1, n + 1):
        m = matrix @ m + coeffs[-1] * identity
        trace = int(np.trace(matrix @ m))
        if trace % k:
            raise InvariantBreachError(f"non-exact division {trace}/{k} in Faddeev-LeVerrier", "char_poly_exact")
        coeffs.append(-trace // k)
    return coeffs


@lru_cache(maxsize=4096)
def _char_poly_cached(g: Graph, kind: MatrixKind) -> CharPoly:
    parts = components(g)
    if len(parts) > 1 and not fits_int64(g.n):
        # Block-diagonal: the polynomial factors over components
        result = CharPoly((1,), kind)
        for part in parts:
            result = result * _char_poly_cached(induced_subgraph(g, part), kind)
        return CharPoly(result.coeffs, kind)
    dtype = np.int64 if fits_int64(g.n) else object
    matrix = kind_matrix(g, kind, dtype=np.int64).astype(dtype)
    return CharPoly(tuple(_faddeev_leverrier(matrix)), kind)


class PolynomialService:
    """Exact characteristic polynomials and the exact decisions built on them"""

    def char_poly_exact(self, g: Graph, kind: MatrixKind = MatrixKind.ADJACENCY) -> CharPoly:
        """
        Exact det(xI - M) for the matrix of the given kind

        Args:
            g: Input graph (up to the vertex cap)
            kind: Adjacency, Laplacian or signless Laplacian

        Returns:
            Monic CharPoly of degree g.n with integer coefficients
        """
        if g.n > settings.MAX_VERTICES:
            raise SizeLimitError("Graph", g.n, settings.MAX_VERTICES)
        return _char_poly_cached(g, MatrixKind(kind))

    def char_poly_batch(self, adjacency: np.ndarray, kind: MatrixKind = MatrixKind.ADJACENCY) -> np.ndarray:
        """
        Characteristic polynomial coefficients for a stack of adjacency matrices

        Args:
            adjacency: int64 array of shape (B, n, n)
            kind: Matrix kind applied to every member of the stack

        Returns:
            int64 array of shape (B, n + 1), degree-descending coefficients
        """
        batch, n, _ = adjacency.shape
        if not fits_int64(n):
            raise SizeLimitError("Batched polynomial matrix", n, 12)
        matrix = kind_matrix_batch(adjacency.astype(np.int64), kind)
        identity = np.eye(n, dtype=np.int64)[None, :, :]
        coeffs = np.zeros((batch, n + 1), dtype=np.int64)
        coeffs[:, 0] = 1
        m = np.zeros_like(matrix)
        for k in range(1, n + 1):
            m = matrix @ m + coeffs[:, k - 1, None, None] * identity
            trace = np.trace(matrix @ m, axis1=1, axis2=2)
            if np.any(trace % k):
                raise InvariantBreachError("non-exact division in batched Faddeev-LeVerrier", "char_poly_batch")
            coeffs[:, k] = -(trace // k)
        return coeffs

    def cospectral_exact(self, g: Graph, h: Graph, kind: MatrixKind = MatrixKind.ADJACENCY) -> bool:
        if g.n != h.n:
            return False
        return self.char_poly_exact(g, kind).coeffs == self.char_poly_exact(h, kind).coeffs

    def poly_evaluate(self, p: CharPoly, x: Union[int, Fraction, str]) -> Exact:
        """Exact Horner evaluation at a rational point"""
        value = Fraction(x)
        result = p.evaluate(value)
        return result.numerator if result.denominator == 1 else result

    def power_sums(self, p: CharPoly, count: int) -> List[int]:
        """
        Newton sums s_1..s_count of the roots of p

        For an adjacency polynomial s_k is the number of closed walks of length k.
        """
        n = p.degree
        e = [p.coeffs[i] if i <= n else 0 for i in range(count + 1)]
        sums: List[int] = []
        for k in range(1, count + 1):
            total = k * e[k]
            for i in range(1, k):
                total += e[i] * sums[k - i - 1]
            sums.append(-total)
        return sums

    def root_multiplicity(self, p: CharPoly, root: Exact) -> int:
        return p.root_multiplicity(root)

    def positive_root_count(self, p: CharPoly) -> int:
        """Descartes' rule of signs; exact because characteristic polynomials are real-rooted"""
        return sign_changes(p.coeffs)

    def require_kind(self, p: CharPoly, kind: MatrixKind) -> None:
        if p.kind is not None and p.kind != kind:
            raise KindMismatchError(kind.value, p.kind.value)


# Global instance
polynomial_service = PolynomialService()
