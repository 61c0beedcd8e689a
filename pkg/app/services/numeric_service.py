"""
Floating-point spectra, multiplicity grouping and the vertex-deleted main-angle identity
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.models.graph import Graph
from app.models.spectra import MainAngles, MatrixKind, NumericSpectrum
from app.services.polynomial_service import kind_matrix, polynomial_service
from app.utils.exceptions import (
    KindMismatchError,
    NumericFailureError,
    SampleTooCloseError,
    SizeLimitError,
    ValidationError,
)
from app.utils.graph_ops import delete_vertex

logger = logging.getLogger(__name__)

SAMPLE_MIN_DISTANCE = 0.5


def group_values(values: Sequence[float], tol: float) -> List[Tuple[float, int]]:
    """Group descending values whose consecutive gaps are within tol; each group reports its mean"""
    groups: List[List[float]] = []
    for value in values:
        if groups and abs(groups[-1][-1] - value) <= tol:
            groups[-1].append(value)
        else:
            groups.append([value])
    return [(float(np.mean(group)), len(group)) for group in groups]


class NumericSpectrumService:
    """Dense symmetric eigensolver wrappers"""

    def _eigh(self, g: Graph, kind: MatrixKind, vectors: bool = False):
        if g.n > settings.MAX_VERTICES:
            raise SizeLimitError("Graph", g.n, settings.MAX_VERTICES)
        matrix = kind_matrix(g, kind, dtype=np.float64)
        try:
            return np.linalg.eigh(matrix) if vectors else np.linalg.eigvalsh(matrix)
        except np.linalg.LinAlgError as e:
            raise NumericFailureError(str(e), g.n)

    def eigenvalues_numeric(
        self,
        g: Graph,
        kind: MatrixKind = MatrixKind.ADJACENCY,
        tol: Optional[float] = None,
    ) -> NumericSpectrum:
        """
        Full eigenvalue multiset of A, L or Q

        Args:
            g: Input graph
            kind: Matrix kind
            tol: Grouping tolerance (defaults to settings.GROUPING_TOLERANCE)

        Returns:
            NumericSpectrum with descending values and multiplicity groups
        """
        tol = settings.GROUPING_TOLERANCE if tol is None else tol
        kind = MatrixKind(kind)
        values = self._eigh(g, kind)[::-1]
        if kind != MatrixKind.ADJACENCY:
            # Positive semidefinite; clip solver noise around zero
            values = np.where(np.abs(values) < 1e-12, 0.0, values)
        listed = [float(v) + 0.0 for v in values]
        return NumericSpectrum(kind=kind, tol=tol, values=listed, groups=group_values(listed, tol))

    def signless_laplacian_spectrum(self, g: Graph) -> NumericSpectrum:
        return self.eigenvalues_numeric(g, MatrixKind.SIGNLESS_LAPLACIAN)

    def spectral_radius(self, g: Graph) -> float:
        return float(self._eigh(g, MatrixKind.ADJACENCY)[-1])

    def spectra_equal_numeric(self, a: NumericSpectrum, b: NumericSpectrum, tol: Optional[float] = None) -> bool:
        if a.kind != b.kind:
            raise KindMismatchError(a.kind.value, b.kind.value)
        tol = settings.EIGEN_MATCH_TOLERANCE if tol is None else tol
        if len(a.values) != len(b.values):
            return False
        x = np.sort(np.array(a.values))
        y = np.sort(np.array(b.values))
        return bool(np.all(np.abs(x - y) <= tol))

    def main_angles(self, g: Graph, tol: Optional[float] = None) -> MainAngles:
        """
        Projection norms of each standard basis vector onto each adjacency eigenspace

        Args:
            g: Input graph (at most MAIN_ANGLE_MAX_VERTICES vertices)
            tol: Grouping tolerance for distinct eigenvalues

        Returns:
            MainAngles with one row per distinct eigenvalue (descending)
        """
        if g.n > settings.MAIN_ANGLE_MAX_VERTICES:
            raise SizeLimitError("Main-angle graph", g.n, settings.MAIN_ANGLE_MAX_VERTICES)
        tol = settings.GROUPING_TOLERANCE if tol is None else tol
        values, vectors = self._eigh(g, MatrixKind.ADJACENCY, vectors=True)
        values = values[::-1]
        vectors = vectors[:, ::-1]

        eigenvalues: List[float] = []
        rows: List[np.ndarray] = []
        start = 0
        for mean, mult in group_values([float(v) for v in values], tol):
            block = vectors[:, start:start + mult]
            rows.append(np.sqrt((block ** 2).sum(axis=1)))
            eigenvalues.append(mean)
            start += mult
        return MainAngles(tuple(eigenvalues), np.vstack(rows))

    def main_angle_identity_residual(self, g: Graph, j: int, samples: Sequence[float]) -> float:
        """
        Max residual of P_{G-j}(y) = P_G(y) * sum_i alpha_ij^2 / (y - mu_i) over the samples

        Args:
            g: Input graph
            j: Deleted vertex
            samples: Evaluation points, each at least 0.5 away from every eigenvalue

        Returns:
            Largest absolute residual across the samples
        """
        if not 0 <= j < g.n:
            raise ValidationError(f"Vertex {j} outside graph", field="j", value=j)
        angles = self.main_angles(g)
        for y in samples:
            for mu in angles.eigenvalues:
                if abs(y - mu) < SAMPLE_MIN_DISTANCE:
                    raise SampleTooCloseError(y, mu, SAMPLE_MIN_DISTANCE)

        p_g = polynomial_service.char_poly_exact(g, MatrixKind.ADJACENCY)
        p_deleted = None if g.n == 1 else polynomial_service.char_poly_exact(delete_vertex(g, j), MatrixKind.ADJACENCY)
        weights = angles.alphas[:, j] ** 2
        mus = np.array(angles.eigenvalues)

        residual = 0.0
        for y in samples:
            y = float(y)
            lhs = 1.0 if p_deleted is None else float(p_deleted.evaluate(y))
            rhs = float(p_g.evaluate(y)) * float(np.sum(weights / (y - mus)))
            residual = max(residual, abs(lhs - rhs))
        logger.debug(f"Main-angle residual at vertex {j}: {residual:.3e}")
        return residual


# Global instance
numeric_service = NumericSpectrumService()
