import logging
import math
import numpy as np
import pandas as pd

from collections.abc import Iterable
from dataclasses import dataclass
from lib.errors import NoConvergence
from lib.graph import EntityType, KnowledgeGraph
from typing import Any

logger = logging.getLogger('')

TIE_RTOL = 1e-12


@dataclass(frozen=True)
class KatzParams:
    """
    Settings for `katz_centrality`. The attenuation factor used is
    alpha = alpha_scale / lambda_max, so any alpha_scale in (0, 1) keeps
    alpha below the reciprocal of the largest eigenvalue and the series
    converges.
    """
    alpha_scale: float = 0.85
    normalize: bool = True
    tol: float = 1e-10
    max_iters: int = 10000

    def __post_init__(self) -> None:
        if not 0. < self.alpha_scale < 1.:
            raise ValueError(f"alpha_scale must lie in (0, 1), got {self.alpha_scale}")
        if self.tol <= 0.:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")

    @classmethod
    def from_config(cls, config: dict[str, dict[str, Any]],
                    **overrides: Any) -> 'KatzParams':
        settings = dict(config["KATZ"])
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)


@dataclass(frozen=True)
class CentralityResult:
    scores: np.ndarray
    alpha_used: float
    lambda_max: float
    iterations: int
    normalized: bool


def spectral_radius(graph: KnowledgeGraph, tol: float = 1e-8,
                    max_iters: int = 10000) -> float:
    """
    Largest eigenvalue of the collapsed adjacency matrix by power iteration.

    Iterates on A + I from the all-ones vector: the shift makes the largest
    eigenvalue strictly dominant in magnitude, so bipartite graphs (whose
    spectrum is symmetric around zero) converge instead of oscillating. The
    estimate is the Rayleigh quotient of A itself. For a symmetric matrix a
    residual |Ay - my| below tol puts the quotient m within tol of an
    eigenvalue.

    :param graph: A frozen graph
    :param tol: Stop once the estimate moves less than this between
                iterations and the residual is below it too
    :param max_iters: Iteration limit
    :return: lambda_max, 0 for a graph without edges
    :raises NoConvergence: if max_iters is reached first
    """
    adjacency = graph.adjacency
    n = adjacency.shape[0]
    if adjacency.nnz == 0:
        return 0.

    vector = np.ones(n) / math.sqrt(n)
    estimate = 0.
    residual = math.inf
    for iteration in range(1, max_iters + 1):
        product = adjacency @ vector
        rayleigh = float(vector @ product)
        residual = float(np.linalg.norm(product - rayleigh * vector))
        if abs(rayleigh - estimate) < tol and residual < tol:
            logger.info(f"Spectral radius {rayleigh:.10g} after {iteration} iterations")
            return rayleigh
        estimate = rayleigh
        shifted = product + vector
        vector = shifted / np.linalg.norm(shifted)

    raise NoConvergence(f"Power iteration did not converge in {max_iters} "
                        f"iterations (last estimate {estimate}, residual {residual:.3g})")


def katz_centrality(graph: KnowledgeGraph,
                    params: KatzParams = KatzParams(),
                    spectral_tol: float = 1e-8,
                    spectral_max_iters: int = 10000) -> CentralityResult:
    """
    Katz centrality of every node, the sum over walk lengths k >= 1 of
    alpha^k times the number of walks of length k ending at the node.

    Computed as the fixed point of x <- alpha * A^T (x + 1) starting from the
    all-ones vector, stopping when successive iterates differ by less than
    `params.tol` in every component. With `params.normalize` the scores are
    scaled to unit L2 norm; an all-zero result stays zero.

    :param graph: A frozen graph with at least one entity
    :param params: Attenuation, normalization and stopping settings
    :return: The scores in node index order with the alpha used
    :raises NoConvergence: if params.max_iters is reached first
    """
    adjacency = graph.adjacency
    n = adjacency.shape[0]
    if n == 0:
        raise ValueError("Katz centrality needs a graph with at least one entity")

    lambda_max = spectral_radius(graph, spectral_tol, spectral_max_iters)
    # edgeless: 1/lambda_max is undefined and every term vanishes
    alpha = params.alpha_scale / lambda_max if lambda_max > 0. else params.alpha_scale

    transposed = adjacency.T
    ones = np.ones(n)
    scores = np.ones(n)
    for iteration in range(1, params.max_iters + 1):
        updated = alpha * (transposed @ (scores + ones))
        delta = float(np.max(np.abs(updated - scores)))
        scores = updated
        if delta < params.tol:
            break
    else:
        raise NoConvergence(f"Katz iteration did not converge in "
                            f"{params.max_iters} iterations")
    logger.info(f"Katz centrality with alpha {alpha:.6g} converged after "
                f"{iteration} iterations")

    if params.normalize:
        norm = float(np.linalg.norm(scores))
        if norm > 0.:
            scores = scores / norm

    return CentralityResult(scores=scores, alpha_used=alpha,
                            lambda_max=lambda_max, iterations=iteration,
                            normalized=params.normalize)


def tie_tiers(scores: np.ndarray) -> np.ndarray:
    """
    Number the runs of descending scores that only differ by rounding noise.
    Equal walk counts summed in a different order can differ in the last
    bits, and those nodes must still tie.
    """
    if len(scores) == 0:
        return np.zeros(0, dtype=np.int64)
    split = -np.diff(scores) > TIE_RTOL * np.abs(scores[:-1])
    return np.concatenate(([0], np.cumsum(split)))


def rank(result: CentralityResult, graph: KnowledgeGraph,
         top_k: int | None = None, etype: EntityType | None = None,
         within: Iterable[str] | None = None) -> pd.DataFrame:
    """
    Rank nodes by centrality, highest first with ties going to the smaller
    id. Filtering by type or by a node set happens after scoring on the
    full graph, and ranks restart from 1 within the filtered nodes.

    :param result: Centrality computed on `graph`
    :param graph: The frozen graph the scores belong to
    :param top_k: Number of rows to keep, None for all
    :param etype: Only rank nodes of this type
    :param within: Only rank nodes in this set of ids
    :return: Dataframe with columns rank, id, type, score in rank order
    """
    if len(result.scores) != graph.n:
        raise ValueError(f"Result has {len(result.scores)} scores for a graph "
                         f"of {graph.n} entities")

    table = graph.nodes.assign(score=result.scores)
    if etype is not None:
        table = table[table['type'] == str(etype)]
    if within is not None:
        members = set(within)
        graph.check_ids(members)
        table = table[table.index.isin(members)]

    table = table.reset_index().sort_values('score', ascending=False,
                                            kind='mergesort')
    table = (table.assign(tier=tie_tiers(table['score'].to_numpy()))
             .sort_values(['tier', 'id'], kind='mergesort'))
    if top_k is not None:
        table = table.head(top_k)
    table = table.assign(rank=range(1, len(table) + 1))
    return table.loc[:, ['rank', 'id', 'type', 'score']].reset_index(drop=True)
