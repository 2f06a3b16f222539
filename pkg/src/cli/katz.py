import logging

from lib.centrality import KatzParams, katz_centrality, rank
from lib.graph import EntityType
from lib.helpers import load_config
from lib.ingest import load_graph
from lib.report import render_rank_table
from typing import Any

logger = logging.getLogger('')


def main(entities: str, relations: str, alpha_scale: float | None,
         top: int | None, etype: EntityType | None, no_normalize: bool,
         fmt: str, config: str | None, debug: bool, **kwargs: Any) -> None:
    settings = load_config(config)
    params = KatzParams.from_config(settings, alpha_scale=alpha_scale,
                                    normalize=False if no_normalize else None)

    graph, _ = load_graph(entities, relations)
    result = katz_centrality(graph, params,
                             spectral_tol=settings["SPECTRAL"]["tol"],
                             spectral_max_iters=settings["SPECTRAL"]["max_iters"])
    logger.info(f"lambda_max {result.lambda_max:.6g}, alpha {result.alpha_used:.6g}, "
                f"{result.iterations} iterations")

    ranking = rank(result, graph, top_k=top or settings["REPORT"]["top"],
                   etype=etype)
    print(render_rank_table(ranking, fmt), end='')
