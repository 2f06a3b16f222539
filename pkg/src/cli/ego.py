from lib.centrality import KatzParams, katz_centrality, rank
from lib.graph import EntityType
from lib.helpers import load_config, validate_colors
from lib.ingest import load_graph
from lib.query import neighborhood
from lib.report import (render_rank_table, render_subnetwork_stats, to_dot,
                        to_graphml)
from typing import Any


def main(entities: str, relations: str, nodes: list[str], fmt: str,
         top: int | None, etype: EntityType | None, config: str | None,
         debug: bool, **kwargs: Any) -> None:
    settings = load_config(config)
    graph, _ = load_graph(entities, relations)
    subnetwork = neighborhood(graph, nodes)

    if fmt == 'stats':
        print(render_subnetwork_stats(subnetwork), end='')
    elif fmt == 'dot':
        print(to_dot(graph, subnetwork, validate_colors(settings["COLORS"])), end='')
    elif fmt == 'graphml':
        print(to_graphml(graph, subnetwork), end='')
    else:
        # ranked by centrality in the whole graph, as the subnetwork is a view
        result = katz_centrality(graph, KatzParams.from_config(settings),
                                 spectral_tol=settings["SPECTRAL"]["tol"],
                                 spectral_max_iters=settings["SPECTRAL"]["max_iters"])
        ranking = rank(result, graph, top_k=top or settings["REPORT"]["top"],
                       etype=etype, within=subnetwork.nodes)
        print(render_rank_table(ranking), end='')
