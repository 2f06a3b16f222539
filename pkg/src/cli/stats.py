from lib.ingest import load_graph
from lib.report import render_graph_stats
from typing import Any


def main(entities: str, relations: str, debug: bool, **kwargs: Any) -> None:
    graph, report = load_graph(entities, relations)
    print(render_graph_stats(graph, report), end='')
