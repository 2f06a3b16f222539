from lib.errors import SameEndpoints
from lib.graph import EntityType
from lib.ingest import load_graph
from lib.query import PathConstraint, path_members, paths_between
from lib.report import render_paths
from typing import Any


def main(entities: str, relations: str, source: str, target: str,
         max_hops: int, intermediate_types: list[EntityType],
         list_type: EntityType | None, debug: bool, **kwargs: Any) -> None:
    if source == target:
        raise SameEndpoints(f"--from and --to are both {source!r}")
    constraint = PathConstraint(max_hops, frozenset(intermediate_types))

    graph, _ = load_graph(entities, relations)
    found = paths_between(graph, source, target, constraint)

    if list_type is None:
        print(render_paths(found), end='')
    else:
        for member in path_members(graph, found, list_type):
            print(member)
