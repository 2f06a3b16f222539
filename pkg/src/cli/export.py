import logging

from lib.helpers import labelled_file, load_config, validate_colors
from lib.ingest import load_graph, write_tsv
from lib.query import whole_graph
from lib.report import to_dot, to_graphml
from pathlib import Path
from typing import Any

logger = logging.getLogger('')


def main(entities: str, relations: str, fmt: str, out: str | None,
         config: str | None, debug: bool, **kwargs: Any) -> None:
    settings = load_config(config)
    graph, _ = load_graph(entities, relations)

    if fmt == 'tsv':
        if out is None:
            raise ValueError("tsv export needs an output path")
        out_path = Path(out)
        entities_path = labelled_file(out_path.parent, out_path, 'entities', '.tsv')
        relations_path = labelled_file(out_path.parent, out_path, 'relations', '.tsv')
        write_tsv(graph, entities_path, relations_path)
        logger.info(f"Wrote {entities_path} and {relations_path}")
        return

    network = whole_graph(graph)
    if fmt == 'dot':
        text = to_dot(graph, network, validate_colors(settings["COLORS"]))
    else:
        text = to_graphml(graph, network)

    if out is None:
        print(text, end='')
    else:
        Path(out).write_text(text, encoding='utf-8')
        logger.info(f"Wrote {fmt} export to {out}")
