import logging

from lib.helpers import load_config, validate_colors
from lib.ingest import load_graph
from lib.query import drug_disease_network, treatments_for
from lib.report import render_treatment_table, to_dot, to_graphml
from pathlib import Path
from typing import Any

logger = logging.getLogger('')


def read_disease_ids(diseases_file: str | None, diseases: str | None) -> list[str]:
    """
    Disease ids from a file with one id per line, or from a comma separated
    list. Blank entries are ignored.
    """
    if diseases_file is not None:
        with open(diseases_file, encoding='utf-8') as data:
            entries = data.read().splitlines()
    else:
        entries = (diseases or '').split(',')
    return [entry.strip() for entry in entries if entry.strip()]


def main(entities: str, relations: str, diseases_file: str | None,
         diseases: str | None, rtype: str, fmt: str, network_out: str | None,
         network_format: str, no_same_type_edges: bool, config: str | None,
         debug: bool, **kwargs: Any) -> None:
    settings = load_config(config)
    disease_ids = read_disease_ids(diseases_file, diseases)
    if not disease_ids:
        raise ValueError("No disease ids given")

    graph, _ = load_graph(entities, relations)
    hits, unknown = treatments_for(graph, disease_ids, rtype)
    print(render_treatment_table(hits, fmt), end='')

    if network_out is not None:
        network = drug_disease_network(graph, [hit.drug for hit in hits],
                                       drop_same_type_edges=no_same_type_edges)
        if network_format == 'dot':
            text = to_dot(graph, network, validate_colors(settings["COLORS"]))
        else:
            text = to_graphml(graph, network)
        Path(network_out).write_text(text, encoding='utf-8')
        logger.info(f"Wrote drug-disease network with {network.node_count} nodes "
                    f"and {network.edge_count} edges to {network_out}")
