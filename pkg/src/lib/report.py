import networkx as nx
import pandas as pd

from collections.abc import Sequence
from lib.graph import EntityType, KnowledgeGraph
from lib.ingest import IngestReport
from lib.query import Subnetwork, TreatmentHit

ColorMap = dict[EntityType, str]

DEFAULT_COLORS: ColorMap = {
    EntityType.PROTEIN: 'blue',
    EntityType.DRUG: 'green',
    EntityType.DISEASE: 'red',
    EntityType.TAXONOMY: 'orange',
}

RANK_COLUMNS = {
    'rank': 'Rank',
    'id': 'Entity',
    'type': 'Type',
    'score': 'Centrality Measure',
}

TREATMENT_COLUMNS = ['Entry', 'Drug', 'Relation', 'Disease', 'Reference Id']

TABLE_FORMATS = ('tsv', 'markdown')


def format_table(frame: pd.DataFrame, fmt: str) -> str:
    """
    Render a dataframe of strings as tab separated lines, or as a markdown
    pipe table. An empty frame gives the header only.
    """
    if fmt not in TABLE_FORMATS:
        raise ValueError(f"Unknown table format {fmt!r}, expected {TABLE_FORMATS}")
    rows = frame.to_numpy().tolist()
    if fmt == 'tsv':
        lines = ['\t'.join(frame.columns)] + ['\t'.join(row) for row in rows]
    else:
        lines = (['| ' + ' | '.join(frame.columns) + ' |',
                  '|' + '|'.join('---' for _ in frame.columns) + '|']
                 + ['| ' + ' | '.join(row) + ' |' for row in rows])
    return '\n'.join(lines) + '\n'


def render_rank_table(ranking: pd.DataFrame, fmt: str = 'tsv') -> str:
    """
    Table of ranked entities with scores to four decimal places.

    :param ranking: Output of `centrality.rank`
    :param fmt: 'tsv' or 'markdown'
    """
    table = pd.DataFrame({
        'rank': ranking['rank'].astype(int).astype(str),
        'id': ranking['id'].astype(str),
        'type': ranking['type'].astype(str),
        'score': ranking['score'].map(lambda s: f'{s:.4f}'),
    }, columns=list(RANK_COLUMNS)).rename(columns=RANK_COLUMNS)
    return format_table(table, fmt)


def render_treatment_table(hits: Sequence[TreatmentHit], fmt: str = 'tsv') -> str:
    table = pd.DataFrame(
        [[str(entry), hit.drug, hit.rtype, hit.disease,
          ';'.join(sorted(hit.evidence))]
         for entry, hit in enumerate(hits, start=1)],
        columns=TREATMENT_COLUMNS)
    return format_table(table, fmt)


def render_subnetwork_stats(subnetwork: Subnetwork) -> str:
    lines = [f"nodes: {subnetwork.node_count} edges: {subnetwork.edge_count}"]
    lines += [f"{etype}: {subnetwork.type_counts.get(etype, 0)}"
              for etype in EntityType]
    return '\n'.join(lines) + '\n'


def render_graph_stats(graph: KnowledgeGraph, report: IngestReport) -> str:
    """
    Size of the graph, entities per type, and a summary of the rows
    rejected or merged while loading it
    """
    lines = [f"entities: {graph.n}",
             f"relations: {len(graph.relations())}",
             f"edges: {graph.edge_count()}"]
    lines += [f"{etype}: {count}" for etype, count in graph.type_counts().items()]
    lines += [f"entity rows read: {report.entity_rows_read}",
              f"relation rows read: {report.relation_rows_read}",
              f"duplicates merged: {report.duplicates_merged}",
              f"rows rejected: {report.rows_rejected}"]
    return '\n'.join(lines) + '\n'


def render_paths(paths: Sequence[Sequence[str]]) -> str:
    return ''.join(' -> '.join(path) + '\n' for path in paths)


def quote(text: str) -> str:
    escaped = text.replace('\\', '\\\\').replace('"', '\\"')
    return f'"{escaped}"'


def dot_color(color: str) -> str:
    return quote(color) if color.startswith('#') else color


def to_dot(graph: KnowledgeGraph, subnetwork: Subnetwork,
           colors: ColorMap = DEFAULT_COLORS) -> str:
    """
    Undirected DOT document of a subnetwork, nodes filled with the color of
    their entity type and labelled with their name. Nodes and edges are
    written in id order, each edge once.

    :param graph: The graph the subnetwork was taken from, for names and types
    :param subnetwork: Nodes and edges to draw
    :param colors: Fill color per entity type
    """
    lines = ['graph G {']
    for node in subnetwork.nodes:
        entity = graph.entity(node)
        lines.append(f'  {quote(node)} [label={quote(entity.name)}, '
                     f'style=filled, fillcolor={dot_color(colors[entity.etype])}];')
    for u, v in subnetwork.edges:
        lines.append(f'  {quote(u)} -- {quote(v)};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def to_networkx(graph: KnowledgeGraph, subnetwork: Subnetwork) -> nx.Graph:
    """
    Undirected networkx graph of a subnetwork with `name` and `type` node
    attributes and the `;` joined relation types of each pair as `rtypes`
    """
    network = nx.Graph()
    for node in subnetwork.nodes:
        entity = graph.entity(node)
        network.add_node(node, name=entity.name, type=str(entity.etype))
    for u, v in subnetwork.edges:
        network.add_edge(u, v, rtypes=';'.join(graph.relation_types_between(u, v)))
    return network


def to_graphml(graph: KnowledgeGraph, subnetwork: Subnetwork) -> str:
    return '\n'.join(nx.generate_graphml(to_networkx(graph, subnetwork))) + '\n'
