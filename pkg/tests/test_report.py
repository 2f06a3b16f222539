import networkx as nx
import pandas as pd
import pytest

from lib.graph import Entity, EntityType, KnowledgeGraph, Relation
from lib.ingest import load_graph
from lib.query import TreatmentHit, ego_subnetwork, induced_subgraph, whole_graph
from lib.report import (format_table, quote, render_graph_stats, render_paths,
                        render_rank_table, render_subnetwork_stats,
                        render_treatment_table, to_dot, to_graphml)
from tests.dot import parse_dot

entities_file = "./tests/test_files/triangle_entities.tsv"
relations_file = "./tests/test_files/triangle_relations.tsv"
dot_file = "./tests/test_files/triangle.dot"


@pytest.fixture
def loaded():
    return load_graph(entities_file, relations_file)


@pytest.fixture
def ranking():
    return pd.DataFrame({'rank': [1, 2], 'id': ['x', 'y'],
                         'type': ['drug', 'protein'], 'score': [0.10501, 1.0]})


def test_rank_table_tsv(ranking):
    expected = ("Rank\tEntity\tType\tCentrality Measure\n"
                "1\tx\tdrug\t0.1050\n"
                "2\ty\tprotein\t1.0000\n")
    assert render_rank_table(ranking) == expected


def test_rank_table_markdown(ranking):
    lines = render_rank_table(ranking, fmt='markdown').splitlines()
    assert lines[0] == "| Rank | Entity | Type | Centrality Measure |"
    assert lines[1] == "|---|---|---|---|"
    assert lines[2] == "| 1 | x | drug | 0.1050 |"
    assert len(lines) == 4


def test_empty_rank_table_is_header_only(ranking):
    assert render_rank_table(ranking.iloc[0:0]) == "Rank\tEntity\tType\tCentrality Measure\n"


def test_unknown_table_format_raises(ranking):
    with pytest.raises(ValueError):
        format_table(ranking.astype(str), 'csv')


def test_treatment_table():
    hits = [TreatmentHit('chloroquine', 'covid-19', 'TREATS', frozenset({'d3', 'd2'}),
                         'reverse'),
            TreatmentHit('ribavirin', 'sars', 'TREATS', frozenset(), 'forward')]
    expected = ("Entry\tDrug\tRelation\tDisease\tReference Id\n"
                "1\tchloroquine\tTREATS\tcovid-19\td2;d3\n"
                "2\tribavirin\tTREATS\tsars\t\n")
    assert render_treatment_table(hits) == expected


def test_empty_treatment_table():
    assert render_treatment_table([]) == "Entry\tDrug\tRelation\tDisease\tReference Id\n"


def test_subnetwork_stats(loaded):
    graph, _ = loaded
    expected = ("nodes: 3 edges: 3\n"
                "protein: 2\n"
                "drug: 0\n"
                "disease: 1\n"
                "taxonomy: 0\n")
    assert render_subnetwork_stats(ego_subnetwork(graph, 'a')) == expected


def test_graph_stats(loaded):
    graph, report = loaded
    text = render_graph_stats(graph, report)
    assert text.startswith("entities: 3\nrelations: 3\nedges: 3\n")
    assert "disease: 1\n" in text
    assert text.endswith("duplicates merged: 0\nrows rejected: 0\n")


def test_render_paths():
    assert render_paths([('a', 'c'), ('a', 'b', 'c')]) == "a -> c\na -> b -> c\n"
    assert render_paths([]) == ""


def test_dot_matches_golden_file(loaded):
    graph, _ = loaded
    with open(dot_file) as data:
        expected = data.read()
    assert to_dot(graph, whole_graph(graph)) == expected


def test_dot_of_empty_subnetwork():
    graph = KnowledgeGraph().freeze()
    assert to_dot(graph, induced_subgraph(graph, [])) == "graph G {\n}\n"


def test_dot_with_hex_colors(loaded):
    graph, _ = loaded
    colors = {EntityType.PROTEIN: '#0000ff', EntityType.DRUG: 'green',
              EntityType.DISEASE: 'red', EntityType.TAXONOMY: 'orange'}
    dot = to_dot(graph, ego_subnetwork(graph, 'a'), colors)
    assert '  "a" [label="Alpha", style=filled, fillcolor="#0000ff"];' in dot
    assert '  "b" [label="Beta", style=filled, fillcolor=red];' in dot


def test_quote_escapes_quotes_and_backslashes():
    assert quote('say "hi"') == '"say \\"hi\\""'
    assert quote('a\\b') == '"a\\\\b"'


def test_dot_parses_back_to_the_subnetwork(loaded):
    graph, _ = loaded
    nodes, edges = parse_dot(to_dot(graph, whole_graph(graph)))
    assert nodes['b'] == {'label': 'Beta', 'style': 'filled', 'fillcolor': 'red'}
    assert edges == graph.edges()


def test_dot_parses_with_escaped_ids():
    names = {'say "hi"': 'Quote "Q"', 'back\\slash': 'C:\\dir\\',
             'two words': 'Two Words', 'plain': 'plain'}
    graph = KnowledgeGraph()
    for node, name in names.items():
        graph.add_entity(Entity(node, name, EntityType.DRUG))
    graph.add_relation(Relation('say "hi"', 'back\\slash', 'TREATS'))
    graph.add_relation(Relation('back\\slash', 'say "hi"', 'INHIBITS'))
    graph.add_relation(Relation('two words', 'back\\slash', 'TREATS'))
    graph.add_relation(Relation('plain', 'two words', 'TREATS'))
    graph = graph.freeze()

    nodes, edges = parse_dot(to_dot(graph, whole_graph(graph)))
    assert {node: attributes['label'] for node, attributes in nodes.items()} == names
    assert all(attributes['fillcolor'] == 'green' for attributes in nodes.values())
    assert edges == [('back\\slash', 'say "hi"'), ('back\\slash', 'two words'),
                     ('plain', 'two words')]
    assert len({frozenset(edge) for edge in edges}) == len(edges)


def test_dot_parser_rejects_unterminated_statement():
    with pytest.raises(ValueError):
        parse_dot('graph G {\n  "a" -- "b"\n}\n')


def test_graphml_has_attributes(loaded):
    graph, _ = loaded
    document = nx.parse_graphml(to_graphml(graph, whole_graph(graph)))
    assert sorted(document.nodes) == ['a', 'b', 'c']
    assert document.nodes['b'] == {'name': 'Beta', 'type': 'disease'}
    assert document.edges['a', 'c']['rtypes'] == 'INHIBITS'
    assert document.number_of_edges() == 3
    assert not document.is_directed()


def test_graphml_of_ego_network(loaded):
    graph, _ = loaded
    document = nx.parse_graphml(to_graphml(graph, induced_subgraph(graph, ['a', 'b'])))
    assert sorted(document.nodes) == ['a', 'b']
    assert document.edges['a', 'b']['rtypes'] == 'BINDS'
