import main
import pytest

from cli.stats import main as stats

entities_file = "./tests/test_files/triangle_entities.tsv"
relations_file = "./tests/test_files/triangle_relations.tsv"
bad_relations_file = "./tests/test_files/triangle_bad_relations.tsv"
empty_entities_file = "./tests/test_files/empty_entities.tsv"
empty_relations_file = "./tests/test_files/empty_relations.tsv"
bad_header_file = "./tests/test_files/bad_header_entities.tsv"


def test_prints_graph_stats(capsys):
    stats(entities_file, relations_file, False)
    expected = ("entities: 3\n"
                "relations: 3\n"
                "edges: 3\n"
                "protein: 2\n"
                "drug: 0\n"
                "disease: 1\n"
                "taxonomy: 0\n"
                "entity rows read: 3\n"
                "relation rows read: 3\n"
                "duplicates merged: 0\n"
                "rows rejected: 0\n")
    assert capsys.readouterr().out == expected


def test_counts_rejected_rows(capsys):
    stats(entities_file, bad_relations_file, False)
    out = capsys.readouterr().out
    assert "relation rows read: 4\n" in out
    assert "rows rejected: 1\n" in out


def test_empty_files(capsys):
    stats(empty_entities_file, empty_relations_file, False)
    out = capsys.readouterr().out
    assert out.startswith("entities: 0\nrelations: 0\nedges: 0\n")


def test_missing_file_exits_with_one(tmp_path):
    with pytest.raises(SystemExit) as error:
        main.main(['stats', '--entities', str(tmp_path / 'none.tsv'),
                   '--relations', relations_file])
    assert error.value.code == 1


def test_bad_header_exits_with_one():
    with pytest.raises(SystemExit) as error:
        main.main(['stats', '--entities', bad_header_file,
                   '--relations', relations_file])
    assert error.value.code == 1


def test_missing_subcommand_exits_with_two():
    with pytest.raises(SystemExit) as error:
        main.main([])
    assert error.value.code == 2


def test_missing_relations_flag_exits_with_two():
    with pytest.raises(SystemExit) as error:
        main.main(['stats', '--entities', entities_file])
    assert error.value.code == 2
