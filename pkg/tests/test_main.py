import logging
import main
import pytest

triangle = ['--entities', "./tests/test_files/triangle_entities.tsv",
            '--relations', "./tests/test_files/triangle_relations.tsv"]
treats = ['--entities', "./tests/test_files/treats_entities.tsv",
          '--relations', "./tests/test_files/treats_relations.tsv"]

COMMANDS = [
    ['stats'] + triangle,
    ['katz'] + treats,
    ['katz', '--format', 'markdown', '--type', 'drug'] + treats,
    ['ego', '--node', 'sars', '--format', 'dot'] + treats,
    ['ego', '--node', 'sars', '--format', 'graphml'] + treats,
    ['ego', '--node', 'sars', '--node', 'ace2', '--format', 'rank'] + treats,
    ['paths', '--from', 'ace2', '--to', 'covid-19'] + treats,
    ['treats', '--diseases', 'sars,covid-19,mers'] + treats,
    ['export'] + treats,
    ['export', '--format', 'graphml'] + treats,
]


@pytest.mark.parametrize("args", COMMANDS, ids=lambda args: ' '.join(args[:3]))
def test_output_is_identical_across_runs(args, capsys):
    outputs = []
    for _ in range(3):
        main.main(args)
        outputs.append(capsys.readouterr().out)
    assert outputs[0]
    assert outputs[1] == outputs[0]
    assert outputs[2] == outputs[0]


def test_diagnostics_stay_off_stdout(capsys):
    main.main(['-d', 'treats', '--diseases', 'mers'] + treats)
    assert capsys.readouterr().out == "Entry\tDrug\tRelation\tDisease\tReference Id\n"


def test_debug_flag_sets_console_level():
    main.main(['-d', 'stats'] + triangle)
    assert main.console.level == logging.INFO
    main.main(['stats'] + triangle)
    assert main.console.level == logging.WARNING


def test_console_handler_added_once():
    main.main(['stats'] + triangle)
    main.main(['stats'] + triangle)
    assert logging.getLogger('').handlers.count(main.console) == 1


def test_help_exits_with_zero():
    with pytest.raises(SystemExit) as error:
        main.main(['--help'])
    assert error.value.code == 0
