import json

import pytest

from cli import EXIT_OK, EXIT_REFUSED, EXIT_SPEC, build_parser, main


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_analyze_summary(capsys):
    assert main(["analyze", "--spec", "index4:delta=1/8"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "order_G: 8" in out
    assert "group: Dihedral(4)" in out


def test_analyze_json(capsys):
    assert main(["analyze", "--spec", "paper-16-7", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["order_G"] == 256
    assert document["graphs"]["principal"]["even"] == 76


def test_analyze_batch(capsys, tmp_path):
    code = main(["analyze", "--spec", "index4:delta=1/8", "--spec", "index4:delta=1/3",
                 "--emit-dot", str(tmp_path), "--json"])
    assert code == EXIT_OK
    documents = json.loads(capsys.readouterr().out)
    assert [d["order_G"] for d in documents] == [8, 12]
    assert len(list(tmp_path.glob("*.dot"))) == 4


def test_classify4(capsys):
    assert main(["classify4", "1/8", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["classification"]["cocycle"] == "nontrivial"


def test_invalid_phase_exit_code(capsys):
    assert main(["classify4", "1/0"]) == EXIT_SPEC
    assert "error:" in capsys.readouterr().err


def test_compare_needs_two_specs():
    assert main(["compare", "--spec", "index4:delta=1/8"]) == EXIT_SPEC


def test_missing_spec_file(tmp_path):
    assert main(["analyze", "--spec", str(tmp_path / "missing.json")]) == EXIT_SPEC


def test_refused_exit_code(capsys):
    assert main(["commutant", "--spec", "fourier:Z7", "--level", "2"]) == EXIT_REFUSED
    assert "refused:" in capsys.readouterr().err


def test_equivalence_bound_refused():
    assert main(["equiv", "fourier:Z3xZ3", "fourier:Z9", "--bound", "4"]) == EXIT_REFUSED


def test_fourier(capsys):
    assert main(["fourier", "Z3", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["hadamard"]["entries"][1] == ["0", "1/3", "2/3"]
