import json

import pytest

from qtop.cli import run
from qtop.links import a_generator, invariant
from qtop.tensor import TensorElement
from qtop.uqsl2 import casimir_c


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariant_json_round_trip(capsys):
    code, out, _ = _run(capsys, "invariant", "--strands", "2", "--order", "2", "--format", "json", "A(1,2)")
    assert code == 0
    J = TensorElement.from_json(out)
    assert J == invariant(a_generator(1, 2, 2), 2)
    assert J == TensorElement.one(2, 2) + casimir_c(2).hbar_shift(1)


def test_default_order_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QTOP_DEFAULT_ORDER", "3")
    _, out, _ = _run(capsys, "invariant", "--format", "json", "A(1,2)")
    assert json.loads(out)["order"] == 3
    monkeypatch.delenv("QTOP_DEFAULT_ORDER")
    _, out, _ = _run(capsys, "invariant", "--format", "json", "A(1,2)")
    assert json.loads(out)["order"] == 5


def test_milnor_index(capsys):
    code, out, _ = _run(capsys, "milnor", "--strands", "3", "B[1,2,3]", "--index", "123")
    assert code == 0 and out.strip() == "1"


def test_verify_pass(capsys):
    code, out, _ = _run(capsys, "verify", "--theorem", "sth2", "--strands", "3", "--length", "2",
                        "[A(1,2),A(2,3)]")
    assert code == 0 and out.strip().endswith("pass")


def test_verify_hypothesis_failure(capsys):
    code, out, _ = _run(capsys, "verify", "--theorem", "sth2", "--strands", "3", "--length", "2",
                        "--format", "json", "A(1,2)")
    assert code == 1
    assert json.loads(out)["witness"] == {"index": [1, 2], "mu": 1}


def test_batch_verify_is_sorted(capsys):
    code, out, _ = _run(capsys, "verify", "--theorem", "prop-sc", "--format", "json", "s2^2", "s1^2")
    assert code == 0
    assert [r["input"] for r in json.loads(out)] == ["s1 s1", "s2 s2"]


def test_weight_of_tree(capsys):
    code, out, _ = _run(capsys, "weight", "--format", "json", "T(1,2)")
    assert code == 0
    assert json.loads(out)["strands"] == 2


def test_diagram_input(capsys, tmp_path):
    path = tmp_path / "kink.json"
    path.write_text(json.dumps({"strands": 1, "slices": [
        {"type": "cup", "p": 2}, {"type": "crossing", "p": 1, "sign": 1}, {"type": "cap", "p": 2}]}))
    code, out, _ = _run(capsys, "verify", "--theorem", "prop-sc", str(path))
    assert code == 0 and "pass" in out


def test_out_file(capsys, tmp_path):
    path = tmp_path / "j.json"
    code, _, _ = _run(capsys, "invariant", "--format", "json", "--out", str(path), "s1^2")
    assert code == 0
    assert TensorElement.from_json(path.read_text()).strands == 2


@pytest.mark.parametrize("argv", [
    ["invariant", "s1 ]"],
    ["invariant", "s1"],
    ["invariant", "--order", "0", "s1^2"],
    ["verify", "--theorem", "nope", "s1^2"],
    ["verify", "--theorem", "sth2", "s1^2"],
    ["milnor", "--index", "1", "s1^2"],
    ["frobnicate"],
])
def test_input_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    capsys.readouterr()


def test_parse_error_points_at_position(capsys):
    _, _, err = _run(capsys, "invariant", "s1 ]")
    assert err.splitlines()[-1].index("^") == 2 + 3
