import json
from pathlib import Path

import pytest

from tropelim.cli import main
from tropelim.oracle import GeneratorParams, random_problem
from tropelim.polynomial import Problem, serialize_problem
from tropelim.semifield import MAX_PLUS, ZERO

DATA = Path(__file__).resolve().parents[1] / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, prob, name="p.json"):
    path = tmp_path / name
    text = serialize_problem(prob)
    path.write_text(text if isinstance(text, str) else text.decode())
    return path


def test_solve_example1(capsys):
    code, out, err = run(capsys, "solve", DATA / "example1.json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["mu"] == "3/7"
    assert doc["point"] == ["0", "1/7", "1"]
    assert list(doc) == ["status", "semifield", "mode", "mu", "point", "intervals"]


def test_solve_output_is_byte_stable(capsys):
    _, a, _ = run(capsys, "solve", DATA / "example1.json", "--pick", "midpoint")
    _, b, _ = run(capsys, "solve", DATA / "example1.json", "--pick", "midpoint")
    assert a == b


def test_solve_invalid_box(capsys, tmp_path):
    doc = json.loads((DATA / "symmetric.json").read_text())
    doc["box"]["lower"][1] = "2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "solve", path)
    assert code == 1 and out == ""
    assert "box.lower[1]" in err


def test_solve_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", tmp_path / "nope.json")
    assert code == 1 and err


def test_capacity_exit_code(capsys):
    code, out, err = run(capsys, "solve", DATA / "example2.json", "--max-monomials", "10")
    assert code == 3 and out == ""
    assert "stage 3" in err


def test_not_attained_exit_code(capsys, tmp_path):
    prob = Problem.make(MAX_PLUS, [(1, [1, 0]), (0, [1, 1])], [ZERO, 0], [1, 2])
    code, out, _ = run(capsys, "solve", write(tmp_path, prob))
    assert code == 2
    assert json.loads(out)["status"] == "infimum-not-attained"


def test_solve_stats_and_pretty(capsys):
    code, out, _ = run(capsys, "solve", DATA / "example1.json", "--stats")
    stats = json.loads(out)["stats"]
    assert [s["level"] for s in stats] == [3, 2, 1, 0]
    code, out, _ = run(capsys, "solve", DATA / "example1.json", "--pretty")
    assert code == 0 and out.startswith("status : attained")


def test_solve_float(capsys):
    code, out, _ = run(capsys, "solve", DATA / "example1.json", "--float")
    doc = json.loads(out)
    assert doc["mode"] == "float"
    assert float(doc["mu"]) == pytest.approx(3 / 7, abs=1e-12)


def test_cheb_example1(capsys):
    code, out, _ = run(capsys, "cheb", DATA / "example1.csv", "--lower", "0,0,0", "--upper", "1,1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["error"] == "3/7" and doc["theta"] == ["0", "1/7", "1"]
    assert doc["certified"] is True


def test_cheb_bounds_file(capsys):
    code, out, _ = run(capsys, "cheb", DATA / "example2.csv", "--bounds", DATA / "example2_bounds.json")
    assert code == 0
    assert json.loads(out)["error"] == "9/4"


def test_cheb_two_point(capsys, tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("1,0\n1,2\n")
    code, out, _ = run(capsys, "cheb", path, "--lower=-10", "--upper", "10")
    assert code == 0
    doc = json.loads(out)
    assert doc["error"] == "1" and doc["theta"] == ["1"]


def test_cheb_missing_bounds(capsys):
    code, _, err = run(capsys, "cheb", DATA / "example1.csv")
    assert code == 1 and "bounds" in err


def test_oracle_vertex_example1(capsys):
    code, out, _ = run(capsys, "oracle", DATA / "example1.json", "--kind", "vertex", "--compare")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == "3/7" and doc["verdict"] == "EQUAL"


def test_oracle_grid_symmetric(capsys):
    code, out, _ = run(capsys, "oracle", DATA / "symmetric.json", "--kind", "grid",
                       "--resolution", "3", "--compare")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == "0" and doc["verdict"] == "EQUAL"


def test_oracle_grid_upper_bound(capsys):
    code, out, _ = run(capsys, "oracle", DATA / "example1.json", "--kind", "grid",
                       "--resolution", "3", "--compare")
    assert code == 0 and json.loads(out)["verdict"] == "UPPER-BOUND"


def test_oracle_vertex_capacity(capsys, tmp_path):
    prob = random_problem(GeneratorParams(arity=4, monomials=3))
    code, out, err = run(capsys, "oracle", write(tmp_path, prob), "--kind", "vertex")
    assert code == 3 and out == "" and "capacity" in err


def test_bad_threads(capsys):
    code, _, _ = run(capsys, "solve", DATA / "example1.json", "--threads", "0")
    assert code == 1
