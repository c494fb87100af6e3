import io
import json
import subprocess
import sys

import jsonschema
import pytest

from descheck.cli import COMMANDS, run_command
from descheck.problem import ProblemError, corpus_files, dump_problem, load_problem, parse_problem
from descheck.report import EXIT_INPUT, EXIT_LIMITED, EXIT_NO, EXIT_OK, Report, schema

CORPUS = corpus_files()
CORPUS_IDS = [p.stem for p in CORPUS]


def run(*argv):
    buf = io.StringIO()
    code, report = run_command(list(argv), buf)
    return code, report, buf.getvalue()


def test_corpus_present():
    names = {p.stem for p in CORPUS}
    assert {"example_2_8", "kempf_line_bundles", "z2_cotangent", "t_star_p1", "trivial"} <= names
    assert any(n.startswith("random_regression") for n in names)


def test_sheaf_example_exit_codes():
    code, rep, _ = run("sheaf", "examples/example_2_8.json", "--module", "M")
    assert code == EXIT_NO
    (w,) = rep.results[0]["witnesses"]
    assert (w["support"], w["class"], w["source"]) == ([], [-1], "fiber")
    assert run("sheaf", "trivial.json", "--module", "O")[0] == EXIT_OK


def test_complex_example():
    code, rep, _ = run("complex", "examples/t_star_p1.json", "--complex", "Lcot")
    assert code == EXIT_NO
    ws = rep.results[0]["witnesses"]
    assert {(tuple(w["class"]), w["degree"]) for w in ws} == {((1,), 0), ((-1,), 0)}
    code, rep, _ = run("complex", "t_star_p1", "--complex", "Lcot", "--min-degree", "1")
    assert code == EXIT_LIMITED and rep.checked_range == [1, 1]


@pytest.mark.parametrize("path", CORPUS, ids=CORPUS_IDS)
def test_round_trip(path):
    P = load_problem(str(path))
    again = parse_problem(dump_problem(P))
    assert again == P
    assert dump_problem(again) == dump_problem(P)


@pytest.mark.parametrize("path", CORPUS, ids=CORPUS_IDS)
def test_exit_codes_match_verdicts(path):
    P = load_problem(str(path))
    code, rep, _ = run("report", str(path), "--json")
    assert code == EXIT_OK
    assert all(r.get("matches_expected") is not False for r in rep.results)
    for name in P.modules:
        code, rep, _ = run("sheaf", str(path), "--module", name)
        (r,) = rep.results
        assert code == (EXIT_OK if r["descends"] else EXIT_NO)
        assert r["descends"] == (not r["witnesses"])
    for name in P.complexes:
        code, rep, _ = run("complex", str(path), "--complex", name)
        (r,) = rep.results
        assert code == (EXIT_OK if r["descends"] else EXIT_NO)


@pytest.mark.parametrize("command", COMMANDS)
def test_json_validates(command):
    code, rep, text = run(command, "kempf_line_bundles", "--json", "--stats")
    data = json.loads(text)
    jsonschema.validate(data, schema())
    assert Report.from_json(data).to_json() == data
    assert Report.loads(rep.dumps()) == rep
    assert data["exit_code"] == code and data["stats"] is not None


def test_error_report_validates():
    code, rep, text = run("sheaf", "no_such_file.json", "--json")
    assert code == EXIT_INPUT
    jsonschema.validate(json.loads(text), schema())


def test_unknown_command():
    assert run("frobnicate", "trivial")[0] == EXIT_INPUT
    assert run()[0] == EXIT_INPUT


def test_unknown_module():
    code, rep, _ = run("sheaf", "trivial", "--module", "nope")
    assert code == EXIT_INPUT and "nope" in rep.error


GOOD = """{
  "grading": {"free_rank": 1, "torsion": []},
  "variables": [{"name": "x", "weight": 1}, {"name": "y", "weight": -1}],
  "modules": {"M": {"generator_degrees": [0], "relations": [["x*y + "]]}}
}
"""


def test_poly_error_location(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(GOOD)
    code, rep, _ = run("sheaf", str(f))
    assert code == EXIT_INPUT
    line = GOOD.splitlines()[3]
    assert "bad.json:4:" in rep.error
    col = int(rep.error.split("bad.json:4:")[1].split(":")[0])
    assert line.index('"x*y + "') < col <= len(line)


def test_json_error_location():
    with pytest.raises(ProblemError) as e:
        parse_problem('{\n  "grading": {,\n}', "p.json")
    assert e.value.line == 2 and e.value.column is not None


@pytest.mark.parametrize("text, fragment", [
    ('{"variables": [{"name": "x", "weight": 1}], "modules": {"M": {"generator_degrees": [0], '
     '"relations": [["x + 1"]]}}}', "M"),
    ('{"variables": [{"name": "x", "weight": 1}], "points": {"p": [1, 2]}}', "point p"),
    ('{"variables": [{"name": "x", "weight": 1}, {"name": "y", "weight": -1}], "ambient_ideal": ["x*y - 1"], '
     '"points": {"p": [0, 0]}}', "does not lie on X"),
    ('{"variables": [{"name": "x", "weight": 1}], "complexes": {"E": {"terms": {"-1": [0], "0": [0], "1": [0]}, '
     '"differentials": {"-1": [["1"]], "0": [["1"]]}}}}', "E"),
    ('{"variables": [{"name": "x", "weight": 1}, {"name": "x", "weight": 2}]}', "distinct"),
])
def test_invalid_problems(text, fragment):
    with pytest.raises(ProblemError) as e:
        parse_problem(text)
    assert fragment in str(e.value)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "descheck", "sheaf", "example_2_8", "--module", "M"],
                         capture_output=True, text=True)
    assert out.returncode == EXIT_NO
    assert "class -1" in out.stdout


def test_parallel_results_are_identical():
    import os

    def results(threads):
        env = dict(os.environ, DESCHECK_THREADS=str(threads))
        out = subprocess.run([sys.executable, "-m", "descheck", "report", "z2_cotangent", "--json"],
                             capture_output=True, text=True, env=env)
        return out.returncode, json.loads(out.stdout)["results"]

    assert results(1) == results(3)
