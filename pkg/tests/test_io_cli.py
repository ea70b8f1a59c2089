import io as _io
import json
import random
from pathlib import Path

import pytest

from ftsmetric import Distribution, ValidationError, parallel
from ftsmetric.cli import run
from ftsmetric.io import DocumentError, dump_system, parse_metric, parse_system, system_to_document
from ftsmetric.model import validate_system

from generators import four_states, random_system

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
FOUR_STATES = DATA / "four_states.json"


def cli(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, doc, name="sys.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def test_parse_four_states():
    fts = parse_system(FOUR_STATES)
    assert fts == four_states()


def test_parse_empty_to(tmp_path):
    path = write(tmp_path, {"states": ["x"], "labels": ["a"],
                            "transitions": [{"from": "x", "label": "a", "to": {}}]})
    assert parse_system(path).transitions("x", "a") == (Distribution(),)


def test_parse_bad_degree_names_record(tmp_path):
    path = write(tmp_path, {"states": ["x"], "labels": ["a"],
                            "transitions": [{"from": "x", "label": "a", "to": {"x": "abc"}}]})
    with pytest.raises(ValidationError) as exc:
        parse_system(path)
    assert "transition #0" in exc.value.diagnostics[0]


def test_parse_error_reports_line(tmp_path):
    path = write(tmp_path, '{\n  "states": [\n}')
    with pytest.raises(DocumentError) as exc:
        parse_system(path)
    assert ":3:" in str(exc.value)


def test_numeric_literals_stay_exact(tmp_path):
    path = write(tmp_path, '{"states": ["x"], "labels": ["a"], '
                           '"transitions": [{"from": "x", "label": "a", "to": {"x": 0.1}}]}')
    assert parse_system(path).transitions("x", "a")[0]("x") == Distribution({"x": "0.1"})("x")


def test_round_trip_random():
    rng = random.Random(0)
    for _ in range(100):
        fts = random_system(rng)
        assert validate_system(json.loads(dump_system(fts))) == fts


def test_composed_output_reparses():
    comp = parallel(four_states())
    back = validate_system(system_to_document(comp))
    assert back.states[1] == "s1|s2"
    assert len(back.states) == 16


def test_cli_distance():
    code, out, _ = cli("distance", FOUR_STATES)
    assert code == 0
    assert out.splitlines()[2] == "s2\t0.9\t0\t0.6\t1"


def test_cli_distance_json():
    code, out, _ = cli("distance", FOUR_STATES, "--format", "json")
    doc = json.loads(out)
    assert doc["matrix"][0] == ["0", "0.9", "0.9", "1"]


def test_cli_trace_counts_three_applications():
    code, out, _ = cli("distance", FOUR_STATES, "--trace")
    assert code == 0
    assert out.count("# d") == 4
    assert out.rstrip().endswith("# applications: 3")
    _, out_json, _ = cli("distance", FOUR_STATES, "--trace", "--format", "json")
    assert json.loads(out_json)["applications"] == 3


def test_cli_quotient():
    code, out, _ = cli("quotient", FOUR_STATES, "--lambda", "0.6")
    assert (code, out) == (0, "{s1}\n{s2, s3}\n{s4}\n")


def test_cli_bisim():
    code, out, _ = cli("bisim", FOUR_STATES, "s2", "s3")
    assert code == 0
    assert out.startswith("not-bisimilar") and out.rstrip().endswith("0.6")
    code, out, _ = cli("bisim", FOUR_STATES, "s4", "s4")
    assert out.startswith("bisimilar")


def test_cli_similar():
    code, out, _ = cli("similar", FOUR_STATES)
    assert out.splitlines()[2] == "s2\t0.1\t1\t0.4\t0"


def test_cli_compose(tmp_path):
    target = tmp_path / "par.json"
    code, out, _ = cli("compose", FOUR_STATES, "--op", "product", "--out", target)
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert "s1||s2" in doc["states"]
    code, out, _ = cli("compose", FOUR_STATES, "--op", "parallel", "--from", "s2", "s3")
    assert json.loads(out)["states"][0] == "s2|s3"


def test_cli_lift():
    code, out, _ = cli("lift", DATA / "two_states.json", "--mu", "mu", "--eta", "theta",
                       "--metric", DATA / "discrete_st.json")
    assert (code, out) == (0, "0.5\n")
    code, out, _ = cli("lift", DATA / "two_states.json", "--mu", "mu", "--eta", "eta",
                       "--metric", DATA / "discrete_st.json")
    assert out == "1\n"


def test_metric_file_rejects_non_ultrametric(tmp_path):
    path = write(tmp_path, {"states": ["s", "t", "u"],
                            "distances": [["s", "t", "0.2"], ["t", "u", "0.2"], ["s", "u", "0.5"]]})
    with pytest.raises(ValidationError) as exc:
        parse_metric(path)
    assert exc.value.axiom == "P3"


def test_cli_exit_codes(tmp_path):
    assert cli("validate", FOUR_STATES)[0] == 0
    assert cli("quotient", FOUR_STATES)[0] == 2
    assert cli("nonsense")[0] == 2
    bad = write(tmp_path, {"states": ["x"], "labels": ["a"],
                           "transitions": [{"from": "x", "label": "a", "to": {"s9": "1.2"}}]})
    code, _, err = cli("validate", bad)
    assert code == 1 and "s9" in err
    assert cli("bisim", FOUR_STATES, "s1", "nope")[0] == 1
    assert cli("distance", tmp_path / "missing.json")[0] == 1


def test_cli_validate_reports_duplicates(tmp_path):
    path = write(tmp_path, {"states": ["x"], "labels": ["a"], "transitions": [
        {"from": "x", "label": "a", "to": {"x": "0.5"}},
        {"from": "x", "label": "a", "to": {"x": "0.50"}}]})
    code, out, _ = cli("validate", path)
    assert code == 0 and "warning" in out and "1 transitions" in out


def test_output_is_deterministic():
    for cmd in (("distance", FOUR_STATES, "--trace"), ("compose", FOUR_STATES, "--op", "parallel"),
                ("similar", FOUR_STATES, "--format", "json")):
        assert cli(*cmd) == cli(*cmd)
