import json
import os
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _gen import F101, Q, rand_commuting_tuple, rand_matrix
from nilcommute import __version__
from nilcommute import serialize as io
from nilcommute.algebra import NilTuple
from nilcommute.certificate import Certificate
from nilcommute.cli import main
from nilcommute.closure import ParamFamily, regularization_family
from nilcommute.errors import NotCommuting, SchemaError
from nilcommute.exactfield import FieldSpec
from nilcommute.jordan import Partition, jordan_matrix
from nilcommute.linalg import Matrix

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"


# -- JSON forms --------------------------------------------------------------------

def test_parse_j2():
    m = io.matrix_from_json({"field": {"kind": "q"}, "rows": [["0", "1"], ["0", "0"]]})
    assert m == jordan_matrix(Partition.of(2), Q)


def test_bad_entry_has_path():
    obj = {"field": {"kind": "q"}, "rows": [["0", "1"], ["1/0", "0"]]}
    with pytest.raises(SchemaError) as e:
        io.matrix_from_json(obj)
    assert "$.rows[1][0]" in str(e.value)


@pytest.mark.parametrize("obj", [
    [],
    {"rows": [["1"]]},
    {"field": {"kind": "fp", "p": 9}, "rows": [["1"]]},
    {"field": {"kind": "r"}, "rows": [["1"]]},
    {"field": {"kind": "q"}, "rows": [["1", "2"], ["3"]]},
    {"field": {"kind": "q"}, "rows": [[1]]},
    {"field": {"kind": "q"}, "rows": "1"},
])
def test_schema_errors(obj):
    with pytest.raises(SchemaError):
        io.matrix_from_json(obj)


def test_entries_are_strings():
    text = io.dumps(io.matrix_to_json(Matrix.from_rows(Q, [[Fraction(1, 3), -2]])))
    assert json.loads(text)["rows"] == [["1/3", "-2"]]


def test_matrix_roundtrip_f101():
    m = rand_matrix(random.Random(0), F101, 5, 7, bound=100)
    assert io.matrix_from_json(json.loads(io.dumps(io.matrix_to_json(m)))) == m


@given(st.integers(0, 2**32), st.sampled_from([Q, F101, FieldSpec.prime(2)]))
def test_roundtrip_property(seed, f):
    rng = random.Random(seed)
    m = rand_matrix(rng, f, rng.randint(1, 5), rng.randint(1, 5), bound=50)
    assert io.matrix_from_json(json.loads(io.dumps(io.matrix_to_json(m)))) == m
    t = NilTuple(tuple(rand_commuting_tuple(rng, f, rng.randint(1, 5), rng.randint(1, 3))))
    assert io.tuple_from_json(json.loads(io.dumps(io.tuple_to_json(t)))) == t


def test_tuple_validation_on_load():
    obj = io.loads_file(INPUTS / "noncommuting.json")
    with pytest.raises(NotCommuting):
        io.tuple_from_json(obj)
    obj = io.loads_file(INPUTS / "j4_pair.json")
    obj["n"] = 3
    with pytest.raises(SchemaError):
        io.tuple_from_json(obj)


def test_family_roundtrip():
    fam = regularization_family(Partition.of(3, 2), F101).extend_zeros(2)
    back = io.family_from_json(json.loads(io.dumps(io.family_to_json(fam))))
    assert back == fam
    assert back.evaluate(5) == fam.evaluate(5)


def test_certificate_json():
    c = Certificate("demo", "pass", F101, seed=3, trials=4)
    c.add("dim", 5)
    c.add("m", Matrix.identity(F101, 2))
    obj = io.certificate_to_json(c)
    assert list(obj) == ["name", "verdict", "field", "seed", "trials", "evidence", "version"]
    assert obj["field"] == {"kind": "fp", "p": 101} and obj["version"] == __version__
    assert obj["evidence"][1]["value"] == {"rows": [["1", "0"], ["0", "1"]]}


def test_bad_json_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        io.loads_file(p)


# -- CLI behaviour -----------------------------------------------------------------

def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gerstenhaber_cli(capsys):
    code, out, _ = run(["gerstenhaber", "--n", "4", "--field", "q"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["verdict"] == "pass"
    assert dict((e["label"], e["value"]) for e in obj["evidence"])["algebra_dim"] == 5


def test_n2red_cli(capsys):
    code, out, _ = run(["n2red", "--field", "fp:101", "--trials", "100", "--seed", "7"], capsys)
    obj = json.loads(out)
    ev = dict((e["label"], e["value"]) for e in obj["evidence"])
    assert code == 0 and obj["verdict"] == "pass"
    assert ev["d2_closure_dim"] == 16 and ev["local_dim_at_smooth_samples"] == 16
    assert (obj["seed"], obj["trials"]) == (7, 100)


def test_noncommuting_exit_2(capsys):
    code, out, err = run(["algebra-dim", "--in", str(INPUTS / "noncommuting.json")], capsys)
    assert code == 2 and out == "" and "NotCommuting" in err


@pytest.mark.parametrize("argv", [
    ["gerstenhaber", "--n", "4", "--field", "fp:10"],
    ["gerstenhaber", "--n", "2"],
    ["basili", "--partition", "3,x"],
    ["algebra-dim", "--in", "/nonexistent.json"],
    ["gerstenhaber", "--n", "4", "--trials", "0"],
    ["prop321", "--case", "char2", "--field", "q"],
])
def test_error_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_fail_verdict_exit_1(capsys, tmp_path):
    zero = Matrix.zeros(F101, 3)
    fam = ParamFamily.constant((jordan_matrix(Partition.of(3), F101), zero))
    famfile = tmp_path / "fam.json"
    famfile.write_text(io.dumps(io.family_to_json(fam)))
    target = tmp_path / "target.json"
    target.write_text(io.dumps(io.tuple_to_json(NilTuple((zero, zero)))))
    code, out, _ = run(["curve-verify", "--field", "fp:101", "--family", str(famfile),
                        "--target", str(target)], capsys)
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_out_flag(tmp_path, capsys):
    dest = tmp_path / "c.json"
    code, out, _ = run(["gerstenhaber", "--n", "5", "--out", str(dest)], capsys)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["name"]


def test_sample_r1_output_loads(capsys):
    code, out, _ = run(["sample-r1", "--d", "3", "--n", "4", "--field", "fp:101", "--seed", "5"], capsys)
    t = io.tuple_from_json(json.loads(out))
    assert code == 0 and (t.n, t.d) == (4, 3)


# -- golden files ------------------------------------------------------------------

I = str(INPUTS)
COMMANDS = {
    "gerstenhaber_q_4": ["gerstenhaber", "--n", "4", "--field", "q"],
    "gerstenhaber_fp101_7": ["gerstenhaber", "--n", "7", "--field", "fp:101"],
    "basili_321": ["basili", "--partition", "3,2,1"],
    "centralizer_3311": ["centralizer", "--partition", "3,3,1,1", "--field", "fp:7"],
    "algebra_dim_gerstenhaber5": ["algebra-dim", "--in", f"{I}/gerstenhaber5.json"],
    "n2red_fp101": ["n2red", "--field", "fp:101", "--trials", "30", "--seed", "7"],
    "n2red_q": ["n2red", "--field", "q", "--trials", "5", "--seed", "1"],
    "prop321_generic_q": ["prop321", "--case", "generic", "--beta", "2"],
    "prop321_generic_f7": ["prop321", "--case", "generic", "--field", "fp:7", "--omega", "3"],
    "prop321_char2": ["prop321", "--case", "char2", "--field", "fp:2"],
    "prop321_char3": ["prop321", "--case", "char3", "--field", "fp:3"],
    "prop321_fiber3": ["prop321", "--fiber", "3"],
    "squarezero_3_2": ["squarezero", "--l", "3", "--m", "2", "--seed", "4"],
    "squarezero_4_1": ["squarezero", "--l", "4", "--m", "1", "--field", "fp:101", "--seed", "9"],
    "prop1nonzero_3_6": ["prop1nonzero", "--k", "3", "--n", "6", "--s", "2", "--t=-1/3"],
    "curve_verify_2211": ["curve-verify", "--partition", "2,2,1,1", "--extra", "2",
                          "--field", "fp:101", "--seed", "3"],
    "curve_verify_family": ["curve-verify", "--family", f"{I}/family_221.json", "--field", "fp:101"],
    "sample_r1_3_5": ["sample-r1", "--d", "3", "--n", "5", "--field", "fp:101", "--seed", "11"],
    "dims": ["dims", "--max-n", "5", "--max-d", "3"],
    "certify_reducible_in": ["certify-reducible", "--in", f"{I}/gerstenhaber5.json"],
    "certify_reducible_g8": ["certify-reducible", "--gerstenhaber", "8", "--field", "fp:101"],
    "transform_poly_shift": ["transform", "--in", f"{I}/j4_pair.json", "--kind", "poly_shift",
                             "--polys", "0,1,0,3"],
    "transform_twisted": ["transform", "--in", f"{I}/j4_pair.json", "--kind", "twisted_transpose",
                          "--matrix", f"{I}/flip4.json"],
}


def _capture(argv, capsys):
    code = main(argv)
    out, _ = capsys.readouterr()
    return code, out


def test_every_subcommand_has_golden():
    from nilcommute.cli import build_parser
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert set(sub.choices) == {argv[0] for argv in COMMANDS.values()}


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_golden(name, capsys):
    argv = COMMANDS[name]
    code1, first = _capture(argv, capsys)
    code2, second = _capture(argv, capsys)
    assert code1 == code2 == 0
    assert first == second
    path = GOLDEN / f"{name}.json"
    if os.environ.get("NILCOMMUTE_UPDATE_GOLDEN"):
        path.write_text(first)
    assert path.read_text() == first


@pytest.mark.parametrize("name", ["n2red_fp101", "squarezero_3_2", "curve_verify_2211"])
def test_golden_independent_of_threads(name, capsys, monkeypatch):
    monkeypatch.setenv("NILCOMMUTE_THREADS", "4")
    _, out = _capture(COMMANDS[name], capsys)
    assert out == (GOLDEN / f"{name}.json").read_text()
