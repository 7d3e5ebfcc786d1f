import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from apnspectra import cli
from apnspectra.boolfn import TruthTable
from apnspectra.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, RunConfig, build_parser, main, run, schema


def invoke(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def invoke_json(capsys, *argv):
    code, out = invoke(capsys, *argv)
    return code, json.loads(out)


def valid(payload, name):
    jsonschema.validate(payload, schema(name))
    return payload


def test_field(capsys):
    code, out = invoke_json(capsys, "field", "--n", "6")
    assert code == EXIT_OK
    valid(out, "field")
    assert out["reduction_poly"] == "0x43" and out["primitive"] == "0x2"
    assert out["order"] == 63 and out["order_factorization"] == {"3": 2, "7": 1}


@pytest.mark.parametrize("argv, constraint", [
    (["field", "--n", "25"], None),
    (["field", "--n", "6", "--poly", "0x41"], None),
    (["spectrum", "--family", "family1", "--k", "3", "--s", "1"], "gcd(k,3)=1"),
    (["spectrum", "--family", "family2", "--k", "2", "--s", "1"], "k>=3"),
    (["spectrum", "--family", "family3", "--k", "4", "--s", "1"], "k odd"),
    (["spectrum", "--family", "gold", "--n", "4", "--d", "2"], "gcd(d,n)=1"),
    (["weights", "--family", "gold", "--n", "9", "--d", "1", "--source", "direct"], None),
    (["spectrum"], None),
])
def test_invalid_input_exit_2(capsys, argv, constraint):
    code, out = invoke_json(capsys, *argv)
    assert code == EXIT_INVALID
    valid(out, "error")
    if constraint:
        assert out["constraint"] == constraint


def test_spectrum_family1_n12(capsys):
    code, out = invoke_json(capsys, "spectrum", "--family", "family1", "--k", "4", "--s", "1")
    assert code == EXIT_OK
    valid(out, "spectrum")
    assert out["spectrum"] == [-128, -64, 0, 64, 128] and out["matches_theorem"]
    assert {e["v"]: e["count"] for e in out["values"]} == {
        -128: 677040, -64: 5503680, 0: 4193280, 64: 5678400, 128: 720720}
    assert out["nl"] == 2048 - 64 and out["ab"] is False


def test_spectrum_csv(capsys):
    code, out = invoke(capsys, "spectrum", "--family", "gold", "--n", "5", "--d", "1", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {int(r["v"]): int(r["count"]) for r in rows} == {-8: 186, 0: 496, 8: 310}


def test_spectrum_mismatch_exit_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "predicted_values", lambda p: [-8, 0, 8, 16])
    code, out = invoke_json(capsys, "spectrum", "--family", "gold", "--n", "5", "--d", "1")
    assert code == EXIT_MISMATCH
    assert out["matches_theorem"] is False and out["spectrum"] == [-8, 0, 8]


def test_no_prediction_for_dillon(capsys):
    code, out = invoke_json(capsys, "spectrum", "--family", "dillon")
    assert code == EXIT_OK
    assert "matches_theorem" not in out and len(out["spectrum"]) == 7


def test_long_gate(capsys):
    code, out = invoke_json(capsys, "spectrum", "--family", "family1", "--k", "5", "--s", "1")
    assert code == EXIT_INVALID and "--long" in out["error"]


def test_apn(capsys):
    code, out = invoke_json(capsys, "apn", "--family", "family4", "--n", "7")
    assert code == EXIT_OK and valid(out, "apn") == {"n": 7, "uniformity": 2, "is_apn": True}


def test_kernels(capsys):
    code, out = invoke_json(capsys, "kernels", "--family", "family2", "--k", "3", "--s", "5")
    assert code == EXIT_OK
    valid(out, "kernels")
    assert out == {"nullity_counts": {"0": 2730, "2": 1365}, "max": 2}


def test_kernels_not_quadratic(capsys, tmp_path):
    from apnspectra.boolfn import from_function
    from apnspectra.gf2n import make_field

    f = make_field(5)
    from_function(f, lambda x: f.pow(x, 7)).save(tmp_path / "cube")
    code, out = invoke_json(capsys, "kernels", "--table", str(tmp_path / "cube.bin"))
    assert code == EXIT_INVALID and "degree" in out["error"]


@pytest.mark.parametrize("source", ["spectrum", "direct", "pless"])
def test_weights_sources_agree(capsys, source):
    code, out = invoke_json(capsys, "weights", "--family", "gold", "--n", "6", "--d", "1", "--source", source)
    assert code == EXIT_OK
    valid(out, "weights")
    assert out["source"] == source
    # 21 cubes b: rows of ten +16 and six -16; 42 others: 36 x +8, 28 x -8 (Parseval + row sum 2^n)
    assert {e["w"]: int(e["count"]) for e in out["weights"]} == {
        0: 1, 24: 21 * 10, 28: 42 * 36, 32: 63 + 21 * 48, 36: 42 * 28, 40: 21 * 6}


def test_compare(capsys):
    code, out = invoke_json(capsys, "compare", "--family", "dillon")
    assert code == EXIT_OK and valid(out, "compare") == {"n": 6, "same_as_gold": False}
    code, out = invoke_json(capsys, "compare", "--family", "family4", "--n", "6")
    assert out["same_as_gold"] is True


def test_build_round_trip(capsys, tmp_path):
    base = tmp_path / "f1"
    code, out = invoke_json(capsys, "build", "--family", "family1", "--k", "4", "--s", "5", "--out", str(base))
    assert code == EXIT_OK
    valid(out, "build")
    assert out["params"]["family"] == "family1"
    t = TruthTable.load(base)
    header = json.loads((tmp_path / "f1.json").read_text())
    assert header["n"] == 12 and header["reduction_poly"] == "0x1009"
    assert (tmp_path / "f1.bin").stat().st_size == 4 * 4096
    # the saved table feeds the other commands
    code, spec_out = invoke_json(capsys, "spectrum", "--table", str(base) + ".bin")
    assert code == EXIT_OK and spec_out["matches_theorem"]
    assert t.params.s == 5


def test_build_text_lists_values(capsys):
    code, out = invoke(capsys, "build", "--family", "gold", "--n", "3", "--d", "1", "--format", "text")
    assert code == EXIT_OK
    assert [int(v, 16) for v in out.split()] == [0, 1, 3, 4, 5, 6, 7, 2]


def test_gammas_flag(capsys):
    a = invoke_json(capsys, "build", "--family", "family3", "--k", "5", "--s", "1", "--gammas", "random:3")[1]
    b = invoke_json(capsys, "build", "--family", "family3", "--k", "5", "--s", "1", "--gammas", "random:3")[1]
    z = invoke_json(capsys, "build", "--family", "family3", "--k", "5", "--s", "1")[1]
    assert a == b and a["values"] != z["values"]
    assert any(g for g in a["params"]["gammas"])
    code, out = invoke_json(capsys, "spectrum", "--family", "family3", "--k", "5", "--s", "1", "--gammas", "random:3")
    assert code == EXIT_OK and out["matches_theorem"]


def test_primitive_override(capsys):
    base = invoke_json(capsys, "spectrum", "--family", "family1", "--k", "2", "--s", "1")
    assert base[0] == EXIT_INVALID  # k >= 3 is required
    code, out = invoke_json(capsys, "spectrum", "--family", "family2", "--k", "3", "--s", "1",
                            "--poly", "0x1053", "--primitive", "0x3")
    if code == EXIT_INVALID:
        pytest.skip(out["error"])
    assert out["matches_theorem"]


def test_threads_deterministic(capsys):
    argv = ["spectrum", "--family", "family2", "--k", "3", "--s", "7"]
    one = invoke(capsys, *argv)[1]
    four = invoke(capsys, *argv, "--threads", "4")[1]
    assert one == four


def test_out_file(capsys, tmp_path):
    path = tmp_path / "apn.json"
    code, out = invoke(capsys, "apn", "--family", "dillon", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["is_apn"] is True


def test_run_config_round_trip():
    ns = build_parser().parse_args(["weights", "--family", "gold", "--n", "5", "--d", "2", "--source", "pless"])
    cfg = RunConfig.from_args(ns)
    assert RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
    assert run(cfg)[1] == EXIT_OK


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "apnspectra.cli", "field", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["reduction_poly"] == "0xb"
