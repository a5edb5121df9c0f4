import json
import subprocess
import sys

import pytest

from discrete_riesz.cli import main


@pytest.fixture
def files(tmp_path):
    seq = tmp_path / "seq.json"
    seq.write_text('{"offset": 0, "values": [3, 4]}')
    csv = tmp_path / "seq.csv"
    csv.write_text("index,value\n0,3\n1,4\n")
    eset = tmp_path / "set.json"
    eset.write_text('{"runs": [[0, 4]], "rightRay": null, "leftRay": null}')
    w = tmp_path / "w.json"
    w.write_text('{"kind": "power", "beta": 0.3}')
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    return {"seq": str(seq), "csv": str(csv), "set": str(eset), "w": str(w), "bad": str(bad),
            "dir": tmp_path}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_norm_prints_five(files, capsys):
    code, out, _ = run(["norm", "--family", "lp", "--p", "2", "--in", files["seq"]], capsys)
    assert code == 0 and json.loads(out) == {"value": 5.0, "witness": None}
    code, out, _ = run(["norm", "--family", "lp", "--p", "2", "--in", files["csv"]], capsys)
    assert json.loads(out)["value"] == 5.0


def test_morrey_norm_has_witness(files, capsys):
    code, out, _ = run(["norm", "--family", "morrey", "--p", "1", "--q", "2", "--in", files["seq"]], capsys)
    d = json.loads(out)
    # three-point windows around the pair beat the single 4: 7 / sqrt(3)
    assert code == 0 and d["witness"] == {"m": 0, "N": 1}
    assert d["value"] == pytest.approx(7 / 3 ** 0.5, rel=1e-15)


def test_whitney(files, capsys):
    code, out, _ = run(["whitney", "--in", files["set"]], capsys)
    assert code == 0 and json.loads(out) == [{"m": 2, "N": 2}]


def test_verify_gate_names_constraint(capsys):
    code, out, err = run(["verify", "--tag", "t3.10", "--alpha", "0.25", "--p", "2"], capsys)
    assert code == 1 and "q<2p" in err and out == ""


def test_op_writes_window(files, capsys):
    out = files["dir"] / "y.json"
    code, _, _ = run(["op", "--kind", "riesz", "--alpha", "0.5", "--window=-1:2", "--fast",
                      "--in", files["seq"], "--out", str(out)], capsys)
    d = json.loads(out.read_text())
    assert code == 0 and d["offset"] == -1 and len(d["values"]) == 4
    assert d["values"][1] == pytest.approx(4.0)


@pytest.mark.parametrize("argv,code", [
    (["norm", "--family", "lp", "--p", "2", "--in", "{seq}"], 0),
    (["norm", "--family", "lp", "--p", "0.5", "--in", "{seq}"], 1),
    (["norm", "--family", "lp", "--p", "2", "--in", "{bad}"], 1),
    (["norm", "--family", "lp", "--p", "2", "--in", "{dir}/missing.json"], 2),
    (["norm", "--family", "lp", "--p", "2", "--in", "{seq}", "--out", "{dir}/no/such/dir.json"], 2),
    (["norm", "--family", "lp", "--p", "2", "--in", "{seq}", "--bogus"], 1),
    (["norm", "--family", "nope", "--p", "2", "--in", "{seq}"], 1),
    (["op", "--kind", "maximal", "--alpha", "1.5", "--window", "0:3", "--in", "{seq}"], 1),
    (["op", "--kind", "maximal", "--alpha", "0.5", "--window", "0:3", "--in", "{seq}"], 0),
    (["whitney", "--in", "{seq}"], 1),
    (["whitney", "--in", "{set}", "--ray-depth", "-1"], 1),
    (["weight", "--spec", "{w}", "--p", "2", "--caps", "8,16"], 0),
    (["weight", "--spec", "{w}", "--p", "2", "--caps", "16,8"], 1),
    (["verify", "--tag", "t3.1", "--alpha", "0.25", "--p", "2", "--beta", "0.6", "--caps", "8,16"], 1),
    (["verify", "--tag", "t3.7", "--alpha", "0.25", "--p", "2", "--caps", "8,16"], 1),
    (["verify", "--tag", "t3.1", "--alpha", "0.25", "--p", "2", "--caps", "8,16"], 0),
    (["bench", "--sizes", ""], 0),
    ([], 1),
])
def test_exit_code_matrix(files, capsys, argv, code):
    argv = [a.format(**files) for a in argv]
    got, out, err = run(argv, capsys)
    assert got == code
    if code:
        assert err and out == ""


def test_bench_empty_table(capsys):
    code, out, _ = run(["bench", "--sizes", ""], capsys)
    assert code == 0 and out == "n,naive_ms,fast_ms,speedup\n"


def test_bench_rows(capsys):
    code, out, _ = run(["bench", "--sizes", "512", "--reps", "1"], capsys)
    header, row = out.splitlines()
    n, naive, fast, speed = row.split(",")
    assert code == 0 and n == "512" and float(speed) > 0


@pytest.mark.parametrize("argv", [
    ["verify", "--tag", "t3.8", "--alpha", "0.25", "--p", "2", "--beta", "0.1", "--caps", "16,32"],
    ["verify", "--tag", "m2.13", "--alpha", "0.25", "--p", "2", "--caps", "8,16,32"],
    ["whitney", "--in", "{set}", "--ray-depth", "4"],
    ["op", "--kind", "riesz", "--alpha", "0.3", "--window", "0:40", "--in", "{seq}"],
])
def test_reruns_are_byte_identical(files, capsys, argv):
    argv = [a.format(**files) for a in argv]
    outs = []
    for i in range(2):
        path = files["dir"] / f"out{i}"
        assert main(argv + ["--out", str(path)]) == 0
        outs.append(path.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_verify_writes_csv(files, capsys):
    rep, csv = files["dir"] / "r.json", files["dir"] / "r.csv"
    code = main(["verify", "--tag", "t3.1", "--alpha", "0.25", "--p", "2", "--caps", "8,16",
                 "--out", str(rep), "--csv", str(csv)])
    assert code == 0
    assert json.loads(rep.read_text())["params"]["seed"] == 20240611
    assert csv.read_text().startswith("caseId,size,lhs,rhs,ratio,status\n")


def test_module_help_lists_flags():
    out = subprocess.run([sys.executable, "-m", "discrete_riesz", "verify", "--help"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    for flag in ("--tag", "--alpha", "--p", "--q", "--beta", "--caps", "--seed", "--out"):
        assert flag in out.stdout
