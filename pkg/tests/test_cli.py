import json
import math

import pytest

from toric_ghz import cli, records
from toric_ghz.ghz import canonical_dset
from toric_ghz.lattice import build


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_canonical(capsys):
    code, out, _ = run(capsys, "verify", "--k", "4", "--anchor", "2,1")
    rep = json.loads(out)
    assert code == 0
    assert rep["eigenvalues"] == [-1, -1, -1, 1]
    assert rep["lr_satisfying"] == 0
    assert rep["parity_contradiction"] is True
    assert len(rep["equations"]) == 4


def test_verify_small_k_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--k", "2")
    assert code == 2 and "k >= 3" in err
    code, _, _ = run(capsys, "verify", "--k", "3", "--anchor", "3,0")
    assert code == 2


def test_verify_round_trip_and_tampering(tmp_path, capsys):
    lat = build(3)
    rec = records.dset_record(lat, canonical_dset(lat, (1, 1)))
    good = tmp_path / "set.json"
    good.write_text(json.dumps(rec))
    assert run(capsys, "verify", "--input", str(good))[0] == 0
    rec["equations"][0]["parity"] = 1
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(rec))
    code, out, _ = run(capsys, "verify", "--input", str(bad))
    assert code == 1
    assert json.loads(out)["mismatches"]


@pytest.mark.parametrize(
    "content",
    ["not json", '{"k": 3}', '{"k": 3, "lx": [0], "lz1": [], "lz2": [], "splits": {}}'],
)
def test_verify_malformed_input(tmp_path, capsys, content):
    path = tmp_path / "broken.json"
    path.write_text(content)
    assert run(capsys, "verify", "--input", str(path))[0] == 2


def test_verify_non_paradox_set(tmp_path, capsys):
    from toric_ghz.ghz import make_dset
    from toric_ghz.lattice import dual, primal

    lat = build(3)
    dset = make_dset(lat, dual(lat.star((1, 1))), primal(lat.boundary((0, 1))), primal(lat.boundary((2, 2))))
    path = tmp_path / "plain.json"
    path.write_text(json.dumps(records.dset_record(lat, dset)))
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == 1 and json.loads(out)["paradox"] is False


def test_record_round_trip():
    lat = build(4)
    dset = canonical_dset(lat, (3, 0))
    rec = records.dset_record(lat, dset)
    assert records.dset_from_record(json.loads(records.dumps(rec))) == dset


def test_enumerate_stream(tmp_path, capsys):
    out_file = tmp_path / "sets.jsonl"
    code, _, err = run(capsys, "enumerate", "--k", "3", "--max-loop-len", "4", "--limit", "100", "--output", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert len(lines) == 36
    assert json.loads(err)["summary"]["records"] == 36
    keys = {records.dset_from_record(json.loads(ln)).key() for ln in lines}
    lat = build(3)
    for anchor in lat.vertices():
        assert canonical_dset(lat, anchor).key() in keys
    for i in range(len(lines)):
        assert run(capsys, "verify", "--input", str(out_file), "--index", str(i))[0] == 0


def test_enumerate_limit_zero(capsys):
    code, out, err = run(capsys, "enumerate", "--k", "3", "--limit", "0")
    assert code == 0 and out == ""
    assert json.loads(err)["summary"]["records"] == 0


def test_enumerate_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "out.jsonl"
    assert run(capsys, "enumerate", "--k", "3", "--limit", "1", "--output", str(target))[0] == 3


def _argmax(csv_text):
    rows = [ln.split(",") for ln in csv_text.splitlines()[1:]]
    return float(max(rows, key=lambda r: float(r[1]))[0])


def test_fringe_commands(capsys):
    code, d1, _ = run(capsys, "fringe", "--k", "3", "--op", "d1", "--points", "64")
    assert code == 0
    assert len(d1.splitlines()) == 65
    assert _argmax(d1) == pytest.approx(math.pi, abs=1e-10)
    _, d4, _ = run(capsys, "fringe", "--k", "3", "--op", "d4")
    assert _argmax(d1) - _argmax(d4) == pytest.approx(math.pi, abs=2 * math.pi / 64)
    a = run(capsys, "fringe", "--k", "3", "--op", "d2", "--shots", "10000", "--seed", "7")[1]
    b = run(capsys, "fringe", "--k", "3", "--op", "d2", "--shots", "10000", "--seed", "7")[1]
    assert a == b and a.splitlines()[0] == "phi,expectation,shots,plus"


def test_fringe_validation(capsys):
    assert run(capsys, "fringe", "--k", "3", "--op", "d9")[0] == 2
    assert run(capsys, "fringe", "--k", "3", "--op", "d1", "--shots", "10")[0] == 2


def test_fringe_json(capsys):
    code, out, _ = run(capsys, "fringe", "--k", "3", "--op", "d3", "--points", "4", "--format", "json")
    assert code == 0 and json.loads(out)["theta"] == pytest.approx(math.pi)


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--k", "2", "--trials", "1000", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and rep["mismatches"] == []
    assert rep["normalization"]["measured"] == pytest.approx(2 ** (-5 / 2))
    assert rep["code_space_dimension"] == 4
    assert run(capsys, "oracle-check", "--k", "4")[0] == 2


def test_environment_defaults(capsys, monkeypatch):
    monkeypatch.setenv("TORIC_K", "5")
    code, out, _ = run(capsys, "verify")
    assert code == 0 and json.loads(out)["k"] == 5
    code, out, _ = run(capsys, "verify", "--k", "3")
    assert json.loads(out)["k"] == 3
