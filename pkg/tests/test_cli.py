import json

import jsonschema
import pytest

from tripsep import serialize
from tripsep.cli import EXIT_NUMERIC, EXIT_USAGE, main
from tripsep.homodyne import read_batch


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_state_and_state_file(capsys, tmp_path):
    code, out, _ = run(capsys, "state", "--family", "xi", "--xi", "0.5")
    assert code == 0
    path = tmp_path / "s.json"
    path.write_text(out)
    code, out, _ = run(capsys, "moments", "--state", str(path), "--mmax", "3")
    assert code == 0
    assert json.loads(out)["value_rational"][1] == "11/8"


def test_moments_json_schema(capsys):
    code, out, _ = run(capsys, "moments", "--family", "ghzw", "--a", "3/2", "--mmax", "4", "--precision", "30")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, serialize.load_schema("series"))
    assert d["precision_digits"] == 30


def test_moments_csv_and_partition(capsys):
    code, out, _ = run(capsys, "moments", "--family", "vacuum", "--format", "csv", "--partition", "2", "--mmax", "2")
    assert code == 0
    assert out.splitlines() == ["m,value", "0,1.0", "1,2.0", "2,4.0"]


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--family", "ghzw", "--a", "1.5")
    d = json.loads(out)
    jsonschema.validate(d, serialize.load_schema("witness"))
    assert code == 0 and d["overall"] == "genuine-entanglement-detected"
    assert d["t1"]["verdict"] == "genuine-entanglement-detected"


def test_ppt(capsys):
    code, out, _ = run(capsys, "ppt", "--family", "xi", "--xi", "0.5")
    d = json.loads(out)
    jsonschema.validate(d, serialize.load_schema("ppt"))
    assert code == 0 and d["class1"] and d["physical"]


def test_simulate_writes_batch(capsys, tmp_path):
    path = tmp_path / "b.bin"
    code, out, _ = run(capsys, "simulate", "--family", "xi", "--xi", "0.5", "--shots", "2000", "--seed", "5", "--batch-out", str(path))
    d = json.loads(out)
    jsonschema.validate(d, serialize.load_schema("simulate"))
    assert code == 0 and read_batch(path).shots == 2000
    code2, out2, _ = run(capsys, "simulate", "--family", "xi", "--xi", "0.5", "--shots", "2000", "--seed", "5")
    assert out2 == out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--family", "xi", "--xi", "1/4", "--m", "3", "--partition", "2")
    d = json.loads(out)
    assert code == 0 and float(d["rel_dev_wick"]) < 1e-9 and float(d["rel_dev_quadrature"]) < 1e-8


def test_oracle_lemma(capsys):
    code, out, _ = run(capsys, "oracle", "--lemma")
    assert code == 0 and all(c["ok"] for c in json.loads(out)["cases"])


@pytest.mark.parametrize("argv", [
    ["moments", "--family", "xi", "--xi", "1.0"],
    ["moments", "--family", "xi"],
    ["moments", "--family", "ghzw", "--a", "1"],
    ["moments"],
    ["moments", "--family", "xi", "--xi", "abc"],
    ["moments", "--family", "vacuum", "--precision", "10"],
    ["simulate", "--family", "vacuum", "--shots", "1"],
    ["moments", "--state", "/nonexistent/file.json"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err.startswith("tripsep: error:")


def test_oracle_cap_is_numeric_failure(capsys):
    code, _, err = run(capsys, "oracle", "--family", "vacuum", "--m", "9")
    assert code == EXIT_NUMERIC


def test_mmax_out_of_range_rejected_by_parser(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["moments", "--family", "vacuum", "--mmax", "65"])
    assert exc.value.code == 2
