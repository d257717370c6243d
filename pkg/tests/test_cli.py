import json
import subprocess
import sys

import pytest

from isa.cli import INPUT_ERROR, NEGATIVE, OK, main
from isa.semigroup import cyclic_table, dump, gen_brandt, gen_group, gen_semilattice_chain


@pytest.fixture
def files(tmp_path):
    paths = {}
    paths["z3"] = tmp_path / "z3.json"
    dump(gen_group("cyclic:3"), paths["z3"])
    paths["z4"] = tmp_path / "z4.json"
    dump(gen_group("cyclic:4"), paths["z4"])
    paths["brandt"] = tmp_path / "brandt.json"
    dump(gen_brandt(cyclic_table(2), 2), paths["brandt"])
    paths["chain2"] = tmp_path / "chain2.json"
    dump(gen_semilattice_chain(2), paths["chain2"])
    paths["leftzero"] = tmp_path / "leftzero.json"
    paths["leftzero"].write_text(json.dumps({"table": [[0, 0], [1, 1]]}))
    paths["ragged"] = tmp_path / "ragged.json"
    paths["ragged"].write_text(json.dumps({"table": [[0, 1], [1]]}))
    return paths


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_group(files, capsys):
    code, out, _ = run(["validate", files["z3"]], capsys)
    assert code == OK and "order 3" in out


def test_validate_left_zero(files, capsys):
    code, out, _ = run(["validate", files["leftzero"]], capsys)
    assert code == NEGATIVE and "NonUniqueInverse" in out


def test_validate_malformed(files, capsys):
    assert run(["validate", files["ragged"]], capsys)[0] == INPUT_ERROR


def test_validate_missing_file(tmp_path, capsys):
    assert run(["validate", tmp_path / "nope.json"], capsys)[0] == INPUT_ERROR


@pytest.mark.parametrize(
    "argv,order",
    [
        (["gen", "brandt", "--group", "cyclic:2", "--index", "2"], 9),
        (["gen", "symmetric-inverse", "--n", "2"], 7),
        (["gen", "semilattice-chain", "--n", "3"], 3),
        (["gen", "group", "--group", "dihedral:3"], 6),
        (["gen", "clifford", "--group", "cyclic:2", "--levels", "2"], 4),
    ],
)
def test_gen_round_trips_through_validate(argv, order, tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(argv + ["--out", out], capsys)[0] == OK
    assert json.loads(out.read_text())["order"] == order
    code, text, _ = run(["validate", out], capsys)
    assert code == OK and f"order {order}" in text


def test_gen_product(files, tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, _ = run(["gen", "product", "--factor", files["z3"], "--factor", files["chain2"], "--out", out], capsys)
    assert code == OK and json.loads(out.read_text())["order"] == 6


def test_gen_missing_parameter(capsys):
    code, _, err = run(["gen", "brandt", "--group", "cyclic:2"], capsys)
    assert code == INPUT_ERROR and "--index" in err


def test_gen_unknown_family(capsys):
    assert run(["gen", "free"], capsys)[0] == INPUT_ERROR


def test_gen_too_large(capsys):
    assert run(["gen", "symmetric-inverse", "--n", "5"], capsys)[0] == INPUT_ERROR


def test_analyze_brandt_module_diagonal(files, capsys):
    code, out, _ = run(["analyze", files["brandt"], "--what", "diagonal-module"], capsys)
    data = json.loads(out)
    assert code == OK and data["feasible"] and data["kind"] == "module"


def test_analyze_brandt_classical_is_feasible(files, capsys):
    # the algebra has a unit, so a classical diagonal exists
    code, out, _ = run(["analyze", files["brandt"], "--what", "diagonal-classical"], capsys)
    assert code == OK and json.loads(out)["residuals"] == []


def test_analyze_all(files, capsys):
    code, out, _ = run(["analyze", files["z4"]], capsys)
    data = json.loads(out)
    assert code == OK
    assert data["group_image"]["quotient_table"] == [list(r) for r in cyclic_table(4)]
    assert data["h1"]["dim_H1"] == 0
    assert data["mean"]["mu"] == [["1", "4"]] * 4


def test_analyze_mean_and_group_image(files, capsys):
    code, out, _ = run(["analyze", files["chain2"], "--what", "mean"], capsys)
    assert code == OK and json.loads(out)["mu"] == [["0", "1"], ["1", "1"]]
    code, out, _ = run(["analyze", files["chain2"], "--what", "group-image"], capsys)
    assert json.loads(out) == {"classes": [[0, 1]], "quotient_table": [[0]]}


def test_analyze_h1_zero_module(files, capsys):
    code, out, _ = run(["analyze", files["z3"], "--what", "h1", "--module", "zero"], capsys)
    assert code == OK and json.loads(out)["dim_Z"] == 0


def test_analyze_invalid_input(files, capsys):
    assert run(["analyze", files["leftzero"]], capsys)[0] == INPUT_ERROR


def test_max_order_cap(files, capsys, monkeypatch):
    monkeypatch.setenv("ISA_MAX_ORDER", "4")
    assert run(["analyze", files["brandt"], "--what", "mean"], capsys)[0] == INPUT_ERROR
    assert run(["validate", files["brandt"]], capsys)[0] == INPUT_ERROR
    assert run(["analyze", files["z3"], "--what", "mean"], capsys)[0] == OK


def test_check_round_trip(files, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert run(["analyze", files["brandt"], "--what", "diagonal-module", "--out", cert], capsys)[0] == OK
    code, out, _ = run(["check", files["brandt"], cert], capsys)
    assert code == OK and json.loads(out)["valid"]
    mean = tmp_path / "mean.json"
    run(["analyze", files["brandt"], "--what", "mean", "--out", mean], capsys)
    assert run(["check", files["brandt"], mean], capsys)[0] == OK


def test_check_rejects_bad_certificate(files, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"mu": [["1", "1"], ["0", "1"]]}))
    code, out, _ = run(["check", files["chain2"], bad], capsys)
    assert code == NEGATIVE and not json.loads(out)["valid"]
    junk = tmp_path / "junk.json"
    junk.write_text(json.dumps({"nothing": 1}))
    assert run(["check", files["chain2"], junk], capsys)[0] == INPUT_ERROR


def test_report_empty_directory(tmp_path, capsys):
    code, out, _ = run(["report", "--corpus", tmp_path], capsys)
    assert code == OK and json.loads(out)["summary"]["count"] == 0


def test_report_marks_invalid_file(files, tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    dump(gen_group("cyclic:2"), d / "a.json")
    (d / "b.json").write_text("{not json")
    code, out, _ = run(["report", "--corpus", d], capsys)
    data = json.loads(out)
    assert code == OK
    assert [r["status"] for r in data["records"]] == ["ok", "invalid"]
    assert data["summary"]["invalid"] == 1


def test_report_not_a_directory(tmp_path, capsys):
    assert run(["report", "--corpus", tmp_path / "missing"], capsys)[0] == INPUT_ERROR


def test_report_is_deterministic(tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    dump(gen_brandt(cyclic_table(1), 2), d / "b.json")
    dump(gen_group("symmetric:3"), d / "s3.json")
    dump(gen_semilattice_chain(3), d / "c3.json")
    first, second = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(["report", "--corpus", d, "--out", first], capsys)[0] == OK
    assert run(["report", "--corpus", d, "--out", second, "--jobs", "2"], capsys)[0] == OK
    assert first.read_bytes() == second.read_bytes()
    assert all(r["wall_time"] is None for r in json.loads(first.read_text())["records"])


def test_report_timings(tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    dump(gen_group("cyclic:2"), d / "z2.json")
    code, out, _ = run(["report", "--corpus", d, "--timings"], capsys)
    assert isinstance(json.loads(out)["records"][0]["wall_time"], float)


def test_corpus_verb_writes_files(tmp_path, capsys):
    assert run(["corpus", tmp_path / "c"], capsys)[0] == OK
    assert len(list((tmp_path / "c").glob("*.json"))) == 17


def test_bad_arguments(capsys):
    assert main(["analyze"]) == INPUT_ERROR
    assert main([]) == INPUT_ERROR


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "isa", "validate", str(files["z3"])], capture_output=True, text=True)
    assert proc.returncode == OK
