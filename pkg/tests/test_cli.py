"""Command-line behavior: generation, runs, reports, manifests, replay."""
import json
import struct
import subprocess
import sys

import pytest

from mtkit import refvalues
from mtkit.cli import main


def test_generate_decimal_known_values(capsys, kat_int32_5489):
    _, kat = kat_int32_5489
    assert main(["generate", "--count", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [str(v) for v in kat[:3]]
    assert out[0] == "3499211612"


def test_generate_hex(capsys):
    assert main(["generate", "--count", "1", "--format", "hex"]) == 0
    assert capsys.readouterr().out == "d091bb5c\n"


def test_generate_res53_prints_floats(capsys):
    assert main(["generate", "--conversion", "res53", "--count", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["0.8147236863931789", "0.9057919370756192"]


def test_generate_res53_with_tau_prints_numerators(capsys):
    assert main(["generate", "--conversion", "res53", "--count", "1",
                 "--tau", "5"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.isdigit()
    assert int(out) < 1 << 48


def test_generate_bytes_little_endian(tmp_path, kat_int32_5489):
    _, kat = kat_int32_5489
    path = tmp_path / "raw.bin"
    assert main(["generate", "--count", "4", "--format", "bytes",
                 "--out", str(path)]) == 0
    blob = path.read_bytes()
    assert blob == b"".join(struct.pack("<I", v) for v in kat[:4])


def test_generate_with_lags(capsys, kat_int32_5489):
    _, kat = kat_int32_5489
    assert main(["generate", "--count", "4", "--lags", "0,2"]) == 0
    out = [int(x) for x in capsys.readouterr().out.split()]
    assert out == [kat[0], kat[2], kat[3], kat[5]]


def test_generate_writes_manifest(tmp_path):
    path = tmp_path / "vals.txt"
    argv = ["generate", "--count", "5", "--out", str(path)]
    assert main(argv) == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == argv
    assert manifest["outputs"] == ["vals.txt"]
    assert manifest["config"]["seed"] == 5489


def test_replay_reproduces_outputs(tmp_path):
    path = tmp_path / "vals.txt"
    assert main(["generate", "--count", "5", "--out", str(path)]) == 0
    original = path.read_text()
    path.unlink()
    assert main(["replay", str(tmp_path / "manifest.json")]) == 0
    assert path.read_text() == original


def test_replay_missing_manifest_is_io_error(tmp_path, capsys):
    assert main(["replay", str(tmp_path / "nope.json")]) == 1
    assert "cannot read manifest" in capsys.readouterr().err


def test_unknown_conversion_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--conversion", "rev64"])
    assert exc.value.code == 2


def test_unwritable_out_is_exit_1(tmp_path, capsys):
    missing = tmp_path / "no" / "such" / "dir" / "x.txt"
    assert main(["generate", "--count", "1", "--out", str(missing)]) == 1
    assert "I/O error" in capsys.readouterr().err


def test_equidist_prefix_matches_reference(capsys):
    assert main(["equidist", "--vmax", "3"]) == 0
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["k"] == {"1": 19937, "2": 9968, "3": 6240}
    assert doc["matches_reference"] is True
    assert "k(3) = 6240" in captured.err


def test_relations_verify_known(capsys):
    assert main(["relations", "verify", "--relation", "weight6-pairs",
                 "--trials", "2000", "--seeds", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc) == 1
    assert doc[0]["holds"] is True
    assert doc[0]["weight"] == 6


def test_relations_verify_custom_terms(capsys):
    assert main(["relations", "verify",
                 "--terms", "0:2,792:4,792:11,1246:4,1246:11",
                 "--trials", "2000", "--seeds", "1,2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc[0]["relation"] == "custom"
    assert doc[0]["holds"] is True


def test_relations_verify_reports_counterexample(capsys):
    assert main(["relations", "verify", "--terms", "0:2,792:4",
                 "--trials", "2000", "--seeds", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc[0]["holds"] is False
    assert isinstance(doc[0]["fail_index"], int)


def test_relations_discover_empty_window(capsys):
    assert main(["relations", "discover", "--v", "2", "--k", "8"]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_test_run_writes_results_and_manifest(tmp_path, capsys):
    out = str(tmp_path / "run")
    assert main(["test", "run", "--preset", "smallcrush8",
                 "--conversion", "raw32", "--seeds", "2",
                 "--out-dir", out]) == 0
    records = json.loads((tmp_path / "run" / "results.json").read_text())
    assert len(records) == 2
    assert {r["seed"] for r in records} == {1, 2}
    assert all(r["preset"] == "smallcrush8" for r in records)
    assert all(0 <= r["p_value"] <= 1 for r in records)
    manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
    assert manifest["seeds"] == [1, 2]


def test_test_run_appends_then_overwrites(tmp_path, capsys):
    out = str(tmp_path / "run")
    base = ["test", "run", "--preset", "smallcrush8", "--out-dir", out]
    assert main(base + ["--conversion", "raw32", "--seeds", "1"]) == 0
    assert main(base + ["--conversion", "concat64-lo", "--seeds", "1"]) == 0
    records = json.loads((tmp_path / "run" / "results.json").read_text())
    assert [r["conversion"] for r in records] == \
        ["raw32", "concat64_low_first"]
    assert main(base + ["--conversion", "raw32", "--seeds", "1",
                        "--overwrite"]) == 0
    records = json.loads((tmp_path / "run" / "results.json").read_text())
    assert len(records) == 1


def test_test_run_without_presets_exits_2(capsys):
    assert main(["test", "run", "--conversion", "raw32"]) == 2
    assert "choose --preset" in capsys.readouterr().err


def test_report_table4_from_run_dir(tmp_path, capsys):
    out = str(tmp_path / "run")
    for conversion in ("raw32", "concat64-lo"):
        assert main(["test", "run", "--preset", "smallcrush8",
                     "--conversion", conversion, "--seeds", "5",
                     "--out-dir", out]) == 0
    capsys.readouterr()
    assert main(["report", "table4", "--run-dir", out]) == 0
    csv_text = capsys.readouterr().out
    lines = csv_text.splitlines()
    assert lines[0] == "test,conversion,source,seed1,seed2,seed3,seed4,seed5"
    assert any(l.startswith("matrix_rank,raw32,computed") for l in lines)
    assert any(l.startswith("matrix_rank,concat64_low_first,reference-table")
               for l in lines)


def test_report_table2_missing_results_exits_1(tmp_path, capsys):
    assert main(["report", "table2", "--run-dir", str(tmp_path)]) == 1
    assert "run `mtkit test run` first" in capsys.readouterr().err


def test_report_table1_json(tmp_path, capsys):
    path = tmp_path / "t1.json"
    assert main(["report", "table1", "--format", "json",
                 "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["v"] == list(range(1, 33))
    assert doc["k32"][0] == 19937
    assert doc["ref_k32"] == [refvalues.KV_RAW32[v] for v in range(1, 33)]
    assert doc["k32"] == doc["ref_k32"]
    assert doc["k64"] == doc["ref_k64"]


def test_installed_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "mtkit.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"
