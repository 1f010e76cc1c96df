import json
from pathlib import Path

from click.testing import CliRunner

from quroute.cli import main

BENCH = Path(__file__).parent.parent / "benchmarks"


def test_compile_command(tmp_path):
    out = tmp_path / "routed.qasm"
    stats = tmp_path / "stats.json"
    runner = CliRunner()
    result = runner.invoke(main, [
        "compile", str(BENCH / "full_adder.qasm"), "-o", str(out), "--stats", str(stats),
        "--device", "ring:4", "--seed", "0", "--sweeps", "200",
    ])
    assert result.exit_code == 0, result.output
    assert out.exists()
    payload = json.loads(stats.read_text())
    assert payload["logical_cnots"] == 11
    assert payload["total_physical_cnots"] == payload["building_cost"] + payload["moving_cost"]
    assert "swap_samples" in payload


def test_compile_naive_flag(tmp_path):
    runner = CliRunner()
    out = tmp_path / "naive.qasm"
    result = runner.invoke(main, [
        "compile", str(BENCH / "full_adder.qasm"), "-o", str(out),
        "--compiler", "naive", "--device", "ring:4",
    ])
    assert result.exit_code == 0, result.output
    assert out.exists()


def test_compile_error_exit(tmp_path):
    src = tmp_path / "big.qasm"
    src.write_text("qreg q[9]; cx q[0],q[8];")
    runner = CliRunner()
    result = runner.invoke(main, ["compile", str(src), "--device", "ring:4", "--sweeps", "10"])
    assert result.exit_code != 0


def test_bench_command(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "a.qasm").write_text("qreg q[2]; cx q[0],q[1];")
    (corpus / "b.qasm").write_text("qreg q[3]; cx q[0],q[1]; cx q[1],q[2];")
    (corpus / "broken.qasm").write_text("this is not qasm")
    out = tmp_path / "bench.csv"
    runner = CliRunner()
    result = runner.invoke(main, [
        "bench", str(corpus), "-o", str(out), "--device", "linear:3",
        "--sweeps", "100", "--with-baseline",
    ])
    assert result.exit_code == 0, result.output
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 4  # header + 3 rows
    header = lines[0].split(",")
    assert header[:6] == ["circuit", "logical_cnots", "building", "moving", "total", "avg_cost"]
    rows = {line.split(",")[0]: line for line in lines[1:]}
    assert "1.0" in rows["a.qasm"]           # adjacent-only: avg cost exactly 1
    assert "MalformedSource" in rows["broken.qasm"]


def test_fit_model_command(tmp_path):
    stats = tmp_path / "stats.json"
    stats.write_text(json.dumps({
        "swap_samples": [{"pi": [1, 0, 2, 3], "swaps": 1}, {"pi": [0, 1, 2, 3], "swaps": 0}],
    }))
    model_path = tmp_path / "model.json"
    runner = CliRunner()
    result = runner.invoke(main, [
        "fit-model", str(model_path), "--device", "ring:4", "--samples-from", str(stats),
    ])
    assert result.exit_code == 0, result.output
    payload = json.loads(model_path.read_text())
    assert payload["version"] == 1
    assert len(payload["history"]) == 2

    # refitting on the same samples bumps the version again
    result = runner.invoke(main, [
        "fit-model", str(model_path), "--device", "ring:4", "--samples-from", str(stats),
    ])
    assert result.exit_code == 0, result.output
    assert json.loads(model_path.read_text())["version"] == 2


def test_devices_command():
    runner = CliRunner()
    result = runner.invoke(main, ["devices"])
    assert result.exit_code == 0
    assert "ring:<n>" in result.output
    assert "ibm_qx5" in result.output
