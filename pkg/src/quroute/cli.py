"""Command-line entry points: compile, bench, fit-model, devices."""
from __future__ import annotations

import csv
import json
import os
import sys
import time
from pathlib import Path

import click

from . import baseline, coeffs, pipeline, synthesis
from .circuit import parse_qasm
from .device import get_device

STATS_SCHEMA_VERSION = 1
BENCH_COLUMNS = ["circuit", "logical_cnots", "building", "moving", "total",
                 "avg_cost", "wall_ms", "strategy", "seed", "baseline_total",
                 "baseline_avg_cost", "error"]


def _config_options(fn):
    opts = [
        click.option("--device", default="ring:6", show_default=True,
                     help="Builtin device name or path to a device JSON file."),
        click.option("--strategy", default="binary", show_default=True,
                     type=click.Choice(["independent", "sequential", "binary"])),
        click.option("--solvers", default=1, show_default=True,
                     help="Number of concurrent solver workers (I)."),
        click.option("--timeout-ms", default=1000, show_default=True),
        click.option("--sweeps", default=None, type=int,
                     help="Pin the annealer sweep count (otherwise calibrated from --timeout-ms)."),
        click.option("--layer-cap", default=20, show_default=True),
        click.option("--var-budget", default=1200, show_default=True),
        click.option("--penalty", default=None, type=float,
                     help="One-hot penalty weight override."),
        click.option("--solver-backend", default="sa", show_default=True,
                     help="'sa' or 'remote:<url>' (token via QUROUTE_SOLVER_TOKEN)."),
        click.option("--seed", default=0, show_default=True),
        click.option("--model-path", default=None, type=click.Path(),
                     help="Moving-cost model JSON (defaults to the uniform closed form)."),
        click.option("--exact-token-swap-limit", default=8, show_default=True),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _make_config(kw) -> pipeline.CompileConfig:
    return pipeline.CompileConfig(
        device=kw["device"], strategy=kw["strategy"], solvers=kw["solvers"],
        timeout_ms=kw["timeout_ms"], sweeps=kw["sweeps"], layer_cap=kw["layer_cap"],
        var_budget=kw["var_budget"], penalty=kw["penalty"], model_path=kw["model_path"],
        seed=kw["seed"], exact_token_swap_limit=kw["exact_token_swap_limit"],
        solver_backend=kw["solver_backend"],
        remote_token=os.environ.get("QUROUTE_SOLVER_TOKEN", ""),
    )


def _stats_payload(result: pipeline.CompileResult) -> dict:
    return {
        "schema_version": STATS_SCHEMA_VERSION,
        "device": result.device.name,
        **result.physical.stats.to_dict(),
        "wall_ms": result.elapsed_ms,
        "swap_samples": [{"pi": list(s.pi), "swaps": s.swap_count}
                         for s in result.physical.samples],
    }


@click.group()
def main():
    """QUBO-based qubit routing compiler."""


@main.command("compile")
@click.argument("input_qasm", type=click.Path(exists=True))
@click.option("--output", "-o", default=None, type=click.Path(),
              help="Output QASM path (default: <input>.routed.qasm).")
@click.option("--stats", default=None, type=click.Path(),
              help="Stats JSON path (default: <output>.stats.json).")
@click.option("--compiler", default="qubo", show_default=True,
              type=click.Choice(["qubo", "naive"]))
@_config_options
def compile_cmd(input_qasm, output, stats, compiler, **kw):
    """Compile INPUT_QASM onto a device and write routed QASM plus stats."""
    config = _make_config(kw)
    circuit = parse_qasm(Path(input_qasm).read_text())
    if compiler == "naive":
        device = get_device(config.device)
        from .device import select_subset
        physical = baseline.compile_naive(circuit, select_subset(device, circuit.num_qubits))
        ok, msg = synthesis.verify_equivalence(circuit, physical)
        if not ok:
            raise click.ClickException(f"verification failed: {msg}")
        payload = {"schema_version": STATS_SCHEMA_VERSION, "device": physical.device.name,
                   **physical.stats.to_dict(), "wall_ms": 0, "swap_samples": []}
    else:
        result = pipeline.compile_circuit(circuit, config)
        physical = result.physical
        payload = _stats_payload(result)

    output = output or str(Path(input_qasm).with_suffix(".routed.qasm"))
    stats = stats or output + ".stats.json"
    Path(output).write_text(synthesis.to_qasm(physical))
    Path(stats).write_text(json.dumps(payload, indent=2) + "\n")
    click.echo(f"total {physical.stats.total_physical_cnots} physical CNOTs "
               f"({physical.stats.building_cost} building + {physical.stats.moving_cost} moving) "
               f"for {physical.stats.logical_cnots} logical; wrote {output}")


@main.command("bench")
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--output", "-o", default="bench.csv", show_default=True, type=click.Path())
@click.option("--with-baseline", is_flag=True, help="Also run the naive router per circuit.")
@_config_options
def bench_cmd(corpus_dir, output, with_baseline, **kw):
    """Compile every .qasm in CORPUS_DIR and write per-circuit stats as CSV."""
    config = _make_config(kw)
    rows = []
    for path in sorted(Path(corpus_dir).glob("*.qasm")):
        row = dict.fromkeys(BENCH_COLUMNS, "")
        row.update(circuit=path.name, strategy=config.strategy, seed=config.seed)
        start = time.monotonic()
        try:
            circuit = parse_qasm(path.read_text())
            result = pipeline.compile_circuit(circuit, config)
            st = result.physical.stats
            row.update(logical_cnots=st.logical_cnots, building=st.building_cost,
                       moving=st.moving_cost, total=st.total_physical_cnots,
                       avg_cost=round(st.average_compilation_cost, 4),
                       wall_ms=int((time.monotonic() - start) * 1000))
            if with_baseline:
                nb = baseline.compile_naive(circuit, result.device).stats
                row.update(baseline_total=nb.total_physical_cnots,
                           baseline_avg_cost=round(nb.average_compilation_cost, 4))
        except Exception as exc:  # noqa: BLE001 - per-file isolation
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    with open(output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    click.echo(f"wrote {len(rows)} rows to {output}")
    if any(r["error"] for r in rows):
        click.echo("some circuits failed; see the error column", err=True)


@main.command("fit-model")
@click.argument("model_path", type=click.Path())
@click.option("--device", required=True, help="Device the samples came from.")
@click.option("--samples-from", "sample_files", multiple=True, required=True,
              type=click.Path(exists=True), help="Stats JSON files with swap_samples.")
@click.option("--exact-token-swap-limit", default=8, show_default=True)
def fit_model_cmd(model_path, device, sample_files, exact_token_swap_limit):
    """Refit the moving-cost model on observed rearrangement samples."""
    dev = get_device(device)
    if os.path.exists(model_path):
        model = coeffs.load(model_path, expect_n=dev.num_qubits)
    else:
        model = coeffs.uniform_init(dev, exact_token_swap_limit)
    samples = []
    for path in sample_files:
        payload = json.loads(Path(path).read_text())
        for s in payload.get("swap_samples", []):
            samples.append(coeffs.RearrangementSample(tuple(s["pi"]), int(s["swaps"])))
    if not samples:
        raise click.ClickException("no swap_samples found in the given files")
    before = coeffs.rmse(model, samples)
    refit = coeffs.fit(model, samples)
    after = coeffs.rmse(refit, samples)
    coeffs.save(refit, model_path)
    click.echo(f"model v{refit.version}: RMSE {before:.4f} -> {after:.4f} "
               f"on {len(samples)} samples; wrote {model_path}")


@main.command("devices")
def devices_cmd():
    """List builtin device families."""
    click.echo("linear:<n>        path of n qubits")
    click.echo("ring:<n>          cycle of n qubits")
    click.echo("star:<hub>:<n>    n qubits all joined to <hub>")
    for name in ("ibm_qx5", "ibm_qx20"):
        dev = get_device(name)
        click.echo(f"{name:<17} {dev.num_qubits} qubits, {len(dev.edges)} edges")
    click.echo("or a path to a JSON file {name, num_qubits, edges}")


if __name__ == "__main__":
    sys.exit(main())
