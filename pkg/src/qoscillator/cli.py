"""Command-line front end: spectra, wavefunction grids, uncertainty sweeps,
self-verification, and level fitting, emitted as CSV or JSON.

Exit codes: 0 success, 1 verification failure, 2 validation error,
3 series convergence failure, 4 degenerate fit data. Output is
byte-deterministic: fixed column orders, 17-significant-digit floats,
line-feed endings.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from . import gaussexp as ga
from . import states as st
from . import verify as vf
from .errors import DegenerateData, NoConvergence, OutsideConvergenceDisk
from .levelfit import LevelData, fit_levels
from .observables import (
    energy_coherent_closed_form,
    uncertainty_coherent_closed_form,
    uncertainty_report,
)
from .qarith import DeformationParams, spectrum_energy
from .states import CoherentParams

EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3
EXIT_DEGENERATE = 4

EIGEN_CAP = st.EIGENSTATE_CAP


@dataclass
class OutputRecord:
    command: str
    columns: list[str]
    rows: list[tuple]
    metadata: dict = field(default_factory=dict)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _json_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return '"' + value + '"'
    return format(float(value), ".17g")


def _to_csv(rec: OutputRecord) -> str:
    lines = [f"# {key} = {_fmt(val)}" for key, val in rec.metadata.items()]
    lines.append(",".join(rec.columns))
    for row in rec.rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _to_json(rec: OutputRecord) -> str:
    # hand-rolled so float formatting stays pinned to 17 significant digits
    out = ["{"]
    out.append(f'  "command": "{rec.command}",')
    out.append('  "metadata": {')
    meta_items = list(rec.metadata.items())
    for i, (key, val) in enumerate(meta_items):
        comma = "," if i + 1 < len(meta_items) else ""
        out.append(f'    "{key}": {_json_scalar(val)}{comma}')
    out.append("  },")
    out.append('  "columns": [' + ", ".join(f'"{c}"' for c in rec.columns) + "],")
    out.append('  "rows": [')
    for i, row in enumerate(rec.rows):
        comma = "," if i + 1 < len(rec.rows) else ""
        out.append("    [" + ", ".join(_json_scalar(v) for v in row) + "]" + comma)
    out.append("  ]")
    out.append("}")
    return "\n".join(out) + "\n"


def _emit(rec: OutputRecord, fmt: str, output: str | None):
    text = _to_csv(rec) if fmt == "csv" else _to_json(rec)
    if output:
        Path(output).write_text(text, newline="\n")
    else:
        click.echo(text, nl=False)


def _fail(message: str, code: int = EXIT_VALIDATION):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _params(q: float, omega: float = 1.0) -> DeformationParams:
    if not (0.0 < q < 1.0):
        _fail(f"q must lie strictly inside (0, 1), got {q}")
    if omega <= 0.0:
        _fail(f"omega must be positive, got {omega}")
    return DeformationParams.from_q(q, omega=omega)


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
    help="Output format.",
)
_output_option = click.option(
    "--output", type=click.Path(dir_okay=False), default=None,
    help="Write to a file instead of standard output.",
)


@click.group()
def cli():
    """q-deformed harmonic oscillator toolkit."""


@cli.command()
@click.option("--q", type=float, required=True, help="Deformation parameter in (0,1).")
@click.option("--omega", type=float, default=1.0, help="Oscillator frequency.")
@click.option("--n-max", type=int, default=10, help="Highest level to emit.")
@_format_option
@_output_option
def spectrum(q, omega, n_max, fmt, output):
    """Energy levels E_n = omega([n] + q^n/2)."""
    if not (0 <= n_max <= EIGEN_CAP):
        _fail(f"n-max must lie in 0..{EIGEN_CAP}, got {n_max}")
    p = _params(q, omega)
    rows = []
    for n in range(n_max + 1):
        e = spectrum_energy(n, p)
        rows.append((n, e, e / omega, (n + 0.5) * omega))
    rec = OutputRecord(
        command="spectrum",
        metadata={"q": q, "omega": omega, "energy_bound": omega / (1.0 - q)},
        columns=["n", "energy", "energy_over_omega", "classical_energy"],
        rows=rows,
    )
    _emit(rec, fmt, output)


@cli.command()
@click.option("--q", type=float, required=True)
@click.option("--n", type=int, default=0, help="Quantum number of the eigenstate.")
@click.option("--x-min", type=float, default=-6.0)
@click.option("--x-max", type=float, default=6.0)
@click.option("--points", type=int, default=241)
@_format_option
@_output_option
def wavefn(q, n, x_min, x_max, points, fmt, output):
    """Eigenfunction values and probability density on a grid."""
    if points < 2:
        _fail(f"points must be at least 2, got {points}")
    if not (0 <= n <= EIGEN_CAP):
        _fail(f"n must lie in 0..{EIGEN_CAP}, got {n}")
    if not x_min < x_max:
        _fail(f"x-min must be below x-max, got [{x_min}, {x_max}]")
    p = _params(q)
    xs = np.linspace(x_min, x_max, points)
    vals = ga.evaluate(st.eigenstate(n, p), xs)
    rows = [
        (float(x), v.real, v.imag, abs(v) ** 2) for x, v in zip(xs, vals)
    ]
    rec = OutputRecord(
        command="wavefn",
        metadata={"q": q, "n": n},
        columns=["x", "re", "im", "density"],
        rows=rows,
    )
    _emit(rec, fmt, output)


@cli.command()
@click.option("--q", type=float, required=True)
@click.option("--lambda-re", type=float, default=0.5)
@click.option("--lambda-im", type=float, default=0.0)
@click.option("--x-min", type=float, default=-6.0)
@click.option("--x-max", type=float, default=6.0)
@click.option("--points", type=int, default=241)
@click.option("--tol", type=float, default=1e-9, help="Series truncation tolerance.")
@_format_option
@_output_option
def coherent(q, lambda_re, lambda_im, x_min, x_max, points, tol, fmt, output):
    """Coherent-state wavefunction, density, and the q->0 density limit."""
    if points < 2:
        _fail(f"points must be at least 2, got {points}")
    if not x_min < x_max:
        _fail(f"x-min must be below x-max, got [{x_min}, {x_max}]")
    if tol <= 0:
        _fail(f"tol must be positive, got {tol}")
    p = _params(q)
    lam = complex(lambda_re, lambda_im)
    try:
        cp = CoherentParams(lam=lam, params=p)
    except OutsideConvergenceDisk as exc:
        _fail(str(exc))
    try:
        psi = st.coherent_wavefunction(cp, tol)
    except NoConvergence as exc:
        _fail(str(exc), EXIT_NO_CONVERGENCE)
    xs = np.linspace(x_min, x_max, points)
    vals = ga.evaluate(psi, xs)
    if abs(lam) < 1.0:
        limit = st.coherent_density_limit_q0(lam, p, xs)
    else:
        limit = np.full_like(xs, math.nan)
    rows = [
        (float(x), v.real, v.imag, abs(v) ** 2, float(l))
        for x, v, l in zip(xs, vals, limit)
    ]
    rec = OutputRecord(
        command="coherent",
        metadata={
            "q": q,
            "lambda_re": lambda_re,
            "lambda_im": lambda_im,
            "uncertainty_product": uncertainty_coherent_closed_form(lam, q),
            "energy": energy_coherent_closed_form(lam, q, 1.0),
        },
        columns=["x", "re", "im", "density", "limit_q0_density"],
        rows=rows,
    )
    _emit(rec, fmt, output)


@cli.command()
@click.option("--q", type=float, required=True)
@click.option("--omega", type=float, default=1.0)
@click.option("--mode", type=click.Choice(["eigen", "coherent"]), default="eigen")
@click.option("--n-max", type=int, default=10, help="Eigen mode: highest level.")
@click.option("--lambda-max", type=float, default=None,
              help="Coherent mode: sweep end (default 0.9 of the radius).")
@click.option("--points", type=int, default=9, help="Coherent mode: sweep points.")
@click.option("--tol", type=float, default=1e-9)
@_format_option
@_output_option
def uncertainty(q, omega, mode, n_max, lambda_max, points, tol, fmt, output):
    """Uncertainty products Delta_x Delta_p for eigen or coherent states."""
    p = _params(q, omega)
    if mode == "eigen":
        if not (0 <= n_max <= EIGEN_CAP):
            _fail(f"n-max must lie in 0..{EIGEN_CAP}, got {n_max}")
        rows = []
        for n in range(n_max + 1):
            rows.append((n, spectrum_energy(n, p) / omega, n + 0.5))
        rec = OutputRecord(
            command="uncertainty",
            metadata={"q": q, "omega": omega, "mode": mode},
            columns=["n", "product", "classical_bound"],
            rows=rows,
        )
    else:
        radius = 1.0 / math.sqrt(1.0 - q)
        if lambda_max is None:
            lambda_max = 0.9 * radius
        if not (0.0 < lambda_max < radius):
            _fail(
                f"lambda-max must lie in (0, {radius}) for q={q}, got {lambda_max}"
            )
        if points < 2:
            _fail(f"points must be at least 2, got {points}")
        if tol <= 0:
            _fail(f"tol must be positive, got {tol}")
        rows = []
        for lam in np.linspace(0.0, lambda_max, points):
            closed = uncertainty_coherent_closed_form(lam, q)
            if lam == 0.0:
                psi = st.vacuum(p)
            else:
                try:
                    psi = st.coherent_wavefunction(
                        CoherentParams(lam=complex(lam), params=p), tol
                    )
                except NoConvergence as exc:
                    _fail(str(exc), EXIT_NO_CONVERGENCE)
            measured = uncertainty_report(psi, p).product
            rows.append((float(lam), closed, measured))
        rec = OutputRecord(
            command="uncertainty",
            metadata={"q": q, "omega": omega, "mode": mode},
            columns=["lambda_abs", "product_closed_form", "product_measured"],
            rows=rows,
        )
    _emit(rec, fmt, output)


@cli.command()
@click.option("--q", "q_spec", type=str, default="0.1,0.5,0.9",
              help="Comma-separated deformation values.")
@click.option("--n-max", type=int, default=10)
@click.option("--tol", type=float, default=1e-9,
              help="Coherent series tolerance used inside the checks.")
@click.option("--inject-fault", type=click.Choice([vf.FAULT_OPERATOR_ORDER]),
              default=None, help="Deliberately break the named component.")
@_format_option
@_output_option
def verify(q_spec, n_max, tol, inject_fault, fmt, output):
    """Run the invariant battery; exit 0 only if every check passes."""
    entries = [s for s in q_spec.split(",") if s.strip()]
    if not entries:
        _fail("q list must not be empty")
    try:
        q_list = [float(s) for s in entries]
    except ValueError:
        _fail(f"could not parse q list {q_spec!r}")
    for q in q_list:
        if not (0.0 < q < 1.0):
            _fail(f"q values must lie in (0, 1), got {q}")
    if not (0 <= n_max <= EIGEN_CAP - 1):
        _fail(f"n-max must lie in 0..{EIGEN_CAP - 1}, got {n_max}")
    if tol <= 0:
        _fail(f"tol must be positive, got {tol}")

    results = vf.run_checks(q_list, n_max=n_max, tol=tol, fault=inject_fault)
    rows = [
        (r.name, r.max_residual, r.threshold, r.passed) for r in results
    ]
    rec = OutputRecord(
        command="verify",
        metadata={"q_list": ",".join(_fmt(q) for q in q_list), "n_max": n_max},
        columns=["name", "max_residual", "threshold", "pass"],
        rows=rows,
    )
    _emit(rec, fmt, output)
    if not all(r.passed for r in results):
        sys.exit(EXIT_VERIFY_FAILED)


@cli.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--q-grid-size", type=int, default=512)
@click.option("--n-max", type=int, default=None,
              help="Predict levels up to n-max (default: highest observed).")
@_format_option
@_output_option
def fit(input_path, q_grid_size, n_max, fmt, output):
    """Fit (omega, q) to observed levels from a CSV file with header n,energy."""
    if q_grid_size < 2:
        _fail(f"q-grid-size must be at least 2, got {q_grid_size}")
    entries = _read_level_csv(input_path)
    try:
        data = LevelData(tuple(entries))
        result = fit_levels(data, q_grid_size=q_grid_size)
    except DegenerateData as exc:
        _fail(str(exc), EXIT_DEGENERATE)
    except ValueError as exc:
        _fail(str(exc))

    observed = dict(data.entries)
    top = max(observed) if n_max is None else n_max
    if not (0 <= top <= 1000):
        _fail(f"n-max must lie in 0..1000, got {top}")
    p = DeformationParams.from_q(result.q, omega=result.omega)
    rows = []
    for n in range(top + 1):
        model = spectrum_energy(n, p)
        if n in observed:
            rows.append((n, observed[n], model, model - observed[n]))
    rec = OutputRecord(
        command="fit",
        metadata={
            "omega": result.omega,
            "q": result.q,
            "anharmonicity": result.anharmonicity,
            "rms_residual": result.rms_residual,
        },
        columns=["n", "energy_observed", "energy_fit", "residual"],
        rows=rows,
    )
    _emit(rec, fmt, output)


def _read_level_csv(path) -> list[tuple[int, float]]:
    entries = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    saw_header = False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_header:
            if line.replace(" ", "") != "n,energy":
                _fail(f"{path}:{lineno}: expected header 'n,energy', got {line!r}")
            saw_header = True
            continue
        parts = line.split(",")
        if len(parts) != 2:
            _fail(f"{path}:{lineno}: expected 'n,energy', got {line!r}")
        try:
            n = int(parts[0])
            energy = float(parts[1])
        except ValueError:
            _fail(f"{path}:{lineno}: non-numeric row {line!r}")
        if not math.isfinite(energy):
            _fail(f"{path}:{lineno}: energy must be finite")
        entries.append((n, energy))
    if not saw_header:
        _fail(f"{path}: missing 'n,energy' header")
    return entries


def main():
    cli()


if __name__ == "__main__":
    main()
