"""Command-line front end.

Subcommands: ``spectrum`` (sorted eigenvalues of one Hamiltonian),
``table {1|2}`` (reproduce the bundled four-column reference tables),
``perturb`` (corrections and overlap identities), ``wavefunction``
(real-space curves plus decay report), ``sweep`` (parameter/truncation
grid) and ``verify`` (built-in check battery).

Exit codes: 0 success, 1 check failure (table/perturb mismatch), 2 solver
non-convergence, 3 configuration/domain/grid error.  CSV output carries
``# key=value`` metadata lines before the header; numbers are written in
shortest round-trip form, and JSON serializes doubles at full precision so
a report can be re-read bit-identically.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__ as _version
from . import model, perturbation, wavefunction
from .eigensolver import (
    Method,
    STABLE_TOL,
    SpectralReport,
    backend_name,
    compute_spectrum,
)
from .errors import (
    BasisTooSmall,
    ConvergenceError,
    DomainError,
    GridTooNarrow,
)
from .fock import FockBasisSpec, OperatorMatrix, build_momentum, build_position, commutator

__all__ = ["main", "read_spectrum_json", "TABLE_COLUMNS", "TABLE_ROWS"]

#: four (lambda, beta) columns per frequency branch; headers are omega = 1..4
TABLE_COLUMNS = {
    1: [(1.0, 3.0), (2.0, 7.0), (0.5, 5.5), (0.8, 8.2)],
    2: [(3.0, 1.0), (2.0, 1.0), (1.5, 0.5), (1.5, 1.0)],
}
TABLE_ROWS = [0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50]
TABLE_TOL = 1e-6

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_NO_CONVERGENCE = 2
EXIT_CONFIG = 3


class _Parser(argparse.ArgumentParser):
    """Argument errors are configuration errors: exit 3, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_CONFIG)


@dataclass
class RunConfig:
    """Validated knobs of one CLI invocation, echoed into output metadata."""

    command: str
    lam: float = 1.0
    beta: float = 3.0
    scale: float = 1.0
    mode: str = "omega1"
    omega: float | None = None
    n_basis: int = 100
    state: int = 0
    k_max: int = 6
    method: str = "auto"
    fmt: str = "csv"
    out: str | None = None
    timestamp: bool = True
    grid_points: int = 2001
    grid_halfwidth: float | None = None
    jobs: int = 1
    sweep_lambda: tuple[float, ...] = field(default_factory=tuple)
    sweep_beta: tuple[float, ...] = field(default_factory=tuple)
    sweep_n_basis: tuple[int, ...] = field(default_factory=tuple)


def _fmtnum(x) -> str:
    """Shortest decimal that round-trips the double."""
    return repr(float(x))


def _finite_or_none(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolve(cfg: RunConfig) -> tuple[model.TransformParams, model.FrequencyChoice]:
    params = model.validate(cfg.lam, cfg.beta, cfg.scale)
    freq = model.frequency_for_mode(params, model.Mode(cfg.mode), cfg.omega)
    return params, freq


def _meta_lines(meta: dict) -> str:
    return "".join(f"# {key}={value}\n" for key, value in meta.items())


def _base_meta(cfg: RunConfig, freq: model.FrequencyChoice | None) -> dict:
    meta = {
        "tool": f"ptosc {_version}",
        "command": cfg.command,
        "lambda": _fmtnum(cfg.lam),
        "beta": _fmtnum(cfg.beta),
        "scale": _fmtnum(cfg.scale),
        "mode": cfg.mode,
    }
    if freq is not None:
        meta["omega"] = _fmtnum(freq.omega)
    meta["n_basis"] = str(cfg.n_basis)
    meta["backend"] = backend_name()
    if cfg.timestamp:
        meta["timestamp"] = _now()
    return meta


# ---------------------------------------------------------------- spectrum


def _spectrum_checks(h, report: SpectralReport, params) -> dict:
    trace = complex(np.trace(h.entries))
    total = complex(np.sum(report.eigenvalues))
    fro = float(np.linalg.norm(h.entries))
    trusted = report.eigenvalues[: report.trusted_count]
    dev = [abs(trusted[i] - model.closed_form_spectrum(params, i)) for i in range(len(trusted))]
    return {
        "trace": {
            "eig_sum_re": total.real,
            "eig_sum_im": total.imag,
            "trace_re": trace.real,
            "trace_im": trace.imag,
            "abs_err": abs(total - trace),
            "tol": 1e-8 * fro,
        },
        "closed_form_max_trusted_deviation": max(dev) if dev else None,
        "stable_tol": STABLE_TOL,
        "stable": None if report.stable is None else [bool(s) for s in report.stable],
        "drift": None if report.drifts is None else [_finite_or_none(d) for d in report.drifts],
    }


def _spectrum_rows(report: SpectralReport):
    rows = []
    n_res = 0 if report.residuals is None else len(report.residuals)
    for i, z in enumerate(report.eigenvalues):
        res = float(report.residuals[i]) if i < n_res else None
        rows.append(
            {
                "n": i,
                "re": float(z.real),
                "im": float(z.imag),
                "residual": res,
                "trusted": i < report.trusted_count,
            }
        )
    return rows


def _write_spectrum(cfg: RunConfig, meta: dict, report: SpectralReport, checks: dict) -> None:
    rows = _spectrum_rows(report)
    if cfg.fmt == "json":
        payload = {
            "config": dict(meta),
            "results": rows,
            "checks": checks,
        }
        payload["config"]["method_used"] = report.method.value
        payload["config"]["iterations"] = report.iterations
        payload["config"]["trusted_count"] = report.trusted_count
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
        return
    meta = dict(meta)
    meta["method_used"] = report.method.value
    meta["iterations"] = str(report.iterations)
    meta["trusted_count"] = str(report.trusted_count)
    lines = [_meta_lines(meta), "n,re,im,residual,trusted\n"]
    for row in rows:
        res = "" if row["residual"] is None else _fmtnum(row["residual"])
        lines.append(
            f"{row['n']},{_fmtnum(row['re'])},{_fmtnum(row['im'])},{res},"
            f"{'true' if row['trusted'] else 'false'}\n"
        )
    _emit("".join(lines), cfg.out)


def read_spectrum_json(path: str) -> tuple[dict, SpectralReport]:
    """Re-read a ``spectrum --format json`` file into a SpectralReport."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    rows = payload["results"]
    values = np.array([complex(r["re"], r["im"]) for r in rows], dtype=np.complex128)
    residuals = [r["residual"] for r in rows if r["residual"] is not None]
    checks = payload.get("checks", {})
    drift = checks.get("drift")
    stable = checks.get("stable")
    return payload["config"], SpectralReport(
        eigenvalues=values,
        n_basis=int(payload["config"]["n_basis"]),
        trusted_count=int(payload["config"]["trusted_count"]),
        iterations=int(payload["config"]["iterations"]),
        method=Method(payload["config"]["method_used"]),
        residuals=None if not residuals else np.array(residuals),
        drifts=None if drift is None else np.array([math.inf if d is None else d for d in drift]),
        stable=None if stable is None else np.array(stable, dtype=bool),
    )


def cmd_spectrum(cfg: RunConfig) -> int:
    params, freq = _resolve(cfg)
    h = model.build_hamiltonian(params, freq, cfg.n_basis)
    report = compute_spectrum(h, method=cfg.method)
    meta = _base_meta(cfg, freq)
    meta["method"] = cfg.method
    _write_spectrum(cfg, meta, report, _spectrum_checks(h, report, params))
    return EXIT_OK


# ------------------------------------------------------------------- table


def _table_cells(which: int, n_basis: int, method: str = "qr"):
    """Yield (lam, beta, omega, row n, value, passed) across the table."""
    branch = model.omega1 if which == 1 else model.omega2
    for lam, beta in TABLE_COLUMNS[which]:
        params = model.validate(lam, beta)
        freq = branch(params)
        h = model.build_hamiltonian(params, freq, n_basis)
        report = compute_spectrum(h, method=method)
        ladder = report.stable_eigenvalues()
        for n in TABLE_ROWS:
            if n < len(ladder):
                value = complex(ladder[n])
                passed = abs(value - (-(n + 0.5))) <= TABLE_TOL
            else:
                value = complex("nan")
                passed = False
            yield lam, beta, freq.omega, n, value, passed


def cmd_table(cfg: RunConfig, which: int) -> int:
    ok = True
    cells = []
    for lam, beta, omega, n, value, passed in _table_cells(which, cfg.n_basis):
        cells.append((lam, beta, omega, n, value, passed))
        ok = ok and passed

    cols = TABLE_COLUMNS[which]
    lines = [f"table {which}: negative spectrum at n_basis={cfg.n_basis}\n"]
    header = "  n  " + "".join(
        f"{f'l={lam:g},b={beta:g}':>18}" for lam, beta in cols
    )
    lines.append(header + "\n")
    for n in TABLE_ROWS:
        row = [c for c in cells if c[3] == n]
        lines.append(
            f"{n:4d} " + "".join(f"{c[4].real:18.6f}" for c in row) + "\n"
        )
    for lam, beta, omega, n, value, passed in cells:
        status = "PASS" if passed else "FAIL"
        lines.append(
            f"{status} table{which} lambda={lam:g} beta={beta:g} omega={omega:g} "
            f"n={n} value={value.real:.9f} expect={-(n + 0.5):.1f}\n"
        )
    lines.append(("PASS" if ok else "FAIL") + f" table{which} all {len(cells)} cells\n")
    _emit("".join(lines), cfg.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ----------------------------------------------------------------- perturb


def cmd_perturb(cfg: RunConfig) -> int:
    params, freq = _resolve(cfg)
    mode = model.Mode(cfg.mode)
    if mode is model.Mode.CUSTOM:
        raise DomainError("perturb requires mode omega1 or omega2")
    rows = []
    worst = 0.0
    for n in range(cfg.state + 1):
        rep = perturbation.perturbation_report(params, mode, n)
        norm_ov, energy_ov = perturbation.overlap_identities(params, mode, n, cfg.k_max)
        worst = max(worst, max(abs(c) for c in rep.corrections))
        rows.append(
            {
                "n": n,
                "epsilon0": rep.epsilon0,
                "eps1": rep.corrections[0],
                "eps2": rep.corrections[1],
                "eps3": rep.corrections[2],
                "max_abs_correction": max(abs(c) for c in rep.corrections),
                "norm_overlap": norm_ov,
                "energy_overlap": energy_ov,
            }
        )
    meta = _base_meta(cfg, freq)
    meta["k_max"] = str(cfg.k_max)
    if cfg.fmt == "json":
        _emit(json.dumps({"config": meta, "results": rows, "checks": {"max_abs_correction": worst}}, indent=2) + "\n", cfg.out)
    else:
        lines = [_meta_lines(meta)]
        lines.append("n,epsilon0,eps1,eps2,eps3,max_abs_correction,norm_overlap,energy_overlap\n")
        for r in rows:
            lines.append(
                ",".join(
                    [str(r["n"])]
                    + [_fmtnum(r[k]) for k in ("epsilon0", "eps1", "eps2", "eps3",
                                               "max_abs_correction", "norm_overlap", "energy_overlap")]
                )
                + "\n"
            )
        _emit("".join(lines), cfg.out)
    return EXIT_OK if worst <= 1e-12 else EXIT_CHECK_FAILED


# ------------------------------------------------------------ wavefunction


def _make_grid(cfg: RunConfig, n_top: int, omega: float) -> wavefunction.RealGrid:
    if cfg.grid_halfwidth is None:
        return wavefunction.default_grid(n_top, omega, cfg.grid_points)
    pts = np.linspace(-cfg.grid_halfwidth, cfg.grid_halfwidth, cfg.grid_points)
    step = pts[1] - pts[0]
    wts = np.full(cfg.grid_points, step)
    wts[0] = wts[-1] = step / 2.0
    return wavefunction.RealGrid(points=pts, weights=wts)


def cmd_wavefunction(cfg: RunConfig, plot: str | None) -> int:
    params, freq = _resolve(cfg)
    mode = model.Mode(cfg.mode)
    if mode is model.Mode.CUSTOM:
        raise DomainError("wavefunction requires mode omega1 or omega2")
    series = perturbation.series_coefficients(params, mode, cfg.state, cfg.k_max)
    grid = _make_grid(cfg, series.top_index(), freq.omega)
    base = wavefunction.evaluate_basis(cfg.state, freq.omega, grid)
    summed = wavefunction.evaluate_series(series, grid)
    tail, decay_ok = wavefunction.decay_report(summed, 1e-6)
    residual = perturbation.eigen_residual(params, mode, cfg.state, cfg.k_max)

    meta = _base_meta(cfg, freq)
    meta.update(
        {
            "state": str(cfg.state),
            "k_max": str(series.k_max),
            "terminated": str(series.terminated).lower(),
            "coeffs": ";".join(_fmtnum(c) for c in series.coeffs),
            "eigen_residual": _fmtnum(residual),
            "decay_max_tail": _fmtnum(tail),
            "decay_pass": str(decay_ok).lower(),
        }
    )
    if cfg.fmt == "json":
        payload = {
            "config": meta,
            "results": [
                {"x": float(x), "basis": float(b), "series": float(s)}
                for x, b, s in zip(grid.points, base.values, summed.values)
            ],
            "checks": {
                "eigen_residual": residual,
                "decay_max_tail": tail,
                "decay_pass": decay_ok,
            },
        }
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    else:
        lines = [_meta_lines(meta), "x,basis,series\n"]
        for x, b, s in zip(grid.points, base.values, summed.values):
            lines.append(f"{_fmtnum(x)},{_fmtnum(b)},{_fmtnum(s)}\n")
        _emit("".join(lines), cfg.out)

    if plot is not None:
        _write_plot(plot, grid, base, summed, cfg)
    return EXIT_OK


def _write_plot(path: str, grid, base, summed, cfg: RunConfig) -> None:
    try:
        import matplotlib
    except ImportError as exc:
        raise DomainError("--plot requires matplotlib (pip install ptosc[plot])") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(grid.points, base.values, label=f"basis n={cfg.state}")
    ax.plot(grid.points, summed.values, label=f"series k_max={cfg.k_max}")
    ax.set_xlabel("x")
    ax.set_ylabel("amplitude")
    ax.legend()
    ax.set_title(f"lambda={cfg.lam:g} beta={cfg.beta:g} mode={cfg.mode}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


# ------------------------------------------------------------------- sweep


def _sweep_point(task: tuple) -> dict:
    lam, beta, n_basis, mode_str, omega = task
    row = {
        "lambda": lam,
        "beta": beta,
        "n_basis": n_basis,
        "omega": None,
        "status": "ok",
        "max_deviation": None,
        "trusted_count": None,
        "iterations": None,
        "method": None,
    }
    try:
        params = model.validate(lam, beta)
        freq = model.frequency_for_mode(params, model.Mode(mode_str), omega)
        row["omega"] = freq.omega
        h = model.build_hamiltonian(params, freq, n_basis)
        report = compute_spectrum(h)
        trusted = report.eigenvalues[: report.trusted_count]
        dev = max(
            (abs(trusted[i] - (-(i + 0.5))) for i in range(len(trusted))),
            default=math.inf,
        )
        row.update(
            max_deviation=float(dev),
            trusted_count=report.trusted_count,
            iterations=report.iterations,
            method=report.method.value,
        )
    except (DomainError, BasisTooSmall) as exc:
        row["status"] = f"invalid-domain: {exc}"
    except ConvergenceError as exc:
        row["status"] = f"no-convergence: {exc}"
    return row


def cmd_sweep(cfg: RunConfig) -> int:
    tasks = [
        (lam, beta, nb, cfg.mode, cfg.omega)
        for lam in cfg.sweep_lambda
        for beta in cfg.sweep_beta
        for nb in cfg.sweep_n_basis
    ]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]
    meta = _base_meta(cfg, None)
    meta["jobs"] = str(cfg.jobs)
    if cfg.fmt == "json":
        _emit(json.dumps({"config": meta, "results": rows, "checks": {}}, indent=2) + "\n", cfg.out)
        return EXIT_OK
    lines = [_meta_lines(meta)]
    lines.append("lambda,beta,n_basis,omega,status,max_deviation,trusted_count,iterations,method\n")
    for r in rows:
        lines.append(
            ",".join(
                [
                    _fmtnum(r["lambda"]),
                    _fmtnum(r["beta"]),
                    str(r["n_basis"]),
                    "" if r["omega"] is None else _fmtnum(r["omega"]),
                    '"' + r["status"].replace('"', "'") + '"',
                    "" if r["max_deviation"] is None else _fmtnum(r["max_deviation"]),
                    "" if r["trusted_count"] is None else str(r["trusted_count"]),
                    "" if r["iterations"] is None else str(r["iterations"]),
                    "" if r["method"] is None else r["method"],
                ]
            )
            + "\n"
        )
    _emit("".join(lines), cfg.out)
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _verify_checks():
    """Yield (name, passed, detail) for the built-in battery."""
    for which in (1, 2):
        ok = all(passed for *_, passed in _table_cells(which, 100))
        yield f"table{which}-cells", ok, "44 cells vs -(n+1/2) at 1e-6"

    expected = [1.0, 2.0, 3.0, 4.0]
    for which, branch in ((1, model.omega1), (2, model.omega2)):
        vals = [branch(model.validate(l, b)).omega for l, b in TABLE_COLUMNS[which]]
        ok = all(abs(v - e) <= 4 * np.finfo(float).eps * e for v, e in zip(vals, expected))
        yield f"frequency-headers-{which}", ok, f"got {vals}"

    ok = True
    worst = 0.0
    for which in (1, 2):
        for lam, beta in TABLE_COLUMNS[which]:
            params = model.validate(lam, beta)
            freq = model.omega1(params) if which == 1 else model.omega2(params)
            spec = FockBasisSpec(n_basis=60, omega=freq.omega, scale=params.scale)
            x = build_position(spec)
            p = build_momentum(spec)
            r, y = model.build_transformed_ops(params, freq, 60)
            norm = 1.0 / math.sqrt(1.0 + lam * beta)
            xt = OperatorMatrix(norm * y.entries, label="x'")
            pt = OperatorMatrix(norm * r.entries, label="p'")
            lhs = commutator(xt, pt).entries[:58, :58]
            rhs = commutator(x, p).entries[:58, :58]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    ok = worst <= 1e-12
    yield "commutator-invariance", ok, f"max entry diff {worst:.2e} at n_basis=60"

    worst = 0.0
    for lam, beta in TABLE_COLUMNS[1]:
        params = model.validate(lam, beta)
        worst = max(worst, abs(model.coefficients(params, model.omega1(params)).U))
    for lam, beta in TABLE_COLUMNS[2]:
        params = model.validate(lam, beta)
        worst = max(worst, abs(model.coefficients(params, model.omega2(params)).V))
    yield "selected-frequency-zeros", worst <= 1e-12, f"max |U@w1|,|V@w2| = {worst:.2e}"

    worst = 0.0
    for mode, cols in ((model.Mode.OMEGA1, [(2.0, 7.0)]), (model.Mode.OMEGA2, [(3.0, 1.0)])):
        for lam, beta in cols:
            params = model.validate(lam, beta)
            for n in range(6):
                norm_ov, energy_ov = perturbation.overlap_identities(params, mode, n, 4)
                worst = max(worst, abs(norm_ov - 1.0), abs(energy_ov - (-(n + 0.5))))
    yield "overlap-identities", worst <= 1e-12, f"max deviation {worst:.2e}"

    worst = 0.0
    for n in range(1, 9):
        params = model.validate(3.0, 1.0)
        worst = max(worst, perturbation.eigen_residual(params, model.Mode.OMEGA2, n, n // 2))
    yield "terminating-series-residual", worst <= 1e-12, f"max residual {worst:.2e}"


def cmd_verify(cfg: RunConfig) -> int:
    ok = True
    lines = []
    for name, passed, detail in _verify_checks():
        ok = ok and passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name}: {detail}\n")
    lines.append(("PASS" if ok else "FAIL") + " verify\n")
    _emit("".join(lines), cfg.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ----------------------------------------------------------------- parsing


def _add_common(sub: argparse.ArgumentParser, *, table: bool = False) -> None:
    if not table:
        sub.add_argument("--lambda", dest="lam", type=float, default=1.0,
                         help="coordinate-mixing parameter (>= 0)")
        sub.add_argument("--beta", type=float, default=3.0,
                         help="momentum-mixing parameter (>= 0)")
        sub.add_argument("--scale", type=float, default=1.0, help="length scale s > 0")
        sub.add_argument("--mode", choices=["omega1", "omega2", "custom"],
                         default="omega1", help="frequency selection branch")
        sub.add_argument("--omega", type=float, default=None,
                         help="basis frequency for --mode custom")
    sub.add_argument("--n-basis", type=int, default=100, help="retained Fock states")
    sub.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="omit the timestamp metadata line (reproducible output)")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip() != "")


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ptosc", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="sorted eigenvalues of one Hamiltonian")
    _add_common(sp)
    sp.add_argument("--method", choices=["auto", "qr", "triangular"], default="auto")

    tp = subs.add_parser("table", help="reproduce reference table 1 or 2")
    tp.add_argument("which", type=int, choices=[1, 2])
    _add_common(tp, table=True)

    pp = subs.add_parser("perturb", help="corrections and overlap identities")
    _add_common(pp)
    pp.add_argument("--state", type=int, default=5, help="report states 0..state")
    pp.add_argument("--k-max", type=int, default=6, help="series order for overlaps")

    wp = subs.add_parser("wavefunction", help="real-space basis and series curves")
    _add_common(wp)
    wp.add_argument("--state", type=int, default=0, help="state index n")
    wp.add_argument("--k-max", type=int, default=4, help="series truncation order")
    wp.add_argument("--grid-points", type=int, default=2001)
    wp.add_argument("--grid-halfwidth", type=float, default=None,
                    help="override the automatic grid half-width")
    wp.add_argument("--plot", default=None, help="write an SVG/PNG plot here")

    sw = subs.add_parser("sweep", help="grid over (lambda, beta, n_basis)")
    sw.add_argument("--lambda", dest="sweep_lambda", type=_floats, default=(),
                    help="comma-separated lambda values")
    sw.add_argument("--beta", dest="sweep_beta", type=_floats, default=(),
                    help="comma-separated beta values")
    sw.add_argument("--n-basis", dest="sweep_n_basis", type=_ints, default=(100,),
                    help="comma-separated basis sizes")
    sw.add_argument("--mode", choices=["omega1", "omega2", "custom"], default="omega1")
    sw.add_argument("--omega", type=float, default=None)
    sw.add_argument("--jobs", type=int, default=1, help="concurrent points")
    sw.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    sw.add_argument("--out", default=None)
    sw.add_argument("--no-timestamp", action="store_true")

    vp = subs.add_parser("verify", help="run the built-in check battery")
    vp.add_argument("--out", default=None)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in (
        "lam", "beta", "scale", "mode", "omega", "n_basis", "state", "k_max",
        "fmt", "out", "grid_points", "grid_halfwidth", "jobs", "method",
        "sweep_lambda", "sweep_beta", "sweep_n_basis",
    ):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "no_timestamp", False):
        cfg.timestamp = False
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse help/usage paths
            return int(exc.code or 0)
        cfg = _config_from_args(args)
        if args.command == "spectrum":
            return cmd_spectrum(cfg)
        if args.command == "table":
            return cmd_table(cfg, args.which)
        if args.command == "perturb":
            return cmd_perturb(cfg)
        if args.command == "wavefunction":
            return cmd_wavefunction(cfg, args.plot)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_verify(cfg)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (DomainError, GridTooNarrow, BasisTooSmall, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
