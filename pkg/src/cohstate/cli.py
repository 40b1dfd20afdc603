"""Command-line front end.

Subcommands:
  wavefn  -- sample a coherent-state wave function on a grid and export it
  evolve  -- propagate it (closed form, split-step, or Fock phases) and
             export snapshots
  verify  -- run the verification suite and report value/threshold/pass per
             check

Curve data is CSV (metadata in '#' comment lines above the header); the
verification report is JSON or a human-readable table.  Identical
configurations produce byte-identical output: floats are printed with 17
significant digits and no timestamps appear in data sections.

Exit codes: 0 all requested checks passed (or data written), 1 at least one
check failed, 2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import nullcontext

from . import __version__, analytic, propagator, verify
from .core import PhysicalParams, fidelity, make_grid

_DEFAULT_ALPHAS = ((1.0, 1.0), (2.0, -0.5), (1.3, 0.7))


def _parse_time(text: str, period: float) -> float:
    """Absolute time, or a fraction of the period when 'T'-suffixed ('0.25T')."""
    text = text.strip()
    if text.lower().endswith("t"):
        coefficient = text[:-1].strip()
        return (float(coefficient) if coefficient else 1.0) * period
    return float(text)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--alpha",
        nargs=2,
        type=float,
        metavar=("RE", "IM"),
        help="real and imaginary parts of the state label",
    )
    shared.add_argument("--hbar", type=float, default=1.0)
    shared.add_argument("--mass", type=float, default=1.0)
    shared.add_argument("--omega", type=float, default=1.0)
    shared.add_argument(
        "--grid-n", type=int, default=1024, help="grid points (power of two)"
    )
    shared.add_argument(
        "--sigma-mult",
        type=float,
        default=12.0,
        help="grid margin in ground-state widths beyond the orbit",
    )
    shared.add_argument("--steps-per-period", type=int, default=4096)
    shared.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    shared.add_argument(
        "--format",
        choices=("csv", "json"),
        default=None,
        help="csv (default) for curve data; json (default) for verify reports",
    )

    parser = argparse.ArgumentParser(
        prog="cohstate",
        description="Coherent states of the harmonic oscillator, with the "
        "overall phase factor done right.",
    )
    parser.add_argument("--version", action="version", version=f"cohstate {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    wavefn = commands.add_parser(
        "wavefn",
        parents=[shared],
        help="export x, Re psi, Im psi, |psi|^2 for one state",
    )
    wavefn.add_argument(
        "--time",
        default="0",
        help="evaluation time; absolute or 'T'-suffixed fraction of the period",
    )
    wavefn.add_argument(
        "--phaseless",
        action="store_true",
        help="write the deficient form (constant position-momentum phase dropped)",
    )
    wavefn.set_defaults(func=cmd_wavefn)

    evolve = commands.add_parser(
        "evolve",
        parents=[shared],
        help="export snapshots of the evolving state",
    )
    evolve.add_argument(
        "--method", choices=("analytic", "splitstep", "fock"), default="analytic"
    )
    evolve.add_argument(
        "--times",
        default="0,0.25T,0.5T,0.75T,1T",
        help="comma-separated snapshot times (absolute or 'T'-suffixed)",
    )
    evolve.add_argument(
        "--periods",
        type=float,
        default=1.0,
        help="time horizon in periods; snapshot times must not exceed it",
    )
    evolve.set_defaults(func=cmd_evolve)

    verify_cmd = commands.add_parser(
        "verify",
        parents=[shared],
        help="run verification checks and report value/threshold/pass",
    )
    verify_cmd.add_argument("--suite", choices=verify.SUITES, default="all")
    verify_cmd.set_defaults(func=cmd_verify)
    return parser


def _params_from(args) -> PhysicalParams:
    return PhysicalParams(m=args.mass, omega=args.omega, hbar=args.hbar)


def _label_from(args) -> analytic.CoherentLabel:
    if args.alpha is None:
        raise ValueError("--alpha RE IM is required for this command")
    return analytic.CoherentLabel(complex(args.alpha[0], args.alpha[1]))


def _grid_for(label, params, args):
    return make_grid(
        params, analytic.orbit_radius(label, params), args.sigma_mult, args.grid_n
    )


def _config_echo(args, extra: dict) -> dict:
    echo = {
        "hbar": args.hbar,
        "mass": args.mass,
        "omega": args.omega,
        "grid_n": args.grid_n,
        "sigma_mult": args.sigma_mult,
        "steps_per_period": args.steps_per_period,
    }
    if args.alpha is not None:
        echo["alpha"] = [args.alpha[0], args.alpha[1]]
    echo.update(extra)
    return {key: echo[key] for key in sorted(echo)}


def _open_out(args):
    if args.out is None:
        return nullcontext(sys.stdout)
    return open(args.out, "w", newline="")


def _metadata_lines(args, extra: dict) -> list[str]:
    lines = [f"# cohstate {args.command} v{__version__}"]
    for key, value in _config_echo(args, extra).items():
        lines.append(f"# {key} = {value}")
    return lines


def _write_curve_csv(stream, metadata: list[str], blocks) -> None:
    first = True
    for block_meta, psi in blocks:
        if not first:
            stream.write("\n")
        for line in metadata if first else []:
            stream.write(line + "\n")
        for line in block_meta:
            stream.write(line + "\n")
        stream.write("x,re_psi,im_psi,density\n")
        values = psi.values
        density = psi.density
        for x, v, d in zip(psi.grid.points, values, density):
            stream.write(f"{_fmt(x)},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(d)}\n")
        first = False


def _curve_json(args, extra: dict, snapshots: list[dict]) -> str:
    payload = {
        "tool": f"cohstate {args.command} v{__version__}",
        "config": _config_echo(args, extra),
        "snapshots": snapshots,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _snapshot_dict(psi, meta: dict) -> dict:
    out = dict(meta)
    out["x"] = [float(v) for v in psi.grid.points]
    out["re_psi"] = [float(v) for v in psi.values.real]
    out["im_psi"] = [float(v) for v in psi.values.imag]
    out["density"] = [float(v) for v in psi.density]
    return out


def cmd_wavefn(args) -> int:
    params = _params_from(args)
    label = _label_from(args)
    grid = _grid_for(label, params, args)
    t = _parse_time(args.time, params.period)
    family_name = "phaseless" if args.phaseless else "coherent"
    if t == 0.0:
        if args.phaseless:
            psi = analytic.phaseless_gaussian(label, params, grid)
        else:
            psi = analytic.coherent_wavefunction(label, params, grid)
    else:
        if args.phaseless:
            psi = verify.evolved_phaseless_family(label, params, grid)(t)
        else:
            psi = analytic.analytic_evolved_wavefunction(label, t, params, grid)
    extra = {"family": family_name, "time": t}
    fmt = args.format or "csv"
    with _open_out(args) as stream:
        if fmt == "csv":
            _write_curve_csv(stream, _metadata_lines(args, extra), [([], psi)])
        else:
            stream.write(
                _curve_json(args, extra, [_snapshot_dict(psi, {"t": t})])
            )
    return 0


def cmd_evolve(args) -> int:
    params = _params_from(args)
    label = _label_from(args)
    grid = _grid_for(label, params, args)
    period = params.period
    horizon = args.periods * period
    times = [_parse_time(part, period) for part in args.times.split(",") if part.strip()]
    if not times:
        raise ValueError("--times must name at least one snapshot")
    for t in times:
        if t < 0.0 or t > horizon * (1.0 + 1e-12):
            raise ValueError(
                f"snapshot time {t:g} outside the configured horizon "
                f"[0, {horizon:g}] (raise --periods)"
            )
    psi0 = analytic.coherent_wavefunction(label, params, grid)
    coeffs = analytic.fock_coefficients(label) if args.method == "fock" else None

    blocks = []
    snapshots = []
    for t in times:
        reference = analytic.analytic_evolved_wavefunction(label, t, params, grid)
        if t == 0.0:
            psi = psi0
        elif args.method == "analytic":
            psi = reference
        elif args.method == "splitstep":
            n_steps = max(1, round(args.steps_per_period * t / period))
            plan = propagator.PropagationPlan(t, n_steps, grid, params)
            psi = propagator.split_step_evolve(psi0, plan)
        else:
            evolved = propagator.fock_evolve(coeffs, t, params)
            psi = analytic.fock_synthesize(evolved, params, grid)
        alpha_t = analytic.evolve_label(label, t, params).label.alpha
        meta = {
            "t": t,
            "method": args.method,
            "alpha_t": [alpha_t.real, alpha_t.imag],
        }
        block_meta = [
            f"# snapshot t = {_fmt(t)}",
            f"# method = {args.method}",
            f"# alpha_t = {_fmt(alpha_t.real)} {_fmt(alpha_t.imag)}",
        ]
        if args.method != "analytic":
            overlap_fidelity = fidelity(psi, reference)
            meta["fidelity_vs_analytic"] = overlap_fidelity
            block_meta.append(f"# fidelity_vs_analytic = {_fmt(overlap_fidelity)}")
        blocks.append((block_meta, psi))
        snapshots.append(_snapshot_dict(psi, meta))

    extra = {"method": args.method, "periods": args.periods, "times": times}
    fmt = args.format or "csv"
    with _open_out(args) as stream:
        if fmt == "csv":
            _write_curve_csv(stream, _metadata_lines(args, extra), blocks)
        else:
            stream.write(_curve_json(args, extra, snapshots))
    return 0


def _report_table(result: verify.VerificationSuiteResult) -> str:
    lines = [f"{'check':58s} {'value':>13s} {'threshold':>13s} {'status':>7s}"]
    for check in result.checks:
        status = "pass" if check.passed else "FAIL"
        lines.append(
            f"{check.name:58s} {check.value:13.6g} {check.threshold:13.6g} {status:>7s}"
        )
        if check.note:
            lines.append(f"    ({check.note})")
    total = len(result.checks)
    failed = len(result.failures)
    if failed:
        lines.append(f"{failed} of {total} checks FAILED")
    else:
        lines.append(f"all {total} checks passed")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.format == "csv":
        raise ValueError("verification reports are json or a table, not csv")
    params = _params_from(args)
    if args.alpha is not None:
        alphas: tuple[complex, ...] = (complex(args.alpha[0], args.alpha[1]),)
    else:
        alphas = tuple(complex(re, im) for re, im in _DEFAULT_ALPHAS)
    for alpha in alphas:
        analytic.CoherentLabel(alpha)  # validates the cap with a clear message
    config = verify.SuiteConfig(
        params=params,
        alphas=alphas,
        grid_n=args.grid_n,
        sigma_multiple=args.sigma_mult,
        steps_per_period=args.steps_per_period,
    )
    result = verify.run_full_suite(config, suite=args.suite)
    report = {
        "config": _config_echo(
            args, {"suite": args.suite, "alphas": [[a.real, a.imag] for a in alphas]}
        ),
        **result.to_dict(),
    }
    with _open_out(args) as stream:
        if args.format == "json" or args.out is not None:
            stream.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        else:
            stream.write(_report_table(result))
    return 0 if result.all_pass else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
