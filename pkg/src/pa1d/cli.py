"""Command-line interface: forward, observe, reconstruct, sweep.

Exit codes: 0 success, 2 configuration error (including bad flags),
3 data error (unreadable or inconsistent input files), 4 numerical error.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import baselines, forward, harness
from .errors import ConfigurationError, DataError, NumericalError, Pa1dError
from .observation import NoiseSpec, add_noise, load_trace, save_trace
from .spectral import PaddingConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pa1d",
        description="Recover the initial state of a 1D wave equation from boundary traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fwd = sub.add_parser("forward", help="simulate boundary traces")
    p_fwd.add_argument("--profile", required=True, choices=("smooth", "step"))
    p_fwd.add_argument("--T", required=True, type=int, help="padding width (integer)")
    p_fwd.add_argument("--modes", type=int, default=400, help="series modes M")
    p_fwd.add_argument("--N", required=True, type=int, help="samples per unit time")
    p_fwd.add_argument("--source", choices=("spectral", "oracle"), default="spectral")
    p_fwd.add_argument("--quad-points", type=int, default=None)
    p_fwd.add_argument("--out", required=True, help="output trace CSV")
    p_fwd.add_argument("--field-out", default=None, help="also write the full field CSV")
    p_fwd.add_argument("--field-nx", type=int, default=121)
    p_fwd.add_argument("--field-nt", type=int, default=121)
    p_fwd.set_defaults(func=_cmd_forward)

    p_obs = sub.add_parser("observe", help="add measurement noise to a trace")
    p_obs.add_argument("--in", dest="input", required=True, help="input trace CSV")
    p_obs.add_argument("--noise", required=True, type=float, help="noise level eps")
    p_obs.add_argument("--model", choices=("uniform", "gaussian"), default="uniform")
    p_obs.add_argument("--seed", type=int, default=0)
    p_obs.add_argument("--out", required=True, help="output trace CSV")
    p_obs.set_defaults(func=_cmd_observe)

    p_rec = sub.add_parser("reconstruct", help="reconstruct the initial state from a trace")
    p_rec.add_argument("--in", dest="input", required=True, help="input trace CSV")
    p_rec.add_argument("--T", required=True, type=int, help="padding width (must match the trace)")
    p_rec.add_argument("--K", required=True, type=int, help="modes used in the inversion")
    p_rec.add_argument(
        "--method",
        default="spectral",
        help="comma-separated subset of spectral,lsq,backward-fd",
    )
    p_rec.add_argument("--extended-trace-sign", choices=("minus", "plus"), default="minus")
    p_rec.add_argument("--output-points", type=int, default=401)
    p_rec.add_argument("--fd-h", type=float, default=None)
    p_rec.add_argument("--fd-tau", type=float, default=None)
    p_rec.add_argument("--fd-tfinal", type=float, default=None)
    p_rec.add_argument("--out", default=None, help="output reconstruction CSV")
    p_rec.add_argument("--report", default=None, help="output report JSON")
    p_rec.set_defaults(func=_cmd_reconstruct)

    p_sw = sub.add_parser("sweep", help="repeat a configured run over one parameter")
    p_sw.add_argument("--config", required=True, help="experiment config JSON")
    p_sw.add_argument("--param", required=True, choices=("K", "noise", "N"))
    p_sw.add_argument("--values", required=True, help="comma-separated parameter values")
    p_sw.add_argument("--out", required=True, help="output sweep CSV")
    p_sw.set_defaults(func=_cmd_sweep)

    return parser


def _cmd_forward(args) -> int:
    profile = forward.profile_by_name(args.profile)
    cfg = PaddingConfig(args.T)
    tr = forward.simulate_traces(
        profile, cfg, args.N, source=args.source, M=args.modes,
        quad_points=args.quad_points,
    )
    save_trace(tr, args.out)
    if args.field_out is not None:
        _write_field_csv(args, profile, cfg)
    return 0


def _write_field_csv(args, profile, cfg: PaddingConfig) -> None:
    if args.field_nx < 3 or args.field_nt < 3:
        raise ConfigurationError("field grids need at least 3 points per axis")
    x = np.linspace(-cfg.R, cfg.R, args.field_nx)
    t = np.linspace(0.0, 2.0 * cfg.R, args.field_nt)
    fld = forward.solve_forward(
        profile, cfg, args.modes, x=x, t=t, quad_points=args.quad_points
    )
    lines = [
        "# pa1d field v1",
        f"# profile: {args.profile}",
        f"# T: {cfg.T}",
        f"# modes: {args.modes}",
        "x,t,u",
    ]
    for i, xi in enumerate(x):
        for j, tj in enumerate(t):
            lines.append(f"{float(xi)!r},{float(tj)!r},{float(fld.u[i, j])!r}")
    Path(args.field_out).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def _cmd_observe(args) -> int:
    tr = load_trace(args.input)
    spec = NoiseSpec(model=args.model, eps=args.noise, seed=args.seed)
    save_trace(add_noise(tr, spec), args.out)
    return 0


def _cmd_reconstruct(args) -> int:
    tr = load_trace(args.input)
    if args.T != tr.cfg.T:
        raise ConfigurationError(
            f"--T {args.T} disagrees with the trace metadata (T = {tr.cfg.T})"
        )
    methods = tuple(m.strip() for m in args.method.split(",") if m.strip())
    fd = None
    if args.fd_h is not None or args.fd_tau is not None or args.fd_tfinal is not None:
        h = args.fd_h if args.fd_h is not None else 1.0 / tr.samples_per_unit
        tau = args.fd_tau if args.fd_tau is not None else h
        t_final = (
            args.fd_tfinal
            if args.fd_tfinal is not None
            else float(min(tr.cfg.T + 1, 2 * tr.cfg.T))
        )
        fd = baselines.FdConfig(h=h, tau=tau, t_final=t_final)
    result = harness.reconstruct_trace(
        tr,
        args.K,
        methods=methods,
        sign=args.extended_trace_sign,
        output_points=args.output_points,
        fd=fd,
    )
    if args.out is not None:
        harness.save_bytes(harness.write_recon_csv(result), args.out)
    if args.report is not None:
        Path(args.report).write_text(
            harness.write_report_json(result.report), encoding="ascii"
        )
    return 0


def _cmd_sweep(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise DataError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot parse config JSON: {exc}") from None
    cfg = harness.ExperimentConfig.from_dict(raw)
    tokens = [v.strip() for v in args.values.split(",") if v.strip()]
    if not tokens:
        raise ConfigurationError("--values must list at least one value")
    try:
        if args.param == "noise":
            values = [float(v) for v in tokens]
        else:
            values = [int(v) for v in tokens]
    except ValueError as exc:
        raise ConfigurationError(f"bad sweep value: {exc}") from None
    rows = harness.run_sweep(cfg, args.param, values)
    harness.save_bytes(harness.write_sweep_csv(args.param, rows), args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"pa1d: configuration error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"pa1d: data error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"pa1d: numerical error: {exc}", file=sys.stderr)
        return 4
    except Pa1dError as exc:
        print(f"pa1d: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
