"""Command-line front end.

Subcommands: poles, transmission, sweep, wavefunction, oracle, equivalence.
Configuration layering: command-line flags override a --config JSON file,
which overrides the built-in defaults (t=1, t1=1, eps_d=0, tol=1e-12).
Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from ._format import dumps, format_float
from .errors import NumericalError, ParameterError
from .feshbach import feshbach_pole_search
from .model import DeviceSpec, device_from_json, make_tdot, tdot_params
from .oracle import build_report, pole_set_distance
from .poles import pole_to_record
from .scattering import scattering_solve, sweep_rows_csv, transmission_sweep
from .siegert import solve_poles
from .wavefunction import evaluate, wavefunction_csv

DEFAULTS = {"t": 1.0, "t1": 1.0, "eps_d": 0.0, "tol": 1e-12}

POLE_COLUMNS = (
    "z_re", "z_im", "k_re", "k_im", "E_re", "E_im",
    "class", "amp0_re", "amp0_im", "ampd_re", "ampd_im",
)


def _thread_count() -> int:
    raw = os.environ.get("RESPOLE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"RESPOLE_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ParameterError(f"RESPOLE_THREADS must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


def _pmap(fn, items):
    """Ordered map over grid points, threaded when RESPOLE_THREADS allows."""
    n = _thread_count()
    if n <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--t", type=float, default=None, help="lead hopping (> 0)")
    sub.add_argument("--t1", type=float, default=None, help="dot-lead coupling")
    sub.add_argument("--eps-d", type=float, default=None, dest="eps_d",
                     help="dot onsite potential")
    sub.add_argument("--config", default=None, help="JSON config file")
    sub.add_argument("--out", default=None, help="write output to this path")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ParameterError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise ParameterError(f"config file is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ParameterError("config file must hold a JSON object")
    return cfg


def _resolve(args: argparse.Namespace, cfg: dict, key: str, cast=float):
    """flag > config > default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in cfg:
        return cast(cfg[key])
    return DEFAULTS.get(key)


def _resolve_device(args: argparse.Namespace, cfg: dict) -> DeviceSpec:
    model_cfg = cfg.get("model")
    flags_given = any(getattr(args, k, None) is not None for k in ("t", "t1", "eps_d"))
    if model_cfg is not None:
        spec = device_from_json(model_cfg)
        params = tdot_params(spec)
        if not flags_given:
            return spec
        if params is None:
            raise ParameterError(
                "model flags cannot override a generalized device from --config"
            )
        return make_tdot(
            args.t if args.t is not None else params.t,
            args.t1 if args.t1 is not None else params.t1,
            args.eps_d if args.eps_d is not None else params.eps_d,
        )
    return make_tdot(
        _resolve(args, cfg, "t"), _resolve(args, cfg, "t1"), _resolve(args, cfg, "eps_d")
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _pole_table(poles) -> str:
    header = f"{'z':>42} {'k':>42} {'E':>42} {'class':>13}"
    lines = [header]
    for p in poles:
        lines.append(f"{str(p.z):>42} {str(p.k):>42} {str(p.E):>42} {p.pole_class.value:>13}")
    return "\n".join(lines) + "\n"


def _pole_csv(poles) -> str:
    lines = [",".join(POLE_COLUMNS)]
    for p in poles:
        rec = pole_to_record(p)
        lines.append(
            ",".join(
                rec["class"] if col == "class" else format_float(rec[col])
                for col in POLE_COLUMNS
            )
        )
    return "\n".join(lines) + "\n"


def _pole_json_records(poles) -> list[dict]:
    return [pole_to_record(p) for p in poles]


def cmd_poles(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    spec = _resolve_device(args, cfg)
    method = args.method
    if method in ("siegert", "both"):
        siegert_set = solve_poles(spec)
    if method in ("feshbach", "both"):
        feshbach_set = feshbach_pole_search(spec)
    if method == "siegert":
        poles, extra = siegert_set, None
    elif method == "feshbach":
        poles, extra = feshbach_set, None
    else:
        poles = siegert_set
        extra = pole_set_distance(siegert_set, feshbach_set)
    if args.format == "json":
        if extra is None:
            text = dumps(_pole_json_records(poles)) + "\n"
        else:
            text = dumps({
                "siegert": _pole_json_records(siegert_set),
                "feshbach": _pole_json_records(feshbach_set),
                "max_dz": extra,
            }) + "\n"
    elif args.format == "csv":
        text = _pole_csv(poles)
        if extra is not None:
            text += f"# max_dz = {format_float(extra)}\n"
    else:
        text = _pole_table(poles)
        if extra is not None:
            text += f"max |dz| between methods = {format_float(extra)}\n"
    _emit(text, args.out)
    return 0


def cmd_transmission(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    spec = _resolve_device(args, cfg)
    k_min = _resolve(args, cfg, "kmin")
    k_max = _resolve(args, cfg, "kmax")
    steps = _resolve(args, cfg, "steps", cast=int)
    if k_min is None or k_max is None or steps is None:
        raise ParameterError("transmission needs --kmin, --kmax and --steps")
    if _thread_count() <= 1:
        rows = transmission_sweep(spec, k_min, k_max, steps)
    else:
        # same grid and preconditions, fanned out over threads
        if steps < 2:
            raise ParameterError(f"sweep needs at least 2 steps, got {steps}")
        transmission_sweep(spec, k_min, k_max, 2)
        ks = np.linspace(k_min, k_max, steps)
        rows = _pmap(lambda k: scattering_solve(spec, float(k)), list(ks))
    _emit(sweep_rows_csv(rows), args.out)
    return 0


SWEEP_HEADER = "param,z_re,z_im,k_re,k_im,E_re,E_im,class"


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    spec = _resolve_device(args, cfg)
    params = tdot_params(spec)
    if params is None:
        raise ParameterError("pole sweeps support only T-dot models")
    name = args.param.replace("-", "_")
    if name not in ("t1", "eps_d"):
        raise ParameterError(f"unsupported sweep parameter {args.param!r}; use t1 or eps-d")
    if args.steps < 2:
        raise ParameterError(f"sweep needs at least 2 steps, got {args.steps}")
    values = [
        args.start + (args.stop - args.start) * i / (args.steps - 1)
        for i in range(args.steps)
    ]

    def point(v: float):
        if name == "t1":
            s = make_tdot(params.t, v, params.eps_d)
        else:
            s = make_tdot(params.t, params.t1, v)
        return solve_poles(s)

    all_poles = _pmap(point, values)
    lines = [SWEEP_HEADER]
    transitions = []
    prev_multiset = None
    for v, poles in zip(values, all_poles):
        multiset = tuple(sorted(p.pole_class.value for p in poles))
        if prev_multiset is not None and multiset != prev_multiset:
            transitions.append((v, prev_multiset, multiset))
        prev_multiset = multiset
        for p in poles:
            rec = pole_to_record(p)
            lines.append(
                ",".join(
                    [format_float(v)]
                    + [format_float(rec[c]) for c in
                       ("z_re", "z_im", "k_re", "k_im", "E_re", "E_im")]
                    + [rec["class"]]
                )
            )
    if transitions:
        for v, before, after in transitions:
            lines.append(
                f"# classification change at {args.param}={format_float(v)}: "
                f"{'+'.join(before)} -> {'+'.join(after)}"
            )
    else:
        lines.append("# no classification changes")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_wavefunction(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    spec = _resolve_device(args, cfg)
    poles = solve_poles(spec)
    if not 0 <= args.pole_index < len(poles):
        raise ParameterError(
            f"pole index {args.pole_index} out of range for a {len(poles)}-pole model"
        )
    if args.xmax < 1:
        raise ParameterError(f"--xmax must be >= 1, got {args.xmax}")
    samples = evaluate(poles[args.pole_index], args.xmax)
    _emit(wavefunction_csv(samples), args.out)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    spec = _resolve_device(args, cfg)
    sites = args.sites if args.sites is not None else int(cfg.get("sites", 200))
    report = build_report(spec, sites)
    _emit(dumps(report) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="respole",
        description="S-matrix poles and scattering observables of 1D tight-binding "
                    "open quantum systems",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("poles", help="find all S-matrix poles")
    _add_model_flags(sp)
    sp.add_argument("--method", choices=("siegert", "feshbach", "both"),
                    default="siegert")
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
    sp.set_defaults(func=cmd_poles)

    se = subs.add_parser("equivalence", help="alias of poles --method both")
    _add_model_flags(se)
    se.add_argument("--format", choices=("table", "csv", "json"), default="table")
    se.set_defaults(func=cmd_poles, method="both")

    st = subs.add_parser("transmission", help="T(k), R(k) sweep as CSV")
    _add_model_flags(st)
    st.add_argument("--kmin", type=float, default=None)
    st.add_argument("--kmax", type=float, default=None)
    st.add_argument("--steps", type=int, default=None)
    st.set_defaults(func=cmd_transmission)

    sw = subs.add_parser("sweep", help="pole trajectories over a model parameter")
    _add_model_flags(sw)
    sw.add_argument("--param", required=True, help="t1 or eps-d")
    sw.add_argument("--from", dest="start", type=float, required=True)
    sw.add_argument("--to", dest="stop", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.set_defaults(func=cmd_sweep)

    wf = subs.add_parser("wavefunction", help="sample one pole's wavefunction")
    _add_model_flags(wf)
    wf.add_argument("--pole-index", dest="pole_index", type=int, required=True)
    wf.add_argument("--xmax", type=int, default=20)
    wf.set_defaults(func=cmd_wavefunction)

    so = subs.add_parser("oracle", help="truncated-lattice audit report (JSON)")
    _add_model_flags(so)
    so.add_argument("--sites", type=int, default=None,
                    help="lead sites per side of the hard-wall lattice")
    so.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
