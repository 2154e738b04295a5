"""Command-line front end: run single simulations, convergence studies, and
efficiency benchmarks.

Exit codes: 0 success, 1 solver failure, 2 usage error. A plain
``key = value`` config file can seed any flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .errors import SolverError, UnknownProblem
from .harness import (
    RunConfig,
    convergence_study,
    density_error_norms,
    efficiency_bench,
    run_simulation,
    write_table_csv,
)
from .problems import make_problem

_CONFIG_KEYS = {
    "problem": str,
    "order": int,
    "flux": str,
    "nx": int,
    "ny": int,
    "cfl": float,
    "theta": float,
    "t_final": float,
    "accuracy_mode": lambda s: s.lower() in ("1", "true", "yes", "on"),
    "out": str,
    "snapshots": str,
}


def _read_config_file(path: str) -> dict:
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _CONFIG_KEYS[key](raw)
    return values


def _parse_snapshots(raw: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in raw.split(",") if tok.strip())


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--problem", help="problem id (ex1..ex11 or an alias)")
    p.add_argument("--order", type=int, choices=(1, 2, 3, 5))
    p.add_argument("--flux", choices=("tv", "cu", "hllc"))
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--cfl", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--t-final", dest="t_final", type=float)
    p.add_argument("--accuracy-mode", dest="accuracy_mode", action="store_true", default=None)
    p.add_argument("--out")


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    values = _read_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if "problem" not in values:
        raise ValueError("a problem id is required (--problem or config file)")
    snapshots = values.pop("snapshots", "")
    if isinstance(snapshots, str):
        snapshots = _parse_snapshots(snapshots)
    defaults = RunConfig(problem=values.pop("problem"))
    cfg = replace(defaults, **values, snapshots=snapshots)
    make_problem(cfg.problem)  # validate the id early
    return cfg


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _build_run_config(args)
    if args.diagonal_out:
        cfg = replace(cfg, diagonal_out=args.diagonal_out)
    result = run_simulation(cfg)
    line = (
        f"{result.problem.pid}: order {cfg.order}, flux {cfg.flux}, "
        f"{result.steps} steps to t = {result.field.time:g} "
        f"({result.wall_seconds:.3f} s)"
    )
    if result.problem.exact is not None:
        l1, linf = density_error_norms(result)
        line += f", L1 = {l1:.6e}, Linf = {linf:.6e}"
    print(line)
    return 0


def _cmd_converge(args: argparse.Namespace) -> int:
    cfg = _build_run_config(args)
    orders = tuple(int(t) for t in args.orders.split(",")) if args.orders else (cfg.order,)
    meshes = tuple(int(t) for t in args.meshes.split(","))
    tables = convergence_study(cfg, meshes, orders)
    for order in orders:
        rows = tables[order]
        print(f"# order {order}")
        print("mesh,error_l1,rate_l1,error_linf,rate_linf,wall_time")
        for r in rows:
            rl1 = "" if r.rate_l1 is None else f"{r.rate_l1:.3f}"
            rli = "" if r.rate_linf is None else f"{r.rate_linf:.3f}"
            print(
                f"{r.mesh},{r.error_l1:.6e},{rl1},{r.error_linf:.6e},{rli},{r.wall_time:.3f}"
            )
        if cfg.out:
            path = Path(cfg.out)
            if len(orders) > 1:
                path = path.with_name(f"{path.stem}_order{order}{path.suffix}")
            write_table_csv(rows, str(path))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    cfg = _build_run_config(args)
    orders = tuple(int(t) for t in args.orders.split(",")) if args.orders else (2, 3, 5)
    rows = efficiency_bench(cfg, args.target_l2, orders=orders)
    print("order,mesh,l2_error,wall_seconds")
    for r in rows:
        print(f"{r.order},{r.mesh},{r.l2_error:.6e},{r.wall_seconds:.3f}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write("order,mesh,l2_error,wall_seconds\n")
            for r in rows:
                fh.write(f"{r.order},{r.mesh},{r.l2_error:.17e},{r.wall_seconds:.6f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvsplit",
        description="Flux-splitting schemes for the 1-D/2-D Euler equations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    _add_common(p_run)
    p_run.add_argument("--snapshots", help="comma-separated intermediate output times")
    p_run.add_argument("--diagonal-out", dest="diagonal_out", help="2-D diagonal slice CSV path")
    p_run.set_defaults(fn=_cmd_run)

    p_conv = sub.add_parser("converge", help="convergence study on dyadic meshes")
    _add_common(p_conv)
    p_conv.add_argument("--orders", help="comma-separated scheme orders")
    p_conv.add_argument("--meshes", required=True, help="comma-separated cells per axis")
    p_conv.set_defaults(fn=_cmd_converge)

    p_bench = sub.add_parser("bench", help="wall time to reach a target L2 error")
    _add_common(p_bench)
    p_bench.add_argument("--orders", help="comma-separated scheme orders")
    p_bench.add_argument("--target-l2", dest="target_l2", type=float, default=1e-7)
    p_bench.set_defaults(fn=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UnknownProblem, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
