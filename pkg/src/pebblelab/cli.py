"""Command-line front end.

Exit status: 0 success, 2 usage error (argparse), 1 runtime failure.
Every subcommand takes --seed; the default is a fixed constant.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bipartite import (
    BipartiteMultigraph,
    components_of,
    config_to_multigraph,
    isolated_vertices,
    multigraph_to_rook,
    sample_gnm,
    sample_gnp,
    sample_multigraph,
)
from .core import EnumerationCapExceeded, PebblingError, sample_configuration
from .lab import (
    LN16,
    PROPERTIES,
    ThresholdNotFound,
    model_transfer_experiment,
    path_experiment,
    police_component_experiment,
    records_to_csv,
    scaling_report,
    sweep,
)
from .rook import RookConfig, solvable_tiered
from .seeding import DEFAULT_SEED
from .support import support_mean, support_pmf, support_variance


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _cell(text: str) -> tuple[int, int]:
    parts = _int_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected ROW,COL, got {text!r}")
    return parts[0], parts[1]


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _fmt(x) -> str:
    return f"{float(x):.10g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pebblelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if out:
            p.add_argument("--out", type=Path, help="write here instead of stdout (plus a .manifest.json)")

    p = sub.add_parser("sample", help="draw a random configuration or bipartite graph")
    p.add_argument("--kind", choices=["config", "rook", "gnp", "gnm", "multigraph"], default="rook")
    p.add_argument("--n", type=int, help="grid side / part size")
    p.add_argument("--N", type=int, help="vertex count (kind=config)")
    p.add_argument("--t", type=int, help="pebble count")
    p.add_argument("--m", type=int, help="multigraph edge count")
    p.add_argument("--M", type=int, help="simple edge count (gnm)")
    p.add_argument("--p", type=float, help="edge probability (gnp)")
    common(p)

    p = sub.add_parser("solve", help="tiered solvability verdict for a rook configuration")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--n", type=int, help="grid side; must match the file if given")
    p.add_argument("--root", type=_cell, help="ROW,COL (default: all roots)")
    p.add_argument("--budget", type=int, default=1_000_000)
    common(p)

    p = sub.add_parser("transform", help="rook configuration <-> bipartite multigraph")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--components", action="store_true", help="emit the component report instead")
    common(p)

    p = sub.add_parser("stats", help="exact support-size law of B'(n, m)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    common(p)

    p = sub.add_parser("sweep", help="Monte Carlo solvability over a t grid")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--t", default="auto", help="'auto' or comma-separated pebble counts")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = sub.add_parser("t-half", help="locate the median crossing and report t_half/sqrt(N)")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = sub.add_parser("experiment", help="random bipartite graph experiments")
    p.add_argument("which", choices=["transfer", "police", "path"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--property", choices=PROPERTIES, default="largest-component")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--length", type=int)
    p.add_argument("--trials", type=int, default=1000)
    common(p)

    p = sub.add_parser("verify", help="run the quick invariant checks")
    common(p, out=False)
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    def need(cond, msg):
        if not cond:
            parser.error(msg)

    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be >= 1")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    if args.command == "sample":
        k = args.kind
        if k == "config":
            need(args.N is not None and args.N >= 1, "--N >= 1 required")
            need(args.t is not None and args.t >= 0, "--t >= 0 required")
        else:
            need(args.n is not None and args.n >= 1, "--n >= 1 required")
        if k == "rook":
            need(args.t is not None and args.t >= 0, "--t >= 0 required")
        if k == "gnp":
            need(args.p is not None and 0 <= args.p <= 1, "--p in [0, 1] required")
        if k == "gnm":
            need(args.M is not None and 0 <= args.M <= args.n ** 2, "--M in [0, n^2] required")
        if k == "multigraph":
            need(args.m is not None and args.m >= 0, "--m >= 0 required")
    elif args.command == "stats":
        need(args.N >= 1, "--N must be >= 1")
        need(args.m >= 0, "--m must be >= 0")
    elif args.command == "solve":
        need(args.budget >= 1, "--budget must be >= 1")
    elif args.command in ("sweep", "t-half"):
        need(all(n >= 1 for n in args.n), "--n values must be >= 1")
        if args.command == "sweep" and args.t != "auto":
            try:
                ts = _int_list(args.t)
            except argparse.ArgumentTypeError as exc:
                parser.error(str(exc))
            need(all(t >= 0 for t in ts), "--t values must be >= 0")
    elif args.command == "experiment":
        need(args.n >= 1, "--n must be >= 1")
        if args.which in ("transfer", "police"):
            need(args.m is not None and args.m >= 0, "--m >= 0 required")
        if args.which == "path":
            need(args.beta is not None and args.beta > LN16, "--beta > ln 16 required")
        if args.alpha is not None:
            need(0 < args.alpha <= 1, "--alpha must lie in (0, 1]")


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    out = getattr(args, "out", None)
    if out is None:
        sys.stdout.write(text)
        return
    out.write_text(text)
    manifest = {
        "subcommand": args.command,
        "arguments": {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())},
        "seed": args.seed,
        "version": __version__,
        "outputs": [str(out)],
    }
    Path(str(out) + ".manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _cmd_sample(args) -> str:
    k = args.kind
    if k == "config":
        return sample_configuration(args.N, args.t, args.seed).to_json()
    if k == "rook":
        c = sample_configuration(args.n * args.n, args.t, args.seed)
        return RookConfig.from_configuration(args.n, c).to_json()
    if k == "multigraph":
        return sample_multigraph(args.n, args.m, args.seed).to_json()
    g = sample_gnp(args.n, args.p, args.seed) if k == "gnp" else sample_gnm(args.n, args.M, args.seed)
    return json.dumps({"n": g.n, "edges": [[i, j, 1] for i, j in sorted(g.edges)]})


def _cmd_solve(args) -> str:
    config = RookConfig.from_json(args.config.read_text())
    if args.n is not None and args.n != config.n:
        raise PebblingError(f"--n {args.n} does not match the configuration (n={config.n})")
    return solvable_tiered(config, args.root, budget=args.budget).to_json()


def _cmd_transform(args) -> str:
    data = json.loads(args.config.read_text())
    if "pebbles" in data:
        graph = config_to_multigraph(RookConfig.from_json(json.dumps(data)))
    elif "edges" in data:
        graph = BipartiteMultigraph.from_json(json.dumps(data))
        if not args.components:
            return multigraph_to_rook(graph).to_json()
    else:
        raise PebblingError("input has neither 'pebbles' nor 'edges'")
    if args.components:
        left, right = isolated_vertices(graph)
        return json.dumps({
            "components": [c.to_dict() for c in components_of(graph)],
            "isolated": {"left": left, "right": right},
        })
    return graph.to_json()


def _cmd_stats(args) -> str:
    N, m = args.N, args.m
    rows = []
    cum = 0
    for s in range(0, min(N, m) + 1):
        p = support_pmf(N, m, s)
        if p == 0:
            continue
        cum += p
        rows.append((s, p, cum))
    mean = support_mean(N, m)
    var = support_variance(N, m) if N + m >= 3 else mean * 0
    if args.format == "json":
        return json.dumps({
            "N": N, "m": m,
            "pmf": [{"s": s, "pmf": _frac(p), "pmf_float": _fmt(p), "cumulative": _frac(c)} for s, p, c in rows],
            "mean": _frac(mean), "mean_float": _fmt(mean),
            "variance": _frac(var), "variance_float": _fmt(var),
        })
    lines = ["N,m,s,pmf,pmf_float,cumulative,cumulative_float"]
    lines += [f"{N},{m},{s},{_frac(p)},{_fmt(p)},{_frac(c)},{_fmt(c)}" for s, p, c in rows]
    lines.append("N,m,mean,mean_float,variance,variance_float")
    lines.append(f"{N},{m},{_frac(mean)},{_fmt(mean)},{_frac(var)},{_fmt(var)}")
    return "\n".join(lines)


def _cmd_sweep(args) -> str:
    grids = None
    if args.t != "auto":
        ts = _int_list(args.t)
        grids = {n: ts for n in args.n}
    return records_to_csv(sweep(args.n, args.trials, args.seed, grids, args.jobs))


def _cmd_t_half(args) -> str:
    return scaling_report(args.n, args.trials, args.seed, jobs=args.jobs).to_csv()


def _cmd_experiment(args) -> str:
    if args.which == "transfer":
        rep = model_transfer_experiment(
            args.n, args.m, args.property, args.trials, args.seed,
            alpha=0.5 if args.alpha is None else args.alpha, length=args.length,
        )
    elif args.which == "police":
        rep = police_component_experiment(args.n, args.m, args.trials, args.seed, args.alpha)
    else:
        rep = path_experiment(args.n, args.beta, args.trials, args.seed)
    return json.dumps(rep.to_dict(), sort_keys=True)


def _cmd_verify(args) -> str:
    from .verify import run_all

    results = run_all()
    text = "\n".join(f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in results)
    if not all(ok for _, ok in results):
        sys.stdout.write(text + "\n")
        raise RuntimeError("invariant check failed")
    return text


COMMANDS = {
    "sample": _cmd_sample,
    "solve": _cmd_solve,
    "transform": _cmd_transform,
    "stats": _cmd_stats,
    "sweep": _cmd_sweep,
    "t-half": _cmd_t_half,
    "experiment": _cmd_experiment,
    "verify": _cmd_verify,
}


def dispatch(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        text = COMMANDS[args.command](args)
    except (PebblingError, EnumerationCapExceeded, ThresholdNotFound, RuntimeError, OSError, KeyError, ValueError) as exc:
        print(f"pebblelab {args.command}: {exc}", file=sys.stderr)
        return 1
    _emit(args, text)
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
