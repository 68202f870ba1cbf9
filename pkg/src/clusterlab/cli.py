"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical-invariant violation
(a non-Laurent exchange or a failed structural check).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import counterexamples, explorer, fuzz, rank2, wall
from .laurent import denominator_vector
from .matrix import ExchangeMatrix
from .patterns import PRESETS, load_matrix, preset
from .seed import LaurentViolation, apply_sequence, initial_seed

__all__ = ["main", "build_parser"]

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 instead of argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_seq(text: str | None, n: int) -> list[int]:
    if not text:
        return []
    try:
        ks = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"--seq must be comma-separated integers, got {text!r}") from None
    for k in ks:
        if not 1 <= k <= n:
            raise UsageError(f"index {k} in --seq is outside 1..{n}")
    return [k - 1 for k in ks]


def _matrix(args) -> ExchangeMatrix:
    if args.matrix and args.preset:
        raise UsageError("give either --matrix or --preset, not both")
    try:
        if args.matrix:
            return load_matrix(args.matrix)
        if args.preset:
            return preset(args.preset)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("a matrix is required (--matrix FILE or --preset NAME)")


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1)


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def cmd_mutate(args) -> int:
    B = _matrix(args)
    ks = _parse_seq(args.seq, B.n)
    try:
        s0 = initial_seed(B)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    s = apply_sequence(s0, ks)
    if args.format == "json":
        _emit(
            args,
            _json(
                {
                    "matrix": s.matrix.to_dict(),
                    "sequence": [k + 1 for k in ks],
                    "names": list(s.names),
                    "cluster": [
                        {"expansion": x.format(s.names), "terms": x.to_json(), "denominator": list(denominator_vector(x, s.n))}
                        for x in s.cluster
                    ],
                }
            ),
        )
        return 0
    lines = [f"sequence: {','.join(str(k + 1) for k in ks) or '(empty)'}", "matrix:", str(s.matrix), "cluster:"]
    for i, x in enumerate(s.cluster):
        lines.append(f"  x{i + 1}(t) = {x.format(s.names)}    denominator {_vec(denominator_vector(x, s.n))}")
    _emit(args, "\n".join(lines))
    return 0


def _graph_table(g: explorer.ExchangeGraph) -> str:
    lines = [
        f"status: {g.status}",
        f"vertices: {len(g.seeds)}",
        f"edges: {len(g.edges)}",
        f"cluster variables: {len(g.cluster_variables())}",
        f"boundary: {len(g.boundary)}",
        f"anomalies: {len(g.anomalies)}",
        "vertex depth history denominators",
    ]
    for v, s in enumerate(g.seeds):
        dens = " ".join(_vec(d) for d in sorted(denominator_vector(x, s.n) for x in s.cluster))
        hist = ",".join(str(k + 1) for k in s.history) or "-"
        lines.append(f"v{v} {g.depth[v]} {hist} {dens}")
    return "\n".join(lines)


def cmd_explore(args) -> int:
    B = _matrix(args)
    if args.max_vertices < 1 or (args.depth is not None and args.depth < 0):
        raise UsageError("limits must be positive")
    try:
        g = explorer.explore(B, max_vertices=args.max_vertices, max_depth=args.depth, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "dot":
        _emit(args, explorer.export_dot(g))
    elif args.format == "json":
        _emit(args, explorer.export_json(g))
    else:
        _emit(args, _graph_table(g))
    return 0


def cmd_rank2(args) -> int:
    b, c = args.b, args.c
    try:
        h = rank2.coxeter_number(b, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    finite = h != float("inf")
    if args.check == "all":
        checks = ["denominators", "periodicity"] + (["coefficients"] if finite else [])
    else:
        checks = [args.check]
    out: dict = {"b": b, "c": c, "h": int(h) if finite else None}
    ok = True
    if "denominators" in checks:
        hi = int(h) + 2 if finite and args.window is None else (args.window or 20)
        rep = rank2.verify_denominator_theorem(b, c, 1, max(hi, 2))
        out["denominators"] = rep.to_dict()
        ok &= rep.ok
    if "periodicity" in checks:
        prep = rank2.verify_periodicity(b, c, trials=args.trials, rng_seed=args.rng_seed)
        out["periodicity"] = prep.to_dict()
        ok &= prep.ok
    if "coefficients" in checks:
        if not finite:
            raise UsageError("coefficient identities need a finite type (bc <= 3)")
        p = int(h) + 2
        out["coefficients"] = {
            "r_from_q": {f"r{k}": {f"q{i}": e for i, e in rank2.r_from_q(b, c, k).items()} for k in range(1, p + 1)},
            "positive_rational_failures": rank2.verify_r_from_q(b, c, args.trials, args.rng_seed),
            "tropical_chain_failures": rank2.verify_tropical_chains(b, c),
        }
        ok &= not out["coefficients"]["positive_rational_failures"] and not out["coefficients"]["tropical_chain_failures"]
    out["ok"] = ok
    if args.format == "json":
        _emit(args, _json(out))
    else:
        lines = [f"b={b} c={c} h={out['h'] if finite else 'inf'}"]
        if "denominators" in out:
            lines.append("m recurrence root-formula engine")
            for row in out["denominators"]["rows"]:
                lines.append(f"{row['m']} {_vec(row['recurrence'])} {_vec(row['root_formula'])} {_vec(row['engine'])}")
            lines.append(f"denominators: {'agree' if out['denominators']['ok'] else 'DISAGREE'}")
        if "periodicity" in out:
            pd = out["periodicity"]
            lines.append(f"periodicity: {'ok' if pd['ok'] else 'FAILED'} ({json.dumps(pd, sort_keys=True)})")
        if "coefficients" in out:
            co = out["coefficients"]
            for k, exps in co["r_from_q"].items():
                lines.append(f"{k} = " + "*".join(f"{q}^{e}" if e != 1 else q for q, e in exps.items()))
            lines.append(
                f"coefficients: positive-rational failures {co['positive_rational_failures']}, "
                f"tropical chain failures {len(co['tropical_chain_failures'])}"
            )
        _emit(args, "\n".join(lines))
    return 0 if ok else 2


def cmd_fuzz(args) -> int:
    if args.trials < 0 or args.depth < 1 or (args.rank is not None and not 1 <= args.rank):
        raise UsageError("invalid fuzz limits")
    report = fuzz.fuzz_laurent(
        trials=args.trials,
        rng_seed=args.rng_seed,
        rank=args.rank,
        max_rank=args.max_rank,
        max_entry=args.max_entry,
        max_frozen=args.max_frozen,
        max_len=args.depth,
        threads=args.threads,
        reproducer_dir=args.reproducers,
        time_budget=args.time_budget,
        trial_timeout=args.trial_timeout,
    )
    summary = report.summary()
    if args.format == "json":
        _emit(args, _json(report.to_dict()))
    else:
        lines = [f"{k}: {v}" for k, v in summary.items()]
        for t in report.trials:
            if t.status != "done":
                lines.append(f"trial {t.index} {t.status} after {t.seconds:.1f}s: n={t.matrix.n} f={t.matrix.f} len={len(t.sequence)}")
        _emit(args, "\n".join(lines))
    return 2 if report.violations or report.inconsistencies else 0


def cmd_counterexample(args) -> int:
    try:
        report = counterexamples.fuzz_cyclical(args.alpha, args.beta, args.gamma, args.trials, args.depth, args.rng_seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(args, _json(report.to_dict()))
    else:
        d = report.to_dict()
        keys = ["alpha", "beta", "gamma", "trials", "depth", "rng_seed", "steps", "violations", "at_bias_steps", "max_entry_bits"]
        lines = [f"{k}: {d[k]}" for k in keys]
        for tag, cnt in d["at_bias_outcomes"].items():
            lines.append(f"at-bias outcome {tag}: {cnt}")
        _emit(args, "\n".join(lines))
    return 2 if report.violations else 0


def cmd_wall(args) -> int:
    rep = wall.verify_wall(depth=args.depth)
    if args.format == "json":
        _emit(args, _json(rep.to_dict()))
    elif args.format == "dot":
        _emit(args, explorer.export_dot(explorer.explore(wall.brick_wall_matrix(), max_depth=args.depth)))
    else:
        lines = ["region engine closed-form"]
        for name, got, want in wall.wall_table():
            lines.append(f"{name} {_vec(got)} {_vec(want)}")
        for shape, cnt in rep.relation_counts.items():
            lines.append(f"relation {shape}: {cnt} instances")
        lines.append(f"explored vertices: {rep.graph_vertices}")
        lines.append(f"wall: {'ok' if rep.ok else 'FAILED'}")
        _emit(args, "\n".join(lines))
    return 0 if rep.ok else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="clusterlab", description="Exact cluster-algebra seed mutation and exchange-graph exploration.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("table", "json"), matrix=False):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write output to FILE instead of stdout")
        sp.add_argument("--rng-seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--threads", type=int, default=1)
        if matrix:
            sp.add_argument("--matrix", help="JSON matrix file")
            sp.add_argument("--preset", help=f"named matrix: {', '.join(sorted(PRESETS))}")

    sp = sub.add_parser("mutate", help="mutate the initial seed along a sequence")
    common(sp, matrix=True)
    sp.add_argument("--seq", default="", help="1-based indices, e.g. 1,3,2")
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("explore", help="explore the exchange graph")
    common(sp, formats=("dot", "json", "table"), matrix=True)
    sp.add_argument("--max-vertices", type=int, default=1000)
    sp.add_argument("--depth", type=int, default=None)
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("rank2", help="rank-2 denominator, periodicity and coefficient checks")
    common(sp)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--check", choices=("denominators", "periodicity", "coefficients", "all"), default="all")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--window", type=int, default=None, help="denominator window (default h+2, or 20 if infinite)")
    sp.set_defaults(func=cmd_rank2)

    sp = sub.add_parser("fuzz", help="randomized Laurent-phenomenon check")
    common(sp)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--max-rank", type=int, default=4)
    sp.add_argument("--max-entry", type=int, default=3)
    sp.add_argument("--max-frozen", type=int, default=2)
    sp.add_argument("--depth", type=int, default=10, help="maximum mutation sequence length")
    sp.add_argument("--reproducers", help="directory for reproducer files")
    sp.add_argument("--time-budget", type=float, default=None, help="global wall-clock budget in seconds")
    sp.add_argument("--trial-timeout", type=float, default=None, help="per-trial wall-clock cap in seconds")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("counterexample", help="cyclical/biased certificates for B(alpha, beta, gamma)")
    common(sp)
    sp.add_argument("--alpha", type=int, default=1)
    sp.add_argument("--beta", type=int, default=1)
    sp.add_argument("--gamma", type=int, default=3)
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--depth", type=int, default=12)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("wall", help="brick-wall denominators and relations")
    common(sp, formats=("table", "json", "dot"))
    sp.add_argument("--depth", type=int, default=5)
    sp.set_defaults(func=cmd_wall)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"clusterlab: error: {exc}", file=sys.stderr)
        return 1
    except LaurentViolation as exc:
        print(f"clusterlab: Laurent violation: {exc}", file=sys.stderr)
        print(_json(exc.dump), file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"clusterlab: invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
