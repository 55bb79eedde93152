"""Command-line front end. Every command is a thin wrapper over the library.

Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import bounds, cylinders, discrepancy, functions, help as helpmod, stars
from .errors import BudgetError, NofError
from .harness import RELATIONS, HarnessLimits, harness_verify
from .report import TOOL_VERSION, read_document, write_report

DEFAULT_SEED = 0


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/8, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker count (default: machine parallelism); never changes results")
    common.add_argument("--out", help="write the structured report (function file for gen)")

    p = argparse.ArgumentParser(prog="nofbench", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"nofbench {TOOL_VERSION}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    gen = sub.add_parser("gen", help="generate a base function")
    gsub = gen.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("random", parents=[common])
    g.add_argument("--dims", type=_positive_int, default=2)
    g.add_argument("--n", type=_positive_int, required=True)
    g.add_argument("--N", type=_positive_int, required=True)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g = gsub.add_parser("latin", parents=[common])
    g.add_argument("--n", type=_positive_int, required=True)
    g = gsub.add_parser("trace", parents=[common])
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--d", type=_positive_int, required=True)
    g.add_argument("--k", type=_positive_int, required=True)

    c = sub.add_parser("lift", parents=[common], help="print the lifted boolean function")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--kind", choices=[k.value for k in functions.LiftKind], default="unary")

    c = sub.add_parser("stars", parents=[common], help="count (and list) A-stars")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--list", action="store_true")

    col = sub.add_parser("color", help="star-free colorings")
    csub = col.add_subparsers(dest="kind", required=True)
    for kind in ("greedy", "exact"):
        c = csub.add_parser(kind, parents=[common])
        c.add_argument("--in", dest="inp", required=True)
        c.add_argument("--save", help="write the coloring as a nofcol file")
        if kind == "exact":
            c.add_argument("--max-colors", type=_positive_int, default=4)
            c.add_argument("--node-limit", type=_positive_int, default=5_000_000)

    c = sub.add_parser("peel", parents=[common], help="run the peeling procedure")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--coloring", help="nofcol file (default: greedy coloring)")

    c = sub.add_parser("cover", parents=[common], help="minimum monochromatic rectangle cover")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--budget", type=_positive_int, default=2_000_000)
    c.add_argument("--save", help="write the cover as a nofcover file")

    c = sub.add_parser("disc", parents=[common], help="multicolor rectangle discrepancy")
    c.add_argument("--in", dest="inp", required=True)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=_positive_int)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)

    bnd = sub.add_parser("bound", help="evaluate bound formulas")
    bsub = bnd.add_subparsers(dest="kind", required=True)
    c = bsub.add_parser("bhk", parents=[common])
    c.add_argument("--disc", type=_fraction, required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--N", type=_positive_int, required=True)
    c = bsub.add_parser("detsim", parents=[common])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--cn", type=int, required=True)
    c = bsub.add_parser("evaluators", parents=[common])
    for name, typ in (("dh", float), ("nh", float), ("N", int), ("k", int), ("b", int),
                      ("c", float), ("c_n", int), ("disc", _fraction)):
        c.add_argument(f"--{name}", type=typ)

    c = sub.add_parser("partition", parents=[common], help="best help-bit partition")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--mode", choices=["det", "nondet"], default="det")

    c = sub.add_parser("trend", parents=[common], help="trace-function discrepancy trend")
    c.add_argument("--q", type=_int_list, default=[2, 3])
    c.add_argument("--d", type=_int_list, default=[1, 2])
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--samples", type=_positive_int, default=2000)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)

    c = sub.add_parser("verify", parents=[common], help="run the inequality harness")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--exact-side", type=_positive_int, default=4)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)

    rep = sub.add_parser("report", help="inspect report files")
    rsub = rep.add_subparsers(dest="kind", required=True)
    c = rsub.add_parser("show", parents=[common])
    c.add_argument("--in", dest="inp", required=True)
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("out", "threads")}
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(cfg.items())}


def _grid(rows) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in rows)


def _cmd_gen(args, emit):
    if args.kind == "random":
        A = functions.gen_random(args.dims, args.n, args.N, args.seed)
    elif args.kind == "latin":
        A = functions.gen_latin(args.n)
    else:
        A = functions.gen_trace(args.q, args.d, args.k)
    if args.out:
        functions.save_function(A, args.out)
        emit(f"wrote {args.out}: dims={A.dims} side={A.side} colors={A.colors}")
    else:
        emit(functions.serialize(A).decode("ascii").rstrip("\n"))
    return None


def _cmd_lift(args, emit):
    A = functions.load_function(args.inp)
    f = functions.lift(A, args.kind)
    emit(f"lift {f.kind.value}: last_dim={f.last_dim}")
    for i, row in enumerate(f.fibers):
        emit(f"{functions._unflatten(i, A.dims, A.side)}: {' '.join(str(int(v)) for v in row)}")
    return {"kind": f.kind.value, "last_dim": f.last_dim,
            "fibers": [[int(v) for v in row] for row in f.fibers]}


def _cmd_stars(args, emit):
    A = functions.load_function(args.inp)
    found = stars.enumerate_stars(A)
    emit(f"stars: {len(found)}")
    if args.list:
        for s in found:
            emit(f"{s.base} {s.row_partner} {s.col_partner} z={s.shared_value} z'={s.base_value}")
    return {"stars": len(found)}


def _cmd_color(args, emit):
    A = functions.load_function(args.inp)
    if args.kind == "greedy":
        coloring = stars.color_greedy(A)
        emit(f"greedy colors: {coloring.colors_used}")
    else:
        res = stars.chi_star_exact(A, args.max_colors, args.node_limit)
        if res.exceeded:
            raise BudgetError(
                f"no star-free coloring found within --max-colors {args.max_colors} "
                f"and --node-limit {args.node_limit}", limit_name="--max-colors")
        coloring = res.coloring
        emit(f"chi_star = {res.value}")
    emit(_grid(coloring.table.tolist()))
    if args.save:
        with open(args.save, "wb") as fh:
            fh.write(stars.serialize_coloring(coloring))
    return {"colors_used": coloring.colors_used, "assignment": list(coloring.assignment)}


def _cmd_peel(args, emit):
    A = functions.load_function(args.inp)
    if args.coloring:
        with open(args.coloring, "rb") as fh:
            coloring = stars.parse_coloring(fh.read())
    else:
        coloring = stars.color_greedy(A)
    trace = stars.peel(A, coloring)
    emit(f"iterations: {trace.iterations} (colors: {coloring.colors_used})")
    steps = []
    for t, s in enumerate(trace.steps, 1):
        emit(f"{t}: |E|={s.area} v={s.value} c={s.color} |S|={len(s.support)} "
             f"hull={len(s.hull_rows)}x{len(s.hull_cols)} ratio={s.ratio}")
        steps.append({"rows": list(s.rows), "cols": list(s.cols), "value": s.value,
                      "color": s.color, "support": [list(e) for e in s.support],
                      "hull_rows": list(s.hull_rows), "hull_cols": list(s.hull_cols),
                      "used_values": list(s.used_values), "ratio": s.ratio})
    return {"iterations": trace.iterations, "colors_used": coloring.colors_used, "steps": steps}


def _cmd_cover(args, emit):
    A = functions.load_function(args.inp)
    try:
        cover = cylinders.min_mono_cover(A, None, budget=args.budget)
    except BudgetError as exc:
        raise BudgetError(f"{exc} (raise --budget)", limit_name="--budget", best=exc.best) from None
    cc = cylinders.cover_cc(cover)
    emit(f"chi = {cover.chi}{'' if cover.optimal else ' (greedy, not optimal)'}")
    emit(f"cover_cc = {cc}")
    if args.save:
        with open(args.save, "wb") as fh:
            fh.write(cylinders.serialize_cover(cover))
    return {"chi": cover.chi, "cover_cc": cc, "optimal": cover.optimal,
            "members": [[R.rows, R.cols, v] for R, v in cover.members]}


def _cmd_disc(args, emit):
    A = functions.load_function(args.inp)
    if args.samples:
        res = discrepancy.disc_rect_sampled(A, args.samples, args.seed)
    else:
        res = discrepancy.disc_rect_exact(A)
    emit(f"disc = {res.value}{'' if res.exact else ' (sampled lower bound)'}")
    emit(f"witness: rows={res.rect.row_set} cols={res.rect.col_set} color={res.color}")
    return {"disc": res.value, "family": res.family, "rows": res.rect.rows,
            "cols": res.rect.cols, "color": res.color}


def _cmd_bound(args, emit):
    if args.kind == "bhk":
        value = discrepancy.bhk_bound(args.disc, args.b, args.N)
        emit(f"bhk = {'inapplicable' if value is None else repr(value)}")
        return {"bhk": value}
    if args.kind == "detsim":
        value = cylinders.det_sim_bound(args.k, args.cn)
        emit(f"detsim = {value}")
        return {"detsim": value}
    inputs = {k: getattr(args, k) for k in ("dh", "nh", "N", "k", "b", "c", "c_n", "disc")}
    values = bounds.bound_evaluators(**inputs)
    for name, v in values.items():
        emit(f"{name} = {'inapplicable' if v is None else repr(v)}")
    return values


def _cmd_partition(args, emit):
    A = functions.load_function(args.inp)
    choice = helpmod.best_partition_micro(A, args.b, args.mode)
    p = choice.partition
    emit(f"cost = {choice.cost} ({'exhaustive' if choice.exhaustive else 'heuristic family'})")
    for i in range(len(p.parts)):
        emit(f"part {i}: {p.entries(i)}")
    return {"cost": choice.cost, "exhaustive": choice.exhaustive, "parts": list(p.parts),
            "b": args.b, "mode": args.mode}


def _cmd_trend(args, emit):
    rows = discrepancy.tmp_trend(args.q, args.d, args.k, args.samples, args.seed)
    emit(discrepancy.format_trend(rows))
    return {"rows": [{"q": r.q, "d": r.d, "k": r.k, "side": r.side, "disc": r.disc,
                      "exact": r.exact, "neg_log_disc": r.neg_log_disc,
                      "predictor": r.predictor} for r in rows]}


def _cmd_verify(args, emit):
    A = functions.load_function(args.inp)
    rep = harness_verify(A, HarnessLimits(exact_side=args.exact_side, seed=args.seed))
    for c in rep.summary():
        emit(f"[{c.verdict}] ({c.relation}) {RELATIONS[c.relation]}: lhs={c.lhs} rhs={c.rhs}")
    return rep


def _cmd_report(args, emit):
    doc = read_document(args.inp)
    emit(f"kind: {doc['kind']}  format_version: {doc['format_version']}  tool_version: {doc['tool_version']}")
    for key, value in sorted(doc["results"].items()):
        emit(f"{key}: {value}")
    return None


_COMMANDS = {
    "gen": _cmd_gen, "lift": _cmd_lift, "stars": _cmd_stars, "color": _cmd_color,
    "peel": _cmd_peel, "cover": _cmd_cover, "disc": _cmd_disc, "bound": _cmd_bound,
    "partition": _cmd_partition, "trend": _cmd_trend, "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    out = sys.stdout

    def emit(line):
        out.write(line + "\n")

    try:
        record = _COMMANDS[args.command](args, emit)
        if record is not None and args.out:
            write_report(record, args.out, _config(args))
    except BudgetError as exc:
        limit = f" [limit: {exc.limit_name}]" if exc.limit_name else ""
        print(f"error: {exc}{limit}", file=sys.stderr)
        return 1
    except (NofError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
