"""Command line front end: ``kloomo {field,ksum,wdist,moments,verify}``.

Exit codes: 0 on success, 1 when ``verify`` finds a failing check, 2 on bad
flags or violated preconditions.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import budget, charsums, codes, export, kernels, moments, ortho
from .errors import KloomoError
from .field import MAX_R, make_field
from .verify import verify_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _hexint(text: str) -> int:
    try:
        return int(text, 16) if not text.lower().startswith("0x") else int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, required=True, help=f"field degree, 1..{MAX_R}")
    common.add_argument("--poly", type=_hexint, help="reduction polynomial as a hex mask")
    common.add_argument("--format", choices=("csv", "json", "paper"), default="csv")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=_int, help="enumeration budget override")

    p = argparse.ArgumentParser(prog="kloomo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("field", parents=[common], help="field parameters and trace statistics")

    s = sub.add_parser("ksum", parents=[common], help="Kloosterman sums")
    pick = s.add_mutually_exclusive_group(required=True)
    pick.add_argument("--a", type=_int)
    pick.add_argument("--all", action="store_true")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--profile", action="store_true", help="CSV: print the value profile instead")

    s = sub.add_parser("wdist", parents=[common], help="weight distribution of C(G)")
    s.add_argument("--group", choices=[g.value for g in ortho.Group], default="so2m")
    s.add_argument("--max-weight", type=int)
    s.add_argument("--method", choices=("dp", "macwilliams", "brute"), default="dp")

    s = sub.add_parser("moments", parents=[common], help="power moments of Kloosterman sums")
    s.add_argument("--h-max", type=int, default=10)
    s.add_argument("--kind", choices=("k", "k2", "k-even"), default="k")
    s.add_argument("--method", choices=("recursive", "recursive-o2", "direct", "salie"),
                   default="recursive")

    s = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    s.add_argument("--h-max", type=int, default=10)
    return p


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_field(args, ctx) -> int:
    ones = int(ctx.trace_table.sum())
    info = {"r": ctx.r, "q": ctx.q, "poly_hex": ctx.poly_hex,
            "trace_mask": f"{ctx.trace_mask:#x}", "trace_one": ones,
            "trace_zero": ctx.q - ones, "generator": f"{ctx.generator:#x}"}
    if args.format == "json":
        section = (tuple(info), [tuple(info.values())])
        _emit(args, export.to_json(export.metadata(ctx, None, None), {"field": section}))
    else:
        _emit(args, export.to_csv(("key", "value"), info.items()))
    return EXIT_OK


def cmd_ksum(args, ctx) -> int:
    if args.m < 1:
        raise UsageError("--m must be positive")
    if args.format == "paper":
        raise UsageError("ksum supports --format csv or json")
    if args.all:
        if args.m == 1:
            rows = list(charsums.kloosterman_table(ctx, jobs=args.jobs).items())
        else:
            budget.require((ctx.q - 1) ** (args.m + 1), f"K_{args.m} table")
            vals = kernels.kloosterman_m_values(ctx, args.m, np.arange(1, ctx.q), jobs=args.jobs)
            rows = [(a, int(v)) for a, v in enumerate(vals, start=1)]
    else:
        if args.a >= ctx.q or args.a < 0:
            raise UsageError(f"--a must be a field element below {ctx.q}")
        rows = [(args.a, charsums.kloosterman_m(ctx, args.m, args.a))]
    prof: dict[int, int] = {}
    for _, k in rows:
        prof[k] = prof.get(k, 0) + 1
    prof_rows = sorted(prof.items())
    ksum = ("a_hex", "K"), export.ksum_rows(rows, ctx)
    if args.format == "json":
        meta = export.metadata(ctx, None, f"enumeration-m{args.m}")
        _emit(args, export.to_json(meta, {"ksum": ksum, "profile": (("t", "count"), prof_rows)}))
    elif args.profile:
        _emit(args, export.to_csv(("t", "count"), prof_rows))
    else:
        _emit(args, export.to_csv(*ksum))
    return EXIT_OK


def cmd_wdist(args, ctx) -> int:
    code = codes.build_code(ortho.GroupId(ortho.Group(args.group), ctx))
    wd = codes.weight_distribution(code, args.method, args.max_weight, jobs=args.jobs)
    if args.format == "paper":
        _emit(args, export.wdist_text(wd))
    elif args.format == "json":
        meta = export.metadata(ctx, args.group, args.method)
        meta["mode"] = wd.mode
        _emit(args, export.to_json(meta, {"wdist": (("w", "frequency"), export.wdist_rows(wd))}))
    else:
        _emit(args, export.to_csv(("w", "frequency"), export.wdist_rows(wd)))
    return EXIT_OK


def _moment_series(args, ctx) -> moments.MomentSeries:
    H, kind, method = args.h_max, args.kind, args.method
    if H < 0:
        raise UsageError("--h-max must be nonnegative")
    if kind == "k":
        if method == "recursive":
            return moments.mk_recursive(ctx, H, "G1")
        if method == "recursive-o2":
            return moments.mk_recursive(ctx, H, "G2")
        if method == "salie":
            return moments.salie_mk(ctx, H)
        return moments.mk_direct(ctx, H, jobs=args.jobs)
    if method in ("recursive-o2", "salie"):
        raise UsageError(f"--method {method} only applies to --kind k")
    if kind == "k2":
        if method == "recursive":
            return moments.mk2_recursive(ctx, H)
        return moments.mk_direct(ctx, H, m=2, jobs=args.jobs)
    if method == "recursive":
        return moments.mk_even_recursive(ctx, H)
    vals = moments.mk_direct(ctx, 2 * H, jobs=args.jobs).values[::2]
    return moments.MomentSeries("MK_EVEN", ctx, vals, "direct")


def cmd_moments(args, ctx) -> int:
    ms = _moment_series(args, ctx)
    if args.format == "paper":
        _emit(args, export.moments_text(ms))
    elif args.format == "json":
        meta = export.metadata(ctx, None, ms.method)
        meta["kind"] = ms.kind
        _emit(args, export.to_json(meta, {"moments": (("h", "value"), export.moment_rows(ms))}))
    else:
        _emit(args, export.to_csv(("h", "value"), export.moment_rows(ms)))
    return EXIT_OK


def cmd_verify(args, ctx) -> int:
    if args.h_max < 0:
        raise UsageError("--h-max must be nonnegative")
    report = verify_suite(ctx, args.h_max, jobs=args.jobs)
    lines = [f"GF(2^{ctx.r}) poly {ctx.poly_hex}, H = {args.h_max}", *report.lines(),
             "PASS" if report.ok else "FAIL"]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"field": cmd_field, "ksum": cmd_ksum, "wdist": cmd_wdist,
            "moments": cmd_moments, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = budget._override
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.budget is not None:
            budget.set_budget(args.budget)
        budget.current_budget()
        ctx = make_field(args.r, args.poly)
        return COMMANDS[args.command](args, ctx)
    except (KloomoError, UsageError) as exc:
        print(f"kloomo: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        budget.set_budget(previous)


if __name__ == "__main__":
    sys.exit(main())
