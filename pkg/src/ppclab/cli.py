"""Command-line front end.

    ppclab generate      --kind vdc --base 2 --n 8 --out pts.txt
    ppclab ppc           --input pts.txt --s-max 4 --format csv
    ppclab discrepancy   --kind uniform_random --seed 7 --n 1000
    ppclab verify-bound  --kind uniform_random --seed 42 --n 100000
    ppclab prooflab      --kind sqrt_n --n 20000 --k 10

Exit status: 0 on success, 1 for invalid input, 2 for file-system errors.
Output goes to ``--out`` (written atomically) or standard output; floats are
printed with 17 significant digits so identical invocations produce
identical bytes.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import List, Optional

from . import __version__
from .discrepancy import bound_check, select_K, star_discrepancy_exact
from .paircorr import f_estimate, pair_counts_fast, set_threads
from .prooflab import final_chain_report
from .sequences import (KINDS, PointFileError, SequenceSpec, format_points,
                        generate, load_points)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def dump_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits and keys in insertion order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return "true" if obj is True else "false" if obj is False else "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        import json
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dump_json(str(k))}: {dump_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dump_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return dump_json(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dump_csv(header: List[str], rows: List[list]) -> str:
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return "" if math.isnan(v) else _fmt_float(v)
        text = str(v)
        if any(c in text for c in ',"\n'):
            text = '"' + text.replace('"', '""') + '"'
        return text

    lines = [",".join(header)] + [",".join(cell(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    tmp = f"{out}.tmp{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("sample")
    g.add_argument("--input", help="point file to analyse")
    g.add_argument("--kind", choices=[k for k in KINDS if k != "file"])
    g.add_argument("--n", type=int, help="number of points")
    g.add_argument("--alpha", type=float, help="kronecker / quadratic multiplier")
    g.add_argument("--base", type=int, help="vdc base")
    g.add_argument("--seed", type=int, help="uniform_random seed")


def _add_output(p: argparse.ArgumentParser, formats=True) -> None:
    p.add_argument("--out", help="output path (default: standard output)")
    if formats:
        p.add_argument("--format", choices=["json", "csv"], default="json")


def _sample(args):
    if args.input and args.kind:
        raise UsageError("give either --input or --kind, not both")
    if args.input:
        sample = load_points(args.input)
        if args.n is not None:
            if args.n > sample.n:
                raise UsageError(f"--n {args.n} exceeds the {sample.n} points in {args.input}")
            sample = sample.prefix(args.n)
        return sample
    if not args.kind:
        raise UsageError("a sample is required: --input PATH or --kind KIND --n N")
    if args.n is None:
        raise UsageError("--n is required with --kind")
    spec = SequenceSpec(args.kind, args.n, alpha=args.alpha, base=args.base, seed=args.seed)
    return generate(spec)


def _provenance(sample) -> dict:
    spec = sample.spec
    d = {"kind": spec.kind, "n": spec.n}
    for key in ("alpha", "base", "seed", "path"):
        val = getattr(spec, key)
        if val is not None:
            d[key] = val
    return d


def cmd_generate(args) -> str:
    if not args.kind:
        raise UsageError("generate needs --kind")
    return format_points(_sample(args).values)


def cmd_ppc(args) -> str:
    sample = _sample(args)
    n = sample.n
    s_max = args.s_max if args.s_max is not None else max(1, min(10, n // 2))
    table = pair_counts_fast(sample, s_max)
    k = args.k if args.k is not None else s_max
    fe = f_estimate(table, k)
    dev = table.deviations()
    rows = [[s, table.count(s), table.count(s) / n, float(2 * s), float(dev[s - 1])]
            for s in range(1, s_max + 1)]
    header = ["s", "count", "r_stat", "poisson_target", "deviation"]
    if args.format == "csv":
        return dump_csv(header, rows)
    return dump_json({
        "sample": _provenance(sample),
        "n": n,
        "s_max": s_max,
        "f_estimate": {"k": fe.k, "value": fe.value, "argmax_s": fe.argmax_s},
        "rows": [dict(zip(header, r)) for r in rows],
    }) + "\n"


def cmd_discrepancy(args) -> str:
    sample = _sample(args)
    rep = star_discrepancy_exact(sample)
    rec = {"n": rep.n, "d_star": rep.d_star, "n_d_star": rep.n_d_star,
           "witness_a": rep.witness_a, "witness_side": rep.witness_side}
    if args.format == "csv":
        return dump_csv(list(rec), [list(rec.values())])
    return dump_json({"sample": _provenance(sample), **rec}) + "\n"


def cmd_verify_bound(args) -> str:
    sample = _sample(args)
    bc = bound_check(sample)
    rec = {"n": bc.n, "k": bc.k, "f_value": bc.f_value, "h_value": bc.h_value,
           "n_d_star": bc.n_d_star, "satisfied": bc.satisfied,
           "k_feasible": bc.k_feasible, "verdict": bc.verdict}
    if args.format == "csv":
        return dump_csv(list(rec), [list(rec.values())])
    return dump_json({"sample": _provenance(sample), **rec}) + "\n"


def cmd_prooflab(args) -> str:
    sample = _sample(args)
    k = args.k if args.k is not None else select_K(sample)[0]
    rep = final_chain_report(sample, k)
    if args.format == "csv":
        rows = [[c.name, c.lhs, c.rhs, c.relation, c.holds, c.note] for c in rep.checks]
        return dump_csv(["name", "lhs", "rhs", "relation", "holds", "note"], rows)
    return dump_json({"sample": _provenance(sample), **rep.to_dict()}) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppclab", description="Pair correlations and star-discrepancy of sequences in [0,1).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("generate", help="write a point file")
    _add_source(p)
    _add_output(p, formats=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ppc", help="pair counts, R(s,N) and F(K,N)")
    _add_source(p)
    p.add_argument("--s-max", type=int, dest="s_max")
    p.add_argument("--k", type=int, help="K for F(K,N) (default: s-max)")
    _add_output(p)
    p.set_defaults(func=cmd_ppc)

    p = sub.add_parser("discrepancy", help="exact star-discrepancy")
    _add_source(p)
    _add_output(p)
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("verify-bound", help="compare N*D* with 5*max(N^(4/5), sqrt(N F(K^2,N)))")
    _add_source(p)
    _add_output(p)
    p.set_defaults(func=cmd_verify_bound)

    p = sub.add_parser("prooflab", help="every identity and inequality of the bound on one sample")
    _add_source(p)
    p.add_argument("--k", type=int, help="window parameter K (default: selected K)")
    _add_output(p)
    p.set_defaults(func=cmd_prooflab)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required: " + ", ".join(
                ["generate", "ppc", "discrepancy", "verify-bound", "prooflab"]))
        set_threads()
        if args.out and args.out != "-":
            parent = os.path.dirname(os.path.abspath(args.out))
            if not os.path.isdir(parent):
                raise OSError(f"output directory does not exist: {parent}")
        text = args.func(args)
        _emit(text, args.out)
    except PointFileError as exc:
        print(f"ppclab: {exc}", file=sys.stderr)
        return 2 if exc.io_error else 1
    except (UsageError, ValueError) as exc:
        print(f"ppclab: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ppclab: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
