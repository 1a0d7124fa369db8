"""Command-line interface.

Exit codes: 0 on success, 1 on a domain error (bad matrix, bound violated,
size cap hit, failed verification), 2 on a usage error (bad flags,
unparsable or empty input).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import bounds as bd
from . import hadamard as hd
from . import norms as nm
from . import pipeline as pl
from . import verify as vf
from .errors import HadQuantError
from .formats import (
    SpecError,
    load_bank,
    parse_matrix_spec,
    parse_vectors,
    render_number,
    render_vector,
)
from .search import STRATEGIES, SearchConfig, search


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    exit_code: int
    payload: dict
    human: list[tuple[str, str]] = field(default_factory=list)


def _num(v):
    # JSON numbers only while they are exact in every consumer
    if v is None:
        return None
    if isinstance(v, int) and abs(v) < (1 << 53):
        return v
    return render_number(v)


def _matrix(spec):
    try:
        return parse_matrix_spec(spec)
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def _bank(arg):
    try:
        return load_bank(arg)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bank is not valid JSON: {exc}") from None


def _vectors(args, integer=True):
    if args.vector is not None:
        text = args.vector
    elif args.input is None or args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    try:
        vecs = parse_vectors(text, integer=integer)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse vectors: {exc}") from None
    if not vecs:
        raise UsageError("no input vectors")
    return vecs


def cmd_transform(args) -> CommandResult:
    h = _matrix(args.matrix)
    out = []
    for v in _vectors(args, integer=args.dir == "fwd"):
        if len(v) != h.order:
            raise HadQuantError(f"vector length {len(v)} does not match order {h.order}")
        if args.dir == "fwd":
            res = hd.apply(h, v) if args.no_divide else pl.dt(h, v)
        else:
            res = pl.it(h, v)
        out.append(render_vector(res))
    human = [(f"[{i}]", " ".join(v)) for i, v in enumerate(out)]
    return CommandResult(0, {"matrix": h.provenance, "direction": args.dir,
                             "divided": args.dir == "fwd" and not args.no_divide,
                             "vectors": out}, human)


def _trace_json(tr: pl.PipelineTrace) -> dict:
    return {
        "x": render_vector(tr.x),
        "t1": render_vector(tr.t1),
        "t2": render_vector(tr.t2),
        "t3": render_vector(tr.t3),
        "xPrime": render_vector(tr.x_prime),
        "errInf": _num(tr.err_inf),
        "quantErr": render_vector(tr.quant_err),
    }


def cmd_pipeline(args) -> CommandResult:
    h = _matrix(args.matrix)
    bank = _bank(args.bank)
    traces, human = [], []
    last = None
    for x in _vectors(args):
        last = pl.run(h, bank, x)
        item = _trace_json(last)
        if args.register_bits is not None:
            over = pl.register_overflows(last, args.register_bits)
            item["overflow"] = {k: _num(v) for k, v in over.items()}
        traces.append(item)
        for key in ("x", "t1", "t2", "t3", "xPrime"):
            human.append((key, " ".join(item[key])))
        human.append(("errInf", str(item["errInf"])))
        if "overflow" in item:
            human.append((f"overflow@{args.register_bits}",
                          ", ".join(f"{k}={v}" for k, v in item["overflow"].items()) or "none"))
    payload = {"matrix": h.provenance, "traces": traces}
    if args.figure:
        from .figures import save_pipeline_figure

        save_pipeline_figure(args.figure, last, bank)
        payload["figure"] = args.figure
    return CommandResult(0, payload, human)


def cmd_bounds(args) -> CommandResult:
    h = _matrix(args.matrix)
    bank = _bank(args.bank)
    rep = bd.full_report(h.order, bank, args.xmax)
    payload = rep.to_json()
    if args.figure:
        from .figures import save_bounds_figure

        save_bounds_figure(args.figure, h.order, bank, args.xmax)
        payload["figure"] = args.figure
    human = [(k, "-" if v is None else str(v)) for k, v in payload.items()]
    return CommandResult(0, payload, human)


def cmd_norm(args) -> CommandResult:
    h = _matrix(args.matrix)
    if args.kind == "inf1":
        res = nm.norm_inf_1(h, cap=args.cap, long_run=args.long_run)
        payload = {"kind": "inf1", **res.to_json()}
        payload["value"] = _num(res.value)
    elif args.kind == "2":
        payload = {"kind": "2", "valueSquared": nm.matrix_norm_2_hadamard(h)}
    else:
        f = {"1": nm.matrix_norm_1, "inf": nm.matrix_norm_inf, "1inf": nm.matrix_norm_1_inf}[args.kind]
        payload = {"kind": args.kind, "value": _num(f(h))}
    payload = {"order": h.order, **payload}
    return CommandResult(0, payload, [(k, str(v)) for k, v in payload.items()])


def cmd_excess(args) -> CommandResult:
    h = _matrix(args.matrix)
    rep = nm.excess_report(h, cap=args.cap, long_run=args.long_run)
    payload = rep.to_json()
    return CommandResult(0, payload, [(k, "-" if v is None else str(v)) for k, v in payload.items()])


def cmd_search(args) -> CommandResult:
    h = _matrix(args.matrix)
    bank = _bank(args.bank)
    starts = []
    for s in args.start or ():
        try:
            starts.extend(parse_vectors(s))
        except ValueError as exc:
            raise UsageError(f"bad --start vector: {exc}") from None
    cfg = SearchConfig(
        xmax=args.xmax, budget=args.budget, seed=args.seed, strategy=args.strategy,
        restarts=args.restarts, starts=tuple(tuple(s) for s in starts),
    )
    res = search(h, bank, cfg, args.objective, workers=args.workers)
    payload = res.to_json()
    payload["x"] = render_vector(res.x)
    payload["value"] = _num(res.value)
    payload["bound"] = _num(res.bound)
    human = [(k, " ".join(v) if isinstance(v, list) else str(v)) for k, v in payload.items()]
    return CommandResult(0, payload, human)


def cmd_verify(args) -> CommandResult:
    outcomes = vf.run_checks(long_run=args.long_run)
    failed = [o for o in outcomes if o.status == "fail"]
    payload = {
        "passed": sum(o.status == "pass" for o in outcomes),
        "failed": len(failed),
        "skipped": sum(o.status == "skipped" for o in outcomes),
        "items": [{"name": o.name, "status": o.status, "detail": o.detail,
                   "seconds": round(o.seconds, 4)} for o in outcomes],
    }
    human = []
    for o in outcomes:
        status = "skipped (long-run)" if o.status == "skipped" else o.status
        human.append((o.name, status + (f": {o.detail}" if o.status == "fail" else "")))
    return CommandResult(1 if failed else 0, payload, human)


def _add_output(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json",
                   help="JSON document on stdout (default)")
    g.add_argument("--table", dest="fmt", action="store_const", const="table",
                   help="aligned human-readable table")
    p.set_defaults(fmt="json")


def _add_vectors(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--input", "-i", help="vector file (JSON or whitespace rows); '-' for stdin")
    g.add_argument("--vector", "-v", help="vector given inline")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hadquant",
        description="Exact Hadamard-transform quantization pipeline, bounds and norms.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="forward or inverse transform of vectors")
    p.add_argument("--matrix", "-m", required=True)
    p.add_argument("--dir", choices=("fwd", "inv"), default="fwd")
    p.add_argument("--no-divide", action="store_true",
                   help="forward transform without the 1/n factor")
    _add_vectors(p)
    _add_output(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("pipeline", help="run the quantization chain with full trace")
    p.add_argument("--matrix", "-m", required=True)
    p.add_argument("--bank", "-b", required=True, help="bank JSON, inline or file")
    p.add_argument("--register-bits", type=int, help="flag intermediates wider than this")
    p.add_argument("--figure", help="write a trace/staircase plot to this file")
    _add_vectors(p)
    _add_output(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("bounds", help="proven error and magnitude bounds")
    p.add_argument("--matrix", "-m", required=True)
    p.add_argument("--bank", "-b", required=True)
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--figure", help="write a bound sweep over [0, xmax] to this file")
    _add_output(p)
    p.set_defaults(func=cmd_bounds)

    for name, func, text in (("norm", cmd_norm, "matrix norms"),
                             ("excess", cmd_excess, "excess and its bounds")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--matrix", "-m", required=True)
        if name == "norm":
            p.add_argument("--kind", choices=("inf1", "1", "inf", "1inf", "2"), default="inf1")
        p.add_argument("--cap", type=int, default=nm.DEFAULT_CAP)
        p.add_argument("--long-run", action="store_true", help="allow orders above --cap")
        _add_output(p)
        p.set_defaults(func=func)

    p = sub.add_parser("search", help="empirical worst-case search")
    p.add_argument("--matrix", "-m", required=True)
    p.add_argument("--bank", "-b", required=True)
    p.add_argument("--objective", choices=("error", "magnitude"), default="error")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=STRATEGIES, default="coordinate-ascent")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--start", action="append", help="seed vector (repeatable)")
    _add_output(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check every published worked example")
    p.add_argument("--long-run", action="store_true", help="include the order-32 norm")
    _add_output(p)
    p.set_defaults(func=cmd_verify)
    return ap


def _render_table(rows) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def execute(argv=None) -> CommandResult:
    """Parse and run one command without touching stdout."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return CommandResult(int(exc.code or 0), {})
    try:
        res = args.func(args)
    except (UsageError, OSError) as exc:
        res = CommandResult(2, {"error": str(exc)})
    except (HadQuantError, ValueError, ArithmeticError) as exc:
        res = CommandResult(1, {"error": f"{type(exc).__name__}: {exc}"})
    res.fmt = args.fmt
    return res


def main(argv=None) -> int:
    res = execute(argv)
    if "error" in res.payload:
        print(f"hadquant: {res.payload['error']}", file=sys.stderr)
    elif res.payload:
        if getattr(res, "fmt", "json") == "table":
            print(_render_table(res.human))
        else:
            print(json.dumps(res.payload, indent=2))
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
