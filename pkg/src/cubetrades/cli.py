"""Command-line front end.

Exit codes: 0 success, 1 negative mathematical answer (not a trade, not a
unitrade, not splittable), 2 input or parameter error, 3 capacity gate.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import tradefile
from .boolcube import Subcube, from_bits, scan_key, subcube_incidence, to_bits
from .constructions import (
    kasami_form_a,
    kasami_form_b,
    minimum_trade,
    simplex_fixture,
    type_a_trade,
)
from .errors import CapacityError, InconsistencyError, ParameterError
from .spectrum import classify_volume, rm_weight_distribution, trade_volume_spectrum
from .tradefile import TradeFile
from .trades import (
    Trade,
    TradeViolation,
    duplicate_coordinate,
    is_design_trade,
    lift_to_design_trade,
    merge,
    subcube_violations,
    translate,
    verify_trade_definition,
)
from .unitrades import split

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

CONSTRUCT_KINDS = (
    "minimum",
    "type-a",
    "kasami-a",
    "kasami-b",
    "simplex",
    "lift",
    "merge",
    "translate",
    "dup-coordinate",
)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "wb") as fh:
            fh.write(text.encode("ascii"))
    else:
        sys.stdout.write(text)


def _serialize(f: TradeFile, as_json: bool) -> str:
    return tradefile.dumps_json(f) if as_json else tradefile.dumps(f)


def _violation_json(v: TradeViolation) -> dict:
    witness = str(v.witness) if isinstance(v.witness, Subcube) else to_bits(v.witness, v.v)
    return {"kind": v.kind, "witness": witness, "counts": list(v.counts)}


def _odd_subcubes(f: TradeFile) -> list[tuple[Subcube, int]]:
    groups = subcube_incidence(f.blocks, f.v, f.t)
    odd = sorted((k for k, members in groups.items() if len(members) % 2), key=lambda k: scan_key(*k))
    return [(Subcube(f.v, *k), len(groups[k])) for k in odd]


def cmd_verify(args) -> int:
    f = tradefile.read(args.path)
    if f.kind == tradefile.TRADE:
        T0, T1 = f.legs
        violations = subcube_violations(T0, T1, f.v, f.t)
        overlap = T0 & T1
        if overlap:
            violations = [verify_trade_definition(T0, T1, f.v, f.t)] + violations
        elif not violations:
            # the subcube criterion and the definition must agree
            assert verify_trade_definition(T0, T1, f.v, f.t) is None
        if not args.all_violations:
            violations = violations[:1]
        if args.json:
            print(json.dumps({"ok": not violations, "kind": f.kind, "v": f.v, "t": f.t,
                              "volume": len(T0), "violations": [_violation_json(x) for x in violations]}))
        elif violations:
            for x in violations:
                print(x.describe())
        else:
            k = is_design_trade(Trade.unchecked(f.v, f.t, T0, T1))
            extra = f" k={k}" if k is not None else ""
            print(f"ok\ttrade v={f.v} t={f.t} volume={len(T0)}{extra}")
        return EXIT_NEGATIVE if violations else EXIT_OK

    if not f.t < f.v:
        raise ParameterError("a unitrade file needs t < v")
    odd = _odd_subcubes(f)
    if not args.all_violations:
        odd = odd[:1]
    if args.json:
        print(json.dumps({"ok": not odd, "kind": f.kind, "v": f.v, "t": f.t, "size": len(f.blocks),
                          "violations": [{"kind": "odd-subcube", "witness": str(s), "count": c} for s, c in odd]}))
    elif odd:
        for s, c in odd:
            print(f'violation subcube "{s}": {c} blocks (odd)')
    else:
        print(f"ok\tunitrade v={f.v} t={f.t} size={len(f.blocks)}")
    return EXIT_NEGATIVE if odd else EXIT_OK


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise ParameterError(f"construct {args.kind} needs " + ", ".join(f"--{n}" for n in missing))


def _bits_list(text: str) -> list[str]:
    return [b.strip() for b in text.split(",") if b.strip()]


def _input_trades(args, count: int) -> list[Trade]:
    paths = args.input or []
    if len(paths) != count:
        raise ParameterError(f"construct {args.kind} needs {count} --input file(s)")
    return [tradefile.read(p).to_trade() for p in paths]


def build(args) -> TradeFile:
    kind = args.kind
    if kind == "minimum":
        _require(args, "bases")
        bases = _bits_list(args.bases)
        v = len(bases[0]) if bases else 0
        if any(len(b) != v for b in bases) or (args.w is not None and len(args.w) != v):
            raise ParameterError("all bitstrings must have the same length")
        w = from_bits(args.w) if args.w else 0
        return TradeFile.from_trade(minimum_trade([from_bits(b) for b in bases], w, v))
    if kind == "type-a":
        _require(args, "t", "i", "v")
        return TradeFile.from_trade(type_a_trade(args.t, args.i, args.v))
    if kind in ("kasami-a", "kasami-b"):
        if kind == "kasami-a":
            _require(args, "r", "mu", "v")
            support = kasami_form_a(args.r, args.mu, args.v)
        else:
            _require(args, "r", "nu", "v")
            support = kasami_form_b(args.r, args.nu, args.v)
        return TradeFile.from_unitrade(support, args.v, args.v - args.r - 1)
    if kind == "simplex":
        c0, c1 = simplex_fixture()
        part = args.part or "trade"
        if part == "trade":
            return TradeFile.from_trade(Trade(7, 2, c0 - {0}, c1 - {0}))
        support = {"c0": c0, "c1": c1, "union": c0 ^ c1}.get(part)
        if support is None:
            raise ParameterError("--part must be one of trade, c0, c1, union")
        return TradeFile.from_unitrade(support, 7, 2)
    if kind == "lift":
        (trade,) = _input_trades(args, 1)
        return TradeFile.from_trade(lift_to_design_trade(trade))
    if kind == "merge":
        a, b = _input_trades(args, 2)
        return TradeFile.from_trade(merge(a, b, flip=args.flip))
    if kind == "translate":
        _require(args, "w")
        (trade,) = _input_trades(args, 1)
        if len(args.w) != trade.v:
            raise ParameterError(f"--w must have length {trade.v}")
        return TradeFile.from_trade(translate(trade, from_bits(args.w)))
    if kind == "dup-coordinate":
        _require(args, "coordinate")
        (trade,) = _input_trades(args, 1)
        return TradeFile.from_trade(duplicate_coordinate(trade, args.coordinate))
    raise ParameterError(f"unknown construction {kind!r}")


def cmd_construct(args) -> int:
    _emit(_serialize(build(args), args.json), args.output)
    return EXIT_OK


def cmd_split(args) -> int:
    f = tradefile.read(args.path)
    if f.kind != tradefile.UNITRADE:
        raise ParameterError("split expects a unitrade file")
    result = split(f.blocks, f.v, f.t)
    if result.trade is None:
        if args.json:
            print(json.dumps({"splittable": False, "certificate": result.describe()}))
        else:
            print(result.describe())
        return EXIT_NEGATIVE
    out = TradeFile.from_trade(result.trade)
    if args.output:
        _emit(_serialize(out, args.json), args.output)
        print(result.describe())
    else:
        _emit(_serialize(out, args.json), None)
    return EXIT_OK


def cmd_classify(args) -> int:
    c = classify_volume(args.volume, args.t)
    if args.json:
        print(json.dumps({"volume": c.volume, "t": c.t, "verdict": c.verdict,
                          "matches": [{"form": m.form, "i": m.i} for m in c.matches]}))
    else:
        print(c)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    result = trade_volume_spectrum(args.v, args.t, args.max_volume, threads=args.threads)
    if args.json:
        records = []
        for vol in result.volumes:
            records.append({
                "volume": vol,
                "count": result.counts[vol],
                "verdict": classify_volume(vol, args.t).verdict,
                "example": tradefile.to_json(TradeFile.from_trade(result.examples[vol])),
            })
        print(json.dumps({"v": args.v, "t": args.t, "max_volume": args.max_volume,
                          "unitrades_checked": result.unitrades_checked, "volumes": records}))
    else:
        for vol in result.volumes:
            print(f"{vol}\t{result.counts[vol]}")
    return EXIT_OK


def cmd_rm_dist(args) -> int:
    dist = rm_weight_distribution(args.r, args.v, threads=args.threads)
    if args.json:
        print(json.dumps({"r": args.r, "v": args.v, "counts": {str(w): dist.counts[w] for w in dist.weights}}))
    else:
        for w in dist.weights:
            print(f"{w}\t{dist.counts[w]}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubetrades", description="Trades and unitrades over the Boolean cube.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a trade or unitrade file")
    p.add_argument("path")
    p.add_argument("--all-violations", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="write a constructed trade or unitrade")
    p.add_argument("kind", choices=CONSTRUCT_KINDS)
    for name in ("t", "i", "v", "r", "mu", "nu", "coordinate"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--bases", help="comma-separated bitstrings")
    p.add_argument("--w", help="translation block as a bitstring")
    p.add_argument("--part", help="simplex: trade, c0, c1 or union")
    p.add_argument("--input", action="append", help="input trade file (repeat for merge)")
    p.add_argument("--flip", action="store_true", help="merge: pair T0 of the first with T1 of the second")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("split", help="split a unitrade into a trade")
    p.add_argument("path")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("classify", help="classify a trade volume")
    p.add_argument("volume", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", help="volumes realized by splitting small unitrades")
    p.add_argument("v", type=int)
    p.add_argument("t", type=int)
    p.add_argument("max_volume", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("rm-dist", help="weight distribution of RM(r, v)")
    p.add_argument("r", type=int)
    p.add_argument("v", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rm_dist)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InconsistencyError as exc:
        print(f"fatal: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
