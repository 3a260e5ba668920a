"""Text and JSON formats for trades and unitrades.

Text form::

    trade v=3 t=1
    T0:
    000
    111
    T1:
    011
    100

A unitrade file has the header ``unitrade v=<int> t=<int>`` and a single
section ``T:``.  Lines starting with ``#`` are comments.  Blocks are written
element 1 first and sorted; serializing a parsed file reproduces it byte for
byte when it was written by :func:`dumps`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from .boolcube import MAX_V, from_bits, sort_blocks, to_bits
from .errors import ParameterError
from .trades import Trade

TRADE = "trade"
UNITRADE = "unitrade"
_HEADER = re.compile(r"(trade|unitrade) v=(\d+) t=(\d+)")
_SECTIONS = {TRADE: ("T0", "T1"), UNITRADE: ("T",)}


class FormatError(ParameterError):
    """Malformed trade or unitrade file."""


@dataclass(frozen=True)
class TradeFile:
    kind: str
    v: int
    t: int
    legs: tuple[frozenset[int], ...]

    @classmethod
    def from_trade(cls, trade: Trade) -> "TradeFile":
        return cls(TRADE, trade.v, trade.t, (trade.T0, trade.T1))

    @classmethod
    def from_unitrade(cls, blocks: Iterable[int], v: int, t: int) -> "TradeFile":
        return cls(UNITRADE, v, t, (frozenset(blocks),))

    @property
    def blocks(self) -> frozenset[int]:
        return frozenset().union(*self.legs)

    def to_trade(self, check: bool = True) -> Trade:
        if self.kind != TRADE:
            raise ParameterError("file holds a unitrade, not a trade")
        return Trade(self.v, self.t, *self.legs, check=check)


def dumps(f: TradeFile) -> str:
    lines = [f"{f.kind} v={f.v} t={f.t}"]
    for name, leg in zip(_SECTIONS[f.kind], f.legs):
        lines.append(f"{name}:")
        lines.extend(to_bits(x, f.v) for x in sort_blocks(leg, f.v))
    return "\n".join(lines) + "\n"


def loads(text: str) -> TradeFile:
    if not text.isascii():
        raise FormatError("file must be 7-bit ASCII")
    lines = [
        (n, line.strip())
        for n, line in enumerate(text.split("\n"), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise FormatError("empty file")
    n, header = lines[0]
    m = _HEADER.fullmatch(header)
    if m is None:
        raise FormatError(f"line {n}: expected 'trade v=<int> t=<int>' or 'unitrade v=<int> t=<int>'")
    kind, v, t = m.group(1), int(m.group(2)), int(m.group(3))
    if not 1 <= v <= MAX_V or t > v:
        raise FormatError(f"line {n}: need 1 <= v <= {MAX_V} and t <= v")
    names = _SECTIONS[kind]
    legs: list[set[int]] = []
    for n, line in lines[1:]:
        if line.endswith(":"):
            expected = names[len(legs)] if len(legs) < len(names) else None
            if line[:-1] != expected:
                raise FormatError(f"line {n}: unexpected section {line!r}")
            legs.append(set())
            continue
        if not legs:
            raise FormatError(f"line {n}: block before the first section")
        if len(line) != v or set(line) - {"0", "1"}:
            raise FormatError(f"line {n}: expected a bitstring of length {v}, got {line!r}")
        x = from_bits(line)
        if x in legs[-1]:
            raise FormatError(f"line {n}: repeated block {line}")
        legs[-1].add(x)
    if len(legs) != len(names):
        raise FormatError(f"expected sections {', '.join(names)}")
    return TradeFile(kind, v, t, tuple(frozenset(leg) for leg in legs))


def to_json(f: TradeFile) -> dict:
    out: dict = {"kind": f.kind, "v": f.v, "t": f.t}
    for name, leg in zip(_SECTIONS[f.kind], f.legs):
        out[name] = [to_bits(x, f.v) for x in sort_blocks(leg, f.v)]
    return out


def dumps_json(f: TradeFile) -> str:
    return json.dumps(to_json(f), indent=2) + "\n"


def loads_json(text: str) -> TradeFile:
    try:
        data = json.loads(text)
        kind, v, t = data["kind"], int(data["v"]), int(data["t"])
        names = _SECTIONS[kind]
        sections = [data[name] for name in names]
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad JSON trade file: {exc}") from None
    text_form = [f"{kind} v={v} t={t}"]
    for name, blocks in zip(names, sections):
        text_form.append(f"{name}:")
        text_form.extend(map(str, blocks))
    return loads("\n".join(text_form) + "\n")


def read(path: Union[str, Path]) -> TradeFile:
    text = Path(path).read_text(encoding="ascii", errors="replace")
    if text.lstrip().startswith("{"):
        return loads_json(text)
    return loads(text)


def write(path: Union[str, Path], f: TradeFile, as_json: bool = False) -> None:
    data = dumps_json(f) if as_json else dumps(f)
    Path(path).write_bytes(data.encode("ascii"))
