"""[t]-trades: pairs of disjoint block sets with equal inclusion counts.

Two independent verifiers are provided.  :func:`verify_trade_definition`
compares, for every block ``s`` of size at most ``t``, how many blocks of each
leg contain ``s``.  :func:`verify_trade_subcubes` checks that every subcube of
codimension ``t`` meets both legs equally often.  They must always agree.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from math import comb
from typing import Iterable, Optional, Union

from .boolcube import (
    FULL_CUBE_MAX_V,
    MAX_V,
    Subcube,
    check_blocks,
    count_small_subsets,
    elements,
    lex_key,
    popcount,
    position_masks,
    scan_key,
    small_subsets,
    sort_blocks,
    superset_counts,
    to_bits,
)
from .errors import ParameterError

INCLUSION_COUNT = "inclusion-count"
SUBCUBE_BALANCE = "subcube-balance"
OVERLAP = "overlap"


@dataclass(frozen=True)
class TradeViolation:
    """Why a pair of legs fails to be a trade.

    ``witness`` is a block (the subset ``s`` for inclusion counts, the shared
    block for overlaps) or a :class:`Subcube`; ``counts`` are the numbers
    observed in ``T0`` and ``T1``.
    """

    kind: str
    witness: Union[int, Subcube]
    counts: tuple[int, int]
    v: int

    def describe(self) -> str:
        a, b = self.counts
        if self.kind == SUBCUBE_BALANCE:
            return f'violation subcube "{self.witness}": {a} vs {b}'
        if self.kind == INCLUSION_COUNT:
            s = "{" + ",".join(map(str, elements(self.witness))) + "}"
            return f"violation subset {s}: {a} vs {b}"
        return f"overlap: block {to_bits(self.witness, self.v)} is in both legs"


class NotATradeError(ParameterError):
    def __init__(self, violation: TradeViolation):
        super().__init__(violation.describe())
        self.violation = violation


def _check_t(v: int, t: int) -> None:
    if not 0 <= t <= v:
        raise ParameterError(f"t must satisfy 0 <= t <= v, got t={t}, v={v}")


def _overlap(T0: frozenset[int], T1: frozenset[int], v: int) -> Optional[TradeViolation]:
    common = T0 & T1
    if not common:
        return None
    return TradeViolation(OVERLAP, sort_blocks(common, v)[0], (1, 1), v)


def definition_violations(T0: Iterable[int], T1: Iterable[int], v: int, t: int) -> list[TradeViolation]:
    """All inclusion-count violations, smallest subsets first."""
    T0, T1 = check_blocks(T0, v), check_blocks(T1, v)
    _check_t(v, t)
    c0 = superset_counts(T0, t, v)
    c1 = superset_counts(T1, t, v)
    return [
        TradeViolation(INCLUSION_COUNT, s, (c0[s], c1[s]), v)
        for s in small_subsets(v, t)
        if c0[s] != c1[s]
    ]


def subcube_violations(T0: Iterable[int], T1: Iterable[int], v: int, t: int) -> list[TradeViolation]:
    """All unbalanced subcubes of codimension ``t``, in scan order."""
    T0, T1 = check_blocks(T0, v), check_blocks(T1, v)
    _check_t(v, t)
    masks = position_masks(v, t)
    balance: dict[tuple[int, int], list[int]] = {}
    for leg, blocks in ((0, T0), (1, T1)):
        for x in blocks:
            for m in masks:
                balance.setdefault((m, x & m), [0, 0])[leg] += 1
    bad = sorted((key for key, (a, b) in balance.items() if a != b), key=lambda k: scan_key(*k))
    return [
        TradeViolation(SUBCUBE_BALANCE, Subcube(v, m, val), tuple(balance[m, val]), v)
        for m, val in bad
    ]


def verify_trade_definition(T0: Iterable[int], T1: Iterable[int], v: int, t: int) -> Optional[TradeViolation]:
    """Check the legs against the inclusion-count definition.

    Returns ``None`` when ``{T0, T1}`` is a [t]-trade, otherwise the first
    violation: an overlap, or the first subset ``s`` (by size, then
    combination order) contained in different numbers of blocks.
    """
    T0, T1 = check_blocks(T0, v), check_blocks(T1, v)
    _check_t(v, t)
    found = _overlap(T0, T1, v)
    if found is not None:
        return found
    c0 = superset_counts(T0, t, v)
    c1 = superset_counts(T1, t, v)
    for s in small_subsets(v, t):
        if c0[s] != c1[s]:
            return TradeViolation(INCLUSION_COUNT, s, (c0[s], c1[s]), v)
    return None


def verify_trade_subcubes(T0: Iterable[int], T1: Iterable[int], v: int, t: int) -> Optional[TradeViolation]:
    """Check that every subcube of codimension ``t`` meets both legs equally.

    Only subcubes meeting ``T0 | T1`` are examined; the rest hold trivially.
    Witnesses are reported in :func:`~cubetrades.boolcube.scan_key` order.
    """
    T0, T1 = check_blocks(T0, v), check_blocks(T1, v)
    _check_t(v, t)
    found = _overlap(T0, T1, v)
    if found is not None:
        return found
    bad = subcube_violations(T0, T1, v, t)
    return bad[0] if bad else None


def _subcube_cost(n: int, v: int, t: int) -> int:
    return n * comb(v, t)


def _definition_cost(n: int, v: int, t: int) -> int:
    direct = n * count_small_subsets(v, t)
    if v <= FULL_CUBE_MAX_V:
        return min(direct, v << v)
    return direct


@dataclass(frozen=True)
class Trade:
    """A [t]-trade ``{T0, T1}`` over the ``v``-cube.

    Legs are stored in canonical order: ``T0`` holds the lexicographically
    smallest block.  Construction verifies the trade property with the cheaper
    criterion unless ``check=False``.
    """

    v: int
    t: int
    T0: frozenset[int]
    T1: frozenset[int]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        T0 = check_blocks(self.T0, self.v)
        T1 = check_blocks(self.T1, self.v)
        _check_t(self.v, self.t)
        union = T0 | T1
        if union and min(union, key=lambda x: lex_key(x, self.v)) in T1:
            T0, T1 = T1, T0
        object.__setattr__(self, "T0", T0)
        object.__setattr__(self, "T1", T1)
        if not check:
            return
        found = _overlap(T0, T1, self.v)
        if found is None and len(T0) != len(T1):
            raise ParameterError(f"legs differ in size: {len(T0)} vs {len(T1)}")
        if found is None:
            n = len(union)
            if _subcube_cost(n, self.v, self.t) <= _definition_cost(n, self.v, self.t):
                found = verify_trade_subcubes(T0, T1, self.v, self.t)
            else:
                found = verify_trade_definition(T0, T1, self.v, self.t)
        if found is not None:
            raise NotATradeError(found)

    @classmethod
    def unchecked(cls, v: int, t: int, T0: Iterable[int], T1: Iterable[int]) -> "Trade":
        return cls(v, t, frozenset(T0), frozenset(T1), check=False)

    @property
    def volume(self) -> int:
        return len(self.T0)

    @property
    def blocks(self) -> frozenset[int]:
        return self.T0 | self.T1

    def legs(self) -> tuple[list[int], list[int]]:
        return sort_blocks(self.T0, self.v), sort_blocks(self.T1, self.v)

    def __repr__(self) -> str:
        l0, l1 = self.legs()
        show = lambda leg: "{" + ",".join(to_bits(x, self.v) for x in leg) + "}"
        return f"Trade(v={self.v}, t={self.t}, T0={show(l0)}, T1={show(l1)})"


def volume(trade: Trade) -> int:
    return trade.volume


def translate(trade: Trade, w: int) -> Trade:
    """Add ``w`` to every block (a translation of the cube)."""
    check_blocks([w], trade.v)
    return Trade(
        trade.v,
        trade.t,
        frozenset(x ^ w for x in trade.T0),
        frozenset(x ^ w for x in trade.T1),
    )


def duplicate_coordinate(trade: Trade, i: int) -> Trade:
    """Append a copy of coordinate ``i`` (1-based) to every block."""
    v = trade.v
    if not 1 <= i <= v:
        raise ParameterError(f"coordinate must satisfy 1 <= i <= v, got i={i}, v={v}")
    if v + 1 > MAX_V:
        raise ParameterError(f"duplicating a coordinate would exceed v={MAX_V}")

    def dup(x: int) -> int:
        return x | (((x >> (i - 1)) & 1) << v)

    return Trade(v + 1, trade.t, frozenset(map(dup, trade.T0)), frozenset(map(dup, trade.T1)))


def lift_to_design_trade(trade: Trade) -> Trade:
    """Append the complement of every block, giving a t-(2v, v) trade."""
    v = trade.v
    if 2 * v > MAX_V:
        raise ParameterError(f"lifting needs 2v <= {MAX_V}, got v={v}")
    full = (1 << v) - 1

    def lift(x: int) -> int:
        return x | ((x ^ full) << v)

    lifted = Trade(2 * v, trade.t, frozenset(map(lift, trade.T0)), frozenset(map(lift, trade.T1)))
    if lifted.blocks and is_design_trade(lifted) != v:
        raise AssertionError("lifted blocks do not all have size v")
    return lifted


def merge(a: Trade, b: Trade, *, flip: bool = False) -> Trade:
    """Combine two trades whose like legs are disjoint, cancelling shared blocks.

    The result has legs ``(A0 | B0) - (A1 | B1)`` and ``(A1 | B1) - (A0 | B0)``.
    Legs are stored in canonical order, so ``flip=True`` pairs ``a.T0`` with
    ``b.T1`` instead.
    """
    if (a.v, a.t) != (b.v, b.t):
        raise ParameterError(f"cannot merge trades over (v,t)=({a.v},{a.t}) and ({b.v},{b.t})")
    b0, b1 = (b.T1, b.T0) if flip else (b.T0, b.T1)
    for name, common in (("T0", a.T0 & b0), ("T1", a.T1 & b1)):
        if common:
            shown = ",".join(to_bits(x, a.v) for x in sort_blocks(common, a.v))
            raise ParameterError(f"legs {name} intersect in {{{shown}}}")
    left = a.T0 | b0
    right = a.T1 | b1
    return Trade(a.v, a.t, left - right, right - left)


def is_design_trade(trade: Trade) -> Optional[int]:
    """Common block size ``k`` if every block has it, else ``None``."""
    sizes = {popcount(x) for x in trade.blocks}
    return sizes.pop() if len(sizes) == 1 else None
