"""Explicit trades and unitrades.

Everything produced here is handed to the :class:`~cubetrades.trades.Trade`
constructor (and therefore re-verified) or is a plain support set meant to be
checked with :mod:`cubetrades.unitrades`.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .boolcube import FULL_CUBE_MAX_V, check_blocks, from_bits, submasks, to_bits
from .errors import CapacityError, ParameterError
from .trades import Trade, merge
from .unitrades import xor_basis

# A minimum trade has 2**(len(bases)) blocks.
MAX_BASES = 20


def parity_legs(bases: Sequence[int], w: int) -> tuple[frozenset[int], frozenset[int]]:
    """Split ``w + span(bases)`` by the parity of the number of bases used."""
    if len(bases) > MAX_BASES:
        raise CapacityError(f"at most {MAX_BASES} bases supported, got {len(bases)}")
    even, odd = [], []
    for pick in range(1 << len(bases)):
        x = w
        for j, b in enumerate(bases):
            if (pick >> j) & 1:
                x ^= b
        (odd if pick.bit_count() & 1 else even).append(x)
    return frozenset(even), frozenset(odd)


def _check_disjoint_bases(bases: Sequence[int], v: int) -> None:
    check_blocks(bases, v)
    if not bases:
        raise ParameterError("at least one base block is required")
    for b in bases:
        if b == 0:
            raise ParameterError("base blocks must be nonzero")
    for a, b in combinations(bases, 2):
        if a & b:
            raise ParameterError(f"base blocks {to_bits(a, v)} and {to_bits(b, v)} intersect")


def minimum_trade(bases: Sequence[int], w: int, v: int) -> Trade:
    """[t]-trade of volume ``2**t`` on ``w + span(bases)``, with ``t = len(bases) - 1``.

    Blocks using an even number of bases form one leg, the rest the other.
    """
    bases = list(bases)
    _check_disjoint_bases(bases, v)
    check_blocks([w], v)
    even, odd = parity_legs(bases, w)
    return Trade(v, len(bases) - 1, even, odd)


def _paired_merge(v: int, t: int, first: tuple, second: tuple) -> Trade:
    """Merge ``(even, odd)`` legs of ``first`` with the swapped legs of ``second``."""
    a = Trade(v, t, *first)
    b = Trade(v, t, *second)
    # Trade stores legs canonically; flip so that first's even leg meets second's odd leg.
    flip = (a.T0 == first[0]) == (b.T0 == second[0])
    return merge(a, b, flip=flip)


def symmetric_difference_trade(
    shared: Sequence[int], first: Sequence[int], second: Sequence[int], v: int, w: int = 0
) -> Trade:
    """Trade on the symmetric difference of ``w + span(shared + first)`` and ``w + span(shared + second)``.

    ``shared + first`` and ``shared + second`` must each be pairwise disjoint
    and of the same length ``t + 1``.  The first flat is split even/odd, the
    second odd/even, and the two trades are merged.
    """
    left, right = list(shared) + list(first), list(shared) + list(second)
    if len(left) != len(right):
        raise ParameterError("both flats need the same number of bases")
    _check_disjoint_bases(left, v)
    _check_disjoint_bases(right, v)
    check_blocks([w], v)
    t = len(left) - 1
    return _paired_merge(v, t, parity_legs(left, w), parity_legs(right, w))


def type_a_trade(t: int, i: int, v: int) -> Trade:
    """Trade of volume ``2**(t+1) - 2**i`` from two coordinate flats sharing ``i`` directions.

    The flats are spanned by ``{1}, ..., {t+1}`` and by
    ``{1}, ..., {i}, {t+2}, ..., {2t+2-i}``.
    """
    if not (t > 0 and 0 <= i < t and 2 * t + 2 - i <= v):
        raise ParameterError(f"need t > 0, 0 <= i < t and 2t+2-i <= v; got t={t}, i={i}, v={v}")
    unit = [1 << j for j in range(v)]
    shared = unit[:i]
    return symmetric_difference_trade(shared, unit[i : t + 1], unit[t + 1 : 2 * t + 2 - i], v)


def _prefix(n: int) -> int:
    return (1 << n) - 1


def _support(v: int, fixed: int, predicate) -> frozenset[int]:
    if v > FULL_CUBE_MAX_V:
        raise CapacityError(f"point evaluation needs v <= {FULL_CUBE_MAX_V}, got v={v}")
    free = _prefix(v) & ~fixed
    return frozenset(x for x in (fixed | s for s in submasks(free)) if predicate(x))


def kasami_form_a(r: int, mu: int, v: int) -> frozenset[int]:
    """Support of ``y1..y_{r-mu} (y_{r-mu+1}..y_r + y_{r+1}..y_{r+mu})``."""
    if not (r >= mu >= 2 and v >= r + mu):
        raise ParameterError(f"need r >= mu >= 2 and v >= r + mu; got r={r}, mu={mu}, v={v}")
    head = _prefix(r - mu)
    a = _prefix(r) & ~head
    b = _prefix(r + mu) & ~_prefix(r)
    return _support(v, head, lambda x: ((x & a) == a) != ((x & b) == b))


def kasami_form_b(r: int, nu: int, v: int) -> frozenset[int]:
    """Support of ``y1..y_{r-2} (y_{r-1} y_r + y_{r+1} y_{r+2} + ... + y_{r+2nu-3} y_{r+2nu-2})``."""
    if not (r >= 2 and nu >= 3 and v >= r - 2 + 2 * nu):
        raise ParameterError(f"need r >= 2, nu >= 3 and v >= r - 2 + 2nu; got r={r}, nu={nu}, v={v}")
    head = _prefix(r - 2)
    pairs = [(3 << (r - 2 + 2 * k)) for k in range(nu)]
    return _support(v, head, lambda x: sum((x & p) == p for p in pairs) & 1 == 1)


def kasami_a_weight(r: int, mu: int, v: int) -> int:
    return 2 ** (v - r + 1) - 2 ** (v - r - mu + 1)


def kasami_b_weight(r: int, nu: int, v: int) -> int:
    return 2 ** (v - r + 1) - 2 ** (v - r - nu + 1)


def apply_affine(blocks, matrix: Sequence[int], shift: int, v: int) -> frozenset[int]:
    """Image of ``blocks`` under ``x -> M x + shift``.

    ``matrix[j]`` is the image of the unit block ``{j+1}``; it must be invertible.
    """
    blocks = check_blocks(blocks, v)
    check_blocks(list(matrix) + [shift], v)
    if len(matrix) != v or len(xor_basis(matrix)) != v:
        raise ParameterError("matrix must consist of v linearly independent blocks")

    def image(x: int) -> int:
        y = shift
        for j in range(v):
            if (x >> j) & 1:
                y ^= matrix[j]
        return y

    return frozenset(map(image, blocks))


_C0 = ["0000000", "0011101", "0111010", "1110100", "1101001", "1010011", "0100111", "1001110"]
_C1 = ["0000000", "0010111", "0101110", "1011100", "0111001", "1110010", "1100101", "1001011"]


def simplex_fixture() -> tuple[frozenset[int], frozenset[int]]:
    """The two length-7 simplex codes whose symmetric difference splits into a 2-(7,4) trade."""
    return frozenset(map(from_bits, _C0)), frozenset(map(from_bits, _C1))
