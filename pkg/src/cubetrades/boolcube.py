"""Boolean-cube primitives.

A block (a subset of the ground set ``{1, ..., v}``) is a plain ``int`` whose
bit ``i`` is set when element ``i + 1`` belongs to the subset.  The text form
writes element 1 first, so ``{2, 4, 5}`` over ``v = 7`` is ``"0101100"``.

Sparse operations work on sets of such ints.  Operations that touch the whole
cube (the zeta and Moebius transforms) go through numpy arrays of length
``2**v`` and are gated by :data:`FULL_CUBE_MAX_V`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

import numpy as np

from .errors import CapacityError, ParameterError

MAX_V = 64
# Full-cube transforms allocate 2**v entries.
FULL_CUBE_MAX_V = 24
# Work bound (blocks x small subsets) below which superset counts are taken directly.
DIRECT_COUNT_THRESHOLD = 1 << 20


def check_v(v: int) -> None:
    if not 1 <= v <= MAX_V:
        raise ParameterError(f"v must satisfy 1 <= v <= {MAX_V}, got v={v}")


def check_blocks(blocks: Iterable[int], v: int) -> frozenset[int]:
    """Return ``blocks`` as a frozenset after checking each fits in ``v`` bits."""
    check_v(v)
    out = frozenset(blocks)
    limit = 1 << v
    for x in out:
        if not isinstance(x, int) or not 0 <= x < limit:
            raise ParameterError(f"block {x!r} is not a valid block for v={v}")
    return out


def popcount(x: int) -> int:
    return x.bit_count()


def from_bits(text: str) -> int:
    """Parse a characteristic tuple such as ``"0101100"`` (element 1 first)."""
    if not text or any(c not in "01" for c in text):
        raise ParameterError(f"not a bitstring: {text!r}")
    x = 0
    for i, c in enumerate(text):
        if c == "1":
            x |= 1 << i
    return x


def to_bits(x: int, v: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(v))


def lex_key(x: int, v: int) -> int:
    """Sort key that orders blocks like their bitstrings."""
    return int(to_bits(x, v), 2)


def sort_blocks(blocks: Iterable[int], v: int) -> list[int]:
    return sorted(blocks, key=lambda x: lex_key(x, v))


def elements(x: int) -> list[int]:
    """1-based ground elements of a block."""
    return [i + 1 for i in range(x.bit_length()) if (x >> i) & 1]


def position_masks(v: int, k: int) -> list[int]:
    """All ``k``-subsets of coordinates as masks, ascending."""
    return sorted(sum(1 << i for i in c) for c in combinations(range(v), k))


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def small_subsets(v: int, t: int) -> Iterator[int]:
    """Blocks of size at most ``t``: by size, then in combination order."""
    for i in range(min(t, v) + 1):
        for c in combinations(range(v), i):
            yield sum(1 << j for j in c)


def count_small_subsets(v: int, t: int) -> int:
    return sum(comb(v, i) for i in range(min(t, v) + 1))


@dataclass(frozen=True, order=True)
class Subcube:
    """Axis-aligned affine subcube ``{x : x & fixed_mask == fixed_values}``."""

    v: int
    fixed_mask: int
    fixed_values: int

    def __post_init__(self) -> None:
        check_v(self.v)
        if self.fixed_mask >> self.v:
            raise ParameterError("fixed_mask has bits beyond v")
        if self.fixed_values & ~self.fixed_mask:
            raise ParameterError("fixed_values must be a submask of fixed_mask")

    @property
    def codim(self) -> int:
        return popcount(self.fixed_mask)

    @property
    def dimension(self) -> int:
        return self.v - self.codim

    def contains(self, x: int) -> bool:
        return (x & self.fixed_mask) == self.fixed_values

    def points(self) -> Iterator[int]:
        free = ((1 << self.v) - 1) & ~self.fixed_mask
        for sub in submasks(free):
            yield self.fixed_values | sub

    def __str__(self) -> str:
        parts = [
            f"x{i + 1}={(self.fixed_values >> i) & 1}"
            for i in range(self.v)
            if (self.fixed_mask >> i) & 1
        ]
        return ",".join(parts) if parts else "(whole cube)"


def subcube_contains(s: Subcube, x: int) -> bool:
    return s.contains(x)


def enumerate_subcubes(v: int, codim: int) -> Iterator[Subcube]:
    """Every subcube of codimension ``codim``: ascending mask, then ascending values."""
    check_v(v)
    if not 0 <= codim <= v:
        raise ParameterError(f"codim must satisfy 0 <= codim <= v, got codim={codim}, v={v}")
    for mask in position_masks(v, codim):
        for values in submasks(mask):
            yield Subcube(v, mask, values)


def scan_key(mask: int, values: int) -> tuple[int, int, int]:
    """Order in which verifiers report subcube witnesses.

    Subcubes whose fixed values are all ones come first (these are exactly the
    superset conditions), then by number of fixed zeros, mask and values.
    """
    return (popcount(mask & ~values), mask, values)


def subcube_incidence(blocks: Iterable[int], v: int, codim: int) -> dict[tuple[int, int], list[int]]:
    """Map ``(mask, values)`` to the blocks lying in that subcube.

    Only subcubes of codimension ``codim`` that meet ``blocks`` appear.
    """
    masks = position_masks(v, codim)
    groups: dict[tuple[int, int], list[int]] = {}
    for x in blocks:
        for m in masks:
            groups.setdefault((m, x & m), []).append(x)
    return groups


# -- transforms ---------------------------------------------------------------


def _check_full_cube(v: int) -> None:
    check_v(v)
    if v > FULL_CUBE_MAX_V:
        raise CapacityError(f"full-cube transform needs v <= {FULL_CUBE_MAX_V}, got v={v}")


def indicator(blocks: Iterable[int], v: int, dtype=np.uint8) -> np.ndarray:
    _check_full_cube(v)
    arr = np.zeros(1 << v, dtype=dtype)
    idx = np.fromiter(blocks, dtype=np.int64)
    if idx.size:
        np.add.at(arr, idx, 1)
    return arr


def superset_sum(values: np.ndarray) -> np.ndarray:
    """Zeta transform over supersets: ``out[s] = sum(values[x] for x superset of s)``."""
    out = values.copy()
    n = out.size
    step = 1
    while step < n:
        view = out.reshape(-1, 2, step)
        view[:, 0, :] += view[:, 1, :]
        step <<= 1
    return out


def mobius_transform(values: np.ndarray) -> np.ndarray:
    """Binary Moebius transform; it is its own inverse over GF(2)."""
    out = values.astype(np.uint8) & 1
    n = out.size
    step = 1
    while step < n:
        view = out.reshape(-1, 2, step)
        view[:, 1, :] ^= view[:, 0, :]
        step <<= 1
    return out


def _superset_counts_direct(blocks: frozenset[int], t: int, v: int) -> dict[int, int]:
    counts = dict.fromkeys(small_subsets(v, t), 0)
    for x in blocks:
        bits = [1 << i for i in range(v) if (x >> i) & 1]
        for i in range(min(t, len(bits)) + 1):
            for c in combinations(bits, i):
                counts[sum(c)] += 1
    return counts


def _superset_counts_zeta(blocks: frozenset[int], t: int, v: int) -> dict[int, int]:
    sums = superset_sum(indicator(blocks, v, dtype=np.int64))
    return {s: int(sums[s]) for s in small_subsets(v, t)}


def superset_counts(blocks: Iterable[int], t: int, v: int, method: str = "auto") -> dict[int, int]:
    """Count, for every block ``s`` of size at most ``t``, the members of ``blocks`` containing ``s``.

    ``method`` is ``"direct"``, ``"zeta"`` or ``"auto"``.  Automatic selection
    uses direct counting while ``|blocks| * #small_subsets`` stays below
    :data:`DIRECT_COUNT_THRESHOLD` (or the cube is too big for a transform).
    """
    blocks = check_blocks(blocks, v)
    if not 0 <= t <= v:
        raise ParameterError(f"t must satisfy 0 <= t <= v, got t={t}, v={v}")
    if method == "auto":
        work = len(blocks) * count_small_subsets(v, t)
        method = "direct" if work < DIRECT_COUNT_THRESHOLD or v > FULL_CUBE_MAX_V else "zeta"
    if method == "direct":
        return _superset_counts_direct(blocks, t, v)
    if method == "zeta":
        return _superset_counts_zeta(blocks, t, v)
    raise ParameterError(f"unknown method {method!r}")


@dataclass(frozen=True)
class AnfPolynomial:
    """Polynomial over GF(2) in ``x1..xv``; ``monomials`` holds those with coefficient 1.

    A monomial is a block: bit ``i`` set means ``x_{i+1}`` participates.
    """

    v: int
    monomials: frozenset[int]

    @property
    def coefficients(self) -> dict[int, int]:
        return dict.fromkeys(self.monomials, 1)

    @property
    def degree(self) -> int:
        return max((popcount(m) for m in self.monomials), default=-1)

    def coefficient(self, monomial: int) -> int:
        return int(monomial in self.monomials)

    def evaluate(self, x: int) -> int:
        return sum(1 for m in self.monomials if m & x == m) & 1

    def support(self) -> frozenset[int]:
        coeffs = indicator(self.monomials, self.v)
        return frozenset(np.flatnonzero(mobius_transform(coeffs)).tolist())

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        terms = []
        for m in sorted(self.monomials, key=lambda m: (popcount(m), elements(m))):
            terms.append("*".join(f"x{i}" for i in elements(m)) or "1")
        return " + ".join(terms)


def anf(support: Iterable[int], v: int) -> AnfPolynomial:
    """Algebraic normal form of the characteristic function of ``support``."""
    support = check_blocks(support, v)
    _check_full_cube(v)
    coeffs = mobius_transform(indicator(support, v))
    return AnfPolynomial(v, frozenset(np.flatnonzero(coeffs).tolist()))
