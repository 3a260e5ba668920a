"""Volume classification, Reed-Muller weight distributions and realized spectra.

Codewords of RM(r, v) are truth tables of length ``2**v`` packed into uint64
words.  Enumeration splits the generator monomials into a low part, whose
``2**k`` combinations are tabulated once, and a high part walked in Gray-code
order so each step XORs a single monomial into the running offset.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

import numpy as np

from .boolcube import check_v, position_masks, sort_blocks
from .errors import CapacityError, InconsistencyError, ParameterError
from .trades import Trade
from .unitrades import split

MAX_RM_DIM = 26
# Bound on codewords x words touched by a full enumeration.
MAX_RM_WORK = 1 << 27
# Rows in the tabulated low part.
_LOW_TABLE_WORDS = 1 << 20

ALLOWED = "allowed"
FORBIDDEN = "forbidden"
UNCONSTRAINED = "unconstrained"


# -- volume classification -----------------------------------------------------


@dataclass(frozen=True, order=True)
class FormMatch:
    form: int
    i: int

    def __str__(self) -> str:
        return f"form{self.form} i={self.i}"


@dataclass(frozen=True)
class VolumeClassification:
    volume: int
    t: int
    matches: tuple[FormMatch, ...]
    verdict: str

    def __str__(self) -> str:
        return "\t".join([self.verdict, *map(str, self.matches)])


def volume_bound(t: int) -> int:
    """Volumes at or above this value are not constrained by the volume gaps."""
    return 2 ** (t + 1) + 2 ** (t - 1)


def volume_forms(t: int) -> list[tuple[FormMatch, int]]:
    """Every ``(form, i)`` with its volume, for a given strength ``t >= 1``."""
    if t < 1:
        raise ParameterError(f"classification needs t >= 1, got t={t}")
    top = 2 ** (t + 1)
    half = 2 ** (t - 1)
    out = [(FormMatch(1, i), top - 2**i) for i in range(t + 2)]
    out += [(FormMatch(2, i), top + 2**i) for i in range(-(-(t - 1) // 2), t - 1)]
    out += [(FormMatch(3, i), top + half - 2**i) for i in range(t)]
    out += [(FormMatch(4, i), top + half - 3 * 2**i) for i in range(t - 2)]
    return out


def allowed_volumes(t: int) -> set[int]:
    """Volumes below :func:`volume_bound` that a [t]-trade may have."""
    return {vol for _, vol in volume_forms(t)}


def classify_volume(volume: int, t: int) -> VolumeClassification:
    if volume < 0:
        raise ParameterError(f"volume must be nonnegative, got {volume}")
    matches = tuple(sorted(m for m, vol in volume_forms(t) if vol == volume))
    if volume >= volume_bound(t):
        verdict = UNCONSTRAINED
    elif matches:
        verdict = ALLOWED
    else:
        verdict = FORBIDDEN
    return VolumeClassification(volume, t, matches, verdict)


# -- Reed-Muller enumeration ---------------------------------------------------


def rm_dimension(r: int, v: int) -> int:
    return sum(comb(v, j) for j in range(r + 1))


def _words(v: int) -> int:
    return max(1, (1 << v) // 64)


def monomial_truth_table(m: int, v: int) -> np.ndarray:
    """Packed truth table of the monomial ``m`` (points containing ``m``)."""
    xs = np.arange(1 << v, dtype=np.int64)
    bits = ((xs & m) == m).astype(np.uint8)
    packed = np.packbits(bits, bitorder="little")
    packed = np.pad(packed, (0, 8 * _words(v) - packed.size))
    return packed.view("<u8").astype(np.uint64)


def rm_generators(r: int, v: int) -> np.ndarray:
    """Rows are the monomials of degree at most ``r``, by degree then mask."""
    monomials = [m for d in range(r + 1) for m in position_masks(v, d)]
    return np.stack([monomial_truth_table(m, v) for m in monomials])


def _check_rm(r: int, v: int) -> int:
    check_v(v)
    if not 0 <= r <= v:
        raise ParameterError(f"need 0 <= r <= v, got r={r}, v={v}")
    dim = rm_dimension(r, v)
    if dim > MAX_RM_DIM:
        raise CapacityError(f"RM({r},{v}) has dimension {dim} > {MAX_RM_DIM}")
    if (1 << dim) * _words(v) > MAX_RM_WORK:
        raise CapacityError(f"enumerating RM({r},{v}) exceeds the work gate")
    return dim


def _walk_codewords(
    r: int, v: int, visit: Callable[[np.ndarray], object], threads: int = 1
) -> list:
    """Call ``visit`` on blocks of codewords covering RM(r, v) exactly once.

    Each call receives an array of shape ``(rows, words)``.  Return values are
    collected in a fixed order independent of ``threads``.
    """
    _check_rm(r, v)
    gens = rm_generators(r, v)
    words = gens.shape[1]
    k_low = min(len(gens), 16, max(0, (_LOW_TABLE_WORDS // words).bit_length() - 1))
    table = np.zeros((1, words), dtype=np.uint64)
    for g in gens[:k_low]:
        table = np.concatenate([table, table ^ g])
    high = gens[k_low:]
    n_steps = 1 << len(high)

    def run(start: int, stop: int) -> list:
        gray = start ^ (start >> 1)
        cur = np.zeros(words, dtype=np.uint64)
        for j in range(len(high)):
            if (gray >> j) & 1:
                cur ^= high[j]
        out = []
        for idx in range(start, stop):
            if idx != start:
                cur ^= high[(idx & -idx).bit_length() - 1]
            out.append(visit(table ^ cur))
        return out

    n_chunks = max(1, min(threads * 4, n_steps)) if threads > 1 else 1
    bounds = [n_steps * c // n_chunks for c in range(n_chunks + 1)]
    spans = [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ab: run(*ab), spans))
    else:
        parts = [run(a, b) for a, b in spans]
    return [item for part in parts for item in part]


def _weights(rows: np.ndarray) -> np.ndarray:
    return np.bitwise_count(rows).sum(axis=1, dtype=np.int64)


@dataclass(frozen=True)
class WeightDistribution:
    r: int
    v: int
    counts: dict[int, int] = field(hash=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def weights(self) -> list[int]:
        return sorted(self.counts)


def rm_weight_distribution(r: int, v: int, threads: int = 1) -> WeightDistribution:
    """Exact weight distribution of RM(r, v) by enumerating every codeword."""
    size = 1 << v

    def visit(rows: np.ndarray) -> np.ndarray:
        return np.bincount(_weights(rows), minlength=size + 1)

    total = np.sum(_walk_codewords(r, v, visit, threads), axis=0)
    return WeightDistribution(r, v, {w: int(c) for w, c in enumerate(total) if c})


def gap_allowed_weights(r: int, v: int) -> set[int]:
    """Weights below ``2.5 * 2**(v-r)`` that RM(r, v) may contain."""
    d = v - r
    base = 2**d
    allowed = {2 * base - 2**j for j in range(1, d + 1)} | {base, 2 * base}
    allowed |= {2 * base + 2 * 2 ** (d - l) for l in range(2, (d + 2) // 2 + 1)}
    half = 5 * 2 ** (d - 1) if d >= 1 else None
    if half is not None:
        allowed |= {half - 2 * 2**i for i in range(d - 2)}
        allowed |= {half - 6 * 2**i for i in range(d - 3)}
    return {w for w in allowed if w * 2 < 5 * base}


@dataclass(frozen=True)
class GapReport:
    r: int
    v: int
    distribution: WeightDistribution
    allowed: frozenset[int]
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def limit(self) -> float:
        return 2.5 * 2 ** (self.v - self.r)


def check_weight_gaps(r: int, v: int, threads: int = 1) -> GapReport:
    """Check that every small nonzero weight of RM(r, v) is one of the listed families."""
    dist = rm_weight_distribution(r, v, threads)
    allowed = gap_allowed_weights(r, v)
    base = 2 ** (v - r)
    bad = tuple(w for w in dist.weights if 0 < w and 2 * w < 5 * base and w not in allowed)
    return GapReport(r, v, dist, frozenset(allowed), bad)


def _row_blocks(row: np.ndarray, v: int) -> frozenset[int]:
    bits = np.unpackbits(row.view(np.uint8), bitorder="little")[: 1 << v]
    return frozenset(np.flatnonzero(bits).tolist())


def _support_key(blocks: frozenset[int], v: int) -> tuple:
    return (len(blocks), tuple(sort_blocks(blocks, v)))


def enumerate_unitrades(v: int, t: int, max_card: int, threads: int = 1) -> list[frozenset[int]]:
    """Every nonzero t-unitrade with at most ``max_card`` blocks.

    These are the supports of the nonzero codewords of RM(v - t - 1, v), listed
    by cardinality and then by their sorted blocks.
    """
    check_v(v)
    if not 0 <= t < v:
        raise ParameterError(f"t must satisfy 0 <= t < v, got t={t}, v={v}")

    def visit(rows: np.ndarray) -> list[frozenset[int]]:
        w = _weights(rows)
        keep = rows[(w > 0) & (w <= max_card)]
        return [_row_blocks(row, v) for row in keep]

    found = [s for part in _walk_codewords(v - t - 1, v, visit, threads) for s in part]
    return sorted(found, key=lambda s: _support_key(s, v))


@dataclass(frozen=True)
class SpectrumResult:
    """Volumes realized by splitting every unitrade up to ``2 * max_volume`` blocks."""

    v: int
    t: int
    max_volume: int
    counts: dict[int, int] = field(hash=False)
    examples: dict[int, Trade] = field(hash=False)
    unitrades_checked: int = 0

    @property
    def volumes(self) -> list[int]:
        return sorted(self.counts)


def trade_volume_spectrum(v: int, t: int, max_volume: int, threads: int = 1) -> SpectrumResult:
    """Split every small t-unitrade and collect the volumes of the resulting trades.

    Raises :class:`InconsistencyError` if a realized volume is classified as
    forbidden.
    """
    if t < 1:
        raise ParameterError(f"spectrum needs t >= 1, got t={t}")
    if max_volume < 0:
        raise ParameterError("max_volume must be nonnegative")
    if 2 * max_volume > 64:
        raise CapacityError("split is gated at 64 blocks, so max_volume must be at most 32")
    supports = enumerate_unitrades(v, t, 2 * max_volume, threads)

    def attempt(blocks: frozenset[int]) -> Optional[Trade]:
        return split(blocks, v, t).trade

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(attempt, supports))
    else:
        results = [attempt(s) for s in supports]

    counts: dict[int, int] = {}
    examples: dict[int, Trade] = {}
    for trade in results:
        if trade is None:
            continue
        vol = trade.volume
        counts[vol] = counts.get(vol, 0) + 1
        examples.setdefault(vol, trade)
    for vol in counts:
        c = classify_volume(vol, t)
        if c.verdict == FORBIDDEN:
            raise InconsistencyError(f"realized a trade of forbidden volume {vol} for t={t}: {examples[vol]}")
    return SpectrumResult(v, t, max_volume, dict(sorted(counts.items())), dict(sorted(examples.items())), len(supports))

