"""Unitrades and splitting.

A t-unitrade is a block set meeting every subcube of codimension ``t`` in an
even number of blocks; equivalently its characteristic function has algebraic
degree at most ``v - t - 1``.  The union of the legs of a [t]-trade is always a
t-unitrade, and :func:`split` decides the converse for a given unitrade by an
exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .boolcube import (
    Subcube,
    anf,
    check_blocks,
    scan_key,
    sort_blocks,
    subcube_incidence,
    to_bits,
)
from .errors import CapacityError, ParameterError
from .trades import Trade

SPLIT_MAX_BLOCKS = 64
AFFINE_BASIS_MAX_BLOCKS = 1 << 12


def _check_params(v: int, t: int) -> None:
    if not 0 <= t < v:
        raise ParameterError(f"t must satisfy 0 <= t < v, got t={t}, v={v}")


def parity_witness(blocks: Iterable[int], v: int, t: int) -> Optional[Subcube]:
    """First subcube of codimension ``t`` meeting ``blocks`` an odd number of times."""
    T = check_blocks(blocks, v)
    _check_params(v, t)
    odd = [k for k, members in subcube_incidence(T, v, t).items() if len(members) % 2]
    if not odd:
        return None
    return Subcube(v, *min(odd, key=lambda k: scan_key(*k)))


def is_unitrade_parity(blocks: Iterable[int], v: int, t: int) -> bool:
    return parity_witness(blocks, v, t) is None


def is_unitrade_anf(blocks: Iterable[int], v: int, t: int) -> bool:
    T = check_blocks(blocks, v)
    _check_params(v, t)
    return anf(T, v).degree <= v - t - 1


# -- GF(2) linear algebra on blocks --------------------------------------------


def xor_basis(vectors: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for x in vectors:
        while x:
            top = x.bit_length() - 1
            if top not in basis:
                basis[top] = x
                break
            x ^= basis[top]
    return basis


def span(vectors: Iterable[int]) -> set[int]:
    out = {0}
    for x in xor_basis(vectors).values():
        out |= {y ^ x for y in out}
    return out


def affine_rank(blocks: Iterable[int], v: int) -> int:
    """Dimension of the affine span of a nonempty block set."""
    T = check_blocks(blocks, v)
    if not T:
        raise ParameterError("affine rank of an empty set is undefined")
    x0 = next(iter(T))
    return len(xor_basis(x ^ x0 for x in T))


def is_affine_subspace(blocks: Iterable[int], v: int) -> bool:
    T = check_blocks(blocks, v)
    n = len(T)
    if n == 0 or n & (n - 1):
        return False
    return 1 << affine_rank(T, v) == n


def affine_split_basis(blocks: Iterable[int], v: int) -> Optional[tuple[int, list[int]]]:
    """Decide whether an affine subspace of dimension ``t + 1`` splits into a [t]-trade.

    The subspace is translated by its lexicographically smallest element ``w``;
    the split exists exactly when the minimal (by inclusion) nonzero elements
    of the resulting linear space are pairwise disjoint, in which case they form
    a basis.  Returns ``(w, basis)`` or ``None``.
    """
    T = check_blocks(blocks, v)
    if not is_affine_subspace(T, v):
        raise ParameterError("block set is not an affine subspace")
    if len(T) < 2:
        raise ParameterError("a single block has no split into two legs")
    if len(T) > AFFINE_BASIS_MAX_BLOCKS:
        raise CapacityError(f"affine_split_basis handles at most {AFFINE_BASIS_MAX_BLOCKS} blocks")
    w = sort_blocks(T, v)[0]
    linear = [x ^ w for x in T if x != w]
    minimal = [x for x in linear if not any(y != x and y & ~x == 0 for y in linear)]
    seen = 0
    for x in minimal:
        if seen & x:
            return None
        seen |= x
    return w, sort_blocks(minimal, v)


# -- splitting ------------------------------------------------------------------


@dataclass(frozen=True)
class OddCycle:
    """Blocks forming an odd cycle of pairwise must-differ constraints."""

    blocks: tuple[int, ...]

    def describe(self, v: int) -> str:
        cycle = " - ".join(to_bits(x, v) for x in self.blocks)
        return f"odd cycle in the must-differ graph: {cycle}"


@dataclass(frozen=True)
class UnbalanceableSubcube:
    """A subcube whose blocks all lie in one forced component and cannot balance."""

    subcube: Subcube
    imbalance: int

    def describe(self, v: int) -> str:
        return f'subcube "{self.subcube}" is forced to an imbalance of {self.imbalance}'


@dataclass(frozen=True)
class Exhausted:
    """The exhaustive search found no split."""

    nodes: int

    def describe(self, v: int) -> str:
        return f"exhaustive search found no split ({self.nodes} nodes)"


Certificate = Union[OddCycle, UnbalanceableSubcube, Exhausted]


@dataclass(frozen=True)
class SplitResult:
    v: int
    t: int
    trade: Optional[Trade]
    certificate: Optional[Certificate]
    nodes: int = 0

    @property
    def splittable(self) -> bool:
        return self.trade is not None

    def describe(self) -> str:
        if self.trade is not None:
            return f"splittable: volume {self.trade.volume}"
        return "not splittable: " + self.certificate.describe(self.v)


def _odd_cycle(u: int, w: int, parent: list[int], depth: list[int]) -> list[int]:
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()  # the common ancestor is already in left
    return left + right[::-1]


def split(blocks: Iterable[int], v: int, t: int, *, max_blocks: int = SPLIT_MAX_BLOCKS) -> SplitResult:
    """Split a t-unitrade into a [t]-trade, or certify that no split exists.

    Every subcube of codimension ``t`` holding exactly two blocks forces them
    into different legs.  The components of this must-differ graph are
    2-colored (an odd cycle is a certificate), and the remaining orientation of
    each component is found by backtracking with incremental subcube-balance
    bounds and forced-move propagation.  The search is exhaustive, and the
    lexicographically smallest block always lands in ``T0``.
    """
    T = check_blocks(blocks, v)
    _check_params(v, t)
    if len(T) > max_blocks:
        raise CapacityError(f"split handles at most {max_blocks} blocks, got {len(T)}")
    witness = parity_witness(T, v, t)
    if witness is not None:
        raise ParameterError(f"not a {t}-unitrade: subcube \"{witness}\" meets it an odd number of times")
    if not T:
        return SplitResult(v, t, Trade(v, t, frozenset(), frozenset()), None)

    order = sort_blocks(T, v)
    index = {x: j for j, x in enumerate(order)}
    n = len(order)
    incidence = subcube_incidence(order, v, t)
    keys = sorted(incidence, key=lambda k: scan_key(*k))
    groups = [(k, [index[x] for x in incidence[k]]) for k in keys]

    adj: list[list[int]] = [[] for _ in range(n)]
    for _, members in groups:
        if len(members) == 2:
            a, b = members
            adj[a].append(b)
            adj[b].append(a)

    comp = [-1] * n
    color = [0] * n
    parent = [-1] * n
    depth = [0] * n
    comps: list[list[int]] = []
    for root in range(n):
        if comp[root] != -1:
            continue
        cid = len(comps)
        members = [root]
        comp[root], color[root] = cid, 1
        head = 0
        while head < len(members):
            u = members[head]
            head += 1
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w], color[w] = cid, -color[u]
                    parent[w], depth[w] = u, depth[u] + 1
                    members.append(w)
                elif color[w] == color[u]:
                    cycle = _odd_cycle(u, w, parent, depth)
                    return SplitResult(v, t, None, OddCycle(tuple(order[j] for j in cycle)))
        comps.append(members)

    # Each subcube becomes a signed constraint over component orientations.
    gterms: list[list[tuple[int, int]]] = []
    for key, members in groups:
        terms: dict[int, int] = {}
        for j in members:
            terms[comp[j]] = terms.get(comp[j], 0) + color[j]
        terms = {c: a for c, a in terms.items() if a}
        if len(terms) == 1:
            (a,) = terms.values()
            return SplitResult(v, t, None, UnbalanceableSubcube(Subcube(v, *key), abs(a)))
        if terms:
            gterms.append(sorted(terms.items()))

    nc = len(comps)
    cgroups: list[list[tuple[int, int]]] = [[] for _ in range(nc)]
    for g, terms in enumerate(gterms):
        for c, a in terms:
            cgroups[c].append((g, a))
    partial = [0] * len(gterms)
    room = [sum(abs(a) for _, a in terms) for terms in gterms]
    sign = [0] * nc
    trail: list[int] = []

    def assign(c: int, s: int) -> bool:
        stack = [(c, s)]
        while stack:
            c, s = stack.pop()
            if sign[c]:
                if sign[c] != s:
                    return False
                continue
            sign[c] = s
            trail.append(c)
            for g, a in cgroups[c]:
                partial[g] += s * a
                room[g] -= abs(a)
            for g, _ in cgroups[c]:
                p, r = partial[g], room[g]
                if abs(p) > r:
                    return False
                if p and abs(p) == r:
                    want = -1 if p > 0 else 1
                    for c2, a2 in gterms[g]:
                        if not sign[c2]:
                            stack.append((c2, want if a2 > 0 else -want))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            c = trail.pop()
            s = sign[c]
            for g, a in cgroups[c]:
                partial[g] -= s * a
                room[g] += abs(a)
            sign[c] = 0

    pinned = comp[0]
    rest = sorted((c for c in range(nc) if c != pinned), key=lambda c: (-len(comps[c]), comps[c][0]))
    nodes = 1

    def search(k: int) -> bool:
        nonlocal nodes
        while k < len(rest) and sign[rest[k]]:
            k += 1
        if k == len(rest):
            return True
        for s in (1, -1):
            nodes += 1
            mark = len(trail)
            if assign(rest[k], s) and search(k + 1):
                return True
            undo(mark)
        return False

    if not (assign(pinned, 1) and search(0)):
        return SplitResult(v, t, None, Exhausted(nodes), nodes)
    T0 = frozenset(order[j] for j in range(n) if sign[comp[j]] * color[j] > 0)
    return SplitResult(v, t, Trade(v, t, T0, T - T0), None, nodes)
