"""Exact k-chromatic polynomials and the weighted bond lattice.

The multicoloring count where vertex i receives k_i colours and neighbours
get disjoint sets is a polynomial in the number of colours q.  It is
computed three ways: directly from ordered tuples of independent sets, by
colouring the clique-join graph, and from the bond-lattice expansion whose
coefficients are root multiplicities.  The three routes must agree
coefficientwise and the tests enforce that.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .supergraph import Supergraph, plain, check_weight, support, ht, \
    weight_parity, independent_sets, join_graph


class RationalPoly:
    """Univariate polynomial in q with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def q(cls):
        return cls((0, 1))

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly(tuple(x + y for x, y in itertools.zip_longest(a, b, fillvalue=Fraction(0))))

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(tuple(c * other for c in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(Fraction(s) for s in data)

    def pretty(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}*"
                body = f"{head}{var}" + (f"^{i}" if i > 1 else "")
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def factored(self, var: str = "q") -> str | None:
        """scale * prod (q - r) when all roots are small integers, else None."""
        if not self:
            return None
        counts = {}
        work = self
        for r in range(0, self.degree() + 1):
            while work.degree() >= 1 and work(r) == 0:
                work = _divide_linear(work, r)
                counts[r] = counts.get(r, 0) + 1
        if work.degree() != 0:
            return None
        scale = work.coeffs[0]
        pieces = []
        for r in sorted(counts):
            base = var if r == 0 else f"({var}-{r})"
            pieces.append(base + (f"^{counts[r]}" if counts[r] > 1 else ""))
        head = "" if scale == 1 else f"{scale} * "
        return head + "".join(pieces)

    def __repr__(self):
        return f"RationalPoly({self.pretty()})"


def _divide_linear(poly: RationalPoly, root: int) -> RationalPoly | None:
    """poly / (q - root) when the division is exact."""
    rem = Fraction(0)
    out = [Fraction(0)] * max(poly.degree(), 0)
    for i in range(poly.degree(), -1, -1):
        if i == poly.degree():
            out[i - 1] = poly.coeffs[i]
        elif i > 0:
            out[i - 1] = poly.coeffs[i] + out[i] * root
        else:
            rem = poly.coeffs[0] + out[0] * root
    return RationalPoly(out) if rem == 0 else None


def binomial_poly(arg: RationalPoly, d: int) -> RationalPoly:
    """C(arg, d) = arg (arg-1) ... (arg-d+1) / d! as a polynomial in q."""
    out = RationalPoly.one()
    for j in range(d):
        out = out * (arg - RationalPoly((j,)))
    return out / math.factorial(d)


@functools.lru_cache(maxsize=None)
def _scaled_binomial(scale: int, d: int) -> RationalPoly:
    """C(scale * q, d), cached; the workhorse of the bond-lattice expansion."""
    return binomial_poly(RationalPoly((0, scale)), d)


@functools.lru_cache(maxsize=None)
def choose_q(d: int) -> RationalPoly:
    return binomial_poly(RationalPoly.q(), d)


# ---------------------------------------------------------------------------
# Chromatic polynomials.

@functools.lru_cache(maxsize=None)
def chromatic_poly_simple(graph: Supergraph) -> RationalPoly:
    """Classical chromatic polynomial via partitions into independent sets.

    pi(q) = sum_m p_m * q(q-1)...(q-m+1) where p_m counts partitions of the
    vertex set into m nonempty independent blocks; blocks are generated with
    the least remaining vertex pinned to avoid double counting.
    """
    n = graph.n
    if n == 0:
        return RationalPoly.one()
    adj = graph.adj
    full = (1 << n) - 1

    @functools.lru_cache(maxsize=None)
    def parts(mask: int) -> tuple[int, ...]:
        """parts(mask)[m] = number of partitions of mask into m blocks."""
        if mask == 0:
            return (1,)
        low = (mask & -mask).bit_length() - 1
        rest_mask = mask & ~(1 << low)
        acc = [0] * (bin(mask).count("1") + 1)
        # independent subsets of rest_mask avoiding neighbours of the block
        members = [i for i in range(n) if rest_mask >> i & 1]

        def grow(block: int, banned: int, candidates: list[int]):
            sub = parts(mask & ~block)
            for m, cnt in enumerate(sub):
                acc[m + 1] += cnt
            for idx, v in enumerate(candidates):
                if banned >> v & 1:
                    continue
                grow(block | (1 << v), banned | adj[v], candidates[idx + 1:])

        grow(1 << low, adj[low], members)
        return tuple(acc)

    out = RationalPoly.zero()
    falling = RationalPoly.one()
    counts = parts(full)
    for m, cnt in enumerate(counts):
        if m > 0:
            falling = falling * RationalPoly((-(m - 1), 1))
            if cnt:
                out = out + falling * cnt
    return out


@functools.lru_cache(maxsize=None)
def _tuple_counts(graph: Supergraph, k: tuple[int, ...]) -> tuple[int, ...]:
    """Number of ordered tuples of nonempty independent sets realizing k,
    indexed by tuple length; memoized on the remaining weight."""
    if not any(k):
        return (1,)
    sup = support(k)
    acc = [0] * (ht(k) + 1)
    for sub in independent_sets(graph, sup):
        if not sub:
            continue
        rest = list(k)
        for v in sub:
            rest[v] -= 1
        for m, cnt in enumerate(_tuple_counts(graph, tuple(rest))):
            acc[m + 1] += cnt
    while acc and not acc[-1]:
        acc.pop()
    return tuple(acc)


@functools.lru_cache(maxsize=None)
def _direct_plain(graph: Supergraph, k: tuple[int, ...]) -> RationalPoly:
    out = RationalPoly.zero()
    for m, cnt in enumerate(_tuple_counts(graph, k)):
        if cnt:
            out = out + choose_q(m) * cnt
    return out


def k_chromatic_direct(graph: Supergraph, k) -> RationalPoly:
    """Multicolouring polynomial from ordered tuples of independent sets."""
    k = check_weight(graph, k)
    if not any(k):
        return RationalPoly.one()
    return _direct_plain(plain(graph), k)


def k_chromatic_join(graph: Supergraph, k) -> RationalPoly:
    """Multicolouring polynomial via the clique-join graph, divided by k!."""
    k = check_weight(graph, k)
    if not any(k):
        return RationalPoly.one()
    factorial = 1
    for x in k:
        factorial *= math.factorial(x)
    return chromatic_poly_simple(join_graph(graph, k)) / factorial


# ---------------------------------------------------------------------------
# Bond lattice.

@dataclass(frozen=True)
class BondPartition:
    """Multiset of blocks; a block is a weight with connected support."""

    blocks: tuple[tuple[int, ...], ...]  # sorted, possibly repeated

    def __len__(self):
        return len(self.blocks)

    def multiplicities(self) -> dict[tuple[int, ...], int]:
        out = {}
        for b in self.blocks:
            out[b] = out.get(b, 0) + 1
        return out

    def to_json(self, graph: Supergraph):
        return [[[graph.names[i], b[i]] for i in support(b)] for b in self.blocks]


@functools.lru_cache(maxsize=None)
def _connected_subweights(graph: Supergraph, k: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    from .supergraph import is_connected_support, weights_up_to
    out = [w for w in weights_up_to(k) if any(w) and is_connected_support(graph, w)]
    return tuple(sorted(out, reverse=True))


def bond_lattice(graph: Supergraph, k) -> list[BondPartition]:
    """All multisets of connected-support blocks splitting the weight of k.

    Enumeration keeps blocks nonincreasing in a fixed order so each
    multiset appears once; deterministic output order.
    """
    k = check_weight(graph, k)
    blocks = _connected_subweights(plain(graph), k)
    out = []

    def rec(remaining: tuple[int, ...], start: int, chosen: list):
        if not any(remaining):
            out.append(BondPartition(tuple(chosen)))
            return
        for idx in range(start, len(blocks)):
            b = blocks[idx]
            if all(b[i] <= remaining[i] for i in range(len(b))):
                chosen.append(b)
                rec(tuple(r - x for r, x in zip(remaining, b)), idx, chosen)
                chosen.pop()

    if any(k):
        rec(k, 0, [])
    return out


def k_chromatic_bond(graph: Supergraph, k, mult) -> RationalPoly:
    """Bond-lattice expansion of the multicolouring polynomial.

    ``mult`` maps a block weight to the multiplicity of the corresponding
    free root.  Blocks of even weight contribute C(q*mult, D) and blocks of
    odd weight C(-q*mult, D), with a sign from the number of blocks and of
    odd blocks.  Only free weights are accepted.
    """
    from .supergraph import is_free_weight
    k = check_weight(graph, k)
    if not any(k):
        return RationalPoly.one()
    if not is_free_weight(graph, k):
        raise InputError(f"weight {k} is not free")
    total = RationalPoly.zero()
    for partition in bond_lattice(graph, k):
        nblocks = len(partition)
        nodd = sum(1 for b in partition.blocks if weight_parity(graph, b) == 1)
        term = RationalPoly.one()
        for block, d in sorted(partition.multiplicities().items()):
            m = mult(block)
            scale = m if weight_parity(graph, block) == 0 else -m
            term = term * _scaled_binomial(scale, d)
        sign = -1 if (nblocks + nodd) % 2 else 1
        total = total + term * sign
    sign = -1 if ht(k) % 2 else 1
    return total * sign
