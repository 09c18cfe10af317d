"""The heap monoid over a supergraph.

A heap is a finite pile of pieces, one vertex each, where pieces on equal or
adjacent positions must sit on distinct levels and every raised piece rests
on one below it.  Heaps are the commutation classes of words: dropping the
letters of a word one by one, each to the lowest level compatible with the
pieces already placed, yields the canonical representative of its class, and
the map is a monoid morphism onto superposition.

The total order on heaps compares standard words (the lexicographically
greatest linearization, shorter words preceding their extensions), and the
Lyndon / super Lyndon machinery is built on that order.

Heaps are interned per graph so standard words are computed once, and all
parity-independent layers (enumeration, the order, Lyndon structure) are
computed on the psi-stripped twin of the graph and shared.
"""

from __future__ import annotations

import functools
import itertools

from .errors import InputError
from .supergraph import Supergraph, plain, check_weight, support, weight_gcd, \
    divide_weight, is_connected_support, weights_up_to


class Heap:
    """Canonical heap of pieces; a piece is a ``(position, level)`` pair.

    Instances are immutable, hashable and interned per graph; ``pieces`` is
    sorted by ``(position, level)``.  Use :func:`heap_from_word` or
    :func:`heap_from_pieces` to construct.
    """

    __slots__ = ("graph", "pieces", "_hash", "_st")

    def __init__(self, graph: Supergraph, pieces: tuple):
        self.graph = graph
        self.pieces = pieces
        self._hash = hash((graph, pieces))
        self._st = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Heap):
            return NotImplemented
        return self.pieces == other.pieces and self.graph == other.graph

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.pieces)

    def weight(self) -> tuple[int, ...]:
        k = [0] * self.graph.n
        for p, _ in self.pieces:
            k[p] += 1
        return tuple(k)

    def parity(self) -> int:
        return sum(1 for p, _ in self.pieces if p in self.graph.psi) & 1

    def word(self) -> str:
        """Standard word with vertex names (dot-joined unless single chars)."""
        names = [self.graph.names[p] for p in standard_word(self)]
        if all(len(s) == 1 for s in names):
            return "".join(names)
        return ".".join(names)

    def __repr__(self):
        return f"Heap({self.word()})" if self.pieces else "Heap(0)"

    def to_json(self):
        by_level = sorted(self.pieces, key=lambda pl: (pl[1], pl[0]))
        return {"pieces": [[self.graph.names[p], lvl] for p, lvl in by_level]}


_REGISTRY: dict[Supergraph, dict[tuple, Heap]] = {}


def _intern(graph: Supergraph, pieces) -> Heap:
    pieces = tuple(sorted(pieces))
    pool = _REGISTRY.get(graph)
    if pool is None:
        pool = _REGISTRY[graph] = {}
    heap = pool.get(pieces)
    if heap is None:
        heap = pool[pieces] = Heap(graph, pieces)
    return heap


def _retag(graph: Supergraph, heap: Heap) -> Heap:
    """The same pile of pieces over another graph with identical adjacency."""
    if heap.graph is graph:
        return heap
    twin = _intern(graph, heap.pieces)
    if twin._st is None and heap._st is not None:
        twin._st = heap._st
    return twin


def heap_from_word(graph: Supergraph, letters) -> Heap:
    """Drop the letters in order; commuting words give the same heap."""
    tops = [-1] * graph.n
    zn = graph.zeta_neighbors
    pieces = []
    for v in letters:
        pos = graph.index(v)
        level = 0
        for j in zn[pos]:
            if tops[j] >= level:
                level = tops[j] + 1
        tops[pos] = level
        pieces.append((pos, level))
    return _intern(graph, pieces)


def heap_from_pieces(graph: Supergraph, pieces) -> Heap:
    """Re-canonicalize an arbitrary collection of pieces (levels recomputed)."""
    ordered = sorted(pieces, key=lambda pl: (pl[1], pl[0]))
    return heap_from_word(graph, (p for p, _ in ordered))


def empty_heap(graph: Supergraph) -> Heap:
    return _intern(graph, ())


def single(graph: Supergraph, v) -> Heap:
    return _intern(graph, ((graph.index(v), 0),))


@functools.lru_cache(maxsize=1 << 18)
def _superpose_plain(left: Heap, right: Heap) -> Heap:
    graph = left.graph
    tops = [-1] * graph.n
    pieces = list(left.pieces)
    for p, lvl in pieces:
        if lvl > tops[p]:
            tops[p] = lvl
    zn = graph.zeta_neighbors
    for p, _ in sorted(right.pieces, key=lambda pl: (pl[1], pl[0])):
        level = 0
        for j in zn[p]:
            if tops[j] >= level:
                level = tops[j] + 1
        tops[p] = level
        pieces.append((p, level))
    return _intern(graph, pieces)


def superpose(left: Heap, right: Heap) -> Heap:
    """Let ``right`` fall on top of ``left``; the monoid product."""
    graph = left.graph
    if graph is not right.graph and graph != right.graph:
        raise InputError("superposition needs a common supergraph")
    base = plain(graph)
    out = _superpose_plain(_retag(base, left), _retag(base, right))
    return _retag(graph, out)


def _order_closure(heap: Heap) -> list[int]:
    """``above[i]`` = bitmask of pieces strictly above piece i in the heap order.

    Pieces are indexed by their rank in ``heap.pieces``.  The covering
    relation links lower to higher levels on equal-or-adjacent positions;
    the returned masks are its transitive closure.
    """
    ps = heap.pieces
    m = len(ps)
    zeta = heap.graph.zeta
    by_level = sorted(range(m), key=lambda i: ps[i][1], reverse=True)
    above = [0] * m
    for i in by_level:
        pi, li = ps[i]
        acc = 0
        for j in range(m):
            pj, lj = ps[j]
            if lj > li and (zeta[pi] >> pj) & 1:
                acc |= (1 << j) | above[j]
        above[i] = acc
    return above


def standard_word(heap: Heap) -> tuple[int, ...]:
    """Lexicographically greatest linearization, as a tuple of positions.

    Greedy: among the currently minimal pieces (no remaining piece below
    them) take the one with the greatest position.  Minimal pieces occupy
    pairwise non-adjacent distinct positions, so the choice is unique and
    the greedy word dominates every other linearization letter by letter.
    """
    if heap._st is not None:
        return heap._st
    ps = heap.pieces
    m = len(ps)
    above = _order_closure(heap)
    below = [0] * m
    for i in range(m):
        mask = above[i]
        while mask:
            b = mask & -mask
            below[b.bit_length() - 1] |= 1 << i
            mask ^= b
    remaining = (1 << m) - 1
    out = []
    while remaining:
        best = -1
        mask = remaining
        while mask:
            b = mask & -mask
            i = b.bit_length() - 1
            if not (below[i] & remaining) and (best < 0 or ps[i][0] > ps[best][0]):
                best = i
            mask ^= b
        out.append(ps[best][0])
        remaining ^= 1 << best
    heap._st = tuple(out)
    return heap._st


def compare(left: Heap, right: Heap) -> int:
    """-1 / 0 / +1 comparing standard words, proper prefixes first."""
    a, b = standard_word(left), standard_word(right)
    return -1 if a < b else (0 if a == b else 1)


def sort_key(heap: Heap) -> tuple[int, ...]:
    return standard_word(heap)


# ---------------------------------------------------------------------------
# Enumeration.

@functools.lru_cache(maxsize=None)
def _enumerate_plain(graph: Supergraph, k: tuple[int, ...]) -> tuple[Heap, ...]:
    if not any(k):
        return (empty_heap(graph),)
    found = set()
    for i in support(k):
        smaller = list(k)
        smaller[i] -= 1
        for h in _enumerate_plain(graph, tuple(smaller)):
            found.add(_superpose_plain(h, single(graph, i)))
    return tuple(sorted(found, key=sort_key))


def enumerate_heaps(graph: Supergraph, k) -> tuple[Heap, ...]:
    """All heaps of weight exactly ``k``, ascending in the heap order."""
    k = check_weight(graph, k)
    base = plain(graph)
    out = _enumerate_plain(base, k)
    if base is graph:
        return out
    return tuple(_retag(graph, h) for h in out)


def heaps_up_to(graph: Supergraph, cap) -> dict[tuple[int, ...], tuple[Heap, ...]]:
    """Heaps for every weight componentwise <= cap, keyed by weight."""
    cap = check_weight(graph, cap)
    return {w: enumerate_heaps(graph, w) for w in weights_up_to(cap)}


# ---------------------------------------------------------------------------
# Decompositions and conjugacy.

def decompositions(heap: Heap):
    """All splits ``heap = left o right`` with both parts nonempty.

    The right parts are exactly the nonempty proper up-closed subsets of
    the heap order; each part is re-canonicalized.
    """
    ps = heap.pieces
    m = len(ps)
    if m < 2:
        return
    above = _order_closure(heap)
    full = (1 << m) - 1
    for sub in range(1, full):
        filt = sub
        ok = True
        mask = sub
        while mask:
            b = mask & -mask
            i = b.bit_length() - 1
            if above[i] & ~filt:
                ok = False
                break
            mask ^= b
        if not ok:
            continue
        right = heap_from_pieces(heap.graph, [ps[i] for i in range(m) if sub >> i & 1])
        left = heap_from_pieces(heap.graph, [ps[i] for i in range(m) if not sub >> i & 1])
        yield left, right


def _min_rotations(heap: Heap):
    """Transposes that move one minimal piece to the top.

    Rotating single minimal pieces generates the whole conjugacy relation:
    a transpose along ``U o V`` is a chain of such rotations, one per piece
    of ``U``, and a minimal piece of ``U`` stays minimal while the rest of
    ``U`` is still below.
    """
    ps = heap.pieces
    graph = heap.graph
    for i, (p, lvl) in enumerate(ps):
        if lvl == 0:
            rest = heap_from_pieces(graph, ps[:i] + ps[i + 1:])
            yield superpose(rest, single(graph, p))


def conjugacy_class(heap: Heap) -> frozenset[Heap]:
    """Closure of the transposition relation, by minimal-piece rotations."""
    seen = {heap}
    stack = [heap]
    while stack:
        h = stack.pop()
        for h2 in _min_rotations(h):
            if h2 not in seen:
                seen.add(h2)
                stack.append(h2)
    return frozenset(seen)


def is_periodic(heap: Heap) -> bool:
    """True if the heap is a d-th power, d >= 2, of a smaller heap."""
    k = heap.weight()
    g = weight_gcd(k)
    base_graph = plain(heap.graph)
    target = _retag(base_graph, heap)
    for d in range(2, g + 1):
        if g % d:
            continue
        root_weight = divide_weight(k, d)
        for f in _enumerate_plain(base_graph, root_weight):
            power = f
            for _ in range(d - 1):
                power = _superpose_plain(power, f)
            if power == target:
                return True
    return False


def is_primitive(heap: Heap) -> bool:
    """No decomposition into two commuting nonempty parts.

    Equivalent to: connected support and not a proper power.  (Commuting
    traces are powers of pairwise independent roots; a connected support
    leaves a single root.)  The brute-force form of the definition is kept
    in the test suite as an oracle.
    """
    if not heap.pieces:
        return False
    return is_connected_support(heap.graph, heap.weight()) and not is_periodic(heap)


@functools.lru_cache(maxsize=None)
def _lyndon_plain(graph: Supergraph, k: tuple[int, ...]) -> tuple[Heap, ...]:
    """Lyndon heaps of weight k over a plain graph, ascending.

    One conjugacy sweep per weight class: each class is closed under
    minimal-piece rotations, its least element is the Lyndon candidate,
    and primitivity of that candidate decides the whole class.
    """
    if not any(k) or not is_connected_support(graph, k):
        return ()
    seen = set()
    out = []
    for h in _enumerate_plain(graph, k):
        if h in seen:
            continue
        cls = conjugacy_class(h)
        seen |= cls
        least = min(cls, key=sort_key)
        if is_primitive(least):
            out.append(least)
    return tuple(sorted(out, key=sort_key))


@functools.lru_cache(maxsize=None)
def _lyndon_set(graph: Supergraph, k: tuple[int, ...]) -> frozenset[Heap]:
    return frozenset(_lyndon_plain(graph, k))


def lyndon_heaps(graph: Supergraph, k) -> tuple[Heap, ...]:
    """All Lyndon heaps of weight ``k``, ascending."""
    k = check_weight(graph, k)
    base = plain(graph)
    out = _lyndon_plain(base, k)
    if base is graph:
        return out
    return tuple(_retag(graph, h) for h in out)


def is_lyndon(heap: Heap) -> bool:
    base = plain(heap.graph)
    twin = _retag(base, heap)
    return twin in _lyndon_set(base, twin.weight())


def super_lyndon_heaps(graph: Supergraph, k) -> tuple[Heap, ...]:
    """Lyndon heaps plus squares F o F of odd Lyndon heaps F."""
    k = check_weight(graph, k)
    out = list(lyndon_heaps(graph, k))
    if any(k) and all(x % 2 == 0 for x in k):
        for f in lyndon_heaps(graph, divide_weight(k, 2)):
            if f.parity() == 1:
                out.append(superpose(f, f))
    return tuple(sorted(out, key=sort_key))


def enumerate_super_lyndon_heaps(graph: Supergraph, k) -> tuple[Heap, ...]:
    return super_lyndon_heaps(graph, k)


def _square_root_if_odd_lyndon(heap: Heap) -> Heap | None:
    """F with heap = F o F and F odd and Lyndon, if such a root exists."""
    k = heap.weight()
    if not any(k) or any(x % 2 for x in k):
        return None
    for f in lyndon_heaps(heap.graph, divide_weight(k, 2)):
        if f.parity() == 1 and superpose(f, f) == heap:
            return f
    return None


class HeapClasses:
    """Classification flags for a nonempty heap."""

    __slots__ = ("pyramid", "admissible_pyramid", "elementary", "super_letter",
                 "primitive", "lyndon", "super_lyndon")

    def __init__(self, **flags):
        for name in self.__slots__:
            setattr(self, name, flags[name])

    def as_dict(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __repr__(self):
        on = [name for name in self.__slots__ if getattr(self, name)]
        return f"HeapClasses({', '.join(on)})"


def classify(heap: Heap) -> HeapClasses:
    """Flags per the definitions; admissibility is against the global order."""
    if not heap.pieces:
        raise InputError("cannot classify the empty heap")
    minimals = [p for p, lvl in heap.pieces if lvl == 0]
    pyramid = len(minimals) == 1
    base = minimals[0] if pyramid else None
    admissible = pyramid and base == 0
    elementary = pyramid and sum(1 for p, _ in heap.pieces if p == base) == 1
    super_letter = admissible and elementary
    primitive = is_primitive(heap)
    lyndon = primitive and is_lyndon(heap)
    super_lyndon = lyndon or _square_root_if_odd_lyndon(heap) is not None
    return HeapClasses(pyramid=pyramid, admissible_pyramid=admissible,
                       elementary=elementary, super_letter=super_letter,
                       primitive=primitive, lyndon=lyndon,
                       super_lyndon=super_lyndon)


# ---------------------------------------------------------------------------
# Standard factorization.

def word_standard_factorization(word: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a word at its lexicographically smallest proper suffix."""
    if len(word) < 2:
        raise InputError("cannot factor a single letter")
    best = len(word) - 1
    for s in range(1, len(word) - 1):
        if word[s:] < word[best:]:
            best = s
    return word[:best], word[best:]


def standard_factorization(heap: Heap) -> tuple[Heap, Heap]:
    """(F, N) with heap = F o N and N the least Lyndon right factor.

    For a square of an odd Lyndon heap the split is (F, F).  Otherwise the
    split is read off the standard word: the heap factorization with
    minimal Lyndon right factor corresponds to the word split at the
    smallest proper suffix.  The brute-force search over all two-part
    decompositions is kept as a test oracle.
    """
    if len(heap) < 2:
        raise InputError("cannot factor a heap with fewer than 2 pieces")
    root = _square_root_if_odd_lyndon(heap)
    if root is not None:
        return root, root
    if not is_lyndon(heap):
        raise InputError(f"{heap!r} is not a super Lyndon heap")
    u, v = word_standard_factorization(standard_word(heap))
    return heap_from_word(heap.graph, u), heap_from_word(heap.graph, v)


# ---------------------------------------------------------------------------
# Super-letter factorization (heaps built from pyramids over a base vertex).

def super_letter_factors(heap: Heap, base=None) -> tuple[Heap, ...]:
    """Unique factorization into super-letters over a base vertex.

    The base defaults to the least vertex of the graph; any other base is
    handled by working in the order that makes it least (factors are
    returned over the original graph).  The base pieces split the heap:
    the j-th factor consists of the pieces above the j-th base piece but
    not above the (j+1)-th.  Each factor must come out a super-letter,
    else the heap is not a product of super-letters and an InputError is
    raised.
    """
    graph = heap.graph
    b = 0 if base is None else graph.index(base)
    if b != 0:
        order = (b,) + tuple(j for j in range(graph.n) if j != b)
        work = graph.with_order(order)
        pos = {old: new for new, old in enumerate(order)}
        twin = heap_from_pieces(work, [(pos[p], lvl) for p, lvl in heap.pieces])
        return tuple(
            heap_from_pieces(graph, [(order[p], lvl) for p, lvl in f.pieces])
            for f in super_letter_factors(twin))
    ps = heap.pieces
    above = _order_closure(heap)
    bases = sorted((lvl, i) for i, (p, lvl) in enumerate(ps) if p == 0)
    if not bases:
        raise InputError("no piece on the base vertex")
    upsets = [(1 << i) | above[i] for _, i in bases]
    upsets.append(0)
    factors = []
    for j in range(len(bases)):
        mask = upsets[j] & ~upsets[j + 1]
        factor = heap_from_pieces(graph, [ps[i] for i in range(len(ps)) if mask >> i & 1])
        if not classify(factor).super_letter:
            raise InputError(f"{heap!r} is not a product of super-letters")
        factors.append(factor)
    product = factors[0]
    for f in factors[1:]:
        product = superpose(product, f)
    if product != heap:
        raise InputError(f"{heap!r} is not a product of super-letters")
    return tuple(factors)


# ---------------------------------------------------------------------------
# Independent word-level oracles, used for cross-checks (kept tiny and dumb
# on purpose; no heap machinery involved).

def word_class(graph: Supergraph, letters) -> frozenset[tuple[int, ...]]:
    """Commutation class of a word by closure of adjacent swaps."""
    start = tuple(graph.index(v) for v in letters)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a != b and not graph.has_edge(a, b):
                w2 = w[:i] + (b, a) + w[i + 2:]
                if w2 not in seen:
                    seen.add(w2)
                    stack.append(w2)
    return frozenset(seen)


def lyndon_words_of_content(k: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Free-monoid Lyndon words with letter i used k_i times (rotation test)."""
    letters = [i for i, c in enumerate(k) for _ in range(c)]
    out = []
    for w in set(itertools.permutations(letters)):
        if all(w < w[r:] + w[:r] for r in range(1, len(w))):
            out.append(w)
    return sorted(out)
