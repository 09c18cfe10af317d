"""Free partially commutative Lie superalgebras in the heap basis.

Heaps index a basis of the enveloping algebra, so Lie elements are exact
integer combinations of heaps and every identity here is checked by
expanding.  The super bracket is ``[x, y] = x o y - (-1)^{p(x) p(y)} y o x``
extended bilinearly over parity-homogeneous operands.

Two bases are constructed for each graded piece: one by bracketing the
standard factorization of each super Lyndon heap, and one from super Lyndon
words over the super-letter alphabet of a chosen base vertex, with each
letter realized as a left-normed bracket.  Both come with a rank
certificate computed by fraction-free elimination; a rank drop raises, it
is never ignored.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ConsistencyError
from .supergraph import Supergraph, check_weight
from .heaps import (Heap, heap_from_word, superpose, single, standard_word,
                    sort_key, enumerate_heaps, super_lyndon_heaps, classify,
                    standard_factorization, super_letter_factors, heaps_up_to)


# ---------------------------------------------------------------------------
# Lie monomials: binary bracket trees over generator leaves.

class LieMonomial:
    """leaf(vertex name) or bracket(left, right); immutable."""

    __slots__ = ("name", "left", "right", "_hash")

    def __init__(self, name=None, left=None, right=None):
        if (name is None) == (left is None or right is None):
            raise InputError("a monomial is a leaf or a bracket, not both")
        self.name = name
        self.left = left
        self.right = right
        self._hash = hash((name, left, right))

    @property
    def is_leaf(self):
        return self.name is not None

    def __eq__(self, other):
        if not isinstance(other, LieMonomial):
            return NotImplemented
        return (self.name == other.name and self.left == other.left
                and self.right == other.right)

    def __hash__(self):
        return self._hash

    def leaves(self):
        if self.is_leaf:
            yield self.name
        else:
            yield from self.left.leaves()
            yield from self.right.leaves()

    def weight(self, graph: Supergraph) -> tuple[int, ...]:
        k = [0] * graph.n
        for name in self.leaves():
            k[graph.index(name)] += 1
        return tuple(k)

    def parity(self, graph: Supergraph) -> int:
        return sum(1 for name in self.leaves()
                   if graph.index(name) in graph.psi) & 1

    def __str__(self):
        if self.is_leaf:
            return self.name
        return f"[{self.left},{self.right}]"

    def __repr__(self):
        return f"LieMonomial({self})"


def leaf(name) -> LieMonomial:
    return LieMonomial(name=str(name))


def bracket(left: LieMonomial, right: LieMonomial) -> LieMonomial:
    return LieMonomial(left=left, right=right)


def left_normed(names) -> LieMonomial:
    """[[...[[a1,a2],a3]...],ar] over a sequence of vertex names."""
    names = list(names)
    if not names:
        raise InputError("empty left-normed word")
    out = leaf(names[0])
    for name in names[1:]:
        out = bracket(out, leaf(name))
    return out


# ---------------------------------------------------------------------------
# Heap polynomials.

class HeapPolynomial:
    """Exact integer combination of heaps over one supergraph."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph: Supergraph, terms=None):
        self.graph = graph
        self.terms = {}
        if terms:
            for heap, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if coeff:
                    self.terms[heap] = self.terms.get(heap, 0) + coeff
                    if not self.terms[heap]:
                        del self.terms[heap]

    @classmethod
    def generator(cls, graph: Supergraph, v) -> "HeapPolynomial":
        return cls(graph, {single(graph, v): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HeapPolynomial):
            return NotImplemented
        return self.graph == other.graph and self.terms == other.terms

    def __hash__(self):
        return hash((self.graph, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for heap, c in other.terms.items():
            out[heap] = out.get(heap, 0) + c
            if not out[heap]:
                del out[heap]
        return HeapPolynomial(self.graph, out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar: int):
        if not scalar:
            return HeapPolynomial(self.graph)
        return HeapPolynomial(self.graph, {h: c * scalar for h, c in self.terms.items()})

    __rmul__ = __mul__

    def concat(self, other: "HeapPolynomial") -> "HeapPolynomial":
        """Bilinear product in the enveloping algebra: u_E u_F = +-u_{EoF}."""
        out = {}
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                h, sign = signed_superpose(e, f)
                out[h] = out.get(h, 0) + a * b * sign
        return HeapPolynomial(self.graph, out)

    def parity(self) -> int | None:
        """Common parity of the supporting heaps; None for 0, error if mixed."""
        parities = {h.parity() for h in self.terms}
        if not parities:
            return None
        if len(parities) > 1:
            raise InputError("heap polynomial is not parity homogeneous")
        return parities.pop()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda hc: sort_key(hc[0]))

    def leading(self):
        """(least heap, coefficient) in the heap order."""
        if not self.terms:
            return None
        h = min(self.terms, key=sort_key)
        return h, self.terms[h]

    def coefficient(self, heap: Heap) -> int:
        return self.terms.get(heap, 0)

    def to_json(self):
        return [{"coeff": c, "heap": h.to_json()} for h, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{h.word()}" for h, c in self.sorted_terms())


def rewriting_sign(graph: Supergraph, word, target) -> int:
    """Sign picked up rewriting one linearization of a heap into another.

    Interchanging two odd letters costs -1; occurrences of equal letters
    never reorder, so matching the i-th occurrence of each letter is
    well defined and the sign is (-1)^(number of odd-odd pairs whose
    relative order differs).
    """
    psi = graph.psi
    odd_positions = [i for i, v in enumerate(word) if v in psi]
    if len(odd_positions) < 2:
        return 1
    seen: dict[int, int] = {}
    where: dict[tuple[int, int], int] = {}
    for pos, v in enumerate(target):
        n = seen.get(v, 0)
        where[(v, n)] = pos
        seen[v] = n + 1
    seen.clear()
    mapped = []
    for i in odd_positions:
        v = word[i]
        n = seen.get(v, 0)
        mapped.append(where[(v, n)])
        seen[v] = n + 1
    inversions = 0
    for a in range(len(mapped)):
        for b in range(a + 1, len(mapped)):
            if mapped[a] > mapped[b]:
                inversions += 1
    return -1 if inversions & 1 else 1


@functools.lru_cache(maxsize=1 << 18)
def signed_superpose(e: Heap, f: Heap) -> tuple[Heap, int]:
    """Product of the basis elements indexed by e and f.

    The basis element of a heap is the image of its standard word, so the
    product is the image of the concatenation: the heap e o f together
    with the sign of rewriting st(e) st(f) into st(e o f).
    """
    h = superpose(e, f)
    graph = e.graph
    if not graph.psi:
        return h, 1
    word = standard_word(e) + standard_word(f)
    return h, rewriting_sign(graph, word, standard_word(h))


def bracket_expand(p: HeapPolynomial, q: HeapPolynomial) -> HeapPolynomial:
    """Super bracket x o y - (-1)^{p(x)p(y)} y o x of homogeneous operands."""
    pp, pq = p.parity(), q.parity()
    if not p or not q:
        return HeapPolynomial(p.graph)
    sign = 1 if (pp and pq) else -1
    return p.concat(q) + q.concat(p) * sign


def expand_monomial(m: LieMonomial, graph: Supergraph) -> HeapPolynomial:
    """Integer heap expansion of a bracket tree."""
    if m.is_leaf:
        return HeapPolynomial.generator(graph, m.name)
    return bracket_expand(expand_monomial(m.left, graph),
                          expand_monomial(m.right, graph))


# ---------------------------------------------------------------------------
# Exact linear algebra (fraction-free rank; rational solve).

def integer_rank(rows: list[list[int]]) -> tuple[int, list[int]]:
    """Rank of an integer matrix by Bareiss elimination; also pivot columns."""
    if not rows:
        return 0, []
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
    return r, pivots


def solve_exact(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction]:
    """Coefficients c with sum c_j * columns[j] = target, or raise.

    Gaussian elimination over exact rationals; raises ConsistencyError if
    the system is unsolvable and InputError if the solution is not unique.
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            raise ConsistencyError("inconsistent linear system")
    if len(pivots) < ncols:
        raise InputError("solution is not unique (rank-deficient basis)")
    out = [Fraction(0)] * ncols
    for row, c in enumerate(pivots):
        out[c] = aug[row][ncols]
    return out


@dataclass(frozen=True)
class RankCertificate:
    rows: int
    cols: int
    rank: int
    pivot_columns: tuple[int, ...]
    method: str = "fraction-free elimination"

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "rank": self.rank,
                "pivot_columns": list(self.pivot_columns), "method": self.method}


def _expansion_matrix(graph: Supergraph, k, expansions) -> RankCertificate:
    """Full-row-rank certificate of expansions against the weight-k heap basis."""
    heaps = enumerate_heaps(graph, tuple(k))
    col = {h: i for i, h in enumerate(heaps)}
    rows = []
    for poly in expansions:
        row = [0] * len(heaps)
        for h, c in poly.terms.items():
            row[col[h]] = c
        rows.append(row)
    rank, pivots = integer_rank(rows)
    cert = RankCertificate(len(rows), len(heaps), rank, tuple(pivots))
    if rank != len(rows):
        raise ConsistencyError(
            f"expansion matrix of weight {tuple(k)} has rank {rank} < {len(rows)}")
    return cert


# ---------------------------------------------------------------------------
# The Lyndon-heaps basis.

@functools.lru_cache(maxsize=None)
def lambda_monomial(heap: Heap) -> LieMonomial:
    """Bracket tree from the recursive standard factorization."""
    if len(heap) == 1:
        return leaf(heap.graph.names[heap.pieces[0][0]])
    f, n = standard_factorization(heap)
    return bracket(lambda_monomial(f), lambda_monomial(n))


@functools.lru_cache(maxsize=None)
def _expand_lambda(heap: Heap) -> HeapPolynomial:
    if len(heap) == 1:
        return HeapPolynomial(heap.graph, {heap: 1})
    f, n = standard_factorization(heap)
    return bracket_expand(_expand_lambda(f), _expand_lambda(n))


@dataclass(frozen=True)
class BasisElement:
    heap: Heap
    monomial: LieMonomial
    expansion: HeapPolynomial
    letters: tuple[Heap, ...] | None = None

    def word(self) -> str:
        return self.heap.word()


@dataclass(frozen=True)
class GradedBasis:
    graph: Supergraph
    weight: tuple[int, ...]
    elements: tuple[BasisElement, ...]
    certificate: RankCertificate

    def __len__(self):
        return len(self.elements)

    def monomial_strings(self) -> list[str]:
        return [str(e.monomial) for e in self.elements]

    def to_json(self):
        return {
            "weight": list(self.weight),
            "dimension": len(self.elements),
            "elements": [{
                "word": e.word(),
                "monomial": str(e.monomial),
                **({"letters": [l.word() for l in e.letters]} if e.letters else {}),
                "expansion": e.expansion.to_json(),
            } for e in self.elements],
            "certificate": self.certificate.to_json(),
        }


def lyndon_heap_basis(graph: Supergraph, k) -> GradedBasis:
    """One bracket monomial per super Lyndon heap of weight k, rank-certified."""
    k = check_weight(graph, k)
    elements = []
    for heap in super_lyndon_heaps(graph, k):
        elements.append(BasisElement(heap, lambda_monomial(heap), _expand_lambda(heap)))
    cert = _expansion_matrix(graph, k, [e.expansion for e in elements])
    return GradedBasis(graph, k, tuple(elements), cert)


# ---------------------------------------------------------------------------
# Super-letter alphabets and the left-normed (LLN) basis.

def _base_first_order(graph: Supergraph, base) -> tuple[Supergraph, int]:
    """Reorder so the chosen base vertex is least; relative order kept."""
    i = graph.index(base)
    order = (i,) + tuple(j for j in range(graph.n) if j != i)
    return graph.with_order(order), i


def super_letter_alphabet(graph: Supergraph, base, weight_cap) -> tuple[Heap, ...]:
    """All super-letters with the given base, weight <= cap, ascending.

    Heaps are built over the reordered graph in which ``base`` is the least
    vertex (names are unchanged, so words read naturally).
    """
    weight_cap = check_weight(graph, weight_cap)
    work, i = _base_first_order(graph, base)
    cap = (weight_cap[i],) + tuple(weight_cap[j] for j in range(graph.n) if j != i)
    if cap[0] < 1:
        cap = (1,) + cap[1:]
    letters = []
    for w, hs in heaps_up_to(work, cap).items():
        if w[0] != 1:
            continue  # a super-letter uses its base exactly once
        for h in hs:
            if h.pieces and classify(h).super_letter:
                letters.append(h)
    return tuple(sorted(letters, key=sort_key))


def _letter_word_factorization(letters: tuple[Heap, ...]):
    """Standard factorization of a word over the super-letter alphabet."""
    if len(letters) < 2:
        raise InputError("cannot factor a single letter")
    keys = tuple(sort_key(l) for l in letters)
    best = len(letters) - 1
    for s in range(1, len(letters) - 1):
        if keys[s:] < keys[best:]:
            best = s
    return letters[:best], letters[best:]


def _is_letter_lyndon(letters: tuple[Heap, ...]) -> bool:
    keys = tuple(sort_key(l) for l in letters)
    return all(keys < keys[r:] + keys[:r] for r in range(1, len(keys)))


def _is_letter_super_lyndon(letters: tuple[Heap, ...]) -> bool:
    if _is_letter_lyndon(letters):
        return True
    half = len(letters) // 2
    if len(letters) % 2 == 0 and letters[:half] == letters[half:]:
        u = letters[:half]
        return _is_letter_lyndon(u) and sum(l.parity() for l in u) % 2 == 1
    return False


def _letter_tree(letters: tuple[Heap, ...]) -> LieMonomial:
    """Bracket tree of a super Lyndon letter word; leaves are left-normed."""
    if len(letters) == 1:
        return left_normed(letters[0].graph.names[p] for p in standard_word(letters[0]))
    half = len(letters) // 2
    if (len(letters) % 2 == 0 and letters[:half] == letters[half:]
            and sum(l.parity() for l in letters[:half]) % 2 == 1
            and _is_letter_lyndon(letters[:half])):
        u, v = letters[:half], letters[half:]
    else:
        u, v = _letter_word_factorization(letters)
    return bracket(_letter_tree(u), _letter_tree(v))


def lln_basis(graph: Supergraph, k, base) -> GradedBasis:
    """Basis from super Lyndon words over the super-letter alphabet of ``base``.

    Each word is the unique super-letter factorization of a super Lyndon
    heap of weight k (computed in the order that makes ``base`` least);
    its bracket tree follows the word's standard factorization and each
    letter becomes the left-normed bracket of its standard word.
    """
    k = check_weight(graph, k)
    work, i = _base_first_order(graph, base)
    if k[i] < 1:
        raise InputError(f"base vertex {graph.names[i]!r} is not in the support")
    wk = (k[i],) + tuple(k[j] for j in range(graph.n) if j != i)
    elements = []
    for heap in super_lyndon_heaps(work, wk):
        letters = super_letter_factors(heap)
        if not _is_letter_super_lyndon(letters):
            raise ConsistencyError(
                f"{heap!r} factors into super-letters but the word is not super Lyndon")
        monomial = _letter_tree(letters)
        elements.append(BasisElement(heap, monomial,
                                     expand_monomial(monomial, work), letters))
    cert = _expansion_matrix(work, wk, [e.expansion for e in elements])
    return GradedBasis(work, wk, tuple(elements), cert)


def lambda_equals_e(heap: Heap) -> bool:
    """Whether a super-letter's factorization tree is its left-normed tree.

    True exactly when the standard word a1...ar satisfies
    a1 < ar <= a(r-1) <= ... <= a2; then the two expansions coincide.
    (When false the trees differ but the expansions can still collide via
    vanishing brackets of commuting pairs.)  The heap may live over any
    order; its base is made least internally.
    """
    if not heap.pieces:
        raise InputError("empty heap")
    minimals = [p for p, lvl in heap.pieces if lvl == 0]
    base = heap.graph.names[minimals[0]] if len(minimals) == 1 else None
    if base is None:
        raise InputError(f"{heap!r} is not a super-letter")
    work, _ = _base_first_order(heap.graph, base)
    h = heap_from_word(work, (heap.graph.names[p] for p in standard_word(heap)))
    if not classify(h).super_letter:
        raise InputError(f"{heap!r} is not a super-letter")
    w = standard_word(h)
    r = len(w)
    if r <= 2:
        return True
    if not w[0] < w[r - 1]:
        return False
    return all(w[j] >= w[j + 1] for j in range(1, r - 1))


def span_membership(graph: Supergraph, letters, basis: GradedBasis) -> list[Fraction]:
    """Exact coordinates of the left-normed word in a rank-certified basis."""
    word = [graph.index(v) for v in letters]
    target_graph = basis.graph
    k = [0] * graph.n
    for v in word:
        k[v] += 1
    kk = tuple(k)
    names = [graph.names[v] for v in word]
    poly = expand_monomial(left_normed(names), target_graph)
    wk = tuple(basis.weight)
    if heap_from_word(target_graph, names).weight() != wk:
        raise InputError(f"word weight {kk} does not match basis weight")
    heaps = enumerate_heaps(target_graph, wk)
    idx = {h: i for i, h in enumerate(heaps)}
    target = [Fraction(0)] * len(heaps)
    for h, c in poly.terms.items():
        target[idx[h]] = Fraction(c)
    columns = []
    for e in basis.elements:
        colv = [Fraction(0)] * len(heaps)
        for h, c in e.expansion.terms.items():
            colv[idx[h]] = Fraction(c)
        columns.append(colv)
    return solve_exact(columns, target)
