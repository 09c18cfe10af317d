import itertools
import math
import random

import pytest

from freeroots import InputError, Supergraph
from freeroots.heaps import (heap_from_word, heap_from_pieces, empty_heap,
                             single, superpose, standard_word, compare,
                             sort_key, enumerate_heaps, heaps_up_to, classify,
                             conjugacy_class, decompositions, is_primitive,
                             is_lyndon, lyndon_heaps, super_lyndon_heaps,
                             enumerate_super_lyndon_heaps,
                             standard_factorization, super_letter_factors,
                             word_class, lyndon_words_of_content)

THREE_VERTEX_EDGE_SETS = [(), ((0, 1),), ((0, 2),), ((1, 2),),
                          ((0, 1), (1, 2)), ((0, 1), (0, 2)), ((0, 2), (1, 2)),
                          ((0, 1), (1, 2), (0, 2))]


def three_vertex_graphs(psi=()):
    return [Supergraph(["a", "b", "c"], e, psi=psi) for e in THREE_VERTEX_EDGE_SETS]


def random_word(rng, graph, max_len=7):
    return [rng.randrange(graph.n) for _ in range(rng.randint(0, max_len))]


# ---------------------------------------------------------------------------
# Construction.

def test_single_letter(p4):
    h = heap_from_word(p4, "3")
    assert h.pieces == ((2, 0),)


def test_commuting_letters_same_heap(p4):
    assert heap_from_word(p4, "13") == heap_from_word(p4, "31")
    assert heap_from_word(p4, "13").pieces == ((0, 0), (2, 0))


def test_stacking_levels(p4_odd):
    h = heap_from_word(p4_odd, "123123")
    by_drop = sorted(h.pieces, key=lambda pl: (pl[1], pl[0]))
    assert set(h.pieces) == {(0, 0), (1, 1), (2, 2), (0, 2), (1, 3), (2, 4)}
    assert h.parity() == 0  # four odd letters
    assert len(by_drop) == 6


def test_unknown_vertex_rejected(p4):
    with pytest.raises(InputError):
        heap_from_word(p4, ["7"])


# ---------------------------------------------------------------------------
# Monoid structure.

def test_identity(p4):
    h = heap_from_word(p4, "2314")
    e = empty_heap(p4)
    assert superpose(h, e) == h and superpose(e, h) == h


def test_adjacent_letters_do_not_commute(edge36):
    assert superpose(single(edge36, "3"), single(edge36, "6")) != \
        superpose(single(edge36, "6"), single(edge36, "3"))


def test_morphism_and_associativity(p4, edge36, tree6_plain):
    rng = random.Random(1)
    for graph in (p4, edge36, tree6_plain):
        for _ in range(100):
            u = random_word(rng, graph)
            v = random_word(rng, graph)
            uv = heap_from_word(graph, u + v)
            assert uv == superpose(heap_from_word(graph, u), heap_from_word(graph, v))
        for _ in range(30):
            a, b, c = (heap_from_word(graph, random_word(rng, graph, 4)) for _ in range(3))
            assert superpose(superpose(a, b), c) == superpose(a, superpose(b, c))


def test_weight_and_parity_additive(p4_odd):
    rng = random.Random(2)
    for _ in range(50):
        a = heap_from_word(p4_odd, random_word(rng, p4_odd))
        b = heap_from_word(p4_odd, random_word(rng, p4_odd))
        ab = superpose(a, b)
        assert ab.weight() == tuple(x + y for x, y in zip(a.weight(), b.weight()))
        assert ab.parity() == (a.parity() + b.parity()) % 2


def test_mismatched_graphs_rejected(p4, edge36):
    with pytest.raises(InputError):
        superpose(single(p4, "1"), single(edge36, "3"))


# ---------------------------------------------------------------------------
# Standard words.

def test_standard_word_prefers_larger_minimal(p4):
    assert heap_from_word(p4, "13").word() == "31"


def test_standard_word_free_monoid_identity(edge36):
    for w in ("336636", "333666", "336366", "36", "63"):
        assert heap_from_word(edge36, w).word() == w


def test_standard_word_is_lex_max_of_class(p4, tree6_plain):
    rng = random.Random(3)
    for graph in (p4, tree6_plain):
        for _ in range(40):
            word = random_word(rng, graph)
            h = heap_from_word(graph, word)
            cls = word_class(graph, word)
            assert standard_word(h) == max(cls) if cls else ()


def test_word_roundtrip(p4, tree6_plain):
    rng = random.Random(4)
    for graph in (p4, tree6_plain):
        for _ in range(40):
            h = heap_from_word(graph, random_word(rng, graph))
            assert heap_from_word(graph, standard_word(h)) == h


def test_canonical_form_invariants(p4_odd):
    rng = random.Random(5)
    for _ in range(40):
        h = heap_from_word(p4_odd, random_word(rng, p4_odd))
        zeta = p4_odd.zeta
        for (p1, l1), (p2, l2) in itertools.combinations(h.pieces, 2):
            if zeta[p1] >> p2 & 1:
                assert l1 != l2  # separation on equal or adjacent positions
        occupied = {}
        for p, l in h.pieces:
            occupied.setdefault(l, []).append(p)
        for p, l in h.pieces:
            if l > 0:
                assert any(zeta[p] >> q & 1 for q in occupied.get(l - 1, []))
        assert heap_from_pieces(p4_odd, h.pieces) == h


# ---------------------------------------------------------------------------
# The total order.

def test_letter_order(edge36):
    h3 = heap_from_word(edge36, "3")
    h36 = heap_from_word(edge36, "36")
    h6 = heap_from_word(edge36, "6")
    assert compare(h3, h36) == -1
    assert compare(h36, h6) == -1
    assert compare(h6, h6) == 0
    assert compare(h6, h3) == 1


def test_left_factor_is_smaller(p4, edge36):
    rng = random.Random(6)
    for graph in (p4, edge36):
        for _ in range(60):
            e = heap_from_word(graph, random_word(rng, graph, 5))
            f = heap_from_word(graph, random_word(rng, graph, 4) or [0])
            if not e.pieces or not f.pieces:
                continue
            assert compare(e, superpose(e, f)) == -1


def test_order_on_letter_products_is_lexicographic(path6):
    """Products of super-letters compare like their letter sequences."""
    letters = [heap_from_word(path6, w) for w in ("3", "34", "345", "344")]
    seqs = []
    for r in (1, 2):
        seqs += [list(s) for s in itertools.product(letters, repeat=r)]
    seqs = [s for s in seqs if sum(len(l) for l in s) <= 5]
    key = lambda l: sort_key(l)
    for sa in seqs:
        for sb in seqs:
            prod_a, prod_b = sa[0], sb[0]
            for l in sa[1:]:
                prod_a = superpose(prod_a, l)
            for l in sb[1:]:
                prod_b = superpose(prod_b, l)
            lex = -1 if [key(l) for l in sa] < [key(l) for l in sb] else \
                (0 if [key(l) for l in sa] == [key(l) for l in sb] else 1)
            assert compare(prod_a, prod_b) == lex, (sa, sb)


def test_total_order_on_weight_class(tree6_plain):
    for k in ((0, 0, 2, 0, 0, 2), (1, 1, 1, 1, 0, 0)):
        hs = enumerate_heaps(tree6_plain, k)
        keys = [sort_key(h) for h in hs]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)  # trichotomy: distinct heaps compare apart


# ---------------------------------------------------------------------------
# Enumeration.

def test_edgeless_single_class():
    g = Supergraph(["a", "b", "c"])
    for k in ((1, 1, 1), (3, 2, 1), (0, 4, 0)):
        assert len(enumerate_heaps(g, k)) == 1


def test_complete_graph_free_monoid():
    g = Supergraph(["a", "b", "c"], [(0, 1), (0, 2), (1, 2)])
    for k in ((1, 1, 1), (2, 1, 0), (2, 2, 1)):
        expected = math.factorial(sum(k)) // math.prod(math.factorial(x) for x in k)
        assert len(enumerate_heaps(g, k)) == expected


def test_p4_count_matches_word_class_oracle(p4):
    k = (1, 1, 1, 1)
    words = set(itertools.permutations([0, 1, 2, 3]))
    classes = set()
    while words:
        w = words.pop()
        cls = word_class(p4, w)
        words -= cls
        classes.add(min(cls))
    assert len(enumerate_heaps(p4, k)) == len(classes)


def test_heaps_up_to_keys(p4):
    table = heaps_up_to(p4, (1, 1, 0, 0))
    assert set(table) == {(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)}


# ---------------------------------------------------------------------------
# Classification.

def test_single_piece_flags(p4):
    c = classify(single(p4, "1"))
    assert c.pyramid and c.admissible_pyramid and c.elementary and c.super_letter
    assert c.primitive and c.lyndon and c.super_lyndon
    c2 = classify(single(p4, "3"))
    assert c2.pyramid and c2.lyndon and not c2.super_letter  # not the least vertex


def test_square_of_letter(edge36):
    c = classify(heap_from_word(edge36, "33"))
    assert not c.primitive and not c.lyndon
    assert c.super_lyndon  # vertex 3 is odd here
    even = Supergraph(["3", "6"], [(0, 1)])
    c2 = classify(heap_from_word(even, "33"))
    assert not c2.super_lyndon


def test_classify_empty_rejected(p4):
    with pytest.raises(InputError):
        classify(empty_heap(p4))


def brute_primitive(heap):
    if not heap.pieces:
        return False
    return not any(superpose(v, u) == heap for u, v in decompositions(heap))


def brute_conjugacy_class(heap):
    seen = {heap}
    stack = [heap]
    while stack:
        h = stack.pop()
        for u, v in decompositions(h):
            t = superpose(v, u)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def test_primitive_matches_commuting_decomposition_definition():
    for graph in three_vertex_graphs():
        for k in itertools.product(range(3), repeat=3):
            if not 0 < sum(k) <= 5:
                continue
            for h in enumerate_heaps(graph, k):
                assert is_primitive(h) == brute_primitive(h), h


def test_conjugacy_rotations_reach_all_transposes():
    for graph in three_vertex_graphs():
        for k in itertools.product(range(3), repeat=3):
            if not 0 < sum(k) <= 5:
                continue
            for h in enumerate_heaps(graph, k):
                assert conjugacy_class(h) == frozenset(brute_conjugacy_class(h)), h


def test_lyndon_matches_brute_force():
    for graph in three_vertex_graphs():
        for k in itertools.product(range(3), repeat=3):
            if not 0 < sum(k) <= 5:
                continue
            for h in enumerate_heaps(graph, k):
                cls = brute_conjugacy_class(h)
                brute = brute_primitive(h) and all(sort_key(h) <= sort_key(o) for o in cls)
                assert is_lyndon(h) == brute, h


def test_super_lyndon_weight_33(tree6):
    heaps = enumerate_super_lyndon_heaps(tree6, (0, 0, 3, 0, 0, 3))
    assert [h.word() for h in heaps] == ["333666", "336366", "336636"]


def test_super_lyndon_path_weight(path6):
    heaps = enumerate_super_lyndon_heaps(path6, (0, 0, 2, 1, 2, 1))
    assert [h.word() for h in heaps] == ["334556", "334565"]


def test_super_lyndon_complete_graph_matches_word_count():
    g = Supergraph(["a", "b", "c"], [(0, 1), (0, 2), (1, 2)])
    for k in ((1, 1, 0), (2, 1, 0), (2, 2, 0), (1, 1, 1), (2, 2, 2)):
        assert len(super_lyndon_heaps(g, k)) == len(lyndon_words_of_content(k))
    godd = Supergraph(["a", "b", "c"], [(0, 1), (0, 2), (1, 2)], psi=["a"])
    for k in ((2, 2, 0), (2, 2, 2), (4, 0, 0)):
        half = tuple(x // 2 for x in k)
        squares = [u for u in lyndon_words_of_content(half)
                   if sum(1 for x in u if x == 0) % 2 == 1]
        expected = len(lyndon_words_of_content(k)) + len(squares)
        assert len(super_lyndon_heaps(godd, k)) == expected


def test_disconnected_weight_has_no_super_lyndon(p4):
    assert super_lyndon_heaps(p4, (1, 0, 1, 0)) == ()


# ---------------------------------------------------------------------------
# Standard factorization.

def test_factorizations_on_tree(tree6):
    expect = {"336636": ("3366", "36"), "333666": ("3", "33666"),
              "336366": ("3", "36366")}
    for h in enumerate_super_lyndon_heaps(tree6, (0, 0, 3, 0, 0, 3)):
        f, n = standard_factorization(h)
        assert (f.word(), n.word()) == expect[h.word()]


def test_factorization_chain(path6):
    h = heap_from_word(path6, "34565")
    f, n = standard_factorization(h)
    assert (f.word(), n.word()) == ("3", "4565")


def test_square_factorization(edge36):
    h = heap_from_word(edge36, "3636")
    f, n = standard_factorization(h)
    assert f == n and f.word() == "36"


def test_factorization_requires_super_lyndon(edge36):
    with pytest.raises(InputError):
        standard_factorization(heap_from_word(edge36, "63"))
    with pytest.raises(InputError):
        standard_factorization(single(edge36, "3"))


def brute_standard_factorization(heap):
    best = None
    for f, n in decompositions(heap):
        if is_lyndon(n) and (best is None or sort_key(n) < sort_key(best[1])):
            best = (f, n)
    return best


def test_factorization_matches_minimal_right_factor_search():
    for graph in three_vertex_graphs():
        for k in itertools.product(range(3), repeat=3):
            if not 2 <= sum(k) <= 5:
                continue
            for h in lyndon_heaps(graph, k):
                assert standard_factorization(h) == brute_standard_factorization(h), h


# ---------------------------------------------------------------------------
# Super-letter factorization.

def test_super_letter_factors_roundtrip(path6):
    h = heap_from_word(path6, "334565")
    factors = super_letter_factors(h, base="3")
    assert [f.word() for f in factors] == ["3", "34565"]


def test_super_letter_factors_unique_for_products(path6):
    rng = random.Random(8)
    letters = [heap_from_word(path6, w) for w in ("3", "34", "345", "344", "3456")]
    for _ in range(40):
        seq = [rng.choice(letters) for _ in range(rng.randint(1, 4))]
        prod = seq[0]
        for l in seq[1:]:
            prod = superpose(prod, l)
        assert list(super_letter_factors(prod, base="3")) == seq


def test_super_letter_factors_rejects_non_products(p4):
    with pytest.raises(InputError):
        super_letter_factors(heap_from_word(p4, "21"), base="1")
    with pytest.raises(InputError):
        super_letter_factors(heap_from_word(p4, "234"), base="1")


# ---------------------------------------------------------------------------
# Serialization.

def test_heap_json(p4_odd):
    h = heap_from_word(p4_odd, "1213")
    doc = h.to_json()
    levels = [lvl for _, lvl in doc["pieces"]]
    assert levels == sorted(levels)
    assert heap_from_pieces(p4_odd, [(p4_odd.index(p), l) for p, l in doc["pieces"]]) == h


def test_multicharacter_names_dot_join():
    g = Supergraph(["alpha", "beta"], [(0, 1)])
    assert heap_from_word(g, ["alpha", "beta"]).word() == "alpha.beta"
