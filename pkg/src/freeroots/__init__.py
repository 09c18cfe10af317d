"""Exact combinatorics of free root spaces over supergraphs.

Heap monoids, super Lyndon heaps, Lyndon-heap and left-normed bases of free
partially commutative Lie superalgebras, and free-root multiplicities via
k-chromatic polynomials and Moebius inversion.  Everything is exact
(integers and fractions), deterministic, and cross-checked by independent
oracles.
"""

from .errors import InputError, ConsistencyError
from .supergraph import (Supergraph, BkmSupermatrix, validate_supermatrix,
                         symmetrizer, quasi_dynkin, is_free_weight,
                         is_connected_support, join_graph, independent_sets,
                         graph_from_document, load_graph, parse_weight,
                         ht, support, weight_parity)
from .heaps import (Heap, heap_from_word, heap_from_pieces, superpose,
                    standard_word, compare, enumerate_heaps, heaps_up_to,
                    classify, standard_factorization,
                    enumerate_super_lyndon_heaps, lyndon_heaps,
                    super_lyndon_heaps, conjugacy_class, decompositions)
from .superlie import (LieMonomial, leaf, bracket, left_normed,
                       HeapPolynomial, bracket_expand, expand_monomial,
                       lambda_monomial, lyndon_heap_basis,
                       super_letter_alphabet, lln_basis, lambda_equals_e,
                       span_membership, GradedBasis, RankCertificate)
from .chromatic import (RationalPoly, chromatic_poly_simple,
                        k_chromatic_direct, k_chromatic_join,
                        k_chromatic_bond, bond_lattice, BondPartition,
                        binomial_poly, choose_q)
from .multiplicity import (mult_free_root, free_roots_up_to,
                           MultiplicityTable, MultRecord, verify_pbw,
                           verify_cartier_foata, moebius,
                           linear_coefficient_magnitude)

__version__ = "0.1.0"
