from __future__ import annotations

import cmath
import itertools
import math
import random
from fractions import Fraction

import pytest

from thompsonlinks.diagram import LinkDiagram, component_count, link_of, mirror
from thompsonlinks.gamma import gamma_graph
from thompsonlinks.invariants import (
    bracket,
    bracket_fn,
    bracket_skein,
    bracket_state_sum,
    chr_fn,
    chromatic,
    chromatic_from_tutte,
    col_count,
    colouring_matrix,
    colq_fn,
    is_trivial_certificate,
    smith_diagonal,
    tutte,
    tutte_fn,
    tutte_rank_nullity,
)
from thompsonlinks.polynomials import LOOP, A, LaurentPoly, TuttePoly
from thompsonlinks.thompson import (
    IDENTITY,
    TreePair,
    invert,
    pad_with_caret,
    random_element,
    tree_from_text,
    word_to_pair,
)

TREFOIL = 1 - A**4 + A**-8
HOPF = -(A**4) - A**-4
OMEGA2 = word_to_pair("x1 x0^-1 x1 x0^-1")
HOPF_WORD = word_to_pair("x0^-1 x1 x0^-1")


def q2_root() -> complex:
    return cmath.exp(3j * math.pi / 8)


# --- chromatic -----------------------------------------------------------------------


def test_chromatic_loop_and_trees():
    assert chromatic((1, [(0, 0)]), 5) == 0
    assert chromatic((1, []), 4) == 4
    path = (4, [(0, 1), (1, 2), (2, 3)])
    star = (4, [(0, 1), (0, 2), (0, 3)])
    for q in range(0, 6):
        assert chromatic(path, q) == q * (q - 1) ** 3
        assert chromatic(star, q) == q * (q - 1) ** 3


def test_chromatic_parallel_edges_collapse():
    assert chromatic((2, [(0, 1), (0, 1), (1, 0)]), 3) == 6


def test_chromatic_triangle_and_k4():
    assert chromatic((3, [(0, 1), (1, 2), (0, 2)]), 4) == 24
    k4 = (4, list(itertools.combinations(range(4), 2)))
    assert chromatic(k4, 4) == 24
    assert chromatic(k4, 3) == 0


def test_chromatic_example_pair():
    # a 4-cycle once the doubled edges collapse: (Q-1)^4 + (Q-1) = 84
    p = TreePair(tree_from_text("(l (l (l l)))"), tree_from_text("((l (l l)) l)"))
    assert chromatic(gamma_graph(p), 4) == 84
    assert chr_fn(p, 4, reduce=False) == Fraction(84, 27)


def test_chromatic_matches_tutte_identity():
    rng = random.Random(2)
    for _ in range(40):
        g = gamma_graph(random_element(7, rng))
        for q in (2, 3, 4, 5):
            assert chromatic(g, q) == chromatic_from_tutte(g, q)


# --- Tutte -----------------------------------------------------------------------------


def test_tutte_base_cases():
    assert tutte((2, [(0, 1)])) == TuttePoly({(1, 0): 1})
    assert tutte((1, [(0, 0)])) == TuttePoly({(0, 1): 1})
    assert tutte((1, [])) == TuttePoly({(0, 0): 1})
    assert tutte((3, [(0, 1), (1, 2), (0, 2)])) == TuttePoly({(2, 0): 1, (1, 0): 1, (0, 1): 1})
    assert tutte((2, [(0, 1), (0, 1)])) == TuttePoly({(1, 0): 1, (0, 1): 1})


def _all_multigraphs(n: int, m: int):
    slots = [(u, v) for u in range(n) for v in range(u, n)]
    return itertools.combinations_with_replacement(slots, m)


def test_tutte_matches_rank_nullity_exhaustively():
    for n in (1, 2, 3):
        for m in range(0, 5):
            for edges in _all_multigraphs(n, m):
                g = (n, list(edges))
                assert tutte(g) == tutte_rank_nullity(g), edges


def test_tutte_matches_rank_nullity_on_larger_graphs():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(2, 5)
        edges = [tuple(rng.randrange(n) for _ in range(2)) for _ in range(rng.randint(1, 7))]
        assert tutte((n, edges)) == tutte_rank_nullity((n, edges))


def test_tutte_connected_coefficients_nonnegative():
    rng = random.Random(6)
    for _ in range(30):
        t = tutte(gamma_graph(random_element(7, rng)))
        assert all(c > 0 for c in t.terms.values())


def test_tutte_padding_multiplies_by_x_plus_y():
    x_plus_y = TuttePoly({(1, 0): 1, (0, 1): 1})
    rng = random.Random(7)
    for _ in range(20):
        p = random_element(6, rng)
        i = rng.randrange(p.leaves)
        assert tutte(gamma_graph(pad_with_caret(p, i))) == tutte(gamma_graph(p)) * x_plus_y


# --- bracket ---------------------------------------------------------------------------


def test_bracket_unknot():
    assert bracket(LinkDiagram((), 1)) == LaurentPoly({0: 1})
    assert bracket(LinkDiagram((), 3)) == LOOP**2


def test_bracket_trefoil_and_hopf():
    assert bracket(link_of(OMEGA2)) == TREFOIL
    assert bracket(link_of(HOPF_WORD)) == HOPF


@pytest.mark.parametrize(
    "word, value",
    [
        ("x0", LaurentPoly({0: 1})),
        ("x0^-1", LaurentPoly({0: 1})),
        ("x1", LOOP),
        ("x1^-1", LOOP),
        ("x1 x0^-1", A**-6),
        ("x0^-1 x1", LaurentPoly({0: 1})),
    ],
)
def test_bracket_small_elements(word, value):
    assert bracket(link_of(word_to_pair(word))) == value


def test_bracket_three_evaluators_agree():
    rng = random.Random(9)
    for _ in range(60):
        d = link_of(random_element(6, rng), reduce=False)
        assert len(d.crossings) <= 10
        expected = bracket_state_sum(d)
        assert bracket(d) == expected
        assert bracket_skein(d) == expected


def test_bracket_cap():
    d = link_of(OMEGA2)
    with pytest.raises(ValueError):
        bracket(d, cap=4)
    with pytest.raises(ValueError):
        bracket_state_sum(d, cap=4)


def test_mirror_inverts_a():
    rng = random.Random(10)
    for _ in range(30):
        d = link_of(random_element(6, rng))
        assert bracket(mirror(d)) == bracket(d).substitute_inverse()


def test_trivial_certificate():
    assert is_trivial_certificate(LaurentPoly({0: 1}), 1) == (True, 0)
    assert is_trivial_certificate(A**-6, 1) == (True, -2)
    assert is_trivial_certificate(-(A**3) * LOOP, 2) == (True, 1)
    assert is_trivial_certificate(TREFOIL, 1)[0] is False
    assert is_trivial_certificate(HOPF, 2)[0] is False
    # right shape, wrong shift
    assert is_trivial_certificate(A**2, 1)[0] is False


# --- Fox colourings --------------------------------------------------------------------


def test_smith_diagonal():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert smith_diagonal([[3]]) == [3]


def test_colourings_basic():
    assert col_count(LinkDiagram((), 1), 3) == 3
    assert col_count(link_of(OMEGA2), 3) == 9
    assert col_count(link_of(OMEGA2), 5) == 5
    assert col_count(link_of(OMEGA2), 9) == 27
    assert col_count(link_of(HOPF_WORD), 3) == 3
    assert col_count(link_of(word_to_pair("x1")), 3) == 9
    with pytest.raises(ValueError):
        col_count(link_of(OMEGA2), 4)


def test_colouring_rows_sum_to_zero():
    d = link_of(OMEGA2)
    for row in colouring_matrix(d):
        assert sum(row) == 0


def test_colourings_by_enumeration():
    from thompsonlinks.oracles import colouring_partition_enumerated

    rng = random.Random(12)
    for _ in range(25):
        d = link_of(random_element(4, rng), reduce=False)
        for q in (1, 3, 5, 9):
            if q ** len(d.arcs) > 10**6:
                continue
            assert col_count(d, q) == colouring_partition_enumerated(d, q)


# --- normalized functions --------------------------------------------------------------


def test_normalized_identity_values():
    a = q2_root()
    assert chr_fn(IDENTITY, 5) == 5
    assert tutte_fn(IDENTITY, Fraction(2), Fraction(3)) == 1
    assert abs(bracket_fn(IDENTITY, a) - 1 / math.sqrt(2)) < 1e-12
    assert colq_fn(IDENTITY, 3) == 1


def test_normalized_omega_squared():
    assert colq_fn(OMEGA2, 3) == Fraction(1, 27)
    a = q2_root()
    assert abs(bracket_fn(OMEGA2, a) - 1j / 2**2.5) < 1e-12


def test_normalized_domain_errors():
    with pytest.raises(ValueError):
        chr_fn(IDENTITY, 1)
    with pytest.raises(ValueError):
        tutte_fn(IDENTITY, 1, -1)
    with pytest.raises(ValueError):
        bracket_fn(IDENTITY, cmath.exp(1j * math.pi / 4))
    with pytest.raises(ValueError):
        colq_fn(IDENTITY, 2)


def test_bracket_fn_inverse_is_mirror():
    a = q2_root()
    rng = random.Random(13)
    for _ in range(20):
        g = random_element(6, rng)
        assert abs(bracket_fn(invert(g), a) - bracket_fn(g, 1 / a)) < 1e-12


def test_component_count_matches_unlink_bracket():
    # padded identities are unlinks
    p = IDENTITY
    for i in range(4):
        p = pad_with_caret(p, 0)
        d = link_of(p, reduce=False)
        assert component_count(d) == i + 2
        assert bracket(d) == LOOP ** (i + 1)
