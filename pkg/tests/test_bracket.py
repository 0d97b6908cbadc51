from __future__ import annotations

import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from knotforge.bracket import (
    CrossingLimitExceeded,
    jones,
    kauffman_bracket,
    kmove_bracket,
    kmove_coefficient,
    t2r_congruence,
)
from knotforge.diagram import (
    BraidWord,
    PlanarDiagram,
    braid_closure,
    coherent_on_face,
    diagram_edit,
    load_knot,
    parallel_sites,
    unknot,
    unlink,
)
from knotforge.polyring import LaurentPoly

from oracles import A, brute_bracket, brute_jones, to_sympy
from test_diagram import braids

P = LaurentPoly.parse


def test_unknot_bracket_is_one():
    assert kauffman_bracket(unknot()) == P("1", ("A",))


def test_two_circles():
    assert kauffman_bracket(unlink(2)) == P("-A^2 - A^-2", ("A",))


def test_trefoil_bracket_matches_enumeration():
    d = braid_closure(BraidWord(2, (1, 1, 1)))
    # frozen from the brute-force 8-state enumeration
    assert kauffman_bracket(d) == P("A^-7 - A^-3 - A^5", ("A",))
    assert to_sympy(kauffman_bracket(d)) == brute_bracket(d.to_pd())


def test_jones_examples():
    assert jones(unknot()) == P("1", ("t",))
    assert jones(load_knot("10_101")) == P(
        "t^2 - 3*t^3 + 7*t^4 - 10*t^5 + 14*t^6 - 14*t^7 + 13*t^8 - 11*t^9 + 7*t^10 - 4*t^11 + t^12",
        ("t",))
    assert jones(load_knot("11_388")) == P("t^-2 - t^-1 + 1 - t + t^2", ("t",))


def test_hopf_link_has_half_integer_exponents():
    v = jones(braid_closure(BraidWord(2, (1, 1))))
    assert v == P("-t^1/2 - t^5/2", ("t",))


def test_crossing_limit():
    d = braid_closure(BraidWord(2, (1,) * 7))
    with pytest.raises(CrossingLimitExceeded):
        kauffman_bracket(d, limit=6)


@settings(max_examples=60, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_bracket_matches_brute_force(b):
    d = braid_closure(b)
    assert to_sympy(kauffman_bracket(d)) == brute_bracket(d.to_pd(), d.loops)


@settings(max_examples=30, deadline=None)
@given(braids(max_strands=3, max_len=6).filter(lambda b: braid_closure(b).num_components == 1))
def test_jones_matches_brute_force(b):
    d = braid_closure(b)
    assert to_sympy(jones(d)) == brute_jones(d.to_pd(), d.writhe)


@settings(max_examples=50, deadline=None)
@given(braids(max_strands=4, max_len=7), st.randoms(use_true_random=False))
def test_bracket_independent_of_crossing_order(b, rnd):
    d = braid_closure(b)
    pairs = list(zip(d.crossings, d.signs))
    rnd.shuffle(pairs)
    shuffled = PlanarDiagram([x for x, _ in pairs], [s for _, s in pairs], d.loops)
    assert kauffman_bracket(shuffled) == kauffman_bracket(d)


@settings(max_examples=50, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_mirror_inverts_a(b):
    d = braid_closure(b)
    assert kauffman_bracket(d.mirror()) == kauffman_bracket(d).substitute({"A": (1, -1)})


# k-moves --------------------------------------------------------------------------

def test_kmove_coefficient_closed_form():
    for k in range(1, 7):
        expected = sp.expand(sp.cancel(A ** (-3 * k + 2) * (A ** (4 * k) - (-1) ** k) / (A**4 + 1)))
        assert to_sympy(kmove_coefficient(k)) == expected


def test_kmove_one_is_single_crossing_expansion():
    lhs, rhs = kmove_bracket(unlink(2), (None, "loop", "loop"), 1)
    assert lhs == rhs


def test_kmove_on_parallel_circles():
    for k in (2, 3):
        lhs, rhs = kmove_bracket(unlink(2), (None, "loop", "loop"), k)
        assert lhs == rhs
    lhs, _ = kmove_bracket(unlink(2), (None, "loop", "loop"), 2)
    assert lhs == kauffman_bracket(braid_closure(BraidWord(2, (1, 1))))


def test_kmove_identity_on_random_sites():
    rnd = random.Random(7)
    base = [braid_closure(BraidWord(3, (1, -2, 1))), braid_closure(BraidWord(2, (1, 1, 1))),
            braid_closure(BraidWord(3, (1, 2)))]
    for d0 in base:
        sites = parallel_sites(d0)
        for site in rnd.sample(sites, min(3, len(sites))):
            for k in (1, 2, 3):
                lhs, rhs = kmove_bracket(d0, site, k)
                assert lhs == rhs


def test_t2r_move_jones_congruence():
    d = braid_closure(BraidWord(3, (1, -2, 1, -2)))
    for r in (3,):
        hits = 0
        for fi, x, y in parallel_sites(d):
            if not coherent_on_face(d, fi, x, y):
                continue
            moved = diagram_edit(d, "t_k-move", (fi, x, y), k=2 * r)
            if moved.n > 12:
                continue
            assert t2r_congruence(jones(d), jones(moved), r) is not None
            hits += 1
        assert hits > 0
