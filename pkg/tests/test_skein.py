from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings

from knotforge.bracket import jones
from knotforge.diagram import BraidWord, braid_closure, load_knot, torus_braid, unknot, unlink
from knotforge.polyring import LaurentPoly, const, divides, mono
from knotforge.skein import (
    SkeinError,
    alexander,
    alexander_det,
    burau_alexander,
    canonical_alexander,
    conversion_holds,
    dubrovnik_Fstar,
    homflypt,
    jones_from_homflypt,
    jones_torus_formula,
    kauffman_F,
    turks_head_alexander,
    turks_head_alexander_from_eigenvalues,
)

from oracles import burau_alexander_sympy, jones_torus_closed_form, symmetrize_alexander, to_sympy
from test_diagram import braids

P = LaurentPoly.parse
VZ = ("v", "z")
AZ = ("a", "z")


def tpoly(text):
    return P(text, ("t",))


# HOMFLYPT ---------------------------------------------------------------------------

def test_homflypt_unknot_and_unlink():
    assert homflypt(unknot()) == const(VZ, 1)
    assert homflypt(unlink(2)) == P("v^-1*z^-1 - v*z^-1", VZ)


def test_homflypt_trefoil():
    assert homflypt(BraidWord(2, (1, 1, 1))) == P("2*v^2 + v^2*z^2 - v^4", VZ)


def test_homflypt_11_388():
    expected = P("3 - 5*v^-2 + 4*v^-4 - v^-6 + 4*z^2 - 10*v^-2*z^2 + 5*v^-4*z^2"
                 " + z^4 - 6*v^-2*z^4 + v^-4*z^4 - v^-2*z^6", VZ)
    assert homflypt(load_knot("11_388")) == expected


def test_homflypt_limit():
    with pytest.raises(SkeinError):
        homflypt(braid_closure(torus_braid(2, 9)), limit=8)


@settings(max_examples=40, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_homflypt_mirror(b):
    d = braid_closure(b)
    assert homflypt(d.mirror()) == homflypt(d).substitute({"v": (1, -1), "z": (-1, 1)})


@settings(max_examples=40, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_homflypt_z_structure(b):
    d = braid_closure(b)
    com = d.num_components
    cleared = homflypt(d) * mono(VZ, {"z": com - 1})
    assert all(e[1] >= 0 for e in cleared.terms())
    assert not cleared.coefficient_in("z", 0).is_zero()


@settings(max_examples=40, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_homflypt_unlink_congruence(b):
    d = braid_closure(b)
    com = d.num_components
    p = homflypt(d) * mono(VZ, {"z": com - 1})
    base = (P("v^-1 - v", VZ)) ** (com - 1)
    assert divides(P("v^-2 - 2 + v^2 - z^2", VZ), p - base)


@settings(max_examples=40, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_jones_is_homflypt_specialisation(b):
    d = braid_closure(b)
    assert jones_from_homflypt(homflypt(d)) == jones(d)


# Kauffman and Dubrovnik -------------------------------------------------------------

def test_kauffman_unknot_and_curl():
    assert kauffman_F(unknot()) == (const(AZ, 1), const(AZ, 1))
    lam, f = kauffman_F(BraidWord(2, (1,)))
    assert lam == P("a", AZ) and f == const(AZ, 1)


def test_kauffman_trefoil_known_value():
    # right-handed trefoil, tabulated value
    _, f = kauffman_F(BraidWord(2, (1, 1, 1)))
    assert f == P("-2*a^-2 - a^-4 + a^-5*z + a^-3*z + a^-4*z^2 + a^-2*z^2", AZ)


def test_kauffman_10_48_difference():
    _, f = kauffman_F(load_knot("10_48"))
    diff = f - f.substitute({"a": (1, -1)})
    assert diff.coefficient_in("z", 1) == P("a^5 + 3*a^3 + 2*a - 2*a^-1 - 3*a^-3 - a^-5", ("a",))


def test_dubrovnik_unknot_and_unlink():
    assert dubrovnik_Fstar(unknot()) == const(AZ, 1)
    assert dubrovnik_Fstar(unlink(2)) == P("a*z^-1 - a^-1*z^-1 + 1", AZ)


@settings(max_examples=30, deadline=None)
@given(braids(max_strands=3, max_len=6))
def test_kauffman_mirror(b):
    d = braid_closure(b)
    assert kauffman_F(d.mirror())[1] == kauffman_F(d)[1].substitute({"a": (1, -1)})


@settings(max_examples=30, deadline=None)
@given(braids(max_strands=3, max_len=6))
def test_conversion_identity(b):
    d = braid_closure(b)
    assert conversion_holds(kauffman_F(d)[1], dubrovnik_Fstar(d), d.num_components)


# Alexander --------------------------------------------------------------------------

def test_alexander_examples():
    assert alexander(unknot()) == const("t", 1)
    assert alexander(BraidWord(2, (1, 1, 1))) == tpoly("t^-1 - 1 + t")
    assert alexander(unlink(2)).is_zero()


def test_burau_examples():
    assert burau_alexander(BraidWord(2, (1, 1, 1))) == tpoly("t^-1 - 1 + t")
    assert burau_alexander(BraidWord(1, ())) == const("t", 1)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_turks_head_burau_frozen(m):
    # frozen from the sympy reduced-Burau oracle
    frozen = {
        1: "t^-2 - 4*t^-1 + 6 - 4*t + t^2",
        2: "t^-4 - 6*t^-3 + 15*t^-2 - 24*t^-1 + 29 - 24*t + 15*t^2 - 6*t^3 + t^4",
        3: "t^-6 - 8*t^-5 + 28*t^-4 - 62*t^-3 + 104*t^-2 - 140*t^-1 + 155 - 140*t"
           " + 104*t^2 - 62*t^3 + 28*t^4 - 8*t^5 + t^6",
    }
    word = (1, -2) * (2 * m + 1)
    oracle = symmetrize_alexander(burau_alexander_sympy(3, word))
    assert to_sympy(tpoly(frozen[m])) == oracle
    assert burau_alexander(BraidWord(3, word)) == tpoly(frozen[m])
    assert turks_head_alexander_from_eigenvalues(m) == tpoly(frozen[m])


def test_turks_head_printed_form():
    s = tpoly("1 - t - t^-1")
    assert turks_head_alexander(1) == canonical_alexander(s * s)


@settings(max_examples=60, deadline=None)
@given(braids(max_strands=4, max_len=7))
def test_alexander_routes_agree(b):
    assert alexander(braid_closure(b)) == burau_alexander(b)


@settings(max_examples=30, deadline=None)
@given(braids(max_strands=4, max_len=6).filter(lambda b: braid_closure(b).num_components == 1))
def test_burau_matches_sympy_oracle(b):
    assert to_sympy(burau_alexander(b)) == symmetrize_alexander(burau_alexander_sympy(b.strands, b.word))


@settings(max_examples=60, deadline=None)
@given(braids(max_strands=4, max_len=8).filter(lambda b: braid_closure(b).num_components == 1))
def test_alexander_determinant_route_agrees(b):
    d = braid_closure(b)
    assert alexander_det(d) == alexander(d) == burau_alexander(b)


def test_alexander_determinant_rejects_links():
    with pytest.raises(SkeinError):
        alexander_det(unlink(2))


# torus knots ------------------------------------------------------------------------

def test_jones_torus_formula_examples():
    assert jones_torus_formula(2, 3) == jones(braid_closure(torus_braid(2, 3)))
    assert jones_torus_formula(3, 4) == jones_torus_formula(4, 3)
    assert to_sympy(jones_torus_formula(5, 2)) == jones_torus_closed_form(5, 2)


def test_jones_torus_formula_rejects_links():
    with pytest.raises(SkeinError):
        jones_torus_formula(2, 4)
    with pytest.raises(SkeinError):
        jones_torus_formula(1, 3)


@pytest.mark.parametrize("r,k", [(2, 5), (3, 5), (5, 3), (4, 5), (2, 9)])
def test_jones_torus_formula_matches_sympy(r, k):
    assert to_sympy(jones_torus_formula(r, k)) == sp.expand(jones_torus_closed_form(r, k))
