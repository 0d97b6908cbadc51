from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotforge.bracket import jones
from knotforge.diagram import BraidWord, braid_closure, load_knot, periodic_power_closure, torus_braid, unknot
from knotforge.periodicity import (
    crit_jones_symmetry,
    crit_jones_torus,
    crit_kauffman,
    crit_murasugi,
    crit_skein,
    crit_traczyk_yokota,
    crit_yokota_jones,
    jones_torus_scan,
    murasugi_scan,
    period_report,
    primes_upto,
    report_json,
    square_mod2,
)
from knotforge.polyring import LaurentPoly, PolyError, const
from knotforge.skein import alexander, burau_alexander, homflypt, kauffman_F

from test_diagram import braids

P = LaurentPoly.parse


@pytest.fixture(scope="module")
def v101():
    return jones(load_knot("10_101"))


@pytest.fixture(scope="module")
def k388():
    d = load_knot("11_388")
    return jones(d), homflypt(d)


@pytest.fixture(scope="module")
def f48():
    return kauffman_F(load_knot("10_48"))[1]


def torus(r, k):
    # T(r, k) drawn r-periodically: k strands, r full turns of the braid
    return braid_closure(torus_braid(k, r)) if k > 1 else unknot()


# Jones criteria ---------------------------------------------------------------------

def test_jones_symmetry_examples(v101, k388):
    assert crit_jones_symmetry(v101, 7).excluded
    assert crit_jones_symmetry(v101, 5).excluded
    for r in (3, 5, 7, 11, 13):
        assert not crit_jones_symmetry(k388[0], r).excluded


def test_excluded_report_carries_witness(v101):
    rep = crit_jones_symmetry(v101, 7)
    assert rep.witness is not None and not rep.witness.is_zero()


def test_jones_symmetry_links_need_linking_number():
    v = jones(braid_closure(BraidWord(2, (1, 1))))
    with pytest.raises(PolyError):
        crit_jones_symmetry(v, 3)
    assert not crit_jones_symmetry(v, 2, lk=1).excluded


def test_jones_torus_examples(v101, k388):
    assert not crit_jones_torus(jones(torus(5, 2)), 5, 2).excluded
    assert not crit_jones_torus(k388[0], 7, 5).excluded
    for k in range(1, 7):
        assert crit_jones_torus(v101, 7, k).excluded
    assert jones_torus_scan(v101, 7).excluded


def test_yokota_examples(v101):
    assert not crit_yokota_jones(jones(torus(3, 4)), 3, "even").excluded
    assert crit_yokota_jones(v101, 7, "odd").excluded
    assert crit_yokota_jones(v101, 7, "even").excluded
    # V = 1 fails the even-k congruence, so reports rely on the odd branch
    for r in (3, 5, 7):
        assert not crit_yokota_jones(const("t", 1), r, "odd").excluded
        assert crit_yokota_jones(const("t", 1), r, "even").excluded


# skein-type criteria ----------------------------------------------------------------

def test_skein_examples(k388):
    assert crit_skein(k388[1], 7).excluded
    assert crit_skein(k388[1], 11).excluded
    assert not crit_skein(homflypt(torus(5, 2)), 5).excluded


def test_kauffman_examples(f48):
    assert crit_kauffman(f48, 7).excluded
    assert not crit_kauffman(f48, 5).excluded
    assert not crit_kauffman(kauffman_F(torus(3, 2))[1], 3).excluded


def test_traczyk_examples(k388):
    p72 = homflypt(torus(7, 2))
    assert not crit_traczyk_yokota(p72, 7, 2).excluded
    for k in range(1, 7):
        assert crit_traczyk_yokota(k388[1], 7, k).excluded
    for r in (3, 5, 7):
        assert not crit_traczyk_yokota(const(("v", "z"), 1), r, 1).excluded


def test_traczyk_rejects_odd_z_powers():
    with pytest.raises(PolyError):
        crit_traczyk_yokota(P("v*z", ("v", "z")), 5, 1)


# Murasugi -------------------------------------------------------------------------

def test_murasugi_trefoil_over_unknot():
    dt = alexander(BraidWord(2, (1, 1, 1)))
    assert not crit_murasugi(dt, const("t", 1), 3, 1, 2).excluded


def test_murasugi_turks_head_over_quotient():
    dl = burau_alexander(BraidWord(3, (1, -2) * 5))
    dq = burau_alexander(BraidWord(3, (1, -2)))
    assert not crit_murasugi(dl, dq, 5, 1, 3).excluded


def test_murasugi_figure_eight_not_five_periodic():
    d41 = alexander(load_knot("4_1"))
    assert d41 == P("-t^-1 + 3 - t", ("t",))
    for lam in range(1, 6):
        assert crit_murasugi(d41, const("t", 1), 5, 1, lam).excluded
    assert murasugi_scan(d41, 5).excluded


# square mod 2 ---------------------------------------------------------------------

def test_square_mod2_examples():
    s = P("1 - t - t^-1", ("t",))
    assert square_mod2(s * s)
    assert square_mod2(const("t", 1))
    assert not square_mod2(P("t^-1 - 1 + t", ("t",)))


# reports --------------------------------------------------------------------------

def _excluders(rows, r):
    return {row.criterion for row in rows if row.r == r and row.excluded}


def test_report_10_101():
    rows = period_report("10_101", 7)
    for r in (5, 7):
        assert "jones-symmetry" in _excluders(rows, r)
    assert not any(row.verdict == "error" for row in rows)


def test_report_11_388():
    rows = period_report("11_388", 7)
    ex = _excluders(rows, 7)
    assert "skein" in ex
    assert not ex & {"jones-symmetry", "jones-torus", "yokota-jones"}


def test_report_10_48():
    rows = period_report("10_48", 7)
    ex = _excluders(rows, 7)
    assert "kauffman" in ex
    assert not ex & {"jones-symmetry", "yokota-jones", "skein"}


def test_report_criteria_subset_and_json():
    rows = period_report("10_48", 7, ["skein", "kauffman"])
    assert {row.criterion for row in rows} == {"skein", "kauffman"}
    assert _excluders(rows, 7) == {"kauffman"}
    data = json.loads(json.dumps(report_json(rows)))
    assert all({"criterion", "r", "verdict", "modulus"} <= set(row) for row in data)


def test_report_unknown_criterion():
    with pytest.raises(ValueError):
        period_report("3_1", 5, ["nope"])


def test_report_survives_failing_computation():
    # 17 crossings: fine for the bracket, past the two-variable limits
    rows = period_report(braid_closure(torus_braid(2, 17)), 3)
    assert any(row.verdict == "error" for row in rows)
    assert any(row.verdict != "error" for row in rows)


def test_primes():
    assert primes_upto(13) == [2, 3, 5, 7, 11, 13]


# properties -----------------------------------------------------------------------

def test_unknot_is_consistent_everywhere():
    rows = period_report("unknot", 13)
    assert rows and not any(row.excluded or row.verdict == "error" for row in rows)


three_strand_words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=3)


@settings(max_examples=50, deadline=None)
@given(three_strand_words, st.sampled_from([3, 5]))
def test_constructed_periodic_controls(word, r):
    b = BraidWord(3, tuple(word))
    d = periodic_power_closure(b, r)
    quot = braid_closure(b)
    v = jones(d)
    if d.num_components == 1:
        assert not crit_jones_symmetry(v, r).excluded
    else:
        assert not crit_jones_symmetry(v, r, lk=d.linking_number()).excluded
    assert not crit_skein(homflypt(d), r).excluded
    lam = b.strands
    dl, dq = alexander(d), alexander(quot)
    if not dl.is_zero() and not dq.is_zero():
        assert not crit_murasugi(dl, dq, r, 1, lam).excluded


@settings(max_examples=40, deadline=None)
@given(braids(max_strands=3, max_len=6).filter(lambda b: braid_closure(b).num_components == 1),
       st.sampled_from([3, 5, 7]))
def test_jones_symmetry_mirror_invariant(b, r):
    v = jones(braid_closure(b))
    vm = v.substitute({"t": (1, -1)})
    assert crit_jones_symmetry(v, r).excluded == crit_jones_symmetry(vm, r).excluded


@settings(max_examples=40, deadline=None)
@given(braids(max_strands=4, max_len=7).filter(lambda b: braid_closure(b).num_components == 1))
def test_period_three_jones_symmetry_is_vacuous_for_knots(b):
    assert not crit_jones_symmetry(jones(braid_closure(b)), 3).excluded
