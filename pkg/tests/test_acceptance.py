"""Acceptance criteria 1-11.

Each test carries ``@pytest.mark.criterion(n, title)``; conftest prints one
line per criterion at the end of the run.  Criteria whose literal statement
cannot hold carry a strict xfail next to a passing corrected test.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotforge.bracket import jones, kauffman_bracket, kmove_bracket
from knotforge.diagram import (
    BraidWord,
    braid_closure,
    diagram_from_record,
    load_knot,
    load_table,
    parallel_sites,
    periodic_power_closure,
    torus_braid,
    unknot,
)
from knotforge.geomknots import (
    OCTAGON_FIGURE_EIGHT,
    BilliardSpec,
    LissajousSpec,
    billiard_prism_diagram,
    fagnano_trefoil_spec,
    is_alternating,
    lissajous_diagram,
)
from knotforge.kbsm import (
    AZ,
    annulus_bracket,
    e_basis,
    embed_eval,
    realizability_check,
    torus_solid_formula,
    traczyk_family,
)
from knotforge.periodicity import (
    crit_jones_symmetry,
    crit_jones_torus,
    crit_kauffman,
    crit_murasugi,
    crit_skein,
    crit_traczyk_yokota,
    crit_yokota_jones,
    primes_upto,
    square_mod2,
)
from knotforge.polyring import LaurentPoly, const, divides, mono, reduce_mod
from knotforge.skein import (
    alexander,
    burau_alexander,
    conversion_holds,
    dubrovnik_Fstar,
    homflypt,
    jones_from_homflypt,
    jones_torus_formula,
    kauffman_F,
    turks_head_alexander,
    turks_head_alexander_from_eigenvalues,
)

P = LaurentPoly.parse
T = ("t",)
VZ = ("v", "z")


def criterion(n, title):
    return pytest.mark.criterion(n, title)


def mirror_equal(v, w):
    return v == w or v == w.substitute({"t": (1, -1)})


# 1 ----------------------------------------------------------------------------------

V_10_101 = P("t^2 - 3*t^3 + 7*t^4 - 10*t^5 + 14*t^6 - 14*t^7 + 13*t^8 - 11*t^9"
             " + 7*t^10 - 4*t^11 + t^12", T)


@criterion(1, "Jones of 10_101")
def test_c1_jones_10_101_fast_and_exact():
    d = load_knot("10_101")
    start = time.perf_counter()
    v = jones(d)
    elapsed = time.perf_counter() - start
    assert v == V_10_101 and len(v) == 11
    assert elapsed < 10.0


@criterion(1, "Jones of 10_101")
def test_c1_printed_class_mod_7():
    printed = P("3*t^-3 + 5*t^-2 + 6*t + 4*t^2 + 4*t^3", T)
    assert reduce_mod(V_10_101, 7, 7) == reduce_mod(printed, 7, 7)


@criterion(1, "Jones of 10_101")
@pytest.mark.xfail(strict=True, reason="printed mod-5 class has t^3 where the reduction gives t^2")
def test_c1_printed_class_mod_5():
    printed = P("t^-1 + 2 + 3*t^3", T)
    assert reduce_mod(V_10_101, 5, 5) == reduce_mod(printed, 5, 5)


@criterion(1, "Jones of 10_101")
def test_c1_corrected_class_mod_5():
    assert reduce_mod(V_10_101, 5, 5) == reduce_mod(P("2 + 3*t^2 + t^4", T), 5, 5)
    # the printed class differs from the true one in a single term
    diff = reduce_mod(V_10_101 - P("t^-1 + 2 + 3*t^3", T), 5, 5)
    assert diff.lift() == P("3*t^2 + 2*t^3", T)


# 2 ----------------------------------------------------------------------------------

P_11_388 = P("3 - 5*v^-2 + 4*v^-4 - v^-6 + 4*z^2 - 10*v^-2*z^2 + 5*v^-4*z^2"
             " + z^4 - 6*v^-2*z^4 + v^-4*z^4 - v^-2*z^6", VZ)


@criterion(2, "11_388 skein exclusion")
def test_c2_11_388():
    d = load_knot("11_388")
    p = homflypt(d)
    assert p == P_11_388
    for r in (7, 11, 13):
        assert crit_skein(p, r).excluded
    v = jones(d)
    assert v == v.substitute({"t": (1, -1)})
    for r in primes_upto(31):
        assert not crit_jones_symmetry(v, r).excluded


# 3 ----------------------------------------------------------------------------------

@criterion(3, "10_48 Kauffman exclusion")
def test_c3_10_48():
    d = load_knot("10_48")
    f = kauffman_F(d)[1]
    diff = f - f.substitute({"a": (1, -1)})
    v1 = P("a^5 + 3*a^3 + 2*a - 2*a^-1 - 3*a^-3 - a^-5", ("a",))
    assert diff.coefficient_in("z", 1) == v1
    a, ainv = P("a", ("a",)), P("a^-1", ("a",))
    assert v1 == (a - ainv) * (a + ainv) ** 4
    assert crit_kauffman(f, 7).excluded
    assert not crit_kauffman(f, 5).excluded
    p = homflypt(d)
    assert p == p.substitute({"v": (1, -1), "z": (-1, 1)})


# 4 ----------------------------------------------------------------------------------

def _coprime_pairs(limit):
    from math import gcd
    return [(r, k) for r in range(2, limit + 1) for k in range(2, limit + 1)
            if r * k <= limit and gcd(r, k) == 1]


@criterion(4, "torus-knot Jones formula")
def test_c4_torus_formula_against_state_sum():
    start = time.perf_counter()
    pairs = _coprime_pairs(21)
    assert len(pairs) == 16
    for r, k in pairs:
        d = braid_closure(torus_braid(r, k))
        assert mirror_equal(jones(d), jones_torus_formula(r, k)), (r, k)
    assert time.perf_counter() - start < 60


# 5 ----------------------------------------------------------------------------------

def _periodic_torus(r, k):
    # T(r, k) drawn with visible Z_r symmetry: k strands, r turns
    return braid_closure(torus_braid(k, r)) if k > 1 else unknot()


def _controls(r, k):
    d = _periodic_torus(r, k)
    limit = max(d.n, 16)
    p = homflypt(d, limit=limit)
    v = jones_from_homflypt(p)
    reports = []
    if r > 2:
        reports += [crit_jones_symmetry(v, r), crit_jones_torus(v, r, k),
                    crit_yokota_jones(v, r, "odd" if k % 2 else "even"),
                    crit_traczyk_yokota(p, r, k, p_torus=p)]
    reports += [crit_skein(p, r)]
    reports += [crit_kauffman(kauffman_F(d, limit=limit)[1], r),
                crit_kauffman(dubrovnik_Fstar(d, limit=limit), r, "Fstar")]
    delta = alexander(d, limit=limit)
    reports += [crit_murasugi(delta, const("t", 1), r, 1, k)]
    return reports


POSITIVE_CONTROLS = [(r, k) for r in (2, 3, 5, 7) for k in range(1, 5) if k % r]


@criterion(5, "positive controls")
@pytest.mark.parametrize("r,k", POSITIVE_CONTROLS)
def test_c5_torus_knots_pass_every_criterion(r, k):
    for rep in _controls(r, k):
        assert not rep.excluded, (rep.criterion, rep.r, rep.k, rep.notes)


@criterion(5, "positive controls")
@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=3), st.sampled_from([3, 5]))
def test_c5_random_periodic_closures(word, r):
    b = BraidWord(3, tuple(word))
    d = periodic_power_closure(b, r)
    v = jones(d)
    lk = d.linking_number() if d.num_components > 1 else None
    assert not crit_jones_symmetry(v, r, lk=lk).excluded
    assert not crit_skein(homflypt(d), r).excluded
    dl, dq = alexander(d), alexander(braid_closure(b))
    if not dl.is_zero() and not dq.is_zero():
        assert not crit_murasugi(dl, dq, r, 1, 3).excluded


# 6 ----------------------------------------------------------------------------------

@criterion(6, "Murasugi congruence")
def test_c6_murasugi():
    trefoil = alexander(BraidWord(2, (1, 1, 1)))
    assert not crit_murasugi(trefoil, const("t", 1), 3, 1, 2).excluded
    eight = alexander(load_knot("4_1"))
    for lam in range(1, 6):
        assert crit_murasugi(eight, const("t", 1), 5, 1, lam).excluded


# 7 ----------------------------------------------------------------------------------

def _turks_head(m):
    return burau_alexander(BraidWord(3, (1, -2) * (2 * m + 1)))


@criterion(7, "Turks head Alexander")
@pytest.mark.xfail(strict=True, reason="printed quotient needs a square root of the eigenvalue and 2m in place of m")
def test_c7_printed_formula_matches_burau():
    for m in (1, 2, 3):
        assert turks_head_alexander(m) == _turks_head(m)


@criterion(7, "Turks head Alexander")
def test_c7_eigenvalue_formula_matches_burau():
    for m in (1, 2, 3):
        assert turks_head_alexander_from_eigenvalues(m) == _turks_head(m)
        assert square_mod2(_turks_head(m))
    assert not square_mod2(alexander(BraidWord(2, (1, 1, 1))))


# 8 ----------------------------------------------------------------------------------

@criterion(8, "k-move identity and F/F* conversion")
def test_c8_kmove_identity():
    rnd = random.Random(2024)
    pool = [(name, site) for name in ("3_1", "4_1", "8_18")
            for site in parallel_sites(load_knot(name))]
    chosen = rnd.sample(pool, 10)
    for name, site in chosen:
        d = load_knot(name)
        for k in range(1, 7):
            lhs, rhs = kmove_bracket(d, site, k)
            assert lhs == rhs, (name, site, k)


@criterion(8, "k-move identity and F/F* conversion")
def test_c8_conversion_on_bundled_knots():
    checked = 0
    for rec in load_table().values():
        d = diagram_from_record(rec)
        if d.n > 10:
            continue
        f = kauffman_F(d)[1]
        assert conversion_holds(f, dubrovnik_Fstar(d), d.num_components), rec["name"]
        checked += 1
    assert checked >= 10


# 9 ----------------------------------------------------------------------------------

@criterion(9, "geometric constructions")
def test_c9_triangle_billiard_trefoil():
    d = billiard_prism_diagram(fagnano_trefoil_spec())
    assert mirror_equal(jones(d), jones_torus_formula(3, 2))


@criterion(9, "geometric constructions")
def test_c9_pentagon_stride_two():
    d = billiard_prism_diagram(BilliardSpec(5, stride=2))
    assert mirror_equal(jones(d), jones_torus_formula(5, 2))


@criterion(9, "geometric constructions")
def test_c9_octagon_figure_eight():
    d = billiard_prism_diagram(OCTAGON_FIGURE_EIGHT)
    assert jones(d) == P("t^-2 - t^-1 + 1 - t + t^2", T)


@criterion(9, "geometric constructions")
def test_c9_alternating_lissajous():
    d = lissajous_diagram(LissajousSpec(2, 3, 7, Fraction(3, 14), Fraction(1, 14), Fraction(0)))
    assert is_alternating(d)
    assert alexander(d).at(-1) % 8 in (1, 7)


# 10 ---------------------------------------------------------------------------------

def _two_strand_closed_form(k):
    return torus_solid_formula(2, k)


@criterion(10, "solid-torus skein module")
@pytest.mark.xfail(strict=True, reason="closure of sigma_1^k on two strands only reaches e_0 and e_2")
def test_c10_sigma_power_matches_closed_form():
    for k in range(1, 9):
        assert annulus_bracket(BraidWord(2, (1,) * k)) == _two_strand_closed_form(k)


@criterion(10, "solid-torus skein module")
def test_c10_k_strand_torus_braid_matches_closed_form():
    # T(2, k) winding k times around the core: (s1 ... s_(k-1))^2 on k strands
    for k in range(1, 9):
        b = torus_braid(k, 2) if k > 1 else BraidWord(1, ())
        assert annulus_bracket(b) == _two_strand_closed_form(k)
    assert _two_strand_closed_form(4).to_e()[0] == P("2*A^-6", ("A",))


@criterion(10, "solid-torus skein module")
def test_c10_formula_delta_embedding_realizability():
    a = lambda e: mono(AZ, {"A": e})  # noqa: E731
    assert torus_solid_formula(2, 3) == (e_basis(3) - e_basis(1) * a(-8)) * a(4)
    for n in range(4):
        rep = traczyk_family(n)
        assert rep["delta_is_A3e3"] and rep["proportional"]
        assert rep["value"] == e_basis(3) * a(3 + 6 * n)
    b = BraidWord(2, (1, 1, 1))
    assert embed_eval(annulus_bracket(b)) == P("-A^2 - A^-2", ("A",)) * kauffman_bracket(braid_closure(b))
    assert [n for n in range(21) if realizability_check(n)["pass"]] == [0, 1, 3, 7, 15]


# 11 ---------------------------------------------------------------------------------

def _bundled():
    for name, rec in load_table().items():
        yield name, rec, diagram_from_record(rec)


@criterion(11, "global invariant suite")
def test_c11_global_suite():
    t = lambda e: mono("t", {"t": e})  # noqa: E731
    one = const("t", 1)
    cyclo = (t(1) - one) * (t(3) - one)
    for name, rec, d in _bundled():
        p = homflypt(d, limit=max(16, d.n))
        com = d.num_components
        if com == 1:
            v = jones(d)
            assert divides(cyclo, v - one), name
            assert divides(t(3) - one, v - one), name
            assert v == jones_from_homflypt(p), name
        cleared = p * mono(VZ, {"z": com - 1})
        base = P("v^-1 - v", VZ) ** (com - 1)
        assert divides(P("v^-2 - 2 + v^2 - z^2", VZ), cleared - base), name
        if "braid" in rec:
            b = BraidWord(rec["braid"]["strands"], tuple(rec["braid"]["word"]))
            assert alexander(d, limit=max(16, d.n)) == burau_alexander(b), name
