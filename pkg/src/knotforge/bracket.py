"""Kauffman bracket by state sum, the Jones polynomial, and k-move checks."""

from __future__ import annotations

from fractions import Fraction

from .diagram import DiagramError, PlanarDiagram, as_diagram
from .polyring import LaurentPoly, const, exact_div, mono, reduce_mod_poly
from ._states import state_histogram

__all__ = [
    "BracketError",
    "CrossingLimitExceeded",
    "DEFAULT_LIMIT",
    "kauffman_bracket",
    "jones",
    "bracket_to_jones",
    "a_to_t",
    "delta",
    "kmove_bracket",
    "kmove_coefficient",
    "t2r_congruence",
]

DEFAULT_LIMIT = 20


class BracketError(ValueError):
    pass


class CrossingLimitExceeded(BracketError):
    pass


def delta() -> LaurentPoly:
    """The circle value ``-A^2 - A^-2``."""
    return mono("A", {"A": 2}, -1) + mono("A", {"A": -2}, -1)


def _delta_powers(top: int) -> list[LaurentPoly]:
    d = delta()
    out = [const("A", 1)]
    for _ in range(top):
        out.append(out[-1] * d)
    return out


def kauffman_bracket(d: PlanarDiagram, limit: int = DEFAULT_LIMIT) -> LaurentPoly:
    """``<D>`` in Z[A^+-1], normalised so the crossingless circle is 1."""
    d = as_diagram(d)
    if d.n > limit:
        raise CrossingLimitExceeded(
            f"{d.n} crossings exceeds the state-sum limit {limit}; use the skein backend")
    if d.n == 0:
        if d.loops == 0:
            raise BracketError("empty diagram")
        return _delta_powers(d.loops - 1)[-1]
    hist = state_histogram(d.crossings)
    top = max(c for _, c, _ in hist) + d.loops
    dp = _delta_powers(top)
    acc: dict = {}
    n = d.n
    for (a, circles, _), count in hist.items():
        term = dp[circles + d.loops - 1]
        shift = 4 * (2 * a - n)
        for (k,), c in term.raw_terms().items():
            key = (k + shift,)
            acc[key] = acc.get(key, 0) + c * count
    return LaurentPoly(("A",), acc)


def a_to_t(p: LaurentPoly) -> LaurentPoly:
    """Rewrite a polynomial in ``A`` with ``A = t^(-1/4)``."""
    if p.vars != ("A",):
        raise BracketError("expected a polynomial in A")
    raw = {}
    for (k,), c in p.raw_terms().items():
        if k % 4:
            raise BracketError("fractional power of A")
        raw[(-(k // 4),)] = c
    return LaurentPoly(("t",), raw, p.ring)


def bracket_to_jones(br: LaurentPoly, writhe: int, components: int) -> LaurentPoly:
    sign = -1 if writhe % 2 else 1
    f = mono("A", {"A": -3 * writhe}, sign) * br
    v = a_to_t(f)
    if components == 1:
        if not v.is_integral():
            raise BracketError("Jones polynomial of a knot has fractional exponents (convention bug)")
    else:
        for (e,) in v.terms():
            if (2 * e).denominator != 1:
                raise BracketError("Jones polynomial has quarter exponents (convention bug)")
    return v


def jones(d: PlanarDiagram, limit: int = DEFAULT_LIMIT) -> LaurentPoly:
    """Jones polynomial ``(-A^3)^(-w) <D>`` at ``A = t^(-1/4)``."""
    d = as_diagram(d)
    return bracket_to_jones(kauffman_bracket(d, limit), d.writhe, d.num_components)


def kmove_coefficient(k: int) -> LaurentPoly:
    """``A^(-3k+2) (A^(4k) - (-1)^k) / (A^4 + 1)``."""
    num = mono("A", {"A": 4 * k}) - const("A", (-1) ** k)
    q = exact_div(num, mono("A", {"A": 4}) + 1)
    return q.shift(-3 * k + 2)


def kmove_bracket(d0: PlanarDiagram, site, k: int, limit: int = DEFAULT_LIMIT):
    """Both sides of the k-move expansion of the bracket.

    ``site`` is ``(face, x, y)`` as accepted by :meth:`PlanarDiagram.kmove`.
    Returns ``(lhs, rhs)`` with ``lhs = <L_k>`` computed directly and
    ``rhs = A^k <L_0> + coeff_k <L_inf>``, where ``L_inf`` is the B-smoothing
    of the single twist in ``L_1``.
    """
    if k < 1:
        raise DiagramError("k must be at least 1")
    face, x, y = site
    lk = d0.kmove(x, y, k, face)
    l1 = d0.kmove(x, y, 1, face)
    new = _new_crossing(d0, l1)
    linf = l1.smooth(new, "B")
    lhs = kauffman_bracket(lk, limit)
    rhs = kauffman_bracket(d0, limit).shift(k) + kmove_coefficient(k) * kauffman_bracket(linf, limit)
    return lhs, rhs


def _new_crossing(d0: PlanarDiagram, l1: PlanarDiagram) -> int:
    # the inserted crossing is the one whose A-smoothing gives back d0
    br0 = kauffman_bracket(d0) if d0.n <= DEFAULT_LIMIT else None
    candidates = []
    for i in range(l1.n):
        s = l1.smooth(i, "A")
        if s.n == d0.n and s.num_components == d0.num_components:
            candidates.append(i)
    if br0 is not None:
        for i in candidates:
            if kauffman_bracket(l1.smooth(i, "A")) == br0:
                return i
    if candidates:
        return candidates[0]
    raise DiagramError("could not locate the inserted crossing")


def t2r_congruence(v_l: LaurentPoly, v_lp: LaurentPoly, r: int, window: int = 8):
    """Search ``j`` with ``V_L == t^(rj) V_L'`` mod ``(r, (t^(2r)-1)/(t+1))``.

    Returns the first ``j`` in ``[-window, window]`` that works, else ``None``.
    """
    t = "t"
    modulus = exact_div(mono(t, {t: 2 * r}) - 1, mono(t, {t: 1}) + 1)
    target = reduce_mod_poly(v_l, r, modulus, period=2 * r)
    for j in sorted(range(-window, window + 1), key=abs):
        cand = reduce_mod_poly(v_lp.shift(r * j), r, modulus, period=2 * r)
        if cand == target:
            return j
    return None
