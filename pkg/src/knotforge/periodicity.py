"""Periodicity criteria as congruence tests on knot polynomials.

Each criterion takes precomputed invariants and returns a
:class:`CriterionReport`.  ``excluded`` means the congruence fails, so the
link cannot be ``r``-periodic (with the stated axis linking number);
``consistent`` proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import (
    LaurentPoly,
    PolyError,
    exact_div,
    in_ideal_kauffman,
    in_ideal_skein,
    mono,
    reduce_mod,
    reduce_mod_poly,
)

__all__ = [
    "CriterionReport",
    "crit_jones_symmetry",
    "crit_jones_torus",
    "jones_torus_scan",
    "crit_yokota_jones",
    "crit_skein",
    "crit_kauffman",
    "crit_traczyk_yokota",
    "torus_ratios",
    "crit_murasugi",
    "murasugi_scan",
    "square_mod2",
    "period_report",
    "report_json",
    "primes_upto",
]

CONSISTENT = "consistent"
EXCLUDED = "excluded"


@dataclass
class CriterionReport:
    criterion: str
    r: int
    verdict: str
    k: int | None = None
    lam: int | None = None
    witness: LaurentPoly | None = None
    modulus: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def excluded(self) -> bool:
        return self.verdict == EXCLUDED

    def to_json(self) -> dict:
        out: dict = {"criterion": self.criterion, "r": self.r}
        if self.k is not None:
            out["k"] = self.k
        if self.lam is not None:
            out["lambda"] = self.lam
        out["verdict"] = self.verdict
        if self.witness is not None and not self.witness.is_zero():
            out["witness"] = str(self.witness)
        if self.modulus:
            out["modulus"] = self.modulus
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _verdict(ok: bool) -> str:
    return CONSISTENT if ok else EXCLUDED


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def _t(e=1, c=1) -> LaurentPoly:
    return mono("t", {"t": e}, c)


def _inverse_t(p: LaurentPoly) -> LaurentPoly:
    return p.substitute({p.vars[0]: (1, -1)})


# Jones-polynomial criteria ---------------------------------------------------

def _hat(v: LaurentPoly, lk: int | None) -> LaurentPoly:
    if v.is_integral():
        return v
    if lk is None:
        raise PolyError("half-integer exponents need the linking number")
    return v.shift(Fraction(-3 * lk, 2))


def crit_jones_symmetry(v: LaurentPoly, r: int, lk: int | None = None) -> CriterionReport:
    """``V(t) == V(t^-1)`` mod ``(r, t^r - 1)``; links use ``t^(-3 lk/2) V``.

    If the normalised polynomial still has half-integer exponents the
    comparison is done in ``s = t^(1/2)``, i.e. mod ``(r, s^(2r) - 1)``.
    """
    h = _hat(v, lk)
    diff = h - _inverse_t(h)
    if diff.is_integral():
        diff = reduce_mod(diff, r, r)
        mod = f"({r}, t^{r} - 1)"
    else:
        doubled = LaurentPoly.from_terms("t", {2 * e[0]: c for e, c in diff.terms().items()})
        diff = reduce_mod(doubled, r, 2 * r)
        mod = f"({r}, s^{2 * r} - 1), s = t^1/2"
    return CriterionReport("jones-symmetry", r, _verdict(diff.is_zero()),
                           witness=diff, modulus=mod)


def _odd_torus_target(k: int) -> LaurentPoly:
    # t^((k-1)/2) - t^((k-3)/2) + ... + t^((1-k)/2)
    acc = LaurentPoly.zero("t")
    for j in range(k):
        acc = acc + _t(Fraction(k - 1, 2) - j, (-1) ** j)
    return acc


def crit_jones_torus(v: LaurentPoly, r: int, k: int) -> CriterionReport:
    """Jones congruence for a knot with axis linking number ``k``.

    Odd ``k``: ``V == sum_j (-1)^j t^((k-1)/2 - j)``.  Even ``k``: both sides of
    ``t^(r/2) V == (t^(k/2) + t^(-k/2) - 2s + s (t^r + 1)) / (t^(1/2) + t^(-1/2))``
    with ``s = (-1)^(k/2)`` are multiplied by ``t^(1/2) + t^(-1/2)``.
    Everything is compared mod ``(r, t^r - 1)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2:
        lhs, rhs = v, _odd_torus_target(k)
    else:
        s = (-1) ** (k // 2)
        lhs = v.shift(Fraction(r, 2)) * (_t(Fraction(1, 2)) + _t(Fraction(-1, 2)))
        rhs = _t(k // 2) + _t(-(k // 2)) - 2 * s + (_t(r) + 1) * s
    diff = reduce_mod(lhs - rhs, r, r)
    return CriterionReport("jones-torus", r, _verdict(diff.is_zero()), k=k,
                           witness=diff, modulus=f"({r}, t^{r} - 1)")


def jones_torus_scan(v: LaurentPoly, r: int) -> CriterionReport:
    """Run :func:`crit_jones_torus` for ``k = 1 .. r-1``; excluded iff all are."""
    alive = [k for k in range(1, r) if not crit_jones_torus(v, r, k).excluded]
    rep = CriterionReport("jones-torus", r, _verdict(bool(alive)), modulus=f"({r}, t^{r} - 1)")
    rep.notes.append("k not excluded: " + (",".join(map(str, alive)) or "none"))
    return rep


def crit_yokota_jones(v: LaurentPoly, r: int, k_parity: str) -> CriterionReport:
    """Odd ``k``: ``V == V(t^-1)`` mod ``(r, t^(2r) - 1)``.
    Even ``k``: ``V == t^r V(t^-1)`` mod ``(r, (t^(2r) - 1)/(t + 1))``."""
    if k_parity not in ("odd", "even"):
        raise ValueError("k_parity must be 'odd' or 'even'")
    inv = _inverse_t(v)
    if k_parity == "odd":
        diff = reduce_mod(v - inv, r, 2 * r)
        mod = f"({r}, t^{2 * r} - 1)"
    else:
        modulus = exact_div(_t(2 * r) - 1, _t(1) + 1)
        diff = reduce_mod_poly(v - inv.shift(r), r, modulus, period=2 * r)
        mod = f"({r}, (t^{2 * r} - 1)/(t + 1))"
    rep = CriterionReport("yokota-jones", r, _verdict(diff.is_zero()), witness=diff, modulus=mod)
    rep.notes.append(f"k {k_parity}")
    return rep


# two-variable criteria ----------------------------------------------------------

def crit_skein(p: LaurentPoly, r: int) -> CriterionReport:
    """``P(v, z) == P(v^-1, -z)`` mod ``(r, z^r)``."""
    w = p - p.substitute({"v": (1, -1), "z": (-1, 1)})
    ok, i, u = in_ideal_skein(w, r)
    rep = CriterionReport("skein", r, _verdict(ok), witness=u, modulus=f"({r}, z^{r})")
    if not ok:
        rep.notes.append(f"fails at z^{i}")
    return rep


def crit_kauffman(f: LaurentPoly, r: int, flavor: str = "F") -> CriterionReport:
    """``F(a, z) == F(a^-1, z)`` (or ``F*(a, z) == F*(a^-1, -z)``) mod ``(r, z^r)``."""
    if flavor == "F":
        w = f - f.substitute({"a": (1, -1)})
        name = "kauffman"
    elif flavor == "Fstar":
        w = f - f.substitute({"a": (1, -1), "z": (-1, 1)})
        name = "dubrovnik"
    else:
        raise ValueError("flavor must be 'F' or 'Fstar'")
    ok, i, u = in_ideal_kauffman(w, r, flavor)
    rep = CriterionReport(name, r, _verdict(ok), witness=u, modulus=f"({r}, z^{r})")
    if not ok:
        rep.notes.append(f"fails at z^{i}")
    return rep


def _z_parts(p: LaurentPoly) -> dict[int, LaurentPoly]:
    out = {}
    for e in sorted(set(k[1] for k in p.terms())):
        if e.denominator != 1 or e % 2:
            raise PolyError("knot skein polynomials have even z powers only")
        out[int(e) // 2] = p.coefficient_in("z", e)
    return out


def _v_coeffs(p0: LaurentPoly) -> dict[int, int]:
    out = {}
    for (e,), c in p0.terms().items():
        if e.denominator != 1:
            raise PolyError("fractional v exponent")
        out[int(e)] = c
    return out


def torus_ratios(p_torus: LaurentPoly, r: int) -> tuple[dict[int, int], list[int]]:
    """Scalars ``b_i`` in Z_r with ``P_2i == b_i P_0`` mod r for a torus knot.

    Returns ``(ratios, skipped)``: indices where no scalar exists are skipped.
    """
    parts = _z_parts(p_torus)
    p0 = parts.get(0, LaurentPoly.zero("v")).mod(r)
    ratios, skipped = {}, []
    for i in range(1, (r + 1) // 2):
        if 2 * i >= r - 1:
            break
        pi = parts.get(i, LaurentPoly.zero("v")).mod(r)
        found = None
        if not p0.is_zero():
            e, c0 = next(iter(p0.terms().items()))
            cand = pi.terms().get(e, 0) * pow(int(c0), -1, r) % r
            if (pi - p0 * cand).is_zero():
                found = cand
        elif pi.is_zero():
            found = 0
        if found is None:
            skipped.append(i)
        else:
            ratios[i] = int(found)
    return ratios, skipped


def crit_traczyk_yokota(p: LaurentPoly, r: int, k: int,
                        p_torus: LaurentPoly | None = None) -> CriterionReport:
    """Coefficient congruences of the skein polynomial of an ``r``-periodic knot.

    (a) with ``P_0 = sum a_j v^j``: ``a_2i == a_(2i+2)`` mod r unless
    ``2i + 1 == +-k`` mod r.  (b) ``P_2i == b_i P_0`` mod r for ``2i < r - 1``,
    where ``b_i`` is read off from ``p_torus`` (the skein polynomial of
    T(r, k)); (b) is skipped when ``p_torus`` is None.
    """
    parts = _z_parts(p)
    coeffs = _v_coeffs(parts[0]) if 0 in parts else {}
    rep = CriterionReport("traczyk-yokota", r, CONSISTENT, k=k, modulus=f"mod {r}")
    if coeffs:
        lo, hi = min(coeffs), max(coeffs)
        if lo % 2 or hi % 2:
            raise PolyError("P_0 of a knot has even v exponents")
        bad = []
        for j in range(lo - 2, hi + 1, 2):
            if (j + 1 - k) % r == 0 or (j + 1 + k) % r == 0:
                continue
            if (coeffs.get(j, 0) - coeffs.get(j + 2, 0)) % r:
                bad.append(j)
        if bad:
            rep.verdict = EXCLUDED
            rep.notes.append("(a) fails at v^" + ",".join(map(str, bad)))
    if p_torus is not None:
        ratios, skipped = torus_ratios(p_torus, r)
        if skipped:
            rep.notes.append("(b) skipped i=" + ",".join(map(str, skipped)))
        p0 = parts.get(0, LaurentPoly.zero("v")).mod(r)
        for i, b in sorted(ratios.items()):
            pi = parts.get(i, LaurentPoly.zero("v")).mod(r)
            diff = pi - p0 * b
            if not diff.is_zero():
                rep.verdict = EXCLUDED
                rep.witness = diff
                rep.notes.append(f"(b) fails at z^{2 * i}")
                break
    return rep


# Alexander-polynomial criteria -----------------------------------------------------

def _unit_normal(p: LaurentPoly, r: int) -> LaurentPoly:
    q = p.mod(r) if not isinstance(p.ring, int) else p
    if q.is_zero():
        return q
    lo = q.exponent_range()[0]
    return q.shift(-lo)


def _frobenius(p: LaurentPoly, power: int) -> LaurentPoly:
    # over Z_r: f(t)^(r^q) = f(t^(r^q))
    raw = {}
    for (e,), c in p.terms().items():
        raw[e * power] = raw.get(e * power, 0) + c
    return LaurentPoly.from_terms(p.vars, raw, p.ring)


def _geometric(lam: int) -> LaurentPoly:
    acc = LaurentPoly.zero("t")
    for j in range(lam):
        acc = acc + _t(j)
    return acc


def crit_murasugi(d_link: LaurentPoly, d_quot: LaurentPoly, r: int, q: int = 1,
                  lam: int = 1) -> CriterionReport:
    """``D_L == D_quot^(r^q) (1 + t + ... + t^(lam-1))^(r^q - 1)`` mod r, up to ``+-t^j``."""
    if lam < 1 or q < 1:
        raise ValueError("lambda and q must be positive")
    n = r ** q
    quot = _unit_normal(d_quot, r)
    rhs = _frobenius(quot, n) * (_geometric(lam).mod(r) ** (n - 1)) if not quot.is_zero() else quot
    a, b = _unit_normal(d_link, r), _unit_normal(rhs, r)
    ok = a == b or a == -b
    diff = LaurentPoly.zero("t") if ok else a - b
    return CriterionReport("murasugi", r, _verdict(ok), lam=lam, witness=diff,
                           modulus=f"mod {r}, up to +-t^j")


def murasugi_scan(d_link: LaurentPoly, r: int) -> CriterionReport:
    """Quotient unknown: search ``lam`` for which ``D_L / (1+...+t^(lam-1))^(r-1)``
    is an ``r``-th power mod r (a polynomial in ``t^r`` up to a unit)."""
    a = _unit_normal(d_link, r)
    if a.is_zero():
        return CriterionReport("murasugi", r, CONSISTENT, notes=["split: no constraint"])
    deg = int(a.exponent_range()[1])
    alive = []
    for lam in range(1, deg // (r - 1) + 2):
        g = _geometric(lam).mod(r) ** (r - 1)
        try:
            quo = exact_div(a.lift(), g.lift()) if lam > 1 else a.lift()
        except PolyError:
            quo = _divide_mod(a, g, r)
            if quo is None:
                continue
        quo = _unit_normal(quo, r)
        if all(int(e) % r == 0 for (e,) in quo.terms()):
            alive.append(lam)
    rep = CriterionReport("murasugi", r, _verdict(bool(alive)), modulus=f"mod {r}")
    rep.notes.append("lambda not excluded: " + (",".join(map(str, alive)) or "none"))
    return rep


def _divide_mod(a: LaurentPoly, g: LaurentPoly, r: int) -> LaurentPoly | None:
    """Exact quotient ``a / g`` over Z_r (both with exponents >= 0), or None."""
    rem = {int(e): int(c) % r for (e,), c in a.terms().items()}
    gd = {int(e): int(c) % r for (e,), c in g.terms().items() if int(c) % r}
    dg = max(gd)
    inv = pow(gd[dg], -1, r)
    quo: dict = {}
    while rem:
        top = max(rem)
        if top < dg:
            return None
        f = rem[top] * inv % r
        quo[top - dg] = f
        for e, c in gd.items():
            k = e + top - dg
            v = (rem.get(k, 0) - f * c) % r
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly.from_terms(("t",), quo, r)


def square_mod2(d: LaurentPoly) -> bool:
    """Is ``d`` mod 2 a square in GF(2)[t^+-1] (up to a unit)?"""
    q = _unit_normal(d, 2)
    if q.is_zero():
        return True
    return all(e.denominator == 1 and int(e) % 2 == 0 for (e,) in q.terms())


# aggregation ------------------------------------------------------------------

CRITERIA = ("jones", "yokota", "skein", "kauffman", "traczyk", "murasugi")


def period_report(target, r_max: int, criteria="all") -> list[CriterionReport]:
    """Run every applicable criterion for primes ``3 <= r <= r_max``.

    ``target`` is a knot-table name or a :class:`PlanarDiagram`.  A failing
    computation is reported as an ``error`` row instead of aborting.
    """
    from .bracket import jones
    from .diagram import PlanarDiagram, load_knot
    from .skein import alexander_from_homflypt, homflypt, kauffman_F

    d = target if isinstance(target, PlanarDiagram) else load_knot(target)
    wanted = set(CRITERIA) if criteria in ("all", None) else set(
        [criteria] if isinstance(criteria, str) else criteria)
    unknown = wanted - set(CRITERIA)
    if unknown:
        raise ValueError(f"unknown criteria: {sorted(unknown)}")
    knot = d.num_components == 1
    inv: dict = {}

    def get(name, fn):
        if name not in inv:
            try:
                inv[name] = fn()
            except Exception as exc:  # reported per criterion
                inv[name] = exc
        return inv[name]

    rows: list[CriterionReport] = []

    def run(name, r, fn, source=None):
        if source is not None and isinstance(source, Exception):
            rows.append(CriterionReport(name, r, "error", notes=[str(source)]))
            return
        try:
            rows.append(fn())
        except Exception as exc:
            rows.append(CriterionReport(name, r, "error", notes=[str(exc)]))

    lk = d.linking_number() if not knot else None
    for r in primes_upto(r_max):
        if r < 3:
            continue
        if "jones" in wanted:
            v = get("V", lambda: jones(d))
            run("jones-symmetry", r, lambda: crit_jones_symmetry(v, r, lk), v)
            if knot:
                run("jones-torus", r, lambda: jones_torus_scan(v, r), v)
        if "yokota" in wanted and knot:
            v = get("V", lambda: jones(d))
            def yok():
                a, b = crit_yokota_jones(v, r, "odd"), crit_yokota_jones(v, r, "even")
                rep = CriterionReport("yokota-jones", r, _verdict(not (a.excluded and b.excluded)),
                                      modulus=a.modulus + " / " + b.modulus)
                rep.notes.append(f"odd k: {a.verdict}; even k: {b.verdict}")
                return rep
            run("yokota-jones", r, yok, v)
        if "skein" in wanted:
            p = get("P", lambda: homflypt(d))
            run("skein", r, lambda: crit_skein(p, r), p)
        if "kauffman" in wanted:
            f = get("F", lambda: kauffman_F(d)[1])
            run("kauffman", r, lambda: crit_kauffman(f, r, "F"), f)
        if "traczyk" in wanted and knot:
            p = get("P", lambda: homflypt(d))
            def trac():
                alive = []
                for k in range(1, r):
                    tor = _torus_homflypt(r, k)
                    if not crit_traczyk_yokota(p, r, k, tor).excluded:
                        alive.append(k)
                rep = CriterionReport("traczyk-yokota", r, _verdict(bool(alive)), modulus=f"mod {r}")
                rep.notes.append("k not excluded: " + (",".join(map(str, alive)) or "none"))
                return rep
            run("traczyk-yokota", r, trac, p)
        if "murasugi" in wanted:
            p = get("P", lambda: homflypt(d))
            if isinstance(p, Exception):
                run("murasugi", r, None, p)
            else:
                delta = get("D", lambda: alexander_from_homflypt(p))
                run("murasugi", r, lambda: murasugi_scan(delta, r), delta)
    return rows


def _torus_homflypt(r: int, k: int):
    from math import gcd

    from .diagram import PlanarDiagram, torus_braid
    from .skein import HOMFLYPT_LIMIT, homflypt

    if gcd(r, k) != 1:
        return None
    if k == 1:
        return homflypt(PlanarDiagram.from_pd([], loops=1))
    lo, hi = min(r, k), max(r, k)
    if (lo - 1) * hi > HOMFLYPT_LIMIT:
        return None
    return homflypt(torus_braid(lo, hi))


def report_json(rows: list[CriterionReport]) -> list[dict]:
    return [row.to_json() for row in rows]
