"""Kauffman bracket skein module of the solid torus.

Elements are polynomials in ``A^+-1`` and the core-parallel longitude ``z``.
A trivial circle is worth ``-A^2 - A^-2`` and the empty link is 1.  The
Chebyshev basis is ``e_0 = 1``, ``e_1 = z``, ``e_(i+1) = z e_i - e_(i-1)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._states import state_histogram
from .bracket import delta
from .diagram import BraidWord, DiagramError, _braid_tuples, _UF
from .polyring import LaurentPoly, PolyError, const, exact_div, mono

__all__ = [
    "AnnularElement",
    "annulus_bracket",
    "chebyshev",
    "e_basis",
    "torus_solid_formula",
    "two_strand_torus_formula",
    "embed_eval",
    "embedded_e",
    "realizability_check",
    "traczyk_family",
    "framing_exponent",
]

ANNULUS_LIMIT = 20
AZ = ("A", "z")


class AnnularElement:
    """An element of Z[A^+-1][z]."""

    __slots__ = ("poly",)

    def __init__(self, poly: LaurentPoly):
        if poly.vars != AZ:
            poly = _to_az(poly)
        for (_, ez) in poly.terms():
            if ez < 0 or ez.denominator != 1:
                raise PolyError("z exponents must be non-negative integers")
        self.poly = poly

    @classmethod
    def from_e(cls, coeffs: dict[int, LaurentPoly]) -> "AnnularElement":
        acc = LaurentPoly.zero(AZ)
        for n, c in coeffs.items():
            acc = acc + _to_az(c) * e_basis(n).poly
        return cls(acc)

    def to_e(self) -> dict[int, LaurentPoly]:
        """Coefficients (polynomials in A) in the Chebyshev basis."""
        out: dict[int, LaurentPoly] = {}
        for j, c in self.z_coeffs().items():
            for n, m in enumerate(chebyshev(j, "z_to_e")):
                if m:
                    out[n] = out.get(n, LaurentPoly.zero("A")) + c * m
        return {n: c for n, c in sorted(out.items()) if not c.is_zero()}

    def z_coeffs(self) -> dict[int, LaurentPoly]:
        out = {}
        for ez in sorted({k[1] for k in self.poly.terms()}):
            c = self.poly.coefficient_in("z", ez)
            out[int(ez)] = c
        return out

    def __add__(self, other):
        return AnnularElement(self.poly + _lift(other))

    def __sub__(self, other):
        return AnnularElement(self.poly - _lift(other))

    def __mul__(self, other):
        return AnnularElement(self.poly * _lift(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, AnnularElement) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"AnnularElement({self.poly})"

    def e_text(self) -> str:
        parts = [f"({c})*e_{n}" for n, c in self.to_e().items()]
        return " + ".join(parts) if parts else "0"

    def to_json(self, basis: str = "z") -> dict:
        terms = []
        source = self.z_coeffs() if basis == "z" else self.to_e() if basis == "e" else None
        if source is None:
            raise ValueError("basis must be 'z' or 'e'")
        for n, c in sorted(source.items()):
            for (ea,), k in c.items_sorted():
                terms.append([int(ea) if ea.denominator == 1 else str(ea), n, k])
        return {"basis": basis, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "AnnularElement":
        basis = obj.get("basis", "z")
        coeffs: dict[int, LaurentPoly] = {}
        for ea, n, k in obj["terms"]:
            coeffs[int(n)] = coeffs.get(int(n), LaurentPoly.zero("A")) + mono("A", {"A": ea}, int(k))
        if basis == "e":
            return cls.from_e(coeffs)
        if basis != "z":
            raise ValueError("basis must be 'z' or 'e'")
        acc = LaurentPoly.zero(AZ)
        for n, c in coeffs.items():
            acc = acc + _to_az(c) * mono(AZ, {"z": n})
        return cls(acc)


def _to_az(p: LaurentPoly) -> LaurentPoly:
    if p.vars == AZ:
        return p
    if p.vars == ("A",):
        return LaurentPoly(AZ, {(k[0], 0): c for k, c in p.raw_terms().items()})
    raise PolyError(f"cannot view polynomial in {p.vars} as annular")


def _lift(x) -> LaurentPoly:
    if isinstance(x, AnnularElement):
        return x.poly
    if isinstance(x, LaurentPoly):
        return _to_az(x)
    return const(AZ, x)


def _zpow(n: int) -> LaurentPoly:
    return mono(AZ, {"z": n})


# Chebyshev basis ---------------------------------------------------------------

def chebyshev(n: int, direction: str = "e_to_z") -> list[int]:
    """Integer change of basis.

    ``e_to_z``: ``e_n = sum c[j] z^j``.  ``z_to_e``: ``z^n = sum c[j] e_j``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if direction == "e_to_z":
        prev, cur = [1], [0, 1]
        if n == 0:
            return prev
        for _ in range(n - 1):
            nxt = [0] + cur
            for j, c in enumerate(prev):
                nxt[j] -= c
            prev, cur = cur, nxt
        return cur
    if direction == "z_to_e":
        # z e_j = e_(j+1) + e_(j-1), with e_-1 = 0
        vec = [1]
        for _ in range(n):
            nxt = [0] * (len(vec) + 1)
            for j, c in enumerate(vec):
                nxt[j + 1] += c
                if j > 0:
                    nxt[j - 1] += c
            vec = nxt
        return vec
    raise ValueError("direction must be 'e_to_z' or 'z_to_e'")


def e_basis(n: int) -> AnnularElement:
    """``e_n`` written in powers of ``z`` (``e_-1 = 0``)."""
    if n == -1:
        return AnnularElement(LaurentPoly.zero(AZ))
    acc = LaurentPoly.zero(AZ)
    for j, c in enumerate(chebyshev(n, "e_to_z")):
        if c:
            acc = acc + _zpow(j) * c
    return AnnularElement(acc)


# annular bracket ---------------------------------------------------------------

def annulus_bracket(b: BraidWord, limit: int = ANNULUS_LIMIT, method: str = "auto") -> AnnularElement:
    """Blackboard-framed value of the braid closure in the solid torus.

    ``method="states"`` sums over all smoothings (word length up to
    ``limit``); ``"tl"`` multiplies out in the Temperley-Lieb algebra and
    has no length limit; ``"auto"`` uses states up to ``limit``.
    """
    if method == "auto":
        method = "states" if len(b.word) <= limit else "tl"
    if method == "states":
        if len(b.word) > limit:
            raise DiagramError(f"word length {len(b.word)} exceeds the state-sum limit {limit}")
        return _annulus_states(b)
    if method == "tl":
        return _annulus_tl(b)
    raise ValueError("method must be 'auto', 'states' or 'tl'")


def _annulus_states(b: BraidWord) -> AnnularElement:
    if not b.word:
        return AnnularElement(_zpow(b.strands))
    tuples, _signs, bottom, top, _ = _braid_tuples(b)
    uf = _UF()
    idle = 0
    for t, s in zip(top, bottom):
        if t == s:
            idle += 1  # strand position never touched: a core-parallel circle
        else:
            uf.union(t, s)
    closure = {uf.find(t) for t, s in zip(top, bottom) if t != s}
    xs = [tuple(uf.find(a) for a in x) for x in tuples]
    marks = [4 * ci + s for ci, x in enumerate(xs) for s, a in enumerate(x) if a in closure]
    hist = state_histogram(xs, marks)
    n = len(xs)
    d = delta()
    acc: dict = {}
    for (na, circles, essential), count in hist.items():
        trivial = circles - essential
        key = (2 * na - n, essential + idle, trivial)
        acc[key] = acc.get(key, 0) + count
    total = LaurentPoly.zero(AZ)
    for (ea, ez, tr), count in acc.items():
        total = total + _to_az(d ** tr) * mono(AZ, {"A": ea, "z": ez}, count)
    return AnnularElement(total)


def _compose(lower: tuple, upper: tuple, n: int) -> tuple[tuple, int]:
    """Stack two Temperley-Lieb diagrams; points 0..n-1 bottom, n..2n-1 top."""
    # lower: 0..2n-1, upper shifted so its bottom meets lower's top
    uf_next = {}
    for i in range(2 * n):
        uf_next[("L", i)] = ("L", lower[i])
        uf_next[("U", i)] = ("U", upper[i])
    glue = {}
    for p in range(n):
        glue[("L", n + p)] = ("U", p)
        glue[("U", p)] = ("L", n + p)
    result = [None] * (2 * n)
    outer = [("L", p) for p in range(n)] + [("U", n + p) for p in range(n)]
    index = {pt: i for i, pt in enumerate(outer)}
    seen = set()
    for start in outer:
        if start in seen:
            continue
        cur = start
        seen.add(cur)
        while True:
            nxt = uf_next[cur]
            seen.add(nxt)
            if nxt in index:
                result[index[start]] = index[nxt]
                result[index[nxt]] = index[start]
                break
            cur = glue[nxt]
            seen.add(cur)
    loops = 0
    for p in range(n):
        pt = ("L", n + p)
        if pt in seen:
            continue
        loops += 1
        cur = pt
        while cur not in seen:
            seen.add(cur)
            nxt = uf_next[cur]
            seen.add(nxt)
            cur = glue[nxt]
    return tuple(result), loops


def _tl_identity(n: int) -> tuple:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _tl_cupcap(n: int, i: int) -> tuple:
    m = list(_tl_identity(n))
    a, b = i - 1, i
    m[a], m[b] = b, a
    m[n + a], m[n + b] = n + b, n + a
    return tuple(m)


def _annulus_tl(b: BraidWord) -> AnnularElement:
    n = b.strands
    d = delta()
    amp = mono("A", {"A": 1})
    amm = mono("A", {"A": -1})
    state = {_tl_identity(n): const("A", 1)}
    for g in b.word:
        i = abs(g)
        ident, cup = _tl_identity(n), _tl_cupcap(n, i)
        # sigma = A id + A^-1 U ; sigma^-1 = A U + A^-1 id
        weights = ((ident, amp), (cup, amm)) if g > 0 else ((ident, amm), (cup, amp))
        new: dict = {}
        for diag, c in state.items():
            for gen, w in weights:
                res, loops = _compose(diag, gen, n)
                term = c * w * (d ** loops)
                new[res] = new.get(res, LaurentPoly.zero("A")) + term
        state = {k: v for k, v in new.items() if not v.is_zero()}
    total = LaurentPoly.zero(AZ)
    for diag, c in state.items():
        trivial, essential = _close_in_annulus(diag, n)
        total = total + _to_az(c * d ** trivial) * _zpow(essential)
    return AnnularElement(total)


def _close_in_annulus(diag: tuple, n: int) -> tuple[int, int]:
    # closure joins top n+p to bottom p across the seam
    seen = set()
    trivial = essential = 0
    for start in range(2 * n):
        if start in seen:
            continue
        crossings = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            mate = diag[cur]
            seen.add(mate)
            cur = mate - n if mate >= n else mate + n
            crossings += 1
        if crossings % 2:
            essential += 1
        else:
            trivial += 1
    return trivial, essential


# closed forms ------------------------------------------------------------------

def torus_solid_formula(r: int, k: int) -> AnnularElement:
    """``A^(r(k-1)) (e_k - A^(-4r) e_(k-2))``.

    For ``r = 2`` and even ``k`` (two-component links) the extra constant
    ``2 A^-6`` is added; other non-coprime pairs have no closed form here.
    """
    if r < 1 or k < 1:
        raise ValueError("r and k must be positive")
    extra = None
    if gcd(r, k) != 1:
        if r == 2 and k % 2 == 0:
            extra = mono(AZ, {"A": -6}, 2)
        else:
            raise ValueError("closed form covers knots and the r = 2 links only")
    main = e_basis(k) - e_basis(k - 2) * mono(AZ, {"A": -4 * r})
    out = main * mono(AZ, {"A": r * (k - 1)})
    return out + extra if extra is not None else out


def two_strand_torus_formula(k: int) -> AnnularElement:
    """The two-strand torus link closed form: r = 2 in :func:`torus_solid_formula`."""
    return torus_solid_formula(2, k)


def framing_exponent(value: AnnularElement, target: AnnularElement, window: int = 12) -> int | None:
    """``c`` with ``value = (-A^3)^c target``, searched in ``[-window, window]``."""
    for c in sorted(range(-window, window + 1), key=abs):
        unit = mono(AZ, {"A": 3 * c}, (-1) ** (c % 2))
        if value.poly == target.poly * unit:
            return c
    return None


# embedding in S^3 ------------------------------------------------------------------

def embedded_e(i: int) -> LaurentPoly:
    """``[e_i] = (-1)^i (A^(2i+2) - A^(-2i-2)) / (A^2 - A^-2)``."""
    num = mono("A", {"A": 2 * i + 2}) - mono("A", {"A": -2 * i - 2})
    q = exact_div(num, mono("A", {"A": 2}) - mono("A", {"A": -2}))
    return -q if i % 2 else q


def embed_eval(elem: AnnularElement) -> LaurentPoly:
    """Value in S^3 under the standard embedding, with ``[empty] = 1``."""
    acc = LaurentPoly.zero("A")
    for n, c in elem.to_e().items():
        acc = acc + c * embedded_e(n)
    return acc


def realizability_check(n: int) -> dict:
    """Necessary condition for ``e_n`` to be realised by a framed link.

    ``<e_n> = [e_n] / (-A^2 - A^-2)`` at ``A = -1`` must be ``+-2^m``
    (``m >= -1``, a framed link with ``c`` components gives ``(-2)^(c-1)``).
    Passes exactly when ``n = 2^k - 1``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    val = Fraction(embedded_e(n).at(-1), -2)
    twice = abs(val) * 2
    ok = twice.denominator == 1 and twice.numerator > 0 and (twice.numerator & (twice.numerator - 1)) == 0
    return {"n": n, "value": val, "pass": ok}


def traczyk_family(n: int, method: str = "auto") -> dict:
    """Annular value of the closure of ``Delta^(2n+1)``, ``Delta = s1 s2 s1``.

    Reports whether it equals ``A^(6n)`` times the value of ``Delta`` and
    whether the value of ``Delta`` is ``A^3 e_3``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    base_word = BraidWord(3, (1, 2, 1))
    value = annulus_bracket(base_word ** (2 * n + 1), method=method)
    base = annulus_bracket(base_word, method=method)
    a3e3 = e_basis(3) * mono(AZ, {"A": 3})
    return {
        "value": value,
        "proportional": value == base * mono(AZ, {"A": 6 * n}),
        "delta_is_A3e3": base == a3e3,
    }
