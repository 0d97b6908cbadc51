"""Exact sparse Laurent polynomials in one or two variables.

Exponents are rationals whose denominators divide 4 (so ``t^(1/2)`` and
``A = t^(-1/4)`` are representable).  Internally an exponent ``e`` is stored
as the integer ``4*e``.  Coefficients live in one of three rings:

* ``"Z"``  - Python integers,
* ``"Zi"`` - Gaussian integers (:class:`GaussianInt`),
* ``r``    - a prime ``r`` meaning ``Z/rZ`` with coefficients kept in ``[0, r)``.

Instances are immutable and hashable.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "GaussianInt",
    "LaurentPoly",
    "PolyError",
    "RingMismatch",
    "NotDivisible",
    "ParseError",
    "divides",
    "exact_div",
    "reduce_mod",
    "reduce_mod_poly",
    "in_ideal_skein",
    "in_ideal_kauffman",
    "in_skein_ring",
    "mono",
    "const",
]

SCALE = 4


class PolyError(Exception):
    pass


class RingMismatch(PolyError):
    pass


class NotDivisible(PolyError):
    pass


class ParseError(PolyError):
    pass


class GaussianInt:
    """Element ``re + im*i`` of Z[i]."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        self.re = int(re)
        self.im = int(im)

    @staticmethod
    def of(x) -> "GaussianInt":
        if isinstance(x, GaussianInt):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise PolyError(f"non-integral Gaussian value {x}")
            return GaussianInt(int(x.real), int(x.imag))
        return GaussianInt(int(x), 0)

    def __add__(self, o):
        o = GaussianInt.of(o)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianInt.of(o))

    def __rsub__(self, o):
        return GaussianInt.of(o) - self

    def __mul__(self, o):
        o = GaussianInt.of(o)
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, o):
        try:
            o = GaussianInt.of(o)
        except (TypeError, ValueError, PolyError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"({self.re}{sign}{'' if mag == 1 else mag}i)"


Ring = Union[str, int]


def _check_ring(ring: Ring) -> Ring:
    if ring in ("Z", "Zi"):
        return ring
    if isinstance(ring, int) and ring >= 2:
        return ring
    raise PolyError(f"unknown coefficient ring {ring!r}")


def _coerce(c, ring: Ring):
    if ring == "Z":
        if isinstance(c, GaussianInt):
            if c.im:
                raise RingMismatch("Gaussian coefficient in an integer polynomial")
            return c.re
        if isinstance(c, complex):
            raise RingMismatch("complex coefficient in an integer polynomial")
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise PolyError(f"non-integral coefficient {c}")
            return int(c)
        return int(c)
    if ring == "Zi":
        return GaussianInt.of(c)
    if isinstance(c, (GaussianInt, complex)):
        raise RingMismatch("Gaussian coefficient in a Z_r polynomial")
    if isinstance(c, Fraction):
        if c.denominator != 1:
            return int(c.numerator) * pow(c.denominator, -1, ring) % ring
        c = int(c)
    return int(c) % ring


def _to_internal(e) -> int:
    f = Fraction(e)
    q = f * SCALE
    if q.denominator != 1:
        raise PolyError(f"exponent {e} has denominator not dividing {SCALE}")
    return int(q)


def _to_fraction(k: int) -> Fraction:
    return Fraction(k, SCALE)


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    ``vars`` is a tuple of variable names; ``terms`` maps exponent tuples to
    nonzero coefficients.  Use :meth:`from_terms` for user-facing exponents
    (ints or Fractions); the raw constructor takes internal scaled exponents.
    """

    __slots__ = ("vars", "ring", "_t", "_hash")

    def __init__(self, vars: Iterable[str], raw: Mapping[tuple, object] | None = None,
                 ring: Ring = "Z", _trusted: bool = False):
        self.vars = tuple(vars)
        if not 1 <= len(self.vars) <= 2 or len(set(self.vars)) != len(self.vars):
            raise PolyError(f"expected one or two distinct variables, got {self.vars}")
        self.ring = _check_ring(ring)
        if _trusted:
            self._t = raw
        else:
            t = {}
            n = len(self.vars)
            for k, c in (raw or {}).items():
                if len(k) != n:
                    raise PolyError("exponent tuple length does not match variables")
                c = _coerce(c, self.ring)
                if c:
                    t[tuple(int(x) for x in k)] = c
            self._t = t
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def from_terms(cls, vars, terms: Mapping, ring: Ring = "Z") -> "LaurentPoly":
        vars = (vars,) if isinstance(vars, str) else tuple(vars)
        raw: dict = {}
        ring = _check_ring(ring)
        for k, c in terms.items():
            key = (k,) if not isinstance(k, tuple) else k
            key = tuple(_to_internal(x) for x in key)
            raw[key] = raw.get(key, 0) + (_coerce(c, ring) if ring == "Zi" else c)
        return cls(vars, raw, ring)

    @classmethod
    def zero(cls, vars, ring: Ring = "Z") -> "LaurentPoly":
        vars = (vars,) if isinstance(vars, str) else tuple(vars)
        return cls(vars, {}, ring)

    @classmethod
    def one(cls, vars, ring: Ring = "Z") -> "LaurentPoly":
        return const(vars, 1, ring)

    # basic access -------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def raw_terms(self) -> dict:
        return dict(self._t)

    def terms(self) -> dict:
        """Exponent-tuple (Fractions) -> coefficient."""
        return {tuple(_to_fraction(x) for x in k): c for k, c in self._t.items()}

    def items_sorted(self):
        for k in sorted(self._t):
            yield tuple(_to_fraction(x) for x in k), self._t[k]

    def coeff(self, *exps):
        if len(exps) == 1 and isinstance(exps[0], tuple):
            exps = exps[0]
        key = tuple(_to_internal(e) for e in exps)
        return self._t.get(key, self._zero_coeff())

    def _zero_coeff(self):
        return GaussianInt(0, 0) if self.ring == "Zi" else 0

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def is_integral(self) -> bool:
        return all(x % SCALE == 0 for k in self._t for x in k)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def exponent_range(self, var: str | None = None) -> tuple[Fraction, Fraction]:
        i = self._index(var)
        if not self._t:
            raise PolyError("zero polynomial has no exponent range")
        es = [k[i] for k in self._t]
        return _to_fraction(min(es)), _to_fraction(max(es))

    def span(self, var: str | None = None) -> Fraction:
        lo, hi = self.exponent_range(var)
        return hi - lo

    def _index(self, var: str | None) -> int:
        if var is None:
            if self.nvars != 1:
                raise PolyError("variable must be named for a bivariate polynomial")
            return 0
        try:
            return self.vars.index(var)
        except ValueError:
            raise PolyError(f"{var!r} is not a variable of this polynomial") from None

    # arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise RingMismatch(f"variables differ: {self.vars} vs {other.vars}")
            if other.ring != self.ring:
                if self.ring == "Zi" and other.ring == "Z":
                    return other.to_ring("Zi")
                raise RingMismatch(f"coefficient rings differ: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, GaussianInt, complex, Fraction)):
            return const(self.vars, other, self.ring)
        return NotImplemented

    def _common(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented, None
        if self.ring == "Z" and o.ring == "Zi":
            return self.to_ring("Zi"), o
        return self, o

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        t = dict(a._t)
        r = a.ring
        for k, c in b._t.items():
            v = t.get(k)
            v = c if v is None else v + c
            if isinstance(r, int):
                v %= r
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return LaurentPoly(a.vars, t, r, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        r = self.ring
        if isinstance(r, int):
            t = {k: (-c) % r for k, c in self._t.items()}
        else:
            t = {k: -c for k, c in self._t.items()}
        return LaurentPoly(self.vars, t, r, _trusted=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        r = a.ring
        t: dict = {}
        if a.nvars == 1:
            for (i,), c in a._t.items():
                for (j,), d in b._t.items():
                    k = (i + j,)
                    t[k] = t.get(k, 0) + c * d
        else:
            for (i1, i2), c in a._t.items():
                for (j1, j2), d in b._t.items():
                    k = (i1 + j1, i2 + j2)
                    t[k] = t.get(k, 0) + c * d
        if isinstance(r, int):
            t = {k: v % r for k, v in t.items() if v % r}
        else:
            t = {k: v for k, v in t.items() if v}
        return LaurentPoly(a.vars, t, r, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise PolyError("negative power of a non-monomial")
            (k, c), = self._t.items()
            if c not in (1, -1) and not (isinstance(self.ring, int)):
                raise PolyError("negative power of a non-unit monomial")
            inv = pow(c, -1, self.ring) if isinstance(self.ring, int) else c
            return LaurentPoly(self.vars, {tuple(-x * (-n) for x in k): inv ** (-n)}, self.ring)
        result = const(self.vars, 1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, GaussianInt)):
            o = self._lift(other)
            return self._t == o._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.ring, frozenset(self._t.items())))
        return self._hash

    # structural operations ------------------------------------------------
    def shift(self, *exps) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents."""
        d = tuple(_to_internal(e) for e in exps)
        if len(d) != self.nvars:
            raise PolyError("shift needs one exponent per variable")
        t = {tuple(a + b for a, b in zip(k, d)): c for k, c in self._t.items()}
        return LaurentPoly(self.vars, t, self.ring, _trusted=True)

    def scale(self, c) -> "LaurentPoly":
        return self * const(self.vars, c, self.ring if not isinstance(c, (GaussianInt, complex)) else "Zi")

    def to_ring(self, ring: Ring) -> "LaurentPoly":
        ring = _check_ring(ring)
        if ring == self.ring:
            return self
        if ring == "Zi":
            if isinstance(self.ring, int):
                raise RingMismatch("cannot lift Z_r to Z[i]")
            return LaurentPoly(self.vars, {k: GaussianInt(c) for k, c in self._t.items()}, "Zi")
        if ring == "Z":
            if self.ring == "Zi":
                return LaurentPoly(self.vars, {k: _coerce(c, "Z") for k, c in self._t.items()}, "Z")
            return LaurentPoly(self.vars, dict(self._t), "Z")
        if self.ring == "Zi":
            raise RingMismatch("cannot reduce Gaussian coefficients mod r")
        return LaurentPoly(self.vars, dict(self._t), ring)

    def mod(self, r: int) -> "LaurentPoly":
        return self.to_ring(r)

    def lift(self, symmetric: bool = False) -> "LaurentPoly":
        """Z_r -> Z, coefficients in [0,r) or (-r/2, r/2]."""
        if not isinstance(self.ring, int):
            return self
        r = self.ring
        if symmetric:
            t = {k: (c - r if c > r // 2 else c) for k, c in self._t.items()}
        else:
            t = dict(self._t)
        return LaurentPoly(self.vars, t, "Z")

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        return LaurentPoly(tuple(mapping.get(v, v) for v in self.vars), dict(self._t), self.ring, _trusted=True)

    def substitute(self, mapping: Mapping[str, tuple]) -> "LaurentPoly":
        """Apply ``var -> c * var^e`` for each mapped variable.

        ``c`` is one of ``1, -1, 1j, -1j`` and ``e`` is ``1`` or ``-1``.  A
        Gaussian ``c`` promotes the result to Z[i].
        """
        factors = []
        ring = self.ring
        for i, v in enumerate(self.vars):
            c, e = mapping.get(v, (1, 1))
            if e not in (1, -1):
                raise PolyError("substitution exponent must be +1 or -1")
            if isinstance(c, complex) and c.imag != 0:
                if isinstance(ring, int):
                    raise RingMismatch("Gaussian substitution over Z_r")
                ring = "Zi"
            elif c not in (1, -1):
                raise PolyError(f"unsupported substitution coefficient {c}")
            factors.append((GaussianInt.of(c) if isinstance(c, complex) else int(c), e))
        src = self.to_ring(ring) if ring != self.ring else self
        out: dict = {}
        unit_pows = [{0: 1} for _ in factors]
        for k, c in src._t.items():
            nk = []
            coef = c
            for i, (u, e) in enumerate(factors):
                nk.append(k[i] * e)
                if u != 1:
                    if k[i] % SCALE:
                        raise PolyError("unit substitution on a fractional exponent")
                    p = k[i] // SCALE
                    if p not in unit_pows[i]:
                        unit_pows[i][p] = _unit_pow(u, p)
                    coef = coef * unit_pows[i][p]
            nk = tuple(nk)
            out[nk] = out.get(nk, 0) + coef
        return LaurentPoly(self.vars, out, ring)

    def evaluate(self, images: Mapping[str, "LaurentPoly"], target_vars=None) -> "LaurentPoly":
        """Substitute each variable by a Laurent polynomial in ``target_vars``.

        Fractional exponents require a monomial image.  Unmapped variables
        must appear in ``target_vars``.
        """
        if target_vars is None:
            target_vars = next(iter(images.values())).vars
        target_vars = (target_vars,) if isinstance(target_vars, str) else tuple(target_vars)
        ring = self.ring
        for img in images.values():
            if img.ring == "Zi" and ring == "Z":
                ring = "Zi"
        imgs = []
        for v in self.vars:
            if v in images:
                img = images[v]
            elif v in target_vars:
                img = mono(target_vars, {v: 1}, ring=ring)
            else:
                raise PolyError(f"no image for variable {v!r}")
            if img.vars != target_vars:
                img = _embed(img, target_vars)
            imgs.append(img.to_ring(ring) if img.ring != ring else img)
        cache: list[dict] = [dict() for _ in imgs]
        result = LaurentPoly.zero(target_vars, ring)
        one = const(target_vars, 1, ring)
        acc: dict = {}
        for k, c in self._t.items():
            term = one.scale(c)
            for i, e in enumerate(k):
                if e not in cache[i]:
                    cache[i][e] = _power_scaled(imgs[i], e)
                term = term * cache[i][e]
            for kk, cc in term._t.items():
                acc[kk] = acc.get(kk, 0) + cc
        result = LaurentPoly(target_vars, acc, ring)
        return result

    def at(self, value, var: str | None = None):
        """Evaluate a univariate polynomial with integer exponents at a number."""
        if self.nvars != 1:
            raise PolyError("at() needs a univariate polynomial")
        total = Fraction(0)
        for (k,), c in self._t.items():
            if k % SCALE:
                raise PolyError("cannot evaluate fractional exponent at a number")
            total += Fraction(c) * Fraction(value) ** (k // SCALE)
        return total

    def project(self, var: str) -> dict:
        """Split a bivariate polynomial by powers of ``var``.

        Returns ``{exponent: univariate polynomial in the other variable}``.
        """
        i = self._index(var)
        j = 1 - i
        other = self.vars[j]
        parts: dict = {}
        for k, c in self._t.items():
            parts.setdefault(k[i], {})[(k[j],)] = c
        return {_to_fraction(e): LaurentPoly((other,), t, self.ring, _trusted=True)
                for e, t in parts.items()}

    def coefficient_in(self, var: str, exp) -> "LaurentPoly":
        """Coefficient of ``var^exp`` as a polynomial in the other variable."""
        return self.project(var).get(Fraction(exp), LaurentPoly.zero(
            tuple(v for v in self.vars if v != var), self.ring))

    def min_exponents(self) -> tuple:
        return tuple(_to_fraction(min(k[i] for k in self._t)) for i in range(self.nvars))

    def normalize_unit(self) -> "LaurentPoly":
        """Shift so that every variable's lowest exponent is zero."""
        if not self._t:
            return self
        m = [min(k[i] for k in self._t) for i in range(self.nvars)]
        t = {tuple(a - b for a, b in zip(k, m)): c for k, c in self._t.items()}
        return LaurentPoly(self.vars, t, self.ring, _trusted=True)

    # I/O ----------------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for k in sorted(self._t):
            c = self._t[k]
            cj = [str(c.re), str(c.im)] if isinstance(c, GaussianInt) else str(c)
            terms.append([[_frac_str(_to_fraction(x)) for x in k], cj])
        out = {"vars": list(self.vars), "terms": terms}
        if self.ring != "Z":
            out["ring"] = self.ring if self.ring == "Zi" else "Z_r"
            if isinstance(self.ring, int):
                out["modulus"] = self.ring
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc)) from None
        try:
            vars = tuple(obj["vars"])
            ringname = obj.get("ring", "Z")
            ring: Ring = int(obj["modulus"]) if ringname == "Z_r" else ringname
            raw: dict = {}
            for exps, c in obj["terms"]:
                key = tuple(_to_internal(Fraction(e)) for e in exps)
                if isinstance(c, list):
                    cv = GaussianInt(int(c[0]), int(c[1]))
                else:
                    cv = int(c)
                raw[key] = raw.get(key, 0) + cv
            return cls(vars, raw, ring)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from None

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        ring = "" if self.ring == "Z" else f", ring={self.ring!r}"
        return f"LaurentPoly({self.vars}, {to_text(self)!r}{ring})"

    @classmethod
    def parse(cls, text: str, vars=None, ring: Ring = "Z") -> "LaurentPoly":
        return parse_text(text, vars, ring)


# helpers -------------------------------------------------------------------

def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _unit_pow(u, p: int):
    if isinstance(u, GaussianInt):
        # i^p or (-i)^p
        base = u
        res = GaussianInt(1, 0)
        n = p % 4
        for _ in range(n):
            res = res * base
        return res
    return u ** (p % 2) if u == -1 else 1


def _power_scaled(img: LaurentPoly, k: int) -> LaurentPoly:
    if k % SCALE == 0:
        return img ** (k // SCALE) if k >= 0 else _inverse_monomial(img) ** (-k // SCALE)
    if not img.is_monomial():
        raise PolyError("fractional power of a non-monomial image")
    (key, c), = img._t.items()
    if c != 1:
        raise PolyError("fractional power of a monomial with nontrivial coefficient")
    nk = []
    for x in key:
        v = Fraction(x * k, SCALE)
        if v.denominator != 1:
            raise PolyError("fractional power leaves the quarter-exponent lattice")
        nk.append(int(v))
    return LaurentPoly(img.vars, {tuple(nk): 1}, img.ring)


def _inverse_monomial(img: LaurentPoly) -> LaurentPoly:
    if not img.is_monomial():
        raise PolyError("negative power of a non-monomial image")
    return img ** -1


def _embed(p: LaurentPoly, target_vars: tuple) -> LaurentPoly:
    out = {}
    for k, c in p._t.items():
        nk = [0] * len(target_vars)
        for v, e in zip(p.vars, k):
            if v not in target_vars:
                raise PolyError(f"variable {v!r} not in target {target_vars}")
            nk[target_vars.index(v)] = e
        out[tuple(nk)] = c
    return LaurentPoly(target_vars, out, p.ring, _trusted=True)


def mono(vars, exps: Mapping[str, object] | None = None, coeff=1, ring: Ring = "Z") -> LaurentPoly:
    """Monomial ``coeff * prod(var^exp)``."""
    vars = (vars,) if isinstance(vars, str) else tuple(vars)
    exps = exps or {}
    key = tuple(_to_internal(exps.get(v, 0)) for v in vars)
    return LaurentPoly(vars, {key: coeff}, ring)


def const(vars, c, ring: Ring = "Z") -> LaurentPoly:
    vars = (vars,) if isinstance(vars, str) else tuple(vars)
    if isinstance(c, (GaussianInt, complex)) and ring == "Z":
        ring = "Zi"
    return LaurentPoly(vars, {(0,) * len(vars): c}, ring)


# division --------------------------------------------------------------------

def _univariate_divmod(p: LaurentPoly, d: LaurentPoly):
    """Divide ``p`` by ``d`` in Q[u^+-1] (or Z_r[u^+-1]), u = var^(1/4).

    Returns ``(quotient_dict, remainder_is_zero)`` with Fraction coefficients
    (or Z_r residues).
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = p.ring if isinstance(p.ring, int) else None
    dmin = min(k[0] for k in d._t)
    dd = {k[0] - dmin: c for k, c in d._t.items()}
    ddeg = max(dd)
    if p.is_zero():
        return {}, True
    pmin = min(k[0] for k in p._t)
    rem = {k[0] - pmin: (c if r else Fraction(c)) for k, c in p._t.items()}
    lead = dd[ddeg]
    inv = pow(lead, -1, r) if r else None
    q: dict = {}
    while rem:
        top = max(rem)
        if top < ddeg:
            break
        c = rem[top]
        f = (c * inv) % r if r else c / lead
        sh = top - ddeg
        q[sh + pmin - dmin] = f
        for e, dc in dd.items():
            k = e + sh
            v = rem.get(k, 0) - f * dc
            if r:
                v %= r
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return q, not rem


def _multivariate_div(p: LaurentPoly, d: LaurentPoly, main: str):
    """Division by ``d`` whose leading coefficient in ``main`` is a unit monomial.

    Both operands are shifted so their lowest power of ``main`` is zero; the
    divisor then has a nonzero constant part and ordinary long division in
    ``main`` decides Laurent divisibility.
    """
    i = p._index(main)
    j = 1 - i
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return {}, True
    dmin = min(k[i] for k in d._t)
    pmin = min(k[i] for k in p._t)
    dt = {_shift_axis(k, i, -dmin): c for k, c in d._t.items()}
    dtop = max(k[i] for k in dt)
    lead = {k: c for k, c in dt.items() if k[i] == dtop}
    if len(lead) != 1:
        raise PolyError(f"leading coefficient of divisor in {main} is not a monomial")
    (lk, lc), = lead.items()
    r = p.ring if isinstance(p.ring, int) else None
    if r:
        inv = pow(lc, -1, r)
    elif p.ring == "Zi":
        g = GaussianInt.of(lc)
        units = {(1, 0): GaussianInt(1), (-1, 0): GaussianInt(-1),
                 (0, 1): GaussianInt(0, -1), (0, -1): GaussianInt(0, 1)}
        if (g.re, g.im) not in units:
            raise PolyError("leading coefficient is not a unit")
        inv = units[(g.re, g.im)]
    else:
        if lc not in (1, -1):
            raise PolyError("leading coefficient is not a unit")
        inv = lc
    rem = {_shift_axis(k, i, -pmin): c for k, c in p._t.items()}
    q: dict = {}
    while rem:
        top = max(k[i] for k in rem)
        if top < dtop:
            break
        row = [(k, c) for k, c in rem.items() if k[i] == top]
        for k, c in row:
            f = c * inv
            if r:
                f %= r
            sh = [0, 0]
            sh[i] = top - dtop
            sh[j] = k[j] - lk[j]
            qk = (sh[0], sh[1])
            outk = _shift_axis(qk, i, pmin - dmin)
            q[outk] = q.get(outk, 0) + f
            for dk, dc in dt.items():
                nk = (dk[0] + sh[0], dk[1] + sh[1])
                v = rem.get(nk, 0) - f * dc
                if r:
                    v %= r
                if v:
                    rem[nk] = v
                else:
                    rem.pop(nk, None)
    return q, not rem


def _shift_axis(k: tuple, i: int, by: int) -> tuple:
    return (k[0] + by, k[1]) if i == 0 else (k[0], k[1] + by)


def divides(d: LaurentPoly, p: LaurentPoly, ring: Ring | None = None, main: str | None = None) -> bool:
    """True iff ``d`` divides ``p`` in the Laurent ring over ``ring``.

    ``ring`` defaults to the common ring of the inputs; passing a prime
    reduces both polynomials mod that prime first.  Bivariate division is
    carried out in ``main`` (default: the last variable) and requires the
    divisor's leading coefficient there to be a unit monomial.
    """
    if ring is not None and ring != p.ring:
        p = p.lift() if isinstance(p.ring, int) else p
        d = d.lift() if isinstance(d.ring, int) else d
        p, d = p.to_ring(ring), d.to_ring(ring)
    if d.vars != p.vars:
        raise RingMismatch(f"variables differ: {d.vars} vs {p.vars}")
    if d.ring != p.ring:
        raise RingMismatch(f"coefficient rings differ: {d.ring} vs {p.ring}")
    if p.nvars == 1:
        if p.ring == "Zi":
            q = _gauss_div(p, d)
            return q is not None
        q, ok = _univariate_divmod(p, d)
        if not ok:
            return False
        if p.ring == "Z":
            return all(c.denominator == 1 for c in q.values())
        return True
    _, ok = _multivariate_div(p, d, main or p.vars[-1])
    return ok


def exact_div(p: LaurentPoly, d: LaurentPoly, main: str | None = None) -> LaurentPoly:
    """Quotient ``p / d``; raises :class:`NotDivisible` if inexact."""
    if d.vars != p.vars or d.ring != p.ring:
        d = d.to_ring(p.ring) if d.vars == p.vars else d
        if d.vars != p.vars:
            raise RingMismatch(f"variables differ: {d.vars} vs {p.vars}")
    if p.nvars == 1:
        if p.ring == "Zi":
            q = _gauss_div(p, d)
            if q is None:
                raise NotDivisible("polynomial division leaves a remainder")
            return q
        q, ok = _univariate_divmod(p, d)
        if not ok:
            raise NotDivisible("polynomial division leaves a remainder")
        if p.ring == "Z":
            if any(c.denominator != 1 for c in q.values()):
                raise NotDivisible("quotient has non-integral coefficients")
            q = {k: int(c) for k, c in q.items()}
        return LaurentPoly(p.vars, {(k,): c for k, c in q.items()}, p.ring)
    q, ok = _multivariate_div(p, d, main or p.vars[-1])
    if not ok:
        raise NotDivisible("polynomial division leaves a remainder")
    return LaurentPoly(p.vars, q, p.ring)


def _gauss_div(p: LaurentPoly, d: LaurentPoly):
    # split into real and imaginary parts and divide over Q[i] by conjugation
    re_p, im_p = _split_gauss(p)
    re_d, im_d = _split_gauss(d)
    norm = re_d * re_d + im_d * im_d
    num_re = re_p * re_d + im_p * im_d
    num_im = im_p * re_d - re_p * im_d
    try:
        qr = exact_div(num_re, norm) if num_re else num_re
        qi = exact_div(num_im, norm) if num_im else num_im
    except NotDivisible:
        return None
    out = {}
    for k, c in qr._t.items():
        out[k] = GaussianInt(c, 0)
    for k, c in qi._t.items():
        out[k] = out.get(k, GaussianInt(0, 0)) + GaussianInt(0, c)
    return LaurentPoly(p.vars, out, "Zi")


def _split_gauss(p: LaurentPoly):
    if p.ring != "Zi":
        return p.to_ring("Z"), LaurentPoly.zero(p.vars)
    re_ = {k: c.re for k, c in p._t.items()}
    im_ = {k: c.im for k, c in p._t.items()}
    return LaurentPoly(p.vars, re_), LaurentPoly(p.vars, im_)


# modular reduction -------------------------------------------------------------

def reduce_mod(p: LaurentPoly, r: int, n: int) -> LaurentPoly:
    """Canonical representative of ``p`` modulo ``(r, t^n - 1)``.

    Exponents are reduced into ``[0, n)`` and coefficients into ``[0, r)``.
    Only univariate polynomials with integral exponents are accepted.
    """
    if p.nvars != 1:
        raise PolyError("reduce_mod needs a univariate polynomial")
    if n < 1 or r < 2:
        raise PolyError("reduce_mod needs r >= 2 and n >= 1")
    if p.ring == "Zi":
        raise RingMismatch("reduce_mod is defined for integer coefficients")
    out: dict = {}
    for (k,), c in p._t.items():
        if k % SCALE:
            raise PolyError("reduce_mod needs integral exponents")
        e = (k // SCALE) % n
        out[(e * SCALE,)] = out.get((e * SCALE,), 0) + c
    return LaurentPoly(p.vars, out, r)


def reduce_mod_poly(p: LaurentPoly, r: int, modulus: LaurentPoly, period: int | None = None) -> LaurentPoly:
    """Remainder of ``p`` modulo ``(r, modulus)``.

    ``modulus`` must have a unit constant term after shifting, so the
    variable is invertible in the quotient.  If ``period`` is given the
    exponents are first reduced mod ``period`` (valid when ``modulus``
    divides ``t^period - 1``).
    """
    m = modulus.lift() if isinstance(modulus.ring, int) else modulus
    m = m.to_ring(r).normalize_unit()
    if period is not None:
        p = reduce_mod(p, r, period)
    else:
        p = p.lift().to_ring(r) if isinstance(p.ring, int) else p.to_ring(r)
        lo = p.exponent_range()[0] if p else Fraction(0)
        if lo < 0:
            raise PolyError("negative exponents need a period for reduction")
    rem = dict(p._t)
    mt = {k[0]: c for k, c in m._t.items()}
    deg = max(mt)
    inv = pow(mt[deg], -1, r)
    while rem and max(k[0] for k in rem) >= deg:
        top = max(k[0] for k in rem)
        f = rem[(top,)] * inv % r
        for e, c in mt.items():
            k = (e + top - deg,)
            v = (rem.get(k, 0) - f * c) % r
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly(p.vars, rem, r)


# ideal membership ------------------------------------------------------------

def _split_powers(w: LaurentPoly, var: str) -> dict:
    parts = w.project(var)
    for e in parts:
        if e.denominator != 1:
            raise PolyError(f"non-integral exponent of {var}")
    return {int(e): c for e, c in parts.items()}


def _base(var: str, kind: str, ring: Ring = "Z") -> LaurentPoly:
    # v^-1 - v (skein), a + a^-1 (Kauffman F), a - a^-1 (Dubrovnik)
    x = mono(var, {var: 1}, ring=ring)
    xi = mono(var, {var: -1}, ring=ring)
    if kind == "skein":
        return xi - x
    if kind == "kauffman":
        return x + xi
    if kind == "dubrovnik":
        return x - xi
    raise PolyError(f"unknown ideal kind {kind!r}")


def in_skein_ring(w: LaurentPoly, kind: str = "skein") -> bool:
    """Membership of ``w(x, z)`` in Z[x^+-1, z, base/z].

    ``base`` is ``x^-1 - x`` for ``kind="skein"``, ``x + x^-1`` for
    ``"kauffman"`` and ``x - x^-1`` for ``"dubrovnik"``.
    """
    x, z = w.vars
    for i, u in _split_powers(w, z).items():
        if i < 0 and not divides(_base(x, kind) ** (-i), u):
            return False
    return True


def _ideal_check(w: LaurentPoly, r: int, kind: str):
    if w.nvars != 2:
        raise PolyError("ideal membership needs a bivariate polynomial")
    if isinstance(w.ring, int):
        raise RingMismatch("pass the integral polynomial; reduction happens here")
    x, z = w.vars
    if not in_skein_ring(w, kind):
        raise PolyError("polynomial is not in the skein coefficient ring")
    base = _base(x, kind, r)
    for i in sorted(_split_powers(w, z)):
        if i >= r:
            break
        u = w.coefficient_in(z, i)
        um = u.mod(r)
        if um.is_zero():
            continue
        if not divides(base ** (r - i), um):
            return False, i, um
    return True, None, None


def in_ideal_skein(w: LaurentPoly, r: int):
    """Is ``w(v, z)`` in the ideal ``(r, z^r)`` of Z[v^+-1, z, (v^-1 - v)/z]?

    Returns ``(ok, i, u_i mod r)`` where ``i`` is the smallest failing power.
    """
    return _ideal_check(w, r, "skein")


def in_ideal_kauffman(w: LaurentPoly, r: int, flavor: str = "F"):
    """Ideal ``(r, z^r)`` membership for the Kauffman (``F``) or Dubrovnik
    (``Fstar``) coefficient rings."""
    if flavor not in ("F", "Fstar"):
        raise PolyError("flavor must be 'F' or 'Fstar'")
    return _ideal_check(w, r, "kauffman" if flavor == "F" else "dubrovnik")


# text format ----------------------------------------------------------------

def _fmt_exp(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def to_text(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for exps, c in p.items_sorted():
        factors = []
        for v, e in zip(p.vars, exps):
            if e == 0:
                continue
            factors.append(v if e == 1 else f"{v}^{_fmt_exp(e)}")
        if isinstance(c, GaussianInt) and c.im:
            cs = str(c)
            neg = False
        else:
            ci = c.re if isinstance(c, GaussianInt) else c
            neg = ci < 0
            cs = str(abs(ci))
        body = "*".join(factors)
        if not body:
            term = cs
        elif cs == "1":
            term = body
        else:
            term = f"{cs}*{body}"
        if not pieces:
            pieces.append(("-" if neg else "") + term)
        else:
            pieces.append(("- " if neg else "+ ") + term)
    return " ".join(pieces)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<gauss>\((?P<gre>[+-]?\d+)(?P<gim>[+-]\d*)i\))|(?P<i>i)(?![A-Za-z_])"
    r"|(?P<var>[A-Za-z_]\w*)(?:\^(?P<exp>\(?[+-]?\d+(?:/\d+)?\)?))?|(?P<op>[+\-*]))"
)


def parse_text(text: str, vars=None, ring: Ring = "Z") -> LaurentPoly:
    """Parse the text format produced by :func:`to_text`.

    Grammar: ``term (('+'|'-') term)*``; ``term := [coeff ['*']] factor ('*' factor)*``
    or a bare ``coeff``; ``factor := name ['^' int | '^' int '/' int]``.  A
    juxtaposed space also multiplies (``3 t^2``).
    """
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial text")
    terms: list[tuple[int, object, dict]] = []
    sign = 1
    coeff: object = None
    factors: dict = {}
    expect_term = True
    seen_vars: list[str] = []

    def flush():
        nonlocal coeff, factors, sign
        c = 1 if coeff is None else coeff
        terms.append((sign, c, factors))
        coeff, factors, sign = None, {}, 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                if expect_term:
                    raise ParseError("dangling '*'")
                continue
            if not expect_term:
                flush()
            sign = (-1 if op == "-" else 1) * (sign if expect_term else 1)
            expect_term = True
            continue
        if m.group("num") is not None:
            val = int(m.group("num"))
            coeff = val if coeff is None else _mul_coeff(coeff, val)
        elif m.group("gauss") is not None:
            gim = m.group("gim")
            im = int(gim + "1") if gim in ("+", "-") else int(gim)
            val = GaussianInt(int(m.group("gre")), im)
            coeff = val if coeff is None else _mul_coeff(coeff, val)
        elif m.group("i") is not None and (vars is None or "i" not in vars):
            val = GaussianInt(0, 1)
            coeff = val if coeff is None else _mul_coeff(coeff, val)
        else:
            name = m.group("var") or "i"
            e = Fraction(m.group("exp").strip("()")) if m.group("exp") else Fraction(1)
            factors[name] = factors.get(name, 0) + e
            if name not in seen_vars:
                seen_vars.append(name)
        expect_term = False
    if expect_term:
        raise ParseError("expression ends with an operator")
    flush()
    if vars is None:
        vars = tuple(seen_vars) or ("t",)
    vars = (vars,) if isinstance(vars, str) else tuple(vars)
    for v in seen_vars:
        if v not in vars:
            raise ParseError(f"unknown variable {v!r}")
    if any(isinstance(c, GaussianInt) for _, c, _ in terms) and ring == "Z":
        ring = "Zi"
    raw: dict = {}
    for s, c, f in terms:
        key = tuple(_to_internal(f.get(v, 0)) for v in vars)
        val = _coerce(c, ring) if ring == "Zi" else int(c)
        val = val * s if ring == "Zi" else val * s
        raw[key] = raw.get(key, 0) + val
    return LaurentPoly(vars, raw, ring)


def _mul_coeff(a, b):
    if isinstance(a, GaussianInt) or isinstance(b, GaussianInt):
        return GaussianInt.of(a) * GaussianInt.of(b)
    return a * b
