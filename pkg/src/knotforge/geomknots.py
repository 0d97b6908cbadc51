"""Knot diagrams from Lissajous curves and billiard trajectories in prisms.

Lissajous curves ``(cos(nx t + px pi), cos(ny t + py pi), cos(nz t + pz pi))``
have their double points enumerated exactly: with every phase a rational
multiple of pi, each crossing parameter is rational in units of pi and the
over/under decision reduces to the sign of a product of two sines at
rational angles.

Billiard knots live in a right prism over a regular n-gon (vertices on the
unit circle).  The floor trajectory is polygonal; the height is a triangle
wave in arc length between -1 and 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .diagram import DiagramError, PlanarDiagram

__all__ = [
    "GeometryError",
    "LissajousSpec",
    "BilliardSpec",
    "lissajous_diagram",
    "lissajous_crossings",
    "lissajous_diagram_sampled",
    "billiard_prism_diagram",
    "billiard_path",
    "is_alternating",
    "fagnano_trefoil_spec",
    "search_billiard",
    "OCTAGON_FIGURE_EIGHT",
    "spec_from_json",
    "write_svg",
]

Z_MIN_SEPARATION = 1e-9
TANGENT_TOL = 1e-9
CORNER_TOL = 1e-9
CLOSE_TOL = 1e-10


class GeometryError(ValueError):
    pass


# shared PD assembly ------------------------------------------------------------------

@dataclass(frozen=True)
class _Passage:
    comp: int
    param: float | Fraction
    direction: tuple[float, float]
    height: float


def _assemble(pairs: list[tuple[_Passage, _Passage]], ncomp: int) -> PlanarDiagram:
    """PD code from crossing pairs; the first entry of each pair is over."""
    by_comp: dict[int, list] = {c: [] for c in range(ncomp)}
    for idx, (over, under) in enumerate(pairs):
        by_comp[over.comp].append((over.param, idx, "over"))
        by_comp[under.comp].append((under.param, idx, "under"))
    edge_in: dict = {}
    edge_out: dict = {}
    label = 0
    loops = 0
    for c in range(ncomp):
        seq = sorted(by_comp[c])
        if not seq:
            loops += 1
            continue
        first = label + 1
        m = len(seq)
        for pos, (_, idx, role) in enumerate(seq):
            edge_in[(idx, role)] = first + (pos - 1) % m
            edge_out[(idx, role)] = first + pos
        label += m
    pd = []
    for idx, (over, under) in enumerate(pairs):
        a, c = edge_in[(idx, "under")], edge_out[(idx, "under")]
        b_in, d_out = edge_in[(idx, "over")], edge_out[(idx, "over")]
        ux, uy = under.direction
        ox, oy = over.direction
        cross = ux * oy - uy * ox
        if abs(cross) < TANGENT_TOL:
            raise GeometryError("tangential double point")
        pd.append((a, b_in, c, d_out) if cross > 0 else (a, d_out, c, b_in))
    return PlanarDiagram.from_pd(pd, loops=loops)


def _order_pair(p: _Passage, q: _Passage) -> tuple[_Passage, _Passage]:
    if abs(p.height - q.height) < Z_MIN_SEPARATION:
        raise GeometryError("resonant spec: strands meet in space (z tie at a double point)")
    return (p, q) if p.height > q.height else (q, p)


# Lissajous ---------------------------------------------------------------------------

def _pi_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


@dataclass(frozen=True)
class LissajousSpec:
    """Frequencies and phases; phases are rational multiples of pi."""

    nx: int
    ny: int
    nz: int
    phix: Fraction = Fraction(0)
    phiy: Fraction = Fraction(0)
    phiz: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("phix", "phiy", "phiz"):
            object.__setattr__(self, name, _pi_fraction(getattr(self, name)))
        for n in (self.nx, self.ny, self.nz):
            if n < 1:
                raise GeometryError("frequencies must be positive")
        if gcd(self.nx, self.ny) != 1 or gcd(self.nx, self.nz) != 1 or gcd(self.ny, self.nz) != 1:
            raise GeometryError("frequencies must be pairwise coprime")

    @property
    def odd(self) -> bool:
        return self.nx % 2 == 1 and self.ny % 2 == 1 and self.nz % 2 == 1

    def point(self, t: float) -> tuple[float, float, float]:
        return (math.cos(self.nx * t + float(self.phix) * math.pi),
                math.cos(self.ny * t + float(self.phiy) * math.pi),
                math.cos(self.nz * t + float(self.phiz) * math.pi))

    def velocity(self, t: float) -> tuple[float, float]:
        return (-self.nx * math.sin(self.nx * t + float(self.phix) * math.pi),
                -self.ny * math.sin(self.ny * t + float(self.phiy) * math.pi))

    def to_json(self) -> dict:
        return {"type": "lissajous", "nx": self.nx, "ny": self.ny, "nz": self.nz,
                "phix": str(self.phix), "phiy": str(self.phiy), "phiz": str(self.phiz)}


def _mod2(q: Fraction) -> Fraction:
    return q - 2 * math.floor(q / 2)


def _sin_sign(q: Fraction) -> int:
    """Sign of sin(q pi)."""
    r = _mod2(q)
    if r == 0 or r == 1:
        return 0
    return 1 if r < 1 else -1


def _sum_classes(n: int, p: Fraction) -> set[Fraction]:
    # n (T + S) + 2p == 0 mod 2  =>  T + S == (2m - 2p)/n mod 2
    return {_mod2(Fraction(2 * m, n) - 2 * p / n) for m in range(n)}


def _diff_classes(n: int) -> set[Fraction]:
    return {Fraction(2 * j, n) for j in range(1, n)}


def lissajous_crossings(spec: LissajousSpec) -> list[tuple[Fraction, Fraction]]:
    """Exact double points ``(T, S)``, ``T < S`` in ``[0, 2)`` (units of pi)."""
    sx, sy = _sum_classes(spec.nx, spec.phix), _sum_classes(spec.ny, spec.phiy)
    if sx & sy:
        raise GeometryError("resonant spec: the projection is traced twice along an arc")
    cases = [(s, d) for s in sy for d in _diff_classes(spec.nx)]
    cases += [(s, d) for s in sx for d in _diff_classes(spec.ny)]
    found = set()
    for sigma, dlt in cases:
        t0 = (sigma + dlt) / 2
        for t in (_mod2(t0), _mod2(t0 + 1)):
            s = _mod2(t - dlt)
            if s != t:
                found.add((min(t, s), max(t, s)))
    pts = sorted(found)
    seen: dict = {}
    for t, s in pts:
        for u in (t, s):
            if u in seen:
                raise GeometryError("resonant spec: triple point in the projection")
            seen[u] = True
    return pts


def _lissajous_passage(spec: LissajousSpec, u: Fraction, height: float) -> _Passage:
    vx, vy = spec.velocity(float(u) * math.pi)
    norm = math.hypot(vx, vy)
    if norm < TANGENT_TOL:
        raise GeometryError("resonant spec: singular point of the projection")
    return _Passage(0, u, (vx / norm, vy / norm), height)


def lissajous_diagram(spec: LissajousSpec) -> PlanarDiagram:
    pairs = []
    for t, s in lissajous_crossings(spec):
        # z(T) - z(S) = -2 sin(nz (T+S)/2 + pz) sin(nz (T-S)/2), angles in units of pi
        sign = -_sin_sign(spec.nz * (t + s) / 2 + spec.phiz) * _sin_sign(spec.nz * (t - s) / 2)
        if sign == 0:
            raise GeometryError("resonant spec: strands meet in space (z tie at a double point)")
        pt, ps = _lissajous_passage(spec, t, sign), _lissajous_passage(spec, s, -sign)
        pairs.append((pt, ps) if sign > 0 else (ps, pt))
    if not pairs and len(_sum_classes(spec.nx, spec.phix)) == 0:
        raise GeometryError("resonant spec")
    return _assemble(pairs, 1)


def lissajous_diagram_sampled(spec: LissajousSpec, samples: int = 4096) -> PlanarDiagram:
    """Independent route: intersect the sampled polyline of the projection."""
    ts = np.linspace(0.0, 2 * math.pi, samples + 1)
    x = np.cos(spec.nx * ts + float(spec.phix) * math.pi)
    y = np.cos(spec.ny * ts + float(spec.phiy) * math.pi)
    z = np.cos(spec.nz * ts + float(spec.phiz) * math.pi)
    pts = np.stack([x, y], axis=1)
    hits = _polyline_self_intersections(pts[:-1], pts[1:])
    pairs = []
    h = ts[1] - ts[0]
    for i, j, a, b in hits:
        t, s = ts[i] + a * h, ts[j] + b * h
        zt = z[i] + a * (z[i + 1] - z[i])
        zs = z[j] + b * (z[j + 1] - z[j])
        di = pts[i + 1] - pts[i]
        dj = pts[j + 1] - pts[j]
        pt = _Passage(0, t / math.pi, tuple(di / np.linalg.norm(di)), zt)
        ps = _Passage(0, s / math.pi, tuple(dj / np.linalg.norm(dj)), zs)
        pairs.append(_order_pair(pt, ps))
    return _assemble(pairs, 1)


def _polyline_self_intersections(p0: np.ndarray, p1: np.ndarray):
    """Proper crossings between non-adjacent segments of a closed polyline."""
    m = len(p0)
    d = p1 - p0
    out = []
    block = 512
    for start in range(0, m, block):
        sl = slice(start, min(m, start + block))
        a0, ad = p0[sl, None, :], d[sl, None, :]
        b0, bd = p0[None, :, :], d[None, :, :]
        den = ad[..., 0] * bd[..., 1] - ad[..., 1] * bd[..., 0]
        diff = b0 - a0
        with np.errstate(divide="ignore", invalid="ignore"):
            ta = (diff[..., 0] * bd[..., 1] - diff[..., 1] * bd[..., 0]) / den
            tb = (diff[..., 0] * ad[..., 1] - diff[..., 1] * ad[..., 0]) / den
        ok = (den != 0) & (ta >= 0) & (ta < 1) & (tb >= 0) & (tb < 1)
        ii, jj = np.nonzero(ok)
        for i, j in zip(ii.tolist(), jj.tolist()):
            gi = start + i
            if j <= gi or j == gi + 1 or (gi == 0 and j == m - 1):
                continue
            out.append((gi, j, float(ta[i, j]), float(tb[i, j])))
    return out


# billiards ------------------------------------------------------------------------------

@dataclass(frozen=True)
class BilliardSpec:
    """Billiard in the prism over a regular ``ngon`` with vertices on the unit circle.

    Either ``stride`` (edge-midpoint pattern: midpoint of edge i to that of
    edge i+stride) or ``start = (edge, fraction)`` with ``heading`` (angle in
    units of pi) describes the floor path.  The height is a triangle wave in
    arc length with ``extrema`` maxima per component; ``phase`` shifts it
    (fraction of one wave).  ``phase = 0`` puts height 0 at the first wall.
    """

    ngon: int
    stride: int | None = None
    extrema: int | None = None
    phase: Fraction = Fraction(0)
    start: tuple[int, float] | None = None
    heading: float | None = None
    max_bounces: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "phase", _pi_fraction(self.phase))
        if self.ngon < 3:
            raise GeometryError("the floor needs at least 3 sides")
        if self.stride is None and (self.start is None or self.heading is None):
            raise GeometryError("give a stride or a start point and heading")
        if self.stride is not None and not 1 <= self.stride < self.ngon:
            raise GeometryError("stride must lie in 1..ngon-1")

    def to_json(self) -> dict:
        out: dict = {"type": "billiard", "ngon": self.ngon}
        if self.stride is not None:
            out["stride"] = self.stride
        else:
            out["start"] = [self.start[0], self.start[1]]
            out["heading"] = self.heading
        if self.extrema is not None:
            out["extrema"] = self.extrema
        out["phase"] = str(self.phase)
        return out


def _polygon(n: int) -> np.ndarray:
    ang = 2 * math.pi * np.arange(n) / n + math.pi / 2
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def billiard_path(spec: BilliardSpec) -> list[np.ndarray]:
    """Closed floor paths (one vertex array per component, last == first)."""
    verts = _polygon(spec.ngon)
    n = spec.ngon
    if spec.stride is not None:
        mids = (verts + np.roll(verts, -1, axis=0)) / 2
        g = gcd(n, spec.stride)
        comps = []
        for c in range(g):
            idx = [(c + j * spec.stride) % n for j in range(n // g + 1)]
            comps.append(mids[idx])
        return comps
    return [_simulate(verts, spec)]


def _simulate(verts: np.ndarray, spec: BilliardSpec) -> np.ndarray:
    n = len(verts)
    edge, frac = spec.start
    a, b = verts[edge % n], verts[(edge + 1) % n]
    p0 = a + frac * (b - a)
    ang = float(spec.heading) * math.pi
    d0 = np.array([math.cos(ang), math.sin(ang)])
    p, d, cur = p0.copy(), d0.copy(), edge % n
    pts = [p0.copy()]
    for _ in range(spec.max_bounces):
        best = None
        for e in range(n):
            if e == cur:
                continue
            q, r = verts[e], verts[(e + 1) % n]
            w = r - q
            den = d[0] * w[1] - d[1] * w[0]
            if abs(den) < 1e-15:
                continue
            diff = q - p
            t = (diff[0] * w[1] - diff[1] * w[0]) / den
            u = (diff[0] * d[1] - diff[1] * d[0]) / den
            if t > 1e-12 and -1e-12 <= u <= 1 + 1e-12 and (best is None or t < best[0]):
                best = (t, e, u)
        if best is None:
            raise GeometryError("open trajectory: left the table")
        t, e, u = best
        if u < CORNER_TOL or u > 1 - CORNER_TOL:
            raise GeometryError("corner hit")
        p = p + t * d
        w = verts[(e + 1) % n] - verts[e]
        w = w / np.linalg.norm(w)
        d = 2 * np.dot(d, w) * w - d
        cur = e
        pts.append(p.copy())
        if np.linalg.norm(p - p0) < CLOSE_TOL and np.linalg.norm(d - d0) < 1e-8:
            return np.array(pts)
    raise GeometryError("open trajectory: no closure within the bounce limit")


def _triangle_wave(x: float) -> float:
    # period 1; 0 at x=0, 1 at 1/4, 0 at 1/2, -1 at 3/4
    f = x - math.floor(x)
    if f < 0.25:
        return 4 * f
    if f < 0.75:
        return 2 - 4 * f
    return 4 * f - 4


def _segment_crossings(comps: list[np.ndarray]):
    segs = []
    for c, pts in enumerate(comps):
        lens = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        cum = np.concatenate([[0.0], np.cumsum(lens)])
        for i in range(len(pts) - 1):
            segs.append((c, i, pts[i], pts[i + 1], cum[i], lens[i], len(pts) - 1))
    out = []
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            c1, i1, a0, a1, s1, l1, m1 = segs[x]
            c2, i2, b0, b1, s2, l2, m2 = segs[y]
            if c1 == c2 and (abs(i1 - i2) == 1 or abs(i1 - i2) == m1 - 1):
                continue
            ad, bd = a1 - a0, b1 - b0
            den = ad[0] * bd[1] - ad[1] * bd[0]
            if abs(den) < 1e-14:
                continue
            diff = b0 - a0
            ta = (diff[0] * bd[1] - diff[1] * bd[0]) / den
            tb = (diff[0] * ad[1] - diff[1] * ad[0]) / den
            eps = 1e-12
            if eps < ta < 1 - eps and eps < tb < 1 - eps:
                out.append(((c1, s1 + ta * l1, ad / l1), (c2, s2 + tb * l2, bd / l2)))
    return out


def billiard_prism_diagram(spec: BilliardSpec) -> PlanarDiagram:
    comps = billiard_path(spec)
    totals = [float(np.sum(np.linalg.norm(np.diff(p, axis=0), axis=1))) for p in comps]
    waves = []
    for pts in comps:
        m = spec.extrema if spec.extrema is not None else len(pts) - 1
        if m < 1:
            raise GeometryError("extrema must be positive")
        waves.append(m)
    pairs = []
    for (c1, s1, d1), (c2, s2, d2) in _segment_crossings(comps):
        h1 = _triangle_wave(s1 / totals[c1] * waves[c1] + float(spec.phase))
        h2 = _triangle_wave(s2 / totals[c2] * waves[c2] + float(spec.phase))
        pairs.append(_order_pair(_Passage(c1, s1, tuple(d1), h1), _Passage(c2, s2, tuple(d2), h2)))
    return _assemble(pairs, len(comps))


def fagnano_trefoil_spec(offset: float = 0.08, phase=Fraction(0)) -> BilliardSpec:
    """Perturbed Fagnano orbit in the equilateral triangle: start ``offset``
    away from an edge midpoint, parallel to the medial triangle; it closes
    after six segments and carries three maxima."""
    return BilliardSpec(3, start=(0, 0.5 + offset), heading=_fagnano_heading(), extrema=3, phase=phase)


def _fagnano_heading() -> float:
    v = _polygon(3)
    mids = (v + np.roll(v, -1, axis=0)) / 2
    d = mids[1] - mids[0]
    return math.atan2(d[1], d[0]) / math.pi


# The octagon stride-3 floor path is a 16-crossing closed 3-braid.  With two
# maxima instead of eight the height pattern collapses it to the closure of
# (s1 s2^-1)^2; every phase that is not a multiple of 1/8 works.
OCTAGON_FIGURE_EIGHT = BilliardSpec(8, stride=3, extrema=2, phase=Fraction(1, 16))


def search_billiard(ngon: int, target, headings, starts, extrema_range, phases,
                    max_bounces: int = 64):
    """Yield specs whose diagram satisfies ``target(diagram)``."""
    for heading in headings:
        for start in starts:
            for m in extrema_range:
                for ph in phases:
                    spec = BilliardSpec(ngon, start=start, heading=heading, extrema=m,
                                        phase=ph, max_bounces=max_bounces)
                    try:
                        d = billiard_prism_diagram(spec)
                    except (GeometryError, DiagramError):
                        continue
                    if target(d):
                        yield spec, d


# misc ---------------------------------------------------------------------------------

def is_alternating(d: PlanarDiagram) -> bool:
    """Do over- and under-passes alternate along every component?"""
    if d.n == 0:
        return True
    head = {}
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        head[a] = "under"
        head[dd if s > 0 else b] = "over"
    succ = d.successor()
    seen = set()
    for start in sorted(head):
        if start in seen:
            continue
        seq = []
        x = start
        while x not in seen:
            seen.add(x)
            seq.append(head[x])
            x = succ[x]
        if any(seq[i] == seq[(i + 1) % len(seq)] for i in range(len(seq))):
            return False
    return True


def spec_from_json(obj: dict):
    kind = obj.get("type")
    if kind == "lissajous":
        return LissajousSpec(int(obj["nx"]), int(obj["ny"]), int(obj["nz"]),
                             Fraction(str(obj.get("phix", "0"))), Fraction(str(obj.get("phiy", "0"))),
                             Fraction(str(obj.get("phiz", "0"))))
    if kind == "billiard":
        start = tuple(obj["start"]) if "start" in obj else None
        return BilliardSpec(int(obj["ngon"]), obj.get("stride"), obj.get("extrema"),
                            Fraction(str(obj.get("phase", "0"))), start, obj.get("heading"))
    raise GeometryError(f"unknown spec type {kind!r}")


def write_svg(spec, path: str, size: int = 400) -> None:
    """Flat drawing of the projection (polyline only)."""
    if isinstance(spec, LissajousSpec):
        ts = np.linspace(0, 2 * math.pi, 2001)
        comps = [np.stack([np.cos(spec.nx * ts + float(spec.phix) * math.pi),
                           np.cos(spec.ny * ts + float(spec.phiy) * math.pi)], axis=1)]
    else:
        comps = billiard_path(spec)
    half = size / 2
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for pts in comps:
        coords = " ".join(f"{half + 0.9 * half * x:.3f},{half - 0.9 * half * y:.3f}" for x, y in pts)
        lines.append(f'<polyline fill="none" stroke="black" points="{coords}"/>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
