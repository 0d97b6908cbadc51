"""Planar diagram codes, braid words and diagram surgery.

A crossing is a 4-tuple of arc labels ``(a, b, c, d)`` listed counterclockwise
starting at the incoming under-arc, so the under-strand runs ``a -> c``.  The
crossing is positive when the over-strand runs ``d -> b`` and negative when it
runs ``b -> d``.  Free circles that meet no crossing are kept as a count.

Every diagram is stored oriented and canonically labelled: components are
numbered consecutively along their orientation, so equal labelled structures
hash equal, which the skein recursions use as a memo key.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "BraidWord",
    "PlanarDiagram",
    "DiagramError",
    "braid_closure",
    "as_diagram",
    "torus_braid",
    "periodic_power_closure",
    "diagram_edit",
    "validate",
    "load_table",
    "load_knot",
    "diagram_from_record",
    "unknot",
    "unlink",
]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(x) for x in self.word))
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise DiagramError(f"generator {g} out of range for {self.strands} strands")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise DiagramError("strand counts differ")
        return BraidWord(self.strands, self.word + other.word)

    def __pow__(self, n: int) -> "BraidWord":
        if n < 0:
            return BraidWord(self.strands, tuple(-g for g in reversed(self.word)) * (-n))
        return BraidWord(self.strands, self.word * n)

    def permutation(self) -> list[int]:
        """Position reached at the top by the strand starting at each bottom position."""
        pos = list(range(self.strands))  # pos[p] = strand at position p
        for g in self.word:
            i = abs(g) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for p, s in enumerate(pos):
            perm[s] = p
        return perm

    def cycle_count(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if not seen[s]:
                count += 1
                while not seen[s]:
                    seen[s] = True
                    s = perm[s]
        return count

    def exponent_sum(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": list(self.word)}


class _UF:
    __slots__ = ("p",)

    def __init__(self):
        self.p: dict = {}

    def find(self, x):
        p = self.p
        root = x
        while p.get(root, root) != root:
            root = p[root]
        while p.get(x, x) != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.p[rb] = ra


def _occurrences(crossings) -> dict:
    occ: dict = {}
    for ci, x in enumerate(crossings):
        for s, a in enumerate(x):
            occ.setdefault(a, []).append((ci, s))
    return occ


def _orient(crossings: Sequence[tuple], hints: Sequence[int | None]):
    """Orient every component and return ``(tuples, signs)``.

    ``hints[i]`` is the trusted sign of crossing ``i`` (its tuple then also
    carries a trusted under-direction), ``0`` when only the under-direction
    is trusted, or ``None`` for an untrusted crossing.
    Each component's direction follows the first trusted passage met; if it
    has none, arcs are taken in increasing-label order.
    """
    crossings = [tuple(x) for x in crossings]
    occ = _occurrences(crossings)
    for a, lst in occ.items():
        if len(lst) != 2:
            raise DiagramError(f"arc {a} appears {len(lst)} times")
    # passage graph: travelling along arc a into (ci, s), continue out of (ci, s+2)
    visited: set = set()
    flip: dict = {}
    for start in sorted(occ):
        if start in visited:
            continue
        # forward traversal: enter arc `start` at occ[start][0], travel to occ[start][1]
        comp_arcs = []
        passages = []  # (ci, slot entered)
        a = start
        src = occ[start][0]
        while True:
            comp_arcs.append(a)
            visited.add(a)
            o1, o2 = occ[a]
            dst = o2 if o1 == src else o1
            ci, s = dst
            passages.append((ci, s))
            out = (s + 2) % 4
            nxt = crossings[ci][out]
            src = (ci, out)
            a = nxt
            if a == start and src == occ[start][0]:
                break
            if a == start:
                # came back through the other end: arc used in reverse, shouldn't happen
                break
        vote = 0
        for ci, s in passages:
            h = hints[ci]
            if h is None:
                continue
            if s == 0:
                vote = 1
            elif s == 2:
                vote = -1
            elif h == 0:
                continue
            elif s == 3:
                vote = 1 if h > 0 else -1
            else:
                vote = -1 if h > 0 else 1
            break
        if vote == 0:
            # arcs increasing along orientation: compare first step
            nxt_label = comp_arcs[1] if len(comp_arcs) > 1 else comp_arcs[0]
            prev_label = comp_arcs[-1]
            vote = 1 if _label_forward(start, nxt_label, prev_label) else -1
        for ci, s in passages:
            entered = s if vote == 1 else (s + 2) % 4
            flip.setdefault(ci, []).append(entered)
    tuples = []
    signs = []
    for ci, x in enumerate(crossings):
        entered = flip[ci]
        if len(entered) == 1:
            # both passages of the crossing lie on... cannot happen: two strands
            raise DiagramError("inconsistent crossing passages")
        under_in = [e for e in entered if e in (0, 2)]
        over_in = [e for e in entered if e in (1, 3)]
        if len(under_in) != 1 or len(over_in) != 1:
            raise DiagramError("inconsistent crossing passages")
        if under_in[0] == 2:
            x = (x[2], x[3], x[0], x[1])
            o = (over_in[0] + 2) % 4
        else:
            o = over_in[0]
        tuples.append(x)
        signs.append(1 if o == 3 else -1)
    return tuples, signs


def _label_forward(start, nxt, prev) -> bool:
    # start is the minimum label of its component; forward if the next arc
    # label is the smaller of the two neighbours
    return nxt <= prev


class PlanarDiagram:
    """Oriented link diagram with canonical arc labels.

    Build one with :meth:`from_pd` (published PD codes), :func:`braid_closure`
    or the surgery helpers; the raw constructor expects already oriented data.
    """

    __slots__ = ("crossings", "signs", "loops", "_key", "_succ", "_comp")

    def __init__(self, crossings: Iterable[tuple], signs: Iterable[int], loops: int = 0):
        self.crossings = tuple(tuple(x) for x in crossings)
        self.signs = tuple(signs)
        self.loops = int(loops)
        self._key = None
        self._succ = None
        self._comp = None

    # construction ---------------------------------------------------------
    @classmethod
    def build(cls, crossings: Sequence[tuple], hints: Sequence[int | None], loops: int = 0) -> "PlanarDiagram":
        """Orient (using trusted hints), relabel canonically and wrap."""
        if not crossings:
            return cls((), (), loops)
        tuples, signs = _orient(crossings, hints)
        return _canonical(tuples, signs, loops)

    @classmethod
    def from_pd(cls, pd: Sequence[Sequence[int]], loops: int = 0) -> "PlanarDiagram":
        """Ingest a PD code in the knot-table convention.

        Each under-strand runs ``a -> c``; components whose orientation is not
        pinned by an under-passage follow increasing arc labels.
        """
        pd = [tuple(int(a) for a in x) for x in pd]
        for x in pd:
            if len(x) != 4:
                raise DiagramError("each crossing needs four arc labels")
        report = _structure_violations(pd)
        if report:
            raise DiagramError("; ".join(report))
        hints = _pd_hints(pd)
        return cls.build(pd, hints, loops)

    # basic data -------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.crossings, self.signs, self.loops)
        return self._key

    def __eq__(self, other):
        return isinstance(other, PlanarDiagram) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PlanarDiagram(n={self.n}, com={self.num_components}, w={self.writhe}, loops={self.loops})"

    def successor(self) -> dict:
        """Arc -> next arc along the orientation."""
        if self._succ is None:
            succ = {}
            for (a, b, c, d), s in zip(self.crossings, self.signs):
                succ[a] = c
                if s > 0:
                    succ[d] = b
                else:
                    succ[b] = d
            self._succ = succ
        return self._succ

    def components(self) -> list[list[int]]:
        """Arc cycles of the crossing-carrying components (free loops excluded)."""
        if self._comp is None:
            succ = self.successor()
            seen = set()
            comps = []
            for a in sorted(succ):
                if a in seen:
                    continue
                cyc = []
                while a not in seen:
                    seen.add(a)
                    cyc.append(a)
                    a = succ[a]
                comps.append(cyc)
            self._comp = comps
        return self._comp

    @property
    def num_components(self) -> int:
        return len(self.components()) + self.loops

    def component_of(self) -> dict:
        out = {}
        for i, cyc in enumerate(self.components()):
            for a in cyc:
                out[a] = i
        return out

    def linking_number(self) -> int:
        """Total linking number: half the signed count of inter-component crossings."""
        comp = self.component_of()
        total = 0
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            if comp[a] != comp[b]:
                total += s
        if total % 2:
            raise DiagramError("odd inter-component crossing sum")
        return total // 2

    def to_pd(self) -> list[list[int]]:
        return [list(x) for x in self.crossings]

    def to_json(self) -> dict:
        return {"pd": self.to_pd(), "signs": list(self.signs), "loops": self.loops}

    # edits ----------------------------------------------------------------
    def mirror(self) -> "PlanarDiagram":
        xs = []
        for x, s in zip(self.crossings, self.signs):
            xs.append(_switch_tuple(x, s))
        return PlanarDiagram.build(xs, [-s for s in self.signs], self.loops)

    def switch(self, i: int) -> "PlanarDiagram":
        self._check_index(i)
        xs = list(self.crossings)
        hints: list = list(self.signs)
        xs[i] = _switch_tuple(xs[i], self.signs[i])
        hints[i] = -self.signs[i]
        return PlanarDiagram.build(xs, hints, self.loops)

    def smooth(self, i: int, kind: str) -> "PlanarDiagram":
        """Smooth crossing ``i``; ``kind`` is ``"A"``, ``"B"`` or ``"oriented"``."""
        self._check_index(i)
        a, b, c, d = self.crossings[i]
        if kind == "oriented":
            kind = "A" if self.signs[i] > 0 else "B"
        if kind == "A":
            pairs = ((a, b), (c, d))
        elif kind == "B":
            pairs = ((a, d), (b, c))
        else:
            raise DiagramError(f"unknown smoothing {kind!r}")
        trusted = kind == ("A" if self.signs[i] > 0 else "B")
        rest = [x for j, x in enumerate(self.crossings) if j != i]
        hints = [s for j, s in enumerate(self.signs) if j != i]
        return _merge_and_build(rest, hints, pairs, self.loops, trusted)

    def _check_index(self, i: int):
        if not 0 <= i < self.n:
            raise DiagramError(f"crossing index {i} out of range")

    # faces ----------------------------------------------------------------
    def faces(self) -> list[list[tuple[int, int, int]]]:
        """Faces as lists of ``(arc, (ci, slot) start, (ci, slot) end)`` steps.

        Each face is traversed with the face on the left.
        """
        occ = _occurrences(self.crossings)
        seen = set()
        faces = []
        for a in sorted(occ):
            for start in occ[a]:
                # traverse arc a from `start` to the other end
                if (a, start) in seen:
                    continue
                face = []
                arc, frm = a, start
                while (arc, frm) not in seen:
                    seen.add((arc, frm))
                    o1, o2 = occ[arc]
                    to = o2 if o1 == frm else o1
                    face.append((arc, frm, to))
                    ci, s = to
                    ns = (s - 1) % 4
                    frm = (ci, ns)
                    arc = self.crossings[ci][ns]
                faces.append(face)
        return faces

    def kmove(self, x: int | str, y: int | str, k: int, face: int | None = None) -> "PlanarDiagram":
        """Insert ``k`` half-twists (``sigma_1^k``) between arcs ``x`` and ``y``.

        ``x``/``y`` are arc labels sharing a face, or the string ``"loop"``
        for a free circle.  The left strand of the twist box runs along
        ``x`` against the face direction, the right strand along ``y``.
        """
        return _kmove(self, x, y, k, face)

    def arc_direction_on_face(self, face: list, arc: int) -> int:
        """+1 if the arc's orientation agrees with the face traversal."""
        succ = self.successor()
        for a, frm, to in face:
            if a == arc:
                ci, s = to
                x = self.crossings[ci]
                sign = self.signs[ci]
                # arc enters crossing ci at slot s iff it is an incoming slot
                incoming = s == 0 or (s == 3 and sign > 0) or (s == 1 and sign < 0)
                return 1 if incoming else -1
        raise DiagramError(f"arc {arc} not on face")


def _switch_tuple(x: tuple, sign: int) -> tuple:
    a, b, c, d = x
    return (d, a, b, c) if sign > 0 else (b, c, d, a)


def _pd_hints(pd) -> list:
    # a published PD pins each under-strand direction (a -> c) but not the signs
    return [_UNDER_ONLY] * len(pd)


_UNDER_ONLY = 0  # hint value: tuple's under-direction trusted, sign unknown


def _structure_violations(pd) -> list[str]:
    out = []
    counts: dict = {}
    for x in pd:
        for a in x:
            counts[a] = counts.get(a, 0) + 1
    for a, n in sorted(counts.items()):
        if n != 2:
            out.append(f"arc multiplicity: arc {a} used {n} times")
    return out


def _canonical(tuples: list, signs: list, loops: int) -> PlanarDiagram:
    succ = {}
    for (a, b, c, d), s in zip(tuples, signs):
        succ[a] = c
        if s > 0:
            succ[d] = b
        else:
            succ[b] = d
    if len(succ) != 2 * len(tuples):
        raise DiagramError("orientation does not give every arc a single successor")
    new = {}
    label = 1
    for a in sorted(succ):
        if a in new:
            continue
        x = a
        while x not in new:
            new[x] = label
            label += 1
            x = succ[x]
    xs = [tuple(new[a] for a in x) for x in tuples]
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    return PlanarDiagram([xs[i] for i in order], [signs[i] for i in order], loops)


def _merge_and_build(rest: list, hints: list, pairs, loops: int, trusted: bool = False) -> PlanarDiagram:
    uf = _UF()
    for p, q in pairs:
        uf.union(p, q)
    xs = [tuple(uf.find(a) for a in x) for x in rest]
    present = {a for x in xs for a in x}
    classes = set()
    for p, q in pairs:
        for a in (p, q):
            classes.add(uf.find(a))
    free = sum(1 for r in classes if r not in present)
    return PlanarDiagram.build(xs, hints, loops + free)


def unknot() -> PlanarDiagram:
    return PlanarDiagram((), (), 1)


def unlink(n: int) -> PlanarDiagram:
    return PlanarDiagram((), (), n)


# braids ---------------------------------------------------------------------

def _braid_tuples(b: BraidWord, first_label: int = 1):
    """Crossing tuples for the braid box; returns (tuples, signs, bottom, top, next_label)."""
    n = b.strands
    cur = list(range(first_label, first_label + n))
    bottom = list(cur)
    nxt = first_label + n
    tuples = []
    signs = []
    for g in b.word:
        i = abs(g) - 1
        x, y = cur[i], cur[i + 1]
        p, q = nxt, nxt + 1  # new arcs at positions i, i+1
        nxt += 2
        if g > 0:
            # over: bottom-left -> top-right; under: bottom-right -> top-left
            tuples.append((y, q, p, x))
            signs.append(1)
        else:
            # under: bottom-left -> top-right; over: bottom-right -> top-left
            tuples.append((x, y, q, p))
            signs.append(-1)
        cur[i], cur[i + 1] = p, q
    return tuples, signs, bottom, cur, nxt


def as_diagram(x) -> PlanarDiagram:
    """Accept a diagram or a braid word (closed up)."""
    if isinstance(x, PlanarDiagram):
        return x
    if isinstance(x, BraidWord):
        return braid_closure(x)
    raise DiagramError(f"expected a diagram or braid, got {type(x).__name__}")


def braid_closure(b: BraidWord) -> PlanarDiagram:
    tuples, signs, bottom, top, _ = _braid_tuples(b)
    pairs = list(zip(top, bottom))
    return _merge_and_build(tuples, signs, pairs, 0, True)


def torus_braid(p: int, q: int) -> BraidWord:
    """``(sigma_1 ... sigma_{p-1})^q`` on ``p`` strands."""
    if p < 2:
        raise DiagramError("torus braid needs p >= 2")
    if q < 1:
        raise DiagramError("torus braid needs q >= 1")
    return BraidWord(p, tuple(range(1, p)) * q)


def periodic_power_closure(b: BraidWord, r: int) -> PlanarDiagram:
    if r < 2:
        raise DiagramError("period must be at least 2")
    return braid_closure(b ** r)


# k-moves ---------------------------------------------------------------------

def _kmove(d: PlanarDiagram, x, y, k: int, face_index: int | None) -> PlanarDiagram:
    if k < 0:
        raise DiagramError("k must be nonnegative")
    if x == "loop" and y == "loop":
        if d.loops < 2:
            raise DiagramError("need two free loops")
        if d.n:
            raise DiagramError("two-loop k-move only supported on crossingless diagrams")
        res = braid_closure(BraidWord(2, (1,) * k))
        return PlanarDiagram(res.crossings, res.signs, res.loops + d.loops - 2)
    if x == "loop":
        x, y = y, x
    base = max((a for c in d.crossings for a in c), default=0) + 1
    if y == "loop":
        if d.loops < 1:
            raise DiagramError("no free loop available")
        face = _face_with(d, [x], face_index)
        px = _arc_on_face(face, x)
        # P runs along x against the face direction: from its end to its start
        p_start, p_end = px[2], px[1]
        lb_p, lt_p = base, base + 1
        lb_q = lt_q = base + 2
        xs = _relabel_endpoint(d.crossings, {p_start: lb_p, p_end: lt_p})
        extra_loops = d.loops - 1
    else:
        if x == y:
            raise DiagramError("k-move needs two distinct arcs")
        face = _face_with(d, [x, y], face_index)
        px = _arc_on_face(face, x)
        py = _arc_on_face(face, y)
        p_start, p_end = px[2], px[1]
        q_start, q_end = py[1], py[2]
        lb_p, lt_p, lb_q, lt_q = base, base + 1, base + 2, base + 3
        xs = _relabel_endpoint(d.crossings, {p_start: lb_p, p_end: lt_p, q_start: lb_q, q_end: lt_q})
        extra_loops = d.loops
    if k == 0:
        pairs = [(lb_p, lt_p), (lb_q, lt_q)]
        return _merge_and_build(xs, list(d.signs), pairs, extra_loops)
    tuples, _, bottom, top, _ = _braid_tuples(BraidWord(2, (1,) * k), first_label=base + 10)
    pairs = [(bottom[0], lb_p), (bottom[1], lb_q), (top[0], lt_p), (top[1], lt_q)]
    hints = list(d.signs) + [None] * len(tuples)
    return _merge_and_build(xs + tuples, hints, pairs, extra_loops)


def _face_with(d: PlanarDiagram, arcs: list, face_index: int | None):
    faces = d.faces()
    if face_index is not None:
        if not 0 <= face_index < len(faces):
            raise DiagramError("face index out of range")
        face = faces[face_index]
        have = [a for a, _, _ in face]
        for a in arcs:
            if have.count(a) != 1:
                raise DiagramError(f"arc {a} is not a simple edge of face {face_index}")
        return face
    for face in faces:
        have = [a for a, _, _ in face]
        if all(have.count(a) == 1 for a in arcs):
            return face
    raise DiagramError(f"arcs {arcs} do not share a face")


def _arc_on_face(face, arc):
    for step in face:
        if step[0] == arc:
            return step
    raise DiagramError(f"arc {arc} not on face")


def _relabel_endpoint(crossings, mapping: dict) -> list:
    out = []
    for ci, x in enumerate(crossings):
        out.append(tuple(mapping.get((ci, s), a) for s, a in enumerate(x)))
    return out


def parallel_sites(d: PlanarDiagram) -> list[tuple[int, int, int]]:
    """All ``(face, x, y)`` with distinct arcs ``x``, ``y`` bounding the face once each."""
    sites = []
    for fi, face in enumerate(d.faces()):
        arcs = [a for a, _, _ in face]
        simple = [a for a in arcs if arcs.count(a) == 1]
        for i, a in enumerate(simple):
            for b in simple[i + 1:]:
                sites.append((fi, a, b))
    return sites


def coherent_on_face(d: PlanarDiagram, face_index: int, x: int, y: int) -> bool:
    """True when the twist box between ``x`` and ``y`` gets parallel orientations."""
    face = d.faces()[face_index]
    return d.arc_direction_on_face(face, x) != d.arc_direction_on_face(face, y)


def diagram_edit(d: PlanarDiagram, edit: str, site=None, k: int | None = None) -> PlanarDiagram:
    """Dispatch for the named diagram edits.

    ``edit`` is one of ``mirror``, ``switch``, ``smooth-L0``, ``smooth-A``,
    ``smooth-B`` (``site`` = crossing index) or ``k-move``, ``t_k-move``,
    ``tbar_k-move`` (``site`` = ``(face, x, y)``).
    """
    if edit == "mirror":
        return d.mirror()
    if edit == "switch":
        return d.switch(site)
    if edit in ("smooth-L0", "smooth-oriented"):
        return d.smooth(site, "oriented")
    if edit == "smooth-A":
        return d.smooth(site, "A")
    if edit == "smooth-B":
        return d.smooth(site, "B")
    if edit in ("k-move", "t_k-move", "tbar_k-move"):
        if k is None:
            raise DiagramError("k-move needs k")
        if site is None or len(site) != 3:
            raise DiagramError("k-move site is (face, x, y)")
        fi, x, y = site
        if edit != "k-move":
            if x == "loop" or y == "loop":
                raise DiagramError("oriented moves need two diagram arcs")
            coherent = coherent_on_face(d, fi, x, y)
            if edit == "t_k-move" and not coherent:
                raise DiagramError("t_k move needs coherently oriented arcs")
            if edit == "tbar_k-move":
                if coherent:
                    raise DiagramError("tbar_k move needs oppositely oriented arcs")
                if k % 2:
                    raise DiagramError("tbar_k move needs even k")
        return d.kmove(x, y, k, fi)
    raise DiagramError(f"unknown edit {edit!r}")


def validate(pd: Sequence[Sequence[int]] | PlanarDiagram) -> dict:
    """Structural report: violations, component count, writhe and signs."""
    if isinstance(pd, PlanarDiagram):
        pd_list = pd.to_pd()
        loops = pd.loops
    else:
        pd_list = pd
        loops = 0
    violations = []
    clean = []
    for i, x in enumerate(pd_list):
        if not isinstance(x, (list, tuple)) or len(x) != 4:
            violations.append(f"crossing {i}: expected 4 labels")
            continue
        if not all(isinstance(a, int) and not isinstance(a, bool) and a > 0 for a in x):
            violations.append(f"crossing {i}: labels must be positive integers")
            continue
        clean.append(tuple(x))
    violations += _structure_violations(clean)
    report = {"ok": not violations, "violations": violations}
    if not violations:
        try:
            d = PlanarDiagram.from_pd(clean, loops)
        except DiagramError as exc:
            report["ok"] = False
            report["violations"].append(f"orientation: {exc}")
            return report
        report.update({"crossings": d.n, "components": d.num_components,
                       "writhe": d.writhe, "signs": list(d.signs)})
    return report


# knot table -----------------------------------------------------------------

def _bundled_table_path() -> str:
    return str(resources.files("knotforge").joinpath("data/knots.jsonl"))


def load_table(path: str | None = None) -> dict:
    """Read a JSON Lines knot table into ``{name: record}``."""
    path = path or os.environ.get("KNOTFORGE_TABLE") or _bundled_table_path()
    records = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DiagramError(f"{path}:{lineno}: bad JSON ({exc.msg})") from None
            if not isinstance(rec, dict) or "name" not in rec:
                raise DiagramError(f"{path}:{lineno}: record needs a name")
            if "pd" not in rec and "braid" not in rec:
                raise DiagramError(f"{path}:{lineno}: record needs pd or braid")
            if rec["name"] in records:
                raise DiagramError(f"{path}:{lineno}: duplicate name {rec['name']}")
            records[rec["name"]] = rec
    return records


def diagram_from_record(rec: dict) -> PlanarDiagram:
    if "pd" in rec:
        pd = rec["pd"]
        if not isinstance(pd, list):
            raise DiagramError("pd must be a list of quadruples")
        if not pd:
            return PlanarDiagram((), (), int(rec.get("loops", 1)))
        return PlanarDiagram.from_pd(pd, int(rec.get("loops", 0)))
    br = rec["braid"]
    return braid_closure(BraidWord(int(br["strands"]), tuple(br["word"])))


def braid_from_record(rec: dict) -> BraidWord | None:
    br = rec.get("braid")
    if not br:
        return None
    return BraidWord(int(br["strands"]), tuple(br["word"]))


def load_knot(name: str, path: str | None = None) -> PlanarDiagram:
    table = load_table(path)
    if name not in table:
        raise DiagramError(f"unknown knot {name!r}")
    return diagram_from_record(table[name])


def torus_components(p: int, q: int) -> int:
    return gcd(p, q)
