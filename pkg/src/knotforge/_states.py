"""Vectorised enumeration of Kauffman states.

Arc endpoints are numbered ``4*crossing + slot``.  For a state, the walk
"cross the arc, then follow the smoothing" is a permutation of endpoints;
every state circle contributes exactly two of its cycles (one per direction),
so circles = cycles / 2.  Cycles are counted by pointer doubling on the
minimum label, a few thousand states at a time.
"""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 13


def _arc_partner(crossings) -> np.ndarray:
    n = len(crossings)
    where: dict = {}
    partner = np.empty(4 * n, dtype=np.int64)
    for ci, x in enumerate(crossings):
        for s, a in enumerate(x):
            u = 4 * ci + s
            if a in where:
                v = where.pop(a)
                partner[u] = v
                partner[v] = u
            else:
                where[a] = u
    if where:
        raise ValueError("every arc label must occur exactly twice")
    return partner


def _orbits(perm: np.ndarray) -> np.ndarray:
    """Minimum node index on each node's cycle, row-wise."""
    rows, m = perm.shape
    label = np.broadcast_to(np.arange(m), (rows, m)).copy()
    p = perm.copy()
    steps = 1
    while steps < m:
        label = np.minimum(label, np.take_along_axis(label, p, axis=1))
        p = np.take_along_axis(p, p, axis=1)
        steps *= 2
    label = np.minimum(label, np.take_along_axis(label, p, axis=1))
    return label


def state_histogram(crossings, marked_nodes=()) -> dict:
    """Count states by ``(#A smoothings, circles, essential circles)``.

    ``marked_nodes`` are endpoints lying on a seam arc; a circle is essential
    when it meets the marks an odd number of times (annular closures).
    """
    n = len(crossings)
    if n == 0:
        return {}
    partner = _arc_partner(crossings)
    m = 4 * n
    cross = partner // 4
    slot = partner % 4
    alt_a = 4 * cross + (slot ^ 1)
    alt_b = 4 * cross + (3 - slot)
    marks = np.asarray(sorted(marked_nodes), dtype=np.int64)
    hist: dict = {}
    total = 1 << n
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, total, CHUNK):
        states = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        bits = (states[:, None] >> shifts[None, :]) & 1  # 1 = A-smoothing
        choose = bits[:, cross].astype(bool)
        perm = np.where(choose, alt_a[None, :], alt_b[None, :])
        label = _orbits(perm)
        cycles = (label == np.arange(m)[None, :]).sum(axis=1)
        circles = cycles // 2
        nA = bits.sum(axis=1)
        if len(marks):
            ml = label[:, marks]
            same = (ml[:, :, None] == ml[:, None, :]).sum(axis=2)
            odd = (same % 2 == 1)
            # each odd cycle is counted once per marked node on it
            odd_cycles = np.rint((odd / np.where(same == 0, 1, same)).sum(axis=1)).astype(np.int64)
            essential = odd_cycles // 2
        else:
            essential = np.zeros_like(circles)
        key = (nA * (m + 1) + circles) * (m + 1) + essential
        uniq, counts = np.unique(key, return_counts=True)
        for k, c in zip(uniq.tolist(), counts.tolist()):
            e = k % (m + 1)
            rest = k // (m + 1)
            cl = rest % (m + 1)
            a = rest // (m + 1)
            hist[(a, cl, e)] = hist.get((a, cl, e), 0) + c
    return hist
