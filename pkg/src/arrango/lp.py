"""Exact feasibility of homogeneous strict linear systems.

Decides whether {y : r . y > 0 for every row r, e . y = 0 for every e}
is nonempty over an ordered field, and returns a witness point.  Two engines:
Fourier-Motzkin elimination (small dimension) and a dense simplex with
Bland's rule on the equivalent system r . y >= 1.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .scalar import sign

FM_MAX_DIM = 4


def _positive_key(row):
    for a in row:
        if a:
            s = sign(a)
            inv = 1 / (a if s > 0 else -a)
            return tuple(x * inv if x else x for x in row)
    return tuple(row)


def _dedup(rows):
    seen = {}
    for r in rows:
        k = _positive_key(r)
        if k not in seen:
            seen[k] = r
    return list(seen.values())


def fourier_motzkin(rows: Sequence[Sequence], dim: int, zero, one):
    """Witness y with r . y > 0 for all rows, or None."""
    rows = _dedup([tuple(r) for r in rows])
    if any(not any(r) for r in rows):
        return None
    stages = []
    cur = rows
    for k in range(dim - 1, -1, -1):
        pos, neg, rest = [], [], []
        for r in cur:
            c = r[k]
            s = sign(c) if c else 0
            if s > 0:
                inv = 1 / c
                pos.append(tuple(x * inv for x in r[:k]))
            elif s < 0:
                inv = 1 / (-c)
                neg.append(tuple(x * inv for x in r[:k]))
            else:
                rest.append(r[:k])
        stages.append((pos, neg))
        new = list(rest)
        for p in pos:
            for q in neg:
                new.append(tuple(a + b for a, b in zip(p, q)))
        new = _dedup(new)
        # an all-zero row reads 0 > 0
        if any(not any(r) for r in new):
            return None
        cur = new
    if cur:
        return None
    y: list = []
    for k in range(dim):
        pos, neg = stages[dim - 1 - k]
        # pos rows: y_k + p.y > 0 ; neg rows: -y_k + q.y > 0
        lo = [-linalg.dot(p, y) if y else zero for p in pos] if pos else []
        hi = [linalg.dot(q, y) if y else zero for q in neg] if neg else []
        lo_v = max(lo, key=_Key) if lo else None
        hi_v = min(hi, key=_Key) if hi else None
        if lo_v is not None and hi_v is not None:
            v = (lo_v + hi_v) / 2
        elif lo_v is not None:
            v = lo_v + one
        elif hi_v is not None:
            v = hi_v - one
        else:
            v = zero
        y.append(v)
    return tuple(y)


class _Key:
    __slots__ = ("v",)

    def __init__(self, v) -> None:
        self.v = v

    def __lt__(self, other: "_Key") -> bool:
        return sign(self.v - other.v) < 0


def simplex(rows: Sequence[Sequence], dim: int, zero, one):
    """Witness y with r . y >= 1 for all rows, or None (Phase I, Bland's rule)."""
    m = len(rows)
    if m == 0:
        return tuple([zero] * dim)
    # variables: u (dim), w (dim), s (m), a (m);  A u - A w - s + a = 1
    nv = 2 * dim + 2 * m
    T = []
    for i, r in enumerate(rows):
        row = list(r) + [-x for x in r] + [zero] * (2 * m) + [one]
        row[2 * dim + i] = -one
        row[2 * dim + m + i] = one
        T.append(row)
    basis = [2 * dim + m + i for i in range(m)]
    # objective: minimise sum a  <=>  reduced costs of -sum(rows)
    cost = [zero] * (nv + 1)
    for row in T:
        for j in range(nv + 1):
            if j < 2 * dim + m or j == nv:
                cost[j] = cost[j] + row[j]
    while True:
        enter = next((j for j in range(nv) if cost[j] and sign(cost[j]) > 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a and sign(a) > 0:
                ratio = row[nv] / a
                if best is None:
                    best = (ratio, basis[i], i)
                else:
                    d = sign(ratio - best[0])
                    if d < 0 or (d == 0 and basis[i] < best[1]):
                        best = (ratio, basis[i], i)
        if best is None:
            break
        i = best[2]
        piv = T[i][enter]
        T[i] = [x / piv for x in T[i]]
        for k in range(m):
            if k != i and T[k][enter]:
                f = T[k][enter]
                T[k] = [x - f * y for x, y in zip(T[k], T[i])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, T[i])]
        basis[i] = enter
    if cost[nv] and sign(cost[nv]) > 0:
        return None
    val = [zero] * nv
    for i, b in enumerate(basis):
        val[b] = T[i][nv]
    return tuple(val[k] - val[dim + k] for k in range(dim))


def strict_feasible(ineqs: Sequence[Sequence], eqs: Sequence[Sequence] = (), dim: int | None = None,
                    engine: str | None = None):
    """Point x with r . x > 0 for ineqs and e . x = 0 for eqs, or None."""
    if dim is None:
        dim = len((list(ineqs) + list(eqs))[0])
    sample = next((a for r in list(ineqs) + list(eqs) for a in r), 0)
    zero = sample - sample
    one = zero + 1
    eqs = [tuple(e) for e in eqs]
    if eqs:
        B = linalg.nullspace(eqs, dim, zero, one)
    else:
        B = [tuple(one if i == j else zero for i in range(dim)) for j in range(dim)]
    d = len(B)
    rows = [tuple(linalg.dot(r, b) for b in B) for r in ineqs]
    if d == 0:
        return tuple([zero] * dim) if not rows else None
    if engine is None:
        engine = "fm" if d <= FM_MAX_DIM else "simplex"
    y = fourier_motzkin(rows, d, zero, one) if engine == "fm" else simplex(rows, d, zero, one)
    if y is None:
        return None
    x = [zero] * dim
    for c, b in zip(y, B):
        if c:
            x = [xi + c * bi for xi, bi in zip(x, b)]
    return tuple(x)
