"""Exact dense linear algebra over any field whose elements support + - * /."""

from __future__ import annotations


def rref(rows):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            inv = 1 / lead
            m[r] = [v * inv if v else v for v in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b if b else a for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(x) for x in m[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def reduce_against(v, basis, pivots):
    """Remainder of v after eliminating the pivots of an RREF basis."""
    v = list(v)
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [a - f * b if b else a for a, b in zip(v, row)]
    return v


def in_span(v, basis, pivots) -> bool:
    return not any(reduce_against(v, basis, pivots))


def nullspace(rows, ncols: int, zero=0, one=1):
    """Basis of {x : row . x = 0 for all rows}, one vector per free column."""
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, c in zip(red, piv):
            x[c] = -row[f]
        out.append(tuple(x))
    return out


def solve(cols, target):
    """Coefficients x with sum x_k cols[k] = target, or None."""
    n = len(cols)
    dim = len(target)
    aug = [[cols[k][i] for k in range(n)] + [target[i]] for i in range(dim)]
    red, piv = rref(aug)
    if n in piv:
        return None
    zero = target[0] - target[0]
    x = [zero] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def det(mat):
    m = [list(r) for r in mat]
    n = len(m)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return m[0][0] - m[0][0] if n else 1
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def dot(u, v):
    acc = None
    for a, b in zip(u, v):
        if a and b:
            t = a * b
            acc = t if acc is None else acc + t
    if acc is None:
        return u[0] - u[0] if u else 0
    return acc
