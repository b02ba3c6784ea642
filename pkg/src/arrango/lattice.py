"""Intersection lattices and the invariants read off from them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import linalg
from .arrangement import (
    Arrangement,
    Flat,
    essentialize,
    flat_of,
    localization,
    restriction,
)


class IntersectionLattice:
    """L(A), flats indexed 0..|L|-1 in (rank, sorted A_X) order.

    Flats are identified by their localization set, kept as an int bitmask:
    X <= Y in L exactly when A_X is a subset of A_Y.
    """

    def __init__(self, A: Arrangement) -> None:
        self.arrangement = A
        n = len(A)
        self.n = n
        flats: list[Flat] = []
        masks: list[int] = []
        ranks: list[int] = []
        meet: list[list[int]] = []
        by_mask: dict[int, int] = {}

        top = Flat(0, (), (), (), A.dim)
        level = [(0, (), ())]
        rank = 0
        while level:
            level.sort(key=lambda t: _bits(t[0]))
            start = len(flats)
            for mask, red, piv in level:
                by_mask[mask] = len(flats)
                flats.append(Flat(rank, tuple(red), tuple(piv), _bits(mask), A.dim))
                masks.append(mask)
                ranks.append(rank)
                meet.append([-1] * n)
            found: dict[int, tuple] = {}
            pending: list[tuple[int, int]] = []
            for xi in range(start, len(flats)):
                mx = masks[xi]
                row = meet[xi]
                X = flats[xi]
                for h in range(n):
                    if mx >> h & 1:
                        row[h] = xi
                        continue
                    if row[h] != -1:
                        continue
                    red, piv = linalg.rref(list(X.conormal) + [A.normals[h]])
                    my = mx | (1 << h)
                    for g in range(n):
                        if not my >> g & 1 and linalg.in_span(A.normals[g], red, piv):
                            my |= 1 << g
                    if my not in found:
                        found[my] = (my, red, piv)
                    for g in _bits(my & ~mx):
                        row[g] = -2 - len(pending)
                    pending.append((xi, my))
            # resolve forward references once the next level is indexed
            nxt = list(found.values())
            if not nxt:
                break
            nxt.sort(key=lambda t: _bits(t[0]))
            base = len(flats)
            idx = {t[0]: base + k for k, t in enumerate(nxt)}
            for xi in range(start, len(flats)):
                row = meet[xi]
                for h in range(n):
                    if row[h] <= -2:
                        row[h] = idx[pending[-2 - row[h]][1]]
            level = nxt
            rank += 1
        self.flats = flats
        self.masks = masks
        self.ranks = ranks
        self.meet_table = meet
        self.by_mask = by_mask
        self.rank = rank

    # structure

    def __len__(self) -> int:
        return len(self.flats)

    @cached_property
    def flats_by_rank(self) -> list[list[Flat]]:
        out: list[list[Flat]] = [[] for _ in range(self.rank + 1)]
        for f in self.flats:
            out[f.rank].append(f)
        return out

    @cached_property
    def indices_by_rank(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.rank + 1)]
        for i, r in enumerate(self.ranks):
            out[r].append(i)
        return out

    def index_of(self, X: Flat) -> int:
        m = 0
        for h in X.containing:
            m |= 1 << h
        try:
            return self.by_mask[m]
        except KeyError:
            raise ValueError("flat not in this lattice") from None

    def atom(self, h: int) -> int:
        return self.meet_table[0][h]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & self.masks[j] == self.masks[i]

    def join(self, i: int, j: int) -> int:
        """Index of X_i cap X_j (the join in reverse inclusion order)."""
        x = i
        for h in self.generators[j]:
            x = self.meet_table[x][h]
        return x

    def meet(self, i: int, j: int) -> int:
        """Index of the smallest flat containing X_i + X_j."""
        return self.by_mask[self.masks[i] & self.masks[j]]

    @cached_property
    def generators(self) -> list[tuple[int, ...]]:
        # r(X) independent hyperplanes cutting out X
        gens: list[tuple[int, ...]] = [()] * len(self.flats)
        for i in range(1, len(self.flats)):
            f = self.flats[i]
            # greedy: walk up from V adding hyperplanes that raise the rank
            x, g = 0, []
            for h in f.containing:
                y = self.meet_table[x][h]
                if y != x:
                    g.append(h)
                    x = y
                if self.ranks[x] == f.rank:
                    break
            gens[i] = tuple(g)
        return gens

    @property
    def top(self) -> int:
        return len(self.flats) - 1

    def size(self, i: int) -> int:
        return bin(self.masks[i]).count("1")

    # Moebius function and characteristic polynomial

    @cached_property
    def mobius(self) -> list[int]:
        mu = [0] * len(self.flats)
        mu[0] = 1
        for i in range(1, len(self.flats)):
            mi = self.masks[i]
            r = self.ranks[i]
            s = 0
            for j in range(i):
                if self.ranks[j] >= r:
                    break
                if self.masks[j] & mi == self.masks[j]:
                    s += mu[j]
            mu[i] = -s
        return mu

    def mobius_map(self) -> dict[tuple[int, ...], int]:
        return {f.containing: m for f, m in zip(self.flats, self.mobius)}

    def upper_mobius(self, i: int) -> dict[int, int]:
        """mu(X_i, Y) for every Y >= X_i."""
        mi = self.masks[i]
        up = [j for j in range(i, len(self.flats)) if self.masks[j] & mi == mi]
        mu: dict[int, int] = {i: 1}
        for a, j in enumerate(up[1:], 1):
            mj = self.masks[j]
            rj = self.ranks[j]
            s = 0
            for k in up[:a]:
                if self.ranks[k] >= rj:
                    break
                if self.masks[k] & mj == self.masks[k]:
                    s += mu[k]
            mu[j] = -s
        return mu

    @cached_property
    def char_poly(self) -> "CharPoly":
        l = self.arrangement.dim
        coeffs = [0] * (l + 1)
        for f, m in zip(self.flats, self.mobius):
            coeffs[f.dim] += m
        return CharPoly(tuple(coeffs))

    def restriction_char_poly(self, i: int) -> "CharPoly":
        """chi of A^{X_i}, read off the upper interval [X_i, T]."""
        d0 = self.flats[i].dim
        coeffs = [0] * (d0 + 1)
        for j, m in self.upper_mobius(i).items():
            coeffs[self.flats[j].dim] += m
        return CharPoly(tuple(coeffs))

    # modularity

    @cached_property
    def _modular(self) -> dict[int, bool]:
        return {}

    def is_modular_index(self, i: int) -> bool:
        got = self._modular.get(i)
        if got is None:
            got = True
            ri = self.ranks[i]
            for j in range(len(self.flats)):
                if ri + self.ranks[j] != self.ranks[self.meet(i, j)] + self.ranks[self.join(i, j)]:
                    got = False
                    break
            self._modular[i] = got
        return got

    def rank2_sizes(self) -> list[int]:
        return sorted(self.size(i) for i in self.indices_by_rank[2]) if self.rank >= 2 else []


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    h = 0
    while mask:
        if mask & 1:
            out.append(h)
        mask >>= 1
        h += 1
    return tuple(out)


@dataclass(frozen=True)
class CharPoly:
    """chi(t) with ``coeffs[d]`` the coefficient of t^d."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: int) -> int:
        return sum(c * t**d for d, c in enumerate(self.coeffs))

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CharPoly(tuple(out))

    @classmethod
    def from_roots(cls, roots: Sequence[int], extra_degree: int = 0) -> "CharPoly":
        p = cls((0,) * extra_degree + (1,))
        for b in roots:
            p = p * cls((-b, 1))
        return p

    def mu(self, k: int) -> int:
        """Coefficient of t^(l-k)."""
        return self.coeffs[self.degree - k]

    def integer_roots(self) -> list[int] | None:
        """All roots counted with multiplicity when chi splits over Z, else None."""
        p = list(self.coeffs)
        roots = []
        while len(p) > 1 and p[0] == 0:
            roots.append(0)
            p = p[1:]
        while len(p) > 1:
            c0 = abs(p[0])
            for r in sorted({d for d in range(1, c0 + 1) if c0 % d == 0} | {-d for d in range(1, c0 + 1) if c0 % d == 0}):
                if sum(c * r**k for k, c in enumerate(p)) == 0:
                    break
            else:
                return None
            roots.append(r)
            # synthetic division by (t - r)
            q = [0] * (len(p) - 1)
            q[-1] = p[-1]
            for k in range(len(p) - 2, 0, -1):
                q[k - 1] = p[k] + r * q[k]
            p = q
        return sorted(roots)

    def __str__(self) -> str:
        roots = self.integer_roots()
        if roots is not None:
            parts = ["t" if r == 0 else f"(t-{r})" if r > 0 else f"(t+{-r})" for r in roots]
            return "*".join(parts) if parts else "1"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c:
                terms.append(f"{c}*t^{d}")
        return " + ".join(terms)


def build_lattice(A: Arrangement) -> IntersectionLattice:
    return IntersectionLattice(A)


def mobius(L: IntersectionLattice) -> dict[tuple[int, ...], int]:
    return L.mobius_map()


def char_poly(A: Arrangement, L: IntersectionLattice | None = None) -> CharPoly:
    return (L or build_lattice(A)).char_poly


def s_value(A: Arrangement, L: IntersectionLattice | None = None) -> int:
    """s(A) = l|chi_A(-1)| - 2 sum_H |chi_{A^H}(-1)|."""
    L = L or build_lattice(A)
    total = A.dim * abs(L.char_poly(-1))
    for h in range(len(A)):
        total -= 2 * abs(L.restriction_char_poly(L.atom(h))(-1))
    return total


def is_simplicial_rank3(A: Arrangement, L: IntersectionLattice | None = None) -> bool:
    """mu_2 = 2|L_2| - 3 for an essential rank-3 arrangement."""
    if A.dim != 3 or A.rank != 3:
        raise ValueError("needs an essential rank-3 arrangement")
    L = L or build_lattice(A)
    mu2 = sum(L.size(i) - 1 for i in L.indices_by_rank[2])
    return mu2 == 2 * len(L.indices_by_rank[2]) - 3


def is_modular(L: IntersectionLattice, X: Flat) -> bool:
    return L.is_modular_index(L.index_of(X))


@dataclass(frozen=True)
class SupersolvableCertificate:
    chain: tuple[Flat, ...]
    exponents: tuple[int, ...]


def supersolvable_chain(L: IntersectionLattice) -> list[int] | None:
    """Indices V = X_0 < ... < X_r = T of modular flats, or None."""
    memo: dict[int, list[int] | None] = {0: [0]}

    def down(x: int) -> list[int] | None:
        if x in memo:
            return memo[x]
        memo[x] = None
        mx = L.masks[x]
        r = L.ranks[x]
        for y in L.indices_by_rank[r - 1]:
            if L.masks[y] & mx == L.masks[y] and L.is_modular_index(y):
                sub = down(y)
                if sub is not None:
                    memo[x] = sub + [x]
                    break
        return memo[x]

    return down(L.top)


def is_supersolvable(A: Arrangement, L: IntersectionLattice | None = None) -> SupersolvableCertificate | None:
    if not A.is_essential:
        A = essentialize(A)
        L = None
    L = L or build_lattice(A)
    chain = supersolvable_chain(L)
    if chain is None:
        return None
    b = tuple(L.size(chain[k]) - L.size(chain[k - 1]) for k in range(1, len(chain)))
    return SupersolvableCertificate(tuple(L.flats[i] for i in chain), b)


def blocks(A: Arrangement) -> list[list[int]]:
    """Irreducible components: connected components via fundamental circuits."""
    n = len(A)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    basis: list[int] = []
    for i in range(n):
        cols = [A.normals[b] for b in basis]
        coeffs = linalg.solve(cols, A.normals[i]) if cols else None
        if coeffs is None:
            basis.append(i)
            continue
        for b, c in zip(basis, coeffs):
            if c:
                parent[find(b)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def is_irreducible(A: Arrangement) -> tuple[bool, list[list[int]]]:
    """(irreducible?, blocks).  The empty arrangement counts as reducible for l >= 2."""
    bl = blocks(A)
    if not bl:
        return A.dim < 2, bl
    return len(bl) == 1, bl


def factors(A: Arrangement) -> list[Arrangement]:
    out = []
    for b in blocks(A):
        out.append(essentialize(Arrangement(A.dim, A.field, tuple(A.normals[i] for i in b))))
    return out


def _fingerprint(L: IntersectionLattice, h: int) -> tuple:
    bit = 1 << h
    return tuple(sorted((L.ranks[i], L.size(i)) for i in range(len(L)) if L.masks[i] & bit))


def lattice_isomorphic(L1: IntersectionLattice, L2: IntersectionLattice) -> dict[int, int] | None:
    """Atom bijection inducing a graded lattice isomorphism, or None."""
    if L1.n != L2.n or L1.rank != L2.rank:
        return None
    if [len(x) for x in L1.indices_by_rank] != [len(x) for x in L2.indices_by_rank]:
        return None
    sizes = lambda L: sorted((L.ranks[i], L.size(i)) for i in range(len(L)))
    if sizes(L1) != sizes(L2):
        return None
    n = L1.n
    fp1 = [_fingerprint(L1, h) for h in range(n)]
    fp2 = [_fingerprint(L2, h) for h in range(n)]
    if sorted(fp1) != sorted(fp2):
        return None
    # rank-2 closure of each pair of atoms
    def pair_masks(L):
        pm = {}
        for i in L.indices_by_rank[2] if L.rank >= 2 else []:
            hs = _bits(L.masks[i])
            for a in hs:
                for b in hs:
                    if a != b:
                        pm[a, b] = L.masks[i]
        return pm

    pm1, pm2 = pair_masks(L1), pair_masks(L2)
    order = _search_order(L1, n)
    img: dict[int, int] = {}
    used = set()
    target = {frozenset(_bits(m)) for m in L2.masks}

    def ok(a: int, b: int) -> bool:
        for c, d in img.items():
            m1, m2 = pm1[a, c], pm2[b, d]
            if bin(m1).count("1") != bin(m2).count("1"):
                return False
            for e, f in img.items():
                if (m1 >> e & 1) != (m2 >> f & 1):
                    return False
        return True

    def rec(k: int) -> bool:
        if k == n:
            return all(frozenset(img[h] for h in _bits(m)) in target for m in L1.masks)
        a = order[k]
        for b in range(n):
            if b in used or fp1[a] != fp2[b]:
                continue
            if not ok(a, b):
                continue
            img[a] = b
            used.add(b)
            if rec(k + 1):
                return True
            del img[a]
            used.discard(b)
        return False

    return dict(img) if rec(0) else None


def _search_order(L: IntersectionLattice, n: int) -> list[int]:
    # atoms sharing big rank-2 flats first, so constraints bite early
    weight = [0] * n
    for i in L.indices_by_rank[2] if L.rank >= 2 else []:
        s = L.size(i)
        for h in _bits(L.masks[i]):
            weight[h] += s * s
    return sorted(range(n), key=lambda h: (-weight[h], h))


def hansen_motzkin_witness(A: Arrangement, L: IntersectionLattice | None = None) -> tuple[Flat, Flat, int] | None:
    """X in L_{l-1}, Y in L_{l-2} and H with A_X = A_Y + {H}, or None."""
    L = L or build_lattice(A)
    l = L.rank
    for x in L.indices_by_rank[l - 1]:
        mx = L.masks[x]
        for h in _bits(mx):
            y = L.by_mask.get(mx & ~(1 << h))
            if y is not None and L.ranks[y] == l - 2:
                return L.flats[x], L.flats[y], h
    return None


def interval(L: IntersectionLattice, X: Flat, Y: Flat) -> IntersectionLattice:
    """[X, Y] realized as L((A_Y)^X)."""
    i, j = L.index_of(X), L.index_of(Y)
    if not L.leq(i, j):
        raise ValueError("interval needs X <= Y")
    A = L.arrangement
    AY = localization(A, Y)
    Xy = flat_of(AY, [AY.normals.index(A.normals[h]) for h in X.containing])
    return build_lattice(restriction(AY, Xy))
