"""Chambers of real arrangements, walls, chamber bases and reflections.

Chambers are found by walking across walls from one generic sign vector.
The walls of a chamber are read from the cocircuit signs: every rank l-1
flat of an essential arrangement is a line, and a chamber's closure is the
cone over the line directions whose signs conform to its sign vector.  The
faces K-bar cap H are then compared by their sets of rays; the facets are
the maximal ones.  An exact LP (module ``lp``) provides an independent wall
test.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg, lp
from .arrangement import Arrangement, canonical_normal, essentialize
from .lattice import IntersectionLattice, _bits, build_lattice
from .scalar import sign

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Chamber:
    index: int
    signs: tuple[int, ...]
    walls: tuple[int, ...]

    def __repr__(self) -> str:
        s = "".join("+" if x > 0 else "-" for x in self.signs)
        return f"Chamber({self.index}, {s}, walls={list(self.walls)})"


class ChamberGraph:
    """All chambers of an essential real arrangement with wall adjacency."""

    def __init__(self, A: Arrangement, L: IntersectionLattice | None = None) -> None:
        if not A.ordered:
            raise ValueError("chambers need a real arrangement")
        if not A.is_essential:
            log.info("arrangement is not essential; essentializing")
            A = essentialize(A)
            L = None
        self.arrangement = A
        self.lattice = L or build_lattice(A)
        self._rays()
        self.chambers: list[Chamber] = []
        self.by_signs: dict[tuple[int, ...], int] = {}
        self.adjacency: dict[tuple[int, int], int] = {}
        self._enumerate()

    # cocircuits

    def _rays(self) -> None:
        A, L = self.arrangement, self.lattice
        l = A.dim
        vecs = []
        rows = []
        if l == 0:
            self.ray_vectors, self.ray_signs = [], np.zeros((0, len(A)), dtype=np.int8)
            return
        for i in L.indices_by_rank[l - 1]:
            v = L.flats[i].basis[0]
            vecs.append(v)
            rows.append([sign(linalg.dot(a, v)) for a in A.normals])
        M = np.array(rows, dtype=np.int8).reshape(len(rows), len(A))
        self.ray_vectors = vecs + [tuple(-x for x in v) for v in vecs]
        self.ray_signs = np.vstack([M, -M])

    def conforming_rays(self, signs: Sequence[int]) -> np.ndarray:
        s = np.asarray(signs, dtype=np.int8)
        return ~((self.ray_signs * s) < 0).any(axis=1)

    def is_tope(self, signs: Sequence[int]) -> bool:
        s = np.asarray(signs, dtype=np.int8)
        R = self.ray_signs[self.conforming_rays(s)]
        return bool(((R * s) > 0).any(axis=0).all())

    def _walls_of(self, signs) -> tuple[int, ...]:
        R = self.ray_signs[self.conforming_rays(signs)]
        Z = (R == 0).astype(np.int32)
        n = Z.shape[1]
        # sub[j, k] = number of rays in Z_j but not in Z_k
        sub = Z.T @ (1 - Z)
        np.fill_diagonal(sub, 1)
        return tuple(int(j) for j in range(n) if (sub[j] != 0).all())

    # enumeration

    def _enumerate(self) -> None:
        start = initial_signs(self.arrangement)
        queue = [start]
        self.by_signs[start] = 0
        self.chambers.append(None)  # type: ignore[arg-type]
        head = 0
        while head < len(queue):
            s = queue[head]
            k = self.by_signs[s]
            walls = self._walls_of(s)
            self.chambers[k] = Chamber(k, s, walls)
            for h in walls:
                t = s[:h] + (-s[h],) + s[h + 1 :]
                j = self.by_signs.get(t)
                if j is None:
                    j = len(self.chambers)
                    self.by_signs[t] = j
                    self.chambers.append(None)  # type: ignore[arg-type]
                    queue.append(t)
                self.adjacency[k, h] = j
            head += 1
        expected = abs(self.lattice.char_poly(-1))
        if len(self.chambers) != expected:
            raise RuntimeError(
                f"chamber count {len(self.chambers)} differs from |chi(-1)| = {expected}"
            )

    def __len__(self) -> int:
        return len(self.chambers)

    def __iter__(self):
        return iter(self.chambers)

    def neighbor(self, K: Chamber, h: int) -> Chamber:
        return self.chambers[self.adjacency[K.index, h]]

    def chamber(self, signs: Sequence[int]) -> Chamber:
        return self.chambers[self.by_signs[tuple(signs)]]

    def interior_point(self, K: Chamber) -> tuple:
        """Sum of the conforming ray directions; lies in the open chamber."""
        mask = self.conforming_rays(K.signs)
        pts = [self.ray_vectors[i] for i in np.flatnonzero(mask)]
        p = pts[0]
        for q in pts[1:]:
            p = tuple(a + b for a, b in zip(p, q))
        return p

    @cached_property
    def simplicial(self) -> bool:
        l = self.arrangement.dim
        for K in self.chambers:
            if len(K.walls) != l:
                return False
            if linalg.rank([self.arrangement.normals[h] for h in K.walls]) != l:
                return False
        return True


_GRAPHS: dict[int, tuple[Arrangement, ChamberGraph]] = {}


def chamber_graph(A: Arrangement, L: IntersectionLattice | None = None) -> ChamberGraph:
    """Memoized ChamberGraph for an arrangement value."""
    key = id(A)
    got = _GRAPHS.get(key)
    if got is not None and got[0] is A:
        return got[1]
    G = ChamberGraph(A, L)
    if len(_GRAPHS) >= 64:
        _GRAPHS.pop(next(iter(_GRAPHS)))
    _GRAPHS[key] = (A, G)
    return G


def initial_signs(A: Arrangement) -> tuple[int, ...]:
    l = A.dim
    t = 1
    while True:
        p = [Fraction(t) ** k for k in range(l)]
        s = tuple(sign(linalg.dot(a, p)) for a in A.normals)
        if all(s):
            return s
        t += 1


def initial_chamber(A: Arrangement) -> Chamber:
    G = chamber_graph(A)
    return G.chambers[0]


def enumerate_chambers(A: Arrangement) -> ChamberGraph:
    return chamber_graph(A)


def walls(A: Arrangement, K: Chamber, engine: str | None = None) -> tuple[int, ...]:
    """Walls by exact LP: H is a wall iff some point of H is strictly on K's side of every other hyperplane."""
    A = chamber_graph(A).arrangement
    out = []
    for h, a in enumerate(A.normals):
        rows = [tuple(x * K.signs[j] for x in b) for j, b in enumerate(A.normals) if j != h]
        if lp.strict_feasible(rows, [a], A.dim, engine) is not None:
            out.append(h)
    return tuple(out)


def is_feasible_chamber(A: Arrangement, signs: Sequence[int], engine: str | None = None) -> bool:
    rows = [tuple(x * s for x in a) for a, s in zip(A.normals, signs)]
    return lp.strict_feasible(rows, (), A.dim, engine) is not None


def is_simplicial_geometric(A: Arrangement) -> bool:
    return chamber_graph(A).simplicial


def chamber_basis(A: Arrangement, K: Chamber) -> list[tuple]:
    """Inward wall normals in ascending wall order."""
    A = chamber_graph(A).arrangement
    if len(K.walls) != A.dim:
        raise ValueError("chamber is not simplicial")
    B = [tuple(-x for x in A.normals[h]) if K.signs[h] < 0 else A.normals[h] for h in K.walls]
    if linalg.rank(B) != A.dim:
        raise ValueError("chamber is not simplicial")
    return B


# -- reflection data ----------------------------------------------------------


def locate(A: Arrangement, v: Sequence) -> tuple[int, int]:
    """(hyperplane index, s) with v a positive multiple of s times the stored normal."""
    key = canonical_normal(v)
    h = A.index[key]
    lead = next(a for a in v if a)
    return h, sign(lead)


def _pair_label(G: ChamberGraph, h1: int, h2: int) -> tuple[int, tuple[int, ...]]:
    L = G.lattice
    x = L.meet_table[L.atom(h1)][h2]
    return L.size(x), _bits(L.masks[x])


def labels(A: Arrangement, K: Chamber, hyper: Sequence[int] | None = None) -> list[list[int]]:
    """m(i,j) = |A_{alpha_i perp cap alpha_j perp}| for the given wall hyperplanes."""
    G = chamber_graph(A)
    A = G.arrangement
    hs = list(hyper if hyper is not None else K.walls)
    l = len(hs)
    m = [[0] * l for _ in range(l)]
    for i in range(l):
        for j in range(l):
            if i != j:
                m[i][j] = _pair_label(G, hs[i], hs[j])[0]
    return m


def _ratio(n, bi, bj, p, q):
    # n = a*bi + b*bj ; returns a/b
    num = n[p] * bj[q] - n[q] * bj[p]
    den = bi[p] * n[q] - bi[q] * n[p]
    return num / den


def _coords2(bi, bj):
    l = len(bi)
    for p in range(l):
        for q in range(p + 1, l):
            if bi[p] * bj[q] - bi[q] * bj[p]:
                return p, q
    raise ValueError("dependent covectors")


@dataclass
class ReflectionData:
    """c_ij for a chamber basis (c_ii = 2) and the matrices S_i."""

    walls: tuple[int, ...]
    basis: list[tuple]
    c: list[list]
    m: list[list[int]]

    @cached_property
    def S(self) -> list[list[list]]:
        l = len(self.basis)
        out = []
        for i in range(l):
            M = [[Fraction(int(r == k)) for k in range(l)] for r in range(l)]
            M[i] = [-self.c[i][k] if k != i else Fraction(-1) for k in range(l)]
            out.append(M)
        return out

    def is_integral(self) -> bool:
        return all(_is_integer(x) for row in self.c for x in row)


def _is_integer(x) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, int):
        return True
    return x.is_rational() and x.to_fraction().denominator == 1


def c_coefficients(A: Arrangement, K: Chamber, basis: Sequence[Sequence] | None = None) -> ReflectionData:
    """c_ij with beta = alpha_j - c_ij alpha_i the wall of K_i in A_{alpha_i perp cap alpha_j perp}.

    ``basis`` may be any positive rescaling of the inward wall normals, in any
    vertex order; by default the chamber basis.
    """
    G = chamber_graph(A)
    A = G.arrangement
    B = [tuple(b) for b in (basis if basis is not None else chamber_basis(A, K))]
    hs = [locate(A, b)[0] for b in B]
    l = len(B)
    zero = A.zero()
    c = [[zero] * l for _ in range(l)]
    m = [[0] * l for _ in range(l)]
    for i in range(l):
        c[i][i] = zero + 2
        for j in range(l):
            if i == j:
                continue
            size, members = _pair_label(G, hs[i], hs[j])
            m[i][j] = size
            others = [h for h in members if h != hs[i] and h != hs[j]]
            if not others:
                continue
            p, q = _coords2(B[i], B[j])
            best = None
            for h in others:
                r = _ratio(A.normals[h], B[i], B[j], p, q)
                if best is None or sign(r - best) > 0:
                    best = r
            c[i][j] = -best
    return ReflectionData(tuple(hs), B, c, m)


def reflect(data: ReflectionData, i: int, diagonal=2) -> list[tuple]:
    """sigma_i applied to the basis: alpha_j - c_ij alpha_i, with c_ii = diagonal."""
    B = data.basis
    out = []
    for j, b in enumerate(B):
        cij = diagonal if j == i else data.c[i][j]
        if not cij:
            out.append(b)
        else:
            out.append(tuple(x - cij * y for x, y in zip(b, B[i])))
    return out


@dataclass
class Sigma:
    matrix: list[list]
    chamber: Chamber
    basis: list[tuple]


def sigma(A: Arrangement, K: Chamber, i: int, basis: Sequence[Sequence] | None = None,
          data: ReflectionData | None = None) -> Sigma:
    """sigma_i^K: the adjacent chamber K_i and the basis sigma_i(B) (same vertex order)."""
    G = chamber_graph(A)
    A = G.arrangement
    data = data or c_coefficients(A, K, basis)
    Ki = G.neighbor(K, data.walls[i])
    newB = reflect(data, i)
    for v in newB:
        h, s = locate(A, v)
        if h not in Ki.walls or Ki.signs[h] != s:
            raise RuntimeError("reflected basis is not a basis of the adjacent chamber")
    return Sigma(data.S[i], Ki, newB)


def is_basis_of(A: Arrangement, K: Chamber, B: Sequence[Sequence]) -> bool:
    """True iff B is a positive rescaling of K's inward wall normals (any order)."""
    try:
        got = sorted(locate(A, v) for v in B)
    except KeyError:
        return False
    return got == sorted((h, K.signs[h]) for h in K.walls) and len(got) == A.dim


@dataclass
class Gallery:
    chambers: list[Chamber]
    crossings: list[int]


def gallery_basis(A: Arrangement, K0: Chamber, B0: Sequence[Sequence], crossings: Sequence[int],
                  distinct: bool = True) -> tuple[Gallery, list[tuple]]:
    """Walk across the vertices ``crossings`` (indices into the current basis).

    With ``distinct`` the walk must be a gallery (no chamber repeated).
    """
    K, B = K0, [tuple(b) for b in B0]
    seen = [K0]
    for mu in crossings:
        if not 0 <= mu < len(B):
            raise ValueError(f"crossing index {mu} out of range")
        step = sigma(A, K, mu, B)
        K, B = step.chamber, step.basis
        if distinct and any(K is J for J in seen):
            raise ValueError("gallery revisits a chamber")
        seen.append(K)
    return Gallery(seen, list(crossings)), B
