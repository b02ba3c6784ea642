"""Coxeter graphs, Cartan matrices, root-system closure and graph-change diagrams."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product as _cartesian
from typing import Sequence

from . import linalg
from .arrangement import (
    Arrangement,
    canonical_normal,
    flat_of,
    hyperplane,
    quotient,
    restrict_covector,
    restriction,
)
from .chambers import (
    Chamber,
    ReflectionData,
    _is_integer,
    c_coefficients,
    chamber_basis,
    chamber_graph,
    is_basis_of,
    locate,
    reflect,
    sigma,
)


# -- graphs ---------------------------------------------------------------------


@dataclass(frozen=True)
class CoxeterGraph:
    """Vertices 0..n-1; ``edges`` maps (i, j) with i < j to the label m >= 3."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_labels(cls, m: Sequence[Sequence[int]]) -> "CoxeterGraph":
        n = len(m)
        e = tuple((i, j, m[i][j]) for i in range(n) for j in range(i + 1, n) if m[i][j] >= 3)
        return cls(n, e)

    def label(self, i: int, j: int) -> int:
        a, b = min(i, j), max(i, j)
        for x, y, m in self.edges:
            if (x, y) == (a, b):
                return m
        return 2

    def edge_set(self) -> set[frozenset[int]]:
        return {frozenset((i, j)) for i, j, _ in self.edges}

    def relabel(self, perm: Sequence[int]) -> "CoxeterGraph":
        """Vertex v becomes perm[v]."""
        e = []
        for i, j, m in self.edges:
            a, b = perm[i], perm[j]
            e.append((min(a, b), max(a, b), m))
        return CoxeterGraph(self.n, tuple(sorted(e)))

    def canonical(self) -> tuple:
        """Isomorphism invariant: the least relabelled edge list."""
        return _canonical(self.n, tuple(sorted(self.edges)))

    def is_isomorphic(self, other: "CoxeterGraph") -> bool:
        return self.n == other.n and self.canonical() == other.canonical()

    def __str__(self) -> str:
        if not self.edges:
            return f"{self.n} vertices, no edges"
        return ", ".join(f"{i + 1}-{j + 1}" + (f":{m}" if m != 3 else "") for i, j, m in self.edges)


@lru_cache(maxsize=None)
def _canonical(n: int, edges: tuple) -> tuple:
    best = None
    for perm in permutations(range(n)):
        e = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), m) for i, j, m in edges))
        if best is None or e < best:
            best = e
    return (n, best)


def coxeter_graph(A: Arrangement, K: Chamber, basis: Sequence[Sequence] | None = None) -> CoxeterGraph:
    data = c_coefficients(A, K, basis)
    return CoxeterGraph.from_labels(data.m)


def is_connected(g: CoxeterGraph) -> bool:
    if g.n <= 1:
        return True
    adj = {v: set() for v in range(g.n)}
    for i, j, _ in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in adj[v] - seen:
            seen.add(w)
            todo.append(w)
    return len(seen) == g.n


@dataclass(frozen=True)
class Contraction:
    """Unlabelled graph on the vertices V minus {a, b}, plus the merged vertex ``ab``."""

    vertices: tuple
    edges: frozenset


def contract_edge(g: CoxeterGraph, a: int, b: int) -> Contraction:
    if g.label(a, b) < 3:
        raise ValueError("contraction needs an edge")
    ab = "ab"
    verts = tuple(v for v in range(g.n) if v not in (a, b)) + (ab,)
    edges = set()
    for i, j, _ in g.edges:
        if {i, j} & {a, b}:
            other = j if i in (a, b) else i
            if other not in (a, b):
                edges.add(frozenset((ab, other)))
        else:
            edges.add(frozenset((i, j)))
    return Contraction(verts, frozenset(edges))


# -- Cartan matrices ----------------------------------------------------------------


def _table(kind: str, l: int) -> tuple[tuple[int, ...], ...] | None:
    M = [[0] * l for _ in range(l)]
    for i in range(l):
        M[i][i] = 2
    if kind in ("A", "C"):
        if kind == "C" and l < 2:
            return None
        for i in range(l - 1):
            M[i][i + 1] = M[i + 1][i] = -1
        if kind == "C":
            M[1][0] = -2
    elif kind in ("D", "D'"):
        if l < 3:
            return None
        for i in range(2, l - 1):
            M[i][i + 1] = M[i + 1][i] = -1
        M[0][2] = M[2][0] = M[1][2] = M[2][1] = -1
        if kind == "D'":
            M[0][1] = M[1][0] = -1
    else:
        raise ValueError(kind)
    return tuple(tuple(r) for r in M)


TYPES = ("A", "C", "D", "D'")


def _perm_match(C, T) -> bool:
    l = len(C)
    img: list[int] = []

    def rec(k: int) -> bool:
        if k == l:
            return True
        for p in range(l):
            if p in img:
                continue
            if C[p][p] != T[k][k]:
                continue
            if all(C[p][img[t]] == T[k][t] and C[img[t]][p] == T[t][k] for t in range(k)):
                img.append(p)
                if rec(k + 1):
                    return True
                img.pop()
        return False

    return rec(0)


@lru_cache(maxsize=4096)
def classify_cartan_type(C: tuple[tuple[int, ...], ...]) -> str:
    """Type tag from the table (A, C, D, D') up to simultaneous permutation, else "other"."""
    C = tuple(tuple(int(x) for x in r) for r in C)
    l = len(C)
    flat = sorted(x for r in C for x in r)
    for kind in TYPES:
        T = _table(kind, l)
        if T is None or sorted(x for r in T for x in r) != flat:
            continue
        if _perm_match(C, T):
            return kind
    return "other"


@dataclass(frozen=True)
class CartanMatrix:
    matrix: tuple[tuple[int, ...], ...]
    type: str

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:3d}" for x in r) for r in self.matrix)


def _int_matrix(data: ReflectionData) -> tuple[tuple[int, ...], ...] | None:
    if not data.is_integral():
        return None
    out = []
    for row in data.c:
        r = []
        for x in row:
            if not isinstance(x, (int, Fraction)):
                x = x.to_fraction()
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def cartan_matrix(A: Arrangement, K: Chamber, basis: Sequence[Sequence] | None = None) -> CartanMatrix | None:
    """The integer matrix (c_ij) of the basis, or None when some c_ij is not an integer."""
    M = _int_matrix(c_coefficients(A, K, basis))
    if M is None:
        return None
    return CartanMatrix(M, classify_cartan_type(M))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def locally_crystallographic_bases(A: Arrangement, K: Chamber) -> list[list[tuple]]:
    """Positive rescalings of B^K with integral c_ij, up to a scale per graph component.

    Integral c'_ij, c'_ji are negative integers with the rescaling-invariant
    product c_ij c_ji, so along a spanning forest of the graph each edge
    leaves finitely many ratios: c'_ij = -d for d dividing that product.
    Bases whose Cartan type is in the table come first.
    """
    A = chamber_graph(A).arrangement
    base = chamber_basis(A, K)
    data = c_coefficients(A, K, base)
    l = len(base)
    adj = {i: [j for j in range(l) if j != i and data.c[i][j]] for i in range(l)}
    seen: set[int] = set()
    tree: list[tuple[int, int]] = []
    roots = []
    for r in range(l):
        if r in seen:
            continue
        seen.add(r)
        roots.append(r)
        q = deque([r])
        while q:
            i = q.popleft()
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    tree.append((i, j))
                    q.append(j)
    options = []
    for i, j in tree:
        P = data.c[i][j] * data.c[j][i]
        if not _is_integer(P) or P <= 0:
            return []
        P = int(P if isinstance(P, (int, Fraction)) else P.to_fraction())
        options.append(_divisors(P))
    one = A.one()
    found = []
    keys = set()
    for choice in _cartesian(*options):
        lam = [None] * l
        for r in roots:
            lam[r] = one
        for (i, j), d in zip(tree, choice):
            # c'_ij = c_ij lam_j / lam_i = -d
            lam[j] = lam[i] * (-d / data.c[i][j])
        B = [tuple(lam[k] * x for x in base[k]) for k in range(l)]
        M = _int_matrix(c_coefficients(A, K, B))
        if M is None:
            continue
        key = tuple(B)
        if key in keys:
            continue
        keys.add(key)
        found.append((classify_cartan_type(M) == "other", len(found), B))
    found.sort(key=lambda t: (t[0], t[1]))
    return [B for _, _, B in found]


# -- root systems -------------------------------------------------------------------


@dataclass
class RootSystem:
    roots: frozenset
    bases: dict[int, list[tuple]]
    start: int

    def __len__(self) -> int:
        return len(self.roots)


@dataclass
class ClosureFailure:
    reason: str
    chambers: tuple[int, ...] = ()


def root_system_closure(A: Arrangement, K0: Chamber, B0: Sequence[Sequence],
                        require_integral: bool = False) -> RootSystem | ClosureFailure:
    """Transport B0 along all galleries; fail if a chamber gets two different bases."""
    G = chamber_graph(A)
    A = G.arrangement
    B0 = [tuple(b) for b in B0]
    if not is_basis_of(A, K0, B0):
        return ClosureFailure("B0 is not a basis of K0", (K0.index,))
    bases: dict[int, list[tuple]] = {K0.index: B0}
    sets: dict[int, frozenset] = {K0.index: frozenset(B0)}
    q = deque([K0])
    while q:
        K = q.popleft()
        B = bases[K.index]
        data = c_coefficients(A, K, B)
        if require_integral and not data.is_integral():
            return ClosureFailure("non-integral c_ij", (K.index,))
        for i in range(len(B)):
            step = sigma(A, K, i, B, data)
            J = step.chamber
            s = frozenset(step.basis)
            if J.index in sets:
                if sets[J.index] != s:
                    return ClosureFailure("bases differ by more than a permutation", (K.index, J.index))
                continue
            sets[J.index] = s
            bases[J.index] = step.basis
            q.append(J)
    roots = set()
    for B in bases.values():
        for b in B:
            roots.add(b)
            roots.add(tuple(-x for x in b))
    R = RootSystem(frozenset(roots), bases, K0.index)
    # reduced and covering A
    per: dict[tuple, set] = {}
    for r in roots:
        per.setdefault(canonical_normal(r), set()).add(r)
    if len(per) != len(A) or any(len(v) != 2 for v in per.values()):
        return ClosureFailure("root set is not reduced")
    return R


def in_integer_span(R: RootSystem, B: Sequence[Sequence]) -> bool:
    """Every root is an integer combination of B."""
    for r in R.roots:
        x = linalg.solve(list(B), list(r))
        if x is None or not all(_is_integer(c) for c in x):
            return False
    return True


@dataclass
class CrystallographicResult:
    crystallographic: bool
    root_system: RootSystem | None = None
    start_chamber: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.crystallographic


def is_crystallographic(A: Arrangement) -> CrystallographicResult:
    """Closure from the first chamber (BFS order) that has a locally crystallographic basis.

    If A has a crystallographic root system R, then B_R^K is among the
    rescalings tried at any chamber, and its closure is R; so one chamber
    suffices.
    """
    G = chamber_graph(A)
    if not G.simplicial:
        return CrystallographicResult(False, reason="not simplicial")
    A = G.arrangement
    for K in G.chambers:
        cands = locally_crystallographic_bases(A, K)
        if not cands:
            continue
        last = "no candidate basis"
        for B in cands:
            R = root_system_closure(A, K, B, require_integral=True)
            if isinstance(R, RootSystem):
                # every S_i is an integer matrix of determinant -1, so all
                # chamber bases span one lattice; check it directly at K
                if not in_integer_span(R, B):
                    last = "roots outside the integer span"
                    continue
                return CrystallographicResult(True, R, K.index)
            last = R.reason
        return CrystallographicResult(False, start_chamber=K.index, reason=last)
    return CrystallographicResult(False, reason="no locally crystallographic chamber")


def chamber_cartan_types(A: Arrangement, R: RootSystem) -> dict[int, CartanMatrix | None]:
    G = chamber_graph(A)
    return {k: cartan_matrix(G.arrangement, G.chambers[k], B) for k, B in R.bases.items()}


# -- graph change ----------------------------------------------------------------


@dataclass
class ChangeDiagram:
    """Numbered Coxeter graphs reachable by sigma-transport and the sigma_i moves."""

    classes: list[CoxeterGraph]
    transitions: dict[tuple[int, int], int]
    consistent: bool

    def describe(self) -> list[str]:
        out = []
        for k, g in enumerate(self.classes):
            moves = ", ".join(f"s{i + 1}->{self.transitions[k, i]}" for i in range(g.n))
            out.append(f"[{k}] {g} | {moves}")
        return out


def graph_change_diagram(A: Arrangement) -> ChangeDiagram:
    """Close (chamber, wall numbering) under sigma_i; vertex j of K_i is sigma_i(alpha_j)."""
    G = chamber_graph(A)
    A = G.arrangement
    K0 = G.chambers[0]
    start = (K0.index, tuple(K0.walls))
    seen = {start}
    q = deque([start])
    classes: dict[CoxeterGraph, int] = {}
    order: list[CoxeterGraph] = []
    trans: dict[tuple[int, int], int] = {}
    consistent = True
    graph_of: dict[tuple, CoxeterGraph] = {}

    def numbered(state) -> CoxeterGraph:
        g = graph_of.get(state)
        if g is None:
            K = G.chambers[state[0]]
            B = [tuple(-x for x in A.normals[h]) if K.signs[h] < 0 else A.normals[h] for h in state[1]]
            data = c_coefficients(A, K, B)
            g = CoxeterGraph.from_labels(data.m)
            graph_of[state] = g
        return g

    def cls(g: CoxeterGraph) -> int:
        if g not in classes:
            classes[g] = len(order)
            order.append(g)
        return classes[g]

    while q:
        st = q.popleft()
        K = G.chambers[st[0]]
        B = [tuple(-x for x in A.normals[h]) if K.signs[h] < 0 else A.normals[h] for h in st[1]]
        data = c_coefficients(A, K, B)
        c0 = cls(numbered(st))
        for i in range(len(B)):
            nb = reflect(data, i)
            J = G.neighbor(K, st[1][i])
            nxt = (J.index, tuple(locate(A, v)[0] for v in nb))
            c1 = cls(numbered(nxt))
            if trans.setdefault((c0, i), c1) != c1:
                consistent = False
            if nxt not in seen:
                seen.add(nxt)
                q.append(nxt)
    return ChangeDiagram(order, trans, consistent)


def diagrams_match(d: ChangeDiagram, classes: Sequence[CoxeterGraph],
                   transitions: dict[tuple[int, int], int]) -> dict | None:
    """Vertex permutation and class bijection carrying ``d`` onto a reference diagram, or None."""
    if not d.consistent or len(d.classes) != len(classes):
        return None
    ref = {CoxeterGraph(g.n, tuple(sorted(g.edges))): k for k, g in enumerate(classes)}
    n = d.classes[0].n if d.classes else 0
    for perm in permutations(range(n)):
        where = {}
        for k, g in enumerate(d.classes):
            t = ref.get(g.relabel(perm))
            if t is None:
                break
            where[k] = t
        else:
            if len(set(where.values())) != len(classes):
                continue
            if len(d.transitions) != len(transitions):
                continue
            if all(transitions.get((where[c], perm[i])) == where[t] for (c, i), t in d.transitions.items()):
                return {"vertex_perm": perm, "class_map": where}
    return None


# -- restricted chambers ------------------------------------------------------------


@dataclass
class RestrictedGraph:
    """Coxeter graph of (K alpha)^H with H = sigma_alpha(beta)^perp.

    ``rho`` maps original vertices (other than alpha, beta) and "ab" to the
    vertices of the restricted graph.
    """

    hyperplane: int
    graph: CoxeterGraph
    rho: dict


def restricted_graph(A: Arrangement, K: Chamber, a: int, b: int, basis: Sequence[Sequence] | None = None) -> RestrictedGraph:
    G = chamber_graph(A)
    A = G.arrangement
    B = [tuple(v) for v in (basis if basis is not None else chamber_basis(A, K))]
    data = c_coefficients(A, K, B)
    if data.m[a][b] < 3:
        raise ValueError("alpha, beta must span an edge")
    sB = reflect(data, a)
    h, _ = locate(A, sB[b])
    H = hyperplane(A, h)
    AH = restriction(A, H)
    keep = [g for g in range(len(B)) if g != b]
    rB = [restrict_covector(sB[g], H) for g in keep]
    GH = chamber_graph(AH)
    J = next((C for C in GH.chambers if is_basis_of(AH, C, rB)), None)
    if J is None:
        raise RuntimeError("restricted basis is not a chamber basis")
    dH = c_coefficients(AH, J, rB)
    rho = {}
    for pos, g in enumerate(keep):
        rho["ab" if g == a else g] = pos
    return RestrictedGraph(h, CoxeterGraph.from_labels(dH.m), rho)


def localization_graph(A: Arrangement, K: Chamber, vertices: Sequence[int]) -> CoxeterGraph:
    """Coxeter graph of the chamber of A_X / X containing K, for X cut out by the given walls."""
    G = chamber_graph(A)
    A = G.arrangement
    B = chamber_basis(A, K)
    X = flat_of(A, [K.walls[v] for v in vertices])
    Q = quotient(A, X)
    # A_X / X in the pivot coordinates of the RREF of the normals of A_X
    _, piv = linalg.rref([A.normals[h] for h in X.containing])
    qB = [tuple(B[v][p] for p in piv) for v in vertices]
    GQ = chamber_graph(Q)
    J = next((C for C in GQ.chambers if is_basis_of(Q, C, qB)), None)
    if J is None:
        raise RuntimeError("projected basis is not a chamber basis of the localization")
    return coxeter_graph(Q, J, qB)
