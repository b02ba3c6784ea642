"""Named verification suites over catalog instances.

Each suite returns a CheckResult whose ``lines`` hold one entry per
instance or sub-check; ``passed`` is the conjunction.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import linalg
from .arrangement import (
    A_2n_1,
    A_4n1_1,
    A_lk,
    Arrangement,
    boolean,
    braid_A,
    deletion,
    flat_of,
    g314_A2,
    g314_C,
    g314_D,
    g314_sub,
    generic,
    hyperplane,
    product,
    refl_C,
    refl_D,
    restriction,
)
from .chambers import (
    c_coefficients,
    chamber_graph,
    is_simplicial_geometric,
    reflect,
)
from .coxeter import (
    CoxeterGraph,
    chamber_cartan_types,
    contract_edge,
    coxeter_graph,
    diagrams_match,
    graph_change_diagram,
    is_connected,
    is_crystallographic,
    localization_graph,
    restricted_graph,
)
from .lattice import (
    CharPoly,
    _bits,
    build_lattice,
    char_poly,
    hansen_motzkin_witness,
    is_irreducible,
    is_supersolvable,
    lattice_isomorphic,
    s_value,
)
from .scalar import sign


@dataclass
class CheckResult:
    id: str
    title: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)

    def record(self, ok: bool, text: str) -> bool:
        self.lines.append(("ok   " if ok else "FAIL ") + text)
        self.passed = self.passed and ok
        return ok

    def to_json(self) -> dict:
        return {"id": self.id, "title": self.title, "passed": self.passed, "details": self.lines}


def _poly(*roots: int) -> CharPoly:
    return CharPoly.from_roots(list(roots))


# -- instance lists -------------------------------------------------------------


def real_catalog() -> list[tuple[str, Arrangement]]:
    """Essential real arrangements of rank >= 2 used by the catalog-wide suites."""
    out = [
        ("boolean(3)", boolean(3)),
        ("braid_A(3)", braid_A(3)),
        ("braid_A(4)", braid_A(4)),
        ("refl_C(3)", refl_C(3)),
        ("refl_C(4)", refl_C(4)),
        ("refl_D(4)", refl_D(4)),
        ("A_lk(3,1)", A_lk(3, 1)),
        ("A_lk(3,2)", A_lk(3, 2)),
        ("A_lk(4,2)", A_lk(4, 2)),
        ("A_lk(4,3)", A_lk(4, 3)),
        ("generic(3,5)", generic(3, 5)),
        ("generic(3,6)", generic(3, 6)),
        ("generic(4,6)", generic(4, 6)),
        ("A(10,1) minus H0", deletion(A_2n_1(5), 0)),
        ("A(9,1) minus H8", deletion(A_4n1_1(2), 8)),
    ]
    out += [(f"A({2 * n},1)", A_2n_1(n)) for n in range(3, 7)]
    out += [(f"A({4 * n + 1},1)", A_4n1_1(n)) for n in (2, 3)]
    return out


# -- suites -------------------------------------------------------------------------


def check_s_values() -> CheckResult:
    r = CheckResult("s-values", "s-values of the complex examples")
    A1, A2 = g314_C(), g314_A2()
    want = [("g314_sub", g314_sub(), 0), ("C", A1, 4), ("D", g314_D(), 4), ("A2", A2, -4),
            ("A1 x A2", product(A1, A2), 0)]
    for name, A, s in want:
        got = s_value(A)
        r.record(got == s, f"s({name}) = {got}, expected {s}")
    target = _poly(1, 4, 5)
    for name, A in (("A1", A1), ("A2", A2)):
        chi = char_poly(A)
        r.record(chi == target, f"chi({name}) = {chi}")
    return r


def _pencil_checks(r: CheckResult, name: str, A: Arrangement, expected: Counter, pencil: int) -> None:
    L = build_lattice(A)
    sizes = Counter(L.rank2_sizes())
    r.record(sizes == expected, f"{name}: rank-2 sizes {dict(sorted(sizes.items()))}")
    irr, _ = is_irreducible(A)
    r.record(irr, f"{name}: irreducible")
    ss = is_supersolvable(A, L)
    r.record(ss is not None, f"{name}: supersolvable, exponents {ss.exponents if ss else None}")
    geo = is_simplicial_geometric(A)
    comb = s_value(A, L) == 0
    r.record(geo and comb, f"{name}: simplicial (geometric {geo}, s = 0 {comb})")
    mod = [x for x in L.indices_by_rank[2] if L.size(x) == pencil and L.is_modular_index(x)]
    r.record(bool(mod), f"{name}: a rank-2 flat of size {pencil} is modular")
    chi = L.char_poly
    G = chamber_graph(A, L)
    r.record(len(G) == abs(chi(-1)), f"{name}: {len(G)} chambers, |chi(-1)| = {abs(chi(-1))}")


def check_A2n1() -> CheckResult:
    r = CheckResult("A2n1", "A(2n,1), n = 3..8")
    for n in range(3, 9):
        A = A_2n_1(n)
        L = build_lattice(A)
        k = len(L.indices_by_rank[2])
        want = Counter({2: n}) + Counter({3: k - n - 1}) + Counter({n: 1})
        _pencil_checks(r, f"A({2 * n},1)", A, want, n)
        r.record(len(chamber_graph(A)) == 2 * n * (n + 1), f"A({2 * n},1): chamber count 2n(n+1) = {2 * n * (n + 1)}")
    return r


def check_A4n11() -> CheckResult:
    r = CheckResult("A4n11", "A(4n+1,1), n = 2..4")
    for n in range(2, 5):
        A = A_4n1_1(n)
        L = build_lattice(A)
        k = len(L.indices_by_rank[2])
        want = Counter({2: 3 * n}) + Counter({3: k - 4 * n - 1}) + Counter({4: n}) + Counter({2 * n: 1})
        _pencil_checks(r, f"A({4 * n + 1},1)", A, want, 2 * n)
    return r


def check_A91_lattice() -> CheckResult:
    r = CheckResult("lattice-A91", "chi(A(9,1)) and lattice isomorphisms")
    A9 = A_4n1_1(2)
    chi = char_poly(A9)
    r.record(chi == _poly(1, 3, 5), f"chi(A(9,1)) = {chi}")
    iso = lattice_isomorphic(build_lattice(A9), build_lattice(refl_C(3)))
    r.record(iso is not None, "L(A(9,1)) ~ L(refl_C(3))")
    iso = lattice_isomorphic(build_lattice(A_2n_1(3)), build_lattice(braid_A(3)))
    r.record(iso is not None, "L(A(6,1)) ~ L(braid_A(3))")
    return r


def check_simplicial_equivalence() -> CheckResult:
    r = CheckResult("simplicial-equivalence", "geometric simpliciality iff s(A) = 0")
    cat = real_catalog()
    for name, A in cat:
        geo = is_simplicial_geometric(A)
        s = s_value(A)
        r.record(geo == (s == 0), f"{name}: simplicial {geo}, s = {s}")
    r.record(len(cat) >= 15, f"{len(cat)} instances")
    return r


def check_rank45_instances() -> CheckResult:
    r = CheckResult("rank45-instances", "rank 4 and 5 instances of the classification")
    for l in (4, 5):
        for name, A in ((f"A(A_{l})", braid_A(l)), (f"A(C_{l})", refl_C(l)), (f"A_{l}^{l - 1}", A_lk(l, l - 1))):
            L = build_lattice(A)
            irr, _ = is_irreducible(A)
            ss = is_supersolvable(A, L)
            simp = is_simplicial_geometric(A)
            cr = is_crystallographic(A)
            big = max(L.rank2_sizes())
            types = set()
            if cr.root_system is not None:
                types = {c.type if c else None for c in chamber_cartan_types(A, cr.root_system).values()}
            ok = irr and ss is not None and simp and bool(cr) and big <= 4 and types <= {"A", "C", "D", "D'"}
            r.record(ok, f"{name}: irreducible {irr}, supersolvable {ss is not None}, simplicial {simp}, "
                         f"crystallographic {bool(cr)}, max |A_X| = {big}, types {sorted(t or '-' for t in types)}")
    D4 = refl_D(4)
    irr, _ = is_irreducible(D4)
    simp = is_simplicial_geometric(D4)
    ss = is_supersolvable(D4)
    r.record(irr and simp and ss is None, f"refl_D(4): irreducible {irr}, simplicial {simp}, supersolvable {ss is not None}")
    return r


# reference diagrams; vertices 0..2, labels 3 unless given
_G = CoxeterGraph
REFERENCE_DIAGRAMS: dict[str, tuple[list[CoxeterGraph], dict[tuple[int, int], int]]] = {
    "A61": ([_G(3, ((0, 1, 3), (1, 2, 3)))], {(0, i): 0 for i in range(3)}),
    "A91": ([_G(3, ((0, 1, 3), (1, 2, 4)))], {(0, i): 0 for i in range(3)}),
    "A81": (
        [
            _G(3, ((0, 1, 3), (1, 2, 4))),
            _G(3, ((0, 1, 3), (1, 2, 3))),
            _G(3, ((0, 1, 3), (0, 2, 3), (1, 2, 3))),
            _G(3, ((0, 2, 3), (1, 2, 3))),
            _G(3, ((0, 2, 3), (1, 2, 4))),
        ],
        {
            (0, 0): 1, (0, 1): 0, (0, 2): 0,
            (1, 0): 0, (1, 1): 2, (1, 2): 1,
            (2, 0): 2, (2, 1): 1, (2, 2): 3,
            (3, 0): 4, (3, 1): 3, (3, 2): 2,
            (4, 0): 3, (4, 1): 4, (4, 2): 4,
        },
    ),
}
_DIAGRAM_INSTANCES = {"A61": lambda: A_2n_1(3), "A81": lambda: A_2n_1(4), "A91": lambda: A_4n1_1(2)}


def check_graph_change(which: tuple[str, ...] = ("A61", "A81", "A91")) -> CheckResult:
    suite = "graph-change" if len(which) > 1 else f"graph-change-{which[0]}"
    r = CheckResult(suite, "graph-change diagrams")
    for key in which:
        d = graph_change_diagram(_DIAGRAM_INSTANCES[key]())
        classes, trans = REFERENCE_DIAGRAMS[key]
        m = diagrams_match(d, classes, trans)
        name = f"A({key[1]},{key[2]})"
        r.record(m is not None, f"{name}: {len(d.classes)} classes, consistent {d.consistent}, "
                                f"matches reference {m is not None}")
    return r


def check_reflection_data() -> CheckResult:
    r = CheckResult("reflection-data", "c_ij and S_i invariants on every chamber")
    for name, A in (("A(8,1)", A_2n_1(4)), ("A(9,1)", A_4n1_1(2)), ("A_4^3", A_lk(4, 3))):
        G = chamber_graph(A)
        A = G.arrangement
        bad: Counter = Counter()
        for K in G.chambers:
            data = c_coefficients(A, K)
            l = len(data.basis)
            for i in range(l):
                if linalg.det(data.S[i]) != -1:
                    bad["det"] += 1
            for i in range(l):
                for j in range(l):
                    if i == j:
                        continue
                    c = data.c[i][j]
                    if c and sign(c) > 0:
                        bad["sign"] += 1
                    if (data.m[i][j] == 2) != (not c):
                        bad["m=2"] += 1
                    if data.m[i][j] == 3 and data.c[j][i] * c != 1:
                        bad["m=3"] += 1
            for i in range(l):
                Ki = G.neighbor(K, data.walls[i])
                di = c_coefficients(A, Ki, reflect(data, i))
                for j in range(l):
                    if di.c[i][j] != data.c[i][j]:
                        bad["c_ij at K_i"] += 1
                    if j != i and not data.c[i][j]:
                        if any(di.c[j][k] != data.c[j][k] for k in range(l)):
                            bad["c_ij = 0 persistence"] += 1
        r.record(not bad, f"{name}: {len(G)} chambers, violations {dict(bad) or 'none'}")
    return r


def _verify_hm(A: Arrangement, w) -> bool:
    if w is None:
        return False
    X, Y, h = w
    l = A.dim
    if X.rank != l - 1 or Y.rank != l - 2:
        return False
    if flat_of(A, list(Y.containing) + [h]).conormal != X.conormal:
        return False
    return set(X.containing) == set(Y.containing) | {h}


def check_hansen_motzkin() -> CheckResult:
    r = CheckResult("hansen-motzkin", "Hansen-Motzkin witnesses")
    for name, A in real_catalog():
        if A.dim < 3:
            continue
        w = hansen_motzkin_witness(A)
        desc = f"X = {list(w[0].containing)}, H = {w[2]}" if w else "none"
        r.record(_verify_hm(A, w), f"{name}: {desc}")
    return r


def check_restriction_bound() -> CheckResult:
    r = CheckResult("restriction-bound", "sizes of restrictions")
    cases = [(f"A({2 * n},1)", A_2n_1(n)) for n in range(3, 7)]
    cases += [(f"A({4 * m + 1},1)", A_4n1_1(m)) for m in (2, 3)]
    for name, A in cases:
        L = build_lattice(A)
        bound = math.ceil(len(A) / 4) + 1
        sizes = [len(restriction(A, hyperplane(A, h))) for h in range(len(A))]
        r.record(min(sizes) >= bound, f"{name}: min |A^H| = {min(sizes)}, bound ceil(|A|/4) + 1 = {bound}")
        ok = True
        count = 0
        for x in L.indices_by_rank[A.dim - 1]:
            if not L.is_modular_index(x):
                continue
            inside = set(_bits(L.masks[x]))
            for h in range(len(A)):
                if h not in inside:
                    count += 1
                    ok = ok and sizes[h] == L.size(x)
        r.record(ok and count > 0, f"{name}: |A^H| = |A_X| for modular X and H outside ({count} pairs)")
    return r


def gamma3_member(g: CoxeterGraph, n: int) -> int | None:
    """Index 1..5 of g in the rank-3 list for modular pencil size n, or None."""
    if g.n != 3:
        return None
    labels = sorted(m for _, _, m in g.edges)
    if len(labels) == 2:
        if labels == sorted([n, 3]):
            return 1
        if labels == [3, 4]:
            return 2
        if labels == [3, 3]:
            return 3
    if len(labels) == 3:
        if labels == [3, 3, 3]:
            return 4
        if labels == [3, 3, 4]:
            return 5
    return None


def _induced(g: CoxeterGraph, verts: tuple[int, ...]) -> CoxeterGraph:
    pos = {v: k for k, v in enumerate(verts)}
    e = tuple(sorted((pos[i], pos[j], m) for i, j, m in g.edges if i in pos and j in pos))
    return CoxeterGraph(len(verts), e)


def check_coxeter_graphs() -> CheckResult:
    r = CheckResult("coxeter-graphs", "Coxeter-graph constraints")
    rank3 = [(f"A({2 * n},1)", A_2n_1(n), n) for n in range(3, 9)]
    rank3 += [(f"A({4 * n + 1},1)", A_4n1_1(n), 2 * n) for n in range(2, 5)]
    for name, A, n in rank3:
        G = chamber_graph(A)
        seen = Counter()
        missing = 0
        for K in G.chambers:
            k = gamma3_member(coxeter_graph(G.arrangement, K), n)
            if k is None:
                missing += 1
            else:
                seen[k] += 1
        ok = missing == 0
        if len(A) % 2 == 0 or n <= 5:
            ok = ok and seen[5] == 0
        if n > 4 and len(A) % 2 == 0:
            ok = ok and seen[2] == 0
        r.record(ok, f"{name}: graph types {dict(sorted(seen.items()))}, outside list {missing}")

    for name, A in (("A(9,1)", A_4n1_1(2)), ("A_4^3", A_lk(4, 3)), ("A(C_4)", refl_C(4))):
        G = chamber_graph(A)
        A = G.arrangement
        bad = 0
        total = 0
        for K in G.chambers[:: max(1, len(G) // 24)]:
            g = coxeter_graph(A, K)
            for size in range(2, A.dim):
                for verts in combinations(range(A.dim), size):
                    total += 1
                    if localization_graph(A, K, verts) != _induced(g, verts):
                        bad += 1
        r.record(bad == 0, f"{name}: localization graphs equal induced subgraphs ({total} cases)")

    for name, A in (("A(9,1)", A_4n1_1(2)), ("A_4^3", A_lk(4, 3))):
        G = chamber_graph(A)
        A = G.arrangement
        fails: Counter = Counter()
        total = 0
        for K in G.chambers:
            g = coxeter_graph(A, K)
            for a, b, _ in g.edges:
                for al, be in ((a, b), (b, a)):
                    total += 1
                    res = restricted_graph(A, K, al, be)
                    gh, rho = res.graph, res.rho
                    con = contract_edge(g, al, be)
                    for e in con.edges:
                        u, v = tuple(e)
                        if gh.label(rho[u], rho[v]) < 3:
                            fails["contraction"] += 1
                    for c in range(g.n):
                        if c in (al, be):
                            continue
                        mh = gh.label(rho["ab"], rho[c])
                        if g.label(al, c) >= 3 and mh < g.label(al, c):
                            fails["(2)"] += 1
                        if g.label(al, c) >= 3 and g.label(be, c) >= 3:
                            if mh < g.label(al, c) + g.label(be, c) - 2:
                                fails["(3)"] += 1
        r.record(not fails, f"{name}: restriction graphs over {total} (chamber, edge) cases, "
                            f"violations {dict(fails) or 'none'}")

    for name, A in (("A(8,1)", A_2n_1(4)), ("A_4^3", A_lk(4, 3)), ("boolean(3)", boolean(3))):
        G = chamber_graph(A)
        irr, _ = is_irreducible(G.arrangement)
        conn = {is_connected(coxeter_graph(G.arrangement, K)) for K in G.chambers}
        r.record(conn == {irr}, f"{name}: irreducible {irr}, chamber graphs connected {sorted(conn)}")
    return r


def product_pool() -> list[tuple[str, Arrangement]]:
    return [
        ("boolean(1)", boolean(1)),
        ("boolean(2)", boolean(2)),
        ("braid_A(2)", braid_A(2)),
        ("braid_A(3)", braid_A(3)),
        ("refl_C(2)", refl_C(2)),
        ("refl_C(3)", refl_C(3)),
        ("A_lk(3,1)", A_lk(3, 1)),
        ("generic(2,5)", generic(2, 5)),
        ("generic(3,4)", generic(3, 4)),
        ("generic(3,5)", generic(3, 5)),
        ("A(6,1)", A_2n_1(3)),
        ("A(10,1) minus H0", deletion(A_2n_1(5), 0)),
    ]


def check_product_laws(pairs: int = 20, seed: int = 20240611) -> CheckResult:
    r = CheckResult("product-laws", "product laws on random catalog pairs")
    pool = product_pool()
    rng = random.Random(seed)
    for _ in range(pairs):
        (n1, A1), (n2, A2) = rng.choice(pool), rng.choice(pool)
        P = product(A1, A2)
        L1, L2, LP = build_lattice(A1), build_lattice(A2), build_lattice(P)
        c1, c2, cp = L1.char_poly, L2.char_poly, LP.char_poly
        s1, s2, sp = s_value(A1, L1), s_value(A2, L2), s_value(P, LP)
        mult = cp == c1 * c2
        bil = sp == abs(c2(-1)) * s1 + abs(c1(-1)) * s2
        ss = (is_supersolvable(P, LP) is not None) == (
            is_supersolvable(A1, L1) is not None and is_supersolvable(A2, L2) is not None)
        simp = is_simplicial_geometric(P) == (is_simplicial_geometric(A1) and is_simplicial_geometric(A2))
        r.record(mult and bil and ss and simp,
                 f"{n1} x {n2}: chi multiplicative {mult}, s identity {bil} (s = {sp}), "
                 f"supersolvable law {ss}, simplicial law {simp}")
    return r


SUITES: dict[str, Callable[[], CheckResult]] = {
    "s-values": check_s_values,
    "A2n1": check_A2n1,
    "A4n11": check_A4n11,
    "lattice-A91": check_A91_lattice,
    "simplicial-equivalence": check_simplicial_equivalence,
    "rank45-instances": check_rank45_instances,
    "graph-change": check_graph_change,
    "graph-change-A61": lambda: check_graph_change(("A61",)),
    "graph-change-A81": lambda: check_graph_change(("A81",)),
    "graph-change-A91": lambda: check_graph_change(("A91",)),
    "reflection-data": check_reflection_data,
    "hansen-motzkin": check_hansen_motzkin,
    "restriction-bound": check_restriction_bound,
    "coxeter-graphs": check_coxeter_graphs,
    "product-laws": check_product_laws,
}


def run(suite: str) -> CheckResult:
    try:
        fn = SUITES[suite]
    except KeyError:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}") from None
    return fn()
