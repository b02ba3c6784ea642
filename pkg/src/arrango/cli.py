"""Command-line front end.

Arrangement arguments are file paths or catalog references ``@name:p1,p2``
(for example ``@A_2n_1:4``).  Exit codes: 0 success, 1 a checked property
failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import checks
from .arrangement import CATALOG, A_2n_1, A_4n1_1, A_lk, Arrangement, braid_A, refl_C
from .chambers import chamber_basis, chamber_graph, gallery_basis, is_simplicial_geometric, locate
from .coxeter import (
    ClosureFailure,
    RootSystem,
    cartan_matrix,
    coxeter_graph,
    graph_change_diagram,
    is_crystallographic,
    root_system_closure,
)
from .io import parse_arrangement_file, write_arrangement
from .lattice import (
    build_lattice,
    is_irreducible,
    is_simplicial_rank3,
    is_supersolvable,
    lattice_isomorphic,
    s_value,
)
from .plot import plot_svg
from .scalar import ParseError, to_expr

SCHEMA = 1
log = logging.getLogger("arrango")


class UsageError(Exception):
    pass


def load(ref: str) -> Arrangement:
    if ref.startswith("@"):
        name, _, params = ref[1:].partition(":")
        if name not in CATALOG:
            raise UsageError(f"unknown catalog name {name!r}; known: {', '.join(sorted(CATALOG))}")
        fn, names = CATALOG[name]
        args = [p for p in params.split(",") if p] if params else []
        if len(args) != len(names):
            raise UsageError(f"{name} takes {len(names)} parameter(s): {', '.join(names) or 'none'}")
        try:
            return fn(*(int(a) for a in args))
        except ValueError as e:
            raise UsageError(str(e)) from None
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"no such file: {ref}")
    return parse_arrangement_file(path)


def vec(v) -> list[str]:
    return [to_expr(x) for x in v]


def emit(args, doc: dict, text: list[str]) -> None:
    if args.json:
        doc = {"schema": SCHEMA, **doc}
        print(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print("\n".join(text))


# -- verbs ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    A = load("@" + args.name + (":" + ",".join(args.params) if args.params else ""))
    text = write_arrangement(A)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_info(args) -> int:
    A = load(args.arrangement)
    L = build_lattice(A)
    irr, bl = is_irreducible(A)
    doc = {
        "dim": A.dim,
        "field": A.field.header().split(" ", 1)[1],
        "real": A.ordered,
        "hyperplanes": len(A),
        "rank": A.rank,
        "essential": A.is_essential,
        "irreducible": irr,
        "blocks": bl,
        "charpoly": str(L.char_poly),
        "s": s_value(A, L),
        "normals": [vec(a) for a in A.normals],
    }
    text = [
        f"dim {A.dim}, {A.field.header()}, {len(A)} hyperplanes, rank {A.rank}"
        + ("" if A.is_essential else " (not essential)"),
        f"irreducible: {irr}  blocks: {bl}",
        f"chi(t) = {L.char_poly}",
        f"s(A) = {doc['s']}",
    ]
    emit(args, doc, text)
    return 0


def cmd_lattice(args) -> int:
    A = load(args.arrangement)
    L = build_lattice(A)
    mob = L.mobius
    ranks = []
    for idx in L.indices_by_rank:
        ranks.append([{"hyperplanes": list(L.flats[i].containing), "mobius": mob[i]} for i in idx])
    modular = [list(L.flats[i].containing) for i in range(len(L)) if L.is_modular_index(i)]
    ss = is_supersolvable(A, L) if A.is_essential else is_supersolvable(A)
    cert = None
    if ss is not None:
        cert = {"chain": [list(X.containing) for X in ss.chain], "exponents": list(ss.exponents)}
    doc = {
        "flats_by_rank": ranks,
        "charpoly": {"coefficients": list(L.char_poly.coeffs), "factored": str(L.char_poly)},
        "s": s_value(A, L),
        "modular": modular,
        "supersolvable": cert,
    }
    text = [f"rank {r}: {len(x)} flats" for r, x in enumerate(ranks)]
    text.append(f"chi(t) = {L.char_poly}")
    text.append(f"s(A) = {doc['s']}")
    text.append(f"modular flats: {len(modular)}")
    text.append(f"supersolvable: {'exponents ' + str(tuple(cert['exponents'])) if cert else 'no'}")
    emit(args, doc, text)
    return 0


def cmd_charpoly(args) -> int:
    A = load(args.arrangement)
    chi = build_lattice(A).char_poly
    roots = chi.integer_roots()
    doc = {"coefficients": list(chi.coeffs), "factored": str(chi), "integer_roots": roots}
    emit(args, doc, [str(chi)])
    return 0


def cmd_simplicial(args) -> int:
    A = load(args.arrangement)
    L = build_lattice(A)
    s = s_value(A, L)
    doc: dict = {"s": s, "combinatorial": s == 0}
    if A.ordered:
        doc["geometric"] = is_simplicial_geometric(A)
    if A.dim == 3 and A.rank == 3:
        doc["rank3_count_test"] = is_simplicial_rank3(A, L)
    text = [f"s(A) = {s}"] + [f"{k}: {v}" for k, v in sorted(doc.items()) if k != "s"]
    emit(args, doc, text)
    return 0


def cmd_supersolvable(args) -> int:
    A = load(args.arrangement)
    ss = is_supersolvable(A)
    doc = {"supersolvable": ss is not None}
    text = [f"supersolvable: {ss is not None}"]
    if ss is not None:
        doc["chain"] = [list(X.containing) for X in ss.chain]
        doc["exponents"] = list(ss.exponents)
        text.append(f"exponents: {ss.exponents}")
        text += [f"  X_{k}: {list(X.containing)}" for k, X in enumerate(ss.chain)]
    emit(args, doc, text)
    return 0


def cmd_chambers(args) -> int:
    A = load(args.arrangement)
    G = chamber_graph(A)
    A = G.arrangement
    rows = []
    for K in G.chambers:
        row = {"index": K.index, "walls": list(K.walls)}
        if args.signs:
            row["signs"] = "".join("+" if x > 0 else "-" for x in K.signs)
        rows.append(row)
    doc: dict = {"count": len(G), "simplicial": G.simplicial, "chambers": rows}
    text = [f"{len(G)} chambers, simplicial: {G.simplicial}"]
    for row in rows:
        text.append(f"  K{row['index']}: walls {row['walls']}" + (f"  {row['signs']}" if args.signs else ""))
    if args.gallery is not None:
        if not G.simplicial:
            raise UsageError("--gallery needs a simplicial arrangement")
        try:
            steps = [int(x) for x in args.gallery.split(",") if x.strip()]
        except ValueError:
            raise UsageError("--gallery takes comma-separated vertex indices") from None
        if not 0 <= args.start < len(G):
            raise UsageError(f"--start must be in 0..{len(G) - 1}")
        K0 = G.chambers[args.start]
        B = chamber_basis(A, K0)
        walk = [{"chamber": K0.index, "basis": [vec(b) for b in B]}]
        for k in range(1, len(steps) + 1):
            try:
                gal, Bk = gallery_basis(A, K0, B, steps[:k])
            except ValueError as e:
                raise UsageError(str(e)) from None
            walk.append({"chamber": gal.chambers[-1].index, "basis": [vec(b) for b in Bk]})
        doc["gallery"] = walk
        text.append("gallery:")
        for w in walk:
            text.append(f"  K{w['chamber']}: " + "; ".join("(" + ", ".join(b) + ")" for b in w["basis"]))
    emit(args, doc, text)
    return 0


def cmd_coxeter(args) -> int:
    A = load(args.arrangement)
    G = chamber_graph(A)
    A = G.arrangement
    if not G.simplicial:
        raise UsageError("Coxeter graphs need a simplicial arrangement")
    cr = is_crystallographic(A)
    bases = cr.root_system.bases if cr.root_system is not None else {}
    rows = []
    text = [f"crystallographic: {bool(cr)}" + ("" if cr else f" ({cr.reason})")]
    for K in G.chambers:
        B = bases.get(K.index) or chamber_basis(A, K)
        g = coxeter_graph(A, K, B)
        C = cartan_matrix(A, K, B)
        row = {
            "index": K.index,
            "hyperplanes": [locate(A, b)[0] for b in B],
            "edges": [[i, j, m] for i, j, m in g.edges],
            "cartan": [list(r) for r in C.matrix] if C else None,
            "type": C.type if C else None,
        }
        rows.append(row)
        text.append(f"K{K.index}: {g}" + (f"  type {C.type}" if C else ""))
    doc: dict = {"crystallographic": bool(cr), "chambers": rows}
    if args.closure:
        if not 0 <= args.start < len(G):
            raise UsageError(f"--start must be in 0..{len(G) - 1}")
        K0 = G.chambers[args.start]
        B0 = bases.get(K0.index) or chamber_basis(A, K0)
        R = root_system_closure(A, K0, B0)
        if isinstance(R, RootSystem):
            doc["closure"] = {"consistent": True, "roots": sorted(vec(r) for r in R.roots)}
            text.append(f"closure: {len(R)} roots")
            text += ["  (" + ", ".join(r) + ")" for r in doc["closure"]["roots"]]
        else:
            assert isinstance(R, ClosureFailure)
            doc["closure"] = {"consistent": False, "reason": R.reason, "chambers": list(R.chambers)}
            text.append(f"closure failed: {R.reason} at chambers {list(R.chambers)}")
    if args.diagram:
        d = graph_change_diagram(A)
        doc["diagram"] = {
            "consistent": d.consistent,
            "classes": [[[i, j, m] for i, j, m in g.edges] for g in d.classes],
            "transitions": [[c, i, t] for (c, i), t in sorted(d.transitions.items())],
        }
        text.append(f"graph-change diagram ({len(d.classes)} classes, consistent {d.consistent}):")
        text += ["  " + line for line in d.describe()]
    emit(args, doc, text)
    return 0


def cmd_iso(args) -> int:
    A, B = load(args.first), load(args.second)
    m = lattice_isomorphic(build_lattice(A), build_lattice(B))
    doc = {"isomorphic": m is not None, "atom_map": sorted(m.items()) if m else None}
    emit(args, doc, [f"isomorphic: {m is not None}"] + ([f"atom map: {sorted(m.items())}"] if m else []))
    return 0 if m is not None else 1


def classify(A: Arrangement) -> dict:
    """Properties and, for irreducible supersolvable simplicial instances, a lattice identification."""
    L = build_lattice(A)
    irr, _ = is_irreducible(A)
    ss = is_supersolvable(A, L) if A.is_essential else is_supersolvable(A)
    s = s_value(A, L)
    simp = is_simplicial_geometric(A) if A.ordered else None
    cr = None
    if simp is not None:
        cr = bool(is_crystallographic(A)) if simp else False
    out = {
        "irreducible": irr,
        "supersolvable": ss is not None,
        "simplicial": simp,
        "s": s,
        "crystallographic": cr,
        "identified": None,
    }
    if not (irr and ss is not None and simp):
        return out
    l, n = A.rank, len(A)
    candidates = []
    if l == 3:
        if n % 2 == 0 and n >= 6:
            candidates.append((f"A({n},1) = A(2n,1), n={n // 2}", A_2n_1(n // 2)))
        if n % 4 == 1 and n >= 9:
            candidates.append((f"A({n},1) = A(4m+1,1), m={(n - 1) // 4}", A_4n1_1((n - 1) // 4)))
    elif l >= 4:
        candidates += [(f"A(A_{l})", braid_A(l)), (f"A(C_{l})", refl_C(l)), (f"A_{l}^{l - 1} = A_l^(l-1), l={l}", A_lk(l, l - 1))]
    for name, B in candidates:
        if len(B) == n and lattice_isomorphic(L, build_lattice(B)) is not None:
            out["identified"] = name
            break
    return out


def cmd_classify(args) -> int:
    A = load(args.arrangement)
    doc = classify(A)
    text = [f"{k}: {v}" for k, v in sorted(doc.items())]
    emit(args, doc, text)
    return 0


def cmd_check(args) -> int:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    if args.suite == "all":
        names = [n for n in names if not n.startswith("graph-change-")]
    elif args.suite not in checks.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(checks.SUITES)}")
    results = [checks.run(n) for n in names]
    doc = {"suites": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    text = []
    for r in results:
        text.append(f"{'PASS' if r.passed else 'FAIL'} {r.id}: {r.title}")
        text += ["  " + line for line in r.lines]
    emit(args, doc, text)
    return 0 if doc["passed"] else 1


def cmd_plot(args) -> int:
    A = load(args.arrangement)
    try:
        svg = plot_svg(A)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrango", description="Exact analysis of hyperplane arrangements.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, help: str, arrangement: bool = True):
        q = sub.add_parser(name, help=help)
        q.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        if arrangement:
            q.add_argument("arrangement", help="file path or @catalog:params")
        q.set_defaults(fn=fn)
        return q

    q = verb("gen", cmd_gen, "write a catalog arrangement", arrangement=False)
    q.add_argument("name", choices=sorted(CATALOG))
    q.add_argument("params", nargs="*")
    q.add_argument("-o", "--output")
    verb("info", cmd_info, "summary")
    verb("lattice", cmd_lattice, "intersection lattice")
    verb("charpoly", cmd_charpoly, "characteristic polynomial")
    verb("simplicial", cmd_simplicial, "simpliciality tests")
    verb("supersolvable", cmd_supersolvable, "modular chain")
    q = verb("chambers", cmd_chambers, "chambers and galleries")
    q.add_argument("--signs", action="store_true")
    q.add_argument("--gallery", help="comma-separated vertex indices to cross")
    q.add_argument("--start", type=int, default=0, help="start chamber index")
    q = verb("coxeter", cmd_coxeter, "Coxeter graphs and Cartan matrices")
    q.add_argument("--closure", action="store_true")
    q.add_argument("--diagram", action="store_true")
    q.add_argument("--start", type=int, default=0, help="start chamber for --closure")
    q = verb("iso", cmd_iso, "lattice isomorphism", arrangement=False)
    q.add_argument("first")
    q.add_argument("second")
    verb("classify", cmd_classify, "properties and identification")
    q = verb("check", cmd_check, "run a verification suite", arrangement=False)
    q.add_argument("suite", help="suite id or 'all'")
    q = verb("plot", cmd_plot, "SVG picture of a rank-3 arrangement")
    q.add_argument("-o", "--output")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.fn(args)
    except (UsageError, ParseError) as e:
        print(f"arrango: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
