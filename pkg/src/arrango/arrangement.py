"""Central hyperplane arrangements given by their normal covectors."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .scalar import QQ, Cyclo, ScalarField, cos_frac, field_of, sin_frac, zeta

log = logging.getLogger(__name__)


def canonical_normal(v: Sequence) -> tuple:
    """Projective representative: first nonzero coordinate scaled to 1."""
    for a in v:
        if a:
            if a == 1:
                return tuple(v)
            inv = 1 / a
            return tuple(x * inv if x else x for x in v)
    raise ValueError("zero normal")


def signed_canonical(v: Sequence) -> tuple[tuple, int]:
    """(canonical normal, s) with v = s * positive multiple of the canonical normal."""
    from .scalar import sign

    for a in v:
        if a:
            return canonical_normal(v), sign(a)
    raise ValueError("zero normal")


@dataclass(frozen=True, eq=False)
class Arrangement:
    """A finite set of linear hyperplanes H = alpha^perp in K^dim."""

    dim: int
    field: ScalarField
    normals: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.normals)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Arrangement)
            and self.dim == other.dim
            and self.normals == other.normals
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.normals))

    def same_set(self, other: "Arrangement") -> bool:
        return self.dim == other.dim and set(self.normals) == set(other.normals)

    @cached_property
    def index(self) -> dict[tuple, int]:
        return {v: i for i, v in enumerate(self.normals)}

    @cached_property
    def rank(self) -> int:
        return linalg.rank(self.normals)

    @property
    def is_essential(self) -> bool:
        return self.rank == self.dim

    @property
    def ordered(self) -> bool:
        return self.field.ordered

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def __repr__(self) -> str:
        return f"Arrangement(dim={self.dim}, field={self.field.tag}, n={len(self)})"


def from_matrix(
    dim: int,
    columns: Iterable[Sequence],
    field: ScalarField | None = None,
    warn: bool = True,
) -> Arrangement:
    """Arrangement from normal covectors; projective duplicates are dropped."""
    cols = [tuple(c) for c in columns]
    for c in cols:
        if len(c) != dim:
            raise ValueError(f"covector of length {len(c)} in dimension {dim}")
    if field is None:
        field = field_of([x for c in cols for x in c])
    elif field.order != 1:
        field = field_of([x for c in cols for x in c], field.order)
    seen: dict[tuple, int] = {}
    out = []
    for k, c in enumerate(cols):
        c = tuple(field.coerce(x) for x in c)
        if not any(c):
            raise ValueError(f"zero normal (column {k + 1})")
        key = canonical_normal(c)
        if key in seen:
            if warn:
                log.warning("column %d is proportional to column %d; dropped", k + 1, seen[key] + 1)
            continue
        seen[key] = k
        out.append(key)
    return Arrangement(dim, field, tuple(out))


def empty(dim: int, field: ScalarField = QQ) -> Arrangement:
    return Arrangement(dim, field, ())


@dataclass(frozen=True, eq=False)
class Flat:
    """An element X of the intersection lattice.

    ``conormal`` is the RREF basis of the annihilator X^perp (the span of the
    normals of A_X); ``basis`` is the RREF basis of X itself.
    """

    rank: int
    conormal: tuple[tuple, ...]
    pivots: tuple[int, ...]
    containing: tuple[int, ...]
    dim_ambient: int

    @property
    def dim(self) -> int:
        return self.dim_ambient - self.rank

    @cached_property
    def basis(self) -> tuple[tuple, ...]:
        if self.conormal:
            zero = self.conormal[0][0] - self.conormal[0][0]
        else:
            zero = Fraction(0)
        one = zero + 1
        ns = linalg.nullspace(list(self.conormal), self.dim_ambient, zero, one)
        red, _ = linalg.rref(ns) if ns else ([], [])
        return tuple(red)

    @cached_property
    def key(self) -> tuple:
        return self.conormal

    def contains_vector(self, v) -> bool:
        return all(not linalg.dot(r, v) for r in self.conormal)

    def __eq__(self, other) -> bool:
        return isinstance(other, Flat) and self.conormal == other.conormal and self.dim_ambient == other.dim_ambient

    def __hash__(self) -> int:
        return hash((self.conormal, self.dim_ambient))

    def __repr__(self) -> str:
        return f"Flat(rank={self.rank}, A_X={list(self.containing)})"


def flat_of(A: Arrangement, indices: Iterable[int]) -> Flat:
    """The flat cut out by the given hyperplanes, with its full localization set."""
    idx = sorted(set(indices))
    rows = [A.normals[i] for i in idx]
    red, piv = linalg.rref(rows) if rows else ([], [])
    containing = tuple(i for i, v in enumerate(A.normals) if linalg.in_span(v, red, piv)) if red else ()
    return Flat(len(piv), tuple(red), tuple(piv), containing, A.dim)


def flat_from_subspace_basis(A: Arrangement, vectors: Sequence[Sequence]) -> Flat:
    """Flat X given by spanning vectors of X; it must be an element of L(A)."""
    containing = [i for i, a in enumerate(A.normals) if all(not linalg.dot(a, v) for v in vectors)]
    X = flat_of(A, containing)
    target = linalg.rref(vectors)[0] if vectors else []
    if X.basis != tuple(target):
        raise ValueError("subspace is not a flat of the arrangement")
    return X


def hyperplane(A: Arrangement, i: int) -> Flat:
    return flat_of(A, [i])


def center(A: Arrangement) -> Flat:
    return flat_of(A, range(len(A)))


def whole_space(A: Arrangement) -> Flat:
    return Flat(0, (), (), (), A.dim)


def flat_sum(X: Flat, Y: Flat) -> tuple[tuple, ...]:
    """Canonical RREF basis of the subspace X + Y."""
    rows = list(X.basis) + list(Y.basis)
    return tuple(linalg.rref(rows)[0]) if rows else ()


def _check_flat(A: Arrangement, X: Flat) -> None:
    if X.dim_ambient != A.dim:
        raise ValueError("flat belongs to a different ambient space")
    if X.rank and flat_of(A, X.containing).conormal != X.conormal:
        raise ValueError("not a flat of this arrangement")


def localization(A: Arrangement, X: Flat) -> Arrangement:
    """A_X in the same ambient space, indices following X.containing."""
    _check_flat(A, X)
    return Arrangement(A.dim, A.field, tuple(A.normals[i] for i in X.containing))


def restriction_map(A: Arrangement, X: Flat) -> tuple[Arrangement, list[int | None]]:
    """A^X in coordinates of X.basis, plus the map from old to new indices."""
    _check_flat(A, X)
    B = X.basis
    seen: dict[tuple, int] = {}
    out = []
    where: list[int | None] = []
    for i, a in enumerate(A.normals):
        if i in X.containing:
            where.append(None)
            continue
        v = tuple(linalg.dot(a, b) for b in B)
        key = canonical_normal(v)
        if key not in seen:
            seen[key] = len(out)
            out.append(key)
        where.append(seen[key])
    return Arrangement(len(B), A.field, tuple(out)), where


def restriction(A: Arrangement, X: Flat) -> Arrangement:
    return restriction_map(A, X)[0]


def restrict_covector(v, X: Flat) -> tuple:
    return tuple(linalg.dot(v, b) for b in X.basis)


def essential_coordinates(A: Arrangement) -> tuple[list[tuple], list[int]]:
    rows = list(A.normals)
    return linalg.rref(rows) if rows else ([], [])


def essentialize(A: Arrangement) -> Arrangement:
    """A / T(A), written in the coordinates of the pivot columns of the normals' RREF."""
    if A.is_essential:
        return A
    _, piv = essential_coordinates(A)
    normals = tuple(canonical_normal(tuple(a[p] for p in piv)) for a in A.normals)
    return Arrangement(len(piv), A.field, normals)


def quotient(A: Arrangement, X: Flat) -> Arrangement:
    """A_X / X, the essential rank-r(X) localization."""
    return essentialize(localization(A, X))


def product(A1: Arrangement, A2: Arrangement) -> Arrangement:
    f = A1.field
    if A1.field != A2.field:
        m = A1.field.order * A2.field.order // math.gcd(A1.field.order, A2.field.order)
        f = ScalarField(m, A1.field.real and A2.field.real) if m > 1 else QQ
    z = f.zero()
    l1, l2 = A1.dim, A2.dim
    normals = [tuple(f.coerce(x) for x in a) + (z,) * l2 for a in A1.normals]
    normals += [(z,) * l1 + tuple(f.coerce(x) for x in a) for a in A2.normals]
    return Arrangement(l1 + l2, f, tuple(canonical_normal(v) for v in normals))


def deletion(A: Arrangement, i: int) -> Arrangement:
    return Arrangement(A.dim, A.field, A.normals[:i] + A.normals[i + 1 :])


# -- catalog ------------------------------------------------------------------


def _unit(n: int, i: int, c: int = 1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def boolean(l: int) -> Arrangement:
    return from_matrix(l, [_unit(l, i) for i in range(l)])


def braid_A(l: int) -> Arrangement:
    """Essential form (dimension l) of {x_i - x_j : 1 <= i < j <= l+1}."""
    if l < 1:
        raise ValueError("braid_A needs l >= 1")
    cols = []
    for i in range(l + 1):
        for j in range(i + 1, l + 1):
            v = _unit(l + 1, i)
            v[j] = Fraction(-1)
            cols.append(v)
    return essentialize(from_matrix(l + 1, cols))


def A_lk(l: int, k: int) -> Arrangement:
    """{x_i +- x_j : i < j} together with {x_i : i <= k}."""
    if not 0 <= k <= l:
        raise ValueError("A_lk needs 0 <= k <= l")
    cols = []
    for i in range(l):
        for j in range(i + 1, l):
            for s in (-1, 1):
                v = _unit(l, i)
                v[j] = Fraction(s)
                cols.append(v)
    cols += [_unit(l, i) for i in range(k)]
    return from_matrix(l, cols)


def refl_C(l: int) -> Arrangement:
    return A_lk(l, l)


def refl_D(l: int) -> Arrangement:
    if l < 2:
        raise ValueError("refl_D needs l >= 2")
    return A_lk(l, 0)


def A_2n_1(n: int) -> Arrangement:
    """The rank-3 arrangement A(2n,1): a pencil of n lines plus n lines around it."""
    if n < 3:
        raise ValueError("A_2n_1 needs n >= 3")
    N = 2 * n
    cols = [(-sin_frac(m, N), cos_frac(m, N), Fraction(0)) for m in range(n)]
    cols += [(cos_frac(2 * j - 1, N), sin_frac(2 * j - 1, N), Fraction(1)) for j in range(1, n + 1)]
    return from_matrix(3, cols, ScalarField(N * 4 // math.gcd(N, 4), True))


def A_4n1_1(n: int) -> Arrangement:
    """A(4n+1,1) = A(4n,1) together with (0,0,1)^perp."""
    if n < 2:
        raise ValueError("A_4n1_1 needs n >= 2")
    B = A_2n_1(2 * n)
    extra = (Fraction(0), Fraction(0), Fraction(1))
    return from_matrix(3, list(B.normals) + [extra], B.field)


def g314_sub() -> Arrangement:
    """The 18-hyperplane complex 4-arrangement over Q(zeta_3) with s = 0."""
    z = zeta(1, 3)
    z2 = z * z
    o, l = Fraction(0), Fraction(1)
    rows = [
        [o, l, l, l, l, l, l, l, l, l, o, o, o, o, o, o, o, o],
        [o, -z, -z2, -l, o, o, o, o, o, o, l, l, l, l, l, l, o, o],
        [o, o, o, o, -z, -z2, -l, o, o, o, -z, -z2, -l, o, o, o, l, l],
        [l, o, o, o, o, o, o, -z, -z2, -l, o, o, o, -z, -z2, -l, -z, -z2],
    ]
    cols = [[rows[r][c] for r in range(4)] for c in range(18)]
    return from_matrix(4, cols, ScalarField(3, False))


def g314_C() -> Arrangement:
    """Localization of g314_sub at H1 cap H2 cap H3, taken modulo the flat."""
    A = g314_sub()
    return quotient(A, flat_of(A, [0, 1, 2]))


def g314_D() -> Arrangement:
    """Restriction of g314_sub to its eighth hyperplane."""
    A = g314_sub()
    return restriction(A, hyperplane(A, 7))


def g314_A2() -> Arrangement:
    """Restriction of g314_sub to its second hyperplane."""
    A = g314_sub()
    return restriction(A, hyperplane(A, 1))


def generic(l: int, n: int) -> Arrangement:
    """n hyperplanes in general position: moment-curve normals (1, t, t^2, ...)."""
    return from_matrix(l, [[Fraction(t) ** k for k in range(l)] for t in range(1, n + 1)])


CATALOG = {
    "boolean": (boolean, ("l",)),
    "braid_A": (braid_A, ("l",)),
    "refl_C": (refl_C, ("l",)),
    "refl_D": (refl_D, ("l",)),
    "A_lk": (A_lk, ("l", "k")),
    "A_2n_1": (A_2n_1, ("n",)),
    "A_4n1_1": (A_4n1_1, ("n",)),
    "g314_sub": (g314_sub, ()),
    "g314_C": (g314_C, ()),
    "g314_D": (g314_D, ()),
    "g314_A2": (g314_A2, ()),
    "generic": (generic, ("l", "n")),
}
