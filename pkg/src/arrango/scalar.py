"""Exact scalars: rationals and cyclotomic field elements.

Rationals are plain :class:`fractions.Fraction`.  Elements of Q(zeta_N) are
stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) reduced modulo the
N-th cyclotomic polynomial, as an integer numerator vector over a common
positive denominator.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

Scalar = Union[int, Fraction, "Cyclo"]


# -- cyclotomic polynomial tables ---------------------------------------------


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficients low to high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


class _Tables:
    """Per-order data: reduction of zeta powers and the conjugation map."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.poly = cyclotomic_poly(n)
        self.phi = len(self.poly) - 1
        phi = self.phi
        powers = []
        v = [1] + [0] * (phi - 1)
        for _ in range(n):
            powers.append(tuple(v))
            # multiply by x and reduce
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                for i in range(phi):
                    v[i] -= top * self.poly[i]
        self.powers = powers
        self.conj = [powers[(-k) % n] for k in range(phi)]
        self._floats = None
        self._iv: dict[int, list] = {}

    def reduce(self, raw: list[int]) -> list[int]:
        phi, poly = self.phi, self.poly
        for k in range(len(raw) - 1, phi - 1, -1):
            c = raw[k]
            if c:
                base = k - phi
                for i in range(phi):
                    raw[base + i] -= c * poly[i]
        return raw[:phi]

    def cos_floats(self) -> list[float]:
        if self._floats is None:
            self._floats = [math.cos(2 * math.pi * k / self.n) for k in range(self.phi)]
        return self._floats

    def cos_intervals(self, prec: int) -> list:
        got = self._iv.get(prec)
        if got is None:
            with _iv_prec(prec):
                got = [mpmath.iv.cos(2 * mpmath.iv.pi * k / self.n) for k in range(self.phi)]
            self._iv[prec] = got
        return got


@contextmanager
def _iv_prec(prec: int):
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        yield
    finally:
        mpmath.iv.prec = old


@lru_cache(maxsize=None)
def _tables(n: int) -> _Tables:
    return _Tables(n)


def phi(n: int) -> int:
    return _tables(n).phi


# -- the element type ---------------------------------------------------------


class Cyclo:
    """An element of the cyclotomic field Q(zeta_N)."""

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, num, den: int = 1) -> None:
        num = list(num)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-a for a in num]
            den = -den
        g = den
        for a in num:
            if a:
                g = math.gcd(g, a)
                if g == 1:
                    break
        if g > 1:
            num = [a // g for a in num]
            den //= g
        self.n = n
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # construction helpers

    @classmethod
    def from_rational(cls, n: int, q) -> "Cyclo":
        q = Fraction(q)
        p = _tables(n).phi
        return cls(n, [q.numerator] + [0] * (p - 1), q.denominator)

    @classmethod
    def zeta(cls, k: int, n: int) -> "Cyclo":
        return cls(n, _tables(n).powers[k % n], 1)

    @classmethod
    def from_coords(cls, n: int, coords) -> "Cyclo":
        fr = [Fraction(c) for c in coords]
        d = 1
        for c in fr:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return cls(n, [c.numerator * (d // c.denominator) for c in fr], d)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.num)

    @property
    def phi(self) -> int:
        return len(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def lift(self, m: int) -> "Cyclo":
        """Embed into Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"Q(zeta_{self.n}) does not embed in Q(zeta_{m})")
        t = _tables(m)
        step = m // self.n
        out = [0] * t.phi
        for k, a in enumerate(self.num):
            if a:
                for i, b in enumerate(t.powers[(k * step) % m]):
                    if b:
                        out[i] += a * b
        return Cyclo(m, out, self.den)

    def conjugate(self) -> "Cyclo":
        t = _tables(self.n)
        out = [0] * t.phi
        for k, a in enumerate(self.num):
            if a:
                for i, b in enumerate(t.conj[k]):
                    if b:
                        out[i] += a * b
        return Cyclo(self.n, out, self.den)

    def is_real(self) -> bool:
        return self.conjugate() == self

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.n == self.n:
                return self, other
            m = self.n * other.n // math.gcd(self.n, other.n)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, Cyclo.from_rational(self.n, other)
        return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if a.den == b.den:
            return Cyclo(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyclo(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-x for x in self.num], self.den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclo(self.n, [x * q.numerator for x in self.num], self.den * q.denominator)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        t = _tables(a.n)
        p = t.phi
        raw = [0] * (2 * p - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        raw[i + j] += x * y
        return Cyclo(a.n, t.reduce(raw), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return Cyclo(self.n, [self.den] + [0] * (self.phi - 1), self.num[0])
        # solve x * y = 1 using the multiplication matrix of x
        t = _tables(self.n)
        p = t.phi
        cols = []
        for k in range(p):
            raw = [0] * (2 * p - 1)
            for i, x in enumerate(self.num):
                raw[i + k] += x
            cols.append(t.reduce(raw))
        m = [[Fraction(cols[c][r]) for c in range(p)] + [Fraction(int(r == 0))] for r in range(p)]
        for c in range(p):
            piv = next(r for r in range(c, p) if m[r][c])
            m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [v * inv for v in m[c]]
            for r in range(p):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [v - f * w for v, w in zip(m[r], m[c])]
        y = Cyclo.from_coords(self.n, [m[r][p] for r in range(p)])
        return Cyclo(self.n, [v * self.den for v in y.num], y.den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                raise ZeroDivisionError("division by zero")
            return Cyclo(self.n, [x * q.denominator for x in self.num], self.den * q.numerator)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclo.from_rational(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparison

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclo):
            if other.n == self.n:
                return self.num == other.num and self.den == other.den
            a, b = self._coerce(other)
            return a.num == b.num and a.den == b.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                # consistent within one order; mixed orders are lifted on
                # comparison but should not share a dict
                self._hash = hash((self.n, self.num, self.den))
        return self._hash

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __float__(self) -> float:
        if not self.is_real():
            raise ValueError("non-real cyclotomic element")
        return _approx(self)

    def __repr__(self) -> str:
        return f"Cyclo({self.n}, {to_expr(self)!r})"

    def __str__(self) -> str:
        return to_expr(self)


# -- sign oracle --------------------------------------------------------------


def start_precision() -> int:
    try:
        return max(16, int(os.environ.get("ARRANGO_PRECISION", "64")))
    except ValueError:
        return 64


def _approx(x: Cyclo) -> float:
    fl = _tables(x.n).cos_floats()
    return math.fsum(a * c for a, c in zip(x.num, fl) if a) / x.den


def _sign_numeric(x: Cyclo) -> int:
    t = _tables(x.n)
    # cheap filter: the float error is far below the margin used here
    try:
        fl = t.cos_floats()
        total = math.fsum(float(a) * c for a, c in zip(x.num, fl) if a)
        scale = math.fsum(abs(float(a)) for a in x.num)
        if abs(total) > 1e-9 * scale:
            return 1 if total > 0 else -1
    except OverflowError:
        pass
    prec = start_precision()
    while True:
        cs = t.cos_intervals(prec)
        with _iv_prec(prec):
            acc = mpmath.iv.mpf(0)
            for a, c in zip(x.num, cs):
                if a:
                    acc += c * a
        if acc.a > 0:
            return 1
        if acc.b < 0:
            return -1
        prec *= 2


def sign(x) -> int:
    """Exact sign of a rational or of a real cyclotomic element."""
    if isinstance(x, Cyclo):
        if not x:
            return 0
        if not x.is_real():
            raise ValueError("sign of a non-real cyclotomic element")
        if x.is_rational():
            return 1 if x.num[0] > 0 else -1
        return _sign_numeric(x)
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


# -- named constants ----------------------------------------------------------


def zeta(k: int, n: int) -> Cyclo:
    return Cyclo.zeta(k, n)


def cos_frac(k: int, n: int) -> Cyclo:
    """cos(2*pi*k/n) as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("order must be positive")
    return (Cyclo.zeta(k, n) + Cyclo.zeta(-k, n)) * Fraction(1, 2)


def sin_frac(k: int, n: int) -> Cyclo:
    """sin(2*pi*k/n) as an element of Q(zeta_lcm(n,4))."""
    if n < 1:
        raise ValueError("order must be positive")
    m = n * 4 // math.gcd(n, 4)
    a = k * (m // n)
    i = Cyclo.zeta(m // 4, m)
    return (Cyclo.zeta(a, m) - Cyclo.zeta(-a, m)) * i * Fraction(-1, 2)


# -- fields -------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarField:
    """QQ (order 1) or Q(zeta_N); ``real`` marks a real-only subfield use."""

    order: int = 1
    real: bool = True

    @property
    def tag(self) -> str:
        return "QQ" if self.order == 1 else f"Cyclo({self.order})"

    @property
    def ordered(self) -> bool:
        return self.real

    def coerce(self, x) -> Scalar:
        if self.order == 1:
            if isinstance(x, Cyclo):
                return x.to_fraction()
            return Fraction(x)
        if isinstance(x, Cyclo):
            return x.lift(self.order)
        return Cyclo.from_rational(self.order, x)

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    def header(self) -> str:
        return "field QQ" if self.order == 1 else f"field cyclo {self.order}"


QQ = ScalarField(1, True)


def natural_order(x) -> int:
    if isinstance(x, Cyclo):
        return 1 if x.is_rational() else x.n
    return 1


def field_of(values, order: int | None = None) -> ScalarField:
    """Smallest common field for ``values`` (optionally forced to ``order``)."""
    m = 1
    for v in values:
        d = natural_order(v)
        m = m * d // math.gcd(m, d)
    if order is not None:
        if order % m and m != 1:
            raise ValueError(f"scalar of order {m} does not live in Q(zeta_{order})")
        m = order
    if m == 1:
        return QQ
    real = all(not isinstance(v, Cyclo) or v.is_real() for v in values)
    return ScalarField(m, real)


# -- text form ----------------------------------------------------------------


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=None)
def _cos_basis(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis coordinates of cos(k, n) for k < phi(n)/2, the real subfield basis."""
    return tuple(cos_frac(k, n).coords for k in range(max(phi(n) // 2, 1)))


def _cos_coords(x: Cyclo) -> list[Fraction]:
    """Coordinates of a real element in the basis cos(k, n), k < phi(n)/2."""
    cols = _cos_basis(x.n)
    d = len(cols)
    m = [[cols[c][r] for c in range(d)] + [x.coords[r]] for r in range(x.phi)]
    row = 0
    for c in range(d):
        piv = next(r for r in range(row, len(m)) if m[r][c])
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][c]
        m[row] = [v * inv for v in m[row]]
        for r in range(len(m)):
            if r != row and m[r][c]:
                f = m[r][c]
                m[r] = [v - f * w for v, w in zip(m[r], m[row])]
        row += 1
    return [m[c][d] for c in range(d)]


def to_expr(x) -> str:
    """Canonical expression in the literal grammar (no whitespace).

    Real elements are written in the basis cos(k,N), k < phi(N)/2, and the
    others in the power basis zeta(k,N).
    """
    if not isinstance(x, Cyclo):
        return _frac_str(Fraction(x))
    if x.is_rational():
        return _frac_str(x.to_fraction())
    if x.is_real():
        fn, coeffs = "cos", _cos_coords(x)
    else:
        fn, coeffs = "zeta", list(x.coords)
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            term = _frac_str(abs(c))
        else:
            atom = f"{fn}({k},{x.n})"
            term = atom if abs(c) == 1 else f"{_frac_str(abs(c))}*{atom}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+" if c > 0 else "-") + term)
    return "".join(parts)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0) -> None:
        super().__init__(f"{line}:{col}: {msg}" if line else f"col {col}: {msg}")
        self.line = line
        self.col = col


def _tokenize(text: str, line: int):
    toks = []
    i = 0
    space = True
    while i < len(text):
        ch = text[i]
        if ch in " \t,":
            space = True
            i += 1
            continue
        if ch == "#":
            break
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i + 1, space))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in ("cos", "sin", "zeta"):
                raise ParseError(f"unknown name {word!r}", line, i + 1)
            toks.append(("fn", word, i + 1, space))
            i = j
        elif ch in "+-*/()":
            toks.append((ch, ch, i + 1, space))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, i + 1)
        space = False
    return toks


class _Parser:
    def __init__(self, toks, line: int, split: bool) -> None:
        self.toks = toks
        self.i = 0
        self.line = line
        self.split = split
        self.depth = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind: str):
        t = self.peek()
        if t is None:
            col = self.toks[-1][2] + 1 if self.toks else 1
            raise ParseError(f"expected {kind!r}, got end of line", self.line, col)
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, got {t[1]!r}", self.line, t[2])
        self.i += 1
        return t

    def _starts_new_scalar(self, t) -> bool:
        # "a -b": a signed operand separated by whitespace starts a new entry
        if not self.split or self.depth:
            return False
        if t[0] in ("+", "-") and t[3]:
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
            return nxt is not None and not nxt[3]
        return False

    def expr(self):
        v = self.term()
        while True:
            t = self.peek()
            if t is None or t[0] not in "+-" or self._starts_new_scalar(t):
                return v
            self.i += 1
            w = self.term()
            v = v + w if t[0] == "+" else v - w

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t is None or t[0] not in "*/":
                return v
            self.i += 1
            w = self.unary()
            if t[0] == "*":
                v = v * w
            else:
                if not w:
                    raise ParseError("division by zero", self.line, t[2])
                v = v / w

    def unary(self):
        t = self.peek()
        if t is not None and t[0] in "+-":
            self.i += 1
            v = self.unary()
            return -v if t[0] == "-" else v
        return self.atom()

    def atom(self):
        t = self.peek()
        if t is None:
            return self.take("operand")
        if t[0] == "num":
            self.i += 1
            return Fraction(t[1])
        if t[0] == "(":
            self.i += 1
            self.depth += 1
            v = self.expr()
            self.take(")")
            self.depth -= 1
            return v
        if t[0] == "fn":
            self.i += 1
            self.take("(")
            k = self._int()
            n = self._int()
            self.take(")")
            if n < 1:
                raise ParseError("order must be positive", self.line, t[2])
            return {"cos": cos_frac, "sin": sin_frac, "zeta": zeta}[t[1]](k, n)
        raise ParseError(f"unexpected token {t[1]!r}", self.line, t[2])

    def _int(self) -> int:
        neg = False
        t = self.peek()
        if t is not None and t[0] in "+-":
            neg = t[0] == "-"
            self.i += 1
        v = self.take("num")[1]
        return -v if neg else v


def parse_scalar(text: str, line: int = 0):
    """Parse one scalar literal."""
    toks = _tokenize(text, line)
    if not toks:
        raise ParseError("empty scalar", line, 1)
    p = _Parser(toks, line, split=False)
    v = p.expr()
    if p.peek() is not None:
        t = p.peek()
        raise ParseError(f"trailing token {t[1]!r}", line, t[2])
    return v


def parse_row(text: str, line: int = 0) -> list:
    """Parse a whitespace-separated row of scalar literals."""
    toks = _tokenize(text, line)
    p = _Parser(toks, line, split=True)
    out = []
    while p.peek() is not None:
        out.append(p.expr())
    return out
