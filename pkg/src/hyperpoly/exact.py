"""Exact scalar, polynomial and truncated power series arithmetic.

Scalars are anything from Python's numeric tower (int, Fraction, float,
complex) plus :class:`GaussianRational`.  All exact code in this package is
duck-typed over that protocol: a scalar must support field arithmetic,
``.conjugate()``, ``.real`` and ``.imag``.  Rationals are plain
``fractions.Fraction``; there is no custom real-rational class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected a rational value, got {v!r}")


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    # numeric-tower style accessors so Fraction and GaussianRational
    # can flow through the same generic code
    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = GaussianRational(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def norm_sq(v):
    """|v|^2 as an exact rational (or float for float inputs)."""
    return (v * v.conjugate()).real


# ---------------------------------------------------------------------------
# serialization helpers: rationals as "p/q" strings, complex values as
# {"re": ..., "im": ...} objects

def format_rational(v: Rat) -> str:
    f = _as_fraction(v)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise ValueError(f"cannot parse rational from {s!r}")


def scalar_to_json(v):
    """Serialize one scalar. Exact reals become "p/q", exact complex values
    become {"re": "p/q", "im": "p/q"}, floats stay native."""
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    if isinstance(v, GaussianRational):
        if v.im == 0:
            return format_rational(v.re)
        return {"re": format_rational(v.re), "im": format_rational(v.im)}
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, float):
        return v
    raise TypeError(f"cannot serialize scalar {v!r}")


def scalar_from_json(obj):
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, (int, float)):
        return float(obj)
    if isinstance(obj, dict):
        re, im = obj["re"], obj["im"]
        if isinstance(re, str) or isinstance(im, str):
            re, im = parse_rational(re), parse_rational(im)
            if im == 0:
                return re
            return GaussianRational(re, im)
        return complex(float(re), float(im))
    raise ValueError(f"cannot parse scalar from {obj!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials

class DensePoly:
    """Dense univariate polynomial over an exact field.

    Coefficients are stored lowest degree first with no trailing zeros, so
    representations are canonical and ``==`` is semantic equality.  ``var``
    tags the variable; operations on mismatched tags are rejected.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "z"):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def zero(cls, var: str = "z") -> "DensePoly":
        return cls((), var)

    @classmethod
    def one(cls, var: str = "z") -> "DensePoly":
        return cls((1,), var)

    @classmethod
    def gen(cls, var: str = "z") -> "DensePoly":
        """The polynomial equal to the variable itself."""
        return cls((0, 1), var)

    @classmethod
    def constant(cls, c, var: str = "z") -> "DensePoly":
        return cls((c,), var)

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs and (
                not self.coeffs or self.var == other.var
            )
        if not self.coeffs:
            return other == 0 or not other
        if len(self.coeffs) == 1:
            return self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var if self.coeffs else ""))

    def _check_var(self, other: "DensePoly"):
        if self.coeffs and other.coeffs and self.var != other.var:
            raise ValueError(
                f"variable mismatch: {self.var!r} vs {other.var!r}"
            )

    def _var_of(self, other: "DensePoly") -> str:
        return self.var if self.coeffs else other.var

    def __add__(self, other):
        if not isinstance(other, DensePoly):
            other = DensePoly.constant(other, self.var)
        self._check_var(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DensePoly(out, self._var_of(other))

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        if not isinstance(other, DensePoly):
            other = DensePoly.constant(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            if not other:
                return DensePoly.zero(self.var)
            return DensePoly(tuple(c * other for c in self.coeffs), self.var)
        self._check_var(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return DensePoly.zero(self._var_of(other))
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return DensePoly(out, self._var_of(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = DensePoly.one(self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "DensePoly":
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return DensePoly((0,) * k + self.coeffs, self.var)

    def divmod(self, other: "DensePoly"):
        """Euclidean division; requires an invertible leading coefficient."""
        if not isinstance(other, DensePoly):
            other = DensePoly.constant(other, self.var)
        self._check_var(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        dn = len(d)
        lead = d[-1]
        if len(rem) < dn:
            return DensePoly.zero(self.var), self
        q = [0] * (len(rem) - dn + 1)
        for i in range(len(rem) - dn, -1, -1):
            c = rem[i + dn - 1]
            if not c:
                continue
            f = c / lead
            q[i] = f
            for j, dj in enumerate(d):
                rem[i + j] = rem[i + j] - f * dj
        return DensePoly(q, self.var), DensePoly(rem, self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "DensePoly") -> "DensePoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __call__(self, point):
        out = 0
        for c in reversed(self.coeffs):
            out = out * point + c
        return out

    def derivative(self) -> "DensePoly":
        return DensePoly(
            tuple(k * c for k, c in enumerate(self.coeffs) if k), self.var
        )

    def map_coeffs(self, fn) -> "DensePoly":
        return DensePoly(tuple(fn(c) for c in self.coeffs), self.var)

    def padded(self, length: int) -> tuple:
        """Coefficient tuple padded with zeros up to the given length."""
        if length < len(self.coeffs):
            raise ValueError("padding shorter than polynomial")
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "DensePoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*{self.var}")
            else:
                terms.append(f"{c}*{self.var}^{k}")
        return "DensePoly(" + " + ".join(terms) + ")"


def poly_from_roots(roots: Sequence, var: str = "z") -> DensePoly:
    out = DensePoly.one(var)
    x = DensePoly.gen(var)
    for a in roots:
        out = out * (x - DensePoly.constant(a, var))
    return out


def vanishing_order(p: DensePoly, a):
    """Order of vanishing of ``p`` at the point ``a``.

    Returns ``math.inf`` for the zero polynomial.  Computed by repeated
    synthetic division, exactly.
    """
    if p.is_zero():
        return math.inf
    order = 0
    cur = p
    while True:
        if cur(a) != 0:
            return order
        cur = cur.exact_div(
            DensePoly((-a, 1), cur.var)
        )
        order += 1
        if cur.is_zero():
            # only reachable from the zero polynomial, handled above
            return math.inf


# ---------------------------------------------------------------------------
# truncated power series in u

class TruncatedSeries:
    """Power series in ``u`` truncated at a fixed order.

    ``coeffs[k]`` is the coefficient of u^k for k = 0 .. order; everything
    above the order is unknown, not zero.  Mixed-order arithmetic truncates
    to the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(cs) < order + 1:
            cs.extend([0] * (order + 1 - len(cs)))
        else:
            del cs[order + 1:]
        self.coeffs = cs
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def from_poly(cls, p: DensePoly, order: int) -> "TruncatedSeries":
        return cls(list(p.coeffs), order)

    def to_poly(self, var: str = "u") -> DensePoly:
        return DensePoly(self.coeffs, var)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1] and (
            self.order == other.order
        )

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, DensePoly):
            return TruncatedSeries.from_poly(other, self.order)
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries(
            [self.coeffs[k] + o.coeffs[k] for k in range(n + 1)], n
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(
                [c * other for c in self.coeffs], self.order
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        out = [0] * (n + 1)
        a, b = self.coeffs, o.coeffs
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by u**k, keeping the truncation order."""
        if k == 0:
            return self
        return TruncatedSeries([0] * k + self.coeffs, self.order)

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs}, order={self.order})"


def geom_power(s: int, order: int) -> TruncatedSeries:
    """Series expansion of 1/(1-u)^s to the given truncation order.

    The coefficient of u^k is binomial(s-1+k, k); s = 0 gives the constant
    series 1.
    """
    if s < 0:
        raise ValueError("exponent must be nonnegative")
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    if s == 0:
        return TruncatedSeries.one(order)
    return TruncatedSeries(
        [math.comb(s - 1 + k, k) for k in range(order + 1)], order
    )


# ---------------------------------------------------------------------------
# square matrices of polynomials

class PolyMatrix:
    """Square matrix with DensePoly entries, all in the same variable."""

    __slots__ = ("rows", "size", "var")

    def __init__(self, rows: Sequence[Sequence[DensePoly]], var: str = "z"):
        rows = tuple(tuple(e for e in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for e in row:
                if not isinstance(e, DensePoly):
                    raise TypeError("entries must be DensePoly")
                if e.coeffs and e.var != var:
                    raise ValueError("entry variable mismatch")
        self.rows = rows
        self.size = n
        self.var = var

    @classmethod
    def identity(cls, n: int, var: str = "z") -> "PolyMatrix":
        one = DensePoly.one(var)
        zero = DensePoly.zero(var)
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            var,
        )

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(
            [[e * c for e in row] for row in self.rows], self.var
        )

    def add(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.var,
        )

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.size
        ocols = list(zip(*other.rows))
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = DensePoly.zero(self.var)
                for k in range(n):
                    acc = acc + self.rows[i][k] * ocols[j][k]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.var)

    def trace(self) -> DensePoly:
        acc = DensePoly.zero(self.var)
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def max_degree(self):
        return max(e.degree for row in self.rows for e in row)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return f"PolyMatrix({self.rows!r})"


def poly_matrix_charpoly(m: PolyMatrix) -> list[DensePoly]:
    """Characteristic polynomial coefficients of a polynomial matrix.

    Returns [c_1, ..., c_r] with det(t*Id - m) = t^r + c_1 t^(r-1) + ... + c_r,
    each c_i a polynomial in the matrix variable.  Uses the Faddeev-LeVerrier
    recurrence, whose only divisions are by the integers 1..r and therefore
    stay exact over the rationals.
    """
    r = m.size
    cs: list[DensePoly] = []
    aux = PolyMatrix.identity(r, m.var)
    for k in range(1, r + 1):
        if k > 1:
            aux = m.mul(prev).add(
                PolyMatrix.identity(r, m.var).scale(cs[-1])
            )
        mk = m.mul(aux)
        ck = mk.trace().map_coeffs(lambda c: _div_int(c, k)) * (-1)
        cs.append(ck)
        prev = aux
    return cs


def _div_int(c, k: int):
    if isinstance(c, int):
        q, rem = divmod(c, k)
        if rem == 0:
            return q
        return Fraction(c, k)
    return c / k
