"""Poincare polynomials of hyperpolygon spaces.

The central routine solves, degree by degree in u = t^2, the localization
recursion that equates the Grassmannian Poincare series divided by
(1-u)^(n-1) with a sum over critical families indexed by partitions of the
rank and admissible size tuples.  The family attached to the full partition
(r) with size tuple (n) carries weight one and no pole, so the recursion can
be solved for it.

Two independent routes are kept alongside the solver: a closed three-term
formula special to rank 2, and a direct term-by-term re-evaluation of the
recursion used as a residual check.  They share no series bookkeeping with
the fast path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .combinat import (
    Partition,
    admissible_rho,
    critical_datum,
    gaussian_binomial,
    mult_factorial,
    multinomial,
    partitions,
)
from .exact import DensePoly, TruncatedSeries, geom_power

DEFAULT_MARGIN = 5

_poly_cache: dict[tuple[int, int], tuple[int, ...]] = {}
_rank2_cache: dict[int, tuple[int, ...]] = {}


@dataclass(frozen=True)
class PoincarePoly:
    """Poincare polynomial of one hyperpolygon space, in u = t^2."""

    r: int
    n: int
    poly: DensePoly

    @property
    def degree_bound(self) -> int:
        """Half the real dimension: (r-1)(n-r-1), floored at 0."""
        return max(0, (self.r - 1) * (self.n - self.r - 1))

    def coeffs_u(self) -> list[int]:
        """Dense coefficient list for u^0 .. u^degree_bound."""
        out = list(self.poly.coeffs)
        out.extend([0] * (self.degree_bound + 1 - len(out)))
        return out

    def betti_numbers(self) -> list[tuple[int, int]]:
        """Pairs (2k, b_2k) for k = 0 .. degree_bound."""
        return [(2 * k, c) for k, c in enumerate(self.coeffs_u())]


@dataclass(frozen=True)
class GenericityReport:
    r: int
    alpha: tuple[Fraction, ...]
    generic: bool
    witness: Optional[tuple[int, tuple[int, ...]]]


def _geom_coeffs(s: int, order: int) -> list[int]:
    return [math.comb(s - 1 + k, k) for k in range(order + 1)] if s else [1] + [0] * order


def _mul_into(acc: list, poly: Sequence, geom: Sequence, shift: int, scale: int):
    """acc += scale * u^shift * poly * geom, truncated to len(acc)-1."""
    top = len(acc)
    for i, p in enumerate(poly):
        if not p:
            continue
        base = shift + i
        if base >= top:
            break
        w = scale * p
        for j in range(top - base):
            g = geom[j]
            if g:
                acc[base + j] += w * g
    return acc


def _poly_mul_int(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _binomial_line_power(a: int, npow: int) -> list[int]:
    """Coefficients of (a + (1-a) u)^npow."""
    b = 1 - a
    pa = [1] * (npow + 1)
    pb = [1] * (npow + 1)
    for t in range(1, npow + 1):
        pa[t] = pa[t - 1] * a
        pb[t] = pb[t - 1] * b
    return [math.comb(npow, t) * pa[npow - t] * pb[t] for t in range(npow + 1)]


def _family_sum(lam: tuple[int, ...], n: int, order: int, exclude_top: bool) -> list:
    """Sum over all admissible size tuples for the partition lam of
    weight * u^beta * geom(s) * prod_j P(lam_j, rho_j), as a coefficient list.

    Size-1 parts are summed in closed form: for fixed sizes on the larger
    parts, the inclusion-exclusion identity
        sum_K (ordered nonempty subsets, total K) ((1-u)/u)^K
            = sum_j (-1)^j C(m,j) ((m-j) + (1-m+j) u)^n' / u^n'
    collapses the m-fold sum over their sizes into one polynomial factor.
    """
    r = sum(lam)
    ell = len(lam)
    heavy = [p for p in lam if p >= 2]
    m = ell - len(heavy)
    acc = [0] * (order + 1)

    def leaf(rho_h: tuple[int, ...], c_h: int):
        taken = sum(rho_h)
        n1 = n - taken
        if m and n1 < m:
            return
        beta_h = r * (n - r) + sum(p * (p - k) for p, k in zip(heavy, rho_h))
        s_h = ell + n - 1 - taken
        pprod = [1]
        for p, k in zip(heavy, rho_h):
            sub = _poincare_coeffs(p, k)
            if not sub:
                return
            pprod = _poly_mul_int(pprod, sub)
        if m:
            shift = beta_h + m - n1
            rpoly = [0] * (n1 + 1)
            for j in range(m + 1):
                sign = -1 if j & 1 else 1
                cmj = sign * math.comb(m, j)
                for t, q in enumerate(_binomial_line_power(m - j, n1)):
                    rpoly[t] += cmj * q
            pprod = _poly_mul_int(pprod, rpoly)
        else:
            shift = beta_h
        if shift < 0:
            raise ArithmeticError("negative exponent in collapsed family sum")
        if shift > order:
            return
        _mul_into(acc, pprod, _geom_coeffs(s_h, order - shift), shift, c_h)

    def rec(idx: int, avail: int, rho_h: tuple[int, ...], c_h: int):
        if idx == len(heavy):
            leaf(rho_h, c_h)
            return
        p = heavy[idx]
        reserve = sum(q + 1 for q in heavy[idx + 1:]) + m
        for k in range(p + 1, n - sum(rho_h) - reserve + 1):
            if exclude_top and len(heavy) == 1 and m == 0 and k == n:
                continue
            rec(idx + 1, avail - k, rho_h + (k,), c_h * math.comb(avail, k))

    rec(0, n, (), 1)
    return acc


def _lhs_coeffs(r: int, n: int, order: int) -> list[int]:
    acc = [0] * (order + 1)
    _mul_into(
        acc,
        gaussian_binomial(r, n).coeffs,
        _geom_coeffs(n - 1, order),
        0,
        1,
    )
    return acc


def _poincare_coeffs(r: int, n: int) -> tuple[int, ...]:
    if r == 1:
        return (1,)
    if n <= r:
        return ()
    key = (r, n)
    cached = _poly_cache.get(key)
    if cached is None:
        bound = (r - 1) * (n - r - 1)
        cached = _solve_level(r, n, bound + DEFAULT_MARGIN)
        _poly_cache[key] = cached
    return cached


def _solve_level(r: int, n: int, order: int) -> tuple[int, ...]:
    total = _lhs_coeffs(r, n, order)
    result: list = list(total)
    for lam in partitions(r):
        parts = tuple(lam)
        fam = _family_sum(parts, n, order, exclude_top=(parts == (r,)))
        mfact = mult_factorial(parts)
        if mfact == 1:
            for k in range(order + 1):
                result[k] -= fam[k]
        else:
            for k in range(order + 1):
                if fam[k]:
                    result[k] -= Fraction(fam[k], mfact)
    out = []
    for c in result:
        f = Fraction(c)
        if f.denominator != 1:
            raise ArithmeticError(
                f"non-integral coefficient {f} while solving level ({r}, {n})"
            )
        out.append(f.numerator)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poincare(r: int, n: int, margin: int = DEFAULT_MARGIN) -> PoincarePoly:
    """Poincare polynomial of the hyperpolygon space of rank r with n edges.

    Conventions: rank 1 spaces are points for every n >= 1, and the space is
    empty (zero polynomial) whenever n <= r for r >= 2.  The series is solved
    with truncation (r-1)(n-r-1) + margin; the extra coefficients must come
    out zero, which `recursion_residual` and the test suite verify.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("rank must be a positive integer")
    if not isinstance(n, int) or n < 1:
        raise ValueError("edge count must be a positive integer")
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    if r == 1:
        coeffs: tuple[int, ...] = (1,)
    elif n <= r:
        coeffs = ()
    elif margin == DEFAULT_MARGIN:
        coeffs = _poincare_coeffs(r, n)
    else:
        coeffs = _solve_level(r, n, (r - 1) * (n - r - 1) + margin)
    return PoincarePoly(r=r, n=n, poly=DensePoly(coeffs, "u"))


def poincare_rank2(n: int, margin: int = DEFAULT_MARGIN) -> PoincarePoly:
    """Rank-2 Poincare polynomial from the closed three-term recursion.

    Independent of the general solver; used as an oracle against it.
    """
    if not isinstance(n, int) or n < 3:
        raise ValueError("rank-2 spaces need at least 3 edges")
    coeffs = _rank2_coeffs(n, margin)
    return PoincarePoly(r=2, n=n, poly=DensePoly(coeffs, "u"))


def _rank2_coeffs(n: int, margin: int = DEFAULT_MARGIN) -> tuple[int, ...]:
    if margin == DEFAULT_MARGIN and n in _rank2_cache:
        return _rank2_cache[n]
    order = (n - 3) + margin
    lhs = TruncatedSeries.from_poly(gaussian_binomial(2, n), order) * geom_power(
        n - 1, order
    )
    total = lhs
    for k in range(3, n):
        sub = DensePoly(_rank2_coeffs(k), "u")
        term = (
            TruncatedSeries.from_poly(sub, order)
            * geom_power(n - k, order)
            * multinomial(n, (k,))
        ).shift(2 * (n - k))
        total = total - term
    for k1 in range(1, n):
        for k2 in range(1, n - k1 + 1):
            e = 2 * n - 2 - k1 - k2
            term = (
                geom_power(n + 1 - k1 - k2, order)
                * Fraction(multinomial(n, (k1, k2)), 2)
            ).shift(e)
            total = total - term
    out = []
    for c in total.coeffs:
        f = Fraction(c)
        if f.denominator != 1:
            raise ArithmeticError("rank-2 recursion produced a non-integer")
        out.append(f.numerator)
    while out and out[-1] == 0:
        out.pop()
    coeffs = tuple(out)
    if margin == DEFAULT_MARGIN:
        _rank2_cache[n] = coeffs
    return coeffs


def recursion_residual(
    r: int, n: int, margin: int = DEFAULT_MARGIN
) -> TruncatedSeries:
    """Left minus right hand side of the recursion, all terms substituted.

    Every admissible critical family is re-evaluated directly (no collapsed
    sums), with the solved Poincare polynomials plugged in.  The result must
    be the zero series through the truncation order.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("rank must be a positive integer")
    if not isinstance(n, int) or n <= r:
        raise ValueError("need more edges than the rank")
    order = max(0, (r - 1) * (n - r - 1)) + margin
    lhs = TruncatedSeries.from_poly(gaussian_binomial(r, n), order) * geom_power(
        n - 1, order
    )
    total = lhs
    for lam in partitions(r):
        for rho in admissible_rho(lam, n):
            datum = critical_datum(lam, rho, n)
            prod = TruncatedSeries.one(order)
            dead = False
            for p, k in zip(lam, rho):
                sub = _poincare_coeffs(p, k)
                if not sub:
                    dead = True
                    break
                prod = prod * DensePoly(sub, "u")
            if dead:
                continue
            term = (
                prod
                * geom_power(datum.s, order)
                * Fraction(datum.weight, datum.multfact)
            ).shift(datum.beta)
            total = total - term
    return total


def dimensions(r: int, n: int) -> tuple[int, int]:
    """(complex dimension of the space, dimension of the Hitchin-type base).

    The base dimension is the telescoping sum of the section space
    dimensions n - 2i + 1 for i = 2 .. r and always equals half the space
    dimension.
    """
    if not isinstance(r, int) or r < 2:
        raise ValueError("rank must be at least 2")
    if not isinstance(n, int) or n <= r:
        raise ValueError("need more edges than the rank")
    dim_x = 2 * (r - 1) * (n - r - 1)
    dim_b = sum(n - 2 * i + 1 for i in range(2, r + 1))
    return dim_x, dim_b


def genericity_check(r: int, alpha: Sequence) -> GenericityReport:
    """Check the arithmetic genericity of a length vector.

    alpha is generic when r' * sum(alpha) - r * sum(alpha[S]) is nonzero for
    every 0 <= r' <= r and proper subset S of the edge set for which
    (r'-1)(|S|-r'-1) >= 0, the vacuous pair (0, empty set) excluded.  The
    first violating pair in (r', size, lexicographic) order is reported as a
    witness with 1-based edge indices.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("rank must be a positive integer")
    avec = tuple(Fraction(a) for a in alpha)
    if not avec:
        raise ValueError("length vector must be nonempty")
    if any(a <= 0 for a in avec):
        raise ValueError("length vector entries must be positive")
    n = len(avec)
    total = sum(avec)
    for rprime in range(r + 1):
        for size in range(n):
            if (rprime - 1) * (size - rprime - 1) < 0:
                continue
            for subset in itertools.combinations(range(1, n + 1), size):
                if rprime == 0 and size == 0:
                    continue
                s_sum = sum(avec[i - 1] for i in subset)
                if rprime * total - r * s_sum == 0:
                    return GenericityReport(
                        r=r, alpha=avec, generic=False,
                        witness=(rprime, subset),
                    )
    return GenericityReport(r=r, alpha=avec, generic=True, witness=None)
