"""Spectral curves of twisted field matrices.

The meromorphic field of a quiver point, multiplied by prod_j (z - p_j),
is a polynomial matrix psi(z) with entry degrees at most n - 2.  Its
characteristic polynomial f(z, lam) = lam^r + sum_i c_i(z) lam^(r-i) cuts
out the spectral curve.  This module computes the c_i exactly, checks the
vanishing-order bounds ord_{p_j}(c_i) >= floor((i+1)/2) at the marked
points, probes for singular points away from the marked fibers through an
exact discriminant, and carries two small hardcoded local models (one of
rank 3, one of rank 4) used as fixtures.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import (
    DegenerateDiscriminantError,
    DegreeOverflowError,
    ValidationError,
)
from .exact import (
    DensePoly,
    PolyMatrix,
    poly_from_roots,
    poly_matrix_charpoly,
    scalar_to_json,
    vanishing_order,
)
from .hitchin import HiggsField, _twisted_matrix, hitchin_map
from .quiver import min_orbit_check


@dataclass(frozen=True)
class TwistedHiggs:
    """Polynomial matrix psi(z) with the degree and trace constraints."""

    psi: PolyMatrix
    n: int
    marked_points: tuple

    def __post_init__(self):
        bound = self.n - 2
        for row in self.psi.rows:
            for e in row:
                if e.degree > bound:
                    raise DegreeOverflowError(
                        f"degree overflow: entry degree {e.degree} > {bound}"
                    )
        if self.psi.trace():
            raise ValidationError("twisted matrix must be traceless")

    @property
    def r(self) -> int:
        return self.psi.size


def twist(field: HiggsField) -> TwistedHiggs:
    """Clear the poles of a field by prod_j (z - p_j)."""
    return TwistedHiggs(
        psi=_twisted_matrix(field),
        n=field.n,
        marked_points=field.marked_points,
    )


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of det(lam*Id - psi) = lam^r + sum c_i(z) lam^(r-i)."""

    r: int
    n: int
    c: dict  # i -> DensePoly, i = 1..r (c_1 is recorded and must be zero)
    marked_points: tuple

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "c": {
                str(i): [scalar_to_json(v) for v in self.c[i].coeffs]
                for i in range(2, self.r + 1)
            },
        }


def spectral_charpoly(tw: TwistedHiggs) -> CharPoly:
    """Exact characteristic polynomial of a twisted matrix.

    Asserts c_1 = 0 and the degree bounds deg c_i <= i(n-2).
    """
    coeffs = poly_matrix_charpoly(tw.psi)
    r, n = tw.r, tw.n
    if coeffs[0]:
        raise ValidationError("charpoly has nonzero trace coefficient")
    c = {}
    for i, poly in enumerate(coeffs, start=1):
        if poly.degree > i * (n - 2):
            raise DegreeOverflowError(
                f"degree overflow: c_{i} has degree {poly.degree} "
                f"> {i * (n - 2)}"
            )
        c[i] = poly
    return CharPoly(r=r, n=n, c=c, marked_points=tw.marked_points)


@dataclass(frozen=True)
class OrderReport:
    """Vanishing orders of the c_i at given points against their bounds."""

    rows: tuple  # (i, point, order, bound, passed)
    all_pass: bool


def order_check(cp: CharPoly, points: Sequence | None = None) -> OrderReport:
    """Check ord_p(c_i) >= floor((i+1)/2) at each point.

    The zero polynomial has infinite order and passes every bound.
    """
    if points is None:
        points = cp.marked_points
    rows = []
    ok = True
    for i in range(2, cp.r + 1):
        bound = (i + 1) // 2
        for p in points:
            order = vanishing_order(cp.c[i], p)
            passed = order >= bound
            ok = ok and passed
            rows.append((i, p, order, bound, passed))
    return OrderReport(rows=tuple(rows), all_pass=ok)


@dataclass(frozen=True)
class TraceConsistencyReport:
    """Outcome of tying the cleared base coordinates to the trace powers."""

    ok: bool
    failing: tuple  # powers k where the identity breaks


def trace_consistency(field: HiggsField) -> TraceConsistencyReport:
    """Verify Tr(psi^k) = g_k * prod(z - p_j)^(k-1) exactly for k = 2..r.

    The left side comes from this module's twist, the right side from the
    base-coordinate map; k = 1 is trivially zero on both sides.  When the
    base map itself fails on a higher-order pole, the offending powers are
    identified by direct division and reported instead of raised.
    """
    tw = twist(field)
    r, n = tw.r, tw.n
    divisor = poly_from_roots(field.marked_points)
    power = tw.psi
    traces = {}
    for k in range(2, r + 1):
        power = power.mul(tw.psi)
        traces[k] = power.trace()
    try:
        base = hitchin_map(field)
    except DegreeOverflowError:
        failing = []
        den = DensePoly.one("z")
        for k in range(2, r + 1):
            den = den * divisor
            quot, rem = traces[k].divmod(den)
            if rem or (quot and quot.degree > n - 2 * k):
                failing.append(k)
        return TraceConsistencyReport(ok=False, failing=tuple(failing))
    failing = []
    den = DensePoly.one("z")
    for k in range(2, r + 1):
        den = den * divisor
        gk = DensePoly(base.g[k], "z")
        if traces[k] != gk * den:
            failing.append(k)
    return TraceConsistencyReport(ok=not failing, failing=tuple(failing))


# ---------------------------------------------------------------------------
# local models

@dataclass(frozen=True)
class LocalModelFixture:
    """A small matrix model of the curve normalization near a marked point."""

    name: str
    matrix: PolyMatrix
    charpoly: CharPoly
    residue: tuple  # matrix value at z = 0
    expected_residue_rank: int


def _validate_model(fix: LocalModelFixture, expected: Sequence[DensePoly]):
    got = [fix.charpoly.c[i] for i in range(1, fix.charpoly.r + 1)]
    if got != list(expected):
        raise ValidationError(f"{fix.name} model charpoly mismatch: {got}")
    sq = linalg.mat_mul(fix.residue, fix.residue)
    if linalg.frob_sq(sq):
        raise ValidationError(f"{fix.name} residue is not square-zero")
    if linalg.exact_rank(fix.residue) != fix.expected_residue_rank:
        raise ValidationError(f"{fix.name} residue rank mismatch")


def _matrix_residue(m: PolyMatrix) -> tuple:
    zero = Fraction(0)
    return tuple(
        tuple(e(zero) if e else zero for e in row) for row in m.rows
    )


def local_models(seed: int = 0) -> tuple[LocalModelFixture, LocalModelFixture]:
    """The rank-3 and rank-4 normalization fixtures, validated.

    The rank-3 matrix has charpoly lam^3 - z*lam - z^2 and a rank-1
    square-zero value at z = 0.  The rank-4 matrix has charpoly
    lam^4 - z*a*lam^2 - z^2*b*lam - z^2*c for seeded rational polynomials
    a, b (degree 1) and c (degree 0); its value at z = 0 is square-zero of
    rank 2 regardless of the specialization, which is what keeps it off
    the minimal orbit.
    """
    z = DensePoly.gen("z")
    zero = DensePoly.zero("z")
    one = DensePoly.one("z")

    m3 = PolyMatrix(
        [
            [zero, z, zero],
            [one, zero, z],
            [one, zero, zero],
        ],
        "z",
    )
    tw3 = TwistedHiggs(psi=m3, n=3, marked_points=(Fraction(0),))
    rank3 = LocalModelFixture(
        name="rank3",
        matrix=m3,
        charpoly=spectral_charpoly(tw3),
        residue=_matrix_residue(m3),
        expected_residue_rank=1,
    )
    _validate_model(rank3, [zero, -z, -(z ** 2)])

    rng = random.Random(seed)

    def coeff() -> Fraction:
        num = rng.choice([-1, 1]) * rng.randint(1, 9)
        return Fraction(num, rng.randint(1, 3))

    a = DensePoly([coeff(), coeff()], "z")
    b = DensePoly([coeff(), coeff()], "z")
    c = DensePoly([coeff()], "z")
    m4 = PolyMatrix(
        [
            [zero, zero, zero, z * c],
            [one, zero, zero, z * b],
            [zero, z, zero, z * a],
            [zero, zero, one, zero],
        ],
        "z",
    )
    tw4 = TwistedHiggs(psi=m4, n=4, marked_points=(Fraction(0),))
    rank4 = LocalModelFixture(
        name="rank4",
        matrix=m4,
        charpoly=spectral_charpoly(tw4),
        residue=_matrix_residue(m4),
        expected_residue_rank=2,
    )
    _validate_model(rank4, [zero, -(z * a), -(z ** 2 * b), -(z ** 2 * c)])
    if min_orbit_check(rank3.residue) is not True:
        raise ValidationError("rank3 residue should lie on the minimal orbit")
    if min_orbit_check(rank4.residue) is not False:
        raise ValidationError("rank4 residue should be off the minimal orbit")
    return rank3, rank4


# ---------------------------------------------------------------------------
# smoothness probe

def _bareiss_det(mat: list[list[DensePoly]]) -> DensePoly:
    """Fraction-free determinant over the polynomial ring."""
    m = [row[:] for row in mat]
    size = len(m)
    sign = 1
    prev = DensePoly.one("z")
    for k in range(size - 1):
        if not m[k][k]:
            pivot = next(
                (i for i in range(k + 1, size) if m[i][k]), None
            )
            if pivot is None:
                return DensePoly.zero("z")
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = DensePoly.zero("z")
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return -det if sign < 0 else det


def _resultant_lambda(f_coeffs: list[DensePoly], g_coeffs: list[DensePoly]) -> DensePoly:
    """Resultant in the fiber variable of two coefficient lists.

    Coefficient lists are highest power first; entries are polynomials in z.
    """
    dn = len(f_coeffs) - 1
    dm = len(g_coeffs) - 1
    size = dn + dm
    zero = DensePoly.zero("z")
    rows = []
    for s in range(dm):
        rows.append([zero] * s + f_coeffs + [zero] * (dm - 1 - s))
    for s in range(dn):
        rows.append([zero] * s + g_coeffs + [zero] * (dn - 1 - s))
    return _bareiss_det(rows)


def _poly_floats(p: DensePoly) -> list[float]:
    # normalize by the largest magnitude before float conversion so huge
    # exact coefficients cannot overflow
    biggest = max(abs(c) for c in p.coeffs)
    return [float(c / biggest) for c in p.coeffs]


@dataclass(frozen=True)
class ProbePoint:
    """One critical fiber of the projection to the base line."""

    z: complex
    classification: str  # on-divisor | off-curve | smooth-candidate | singular-candidate
    lambda_fiber: Optional[complex]
    f_abs: Optional[float]
    fz_abs: Optional[float]


@dataclass(frozen=True)
class SmoothnessReport:
    points: tuple
    verdict: str
    singular: tuple
    discriminant_degree: int


def smoothness_probe(
    cp: CharPoly,
    divisor: Sequence | None = None,
    precision: float = 1e-8,
    divisor_tol: float = 1e-6,
) -> SmoothnessReport:
    """Probe the curve for singular points away from the marked fibers.

    Takes the exact resultant of f and its fiber-direction derivative,
    finds its roots numerically, and at every root away from the divisor
    locates the repeated fiber coordinate and classifies the point by the
    magnitude of the base-direction derivative there.  A candidate is
    never a proof in either direction: roots and magnitudes are floating
    point.
    """
    if divisor is None:
        divisor = cp.marked_points
    r = cp.r
    one = DensePoly.one("z")
    f_coeffs = [one] + [cp.c[i] for i in range(1, r + 1)]
    flam_coeffs = [
        cp.c[i] * (r - i) if i else DensePoly.constant(r, "z")
        for i in range(r)
    ]
    res = _resultant_lambda(f_coeffs, flam_coeffs)
    if not res:
        raise DegenerateDiscriminantError(
            "degenerate discriminant: the curve is non-reduced"
        )
    deg = int(res.degree)
    if deg == 0:
        return SmoothnessReport(
            points=(),
            verdict="no singularities detected away from D",
            singular=(),
            discriminant_degree=0,
        )
    roots = np.roots(list(reversed(_poly_floats(res))))
    div_pts = [complex(p) for p in divisor]
    points = []
    singular = []
    for z0 in roots:
        z0 = complex(z0)
        if div_pts and min(abs(z0 - p) for p in div_pts) <= divisor_tol:
            points.append(
                ProbePoint(
                    z=z0,
                    classification="on-divisor",
                    lambda_fiber=None,
                    f_abs=None,
                    fz_abs=None,
                )
            )
            continue
        fc = [complex(c(z0)) for c in f_coeffs]
        scale = max(1.0, max(abs(v) for v in fc))
        flc = [complex(c(z0)) for c in flam_coeffs]
        lam_roots = np.roots(flc) if len(flc) > 1 else np.array([])
        if lam_roots.size == 0:
            continue
        fvals = [abs(np.polyval(fc, lam)) for lam in lam_roots]
        best = int(np.argmin(fvals))
        lam = complex(lam_roots[best])
        f_abs = float(fvals[best])
        fz = sum(
            complex(cp.c[i].derivative()(z0)) * lam ** (r - i)
            for i in range(1, r + 1)
        )
        fz_abs = float(abs(fz))
        if f_abs > math.sqrt(precision) * scale:
            cls = "off-curve"
        elif fz_abs > math.sqrt(precision) * scale:
            cls = "smooth-candidate"
        else:
            cls = "singular-candidate"
        pt = ProbePoint(
            z=z0,
            classification=cls,
            lambda_fiber=lam,
            f_abs=f_abs,
            fz_abs=fz_abs,
        )
        points.append(pt)
        if cls == "singular-candidate":
            singular.append(pt)
    verdict = (
        "no singularities detected away from D"
        if not singular
        else "singular candidates found away from D"
    )
    return SmoothnessReport(
        points=tuple(points),
        verdict=verdict,
        singular=tuple(singular),
        discriminant_degree=deg,
    )
