"""Higgs fields attached to quiver points and their integrable-system data.

A quiver point (x, y) with x y = 0 and y_i x_i = 0 determines a meromorphic
matrix-valued function phi(z) = sum_i x_i y_i / (z - p_i) with simple poles
at the marked points, residues that are traceless, square-zero and of rank
at most one, and decay like z^{-2} at infinity.  This module builds phi,
maps it to base coordinates (coefficient vectors of the cleared trace
powers), and checks the Poisson geometry: the bracket kernel identity, the
pairwise commutation of base components, and the rank of their Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import DegreeOverflowError, MomentMapError, PoleEvaluationError
from .exact import (
    DensePoly,
    GaussianRational,
    PolyMatrix,
    norm_sq,
    poly_from_roots,
    scalar_to_json,
)
from .quiver import QuiverPoint


@dataclass(frozen=True)
class HiggsField:
    """Residue data of sum_i phi_i / (z - p_i)."""

    residues: tuple  # n matrices, each r x r
    marked_points: tuple
    flavor: str  # "exact" | "float"

    @property
    def n(self) -> int:
        return len(self.residues)

    @property
    def r(self) -> int:
        return len(self.residues[0])


def _edge_scale(col, row) -> float:
    return math.sqrt(
        float(sum(norm_sq(v) for v in col)) * float(sum(norm_sq(v) for v in row))
    )


def residues(point: QuiverPoint, tol: float = 1e-8) -> HiggsField:
    """Residue matrices phi_i = x_i y_i of a quiver point.

    Validates the complex moment map: every scalar y_i x_i must vanish and
    the residues must sum to zero.  Tracelessness, square-zero and rank <= 1
    of each phi_i then hold automatically for the outer products.  Exact
    points are checked exactly, float points within tol relative to the
    entry scale.
    """
    r, n = point.r, point.n
    exact = point.flavor == "exact"
    mats = []
    for i in range(n):
        col = point.x_col(i)
        row = point.y[i]
        scalar = sum(a * b for a, b in zip(row, col))
        if exact:
            bad = bool(scalar)
        else:
            bad = abs(complex(scalar)) > tol * max(1.0, _edge_scale(col, row))
        if bad:
            raise MomentMapError(
                f"complex moment map violated: y_i x_i != 0 at edge {i + 1}",
                edge=i + 1,
            )
        mats.append(point.residue(i))
    total = mats[0]
    for m in mats[1:]:
        total = linalg.mat_add(total, m)
    defect = linalg.frob_sq(total)
    if exact:
        bad = bool(defect)
    else:
        scale = max(float(linalg.frob_sq(m)) for m in mats)
        bad = float(defect) > (tol * max(1.0, scale)) ** 2
    if bad:
        raise MomentMapError(
            "complex moment map violated: residues do not sum to zero"
        )
    return HiggsField(
        residues=tuple(mats),
        marked_points=point.marked_points,
        flavor=point.flavor,
    )


def higgs_eval(field: HiggsField, z):
    """The matrix sum_i phi_i / (z - p_i)."""
    if field.flavor == "exact" and isinstance(z, int):
        z = Fraction(z)
    acc = linalg.zeros(field.r, field.r)
    for i, p in enumerate(field.marked_points):
        if z == p:
            raise PoleEvaluationError(f"evaluation at pole p_{i + 1} = {p}")
        acc = linalg.mat_add(
            acc, linalg.mat_scale(field.residues[i], 1 / (z - p))
        )
    return acc


def _twisted_matrix(field: HiggsField) -> PolyMatrix:
    """phi(z) * prod_j (z - p_j) assembled as a polynomial matrix.

    Entry degrees must not exceed n - 2: the z^(n-1) coefficient of each
    entry is the corresponding entry of sum_i phi_i.  Exact fields only.
    """
    if field.flavor != "exact":
        raise ValueError("polynomial twisting requires exact residues")
    n, r = field.n, field.r
    cofactors = [
        poly_from_roots(
            [p for j, p in enumerate(field.marked_points) if j != i]
        )
        for i in range(n)
    ]
    rows = []
    for a in range(r):
        row = []
        for b in range(r):
            acc = DensePoly.zero("z")
            for i in range(n):
                acc = acc + cofactors[i] * field.residues[i][a][b]
            if acc.degree > n - 2:
                raise DegreeOverflowError(
                    "degree overflow: residues do not sum to zero"
                )
            row.append(acc)
        rows.append(row)
    return PolyMatrix(rows, "z")


@dataclass(frozen=True)
class BasePoint:
    """Coefficient vectors of the cleared trace powers g_k, k = 2..r."""

    r: int
    n: int
    g: dict  # k -> tuple of coefficients, lowest degree first

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.g.values())

    def to_json_dict(self) -> dict:
        return {
            "g": {
                str(k): [scalar_to_json(c) for c in vec]
                for k, vec in sorted(self.g.items())
            }
        }


def hitchin_map(field: HiggsField) -> BasePoint:
    """Base coordinates g_k(z) = Tr(phi(z)^k) * prod_j (z - p_j), k = 2..r.

    On the exact path the trace of the twisted matrix power is divided by
    prod(z - p_j)^(k-1); a nonzero remainder means some trace power has a
    higher-order pole at a marked point and is reported as a degree
    overflow, as is a quotient of degree above n - 2k.  Float fields are
    fitted from evaluations at integer points beyond the marked ones.
    """
    r, n = field.r, field.n
    if field.flavor == "exact":
        psi = _twisted_matrix(field)
        divisor = poly_from_roots(field.marked_points)
        g: dict[int, tuple] = {}
        power = psi
        den = DensePoly.one("z")
        for k in range(2, r + 1):
            power = power.mul(psi)
            den = den * divisor
            quot, rem = power.trace().divmod(den)
            if rem:
                raise DegreeOverflowError(
                    f"degree overflow: trace power {k} has a higher-order "
                    "pole at a marked point",
                    power=k,
                )
            bound = n - 2 * k
            if quot and quot.degree > bound:
                raise DegreeOverflowError(
                    f"degree overflow: g_{k} has degree {quot.degree} "
                    f"> {bound}",
                    power=k,
                )
            g[k] = quot.padded(bound + 1) if bound >= 0 else ()
        return BasePoint(r=r, n=n, g=g)

    pts = [float(p) for p in field.marked_points]
    g = {}
    for k in range(2, r + 1):
        count = n - 2 * k + 1
        if count <= 0:
            g[k] = ()
            continue
        zs = np.array([float(n + 1 + t) for t in range(count)])
        vals = []
        for z in zs:
            a = np.array(
                [[complex(v) for v in row] for row in higgs_eval(field, z)]
            )
            vals.append(
                complex(np.trace(np.linalg.matrix_power(a, k)))
                * math.prod(z - p for p in pts)
            )
        vander = np.vander(zs, count, increasing=True)
        coeffs = np.linalg.solve(vander, np.array(vals))
        g[k] = tuple(complex(c) for c in coeffs)
    return BasePoint(r=r, n=n, g=g)


# ---------------------------------------------------------------------------
# Poisson geometry

@dataclass(frozen=True)
class BracketObservable:
    """Trace power Tr(phi(z0)^m) as a function of the quiver point."""

    m: int
    z0: object

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError("power must be an integer >= 2")


@dataclass(frozen=True)
class Gradient:
    """Partial derivatives with respect to every entry of x and y."""

    gx: tuple  # r x n
    gy: tuple  # n x r


def observable_grad(
    point: QuiverPoint,
    obs: BracketObservable,
    field: Optional[HiggsField] = None,
) -> Gradient:
    """Closed-form gradient of Tr(phi(z0)^m).

    With A = phi(z0): d/d(x_i)_a = m (y_i A^(m-1))_a / (z0 - p_i) and
    d/d(y_i)_b = m (A^(m-1) x_i)_b / (z0 - p_i).
    """
    if obs.m > point.r:
        raise ValueError("power must lie between 2 and the rank")
    if field is None:
        field = residues(point)
    r, n = point.r, point.n
    z0 = obs.z0
    if point.flavor == "exact" and isinstance(z0, int):
        z0 = Fraction(z0)
    apow = linalg.mat_pow(higgs_eval(field, z0), obs.m - 1)
    weights = [obs.m / (z0 - p) for p in point.marked_points]
    gx = [[0] * n for _ in range(r)]
    gy = [[0] * r for _ in range(n)]
    for i in range(n):
        w = weights[i]
        row = point.y[i]
        col = point.x_col(i)
        for a in range(r):
            gx[a][i] = w * sum(row[b] * apow[b][a] for b in range(r))
            gy[i][a] = w * sum(apow[a][b] * col[b] for b in range(r))
    return Gradient(
        gx=tuple(tuple(v for v in row) for row in gx),
        gy=tuple(tuple(v for v in row) for row in gy),
    )


def _contract(gf: Gradient, gg: Gradient):
    """Canonical bracket pairing of two gradients.

    The sign is fixed so that the bracket induced on the residue entries
    M = x_i y_i is delta_jk M_il - delta_il M_kj.
    """
    n = len(gf.gy)
    r = len(gf.gx)
    acc = 0
    for i in range(n):
        for a in range(r):
            acc = acc + gf.gy[i][a] * gg.gx[a][i] - gf.gx[a][i] * gg.gy[i][a]
    return acc


def poisson_bracket(
    point: QuiverPoint,
    f: BracketObservable,
    g: BracketObservable,
    field: Optional[HiggsField] = None,
):
    """Canonical holomorphic bracket of two trace-power observables."""
    if field is None:
        field = residues(point)
    return _contract(
        observable_grad(point, f, field), observable_grad(point, g, field)
    )


def _entry_grad(point: QuiverPoint, a: int, b: int, z) -> Gradient:
    # gradient of the single matrix entry phi(z)[a][b]
    r, n = point.r, point.n
    weights = [1 / (z - p) for p in point.marked_points]
    gx = [[0] * n for _ in range(r)]
    gy = [[0] * r for _ in range(n)]
    for i in range(n):
        w = weights[i]
        gx[a][i] = w * point.y[i][b]
        gy[i][b] = w * point.x[a][i]
    return Gradient(
        gx=tuple(tuple(v for v in row) for row in gx),
        gy=tuple(tuple(v for v in row) for row in gy),
    )


def delta_check(point: QuiverPoint, z, w):
    """Deviation of the bracket of field entries from its two-pole kernel.

    Computes {phi_ab(z), phi_cd(w)} for every index quadruple through the
    canonical bracket and compares with delta_bc D_ad - delta_ad D_cb where
    D = phi(z)/(w-z) + phi(w)/(z-w).  Returns the maximum squared magnitude
    of the difference, which is exactly zero for exact points.
    """
    if point.flavor == "exact":
        if isinstance(z, int):
            z = Fraction(z)
        if isinstance(w, int):
            w = Fraction(w)
    if z == w:
        raise ValueError("coincident evaluation points")
    field = residues(point)
    r = point.r
    phi_z = higgs_eval(field, z)
    phi_w = higgs_eval(field, w)
    delta = linalg.mat_add(
        linalg.mat_scale(phi_z, 1 / (w - z)),
        linalg.mat_scale(phi_w, 1 / (z - w)),
    )
    grads_z = {
        (a, b): _entry_grad(point, a, b, z)
        for a in range(r)
        for b in range(r)
    }
    grads_w = {
        (c, d): _entry_grad(point, c, d, w)
        for c in range(r)
        for d in range(r)
    }
    worst = 0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    lhs = _contract(grads_z[(a, b)], grads_w[(c, d)])
                    rhs = 0
                    if b == c:
                        rhs = rhs + delta[a][d]
                    if a == d:
                        rhs = rhs - delta[c][b]
                    dev = norm_sq(lhs - rhs)
                    if dev > worst:
                        worst = dev
    return worst


# ---------------------------------------------------------------------------
# reports

def default_eval_points(n: int, count: int) -> tuple:
    """Integer evaluation points n+1, ..., n+count, off the default poles."""
    return tuple(Fraction(n + 1 + t) for t in range(count))


def _grad_norm(g: Gradient) -> float:
    total = sum(float(norm_sq(v)) for row in g.gx for v in row)
    total += sum(float(norm_sq(v)) for row in g.gy for v in row)
    return math.sqrt(total)


@dataclass(frozen=True)
class CommutationReport:
    """All pairwise brackets of the default observable family."""

    pairs: tuple  # ((m, z0, m', w0, abs_value, rel_value), ...)
    max_abs: float
    max_rel: float
    all_zero: bool  # exact flavor: every bracket is identically zero


def commutation_report(point: QuiverPoint, eval_points: Sequence | None = None) -> CommutationReport:
    """Brackets of all observable pairs at the default evaluation points."""
    n, r = point.n, point.r
    field = residues(point)
    if eval_points is None:
        eval_points = default_eval_points(n, 3)
    obs = [
        BracketObservable(m, z0)
        for m in range(2, r + 1)
        for z0 in eval_points
    ]
    grads = [observable_grad(point, o, field) for o in obs]
    norms = [_grad_norm(g) for g in grads]
    pairs = []
    max_abs = 0.0
    max_rel = 0.0
    all_zero = True
    for i in range(len(obs)):
        for j in range(i + 1, len(obs)):
            val = _contract(grads[i], grads[j])
            if val:
                all_zero = False
            a = math.sqrt(float(norm_sq(val)))
            rel = a / max(1.0, norms[i] * norms[j])
            max_abs = max(max_abs, a)
            max_rel = max(max_rel, rel)
            pairs.append(
                (obs[i].m, obs[i].z0, obs[j].m, obs[j].z0, a, rel)
            )
    return CommutationReport(
        pairs=tuple(pairs), max_abs=max_abs, max_rel=max_rel, all_zero=all_zero
    )


@dataclass(frozen=True)
class JacobianReport:
    """Numerical rank data of the base-coordinate differential."""

    rank: int
    dim_b: int
    singular_values: tuple


def _float_point(point: QuiverPoint) -> QuiverPoint:
    if point.flavor == "float":
        return point
    return QuiverPoint(
        r=point.r,
        n=point.n,
        flavor="float",
        x=tuple(tuple(complex(v) for v in row) for row in point.x),
        y=tuple(tuple(complex(v) for v in row) for row in point.y),
        alpha=point.alpha,
        marked_points=point.marked_points,
    )


def jacobian_rank(point: QuiverPoint, threshold: float = 1e-8) -> JacobianReport:
    """Rank of the derivative of all base coordinates in (x, y).

    The coordinates of g_m are represented by the evaluations of
    Tr(phi(z)^m) at n-2m+1 integer points off the poles; the change of
    basis to monomial coefficients is an invertible Vandermonde system
    scaled by the nonvanishing values of prod(z - p_j), so the rank is
    unchanged.  Rank counts singular values above threshold times the
    largest one.
    """
    fp = _float_point(point)
    r, n = fp.r, fp.n
    field = residues(fp)
    rows = []
    for m in range(2, r + 1):
        for z0 in default_eval_points(n, max(n - 2 * m + 1, 0)):
            grad = observable_grad(fp, BracketObservable(m, float(z0)), field)
            row = [complex(v) for grow in grad.gx for v in grow]
            row += [complex(v) for grow in grad.gy for v in grow]
            rows.append(row)
    dim_b = (r - 1) * (n - r - 1)
    if not rows:
        return JacobianReport(rank=0, dim_b=dim_b, singular_values=())
    mat = np.array(rows)
    svals = np.linalg.svd(mat, compute_uv=False)
    top = float(svals[0]) if svals.size else 0.0
    if top == 0.0:
        rank = 0
    else:
        rank = int(np.sum(svals > threshold * top))
    return JacobianReport(
        rank=rank,
        dim_b=dim_b,
        singular_values=tuple(float(s) for s in svals),
    )
