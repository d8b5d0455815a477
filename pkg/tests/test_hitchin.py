from fractions import Fraction

import pytest

from hyperpoly.errors import (
    DegreeOverflowError,
    MomentMapError,
    PoleEvaluationError,
)
from hyperpoly.hitchin import (
    BracketObservable,
    commutation_report,
    default_eval_points,
    delta_check,
    higgs_eval,
    hitchin_map,
    jacobian_rank,
    observable_grad,
    poisson_bracket,
    residues,
)
from hyperpoly.quiver import QuiverPoint, sample_exact

from conftest import X24


def _float_copy(point):
    return QuiverPoint(
        r=point.r,
        n=point.n,
        flavor="float",
        x=tuple(tuple(complex(v) for v in row) for row in point.x),
        y=tuple(tuple(complex(v) for v in row) for row in point.y),
        alpha=point.alpha,
        marked_points=point.marked_points,
    )


def test_residues_builds_field(point24):
    field = residues(point24)
    assert field.r == 2 and field.n == 4
    assert len(field.residues) == 4
    total = [[sum(field.residues[i][a][b] for i in range(4)) for b in range(2)] for a in range(2)]
    assert all(v == 0 for row in total for v in row)


def test_residues_rejects_edge_violation(point24):
    y = [list(row) for row in point24.y]
    y[2][0] += 1
    bad = QuiverPoint(
        r=2, n=4, flavor="exact", x=point24.x,
        y=tuple(tuple(row) for row in y),
        alpha=point24.alpha, marked_points=point24.marked_points,
    )
    with pytest.raises(MomentMapError) as exc:
        residues(bad)
    assert exc.value.edge == 3


def test_higgs_eval_pole(point24):
    field = residues(point24)
    with pytest.raises(PoleEvaluationError):
        higgs_eval(field, 2)
    with pytest.raises(PoleEvaluationError):
        higgs_eval(field, Fraction(4))


def test_higgs_eval_value(point24):
    field = residues(point24)
    a = higgs_eval(field, 5)
    manual = [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]
    for i in range(4):
        res = point24.residue(i)
        for p in range(2):
            for q in range(2):
                manual[p][q] += Fraction(res[p][q], 5 - (i + 1))
    assert [list(row) for row in a] == manual


def test_hitchin_map_fixture(point24):
    base = hitchin_map(residues(point24))
    assert base.g == {2: (Fraction(20),)}
    assert base.dim == 1
    assert base.to_json_dict() == {"g": {"2": ["20/1"]}}


def test_hitchin_map_float_agrees(point24):
    base = hitchin_map(residues(point24))
    fbase = hitchin_map(residues(_float_copy(point24)))
    assert fbase.g.keys() == base.g.keys()
    for k, vec in base.g.items():
        for exact_c, float_c in zip(vec, fbase.g[k]):
            assert abs(complex(float_c) - complex(exact_c)) < 1e-8


def test_hitchin_map_coefficient_counts():
    pt = sample_exact(3, 7, seed=1)
    base = hitchin_map(residues(pt))
    assert set(base.g) == {2, 3}
    assert len(base.g[2]) <= 7 - 4 + 1
    assert len(base.g[3]) <= 7 - 6 + 1


def test_hitchin_map_overflow_at_rank4():
    # traces of fourth powers acquire higher-order poles; the map is only
    # a clean polynomial family for low rank
    pt = sample_exact(4, 8, seed=0)
    with pytest.raises(DegreeOverflowError) as exc:
        hitchin_map(residues(pt))
    assert exc.value.power == 4


# ---------------------------------------------------------------------------
# gradients and brackets

def _trace_power(point, m, z0):
    # unconstrained evaluation, no moment-map validation
    r, n = point.r, point.n
    a = [[0j] * r for _ in range(r)]
    for i in range(n):
        w = 1.0 / (z0 - float(point.marked_points[i]))
        for p in range(r):
            for q in range(r):
                a[p][q] += complex(point.x[p][i]) * complex(point.y[i][q]) * w
    acc = [row[:] for row in a]
    for _ in range(m - 1):
        acc = [
            [sum(acc[p][k] * a[k][q] for k in range(r)) for q in range(r)]
            for p in range(r)
        ]
    return sum(acc[p][p] for p in range(r))


def test_observable_grad_matches_finite_differences(solved):
    pt = solved(2, 5)
    obs = BracketObservable(2, 7)
    grad = observable_grad(pt, obs)
    h = 1e-6

    def perturbed(mat, p, q, delta):
        rows = [list(row) for row in mat]
        rows[p][q] += delta
        return tuple(tuple(row) for row in rows)

    for p in range(2):
        for q in range(5):
            up = QuiverPoint(r=2, n=5, flavor="float", x=perturbed(pt.x, p, q, h),
                             y=pt.y, alpha=pt.alpha, marked_points=pt.marked_points)
            dn = QuiverPoint(r=2, n=5, flavor="float", x=perturbed(pt.x, p, q, -h),
                             y=pt.y, alpha=pt.alpha, marked_points=pt.marked_points)
            fd = (_trace_power(up, 2, 7.0) - _trace_power(dn, 2, 7.0)) / (2 * h)
            assert abs(fd - grad.gx[p][q]) < 1e-5 * max(1.0, abs(fd))
    for q in range(5):
        for p in range(2):
            up = QuiverPoint(r=2, n=5, flavor="float", x=pt.x, y=perturbed(pt.y, q, p, h),
                             alpha=pt.alpha, marked_points=pt.marked_points)
            dn = QuiverPoint(r=2, n=5, flavor="float", x=pt.x, y=perturbed(pt.y, q, p, -h),
                             alpha=pt.alpha, marked_points=pt.marked_points)
            fd = (_trace_power(up, 2, 7.0) - _trace_power(dn, 2, 7.0)) / (2 * h)
            assert abs(fd - grad.gy[q][p]) < 1e-5 * max(1.0, abs(fd))


def test_observable_validation(point24):
    with pytest.raises(ValueError):
        BracketObservable(1, 9)
    with pytest.raises(ValueError):
        observable_grad(point24, BracketObservable(3, 9))


def test_brackets_exactly_zero_on_exact_points():
    for r, n in [(2, 5), (3, 6)]:
        pt = sample_exact(r, n, seed=2)
        pts = default_eval_points(n, 2)
        for m1 in range(2, r + 1):
            for m2 in range(2, r + 1):
                v = poisson_bracket(
                    pt,
                    BracketObservable(m1, pts[0]),
                    BracketObservable(m2, pts[1]),
                )
                assert v == 0


def test_bracket_antisymmetry_float(solved):
    pt = solved(3, 6)
    f = BracketObservable(2, 8)
    g = BracketObservable(3, 9)
    ab = poisson_bracket(pt, f, g)
    ba = poisson_bracket(pt, g, f)
    assert abs(ab + ba) < 1e-12 * max(1.0, abs(ab))


def test_commutation_report_exact(point24):
    rep = commutation_report(point24)
    assert rep.all_zero
    assert rep.max_abs == 0.0
    assert len(rep.pairs) == 3  # one observable, three eval points


def test_commutation_report_float(solved):
    pt = solved(3, 6)
    rep = commutation_report(pt)
    assert rep.max_rel < 1e-8


def test_delta_check_zero(point24):
    assert delta_check(point24, 5, 6) == 0
    assert delta_check(point24, Fraction(11, 2), Fraction(13, 2)) == 0
    with pytest.raises(ValueError):
        delta_check(point24, 5, 5)


# ---------------------------------------------------------------------------
# jacobian rank

def test_jacobian_rank_matches_dim(solved):
    rep = jacobian_rank(solved(2, 5))
    assert rep.dim_b == 2
    assert rep.rank == 2
    assert len(rep.singular_values) >= 2


def test_jacobian_rank_zero_section():
    # y = 0 kills every gradient: the map is critical on the zero section
    x = tuple(tuple(complex(v) for v in row) for row in X24)
    y = tuple((0j, 0j) for _ in range(4))
    pt = QuiverPoint(r=2, n=4, flavor="float", x=x, y=y)
    rep = jacobian_rank(pt)
    assert rep.rank == 0
