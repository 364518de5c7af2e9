"""Rational side: duals, integration, local index, ratio lemma, path sums."""

from fractions import Fraction

import pytest

from gkmcalc.errors import NotECanEdge, NotIndexIncreasing
from gkmcalc.cohomology import (
    abbv_index,
    abbv_localized_sum,
    check_gkm_h,
    class_equal_h,
    ecan_edges,
    euler_minus_h,
    gt_basis,
    gt_class,
    icanonical_basis_h,
    is_kirwan_class_h,
    local_index_h,
    one_class_h,
    poincare_dual_h,
    theta,
    zero_class_h,
)
from gkmcalc.symcore import PolyH

from conftest import rand_polyh, rng


def form(*w):
    return PolyH.linear_form(w)


def table_h(g, **values):
    c = zero_class_h(g)
    for vid, val in values.items():
        c[vid] = val
    return c


def rand_gkm_class_h(r, g, etas):
    c = zero_class_h(g)
    for p in g.vids():
        if r.random() < 0.5:
            f = rand_polyh(r, g.rank, max_terms=2, deg=1)
            c = {v: c[v] + f * etas[p][v] for v in c}
    return c


@pytest.fixture(scope="module")
def etas2h(cp2):
    return {p: poincare_dual_h(cp2, p) for p in cp2.vids()}


@pytest.fixture(scope="module")
def etashh(hirzebruch):
    return {p: poincare_dual_h(hirzebruch, p) for p in hirzebruch.vids()}


# ---------------------------------------------------------------------------
# Euler classes and duals

def test_euler_top_of_triangle(cp2):
    assert euler_minus_h(cp2, "p2") == form(0, 1) * form(-1, 1)


def test_euler_minimum(cp2):
    assert euler_minus_h(cp2, "p0") == PolyH.one(2)


def test_euler_middle(cp2):
    assert euler_minus_h(cp2, "p1") == form(1, 0)


def test_dual_middle_of_triangle(cp2, etas2h):
    assert class_equal_h(etas2h["p1"], table_h(cp2, p1=form(1, 0), p2=form(0, 1)))


def test_dual_of_minimum(cp2, cp3, hirzebruch):
    for g in (cp2, cp3, hirzebruch):
        assert class_equal_h(poincare_dual_h(g, g.vids()[0]), one_class_h(g))


def test_dual_base_value_and_degree(cp2, cp3, hirzebruch):
    for g in (cp2, cp3, hirzebruch):
        for p in g.vids():
            c = poincare_dual_h(g, p)
            assert c[p] == euler_minus_h(g, p)
            lam = g.point(p).lam
            for v in c.values():
                if not v.is_zero():
                    assert v.homogeneous_degree() == lam


def test_duals_pass_divisibility_and_kirwan(cp2, cp3, hirzebruch, square):
    for g in (cp2, cp3, hirzebruch, square):
        for p in g.vids():
            c = poincare_dual_h(g, p)
            assert check_gkm_h(g, c) == []
            assert is_kirwan_class_h(g, c, p)


# ---------------------------------------------------------------------------
# integration

def test_integral_of_one_vanishes(cp1, cp2, cp3, hirzebruch):
    for g in (cp1, cp2, cp3, hirzebruch):
        assert abbv_index(g, one_class_h(g)) == PolyH.zero(g.rank)


def test_integral_of_top_dual(cp2):
    assert abbv_index(cp2, poincare_dual_h(cp2, "p2")) == PolyH.one(2)


def test_integral_two_point_example(cp1):
    c = table_h(cp1, p1=form(1))
    assert abbv_index(cp1, c) == PolyH.one(1)


def test_integral_numeric_oracle(cp2, etas2h):
    r = rng(401)
    for _ in range(60):
        c = rand_gkm_class_h(r, cp2, etas2h)
        out = abbv_index(cp2, c)
        s = abbv_localized_sum(cp2, c)
        for point in [(Fraction(3, 7), Fraction(12, 5)),
                      (Fraction(-2, 3), Fraction(9, 4)),
                      (Fraction(5), Fraction(3))]:
            assert s.eval_h(point) == out.eval_at(point)


# ---------------------------------------------------------------------------
# local index

def test_local_index_degree_shortcut(cp2):
    c = one_class_h(cp2)
    for q in ("p1", "p2"):
        assert local_index_h(cp2, c, q) == PolyH.zero(2)
    assert local_index_h(cp2, c, "p0") == PolyH.one(2)


def test_dual_profile_triangle(cp2, etas2h):
    one = PolyH.one(2)
    zero = PolyH.zero(2)
    for p in cp2.vids():
        for q in cp2.vids():
            want = one if q == p else zero
            assert local_index_h(cp2, etas2h[p], q) == want


def test_dual_profile_trapezoid(hirzebruch, etashh):
    # holds although the orientation is not index increasing
    one = PolyH.one(2)
    zero = PolyH.zero(2)
    for p in hirzebruch.vids():
        for q in hirzebruch.vids():
            want = one if q == p else zero
            assert local_index_h(hirzebruch, etashh[p], q) == want


def test_local_index_additivity_h(cp2, hirzebruch, etas2h, etashh):
    r = rng(402)
    cases = [(cp2, etas2h), (hirzebruch, etashh)]
    for _ in range(200):
        g, etas = cases[r.randrange(2)]
        vids = g.vids()
        q = vids[r.randrange(len(vids))]
        p1 = vids[r.randrange(len(vids))]
        p2 = vids[r.randrange(len(vids))]
        a, b = etas[p1], etas[p2]
        if g.point(p1).lam != g.point(p2).lam:
            continue  # keep the sum homogeneous
        tot = {v: a[v] + b[v] for v in a}
        assert local_index_h(g, tot, q) == \
            local_index_h(g, a, q) + local_index_h(g, b, q)


def test_local_index_perturbation_h(cp2, hirzebruch, etas2h, etashh):
    from gkmcalc.gkm import flow_face
    r = rng(403)
    cases = [(cp2, etas2h), (hirzebruch, etashh)]
    for _ in range(200):
        g, etas = cases[r.randrange(2)]
        vids = g.vids()
        q = vids[r.randrange(len(vids))]
        base = vids[r.randrange(len(vids))]
        a = etas[base]
        lam = g.point(base).lam
        others = [p for p in vids
                  if q not in flow_face(g, p, "up") and g.point(p).lam == lam]
        if not others:
            continue
        p = others[r.randrange(len(others))]
        pert = etas[p]
        assert pert[q].is_zero()
        tot = {v: a[v] + pert[v] for v in a}
        assert local_index_h(g, tot, q) == local_index_h(g, a, q)


# ---------------------------------------------------------------------------
# canonical basis

TRIANGLE_BASIS_H = {
    "p0": {"p0": PolyH.one(2), "p1": PolyH.one(2), "p2": PolyH.one(2)},
    "p1": {"p1": form(1, 0), "p2": form(0, 1)},
    "p2": {"p2": form(0, 1) * form(-1, 1)},
}


def test_triangle_basis_h(cp2):
    basis = icanonical_basis_h(cp2)
    for p, want in TRIANGLE_BASIS_H.items():
        for vid in cp2.vids():
            assert basis[p][vid] == want.get(vid, PolyH.zero(2))


def test_trapezoid_basis_h_verifies(hirzebruch):
    basis = icanonical_basis_h(hirzebruch)
    for p in hirzebruch.vids():
        assert class_equal_h(basis[p], poincare_dual_h(hirzebruch, p))


def test_minimum_class_h_is_one(cp2, cp3, hirzebruch):
    for g in (cp2, cp3, hirzebruch):
        assert class_equal_h(icanonical_basis_h(g)[g.vids()[0]], one_class_h(g))


# ---------------------------------------------------------------------------
# jump-one ratio

def test_theta_is_one_everywhere(cp1, cp2, cp3, hirzebruch, square):
    for g in (cp1, cp2, cp3, hirzebruch, square):
        edges = ecan_edges(g)
        assert edges
        for e in edges:
            assert theta(g, e) == Fraction(1)


def test_theta_rejects_big_jump(cp2):
    jump2 = next(e for e in cp2.edges if (e.src, e.dst) == ("p0", "p2"))
    with pytest.raises(NotECanEdge):
        theta(cp2, jump2)


def test_theta_independent_of_direction_vector(cp2):
    for e in ecan_edges(cp2):
        assert theta(cp2, e, (1, 2)) == theta(cp2, e, (1, 3)) == Fraction(1)


# ---------------------------------------------------------------------------
# path sums

def test_gt_single_path_value(cp2):
    z = gt_class(cp2, "p1")
    assert z["p2"] == form(0, 1)
    assert z["p1"] == euler_minus_h(cp2, "p1")
    assert z["p0"].is_zero()


def test_gt_base_value_and_support(cp2, cp3):
    from gkmcalc.gkm import upward_closure
    for g in (cp2, cp3):
        for p in g.vids():
            z = gt_class(g, p)
            assert z[p] == euler_minus_h(g, p)
            nonzero = {q for q, v in z.items() if not v.is_zero()}
            assert nonzero == set(upward_closure(g, p))


def test_gt_matches_duals(cp2, cp3):
    for g in (cp2, cp3):
        zetas = gt_basis(g)
        for p in g.vids():
            assert class_equal_h(zetas[p], poincare_dual_h(g, p))


def test_gt_direction_independence(cp2):
    # two directions inducing the same orientation give identical classes
    a = gt_basis(cp2, (1, 2))
    b = gt_basis(cp2, (1, 3))
    for p in cp2.vids():
        assert class_equal_h(a[p], b[p])


def test_gt_requires_index_increasing(hirzebruch):
    with pytest.raises(NotIndexIncreasing):
        gt_class(hirzebruch, "p1")


def test_gt_classes_are_integral(cp3):
    for p in cp3.vids():
        z = gt_class(cp3, p)
        for v in z.values():
            assert v.is_integral()
