"""Graph construction, orientation and combinatorial derived data."""

from fractions import Fraction

import pytest

from gkmcalc.errors import (
    NotAPolytopeSkeleton,
    NotDelzant,
    SuppliedXiNotGeneric,
    ValidationError,
)
from gkmcalc.fixtures import cp_input, hirzebruch_input
from gkmcalc.gkm import (
    ToricInput,
    build_graph,
    flow_face,
    index_violations,
    is_index_increasing,
    upward_closure,
)

from conftest import rng


def F(seq):
    return tuple(Fraction(x) for x in seq)


# ---------------------------------------------------------------------------
# construction

def test_plane_triangle(cp2):
    assert len(cp2.points) == 3
    assert len(cp2.edges) == 3
    labels = {e.weight for e in cp2.edges}
    assert labels == {(1, 0), (0, 1), (-1, 1)}


def test_segment(cp1):
    assert len(cp1.points) == 2
    assert len(cp1.edges) == 1
    assert cp1.edges[0].weight == (1,)


def test_trapezoid(hirzebruch):
    assert len(hirzebruch.edges) == 4
    labels = sorted(e.weight for e in hirzebruch.edges)
    assert labels == [(-1, 1), (0, 1), (0, 1), (1, 1)]
    mults = sorted(e.mult for e in hirzebruch.edges)
    assert mults == [1, 1, 1, 3]


def test_explicit_edges_match_detection(cp2):
    inp = cp_input(2)
    inp.edges = [("p0", "p1"), ("p0", "p2"), ("p1", "p2")]
    g = build_graph(inp)
    assert {(e.src, e.dst, e.weight) for e in g.edges} == \
        {(e.src, e.dst, e.weight) for e in cp2.edges}


def test_wrong_explicit_edges_rejected():
    inp = cp_input(2)
    inp.edges = [("p0", "p1"), ("p0", "p2")]
    with pytest.raises(NotAPolytopeSkeleton):
        build_graph(inp)


def test_simplex_is_complete_graph(cp3):
    assert len(cp3.edges) == 6
    for p in cp3.points:
        assert len(p.wplus) + len(p.wminus) == 3


def test_interior_point_rejected():
    inp = ToricInput(rank=2, vertices=[
        ("a", F([0, 0])), ("b", F([1, 0])), ("c", F([0, 1])),
        ("m", F(["1/4", "1/4"])),
    ])
    with pytest.raises(NotAPolytopeSkeleton):
        build_graph(inp)


def test_non_lattice_basis_rejected():
    inp = ToricInput(rank=2, vertices=[
        ("a", F([0, 0])), ("b", F([1, 0])), ("c", F([0, 2])),
    ])
    with pytest.raises(NotDelzant):
        build_graph(inp)


def test_pyramid_apex_degree_rejected():
    inp = ToricInput(rank=3, vertices=[
        ("a", F([0, 0, 0])), ("b", F([1, 0, 0])),
        ("c", F([0, 1, 0])), ("d", F([1, 1, 0])),
        ("apex", F([0, 0, 1])),
    ])
    with pytest.raises(NotAPolytopeSkeleton):
        build_graph(inp)


def test_duplicate_psi_rejected():
    inp = ToricInput(rank=1, vertices=[("a", F([0])), ("b", F([0]))])
    with pytest.raises(ValidationError):
        build_graph(inp)


# ---------------------------------------------------------------------------
# genericity and orientation

def test_default_direction_on_triangle(cp2):
    assert cp2.xi == (1, 2)
    assert [p.mu for p in cp2.points] == [0, 1, 2]


def test_non_generic_direction_rejected():
    inp = cp_input(2)
    inp.xi = (1, 1)  # pairs to zero with the antidiagonal edge
    with pytest.raises(SuppliedXiNotGeneric):
        build_graph(inp)


def test_segment_direction(cp1):
    assert cp1.xi == (1,)


def test_indices_on_triangle(cp2):
    assert [p.lam for p in cp2.points] == [0, 1, 2]
    assert cp2.points[0].wplus == ()


def test_minimum_has_only_negative_weights(cp2, cp3, hirzebruch):
    for g in (cp2, cp3, hirzebruch):
        bottom = g.points[0]
        assert bottom.lam == 0
        assert len(bottom.wminus) == g.rank


def test_reversed_direction_flips_indices():
    fwd = build_graph(cp_input(2))
    inp = cp_input(2)
    inp.xi = (-1, -2)
    rev = build_graph(inp)
    for p in fwd.points:
        assert rev.point(p.id).lam == fwd.rank - p.lam


def test_unique_extrema(cp1, cp2, cp3, hirzebruch, square):
    for g in (cp1, cp2, cp3, hirzebruch, square):
        lams = [p.lam for p in g.points]
        assert lams.count(0) == 1
        assert lams.count(g.rank) == 1


# ---------------------------------------------------------------------------
# flow faces and closures

def test_flow_face_up_triangle(cp2):
    assert flow_face(cp2, "p1", "up") == {"p1", "p2"}


def test_flow_face_up_from_minimum(cp2, cp3, hirzebruch):
    for g in (cp2, cp3, hirzebruch):
        bottom = g.vids()[0]
        assert flow_face(g, bottom, "up") == set(g.vids())


def test_flow_face_down_at_minimum(cp2):
    assert flow_face(cp2, "p0", "down") == {"p0"}


def test_trapezoid_faces(hirzebruch):
    assert flow_face(hirzebruch, "p1", "up") == {"p1", "p2"}
    assert flow_face(hirzebruch, "p2", "up") == {"p2", "p3"}
    assert flow_face(hirzebruch, "p3", "up") == {"p3"}
    assert flow_face(hirzebruch, "p2", "down") == {"p1", "p2"}


def test_upward_closure(cp2, cp3, hirzebruch):
    assert upward_closure(cp2, "p2") == ["p2"]
    assert upward_closure(cp2, "p0") == ["p0", "p1", "p2"]
    assert upward_closure(cp2, "p1") == ["p1", "p2"]
    assert upward_closure(hirzebruch, "p1") == ["p1", "p2", "p3"]
    assert upward_closure(cp3, "p0") == cp3.vids()


def test_index_increasing(cp1, cp2, cp3, hirzebruch):
    assert is_index_increasing(cp1)
    assert is_index_increasing(cp2)
    assert is_index_increasing(cp3)
    assert not is_index_increasing(hirzebruch)
    bad = index_violations(hirzebruch)
    assert [(e.src, e.dst) for e in bad] == [("p1", "p2")]


def test_flow_face_inside_upward_closure(cp1, cp2, cp3, hirzebruch, square):
    for g in (cp1, cp2, cp3, hirzebruch, square):
        for p in g.vids():
            face = flow_face(g, p, "up")
            closure = set(upward_closure(g, p))
            assert face <= closure
            if is_index_increasing(g):
                assert face == closure


def test_face_indices_strictly_larger_when_increasing(cp2, cp3):
    for g in (cp2, cp3):
        for p in g.vids():
            lam = g.point(p).lam
            for q in flow_face(g, p, "up"):
                if q != p:
                    assert g.point(q).lam > lam


def test_weight_toward_is_antisymmetric(cp2):
    w = cp2.weight_toward("p0", "p1")
    assert cp2.weight_toward("p1", "p0") == tuple(-x for x in w)


def test_edge_labels_primitive_with_positive_multiplicity(cp2, cp3, hirzebruch, square):
    from gkmcalc.symcore import is_primitive, wt_dot, wt_scale, wt_sub

    for g in (cp2, cp3, hirzebruch, square):
        for e in g.edges:
            assert is_primitive(e.weight)
            assert e.mult > 0
            assert wt_dot(e.weight, g.xi) > 0
            diff = wt_sub(g.psi(e.dst), g.psi(e.src))
            assert tuple(diff) == wt_scale(e.weight, e.mult)


def test_random_vertex_permutations_build_same_graph():
    r = rng(201)
    base = build_graph(hirzebruch_input())
    for _ in range(25):
        inp = hirzebruch_input()
        r.shuffle(inp.vertices)
        g = build_graph(inp)
        assert g.vids() == base.vids()
        assert {(e.src, e.dst, e.weight) for e in g.edges} == \
            {(e.src, e.dst, e.weight) for e in base.edges}
