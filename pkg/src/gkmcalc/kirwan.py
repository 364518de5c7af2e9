"""Circle reductions at a level just below the top vertex.

Given an integer covector cutting out a circle inside the torus, the reduced
space near the maximum of the corresponding moment component has one fixed
point per edge into that maximum.  Restricting a class to a reduced point is
a change of lattice basis followed by killing the edge weight; the module
implements that substitution in both coefficient modes and computes the
residual weight data, rejecting non-free actions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonUniqueMaximum, NotFreeAction, ValidationError
from .symcore import (
    LaurentPoly,
    PolyH,
    mat_det,
    mat_from_cols,
    substitute_linear,
    substitute_linear_h,
    wt_dot,
    wt_scale,
    wt_sub,
)


@dataclass(frozen=True)
class ReducedPoint:
    id: str
    source: str        # lower endpoint of the cut edge
    edge_weight: tuple  # directed into the top vertex
    residual: tuple    # weights of the quotient action, inside the covector's kernel


@dataclass
class ReductionSetup:
    graph: object
    pi: tuple
    top: str
    points: list


def reduced_fixed_data(g, pi):
    """Locate the unique top vertex of <psi, pi>, then build one reduced
    point per incident edge.  The residual weights at the point on the edge
    with weight v_i are u_t = v_t - (c_t / c_i) v_i over the other weights
    v_t at the top, with c = <v, pi>; fractional u_t means the circle does
    not act freely there."""
    pi = tuple(int(x) for x in pi)
    if len(pi) != g.rank:
        raise ValidationError("covector rank mismatch")
    phis = [(wt_dot(p.psi, pi), p.id) for p in g.points]
    best = max(v for v, _ in phis)
    tops = [vid for v, vid in phis if v == best]
    if len(tops) != 1:
        raise NonUniqueMaximum(f"top value attained at {sorted(tops)}")
    top = tops[0]

    incident = []
    for other, _e in g.incident(top):
        incident.append((g.order_index(other), other, g.weight_toward(other, top)))
    incident.sort()
    weights = [w for _, _, w in incident]
    pairings = [wt_dot(w, pi) for w in weights]
    if any(c == 0 for c in pairings):
        raise NonUniqueMaximum("an edge at the top is level for the covector")

    points = []
    for i, (_, source, v_i) in enumerate(incident):
        c_i = pairings[i]
        residual = []
        for t, v_t in enumerate(weights):
            if t == i:
                continue
            ratio = Fraction(pairings[t], c_i)
            if ratio.denominator != 1:
                raise NotFreeAction(
                    f"weight at the reduced point on {source}->{top} is fractional")
            residual.append(wt_sub(v_t, wt_scale(v_i, int(ratio))))
        det = mat_det(mat_from_cols(residual + [v_i])) if residual else \
            mat_det(mat_from_cols([v_i]))
        if abs(det) != 1:
            raise NotFreeAction("reduced weights fail the lattice basis test")
        points.append(ReducedPoint(
            id=f"r{i + 1}", source=source, edge_weight=v_i,
            residual=tuple(residual)))
    return ReductionSetup(graph=g, pi=pi, top=top, points=points)


def _restrict(setup, value, point):
    basis = list(point.residual) + [point.edge_weight]
    images = [w for w in point.residual] + [(0,) * setup.graph.rank]
    if isinstance(value, PolyH):
        return substitute_linear_h(value, basis, images)
    if isinstance(value, LaurentPoly):
        return substitute_linear(value, basis, images)
    raise TypeError("class values must be PolyH or LaurentPoly")


def kirwan_restrict(setup, c, point_id, source="top"):
    """Value of the reduced class at a reduced point.

    ``source`` picks which end of the cut edge supplies the restriction; the
    two agree for any class satisfying the edge divisibility condition.
    """
    point = next(p for p in setup.points if p.id == point_id)
    vid = setup.top if source == "top" else point.source
    return _restrict(setup, c[vid], point)


def kirwan_restrict_all(setup, c, source="top"):
    return {p.id: kirwan_restrict(setup, c, p.id, source) for p in setup.points}
