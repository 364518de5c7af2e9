"""Command line front end.

Exit codes: 0 ok, 2 validation error, 3 arithmetic contract violation,
4 i/o error.  Output is deterministic: vertices in increasing moment order,
monomials in lexicographic exponent order.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohomology as ch
from . import ktheory as kt
from .errors import ContractError, ValidationError
from .fixtures import (
    fixture_input,
    fixture_names,
    hirzebruch_sample_class,
    square_reference_class,
)
from .gkm import build_graph, flow_face, index_violations, is_index_increasing, upward_closure
from .kirwan import kirwan_restrict_all, reduced_fixed_data
from .serialize import (
    basis_to_dict,
    class_to_dict,
    dumps,
    load_class_file,
    load_toric_input,
    poly_to_terms,
)
from .symcore import LaurentPoly, PolyH


# ---------------------------------------------------------------------------
# formatting

def fmt_laurent(p):
    if p.is_zero():
        return "0"
    bits = []
    for e, c in p.sorted_terms():
        mono = "1" if all(x == 0 for x in e) else "e[" + ",".join(map(str, e)) + "]"
        if mono == "1":
            piece = str(abs(c))
        elif abs(c) == 1:
            piece = mono
        else:
            piece = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        bits.append((sign, piece))
    first_sign, first_piece = bits[0]
    out = ("-" if first_sign == "-" else "") + first_piece
    for sign, piece in bits[1:]:
        out += f" {sign} {piece}"
    return out


def fmt_polyh(p):
    if p.is_zero():
        return "0"
    bits = []
    for e, c in p.sorted_terms():
        vars_ = [f"x{i + 1}" + (f"^{d}" if d > 1 else "")
                 for i, d in enumerate(e) if d]
        mono = "*".join(vars_) if vars_ else "1"
        coeff = abs(c)
        if mono == "1":
            piece = str(coeff)
        elif coeff == 1:
            piece = mono
        else:
            piece = f"{coeff}*{mono}"
        sign = "-" if c < 0 else "+"
        bits.append((sign, piece))
    first_sign, first_piece = bits[0]
    out = ("-" if first_sign == "-" else "") + first_piece
    for sign, piece in bits[1:]:
        out += f" {sign} {piece}"
    return out


def fmt_value(v):
    return fmt_laurent(v) if isinstance(v, LaurentPoly) else fmt_polyh(v)


def emit_class(g, name, c, lines):
    lines.append(f"class {name}")
    for vid in g.vids():
        lines.append(f"  {vid}: {fmt_value(c[vid])}")


# ---------------------------------------------------------------------------
# shared option handling

def load_graph(args):
    if args.fixture:
        inp = fixture_input(args.fixture)
    elif args.input:
        inp = load_toric_input(args.input)
    else:
        raise ValidationError("need --fixture or --input")
    if args.xi:
        inp.xi = tuple(int(x) for x in args.xi.split(","))
    return build_graph(inp)


def resolve_class(g, spec, mode):
    """Named classes: one, tau:<v>, pd:<v>, point:<v>, gt:<v>, sample;
    anything ending in .json is read as a class file."""
    if spec is None:
        raise ValidationError("need --class")
    if spec.endswith(".json"):
        c, file_mode = load_class_file(spec, g.rank)
        if file_mode != mode:
            raise ValidationError(f"class file is {file_mode}, requested {mode}")
        return c
    name = spec.strip()
    if name == "one":
        return kt.one_class(g) if mode == "ktheory" else ch.one_class_h(g)
    if name == "sample":
        if mode != "ktheory":
            raise ValidationError("the sample trapezoid class is a K class")
        return hirzebruch_sample_class(g)
    if ":" in name:
        kind, vid = name.split(":", 1)
        vid = _resolve_vid(g, vid)
        if kind == "tau":
            basis = kt.icanonical_basis_k(g) if mode == "ktheory" else ch.icanonical_basis_h(g)
            return basis[vid]
        if kind == "pd":
            return kt.poincare_dual_k(g, vid) if mode == "ktheory" \
                else ch.poincare_dual_h(g, vid)
        if kind == "point":
            if mode != "ktheory":
                raise ValidationError("point normalization is a K-side construction")
            return kt.point_normalized_basis_k(g)[vid]
        if kind == "gt":
            if mode != "cohomology":
                raise ValidationError("path-sum classes live in cohomology")
            return ch.gt_class(g, vid)
    raise ValidationError(f"unknown class {spec!r}")


def _resolve_vid(g, vid):
    if vid in g.vids():
        return vid
    try:
        return g.vids()[int(vid)]
    except (ValueError, IndexError):
        raise ValidationError(f"unknown vertex {vid!r}") from None


# ---------------------------------------------------------------------------
# commands

def cmd_graph(args, out):
    g = load_graph(args)
    if args.format == "json":
        data = {
            "rank": g.rank,
            "xi": list(g.xi),
            "vertices": [
                {
                    "id": p.id,
                    "psi": [str(x) for x in p.psi],
                    "mu": str(p.mu),
                    "lambda": p.lam,
                    "wplus": [list(w) for w in p.wplus],
                }
                for p in g.points
            ],
            "edges": [
                {"src": e.src, "dst": e.dst, "weight": list(e.weight), "mult": str(e.mult)}
                for e in g.edges
            ],
            "index_increasing": is_index_increasing(g),
        }
        out.write(dumps(data))
        return 0
    out.write(f"rank {g.rank}, xi = ({','.join(map(str, g.xi))})\n")
    for p in g.points:
        psi = ",".join(str(x) for x in p.psi)
        out.write(f"vertex {p.id}: psi=({psi}) mu={p.mu} lambda={p.lam}\n")
    for e in g.edges:
        out.write(f"edge {e.src} -> {e.dst}: weight=({','.join(map(str, e.weight))})"
                  f" mult={e.mult}\n")
    ii = is_index_increasing(g)
    out.write(f"index increasing: {'yes' if ii else 'no'}\n")
    for e in index_violations(g):
        out.write(f"  violated on {e.src} -> {e.dst}\n")
    return 0


def cmd_check(args, out):
    g = load_graph(args)
    if args.klass:
        c = resolve_class(g, args.klass, args.mode)
        bad = kt.check_gkm_k(g, c) if args.mode == "ktheory" else ch.check_gkm_h(g, c)
        if bad:
            edge = bad[0][0]
            raise ValidationError(f"divisibility fails on {edge.src}->{edge.dst}")
    out.write("ok\n")
    return 0


def cmd_basis(args, out):
    g = load_graph(args)
    if args.mode == "ktheory":
        if args.normalization == "point":
            basis = kt.point_normalized_basis_k(g)
        else:
            basis = kt.icanonical_basis_k(g)
    else:
        basis = ch.icanonical_basis_h(g)
    return _emit_basis(args, out, g, basis, "tau")


def cmd_pd(args, out):
    g = load_graph(args)
    if args.mode == "ktheory":
        basis = {p: kt.poincare_dual_k(g, p) for p in g.vids()}
    else:
        basis = {p: ch.poincare_dual_h(g, p) for p in g.vids()}
    return _emit_basis(args, out, g, basis, "pd")


def cmd_gt(args, out):
    g = load_graph(args)
    basis = ch.gt_basis(g)
    return _emit_basis(args, out, g, basis, "gt")


def _emit_basis(args, out, g, basis, label):
    mode = getattr(args, "mode", "cohomology")
    if args.format == "json":
        out.write(dumps(basis_to_dict(basis, mode)))
        return 0
    lines = []
    for vid in g.vids():
        emit_class(g, f"{label}:{vid}", basis[vid], lines)
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_local_index(args, out):
    g = load_graph(args)
    c = resolve_class(g, args.klass, args.mode)
    vid = _resolve_vid(g, args.vertex)
    if args.mode == "ktheory":
        val = kt.local_index_k(g, c, vid)
    else:
        val = ch.local_index_h(g, c, vid)
    if args.format == "json":
        out.write(dumps({"vertex": vid, "value": poly_to_terms(val)}))
    else:
        out.write(fmt_value(val) + "\n")
    return 0


def cmd_index(args, out):
    g = load_graph(args)
    c = resolve_class(g, args.klass, args.mode)
    if args.mode == "ktheory":
        val = kt.atiyah_segal_index(g, c)
    else:
        val = ch.abbv_index(g, c)
    if args.format == "json":
        out.write(dumps({"value": poly_to_terms(val)}))
    else:
        out.write(fmt_value(val) + "\n")
    return 0


def cmd_structure(args, out):
    g = load_graph(args)
    if args.mode == "ktheory":
        basis = kt.icanonical_basis_k(g)
        table = kt.structure_constants(g, basis)
    else:
        raise ValidationError("structure constants are emitted for the K basis")
    if args.format == "json":
        data = {f"{p}*{q}->{r}": poly_to_terms(f) for (p, q, r), f in sorted(table.items())}
        out.write(dumps(data))
        return 0
    for (p, q, r), f in sorted(table.items()):
        out.write(f"{p} * {q} -> {r}: {fmt_value(f)}\n")
    return 0


def cmd_kirwan(args, out):
    g = load_graph(args)
    if not args.pi:
        raise ValidationError("need --pi")
    pi = tuple(int(x) for x in args.pi.split(","))
    setup = reduced_fixed_data(g, pi)
    if args.klass:
        c = resolve_class(g, args.klass, "cohomology")
    elif args.fixture == "square":
        c = square_reference_class(g)
    else:
        c = ch.one_class_h(g)
    vals = kirwan_restrict_all(setup, c)
    if args.format == "json":
        data = {
            "top": setup.top,
            "points": [
                {
                    "id": p.id,
                    "source": p.source,
                    "edge_weight": list(p.edge_weight),
                    "residual": [list(w) for w in p.residual],
                    "value": poly_to_terms(vals[p.id]),
                }
                for p in setup.points
            ],
        }
        out.write(dumps(data))
        return 0
    out.write(f"top vertex: {setup.top}\n")
    for p in setup.points:
        out.write(f"{p.id} (edge {p.source} -> {setup.top}): {fmt_value(vals[p.id])}\n")
    return 0


# ---------------------------------------------------------------------------
# verification matrix

def _verify_checks(g, full):
    from fractions import Fraction

    checks = []

    def add(name, fn):
        try:
            ok = bool(fn())
        except Exception:
            ok = False
        checks.append((name, ok))

    vids = g.vids()
    add("unique minimum", lambda: [g.point(v).lam for v in vids].count(0) == 1)
    add("unique maximum", lambda: [g.point(v).lam for v in vids].count(g.rank) == 1)
    add("flow-up inside upward closure",
        lambda: all(flow_face(g, p, "up") <= set(upward_closure(g, p)) for p in vids))
    if is_index_increasing(g):
        add("flow-up equals upward closure",
            lambda: all(flow_face(g, p, "up") == set(upward_closure(g, p)) for p in vids))

    etas = {p: kt.poincare_dual_k(g, p) for p in vids}
    add("duals satisfy divisibility",
        lambda: all(not kt.check_gkm_k(g, etas[p]) for p in vids))
    add("duals are Kirwan classes",
        lambda: all(kt.is_kirwan_class(g, etas[p], p) for p in vids))

    taus = kt.icanonical_basis_k(g)
    add("canonical classes satisfy divisibility",
        lambda: all(not kt.check_gkm_k(g, taus[p]) for p in vids))
    add("canonical class at the minimum is 1",
        lambda: kt.class_equal(taus[vids[0]], kt.one_class(g)))

    def profiles_ok():
        one = LaurentPoly.one(g.rank)
        zero = LaurentPoly.zero(g.rank)
        for p in vids:
            face = flow_face(g, p, "up")
            for q in vids:
                want = one if q in face else zero
                if kt.local_index_k(g, taus[p], q) != want:
                    return False
        return True
    add("canonical index profile", profiles_ok)

    add("push-forward of 1 equals 1",
        lambda: kt.atiyah_segal_index(g, kt.one_class(g)) == LaurentPoly.one(g.rank))
    add("integral of 1 vanishes",
        lambda: ch.abbv_index(g, ch.one_class_h(g)) == PolyH.zero(g.rank))

    add("jump-one ratios are 1",
        lambda: all(ch.theta(g, e) == Fraction(1) for e in ch.ecan_edges(g)))

    hbasis = {p: ch.poincare_dual_h(g, p) for p in vids}
    add("cohomology duals satisfy divisibility",
        lambda: all(not ch.check_gkm_h(g, hbasis[p]) for p in vids))

    if full:
        def triangular():
            for p in vids:
                coeffs = kt.expand_in_basis(g, etas, taus[p])
                if coeffs.get(p) != LaurentPoly.one(g.rank):
                    return False
                for r, f in coeffs.items():
                    if g.order_index(r) < g.order_index(p) and not f.is_zero():
                        return False
            return True
        add("triangular change of basis", triangular)

        def canonical_h():
            try:
                ch.icanonical_basis_h(g)
                return True
            except Exception:
                return False
        add("cohomology duals pass index conditions", canonical_h)

        if is_index_increasing(g):
            def gt_match():
                zetas = ch.gt_basis(g)
                return all(ch.class_equal_h(zetas[p], hbasis[p]) for p in vids)
            add("path-sum classes equal duals", gt_match)

        def structure_ok():
            table = kt.structure_constants(g, taus)
            for i, p in enumerate(vids):
                for q in vids[i:]:
                    prod = kt.class_mul(taus[p], taus[q])
                    acc = kt.zero_class(g)
                    for r in vids:
                        f = table.get((p, q, r))
                        if f is not None:
                            acc = kt.class_add(acc, kt.class_scale(taus[r], f))
                    if not kt.class_equal(acc, prod):
                        return False
            return True
        add("structure constants recombine", structure_ok)

    return checks


def cmd_verify(args, out):
    g = load_graph(args)
    checks = _verify_checks(g, full=(args.level == "full"))
    width = max(len(n) for n, _ in checks)
    ok_all = True
    for name, ok in checks:
        out.write(f"{name.ljust(width)}  {'PASS' if ok else 'FAIL'}\n")
        ok_all = ok_all and ok
    if not ok_all:
        raise ValidationError("verification failed")
    return 0


# ---------------------------------------------------------------------------
# parser

def make_parser():
    parser = argparse.ArgumentParser(
        prog="gkmcalc",
        description="Canonical bases for equivariant K-theory and cohomology "
                    "of toric manifolds from moment polytope data.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode=True):
        p.add_argument("--fixture", help="one of: " + ", ".join(fixture_names()))
        p.add_argument("--input", help="graph JSON file")
        p.add_argument("--xi", help="comma separated direction vector")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to a file")
        if mode:
            p.add_argument("--mode", choices=("ktheory", "cohomology"),
                           default="ktheory")

    p = sub.add_parser("graph", help="build, orient and report the moment graph")
    common(p, mode=False)
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("check", help="validate input and optionally a class")
    common(p)
    p.add_argument("--class", dest="klass")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("basis", help="canonical basis in the chosen mode")
    common(p)
    p.add_argument("--normalization", choices=("canonical", "point"),
                   default="canonical")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("pd", help="duals of the flow-up faces")
    common(p)
    p.set_defaults(fn=cmd_pd)

    p = sub.add_parser("gt", help="path-sum basis (cohomology, index increasing)")
    common(p, mode=False)
    p.set_defaults(fn=cmd_gt)

    p = sub.add_parser("local-index", help="local index of a class at a vertex")
    common(p)
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--vertex", required=True)
    p.set_defaults(fn=cmd_local_index)

    p = sub.add_parser("index", help="global push-forward / integral")
    common(p)
    p.add_argument("--class", dest="klass", required=True)
    p.set_defaults(fn=cmd_index)

    p = sub.add_parser("structure", help="structure constants of the K basis")
    common(p)
    p.set_defaults(fn=cmd_structure)

    p = sub.add_parser("kirwan", help="reduced restrictions near the top vertex")
    common(p, mode=False)
    p.add_argument("--pi", required=True, help="comma separated covector")
    p.add_argument("--class", dest="klass")
    p.set_defaults(fn=cmd_kirwan)

    p = sub.add_parser("verify", help="run the invariant matrix on a fixture")
    common(p, mode=False)
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.out:
            with open(args.out, "w") as fh:
                return args.fn(args, fh)
        return args.fn(args, sys.stdout)
    except ValidationError as exc:
        print(json.dumps({"error": "validation", "message": str(exc)}),
              file=sys.stderr)
        return 2
    except ContractError as exc:
        print(json.dumps({"error": "contract", "message": str(exc)}),
              file=sys.stderr)
        return 3
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
