import json
from fractions import Fraction

import pytest

from limitmotive import exactla as la
from limitmotive.corpus import BUILTIN, builtin, ngon, random_curves
from limitmotive.curve import (
    Component, CurveFormatError, NodalCurve, Node, betti1, cycle_basis, dual_graph,
    parse_rational, validate,
)


def codes(report):
    return {d.code for d in report.diagnostics}


def test_triangle_valid_but_unstable():
    tri = builtin("triangle")
    assert validate(tri).valid
    report = validate(tri, require_stable=True)
    assert codes(report) == {"unstable"}
    assert len(report.diagnostics) == 3


def test_stable_genus_one_leaf():
    curve = builtin("tree12")
    assert validate(curve, require_stable=True).valid


def test_dangling_component():
    curve = NodalCurve(
        (Component("A", 0, {"x": Fraction(0)}),),
        (Node("p", ("A", "x"), ("Z", "y")),))
    assert "dangling-component" in codes(validate(curve))


def test_dangling_mark_and_reuse():
    curve = NodalCurve(
        (Component("A", 0, {"x": Fraction(0)}), Component("B", 0, {"x": Fraction(0)})),
        (Node("p", ("A", "x"), ("B", "x")), Node("q", ("A", "x"), ("B", "nope"))))
    assert {"dangling-mark", "mark-reused"} <= codes(validate(curve))


def test_orientation_convention_enforced():
    curve = NodalCurve(
        (Component("A", 0, {"x": Fraction(0)}), Component("B", 0, {"y": Fraction(0)})),
        (Node("p", ("B", "y"), ("A", "x")),))
    assert codes(validate(curve)) == {"orientation"}


def test_duplicate_mark_coordinates():
    curve = NodalCurve((Component("A", 0, {"x": Fraction(1), "y": Fraction(1)}),),
                       (Node("p", ("A", "x"), ("A", "y")),))
    assert "duplicate-mark-coordinate" in codes(validate(curve))


def test_disconnected_needs_override():
    curve = NodalCurve((Component("A", 1), Component("B", 2)), ())
    assert "disconnected" in codes(validate(curve))
    report = validate(curve, allow_disconnected=True)
    assert report.valid and report.connected_components == 2


def test_self_node_flagged():
    report = validate(builtin("nodal_cubic"))
    assert report.valid and report.self_nodes == ["p"]


def test_dual_graph_triangle():
    g = dual_graph(builtin("triangle"))
    assert (g.n, g.d) == (3, 3)
    assert la.rank(g.incidence) == 2
    # node p1: prime on A (head, +1), double prime on B (tail, -1)
    assert [g.incidence[i, 0] for i in range(3)] == [1, -1, 0]


def test_dual_graph_nodal_cubic():
    g = dual_graph(builtin("nodal_cubic"))
    assert (g.n, g.d) == (1, 1) and g.incidence.tolist() == [[0]]


def test_dual_graph_tree():
    g = dual_graph(builtin("tree12"))
    assert la.rank(g.incidence) == 1 and cycle_basis(g) == []


def test_cycle_basis_triangle():
    (v,) = cycle_basis(dual_graph(builtin("triangle")))
    assert all(abs(x) == 1 for x in v)
    # kernel of [[1,0,1],[-1,1,0],[0,-1,-1]] is spanned by (1, 1, -1)
    assert v in [(1, 1, -1), (-1, -1, 1)]


def test_cycle_basis_banana():
    assert cycle_basis(dual_graph(builtin("banana"))) in ([(1, -1)], [(-1, 1)])


def test_betti_numbers():
    assert betti1(dual_graph(builtin("triangle"))) == 1
    assert betti1(dual_graph(builtin("nodal_cubic"))) == 1
    assert betti1(dual_graph(builtin("tree12"))) == 0
    assert betti1(dual_graph(ngon(5))) == 1


def test_cycle_basis_random_multigraphs():
    for curve in random_curves(200, 200):
        g = dual_graph(curve)
        basis = cycle_basis(g)
        assert len(basis) == g.d - g.n + g.connected_components == betti1(g)
        for v in basis:
            assert set(v) <= {-1, 0, 1}
            assert all(sum(g.incidence[i, k] * v[k] for k in range(g.d)) == 0 for i in range(g.n))
        if basis:
            B = la.int_matrix([list(v) for v in basis]).T.copy()
            assert la.same_lattice(B, la.kernel_basis(g.incidence))
        else:
            assert la.kernel_basis(g.incidence).shape[1] == 0


def test_cycle_basis_deterministic():
    curve = random_curves(1, 1)[0]
    assert cycle_basis(dual_graph(curve)) == cycle_basis(dual_graph(curve))


@pytest.mark.parametrize("name", BUILTIN)
def test_serialization_round_trip(name):
    curve = builtin(name)
    again = NodalCurve.loads(curve.dumps())
    assert again == curve
    assert (dual_graph(again).incidence == dual_graph(curve).incidence).all()
    assert again.dumps() == curve.dumps()


def test_round_trip_random():
    for curve in random_curves(5, 30):
        again = NodalCurve.loads(curve.dumps())
        assert (dual_graph(again).incidence == dual_graph(curve).incidence).all()


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-2") == Fraction(-2)
    for bad in ("1/0", "1/-2", "x", "1.5", None):
        with pytest.raises(CurveFormatError):
            parse_rational(bad)


def test_loads_reports_position():
    with pytest.raises(CurveFormatError, match="line 2"):
        NodalCurve.loads('{"components": [],\n "nodes": [,]}')


def test_loads_reports_bad_rational_path():
    data = json.loads(builtin("banana").dumps())
    data["components"][1]["marks"]["e2"] = "1/0"
    with pytest.raises(CurveFormatError, match=r"components\[1\]\.marks\.e2"):
        NodalCurve.from_dict(data)


def test_serialized_rationals_reduced():
    curve = NodalCurve((Component("A", 0, {"x": Fraction(2, 4), "y": Fraction(-3)}),),
                       (Node("p", ("A", "x"), ("A", "y")),))
    marks = json.loads(curve.dumps())["components"][0]["marks"]
    assert marks == {"x": "1/2", "y": "-3/1"}
