import random
from fractions import Fraction

import pytest
import sympy

from limitmotive import exactla as la
from limitmotive.corpus import builtin, ngon, random_curves
from limitmotive.curve import Component, NodalCurve, cycle_basis, dual_graph
from limitmotive.motive import (
    ComponentDivisor, FactoredRational, NotInLatticeError, NotPrincipalError, TorusScalar,
    cech_representative, divisor_of, gluing_descriptors, nu_t, pairing_matrix,
    torus_product, trivializing_function,
)

z = sympy.Symbol("z")


def sympy_leading(f, a, order):
    """Leading Laurent coefficient of ``f`` at ``a``, via symbolic cancellation."""
    g = sympy.cancel(f / (z - a) ** order)
    return Fraction(str(sympy.nsimplify(g.subs(z, a))))


def as_sympy(f):
    out = sympy.Rational(f.constant.numerator, f.constant.denominator)
    for q, m in f.factors:
        out *= (z - sympy.Rational(q.numerator, q.denominator)) ** m
    return out


def generator(curve):
    return cycle_basis(dual_graph(curve))[0]


def test_torus_scalar_group():
    a, b = TorusScalar(Fraction(2), 3), TorusScalar(Fraction(-1, 3), -1)
    assert a * b == TorusScalar(Fraction(-2, 3), 2)
    assert (a / a) == TorusScalar()
    assert a ** -2 == TorusScalar(Fraction(1, 4), -6)
    assert a.to_dict() == {"coeff": "2/1", "texp": 3}
    with pytest.raises(ValueError):
        TorusScalar(0, 1)


def test_trivializing_examples():
    comp = Component("A", 0, {"a": Fraction(0), "b": Fraction(1), "c": Fraction(2)})
    f = trivializing_function(comp, ComponentDivisor("A", (("a", Fraction(0), 1), ("b", Fraction(1), -1))))
    assert sympy.simplify(as_sympy(f) - z / (z - 1)) == 0
    assert str(f) == "z/(z - 1)"
    f = trivializing_function(comp, ComponentDivisor("A", ()))
    assert f(Fraction(7)) == 1 and str(f) == "1"
    f = trivializing_function(comp, ComponentDivisor(
        "A", (("a", Fraction(0), 2), ("b", Fraction(1), -1), ("c", Fraction(2), -1))))
    assert sympy.simplify(as_sympy(f) - z**2 / ((z - 1) * (z - 2))) == 0
    assert f(10**9) == Fraction(10**18, (10**9 - 1) * (10**9 - 2))


def test_trivializing_errors():
    with pytest.raises(NotPrincipalError, match="positive genus"):
        trivializing_function(Component("E", 1, {"a": Fraction(0)}), ComponentDivisor("E", ()))
    comp = Component("A", 0, {"a": Fraction(0)})
    with pytest.raises(NotPrincipalError, match="not a mark"):
        trivializing_function(comp, ComponentDivisor("A", (("a", Fraction(0), 1), ("zz", Fraction(5), -1))))


def test_expansion_matches_sympy():
    rng = random.Random(1)
    for _ in range(40):
        pts = rng.sample(range(-6, 7), 4)
        mults = [rng.randint(-2, 2) for _ in pts]
        f = FactoredRational(tuple(zip(pts, mults)), Fraction(rng.randint(1, 5), rng.randint(1, 5)))
        for q, m in zip(pts, mults):
            order, lead = f.expansion_at(q)
            assert order == m
            assert lead == sympy_leading(as_sympy(f), q, m)


def test_divisor_triangle():
    tri = builtin("triangle")
    D = (1, 1, -1)
    divs = {d.component: d for d in divisor_of(tri, D)}
    # node p1 = A.p1' / B.p1'', p2 = B.p2' / C.p2'', p3 = A.p3' / C.p3''
    assert [(k, m) for k, _, m in divs["A"].points] == [("p1", 1), ("p3", -1)]
    assert [(k, m) for k, _, m in divs["B"].points] == [("p1", -1), ("p2", 1)]
    assert [(k, m) for k, _, m in divs["C"].points] == [("p2", -1), ("p3", 1)]
    assert all(d.degree == 0 for d in divs.values())


def test_divisor_zero_and_banana():
    assert all(d.points == () for d in divisor_of(builtin("triangle"), (0, 0, 0)))
    divs = {d.component: d for d in divisor_of(builtin("banana"), (1, -1))}
    assert [(k, m) for k, _, m in divs["A"].points] == [("e1", 1), ("e2", -1)]
    assert [(k, m) for k, _, m in divs["B"].points] == [("e1", -1), ("e2", 1)]


def test_divisor_rejects_non_lattice():
    with pytest.raises(NotInLatticeError) as err:
        divisor_of(builtin("triangle"), (1, 0, 0))
    assert err.value.boundary == (1, -1, 0)


def test_gluing_descriptors():
    tri = builtin("triangle")
    D = generator(tri)
    assert [abs(g.exponent) for g in gluing_descriptors(tri, D)] == [1, 1, 1]
    assert [g.exponent for g in gluing_descriptors(tri, (0, 0, 0))] == [0, 0, 0]
    doubled = tuple(2 * x for x in D)
    assert [g.exponent for g in gluing_descriptors(tri, doubled)] == \
           [2 * g.exponent for g in gluing_descriptors(tri, D)]


def test_cech_zero():
    cocycle = cech_representative(builtin("triangle"), (0, 0, 0))
    assert all(n == 0 for *_, n in cocycle.overlaps)
    assert all(v == 1 for _, v in cocycle.node_part)


def test_cech_nodal_cubic():
    cocycle = cech_representative(builtin("nodal_cubic"), (1,))
    assert cocycle.charts == ("node:p", "component:X")
    assert cocycle.overlaps == (
        ("node:p", "component:X", "p'", "u_p", 1),
        ("node:p", "component:X", "p''", "1/v_p", 1),
    )


def test_cech_triangle():
    cocycle = cech_representative(builtin("triangle"), (1, 1, -1))
    node_charts = [c for c in cocycle.charts if c.startswith("node:")]
    assert len(node_charts) == 3
    assert [n for *_, n in cocycle.overlaps] == [1, 1, 1, 1, -1, -1]
    ratio = cocycle.to_dict()["overlaps"][0]["ratio"]
    assert ratio == "(u_p1)^1/(1)^1"


def test_nu_t_zero_is_identity():
    for name in ("triangle", "banana", "nodal_cubic"):
        curve = builtin(name)
        image = nu_t(curve, (0,) * len(curve.nodes))
        assert image.torus_coordinates == [TorusScalar()] * len(image.cycles)


def triangle_hand_oracle():
    """Gluing scalars for D = (1, 1, -1) on the shipped triangle, by hand.

    f_A = z/(z-1), f_B = (z-2)/z, f_C = (z-3)/z.
    p1: lambda' = 1/(0-1) = -1, lambda'' = (0-2) = -2      -> 2 t
    p2: lambda' = 1/2,          lambda'' = (0-3) = -3      -> -6 t
    p3: lambda' = 1/(1-0) = 1,  lambda'' = 1/3             -> (1/3) t^-1
    along (1, 1, -1): 2t * (-6t) * 3t = -36 t^3
    """
    return TorusScalar(Fraction(-36), 3)


def test_nu_t_triangle_pinned():
    tri = builtin("triangle")
    image = nu_t(tri, generator(tri))
    assert image.torus_coordinates == [triangle_hand_oracle()]
    image = nu_t(tri, (1, 1, -1), cycles=[(1, 1, -1)])
    assert [g.scalar for g in image.gluings] == [
        TorusScalar(2, 1), TorusScalar(-6, 1), TorusScalar(Fraction(1, 3), -1)]


def test_nu_t_triangle_sympy_oracle():
    # independent route: leading coefficients from sympy on the hand-written functions
    fA, fB, fC = z / (z - 1), (z - 2) / z, (z - 3) / z
    s1 = sympy_leading(fB, 0, -1) / sympy_leading(fA, 0, 1)
    s2 = sympy_leading(fC, 0, -1) / sympy_leading(fB, 2, 1)
    s3 = sympy_leading(fC, 3, 1) / sympy_leading(fA, 1, -1)
    assert s1 * s2 / s3 == Fraction(-36)


def test_nu_t_nodal_cubic():
    image = nu_t(builtin("nodal_cubic"), (1,))
    assert image.torus_texp == [1]
    # f = z/(z-1): lambda' = -1 at 0, lambda'' = 1 at 1
    assert image.torus_coordinates == [TorusScalar(-1, 1)]


def test_nu_t_mixed_genus_symbolic():
    curve = builtin("mixed_cycle")
    image = nu_t(curve, generator(curve))
    assert not image.evaluated
    # two edges on the cycle, so the self-pairing is 2
    assert image.torus_texp == [2]
    assert any("abelian part not evaluated" in n for n in image.notices)
    assert all(g.scalar is None for g in image.gluings)


def test_pairing_matrix_examples():
    assert pairing_matrix(builtin("triangle")).tolist() == [[3]]
    assert pairing_matrix(builtin("banana")).tolist() == [[2]]
    assert pairing_matrix(builtin("nodal_cubic")).tolist() == [[1]]
    assert pairing_matrix(builtin("tree12")).shape == (0, 0)
    assert pairing_matrix(ngon(6)).tolist() == [[6]]


def gram(cycles):
    return [[sum(a * b for a, b in zip(ci, cj)) for cj in cycles] for ci in cycles]


def test_pairing_matches_gram_and_texp():
    for curve in random_curves(61, 40, rational=True):
        cycles = cycle_basis(dual_graph(curve))
        P = pairing_matrix(curve)
        assert P.tolist() == gram(cycles)
        for j, gj in enumerate(cycles):
            image = nu_t(curve, gj)
            assert [s.texp for s in image.torus_coordinates] == [P[i, j] for i in range(len(cycles))]


def test_positive_definite_random():
    for curve in random_curves(62, 40):
        P = pairing_matrix(curve)
        b = P.shape[0]
        assert (P == P.T).all()
        for k in range(1, b + 1):
            assert la.det(P[:k, :k]) > 0


def test_bilinearity_random():
    rng = random.Random(7)
    for curve in random_curves(63, 20, rational=True):
        basis = cycle_basis(dual_graph(curve))
        if not basis:
            continue
        for _ in range(5):
            c1 = [rng.randint(-2, 2) for _ in basis]
            c2 = [rng.randint(-2, 2) for _ in basis]
            D1 = [sum(c * v[k] for c, v in zip(c1, basis)) for k in range(len(curve.nodes))]
            D2 = [sum(c * v[k] for c, v in zip(c2, basis)) for k in range(len(curve.nodes))]
            Ds = [a + b for a, b in zip(D1, D2)]
            t1, t2, ts = (nu_t(curve, D).torus_coordinates for D in (D1, D2, Ds))
            assert ts == [a * b for a, b in zip(t1, t2)]


def test_gauge_invariance_random():
    rng = random.Random(8)
    for curve in random_curves(64, 20, rational=True):
        basis = cycle_basis(dual_graph(curve))
        if not basis:
            continue
        D = basis[rng.randrange(len(basis))]
        base = nu_t(curve, D)
        scales = {c.label: Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 4))
                  for c in curve.components}
        moved = nu_t(curve, D, scales=scales)
        assert moved.torus_coordinates == base.torus_coordinates


def test_gauge_changes_individual_scalars():
    tri = builtin("triangle")
    D = generator(tri)
    moved = nu_t(tri, D, scales={"A": Fraction(5)})
    base = nu_t(tri, D)
    assert [g.scalar for g in moved.gluings] != [g.scalar for g in base.gluings]
    assert moved.torus_coordinates == base.torus_coordinates


def test_mark_affine_change_keeps_texp():
    rng = random.Random(9)
    for curve in random_curves(65, 15, rational=True):
        basis = cycle_basis(dual_graph(curve))
        if not basis:
            continue
        k = rng.randrange(len(curve.components))
        a, b = Fraction(rng.choice([-2, 3]), 1), Fraction(rng.randint(-4, 4))
        comps = list(curve.components)
        c = comps[k]
        comps[k] = Component(c.label, c.genus, {key: a * v + b for key, v in c.marks.items()})
        moved = NodalCurve(tuple(comps), curve.nodes)
        for D in basis:
            assert [s.texp for s in nu_t(moved, D).torus_coordinates] == \
                   [s.texp for s in nu_t(curve, D).torus_coordinates]


def test_torus_product():
    s = [TorusScalar(2, 1), TorusScalar(3, -1)]
    assert torus_product(s, [2, -1]) == TorusScalar(Fraction(4, 3), 3)
