"""The geometric 1-motive nu_t : L -> Pic^0(X_0).

For ``D = sum n_p p`` in L the line bundle O(sum n_p (p' - p'')) on the
normalization is glued at each node by ``u^{n_p}`` on the p' branch and
``(1/v)^{n_p}`` on the p'' branch, where ``uv = t`` locally.

When every component is rational the class is made explicit.  Each
component carries the monic trivializing function ``prod (z - q)^m`` of its
divisor, the node-local coordinates are taken to be ``u = z - z(p')`` and
``v = w - w(p'')``, and the gluing scalar at p is

    t^{n_p} * lambda''_p / lambda'_p

with ``lambda'`` / ``lambda''`` the leading Laurent coefficients of the
trivializing functions at p' / p''.  Products of gluing scalars around the
cycles of the dual graph give torus coordinates, which do not depend on
how the trivializing functions are scaled.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from limitmotive import exactla as la
from limitmotive.curve import cycle_basis, dual_graph, ensure_valid, format_rational


class NotInLatticeError(ValueError):
    def __init__(self, boundary):
        self.boundary = tuple(boundary)
        super().__init__(f"not in L: incidence . D = {list(self.boundary)}")


class NotPrincipalError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TorusScalar:
    """The monomial ``coeff * t**texp`` with exact rational ``coeff``."""
    coeff: Fraction = Fraction(1)
    texp: int = 0

    def __post_init__(self):
        c = Fraction(self.coeff)
        if c == 0:
            raise ValueError("torus scalars are units; coefficient must be nonzero")
        object.__setattr__(self, "coeff", c)

    def __mul__(self, other):
        return TorusScalar(self.coeff * other.coeff, self.texp + other.texp)

    def __truediv__(self, other):
        return TorusScalar(self.coeff / other.coeff, self.texp - other.texp)

    def __pow__(self, k):
        return TorusScalar(self.coeff ** k, self.texp * k)

    def to_dict(self):
        return {"coeff": format_rational(self.coeff), "texp": self.texp}

    def __str__(self):
        return f"({self.coeff})*t^{self.texp}"


ONE = TorusScalar()


def torus_product(scalars, exponents):
    out = ONE
    for s, m in zip(scalars, exponents):
        if m:
            out = out * s ** m
    return out


@dataclass(frozen=True)
class FactoredRational:
    """``constant * prod (z - point)**mult``, points distinct, mults nonzero."""
    factors: tuple = ()
    constant: Fraction = Fraction(1)

    def __post_init__(self):
        acc = {}
        for point, m in self.factors:
            acc[Fraction(point)] = acc.get(Fraction(point), 0) + m
        object.__setattr__(self, "factors",
                           tuple(sorted((q, m) for q, m in acc.items() if m)))
        object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def degree(self):
        return sum(m for _, m in self.factors)

    def __mul__(self, other):
        return FactoredRational(self.factors + other.factors, self.constant * other.constant)

    def scaled(self, c):
        return FactoredRational(self.factors, self.constant * c)

    def __call__(self, z):
        z = Fraction(z)
        out = self.constant
        for q, m in self.factors:
            out *= (z - q) ** m
        return out

    def expansion_at(self, a):
        """``(order, leading coefficient)`` of the Laurent series in ``z - a``."""
        a = Fraction(a)
        order, lead = 0, self.constant
        for q, m in self.factors:
            if q == a:
                order = m
            else:
                lead *= (a - q) ** m
        return order, lead

    def __str__(self):
        def term(q, m):
            base = "z" if q == 0 else f"(z - {q})" if q > 0 else f"(z + {-q})"
            return base if m == 1 else f"{base}^{m}"
        num = [term(q, m) for q, m in self.factors if m > 0]
        den = [term(q, -m) for q, m in self.factors if m < 0]
        s = "*".join(num) or "1"
        if den:
            s += "/" + ("*".join(den) if len(den) == 1 else "(" + "*".join(den) + ")")
        if self.constant != 1:
            s = f"{self.constant}*" + s if num or den else str(self.constant)
        return s


@dataclass(frozen=True)
class ComponentDivisor:
    component: str
    points: tuple     # (mark key, coordinate or None, multiplicity)

    @property
    def degree(self):
        return sum(m for _, _, m in self.points)

    def to_dict(self):
        return {
            "component": self.component,
            "points": [{"mark": k, "coordinate": None if z is None else format_rational(z),
                        "multiplicity": m} for k, z, m in self.points],
        }


@dataclass(frozen=True)
class GluingDescriptor:
    node: str
    exponent: int
    scalar: TorusScalar = None

    def to_dict(self):
        return {"node": self.node, "exponent": self.exponent,
                "scalar": None if self.scalar is None else self.scalar.to_dict()}


def _check_D(curve, D):
    g = dual_graph(curve)
    D = tuple(int(x) for x in D)
    if len(D) != g.d:
        raise ValueError(f"D has {len(D)} coefficients, curve has {g.d} nodes")
    boundary = [sum(g.incidence[i, k] * D[k] for k in range(g.d)) for i in range(g.n)]
    if any(boundary):
        raise NotInLatticeError(boundary)
    return D


def divisor_of(curve, D):
    """Per component, ``+n_p`` at each p' and ``-n_p`` at each p''."""
    D = _check_D(curve, D)
    mult = {c.label: {} for c in curve.components}
    for p, n_p in zip(curve.nodes, D):
        for (lab, key), s in ((p.prime, n_p), (p.double_prime, -n_p)):
            mult[lab][key] = mult[lab].get(key, 0) + s
    out = []
    for c in curve.components:
        here = mult[c.label]
        pts = tuple((k, z, here[k]) for k, z in c.marks.items() if here.get(k, 0))
        out.append(ComponentDivisor(c.label, pts))
    return out


def gluing_descriptors(curve, D):
    D = _check_D(curve, D)
    return [GluingDescriptor(p.id, n_p) for p, n_p in zip(curve.nodes, D)]


@dataclass(frozen=True)
class CechCocycle:
    """((1, ..., 1), {w_a^{n_a} / w_b^{n_b}}) on the cover by node charts and
    component complements.

    ``overlaps`` entries: ``(node chart, component chart, branch, numerator
    symbol, exponent)``; the denominator is the nodeless chart's ``w = 1``
    with exponent 1.
    """
    node_part: tuple
    charts: tuple
    overlaps: tuple

    def to_dict(self):
        return {
            "node_part": [{"node": p, "value": v} for p, v in self.node_part],
            "charts": list(self.charts),
            "overlaps": [
                {"charts": [a, b], "branch": br, "ratio": f"({w})^{n}/(1)^1",
                 "numerator": {"symbol": w, "exponent": n},
                 "denominator": {"symbol": "1", "exponent": 1}}
                for a, b, br, w, n in self.overlaps
            ],
        }


def cech_representative(curve, D):
    D = _check_D(curve, D)
    charts = tuple([f"node:{p.id}" for p in curve.nodes]
                   + [f"component:{c.label}" for c in curve.components])
    overlaps = []
    for p, n_p in zip(curve.nodes, D):
        overlaps.append((f"node:{p.id}", f"component:{p.prime[0]}", "p'", f"u_{p.id}", n_p))
        overlaps.append((f"node:{p.id}", f"component:{p.double_prime[0]}", "p''", f"1/v_{p.id}", n_p))
    return CechCocycle(tuple((p.id, 1) for p in curve.nodes), charts, tuple(overlaps))


def trivializing_function(component, divisor):
    if component.genus > 0:
        raise NotPrincipalError("not principal-representable: component has positive genus")
    if divisor.degree != 0:
        raise NotPrincipalError(f"divisor on {component.label!r} has degree {divisor.degree}")
    factors = []
    for key, z, m in divisor.points:
        if key not in component.marks:
            raise NotPrincipalError(f"divisor point {key!r} is not a mark of {component.label!r}")
        coord = component.marks[key]
        if coord is None:
            raise NotPrincipalError(f"mark {component.label!r}.{key!r} has no coordinate")
        if z is not None and Fraction(z) != coord:
            raise NotPrincipalError(f"divisor point {key!r} does not match its mark coordinate")
        factors.append((coord, m))
    return FactoredRational(tuple(factors))


@dataclass
class MotiveImage:
    D: tuple
    divisors: list
    gluings: list
    symbolic_cocycle: CechCocycle
    cycles: list
    torus_texp: list
    torus_coordinates: list = None
    trivializations: dict = None
    notices: list = field(default_factory=list)

    @property
    def evaluated(self):
        return self.torus_coordinates is not None

    def to_dict(self):
        return {
            "D": list(self.D),
            "divisors": [d.to_dict() for d in self.divisors],
            "gluings": [g.to_dict() for g in self.gluings],
            "symbolic_cocycle": self.symbolic_cocycle.to_dict(),
            "cycle_basis": [list(c) for c in self.cycles],
            "torus_texp": list(self.torus_texp),
            "torus_coordinates": None if self.torus_coordinates is None
            else [s.to_dict() for s in self.torus_coordinates],
            "trivializations": None if self.trivializations is None
            else {k: str(f) for k, f in self.trivializations.items()},
            "notices": list(self.notices),
        }


def _evaluation_blockers(curve):
    blockers = []
    for c in curve.components:
        if c.genus > 0:
            blockers.append(f"component {c.label!r} has genus {c.genus}")
    for p in curve.nodes:
        for end in (p.prime, p.double_prime):
            if curve.mark(end) is None:
                blockers.append(f"mark {end[0]!r}.{end[1]!r} has no coordinate")
    return blockers


def nu_t(curve, D, scales=None, cycles=None):
    """Image of ``D`` under nu_t.

    ``scales`` optionally rescales each component's trivializing function
    (label -> nonzero rational); cycle coordinates are unaffected by it.
    """
    ensure_valid(curve, allow_disconnected=True)
    D = _check_D(curve, D)
    if cycles is None:
        cycles = cycle_basis(dual_graph(curve))
    divisors = divisor_of(curve, D)
    gluings = gluing_descriptors(curve, D)
    cocycle = cech_representative(curve, D)
    texp = [sum(m * n for m, n in zip(gamma, D)) for gamma in cycles]
    image = MotiveImage(D, divisors, gluings, cocycle, list(cycles), texp)

    blockers = _evaluation_blockers(curve)
    if blockers:
        image.notices.append("abelian part not evaluated: " + "; ".join(blockers))
        return image

    scales = scales or {}
    funcs = {}
    for comp, div in zip(curve.components, divisors):
        f = trivializing_function(comp, div)
        if comp.label in scales:
            f = f.scaled(scales[comp.label])
        funcs[comp.label] = f

    evaluated = []
    for p, n_p in zip(curve.nodes, D):
        order1, lam1 = funcs[p.prime[0]].expansion_at(curve.mark(p.prime))
        order2, lam2 = funcs[p.double_prime[0]].expansion_at(curve.mark(p.double_prime))
        assert order1 == n_p and order2 == -n_p, (p.id, order1, order2, n_p)
        evaluated.append(GluingDescriptor(p.id, n_p, TorusScalar(lam2 / lam1, n_p)))
    image.gluings = evaluated
    image.trivializations = funcs
    scalars = [g.scalar for g in evaluated]
    image.torus_coordinates = [torus_product(scalars, gamma) for gamma in cycles]
    return image


def pairing_matrix(curve):
    """t-exponents of nu_t on the cycle basis: entry (i, j) pairs gamma_i with nu_t(gamma_j)."""
    ensure_valid(curve, allow_disconnected=True)
    cycles = cycle_basis(dual_graph(curve))
    b = len(cycles)
    P = la.zeros(b, b)
    for j, gj in enumerate(cycles):
        exps = [g.exponent for g in gluing_descriptors(curve, gj)]
        for i, gi in enumerate(cycles):
            P[i, j] = sum(m * n for m, n in zip(gi, exps))
    return P
