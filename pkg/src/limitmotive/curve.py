"""Nodal curves: components, nodes, validation and the dual graph.

Each node has two preimages on the normalization, a ``prime`` end and a
``double_prime`` end.  When the ends sit on different components the prime
end must be on the component listed first.  In the dual graph an edge runs
from the double-prime component (tail) to the prime component (head), so
the incidence matrix sends a node to ``[prime component] - [double prime
component]``.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from limitmotive import exactla as la


class CurveFormatError(ValueError):
    """Malformed curve description; ``where`` locates the problem."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def parse_rational(text, where=None):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise CurveFormatError(f"expected a rational string, got {text!r}", where)
    s = str(text).strip()
    num, _, den = s.partition("/")
    try:
        a = int(num)
        b = int(den) if den else 1
    except ValueError:
        raise CurveFormatError(f"malformed rational {s!r}", where) from None
    if b <= 0:
        raise CurveFormatError(f"malformed rational {s!r}: denominator must be positive", where)
    return Fraction(a, b)


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Component:
    label: str
    genus: int = 0
    marks: dict = field(default_factory=dict)  # mark key -> Fraction or None


@dataclass(frozen=True)
class Node:
    id: str
    prime: tuple          # (component label, mark key)
    double_prime: tuple

    @property
    def is_self_node(self):
        return self.prime[0] == self.double_prime[0]


@dataclass(frozen=True)
class NodalCurve:
    components: tuple
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def index_of(self, label):
        for i, c in enumerate(self.components):
            if c.label == label:
                return i
        raise KeyError(label)

    def component(self, label):
        return self.components[self.index_of(label)]

    def mark(self, end):
        label, key = end
        return self.component(label).marks[key]

    @property
    def total_genus_of_components(self):
        return sum(c.genus for c in self.components)

    def to_dict(self):
        return {
            "components": [
                {"label": c.label, "genus": c.genus,
                 "marks": {k: (None if v is None else format_rational(v))
                           for k, v in c.marks.items()}}
                for c in self.components
            ],
            "nodes": [
                {"id": p.id,
                 "prime": {"component": p.prime[0], "mark": p.prime[1]},
                 "double_prime": {"component": p.double_prime[0], "mark": p.double_prime[1]}}
                for p in self.nodes
            ],
        }

    def dumps(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        def need(obj, key, where, kind):
            if not isinstance(obj, dict) or key not in obj:
                raise CurveFormatError(f"missing field {key!r}", where)
            val = obj[key]
            if not isinstance(val, kind) or isinstance(val, bool):
                raise CurveFormatError(f"field {key!r} has wrong type", where)
            return val

        comps = []
        for i, c in enumerate(need(data, "components", "$", list)):
            where = f"$.components[{i}]"
            if not isinstance(c, dict):
                raise CurveFormatError("component must be an object", where)
            marks = {}
            raw_marks = need(c, "marks", where, dict) if "marks" in c else {}
            for key, val in raw_marks.items():
                marks[str(key)] = None if val is None else parse_rational(val, f"{where}.marks.{key}")
            genus = c.get("genus", 0)
            if not isinstance(genus, int) or isinstance(genus, bool):
                raise CurveFormatError("genus must be an integer", where)
            comps.append(Component(str(need(c, "label", where, (str, int))), genus, marks))
        nodes = []
        for i, p in enumerate(need(data, "nodes", "$", list)):
            where = f"$.nodes[{i}]"
            if not isinstance(p, dict):
                raise CurveFormatError("node must be an object", where)
            ends = []
            for side in ("prime", "double_prime"):
                e = need(p, side, where, dict)
                ends.append((str(need(e, "component", f"{where}.{side}", (str, int))),
                             str(need(e, "mark", f"{where}.{side}", (str, int)))))
            nodes.append(Node(str(need(p, "id", where, (str, int))), ends[0], ends[1]))
        return cls(tuple(comps), tuple(nodes))

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise CurveFormatError(e.msg, f"line {e.lineno} column {e.colno}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str


@dataclass
class ValidationReport:
    diagnostics: list
    connected_components: int
    self_nodes: list

    @property
    def valid(self):
        return not self.diagnostics

    def to_dict(self):
        return {
            "valid": self.valid,
            "connected_components": self.connected_components,
            "self_nodes": list(self.self_nodes),
            "diagnostics": [{"code": d.code, "message": d.message} for d in self.diagnostics],
        }


def _count_connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(n)})


def validate(curve, require_stable=False, allow_disconnected=False):
    diags = []

    def bad(code, msg):
        diags.append(Diagnostic(code, msg))

    labels = [c.label for c in curve.components]
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            bad("duplicate-label", f"component label {lab!r} used twice")
        index.setdefault(lab, i)
    for c in curve.components:
        if c.genus < 0:
            bad("negative-genus", f"component {c.label!r} has genus {c.genus}")
        coords = [v for v in c.marks.values() if v is not None]
        if len(set(coords)) != len(coords):
            bad("duplicate-mark-coordinate", f"component {c.label!r} has coincident marks")

    seen_ids, used_ends = set(), {}
    ends_per_component = [0] * len(labels)
    graph_edges, self_nodes = [], []
    for p in curve.nodes:
        if p.id in seen_ids:
            bad("duplicate-node-id", f"node id {p.id!r} used twice")
        seen_ids.add(p.id)
        ok = True
        for side, (lab, key) in (("prime", p.prime), ("double_prime", p.double_prime)):
            if lab not in index:
                bad("dangling-component", f"node {p.id!r} {side} end references missing component {lab!r}")
                ok = False
            elif key not in curve.components[index[lab]].marks:
                bad("dangling-mark", f"node {p.id!r} {side} end references missing mark {lab!r}.{key!r}")
                ok = False
            else:
                if (lab, key) in used_ends:
                    bad("mark-reused", f"mark {lab!r}.{key!r} is used by nodes "
                                       f"{used_ends[(lab, key)]!r} and {p.id!r}")
                used_ends[(lab, key)] = p.id
        if not ok:
            continue
        i, j = index[p.prime[0]], index[p.double_prime[0]]
        for k in (i, j):
            ends_per_component[k] += 1
        if i == j:
            self_nodes.append(p.id)
            if p.prime[1] == p.double_prime[1]:
                bad("self-node-marks", f"self-node {p.id!r} uses the same mark twice")
        elif i > j:
            bad("orientation", f"node {p.id!r}: prime end must lie on the earlier component "
                               f"({p.double_prime[0]!r} precedes {p.prime[0]!r})")
        graph_edges.append((i, j))

    c = _count_connected(len(labels), graph_edges) if labels else 0
    if c > 1 and not allow_disconnected:
        bad("disconnected", f"dual graph has {c} connected components")
    if not labels:
        bad("empty", "curve has no components")

    if require_stable:
        for k, comp in enumerate(curve.components):
            need = {0: 3, 1: 1}.get(comp.genus, 0)
            if ends_per_component[k] < need:
                bad("unstable", f"component {comp.label!r} of genus {comp.genus} has "
                                f"{ends_per_component[k]} node ends, needs at least {need}")
    return ValidationReport(diags, c, self_nodes)


class InvalidCurveError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(d.message for d in report.diagnostics))


def ensure_valid(curve, allow_disconnected=False):
    report = validate(curve, allow_disconnected=allow_disconnected)
    if not report.valid:
        raise InvalidCurveError(report)
    return report


@dataclass(frozen=True, eq=False)
class DualGraph:
    """Vertices are component labels, edges are ``(node id, tail, head)``."""
    vertices: tuple
    edges: tuple
    incidence: np.ndarray
    connected_components: int

    @property
    def n(self):
        return len(self.vertices)

    @property
    def d(self):
        return len(self.edges)


def dual_graph(curve):
    index = {c.label: i for i, c in enumerate(curve.components)}
    n, d = len(curve.components), len(curve.nodes)
    M = la.zeros(n, d)
    edges = []
    for k, p in enumerate(curve.nodes):
        head, tail = index[p.prime[0]], index[p.double_prime[0]]
        edges.append((p.id, tail, head))
        M[head, k] += 1
        M[tail, k] -= 1
    c = _count_connected(n, [(t, h) for _, t, h in edges])
    return DualGraph(tuple(index), tuple(edges), M, c)


def cycle_basis(graph):
    """Fundamental cycles of the spanning forest built from edges in order.

    One vector per non-forest edge, with +1 on that edge and the returning
    forest path signed by traversal direction.
    """
    n = graph.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = [[] for _ in range(n)]
    extra = []
    for k, (_, tail, head) in enumerate(graph.edges):
        a, b = find(tail), find(head)
        if a == b:
            extra.append(k)
        else:
            parent[a] = b
            adj[tail].append((head, k, +1))
            adj[head].append((tail, k, -1))

    def forest_path(src, dst):
        prev = {src: None}
        stack = [src]
        while stack:
            x = stack.pop()
            if x == dst:
                break
            for y, k, s in adj[x]:
                if y not in prev:
                    prev[y] = (x, k, s)
                    stack.append(y)
        steps = []
        x = dst
        while prev[x] is not None:
            x0, k, s = prev[x]
            steps.append((k, s))
            x = x0
        return steps

    basis = []
    for k in extra:
        _, tail, head = graph.edges[k]
        v = [0] * graph.d
        v[k] = 1
        for j, s in forest_path(head, tail):
            v[j] += s
        basis.append(tuple(v))
    return basis


def betti1(graph):
    return graph.d - graph.n + graph.connected_components
