"""Built-in example curves and seeded random curve generation."""

import random
from fractions import Fraction
from importlib import resources

from limitmotive.curve import Component, NodalCurve, Node, validate

BUILTIN = ("triangle", "banana", "nodal_cubic", "tree12", "mixed_cycle")


def builtin_text(name):
    return resources.files("limitmotive.data").joinpath(f"{name}.json").read_text("utf-8")


def builtin(name):
    if name.startswith("ngon"):
        return ngon(int(name[4:]))
    if name not in BUILTIN:
        raise KeyError(f"unknown built-in curve {name!r}")
    return NodalCurve.loads(builtin_text(name))


def ngon(k):
    """Cycle of ``k`` rational components; node ``p{i}`` joins C{i} and C{i+1}.

    ``k = 1`` is the nodal cubic and ``k = 2`` the banana curve.  Marks are
    placed at 0 and i + 2 on component i so that evaluations are generic.
    """
    if k < 1:
        raise ValueError("an n-gon needs at least one component")
    marks = [dict() for _ in range(k)]
    nodes = []
    for i in range(k):
        j = (i + 1) % k
        lo, hi = min(i, j), max(i, j)
        pid = f"p{i}"
        marks[lo][f"{pid}'"] = None
        marks[hi][f"{pid}''"] = None
        nodes.append(Node(pid, (f"C{lo}", f"{pid}'"), (f"C{hi}", f"{pid}''")))
    comps = []
    for i, m in enumerate(marks):
        coords = [Fraction(0), Fraction(i + 2)]
        comps.append(Component(f"C{i}", 0, dict(zip(sorted(m), coords))))
    return NodalCurve(tuple(comps), tuple(nodes))


def random_curve(rng, max_components=6, max_nodes=8, max_genus=3, rational=False):
    """A connected nodal curve with distinct rational marks at every node end."""
    n = rng.randint(1, max_components)
    d = rng.randint(n - 1, max(max_nodes, n - 1))
    pairs = [(rng.randrange(k), k) for k in range(1, n)]
    for _ in range(d - len(pairs)):
        pairs.append((rng.randrange(n), rng.randrange(n)))
    rng.shuffle(pairs)
    genera = [0 if rational else rng.randint(0, max_genus) for _ in range(n)]
    marks = [dict() for _ in range(n)]
    nodes = []
    for k, (a, b) in enumerate(pairs):
        lo, hi = min(a, b), max(a, b)
        pid = f"n{k}"
        marks[lo][f"{pid}'"] = None
        marks[hi][f"{pid}''"] = None
        nodes.append(Node(pid, (f"X{lo}", f"{pid}'"), (f"X{hi}", f"{pid}''")))
    comps = []
    for i, m in enumerate(marks):
        keys = sorted(m)
        coords = rng.sample(range(-3 * len(keys) - 5, 3 * len(keys) + 6), len(keys))
        dens = [rng.randint(1, 3) for _ in keys]
        comps.append(Component(f"X{i}", genera[i],
                               {key: Fraction(c, q) for key, c, q in zip(keys, coords, dens)}))
    curve = NodalCurve(tuple(comps), tuple(nodes))
    # distinct numerators over varying denominators can still collide
    if not validate(curve).valid:
        return random_curve(rng, max_components, max_nodes, max_genus, rational)
    return curve


def random_curves(seed, count, **kw):
    rng = random.Random(seed)
    return [random_curve(rng, **kw) for _ in range(count)]
