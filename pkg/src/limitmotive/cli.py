"""Command-line front end.

    limitmotive validate|report|motive|koszul-selfcheck|dot [options] PATH

PATH is a curve description file or ``builtin:NAME`` (triangle, banana,
nodal_cubic, tree12, mixed_cycle, ngonK).  Exit codes: 0 success, 1
self-check failure, 2 domain diagnostic, 3 I/O or parse error.
"""

import argparse
import json
import os
import sys

from limitmotive import corpus
from limitmotive.curve import (
    CurveFormatError, InvalidCurveError, NodalCurve, betti1, cycle_basis, dual_graph, validate,
)
from limitmotive.limitmhs import limit_graded, monodromy_graded, spectral_row
from limitmotive.motive import NotInLatticeError, nu_t, pairing_matrix
from limitmotive.selfcheck import RunConfig, run_selfcheck

EXIT_OK, EXIT_SELFCHECK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def load_curve(path):
    try:
        if path.startswith("builtin:"):
            return corpus.builtin(path[len("builtin:"):])
        return NodalCurve.load(path)
    except CurveFormatError as e:
        raise InputError(f"parse error in {path}: {e}") from None
    except (OSError, KeyError, ValueError) as e:
        raise InputError(f"cannot read {path}: {e}") from None


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _matrix(M):
    return [[int(x) for x in row] for row in M]


def build_report(curve):
    g = dual_graph(curve)
    s = limit_graded(curve)
    row = spectral_row(curve)
    return {
        "curve": curve.to_dict(),
        "n_components": g.n,
        "n_nodes": g.d,
        "b1": betti1(g),
        "genus": s.genus,
        "sum_component_genera": curve.total_genus_of_components,
        "graded_dims": {"Gr^W_0 H^1_lim": s.gr0_dim, "Gr^W_1 H^1_lim": s.gr1_dim,
                        "Gr^W_2 H^1_lim": s.gr2_dim},
        "hodge_numbers": {f"Gr^W_{w} H^1_lim": {f"h^{p},{q}": h for (p, q), h in hs.items()}
                          for w, hs in s.hodge_numbers.items()},
        "tate_twist_note": "after twisting by Q(1) the types shift by (-1,-1)",
        "lattice_L": {"label": "L = ker(H_0(X_0[2]) -> H_0(X_0[1]))",
                      "rank": len(cycle_basis(g)),
                      "basis": [list(v) for v in cycle_basis(g)]},
        "incidence": _matrix(g.incidence),
        "spectral_row": {"E_1": list(row.e1_terms), "E_2": list(row.e2_terms)},
        "torus_rank": s.torus_rank,
        "monodromy_Gr2_to_Gr0": _matrix(monodromy_graded(curve)),
        "pairing_matrix": _matrix(pairing_matrix(curve)),
        "self_nodes": [p.id for p in curve.nodes if p.is_self_node],
    }


def _text_report(rep):
    lines = [
        f"components n = {rep['n_components']}, nodes d = {rep['n_nodes']}, b1 = {rep['b1']}",
        f"genus = {rep['genus']} (components contribute {rep['sum_component_genera']})",
    ]
    for k, v in rep["graded_dims"].items():
        lines.append(f"dim {k} = {v}   hodge {rep['hodge_numbers'][k]}")
    lines.append(f"L rank {rep['lattice_L']['rank']}, basis {rep['lattice_L']['basis']}")
    lines.append(f"E_1 row {rep['spectral_row']['E_1']}, E_2 {rep['spectral_row']['E_2']}")
    lines.append(f"torus rank d+1-n = {rep['torus_rank']}")
    lines.append(f"pairing matrix {rep['pairing_matrix']}")
    if rep["self_nodes"]:
        lines.append(f"self-nodes (user-ordered branches): {rep['self_nodes']}")
    return "\n".join(lines) + "\n"


def to_dot(curve):
    g = dual_graph(curve)
    out = ["digraph dual_graph {"]
    for c in curve.components:
        out.append(f'  "{c.label}" [label="{c.label} (g={c.genus})"];')
    for node_id, tail, head in g.edges:
        out.append(f'  "{g.vertices[tail]}" -> "{g.vertices[head]}" [label="{node_id}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def parse_divisor(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"malformed divisor {text!r}") from None


def cmd_validate(args, out):
    curve = load_curve(args.path)
    report = validate(curve, require_stable=args.stable)
    if args.format == "json":
        out.write(_dump(report.to_dict()))
    else:
        out.write("valid\n" if report.valid else "")
        for d in report.diagnostics:
            out.write(f"{d.code}: {d.message}\n")
        for p in report.self_nodes:
            out.write(f"note: self-node {p} uses the declared branch order\n")
    return EXIT_OK if report.valid else EXIT_DOMAIN


def _require_valid(curve, args, out):
    report = validate(curve, require_stable=args.stable)
    if not report.valid:
        for d in report.diagnostics:
            out.write(f"{d.code}: {d.message}\n")
        return False
    return True


def cmd_report(args, out):
    curve = load_curve(args.path)
    if not _require_valid(curve, args, out):
        return EXIT_DOMAIN
    rep = build_report(curve)
    out.write(_dump(rep) if args.format == "json" else _text_report(rep))
    return EXIT_OK


def cmd_motive(args, out):
    curve = load_curve(args.path)
    if not _require_valid(curve, args, out):
        return EXIT_DOMAIN
    if args.divisor is None:
        basis = cycle_basis(dual_graph(curve))
        D = list(basis[0]) if basis else [0] * len(curve.nodes)
    else:
        D = parse_divisor(args.divisor)
    try:
        image = nu_t(curve, D)
    except NotInLatticeError as e:
        out.write(f"{e}\n")
        return EXIT_DOMAIN
    except ValueError as e:
        out.write(f"{e}\n")
        return EXIT_DOMAIN
    data = image.to_dict()
    if args.format == "json":
        out.write(_dump(data))
    else:
        out.write(f"D = {data['D']}\n")
        for dv in image.divisors:
            pts = ", ".join(f"{m:+d}*{k}" for k, _, m in dv.points) or "0"
            out.write(f"divisor on {dv.component}: {pts}\n")
        for gl in image.gluings:
            s = "" if gl.scalar is None else f", scalar {gl.scalar}"
            out.write(f"node {gl.node}: u^{gl.exponent} | (1/v)^{gl.exponent}{s}\n")
        for ov in data["symbolic_cocycle"]["overlaps"]:
            out.write(f"cocycle on {ov['charts'][0]} & {ov['charts'][1]} ({ov['branch']}): {ov['ratio']}\n")
        for gamma, e in zip(image.cycles, image.torus_texp):
            out.write(f"cycle {list(gamma)}: t-exponent {e}\n")
        if image.evaluated:
            for gamma, s in zip(image.cycles, image.torus_coordinates):
                out.write(f"torus coordinate along {list(gamma)}: {s}\n")
        for note in image.notices:
            out.write(f"notice: {note}\n")
    return EXIT_OK


def cmd_koszul_selfcheck(args, out):
    cfg = RunConfig(seed=args.seed, max_rank=args.max_rank, output_format=args.format)
    tallies = run_selfcheck(cfg)
    failed = {k: t for k, t in tallies.items() if t.failures}
    summary = {"seed": cfg.seed, "max_rank": cfg.max_rank,
               "checks": {k: t.to_dict() for k, t in tallies.items()},
               "vacuous": all(t.instances == 0 for t in tallies.values()),
               "passed": not failed}
    if args.format == "json":
        if failed:
            summary["reproducers"] = {k: t.failures[:5] for k, t in failed.items()}
        out.write(_dump(summary))
    else:
        for k, t in tallies.items():
            out.write(f"{k}: {t.instances} instances, {len(t.failures)} failures\n")
        if summary["vacuous"]:
            out.write("no instances generated (vacuous pass)\n")
        for k, t in failed.items():
            for inst in t.failures[:5]:
                out.write(f"reproducer [{k}]: {json.dumps(inst, sort_keys=True)}\n")
        out.write("PASS\n" if not failed else "FAIL\n")
    return EXIT_OK if not failed else EXIT_SELFCHECK


def cmd_dot(args, out):
    curve = load_curve(args.path)
    if not _require_valid(curve, args, out):
        return EXIT_DOMAIN
    out.write(to_dot(curve))
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "report": cmd_report,
    "motive": cmd_motive,
    "koszul-selfcheck": cmd_koszul_selfcheck,
    "dot": cmd_dot,
}


def _default_seed():
    try:
        return int(os.environ.get("LIMITMOTIVE_SEED", "0"))
    except ValueError:
        return 0


def make_parser():
    parser = argparse.ArgumentParser(prog="limitmotive", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("path", nargs="?")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--max-rank", type=int, default=3)
    parser.add_argument("--stable", action="store_true")
    parser.add_argument("--divisor", default=None,
                        help="comma-separated node coefficients (motive only)")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.seed is None:
        args.seed = _default_seed()
    if args.command != "koszul-selfcheck" and not args.path:
        out.write("error: PATH is required\n")
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except InputError as e:
        out.write(f"error: {e}\n")
        return EXIT_INPUT
    except InvalidCurveError as e:
        out.write(f"error: {e}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
