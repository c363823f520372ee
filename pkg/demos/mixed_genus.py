"""Curves with positive-genus components: weight 1 appears, and nu_t stays symbolic.

Run: python3 demos/mixed_genus.py
"""
from limitmotive import limit_graded, nu_t
from limitmotive.corpus import builtin
from limitmotive.curve import cycle_basis, dual_graph
from limitmotive.limitmhs import monodromy_block

for name in ("tree12", "mixed_cycle"):
    curve = builtin(name)
    s = limit_graded(curve)
    print(f"{name}: Gr dims ({s.gr0_dim}, {s.gr1_dim}, {s.gr2_dim}), torus rank {s.torus_rank}")
    print(f"  hodge numbers {s.hodge_numbers}")

curve = builtin("mixed_cycle")
print("\nmonodromy on Gr2 + Gr1 + Gr0:")
print(monodromy_block(curve))

(gen,) = cycle_basis(dual_graph(curve))
image = nu_t(curve, gen)
print(f"\nnu_t on {gen}: evaluated={image.evaluated}, texp {image.torus_texp}")
for notice in image.notices:
    print(f"  {notice}")
