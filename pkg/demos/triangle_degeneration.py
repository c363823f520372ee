"""Walk through the cycle of three rational curves.

Run: python3 demos/triangle_degeneration.py
"""
from limitmotive import cycle_basis, dual_graph, lattice_L, limit_graded, nu_t, spectral_row
from limitmotive.corpus import builtin
from limitmotive.motive import cech_representative, divisor_of

tri = builtin("triangle")
g = dual_graph(tri)
print("incidence (rows = components, columns = nodes):")
print(g.incidence)

s = limit_graded(tri)
print(f"graded dims (Gr0, Gr1, Gr2) = ({s.gr0_dim}, {s.gr1_dim}, {s.gr2_dim}), genus {s.genus}")
print(f"spectral row E1 {spectral_row(tri).e1_terms}, lattice basis {lattice_L(tri)}")

(gen,) = cycle_basis(g)
print(f"\ncycle generator D = {gen}")
for div in divisor_of(tri, gen):
    pts = ", ".join(f"{m:+d}*{k}@{c}" for k, c, m in div.points)
    print(f"  on {div.component}: {pts}  (degree {div.degree})")

image = nu_t(tri, gen)
for comp, f in image.trivializations.items():
    print(f"  f_{comp} = {f}")
for glue in image.gluings:
    print(f"  node {glue.node}: exponent {glue.exponent}, scalar {glue.scalar.to_dict()}")
print(f"torus coordinate along the generator: {image.torus_coordinates[0].to_dict()}")

cocycle = cech_representative(tri, gen)
print(f"\nCech charts: {cocycle.charts}")

# Rescaling the trivialization on one component moves individual gluing scalars
# but not the torus coordinate.
moved = nu_t(tri, gen, scales={"B": 7})
print("after rescaling f_B by 7:", [gl.scalar.to_dict() for gl in moved.gluings])
print("torus coordinate:", moved.torus_coordinates[0].to_dict())
