"""Build a few divided-power Koszul complexes and look at their cohomology.

Run: python3 demos/koszul_tour.py
"""
from limitmotive import exactla as la
from limitmotive.koszul import (
    FreeAbelianMap, WeightSubgroupSpec, build_complex, cohomology, graded_piece_iso_check,
    verify_closed_form,
)


def show(rows, n):
    eps = FreeAbelianMap.from_rows(rows)
    K = build_complex(eps, n)
    print(f"map {rows}, degree {n}: term ranks {[K.dim(q) for q in range(n + 1)]}")
    for p in range(n + 1):
        print(f"  H^{p} = {cohomology(K, p)}")
    report = verify_closed_form(eps, n)
    print(f"  closed form: {report.message or 'agrees in every degree'}")


# An isomorphism kills everything.
show([[1, 0], [0, 1]], 2)

# Multiplication by 2 has torsion cokernel, so the closed form does not apply,
# and torsion really does show up.
show([[2]], 2)

# Split injection Z -> Z^2: the cokernel is free of rank one.
show([[1], [0]], 3)

# Weight filtration attached to a subgroup G containing the image.
eps = FreeAbelianMap.from_rows([[3], [0]])
K = build_complex(eps, 2)
G = la.int_matrix([[1], [0]])
for m in range(3):
    report = graded_piece_iso_check(K, WeightSubgroupSpec(G, m))
    dims = [lhs[0] for _, lhs, _ in report.rows]
    print(f"Gr_{m}: degreewise ranks {dims}, matches model: {report.ok}")
