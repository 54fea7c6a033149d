"""
Hit subspaces of N_n in low degree
==================================

N_n = Λ(x_1..x_n) ⊗ F_2[y_1..y_n] with |x_i| = 1, |y_i| = 2.  The hit
subspace in degree d is spanned by Q_0 and P^a images from lower degrees.
"""

from motivic_hit.monomial import enumerate_degree
from motivic_hit.steenrod import hit_component_subspace, hit_subspace, q0, pa
from motivic_hit.monomial import Monomial

M = Monomial.make

# Q_0 is a derivation with Q_0 x_i = y_i, P^1 y = y^2
print("Q0 x1x2 =", q0(M(2, [1, 2])))
print("P1 y1y2 =", pa(1, M(2, [], [1, 1])))

print(f"{'n':>2} {'d':>3} {'ambient':>8} {'hit':>5} {'quotient':>9}")
for n in (1, 2, 3):
    for d in range(1, 11):
        h = hit_subspace(n, d)
        print(f"{n:>2} {d:>3} {h.ncols:>8} {h.rank:>5} {h.ncols - h.rank:>9}")

# the hit space splits along exterior degree
n, d = 3, 14
b = enumerate_degree(n, d)
parts = {a: hit_component_subspace(n, d, a).rank for a in b.ranges}
print(parts, "sum", sum(parts.values()), "total", hit_subspace(n, d).rank)
