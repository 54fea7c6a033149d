"""
The top-layer parity map at (n, k) = (3, 2)
===========================================

Build the quotient of the Λ^2 component by the hit elements and the lower
layers, read off the coordinate map theta onto F_2^{C(n,k)}, and check what the
hit elements look like there.
"""

from motivic_hit.monomial import weight_profile
from motivic_hit.toplayer import (
    build_context,
    epsilon,
    mono_injections,
    odd_parity_nonhit_check,
    theta,
    theta_hit_image,
    translate_zk,
    zk,
)

n, k = 3, 2

# the seed monomial and its translates, one per k-subset of {1..n}
z = zk(n, k)
print(z, "degree", z.degree, "omega", weight_profile(z).omega)
for s in mono_injections(n, k):
    print("  ", s, translate_zk(n, k, s))

# everything below is linear algebra on one exterior component
ctx = build_context(n, k)
print("component size", len(ctx.component), " quotient dim", ctx.quotient_dim, " N", ctx.N)

# each translate lands on a unit vector
for i in range(ctx.N):
    print(ctx.translate(i), "->", theta(ctx, ctx.u_s([ctx.injections[i]])))

# the image of the hit space is exactly the even-parity hyperplane
img = theta_hit_image(ctx)
print("rank of theta(hit) =", img.rank)
for row in img.rows:
    print("  ", row, "parity", epsilon(row))

# so a sum of an odd number of translates is never hit
print("z_k alone hit?", odd_parity_nonhit_check(ctx, [ctx.injections[0]]))
print("two translates hit?", odd_parity_nonhit_check(ctx, ctx.injections[:2]))
