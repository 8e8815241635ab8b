"""
Homogeneous lattice and the ice point
=====================================

With all lambdas equal and all nus equal the determinants become Hankel
determinants of derivatives.  At the ice point a = b = c, so Z_N / a^(N^2)
counts alternating sign matrices, and N-th row probabilities times that count
give the refined enumeration.
"""

import math

from sixvertex import homogeneous as hom
from sixvertex.determinant import z_det

# Precision needed for an order-N Hankel determinant grows with N.
for n in (4, 8, 12, 20):
    print(f"N = {n:2d}: about {hom.digits_lost(n):5.1f} digits cancel, working at {hom.required_bits(n)} bits")

print("\nASM counts from the determinant:")
for n in range(1, 11):
    print(f"  A_{n} = {hom.ice_point_asm(n):.6f}")

# Refined counts: how many ASMs have the 1 of the first column in row M.
lam, eta = 1j * math.pi / 2, 1j * math.pi / 6
n = 6
a_n = round(hom.ice_point_asm(n))
refined = [complex(hom.h_hom(lam, eta, n, m)).real * a_n for m in range(1, n + 1)]
print(f"\nrefined counts for N = {n}:", [round(x) for x in refined])

# The homogeneous formula is the limit of the inhomogeneous one: shift the
# parameters apart by multiples of delta and extrapolate delta -> 0.
lam, eta = 0.3 + 0.2j, 0.5 + 0.1j
limit = hom.collapse_limit(z_det, lam, eta, 4)
print(f"\nZ_4 homogeneous  {complex(hom.z_hom(lam, eta, 4)):.14f}")
print(f"Z_4 collapsed    {complex(limit):.14f}")
