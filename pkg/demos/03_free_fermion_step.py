"""
Free-fermion point: binomial law and the step function
======================================================

At eta = i pi/4 (after rescaling the weights to a = cos(lambda),
b = sin(lambda), c = 1) H_N^(M) is a binomial distribution with success
probability sin^2(lambda).  For large N the polarization G, as a function of
x = M/N, approaches a step at x = sin^2(lambda): the boundary column is frozen.
"""

import math

from sixvertex import free_fermion as ff
from sixvertex.homogeneous import g_hom, h_hom

lam = math.pi / 3
print(f"lambda = pi/3, sin^2 = {math.sin(lam) ** 2:.3f}\n")

# The homogeneous determinants reproduce the closed form exactly.
lh = ff.homogeneous_lambda(lam)
for m in range(1, 6):
    print(f"N=5 M={m}: H binomial {ff.h_ff(5, m, lam):.12f}   "
          f"H determinant {complex(h_hom(lh, ff.ETA_FF, 5, m)).real:.12f}")

# Sharpening of the step with growing N.
print("\n   x     N=20     N=200    N=2000")
for x in (0.5, 0.7, 0.75, 0.8, 0.9):
    row = [ff.g_thermo(x, lam, n) for n in (20, 200, 2000)]
    print(f"{x:5.2f}  " + "  ".join(f"{v:.5f}" for v in row))

# At the jump itself the value tends to one half.
print("\nat the jump, lambda = pi/4, N = 400:", ff.g_thermo(0.5, math.pi / 4, 400))
