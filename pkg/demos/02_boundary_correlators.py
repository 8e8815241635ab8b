"""
Boundary correlators G and H
============================

H_N^(M) is the probability that the line entering the boundary column turns at
row M (rows counted from the top); G_N^(M) is the probability that the
boundary column is spin-down just below row M.  G is the cumulative sum of H.
"""

from sixvertex import determinant, enumeration, qism
from sixvertex.model import SpectralParams

# Real parameters with |lambda - nu| < eta give weights of fixed sign
# (a, c > 0, b < 0; every configuration carries an even number of b's),
# so G and H are genuine probabilities.  Well separated lambdas and nus
# keep the determinants well conditioned.
params = SpectralParams([0.5, -0.3, 0.1, 0.7, -0.6],
                        [0.2, -0.5, 0.6, -0.1, 0.35], 1.6)
n = params.n

tally = enumeration.correlators_by_enumeration(params)
print(" M   H (det)            H (reduction)      H (monodromy)      G (det)")
for m in range(1, n + 1):
    h = complex(determinant.h_det(params, m).value).real
    h_red = complex(determinant.h_reduction(params, m).value).real
    h_op = qism.h_via_monodromy(params, m).real
    g = complex(determinant.g_det(params, m).value).real
    print(f"{m:2d}   {h:.15f}  {h_red:.15f}  {h_op:.15f}  {g:.15f}")

print("\nsum of H:", sum(tally.h).real)
print("G at the last row:", complex(determinant.g_det(params, n).value).real)
