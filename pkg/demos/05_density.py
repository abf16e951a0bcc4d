"""
How often is OPT_3(n) divisible?
================================
"""

from math import isqrt

from qclab.modforms import density_scan
from qclab.optk import opt_series

s = opt_series(3, 50001, modulus=64)

# mod 4 the exceptions are exactly the squares and twice the squares
for X in (1000, 10000, 50000):
    rep = density_scan(s, 4, X)
    print(X, rep.non_divisible, isqrt(X) + isqrt(X // 2))

# the divisible share drops as the power of 2 grows, at least this far out
for M in (8, 16, 32, 64):
    print(M, density_scan(s, M, 50000).proportion)
