"""
Expanding overpartition k-tuple series
======================================

Build OPT_k from its eta-quotient and compare with brute-force counting.
"""

from qclab.optk import opt_oracle, opt_series, overpartition_series

# the first few values of OPT_3; every one after the constant term is even
s = opt_series(3, 12)
print("OPT_3:", list(s.coeffs))

# the same numbers from enumerating tuples of odd-part overpartitions
print("oracle:", [opt_oracle(3, n) for n in range(12)])

# plain overpartitions, for comparison: there are 8 of 3
print("overpartitions:", list(overpartition_series(8).coeffs))

# large truncations are cheap when only a residue is needed
big = opt_series(3, 20000, modulus=144)
print("OPT_3(19999) mod 144 =", big[19999])
