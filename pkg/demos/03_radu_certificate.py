"""
A finite certificate for an infinite congruence
===============================================

OPT_2(8n+2) = 0 (mod 8) for every n follows from checking a handful of terms.
"""

import json

from qclab.radu import even_k_tuple, radu_verify, recheck_certificate

tup, r_prime = even_k_tuple(1, 1, 2)
cert = radu_verify(tup, r_prime, 8)

print("status:", cert.status)
print("P(t):", cert.p_t_set)
print("nu (formula):", cert.nu, " nu (closed form):", cert.nu_closed_form)
print("checked n <=", cert.checked_prefix, "values:", cert.prefix_values)

# the JSON form carries everything needed to re-run the check
text = cert.to_json()
print(json.loads(text)["gamma_checks"])
print("re-verified:", recheck_certificate(text))

# asking for too much is caught by the prefix check
print(radu_verify(tup, r_prime, 64).counterexample)
