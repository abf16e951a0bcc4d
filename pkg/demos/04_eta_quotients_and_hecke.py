"""
Eta-quotients as modular forms
==============================
"""

from qclab.modforms import (
    EtaQuotientForm,
    bpk_form,
    chi1,
    ck_form,
    eta8_16_series,
    hecke_tp,
    is_holomorphic,
    weight_and_conditions,
)

# eta(8z) eta(16z) has weight 1 on level 128
f = EtaQuotientForm(128, {8: 1, 16: 1})
print(weight_and_conditions(f))

# its q-expansion lives on exponents 1 mod 8
s = eta8_16_series(200)
print([n for n in range(200) if s[n]])

# T_3 kills it
print(hecke_tp(s, 3, 1, chi1).is_zero())

# C_k is holomorphic at every cusp of level 768
for k in (1, 4, 8):
    ok, table = is_holomorphic(ck_form(k))
    print(k, ok, min(table.values()))

# B_{5,1}: fine on the divisors of 768, not at cusps whose denominator involves 5
rep = bpk_form(5, 1, 1)
print(rep.u, rep.form.level, rep.ok, rep.full_ok)
