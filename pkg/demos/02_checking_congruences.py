"""
Checking congruences on arithmetic progressions
===============================================
"""

from qclab.congruence import run_claims, theorem_registry, verify_residue_structure

# every registered claim, theorem or conjecture
claims = theorem_registry()
print(len(claims), "claims registered")

# check the theorems for n <= 300
reports = run_claims([c for c in claims if c.kind == "theorem"], 300)
print(sum(r.passed for r in reports), "of", len(reports), "theorem claims pass")

# conjectures are only reported; the uncorrected 8n+4 line fails at i = 1
for r in run_claims([c for c in claims if c.id.startswith("even-classes-8n+4-uncorrected")], 300):
    print(r.tsv_row())

# residues of OPT_2 mod 8 follow odd squares, not "square or twice a square"
print(verify_residue_structure(1, 1, 2000).counterexample)
print(verify_residue_structure(1, 1, 2000, variant="odd_square").status)
