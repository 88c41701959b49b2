"""Upper triangular matrices that attain the exponent ``E``."""
# %%
from weilexp import ExtensionProfile, borel_witness, mat_pow, path_expansion_entry, verify_witness

for exps, r in [((1, 1), 2), ((1, 1, 1), 2), ((2, 2, 2), 3)]:
    rep = borel_witness(ExtensionProfile(2, exps), r)
    print(exps, "r =", r, rep.case_tag, "exponent", rep.verified_exponent, "checks:", bool(verify_witness(rep)))

# %% the witness and its last nonzero power
rep = borel_witness(ExtensionProfile(2, (2, 2, 2)), 3)
M = rep.matrix
print(M)
n = 2 ** (rep.verified_exponent - 1)
print(f"top entry of M^{n}:", mat_pow(M, n).rows()[0][2])

# %% the same entry as a sum over paths in the index graph
print("path expansion:     ", path_expansion_entry(M, n, 0, 2))
