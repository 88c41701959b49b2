"""SL2 in characteristic 2, where the exponent can exceed the GL bound by one."""
# %%
import numpy as np

from weilexp import (
    ExtensionProfile,
    LocalRing,
    MatrixOverRing,
    closed_form_power,
    mat_pow,
    sl2_borel_witness,
    sl2_full_witness,
    sl2_sample_check,
)

ring = LocalRing.of(ExtensionProfile(2, (2, 1)))
M = MatrixOverRing(ring, ring.random_array(np.random.default_rng(0), (2, 2)))
for s in range(4):
    assert closed_form_power(M, s) == mat_pow(M, 2**s)
print("closed form agrees with squaring for s = 0..3")

# %% equal leading exponents: the full witness survives one more squaring
for exps in [(1, 1), (2, 2), (2, 1)]:
    prof = ExtensionProfile(2, exps)
    full = sl2_full_witness(prof)
    borel = sl2_borel_witness(prof)
    print(exps, "borel", borel.exponent, " full", full.exponent, " nonzero at probe:", full.nonzero_at_probe)

# %% every triple (a, b, c) in a small ideal, then a sampled larger profile
for exps in [(1, 1, 1), (2, 2)]:
    res = sl2_sample_check(ExtensionProfile(2, exps), trials=1000, exhaustive=True)
    kind = "exhaustive" if res.exhaustive else "sampled"
    print(exps, kind, res.cases, "cases, max", res.max_exponent, "predicted", res.e_hat, "ok:", res.ok)
