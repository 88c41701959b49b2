"""Matrices over the local ring: characteristic polynomials and p-power exponents."""
# %%
import numpy as np

from weilexp import (
    ExtensionProfile,
    LocalRing,
    MatrixOverRing,
    cayley_hamilton_check,
    ch_bound_check,
    char_poly,
    e_of,
    mat_pow,
    p_power_exponent,
    sample_max_exponent,
)

prof = ExtensionProfile(2, (1, 1))
ring = LocalRing.of(prof)
rng = np.random.default_rng(3)
M = MatrixOverRing(ring, ring.random_ideal_array(rng, (3, 3)))
print(M)

# %% Berkowitz, no division needed
print("char poly coefficients:", [str(c) for c in char_poly(M)])
print("Cayley-Hamilton holds:", cayley_hamilton_check(M), " CH bound holds:", ch_bound_check(M))

# %% smallest s with M^(p^s) = 0
s = p_power_exponent(M)
print("exponent:", s, " M^(2^s) zero:", mat_pow(M, 2**s).is_zero())

# %% the largest exponent over random matrices never exceeds E, and usually reaches it
for r in (1, 2, 3):
    best = sample_max_exponent(ring, r, trials=500, seed=0)
    print(f"r={r}: sampled max {best}, E = {e_of(prof, r)}")
