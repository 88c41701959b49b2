"""Extension profiles and the numbers attached to them.

A profile is a prime ``p`` and a non-increasing exponent list.  From it we
get ``m``, the partial sums ``m_r`` and the two logarithms whose minimum is
the exponent ``E`` for rank ``r``.
"""
# %%
from weilexp import (
    ExtensionProfile,
    big_e_m,
    e_of,
    exactness_condition,
    little_e_mr,
    m_invariant,
    m_r_invariant,
    profile_grid,
)

prof = ExtensionProfile(2, (2, 1))
print(prof, "m =", m_invariant(prof), "E_m =", big_e_m(prof))

# %% one row per rank: which of the two logs wins depends on the tail
for r in range(1, 5):
    print(
        f"r={r}  m_r={m_r_invariant(prof, r):2d}  e_mr={little_e_mr(prof, r)}  "
        f"E={e_of(prof, r)}  condition={exactness_condition(prof, r)}"
    )

# %% the standard grid, and how often E_m is the answer at rank 2
grid = profile_grid(primes=(2, 3, 5), max_degree=2**8)
hits = sum(exactness_condition(q, 2) for q in grid)
print(len(grid), "profiles;", hits, "satisfy the condition at r=2")

# %% profiles with relations a_i^(p^e_i) = R_i
rel = ExtensionProfile(2, (2, 1), [(2, "a1^2")])
print(rel, "modular:", rel.is_modular, "m =", m_invariant(rel))
