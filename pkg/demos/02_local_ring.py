"""Arithmetic in the truncated ring ``F_p[a_1..a_l]/(a_i^(p^e_i) - R_i)``."""
# %%
from weilexp import (
    ExtensionProfile,
    LocalRing,
    frobenius_pow,
    ideal_nilpotency_index,
    invert_unit,
    nilpotency_index,
    parse_element,
    random_ideal_element,
    subalgebra_membership,
)

ring = LocalRing.of(ExtensionProfile(3, (2, 1)))
print(ring.N, "basis monomials, kernel:", ring.kernel)

x = parse_element(ring, "a1 + 2*a2 + a1*a2")
print("x   =", x)
print("x^3 =", x**3)
print("nilpotency index of x:", nilpotency_index(x))

# %% the maximal ideal dies exactly at m
print("ideal nilpotency index:", ideal_nilpotency_index(ring))

# %% units invert; Frobenius pushes elements into smaller subalgebras
u = 1 + x
print("(1 + x)^-1 =", invert_unit(u), " check:", u * invert_unit(u))
y = x + random_ideal_element(ring, seed=7)
z = frobenius_pow(y, 1)
print("y =", y, " y^3 =", z, " in k_2:", subalgebra_membership(z, 2))

# %% a relation profile uses the Kronecker kernel
rel = LocalRing.of(ExtensionProfile(2, (2, 1), [(2, "a1^2")]))
a2 = parse_element(rel, "a2")
print(rel.kernel, "a2^2 =", a2**2, " a2^3 =", a2**3)
