import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilexp import (
    ExtensionProfile,
    LocalRing,
    RingElement,
    frobenius_pow,
    generator,
    ideal_nilpotency_index,
    invert_unit,
    m_invariant,
    nilpotency_index,
    normalize,
    parse_element,
    product_vanishes,
    profile_grid,
    random_ideal_element,
    subalgebra_membership,
)
from weilexp.errors import (
    DeskScaleExceeded,
    IndexOutOfRange,
    NotAUnit,
    NotInIdeal,
    NotNilpotent,
    ProfileMismatch,
)
from weilexp.ring import ideal_power_bases, row_basis_mod_p, subalgebra_basis


def oracle_mul(profile, x: dict, y: dict) -> dict:
    """Schoolbook product followed by rewriting until every exponent is in range."""
    p, dims = profile.p, profile.dims
    acc = {}
    for u, a in x.items():
        for v, b in y.items():
            w = tuple(i + j for i, j in zip(u, v))
            acc[w] = (acc.get(w, 0) + a * b) % p
    done = {}
    while acc:
        nu, c = acc.popitem()
        if c % p == 0:
            continue
        over = [i for i in range(len(nu)) if nu[i] >= dims[i]]
        if not over:
            done[nu] = (done.get(nu, 0) + c) % p
            continue
        i = over[-1]
        rel = profile.relation(i + 1)
        if rel is None:
            continue
        base = list(nu)
        base[i] -= dims[i]
        for w, c2 in rel.terms:
            key = tuple(b + k for b, k in zip(base, w))
            acc[key] = (acc.get(key, 0) + c * c2) % p
    return {nu: c for nu, c in done.items() if c}


def dense(ring, terms):
    v = np.zeros(ring.N, np.int64)
    for nu, c in terms.items():
        v[ring.index(nu)] = c
    return v


def random_terms(rng, profile, k=4):
    out = {}
    for _ in range(k):
        nu = tuple(int(rng.integers(0, d)) for d in profile.dims)
        out[nu] = int(rng.integers(1, profile.p))
    return out


RELATION_PROFILES = [
    ExtensionProfile(2, (2, 1), [(2, "a1^2")]),
    ExtensionProfile(3, (2, 1), [(2, "2*a1^3")]),
    ExtensionProfile(2, (1, 1, 1), [(2, "a1^2"), (3, "a1^2 + a2^2")]),
    ExtensionProfile(3, (2, 1), [(2, "a1^3 + 2*a1^6")]),
    ExtensionProfile(2, (3, 2), [(2, "a1^4")]),
]


@pytest.mark.parametrize(
    "profile",
    [ExtensionProfile(2, (6,)), ExtensionProfile(2, (3, 2, 1)), ExtensionProfile(3, (2, 1)),
     ExtensionProfile(5, (1, 1)), ExtensionProfile(2, (5, 5)), ExtensionProfile(3, (1,))]
    + RELATION_PROFILES,
    ids=str,
)
def test_dense_kernels_match_oracle(profile):
    ring = LocalRing.of(profile)
    rng = np.random.default_rng(7)
    for _ in range(20):
        x, y = random_terms(rng, profile), random_terms(rng, profile)
        want = dense(ring, oracle_mul(profile, x, y))
        assert np.array_equal(ring.mul(dense(ring, x), dense(ring, y)), want)


def test_kernels_agree_on_grid():
    rng = np.random.default_rng(3)
    for prof in profile_grid(max_degree=64):
        a = LocalRing.of(prof)
        b = LocalRing(prof, kernel="kronecker")
        x = a.random_array(rng, (6, 2, 2))
        y = a.random_array(rng, (6, 2, 2))
        assert np.array_equal(a.mul(x, y), b.mul(x, y)), prof
        assert np.array_equal(a.matmul(x, y), b.matmul(x, y)), prof
        if prof.degree <= 16:
            c = LocalRing(prof, kernel="table")
            assert np.array_equal(a.matmul(x, y), c.matmul(x, y)), prof


@pytest.mark.parametrize("exps", [(10,), (12,), (1,) * 10, (2,) * 4, (6, 1, 1), (6, 5)])
def test_spectral_long_axes(exps):
    # axes longer than the blocking threshold use padded FFTs
    prof = ExtensionProfile(2, exps)
    a, b = LocalRing.of(prof), LocalRing(prof, kernel="kronecker")
    rng = np.random.default_rng(11)
    x, y = a.random_array(rng, (3,)), a.random_array(rng, (3,))
    assert np.array_equal(a.mul(x, y), b.mul(x, y))
    assert np.array_equal(a.mul(x, x), b.mul(x, x))


def test_kernel_choice():
    assert LocalRing(ExtensionProfile(2, (1, 1))).kernel == "spectral"
    assert LocalRing(ExtensionProfile(2, (2, 1), [(2, "a1^2")])).kernel == "kronecker"
    with pytest.raises(ValueError):
        LocalRing(ExtensionProfile(2, (2, 1), [(2, "a1^2")]), kernel="spectral")
    with pytest.raises(ValueError):
        LocalRing(ExtensionProfile(2, (5,)), kernel="table")
    with pytest.raises(ValueError):
        LocalRing(ExtensionProfile(2, (1,)), kernel="fast")


def test_desk_scale_limit():
    with pytest.raises(DeskScaleExceeded):
        LocalRing(ExtensionProfile(2, (17,)))


def test_relation_rewrite(ring21_rel):
    a2 = parse_element(ring21_rel, "a2")
    assert str(a2**3) == "a1^2*a2"
    assert a2**3 == parse_element(ring21_rel, "a1^2*a2")


def test_generator_product_survives(ring11):
    a1, a2 = generator(ring11, 1), generator(ring11, 2)
    assert str(a1 * a2) == "a1*a2"
    assert not (a1 * a2).is_zero()


def test_freshman_dream_p3():
    ring = LocalRing.of(ExtensionProfile(3, (1,)))
    assert (1 + ring.gen(1)) ** 3 == ring.one()


def test_frobenius_examples():
    ring = LocalRing.of(ExtensionProfile(2, (2, 2)))
    x = parse_element(ring, "a1 + a2")
    assert frobenius_pow(x, 1) == parse_element(ring, "a1^2 + a2^2")
    assert frobenius_pow(x, 0) == x
    assert frobenius_pow(x, 2).is_zero()
    with pytest.raises(ValueError):
        frobenius_pow(x, -1)


def test_invert_unit():
    ring = LocalRing.of(ExtensionProfile(2, (1,)))
    u = 1 + ring.gen(1)
    assert invert_unit(u) == u
    ring3 = LocalRing.of(ExtensionProfile(3, (2, 1)))
    v = parse_element(ring3, "2 + a1 + a1^4*a2 + 2*a2")
    assert v * invert_unit(v) == 1
    with pytest.raises(NotAUnit):
        invert_unit(ring3.gen(2))


def test_nilpotency_index_examples():
    ring = LocalRing.of(ExtensionProfile(3, (2,)))
    assert nilpotency_index(ring.gen(1)) == 9
    ring11 = LocalRing.of(ExtensionProfile(2, (1, 1)))
    # (a1 + a2)^2 = a1^2 + a2^2 = 0 in characteristic 2
    x = ring11.gen(1) + ring11.gen(2)
    assert nilpotency_index(x) == 2
    assert oracle_mul(ring11.profile, x.terms, x.terms) == {}
    with pytest.raises(NotNilpotent):
        nilpotency_index(ring11.one())


@pytest.mark.parametrize(
    "profile, expected",
    [(ExtensionProfile(2, (1,)), 2), (ExtensionProfile(2, (1, 1)), 3),
     (ExtensionProfile(3, (1, 1)), 5), (ExtensionProfile(2, ()), 1)],
)
def test_ideal_nilpotency(profile, expected):
    assert ideal_nilpotency_index(LocalRing.of(profile)) == expected


def test_ideal_nilpotency_with_relation(ring21_rel):
    # the relation does not change the filtration by degree here
    assert ideal_nilpotency_index(ring21_rel) == m_invariant(ring21_rel.profile)


def test_ideal_power_bases_dimensions():
    ring = LocalRing.of(ExtensionProfile(2, (1, 1)))
    dims = [b.shape[0] for b in ideal_power_bases(ring)]
    assert dims == [3, 1]


def test_product_vanishes():
    ring = LocalRing.of(ExtensionProfile(2, (1, 1)))
    a1, a2 = ring.gen(1), ring.gen(2)
    assert product_vanishes([a1], [2])
    assert not product_vanishes([a1, a2], [1, 1])
    assert product_vanishes([a1 + a2, a2], [1, 2])
    with pytest.raises(NotInIdeal):
        product_vanishes([ring.one()], [3])
    with pytest.raises(ValueError):
        product_vanishes([a1], [1, 2])


def test_subalgebra_membership_examples():
    ring = LocalRing.of(ExtensionProfile(2, (2, 1)))
    a1, a2 = ring.gen(1), ring.gen(2)
    assert subalgebra_membership(a1**2, 2)
    assert not subalgebra_membership(a1, 2)
    assert not subalgebra_membership(a1 * a2, 2)
    assert not subalgebra_membership(a1, 1)  # the subalgebra for i = 1 is F_p
    assert subalgebra_membership(ring.zero(), 1)
    with pytest.raises(IndexOutOfRange):
        subalgebra_membership(a1, 3)


def test_subalgebra_membership_with_relation(ring21_rel):
    a1, a2 = ring21_rel.gen(1), ring21_rel.gen(2)
    assert subalgebra_membership(frobenius_pow(a1 + a2, 1), 2)
    assert not subalgebra_membership(a2, 2)
    assert subalgebra_basis(ring21_rel, 2).shape[0] == 1


def test_row_basis_mod_p():
    rows = [[1, 2, 0], [2, 4, 0], [0, 0, 1], [1, 2, 1]]
    basis = row_basis_mod_p(rows, 5)
    assert basis.shape == (2, 3)
    assert np.array_equal(basis, [[1, 2, 0], [0, 0, 1]])
    assert row_basis_mod_p(np.zeros((0, 3)), 2).shape == (0, 3)


def test_text_round_trip(ring11):
    x = parse_element(ring11, "a1*a2 + a2 + 1")
    assert str(x) == "a1*a2 + a2 + 1"
    assert parse_element(ring11, str(x)) == x
    assert ring11.element(x.to_terms()) == x
    assert ring11.element([]) == ring11.zero()
    assert ring11.element([1, 0, 0, 1]) == parse_element(ring11, "1 + a1*a2")
    with pytest.raises(ValueError):
        ring11.element([1, 0])
    assert str(ring11.zero()) == "0"
    with pytest.raises(ValueError):
        parse_element(ring11, "a3")
    with pytest.raises(ValueError):
        parse_element(ring11, "a1 ++ a2")


def test_normalize_reduces_exponents(ring11):
    assert normalize(ring11, {(2, 0): 1}).is_zero()
    assert normalize(ring11, {(1, 1): 3}) == ring11.gen(1) * ring11.gen(2)


def test_profile_mismatch(ring11):
    other = LocalRing.of(ExtensionProfile(3, (1, 1)))
    with pytest.raises(ProfileMismatch):
        ring11.gen(1) + other.gen(1)


def test_random_ideal_element_is_seeded(ring11):
    x = random_ideal_element(ring11, 5)
    assert x == random_ideal_element(ring11, 5)
    assert x.in_ideal()


def test_elements_are_immutable(ring11):
    x = ring11.gen(1)
    with pytest.raises(ValueError):
        x.coeffs[0] = 1
    assert hash(x) == hash(ring11.gen(1))


small_profiles = st.sampled_from(
    [ExtensionProfile(2, (2, 1)), ExtensionProfile(3, (1, 1)), ExtensionProfile(5, (1,)),
     ExtensionProfile(2, (1, 1, 1)), ExtensionProfile(2, (2, 1), [(2, "a1^2")])]
)


def element(ring, data):
    return RingElement(ring, np.array(data[: ring.N] + [0] * max(0, ring.N - len(data))))


coeff_lists = st.lists(st.integers(0, 4), min_size=1, max_size=10)


@settings(max_examples=60, deadline=None)
@given(small_profiles, coeff_lists, coeff_lists, coeff_lists)
def test_ring_axioms(profile, xs, ys, zs):
    ring = LocalRing.of(profile)
    x, y, z = element(ring, xs), element(ring, ys), element(ring, zs)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x * ring.one() == x
    assert (x + y) ** ring.p == x**ring.p + y**ring.p


@settings(max_examples=60, deadline=None)
@given(small_profiles, coeff_lists, st.integers(0, 3))
def test_frobenius_matches_power(profile, xs, s):
    ring = LocalRing.of(profile)
    x = element(ring, xs)
    assert frobenius_pow(x, s) == x ** (ring.p**s)


@settings(max_examples=60, deadline=None)
@given(small_profiles, coeff_lists)
def test_ideal_elements_are_nilpotent_below_m(profile, xs):
    ring = LocalRing.of(profile)
    x = element(ring, xs) - element(ring, xs).constant_term()
    assert nilpotency_index(x) <= m_invariant(profile)
    assert (x ** m_invariant(profile)).is_zero()


@settings(max_examples=60, deadline=None)
@given(small_profiles, coeff_lists, st.integers(1, 3))
def test_subalgebra_property(profile, xs, i):
    ring = LocalRing.of(profile)
    if i > ring.l:
        return
    x = element(ring, xs) - element(ring, xs).constant_term()
    assert subalgebra_membership(frobenius_pow(x, profile.exponents[i - 1]), i)
