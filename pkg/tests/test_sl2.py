import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

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
from weilexp.errors import ProfileError, TooFewGenerators, WrongCharacteristic
from weilexp.matrix import stack_p_power_exponents
from weilexp.sl2 import (
    complete_sl2,
    determinant_defect,
    predicted_sl2_exponent,
    stack_closed_form_power,
    stack_sl2_exponents,
)


def P(*exps):
    return ExtensionProfile(2, exps)


def text(M):
    return [[str(x) for x in row] for row in M.rows()]


def test_closed_form_s0_is_identity_map():
    ring = LocalRing.of(P(2, 1))
    M = MatrixOverRing(ring, ring.random_array(np.random.default_rng(0), (2, 2)))
    assert closed_form_power(M, 0) == M


def test_closed_form_matches_squaring():
    ring = LocalRing.of(P(2, 1))
    rng = np.random.default_rng(1)
    for entries in ring.random_array(rng, (10, 2, 2)):
        M = MatrixOverRing(ring, entries)
        for s in (1, 2, 3):
            assert closed_form_power(M, s) == mat_pow(M, 2**s)


def test_closed_form_rejects_bad_input():
    ring = LocalRing.of(P(1))
    with pytest.raises(ValueError):
        closed_form_power(MatrixOverRing(ring, np.zeros((3, 3, 2))), 1)
    with pytest.raises(ValueError):
        stack_closed_form_power(ring, np.zeros((1, 2, 2, 2)), -1)
    ring3 = LocalRing.of(ExtensionProfile(3, (1,)))
    with pytest.raises(WrongCharacteristic):
        closed_form_power(MatrixOverRing(ring3, np.zeros((2, 2, 3))), 1)


def test_borel_witness_examples():
    w = sl2_borel_witness(P(1))
    assert text(w.matrix) == [["a1", "a1"], ["0", "a1"]]
    assert w.exponent == 1 and w.ok
    assert sl2_borel_witness(P(2)).exponent == 2
    assert sl2_borel_witness(P(2, 2)).exponent == 2


def test_full_witness_examples():
    w = sl2_full_witness(P(1, 1))
    assert text(w.matrix) == [["a1*a2", "a1"], ["a2", "0"]]
    assert text(mat_pow(w.matrix, 2)) == [["a1*a2", "0"], ["0", "a1*a2"]]
    assert w.exponent == 2 and w.ok

    w = sl2_full_witness(P(2, 2))
    # the (a1 a2)^2 term survives on the diagonal of M^4
    assert text(mat_pow(w.matrix, 4))[0][0] == "a1^3*a2^3 + a1^2*a2^2"
    assert w.nonzero_at_probe and w.exponent == 3

    w = sl2_full_witness(P(2, 1))
    assert mat_pow(w.matrix, 4).is_zero()
    assert not w.nonzero_at_probe and w.ok


def test_witnesses_lie_in_sl2():
    for exps in [(1,), (2, 2), (3, 1), (2, 1, 1)]:
        assert sl2_borel_witness(P(*exps)).determinant_ok
        if len(exps) >= 2:
            assert sl2_full_witness(P(*exps)).determinant_ok


def test_witness_errors():
    with pytest.raises(TooFewGenerators):
        sl2_full_witness(P(2))
    with pytest.raises(TooFewGenerators):
        sl2_borel_witness(P())
    with pytest.raises(WrongCharacteristic):
        sl2_borel_witness(ExtensionProfile(3, (1,)))
    with pytest.raises(ProfileError):
        sl2_borel_witness(ExtensionProfile(2, (2, 1), [(2, "a1^2")]))


@pytest.mark.parametrize("exps, e_hat", [((1,), 1), ((1, 1), 2), ((2, 1), 2), ((2, 2), 3), ((1, 1, 1), 2)])
def test_sample_check_examples(exps, e_hat):
    res = sl2_sample_check(P(*exps), trials=300, seed=0)
    assert res.ok and res.e_hat == e_hat == predicted_sl2_exponent(P(*exps))
    assert res.max_exponent == e_hat


def test_exhaustive_matches_matrix_products():
    # the bit-code enumeration against plain matrix products on all triples
    for exps in [(1,), (2,), (1, 1)]:
        prof = P(*exps)
        ring = LocalRing.of(prof)
        res = sl2_sample_check(prof, exhaustive=True)
        elems = ring.ideal_elements()
        idx = np.indices((len(elems),) * 3).reshape(3, -1)
        S = complete_sl2(ring, elems[idx[0]], elems[idx[1]], elems[idx[2]])
        assert not determinant_defect(ring, S).any()
        exps_direct = stack_p_power_exponents(ring, S, prof.e + 2)
        assert res.exhaustive and res.cases == len(S)
        assert res.max_exponent == exps_direct.max()


def test_exhaustive_scope():
    assert sl2_sample_check(P(3), exhaustive=True).exhaustive
    assert sl2_sample_check(P(1, 1, 1), exhaustive=True).cases == 128**3
    assert not sl2_sample_check(P(2, 2), trials=10, exhaustive=True).exhaustive


def test_sample_check_validation():
    with pytest.raises(ValueError):
        sl2_sample_check(P(1), trials=0)
    with pytest.raises(WrongCharacteristic):
        sl2_sample_check(ExtensionProfile(3, (1,)))


def test_sample_check_is_seeded():
    a = sl2_sample_check(P(2, 1), trials=50, seed=3).to_dict()
    assert a == sl2_sample_check(P(2, 1), trials=50, seed=3).to_dict()


profiles = st.sampled_from([P(1, 1), P(2, 1), P(2, 2), P(3, 1, 1), P(1, 1, 1, 1)])


@settings(max_examples=30, deadline=None)
@given(profiles, st.integers(0, 2**32 - 1))
def test_completed_matrices_have_determinant_one(profile, seed):
    ring = LocalRing.of(profile)
    rng = np.random.default_rng(seed)
    a, b, c = (ring.random_ideal_array(rng, (8,)) for _ in range(3))
    S = complete_sl2(ring, a, b, c)
    assert not determinant_defect(ring, S).any()
    e_hat = predicted_sl2_exponent(profile)
    assert (stack_sl2_exponents(ring, S, profile.e + 2) <= e_hat).all()


@settings(max_examples=30, deadline=None)
@given(profiles, st.integers(0, 2**32 - 1))
def test_closed_form_exponents_match_products(profile, seed):
    ring = LocalRing.of(profile)
    S = ring.random_ideal_array(np.random.default_rng(seed), (8, 2, 2))
    s_max = profile.e + 2
    assert np.array_equal(stack_sl2_exponents(ring, S, s_max), stack_p_power_exponents(ring, S, s_max))
