import dataclasses
from itertools import combinations_with_replacement

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilexp import (
    ExtensionProfile,
    LocalRing,
    MatrixOverRing,
    borel_witness,
    e_of,
    mat_pow,
    path_expansion_entry,
    profile_grid,
    verify_witness,
)
from weilexp.errors import IndexOutOfRange, NotUpperTriangular, ProfileError, TrivialExtension
from weilexp.matrix import random_matrix_stack
from weilexp.witness import EXACT, GENERIC, exact_pivot, path_power, witness_layout


def word_sum(M, n, i, j):
    """Sum over non-decreasing index words i = k0 <= k1 <= ... <= kn = j."""
    ring = M.ring
    total = ring.zero()
    if n == 0:
        return ring.one() if i == j else total
    for mids in combinations_with_replacement(range(i, j + 1), n - 1):
        word = (i,) + mids + (j,)
        term = ring.one()
        for a, b in zip(word, word[1:]):
            term = term * M[a, b]
        total = total + term
    return total


def test_exact_example():
    rep = borel_witness(ExtensionProfile(2, (1, 1)), 2)
    assert (rep.case_tag, rep.q, rep.tau) == (EXACT, 1, 0)
    assert rep.claimed_nonzero_power == 2
    assert rep.verified_exponent == 2
    assert [[str(x) for x in row] for row in rep.matrix.rows()] == [["a1", "a2"], ["0", "0"]]
    assert str(mat_pow(rep.matrix, 2)[0, 1]) == "a1*a2"
    assert verify_witness(rep)


def test_generic_example():
    rep = borel_witness(ExtensionProfile(2, (1, 1, 1)), 2)
    assert rep.case_tag == GENERIC and rep.q is None and rep.tau is None
    assert rep.claimed_nonzero_power == 3
    assert rep.verified_exponent == 2
    assert [[str(x) for x in row] for row in rep.matrix.rows()] == [["a1", "a3"], ["0", "a2"]]
    assert str(mat_pow(rep.matrix, 3)[0, 1]) == "a1*a2*a3"


def test_exact_example_with_tail():
    rep = borel_witness(ExtensionProfile(2, (2, 2, 2)), 3)
    assert (rep.case_tag, rep.q, rep.tau, rep.claimed_nonzero_power) == (EXACT, 2, 1, 9)
    assert [[str(x) for x in row] for row in rep.matrix.rows()] == [
        ["a1", "a3", "0"], ["0", "a2", "a3"], ["0", "0", "a3"],
    ]
    top = mat_pow(rep.matrix, 9)
    assert str(top[0, 2]) == "a1^3*a2^3*a3^3"
    assert rep.verified_exponent == 4 == e_of(rep.profile, 3)


def test_to_dict_shape():
    d = borel_witness(ExtensionProfile(2, (1, 1)), 2).to_dict()
    assert set(d) == {"case", "q", "tau", "claimed_power", "verified_exponent", "matrix"}
    assert d["matrix"][0][1] == [[[0, 1], 1]]


def test_path_expansion_example():
    ring = LocalRing.of(ExtensionProfile(2, (1, 1)))
    M = MatrixOverRing.from_rows(ring, [["a1", "a2"], [0, 0]])
    # indices are 0-based: entry (0, 1) of M^2
    assert str(path_expansion_entry(M, 2, 0, 1)) == "a1*a2"
    assert path_expansion_entry(M, 2, 1, 0).is_zero()
    assert path_expansion_entry(M, 0, 1, 1) == ring.one()
    with pytest.raises(IndexOutOfRange):
        path_expansion_entry(M, 2, 0, 2)


def test_path_expansion_needs_triangular():
    ring = LocalRing.of(ExtensionProfile(2, (1, 1)))
    M = MatrixOverRing.from_rows(ring, [[0, 0], ["a1", 0]])
    with pytest.raises(NotUpperTriangular):
        path_expansion_entry(M, 2, 0, 1)


def test_tampered_reports_fail():
    rep = borel_witness(ExtensionProfile(2, (1, 1)), 2)
    assert not verify_witness(dataclasses.replace(rep, claimed_nonzero_power=3))
    assert not verify_witness(dataclasses.replace(rep, verified_exponent=1))
    assert not verify_witness(dataclasses.replace(rep, case_tag=GENERIC))
    ring = rep.matrix.ring
    lower = MatrixOverRing.from_rows(ring, [["a1", 0], ["a2", 0]])
    check = verify_witness(dataclasses.replace(rep, matrix=lower))
    assert not check and "not upper triangular" in check.failures[0]


def test_witness_errors():
    with pytest.raises(TrivialExtension):
        borel_witness(ExtensionProfile(2, ()), 2)
    with pytest.raises(ProfileError):
        borel_witness(ExtensionProfile(2, (2, 1), [(2, "a1^2")]), 2)
    with pytest.raises(ValueError):
        witness_layout(ExtensionProfile(2, (1,)), 0)
    with pytest.raises(ValueError):
        exact_pivot(ExtensionProfile(2, (1,)), 1)


def test_grid_witnesses_verify():
    for prof in profile_grid(primes=(2, 3), max_degree=32, include_trivial=False):
        for r in (1, 2, 3, 4):
            rep = borel_witness(prof, r)
            check = verify_witness(rep)
            assert check, (prof, r, check.failures)
            assert rep.verified_exponent == e_of(prof, r)


profiles = st.sampled_from(
    [ExtensionProfile(2, (2, 1)), ExtensionProfile(3, (1, 1)), ExtensionProfile(2, (1, 1, 1))]
)


@settings(max_examples=40, deadline=None)
@given(profiles, st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_path_expansion_matches_words(profile, r, n, seed):
    ring = LocalRing.of(profile)
    M = MatrixOverRing(ring, random_matrix_stack(ring, np.random.default_rng(seed), 1, r, True)[0])
    P = path_power(M, n)
    assert P == mat_pow(M, n)
    i, j = 0, r - 1
    assert path_expansion_entry(M, n, i, j) == word_sum(M, n, i, j)
