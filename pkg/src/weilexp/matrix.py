"""Square matrices over the local ring.

A :class:`MatrixOverRing` wraps an integer array of shape ``(r, r, N)``.
The ``stack_*`` functions take whole stacks ``(B, r, r, N)`` and are what
the sampling and exhaustive checks use; the single-matrix functions are
thin wrappers around them.
"""

from __future__ import annotations

import numpy as np

from ._random import derive_rng
from .errors import ExponentExceedsBound, NotInIdeal, ProfileMismatch, SizeMismatch
from .profile import ch_exponent_bound
from .ring import LocalRing, RingElement, as_ring

# Exhaustive enumeration of matrices is attempted up to this many matrices.
EXHAUSTIVE_LIMIT = 2**20


class MatrixOverRing:
    __slots__ = ("ring", "entries")

    def __init__(self, ring, entries):
        ring = as_ring(ring)
        arr = np.array(entries, dtype=np.int64) % ring.p
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != ring.N:
            raise SizeMismatch(f"expected an (r, r, {ring.N}) array, got {arr.shape}")
        if arr.shape[0] < 1:
            raise SizeMismatch("matrix size must be >= 1")
        arr.flags.writeable = False
        self.ring = ring
        self.entries = arr

    @classmethod
    def from_rows(cls, ring, rows) -> "MatrixOverRing":
        """Build from nested rows of ring elements, ints or element strings."""
        ring = as_ring(ring)
        r = len(rows)
        if any(len(row) != r for row in rows):
            raise SizeMismatch("rows must form a square matrix")
        arr = np.zeros((r, r, ring.N), np.int64)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                arr[i, j] = ring.element(v).coeffs
        return cls(ring, arr)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return RingElement(self.ring, self.entries[i, j])

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.size)] for i in range(self.size)]

    def _check(self, other):
        if not isinstance(other, MatrixOverRing):
            return NotImplemented
        if other.ring.profile != self.ring.profile:
            raise ProfileMismatch(f"{self.ring.profile} vs {other.ring.profile}")
        if other.size != self.size:
            raise SizeMismatch(f"size {self.size} vs {other.size}")
        return other

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return MatrixOverRing(self.ring, self.ring.matmul(self.entries, other.entries))

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return MatrixOverRing(self.ring, self.entries + other.entries)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return MatrixOverRing(self.ring, self.entries - other.entries)

    def __pow__(self, n: int):
        return mat_pow(self, n)

    def __eq__(self, other):
        if not isinstance(other, MatrixOverRing):
            return NotImplemented
        return self.ring.profile == other.ring.profile and np.array_equal(
            self.entries, other.entries
        )

    def __hash__(self):
        return hash((self.ring.profile, self.entries.tobytes()))

    def is_zero(self) -> bool:
        return not self.entries.any()

    def in_ideal(self) -> bool:
        return not self.entries[..., 0].any()

    def upper_triangular(self) -> bool:
        return not np.tril(self.entries.any(axis=-1), -1).any()

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows())

    def __repr__(self):
        return f"MatrixOverRing({self.ring.profile}, size={self.size})"

    def to_json(self) -> list:
        """Nested rows of term lists (see :meth:`RingElement.to_terms`)."""
        return [[x.to_terms() for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, ring, data) -> "MatrixOverRing":
        ring = as_ring(ring)
        return cls.from_rows(ring, [[ring.element(t) if t else 0 for t in row] for row in data])


def identity(ring, r: int) -> MatrixOverRing:
    ring = as_ring(ring)
    arr = np.zeros((r, r, ring.N), np.int64)
    arr[np.arange(r), np.arange(r), 0] = 1
    return MatrixOverRing(ring, arr)


def zero_matrix(ring, r: int) -> MatrixOverRing:
    ring = as_ring(ring)
    return MatrixOverRing(ring, np.zeros((r, r, ring.N), np.int64))


def mat_mul(A: MatrixOverRing, B: MatrixOverRing) -> MatrixOverRing:
    return A @ B


def is_zero(A: MatrixOverRing) -> bool:
    return A.is_zero()


def upper_triangular(A: MatrixOverRing) -> bool:
    return A.upper_triangular()


def mat_pow(A: MatrixOverRing, n: int) -> MatrixOverRing:
    if n < 0:
        raise ValueError("negative exponent")
    return MatrixOverRing(A.ring, stack_pow(A.ring, A.entries, n))


# -- stacks -------------------------------------------------------------------


def stack_identity(ring: LocalRing, shape, r: int):
    out = np.zeros(tuple(shape) + (r, r, ring.N), np.int64)
    out[..., np.arange(r), np.arange(r), 0] = 1
    return out


def stack_pow(ring: LocalRing, S, n: int):
    """``S**n`` for every matrix in a stack, by binary exponentiation."""
    S = np.asarray(S, np.int64)
    r = S.shape[-2]
    if n == 0:
        return stack_identity(ring, S.shape[:-3], r)
    result = None
    base = S
    while n:
        if n & 1:
            result = base if result is None else ring.matmul(result, base)
        n >>= 1
        if n:
            base = ring.matmul(base, base)
    return result


def stack_is_zero(S):
    S = np.asarray(S)
    return ~S.reshape(S.shape[:-3] + (-1,)).any(axis=-1)


def stack_p_power_exponents(ring: LocalRing, S, s_max: int):
    """Per matrix, the least ``s <= s_max`` with ``M^(p^s) = 0``.

    Successive ``p``-th powers are computed in place and vanished matrices
    are dropped from the working set.  Raises :class:`ExponentExceedsBound`
    if some matrix survives ``p^s_max``.
    """
    S = np.asarray(S, np.int64)
    out = np.zeros(S.shape[0], np.int64)
    live = np.flatnonzero(~stack_is_zero(S))
    X = S[live]
    step = 0
    while live.size:
        if step >= s_max:
            raise ExponentExceedsBound(
                f"{live.size} matrices still nonzero at p^{s_max}; first index {live[0]}"
            )
        X = stack_pow(ring, X, ring.p)
        step += 1
        out[live] = step
        keep = ~stack_is_zero(X)
        live, X = live[keep], X[keep]
    return out


def stack_char_poly(ring: LocalRing, S):
    """Characteristic polynomials ``det(lambda I - M)`` of a stack, division-free.

    Berkowitz recursion over trailing principal submatrices.  Returns an
    array ``(B, r + 1, N)`` of coefficients in ascending degree (the last
    one is the monic leading coefficient 1).
    """
    S = np.asarray(S, np.int64)
    lead = S.shape[:-3]
    r = S.shape[-2]
    N = ring.N
    one = np.zeros(lead + (N,), np.int64)
    one[..., 0] = 1
    # q holds coefficients highest degree first
    q = np.stack([one, -S[..., r - 1, r - 1, :] % ring.p], axis=-2)
    for k in range(r - 2, -1, -1):
        n = r - k
        a = S[..., k, k, :]
        row = S[..., k : k + 1, k + 1 :, :]  # (…, 1, n-1, N)
        col = S[..., k + 1 :, k : k + 1, :]  # (…, n-1, 1, N)
        sub = S[..., k + 1 :, k + 1 :, :]
        toeplitz = [one, -a % ring.p]
        v = col
        for _ in range(n - 1):
            toeplitz.append(-ring.matmul(row, v)[..., 0, 0, :] % ring.p)
            v = ring.matmul(sub, v)
        t = np.stack(toeplitz, axis=-2)  # (…, n+1, N)
        # new_i = sum_j t_{i-j} q_j, all pairs in one batched product
        ii, jj = np.array([(i, j) for i in range(n + 1) for j in range(min(i, n - 1) + 1)]).T
        terms = ring.mul(t[..., ii - jj, :], q[..., jj, :])
        new = np.zeros(lead + (n + 1, N), np.int64)
        for i in range(n + 1):
            new[..., i, :] = terms[..., ii == i, :].sum(axis=-2)
        q = new % ring.p
    return q[..., ::-1, :].copy()


def stack_char_poly_at(ring: LocalRing, S, coeffs=None):
    """Evaluate each matrix's characteristic polynomial at itself (Horner)."""
    S = np.asarray(S, np.int64)
    if coeffs is None:
        coeffs = stack_char_poly(ring, S)
    r = S.shape[-2]
    lead = S.shape[:-3]
    X = stack_identity(ring, lead, r)
    idx = np.arange(r)
    for t in range(r - 1, -1, -1):
        X = ring.matmul(X, S)
        X[..., idx, idx, :] += coeffs[..., t, None, :]
        X %= ring.p
    return X


def random_matrix_stack(
    ring: LocalRing,
    rng,
    count: int,
    r: int,
    triangular: bool = False,
    max_terms: int = 3,
    zero_fraction: float = 0.25,
):
    """Random matrices with entries in the maximal ideal.

    Each entry is zero with probability ``zero_fraction`` and otherwise a
    random ideal element with at most ``max_terms`` monomials.
    """
    S = ring.random_ideal_array(rng, (count, r, r), max_terms)
    S[rng.random((count, r, r)) < zero_fraction] = 0
    if triangular:
        S[:, np.tril_indices(r, -1)[0], np.tril_indices(r, -1)[1]] = 0
    return S


def count_matrices(ring: LocalRing, r: int, triangular: bool = False) -> int:
    cells = r * (r + 1) // 2 if triangular else r * r
    return (ring.p ** (ring.N - 1)) ** cells


def all_matrices(ring: LocalRing, r: int, triangular: bool = False, limit: int = EXHAUSTIVE_LIMIT):
    """Every matrix in ``Mat(r, m)`` (or its upper-triangular part) as one stack."""
    total = count_matrices(ring, r, triangular)
    if total > limit:
        raise ValueError(f"{total} matrices exceed the exhaustive limit {limit}")
    elems = ring.ideal_elements()
    cells = [(i, j) for i in range(r) for j in range(r) if not triangular or i <= j]
    grids = np.indices((elems.shape[0],) * len(cells)).reshape(len(cells), -1)
    S = np.zeros((grids.shape[1], r, r, ring.N), np.int64)
    for c, (i, j) in enumerate(cells):
        S[:, i, j] = elems[grids[c]]
    return S


# -- single-matrix operations ----------------------------------------------------


def p_power_exponent(M: MatrixOverRing, s_max: int | None = None) -> int:
    """Least ``s`` with ``M^(p^s) = 0``; the default cap is the Cayley-Hamilton bound."""
    if not M.in_ideal():
        raise NotInIdeal("matrix has an entry outside the maximal ideal")
    if s_max is None:
        s_max = ch_exponent_bound(M.ring.profile, M.size)
    return int(stack_p_power_exponents(M.ring, M.entries[None], s_max)[0])


def char_poly(M: MatrixOverRing) -> list:
    """``[f_0, ..., f_{r-1}, 1]`` with ``det(lambda I - M) = sum f_t lambda^t``."""
    coeffs = stack_char_poly(M.ring, M.entries)
    return [RingElement(M.ring, c) for c in coeffs]


def cayley_hamilton_check(M: MatrixOverRing) -> bool:
    return bool(stack_is_zero(stack_char_poly_at(M.ring, M.entries)))


def ch_bound_check(M: MatrixOverRing) -> bool:
    """Whether ``M^(r p^e) = 0``."""
    if not M.in_ideal():
        raise NotInIdeal("matrix has an entry outside the maximal ideal")
    n = M.size * M.ring.p ** M.ring.profile.e
    return mat_pow(M, n).is_zero()


def sample_max_exponent(
    ring,
    r: int,
    trials: int,
    seed: int,
    triangular_only: bool = False,
    max_terms: int = 3,
    exhaustive: bool = False,
) -> int:
    """Largest p-power exponent over sampled (or, if requested and feasible, all) matrices."""
    ring = as_ring(ring)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    s_max = ch_exponent_bound(ring.profile, r)
    if exhaustive and count_matrices(ring, r, triangular_only) <= EXHAUSTIVE_LIMIT:
        S = all_matrices(ring, r, triangular_only)
    else:
        rng = derive_rng(seed, "sample_max_exponent", r, int(triangular_only))
        S = random_matrix_stack(ring, rng, trials, r, triangular_only, max_terms)
    best = 0
    for lo in range(0, S.shape[0], 4096):
        best = max(best, int(stack_p_power_exponents(ring, S[lo : lo + 4096], s_max).max()))
    return best
