"""2x2 computations in characteristic 2.

For ``M = [[a, b], [c, d]]`` over a commutative ring of characteristic 2
and ``t = a + d``, the ``2^s``-th power has the closed form

    diagonal:      a^(2^s) + sum_{i<s} b^(2^i) c^(2^i) t^(2^s - 2^(i+1))   (same with d)
    off-diagonal:  b t^(2^s - 1),  c t^(2^s - 1)

An element ``I + M`` of SL_2 over the local ring with ``M`` in the ideal
satisfies ``a + d + ad + bc = 0``, so ``d = (1 + a)^(-1) (a + bc)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._random import derive_rng
from .errors import ExponentExceedsBound, ProfileError, TooFewGenerators, WrongCharacteristic
from .matrix import (
    MatrixOverRing,
    stack_is_zero,
    stack_p_power_exponents,
    stack_pow,
)
from .profile import ExtensionProfile
from .ring import LocalRing, as_ring

# Exhaustive (a, b, c) enumeration is used when the ideal has at most this many
# elements: 2^21 triples at the limit, which takes a few seconds.
EXHAUSTIVE_IDEAL_SIZE = 2**7
CHUNK = 2**16


def _need_char2(ring: LocalRing):
    if ring.p != 2:
        raise WrongCharacteristic(f"needs characteristic 2, got p={ring.p}")


def _need_modular(profile: ExtensionProfile):
    if not profile.is_modular:
        raise ProfileError("SL2 checks are built for profiles without relations")


def stack_closed_form_power(ring: LocalRing, S, s: int):
    """Closed-form ``M^(2^s)`` for a stack ``(B, 2, 2, N)`` of 2x2 matrices."""
    _need_char2(ring)
    S = np.asarray(S, np.int64)
    if s < 0:
        raise ValueError("s must be >= 0")
    a, b, c, d = S[..., 0, 0, :], S[..., 0, 1, :], S[..., 1, 0, :], S[..., 1, 1, :]
    # t2[j] = t^(2^j); t^(2^s - 2^(i+1)) is the product of t2[i+1..s-1]
    t2 = [(a + d) % 2]
    for _ in range(s - 1):
        t2.append(ring.mul(t2[-1], t2[-1]))
    one = np.zeros_like(a)
    one[..., 0] = 1
    suffix = one
    acc = np.zeros_like(a)
    bc = [ring.mul(b, c)]  # (bc)^(2^i)
    for _ in range(s - 1):
        bc.append(ring.mul(bc[-1], bc[-1]))
    for i in range(s - 1, -1, -1):
        acc = acc + ring.mul(bc[i], suffix)
        suffix = ring.mul(suffix, t2[i])
    a_n, d_n = a, d
    for _ in range(s):
        a_n, d_n = ring.mul(a_n, a_n), ring.mul(d_n, d_n)
    out = np.empty_like(S)
    out[..., 0, 0, :] = a_n + acc
    out[..., 1, 1, :] = d_n + acc
    out[..., 0, 1, :] = ring.mul(b, suffix)
    out[..., 1, 0, :] = ring.mul(c, suffix)
    return out % 2


def stack_sl2_exponents(ring: LocalRing, S, s_max: int):
    """Least ``s`` with ``M^(2^s) = 0`` per matrix, via the closed form.

    Same contract as :func:`stack_p_power_exponents` for 2x2 stacks, but
    each step costs a few ring products instead of a matrix product.
    """
    _need_char2(ring)
    S = np.asarray(S, np.int64)
    out = np.zeros(S.shape[0], np.int64)
    live = np.flatnonzero(~stack_is_zero(S))
    for s in range(1, s_max + 1):
        if not live.size:
            return out
        out[live] = s
        P = stack_closed_form_power(ring, S[live], s)
        live = live[~stack_is_zero(P)]
    if live.size:
        raise ExponentExceedsBound(
            f"{live.size} matrices still nonzero at 2^{s_max}; first index {live[0]}"
        )
    return out


def closed_form_power(M: MatrixOverRing, s: int) -> MatrixOverRing:
    """``M^(2^s)`` for a 2x2 matrix over a characteristic-2 ring."""
    if M.size != 2:
        raise ValueError("closed form is for 2x2 matrices")
    return MatrixOverRing(M.ring, stack_closed_form_power(M.ring, M.entries[None], s)[0])


def _inverse_one_plus(ring: LocalRing, a):
    """``(1 + a)^(-1)`` for ideal elements ``a`` in characteristic 2."""
    # (1 + a)(1 + a)(1 + a^2)(1 + a^4)... telescopes to 1 + a^(2^k) = 1 once a^(2^k) = 0
    inv = np.zeros_like(a)
    inv[..., 0] = 1
    power = a
    while power.any():
        one_plus = power.copy()
        one_plus[..., 0] += 1
        inv = ring.mul(inv, one_plus)
        power = ring.mul(power, power)
    return inv


def complete_sl2(ring: LocalRing, a, b, c):
    """The unique ``d`` with ``a + d + ad + bc = 0``; returns a ``(B, 2, 2, N)`` stack."""
    _need_char2(ring)
    a, b, c = (np.asarray(x, np.int64) for x in (a, b, c))
    d = ring.mul(_inverse_one_plus(ring, a), (a + ring.mul(b, c)) % 2)
    return np.stack([np.stack([a, b], axis=-2), np.stack([c, d], axis=-2)], axis=-3)


def determinant_defect(ring: LocalRing, S):
    """``a + d + ad + bc`` for each matrix; zero exactly when ``det(I + M) = 1``."""
    a, b, c, d = S[..., 0, 0, :], S[..., 0, 1, :], S[..., 1, 0, :], S[..., 1, 1, :]
    return (a + d + ring.mul(a, d) + ring.mul(b, c)) % 2


def predicted_sl2_exponent(profile: ExtensionProfile) -> int:
    """``e + 1`` when the two largest exponents agree (``l >= 2``), else ``e``."""
    ex = profile.exponents
    if len(ex) >= 2 and ex[0] == ex[1]:
        return ex[0] + 1
    return profile.e


@dataclass
class SL2Witness:
    kind: str
    matrix: MatrixOverRing
    determinant_ok: bool
    exponent: int
    probe_power: int
    nonzero_at_probe: bool
    expected_nonzero: bool
    expected_exponent: int | None = None

    @property
    def ok(self) -> bool:
        if self.expected_exponent is not None and self.exponent != self.expected_exponent:
            return False
        return self.determinant_ok and self.nonzero_at_probe == self.expected_nonzero

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": self.matrix.to_json(),
            "determinant_ok": self.determinant_ok,
            "exponent": self.exponent,
            "probe_power": self.probe_power,
            "nonzero_at_probe": self.nonzero_at_probe,
            "expected_nonzero": self.expected_nonzero,
            "expected_exponent": self.expected_exponent,
            "ok": self.ok,
        }


def _witness(kind, profile, a, b, c, d, probe_s, expected, expected_exponent=None):
    ring = LocalRing.of(profile)
    S = np.stack([np.stack([a, b]), np.stack([c, d])])[None] % 2
    det_ok = not determinant_defect(ring, S).any()
    exponent = int(stack_p_power_exponents(ring, S, profile.e + 2)[0])
    nonzero = not stack_is_zero(stack_pow(ring, S, 2**probe_s))[0]
    return SL2Witness(
        kind, MatrixOverRing(ring, S[0]), det_ok, exponent, 2**probe_s, nonzero, expected,
        expected_exponent,
    )


def sl2_borel_witness(profile: ExtensionProfile) -> SL2Witness:
    """Upper-triangular ``a = b = a_1``, ``c = 0``, ``d = a (1 + a)^(-1)``.

    Its exponent is ``e``: the probe checks ``M^(2^(e-1)) != 0``.
    """
    ring = LocalRing.of(profile)
    _need_char2(ring)
    _need_modular(profile)
    if profile.l < 1:
        raise TooFewGenerators("needs at least one generator")
    a = ring.gen(1).coeffs
    zero = np.zeros(ring.N, np.int64)
    d = complete_sl2(ring, a[None], a[None], zero[None])[0, 1, 1]
    return _witness("borel", profile, a, a, zero, d, profile.e - 1, True, profile.e)


def sl2_full_witness(profile: ExtensionProfile) -> SL2Witness:
    """``a = a_1 a_2``, ``b = a_1``, ``c = a_2``, ``d = 0``; probes ``M^(2^e1)``."""
    ring = LocalRing.of(profile)
    _need_char2(ring)
    _need_modular(profile)
    if profile.l < 2:
        raise TooFewGenerators(f"needs at least two generators, got {profile.l}")
    a1, a2 = ring.gen(1), ring.gen(2)
    zero = np.zeros(ring.N, np.int64)
    e1, e2 = profile.exponents[:2]
    return _witness(
        "full", profile, (a1 * a2).coeffs, a1.coeffs, a2.coeffs, zero, e1, e1 == e2,
        e1 + 1 if e1 == e2 else None,
    )


@dataclass
class SL2SampleResult:
    ok: bool
    e_hat: int
    max_exponent: int
    cases: int
    exhaustive: bool
    offending: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "e_hat": self.e_hat,
            "max_exponent": self.max_exponent,
            "cases": self.cases,
            "exhaustive": self.exhaustive,
            "offending": self.offending,
        }


def _sampled_triples(ring, trials, seed, include_witnesses):
    rng = derive_rng(seed, "sl2_sample", ring.profile.exponents)
    a, b, c = (ring.random_ideal_array(rng, (trials,)) for _ in range(3))
    if include_witnesses:
        extra = [(ring.gen(1).coeffs, ring.gen(1).coeffs, np.zeros(ring.N, np.int64))]
        if ring.l >= 2:
            g1, g2 = ring.gen(1), ring.gen(2)
            extra.append(((g1 * g2).coeffs, g1.coeffs, g2.coeffs))
        a = np.concatenate([a, [x[0] for x in extra]])
        b = np.concatenate([b, [x[1] for x in extra]])
        c = np.concatenate([c, [x[2] for x in extra]])
    return a, b, c


def _code_tables(ring: LocalRing):
    """Bit codes of every ring element with their product and inverse tables.

    Bit ``k`` of a code is the coefficient of monomial ``k``, so addition
    is XOR.  Only for small rings: the product table has ``4^N`` entries.
    """
    codes = np.arange(2**ring.N)
    bits = (codes[:, None] >> np.arange(ring.N)) & 1
    weights = 1 << np.arange(ring.N)
    prods = ring.mul(bits[:, None, :], bits[None, :, :])
    mul = (prods @ weights).astype(np.int64)
    inv = np.argmax(mul == 1, axis=1)  # only meaningful on units (odd codes)
    return bits, mul, inv


def _exhaustive_check(ring: LocalRing, e_hat: int, s_max: int):
    """Every ``(a, b, c)`` in the ideal, computed on bit codes."""
    bits, mul, inv = _code_tables(ring)
    ideal = np.arange(0, 2**ring.N, 2)  # constant bit clear
    a, b, c = (g.ravel() for g in np.meshgrid(ideal, ideal, ideal, indexing="ij"))
    bc = mul[b, c]
    d = mul[inv[a ^ 1], a ^ bc]
    bad_det = (a ^ d ^ mul[a, d] ^ bc) != 0
    exps = np.zeros(a.size, np.int64)
    live = np.flatnonzero(a | b | c | d)
    A, B, C, D = a[live], b[live], c[live], d[live]
    # squaring [[A, B], [C, D]] in characteristic 2
    for s in range(1, s_max + 1):
        if not live.size:
            break
        exps[live] = s
        t, bc = A ^ D, mul[B, C]
        A, B, C, D = mul[A, A] ^ bc, mul[B, t], mul[C, t], mul[D, D] ^ bc
        keep = (A | B | C | D) != 0
        live, A, B, C, D = live[keep], A[keep], B[keep], C[keep], D[keep]
    bad = np.flatnonzero(bad_det | (exps > e_hat) | np.isin(np.arange(a.size), live))
    offending = [
        {"index": int(k), "a": bits[a[k]].tolist(), "b": bits[b[k]].tolist(),
         "c": bits[c[k]].tolist(), "exponent": int(exps[k])}
        for k in bad[:5]
    ]
    return int(exps.max(initial=0)), offending, int(a.size)


def sl2_sample_check(
    profile: ExtensionProfile,
    trials: int = 1000,
    seed: int = 0,
    exhaustive: bool = False,
    include_witnesses: bool = True,
) -> SL2SampleResult:
    """Check ``(I + M)^(2^e_hat) = I`` on SL2 elements ``I + M`` with ``M`` in the ideal.

    Samples ``(a, b, c)``, or takes all triples when ``exhaustive`` and
    the ideal has at most ``EXHAUSTIVE_IDEAL_SIZE`` elements, completes ``d`` from the determinant condition and records
    the largest 2-power exponent seen.
    """
    ring = as_ring(profile)
    _need_char2(ring)
    _need_modular(ring.profile)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    e_hat = predicted_sl2_exponent(ring.profile)
    if exhaustive and ring.p ** (ring.N - 1) <= EXHAUSTIVE_IDEAL_SIZE:
        best, offending, cases = _exhaustive_check(ring, e_hat, ring.profile.e + 2)
        return SL2SampleResult(not offending, e_hat, best, cases, True, offending)
    a, b, c = _sampled_triples(ring, trials, seed, include_witnesses)
    offending = []
    best = 0
    for lo in range(0, len(a), CHUNK):
        S = complete_sl2(ring, a[lo : lo + CHUNK], b[lo : lo + CHUNK], c[lo : lo + CHUNK])
        bad_det = np.flatnonzero(determinant_defect(ring, S).any(axis=-1))
        exps = stack_sl2_exponents(ring, S, ring.profile.e + 2)
        bad_exp = np.flatnonzero(exps > e_hat)
        for k in sorted(set(bad_det) | set(bad_exp))[:5]:
            offending.append(
                {"index": int(lo + k), "a": S[k, 0, 0].tolist(), "b": S[k, 0, 1].tolist(),
                 "c": S[k, 1, 0].tolist(), "exponent": int(exps[k])}
            )
        best = max(best, int(exps.max(initial=0)))
    return SL2SampleResult(not offending, e_hat, best, len(a), False, offending)
