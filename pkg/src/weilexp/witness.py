"""Upper-triangular witness matrices with a large nonvanishing power.

:func:`borel_witness` places generators on the diagonal and a "tail" of
the remaining generators (with multiplicity) on the superdiagonal, so that
a single monotone path through the matrix collects the product
``prod a_i^(p^e_i - 1)`` (or its rank-truncated analogue).  The claim is
always checked twice: by repeated squaring and by
:func:`path_expansion_entry`, which sums products along monotone index
words and never squares a matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, NotUpperTriangular, ProfileError, TrivialExtension, WitnessVanished
from .matrix import MatrixOverRing, mat_pow, p_power_exponent
from .profile import (
    ExtensionProfile,
    e_of,
    exactness_condition,
    m_invariant,
    m_r_invariant,
    tail_sum,
)
from .ring import LocalRing, RingElement

EXACT = "EXACT"
GENERIC = "GENERIC"


@dataclass(frozen=True)
class WitnessReport:
    matrix: MatrixOverRing
    case_tag: str
    claimed_nonzero_power: int
    q: int | None
    tau: int | None
    verified_exponent: int
    profile: ExtensionProfile
    r: int

    def to_dict(self) -> dict:
        return {
            "case": self.case_tag,
            "q": self.q,
            "tau": self.tau,
            "claimed_power": self.claimed_nonzero_power,
            "verified_exponent": self.verified_exponent,
            "matrix": self.matrix.to_json(),
        }


@dataclass
class WitnessCheck:
    """Outcome of :func:`verify_witness`; truthy iff every check passed."""

    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _tail(profile: ExtensionProfile, start: int) -> list:
    """Generator indices ``l, l, ..., start+1`` with multiplicity ``p^e_i - 1`` each."""
    out = []
    for i in range(profile.l, start, -1):
        out.extend([i] * (profile.p ** profile.exponents[i - 1] - 1))
    return out


def exact_pivot(profile: ExtensionProfile, r: int) -> int:
    """Largest ``q < r`` with ``sum_{i>q} (p^e_i - 1) >= q - 1``."""
    for q in range(r - 1, 0, -1):
        if tail_sum(profile, q) >= q - 1:
            return q
    raise ValueError(f"no pivot below r={r}")


def witness_layout(profile: ExtensionProfile, r: int) -> dict:
    """Positions of generators in the witness, as ``{(row, col): i}`` (0-based cells)."""
    if profile.l == 0:
        raise TrivialExtension("the trivial extension has no witness")
    if r < 1:
        raise ValueError("rank must be >= 1")
    cells = {}
    if exactness_condition(profile, r):
        q = exact_pivot(profile, r)
        tail = _tail(profile, q)
        for i in range(1, q + 1):
            cells[(i - 1, i - 1)] = i
        for i in range(1, min(q, len(tail)) + 1):
            cells[(i - 1, i)] = tail[i - 1]
        tau = 0
        if len(tail) > q:
            cells[(q, q)] = q + 1
            tau = len(tail) - q
        return {"case": EXACT, "cells": cells, "q": q, "tau": tau,
                "claimed": m_invariant(profile) - 1}
    tail = _tail(profile, r)
    for i in range(1, r + 1):
        cells[(i - 1, i - 1)] = i
    for i in range(1, r):
        cells[(i - 1, i)] = tail[i - 1]
    return {"case": GENERIC, "cells": cells, "q": None, "tau": None,
            "claimed": m_r_invariant(profile, r) - 1}


def borel_witness(profile: ExtensionProfile, r: int) -> WitnessReport:
    """Build and check the upper-triangular witness for ``(profile, r)``."""
    if not profile.is_modular:
        raise ProfileError("witnesses are built for profiles without relations")
    layout = witness_layout(profile, r)
    ring = LocalRing.of(profile)
    entries = np.zeros((r, r, ring.N), np.int64)
    for (i, j), g in layout["cells"].items():
        entries[i, j] = ring.gen(g).coeffs
    M = MatrixOverRing(ring, entries)
    claimed = layout["claimed"]
    if mat_pow(M, claimed).is_zero():
        raise WitnessVanished(
            f"{layout['case']} witness for {profile}, r={r} vanishes at power {claimed}"
        )
    return WitnessReport(
        matrix=M,
        case_tag=layout["case"],
        claimed_nonzero_power=claimed,
        q=layout["q"],
        tau=layout["tau"],
        verified_exponent=p_power_exponent(M),
        profile=profile,
        r=r,
    )


def path_expansion_column(M: MatrixOverRing, n: int, j: int) -> np.ndarray:
    """Column ``j`` of ``M^n`` by summing over monotone index words.

    Uses the recursion ``f(k, n) = sum_{k <= k' <= j} M[k, k'] f(k', n-1)``
    over words ending at ``j``.  Returns a ``(j + 1, N)`` coefficient array
    for rows ``0..j``.
    """
    if not M.upper_triangular():
        raise NotUpperTriangular("path expansion needs an upper-triangular matrix")
    ring = M.ring
    r = M.size
    if not 0 <= j < r:
        raise IndexOutOfRange(f"column {j} outside 0..{r - 1}")
    if n < 0:
        raise ValueError("n must be >= 0")
    E = M.entries[: j + 1, : j + 1]
    rows, cols = np.nonzero(np.triu(E.any(axis=-1)))
    f = np.zeros((j + 1, ring.N), np.int64)
    f[j, 0] = 1
    for _ in range(n):
        terms = ring.mul(E[rows, cols], f[cols])
        nxt = np.zeros_like(f)
        np.add.at(nxt, rows, terms)
        f = nxt % ring.p
        if not f.any():
            break
    return f


def path_expansion_entry(M: MatrixOverRing, n: int, i: int, j: int) -> RingElement:
    """Entry ``(i, j)`` (0-based) of ``M^n`` via monotone index words.

    Entries below the diagonal are zero for an upper-triangular ``M``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not (0 <= i < M.size and 0 <= j < M.size):
        raise IndexOutOfRange(f"entry ({i}, {j}) outside a {M.size}x{M.size} matrix")
    column = path_expansion_column(M, n, j)
    if i > j:
        return M.ring.zero()
    return RingElement(M.ring, column[i])


def path_power(M: MatrixOverRing, n: int) -> MatrixOverRing:
    """All of ``M^n`` from the path oracle."""
    r = M.size
    out = np.zeros_like(M.entries)
    for j in range(r):
        out[: j + 1, j] = path_expansion_column(M, n, j)
    return MatrixOverRing(M.ring, out)


def verify_witness(report: WitnessReport) -> WitnessCheck:
    """Re-check every claim a :class:`WitnessReport` makes."""
    fails = []
    M = report.matrix
    prof = report.profile
    r = report.r
    if M.size != r:
        fails.append(f"matrix size {M.size} != r={r}")
    if not M.upper_triangular():
        fails.append("matrix is not upper triangular")
    if not M.in_ideal():
        fails.append("matrix has entries outside the maximal ideal")
    expected_case = EXACT if exactness_condition(prof, r) else GENERIC
    if report.case_tag != expected_case:
        fails.append(f"case {report.case_tag} but the profile gives {expected_case}")
    expected_power = (
        m_invariant(prof) - 1 if report.case_tag == EXACT else m_r_invariant(prof, r) - 1
    )
    if report.claimed_nonzero_power != expected_power:
        fails.append(f"claimed power {report.claimed_nonzero_power} != {expected_power}")
    if report.verified_exponent != e_of(prof, r):
        fails.append(f"verified exponent {report.verified_exponent} != E={e_of(prof, r)}")
    if fails and not M.upper_triangular():
        return WitnessCheck(False, fails)
    n = report.claimed_nonzero_power
    if n >= 1:
        squared = mat_pow(M, n)
        walked = path_power(M, n)
        if squared != walked:
            fails.append(f"mat_pow and path expansion disagree at power {n}")
        if squared.is_zero():
            fails.append(f"M^{n} = 0 by repeated squaring")
        if walked.is_zero():
            fails.append(f"M^{n} = 0 by path expansion")
    if M.in_ideal():
        actual = p_power_exponent(M)
        if actual != report.verified_exponent:
            fails.append(f"recomputed exponent {actual} != recorded {report.verified_exponent}")
    return WitnessCheck(not fails, fails)
