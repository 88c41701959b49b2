"""Arithmetic data of a purely inseparable extension and its integer invariants.

An :class:`ExtensionProfile` records the characteristic ``p`` and the
non-increasing exponent sequence ``e_1 >= ... >= e_l`` of a normal
generating sequence.  Optional relations describe how ``a_i^(p^e_i)``
rewrites into lower generators; with no relations the profile is
*modular* (``a_i^(p^e_i) = 0``).

All logarithms are computed by exact comparison with powers of ``p``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import prod

from sympy import isprime

from ._text import parse_terms
from .errors import MalformedRelation, NonMonotoneExponents, NonPrimeCharacteristic


@dataclass(frozen=True)
class Relation:
    """``a_i^(p^e_i) = sum(coeff * a^nu)`` with ``nu`` supported below ``i``.

    ``i`` is 1-based, matching the generator names ``a1, a2, ...``.
    """

    i: int
    terms: tuple  # ((nu, coeff), ...), sorted, coefficients in 1..p-1


@dataclass(frozen=True)
class ExtensionProfile:
    p: int
    exponents: tuple = ()
    relations: tuple = field(default=(), compare=True)

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        object.__setattr__(self, "relations", _coerce_relations(self.relations, self))
        validate(self)

    @property
    def l(self) -> int:
        return len(self.exponents)

    @property
    def e(self) -> int:
        """Exponent of the extension (``e_1``, or 0 when trivial)."""
        return self.exponents[0] if self.exponents else 0

    @property
    def dims(self) -> tuple:
        return tuple(self.p**e for e in self.exponents)

    @property
    def degree(self) -> int:
        """``[k':k] = prod p^e_i``, the F_p-dimension of the model ring."""
        return prod(self.dims)

    @property
    def is_modular(self) -> bool:
        return not self.relations

    def relation(self, i: int):
        for rel in self.relations:
            if rel.i == i:
                return rel
        return None

    def to_dict(self) -> dict:
        d = {"p": self.p, "exponents": list(self.exponents)}
        if self.relations:
            d["relations"] = [
                {"i": rel.i, "terms": [[list(nu), c] for nu, c in rel.terms]}
                for rel in self.relations
            ]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ExtensionProfile":
        return cls(int(d["p"]), tuple(d.get("exponents", ())), tuple(d.get("relations", ())))

    @classmethod
    def from_json(cls, text: str) -> "ExtensionProfile":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        tail = "" if self.is_modular else f", {len(self.relations)} relation(s)"
        return f"p={self.p}, exps={self.exponents}{tail}"


def _coerce_relations(relations, profile) -> tuple:
    """Accept Relation objects, ``{"i", "terms"}`` dicts or ``(i, terms)`` pairs.

    ``terms`` may be a list of ``[exponents, coeff]`` pairs, a mapping or a
    string in the canonical text form.
    """
    if relations is None:
        return ()
    l, p = len(profile.exponents), profile.p
    out = []
    for rel in relations:
        if isinstance(rel, Relation):
            i, terms = rel.i, rel.terms
        elif isinstance(rel, dict):
            if "i" not in rel or "terms" not in rel:
                raise MalformedRelation(f"relation needs keys 'i' and 'terms': {rel!r}")
            i, terms = rel["i"], rel["terms"]
        else:
            try:
                i, terms = rel
            except (TypeError, ValueError):
                raise MalformedRelation(f"cannot interpret relation {rel!r}") from None
        try:
            if isinstance(terms, str):
                raw = parse_terms(terms, l)
            elif isinstance(terms, dict):
                raw = {tuple(int(k) for k in nu): int(c) for nu, c in terms.items()}
            else:
                raw = {}
                for nu, c in terms:
                    key = tuple(int(k) for k in nu)
                    raw[key] = raw.get(key, 0) + int(c)
        except (TypeError, ValueError) as exc:
            raise MalformedRelation(f"bad terms in relation {rel!r}: {exc}") from None
        cleaned = {}
        for nu, c in raw.items():
            if len(nu) != l:
                raise MalformedRelation(f"exponent vector {nu} has length {len(nu)}, expected {l}")
            if p >= 2 and c % p:
                cleaned[nu] = c % p
        try:
            i = int(i)
        except (TypeError, ValueError):
            raise MalformedRelation(f"relation index {i!r} is not an integer") from None
        out.append(Relation(i, tuple(sorted(cleaned.items()))))
    out.sort(key=lambda r: r.i)
    return tuple(out)


def validate(profile: ExtensionProfile) -> None:
    """Raise if ``profile`` violates any structural invariant."""
    p = profile.p
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NonPrimeCharacteristic(f"characteristic {p!r} is not prime")
    exps = profile.exponents
    if any(e < 1 for e in exps):
        raise NonMonotoneExponents(f"exponents must be >= 1, got {exps}")
    if any(a < b for a, b in zip(exps, exps[1:])):
        raise NonMonotoneExponents(f"exponents must be non-increasing, got {exps}")
    seen = set()
    for rel in profile.relations:
        i = rel.i
        if not 1 <= i <= len(exps):
            raise MalformedRelation(f"relation index {i} outside 1..{len(exps)}")
        if i in seen:
            raise MalformedRelation(f"duplicate relation for a{i}")
        seen.add(i)
        q = p ** exps[i - 1]
        for nu, _ in rel.terms:
            if not any(nu):
                raise MalformedRelation(f"relation for a{i} has a constant term")
            if any(nu[j] for j in range(i - 1, len(nu))):
                raise MalformedRelation(f"relation for a{i} mentions a generator of index >= {i}")
            if any(k % q for k in nu[: i - 1]):
                raise MalformedRelation(
                    f"relation for a{i}: exponents {nu} are not multiples of {q}"
                )


# -- invariants ---------------------------------------------------------------


def ceil_log(p: int, n: int) -> int:
    """Smallest ``s >= 0`` with ``p**s >= n``."""
    s, power = 0, 1
    while power < n:
        power *= p
        s += 1
    return s


def m_invariant(profile: ExtensionProfile) -> int:
    """Nilpotency index of the maximal ideal: ``sum(p^e_i - 1) + 1``."""
    return sum(profile.p**e - 1 for e in profile.exponents) + 1


def m_r_invariant(profile: ExtensionProfile, r: int) -> int:
    """``sum_{i<=r} p^e_i`` with ``e_i = 0`` past the end of the sequence."""
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    padded = list(profile.exponents[:r]) + [0] * max(0, r - profile.l)
    return sum(profile.p**e for e in padded)


def big_e_m(profile: ExtensionProfile) -> int:
    return ceil_log(profile.p, m_invariant(profile))


def little_e_mr(profile: ExtensionProfile, r: int) -> int:
    return ceil_log(profile.p, m_r_invariant(profile, r))


def e_of(profile: ExtensionProfile, r: int) -> int:
    """``min(E_m, e_mr)``: the exponent inside the upper-triangular subgroup."""
    return min(big_e_m(profile), little_e_mr(profile, r))


def tail_sum(profile: ExtensionProfile, start: int) -> int:
    """``sum_{i > start} (p^e_i - 1)`` (generators indexed from 1)."""
    return sum(profile.p**e - 1 for e in profile.exponents[start:])


def exactness_condition(profile: ExtensionProfile, r: int) -> bool:
    """True when the tail past rank ``r`` is short enough that ``E = E_m``."""
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    return tail_sum(profile, r) < r - 1


def ch_exponent_bound(profile: ExtensionProfile, r: int) -> int:
    """Smallest ``s`` with ``p^s >= r * p^e``; bounds every matrix exponent."""
    return ceil_log(profile.p, r * profile.p**profile.e)


# -- grids --------------------------------------------------------------------


def exponent_sequences(p: int, max_degree: int):
    """All non-increasing sequences ``(e_1, ...)`` with ``prod p^e_i <= max_degree``.

    Ordered by ``sum(e_i)``, then length, then lexicographically.
    """
    out = []

    def extend(prefix, budget, cap):
        out.append(tuple(prefix))
        for e in range(min(cap, _max_e(p, budget)), 0, -1):
            extend(prefix + [e], budget // p**e, e)

    extend([], max_degree, max_degree)
    out.sort(key=lambda s: (sum(s), len(s), s))
    return out


def _max_e(p, budget):
    e = 0
    while p ** (e + 1) <= budget:
        e += 1
    return e


def profile_grid(primes=(2, 3, 5), max_degree: int = 2**8, include_trivial: bool = True):
    """Modular profiles for every prime in ``primes`` up to the given degree."""
    grid = []
    for p in primes:
        for exps in exponent_sequences(p, max_degree):
            if exps or include_trivial:
                grid.append(ExtensionProfile(p, exps))
    return grid
