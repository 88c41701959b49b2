"""Rule engine for the exponent of the unipotent radical of a Weil restriction.

Each rule maps ``(profile, group)`` to a bound interval, possibly exact.
Every matching rule is evaluated; overlapping rules must agree (their
intervals must intersect and exact values must coincide), and the
intersection is returned.  Rule ids:

``trivial``   the trivial extension, exponent 0
``gl1``       GL(1): exactly e
``gl_small``  GL(r) with 2 <= r <= p: e for a simple extension, else e + 1
``gl``        GL(r): e_of(r) <= . <= min(E_m, CH bound), exact E_m under the tail condition
``rank1``     GL2, PGL2, and SL2 away from p = 2: e for a simple extension, else e + 1
``sl2_char2`` SL2 at p = 2: e + 1 if e_1 = e_2 (l >= 2), else e
``simple``    simple groups of rank >= 2 under the characteristic gate: e_of(r) <= .,
              exact E_m under the tail condition
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InconsistentRules, UnknownFamily
from .profile import (
    ExtensionProfile,
    big_e_m,
    ch_exponent_bound,
    e_of,
    exactness_condition,
)

TYPES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class GroupSpec:
    """A split reductive group: ``family`` is one of GL, SL2, PGL2, GL2, SO, Sp,
    SimplyConnected, Adjoint.  ``n`` is the defining parameter for GL/SO/Sp
    (GL(n), SO(n), Sp(n) with n even)."""

    family: str
    n: int | None = None
    type: str | None = None
    rank: int = 1

    def __str__(self):
        if self.family in ("SimplyConnected", "Adjoint"):
            return f"{self.family}({self.type},{self.rank})"
        if self.n is not None:
            return f"{self.family}({self.n})"
        return self.family

    @property
    def is_gl(self) -> bool:
        return self.family == "GL"

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "type": self.type, "rank": self.rank}


def gl(r: int) -> GroupSpec:
    if r < 1:
        raise UnknownFamily(f"GL({r}) needs r >= 1")
    return GroupSpec("GL", r, "A", r)


def _simple(family: str, typ: str, rank: int) -> GroupSpec:
    if typ not in TYPES:
        raise UnknownFamily(f"unknown root system type {typ!r}")
    if typ in _FIXED_RANK and rank != _FIXED_RANK[typ]:
        raise UnknownFamily(f"type {typ} has rank {_FIXED_RANK[typ]}, not {rank}")
    if rank < _MIN_RANK.get(typ, 1):
        raise UnknownFamily(f"type {typ}{rank} is not a simple root system")
    if typ == "A" and rank == 1:
        return GroupSpec("SL2" if family == "SimplyConnected" else "PGL2", 2, "A", 1)
    return GroupSpec(family, None, typ, rank)


_PATTERN = re.compile(r"^\s*([A-Za-z]+)\s*(?:\(\s*([^)]*)\s*\)|(\d+))?\s*$")


def parse_group(text: str, rank: int | None = None) -> GroupSpec:
    """Parse strings such as ``GL(3)``, ``GL`` (with ``rank``), ``SL2``, ``Sp(8)``,
    ``SO(7)``, ``SL(4)``, ``E6``, ``SimplyConnected(B,3)`` or ``Adjoint(E7,7)``."""
    if isinstance(text, GroupSpec):
        return text
    m = _PATTERN.match(text or "")
    if not m:
        raise UnknownFamily(f"cannot parse group {text!r}")
    name, args, digits = m.group(1), m.group(2), m.group(3)
    args = [a.strip() for a in args.split(",")] if args else []
    key = name.upper()
    if key in ("E", "F", "G") and digits:
        key, digits = key + digits, None
    num = int(digits) if digits else (int(args[0]) if len(args) == 1 and args[0].isdigit() else None)
    if key == "GL":
        r = num if num is not None else rank
        if r is None:
            raise UnknownFamily("GL needs a rank, e.g. GL(3) or --rank 3")
        return gl(r)
    if key == "SL2" or (key == "SL" and num == 2):
        return GroupSpec("SL2", 2, "A", 1)
    if key == "PGL2" or (key == "PGL" and num == 2):
        return GroupSpec("PGL2", 2, "A", 1)
    if key == "SL":
        if num is None or num < 2:
            raise UnknownFamily("SL needs n >= 2, e.g. SL(3)")
        return _simple("SimplyConnected", "A", num - 1)
    if key == "SO":
        if num is None or num < 3:
            raise UnknownFamily("SO needs n >= 3")
        if num == 3:
            return GroupSpec("PGL2", 2, "A", 1)
        if num == 4:
            raise UnknownFamily("SO(4) is not simple")
        return GroupSpec("SO", num, "B" if num % 2 else "D", num // 2)
    if key == "SP":
        if num is None or num < 2 or num % 2:
            raise UnknownFamily("Sp needs an even n >= 2")
        if num == 2:
            return GroupSpec("SL2", 2, "A", 1)
        return GroupSpec("Sp", num, "C", num // 2)
    if key in _FIXED_RANK:
        return _simple("SimplyConnected", key, _FIXED_RANK[key])
    if key in ("SIMPLYCONNECTED", "ADJOINT"):
        if len(args) != 2 or not args[1].isdigit():
            raise UnknownFamily(f"{name} needs (type, rank)")
        family = "SimplyConnected" if key == "SIMPLYCONNECTED" else "Adjoint"
        return _simple(family, args[0].upper(), int(args[1]))
    raise UnknownFamily(f"unknown group family {name!r}")


@dataclass
class ExponentPrediction:
    lower: int | None = None
    upper: int | None = None
    exact: int | None = None
    citations: list = field(default_factory=list)
    applicable: bool = True
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "applicable": self.applicable,
            "reason": self.reason,
            "citations": [{"rule": r, "quote": q} for r, q in self.citations],
        }

    def contains(self, value: int) -> bool:
        if self.lower is not None and value < self.lower:
            return False
        if self.upper is not None and value > self.upper:
            return False
        return True


@dataclass(frozen=True)
class RuleResult:
    rule: str
    quote: str
    lower: int | None
    upper: int | None

    @property
    def exact(self):
        return self.lower if self.lower is not None and self.lower == self.upper else None


def _simple_ext_rule(rule, quote, profile):
    value = profile.e if profile.l == 1 else profile.e + 1
    return RuleResult(rule, quote, value, value)


def _gate(profile: ExtensionProfile, group: GroupSpec):
    """Characteristic hypotheses for rank >= 2 simple groups; returns a reason or None."""
    if group.type in ("B", "C", "D", "F4") and profile.p == 2 and group.family not in ("SO", "Sp"):
        return f"type {group.type} at p = 2 is covered only for SO(n) and Sp(2n), not {group}"
    if group.type == "E6" and profile.p == 3:
        return "E6 requires p != 3"
    return None


def matching_rules(profile: ExtensionProfile, group: GroupSpec):
    """All rules that apply, plus a reason when a rule was gated out."""
    out = []
    reason = None
    if profile.l == 0:
        return [RuleResult("trivial", "e(R) = 0 for k' = k", 0, 0)], None
    e = profile.e
    p = profile.p
    if group.is_gl:
        r = group.rank
        if r == 1:
            out.append(RuleResult("gl1", "e(R) = e for GL_1", e, e))
        if 2 <= r <= p:
            out.append(_simple_ext_rule("gl_small", "e(R) = e if simple, e+1 otherwise (2 <= r <= p)", profile))
        lo = e_of(profile, r)
        hi = min(big_e_m(profile), ch_exponent_bound(profile, r))
        if exactness_condition(profile, r):
            lo = hi = big_e_m(profile)
            out.append(RuleResult("gl", "E(k'/k,r) <= e(R) = E_m when the tail sum is < r-1", lo, hi))
        else:
            out.append(RuleResult("gl", "E(k'/k,r) <= e(R) <= min(E_m, ceil(e + log_p r))", lo, hi))
        if r == 2:
            out.append(_simple_ext_rule("rank1", "e(R) = e if simple, e+1 otherwise (GL_2, PGL_2)", profile))
    elif group.family == "PGL2" or (group.family == "SL2" and p != 2):
        out.append(_simple_ext_rule("rank1", "e(R) = e if simple, e+1 otherwise (GL_2, PGL_2, SL_2 with p != 2)", profile))
    elif group.family == "SL2":
        ex = profile.exponents
        value = e + 1 if len(ex) >= 2 and ex[0] == ex[1] else e
        out.append(RuleResult("sl2_char2", "e(R) = e+1 if e_1 = e_2, else e (SL_2, p = 2)", value, value))
    elif group.family in ("SO", "Sp", "SimplyConnected", "Adjoint"):
        reason = _gate(profile, group)
        if reason is None:
            r = group.rank
            if exactness_condition(profile, r):
                v = big_e_m(profile)
                out.append(RuleResult("simple", "e(R) = E(k'/k,r) = E_m when the tail sum is < r-1", v, v))
            else:
                out.append(RuleResult("simple", "e(R) >= E(k'/k,r)", e_of(profile, r), None))
    else:
        raise UnknownFamily(f"no rules for {group}")
    return out, reason


def predict(profile: ExtensionProfile, group) -> ExponentPrediction:
    """Combine every matching rule; raises :class:`InconsistentRules` on disagreement."""
    if isinstance(group, str):
        group = parse_group(group)
    rules, reason = matching_rules(profile, group)
    if not rules:
        return ExponentPrediction(applicable=False, reason=reason)
    lows = [x.lower for x in rules if x.lower is not None]
    highs = [x.upper for x in rules if x.upper is not None]
    lower = max(lows) if lows else None
    upper = min(highs) if highs else None
    if lower is not None and upper is not None and lower > upper:
        raise InconsistentRules(
            f"{profile} {group}: " + "; ".join(f"{x.rule}=[{x.lower},{x.upper}]" for x in rules)
        )
    exacts = {x.exact for x in rules if x.exact is not None}
    if len(exacts) > 1:
        raise InconsistentRules(f"{profile} {group}: exact values {sorted(exacts)}")
    exact = lower if lower is not None and lower == upper else None
    return ExponentPrediction(
        lower=lower,
        upper=upper,
        exact=exact,
        citations=[(x.rule, x.quote) for x in rules],
    )


@dataclass
class CrossCheck:
    ok: bool
    checks: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def cross_validate(profile: ExtensionProfile, r: int, witness_report=None, sample_result=None) -> CrossCheck:
    """Compare a GL(r) prediction with a witness report and a sampled maximum.

    ``sample_result`` is the largest observed exponent (an int) or a mapping
    with a ``max_exponent`` key.
    """
    pred = predict(profile, gl(r))
    checks = []

    def add(name, ok, detail):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})

    if witness_report is not None:
        from .witness import verify_witness

        w = witness_report.verified_exponent
        add("witness_verifies", bool(verify_witness(witness_report)), f"witness exponent {w}")
        add("lower <= witness", pred.lower is None or pred.lower <= w, f"{pred.lower} <= {w}")
        add("witness <= upper", pred.upper is None or w <= pred.upper, f"{w} <= {pred.upper}")
        if pred.exact is not None and witness_report.case_tag == "EXACT":
            add("witness == exact", w == pred.exact, f"{w} == {pred.exact}")
    if sample_result is not None:
        s = sample_result["max_exponent"] if isinstance(sample_result, dict) else int(sample_result)
        add("sample <= upper", pred.upper is None or s <= pred.upper, f"{s} <= {pred.upper}")
    return CrossCheck(all(c["ok"] for c in checks), checks)
