"""The property suite behind ``weilexp verify``.

Each property is a function ``(config) -> PropertyResult``.  Randomness is
drawn from streams derived from ``config.seed`` and the property name, so
reports are reproducible and independent of execution order.  Reports
hold no timings, only data, which keeps them byte-identical across runs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from ._random import derive_rng
from .errors import ExponentExceedsBound, WeilexpError
from .matrix import (
    MatrixOverRing,
    all_matrices,
    count_matrices,
    random_matrix_stack,
    stack_char_poly_at,
    stack_is_zero,
    stack_p_power_exponents,
    stack_pow,
)
from .predict import cross_validate, gl, predict
from .profile import (
    ExtensionProfile,
    ch_exponent_bound,
    e_of,
    m_invariant,
    m_r_invariant,
    profile_grid,
)
from .ring import (
    LocalRing,
    RingElement,
    frobenius_pow,
    ideal_nilpotency_index,
    invert_unit,
    normalize,
    product_vanishes,
    subalgebra_membership,
)
from .sl2 import (
    sl2_borel_witness,
    sl2_full_witness,
    sl2_sample_check,
    stack_closed_form_power,
)
from .witness import borel_witness, path_power, verify_witness

PASS = "pass"
FAIL = "fail"


@dataclass
class SuiteConfig:
    primes: tuple = (2, 3)
    max_degree: int = 2**8
    ranks: tuple = (1, 2, 3, 4)
    trials: int = 16
    seed: int = 0
    exhaustive: bool = False
    profiles: tuple | None = None  # explicit profiles override the grid
    negate: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.ranks or min(self.ranks) < 1:
            raise ValueError("ranks must be >= 1")
        self.seed = int(self.seed) % 2**64
        self.ranks = tuple(sorted(set(int(r) for r in self.ranks)))

    def grid(self) -> list:
        if self.profiles is not None:
            return list(self.profiles)
        return profile_grid(primes=self.primes, max_degree=self.max_degree)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        d["ranks"] = list(self.ranks)
        d["profiles"] = None if self.profiles is None else [p.to_dict() for p in self.profiles]
        return d


@dataclass
class PropertyResult:
    property: str
    status: str
    cases: int
    seed: int
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return asdict(self)


class _Tally:
    """Counts cases and keeps the first few failures."""

    def __init__(self, name, seed, keep=5):
        self.name, self.seed, self.keep = name, seed, keep
        self.cases = 0
        self.failures = []
        self.notes = []

    def check(self, ok, detail, n=1):
        self.cases += n
        if not ok and len(self.failures) < self.keep:
            self.failures.append(detail)
        return ok

    def result(self):
        failed = bool(self.failures)
        return PropertyResult(
            self.name, FAIL if failed else PASS, self.cases, self.seed,
            self.failures if failed else self.notes,
        )


def _modular(profiles):
    return [p for p in profiles if p.is_modular]


def _label(prof, r=None):
    text = f"p={prof.p} exps={list(prof.exponents)}"
    return text if r is None else f"{text} r={r}"


# -- ring properties ------------------------------------------------------------


def prop_ring_axioms(cfg: SuiteConfig) -> PropertyResult:
    """Associativity, commutativity, distributivity, units, freshman's dream."""
    t = _Tally("ring_axioms", cfg.seed)
    for prof in cfg.grid():
        ring = LocalRing.of(prof)
        rng = derive_rng(cfg.seed, "ring_axioms", prof.p, prof.exponents)
        x, y, z = (ring.random_array(rng, (cfg.trials,)) for _ in range(3))
        mul, p = ring.mul, ring.p
        checks = {
            "associative": np.array_equal(mul(mul(x, y), z), mul(x, mul(y, z))),
            "commutative": np.array_equal(mul(x, y), mul(y, x)),
            "distributive": np.array_equal(mul(x, (y + z) % p), (mul(x, y) + mul(x, z)) % p),
            "unit": np.array_equal(mul(x, ring.one().coeffs), x % p),
            "freshman": np.array_equal(
                ring.power((x + y) % p, p), (ring.power(x, p) + ring.power(y, p)) % p
            ),
        }
        for name, ok in checks.items():
            t.check(ok, f"{name} fails on {_label(prof)}", cfg.trials)
    return t.result()


def prop_frobenius(cfg: SuiteConfig) -> PropertyResult:
    """``frobenius_pow(x, s) == x ** p^s`` for ``s <= e + 2``."""
    t = _Tally("frobenius_coherence", cfg.seed)
    for prof in cfg.grid():
        ring = LocalRing.of(prof)
        rng = derive_rng(cfg.seed, "frobenius", prof.p, prof.exponents)
        xs = ring.random_ideal_array(rng, (min(cfg.trials, 8),))
        xs[0] = ring.random_array(rng)  # one element outside the ideal as well
        for s in range(prof.e + 3):
            direct = ring.power(xs, prof.p**s)
            for x, want in zip(xs, direct):
                got = frobenius_pow(RingElement(ring, x), s).coeffs
                t.check(np.array_equal(got, want), f"{_label(prof)} s={s} x={x.tolist()}")
    return t.result()


def prop_units(cfg: SuiteConfig) -> PropertyResult:
    t = _Tally("invert_unit", cfg.seed)
    for prof in cfg.grid():
        ring = LocalRing.of(prof)
        rng = derive_rng(cfg.seed, "invert_unit", prof.p, prof.exponents)
        xs = ring.random_ideal_array(rng, (min(cfg.trials, 8),))
        xs[:, 0] = rng.integers(1, prof.p, size=xs.shape[0])
        for x in xs:
            u = RingElement(ring, x)
            t.check(u * invert_unit(u) == ring.one(), f"{_label(prof)} x={u}")
    return t.result()


def prop_ideal_nilpotency(cfg: SuiteConfig) -> PropertyResult:
    """The ideal's nilpotency index is ``m``, witnessed by ``prod a_i^(p^e_i - 1)``."""
    t = _Tally("ideal_nilpotency", cfg.seed)
    for prof in _modular(cfg.grid()):
        ring = LocalRing.of(prof)
        m = m_invariant(prof)
        expected = m - 1 if cfg.negate else m  # --selftest-negate injects this fault
        got = ideal_nilpotency_index(ring)
        t.check(got == expected, f"{_label(prof)}: index {got}, expected {expected}")
        top = normalize(ring, {tuple(d - 1 for d in ring.dims): 1})
        t.check(not top.is_zero(), f"{_label(prof)}: top monomial vanishes")
    return t.result()


def random_product_instances(ring, rng, count: int):
    """Random ``(d, elements, powers)`` with ``sum f_i >= m_d - d + 1``.

    Returns ``d`` per instance, an elements array ``(count, l, N)`` (rows
    past ``d`` are unused) and powers ``(count, l)`` (zero past ``d``).
    """
    prof = ring.profile
    l = max(prof.l, 1)
    d = rng.integers(1, l + 1, size=count)
    elems = ring.random_ideal_array(rng, (count, l))
    powers = np.zeros((count, l), np.int64)
    for k in range(count):
        dk = int(d[k])
        need = m_r_invariant(prof, dk) - dk + 1 + int(rng.integers(0, 3))
        cut = np.sort(rng.integers(0, need + 1, size=dk - 1))
        powers[k, :dk] = np.diff(np.concatenate([[0], cut, [need]]))
    return d, elems, powers


def batched_products(ring, elems, powers):
    """``prod_i elems[:, i] ** powers[:, i]`` for a batch."""
    out = np.zeros(elems.shape[:1] + (ring.N,), np.int64)
    out[:, 0] = 1
    for i in range(elems.shape[1]):
        out = ring.mul(out, ring.power_each(elems[:, i], powers[:, i]))
    return out


def exhaustive_product_check(profile=ExtensionProfile(2, (1, 1))) -> bool:
    """Every pair ``x, y`` in the ideal: ``x^f1 y^f2 = 0`` whenever ``f1 + f2 = m_2 - 1``,
    and ``x^(p^e1) = 0`` for single elements."""
    ring = LocalRing.of(profile)
    E = ring.ideal_elements()
    if ring.power(E, m_r_invariant(profile, 1)).any():
        return False
    need = m_r_invariant(profile, 2) - 1
    for f1 in range(need + 1):
        left = ring.power(E, f1)[:, None]
        right = ring.power(E, need - f1)[None, :]
        if ring.mul(left, right).any():
            return False
    return True


def prop_product_criterion(cfg: SuiteConfig, per_profile: int | None = None) -> PropertyResult:
    """Products ``prod m_i^f_i`` with ``sum f_i >= m_d - d + 1`` vanish."""
    t = _Tally("product_criterion", cfg.seed)
    count = per_profile or cfg.trials
    for prof in cfg.grid():
        if prof.l == 0:
            continue
        ring = LocalRing.of(prof)
        rng = derive_rng(cfg.seed, "product_criterion", prof.p, prof.exponents)
        d, elems, powers = random_product_instances(ring, rng, count)
        prods = batched_products(ring, elems, powers)
        bad = np.flatnonzero(prods.any(axis=1))
        t.check(bad.size == 0, f"{_label(prof)}: {bad.size} nonzero products, powers {powers[bad[:1]].tolist()}", count)
        k = 0  # the per-element API agrees on one instance
        ok = product_vanishes(
            [RingElement(ring, elems[k, i]) for i in range(d[k])], powers[k, : d[k]]
        )
        t.check(ok, f"{_label(prof)}: product_vanishes disagrees")
    if cfg.exhaustive or cfg.profiles is None:
        t.check(exhaustive_product_check(), "exhaustive check fails on p=2 exps=[1, 1]", 16 * 16 * 4 + 16)
    return t.result()


def prop_subalgebra(cfg: SuiteConfig, per_index: int | None = None) -> PropertyResult:
    """``frobenius_pow(x, e_i)`` lands in the subalgebra generated by earlier ``a_j^(p^e_i)``."""
    t = _Tally("subalgebra_membership", cfg.seed)
    count = per_index or min(cfg.trials, 8)
    for prof in cfg.grid():
        ring = LocalRing.of(prof)
        for i in range(1, prof.l + 1):
            rng = derive_rng(cfg.seed, "subalgebra", prof.p, prof.exponents, i)
            for x in ring.random_ideal_array(rng, (count,)):
                y = frobenius_pow(RingElement(ring, x), prof.exponents[i - 1])
                t.check(subalgebra_membership(y, i), f"{_label(prof)} i={i} x={x.tolist()}")
    return t.result()


# -- matrices ---------------------------------------------------------------------


def prop_cayley_hamilton(cfg: SuiteConfig, per_cell: int | None = None) -> PropertyResult:
    """Sampled ideal matrices: Cayley-Hamilton, ``M^(r p^e) = 0`` and the p-power bound."""
    t = _Tally("cayley_hamilton_bound", cfg.seed)
    count = per_cell or cfg.trials
    for prof in cfg.grid():
        ring = LocalRing.of(prof)
        for r in cfg.ranks:
            rng = derive_rng(cfg.seed, "cayley_hamilton", prof.p, prof.exponents, r)
            S = random_matrix_stack(ring, rng, count, r)
            label = _label(prof, r)
            t.check(stack_is_zero(stack_char_poly_at(ring, S)).all(), f"{label}: CH fails", count)
            big = stack_pow(ring, S, r * prof.p**prof.e)
            t.check(stack_is_zero(big).all(), f"{label}: M^(r p^e) != 0")
            try:
                stack_p_power_exponents(ring, S, ch_exponent_bound(prof, r))
                t.check(True, "")
            except ExponentExceedsBound as exc:
                t.check(False, f"{label}: {exc}")
    return t.result()


def prop_witness_grid(cfg: SuiteConfig, per_cell: int | None = None) -> PropertyResult:
    """Witnesses verify with exponent ``E``; triangular samples never exceed ``E``."""
    t = _Tally("witness_grid", cfg.seed)
    count = per_cell or cfg.trials
    for prof in _modular(cfg.grid()):
        if prof.l == 0:
            continue
        ring = LocalRing.of(prof)
        for r in cfg.ranks:
            label = _label(prof, r)
            try:
                check = verify_witness(borel_witness(prof, r))
                t.check(bool(check), f"{label}: {check.failures}")
            except WeilexpError as exc:
                t.check(False, f"{label}: {type(exc).__name__}: {exc}")
            rng = derive_rng(cfg.seed, "triangular", prof.p, prof.exponents, r)
            S = random_matrix_stack(ring, rng, count, r, triangular=True)
            ex = stack_p_power_exponents(ring, S, ch_exponent_bound(prof, r))
            t.check(ex.max() <= e_of(prof, r), f"{label}: triangular exponent {ex.max()}", count)
    if cfg.exhaustive or cfg.profiles is None:
        ring = LocalRing.of(ExtensionProfile(2, (1,)))
        S = all_matrices(ring, 2)
        ex = stack_p_power_exponents(ring, S, 2)
        t.check(len(S) == 16 and ex.max() == 1, f"exhaustive p=2 exps=[1] r=2: max {ex.max()}", len(S))
    return t.result()


def prop_path_oracle(cfg: SuiteConfig) -> PropertyResult:
    """Path expansion agrees with repeated squaring on random triangular matrices."""
    t = _Tally("path_oracle", cfg.seed)
    for prof in cfg.grid():
        ring = LocalRing.of(prof)
        for r in cfg.ranks:
            rng = derive_rng(cfg.seed, "path_oracle", prof.p, prof.exponents, r)
            S = random_matrix_stack(ring, rng, min(cfg.trials, 4), r, triangular=True)
            m = m_invariant(prof)
            for M in S:
                n = int(rng.integers(1, m + 1))
                A = MatrixOverRing(ring, M)
                t.check(path_power(A, n) == A**n, f"{_label(prof, r)} n={n}")
    return t.result()


def prop_gl_exhaustive(cfg: SuiteConfig) -> PropertyResult:
    """Full matrix spaces where they are small: the maximum exponent is the prediction."""
    t = _Tally("gl_exhaustive", cfg.seed)
    for prof in _modular(cfg.grid()):
        ring = LocalRing.of(prof)
        for r in cfg.ranks:
            if prof.l == 0 or count_matrices(ring, r) > 2**16:
                continue
            S = all_matrices(ring, r)
            best = int(stack_p_power_exponents(ring, S, ch_exponent_bound(prof, r)).max())
            pred = predict(prof, gl(r))
            label = _label(prof, r)
            t.check(pred.contains(best), f"{label}: exhaustive max {best} vs {pred.to_dict()}", len(S))
            cv = cross_validate(prof, r, borel_witness(prof, r), best)
            t.check(bool(cv), f"{label}: {cv.checks}")
            if pred.exact is not None:
                t.check(best == pred.exact, f"{label}: exhaustive max {best} != exact {pred.exact}")
    return t.result()


# -- SL2 in characteristic 2 ----------------------------------------------------


def prop_sl2_closed_form(cfg: SuiteConfig, per_profile: int | None = None) -> PropertyResult:
    t = _Tally("sl2_closed_form", cfg.seed)
    count = per_profile or cfg.trials
    for prof in cfg.grid():
        if prof.p != 2:
            continue
        ring = LocalRing.of(prof)
        rng = derive_rng(cfg.seed, "sl2_closed_form", prof.exponents)
        S = ring.random_array(rng, (count, 2, 2))
        X = S
        for s in range(prof.e + 3):
            if s:
                X = ring.matmul(X, X)
            same = np.array_equal(stack_closed_form_power(ring, S, s), X)
            t.check(same, f"{_label(prof)} s={s}", count)
    return t.result()


def prop_sl2_dichotomy(cfg: SuiteConfig, per_profile: int | None = None) -> PropertyResult:
    t = _Tally("sl2_dichotomy", cfg.seed)
    count = per_profile or cfg.trials
    for prof in _modular(cfg.grid()):
        if prof.p != 2 or prof.l == 0:
            continue
        label = _label(prof)
        res = sl2_sample_check(prof, count, cfg.seed, exhaustive=True)
        t.check(res.ok, f"{label}: {res.offending[:1]}", res.cases)
        t.check(res.max_exponent == res.e_hat, f"{label}: max {res.max_exponent} != {res.e_hat}")
        borel = sl2_borel_witness(prof)
        t.check(borel.ok, f"{label}: borel {borel.to_dict()}")
        if prof.l >= 2:
            full = sl2_full_witness(prof)
            t.check(full.ok, f"{label}: full {full.to_dict()}")
            if prof.exponents[0] == prof.exponents[1]:
                t.check(borel.exponent < full.exponent, f"{label}: no Borel/full gap")
    return t.result()


# -- predictor ---------------------------------------------------------------------

GROUPS = (
    "SL2", "PGL2", "GL2", "SO(5)", "SO(6)", "SO(7)", "SO(8)", "Sp(4)", "Sp(6)", "Sp(8)",
    "SL(3)", "SL(4)", "SL(5)", "E6", "E7", "E8", "F4", "G2",
    "Adjoint(E6,6)", "SimplyConnected(B,3)", "Adjoint(C,3)", "SimplyConnected(D,4)",
)


def prop_predictor(cfg: SuiteConfig) -> PropertyResult:
    """All overlapping rules agree; GL predictions bracket witnesses and samples."""
    t = _Tally("predictor_coherence", cfg.seed)
    for prof in cfg.grid():
        for g in GROUPS + tuple(f"GL({r})" for r in range(1, 7)):
            try:
                pred = predict(prof, g)
                ok = pred.exact is None or pred.lower == pred.upper == pred.exact
                t.check(ok, f"{_label(prof)} {g}: {pred.to_dict()}")
            except WeilexpError as exc:
                t.check(False, f"{_label(prof)} {g}: {type(exc).__name__}: {exc}")
        if not prof.is_modular or prof.l == 0:
            continue
        ring = LocalRing.of(prof)
        for r in cfg.ranks:
            rng = derive_rng(cfg.seed, "predictor_sample", prof.p, prof.exponents, r)
            S = random_matrix_stack(ring, rng, cfg.trials, r)
            best = int(stack_p_power_exponents(ring, S, ch_exponent_bound(prof, r)).max())
            cv = cross_validate(prof, r, borel_witness(prof, r), best)
            t.check(bool(cv), f"{_label(prof, r)}: {[c for c in cv.checks if not c['ok']]}")
    return t.result()


PROPERTIES = (
    ("ring_axioms", prop_ring_axioms),
    ("frobenius_coherence", prop_frobenius),
    ("invert_unit", prop_units),
    ("ideal_nilpotency", prop_ideal_nilpotency),
    ("product_criterion", prop_product_criterion),
    ("subalgebra_membership", prop_subalgebra),
    ("cayley_hamilton_bound", prop_cayley_hamilton),
    ("witness_grid", prop_witness_grid),
    ("path_oracle", prop_path_oracle),
    ("gl_exhaustive", prop_gl_exhaustive),
    ("sl2_closed_form", prop_sl2_closed_form),
    ("sl2_dichotomy", prop_sl2_dichotomy),
    ("predictor_coherence", prop_predictor),
)


def run_suite(cfg: SuiteConfig, only=None) -> dict:
    """Run every property (or those named in ``only``) and build the report."""
    results = []
    for name, fn in PROPERTIES:
        if only is not None and name not in only:
            continue
        try:
            res = fn(cfg)
        except WeilexpError as exc:
            res = PropertyResult(name, FAIL, 0, cfg.seed, [f"{type(exc).__name__}: {exc}"])
        results.append(res.to_dict())
    return {"config": cfg.to_dict(), "results": results}


def report_ok(report: dict) -> bool:
    return all(r["status"] == PASS for r in report["results"])


def first_failure(report: dict):
    for r in report["results"]:
        if r["status"] != PASS:
            return r
    return None


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
