import importlib

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilexp import (
    ExtensionProfile,
    GroupSpec,
    big_e_m,
    borel_witness,
    cross_validate,
    e_of,
    gl,
    parse_group,
    predict,
)
from weilexp.errors import InconsistentRules, UnknownFamily
from weilexp.predict import matching_rules


def P(p, *exps):
    return ExtensionProfile(p, exps)


@pytest.mark.parametrize(
    "text, family, typ, rank",
    [
        ("GL(3)", "GL", "A", 3),
        ("SL2", "SL2", "A", 1),
        ("SL(2)", "SL2", "A", 1),
        ("PGL2", "PGL2", "A", 1),
        ("SO(3)", "PGL2", "A", 1),
        ("Sp(2)", "SL2", "A", 1),
        ("SL(4)", "SimplyConnected", "A", 3),
        ("SO(7)", "SO", "B", 3),
        ("SO(8)", "SO", "D", 4),
        ("Sp(8)", "Sp", "C", 4),
        ("E6", "SimplyConnected", "E6", 6),
        ("e8", "SimplyConnected", "E8", 8),
        ("G2", "SimplyConnected", "G2", 2),
        ("Adjoint(E7,7)", "Adjoint", "E7", 7),
        ("SimplyConnected(B, 3)", "SimplyConnected", "B", 3),
        ("Adjoint(A,1)", "PGL2", "A", 1),
    ],
)
def test_parse_group(text, family, typ, rank):
    g = parse_group(text)
    assert (g.family, g.type, g.rank) == (family, typ, rank)


def test_parse_gl_with_rank():
    assert parse_group("GL", rank=4) == gl(4)
    assert parse_group("GL2").family == "GL"
    assert str(parse_group("GL(2)")) == "GL(2)"
    assert str(parse_group("E6")) == "SimplyConnected(E6,6)"


@pytest.mark.parametrize(
    "text",
    ["GL", "GL(0)", "SO(4)", "SO(2)", "Sp(5)", "Foo", "Adjoint(E6,5)", "Adjoint(B,1)",
     "SimplyConnected(X,3)", "SimplyConnected(B)", "", "GL(3", "SL(1)"],
)
def test_parse_group_errors(text):
    with pytest.raises(UnknownFamily):
        parse_group(text)


def test_sl2_char2_example():
    pred = predict(P(2, 1, 1), "SL2")
    assert pred.exact == 2 and pred.applicable
    assert [rule for rule, _ in pred.citations] == ["sl2_char2"]


def test_gl3_example():
    prof = P(2, 2, 1)
    pred = predict(prof, "GL(3)")
    assert pred.exact == big_e_m(prof) == 3


def test_e6_gate():
    pred = predict(P(3, 1), "E6")
    assert not pred.applicable
    assert pred.reason == "E6 requires p != 3"
    assert pred.exact is None and pred.citations == []
    assert predict(P(2, 1), "E6").applicable


def test_sp8_example():
    prof = P(5, 2, 1, 1)
    pred = predict(prof, "Sp(8)")
    assert pred.lower == e_of(prof, 4)
    assert pred.exact == big_e_m(prof)


def test_gl1_is_e():
    pred = predict(P(2, 1), gl(1))
    assert pred.exact == 1
    assert {rule for rule, _ in pred.citations} == {"gl1", "gl"}


def test_char2_gate_for_orthogonal_types():
    assert not predict(P(2, 1, 1), "SimplyConnected(B,3)").applicable
    assert predict(P(2, 1, 1), "SO(7)").applicable
    assert not predict(P(2, 1), "F4").applicable
    assert predict(P(3, 1), "F4").applicable


def test_trivial_extension():
    for g in ("SL2", "GL(3)", "E8"):
        assert predict(P(3), g).exact == 0


def test_rank_one_groups():
    assert predict(P(3, 1), "SL2").exact == 1
    assert predict(P(3, 1, 1), "PGL2").exact == 2
    assert predict(P(2, 2, 1), "PGL2").exact == 3


def test_unknown_family_in_rules():
    with pytest.raises(UnknownFamily):
        matching_rules(P(2, 1), GroupSpec("Weird"))


def test_to_dict_fields():
    d = predict(P(2, 1, 1), "SL2").to_dict()
    assert set(d) == {"lower", "upper", "exact", "applicable", "reason", "citations"}
    assert d["citations"][0]["rule"] == "sl2_char2"


def test_cross_validate_examples():
    prof = P(2, 1, 1)
    cv = cross_validate(prof, 2, borel_witness(prof, 2), 2)
    assert cv and all(c["ok"] for c in cv.checks)
    prof1 = P(2, 1)
    assert cross_validate(prof1, 2, borel_witness(prof1, 2), {"max_exponent": 1})
    assert not cross_validate(prof1, 2, None, 5)


def test_conflicting_rules_raise(monkeypatch):
    # the package re-exports the function under the module's name
    pr = importlib.import_module("weilexp.predict")

    rules = [pr.RuleResult("a", "x", 1, 1), pr.RuleResult("b", "y", 2, 3)]
    monkeypatch.setattr(pr, "matching_rules", lambda profile, group: (rules, None))
    with pytest.raises(InconsistentRules):
        predict(P(2, 1), "SL2")


profiles = st.builds(
    lambda p, exps: ExtensionProfile(p, tuple(sorted(exps, reverse=True))),
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(1, 3), max_size=4),
)
groups = st.sampled_from(
    ["SL2", "PGL2", "GL(1)", "GL(2)", "GL(3)", "GL(5)", "SO(5)", "SO(8)", "Sp(6)", "SL(4)",
     "E6", "E7", "F4", "G2", "Adjoint(D,5)"]
)


@given(profiles, groups)
def test_rules_agree(profile, group):
    pred = predict(profile, group)  # raises on disagreement
    if pred.exact is not None:
        assert pred.lower == pred.upper == pred.exact
    if pred.lower is not None and pred.upper is not None:
        assert pred.lower <= pred.upper


@given(profiles, st.integers(1, 6))
def test_gl_interval_brackets_e(profile, r):
    pred = predict(profile, gl(r))
    assert pred.contains(e_of(profile, r)) or profile.l == 0
