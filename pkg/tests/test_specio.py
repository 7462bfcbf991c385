import json
from importlib import resources

import pytest

from acri import connectives as C
from acri import implications as I
from acri.connectives import builtin_aggregators
from acri.constructions import FClosedForm, InfimumAggregator, StarExtension
from acri.errors import SpecError
from acri.implications import builtin_implications
from acri.specio import (
    Document,
    load_json,
    load_scenario,
    parse_aggregator,
    parse_fuzzy_set,
    parse_implication,
    parse_negation,
    parse_scenario,
)

DATA = resources.files("acri.data")


@pytest.mark.parametrize("name", sorted(builtin_aggregators()))
def test_aggregator_round_trip(name, grid21):
    a = builtin_aggregators()[name]
    b = parse_aggregator(json.loads(json.dumps(a.to_dict())))
    assert all(a(x, y) == b(x, y) for x, y in grid21.pairs())


@pytest.mark.parametrize("name", sorted(builtin_implications()))
def test_implication_round_trip(name, grid21):
    i = builtin_implications()[name]
    j = parse_implication(json.loads(json.dumps(i.to_dict())))
    assert all(i(x, y) == j(x, y) for x, y in grid21.pairs())


def test_negation_forms():
    assert isinstance(parse_negation("standard"), C.StandardNegation)
    n = parse_negation({"family": "conjugated", "base": "standard", "phi": {"family": "power", "exponent": 2}})
    assert n(0.5) == pytest.approx((1 - 0.25) ** 0.5)
    nat = parse_negation({"family": "natural-of-implication", "implication": "lukasiewicz"})
    assert nat(0.2) == pytest.approx(0.8)
    tab = parse_negation({"family": "tabulated", "x": [0, 1], "value": [1, 0]})
    assert tab(0.25) == pytest.approx(0.75)
    agg = parse_negation({"family": "natural-of-aggregator", "aggregator": "lukasiewicz-tnorm"})
    assert agg(0.4) == pytest.approx(0.6, abs=1e-6)


def test_named_references():
    doc = Document(
        {
            "luk": {"family": "lukasiewicz"},
            "sum": {"family": "ordinal-sum-tconorm", "components": [{"lower": 0, "upper": 1, "generator": "identity"}]},
        }
    )
    i = doc.implication({"family": "meet", "first": "luk", "second": {"ref": "luk"}})
    assert i(0.7, 0.5) == pytest.approx(0.8)
    an = doc.implication({"family": "an-implication", "aggregator": "sum", "negation": "standard"})
    assert an(0.7, 0.5) == pytest.approx(0.8)


def test_constructed_aggregators():
    a = parse_aggregator({"family": "from-implication", "implication": "reichenbach", "method": "closed-form-f"})
    assert isinstance(a, FClosedForm) and a(0.9, 0.37) == pytest.approx(0.3)
    n = parse_aggregator({"family": "from-implication", "implication": "reichenbach", "tol": 1e-7})
    assert isinstance(n, InfimumAggregator) and n.tol == 1e-7
    s = parse_aggregator({"family": "star-extension", "base": "product"})
    assert isinstance(s, StarExtension)


def test_generator_based_families():
    f = parse_implication({"family": "f-implication", "generator": {"name": "neg-log"}})
    assert f(0.5, 0.25) == pytest.approx(0.5)
    t = parse_implication({"family": "t-power", "t": "archimedean", "generator": "neg-log"})
    assert t(0.8, 0.64) == pytest.approx(0.5)
    assert isinstance(parse_implication({"family": "t-power"}), I.TPower)
    p = parse_implication({"family": "probabilistic", "copula": {"family": "archimedean", "generator": {"name": "clayton", "theta": 1}}})
    assert 0 <= p(0.5, 0.5) <= 1
    lo = parse_implication({"family": "lower-contrapositivisation", "base": "reichenbach", "negation": "standard"})
    assert lo(0.3, 0.05) == pytest.approx(0.715)


@pytest.mark.parametrize(
    "spec, fragment",
    [
        ({"family": "nope"}, "unknown implication family"),
        ({"family": "f-implication"}, "needs field 'generator'"),
        ({"family": "f-implication", "generator": {"name": "identity"}}, "$.generator"),
        ({"family": "an-implication", "aggregator": "min", "negation": "standard"}, "disjunctor"),
        ({"ref": "missing"}, "unknown operator reference"),
        ({"family": "meet", "first": "lukasiewicz", "second": 3}, "$.second"),
        ({"family": "f-implication", "generator": {"name": "power", "p": "two"}}, "$.generator.p"),
    ],
)
def test_errors_are_located(spec, fragment):
    with pytest.raises(SpecError) as err:
        parse_implication(spec)
    assert fragment in str(err.value)


def test_cyclic_reference():
    with pytest.raises(SpecError, match="cyclic"):
        Document({"a": {"family": "meet", "first": "a", "second": "a"}}).implication("a")


def test_fuzzy_set_product():
    s = parse_fuzzy_set(
        {
            "product": [{"universe": ["a", "b"], "memberships": [1, 0.5]}, {"memberships": [0.4, 1]}],
            "combiner": "product",
        }
    )
    assert s.universe[1] == "a|x2" and s["b|x2"] == 0.5


def test_bundled_scenarios_parse():
    for name in ("example-6-2.json", "example-6-2-dtop.json"):
        sc = load_scenario(DATA / name)
        assert sc.expected_output is not None and sc.tolerance == 1e-9
        assert len(sc.rule.antecedent) == 20


def test_scenario_validation():
    with pytest.raises(SpecError, match="connectives"):
        parse_scenario({"rule": {}, "input": {}})


def test_load_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError, match="bad.json:1:2: invalid JSON"):
        load_json(bad)
    with pytest.raises(SpecError, match="No such file"):
        load_json(tmp_path / "missing.json")
