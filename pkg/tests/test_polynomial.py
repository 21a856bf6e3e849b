import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tropelim.cheb import to_tropical
from tropelim.oracle import GeneratorParams, random_problem
from tropelim.polynomial import (
    Monomial,
    Polynomial,
    Problem,
    ValidationError,
    canonicalize,
    evaluate,
    parse_problem,
    problem_to_dict,
    serialize_problem,
)
from tropelim.semifield import MAX_PLUS, MIN_PLUS, ZERO, SemifieldError, get_semifield

from conftest import ex1_dataset


def raw(sf, terms, arity):
    return Polynomial(sf, arity, tuple(Monomial(c, tuple(map(F, e))) for c, e in terms))


def test_canonicalize_merges_by_oplus():
    p = canonicalize(raw(MAX_PLUS, [(F(3), [1]), (F(5), [1])], 1))
    assert p.monomials == (Monomial(F(5), (F(1),)),)
    q = canonicalize(raw(MIN_PLUS, [(F(3), [1]), (F(5), [1])], 1))
    assert q.monomials == (Monomial(F(3), (F(1),)),)


def test_canonicalize_drops_zero_and_idempotent_merge():
    p = canonicalize(raw(MAX_PLUS, [(ZERO, [1, 0]), (F(2), [0, 1])], 2))
    assert p.monomials == (Monomial(F(2), (F(0), F(1))),)
    q = canonicalize(raw(MAX_PLUS, [(F(1), [0])] * 3, 1))
    assert len(q) == 1


def test_canonical_order_is_lexicographic():
    p = Polynomial.make(MAX_PLUS, [(1, [1, 0]), (2, [0, 5]), (3, [0, -1])])
    assert p.exponents == [(0, -1), (0, 5), (1, 0)]
    assert p.is_canonical()


def test_empty_polynomial_evaluates_to_zero():
    p = canonicalize(raw(MAX_PLUS, [(ZERO, [1])], 1))
    assert len(p) == 0
    assert evaluate(p, [F(3)]) is ZERO


def test_evaluate_examples():
    f = Polynomial.make(MAX_PLUS, [(2, [3]), (-1, [-1])])
    assert evaluate(f, [F(1)]) == 5
    c = Polynomial.make(MAX_PLUS, [(F(7, 2), [0, 0])])
    assert evaluate(c, [F(-9), F(100)]) == F(7, 2)


def test_evaluate_rejects_zero_point():
    f = Polynomial.make(MAX_PLUS, [(2, [3])])
    with pytest.raises(SemifieldError):
        evaluate(f, [ZERO])
    with pytest.raises(SemifieldError):
        evaluate(f, [F(1), F(2)])


terms_strategy = st.lists(
    st.tuples(
        st.one_of(st.just(ZERO), st.fractions(-5, 5, max_denominator=4)),
        st.lists(st.fractions(-3, 3, max_denominator=3), min_size=2, max_size=2),
    ),
    max_size=8,
)
points = st.lists(st.fractions(-4, 4, max_denominator=5), min_size=2, max_size=2)


@given(terms_strategy, points)
def test_canonicalize_preserves_values(terms, x):
    p = raw(MAX_PLUS, terms, 2)
    c = canonicalize(p)
    assert evaluate(c, x) == evaluate(p, x) or (evaluate(c, x) is ZERO and evaluate(p, x) is ZERO)
    assert canonicalize(c) == c
    assert c.is_canonical()


@given(terms_strategy, points)
def test_majority_law(terms, x):
    p = canonicalize(raw(MAX_PLUS, terms, 2))
    fx = evaluate(p, x)
    for m in p.monomials:
        assert MAX_PLUS.leq(evaluate(Polynomial(MAX_PLUS, 2, (m,)), x), fx)


MINIMAL = {
    "semifield": "max-plus",
    "mode": "exact",
    "monomials": [{"coeff": "1/2", "exponents": ["-1"]}],
    "box": {"lower": ["0"], "upper": ["3"]},
}


def test_parse_minimal_document():
    prob = parse_problem(json.dumps(MINIMAL))
    assert len(prob.polynomial) == 1 and prob.arity == 1
    assert prob.polynomial.monomials[0] == Monomial(F(1, 2), (F(-1),))


@pytest.mark.parametrize(
    "patch,path",
    [
        ({"box": {"lower": ["4"], "upper": ["3"]}}, "box.lower[0]"),
        ({"box": {"lower": ["0"], "upper": ["zero"]}}, "box.upper[0]"),
        ({"monomials": [{"coeff": "zero", "exponents": ["1"]}]}, "monomials[0].coeff"),
        ({"monomials": [{"coeff": "1/x", "exponents": ["1"]}]}, "monomials[0].coeff"),
        ({"monomials": [{"coeff": "1", "exponents": ["1", "2"]}]}, "box.lower"),
        ({"monomials": [{"coeff": "1", "exponents": ["1"]},
                        {"coeff": "1", "exponents": ["1", "2"]}]}, "monomials[1].exponents"),
        ({"monomials": [{"coeff": "1", "exponents": ["1/0"]}]}, "monomials[0].exponents[0]"),
        ({"semifield": "max-times"}, "semifield"),
    ],
)
def test_validation_errors_name_the_field(patch, path):
    doc = dict(MINIMAL, **patch)
    with pytest.raises(ValidationError) as err:
        parse_problem(json.dumps(doc))
    assert err.value.path == path


def test_malformed_json():
    with pytest.raises(ValidationError):
        parse_problem(b"{not json")


def test_example1_document_has_eight_monomials():
    prob = to_tropical(ex1_dataset())
    again = parse_problem(serialize_problem(prob))
    assert (len(again.polynomial), again.arity) == (8, 3)


def test_zero_lower_bound_round_trip():
    prob = Problem.make(MAX_PLUS, [(0, [1])], [ZERO], [F(2)])
    doc = problem_to_dict(prob)
    assert doc["box"]["lower"] == ["zero"]
    assert parse_problem(serialize_problem(prob)) == prob


def test_float_mode_document():
    doc = dict(MINIMAL, semifield="max-times", mode="float",
               box={"lower": ["zero"], "upper": ["2.5"]})
    prob = parse_problem(json.dumps(doc))
    assert prob.semifield == get_semifield("max-times", "float")
    assert prob.box.lower == (ZERO,) and prob.box.upper == (2.5,)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 6),
       st.sampled_from(["max-plus", "min-plus"]))
def test_serialize_round_trip(seed, n, m, name):
    prob = random_problem(GeneratorParams(arity=n, monomials=m, seed=seed, semifield=name,
                                          zero_lower=0.2))
    assert parse_problem(serialize_problem(prob)) == prob
