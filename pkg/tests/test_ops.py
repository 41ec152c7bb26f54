"""Operator family: action, commutation, quotients, admissible evaluation."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deltacompat import EvaluationError, MultiPoly, RatFunc, VarContext
from deltacompat.ops import (
    all_ops,
    apply,
    delta,
    log_quotient,
    proper_evaluate,
    sigma,
    tau,
)

from conftest import random_ratfunc

CTX = VarContext.make(t=("t",), x=("x",), y=("y",), q=("q",))
CTX2 = VarContext.make(t=("t1", "t2"), x=("x1", "x2"), y=("y1", "y2"), q=("q1", "q2"))

seeds = st.integers(0, 10**6)


def test_all_ops_enumeration():
    ops = all_ops(CTX2)
    assert [op.label() for op in ops] == [
        "delta_1", "delta_2", "sigma_1", "sigma_2", "tau_1", "tau_2",
    ]
    assert ops[2].var(CTX2) == "x1"
    assert ops[5].var(CTX2) == "y2"


def test_shift_acts_by_translation():
    x = RatFunc.var(CTX, "x")
    t = RatFunc.var(CTX, "t")
    f = (x * x + t) / (x + 1)
    assert apply(sigma(1), f) == ((x + 1) * (x + 1) + t) / (x + 2)
    assert apply(sigma(1), f, -1) == ((x - 1) * (x - 1) + t) / x
    assert apply(sigma(1), apply(sigma(1), f, -1)) == f


def test_qshift_acts_by_dilation():
    y = RatFunc.var(CTX, "y")
    q = RatFunc.var(CTX, "q")
    f = (y * y + 1) / y
    assert apply(tau(1), f) == (q * q * y * y + 1) / (q * y)
    # inverse q-shift divides by q; no parameter may land in a denominator
    back = apply(tau(1), f, -1)
    assert back == (y * y + q * q) / (q * y)
    assert apply(tau(1), back) == f


def test_derivation_power_restricted():
    t = RatFunc.var(CTX, "t")
    with pytest.raises(ValueError):
        apply(delta(1), t, 2)


@given(seeds)
def test_operators_commute_pairwise(sa):
    f = random_ratfunc(CTX2, random.Random(sa), degree=2, terms=3)
    if f.is_zero():
        return
    pairs = [
        (delta(1), sigma(2)),
        (delta(2), tau(1)),
        (sigma(1), tau(2)),
        (sigma(1), sigma(2)),
        (tau(1), tau(2)),
    ]
    for a, b in pairs:
        assert apply(a, apply(b, f)) == apply(b, apply(a, f))


@given(seeds)
def test_shift_kinds_are_field_maps(sa):
    rng = random.Random(sa)
    f = random_ratfunc(CTX, rng)
    g = random_ratfunc(CTX, rng)
    for op in (sigma(1), tau(1)):
        assert apply(op, f * g) == apply(op, f) * apply(op, g)
        assert apply(op, f + g) == apply(op, f) + apply(op, g)


@given(seeds)
def test_log_quotient_is_additive_on_products(sa):
    rng = random.Random(sa)
    f = random_ratfunc(CTX, rng)
    g = random_ratfunc(CTX, rng)
    if f.is_zero() or g.is_zero():
        return
    assert log_quotient(delta(1), f * g) == log_quotient(delta(1), f) + log_quotient(delta(1), g)
    lhs = log_quotient(sigma(1), f * g)
    assert lhs == log_quotient(sigma(1), f) * log_quotient(sigma(1), g)


def test_proper_evaluate_keeps_value_defined_and_nonzero():
    t = RatFunc.var(CTX, "t")
    x = RatFunc.var(CTX, "x")
    y = RatFunc.var(CTX, "y")
    f = (t + x) / (x * 5 + y)
    g = proper_evaluate(f, ["x", "y"])
    assert g.free_of(CTX.block_indices("x", "y"))
    assert not g.is_zero()
    # first spiral point for x is singular here and must be skipped
    h = proper_evaluate(RatFunc.one(CTX) / (x - 1), ["x"])
    assert not h.is_zero()
    assert h.free_of(CTX.block_indices("x"))


def test_proper_evaluate_respects_seed_and_budget():
    x = RatFunc.var(CTX, "x")
    f = RatFunc.one(CTX) / x
    a = proper_evaluate(f, ["x"], rng_seed=0)
    b = proper_evaluate(f, ["x"], rng_seed=1)
    assert a != b
    with pytest.raises(EvaluationError):
        # every admissible point is excluded by an overly tight budget
        proper_evaluate(RatFunc.one(CTX) / (x - 1), ["x"], retry_budget=1)


def test_proper_evaluate_rejects_parameters_and_unknowns():
    f = RatFunc.var(CTX, "t")
    with pytest.raises(ValueError):
        proper_evaluate(f, ["q"])
    with pytest.raises(ValueError):
        proper_evaluate(f, ["zz"])
