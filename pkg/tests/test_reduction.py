"""Shift-structure toolbox: dispersion, shell/core splitting, quotient
solving, log-derivative recognition and target merging.

Brute-force oracles here are plain window scans with exact gcds, so the
clever candidate generation inside the library is always checked against
arithmetic that cannot be wrong, only slow.
"""

import random

import pytest

from deltacompat import (
    MergeConflictError,
    MultiPoly,
    RatFunc,
    VarContext,
    dispersion,
    is_log_derivative,
    log_quotient,
    merge_rational_solution,
    poly_gcd,
    reduced_decompose,
    sigma,
    solve_quotient,
    tau,
)
from deltacompat.reduction import REDUCED, STANDARD

from conftest import random_poly, random_ratfunc

CTX = VarContext.make(t=("t",), x=("x",), y=("y",), q=("q",))
CTX2 = VarContext.make(t=("t1", "t2"), x=("x1", "x2"), y=("y1", "y2"), q=("q1", "q2"))


def P(name, k=1):
    return MultiPoly.var(CTX, name, k)


def C(v):
    return MultiPoly.const(CTX, v)


# ------------------------------------------------------------------ dispersion


def test_dispersion_shift_pair():
    a = P("x") * (P("x") + C(3))
    d = dispersion(a, a, sigma(1))
    assert d.hits == (0, 3)
    assert d.max == 3


def test_dispersion_qshift_pair():
    a = (P("y") - C(1)) * (P("y") - P("q", 2))
    d = dispersion(a, a, tau(1))
    assert d.hits == (0, 2)
    assert d.max == 2


def test_dispersion_ignores_monomial_part():
    a = P("y", 3)
    d = dispersion(a, a, tau(1))
    assert d.hits == ()
    assert d.max == 0


def test_dispersion_rejects_derivation_and_zero():
    from deltacompat import delta

    a = P("x")
    with pytest.raises(ValueError):
        dispersion(a, a, delta(1))
    with pytest.raises(ValueError):
        dispersion(a, MultiPoly.zero(CTX), sigma(1))


def _brute_hits(a, b, op, window=50):
    ctx = a.ctx
    zname = op.var(ctx)
    out = []
    for i in range(window + 1):
        if op.kind == "tau":
            bi = b.scale_var(zname, ctx.q_for_y(zname), i)[0]
        else:
            bi = b.shift_var(zname, i)
        g = poly_gcd(a, bi)
        if not g.is_const() and g.degree(zname) > 0:
            out.append(i)
    return tuple(out)


def test_dispersion_matches_brute_scan_shift():
    rng = random.Random(1203)
    for _ in range(25):
        roots = rng.sample(range(0, 40), rng.randrange(1, 4))
        a = MultiPoly.one(CTX)
        b = MultiPoly.one(CTX)
        base = P("x") + P("t") * rng.randrange(0, 2)
        for r in roots:
            a = a * (base + C(r))
            b = b * (base + C(r + rng.randrange(0, 9)))
        d = dispersion(a, b, sigma(1))
        assert d.hits == _brute_hits(a, b, sigma(1))


def test_dispersion_matches_brute_scan_qshift():
    rng = random.Random(1204)
    for _ in range(25):
        a = MultiPoly.one(CTX)
        b = MultiPoly.one(CTX)
        for _ in range(rng.randrange(1, 3)):
            ea, eb = rng.randrange(0, 5), rng.randrange(0, 5)
            a = a * (P("y") - P("q", ea))
            b = b * (P("y") - P("q", eb) * C(rng.choice([1, 1, 3])))
        d = dispersion(a, b, tau(1))
        assert d.hits == _brute_hits(a, b, tau(1), window=12)


def test_dispersion_multivariate_factor():
    # factors the operator does not move never produce hits
    a = (P("x") + P("t") + C(4)) * (P("t") + C(1))
    b = (P("x") + P("t")) * (P("t") + C(1))
    d = dispersion(a, b, sigma(1))
    assert d.hits == (4,)


# ------------------------------------------------------ reduced decomposition


def test_decompose_shift_example():
    f = RatFunc(P("x") + C(2), P("x"))
    dec = reduced_decompose(f, sigma(1))
    assert dec.shell == RatFunc.from_poly(P("x") * (P("x") + C(1)))
    assert dec.core.is_one()
    assert dec.value() == f


def test_decompose_polynomial_is_its_own_core():
    f = RatFunc.from_poly(P("x") + C(1))
    dec = reduced_decompose(f, sigma(1))
    assert dec.shell.is_one()
    assert dec.core == f


def test_decompose_parameter_core():
    f = RatFunc.from_poly(P("q"))
    dec = reduced_decompose(f, tau(1))
    assert dec.shell.is_one()
    assert dec.core == f


def test_decompose_rejects_bad_input():
    from deltacompat import delta

    f = RatFunc.from_poly(P("x"))
    with pytest.raises(ValueError):
        reduced_decompose(f, delta(1))
    with pytest.raises(ValueError):
        reduced_decompose(RatFunc.zero(CTX), sigma(1))
    with pytest.raises(ValueError):
        reduced_decompose(f, sigma(1), mode="fancy")


def _assert_cross_reduced(core, op):
    num, den = core.num, core.den
    if num.is_const() or den.is_const():
        return
    assert all(i == 0 for i in dispersion(den, num, op).hits)
    assert all(i == 0 for i in dispersion(num, den, op).hits)


def test_decompose_roundtrip_shift():
    rng = random.Random(1301)
    for _ in range(20):
        f = random_ratfunc(CTX, rng, names=("x", "t"))
        if f.is_zero():
            continue
        dec = reduced_decompose(f, sigma(1))
        assert dec.value() == f
        _assert_cross_reduced(dec.core, sigma(1))


def test_decompose_roundtrip_qshift():
    rng = random.Random(1302)
    for _ in range(20):
        f = random_ratfunc(CTX, rng, names=("y", "q"))
        if f.is_zero():
            continue
        dec = reduced_decompose(f, tau(1))
        assert dec.value() == f
        _assert_cross_reduced(dec.core, tau(1))


def test_standard_mode_self_reduces():
    f = RatFunc.from_poly(P("x") * (P("x") + C(3)))
    dec = reduced_decompose(f, sigma(1), mode=STANDARD)
    assert dec.core == RatFunc.from_poly(P("x", 2))
    assert dec.shell == RatFunc.from_poly(P("x") * (P("x") + C(1)) * (P("x") + C(2)))
    assert dec.value() == f
    # reduced mode leaves the pair alone: it is already cross-reduced
    assert reduced_decompose(f, sigma(1), mode=REDUCED).core == f


def test_standard_mode_roundtrip():
    rng = random.Random(1303)
    for _ in range(12):
        f = random_ratfunc(CTX, rng, names=("x", "t"))
        if f.is_zero():
            continue
        dec = reduced_decompose(f, sigma(1), mode=STANDARD)
        assert dec.value() == f
        _assert_cross_reduced(dec.core, sigma(1))
        for side in (dec.core.num, dec.core.den):
            if not side.is_const():
                assert all(i == 0 for i in dispersion(side, side, sigma(1)).hits)


# ------------------------------------------------------------- solve_quotient


def test_solve_shift_quotient():
    r = RatFunc(P("x") + C(1), P("x"))
    assert solve_quotient(sigma(1), r) == RatFunc.from_poly(P("x"))


def test_solve_shift_quotient_absent():
    assert solve_quotient(sigma(1), RatFunc.from_poly(P("x") + C(1))) is None


def test_solve_qshift_parameter():
    assert solve_quotient(tau(1), RatFunc.from_poly(P("q"))) == RatFunc.from_poly(P("y"))


def test_solve_qshift_negative_power():
    z = RatFunc((P("y") - C(1)) * (P("y") - P("q")), P("y", 2))
    r = log_quotient(tau(1), z)
    got = solve_quotient(tau(1), r)
    assert got is not None
    assert log_quotient(tau(1), got) == r


def test_solve_roundtrip_random():
    rng = random.Random(1401)
    done = 0
    while done < 15:
        z = random_ratfunc(CTX, rng, names=("x", "t"))
        if z.is_zero():
            continue
        r = log_quotient(sigma(1), z)
        got = solve_quotient(sigma(1), r)
        assert got is not None
        assert log_quotient(sigma(1), got) == r
        done += 1
    done = 0
    while done < 15:
        z = random_ratfunc(CTX, rng, names=("y", "q"))
        if z.is_zero():
            continue
        r = log_quotient(tau(1), z)
        got = solve_quotient(tau(1), r)
        assert got is not None
        assert log_quotient(tau(1), got) == r
        done += 1


def test_solve_respects_forbidden_variables():
    # the only solutions involve t, so forbidding t leaves nothing
    z = RatFunc.from_poly((P("x") + P("t")) * (P("x") + C(1)))
    r = log_quotient(sigma(1), z)
    assert solve_quotient(sigma(1), r) is not None
    assert solve_quotient(sigma(1), r, forbidden=("t",)) is None
    # a harmless forbidden variable changes nothing
    r2 = log_quotient(sigma(1), RatFunc.from_poly(P("x") * (P("x") + C(1))))
    assert solve_quotient(sigma(1), r2, forbidden=("t",)) is not None


# --------------------------------------------------------- is_log_derivative


@pytest.mark.parametrize(
    "build, expect",
    [
        (lambda: RatFunc(MultiPoly.one(CTX), P("t")), True),
        (lambda: RatFunc(C(2), P("t")), True),
        (lambda: RatFunc(MultiPoly.one(CTX), P("t") * 2), False),
        (lambda: RatFunc.one(CTX), False),
        (lambda: RatFunc.from_poly(P("t")), False),
        (lambda: RatFunc(MultiPoly.one(CTX), P("t"))
         + RatFunc(MultiPoly.one(CTX), P("t") + C(1)), True),
    ],
)
def test_log_derivative_decision_set(build, expect):
    witness = is_log_derivative(1, build())
    assert (witness is not None) == expect


def test_log_derivative_witness_reconstructs():
    from deltacompat import delta

    rng = random.Random(1501)
    for _ in range(20):
        shifts = rng.sample(range(-9, 9), rng.randrange(1, 4))
        mults = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in shifts]
        beta = RatFunc.zero(CTX)
        for s, m in zip(shifts, mults):
            beta = beta + RatFunc(C(m), P("t") + C(s))
        witness = is_log_derivative(1, beta)
        assert witness is not None
        acc = RatFunc.zero(CTX)
        for d, mult in witness:
            acc = acc + RatFunc.const(CTX, mult) * log_quotient(delta(1), RatFunc.from_poly(d))
        assert acc == beta


def test_log_derivative_mixed_residues():
    beta = RatFunc(MultiPoly.one(CTX), P("t")) + RatFunc(C(2), P("t") + C(1))
    witness = is_log_derivative(1, beta)
    assert witness is not None
    assert sorted(mult for _, mult in witness) == [1, 2]


def test_log_derivative_large_residue():
    beta = RatFunc(C(100), P("t"))
    assert is_log_derivative(1, beta) == [(P("t"), 100)]


def test_log_derivative_second_derivation():
    t1 = MultiPoly.var(CTX2, "t1")
    t2 = MultiPoly.var(CTX2, "t2")
    beta = RatFunc(C2 := MultiPoly.const(CTX2, 2), t1 + t2)
    assert is_log_derivative(1, beta) == [(t1 + t2, 2)]
    # the same input against the other derivation
    assert is_log_derivative(2, beta) == [(t1 + t2, 2)]


def test_log_derivative_rejects_bad_input():
    with pytest.raises(ValueError):
        is_log_derivative(3, RatFunc(MultiPoly.one(CTX), P("t")))
    with pytest.raises(ValueError):
        is_log_derivative(1, RatFunc(MultiPoly.one(CTX), P("x")))
    assert is_log_derivative(1, RatFunc.zero(CTX)) == []


def test_log_derivative_squarefree_and_content_gates():
    assert is_log_derivative(1, RatFunc(MultiPoly.one(CTX), P("t", 2))) is None
    beta = RatFunc(MultiPoly.one(CTX), P("t") * (P("q") + C(1)))
    assert is_log_derivative(1, beta) is None


# ------------------------------------------------------- merging of targets


def test_merge_no_targets():
    assert merge_rational_solution(CTX, []).is_one()


def test_merge_single_target_normalizes():
    g = RatFunc.from_poly((P("t") + P("x")) * 3)
    f = merge_rational_solution(CTX, [(sigma(1), g)])
    assert f == RatFunc.from_poly(P("t") + P("x"))


def test_merge_two_operators():
    f0 = RatFunc((P("t") + P("x")) * (P("t") * 2 + P("y", 2)), P("x") * 5 + P("y"))
    targets = [
        (sigma(1), f0 * RatFunc.from_poly(P("t") + C(1))),
        (tau(1), f0 * RatFunc.from_poly(P("t") + P("x") + C(1))),
    ]
    f = merge_rational_solution(CTX, targets)
    for op, g in targets:
        assert log_quotient(op, f) == log_quotient(op, g)


def test_merge_detects_cross_variable_conflict():
    # the shift target needs a factor carrying y, which the q-shift target
    # already pinned, so no single function satisfies both
    f0 = RatFunc.from_poly(P("t") + P("y"))
    targets = [
        (tau(1), f0),
        (sigma(1), f0 * RatFunc.from_poly(P("x") + P("y"))),
    ]
    with pytest.raises(MergeConflictError) as err:
        merge_rational_solution(CTX, targets)
    assert err.value.op == sigma(1)
