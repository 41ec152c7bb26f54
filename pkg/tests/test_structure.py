"""Representation recovery, standard forms, products and dependence."""

from fractions import Fraction

import pytest

from deltacompat import (
    CapacityError,
    CertificateSystem,
    HProduct,
    MultiPoly,
    NotCompatibleError,
    RatFunc,
    Representation,
    VarContext,
    algebraic_dependence,
    build_system,
    check,
    decompose,
    delta,
    is_rational_product,
    log_quotient,
    represent,
    sample_representation,
    sigma,
    standardize,
    tau,
)

CTX = VarContext.make(t=("t",), x=("x",), y=("y",), q=("q",))


def P(name):
    return MultiPoly.var(CTX, name)


def C(v):
    return MultiPoly.const(CTX, Fraction(v))


def R(p):
    return RatFunc.from_poly(p)


def mixed_example():
    t, x, y, q = P("t"), P("x"), P("y"), P("q")
    one = C(1)
    u = (R((C(4) * t + C(2) * x + y * y) * (t + one)
           + (t + x + one) * (t + x) * (C(2) * t + y * y))
         / R((t + one) * (t + x) * (C(2) * t + y * y)))
    v = (R(C(2) * (C(2) * x + C(3)) * (x + one) * (t + one)
           * (t + x + one) * (C(5) * x + y))
         / R((C(5) * x + y + C(5)) * (t + x)))
    w = (R((C(5) * x + y) * (C(2) * t + q * q * y * y) * (one + q * y))
         / R((C(5) * x + q * y) * (C(2) * t + y * y)))
    return CertificateSystem(CTX, (u,), (v,), (w,))


def test_mixed_example_representation():
    t, x, y, q = P("t"), P("x"), P("y"), P("q")
    rep = represent(mixed_example())
    assert rep.base == R((C(2) * t + y * y) * (t + x)) / R(C(5) * x + y)
    assert rep.power_bases == (R(t + C(1)),)
    assert rep.diff_certs == (RatFunc.one(CTX),)
    assert rep.shift_certs == (R(C(2) * (C(2) * x + C(3)) * (x + C(1))),)
    assert rep.qshift_certs == (R(q * y + C(1)),)
    assert rep.is_standard()
    assert standardize(rep) == rep


def test_mixed_example_reconstruction():
    sys = mixed_example()
    rep = represent(sys)
    rebuilt = build_system(rep)
    assert rebuilt.u == sys.u
    assert rebuilt.v == sys.v
    assert rebuilt.w == sys.w


def test_mixed_example_describe():
    prod = decompose(mixed_example())
    assert prod.describe() == (
        "(y^2*x + y^2*t + 2*x*t + 2*t^2)/(y + 5*x)"
        " * (t + 1)^x"
        " * exp_factor[dlog t = 1]"
        " * shift_factor[x-quotient = 4*x^2 + 10*x + 6]"
        " * qshift_factor[y-quotient = y*q + 1]"
    )


def test_trivial_system():
    sys = CertificateSystem(
        CTX, (RatFunc.zero(CTX),), (RatFunc.one(CTX),), (RatFunc.one(CTX),))
    prod = decompose(sys)
    assert prod.rational_part.is_one()
    assert prod.powers == ()
    assert prod.describe() == "1"


def test_incompatible_input_rejected():
    sys = mixed_example()
    bad = CertificateSystem(CTX, sys.u, sys.v,
                            (sys.w[0] * R(P("t") + P("x")),))
    with pytest.raises(NotCompatibleError):
        represent(bad)


def test_representation_validation():
    one = RatFunc.one(CTX)
    zero = RatFunc.zero(CTX)
    t = R(P("t"))
    with pytest.raises(ValueError):
        Representation(CTX, zero, (one,), (zero,), (one,), (one,))
    with pytest.raises(ValueError):
        # power base not monic
        Representation(CTX, one, (t + RatFunc.const(CTX, 1) + t,),
                       (zero,), (one,), (one,))
    with pytest.raises(ValueError):
        # shift cert must not involve t
        Representation(CTX, one, (one,), (zero,), (t,), (one,))
    with pytest.raises(ValueError):
        Representation(CTX, one, (one,), (zero,), (zero,), (one,))
    # residual family must be compatible; two derivations with asymmetric
    # certs violate the mixed-derivative condition
    ctx2 = VarContext.make(t=("t", "s"))
    s_var = RatFunc.var(ctx2, "s")
    with pytest.raises(ValueError):
        Representation(ctx2, RatFunc.one(ctx2), (),
                       (s_var, RatFunc.zero(ctx2)), (), ())


def test_standardize_moves_constant_and_split_factors():
    t, x = P("t"), P("x")
    rep = Representation(
        CTX, R(C(2) * (t + C(1)) * (t + x)), (RatFunc.one(CTX),),
        (RatFunc.zero(CTX),), (RatFunc.one(CTX),), (RatFunc.one(CTX),))
    std = standardize(rep)
    assert std.base == R(t + x)
    assert std.diff_certs[0] == log_quotient(delta(1), R(t + C(1)))
    assert std.shift_certs[0].is_one()
    assert build_system(std).u == build_system(rep).u
    assert standardize(std) == std


def test_standardize_moves_qshift_pure_factor():
    t, x, y = P("t"), P("x"), P("y")
    rep = Representation(
        CTX, R((t + x) * (y + C(1))), (RatFunc.one(CTX),),
        (RatFunc.zero(CTX),), (RatFunc.one(CTX),), (RatFunc.one(CTX),))
    std = standardize(rep)
    assert std.base == R(t + x)
    assert std.qshift_certs[0] == log_quotient(tau(1), R(y + C(1)))
    assert build_system(std).w == build_system(rep).w


SHAPES = [
    {"t": ("t",), "x": ("x",), "y": ("y",), "q": ("q",)},
    {"t": ("t",)},
    {"x": ("x",)},
    {"y": ("y",), "q": ("q",)},
    {"t": ("t", "s"), "x": ("x",)},
    {"x": ("x",), "y": ("y",), "q": ("q",)},
]


@pytest.mark.parametrize("seed", range(18))
def test_round_trip_uniqueness(seed):
    shape = SHAPES[seed % len(SHAPES)]
    ctx = VarContext.make(**shape)
    rep = sample_representation(ctx, seed, deg=2, coeff=5)
    sys = build_system(rep)
    recovered = represent(sys)
    rebuilt = build_system(recovered)
    assert rebuilt.u == sys.u
    assert rebuilt.v == sys.v
    assert rebuilt.w == sys.w
    assert standardize(recovered) == standardize(rep)


@pytest.mark.parametrize("seed", [3, 11, 27])
def test_residual_certificates_compatible(seed):
    ctx = VarContext.make(t=("t",), x=("x",), y=("y",), q=("q",))
    rep = represent(build_system(sample_representation(ctx, seed, deg=2, coeff=5)))
    assert check(rep.residual_system()).ok


@pytest.mark.parametrize("seed", [0, 5, 9, 14])
def test_decompose_build_identity(seed):
    ctx = VarContext.make(t=("t",), x=("x",), y=("y",), q=("q",))
    std = standardize(sample_representation(ctx, seed, deg=2, coeff=5))
    prod = decompose(build_system(std))
    assert prod.rational_part == std.base
    assert prod.as_representation() == std


def test_hproduct_validation():
    one = RatFunc.one(CTX)
    t = R(P("t"))
    with pytest.raises(ValueError):
        # power attached to a non-shift variable
        HProduct(CTX, one, ((t + RatFunc.const(CTX, 1), "t"),),
                 (RatFunc.zero(CTX),), (one,), (one,))
    with pytest.raises(ValueError):
        # trivial base must be dropped, not listed
        HProduct(CTX, one, ((one, "x"),),
                 (RatFunc.zero(CTX),), (one,), (one,))


def test_rational_product_witness_full():
    ctx = CTX
    t, x, y = (RatFunc.var(ctx, n) for n in ("t", "x", "y"))
    value = (t + x) * (y + 1)
    sys = CertificateSystem(
        ctx,
        (log_quotient(delta(1), value),),
        (log_quotient(sigma(1), value),),
        (log_quotient(tau(1), value),),
    )
    prod = decompose(sys)
    wit = is_rational_product(prod)
    assert wit is not None
    assert prod.rational_part * wit == value


def test_rational_product_witness_from_residuals():
    ctx = CTX
    t, x, y = (RatFunc.var(ctx, n) for n in ("t", "x", "y"))
    sys = CertificateSystem(
        ctx,
        (RatFunc.one(ctx) / t,),
        ((x + 1) / x,),
        (RatFunc.var(ctx, "q"),),
    )
    wit = is_rational_product(decompose(sys))
    assert wit == t * x * y


def test_rational_product_absent():
    ctx = CTX
    x = RatFunc.var(ctx, "x")
    # unit diff cert: exp(t) is not rational
    sys = CertificateSystem(
        ctx, (RatFunc.one(ctx),), (RatFunc.one(ctx),), (RatFunc.one(ctx),))
    assert is_rational_product(decompose(sys)) is None
    # factorial-type shift cert
    fact = CertificateSystem(
        ctx, (RatFunc.zero(ctx),), (x + 1,), (RatFunc.one(ctx),))
    assert is_rational_product(decompose(fact)) is None
    # symbolic power present
    t = RatFunc.var(ctx, "t")
    power = CertificateSystem(
        ctx, (RatFunc.var(ctx, "x") / (t + 1),), (t + 1,), (RatFunc.one(ctx),))
    prod = decompose(power)
    assert prod.powers and is_rational_product(prod) is None


def _verify_witness(systems, wit):
    # the defining identity of a dependence: certificates of the powered
    # product match the certificates of the claimed rational value
    ctx = systems[0].ctx
    value = wit.value()
    for i in range(len(ctx.tvars)):
        combined = RatFunc.zero(ctx)
        for sys, w in zip(systems, wit.omega):
            combined = combined + sys.u[i] * RatFunc.const(ctx, w)
        assert combined == log_quotient(delta(i + 1), value)
    for j in range(len(ctx.xvars)):
        combined = RatFunc.one(ctx)
        for sys, w in zip(systems, wit.omega):
            combined = combined * sys.v[j] ** w
        assert combined == log_quotient(sigma(j + 1), value)
    for k in range(len(ctx.yvars)):
        combined = RatFunc.one(ctx)
        for sys, w in zip(systems, wit.omega):
            combined = combined * sys.w[k] ** w
        assert combined == log_quotient(tau(k + 1), value)


def test_dependence_factorial_square():
    ctx = VarContext.make(x=("x",))
    x = RatFunc.var(ctx, "x")
    fact = CertificateSystem(ctx, (), (x + 1,), ())
    square = CertificateSystem(ctx, (), ((x + 1) ** 2,), ())
    wit = algebraic_dependence([fact, square])
    assert wit is not None
    assert tuple(map(abs, wit.omega)) == (2, 1)
    assert wit.value().is_one()
    _verify_witness([fact, square], wit)


def test_dependence_symbolic_powers():
    ctx = VarContext.make(t=("t",), x=("x",))
    t = RatFunc.var(ctx, "t")
    x = RatFunc.var(ctx, "x")
    p1 = CertificateSystem(ctx, (x / (t + 1),), (t + 1,), ())
    p2 = CertificateSystem(ctx, (2 * x / (t + 1),), ((t + 1) ** 2,), ())
    wit = algebraic_dependence([p1, p2])
    assert wit is not None
    assert tuple(map(abs, wit.omega)) == (2, 1)
    _verify_witness([p1, p2], wit)


def test_independence_factorial_exponential():
    ctx = VarContext.make(t=("t",), x=("x",))
    x = RatFunc.var(ctx, "x")
    fact = CertificateSystem(ctx, (RatFunc.zero(ctx),), (x + 1,), ())
    expo = CertificateSystem(ctx, (RatFunc.one(ctx),), (RatFunc.one(ctx),), ())
    assert algebraic_dependence([fact, expo]) is None


def test_dependence_single_rational():
    ctx = VarContext.make(t=("t",), x=("x",))
    value = RatFunc.var(ctx, "t") + RatFunc.var(ctx, "x")
    sys = CertificateSystem(
        ctx, (log_quotient(delta(1), value),), (log_quotient(sigma(1), value),), ())
    wit = algebraic_dependence([sys])
    assert wit is not None and wit.omega == (1,)
    assert wit.value() == value
    _verify_witness([sys], wit)


def test_dependence_qshift_monomials():
    ctx = VarContext.make(y=("y",), q=("q",))
    y = RatFunc.var(ctx, "y")
    q = RatFunc.var(ctx, "q")
    s1 = CertificateSystem(ctx, (), (), (y,))
    s2 = CertificateSystem(ctx, (), (), (q * y,))
    wit = algebraic_dependence([s1, s2])
    assert wit is not None
    assert tuple(map(abs, wit.omega)) == (1, 1)
    _verify_witness([s1, s2], wit)
    s3 = CertificateSystem(ctx, (), (), (y + 1,))
    s4 = CertificateSystem(ctx, (), (), (y + 2,))
    assert algebraic_dependence([s3, s4]) is None


def test_dependence_qshift_orbit():
    ctx = VarContext.make(y=("y",), q=("q",))
    y = RatFunc.var(ctx, "y")
    q = RatFunc.var(ctx, "q")
    s1 = CertificateSystem(ctx, (), (), (y + 1,))
    s2 = CertificateSystem(ctx, (), (), (q * y + 1,))
    wit = algebraic_dependence([s1, s2])
    assert wit is not None
    _verify_witness([s1, s2], wit)


def test_dependence_three_systems():
    ctx = VarContext.make(t=("t",), x=("x",))
    x = RatFunc.var(ctx, "x")
    fact = CertificateSystem(ctx, (RatFunc.zero(ctx),), (x + 1,), ())
    square = CertificateSystem(ctx, (RatFunc.zero(ctx),), ((x + 1) ** 2,), ())
    expo = CertificateSystem(ctx, (RatFunc.one(ctx),), (RatFunc.one(ctx),), ())
    wit = algebraic_dependence([fact, square, expo])
    assert wit is not None
    assert wit.omega[2] == 0
    assert tuple(map(abs, wit.omega[:2])) == (2, 1)
    _verify_witness([fact, square, expo], wit)


def test_dependence_capacity_and_empty():
    ctx = VarContext.make(x=("x",))
    x = RatFunc.var(ctx, "x")
    sys = CertificateSystem(ctx, (), (x + 1,), ())
    with pytest.raises(ValueError):
        algebraic_dependence([])
    with pytest.raises(CapacityError):
        algebraic_dependence([sys] * 17)
