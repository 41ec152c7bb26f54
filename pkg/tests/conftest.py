import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

from deltacompat import MultiPoly, RatFunc, VarContext

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion, printed after the run."""
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.CRITERIA):
        label = mod.CRITERIA[n]
        if n in mod.RESULTS:
            ok, detail = mod.RESULTS[n]
            status = "PASS" if ok else "FAIL"
            extra = f" ({detail})" if detail else ""
        else:
            status, extra = "NOT RUN", ""
        terminalreporter.write_line(f"criterion {n} [{status}] {label}{extra}")


@pytest.fixture
def ctx():
    return VarContext.make(t=("t",), x=("x",), y=("y",), q=("q",))


@pytest.fixture
def ctx2():
    return VarContext.make(
        t=("t1", "t2"), x=("x1", "x2"), y=("y1", "y2"), q=("q1", "q2")
    )


def random_poly(ctx, rng, *, degree=3, terms=4, names=None, nonzero=False):
    """Sparse random polynomial: up to `terms` monomials over `names`."""
    pool = list(names) if names is not None else list(ctx.vars)
    p = MultiPoly.zero(ctx)
    for _ in range(rng.randrange(1, terms + 1)):
        coeff = Fraction(rng.randint(-9, 9))
        mono = MultiPoly.const(ctx, coeff)
        for name in pool:
            mono = mono * MultiPoly.var(ctx, name) ** rng.randrange(0, degree + 1)
        p = p + mono
    if nonzero and p.is_zero():
        p = p + MultiPoly.const(ctx, Fraction(rng.randint(1, 9)))
    return p


def random_ratfunc(ctx, rng, *, degree=2, terms=3, names=None):
    num = random_poly(ctx, rng, degree=degree, terms=terms, names=names)
    den = random_poly(ctx, rng, degree=degree, terms=terms, names=names, nonzero=True)
    return RatFunc(num, den)


@pytest.fixture
def rng():
    return random.Random(20240817)
