"""The operator family: derivations, shifts, and q-shifts on rational functions.

Each operator acts on exactly one variable: a derivation differentiates its
t-variable, a shift translates its x-variable by an integer, and a q-shift
multiplies its y-variable by the paired parameter.  Parameters are inert.

proper_evaluate substitutes small integers for chosen variables while keeping
the value well-defined and nonzero; it is the standard way to strip unwanted
variables from a solution of an operator equation whose coefficients do not
involve them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import VarContext
from .errors import EvaluationError
from .poly import MultiPoly
from .ratfunc import RatFunc

DELTA = "delta"
SIGMA = "sigma"
TAU = "tau"

_KINDS = (DELTA, SIGMA, TAU)


@dataclass(frozen=True, order=True)
class OpRef:
    """One operator of the family, named by kind and 1-based block index."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("operator index is 1-based")

    def var(self, ctx: VarContext) -> str:
        block = {DELTA: ctx.tvars, SIGMA: ctx.xvars, TAU: ctx.yvars}[self.kind]
        if self.index > len(block):
            raise ValueError(f"{self.kind} index {self.index} outside context")
        return block[self.index - 1]

    def label(self) -> str:
        return f"{self.kind}_{self.index}"


def delta(i: int) -> OpRef:
    return OpRef(DELTA, i)


def sigma(j: int) -> OpRef:
    return OpRef(SIGMA, j)


def tau(k: int) -> OpRef:
    return OpRef(TAU, k)


def all_ops(ctx: VarContext) -> list[OpRef]:
    out = [delta(i + 1) for i in range(len(ctx.tvars))]
    out += [sigma(j + 1) for j in range(len(ctx.xvars))]
    out += [tau(k + 1) for k in range(len(ctx.yvars))]
    return out


def apply(op: OpRef, f: RatFunc, power: int = 1) -> RatFunc:
    """Apply the operator raised to an integer power (derivations: power 1)."""
    ctx = f.ctx
    name = op.var(ctx)
    if op.kind == DELTA:
        if power != 1:
            raise ValueError("derivations apply with power 1; iterate explicitly")
        return f.derivative(name)
    if power == 0:
        return f
    if op.kind == SIGMA:
        return RatFunc(f.num.shift_var(name, power), f.den.shift_var(name, power), reduced=True)
    qname = ctx.q_for_y(name)
    pn, ln = f.num.scale_var(name, qname, power)
    pd, ld = f.den.scale_var(name, qname, power)
    if ld:
        pn = pn * MultiPoly.var(ctx, qname, ld)
    if ln:
        pd = pd * MultiPoly.var(ctx, qname, ln)
    strip = min(pn.min_exponent(qname), pd.min_exponent(qname))
    if strip:
        pn = pn.divide_power(qname, strip)
        pd = pd.divide_power(qname, strip)
    return RatFunc(pn, pd, reduced=True)


def log_quotient(op: OpRef, f: RatFunc) -> RatFunc:
    """Derivation: the logarithmic derivative f'/f.  Shift kinds: the quotient
    (op f)/f."""
    if f.is_zero():
        raise ZeroDivisionError("log quotient of zero")
    if op.kind == DELTA:
        return f.derivative(op.var(f.ctx)) / f
    return apply(op, f, 1) / f


_SPIRAL = [v for k in range(1, 33) for v in (k, -k)]

# process-wide defaults, adjustable by front ends; None arguments fall back here
_EVAL_DEFAULTS = {"rng_seed": 0, "retry_budget": 64}


def set_evaluation_defaults(rng_seed: int | None = None,
                            retry_budget: int | None = None) -> None:
    """Adjust the fallback seed and retry budget used by proper_evaluate
    when a caller does not pass explicit values."""
    if rng_seed is not None:
        _EVAL_DEFAULTS["rng_seed"] = rng_seed
    if retry_budget is not None:
        if retry_budget < 1:
            raise ValueError("retry budget must be positive")
        _EVAL_DEFAULTS["retry_budget"] = retry_budget


def proper_evaluate(f: RatFunc, kill_vars, rng_seed: int | None = None,
                    retry_budget: int | None = None) -> RatFunc:
    """Substitute small integers for kill_vars, keeping the result well-defined
    and (for nonzero f) nonzero.  Deterministic for a fixed seed: each variable
    walks the spiral 1, -1, 2, -2, ... starting at an offset given by the seed.
    """
    if rng_seed is None:
        rng_seed = _EVAL_DEFAULTS["rng_seed"]
    if retry_budget is None:
        retry_budget = _EVAL_DEFAULTS["retry_budget"]
    ctx = f.ctx
    names = [n for n in ctx.vars if n in set(kill_vars)]
    unknown = set(kill_vars) - set(ctx.vars)
    if unknown:
        raise ValueError(f"unknown variables: {sorted(unknown)}")
    bad = [n for n in names if ctx.block_of(n) == "q"]
    if bad:
        raise ValueError(f"cannot evaluate parameter names: {bad}")
    if f.is_zero():
        return f
    budget = max(1, min(retry_budget, len(_SPIRAL)))
    for name in names:
        if f.free_of({ctx.index(name)}):
            continue
        start = rng_seed % len(_SPIRAL)
        for attempt in range(budget):
            value = _SPIRAL[(start + attempt) % len(_SPIRAL)]
            try:
                candidate = f.substitute({name: value})
            except EvaluationError:
                continue
            if candidate.is_zero():
                continue
            f = candidate
            break
        else:
            raise EvaluationError(
                f"no admissible evaluation point for {name} within budget {budget}")
    return f
