"""Multiplicative shift structure of rational functions.

dispersion finds the distances at which two polynomials share factors under a
shift or q-shift; reduced_decompose uses it to peel a rational function into a
log-quotient shell times a reduced core; solve_quotient inverts log-quotients
when a rational solution exists; merge_rational_solution reconciles several
such targets into one function.  is_log_derivative is the additive analogue
for derivations.

Everything reported is exact.  Floating point shows up only while guessing
candidate shift distances or residues, and every guess is confirmed in exact
arithmetic before it is believed, so a float failure can cost completeness on
adversarial inputs but never soundness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._univ import (
    aberth_roots,
    cauchy_root_bound,
    clear_to_int,
    dilate,
    eval_at,
    integer_candidates,
    lagrange_interpolate,
    shift_compose,
    sylvester_resultant,
    trim,
)
from .context import VarContext
from .errors import CapacityError, MergeConflictError
from .ops import DELTA, TAU, OpRef, apply, delta, log_quotient, proper_evaluate
from .poly import MultiPoly, content_wrt, poly_gcd
from .ratfunc import RatFunc, canonical_monic

REDUCED = "reduced"
STANDARD = "standard"

# retry budget for degenerate specialization points
_ATTEMPTS = 24


@dataclass(frozen=True)
class DispersionResult:
    """Shift distances at which two polynomials share a nonconstant factor."""

    op: OpRef
    hits: tuple[int, ...]

    @property
    def max(self) -> int:
        # 0 when there are no hits, by convention
        return self.hits[-1] if self.hits else 0


def _moved_part(p: MultiPoly, op: OpRef, zname: str) -> MultiPoly:
    """Factors of p the operator actually moves: drop everything free of the
    shifted variable, and for the q-shift also the variable's monomial part
    (its translates differ only by a unit)."""
    ctx = p.ctx
    zi = ctx.index(zname)
    cont = content_wrt(p, {zi})
    if not cont.is_const():
        p = p.divexact(cont)
    if op.kind == TAU:
        k = p.min_exponent(zname)
        if k:
            p = p.divide_power(zname, k)
    return p


def _op_power(p: MultiPoly, op: OpRef, zname: str, ctx: VarContext, i: int) -> MultiPoly:
    """op^i applied to a polynomial, up to a unit (enough for gcd work)."""
    if op.kind == TAU:
        return p.scale_var(zname, ctx.q_for_y(zname), i)[0]
    return p.shift_var(zname, i)


def _point(others: Sequence[str], attempt: int, skew: int = 0) -> dict:
    """Deterministic nonzero integer assignments, varied per attempt."""
    return {
        name: ((attempt * 29 + 11) * (rank + 3) + 7 * rank * rank + 5 * skew + 2) % 101 + 2
        for rank, name in enumerate(others)
    }


def _dense_coeffs(p: MultiPoly, zname: str, point: dict) -> list[Fraction]:
    cmap = p.univariate(zname)
    out = [Fraction(0)] * (max(cmap) + 1)
    for k, c in cmap.items():
        v = c.specialize(point)
        if not v.is_zero():
            out[k] = v.const_value()
    return trim(out)


def _shift_candidates(a: MultiPoly, b: MultiPoly, zname: str, window: int) -> set[int]:
    """Candidate distances i >= 1 for the shift: integer roots of the
    resultant of a and the i-translate of b, located on a specialization of
    the remaining variables.  The specialization is leading-coefficient
    guarded, so every true distance survives as an integer root of the
    specialized resultant; the float root pass plus the scan window then has
    to find it, and the caller confirms each candidate exactly."""
    ctx = a.ctx
    zi = ctx.index(zname)
    others = sorted(
        ctx.vars[i] for i in (a.used_indices() | b.used_indices()) - {zi}
    )
    da, db = a.degree(zname), b.degree(zname)
    npts = da * db + 1
    for attempt in range(_ATTEMPTS):
        point = _point(others, attempt)
        A = _dense_coeffs(a, zname, point)
        B = _dense_coeffs(b, zname, point)
        if len(A) != da + 1 or len(B) != db + 1:
            continue
        vals = []
        for lam in range(npts):
            vals.append((lam, sylvester_resultant(A, shift_compose(B, lam))))
        if all(v == 0 for _, v in vals):
            continue
        ints = clear_to_int(lagrange_interpolate(vals))
        return {i for i in integer_candidates(ints, 1, window) if i >= 1}
    # every specialization degenerated; fall back to confirming the whole window
    return set(range(1, window + 1))


def _scale_candidates(a: MultiPoly, b: MultiPoly, zname: str, window: int) -> set[int]:
    """Candidate distances for the q-shift.  The attached parameter is pinned
    to a small prime rho, so a true distance i makes rho**i an integer root of
    the specialized resultant in the dilation symbol; the Cauchy bound caps i
    and membership is checked by exact integer evaluation.  Complete whenever
    the specialization is nondegenerate, which the retry loop enforces."""
    ctx = a.ctx
    zi = ctx.index(zname)
    qname = ctx.q_for_y(zname)
    others = sorted(
        ctx.vars[i] for i in (a.used_indices() | b.used_indices()) - {zi}
    )
    da, db = a.degree(zname), b.degree(zname)
    npts = da * db + 1
    primes = (3, 5, 7, 11, 13, 17)
    for attempt in range(_ATTEMPTS):
        rho = primes[attempt % len(primes)]
        point = _point([n for n in others if n != qname], attempt, skew=1)
        point[qname] = rho
        A = _dense_coeffs(a, zname, point)
        B = _dense_coeffs(b, zname, point)
        if len(A) != da + 1 or len(B) != db + 1:
            continue
        vals = []
        for mu in range(1, npts + 1):
            vals.append((mu, sylvester_resultant(A, dilate(B, Fraction(mu)))))
        if all(v == 0 for _, v in vals):
            continue
        ints = clear_to_int(lagrange_interpolate(vals))
        bound = cauchy_root_bound(ints)
        imax = min(max(1, int(math.log(bound) / math.log(rho)) + 2), 4000)
        out = set()
        power = 1
        for i in range(1, imax + 1):
            power *= rho
            if eval_at(ints, Fraction(power)) == 0:
                out.add(i)
        return out
    return set(range(1, window + 1))


def dispersion(a: MultiPoly, b: MultiPoly, op: OpRef, *, window: int = 100) -> DispersionResult:
    """All distances i >= 0 at which gcd(a, op^i b) is nonconstant.

    Defined for the shift kinds only; a derivation has no distance to
    measure.  Zero inputs are refused.  Every reported hit is confirmed by an
    exact multivariate gcd.
    """
    if op.kind == DELTA:
        raise ValueError("dispersion is defined for shift operators only")
    a._same(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("dispersion of zero is undefined")
    ctx = a.ctx
    zname = op.var(ctx)
    a0 = _moved_part(a, op, zname)
    b0 = _moved_part(b, op, zname)
    if a0.is_const() or b0.is_const():
        return DispersionResult(op, ())
    hits = []
    if not poly_gcd(a0, b0).is_const():
        hits.append(0)
    if op.kind == TAU:
        cands = _scale_candidates(a0, b0, zname, window)
    else:
        cands = _shift_candidates(a0, b0, zname, window)
    for i in sorted(cands):
        if i < 1:
            continue
        if not poly_gcd(a0, _op_power(b0, op, zname, ctx, i)).is_const():
            hits.append(i)
    return DispersionResult(op, tuple(hits))


@dataclass(frozen=True)
class ReducedDecomposition:
    """f written as log_quotient(op, shell) * core with a reduced core."""

    op: OpRef
    mode: str
    shell: RatFunc
    core: RatFunc

    def value(self) -> RatFunc:
        """The rational function the decomposition stands for."""
        return log_quotient(self.op, self.shell) * self.core


def _first_cross_hit(a: MultiPoly, b: MultiPoly, op: OpRef) -> int | None:
    """Smallest i >= 1 with gcd(a, op^i b) nonconstant, None when reduced."""
    for i in dispersion(a, b, op).hits:
        if i >= 1:
            return i
    return None


def _ladder(g: RatFunc, op: OpRef, i: int) -> RatFunc:
    """Product of op^-j(g) for j = 1..i: the shell factor whose log-quotient
    telescopes to g / op^-i(g)."""
    out = RatFunc.one(g.ctx)
    for j in range(1, i + 1):
        out = out * apply(op, g, -j)
    return out


def reduced_decompose(f: RatFunc, op: OpRef, mode: str = REDUCED) -> ReducedDecomposition:
    """Peel f into log_quotient(op, shell) * core where the core's
    denominator meets no integer op-power of its numerator.

    Hits are cleared in increasing distance order, smallest first, so the
    result is deterministic.  In standard mode the core's numerator and
    denominator are additionally each self-reduced: repeated op-orbit factors
    are slid together, which makes the core's op-structure canonical.
    """
    if op.kind == DELTA:
        raise ValueError("decomposition is defined for shift operators only")
    if mode not in (REDUCED, STANDARD):
        raise ValueError(f"unknown mode {mode!r}")
    if f.is_zero():
        raise ValueError("cannot decompose zero")
    ctx = f.ctx
    zname = op.var(ctx)
    shell = RatFunc.one(ctx)
    core = f
    while True:
        num, den = core.num, core.den
        hit_a = _first_cross_hit(den, num, op)
        hit_b = _first_cross_hit(num, den, op)
        if hit_a is None and hit_b is None:
            break
        if hit_b is None or (hit_a is not None and hit_a <= hit_b):
            # denominator meets op^i(numerator): move the pair out, shrinking
            # both; the shell ladder compensates exactly
            i = hit_a
            g = RatFunc.from_poly(poly_gcd(den, _op_power(num, op, zname, ctx, i)))
            core = core * g / apply(op, g, -i)
            shell = shell / _ladder(g, op, i)
        else:
            i = hit_b
            g = RatFunc.from_poly(poly_gcd(num, _op_power(den, op, zname, ctx, i)))
            core = core * apply(op, g, -i) / g
            shell = shell * _ladder(g, op, i)
    if mode == STANDARD:
        shell, core = _self_reduce(shell, core, op, zname)
    return ReducedDecomposition(op, mode, canonical_monic(shell)[0], core)


def _self_reduce(shell: RatFunc, core: RatFunc, op: OpRef, zname: str) -> tuple[RatFunc, RatFunc]:
    ctx = core.ctx
    budget = (core.num.degree(zname) + core.den.degree(zname) + 2) ** 2
    while budget:
        budget -= 1
        num, den = core.num, core.den
        hit_n = None if num.is_const() else _first_cross_hit(num, num, op)
        hit_d = None if den.is_const() else _first_cross_hit(den, den, op)
        if hit_n is None and hit_d is None:
            return shell, core
        if hit_d is None or (hit_n is not None and hit_n <= hit_d):
            i = hit_n
            g = RatFunc.from_poly(poly_gcd(num, _op_power(num, op, zname, ctx, i)))
            core = core * apply(op, g, -i) / g
            shell = shell * _ladder(g, op, i)
        else:
            i = hit_d
            g = RatFunc.from_poly(poly_gcd(den, _op_power(den, op, zname, ctx, i)))
            core = core * g / apply(op, g, -i)
            shell = shell / _ladder(g, op, i)
    raise CapacityError("self-reduction did not settle within its budget")


def _pure_parameter_power(core: RatFunc, qname: str) -> int | None:
    """The j with core == qname**j exactly, None if core is anything else."""
    ctx = core.ctx
    qi = ctx.index(qname)
    if len(core.num.terms) != 1 or len(core.den.terms) != 1:
        return None
    (en, cn), = core.num.terms.items()
    (ed, cd), = core.den.terms.items()
    if cn != 1 or cd != 1:
        return None
    for i, (p, q) in enumerate(zip(en, ed)):
        if (p or q) and i != qi:
            return None
    return en[qi] - ed[qi]


def solve_quotient(op: OpRef, r: RatFunc, forbidden: Iterable[str] = ()) -> RatFunc | None:
    """A rational z with log_quotient(op, z) == r and z free of the forbidden
    variables, or None when no such z exists.  Absence is data, not an error.

    After decomposition the shell is a solution candidate and the core is the
    obstruction: for the shift it must be exactly 1, for the q-shift exactly
    an integer power of the attached parameter (the log-quotient of the same
    power of the shifted variable).  The solution is normalized monic.
    """
    if op.kind == DELTA:
        raise ValueError("solve_quotient is defined for shift operators only")
    if r.is_zero():
        raise ValueError("zero is not a log-quotient")
    ctx = r.ctx
    dec = reduced_decompose(r, op, REDUCED)
    z = dec.shell
    if op.kind == TAU:
        j = _pure_parameter_power(dec.core, ctx.q_for_y(op.var(ctx)))
        if j is None:
            return None
        if j:
            z = z * RatFunc.var(ctx, op.var(ctx)) ** j
    elif not dec.core.is_one():
        return None
    kill = [n for n in forbidden]
    if kill:
        z = proper_evaluate(z, kill)
    z = canonical_monic(z)[0]
    # the evaluation step can only have preserved the quotient when the
    # target itself was free of the killed variables; check, do not trust
    if log_quotient(op, z) != r:
        return None
    return z


def _residue_candidates(num: MultiPoly, den: MultiPoly, dden: MultiPoly,
                        tname: str, attempt: int) -> set[int]:
    """Integer residue guesses: residues of a one-variable specialization at
    the float roots of its denominator, widened by a small fixed range."""
    ctx = num.ctx
    ti = ctx.index(tname)
    others = sorted(
        ctx.vars[i]
        for i in (num.used_indices() | den.used_indices()) - {ti}
    )
    out = set(range(-3, 4)) - {0}
    point = _point(others, attempt, skew=2)
    D = _dense_coeffs(den, tname, point)
    if len(D) != den.degree(tname) + 1:
        return out
    N = _dense_coeffs(num, tname, point)
    Dp = _dense_coeffs(dden, tname, point)
    for root in aberth_roots(clear_to_int(D)):
        dv = eval_at([complex(c) for c in Dp], root)
        if abs(dv) < 1e-9:
            continue
        nv = eval_at([complex(c) for c in N], root)
        val = nv / dv
        cand = round(val.real)
        if cand and abs(val.imag) < 0.3 and abs(val.real - cand) < 0.3 and abs(cand) < 2 ** 40:
            out.add(cand)
    return out


def is_log_derivative(index: int, beta: RatFunc) -> list[tuple[MultiPoly, int]] | None:
    """Decide whether beta is the logarithmic derivative, under the
    derivation of the given 1-based index, of some rational function of the
    derivation-block variables.  Returns the witness as (factor, multiplicity)
    pairs whose product of powers is such a function, or None.

    Residues of a rational logarithmic derivative are the multiplicities of
    the witness factors, so they must be integers, the denominator must be
    squarefree in the derivation variable, and nothing in the denominator may
    be free of it.  The factor split is by residue level sets, which keeps
    factors with equal residue bundled and needs no irreducible factorization.
    """
    ctx = beta.ctx
    if not 1 <= index <= len(ctx.tvars):
        raise ValueError(f"no derivation with index {index}")
    tname = ctx.tvars[index - 1]
    if not beta.free_of(ctx.block_indices("x", "y")):
        raise ValueError("input must involve only derivation-block variables")
    if beta.is_zero():
        return []
    num, den = beta.num, beta.den
    ti = ctx.index(tname)
    if den.degree(tname) < 1:
        return None
    if num.degree(tname) >= den.degree(tname):
        return None
    if not content_wrt(den, {ti}).is_const():
        return None
    dden = den.derivative(tname)
    if not poly_gcd(den, dden).is_const():
        return None
    op = delta(index)
    for attempt in range(3):
        parts = []
        prod = MultiPoly.one(ctx)
        for cand in sorted(_residue_candidates(num, den, dden, tname, attempt)):
            d = poly_gcd(den, num - MultiPoly.const(ctx, cand) * dden)
            if d.is_const():
                continue
            parts.append((d, cand))
            prod = prod * d
        if prod != den:
            continue
        acc = RatFunc.zero(ctx)
        for d, cand in parts:
            acc = acc + RatFunc.const(ctx, cand) * log_quotient(op, RatFunc.from_poly(d))
        if acc == beta:
            return parts
    return None


def merge_rational_solution(ctx: VarContext,
                            targets: Sequence[tuple[OpRef, RatFunc]]) -> RatFunc:
    """One rational function whose log-quotient under every listed operator
    matches that of the listed value.  No targets: 1.

    Targets are folded in order: the first fixes the starting function, each
    later one is matched by solving for a correction that is kept free of the
    variables of the operators already satisfied, so earlier matches survive.
    Raises MergeConflictError, carrying the operator, when a correction does
    not exist.  The result has monic numerator and denominator; residual
    constants are the caller's business.
    """
    f = None
    seen: list[str] = []
    for op, g in targets:
        if op.kind == DELTA:
            raise ValueError("only shift operators can be merged")
        if g.is_zero():
            raise ValueError("targets must be nonzero")
        ctx.same(g.ctx)
        if f is None:
            f = g
        else:
            ratio = g / f
            if not ratio.is_const():
                h = solve_quotient(op, log_quotient(op, ratio), forbidden=seen)
                if h is None:
                    raise MergeConflictError(op)
                f = f * h
        seen.append(op.var(ctx))
    if f is None:
        return RatFunc.one(ctx)
    return canonical_monic(f)[0]
