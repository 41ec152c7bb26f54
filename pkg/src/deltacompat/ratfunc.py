"""Reduced rational functions over the parameterized coefficient field.

A RatFunc is a fraction of two MultiPoly values kept in lowest terms with a
denominator whose leading coefficient is 1.  Zero is 0/1.  Arithmetic uses
cross-gcds so results never need a full re-reduction.

block_split factors out the part of a rational function lying purely inside
chosen variable blocks (content extraction, no irreducible factorization),
which is the workhorse behind representations and standard forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import VarContext
from .errors import EvaluationError
from .poly import MultiPoly, content_wrt, poly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._same(den)
        if not reduced:
            if num.is_zero():
                den = MultiPoly.one(num.ctx)
            elif not (num.is_const() or den.is_const()):
                g = poly_gcd(num, den)
                if not g.is_const():
                    num = num.divexact(g)
                    den = den.divexact(g)
        if not den.is_one():
            lc = den.leading_coeff()
            if lc != 1:
                inv = 1 / lc
                num = num.map_coeffs(lambda c: c * inv)
                den = den.map_coeffs(lambda c: c * inv)
        self.num = num
        self.den = den

    # ---------------------------------------------------------------- builders

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p, MultiPoly.one(p.ctx), reduced=True)

    @classmethod
    def const(cls, ctx: VarContext, value) -> "RatFunc":
        return cls.from_poly(MultiPoly.const(ctx, value))

    @classmethod
    def one(cls, ctx: VarContext) -> "RatFunc":
        return cls.const(ctx, 1)

    @classmethod
    def zero(cls, ctx: VarContext) -> "RatFunc":
        return cls.const(ctx, 0)

    @classmethod
    def var(cls, ctx: VarContext, name: str, power: int = 1) -> "RatFunc":
        if power >= 0:
            return cls.from_poly(MultiPoly.var(ctx, name, power))
        return cls(MultiPoly.one(ctx), MultiPoly.var(ctx, name, -power), reduced=True)

    @property
    def ctx(self) -> VarContext:
        return self.num.ctx

    # ---------------------------------------------------------------- queries

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_const(self) -> bool:
        """Constant over the full ring: a plain rational number."""
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def free_of(self, indices) -> bool:
        idx = frozenset(indices)
        return self.num.free_of(idx) and self.den.free_of(idx)

    def in_field(self) -> bool:
        """True when the value lies in the coefficient field: free of every
        operator variable (only parameter names may occur)."""
        ctx = self.ctx
        return self.free_of(ctx.block_indices("t", "x", "y"))

    def used_indices(self) -> set[int]:
        return self.num.used_indices() | self.den.used_indices()

    # ---------------------------------------------------------------- arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.ctx, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.ctx, other)
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        return other

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        # common-denominator gcd keeps the final reduction to one small gcd
        g = poly_gcd(self.den, other.den)
        if g.is_const():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            if num.is_zero():
                return RatFunc.zero(self.ctx)
            h = poly_gcd(num, den)
            if not h.is_const():
                num = num.divexact(h)
                den = den.divexact(h)
            return RatFunc(num, den, reduced=True)._renorm()
        d1 = self.den.divexact(g)
        d2 = other.den.divexact(g)
        num = self.num * d2 + other.num * d1
        if num.is_zero():
            return RatFunc.zero(self.ctx)
        # any surviving common factor divides g
        h = poly_gcd(num, g)
        den = self.den * d2
        if not h.is_const():
            num = num.divexact(h)
            den = den.divexact(h)
        return RatFunc(num, den, reduced=True)._renorm()

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.ctx)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = poly_gcd(n1, d2)
        if not g1.is_const():
            n1 = n1.divexact(g1)
            d2 = d2.divexact(g1)
        g2 = poly_gcd(n2, d1)
        if not g2.is_const():
            n2 = n2.divexact(g2)
            d1 = d1.divexact(g2)
        return RatFunc(n1 * n2, d1 * d2, reduced=True)._renorm()

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, reduced=True)._renorm()

    def __pow__(self, n: int) -> "RatFunc":
        if n == 0:
            return RatFunc.one(self.ctx)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        # num and den stay coprime under powering; no reduction needed
        return RatFunc(base.num ** n, base.den ** n, reduced=True)._renorm()

    def _renorm(self) -> "RatFunc":
        lc = self.den.leading_coeff()
        if lc == 1:
            return self
        inv = 1 / lc
        return RatFunc(
            self.num.map_coeffs(lambda c: c * inv),
            self.den.map_coeffs(lambda c: c * inv),
            reduced=True,
        )

    # ---------------------------------------------------------------- calculus

    def derivative(self, name: str) -> "RatFunc":
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        if dd.is_zero():
            if dn.is_zero():
                return RatFunc.zero(self.ctx)
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    # ---------------------------------------------------------------- substitution

    def substitute(self, assignments: dict) -> "RatFunc":
        """Exact substitution name -> value (value: RatFunc, MultiPoly, or
        rational).  Raises EvaluationError if the denominator vanishes."""
        num = _subst_poly(self.num, assignments)
        den = _subst_poly(self.den, assignments)
        if den.is_zero():
            raise EvaluationError("denominator vanishes under substitution")
        return num / den

    def poly_part(self, name: str) -> tuple["RatFunc", "RatFunc"]:
        """Euclidean split along one variable: self = quotient + remainder,
        where the quotient is a polynomial in name over the field of the other
        variables (its denominator is free of name) and the remainder's
        numerator has smaller name-degree than its denominator."""
        dN = self.num.degree(name)
        dD = self.den.degree(name)
        if self.is_zero() or dN < dD:
            return RatFunc.zero(self.ctx), self
        nmap = self.num.univariate(name)
        dmap = self.den.univariate(name)
        quot_terms: dict[int, RatFunc] = {}
        rem = {d: RatFunc.from_poly(c) for d, c in nmap.items()}
        lcD_r = RatFunc.from_poly(dmap[dD])
        while rem and max(rem) >= dD:
            dr = max(rem)
            coeff = rem.pop(dr) / lcD_r
            k = dr - dD
            quot_terms[k] = quot_terms.get(k, RatFunc.zero(self.ctx)) + coeff
            for d, c in dmap.items():
                if d == dD:
                    continue
                t = d + k
                cur = rem.get(t, RatFunc.zero(self.ctx)) - coeff * c
                if cur.is_zero():
                    rem.pop(t, None)
                else:
                    rem[t] = cur
        var = RatFunc.var(self.ctx, name)
        quotient = RatFunc.zero(self.ctx)
        for k, c in quot_terms.items():
            quotient = quotient + c * var ** k
        return quotient, self - quotient

    # ---------------------------------------------------------------- printing

    def to_string(self) -> str:
        ns = self.num.to_string()
        if self.den.is_one():
            return ns
        return f"({ns})/({self.den.to_string()})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RatFunc({self.to_string()})"


def _subst_poly(p: MultiPoly, assignments: dict) -> RatFunc:
    ctx = p.ctx
    todo = {name: val for name, val in assignments.items() if not p.free_of({ctx.index(name)})}
    result = RatFunc.from_poly(p)
    for name, val in todo.items():
        if isinstance(val, (int, Fraction)):
            val = RatFunc.const(ctx, val)
        elif isinstance(val, MultiPoly):
            val = RatFunc.from_poly(val)
        new_num = _horner(result.num.univariate(name), val, ctx)
        new_den = _horner(result.den.univariate(name), val, ctx)
        if new_den.is_zero():
            raise EvaluationError("denominator vanishes under substitution")
        result = new_num / new_den
    return result


def _horner(umap: dict[int, MultiPoly], val: RatFunc, ctx: VarContext) -> RatFunc:
    if not umap:
        return RatFunc.zero(ctx)
    acc = RatFunc.zero(ctx)
    top = max(umap)
    for d in range(top, -1, -1):
        acc = acc * val
        c = umap.get(d)
        if c is not None:
            acc = acc + RatFunc.from_poly(c)
    return acc


# -------------------------------------------------------------------- canonical form

def canonical_monic(f: RatFunc) -> tuple[RatFunc, RatFunc]:
    """Split f = unit * monic where monic has numerator and denominator with
    leading coefficient 1 and no factor lying purely in the parameter block,
    and unit is a nonzero element of the coefficient field.

    Zero maps to (0, 1).
    """
    ctx = f.ctx
    if f.is_zero():
        return f, RatFunc.one(ctx)
    op_idx = ctx.block_indices("t", "x", "y")
    cn = content_wrt(f.num, op_idx)
    cd = content_wrt(f.den, op_idx)
    num = f.num if cn.is_one() else f.num.divexact(cn)
    den = f.den if cd.is_one() else f.den.divexact(cd)
    a = num.leading_coeff()
    b = den.leading_coeff()
    if a != 1:
        inv = 1 / a
        num = num.map_coeffs(lambda c: c * inv)
    if b != 1:
        inv = 1 / b
        den = den.map_coeffs(lambda c: c * inv)
    monic = RatFunc(num, den, reduced=True)
    unit_num = cn * a
    unit_den = cd * b
    unit = RatFunc(unit_num, unit_den)
    return monic, unit


def is_monic(f: RatFunc) -> bool:
    if f.is_zero():
        return False
    m, _u = canonical_monic(f)
    return m == f


# -------------------------------------------------------------------- block split

@dataclass(frozen=True)
class BlockSplit:
    """f = rest * prod(pure parts) exactly.  rest is monic with no factor lying
    purely in any requested block; the field-constant unit of f is recorded and
    folded into the pure part of the last requested block."""

    rest: RatFunc
    pure: dict
    unit: RatFunc


def _strip_block(p: MultiPoly, ctx: VarContext, block: str) -> tuple[MultiPoly, MultiPoly]:
    """Return (pure, remaining) with p = pure * remaining, pure collecting the
    monic product of p's factors free of every operator variable outside the
    block."""
    other_blocks = [b for b in ("t", "x", "y") if b != block]
    outside = ctx.block_indices(*other_blocks)
    cont = content_wrt(p, outside)
    # the content may still carry a parameter-only factor; move it out
    qcont = content_wrt(cont, ctx.block_indices(block))
    if not qcont.is_one():
        cont = cont.divexact(qcont).monic()
    if cont.is_const():
        return MultiPoly.one(ctx), p
    return cont, p.divexact(cont)


def split_blocks(f: RatFunc, blocks: tuple[str, ...]) -> BlockSplit:
    """Factor out the parts of f lying purely in each requested block.

    Each pure part is a ratio of monic block-pure polynomials, except that the
    accumulated field-constant unit is folded into the pure part of the LAST
    requested block.  The rest is monic and keeps every genuinely mixed factor.
    """
    if f.is_zero():
        raise ValueError("cannot split zero")
    ctx = f.ctx
    num, den = f.num, f.den
    pure: dict = {}
    for b in blocks:
        pn, num = _strip_block(num, ctx, b)
        pd, den = _strip_block(den, ctx, b)
        pure[b] = RatFunc(pn, pd, reduced=True)
    # the stripped contents are monic, so f = rest * prod(pure) holds exactly
    rest = RatFunc(num, den, reduced=True)
    rest_monic, unit = canonical_monic(rest)
    if not unit.in_field():
        raise ValueError("internal split error: unit not in the coefficient field")
    pure[blocks[-1]] = pure[blocks[-1]] * unit
    return BlockSplit(rest=rest_monic, pure=pure, unit=unit)
