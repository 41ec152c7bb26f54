"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a dict mapping exponent tuples (aligned with the
context's storage order) to nonzero Fractions.  Monomials compare
lexicographically on the exponent tuple, so the context's block ordering is
the monomial ordering.

The gcd first tries an evaluation-based reconstruction (exact: candidates
are verified by division) and falls back to a primitive polynomial-
remainder-sequence gcd with recursive content extraction; results are
normalized to leading coefficient 1.  The resultant is the determinant of
the Sylvester matrix, computed by fraction-free (Bareiss) elimination so
intermediate values stay polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd as int_gcd

from .context import VarContext
from .errors import ContextMismatchError

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MultiPoly:
    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarContext, terms: dict):
        # invariant: no zero coefficients stored
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    # ---------------------------------------------------------------- builders

    @classmethod
    def zero(cls, ctx: VarContext) -> "MultiPoly":
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx: VarContext, value) -> "MultiPoly":
        value = Fraction(value)
        if value == 0:
            return cls(ctx, {})
        return cls(ctx, {(0,) * ctx.nvars: value})

    @classmethod
    def one(cls, ctx: VarContext) -> "MultiPoly":
        return cls.const(ctx, 1)

    @classmethod
    def var(cls, ctx: VarContext, name: str, power: int = 1) -> "MultiPoly":
        expo = [0] * ctx.nvars
        expo[ctx.index(name)] = power
        return cls(ctx, {tuple(expo): _ONE})

    def _same(self, other: "MultiPoly") -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatchError("polynomials from different contexts")

    # ---------------------------------------------------------------- queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        """True when no variable occurs at all (a plain rational)."""
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def const_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        (expo, coeff), = self.terms.items()
        if any(expo):
            raise ValueError("polynomial is not constant")
        return coeff

    def is_one(self) -> bool:
        return self.is_const() and not self.is_zero() and self.const_value() == 1

    def used_indices(self) -> set[int]:
        used = set()
        for expo in self.terms:
            for i, e in enumerate(expo):
                if e:
                    used.add(i)
        return used

    def free_of(self, indices) -> bool:
        idx = set(indices)
        return all(not expo[i] for expo in self.terms for i in idx)

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.ctx.index(name)
        return max(expo[i] for expo in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(expo) for expo in self.terms)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading (monomial, coefficient) under the context ordering."""
        expo = max(self.terms)
        return expo, self.terms[expo]

    def leading_coeff(self) -> Fraction:
        return self.terms[max(self.terms)]

    # ---------------------------------------------------------------- arithmetic

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.ctx, other)
        self._same(other)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.ctx, out)

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.ctx, other)
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return MultiPoly.zero(self.ctx)
            return MultiPoly(self.ctx, {e: c * other for e, c in self.terms.items()})
        self._same(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.ctx)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.ctx, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def map_coeffs(self, fn) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return MultiPoly(self.ctx, out)

    # ---------------------------------------------------------------- calculus

    def derivative(self, name: str) -> "MultiPoly":
        i = self.ctx.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.ctx, out)

    def shift_var(self, name: str, offset: int) -> "MultiPoly":
        """Substitute name -> name + offset (exact binomial expansion)."""
        if offset == 0:
            return self
        i = self.ctx.index(name)
        out: dict = {}
        for e, c in self.terms.items():
            n = e[i]
            if n == 0:
                s = out.get(e, _ZERO) + c
                if s:
                    out[e] = s
                else:
                    del out[e]
                continue
            for k in range(n + 1):
                ne = list(e)
                ne[i] = k
                ne = tuple(ne)
                add = c * comb(n, k) * Fraction(offset) ** (n - k)
                s = out.get(ne, _ZERO) + add
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return MultiPoly(self.ctx, out)

    def scale_var(self, name: str, qname: str, power: int) -> tuple["MultiPoly", int]:
        """Substitute name -> qname^power * name (pure exponent bookkeeping).

        Returns (p, c) with the true image equal to p / qname^c; the lift c is
        positive only when power < 0, where it clears would-be negative
        parameter exponents.
        """
        if power == 0 or self.is_zero():
            return self, 0
        i = self.ctx.index(name)
        j = self.ctx.index(qname)
        lift = 0
        if power < 0:
            lift = -power * max(e[i] for e in self.terms)
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[j] += power * e[i] + lift
            out[tuple(ne)] = c
        return MultiPoly(self.ctx, out), lift

    def specialize(self, assignments: dict) -> "MultiPoly":
        """Substitute rational numbers for variables (partial evaluation)."""
        if not assignments:
            return self
        idx = {self.ctx.index(n): Fraction(v) for n, v in assignments.items()}
        # pure-integer inputs stay in int arithmetic; repeated exponents of a
        # large point dominate the cost, so powers are cached either way
        int_mode = all(v.denominator == 1 for v in idx.values()) and all(
            c.denominator == 1 for c in self.terms.values()
        )
        powers: dict = {}

        def power(i, v, k):
            key = (i, k)
            p = powers.get(key)
            if p is None:
                p = (v.numerator if int_mode else v) ** k
                powers[key] = p
            return p

        out: dict = {}
        for e, c in self.terms.items():
            c = c.numerator if int_mode else c
            for i, v in idx.items():
                if e[i]:
                    c = c * power(i, v, e[i])
            if c == 0:
                continue
            ne = tuple(0 if i in idx else ei for i, ei in enumerate(e))
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            else:
                del out[ne]
        if int_mode:
            out = {e: Fraction(c) for e, c in out.items()}
        return MultiPoly(self.ctx, out)

    def min_exponent(self, name: str) -> int:
        """Smallest exponent of name over all terms (0 for the zero poly)."""
        if not self.terms:
            return 0
        i = self.ctx.index(name)
        return min(e[i] for e in self.terms)

    def divide_power(self, name: str, k: int) -> "MultiPoly":
        if k == 0:
            return self
        i = self.ctx.index(name)
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] -= k
            if ne[i] < 0:
                raise ValueError("not divisible by the requested power")
            out[tuple(ne)] = c
        return MultiPoly(self.ctx, out)

    # ---------------------------------------------------------------- division

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact division; raises ValueError if other does not divide self."""
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_const():
            inv = 1 / other.const_value()
            return self.map_coeffs(lambda c: c * inv)
        quot: dict = {}
        rem = dict(self.terms)
        le, lc = other.leading()
        while rem:
            re = max(rem)
            ne = tuple(a - b for a, b in zip(re, le))
            if any(e < 0 for e in ne):
                raise ValueError("inexact polynomial division")
            coeff = rem[re] / lc
            quot[ne] = coeff
            for e2, c2 in other.terms.items():
                tgt = tuple(a + b for a, b in zip(ne, e2))
                s = rem.get(tgt, _ZERO) - coeff * c2
                if s:
                    rem[tgt] = s
                else:
                    rem.pop(tgt, None)
        return MultiPoly(self.ctx, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.divexact(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    # ---------------------------------------------------------------- views

    def univariate(self, name: str) -> dict[int, "MultiPoly"]:
        """View as a univariate polynomial in name with polynomial coefficients."""
        i = self.ctx.index(name)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            d = e[i]
            ne = list(e)
            ne[i] = 0
            out.setdefault(d, {})[tuple(ne)] = c
        return {d: MultiPoly(self.ctx, t) for d, t in sorted(out.items())}

    @classmethod
    def from_univariate(cls, ctx: VarContext, name: str, coeffs: dict[int, "MultiPoly"]) -> "MultiPoly":
        i = ctx.index(name)
        out: dict = {}
        for d, p in coeffs.items():
            for e, c in p.terms.items():
                ne = list(e)
                ne[i] += d
                ne = tuple(ne)
                s = out.get(ne, _ZERO) + c
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return cls(ctx, out)

    # ---------------------------------------------------------------- normal forms

    def monic(self) -> "MultiPoly":
        """Scale so the leading coefficient is 1; zero stays zero."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        inv = 1 / lc
        return self.map_coeffs(lambda c: c * inv)

    def int_normalized(self) -> "MultiPoly":
        """Scale by a positive rational so coefficients are coprime integers
        and the leading coefficient is positive."""
        if not self.terms:
            return self
        den_lcm = 1
        for c in self.terms.values():
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.terms.values():
            num_gcd = int_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        scale = Fraction(den_lcm, num_gcd)
        if self.leading_coeff() < 0:
            scale = -scale
        return self.map_coeffs(lambda c: c * scale)

    # ---------------------------------------------------------------- printing

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        names = self.ctx.vars
        parts = []
        for expo in sorted(self.terms, reverse=True):
            coeff = self.terms[expo]
            factors = []
            for i, e in enumerate(expo):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            acoeff = abs(coeff)
            if not mono:
                body = str(acoeff)
            elif acoeff == 1:
                body = mono
            else:
                body = f"{acoeff}*{mono}"
            parts.append(("-" if coeff < 0 else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_string()})"


# -------------------------------------------------------------------- gcd

def _content_of_coeffs(coeffs) -> MultiPoly:
    """gcd of a collection of polynomials, with early exit at a constant."""
    it = iter(coeffs)
    g = next(it)
    for p in it:
        if g.is_const() and not g.is_zero():
            break
        g = poly_gcd(g, p)
    if g.is_const() and not g.is_zero():
        return MultiPoly.one(g.ctx)
    return g


def _prem(amap: dict[int, MultiPoly], bmap: dict[int, MultiPoly], ctx) -> dict[int, MultiPoly]:
    """Fraction-free pseudo-remainder of univariate views (main variable elided)."""
    db = max(bmap)
    lb = bmap[db]
    r = dict(amap)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        d = dr - db
        nr: dict[int, MultiPoly] = {}
        for e, c in r.items():
            if e == dr:
                continue
            nr[e] = c * lb
        for e, c in bmap.items():
            if e == db:
                continue
            tgt = e + d
            prev = nr.get(tgt)
            val = lr * c
            nxt = (prev - val) if prev is not None else -val
            if nxt.is_zero():
                nr.pop(tgt, None)
            else:
                nr[tgt] = nxt
        r = nr
    return r


def _primitive(umap: dict[int, MultiPoly]) -> dict[int, MultiPoly]:
    cont = _content_of_coeffs(umap.values())
    if cont.is_one():
        # still strip integer content for coefficient growth control
        pass
    else:
        umap = {d: c.divexact(cont) for d, c in umap.items()}
    # integer normalization across the whole map
    agg: dict = {}
    for d, p in umap.items():
        for e, c in p.terms.items():
            agg[(d, e)] = c
    if not agg:
        return umap
    den_lcm = 1
    for c in agg.values():
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    num_gcd = 0
    for c in agg.values():
        num_gcd = int_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
    scale = Fraction(den_lcm, num_gcd)
    if scale != 1:
        umap = {d: p.map_coeffs(lambda c: c * scale) for d, p in umap.items()}
    return umap


def _frac_univ_gcd_degree(A: list, B: list) -> int:
    """Degree of the gcd of two dense nonzero univariate rationals' coefficient
    lists (index = degree, lists trimmed, leading entries nonzero)."""
    while B:
        while len(A) >= len(B):
            f = A[-1] / B[-1]
            k = len(A) - len(B)
            A = [c - f * B[i - k] if i >= k else c for i, c in enumerate(A[:-1])]
            while A and not A[-1]:
                A.pop()
            if not A:
                break
        A, B = B, A
    return len(A) - 1


def _proven_gcd_free_of(a: MultiPoly, b: MultiPoly, v: str, others: list) -> bool:
    """True when specialization certifies that gcd(a, b) does not involve v.

    All variables but v are evaluated at small integers chosen so that the
    v-degrees of a and b survive.  Degrees add under factorization, so a
    common factor with positive v-degree would keep positive degree in the
    image and show up in the univariate image gcd; image gcd of degree zero
    therefore rules it out.  Inconclusive probes return False.
    """
    amap = a.univariate(v)
    bmap = b.univariate(v)
    da, db = max(amap), max(bmap)
    for attempt in range(4):
        point = {
            name: (11 * attempt * attempt + 7 * attempt + 3 * rank + 2) % 97 + 2
            for rank, name in enumerate(others)
        }
        la = amap[da].specialize(point)
        lb = bmap[db].specialize(point)
        if la.is_zero() or lb.is_zero():
            continue
        A = [amap.get(d, None) for d in range(da + 1)]
        B = [bmap.get(d, None) for d in range(db + 1)]
        A = [_ZERO if p is None else p.specialize(point).const_value() for p in A]
        B = [_ZERO if p is None else p.specialize(point).const_value() for p in B]
        if _frac_univ_gcd_degree(A, B) == 0:
            return True
    return False


def _gcd_chain_without(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    # gcd known free of v: it divides every v-coefficient of both inputs
    g = MultiPoly.zero(a.ctx)
    for p in (a, b):
        for c in p.univariate(v).values():
            g = poly_gcd(g, c)
            if g.is_const():
                return MultiPoly.one(a.ctx)
    return g


def _gcd_chain_one_sided(withv: MultiPoly, without: MultiPoly, v: str) -> MultiPoly:
    # v appears on one side only, so the gcd is free of v and divides each
    # v-coefficient of that side
    g = without
    for c in withv.univariate(v).values():
        g = poly_gcd(g, c)
        if g.is_const():
            return MultiPoly.one(withv.ctx)
    return g


def _gcd_rec(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_const() or b.is_const():
        return MultiPoly.one(a.ctx)
    if a.terms == b.terms:
        return a
    used = a.used_indices() | b.used_indices()
    v = min(
        (a.ctx.vars[i] for i in used),
        key=lambda n: max(a.degree(n), 0) + max(b.degree(n), 0),
    )
    da, db = a.degree(v), b.degree(v)
    if da == 0:
        return _gcd_rec(_content_of_coeffs(b.univariate(v).values()), a)
    if db == 0:
        return _gcd_rec(_content_of_coeffs(a.univariate(v).values()), b)
    amap = a.univariate(v)
    bmap = b.univariate(v)
    ca = _content_of_coeffs(amap.values())
    cb = _content_of_coeffs(bmap.values())
    c = _gcd_rec(ca, cb) if not (ca.is_one() or cb.is_one()) else MultiPoly.one(a.ctx)
    if not ca.is_one():
        amap = {d: p.divexact(ca) for d, p in amap.items()}
    if not cb.is_one():
        bmap = {d: p.divexact(cb) for d, p in bmap.items()}
    if max(amap) < max(bmap):
        amap, bmap = bmap, amap
    while True:
        if max(bmap) == 0:
            pp = None  # coprime in v
            break
        r = _prem(amap, bmap, a.ctx)
        if not r:
            pp = _primitive(bmap)
            break
        amap, bmap = bmap, _primitive(r)
    if pp is None:
        g = c
    else:
        g = c * MultiPoly.from_univariate(a.ctx, v, pp)
    return g


def _smod(n: int, xi: int) -> int:
    r = n % xi
    return r - xi if 2 * r > xi else r


def _int_maxnorm(p: MultiPoly) -> int:
    return max(abs(c.numerator) for c in p.terms.values())


def _heu_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """Evaluation-based gcd attempt for integer-coefficient polynomials.

    Evaluates one variable at a large integer, recursing down to plain integer
    gcds, and lifts the result back through balanced base-xi digits.  Any
    candidate is only accepted after an exact division check against both
    inputs; the evaluation point carries a margin over the coefficient norms
    so a nonconstant common factor cannot masquerade as a constant.  Returns
    None when no candidate survives; callers fall back to the remainder-
    sequence gcd.
    """
    used = a.used_indices() | b.used_indices()
    if not used:
        return MultiPoly.const(a.ctx, int_gcd(
            abs(a.const_value().numerator) if not a.is_zero() else 0,
            abs(b.const_value().numerator) if not b.is_zero() else 0))
    # evaluation points compound multiplicatively with the degree at every
    # nesting level, so eliminating low-degree variables first keeps them small
    v = min(
        (a.ctx.vars[i] for i in used),
        key=lambda n: max(a.degree(n), 0) + max(b.degree(n), 0),
    )
    dcap = min(max(a.degree(v), 0), max(b.degree(v), 0))
    norm = max(_int_maxnorm(a), _int_maxnorm(b))
    margin = min(a.total_degree(), b.total_degree()) + 2
    xi = (2 * norm + 29) << margin
    for _attempt in range(4):
        # nested evaluation points grow like xi ** degree per level; giving up
        # early on oversized points keeps the worst case near the fallback cost
        if xi.bit_length() > 20000:
            return None
        ga = a.specialize({v: xi})
        gb = b.specialize({v: xi})
        h = _heu_gcd(ga, gb)
        if h is not None and not h.is_zero():
            digits: dict[int, MultiPoly] = {}
            gamma = h
            d = 0
            ok = True
            while not gamma.is_zero():
                if d > dcap:
                    ok = False
                    break
                c = gamma.map_coeffs(lambda cc: Fraction(_smod(cc.numerator, xi)))
                if not c.is_zero():
                    digits[d] = c
                gamma = (gamma - c).map_coeffs(lambda cc: cc / xi)
                d += 1
            if ok and digits:
                # No content stripping here: after specializing v, a factor
                # equal to v shows up as integer content of the image, and
                # dropping it would hand back a proper divisor that still
                # passes the division check.  Callers normalize at the top.
                g = MultiPoly.from_univariate(a.ctx, v, digits)
                if g.divides(a) and g.divides(b):
                    return g
        xi = xi * xi + 31
    return None


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to leading coefficient 1.

    gcd(0, b) is the normalization of b; gcd(0, 0) is 0.
    """
    a._same(b)
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return MultiPoly.one(a.ctx)
    if len(a.terms) == 1 or len(b.terms) == 1:
        return _monomial_gcd(a, b)
    ea = _min_exponents(a)
    eb = _min_exponents(b)
    if any(ea) or any(eb):
        shared = tuple(min(p, q) for p, q in zip(ea, eb))
        a = MultiPoly(a.ctx, {tuple(e[i] - ea[i] for i in range(len(ea))): c
                              for e, c in a.terms.items()})
        b = MultiPoly(b.ctx, {tuple(e[i] - eb[i] for i in range(len(eb))): c
                              for e, c in b.terms.items()})
        g = poly_gcd(a, b)
        if any(shared):
            g = g * MultiPoly(g.ctx, {shared: _ONE})
        return g.monic()
    an = a.int_normalized()
    bn = b.int_normalized()
    used_a = an.used_indices()
    used_b = bn.used_indices()
    # a variable only one side uses cannot divide into the gcd
    for vi in sorted(used_a ^ used_b):
        v = an.ctx.vars[vi]
        drop = an if vi in used_a else bn
        keep = bn if vi in used_a else an
        return _gcd_chain_one_sided(drop, keep, v).monic()
    shared = used_a & used_b
    names = [an.ctx.vars[i] for i in sorted(shared)]
    for v in names:
        if _proven_gcd_free_of(an, bn, v, [n for n in names if n != v]):
            return _gcd_chain_without(an, bn, v).monic()
    g = _heu_gcd(an, bn)
    if g is None:
        g = _gcd_rec(an, bn)
    return g.monic()


def _min_exponents(p: MultiPoly) -> tuple:
    it = iter(p.terms)
    lo = list(next(it))
    for e in it:
        for i, v in enumerate(e):
            if v < lo[i]:
                lo[i] = v
    return tuple(lo)


def _monomial_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    # one side is a single term, so the gcd is the shared monomial part
    expo = tuple(min(p, q) for p, q in zip(_min_exponents(a), _min_exponents(b)))
    return MultiPoly(a.ctx, {expo: _ONE})


def poly_lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero() or b.is_zero():
        return MultiPoly.zero(a.ctx)
    return (a * b).divexact(poly_gcd(a, b)).monic()


# -------------------------------------------------------------------- resultant

def resultant(a: MultiPoly, b: MultiPoly, name: str) -> MultiPoly:
    """Sylvester resultant with respect to one variable.

    Computed as the Sylvester determinant by fraction-free elimination, so
    the answer matches the textbook sign conventions exactly.
    """
    a._same(b)
    if a.is_zero() or b.is_zero():
        return MultiPoly.zero(a.ctx)
    m, n = a.degree(name), b.degree(name)
    if m == 0 and n == 0:
        return MultiPoly.one(a.ctx)
    if m == 0:
        return a ** n
    if n == 0:
        return b ** m
    amap = a.univariate(name)
    bmap = b.univariate(name)
    size = m + n
    zero = MultiPoly.zero(a.ctx)
    rows = []
    for i in range(n):
        row = [zero] * size
        for d, c in amap.items():
            row[i + (m - d)] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for d, c in bmap.items():
            row[i + (n - d)] = c
        rows.append(row)
    # Bareiss elimination
    sign = 1
    prev = MultiPoly.one(a.ctx)
    for k in range(size - 1):
        if rows[k][k].is_zero():
            for i in range(k + 1, size):
                if not rows[i][k].is_zero():
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(a.ctx)
        piv = rows[k][k]
        for i in range(k + 1, size):
            rik = rows[i][k]
            for j in range(k + 1, size):
                num = piv * rows[i][j] - rik * rows[k][j]
                rows[i][j] = num.divexact(prev)
            rows[i][k] = zero
        prev = piv
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det


# -------------------------------------------------------------------- content

def content_wrt(p: MultiPoly, outside_indices) -> MultiPoly:
    """Content of p read as a polynomial in the outside variables.

    The result is the normalized gcd of the coefficient polynomials, i.e. the
    product of all factors of p free of every outside variable (up to a
    rational constant, which stays with the primitive part).
    Returns 1 for p == 0 by convention of the callers (they never pass 0).
    """
    if p.is_zero():
        return MultiPoly.one(p.ctx)
    outside = frozenset(outside_indices)
    groups: dict[tuple, dict] = {}
    for e, c in p.terms.items():
        key = tuple(ei if i in outside else 0 for i, ei in enumerate(e))
        inner = tuple(0 if i in outside else ei for i, ei in enumerate(e))
        groups.setdefault(key, {})[inner] = c
    coeffs = [MultiPoly(p.ctx, t) for t in groups.values()]
    if len(coeffs) == 1:
        return coeffs[0].monic()
    return _content_of_coeffs(coeffs).monic()


def squarefree_part(p: MultiPoly, name: str) -> MultiPoly:
    """p divided by gcd(p, dp/dname): kills repeated factors involving name."""
    d = p.derivative(name)
    if d.is_zero():
        return p
    g = poly_gcd(p, d)
    if g.is_const():
        return p
    return p.divexact(g)
