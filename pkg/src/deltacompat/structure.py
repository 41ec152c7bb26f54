"""Product structure behind compatible certificate systems.

Every compatible system is the certificate family of a product solution:
a rational function, symbolic powers of derivation-only bases attached to
the shift variables, and three purely transcendental factors known only
through their certificates.  This module recovers that product, normalizes
it to its unique standard form, decides when the transcendental factors
collapse to a rational function, and searches for integer dependence
relations between several products.

Everything returned is exact and is re-verified against the defining
identities before it is handed back.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .compat import CertificateSystem, check
from .context import VarContext
from .errors import (
    CapacityError,
    MergeConflictError,
    NotCompatibleError,
    StructureViolationError,
)
from .lattice import (
    IntegerLattice,
    gcdfree_basis,
    hermite_normal_form,
    integer_kernel,
    lattice_intersect,
    lattice_project,
    multiplicative_relations,
    small_nonzero,
)
from .ops import OpRef, apply, delta, log_quotient, sigma, tau
from .poly import MultiPoly, content_wrt, poly_gcd
from .ratfunc import RatFunc, canonical_monic, is_monic, split_blocks
from .reduction import (
    dispersion,
    is_log_derivative,
    merge_rational_solution,
    reduced_decompose,
    solve_quotient,
)

_MAX_SYSTEMS = 16


# ----------------------------------------------------------- representation


@dataclass(frozen=True)
class Representation:
    """A compatible system written through a single rational base.

    With dlog the logarithmic derivative and quot the operator quotient,
    the certificates of the represented system are

        u[i] = dlog_i(base) + sum_j dlog_i(power_bases[j]) * x_j + diff_certs[i]
        v[j] = quot_j(base) * power_bases[j] * shift_certs[j]
        w[k] = quot_k(base) * qshift_certs[k]

    where power bases and diff certs live in the derivation variables,
    shift certs in the shift variables and qshift certs in the q-shift
    variables.  The three residual certificate families must again form a
    compatible system; construction checks all of it.
    """

    ctx: VarContext
    base: RatFunc
    power_bases: tuple
    diff_certs: tuple
    shift_certs: tuple
    qshift_certs: tuple

    def __post_init__(self):
        object.__setattr__(self, "power_bases", tuple(self.power_bases))
        object.__setattr__(self, "diff_certs", tuple(self.diff_certs))
        object.__setattr__(self, "shift_certs", tuple(self.shift_certs))
        object.__setattr__(self, "qshift_certs", tuple(self.qshift_certs))
        ctx = self.ctx
        if self.base.ctx != ctx:
            raise ValueError("base from a different context")
        if self.base.is_zero():
            raise ValueError("base must be nonzero")
        if len(self.power_bases) != len(ctx.xvars):
            raise ValueError("one power base per shift variable")
        if len(self.diff_certs) != len(ctx.tvars):
            raise ValueError("one diff cert per derivation variable")
        if len(self.shift_certs) != len(ctx.xvars):
            raise ValueError("one shift cert per shift variable")
        if len(self.qshift_certs) != len(ctx.yvars):
            raise ValueError("one qshift cert per q-shift variable")
        t_only = ctx.block_indices("x", "y")
        for a in self.power_bases:
            if a.ctx != ctx or a.is_zero() or not a.free_of(t_only):
                raise ValueError("power bases must be nonzero and derivation-only")
            if not is_monic(a):
                raise ValueError("power bases must be monic")
        for b in self.diff_certs:
            if b.ctx != ctx or not b.free_of(t_only):
                raise ValueError("diff certs must be derivation-only")
        x_only = ctx.block_indices("t", "y")
        for c in self.shift_certs:
            if c.ctx != ctx or c.is_zero() or not c.free_of(x_only):
                raise ValueError("shift certs must be nonzero and shift-only")
        y_only = ctx.block_indices("t", "x")
        for c in self.qshift_certs:
            if c.ctx != ctx or c.is_zero() or not c.free_of(y_only):
                raise ValueError("qshift certs must be nonzero and q-shift-only")
        report = check(self.residual_system())
        if not report.ok:
            raise ValueError("residual certificates are not compatible:\n"
                             + report.describe())

    def residual_system(self) -> CertificateSystem:
        return CertificateSystem(self.ctx, self.diff_certs,
                                 self.shift_certs, self.qshift_certs)

    def is_standard(self) -> bool:
        """Base monic with no factor lying purely in a single block."""
        if not is_monic(self.base):
            return False
        parts = split_blocks(self.base, ("t", "x", "y"))
        return parts.rest == self.base


def build_system(rep: Representation) -> CertificateSystem:
    """The certificate system of a representation, by the defining formulas."""
    ctx = rep.ctx
    u = []
    for i in range(len(ctx.tvars)):
        op = delta(i + 1)
        cert = log_quotient(op, rep.base) + rep.diff_certs[i]
        for j, a in enumerate(rep.power_bases):
            if not a.is_one():
                cert = cert + log_quotient(op, a) * RatFunc.var(ctx, ctx.xvars[j])
        u.append(cert)
    v = []
    for j in range(len(ctx.xvars)):
        op = sigma(j + 1)
        v.append(log_quotient(op, rep.base) * rep.power_bases[j] * rep.shift_certs[j])
    w = []
    for k in range(len(ctx.yvars)):
        op = tau(k + 1)
        w.append(log_quotient(op, rep.base) * rep.qshift_certs[k])
    return CertificateSystem(ctx, u, v, w)


def represent(sys: CertificateSystem) -> Representation:
    """Recover a representation of a compatible system.

    Each q-shift certificate is split into its q-shift-pure part and a rest
    whose reduced decomposition must have a constant core; the shells are
    merged into the common base together with the shells of the shift
    certificates.  A non-constant core or a residual that keeps shift
    variables means the input violates the product structure, which cannot
    happen for a system that passed the compatibility check; it is raised
    as a StructureViolationError naming the step.
    """
    report = check(sys)
    if not report.ok:
        raise NotCompatibleError(report)
    ctx = sys.ctx
    targets = []
    qshift_certs = []
    for k, wk in enumerate(sys.w, start=1):
        op = tau(k)
        parts = split_blocks(wk, ("y",))
        dec = reduced_decompose(parts.rest, op)
        if not dec.core.in_field():
            raise StructureViolationError(
                "qshift-core", f"{op.label()}: core {dec.core} is not constant")
        qshift_certs.append(dec.core * parts.pure["y"])
        targets.append((op, dec.shell))
    power_bases = []
    shift_certs = []
    for j, vj in enumerate(sys.v, start=1):
        op = sigma(j)
        parts = split_blocks(vj, ("t", "x"))
        dec = reduced_decompose(parts.rest, op)
        if not dec.core.in_field():
            raise StructureViolationError(
                "shift-core", f"{op.label()}: core {dec.core} is not constant")
        power_bases.append(parts.pure["t"])
        shift_certs.append(dec.core * parts.pure["x"])
        targets.append((op, dec.shell))
    try:
        base = merge_rational_solution(ctx, targets)
    except MergeConflictError as err:
        # impossible after the compatibility check passed; keep the trace
        raise StructureViolationError("merge", str(err)) from err
    moving = ctx.block_indices("x", "y")
    diff_certs = []
    for i, ui in enumerate(sys.u, start=1):
        op = delta(i)
        cert = ui - log_quotient(op, base)
        for j, a in enumerate(power_bases):
            if not a.is_one():
                cert = cert - log_quotient(op, a) * RatFunc.var(ctx, ctx.xvars[j])
        if not cert.free_of(moving):
            raise StructureViolationError(
                "derivation-residual",
                f"{op.label()}: residual {cert} keeps shift variables")
        diff_certs.append(cert)
    try:
        rep = Representation(ctx, base, power_bases, diff_certs,
                             shift_certs, qshift_certs)
    except ValueError as err:
        raise StructureViolationError("residual", str(err)) from err
    rebuilt = build_system(rep)
    if rebuilt.u != sys.u or rebuilt.v != sys.v or rebuilt.w != sys.w:
        raise StructureViolationError(
            "reconstruction", "rebuilt certificates differ from the input")
    return rep


def standardize(rep: Representation) -> Representation:
    """The unique standard form: base monic with no block-pure factor.

    Block-pure factors of the base move into the residual certificates
    (their log-quotients under the matching operators), constants vanish
    because every log-quotient of a constant is trivial, and power bases
    shed their units into the shift certs.  Idempotent.
    """
    ctx = rep.ctx
    parts = split_blocks(rep.base, ("t", "x", "y"))
    base = parts.rest
    ft, fx, fy = parts.pure["t"], parts.pure["x"], parts.pure["y"]
    diff = list(rep.diff_certs)
    shift = list(rep.shift_certs)
    qshift = list(rep.qshift_certs)
    if not ft.is_one():
        for i in range(len(diff)):
            diff[i] = diff[i] + log_quotient(delta(i + 1), ft)
    if not fx.is_one():
        for j in range(len(shift)):
            shift[j] = shift[j] * log_quotient(sigma(j + 1), fx)
    if not fy.is_one():
        for k in range(len(qshift)):
            qshift[k] = qshift[k] * log_quotient(tau(k + 1), fy)
    return Representation(ctx, base, rep.power_bases, diff, shift, qshift)


# ----------------------------------------------------------------- products


@dataclass(frozen=True)
class HProduct:
    """A solution presented as rational part * powers * certificate factors.

    powers lists (monic base, shift variable name) pairs with base != 1;
    the three certificate tuples describe transcendental factors through
    their operator certificates, exactly as in Representation.
    """

    ctx: VarContext
    rational_part: RatFunc
    powers: tuple
    diff_certs: tuple
    shift_certs: tuple
    qshift_certs: tuple

    def __post_init__(self):
        object.__setattr__(self, "powers", tuple(self.powers))
        object.__setattr__(self, "diff_certs", tuple(self.diff_certs))
        object.__setattr__(self, "shift_certs", tuple(self.shift_certs))
        object.__setattr__(self, "qshift_certs", tuple(self.qshift_certs))
        seen = set()
        for base, name in self.powers:
            if name not in self.ctx.xvars:
                raise ValueError(f"power variable {name} is not a shift variable")
            if name in seen:
                raise ValueError(f"duplicate power variable {name}")
            seen.add(name)
            if base.is_one():
                raise ValueError("trivial power bases are not retained")
        # full validation happens through the representation view
        self.as_representation()

    def as_representation(self) -> Representation:
        ctx = self.ctx
        by_name = {name: base for base, name in self.powers}
        bases = tuple(by_name.get(n, RatFunc.one(ctx)) for n in ctx.xvars)
        return Representation(ctx, self.rational_part, bases,
                              self.diff_certs, self.shift_certs,
                              self.qshift_certs)

    def describe(self) -> str:
        ctx = self.ctx
        pieces = []
        if not self.rational_part.is_one():
            pieces.append(self.rational_part.to_string())
        for base, name in self.powers:
            pieces.append(f"({base.to_string()})^{name}")
        for name, cert in zip(ctx.tvars, self.diff_certs):
            if not cert.is_zero():
                pieces.append(f"exp_factor[dlog {name} = {cert.to_string()}]")
        for name, cert in zip(ctx.xvars, self.shift_certs):
            if not cert.is_one():
                pieces.append(f"shift_factor[{name}-quotient = {cert.to_string()}]")
        for name, cert in zip(ctx.yvars, self.qshift_certs):
            if not cert.is_one():
                pieces.append(f"qshift_factor[{name}-quotient = {cert.to_string()}]")
        return " * ".join(pieces) if pieces else "1"


def decompose(sys: CertificateSystem) -> HProduct:
    """Standard product decomposition of a compatible system."""
    std = standardize(represent(sys))
    ctx = std.ctx
    powers = tuple((a, ctx.xvars[j]) for j, a in enumerate(std.power_bases)
                   if not a.is_one())
    return HProduct(ctx, std.base, powers, std.diff_certs,
                    std.shift_certs, std.qshift_certs)


# ------------------------------------------------------------------ sampling


def _rand_poly(rng, ctx, names, deg, coeff, nonzero=True):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exp = [0] * ctx.nvars
        budget = rng.randint(0, deg)
        for _ in range(budget):
            exp[ctx.index(rng.choice(names))] += 1
        c = rng.randint(-coeff, coeff)
        if c:
            key = tuple(exp)
            terms[key] = terms.get(key, 0) + c
    p = MultiPoly(ctx, {k: Fraction(v) for k, v in terms.items() if v})
    if p.is_zero() and nonzero:
        return MultiPoly.const(ctx, rng.randint(1, coeff))
    return p


def _rand_ratfunc(rng, ctx, names, deg, coeff):
    num = _rand_poly(rng, ctx, names, deg, coeff)
    den = _rand_poly(rng, ctx, names, deg, coeff)
    return RatFunc(num, den)


def sample_representation(ctx: VarContext, seed: int, deg: int = 3,
                          coeff: int = 9) -> Representation:
    """A deterministic pseudo-random valid representation.

    Residual certificates come from potentials (log-derivatives and
    operator quotients of random rational functions) plus per-variable
    extras, which makes the residual family compatible by construction;
    the constructor still checks it.  Used by round-trip harnesses.
    """
    rng = random.Random(seed)
    tnames = list(ctx.tvars)
    xnames = list(ctx.xvars)
    ynames = list(ctx.yvars)
    qnames = list(ctx.qvars)
    mixed = tnames + xnames + ynames + qnames
    base = _rand_ratfunc(rng, ctx, mixed, deg, coeff)
    bases = []
    for _ in xnames:
        if tnames and rng.random() < 0.7:
            bases.append(canonical_monic(
                _rand_ratfunc(rng, ctx, tnames + qnames, deg, coeff))[0])
        else:
            bases.append(RatFunc.one(ctx))
    diff = []
    if tnames:
        pot = _rand_ratfunc(rng, ctx, tnames + qnames, deg, coeff)
        for i in range(len(tnames)):
            extra = RatFunc.const(ctx, Fraction(rng.randint(-coeff, coeff)))
            diff.append(log_quotient(delta(i + 1), pot) + extra)
    shift = []
    if xnames:
        pot = _rand_ratfunc(rng, ctx, xnames + qnames, deg, coeff)
        for j, name in enumerate(xnames):
            own = _rand_ratfunc(rng, ctx, [name] + qnames, deg, coeff)
            shift.append(log_quotient(sigma(j + 1), pot) * own)
    qshift = []
    if ynames:
        pot = _rand_ratfunc(rng, ctx, ynames + qnames, deg, coeff)
        for k, name in enumerate(ynames):
            own = _rand_ratfunc(rng, ctx, [name] + qnames, deg, coeff)
            qshift.append(log_quotient(tau(k + 1), pot) * own)
    return Representation(ctx, base, bases, diff, shift, qshift)


# --------------------------------------------------------------- rationality


def _exp_witness(ctx: VarContext, certs) -> RatFunc | None:
    """A rational g with dlog_i(g) == certs[i] for every derivation."""
    remaining = [c for c in certs]
    g = RatFunc.one(ctx)
    for i in range(len(remaining)):
        r = remaining[i]
        if r.is_zero():
            continue
        earlier = {ctx.index(ctx.tvars[a]) for a in range(i)}
        if earlier and not r.free_of(earlier):
            return None
        hits = is_log_derivative(i + 1, r)
        if hits is None:
            return None
        gi = RatFunc.one(ctx)
        for p, c in hits:
            gi = gi * RatFunc.from_poly(p) ** c
        for a in range(i, len(remaining)):
            remaining[a] = remaining[a] - log_quotient(delta(a + 1), gi)
        g = g * gi
    for i, cert in enumerate(certs, start=1):
        if log_quotient(delta(i), g) != cert:
            return None
    return g


def _quotient_witness(ctx: VarContext, certs, opmaker, names) -> RatFunc | None:
    """A rational g whose operator quotients match certs, one per variable."""
    g = RatFunc.one(ctx)
    done = []
    for j, cert in enumerate(certs, start=1):
        op = opmaker(j)
        target = cert / log_quotient(op, g)
        if not target.is_one():
            z = solve_quotient(op, target, forbidden=tuple(done))
            if z is None:
                return None
            g = g * z
        done.append(names[j - 1])
    for j, cert in enumerate(certs, start=1):
        if log_quotient(opmaker(j), g) != cert:
            return None
    return g


def is_rational_product(product: HProduct) -> RatFunc | None:
    """Witness that the certificate factors multiply to a rational function.

    The rational part is not part of the test: the returned witness has the
    same certificates as the power and transcendental factors together, so
    the full solution is rational_part * witness.  None means those factors
    are genuinely transcendental.
    """
    if product.powers:
        return None
    ctx = product.ctx
    g_exp = _exp_witness(ctx, product.diff_certs)
    if g_exp is None:
        return None
    g_shift = _quotient_witness(ctx, product.shift_certs, sigma, ctx.xvars)
    if g_shift is None:
        return None
    g_qshift = _quotient_witness(ctx, product.qshift_certs, tau, ctx.yvars)
    if g_qshift is None:
        return None
    return g_exp * g_shift * g_qshift


# ---------------------------------------------- univariate over rational maps

# Dense-free univariate arithmetic in one chosen variable with rational
# function coefficients: degree -> RatFunc maps.  Used for partial fraction
# data in the dependence lattice, where coefficients keep the other
# variables.


def _rp(p: MultiPoly, name: str) -> dict:
    return {d: RatFunc.from_poly(c) for d, c in p.univariate(name).items()}


def _rp_deg(a: dict) -> int:
    return max(a) if a else -1


def _rp_clean(a: dict) -> dict:
    return {d: c for d, c in a.items() if not c.is_zero()}


def _rp_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for d, c in b.items():
        cur = out.get(d)
        out[d] = -c if cur is None else cur - c
    return _rp_clean(out)


def _rp_smul(a: dict, c: RatFunc) -> dict:
    if c.is_zero():
        return {}
    return {d: v * c for d, v in a.items()}


def _rp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            cur = out.get(d)
            out[d] = ca * cb if cur is None else cur + ca * cb
    return _rp_clean(out)


def _rp_divmod(a: dict, b: dict) -> tuple[dict, dict]:
    if not b:
        raise ZeroDivisionError("division by zero map")
    db = _rp_deg(b)
    lc = b[db]
    quo: dict = {}
    rem = dict(a)
    while rem and _rp_deg(rem) >= db:
        dr = _rp_deg(rem)
        c = rem[dr] / lc
        quo[dr - db] = c
        for d, v in b.items():
            t = d + dr - db
            cur = rem.get(t)
            nxt = -v * c if cur is None else cur - v * c
            if nxt.is_zero():
                rem.pop(t, None)
            else:
                rem[t] = nxt
    return quo, rem


def _rp_mod(a: dict, b: dict) -> dict:
    return _rp_divmod(a, b)[1]


def _rp_inverse(a: dict, mod: dict, ctx: VarContext) -> dict:
    """Inverse of a modulo mod; the two must be coprime."""
    one = RatFunc.one(ctx)
    r0, r1 = dict(mod), _rp_mod(a, mod)
    s0, s1 = {}, {0: one}
    while r1:
        q, r = _rp_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _rp_sub(s0, _rp_mul(q, s1))
    if _rp_deg(r0) != 0:
        raise ValueError("element is not invertible modulo the cluster")
    return _rp_mod(_rp_smul(s0, r0[0].inverse()), mod)


def _rp_pow(a: dict, n: int) -> dict:
    if n < 1:
        raise ValueError("positive powers only")
    out = dict(a)
    for _ in range(n - 1):
        out = _rp_mul(out, a)
    return out


# ------------------------------------------------------- dependence lattice


class _RowBuilder:
    """Accumulates exact linear conditions on the exponent vector.

    Conditions are sums over the s products, possibly with an auxiliary
    integer unknown (used for residue integrality: the combined residue at
    a cluster must equal some integer, so the integer itself becomes a
    kernel coordinate and is projected away afterwards).
    """

    def __init__(self, s: int):
        self.s = s
        self.naux = 0
        self.rows: list[list[Fraction]] = []

    def _pad(self, row: list[Fraction]) -> None:
        row += [Fraction(0)] * (self.s + self.naux - len(row))
        self.rows.append(row)

    def add_linear(self, elems, aux: bool = False) -> None:
        """Require sum_i w_i * elems[i] == 0, optionally minus one free
        integer times the constant function 1."""
        ctx = None
        for e in elems:
            if e is not None and not e.is_zero():
                ctx = e.ctx
                break
        if ctx is None:
            return
        cols = list(elems)
        if aux:
            self.naux += 1
            for r in self.rows:
                r.append(Fraction(0))
            cols.append(RatFunc.const(ctx, -1))
        # common denominator by brute product keeps every row exact
        common = MultiPoly.one(ctx)
        for e in cols:
            if e is not None and not e.is_zero():
                common = common * e.den
        polys = []
        for e in cols:
            if e is None or e.is_zero():
                polys.append(MultiPoly.zero(ctx))
            else:
                polys.append(e.num * common.divexact(e.den))
        monomials = set()
        for p in polys:
            monomials.update(p.terms)
        width = self.s + self.naux
        for m in sorted(monomials):
            row = [Fraction(0)] * width
            for pos, p in enumerate(polys):
                c = p.terms.get(m)
                if c is None:
                    continue
                if aux and pos == len(cols) - 1:
                    row[width - 1] = c
                else:
                    row[pos] = c
            if any(row):
                self._pad(row)

    def solve(self) -> IntegerLattice:
        width = self.s + self.naux
        if not self.rows:
            return hermite_normal_form(
                [[1 if i == j else 0 for j in range(self.s)] for i in range(self.s)],
                self.s)
        matrix = []
        for row in self.rows:
            den = 1
            for c in row:
                den = den * c.denominator // _gcd(den, c.denominator)
            ints = [int(c * den) for c in row]
            g = 0
            for v in ints:
                g = _gcd(g, abs(v))
            if g > 1:
                ints = [v // g for v in ints]
            matrix.append(ints)
        kernel = integer_kernel(matrix, width)
        if self.naux == 0:
            return kernel
        return lattice_project(kernel, range(self.s))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _full_lattice(s: int) -> IntegerLattice:
    return hermite_normal_form(
        [[1 if i == j else 0 for j in range(s)] for i in range(s)], s)


def _sqfree_coprime(polys, name: str):
    """Pairwise coprime, squarefree-in-name refinement of the given polys."""
    cur = [p.monic() for p in polys if not p.is_const()]
    if not cur:
        return []
    cur = list(gcdfree_basis(cur).basis)
    while True:
        nxt = []
        changed = False
        for b in cur:
            g = poly_gcd(b, b.derivative(name))
            if g.is_const():
                nxt.append(b)
            else:
                nxt += [g, b.divexact(g)]
                changed = True
        if not changed:
            return cur
        cur = list(gcdfree_basis([p for p in nxt if not p.is_const()]).basis)


def _cluster_data(ctx, name, num: MultiPoly, den: MultiPoly, b: MultiPoly):
    """Partial fraction data of num/den at the cluster b.

    Returns (coeffs, residue): coeffs[o] is the order-(o+2) pole
    coefficient map and residue the order-1 residue function modulo b, or
    None when b does not divide den.
    """
    e = 0
    rest = den
    while b.divides(rest):
        rest = rest.divexact(b)
        e += 1
    if e == 0:
        return None
    b_rp = _rp(b, name)
    be = _rp_pow(b_rp, e) if e > 1 else b_rp
    inv = _rp_inverse(_rp(rest, name), be, ctx)
    comp = _rp_mod(_rp_mul(_rp(num, name), inv), be)
    digits = []
    for _ in range(e):
        comp, r = _rp_divmod(comp, b_rp)
        digits.append(r)
    # digits[k] sits over b**(e-k); orders above one must cancel in a
    # combination, the order-one term feeds the residue condition
    coeffs = [digits[e - o] for o in range(2, e + 1)]
    db = _rp(b.derivative(name), name)
    residue = _rp_mod(_rp_mul(digits[e - 1], _rp_inverse(db, b_rp, ctx)), b_rp)
    return coeffs, residue


def _numeric_dense(rp: dict) -> list[Fraction] | None:
    out = [Fraction(0)] * (_rp_deg(rp) + 1)
    for d, c in rp.items():
        if not c.is_const():
            return None
        out[d] = c.const_value()
    return out


def _try_split_cluster(ctx, name, b: MultiPoly, residue: dict):
    """Split b along the level sets of a numeric residue function."""
    from ._univ import aberth_roots, clear_to_int, eval_at, trim

    rdense = _numeric_dense(residue)
    if rdense is None or len(trim(rdense)) <= 1:
        return None
    idx = ctx.index(name)
    if not b.free_of(b.used_indices() - {idx}):
        return None
    bmap = b.univariate(name)
    bdense = [Fraction(0)] * (b.degree(name) + 1)
    for d, c in bmap.items():
        if not c.is_const():
            return None
        bdense[d] = c.const_value()
    try:
        roots = aberth_roots(clear_to_int(bdense))
    except Exception:
        return None
    values = set()
    for r in roots:
        v = eval_at(rdense, r)
        if abs(v.imag) > 1e-6:
            continue
        values.add(Fraction(v.real).limit_denominator(10 ** 9))
    if len(values) < 2:
        return None
    parts = []
    prod = MultiPoly.one(ctx)
    var = MultiPoly.var(ctx, name)
    for gamma in sorted(values):
        shifted = MultiPoly.zero(ctx)
        for d, c in enumerate(rdense):
            cc = c - gamma if d == 0 else c
            if cc:
                shifted = shifted + MultiPoly.const(ctx, cc) * var ** d
        if shifted.is_zero():
            continue
        g = poly_gcd(b, shifted)
        if not g.is_const():
            parts.append(g)
            prod = prod * g
    if len(parts) >= 2 and prod == b:
        return parts
    return None


def _exp_condition_lattice(ctx, certs) -> IntegerLattice:
    """Exponent vectors whose combination of diff certs can be a rational
    logarithmic derivative, one derivation variable at a time.

    Conditions per variable: polynomial parts cancel, pole orders above one
    cancel, and each cluster residue combines to one integer, realized with
    an auxiliary integer column.  Clusters are refined to squarefree
    pairwise coprime parts and further split along numeric residue level
    sets so that constant-per-cluster residues are not an extra assumption
    in the common cases.
    """
    s = len(certs)
    lat = _full_lattice(s)
    for i, name in enumerate(ctx.tvars):
        column = [p[i] for p in certs]
        if all(c.is_zero() for c in column):
            continue
        builder = _RowBuilder(s)
        idx = ctx.index(name)
        polyparts = []
        propers = []
        for c in column:
            quo, rem = c.poly_part(name)
            polyparts.append(quo)
            propers.append(rem)
        builder.add_linear(polyparts)
        dens = []
        for r in propers:
            if r.is_zero():
                dens.append(None)
                continue
            cont = content_wrt(r.den, {idx})
            dens.append(r.den.divexact(cont) if not cont.is_one() else r.den)
        clusters = _sqfree_coprime([d for d in dens if d is not None], name)
        # refine along numeric residue level sets until stable
        stable = False
        while not stable:
            stable = True
            for b in list(clusters):
                for r in propers:
                    if r.is_zero():
                        continue
                    data = _cluster_data(ctx, name, r.num, r.den, b)
                    if data is None:
                        continue
                    parts = _try_split_cluster(ctx, name, b, data[1])
                    if parts:
                        clusters.remove(b)
                        clusters += parts
                        stable = False
                        break
                if not stable:
                    break
        for b in clusters:
            order_rows: dict[int, list] = {}
            residues = []
            for pos, r in enumerate(propers):
                if r.is_zero():
                    data = None
                else:
                    data = _cluster_data(ctx, name, r.num, r.den, b)
                if data is None:
                    residues.append({})
                    continue
                coeffs, residue = data
                residues.append(residue)
                for o, rp in enumerate(coeffs):
                    order_rows.setdefault(o, [{} for _ in range(s)])[pos] = rp
            for o, rps in sorted(order_rows.items()):
                for d in sorted({dd for rp in rps for dd in rp}):
                    builder.add_linear(
                        [rp.get(d, RatFunc.zero(ctx)) for rp in rps])
            degs = {dd for rp in residues for dd in rp}
            if not degs:
                continue
            # the unit coordinate carries the integrality constraint
            for d in sorted(degs - {0}):
                builder.add_linear(
                    [rp.get(d, RatFunc.zero(ctx)) for rp in residues])
            builder.add_linear(
                [rp.get(0, RatFunc.zero(ctx)) for rp in residues], aux=True)
        lat = lattice_intersect(lat, builder.solve())
        if lat.is_trivial():
            return lat
    return lat


def _core_profile(ctx, cert: RatFunc, op: OpRef):
    """Monic core, unit and monomial weight of a quotient certificate.

    Monomial content in the parameter variables moves into the unit: the
    unit relation lattice decides its fate exactly, while keeping bare
    parameters out of the orbit basis."""
    dec = reduced_decompose(cert, op)
    core, unit = canonical_monic(dec.core)
    weight = 0
    if op.kind == "tau":
        name = op.var(ctx)
        weight = core.num.min_exponent(name) - core.den.min_exponent(name)
        if weight > 0:
            core = RatFunc(core.num.divide_power(name, weight), core.den,
                           reduced=True)
        elif weight < 0:
            core = RatFunc(core.num, core.den.divide_power(name, -weight),
                           reduced=True)
    for qname in ctx.qvars:
        c = core.num.min_exponent(qname) - core.den.min_exponent(qname)
        if c > 0:
            core = RatFunc(core.num.divide_power(qname, c), core.den,
                           reduced=True)
        elif c < 0:
            core = RatFunc(core.num, core.den.divide_power(qname, -c),
                           reduced=True)
        if c:
            unit = unit * RatFunc.var(ctx, qname) ** c
    return core, unit, weight


def _orbit_lattice(ctx, cores, op: OpRef) -> IntegerLattice:
    """Exponent vectors for which the cores' shift orbits telescope away."""
    s = len(cores)
    polys = []
    for c in cores:
        polys.append(c.num)
        polys.append(c.den)
    if all(p.is_const() for p in polys):
        return _full_lattice(s)
    gfb = gcdfree_basis(polys)
    nb = len(gfb.basis)
    parent = list(range(nb))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(nb):
        for j in range(i + 1, nb):
            if find(i) == find(j):
                continue
            linked = False
            for x, y in ((i, j), (j, i)):
                hits = dispersion(gfb.basis[y], gfb.basis[x], op).hits
                for k in hits:
                    if k == 0:
                        continue
                    moved = canonical_monic(
                        apply(op, RatFunc.from_poly(gfb.basis[x]), k))[0]
                    if moved.den.is_one() and moved.num == gfb.basis[y]:
                        parent[find(y)] = find(x)
                        linked = True
                        break
                if linked:
                    break
    orbits: dict[int, list[int]] = {}
    for i in range(nb):
        orbits.setdefault(find(i), []).append(i)
    rows = []
    for members in orbits.values():
        row = []
        for i in range(s):
            total = 0
            for m in members:
                total += gfb.exponents[2 * i][m] - gfb.exponents[2 * i + 1][m]
            row.append(total)
        if any(row):
            rows.append(row)
    if not rows:
        return _full_lattice(s)
    return integer_kernel(rows, s)


def _quotient_condition_lattice(ctx, certs, opmaker, count) -> IntegerLattice:
    """Conditions for combined shift or q-shift certificates to be solvable:
    orbit multiplicities cancel, monomial weights cancel, and the constant
    units multiply to 1 (for q-shifts: to an integer power of the parameter,
    which the shift of a monomial absorbs)."""
    s = len(certs)
    lat = _full_lattice(s)
    for pos in range(count):
        op = opmaker(pos + 1)
        cores = []
        units = []
        weights = []
        for p in certs:
            core, unit, weight = _core_profile(ctx, p[pos], op)
            cores.append(core)
            units.append(unit)
            weights.append(weight)
        lat = lattice_intersect(lat, _orbit_lattice(ctx, cores, op))
        if lat.is_trivial():
            return lat
        if any(weights):
            lat = lattice_intersect(lat, integer_kernel([weights], s))
            if lat.is_trivial():
                return lat
        if not all(u.is_one() for u in units):
            if op.kind == "tau":
                slack = RatFunc.var(ctx, ctx.q_for_y(op.var(ctx)))
                unit_lat = multiplicative_relations(units + [slack])
                unit_lat = lattice_project(unit_lat, range(s))
            else:
                unit_lat = multiplicative_relations(units)
            lat = lattice_intersect(lat, unit_lat)
            if lat.is_trivial():
                return lat
    return lat


@dataclass(frozen=True)
class DependenceWitness:
    """Verified dependence: the products powered by omega multiply to
    rational_value * exp_witness * shift_witness * qshift_witness, a
    rational function."""

    omega: tuple
    rational_value: RatFunc
    exp_witness: RatFunc
    shift_witness: RatFunc
    qshift_witness: RatFunc

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(self.omega))
        if not any(self.omega):
            raise ValueError("omega must be nonzero")

    def value(self) -> RatFunc:
        return (self.rational_value * self.exp_witness
                * self.shift_witness * self.qshift_witness)


def _combined_power_base(products, omega, name) -> RatFunc:
    ctx = products[0].ctx
    out = RatFunc.one(ctx)
    for p, w in zip(products, omega):
        if w == 0:
            continue
        for base, var in p.powers:
            if var == name:
                out = out * base ** w
    return out


def _verify_dependence(products, omega) -> DependenceWitness | None:
    ctx = products[0].ctx
    for name in ctx.xvars:
        if not _combined_power_base(products, omega, name).is_one():
            return None
    diff = []
    for i in range(len(ctx.tvars)):
        c = RatFunc.zero(ctx)
        for p, w in zip(products, omega):
            if w:
                c = c + p.diff_certs[i] * RatFunc.const(ctx, w)
        diff.append(c)
    g_exp = _exp_witness(ctx, diff)
    if g_exp is None:
        return None
    shift = []
    for j in range(len(ctx.xvars)):
        c = RatFunc.one(ctx)
        for p, w in zip(products, omega):
            if w:
                c = c * p.shift_certs[j] ** w
        shift.append(c)
    g_shift = _quotient_witness(ctx, shift, sigma, ctx.xvars)
    if g_shift is None:
        return None
    qshift = []
    for k in range(len(ctx.yvars)):
        c = RatFunc.one(ctx)
        for p, w in zip(products, omega):
            if w:
                c = c * p.qshift_certs[k] ** w
        qshift.append(c)
    g_qshift = _quotient_witness(ctx, qshift, tau, ctx.yvars)
    if g_qshift is None:
        return None
    value = RatFunc.one(ctx)
    for p, w in zip(products, omega):
        if w:
            value = value * p.rational_part ** w
    return DependenceWitness(tuple(omega), value, g_exp, g_shift, g_qshift)


def _candidate_vectors(lat: IntegerLattice) -> list[tuple]:
    cands = []
    v = small_nonzero(lat)
    if v is not None:
        cands.append(v)
    for row in lat.rows:
        cands.append(row)
    for a, b in itertools.combinations(lat.rows[:4], 2):
        cands.append(tuple(x + y for x, y in zip(a, b)))
        cands.append(tuple(x - y for x, y in zip(a, b)))
    out = []
    seen = set()
    for c in cands:
        if any(c) and c not in seen:
            seen.add(c)
            out.append(c)
    return out[:12]


def algebraic_dependence(systems) -> DependenceWitness | None:
    """Find a nonzero integer vector making the product of the systems'
    solutions, powered accordingly, a rational function.

    Decomposes each system, intersects the exponent lattices of the power,
    exp, shift and q-shift parts, and verifies a small vector of the
    intersection exactly.  None means no dependence was found; for up to
    four systems a bounded exhaustive scan backs the lattice answer.
    """
    systems = list(systems)
    if not systems:
        raise ValueError("no systems given")
    if len(systems) > _MAX_SYSTEMS:
        raise CapacityError(f"at most {_MAX_SYSTEMS} systems are supported")
    ctx = systems[0].ctx
    for sys in systems[1:]:
        ctx.same(sys.ctx)
    products = [decompose(sys) for sys in systems]
    s = len(products)
    lat = _full_lattice(s)
    for name in ctx.xvars:
        bases = []
        for p in products:
            found = RatFunc.one(ctx)
            for base, var in p.powers:
                if var == name:
                    found = base
            bases.append(found)
        if all(b.is_one() for b in bases):
            continue
        lat = lattice_intersect(
            lat, multiplicative_relations(bases, blocks=("t",)))
        if lat.is_trivial():
            break
    if not lat.is_trivial():
        lat = lattice_intersect(
            lat, _exp_condition_lattice(ctx, [p.diff_certs for p in products]))
    if not lat.is_trivial():
        lat = lattice_intersect(
            lat, _quotient_condition_lattice(
                ctx, [p.shift_certs for p in products], sigma, len(ctx.xvars)))
    if not lat.is_trivial():
        lat = lattice_intersect(
            lat, _quotient_condition_lattice(
                ctx, [p.qshift_certs for p in products], tau, len(ctx.yvars)))
    for cand in _candidate_vectors(lat):
        witness = _verify_dependence(products, cand)
        if witness is not None:
            return witness
    if s <= 4:
        # bounded scan: soundness of the lattice path does not depend on it,
        # this backstops completeness at small sizes
        grid = sorted(itertools.product(range(-2, 3), repeat=s),
                      key=lambda v: (sum(x * x for x in v), v))
        for cand in grid:
            if not any(cand):
                continue
            witness = _verify_dependence(products, cand)
            if witness is not None:
                return witness
    return None
