"""Compatibility verification for certificate systems.

A certificate system lists one rational function per operator: u-certificates
for derivations, v for shifts, w for q-shifts.  The system is compatible when
every v and w is nonzero and the seven pairwise identities induced by operator
commutation hold.  check reports every violation with an exact residual:
additive identities report lhs - rhs, multiplicative ones lhs/rhs - 1, so zero
always means pass.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import VarContext
from .errors import ContextMismatchError
from .ops import apply, delta, sigma, tau
from .ratfunc import RatFunc

# report tags, in canonical report order
NONZERO = "NONZERO"
DD = "DD"
SS = "SS"
QQ = "QQ"
DS = "DS"
DQ = "DQ"
SQ = "SQ"

_TAG_ORDER = {tag: pos for pos, tag in enumerate((NONZERO, DD, SS, QQ, DS, DQ, SQ))}


@dataclass(frozen=True)
class CertificateSystem:
    ctx: VarContext
    u: tuple
    v: tuple
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "w", tuple(self.w))
        if len(self.u) != len(self.ctx.tvars):
            raise ValueError("u-certificate count must match derivation variables")
        if len(self.v) != len(self.ctx.xvars):
            raise ValueError("v-certificate count must match shift variables")
        if len(self.w) != len(self.ctx.yvars):
            raise ValueError("w-certificate count must match q-shift variables")
        for cert in (*self.u, *self.v, *self.w):
            if cert.ctx != self.ctx:
                raise ContextMismatchError("certificate from a different context")


@dataclass(frozen=True)
class Violation:
    condition: str
    indices: tuple
    residual: RatFunc

    def describe(self) -> str:
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.condition}({idx}): residual {self.residual}"


@dataclass(frozen=True)
class CompatReport:
    ok: bool
    violations: tuple

    def describe(self) -> str:
        if self.ok:
            return "compatible"
        lines = [f"incompatible: {len(self.violations)} violation(s)"]
        lines += ["  " + v.describe() for v in self.violations]
        return "\n".join(lines)


def _dlog(f: RatFunc, sysctx: VarContext, i: int) -> RatFunc:
    """delta_i(f)/f for nonzero f."""
    return f.derivative(delta(i).var(sysctx)) / f


def check(sys: CertificateSystem) -> CompatReport:
    """Verify the nonvanishing condition and all pairwise identities.

    Identities touching a zero v or w certificate are skipped (the NONZERO
    violation already covers them); everything else is still reported, and
    the list is sorted canonically by condition tag then indices.
    """
    ctx = sys.ctx
    l, m, n = len(sys.u), len(sys.v), len(sys.w)
    out: list[Violation] = []

    def record(tag, indices, lhs, rhs, multiplicative):
        # cheap equality first; residual only materialized on failure
        if lhs == rhs:
            return
        residual = (lhs / rhs - 1) if multiplicative else (lhs - rhs)
        out.append(Violation(tag, indices, residual))

    for j in range(1, m + 1):
        if sys.v[j - 1].is_zero():
            out.append(Violation(NONZERO, ("v", j), RatFunc.zero(ctx)))
    for k in range(1, n + 1):
        if sys.w[k - 1].is_zero():
            out.append(Violation(NONZERO, ("w", k), RatFunc.zero(ctx)))

    # derivation pairs: mixed partials of the u's agree
    for i in range(1, l + 1):
        ti = delta(i).var(ctx)
        for j in range(i + 1, l + 1):
            tj = delta(j).var(ctx)
            record(DD, (i, j), sys.u[j - 1].derivative(ti), sys.u[i - 1].derivative(tj), False)

    # shift pairs
    for i in range(1, m + 1):
        if sys.v[i - 1].is_zero():
            continue
        for j in range(i + 1, m + 1):
            if sys.v[j - 1].is_zero():
                continue
            lhs = apply(sigma(i), sys.v[j - 1]) / sys.v[j - 1]
            rhs = apply(sigma(j), sys.v[i - 1]) / sys.v[i - 1]
            record(SS, (i, j), lhs, rhs, True)

    # q-shift pairs
    for i in range(1, n + 1):
        if sys.w[i - 1].is_zero():
            continue
        for j in range(i + 1, n + 1):
            if sys.w[j - 1].is_zero():
                continue
            lhs = apply(tau(i), sys.w[j - 1]) / sys.w[j - 1]
            rhs = apply(tau(j), sys.w[i - 1]) / sys.w[i - 1]
            record(QQ, (i, j), lhs, rhs, True)

    # derivation against shift
    for i in range(1, l + 1):
        ti = delta(i).var(ctx)
        for j in range(1, m + 1):
            vj = sys.v[j - 1]
            if vj.is_zero():
                continue
            lhs = vj.derivative(ti) / vj
            rhs = apply(sigma(j), sys.u[i - 1]) - sys.u[i - 1]
            record(DS, (i, j), lhs, rhs, False)

    # derivation against q-shift
    for i in range(1, l + 1):
        ti = delta(i).var(ctx)
        for k in range(1, n + 1):
            wk = sys.w[k - 1]
            if wk.is_zero():
                continue
            lhs = wk.derivative(ti) / wk
            rhs = apply(tau(k), sys.u[i - 1]) - sys.u[i - 1]
            record(DQ, (i, k), lhs, rhs, False)

    # shift against q-shift
    for j in range(1, m + 1):
        vj = sys.v[j - 1]
        if vj.is_zero():
            continue
        for k in range(1, n + 1):
            wk = sys.w[k - 1]
            if wk.is_zero():
                continue
            lhs = apply(sigma(j), wk) / wk
            rhs = apply(tau(k), vj) / vj
            record(SQ, (j, k), lhs, rhs, True)

    out.sort(key=lambda vio: (_TAG_ORDER[vio.condition], vio.indices))
    return CompatReport(ok=not out, violations=tuple(out))
