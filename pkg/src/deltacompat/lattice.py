"""Integer linear algebra for multiplicative relations.

gcdfree_basis rewrites a list of polynomials over one set of pairwise-coprime
factors; multiplicative_relations turns parameter-field constants into the
lattice of exponent vectors whose power product is exactly 1; the rest is
Hermite normal form plumbing (kernels, intersections, projections) over ZZ.

No floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapacityError
from .poly import MultiPoly, poly_gcd
from .ratfunc import RatFunc


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of ZZ^dim, rows in Hermite normal form.

    Row echelon with positive pivots and entries above each pivot reduced
    into [0, pivot), so equal lattices have equal row tuples.
    """

    rows: tuple[tuple[int, ...], ...]
    dim: int

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_trivial(self) -> bool:
        return not self.rows

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        if len(v) != self.dim:
            raise ValueError("vector has the wrong dimension")
        for row in self.rows:
            c = _pivot_col(row)
            if v[c] % row[c]:
                return False
            f = v[c] // row[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)


def _pivot_col(row: Sequence[int]) -> int:
    for i, a in enumerate(row):
        if a:
            return i
    raise ValueError("zero row has no pivot")


def hermite_normal_form(rows: Sequence[Sequence[int]], dim: int) -> IntegerLattice:
    """Canonical basis of the lattice generated by the given rows."""
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != dim:
            raise ValueError("row has the wrong dimension")
    rank = 0
    for col in range(dim):
        # gcd out the column below the current rank using row operations
        piv = None
        for i in range(rank, len(mat)):
            if not mat[i][col]:
                continue
            if piv is None:
                piv = i
                continue
            while mat[i][col]:
                f = mat[piv][col] // mat[i][col]
                mat[piv] = [a - f * b for a, b in zip(mat[piv], mat[i])]
                mat[piv], mat[i] = mat[i], mat[piv]
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        if mat[rank][col] < 0:
            mat[rank] = [-a for a in mat[rank]]
        for i in range(rank):
            f = mat[i][col] // mat[rank][col]
            if f:
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return IntegerLattice(tuple(tuple(r) for r in mat[:rank]), dim)


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> IntegerLattice:
    """All integer vectors v with matrix . v = 0, as a lattice in ZZ^ncols."""
    rows = [list(r) for r in matrix]
    if ncols is None:
        if not rows:
            raise ValueError("cannot infer the dimension of an empty system")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    m = len(rows)
    # row-reduce [transpose | identity]; rows whose left part vanishes carry
    # kernel vectors in the identity part
    aug = [[rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(ncols)]
           for j in range(ncols)]
    rank = 0
    for col in range(m):
        piv = None
        for i in range(rank, ncols):
            if not aug[i][col]:
                continue
            if piv is None:
                piv = i
                continue
            while aug[i][col]:
                f = aug[piv][col] // aug[i][col]
                aug[piv] = [a - f * b for a, b in zip(aug[piv], aug[i])]
                aug[piv], aug[i] = aug[i], aug[piv]
        if piv is not None:
            aug[rank], aug[piv] = aug[piv], aug[rank]
            rank += 1
    tails = [r[m:] for r in aug[rank:]]
    return hermite_normal_form(tails, ncols)


def lattice_intersect(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    """Vectors lying in both lattices."""
    if a.dim != b.dim:
        raise ValueError("lattices of different dimension")
    if a.is_trivial() or b.is_trivial():
        return IntegerLattice((), a.dim)
    # x = p.A = q.B exactly when (p, q) kills the stacked transpose
    stacked = [list(ra) + [0] * b.rank for ra in zip(*a.rows)]
    for i, rb in enumerate(zip(*b.rows)):
        stacked[i][a.rank:] = [-x for x in rb]
    coeffs = integer_kernel(stacked, a.rank + b.rank)
    vecs = []
    for c in coeffs.rows:
        vec = [0] * a.dim
        for f, row in zip(c[: a.rank], a.rows):
            if f:
                vec = [x + f * y for x, y in zip(vec, row)]
        vecs.append(vec)
    return hermite_normal_form(vecs, a.dim)


def lattice_project(lat: IntegerLattice, coords: Sequence[int]) -> IntegerLattice:
    """Image of the lattice under keeping only the listed coordinates."""
    keep = list(coords)
    if any(not 0 <= c < lat.dim for c in keep):
        raise ValueError("coordinate out of range")
    return hermite_normal_form([[row[c] for c in keep] for row in lat.rows], len(keep))


def small_nonzero(lat: IntegerLattice) -> tuple[int, ...] | None:
    """A short nonzero lattice vector, None for the trivial lattice.

    Pairwise size reduction over the Hermite basis, then the best of the
    reduced rows and their small combinations.  Not a shortest-vector oracle;
    callers only need a small exact witness.
    """
    if lat.is_trivial():
        return None
    rows = [list(r) for r in lat.rows]

    def norm(v):
        return sum(a * a for a in v)

    for _ in range(8):
        moved = False
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j:
                    continue
                nj = norm(rows[j])
                f = round(Fraction(sum(a * b for a, b in zip(rows[i], rows[j])), nj))
                if f:
                    cand = [a - f * b for a, b in zip(rows[i], rows[j])]
                    if any(cand) and norm(cand) < norm(rows[i]):
                        rows[i] = cand
                        moved = True
        if not moved:
            break
    best = None
    pool = [r for r in rows]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            for s in (1, -1):
                cand = [a + s * b for a, b in zip(rows[i], rows[j])]
                if any(cand):
                    pool.append(cand)
    for cand in pool:
        if cand[_pivot_col(cand)] < 0:
            cand = [-a for a in cand]
        key = (norm(cand), cand)
        if best is None or key < best:
            best = key
    return tuple(best[1])


@dataclass(frozen=True)
class GcdFreeBasis:
    """Inputs rewritten as unit times a power product of one coprime set."""

    basis: tuple[MultiPoly, ...]
    exponents: tuple[tuple[int, ...], ...]
    unit_part: tuple[Fraction, ...]


def gcdfree_basis(inputs: Sequence[MultiPoly]) -> GcdFreeBasis:
    """Pairwise-coprime nonconstant polynomials generating every input.

    Refinement by pairwise gcd splitting until stable; exponents recovered by
    repeated exact division, so the reconstruction identity is exact by
    construction.  Constants contribute only to the unit part.
    """
    units = []
    parts = []
    for p in inputs:
        if p.is_zero():
            raise ValueError("gcd-free basis of zero")
        m = p.monic()
        units.append(p.leading_coeff())
        if not m.is_const():
            parts.append(m)
    # dedup, then split any non-coprime pair; total degree strictly drops
    work = []
    for m in parts:
        if m not in work:
            work.append(m)
    stable = False
    while not stable:
        stable = True
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                g = poly_gcd(work[i], work[j])
                if g.is_const():
                    continue
                pieces = [g, work[i].divexact(g), work[j].divexact(g)]
                rest = [p for k, p in enumerate(work) if k not in (i, j)]
                for piece in pieces:
                    if not piece.is_const() and piece not in rest:
                        rest.append(piece)
                work = rest
                stable = False
                break
            if not stable:
                break
    basis = sorted(work, key=lambda p: (p.total_degree(), p.to_string()))
    expo = []
    for p in inputs:
        m = p.monic()
        row = []
        for b in basis:
            k = 0
            while not m.is_const() and b.divides(m):
                m = m.divexact(b)
                k += 1
            row.append(k)
        if not m.is_one():
            raise AssertionError("refinement failed to cover an input")
        expo.append(tuple(row))
    return GcdFreeBasis(tuple(basis), tuple(expo), tuple(units))


def _factor_int(n: int, bound: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division plus
    Pollard rho; magnitudes past the bound are refused."""
    if n > bound:
        raise CapacityError(f"constant magnitude {n} exceeds the factoring bound")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d * d <= n and d < 100_000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[w]
        w = (w + 1) % len(wheel)
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho_split(m)
        stack.append(d)
        stack.append(m // d)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic witness set for anything below 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_split(n: int) -> int:
    from math import gcd

    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def multiplicative_relations(elems: Sequence[RatFunc], *,
                             magnitude_bound: int = 2 ** 63,
                             blocks: tuple = ()) -> IntegerLattice:
    """The lattice of integer vectors w with prod elems[i]**w[i] == 1.

    Elements must be nonzero and involve parameter variables only, plus any
    operator blocks explicitly allowed through blocks.  Polynomial content
    goes through a gcd-free basis, rational constants are split into primes,
    and the sign lives in an auxiliary doubling column that is projected
    away, so parity constraints surface as doubled rows.
    """
    if not elems:
        return IntegerLattice((), 0)
    ctx = elems[0].ctx
    moving = ctx.block_indices(*(b for b in ("t", "x", "y") if b not in blocks))
    for e in elems:
        ctx.same(e.ctx)
        if e.is_zero():
            raise ValueError("relations of zero are undefined")
        if not e.free_of(moving):
            raise ValueError("elements must stay inside the allowed blocks")
    s = len(elems)
    gfb = gcdfree_basis([e.num for e in elems] + [e.den for e in elems])
    units = [
        gfb.unit_part[i] / gfb.unit_part[s + i]
        for i in range(s)
    ]
    rows: list[list[int]] = []
    for b in range(len(gfb.basis)):
        rows.append([gfb.exponents[i][b] - gfb.exponents[s + i][b] for i in range(s)])
    primes: set[int] = set()
    vals = []
    signs = []
    for u in units:
        signs.append(1 if u < 0 else 0)
        fn = _factor_int(abs(u.numerator), magnitude_bound)
        fd = _factor_int(u.denominator, magnitude_bound)
        v = {p: k for p, k in fn.items()}
        for p, k in fd.items():
            v[p] = v.get(p, 0) - k
        vals.append(v)
        primes.update(v)
    for p in sorted(primes):
        rows.append([v.get(p, 0) for v in vals])
    # sign parity: sum w[i]*sign[i] must be even; the helper column absorbs it
    matrix = [r + [0] for r in rows]
    matrix.append(signs + [2])
    kernel = integer_kernel(matrix, s + 1)
    return lattice_project(kernel, range(s))
