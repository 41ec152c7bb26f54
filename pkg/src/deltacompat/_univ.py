"""Dense univariate helpers over exact rationals, with a float root finder.

Used by the dispersion machinery: after specializing all but one variable at
integer points, gcd-hit candidates come from a univariate resultant whose
integer roots are screened here.  Everything exact except aberth_roots, whose
output is only ever used to propose candidates that are then confirmed with
exact arithmetic.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb, gcd as int_gcd

# coefficient lists are dense, index = degree


def trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def eval_at(coeffs: list, value):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * value + c
    return acc


def clear_to_int(coeffs: list[Fraction]) -> list[int]:
    """Scale by a positive rational to coprime integer coefficients."""
    if not coeffs:
        return []
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    ints = [c.numerator * (den_lcm // c.denominator) for c in coeffs]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def shift_compose(coeffs: list, offset: int) -> list:
    """p(x) -> p(x + offset), exact."""
    if offset == 0 or not coeffs:
        return list(coeffs)
    n = len(coeffs) - 1
    out = [0] * (n + 1)
    for j, c in enumerate(coeffs):
        if not c:
            continue
        po = 1
        for k in range(j, -1, -1):
            out[k] += c * comb(j, k) * po
            po *= offset
    return out


def dilate(coeffs: list, factor) -> list:
    """p(x) -> p(factor * x)."""
    out = []
    po = 1
    for c in coeffs:
        out.append(c * po)
        po *= factor
    return out


def sylvester_resultant(a: list, b: list):
    """Resultant of two dense integer (or Fraction) polynomials by
    fraction-free elimination of the Sylvester matrix."""
    a = trim(list(a))
    b = trim(list(b))
    if not a or not b:
        return 0
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for d, c in enumerate(a):
            row[i + (m - d)] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for d, c in enumerate(b):
            row[i + (n - d)] = c
        rows.append(row)
    int_mode = all(isinstance(c, int) for c in a) and all(isinstance(c, int) for c in b)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if not rows[k][k]:
            for i in range(k + 1, size):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = rows[k][k]
        for i in range(k + 1, size):
            rik = rows[i][k]
            for j in range(k + 1, size):
                num = piv * rows[i][j] - rik * rows[k][j]
                rows[i][j] = num // prev if int_mode else num / prev
            rows[i][k] = 0
        prev = piv
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det


def lagrange_interpolate(points: list[tuple[int, Fraction]]) -> list[Fraction]:
    """Dense coefficients of the unique polynomial through the points."""
    result = [Fraction(0)] * len(points)
    for xi, yi in points:
        if yi == 0:
            continue
        # basis polynomial prod (x - xj)/(xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xj, _yj in points:
            if xj == xi:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xj
            basis = nxt
            denom *= xi - xj
        scale = yi / denom
        for d, c in enumerate(basis):
            result[d] += c * scale
    return trim(result)


def cauchy_root_bound(ints: list[int]) -> float:
    """1 + max |c_i / c_lead|: every complex root has smaller magnitude."""
    ints = trim(list(ints))
    if len(ints) <= 1:
        return 1.0
    lead = abs(ints[-1])
    mx = max(abs(c) for c in ints[:-1])
    if mx == 0:
        return 1.0
    # integer division first so huge coefficients cannot overflow the float
    ratio = mx // lead
    if ratio > 10 ** 300:
        return 1e300
    return 2.0 + float(ratio)


def aberth_roots(ints: list[int], iterations: int = 120, tol: float = 1e-10) -> list[complex]:
    """All complex roots, approximately (Aberth-Ehrlich).  Float quality only;
    callers must confirm any candidate exactly."""
    ints = trim(list(ints))
    if len(ints) <= 1:
        return []
    # remove trailing zero roots (z = 0)
    zero_roots = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        zero_roots += 1
    n = len(ints) - 1
    roots = [complex(0.0)] * zero_roots
    if n == 0:
        return roots
    # scale coefficients to floats safely
    scale = max(abs(c) for c in ints)
    cs = [c / scale for c in ints]
    dcs = [k * cs[k] for k in range(1, n + 1)]

    def pval(z: complex) -> complex:
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    def dval(z: complex) -> complex:
        acc = 0j
        for c in reversed(dcs):
            acc = acc * z + c
        return acc

    r = cauchy_root_bound(ints)
    if r > 1e12:
        r = 1e12
    if cs[0]:
        rho = abs(cs[0] / cs[-1]) ** (1.0 / n)
        rho = min(max(rho, 0.5), r)
    else:
        rho = min(1.0, r)
    guesses = [
        rho * cmath.exp(2j * cmath.pi * (k + 0.25) / n + 0.4j)
        for k in range(n)
    ]
    for _ in range(iterations):
        moved = 0.0
        new = list(guesses)
        for k in range(n):
            zk = guesses[k]
            p = pval(zk)
            if abs(p) < tol * max(1.0, abs(zk)) ** n:
                continue
            d = dval(zk)
            if d == 0:
                new[k] = zk + (0.1 + 0.1j)
                continue
            newton = p / d
            s = 0j
            for j in range(n):
                if j != k:
                    diff = zk - guesses[j]
                    if diff == 0:
                        diff = 1e-12 + 1e-12j
                    s += 1 / diff
            denom = 1 - newton * s
            if denom == 0:
                step = newton
            else:
                step = newton / denom
            new[k] = zk - step
            moved = max(moved, abs(step))
        guesses = new
        if moved < tol:
            break
    return roots + guesses


def integer_candidates(ints: list[int], lo: int, window: int) -> set[int]:
    """Nonnegative integer-root candidates of an integer polynomial: a direct
    scan of [lo, lo+window] plus rounded float roots.  Superset of the true
    nonnegative integer roots whenever the float pass converged; every caller
    confirms candidates exactly, so over-reporting is harmless."""
    ints = trim(list(ints))
    if len(ints) <= 1:
        return set()
    out = set()
    for i in range(lo, lo + window + 1):
        if eval_at(ints, i) == 0:
            out.add(i)
    for z in aberth_roots(ints):
        if abs(z.imag) < 0.3:
            cand = round(z.real)
            if cand >= lo and abs(z.real - cand) < 0.3:
                if eval_at(ints, cand) == 0:
                    out.add(cand)
    return out
