"""Univariate polynomials in s over Q as coefficient lists (ascending).

Just enough for Bernstein-Sato bookkeeping: monic normalization, division,
gcd, the substitution s -> -s - e, and rational root extraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

UPoly = list  # list[Fraction], ascending, no trailing zeros


def utrim(p: UPoly) -> UPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def uconst(c) -> UPoly:
    c = Fraction(c)
    return [c] if c else []


def udeg(p: UPoly) -> int:
    return len(p) - 1


def uadd(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return utrim(out)


def uscale(p: UPoly, c) -> UPoly:
    c = Fraction(c)
    return utrim([c * x for x in p])


def umul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return utrim(out)


def umonic(p: UPoly) -> UPoly:
    if not p:
        return []
    lc = p[-1]
    return [c / lc for c in p]


def udivmod(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(r) >= len(q) and r:
        f = r[-1] / q[-1]
        k = len(r) - len(q)
        quo[k] = f
        for i, c in enumerate(q):
            r[k + i] -= f * c
        utrim(r)
    return utrim(quo), r


def ugcd(p: UPoly, q: UPoly) -> UPoly:
    a, b = list(p), list(q)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def ueval(p: UPoly, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def ucompose_neg_shift(p: UPoly, shift) -> UPoly:
    """p(-s - shift) as a polynomial in s."""
    shift = Fraction(shift)
    lin = [-shift, Fraction(-1)]  # -s - shift
    out: UPoly = []
    power = [Fraction(1)]
    for c in p:
        out = uadd(out, uscale(power, c))
        power = umul(power, lin)
    return out


def ustr(p: UPoly, var: str = "s") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            v = var if i == 1 else f"{var}^{i}"
            body = v if abs(c) == 1 else f"{abs(c)}*{v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def _int_clear(p: UPoly) -> list[int]:
    den = 1
    for c in p:
        den = den * c.denominator // int_gcd(den, c.denominator)
    out = [int(c * den) for c in p]
    g = 0
    for c in out:
        g = int_gcd(g, abs(c))
    if g > 1:
        out = [c // g for c in out]
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def rational_roots(p: UPoly) -> tuple[list[tuple[Fraction, int]], UPoly]:
    """All rational roots with multiplicity, plus the root-free remainder."""
    if not p:
        raise ValueError("zero polynomial has no root decomposition")
    work = list(p)
    roots: list[tuple[Fraction, int]] = []
    # factor out s^k
    k = 0
    while work and work[0] == 0:
        work.pop(0)
        k += 1
    if k:
        roots.append((Fraction(0), k))
    while udeg(work) >= 1:
        ints = _int_clear(work)
        cands = set()
        for pnum in _divisors(ints[0]):
            for qden in _divisors(ints[-1]):
                cands.add(Fraction(pnum, qden))
                cands.add(Fraction(-pnum, qden))
        root = None
        for cand in sorted(cands):
            if ueval(work, cand) == 0:
                root = cand
                break
        if root is None:
            break
        mult = 0
        while True:
            quo, rem = udivmod(work, [-root, Fraction(1)])
            if rem:
                break
            work = quo
            mult += 1
        roots.append((root, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots, umonic(work)
