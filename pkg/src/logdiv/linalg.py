"""Small exact linear algebra over Fraction (dense Gaussian elimination).

Sized for the bounded-degree searches in this package: functional-equation
certificates and Euler-field coefficient solves, which stay well under a
few thousand unknowns.
"""

from __future__ import annotations

from fractions import Fraction


def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of A x = b, or None when inconsistent.

    Free variables are set to zero.  ``rows`` is modified via copies only.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("rhs length mismatch")
    n = len(rows[0]) if m else 0
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n]:
            return None
    x = [Fraction(0)] * n
    for pr, pc in pivots:
        x[pc] = a[pr][n]
    return x


def nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right nullspace of A."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for pr, pc in pivots:
            v[pc] = -a[pr][free]
        basis.append(v)
    return basis
