"""Shared random generators for the property suites (seeded, deterministic)."""

from fractions import Fraction

from logdiv.context import VariableContext
from logdiv.poly import MultiPoly

XY = VariableContext(["x", "y"])


def random_poly(rng, ctx=XY, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        m = tuple(rng.randint(0, max_exp) for _ in range(ctx.nvars))
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if c:
            terms[m] = c
    return MultiPoly(ctx, terms)


def random_weyl(rng, ctx, max_terms=3, max_exp=2):
    from logdiv.weyl import WeylElement

    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        m = tuple(rng.randint(0, max_exp) for _ in range(ctx.nslots))
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if c:
            terms[m] = c
    return WeylElement(ctx, terms)
