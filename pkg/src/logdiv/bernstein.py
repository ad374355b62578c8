"""Bernstein-Sato polynomials and their symmetry tests.

Three routes to b(s):
  * free-elimination: (D[s]Theta_{h,s} + D[s]h) intersect Q[s], valid when
    ann h^s is generated by the order-1 operators (strongly Koszul input);
  * general-annihilator: (ann h^s + D[s]h) intersect Q[s] via the
    Malgrange construction, valid for any h;
  * functional-equation certificates: exact linear solve for P with
    b(s) h^s = P h^{s+1}, which certifies membership but never refutes.

The quasi-homogeneous Milnor oracle gives the reduced roots independently
of any Groebner computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from logdiv.budget import Budget, default_budget
from logdiv.classify import is_strongly_koszul, is_weakly_koszul
from logdiv.divisor import FreeDivisor, theta_generators
from logdiv.groebner import Ideal
from logdiv.linalg import solve_linear
from logdiv.poly import MultiPoly
from logdiv.upoly import (
    UPoly,
    rational_roots as uroots,
    ucompose_neg_shift,
    udivmod,
    ueval,
    umonic,
    umul,
    ustr,
)
from logdiv.weyl import LeftIdealW, WeylElement, annihilator_fs, apply_to_power


class BernsteinPreconditionError(ValueError):
    """bs_free called without a certified differential-linear-type input."""


@dataclass
class BernsteinResult:
    b: UPoly                                  # monic
    reduced: UPoly                            # b / (s + 1)
    roots: list[tuple[Fraction, int]]
    remainder: UPoly                          # root-free factor
    symmetry_shift2: bool
    integer_root_bound_ok: bool
    method: str
    yano_shift: tuple[int, bool] | None = None
    certificate: str | None = None

    def to_json(self) -> dict:
        out = {
            "b": ustr(self.b),
            "b_reduced": ustr(self.reduced),
            "roots": [[str(r), m] for r, m in self.roots],
            "remainder": ustr(self.remainder),
            "symmetry_shift2": self.symmetry_shift2,
            "yano": list(self.yano_shift) if self.yano_shift else None,
            "integer_root_bound": self.integer_root_bound_ok,
            "method": self.method,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def check_symmetry(b: UPoly, shift: int) -> bool:
    """b(-s - shift) = +/- b(s) after monic normalization."""
    if not b:
        raise ValueError("zero polynomial")
    return umonic(ucompose_neg_shift(b, shift)) == umonic(b)


def integer_root_bound(b: UPoly) -> bool:
    """No integer root <= -2 (rational-root test)."""
    roots, _ = uroots(b)
    return not any(r.denominator == 1 and r <= -2 for r, _ in roots)


def rational_roots(b: UPoly):
    return uroots(b)


def make_result(b: UPoly, method: str, certificate: str | None = None) -> BernsteinResult:
    b = umonic(b)
    if ueval(b, Fraction(-1)) != 0:
        raise AssertionError(f"b(-1) != 0 for computed b = {ustr(b)}")
    reduced, rem = udivmod(b, [Fraction(1), Fraction(1)])
    assert not rem
    roots, remainder = uroots(b)
    return BernsteinResult(
        b=b,
        reduced=reduced,
        roots=roots,
        remainder=remainder,
        symmetry_shift2=check_symmetry(b, 2),
        integer_root_bound_ok=integer_root_bound(b),
        method=method,
        certificate=certificate,
    )


def bs_free(fd: FreeDivisor, budget: Budget | None = None) -> BernsteinResult:
    """b(s) as the monic generator of (D[s]Theta_{h,s} + D[s]h) cap Q[s]."""
    budget = budget or default_budget()
    sk, _ = is_strongly_koszul(fd, budget)
    if not sk:
        wk, _ = is_weakly_koszul(fd, budget)
        raise BernsteinPreconditionError(
            "differential linear type not certified via the strongly-Koszul "
            f"equivalence (strongly_koszul=False, weakly_koszul={wk})"
        )
    theta = theta_generators(fd, (Fraction(0), Fraction(1)))
    ctx = fd.weyl_ctx
    hW = WeylElement.from_poly(fd.h.map_context(ctx.coefficient_context()), ctx)
    ideal = LeftIdealW(ctx, list(theta.elements) + [hW])
    b = ideal.eliminate_to_center(budget)
    if b is None:
        raise BernsteinPreconditionError(
            "central intersection is trivial: precondition failed or budget too small"
        )
    return make_result(b, "free-elimination")


def bs_general(h: MultiPoly, budget: Budget | None = None) -> BernsteinResult:
    """b(s) from the full annihilator of h^s plus h."""
    budget = budget or default_budget()
    ann = annihilator_fs(h, budget)
    ctx = ann.ctx
    hW = WeylElement.from_poly(h.map_context(ctx.coefficient_context()), ctx)
    ideal = LeftIdealW(ctx, list(ann.generators) + [hW])
    b = ideal.eliminate_to_center(budget)
    if b is None:
        raise RuntimeError("central intersection is trivial (budget too small?)")
    return make_result(b, "general-annihilator")


# ---------------------------------------------------------------------------
# functional-equation certificates
# ---------------------------------------------------------------------------

def _monomials_bounded(nvars: int, bound: int):
    def rec(prefix, remaining):
        if len(prefix) == nvars:
            yield tuple(prefix)
            return
        for e in range(remaining + 1):
            yield from rec(prefix + [e], remaining - e)

    yield from rec([], bound)


def homogeneity_gradings(h: MultiPoly) -> list[list[Fraction]]:
    """Weight vectors making h weighted-homogeneous of weight 1.

    Returns a particular solution followed by a basis of the homogeneous
    directions (empty when h is not quasi-homogeneous for any weights;
    positivity is not required here).
    """
    from logdiv.linalg import nullspace

    rows = [[Fraction(e) for e in m] for m in h.terms]
    rhs = [Fraction(1)] * len(rows)
    particular = solve_linear(rows, rhs)
    if particular is None:
        return []
    return [particular] + nullspace(rows)


def functional_equation_oracle(
    h: MultiPoly,
    candidate_b: UPoly,
    order_bound: int,
    degree_bound: int,
    budget: Budget | None = None,
) -> WeylElement | None:
    """Explicit P with candidate_b(s) h^s = P h^{s+1}, or None within bounds.

    Solved as exact linear algebra over operators with d-order <=
    order_bound, coefficient degree <= degree_bound and s-degree <=
    deg(candidate_b).  When h is quasi-homogeneous the search space is cut
    to the graded piece of weight -1, where any solution must project.
    None is bound-limited, never a refutation.
    """
    if order_bound < 0 or degree_bound < 0:
        raise ValueError("bounds must be non-negative")
    from logdiv.weyl import weyl_context

    ctx = weyl_context(h.ctx.names)
    cctx = ctx.coefficient_context()
    d = h.ctx.nvars
    sdeg = max(len(candidate_b) - 1, 0)

    gradings = homogeneity_gradings(h)

    def graded_ok(xmono, dmono):
        if not gradings:
            return True
        w = gradings[0]
        if sum(wi * (a - b) for wi, a, b in zip(w, xmono, dmono)) != -1:
            return False
        for v in gradings[1:]:
            if sum(vi * (a - b) for vi, a, b in zip(v, xmono, dmono)) != 0:
                return False
        return True

    basis_terms: list[tuple] = []
    for dmono in _monomials_bounded(d, order_bound):
        for xmono in _monomials_bounded(d, degree_bound):
            if not graded_ok(xmono, dmono):
                continue
            for k in range(sdeg + 1):
                e = [0] * ctx.nslots
                for i in range(d):
                    e[i] = xmono[i]
                    e[ctx.slot(f"d{i + 1}")] = dmono[i]
                e[ctx.s_slot] = k
                basis_terms.append(tuple(e))
    if not basis_terms:
        return None

    actions = []
    emax = 1
    for t in basis_terms:
        term = WeylElement(ctx, {t: Fraction(1)})
        n, e = apply_to_power(term, h, (Fraction(1), Fraction(1)))
        actions.append((n, e))
        emax = max(emax, e)

    h_c = h.map_context(cctx)
    s = MultiPoly.variable(cctx, "s")
    bpoly = MultiPoly.zero(cctx)
    for k, c in enumerate(candidate_b):
        bpoly = bpoly + (s ** k).scale(c)
    target = bpoly * h_c ** (emax - 1)

    row_index: dict[tuple, int] = {}
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    ncols = len(basis_terms)

    def row_for(mono):
        if mono not in row_index:
            row_index[mono] = len(rows)
            rows.append([Fraction(0)] * ncols)
            rhs.append(Fraction(0))
        return row_index[mono]

    for col, (n, e) in enumerate(actions):
        scaled = n * h_c ** (emax - e)
        for m, c in scaled.terms.items():
            rows[row_for(m)][col] += c
    for m, c in target.terms.items():
        rhs[row_for(m)] += c

    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    terms = {t: c for t, c in zip(basis_terms, sol) if c}
    P = WeylElement(ctx, terms)
    if not verify_certificate(P, h, candidate_b):
        raise AssertionError("functional-equation solve produced a bad certificate")
    return P


def verify_certificate(P: WeylElement, h: MultiPoly, b: UPoly) -> bool:
    """Exact re-check of b(s) h^s = P h^{s+1}."""
    n, e = apply_to_power(P, h, (Fraction(1), Fraction(1)))
    cctx = n.ctx
    h_c = h.map_context(cctx)
    s = MultiPoly.variable(cctx, "s")
    bpoly = MultiPoly.zero(cctx)
    for k, c in enumerate(b):
        bpoly = bpoly + (s ** k).scale(c)
    # N / h^e must equal b / h
    return n * h_c == bpoly * h_c ** e


def minimal_certified_b(
    h: MultiPoly,
    candidate: UPoly,
    order_bound: int | None = None,
    degree_bound: int | None = None,
) -> tuple[UPoly, WeylElement] | None:
    """Smallest monic divisor of ``candidate`` certified by the oracle.

    Checks every monic divisor assembled from the rational roots (the
    corpus b's split over Q), smallest degree first.
    """
    if order_bound is None:
        order_bound = h.total_degree() + 1
    if degree_bound is None:
        degree_bound = 2 * h.total_degree()
    roots, remainder = uroots(candidate)
    expanded: list[Fraction] = []
    for r, m in roots:
        expanded.extend([r] * m)
    best: tuple[UPoly, WeylElement] | None = None
    for mask in sorted(iproduct(*[range(m + 1) for _, m in roots]), key=lambda ms: sum(ms)):
        div: UPoly = list(remainder)
        for (r, _), k in zip(roots, mask):
            for _ in range(k):
                div = umul(div, [-r, Fraction(1)])
        P = functional_equation_oracle(h, div, order_bound, degree_bound)
        if P is not None:
            return umonic(div), P
    return None


# ---------------------------------------------------------------------------
# quasi-homogeneous Milnor oracle (Yano)
# ---------------------------------------------------------------------------

def qh_milnor_oracle(h: MultiPoly, weights: list[Fraction], budget: Budget | None = None) -> list[Fraction]:
    """Roots of the reduced b for a weight-1 quasi-homogeneous isolated
    singularity: -(w(m) + |w|) over a monomial basis of the Milnor algebra.
    """
    budget = budget or default_budget()
    ctx = h.ctx
    weights = [Fraction(w) for w in weights]
    if len(weights) != ctx.nvars:
        raise ValueError("one weight per variable required")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be strictly positive")
    degrees = h.weighted_degrees(weights)
    if degrees != {Fraction(1)}:
        raise ValueError(f"h is not weighted-homogeneous of weight 1: degrees {sorted(degrees)}")
    partials = [h.diff(x) for x in ctx.names]
    if any(p.is_zero() for p in partials):
        raise ValueError("degenerate singularity: a partial derivative vanishes")
    from logdiv.context import DegRevLexOrder

    gb = Ideal(ctx, partials).groebner(DegRevLexOrder(), budget)
    order = DegRevLexOrder()
    leads = [max(g.terms, key=order.key) for g in gb]
    bounds = []
    for i in range(ctx.nvars):
        pure = [m[i] for m in leads if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            raise ValueError("Milnor algebra is infinite-dimensional (non-isolated singularity)")
        bounds.append(min(pure))
    total = Fraction(sum(weights))
    roots = []
    for mono in iproduct(*[range(b) for b in bounds]):
        if any(all(e >= l for e, l in zip(mono, lead)) for lead in leads):
            continue
        roots.append(-(sum(w * e for w, e in zip(weights, mono)) + total))
    return sorted(roots)


def yano_reduced_b(roots: list[Fraction]) -> UPoly:
    """Reduced Bernstein polynomial from the oracle roots (distinct support)."""
    out: UPoly = [Fraction(1)]
    for r in sorted(set(roots)):
        out = umul(out, [-r, Fraction(1)])
    return out
