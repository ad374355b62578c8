"""Logarithmic derivations, Saito certification, Euler normalization.

A logarithmic derivation of h is delta = sum a_i d_i with delta(h) = alpha*h;
the vectors (-alpha, a_1..a_d) are exactly the syzygies of
(h, h'_{x_1}, ..., h'_{x_d}).  Freeness is certified by Saito's criterion:
d candidates whose coefficient determinant is c*h for a constant c != 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from logdiv.budget import Budget, default_budget
from logdiv.groebner import Ideal, submodule_contains, submodule_groebner, syzygies
from logdiv.poly import MultiPoly
from logdiv.weyl import WeylContext, WeylElement, derivation, weyl_context


class NotFreeError(ValueError):
    """Saito certification failed for every candidate basis."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


@dataclass(frozen=True)
class LogDerivation:
    """delta = sum coeffs[i] * d_i with delta(h) = eigenvalue * h."""

    coeffs: tuple[MultiPoly, ...]
    eigenvalue: MultiPoly

    def check(self, h: MultiPoly) -> bool:
        acc = MultiPoly.zero(h.ctx)
        for a, x in zip(self.coeffs, h.ctx.names):
            acc = acc + a * h.diff(x)
        return acc == self.eigenvalue * h

    def apply(self, f: MultiPoly) -> MultiPoly:
        acc = MultiPoly.zero(f.ctx)
        for a, x in zip(self.coeffs, f.ctx.names):
            acc = acc + a * f.diff(x)
        return acc

    def vanishes_at_origin(self) -> bool:
        return all(a.constant_value() == 0 for a in self.coeffs)

    def weyl(self, ctx: WeylContext) -> WeylElement:
        return derivation(ctx, list(self.coeffs))

    def __repr__(self):
        parts = [f"({a})*d{i+1}" for i, a in enumerate(self.coeffs) if not a.is_zero()]
        return " + ".join(parts) if parts else "0"


@dataclass
class FreeDivisor:
    """Reduced h together with a Saito-certified basis of Der(log D)."""

    h: MultiPoly
    basis: tuple[LogDerivation, ...]
    saito_factor: MultiPoly              # c with det(a_ij) = c * h
    saito_constant: bool                 # c is a nonzero rational constant
    euler_normalized: bool = False
    weyl_ctx: WeylContext = field(init=False, repr=False)

    def __post_init__(self):
        self.weyl_ctx = weyl_context(self.h.ctx.names)

    @property
    def dimension(self) -> int:
        return self.h.ctx.nvars

    def alphas(self) -> list[MultiPoly]:
        return [d.eigenvalue for d in self.basis]

    def report_fragment(self) -> dict:
        return {
            "h": str(self.h),
            "dimension": self.dimension,
            "basis": [str(d.weyl(self.weyl_ctx)) for d in self.basis],
            "saito_det": str(self.saito_factor * self.h),
            "euler_normalized": self.euler_normalized,
        }


@dataclass(frozen=True)
class ThetaGenerators:
    """The operators delta_i - alpha_i * q(s) annihilating h^{q(s)}."""

    q: tuple[Fraction, Fraction]         # q(s) = q[0] + q[1]*s
    elements: tuple[WeylElement, ...]


def jacobian_ideal(h: MultiPoly) -> Ideal:
    if h.is_zero():
        raise ValueError("h must be nonzero")
    gens = [h] + [h.diff(x) for x in h.ctx.names]
    return Ideal(h.ctx, [g for g in gens if not g.is_zero()])


def log_derivations(h: MultiPoly, budget: Budget | None = None) -> list[LogDerivation]:
    """Generators of Der(log D) from the syzygies of (h, h'_{x_1}, ...).

    Variables h does not involve contribute their coordinate fields directly
    (zero partials carry no syzygy data).
    """
    budget = budget or default_budget()
    ctx = h.ctx
    partials = [h.diff(x) for x in ctx.names]
    live = [i for i, p in enumerate(partials) if not p.is_zero()]
    zero = MultiPoly.zero(ctx)
    out = []
    for i, p in enumerate(partials):
        if p.is_zero():
            coeffs = [zero] * ctx.nvars
            coeffs[i] = MultiPoly.constant(ctx, 1)
            out.append(LogDerivation(tuple(coeffs), zero))
    rows = syzygies([h] + [partials[i] for i in live], budget)
    for row in rows:
        alpha = -row[0]
        coeffs = [zero] * ctx.nvars
        for slot, i in enumerate(live):
            coeffs[i] = row[1 + slot]
        if all(c.is_zero() for c in coeffs):
            continue
        der = LogDerivation(tuple(coeffs), alpha)
        if not der.check(h):
            raise AssertionError("syzygy does not restrict to a log derivation (internal bug)")
        out.append(der)
    return _prune_generators(h, out, budget)


def _prune_generators(h: MultiPoly, ders: list[LogDerivation], budget: Budget) -> list[LogDerivation]:
    """Drop derivations lying in the module generated by the others."""
    ders = sorted(ders, key=lambda d: (max(c.total_degree() for c in d.coeffs), str(d)))
    keep = list(ders)
    changed = True
    while changed and len(keep) > 1:
        changed = False
        for i in range(len(keep) - 1, -1, -1):
            others = keep[:i] + keep[i + 1 :]
            rows = [[-d.eigenvalue, *d.coeffs] for d in others]
            gb = submodule_groebner(rows, budget)
            target = [-keep[i].eigenvalue, *keep[i].coeffs]
            if submodule_contains(gb, target, budget):
                keep.pop(i)
                changed = True
                break
    return keep


def _det(mat: list[list[MultiPoly]]) -> MultiPoly:
    n = len(mat)
    ctx = mat[0][0].ctx
    if n == 1:
        return mat[0][0]
    out = MultiPoly.zero(ctx)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def saito_check(h: MultiPoly, cand: list[LogDerivation]):
    """Certify freeness: det of the coefficient matrix must be c*h.

    Returns a FreeDivisor on success.  A non-constant factor c with
    c(0) != 0 certifies freeness at the origin only (saito_constant False);
    any other determinant raises NotFreeError carrying it.
    """
    d = h.ctx.nvars
    if len(cand) != d:
        raise ValueError(f"need exactly {d} candidate derivations, got {len(cand)}")
    det = _det([list(c.coeffs) for c in cand])
    if det.is_zero():
        raise NotFreeError("Saito determinant is zero", {"det": str(det)})
    c = det.exact_div(h)
    if c is None:
        raise NotFreeError(
            "Saito determinant is not a multiple of h", {"det": str(det)}
        )
    if c.is_constant():
        return FreeDivisor(h, tuple(cand), c, True)
    if c.constant_value() != 0:
        # free at 0, not globally certified
        return FreeDivisor(h, tuple(cand), c, False)
    raise NotFreeError(
        "Saito factor vanishes at the origin", {"det": str(det), "factor": str(c)}
    )


def free_divisor(h: MultiPoly, budget: Budget | None = None) -> FreeDivisor:
    """Find and certify a free basis among the log-derivation generators."""
    budget = budget or default_budget()
    gens = log_derivations(h, budget)
    d = h.ctx.nvars
    if len(gens) < d:
        raise NotFreeError(
            f"log-derivation module has {len(gens)} generators, need at least {d}",
            {"generators": [str(g) for g in gens]},
        )
    last_error: NotFreeError | None = None
    fallback: FreeDivisor | None = None
    for subset in combinations(range(len(gens)), d):
        try:
            fd = saito_check(h, [gens[i] for i in subset])
        except NotFreeError as exc:
            last_error = exc
            continue
        if fd.saito_constant:
            return fd
        if fallback is None:
            fallback = fd
    if fallback is not None:
        return fallback
    raise NotFreeError(
        f"no {d}-subset of {len(gens)} log-derivation generators passes Saito's criterion",
        {"generators": [str(g) for g in gens],
         "last": str(last_error) if last_error else None},
    )


def euler_normalize(fd: FreeDivisor, budget: Budget | None = None) -> FreeDivisor | None:
    """Re-base so that delta_1..delta_{d-1} kill h and delta_d(h) = h.

    Returns the normalized divisor, or None when no polynomial combination
    of the basis gives an Euler field (h not Euler homogeneous by this test).
    """
    budget = budget or default_budget()
    if fd.euler_normalized:
        return fd
    ctx = fd.h.ctx
    alphas = fd.alphas()
    one = MultiPoly.constant(ctx, 1)
    nonzero = [(i, a) for i, a in enumerate(alphas) if not a.is_zero()]
    if not nonzero:
        return None
    ok, cof = Ideal(ctx, [a for _, a in nonzero]).member_with_cofactors(one, budget)
    if not ok:
        return None
    coeffs = [MultiPoly.zero(ctx)] * len(alphas)
    for (i, _), c in zip(nonzero, cof):
        coeffs[i] = c
    chi_coeffs = [MultiPoly.zero(ctx) for _ in range(fd.dimension)]
    for c, der in zip(coeffs, fd.basis):
        for k in range(fd.dimension):
            chi_coeffs[k] = chi_coeffs[k] + c * der.coeffs[k]
    chi = LogDerivation(tuple(chi_coeffs), one)
    if not chi.check(fd.h):
        raise AssertionError("Euler combination failed verification (internal bug)")
    kernel = []
    for c_alpha, der in zip(alphas, fd.basis):
        adjusted = tuple(
            a - c_alpha * chi.coeffs[k] for k, a in enumerate(der.coeffs)
        )
        cand = LogDerivation(adjusted, MultiPoly.zero(ctx))
        if any(not a.is_zero() for a in adjusted):
            kernel.append(cand)
    if fd.dimension == 1:
        fdn = saito_check(fd.h, [chi])
        fdn.euler_normalized = True
        return fdn
    for subset in combinations(range(len(kernel)), fd.dimension - 1):
        cand = [kernel[i] for i in subset] + [chi]
        try:
            fdn = saito_check(fd.h, cand)
        except NotFreeError:
            continue
        if fdn.saito_constant == fd.saito_constant or fdn.saito_constant:
            fdn.euler_normalized = True
            return fdn
    return None


def theta_generators(fd: FreeDivisor, q: tuple[Fraction, Fraction]) -> ThetaGenerators:
    """Theta_{h,q(s)} = {delta_i - alpha_i q(s)} as Weyl elements."""
    ctx = fd.weyl_ctx
    cctx = ctx.coefficient_context()
    q0, q1 = Fraction(q[0]), Fraction(q[1])
    s = MultiPoly.variable(cctx, "s")
    qpoly = MultiPoly.constant(cctx, q0) + s.scale(q1)
    elems = []
    for der in fd.basis:
        alpha = der.eigenvalue.map_context(cctx)
        elems.append(der.weyl(ctx) - WeylElement.from_poly(alpha * qpoly, ctx))
    return ThetaGenerators((q0, q1), tuple(elems))
