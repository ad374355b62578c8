"""Logarithmic Spencer complexes and the duality verification.

The complex has Sp^{-r} = V[s]-free on the r-fold wedges of the Theta
basis; the differential combines right multiplication by the basis
elements with Lie brackets re-expanded through the structure constants of
the logarithmic basis.  Dualizing transposes the top differential and
left-ifies its entries with the transposition anti-automorphism; for any
free divisor the resulting relation ideal must be D[s]Theta_{h,-q-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from logdiv.budget import Budget, default_budget
from logdiv.classify import is_weakly_koszul
from logdiv.divisor import FreeDivisor, LogDerivation, theta_generators
from logdiv.groebner import module_member_with_cofactors
from logdiv.poly import MultiPoly
from logdiv.weyl import (
    LeftIdealW,
    WeylElement,
    transpose,
    weyl_module_member,
    weyl_syzygies,
)

Subset = tuple[int, ...]
QLinear = tuple[Fraction, Fraction]


@dataclass
class SpencerComplex:
    q: QLinear
    dimension: int
    # differentials[r] maps wedge degree r to r-1: {(I, J): entry}
    differentials: dict[int, dict[tuple[Subset, Subset], WeylElement]]
    basis_labels: dict[int, list[Subset]]
    theta: tuple[WeylElement, ...]

    def rank(self, r: int) -> int:
        return comb(self.dimension, r)

    def matrix(self, r: int) -> dict:
        return self.differentials[r]

    def dump(self) -> dict:
        out = {
            "q": _q_str(self.q),
            "dimension": self.dimension,
            "ranks": [self.rank(r) for r in range(self.dimension + 1)],
            "differentials": {},
        }
        for r in range(1, self.dimension + 1):
            rows = []
            for I in self.basis_labels[r]:
                for J in self.basis_labels[r - 1]:
                    entry = self.differentials[r].get((I, J))
                    if entry is not None and not entry.is_zero():
                        rows.append({"from": list(I), "to": list(J), "entry": str(entry)})
            out["differentials"][f"eps^-{r}"] = rows
        return out


@dataclass
class DualPresentation:
    relations: LeftIdealW
    concentration_degree: int      # before the [d] shift
    shifted_degree: int            # after the shift (0 for resolutions)
    heuristic: bool                # induced complex not certified exact


def _q_str(q: QLinear) -> str:
    q0, q1 = q
    parts = []
    if q1:
        parts.append("s" if q1 == 1 else ("-s" if q1 == -1 else f"{q1}*s"))
    if q0 or not parts:
        sign = " + " if (q0 >= 0 and parts) else (" - " if parts else "")
        parts.append(f"{sign}{abs(q0) if parts else q0}")
    return "".join(str(p) for p in parts)


def structure_constants(fd: FreeDivisor, budget: Budget | None = None) -> dict[tuple[int, int], list[MultiPoly]]:
    """c^k_{ij} with [delta_i, delta_j] = sum_k c^k_{ij} delta_k.

    The bracket of two logarithmic fields is logarithmic; failure to
    re-express it in the certified basis signals a certification bug.
    """
    budget = budget or default_budget()
    ctx = fd.h.ctx
    d = fd.dimension
    rows = [list(der.coeffs) for der in fd.basis]
    out: dict[tuple[int, int], list[MultiPoly]] = {}
    for i in range(d):
        for j in range(i + 1, d):
            a, b = fd.basis[i], fd.basis[j]
            bracket = []
            for k in range(d):
                acc = MultiPoly.zero(ctx)
                for l, x in enumerate(ctx.names):
                    acc = acc + a.coeffs[l] * b.coeffs[k].diff(x)
                    acc = acc - b.coeffs[l] * a.coeffs[k].diff(x)
                bracket.append(acc)
            ok, cof = module_member_with_cofactors(rows, bracket, budget)
            if not ok:
                raise AssertionError(
                    "bracket not expressible in the certified basis (certification bug)"
                )
            # eigenvalue consistency: delta_i(alpha_j) - delta_j(alpha_i) = sum c^k alpha_k
            lhs = a.apply(b.eigenvalue) - b.apply(a.eigenvalue)
            rhs = MultiPoly.zero(ctx)
            for c, der in zip(cof, fd.basis):
                rhs = rhs + c * der.eigenvalue
            if lhs != rhs:
                raise AssertionError("bracket eigenvalue mismatch (certification bug)")
            out[(i, j)] = cof
    return out


def build_spencer(fd: FreeDivisor, q: QLinear, budget: Budget | None = None) -> SpencerComplex:
    """Matrices of eps^{-r} on the lexicographically ordered wedge basis."""
    budget = budget or default_budget()
    d = fd.dimension
    theta = theta_generators(fd, q).elements
    ctx = fd.weyl_ctx
    consts = structure_constants(fd, budget) if d >= 2 else {}
    labels = {r: sorted(combinations(range(d), r)) for r in range(d + 1)}
    diffs: dict[int, dict] = {}
    cctx = ctx.coefficient_context()
    for r in range(1, d + 1):
        mat: dict = {}

        def add(I: Subset, J: Subset, elem: WeylElement):
            cur = mat.get((I, J))
            mat[(I, J)] = elem if cur is None else cur + elem

        for I in labels[r]:
            # first sum: right multiplication by the deleted basis element
            for m, im in enumerate(I):
                J = tuple(x for x in I if x != im)
                sign = Fraction(-1) ** m            # (-1)^{m-1} with m 1-based
                add(I, J, theta[im].scale(sign))
            # second sum: bracket terms re-expanded in the Theta basis
            for m in range(len(I)):
                for n in range(m + 1, len(I)):
                    im, jn = I[m], I[n]
                    rest = tuple(x for x in I if x not in (im, jn))
                    base_sign = Fraction(-1) ** ((m + 1) + (n + 1))
                    for k, c in enumerate(consts[(im, jn)]):
                        if c.is_zero() or k in rest:
                            continue
                        below = sum(1 for x in rest if x < k)
                        sign = base_sign * Fraction(-1) ** below
                        J = tuple(sorted(rest + (k,)))
                        coeff = WeylElement.from_poly(c.map_context(cctx), ctx)
                        add(I, J, coeff.scale(sign))
        diffs[r] = {key: val for key, val in mat.items() if not val.is_zero()}
    return SpencerComplex(q, d, diffs, labels, theta)


def check_complex(sp: SpencerComplex) -> bool:
    """eps composed with eps vanishes in every degree."""
    for r in range(2, sp.dimension + 1):
        upper = sp.differentials[r]
        lower = sp.differentials[r - 1]
        for I in sp.basis_labels[r]:
            for K in sp.basis_labels[r - 2]:
                acc = None
                for J in sp.basis_labels[r - 1]:
                    a = upper.get((I, J))
                    b = lower.get((J, K))
                    if a is None or b is None:
                        continue
                    prod = a * b
                    acc = prod if acc is None else acc + prod
                if acc is not None and not acc.is_zero():
                    return False
    return True


def induced_exactness_criterion(fd: FreeDivisor, budget: Budget | None = None) -> bool:
    """The graded sufficient criterion: weak Koszulness of the divisor."""
    ok, _ = is_weakly_koszul(fd, budget)
    return ok


def dual_presentation(fd: FreeDivisor, q: QLinear, budget: Budget | None = None) -> DualPresentation:
    """Relation ideal of the dual: transposed entries of the top differential."""
    budget = budget or default_budget()
    sp = build_spencer(fd, q, budget)
    d = fd.dimension
    top = sp.differentials[d]
    full = tuple(range(d))
    entries = []
    for J in sp.basis_labels[d - 1]:
        e = top.get((full, J))
        if e is not None and not e.is_zero():
            entries.append(transpose(e))
    heuristic = not induced_exactness_criterion(fd, budget)
    return DualPresentation(
        relations=LeftIdealW(fd.weyl_ctx, entries),
        concentration_degree=d,
        shifted_degree=0,
        heuristic=heuristic,
    )


def verify_duality(fd: FreeDivisor, q: QLinear, budget: Budget | None = None) -> bool:
    """Dual(D[s] h^{q}) = D[s] h^{-q-1}: GB equality of relation ideals."""
    budget = budget or default_budget()
    pres = dual_presentation(fd, q, budget)
    q0, q1 = q
    dual_q = (-q0 - 1, -q1)
    expected = theta_generators(fd, dual_q).elements
    ideal = LeftIdealW(fd.weyl_ctx, list(expected))
    return pres.relations.equal(ideal, budget=budget)


def spencer_homology_check(fd: FreeDivisor, q: QLinear, budget: Budget | None = None) -> bool:
    """Direct exactness cross-check in degrees != 0 for d <= 2.

    d = 1 complexes are injective-by-domain; for d = 2 every left syzygy of
    (lambda_1, lambda_2) must lie in the cyclic module spanned by the
    eps^{-2} row.
    """
    budget = budget or default_budget()
    d = fd.dimension
    if d > 2:
        raise ValueError("direct homology check provided for d <= 2 only")
    if d == 1:
        return True
    sp = build_spencer(fd, q, budget)
    full = (0, 1)
    row = [
        sp.differentials[2].get((full, (0,)), WeylElement.zero(fd.weyl_ctx)),
        sp.differentials[2].get((full, (1,)), WeylElement.zero(fd.weyl_ctx)),
    ]
    syz = weyl_syzygies(list(sp.theta), budget)
    for z in syz:
        if not weyl_module_member(z, [row], budget):
            return False
    return True
