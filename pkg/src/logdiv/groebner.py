"""Groebner bases for ideals and submodules of free modules over Q[x].

One Buchberger kernel handles both cases: elements are sparse vectors
mapping (position, exponent-tuple) to Fraction, ideals being the rank-1
case.  Pair pruning follows Gebauer-Moeller; the coprimality (product)
criterion is applied only in rank 1 where it is valid.  Selection uses
sugar degrees with deterministic tie-breaks.

Built on top: ideal membership/equality, elimination, intersection,
quotient, syzygy modules via the extended-module trick, Krull dimension by
independent sets over the leading-term ideal, and the codimension test for
regular sequences of weighted-homogeneous elements.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from logdiv.budget import Budget, default_budget
from logdiv.context import (
    MonomialOrder,
    VariableContext,
    DegRevLexOrder,
    elimination_order,
    mono_div,
    mono_divides,
    mono_coprime,
    mono_lcm,
    mono_mul,
)
from logdiv.poly import MultiPoly

# A module term is (position, exponent tuple); a vector maps terms to Fractions.
Vec = dict


class ModuleOrder:
    """Position-over-term order; position 0 is the most significant."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.tag = f"POT({order.tag})"

    def key(self, term):
        pos, exps = term
        return (-pos, self.order.key(exps))


def vec_from_poly(p: MultiPoly, pos: int = 0) -> Vec:
    return {(pos, m): c for m, c in p.terms.items()}


def vec_component(v: Vec, pos: int, ctx: VariableContext) -> MultiPoly:
    return MultiPoly(ctx, {m: c for (p, m), c in v.items() if p == pos})


def vec_lead(v: Vec, morder: ModuleOrder):
    return max(v, key=morder.key)


def vec_add_scaled(dst: Vec, src: Vec, coeff: Fraction, mono: tuple, pos_shift: int = 0) -> None:
    """dst += coeff * x^mono * src   (in place)."""
    for (p, m), c in src.items():
        t = (p + pos_shift, mono_mul(mono, m))
        s = dst.get(t, Fraction(0)) + coeff * c
        if s:
            dst[t] = s
        else:
            dst.pop(t, None)


def vec_scale(v: Vec, coeff: Fraction) -> Vec:
    return {t: coeff * c for t, c in v.items()}


def normal_form_vec(v: Vec, basis: list[Vec], morder: ModuleOrder, budget: Budget) -> Vec:
    """Full normal form of v modulo basis (every reducible term reduced)."""
    leads = [(vec_lead(g, morder), g) for g in basis if g]
    work = dict(v)
    out: Vec = {}
    while work:
        t = vec_lead(work, morder)
        pos, exps = t
        c = work[t]
        red = None
        for (lp, le), g in leads:
            if lp == pos:
                q = mono_div(exps, le)
                if q is not None:
                    red = (q, g, (lp, le))
                    break
        if red is None:
            out[t] = c
            del work[t]
            continue
        q, g, lt = red
        factor = c / g[lt]
        budget.charge_terms(len(g))
        vec_add_scaled(work, g, -factor, q)
    return out


def _monic(v: Vec, morder: ModuleOrder) -> Vec:
    lc = v[vec_lead(v, morder)]
    return vec_scale(v, 1 / lc) if lc != 1 else v


def _sugar(v: Vec) -> int:
    return max(sum(m) for (_, m) in v)


def buchberger(vectors: list[Vec], morder: ModuleOrder, budget: Budget, rank1: bool) -> list[Vec]:
    """Reduced Groebner basis of the module generated by ``vectors``."""
    basis: list[Vec] = []
    leads: list[tuple] = []
    sugars: list[int] = []
    pairs: list[tuple] = []  # (sugar, lcm-key, i, j)

    def pair_entry(i: int, j: int):
        (pi, mi), (pj, mj) = leads[i], leads[j]
        lcm = mono_lcm(mi, mj)
        sug = max(
            sugars[i] + sum(lcm) - sum(mi),
            sugars[j] + sum(lcm) - sum(mj),
        )
        return (sug, morder.key((pi, lcm)), i, j)

    def add_element(v: Vec, sug: int) -> None:
        # Gebauer-Moeller update of the pair set for the new element.
        k = len(basis)
        pk, mk = vec_lead(v, morder)
        new_pairs = []
        for i in range(k):
            pi, mi = leads[i]
            if pi == pk:
                new_pairs.append((i, mono_lcm(mi, mk)))
        # criterion M: drop (i,k) if another (j,k) lcm properly divides it
        kept = []
        for i, l in new_pairs:
            drop = False
            for j, lj in new_pairs:
                if lj != l and mono_divides(lj, l):
                    drop = True
                    break
            if not drop:
                kept.append((i, l))
        # criterion F: among equal lcms keep the first
        seen: dict = {}
        kept2 = []
        for i, l in kept:
            if l in seen:
                continue
            seen[l] = i
            kept2.append((i, l))
        # product criterion (rank-1 ideals only)
        final = []
        for i, l in kept2:
            pi, mi = leads[i]
            if rank1 and mono_coprime(mi, mk):
                continue
            final.append(i)
        # criterion B: prune old pairs strictly refined by the new lead
        survivors = []
        for entry in pairs:
            _, _, i, j = entry
            (pi, mi), (pj, mj) = leads[i], leads[j]
            lij = mono_lcm(mi, mj)
            if (
                pi == pk
                and mono_divides(mk, lij)
                and mono_lcm(mi, mk) != lij
                and mono_lcm(mj, mk) != lij
            ):
                continue
            survivors.append(entry)
        pairs[:] = survivors
        basis.append(v)
        leads.append((pk, mk))
        sugars.append(sug)
        for i in final:
            pairs.append(pair_entry(i, k))

    for v in vectors:
        if not v:
            continue
        v = _monic(dict(v), morder)
        add_element(v, _sugar(v))

    while pairs:
        pairs.sort()
        sug, _, i, j = pairs.pop(0)
        budget.charge_pair()
        (pi, mi), (pj, mj) = leads[i], leads[j]
        lcm = mono_lcm(mi, mj)
        s: Vec = {}
        vec_add_scaled(s, basis[i], Fraction(1), mono_div(lcm, mi))
        vec_add_scaled(s, basis[j], Fraction(-1), mono_div(lcm, mj))
        if not s:
            continue
        r = normal_form_vec(s, basis, morder, budget)
        if r:
            add_element(_monic(r, morder), sug)

    return _reduce_basis(basis, morder, budget)


def _reduce_basis(basis: list[Vec], morder: ModuleOrder, budget: Budget) -> list[Vec]:
    # minimalize: drop elements whose lead is divisible by another lead
    kept: list[Vec] = []
    info = [(vec_lead(g, morder), g) for g in basis if g]
    for idx, ((p, m), g) in enumerate(info):
        redundant = False
        for jdx, ((p2, m2), _) in enumerate(info):
            if jdx == idx:
                continue
            if p2 == p and mono_divides(m2, m):
                if mono_div(m, m2) != tuple([0] * len(m)) or jdx < idx:
                    redundant = True
                    break
        if not redundant:
            kept.append(g)
    # tail-reduce each against the others
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        r = normal_form_vec(g, others, morder, budget)
        if r:
            out.append(_monic(r, morder))
    out.sort(key=lambda v: morder.key(vec_lead(v, morder)))
    return out


def buchberger_criterion_holds(basis: list[Vec], morder: ModuleOrder, budget: Budget) -> bool:
    """Post-hoc check: every S-vector reduces to zero modulo the basis."""
    leads = [vec_lead(g, morder) for g in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            (pi, mi), (pj, mj) = leads[i], leads[j]
            if pi != pj:
                continue
            lcm = mono_lcm(mi, mj)
            s: Vec = {}
            ci = basis[i][leads[i]]
            cj = basis[j][leads[j]]
            vec_add_scaled(s, basis[i], 1 / ci, mono_div(lcm, mi))
            vec_add_scaled(s, basis[j], -1 / cj, mono_div(lcm, mj))
            if normal_form_vec(s, basis, morder, budget):
                return False
    return True


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class Ideal:
    """Ideal of Q[ctx] with per-order cached reduced Groebner bases."""

    def __init__(self, ctx: VariableContext, generators: list[MultiPoly]):
        for g in generators:
            if g.ctx != ctx:
                raise ValueError("generator context mismatch")
        self.ctx = ctx
        self.generators = [g for g in generators if not g.is_zero()]
        self._gb_cache: dict[str, list[MultiPoly]] = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def groebner(self, order: MonomialOrder | None = None, budget: Budget | None = None) -> list[MultiPoly]:
        order = order or DegRevLexOrder()
        budget = budget or default_budget()
        if order.tag in self._gb_cache:
            return self._gb_cache[order.tag]
        if not self.generators:
            gb: list[MultiPoly] = []
        else:
            morder = ModuleOrder(order)
            vecs = [vec_from_poly(g) for g in self.generators]
            gbv = buchberger(vecs, morder, budget, rank1=True)
            gb = [vec_component(v, 0, self.ctx) for v in gbv]
        self._gb_cache[order.tag] = gb
        return gb

    def normal_form(self, f: MultiPoly, order: MonomialOrder | None = None, budget: Budget | None = None) -> MultiPoly:
        order = order or DegRevLexOrder()
        budget = budget or default_budget()
        gb = self.groebner(order, budget)
        morder = ModuleOrder(order)
        r = normal_form_vec(vec_from_poly(f), [vec_from_poly(g) for g in gb], morder, budget)
        return vec_component(r, 0, self.ctx)

    def member(self, f: MultiPoly, budget: Budget | None = None) -> bool:
        if f.is_zero():
            return True
        return self.normal_form(f, budget=budget).is_zero()

    def member_with_cofactors(self, f: MultiPoly, budget: Budget | None = None):
        """(True, [c_i]) with f = sum c_i g_i, or (False, None)."""
        budget = budget or default_budget()
        if f.is_zero():
            return True, [MultiPoly.zero(self.ctx) for _ in self.generators]
        gbv, morder = self._extended_gb(budget)
        k = len(self.generators)
        ideal_part = [v for v in gbv if any(p == 0 for (p, _) in v)]
        work = vec_from_poly(f)
        leads = [(vec_lead(g, morder), g) for g in ideal_part]
        while True:
            zero_terms = [t for t in work if t[0] == 0]
            if not zero_terms:
                break
            t = max(zero_terms, key=morder.key)
            pos, exps = t
            red = None
            for (lt, g) in leads:
                lp, le = lt
                if lp == 0:
                    q = mono_div(exps, le)
                    if q is not None:
                        red = (q, g, lt)
                        break
            if red is None:
                return False, None
            q, g, lt = red
            factor = work[t] / g[lt]
            budget.charge_terms(len(g))
            vec_add_scaled(work, g, -factor, q)
        cof = [
            -vec_component(work, 1 + i, self.ctx)
            for i in range(k)
        ]
        return True, cof

    def _extended_gb(self, budget: Budget):
        key = "__extended__"
        if key not in self._gb_cache:
            order = DegRevLexOrder()
            morder = ModuleOrder(order)
            vecs = []
            zero = self.ctx.zero_exponent()
            for i, g in enumerate(self.generators):
                v = vec_from_poly(g)
                v[(1 + i, zero)] = Fraction(1)
                vecs.append(v)
            self._gb_cache[key] = (buchberger(vecs, morder, budget, rank1=False), morder)
        return self._gb_cache[key]

    def equal(self, other: "Ideal", budget: Budget | None = None) -> bool:
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        return all(other.member(g, budget) for g in self.generators) and all(
            self.member(g, budget) for g in other.generators
        )

    def sum(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ctx, self.generators + other.generators)

    def eliminate(self, drop, budget: Budget | None = None) -> "Ideal":
        """Generators of I intersected with Q[remaining variables]."""
        drop = list(drop)
        if not drop:
            return self
        order = elimination_order(self.ctx, drop)
        gb = self.groebner(order, budget)
        dropset = set(drop)
        kept = [g for g in gb if not (g.support_vars() & dropset)]
        return Ideal(self.ctx, kept)

    def intersect(self, other: "Ideal", budget: Budget | None = None) -> "Ideal":
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        if not self.generators or not other.generators:
            return Ideal(self.ctx, [])
        tname = self.ctx.fresh_name("t@")
        ext = self.ctx.extend([tname])
        t = MultiPoly.variable(ext, tname)
        one = MultiPoly.constant(ext, 1)
        gens = [t * g.map_context(ext) for g in self.generators]
        gens += [(one - t) * g.map_context(ext) for g in other.generators]
        elim = Ideal(ext, gens).eliminate([tname], budget)
        return Ideal(self.ctx, [g.map_context(self.ctx) for g in elim.generators])

    def quotient(self, other: "Ideal", budget: Budget | None = None) -> "Ideal":
        """(I : J) = {f | f*J in I}."""
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        if not other.generators:
            return Ideal(self.ctx, [MultiPoly.constant(self.ctx, 1)])
        result: Ideal | None = None
        for f in other.generators:
            inter = self.intersect(Ideal(self.ctx, [f]), budget)
            quots = []
            for g in inter.generators:
                q = g.exact_div(f)
                if q is None:
                    raise ArithmeticError("intersection element not divisible in quotient")
                quots.append(q)
            part = Ideal(self.ctx, quots)
            result = part if result is None else result.intersect(part, budget)
        return result

    def saturate(self, other: "Ideal", max_steps: int = 8, budget: Budget | None = None) -> "Ideal":
        """Iterated quotient with a step budget (helper, not full I:J^inf)."""
        cur = self
        for _ in range(max_steps):
            nxt = cur.quotient(other, budget)
            if nxt.equal(cur, budget):
                return cur
            cur = nxt
        raise RuntimeError(f"saturation did not stabilize within {max_steps} steps")

    def krull_dimension(self, budget: Budget | None = None) -> int:
        """Krull dimension of Q[ctx]/I; the unit ideal reports -1."""
        gb = self.groebner(DegRevLexOrder(), budget)
        n = self.ctx.nvars
        supports = []
        for g in gb:
            lead = max(g.terms, key=lambda m: DegRevLexOrder().key(m))
            supports.append(frozenset(i for i, e in enumerate(lead) if e))
        for k in range(n, -1, -1):
            for sub in combinations(range(n), k):
                s = set(sub)
                if all(not sup <= s for sup in supports):
                    return k
        return -1


def syzygies(gens: list[MultiPoly], budget: Budget | None = None) -> list[list[MultiPoly]]:
    """Generators of the syzygy module {r : sum r_i g_i = 0}.

    Computed as the kernel block of a Groebner basis of the module
    generated by (g_i, e_i) under a position-over-term order with the
    ideal slot dominant.
    """
    budget = budget or default_budget()
    if not gens:
        return []
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("context mismatch")
        if g.is_zero():
            raise ValueError("syzygies of zero generators are not supported")
    morder = ModuleOrder(DegRevLexOrder())
    zero = ctx.zero_exponent()
    vecs = []
    for i, g in enumerate(gens):
        v = vec_from_poly(g)
        v[(1 + i, zero)] = Fraction(1)
        vecs.append(v)
    gb = buchberger(vecs, morder, budget, rank1=False)
    out = []
    for v in gb:
        if any(p == 0 for (p, _) in v):
            continue
        out.append([vec_component(v, 1 + i, ctx) for i in range(len(gens))])
    return out


def submodule_groebner(vectors: list[list[MultiPoly]], budget: Budget | None = None):
    """Reduced GB of a submodule of Q[ctx]^r given as lists of polynomials."""
    budget = budget or default_budget()
    ctx = vectors[0][0].ctx
    r = len(vectors[0])
    morder = ModuleOrder(DegRevLexOrder())
    vecs = []
    for row in vectors:
        v: Vec = {}
        for pos, p in enumerate(row):
            for m, c in p.terms.items():
                v[(pos, m)] = c
        if v:
            vecs.append(v)
    gb = buchberger(vecs, morder, budget, rank1=False)
    return gb, morder, ctx, r


def module_member_with_cofactors(
    rows: list[list[MultiPoly]],
    target: list[MultiPoly],
    budget: Budget | None = None,
):
    """(True, [c_i]) with target = sum c_i rows[i], or (False, None).

    Uses the extended module (rows[i], e_i) in R^r + R^k under POT with the
    original block dominant; reducing (target, 0) to zero in the first
    block yields the cofactors in the tail block.
    """
    budget = budget or default_budget()
    ctx = rows[0][0].ctx
    r = len(rows[0])
    k = len(rows)
    zero = ctx.zero_exponent()
    morder = ModuleOrder(DegRevLexOrder())
    vecs = []
    for i, row in enumerate(rows):
        v: Vec = {}
        for pos, p in enumerate(row):
            for m, c in p.terms.items():
                v[(pos, m)] = c
        v[(r + i, zero)] = Fraction(1)
        vecs.append(v)
    gb = buchberger(vecs, morder, budget, rank1=False)
    block = [g for g in gb if any(p < r for (p, _) in g)]
    leads = [(vec_lead(g, morder), g) for g in block]
    work: Vec = {}
    for pos, p in enumerate(target):
        for m, c in p.terms.items():
            work[(pos, m)] = c
    while True:
        front = [t for t in work if t[0] < r]
        if not front:
            break
        t = max(front, key=morder.key)
        pos, exps = t
        red = None
        for (lt, g) in leads:
            lp, le = lt
            if lp == pos:
                q = mono_div(exps, le)
                if q is not None:
                    red = (q, g, lt)
                    break
        if red is None:
            return False, None
        q, g, lt = red
        factor = work[t] / g[lt]
        budget.charge_terms(len(g))
        vec_add_scaled(work, g, -factor, q)
    cof = [-vec_component(work, r + i, ctx) for i in range(k)]
    return True, cof


def submodule_contains(gb_data, row: list[MultiPoly], budget: Budget | None = None) -> bool:
    budget = budget or default_budget()
    gb, morder, ctx, r = gb_data
    v: Vec = {}
    for pos, p in enumerate(row):
        for m, c in p.terms.items():
            v[(pos, m)] = c
    if not v:
        return True
    return not normal_form_vec(v, gb, morder, budget)


def krull_dimension(ideal: Ideal, budget: Budget | None = None) -> int:
    return ideal.krull_dimension(budget)


def is_regular_sequence(
    seq: list[MultiPoly],
    ctx: VariableContext,
    weights: list,
    budget: Budget | None = None,
) -> bool:
    """Codimension test: the sequence is regular iff dim drops by its length.

    Every element must be homogeneous for the supplied weight vector (the
    grading makes regularity order-independent); non-homogeneous input is
    an error, not a False.
    """
    if not seq:
        return True
    for f in seq:
        if f.is_zero():
            return False
        if not f.is_weighted_homogeneous(weights):
            raise ValueError(f"element not homogeneous for weights {weights}: {f}")
    n = ctx.nvars
    if len(seq) > n:
        return False
    dim = Ideal(ctx, list(seq)).krull_dimension(budget)
    return dim == n - len(seq)
