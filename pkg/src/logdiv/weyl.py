"""Normal forms and left Groebner bases in the Weyl algebra D[s].

Elements are stored normally ordered: every coordinate (x_i, the auxiliary
t, extra central variables) and the central s stand left of every partial.
A term is a single exponent tuple over the slot layout

    [coordinates...] [s] [partials...]

and multiplication expands ``d^m x^n`` through the commutation rule
[d_i, x_i] = 1.  Any monomial order on the slots is admissible for leading
terms because commutator corrections strictly divide the main monomial.

The left Buchberger kernel mirrors the commutative one but never applies
the coprimality criterion (it fails in the Weyl algebra); chain pruning is
kept.  On top: elimination, center intersection, the transposition
anti-automorphism, order/total symbols, the action on powers h^{q(s)}, and
the Malgrange-style computation of ann h^s.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from logdiv.budget import Budget, default_budget
from logdiv.context import (
    BlockOrder,
    DegRevLexOrder,
    MonomialOrder,
    VariableContext,
    ROLE_BASE,
    ROLE_CENTRAL,
    ROLE_SYMBOL,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from logdiv.poly import MultiPoly, parse_poly


class WeylContext:
    """Slot layout for a Weyl algebra with central s and optional extras."""

    __slots__ = ("coords", "partial_names", "has_s", "aux", "names", "pairs", "_index")

    def __init__(
        self,
        coords: tuple[str, ...],
        partial_names: tuple[str | None, ...],
        has_s: bool = True,
        aux: tuple[str, ...] = (),
    ):
        coords = tuple(coords)
        partial_names = tuple(partial_names)
        if len(coords) != len(partial_names):
            raise ValueError("coords/partials length mismatch")
        names = list(coords)
        if has_s:
            names.append("s")
        pairs = []
        for i, pn in enumerate(partial_names):
            if pn is not None:
                pairs.append((i, len(names) + len(pairs)))
        names.extend(pn for pn in partial_names if pn is not None)
        if len(set(names)) != len(names):
            raise ValueError(f"name collision in weyl context: {names}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "partial_names", partial_names)
        object.__setattr__(self, "has_s", has_s)
        object.__setattr__(self, "aux", tuple(aux))
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "pairs", tuple(pairs))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, *_):
        raise AttributeError("WeylContext is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, WeylContext)
            and self.names == other.names
            and self.pairs == other.pairs
            and self.has_s == other.has_s
        )

    def __hash__(self):
        return hash((self.names, self.pairs, self.has_s))

    def __repr__(self):
        return f"WeylContext({', '.join(self.names)})"

    @property
    def nslots(self) -> int:
        return len(self.names)

    def slot(self, name: str) -> int:
        return self._index[name]

    @property
    def s_slot(self) -> int | None:
        return len(self.coords) if self.has_s else None

    def coord_slots(self) -> range:
        return range(len(self.coords))

    def partial_slots(self) -> list[int]:
        return [p for (_, p) in self.pairs]

    def zero(self) -> tuple:
        return (0,) * self.nslots

    def base_coords(self) -> tuple[str, ...]:
        return tuple(c for c in self.coords if c not in self.aux)

    def coefficient_context(self) -> VariableContext:
        """Commutative context of the coordinates plus s (coefficients)."""
        names = list(self.coords) + (["s"] if self.has_s else [])
        roles = [ROLE_BASE] * len(self.coords) + ([ROLE_CENTRAL] if self.has_s else [])
        return VariableContext(names, roles)

    def symbol_context(self) -> VariableContext:
        """Commutative context (coords..., s, xi...) for symbol maps."""
        names = list(self.coords)
        roles = [ROLE_BASE] * len(self.coords)
        if self.has_s:
            names.append("s")
            roles.append(ROLE_CENTRAL)
        for k, (ci, _) in enumerate(self.pairs):
            names.append(f"xi{k + 1}")
            roles.append(ROLE_SYMBOL)
        return VariableContext(names, roles)


def weyl_context(base_vars, with_s: bool = True) -> WeylContext:
    """D = Q[x]<d> (optionally extended by central s); partials named d1..dd."""
    base_vars = tuple(base_vars)
    partials = tuple(f"d{i + 1}" for i in range(len(base_vars)))
    return WeylContext(base_vars, partials, has_s=with_s)


def malgrange_context(base_vars) -> WeylContext:
    """Weyl algebra in (x, t) with homogenizing centrals u, v and no s."""
    base_vars = tuple(base_vars)
    coords = base_vars + ("t", "u", "v")
    partials = tuple(f"d{i + 1}" for i in range(len(base_vars))) + ("dt", None, None)
    return WeylContext(coords, partials, has_s=False, aux=("t", "u", "v"))


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _pair_expansion(m: int, n: int) -> tuple[tuple[int, int], ...]:
    """d^m x^n = sum_k factor * x^(n-k) d^(m-k); returns ((k, factor), ...)."""
    out = []
    ff = 1
    for k in range(0, min(m, n) + 1):
        if k:
            ff *= n - k + 1
        out.append((k, comb(m, k) * ff))
    return tuple(out)


class WeylElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: WeylContext, terms: dict):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def zero(cls, ctx: WeylContext) -> "WeylElement":
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx: WeylContext, value) -> "WeylElement":
        c = Fraction(value)
        return cls(ctx, {ctx.zero(): c} if c else {})

    @classmethod
    def generator(cls, ctx: WeylContext, name: str) -> "WeylElement":
        e = [0] * ctx.nslots
        e[ctx.slot(name)] = 1
        return cls(ctx, {tuple(e): Fraction(1)})

    @classmethod
    def from_poly(cls, p: MultiPoly, ctx: WeylContext) -> "WeylElement":
        """Lift a commutative polynomial in coordinates (and s) into D[s]."""
        out = {}
        slots = [ctx.slot(n) for n in p.ctx.names]
        for m, c in p.terms.items():
            e = [0] * ctx.nslots
            for i, x in enumerate(m):
                if x:
                    e[slots[i]] = x
            out[tuple(e)] = c
        return cls(ctx, out)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "WeylElement"):
        if self.ctx != other.ctx:
            raise ValueError("weyl context mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return WeylElement(self.ctx, out)

    def __neg__(self):
        return WeylElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value) -> "WeylElement":
        c = Fraction(value)
        if not c:
            return WeylElement.zero(self.ctx)
        return WeylElement(self.ctx, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _compose_into(out, self.ctx, e1, e2, c1 * c2)
        return WeylElement(self.ctx, out)

    def __pow__(self, n: int) -> "WeylElement":
        out = WeylElement.constant(self.ctx, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        return weyl_str(self)

    def commutative_part(self) -> MultiPoly | None:
        """As polynomial in coordinates and s, or None if any partial occurs."""
        ctx = self.ctx.coefficient_context()
        pslots = set(self.ctx.partial_slots())
        out = {}
        for m, c in self.terms.items():
            if any(m[p] for p in pslots):
                return None
            e = tuple(m[i] for i in range(ctx.nvars))
            out[e] = c
        return MultiPoly(ctx, out)


def _compose_into(out: dict, ctx: WeylContext, e1: tuple, e2: tuple, coeff: Fraction) -> None:
    """out += coeff * normal_order(term e1 * term e2)."""
    base = list(mono_mul(e1, e2))
    expansions = []
    for (ci, pi) in ctx.pairs:
        m, n = e1[pi], e2[ci]
        if m and n:
            expansions.append((ci, pi, _pair_expansion(m, n)))
    if not expansions:
        t = tuple(base)
        s = out.get(t, Fraction(0)) + coeff
        if s:
            out[t] = s
        else:
            out.pop(t, None)
        return
    stack = [(0, base, 1)]
    while stack:
        idx, exps, factor = stack.pop()
        if idx == len(expansions):
            t = tuple(exps)
            s = out.get(t, Fraction(0)) + coeff * factor
            if s:
                out[t] = s
            else:
                out.pop(t, None)
            continue
        ci, pi, exp = expansions[idx]
        for k, f in exp:
            e = list(exps)
            e[ci] -= k
            e[pi] -= k
            stack.append((idx + 1, e, factor * f))


def term_mul_elem(coeff: Fraction, exps: tuple, elem: WeylElement) -> dict:
    """(coeff * monomial) * elem as a raw term dict."""
    out: dict = {}
    for e2, c2 in elem.terms.items():
        _compose_into(out, elem.ctx, exps, e2, coeff * c2)
    return out


# ---------------------------------------------------------------------------
# printing / parsing (normal-order exchange format)
# ---------------------------------------------------------------------------

def weyl_str(p: WeylElement) -> str:
    if p.is_zero():
        return "0"
    names = p.ctx.names
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        factors = [names[j] if e == 1 else f"{names[j]}^{e}" for j, e in enumerate(m) if e]
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([str(mag)] + factors)
        else:
            body = str(mag)
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def parse_weyl(text: str, ctx: WeylContext) -> WeylElement:
    """Parse the normal-order text format back into an element."""
    flat = VariableContext(ctx.names)
    p = parse_poly(text, flat)
    return WeylElement(ctx, dict(p.terms))


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def transpose(p: WeylElement) -> WeylElement:
    """The anti-automorphism x -> x, d -> -d, s -> s (no auxiliaries)."""
    ctx = p.ctx
    if ctx.aux:
        for m in p.terms:
            for a in ctx.aux:
                if m[ctx.slot(a)]:
                    raise ValueError("transpose is defined without auxiliary variables")
        for (ci, pi) in ctx.pairs:
            if ctx.coords[ci] in ctx.aux:
                for m in p.terms:
                    if m[pi]:
                        raise ValueError("transpose is defined without auxiliary variables")
    pslots = ctx.partial_slots()
    out: dict = {}
    for m, c in p.terms.items():
        dpart = [0] * ctx.nslots
        xpart = [0] * ctx.nslots
        dtotal = 0
        for i, e in enumerate(m):
            if i in pslots:
                dpart[i] = e
                dtotal += e
            else:
                xpart[i] = e
        sign = -1 if dtotal % 2 else 1
        _compose_into(out, ctx, tuple(dpart), tuple(xpart), c * sign)
    return WeylElement(ctx, out)


def total_symbol(p: WeylElement) -> MultiPoly:
    """Top part for weights (x:0, d:1, s:1), with d_i mapped to xi_i."""
    return _symbol(p, include_s=True)


def order_symbol(p: WeylElement) -> MultiPoly:
    """Principal symbol for the order filtration (weights d:1, rest 0)."""
    return _symbol(p, include_s=False)


def _symbol(p: WeylElement, include_s: bool) -> MultiPoly:
    ctx = p.ctx
    sctx = ctx.symbol_context()
    pslots = ctx.partial_slots()
    s_slot = ctx.s_slot
    if p.is_zero():
        return MultiPoly.zero(sctx)
    def weight(m):
        w = sum(m[j] for j in pslots)
        if include_s and s_slot is not None:
            w += m[s_slot]
        return w
    top = max(weight(m) for m in p.terms)
    out = {}
    xi_base = len(ctx.coords) + (1 if ctx.has_s else 0)
    for m, c in p.terms.items():
        if weight(m) != top:
            continue
        e = [0] * sctx.nvars
        for i in range(len(ctx.coords)):
            e[i] = m[i]
        if ctx.has_s:
            e[len(ctx.coords)] = m[s_slot]
        for k, (_, pj) in enumerate(ctx.pairs):
            e[xi_base + k] = m[pj]
        out[tuple(e)] = c
    return MultiPoly(sctx, out)


def substitute_s(p: WeylElement, value: Fraction) -> WeylElement:
    """Specialize the central s to a rational number."""
    ctx = p.ctx
    sl = ctx.s_slot
    if sl is None:
        return p
    out: dict = {}
    for m, c in p.terms.items():
        e = list(m)
        b = e[sl]
        e[sl] = 0
        t = tuple(e)
        s = out.get(t, Fraction(0)) + c * (Fraction(value) ** b)
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return WeylElement(ctx, out)


def derivation(ctx: WeylContext, coeffs: list[MultiPoly]) -> WeylElement:
    """sum coeffs[i] * d_i over the paired coordinates."""
    out = WeylElement.zero(ctx)
    for (ci, pi), a in zip(ctx.pairs, coeffs):
        if a.is_zero():
            continue
        e = [0] * ctx.nslots
        e[pi] = 1
        di = WeylElement(ctx, {tuple(e): Fraction(1)})
        out = out + WeylElement.from_poly(a, ctx) * di
    return out


def apply_to_power(p: WeylElement, h: MultiPoly, q: tuple[Fraction, Fraction]):
    """Coefficient of P acting on h^{q(s)}: P h^q = (N / h^e) h^q.

    ``q = (q0, q1)`` encodes q(s) = q0 + q1*s.  Returns (N, e) with N in
    Q[x, s] and minimal e >= 0.  Uses
    d_i (N/h^e * h^q) = (d_i(N) h + (q - e) N h_i) / h^{e+1} * h^q.
    """
    ctx = p.ctx
    if any(ctx.coords[ci] in ctx.aux for ci, _ in ctx.pairs):
        raise ValueError("apply_to_power needs a plain D[s] context")
    if h.is_zero():
        raise ValueError("h must be nonzero")
    cctx = ctx.coefficient_context()
    h_c = h.map_context(cctx)
    qpoly = MultiPoly.constant(cctx, q[0])
    if ctx.has_s and q[1]:
        qpoly = qpoly + MultiPoly.variable(cctx, "s").scale(q[1])
    elif q[1]:
        raise ValueError("q depends on s but the context has no s")
    h_partials = {ci: h_c.diff(ctx.coords[ci]) for (ci, _) in ctx.pairs}
    pieces = []  # (N, e)
    s_slot = ctx.s_slot
    for m, c in p.terms.items():
        n_poly = MultiPoly.constant(cctx, c)
        e = 0
        for (ci, pi) in ctx.pairs:
            for _ in range(m[pi]):
                shift = qpoly - MultiPoly.constant(cctx, e)
                n_poly = n_poly.diff(ctx.coords[ci]) * h_c + shift * n_poly * h_partials[ci]
                e += 1
        mono = [0] * cctx.nvars
        for i in range(len(ctx.coords)):
            mono[i] = m[i]
        if ctx.has_s:
            mono[len(ctx.coords)] = m[s_slot]
        n_poly = n_poly * MultiPoly.monomial(cctx, tuple(mono))
        pieces.append((n_poly, e))
    if not pieces:
        return MultiPoly.zero(cctx), 0
    emax = max(e for _, e in pieces)
    total = MultiPoly.zero(cctx)
    for n_poly, e in pieces:
        total = total + n_poly * h_c ** (emax - e)
    while emax > 0 and not total.is_zero():
        quo = total.exact_div(h_c)
        if quo is None:
            break
        total, emax = quo, emax - 1
    if total.is_zero():
        emax = 0
    return total, emax


# ---------------------------------------------------------------------------
# left Groebner bases
# ---------------------------------------------------------------------------

class WModOrder:
    """Position-over-term order for vectors of Weyl elements."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.tag = f"WPOT({order.tag})"

    def key(self, term):
        pos, exps = term
        return (-pos, self.order.key(exps))


def wvec_lead(v: dict, morder: WModOrder):
    return max(v, key=morder.key)


def _wvec_red_step(work: dict, ctx: WeylContext, g: dict, glead, factor: Fraction, q: tuple) -> None:
    """work -= factor * (x^q applied on the left of g); cancels glead*q."""
    for (p, m), c in g.items():
        prod = term_mul_elem(-factor * c, q, WeylElement(ctx, {m: Fraction(1)}))
        for mm, cc in prod.items():
            t = (p, mm)
            s = work.get(t, Fraction(0)) + cc
            if s:
                work[t] = s
            else:
                work.pop(t, None)


def wnormal_form(v: dict, basis: list[dict], ctx: WeylContext, morder: WModOrder, budget: Budget) -> dict:
    leads = [(wvec_lead(g, morder), g) for g in basis if g]
    work = dict(v)
    out: dict = {}
    while work:
        t = wvec_lead(work, morder)
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
            out[t] = work.pop(t)
            continue
        q, g, lt = red
        factor = work[t] / g[lt]
        budget.charge_terms(len(g))
        _wvec_red_step(work, ctx, g, lt, factor, q)
    return out


def _wmonic(v: dict, morder: WModOrder) -> dict:
    lc = v[wvec_lead(v, morder)]
    if lc == 1:
        return v
    return {t: c / lc for t, c in v.items()}


def left_buchberger(vectors: list[dict], ctx: WeylContext, order: MonomialOrder, budget: Budget) -> list[dict]:
    """Reduced left Groebner basis (module version; ideals are rank 1).

    No coprimality pruning: only the chain criteria, which remain valid for
    algebras of solvable type.
    """
    morder = WModOrder(order)
    basis: list[dict] = []
    leads: list[tuple] = []
    pairs: list[tuple] = []

    def pair_entry(i, j):
        (pi, mi), (pj, mj) = leads[i], leads[j]
        lcm = mono_lcm(mi, mj)
        sug = sum(lcm)
        return (sug, morder.key((pi, lcm)), i, j)

    def add_element(v: dict):
        k = len(basis)
        pk, mk = wvec_lead(v, morder)
        new_pairs = [(i, mono_lcm(leads[i][1], mk)) for i in range(k) if leads[i][0] == pk]
        kept = []
        for i, l in new_pairs:
            if any(lj != l and mono_divides(lj, l) for _, lj in new_pairs):
                continue
            kept.append((i, l))
        seen: dict = {}
        final = []
        for i, l in kept:
            if l in seen:
                continue
            seen[l] = i
            final.append(i)
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
        for i in final:
            pairs.append(pair_entry(i, k))

    for v in vectors:
        if v:
            add_element(_wmonic(dict(v), morder))

    while pairs:
        pairs.sort()
        _, _, i, j = pairs.pop(0)
        budget.charge_pair()
        (pi, mi), (pj, mj) = leads[i], leads[j]
        lcm = mono_lcm(mi, mj)
        s: dict = {}
        _wvec_red_step(s, ctx, basis[i], leads[i], Fraction(-1), mono_div(lcm, mi))
        _wvec_red_step(s, ctx, basis[j], leads[j], Fraction(1), mono_div(lcm, mj))
        if not s:
            continue
        r = wnormal_form(s, basis, ctx, morder, budget)
        if r:
            add_element(_wmonic(r, morder))

    # minimalize + tail-reduce
    info = [(wvec_lead(g, morder), g) for g in basis]
    kept = []
    for idx, ((p, m), g) in enumerate(info):
        redundant = False
        for jdx, ((p2, m2), _) in enumerate(info):
            if jdx == idx or p2 != p:
                continue
            if mono_divides(m2, m) and (m2 != m or jdx < idx):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        r = wnormal_form(g, others, ctx, morder, budget)
        if r:
            out.append(_wmonic(r, morder))
    out.sort(key=lambda v: morder.key(wvec_lead(v, morder)))
    return out


def left_buchberger_criterion_holds(basis: list[dict], ctx: WeylContext, order: MonomialOrder, budget: Budget) -> bool:
    morder = WModOrder(order)
    leads = [wvec_lead(g, morder) for g in basis]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            (pi, mi), (pj, mj) = leads[i], leads[j]
            if pi != pj:
                continue
            lcm = mono_lcm(mi, mj)
            s: dict = {}
            ci, cj = basis[i][leads[i]], basis[j][leads[j]]
            _wvec_red_step(s, ctx, basis[i], leads[i], Fraction(-1) / ci, mono_div(lcm, mi))
            _wvec_red_step(s, ctx, basis[j], leads[j], Fraction(1) / cj, mono_div(lcm, mj))
            if wnormal_form(s, basis, ctx, morder, budget):
                return False
    return True


class LeftIdealW:
    """Left ideal of D[s] with cached reduced left Groebner bases."""

    def __init__(self, ctx: WeylContext, generators: list[WeylElement]):
        for g in generators:
            if g.ctx != ctx:
                raise ValueError("generator context mismatch")
        self.ctx = ctx
        self.generators = [g for g in generators if not g.is_zero()]
        self._cache: dict[str, list[WeylElement]] = {}

    def __repr__(self):
        return f"LeftIdealW({'; '.join(map(str, self.generators)) or '0'})"

    def groebner(self, order: MonomialOrder | None = None, budget: Budget | None = None) -> list[WeylElement]:
        order = order or DegRevLexOrder()
        budget = budget or default_budget()
        if order.tag in self._cache:
            return self._cache[order.tag]
        vecs = [{(0, m): c for m, c in g.terms.items()} for g in self.generators]
        gb = left_buchberger(vecs, self.ctx, order, budget)
        out = [WeylElement(self.ctx, {m: c for (_, m), c in v.items()}) for v in gb]
        self._cache[order.tag] = out
        return out

    def normal_form(self, f: WeylElement, order: MonomialOrder | None = None, budget: Budget | None = None) -> WeylElement:
        order = order or DegRevLexOrder()
        budget = budget or default_budget()
        gb = self.groebner(order, budget)
        morder = WModOrder(order)
        vecs = [{(0, m): c for m, c in g.terms.items()} for g in gb]
        r = wnormal_form({(0, m): c for m, c in f.terms.items()}, vecs, self.ctx, morder, budget)
        return WeylElement(self.ctx, {m: c for (_, m), c in r.items()})

    def member(self, f: WeylElement, budget: Budget | None = None) -> bool:
        return f.is_zero() or self.normal_form(f, budget=budget).is_zero()

    def equal(self, other: "LeftIdealW", order: MonomialOrder | None = None, budget: Budget | None = None) -> bool:
        """Reduced-GB equality (reduced bases are unique per order)."""
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        a = self.groebner(order, budget)
        b = other.groebner(order, budget)
        return [g.terms for g in a] == [g.terms for g in b]

    def eliminate_to_center(self, budget: Budget | None = None) -> list[Fraction] | None:
        """Monic generator of I intersect Q[s] as a coefficient list, or None."""
        ctx = self.ctx
        if not ctx.has_s:
            raise ValueError("context has no central s")
        budget = budget or default_budget()
        sl = ctx.s_slot
        others = [i for i in range(ctx.nslots) if i != sl]
        order = BlockOrder([(others, DegRevLexOrder()), ([sl], DegRevLexOrder())])
        gb = self.groebner(order, budget)
        central = []
        for g in gb:
            if all(all(m[i] == 0 for i in others) for m in g.terms):
                coeffs: dict[int, Fraction] = {}
                for m, c in g.terms.items():
                    coeffs[m[sl]] = c
                deg = max(coeffs)
                central.append([coeffs.get(i, Fraction(0)) for i in range(deg + 1)])
        if not central:
            return None
        from logdiv.upoly import ugcd, umonic

        out = central[0]
        for c in central[1:]:
            out = ugcd(out, c)
        return umonic(out)


def weyl_syzygies(gens: list[WeylElement], budget: Budget | None = None) -> list[list[WeylElement]]:
    """Generators of the left syzygy module of ``gens`` in D[s]^k."""
    budget = budget or default_budget()
    ctx = gens[0].ctx
    zero = ctx.zero()
    vecs = []
    for i, g in enumerate(gens):
        v = {(0, m): c for m, c in g.terms.items()}
        v[(1 + i, zero)] = Fraction(1)
        vecs.append(v)
    gb = left_buchberger(vecs, ctx, DegRevLexOrder(), budget)
    out = []
    for v in gb:
        if any(p == 0 for (p, _) in v):
            continue
        row = []
        for i in range(len(gens)):
            row.append(WeylElement(ctx, {m: c for (p, m), c in v.items() if p == 1 + i}))
        out.append(row)
    return out


def weyl_module_member(row: list[WeylElement], module_gens: list[list[WeylElement]], budget: Budget | None = None) -> bool:
    """Membership of a vector in the left submodule of D[s]^r."""
    budget = budget or default_budget()
    ctx = row[0].ctx
    vecs = []
    for g in module_gens:
        v: dict = {}
        for pos, comp in enumerate(g):
            for m, c in comp.terms.items():
                v[(pos, m)] = c
        if v:
            vecs.append(v)
    gb = left_buchberger(vecs, ctx, DegRevLexOrder(), budget)
    target: dict = {}
    for pos, comp in enumerate(row):
        for m, c in comp.terms.items():
            target[(pos, m)] = c
    if not target:
        return True
    morder = WModOrder(DegRevLexOrder())
    return not wnormal_form(target, gb, ctx, morder, budget)


# ---------------------------------------------------------------------------
# annihilator of h^s (Malgrange construction)
# ---------------------------------------------------------------------------

def annihilator_fs(h: MultiPoly, budget: Budget | None = None) -> LeftIdealW:
    """Generators of ann_{D[s]} h^s.

    Works in the Weyl algebra over (x, t) extended by central u, v.  The
    left ideal

        I = < t - u*h,  d_i + u*h_i*dt,  1 - u*v >

    is homogeneous for the weight (t: -1, dt: +1, u: -1, v: +1), and its
    intersection with the (u, v)-free subalgebra is the largest weight-
    graded subideal of < t - h, d_i + h_i*dt >.  Homogeneous generators of
    weight m are shifted into weight 0 by t^m (m > 0) or dt^(-m) (m < 0);
    weight-0 elements are polynomials in theta = t*dt, which acts on h^s as
    -s - 1.
    """
    budget = budget or default_budget()
    base = h.ctx.names
    mctx = malgrange_context(base)
    d = len(base)

    def gen(name):
        return WeylElement.generator(mctx, name)

    def lift(p: MultiPoly) -> WeylElement:
        return WeylElement.from_poly(p.map_context(mctx.coefficient_context()), mctx)
    t, u, v, dt = gen("t"), gen("u"), gen("v"), gen("dt")
    gens = [t - u * lift(h)]
    for i, x in enumerate(base):
        gens.append(gen(f"d{i + 1}") + u * lift(h.diff(x)) * dt)
    gens.append(WeylElement.constant(mctx, 1) - u * v)

    uslot, vslot = mctx.slot("u"), mctx.slot("v")
    others = [i for i in range(mctx.nslots) if i not in (uslot, vslot)]
    order = BlockOrder([([uslot, vslot], DegRevLexOrder()), (others, DegRevLexOrder())])
    ideal = LeftIdealW(mctx, gens)
    gb = ideal.groebner(order, budget)

    tslot, dtslot = mctx.slot("t"), mctx.slot("dt")
    graded: list[WeylElement] = []
    for g in gb:
        if any(m[uslot] or m[vslot] for m in g.terms):
            continue
        weights = {m[dtslot] - m[tslot] for m in g.terms}
        if len(weights) != 1:
            raise AssertionError("elimination lost weight homogeneity (internal bug)")
        (w,) = weights
        if w > 0:
            shift = [0] * mctx.nslots
            shift[tslot] = w
        elif w < 0:
            shift = [0] * mctx.nslots
            shift[dtslot] = -w
        else:
            shift = None
        if shift is not None:
            g = WeylElement(mctx, term_mul_elem(Fraction(1), tuple(shift), g))
        graded.append(g)

    # rewrite weight-0 elements into D[s]: t^p dt^p = theta(theta-1)...(theta-p+1),
    # with theta = t*dt acting as -s-1.
    dctx = weyl_context(base, with_s=True)
    cctx = dctx.coefficient_context()
    s = MultiPoly.variable(cctx, "s")
    out: list[WeylElement] = []
    for g in graded:
        acc = WeylElement.zero(dctx)
        for m, c in g.terms.items():
            p_t, p_dt = m[tslot], m[dtslot]
            if p_t != p_dt:
                raise AssertionError("weight-0 element with unbalanced t, dt (internal bug)")
            spoly = MultiPoly.constant(cctx, c)
            for j in range(p_t):
                spoly = spoly * (MultiPoly.constant(cctx, -1 - j) - s)
            e = [0] * dctx.nslots
            for i in range(d):
                e[i] = m[i]
                e[dctx.slot(f"d{i + 1}")] = m[mctx.slot(f"d{i + 1}")]
            term = WeylElement(dctx, {tuple(e): Fraction(1)})
            acc = acc + WeylElement.from_poly(spoly, dctx) * term
        if not acc.is_zero():
            out.append(acc)
    return LeftIdealW(dctx, out)
