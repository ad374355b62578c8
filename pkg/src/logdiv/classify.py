"""The linearity/Koszul hierarchy of predicates for a certified free divisor.

All predicates are decided at the origin for polynomial representatives:
Euler homogeneity via Jacobian-ideal membership, the Koszul family via
regular-sequence (codimension) tests on symbol sequences, linear Jacobian
type by comparing the Rees kernel with its degree-one part, differential
linear type either through the strongly-Koszul equivalence or directly
against the computed annihilator of h^s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from logdiv.budget import Budget, BudgetExceededError, default_budget
from logdiv.context import ROLE_AUX, ROLE_BASE, ROLE_CENTRAL, ROLE_SYMBOL, VariableContext
from logdiv.divisor import FreeDivisor, LogDerivation, theta_generators
from logdiv.groebner import Ideal, is_regular_sequence
from logdiv.linalg import solve_linear
from logdiv.poly import MultiPoly
from logdiv.weyl import LeftIdealW, annihilator_fs

PREDICATES = (
    "euler_homogeneous",
    "strongly_euler_at_origin",
    "koszul",
    "weakly_koszul",
    "strongly_koszul",
    "linear_jacobian_type",
    "differential_linear_type",
)


@dataclass
class ClassificationReport:
    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    budget_used: dict = field(default_factory=dict)

    def value(self, name: str) -> str:
        return self.flags.get(name, "not-certified")

    def to_json(self) -> dict:
        return {
            name: {
                "value": self.flags.get(name, "not-certified"),
                "witness": self.witnesses.get(name),
                "cpu_budget_used": self.budget_used.get(name),
            }
            for name in PREDICATES
        }

    def verify_consistency(self) -> None:
        """Assert the implications the hierarchy guarantees."""
        f = self.flags

        def is_true(n):
            return f.get(n) == "true"

        def is_false(n):
            return f.get(n) == "false"

        if is_true("strongly_koszul") and is_false("koszul"):
            raise RuntimeError("inconsistency: strongly Koszul but not Koszul")
        if is_true("koszul") and is_false("weakly_koszul"):
            raise RuntimeError("inconsistency: Koszul but not weakly Koszul")
        ljt = f.get("linear_jacobian_type")
        if ljt in ("true", "true-at-0-only") and is_false("strongly_koszul"):
            raise RuntimeError("inconsistency: linear Jacobian type at 0 but not strongly Koszul")
        if is_true("strongly_koszul") and ljt == "false":
            raise RuntimeError("inconsistency: strongly Koszul but not linear Jacobian type at 0")
        if ljt == "true" and is_false("strongly_euler_at_origin"):
            raise RuntimeError("inconsistency: linear Jacobian type but not strongly Euler at 0")
        dlt = f.get("differential_linear_type")
        if dlt == "true" and is_true("weakly_koszul") and is_false("strongly_koszul"):
            raise RuntimeError("inconsistency: DLT and weakly Koszul but not strongly Koszul")
        if is_true("strongly_koszul") and dlt == "false":
            raise RuntimeError("inconsistency: strongly Koszul but not DLT")


# ---------------------------------------------------------------------------
# symbol contexts
# ---------------------------------------------------------------------------

def _ctx_x_xi(ctx: VariableContext) -> VariableContext:
    d = ctx.nvars
    return VariableContext(
        ctx.names + tuple(f"xi{i + 1}" for i in range(d)),
        (ROLE_BASE,) * d + (ROLE_SYMBOL,) * d,
    )


def _ctx_x_s_xi(ctx: VariableContext) -> VariableContext:
    d = ctx.nvars
    return VariableContext(
        ctx.names + ("s",) + tuple(f"xi{i + 1}" for i in range(d)),
        (ROLE_BASE,) * d + (ROLE_CENTRAL,) + (ROLE_SYMBOL,) * d,
    )


def _symbol_in(der: LogDerivation, sctx: VariableContext) -> MultiPoly:
    """sigma(delta) = sum a_j xi_j inside the given symbol context."""
    out = MultiPoly.zero(sctx)
    for j, a in enumerate(der.coeffs):
        out = out + a.map_context(sctx) * MultiPoly.variable(sctx, f"xi{j + 1}")
    return out


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def is_euler_homogeneous(fd: FreeDivisor, budget: Budget | None = None):
    """h in (h'_{x_1}, ..., h'_{x_d}), with the cofactor field as witness."""
    budget = budget or default_budget()
    ctx = fd.h.ctx
    partials = [fd.h.diff(x) for x in ctx.names]
    ideal = Ideal(ctx, partials)
    ok, cof = ideal.member_with_cofactors(fd.h, budget)
    if not ok:
        return False, None
    witness = " + ".join(
        f"({c})*d{i + 1}" for i, c in enumerate(cof) if not c.is_zero()
    )
    return True, witness


def is_strongly_euler_at_origin(fd: FreeDivisor, budget: Budget | None = None):
    """Search chi = sum c_i delta_i, chi(h) = h, coefficients vanishing at 0.

    The c_i run over polynomials of degree <= deg h; failure at that bound
    is reported as 'not-certified', a definite refutation only follows when
    Euler homogeneity itself fails.
    """
    budget = budget or default_budget()
    ctx = fd.h.ctx
    eh, _ = is_euler_homogeneous(fd, budget)
    if not eh:
        return "false", None
    alphas = fd.alphas()
    bound = max(fd.h.total_degree(), 1)
    monos = _monomials_up_to(ctx, bound)
    nvars = len(monos)
    cols = len(fd.basis) * nvars

    # rows: polynomial identity sum c_i alpha_i = 1, plus vanishing at 0
    row_index: dict[tuple, int] = {}
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def row_for(mono: tuple) -> int:
        if mono not in row_index:
            row_index[mono] = len(rows)
            rows.append([Fraction(0)] * cols)
            rhs.append(Fraction(0))
        return row_index[mono]

    for i, alpha in enumerate(alphas):
        for k, mono in enumerate(monos):
            col = i * nvars + k
            for m, c in alpha.terms.items():
                r = row_for(tuple(a + b for a, b in zip(mono, m)))
                rows[r][col] += c
    r_one = row_for(ctx.zero_exponent())
    rhs[r_one] = Fraction(1)

    zero_mono_idx = monos.index(ctx.zero_exponent())
    for k in range(fd.dimension):
        row = [Fraction(0)] * cols
        touched = False
        for i, der in enumerate(fd.basis):
            a0 = der.coeffs[k].constant_value()
            if a0:
                row[i * nvars + zero_mono_idx] += a0
                touched = True
        if touched:
            rows.append(row)
            rhs.append(Fraction(0))

    sol = solve_linear(rows, rhs)
    if sol is None:
        return "not-certified", {"degree_bound": bound}
    chi = [MultiPoly.zero(ctx) for _ in range(fd.dimension)]
    for i, der in enumerate(fd.basis):
        ci = MultiPoly(ctx, {monos[k]: sol[i * nvars + k] for k in range(nvars)})
        for j in range(fd.dimension):
            chi[j] = chi[j] + ci * der.coeffs[j]
    witness = " + ".join(
        f"({c})*d{j + 1}" for j, c in enumerate(chi) if not c.is_zero()
    )
    return "true", witness


def _monomials_up_to(ctx: VariableContext, degree: int) -> list[tuple]:
    out: list[tuple] = []

    def rec(prefix: list[int], remaining: int):
        if len(prefix) == ctx.nvars:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], degree)
    return sorted(out)


def is_koszul(fd: FreeDivisor, budget: Budget | None = None):
    """sigma(delta_1), ..., sigma(delta_d) regular in Q[x, xi]."""
    budget = budget or default_budget()
    sctx = _ctx_x_xi(fd.h.ctx)
    d = fd.dimension
    seq = [_symbol_in(der, sctx) for der in fd.basis]
    weights = [0] * d + [1] * d
    ok = is_regular_sequence(seq, sctx, weights, budget)
    dim = Ideal(sctx, seq).krull_dimension(budget)
    return ok, {"sequence": [str(p) for p in seq], "dimension": dim, "expected": d}


def is_weakly_koszul(fd: FreeDivisor, budget: Budget | None = None):
    """sigma(delta_i) - alpha_i s regular in Q[x, xi, s]."""
    budget = budget or default_budget()
    sctx = _ctx_x_s_xi(fd.h.ctx)
    d = fd.dimension
    s = MultiPoly.variable(sctx, "s")
    seq = [
        _symbol_in(der, sctx) - der.eigenvalue.map_context(sctx) * s
        for der in fd.basis
    ]
    weights = [0] * d + [1] + [1] * d
    ok = is_regular_sequence(seq, sctx, weights, budget)
    dim = Ideal(sctx, seq).krull_dimension(budget)
    return ok, {"sequence": [str(p) for p in seq], "dimension": dim, "expected": d + 1}


def is_strongly_koszul(fd: FreeDivisor, budget: Budget | None = None):
    """h, sigma(delta_1) - alpha_1 s, ..., sigma(delta_d) - alpha_d s regular."""
    budget = budget or default_budget()
    sctx = _ctx_x_s_xi(fd.h.ctx)
    d = fd.dimension
    s = MultiPoly.variable(sctx, "s")
    seq = [fd.h.map_context(sctx)] + [
        _symbol_in(der, sctx) - der.eigenvalue.map_context(sctx) * s
        for der in fd.basis
    ]
    weights = [0] * d + [1] + [1] * d
    ok = is_regular_sequence(seq, sctx, weights, budget)
    dim = Ideal(sctx, seq).krull_dimension(budget)
    return ok, {"sequence": [str(p) for p in seq], "dimension": dim, "expected": d}


def rees_kernel(h: MultiPoly, budget: Budget | None = None) -> Ideal:
    """ker(Phi) for Phi: Q[x, s, xi] -> Rees(J_D), s -> h t, xi_i -> h'_i t."""
    budget = budget or default_budget()
    sctx = _ctx_x_s_xi(h.ctx)
    tname = sctx.fresh_name("t@")
    ectx = sctx.extend([tname], [ROLE_AUX])
    t = MultiPoly.variable(ectx, tname)
    gens = [MultiPoly.variable(ectx, "s") - t * h.map_context(ectx)]
    for i, x in enumerate(h.ctx.names):
        gens.append(
            MultiPoly.variable(ectx, f"xi{i + 1}") - t * h.diff(x).map_context(ectx)
        )
    elim = Ideal(ectx, gens).eliminate([tname], budget)
    return Ideal(sctx, [g.map_context(sctx) for g in elim.generators])


def degree_one_kernel(fd: FreeDivisor) -> Ideal:
    """K^(1) = (sigma(delta_i) - alpha_i s) in Q[x, s, xi]."""
    sctx = _ctx_x_s_xi(fd.h.ctx)
    s = MultiPoly.variable(sctx, "s")
    gens = [
        _symbol_in(der, sctx) - der.eigenvalue.map_context(sctx) * s
        for der in fd.basis
    ]
    return Ideal(sctx, gens)


def is_linear_jacobian_type(fd: FreeDivisor, budget: Budget | None = None):
    """Compare K = ker Phi with K^(1); localize at 0 when they differ.

    Returns 'true' (global equality), 'true-at-0-only' (K/K^(1) not
    supported at 0), or 'false'.
    """
    budget = budget or default_budget()
    kernel = rees_kernel(fd.h, budget)
    k1 = degree_one_kernel(fd)
    for g in k1.generators:
        if not kernel.member(g, budget):
            raise AssertionError("K^(1) not contained in Rees kernel (internal bug)")
    if all(k1.member(g, budget) for g in kernel.generators):
        return "true", {
            "rees_kernel": [str(g) for g in kernel.generators],
            "degree_one": [str(g) for g in k1.generators],
        }
    quot = k1.quotient(kernel, budget)
    sctx = quot.ctx
    drop = ["s"] + [f"xi{i + 1}" for i in range(fd.dimension)]
    annx = quot.eliminate(drop, budget)
    for g in annx.generators:
        if g.constant_value() != 0:
            return "true-at-0-only", {"unit_at_0": str(g)}
    return "false", {
        "rees_kernel": [str(g) for g in kernel.generators],
        "degree_one": [str(g) for g in k1.generators],
    }


def is_differential_linear_type(fd: FreeDivisor, mode: str = "via-equivalence", budget: Budget | None = None):
    """DLT test; 'direct' compares ann h^s with D[s]Theta_{h,s} by GB equality."""
    budget = budget or default_budget()
    if mode == "via-equivalence":
        wk, _ = is_weakly_koszul(fd, budget)
        sk, _ = is_strongly_koszul(fd, budget)
        if sk:
            return True, {"mode": mode, "strongly_koszul": True}
        if wk:
            return False, {"mode": mode, "strongly_koszul": False, "weakly_koszul": True}
        # without weak Koszulness the equivalence gives no refutation
        return None, {"mode": mode, "strongly_koszul": False, "weakly_koszul": False}
    if mode != "direct":
        raise ValueError(f"unknown DLT mode {mode!r}")
    ann = annihilator_fs(fd.h, budget)
    theta = theta_generators(fd, (Fraction(0), Fraction(1)))
    ideal = LeftIdealW(ann.ctx, list(theta.elements))
    equal = ann.equal(ideal, budget=budget)
    return equal, {
        "mode": mode,
        "annihilator": [str(g) for g in ann.generators],
        "theta": [str(g) for g in theta.elements],
    }


def product_with_line(h: MultiPoly) -> MultiPoly:
    """The same equation read in one more variable: defines D x C."""
    extra = h.ctx.fresh_name("w")
    ectx = VariableContext(h.ctx.names + (extra,), h.ctx.roles + (ROLE_BASE,))
    return h.map_context(ectx)


def classify(fd: FreeDivisor, dlt_mode: str = "via-equivalence", budget: Budget | None = None) -> ClassificationReport:
    """Run all predicates, record witnesses, and assert consistency."""
    report = ClassificationReport()

    def run(name, fn):
        b = default_budget() if budget is None else Budget(budget.max_pairs, budget.max_term_ops)
        try:
            value, witness = fn(b)
        except BudgetExceededError as exc:
            report.flags[name] = "not-certified"
            report.witnesses[name] = f"budget exceeded: {exc}"
            report.budget_used[name] = b.usage()
            return
        if isinstance(value, bool):
            report.flags[name] = "true" if value else "false"
        elif value is None:
            report.flags[name] = "not-certified"
        else:
            report.flags[name] = value
        report.witnesses[name] = witness
        report.budget_used[name] = b.usage()

    run("koszul", lambda b: is_koszul(fd, b))
    run("weakly_koszul", lambda b: is_weakly_koszul(fd, b))
    run("strongly_koszul", lambda b: is_strongly_koszul(fd, b))
    run("euler_homogeneous", lambda b: is_euler_homogeneous(fd, b))
    run("strongly_euler_at_origin", lambda b: is_strongly_euler_at_origin(fd, b))
    run("linear_jacobian_type", lambda b: is_linear_jacobian_type(fd, b))
    run("differential_linear_type", lambda b: is_differential_linear_type(fd, dlt_mode, b))
    report.verify_consistency()
    return report
