"""commutative-gb: Buchberger engine, ideal operations, dimension, syzygies."""

import random
from fractions import Fraction
from itertools import product as iproduct

import pytest

from logdiv.budget import Budget, BudgetExceededError
from logdiv.context import DegRevLexOrder, LexOrder, VariableContext
from logdiv.groebner import (
    Ideal,
    ModuleOrder,
    buchberger_criterion_holds,
    is_regular_sequence,
    module_member_with_cofactors,
    syzygies,
    vec_from_poly,
)
from logdiv.poly import MultiPoly, parse_poly

XY = VariableContext(["x", "y"])


def P(text, ctx=XY):
    return parse_poly(text, ctx)


class TestGroebner:
    def test_two_variables_lex(self):
        gb = Ideal(XY, [P("x"), P("y")]).groebner(LexOrder())
        assert gb == [P("y"), P("x")] or gb == [P("x"), P("y")]

    def test_cusp_jacobian_with_h(self):
        gb = Ideal(XY, [P("x^2 - y^3"), P("2*x"), P("-3*y^2")]).groebner()
        assert gb == [P("x"), P("y^2")]

    def test_unit_ideal(self):
        gb = Ideal(XY, [P("x"), P("x + 1")]).groebner()
        assert gb == [P("1")]

    def test_budget_error(self):
        ctx = VariableContext(["x", "y", "z"])
        gens = [parse_poly(t, ctx) for t in ("x^3 - 2*x*y", "x^2*y - 2*y^2 + x", "z^4 - x*y*z")]
        with pytest.raises(BudgetExceededError):
            Ideal(ctx, gens).groebner(budget=Budget(max_pairs=1))


class TestIdealOps:
    def test_member_cusp(self):
        ideal = Ideal(XY, [P("2*x"), P("-3*y^2")])
        ok, cof = ideal.member_with_cofactors(P("x^2 - y^3"))
        assert ok
        total = MultiPoly.zero(XY)
        for c, g in zip(cof, ideal.generators):
            total = total + c * g
        assert total == P("x^2 - y^3")

    def test_member_negative(self):
        assert not Ideal(XY, [P("x^2"), P("y")]).member(P("x"))

    def test_zero_member(self):
        assert Ideal(XY, [P("x")]).member(MultiPoly.zero(XY))

    def test_ideal_equal(self):
        assert Ideal(XY, [P("x"), P("y")]).equal(Ideal(XY, [P("x + y"), P("y")]))
        assert not Ideal(XY, [P("x^2")]).equal(Ideal(XY, [P("x")]))

    def test_eliminate_graph(self):
        # (s - t*x, xi - t) in Q[x, s, xi, t]; eliminating t gives (s - x*xi)
        ctx = VariableContext(["x", "s", "xi", "t"])
        gens = [parse_poly("s - t*x", ctx), parse_poly("xi - t", ctx)]
        elim = Ideal(ctx, gens).eliminate(["t"])
        target = parse_poly("s - x*xi", ctx)
        assert elim.member(target)
        assert Ideal(ctx, [target]).equal(elim)

    def test_eliminate_to_zero(self):
        ctx = VariableContext(["y", "t"])
        elim = Ideal(ctx, [parse_poly("y - t", ctx)]).eliminate(["t"])
        assert elim.generators == []

    def test_quotient(self):
        assert Ideal(XY, [P("x^2")]).quotient(Ideal(XY, [P("x")])).equal(Ideal(XY, [P("x")]))
        assert Ideal(XY, [P("x")]).quotient(Ideal(XY, [P("1")])).equal(Ideal(XY, [P("x")]))
        assert Ideal(XY, [P("x*y")]).quotient(Ideal(XY, [P("x")])).equal(Ideal(XY, [P("y")]))

    def test_intersect(self):
        inter = Ideal(XY, [P("x")]).intersect(Ideal(XY, [P("y")]))
        assert inter.equal(Ideal(XY, [P("x*y")]))

    def test_saturate_stabilizes(self):
        ideal = Ideal(XY, [P("x^3*y")]).saturate(Ideal(XY, [P("x")]))
        assert ideal.equal(Ideal(XY, [P("y")]))


class TestDimension:
    def test_zero_ideal(self):
        assert Ideal(XY, []).krull_dimension() == 2

    def test_principal(self):
        assert Ideal(XY, [P("x")]).krull_dimension() == 1

    def test_unit(self):
        assert Ideal(XY, [P("1")]).krull_dimension() == -1

    def test_point(self):
        assert Ideal(XY, [P("x"), P("y")]).krull_dimension() == 0

    def test_rees_kernel_of_cusp_dimension(self):
        # d + 1 = 3 in Q[x, y, s, xi1, xi2]
        from logdiv.classify import rees_kernel

        kernel = rees_kernel(P("x^2 - y^3"))
        assert kernel.krull_dimension() == 3

    def test_monomial_ideals_against_grid_count(self):
        # dimension of a monomial ideal = growth exponent of the number of
        # standard monomials, estimated by brute-force counts on two boxes
        import math

        rng = random.Random(23)
        ctx = VariableContext(["x", "y", "z"])
        for _ in range(20):
            gens = []
            for _ in range(rng.randint(1, 3)):
                m = tuple(rng.randint(0, 2) for _ in range(3))
                if m != (0, 0, 0):
                    gens.append(MultiPoly.monomial(ctx, m))
            if not gens:
                continue
            dim = Ideal(ctx, gens).krull_dimension()
            lead = [max(g.terms) for g in gens]

            def standard_count(box):
                count = 0
                for mono in iproduct(range(box), repeat=3):
                    if not any(all(a >= b for a, b in zip(mono, l)) for l in lead):
                        count += 1
                return count

            c1, c2 = standard_count(6), standard_count(12)
            if dim == 0:
                assert c1 == c2
            else:
                assert abs(math.log2(c2 / c1) - dim) < 0.6


class TestRegularSequences:
    def test_coordinates(self):
        assert is_regular_sequence([P("x"), P("y")], XY, [1, 1])

    def test_dependent_pair(self):
        assert not is_regular_sequence([P("x"), P("x*y")], XY, [1, 1])

    def test_cusp_symbol_sequence(self):
        ctx = VariableContext(["x", "y", "s", "xi1", "xi2"])
        seq = [
            parse_poly("x^2 - y^3", ctx),
            parse_poly("1/2*x*xi1 + 1/3*y*xi2 - s", ctx),
            parse_poly("-3*y^2*xi1 - 2*x*xi2", ctx),
        ]
        weights = [0, 0, 1, 1, 1]
        assert is_regular_sequence(seq, ctx, weights)

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            is_regular_sequence([P("x + x^2")], XY, [1, 1])


class TestSyzygies:
    def test_koszul_pair(self):
        rows = syzygies([P("x"), P("y")])
        assert len(rows) == 1
        r = rows[0]
        assert r[0] * P("x") + r[1] * P("y") == MultiPoly.zero(XY)

    def test_trivial_for_unit(self):
        assert syzygies([P("1")]) == []

    def test_cusp_jacobian_syzygies(self):
        h = P("x^2 - y^3")
        gens = [h, h.diff("x"), h.diff("y")]
        rows = syzygies(gens)
        assert rows
        for row in rows:
            total = MultiPoly.zero(XY)
            for c, g in zip(row, gens):
                total = total + c * g
            assert total.is_zero()
        # the Euler syzygy is in the computed module
        euler = [P("-1"), P("1/2*x"), P("1/3*y")]
        ok, cof = module_member_with_cofactors(rows, euler)
        assert ok

    def test_randomized_exactness(self):
        rng = random.Random(31)
        from tests.helpers import random_poly

        for _ in range(50):
            gens = [random_poly(rng) for _ in range(rng.randint(1, 3))]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            for row in syzygies(gens):
                total = MultiPoly.zero(XY)
                for c, g in zip(row, gens):
                    total = total + c * g
                assert total.is_zero()


class TestPostHocBuchberger:
    def test_random_ideals_pass_criterion(self):
        rng = random.Random(37)
        from tests.helpers import random_poly

        for _ in range(50):
            gens = [random_poly(rng) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            ideal = Ideal(XY, gens)
            gb = ideal.groebner()
            vecs = [vec_from_poly(g) for g in gb]
            assert buchberger_criterion_holds(vecs, ModuleOrder(DegRevLexOrder()), Budget())
            # idempotence
            gb2 = Ideal(XY, gb).groebner()
            assert gb == gb2
            for g in ideal.generators:
                assert ideal.normal_form(g).is_zero()

    def test_randomized_elimination_vanishes_on_parametrization(self):
        # graph ideals (y1 - f(t), y2 - g(t)): every eliminated element
        # vanishes under substitution by the parametrization
        rng = random.Random(41)
        tctx = VariableContext(["t"])
        for _ in range(20):
            f = MultiPoly(
                tctx,
                {(rng.randint(0, 2),): Fraction(rng.randint(-3, 3)) for _ in range(2)},
            )
            g = MultiPoly(
                tctx,
                {(rng.randint(0, 2),): Fraction(rng.randint(-3, 3)) for _ in range(2)},
            )
            ctx = VariableContext(["y1", "y2", "t"])
            gens = [
                parse_poly("y1", ctx) - f.map_context(ctx),
                parse_poly("y2", ctx) - g.map_context(ctx),
            ]
            elim = Ideal(ctx, gens).eliminate(["t"])
            for p in elim.generators:
                image = p.substitute({"y1": f, "y2": g, "t": MultiPoly.variable(tctx, "t")})
                assert image.is_zero()
