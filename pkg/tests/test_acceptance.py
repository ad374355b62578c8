"""Acceptance criteria, one test per criterion.

Each test prints a single pass/fail line (visible with -s / on failure);
running ``pytest -v tests/test_acceptance.py`` shows one line per criterion.
All tolerances are exact: every comparison is rational arithmetic.
"""

import random
from fractions import Fraction

import pytest

from logdiv.bernstein import (
    bs_free,
    bs_general,
    check_symmetry,
    integer_root_bound,
    minimal_certified_b,
    qh_milnor_oracle,
    yano_reduced_b,
)
from logdiv.budget import Budget
from logdiv.classify import classify, is_linear_jacobian_type, is_strongly_koszul
from logdiv.context import DegRevLexOrder, VariableContext
from logdiv.divisor import euler_normalize, free_divisor
from logdiv.groebner import (
    Ideal,
    ModuleOrder,
    buchberger_criterion_holds,
    syzygies,
    vec_from_poly,
)
from logdiv.poly import MultiPoly, parse_poly
from logdiv.spencer import build_spencer, check_complex, verify_duality
from logdiv.upoly import udivmod, umonic, umul, ustr
from logdiv.weyl import transpose, weyl_context
from tests.helpers import random_poly, random_weyl

SYMMETRY_ENTRIES = {
    "x": ["x"],
    "x*y": ["x", "y"],
    "x*y*z": ["x", "y", "z"],
    "x^2 - y^3": ["x", "y"],
    "x*y*(x+y)": ["x", "y"],
}

EXPECTED_B = {
    "x": "s + 1",
    "x*y": "(s+1)^2",
    "x*y*z": "(s+1)^3",
    "x^2 - y^3": "(s+1)*(s+5/6)*(s+7/6)",
    "x*y*(x+y)": "(s+1)^2*(s+2/3)*(s+4/3)",
}

FREE_CORPUS = dict(
    SYMMETRY_ENTRIES,
    **{
        "x1*x2*(x1+x2)*(x1+x3*x2)": ["x1", "x2", "x3"],
        "x^4 + y^5 + x*y^4": ["x", "y"],
    },
)

Q_VALUES = {
    "s": (Fraction(0), Fraction(1)),
    "s+1": (Fraction(1), Fraction(1)),
    "-s-1": (Fraction(-1), Fraction(-1)),
    "-s-2": (Fraction(-2), Fraction(-1)),
}


def upoly(text):
    ctx = VariableContext(["s"])
    p = parse_poly(text, ctx)
    deg = p.degree_in("s")
    return [p.terms.get((i,), Fraction(0)) for i in range(deg + 1)]


@pytest.fixture(scope="module")
def cache():
    store = {"fd": {}, "b": {}}

    def fd_of(text):
        if text not in store["fd"]:
            ctx = VariableContext(FREE_CORPUS[text])
            h = parse_poly(text, ctx)
            fd = free_divisor(h)
            store["fd"][text] = euler_normalize(fd) or fd
        return store["fd"][text]

    def b_of(text):
        if text not in store["b"]:
            store["b"][text] = bs_free(fd_of(text))
        return store["b"][text]

    store["fd_of"] = fd_of
    store["b_of"] = b_of
    return store


def test_criterion_01_symmetry_theorem_instances(cache):
    for text in SYMMETRY_ENTRIES:
        result = cache["b_of"](text)
        assert check_symmetry(result.b, 2), text
    print("criterion 1 (b(s) = +/- b(-s-2) on the five strongly Koszul entries): PASS")


def test_criterion_02_known_bernstein_values_dual_oracle(cache):
    for text, vars_ in SYMMETRY_ENTRIES.items():
        expected = umonic(upoly(EXPECTED_B[text]))
        rfree = cache["b_of"](text)
        assert rfree.b == expected, f"bs_free({text}) = {ustr(rfree.b)}"
        h = parse_poly(text, VariableContext(vars_))
        rgen = bs_general(h)
        assert rgen.b == expected, f"bs_general({text}) = {ustr(rgen.b)}"
        found = minimal_certified_b(h, expected)
        assert found is not None and found[0] == expected, f"oracle minimal for {text}"
    print("criterion 2 (bs_free = bs_general = minimal certified b, exact): PASS")


def test_criterion_03_classification_ground_truth(cache):
    rep = classify(cache["fd_of"]("x1*x2*(x1+x2)*(x1+x3*x2)"))
    assert rep.value("weakly_koszul") == "true"
    assert rep.value("koszul") == "false"
    assert rep.value("strongly_koszul") == "false"
    rep2 = classify(cache["fd_of"]("x^4 + y^5 + x*y^4"))
    assert rep2.value("koszul") == "true"
    assert rep2.value("strongly_koszul") == "false"
    print("criterion 3 (paper classification ground truth): PASS")


def test_criterion_04_strongly_koszul_iff_linear_jacobian_type(cache):
    for text in FREE_CORPUS:
        fd = cache["fd_of"](text)
        sk, _ = is_strongly_koszul(fd)
        ljt, _ = is_linear_jacobian_type(fd)
        assert sk == (ljt in ("true", "true-at-0-only")), text
    print("criterion 4 (strongly Koszul <=> linear Jacobian type, independent routes): PASS")


def test_criterion_05_duality_verification(cache):
    for text in SYMMETRY_ENTRIES:
        fd = cache["fd_of"](text)
        assert verify_duality(fd, Q_VALUES["s"]), text
        assert verify_duality(fd, Q_VALUES["s+1"]), text
    print("criterion 5 (Dual(D[s]h^q) = D[s]h^(-q-1) at q = s and q = s+1): PASS")


def test_criterion_06_integer_root_corollary(cache):
    for text in SYMMETRY_ENTRIES:
        result = cache["b_of"](text)
        assert integer_root_bound(result.b), text
    print("criterion 6 (no integer roots <= -2 on strongly Koszul entries): PASS")


def test_criterion_07_yano_symmetry_instances():
    cusp = parse_poly("x^2 - y^3", VariableContext(["x", "y"]))
    roots2 = qh_milnor_oracle(cusp, [Fraction(1, 2), Fraction(1, 3)])
    assert check_symmetry(yano_reduced_b(roots2), 2)
    fermat = parse_poly("x^3 + y^3 + z^3", VariableContext(["x", "y", "z"]))
    roots3 = qh_milnor_oracle(fermat, [Fraction(1, 3)] * 3)
    assert check_symmetry(yano_reduced_b(roots3), 3)
    # oracle agreement for the cusp: reduced b equals the Milnor polynomial
    reduced = bs_general(cusp).reduced
    assert umonic(reduced) == yano_reduced_b(roots2)
    print("criterion 7 (Yano shifted symmetry + cusp oracle agreement): PASS")


class TestCriterion08PropertySuites:
    CASES = 1000

    def test_weyl_associativity_and_commutators(self):
        ctx = weyl_context(["x", "y"])
        rng = random.Random(101)
        for _ in range(self.CASES):
            a, b, c = (random_weyl(rng, ctx, max_terms=2, max_exp=2) for _ in range(3))
            assert (a * b) * c == a * (b * c)
        from logdiv.weyl import WeylElement, parse_weyl

        x, d1 = parse_weyl("x", ctx), parse_weyl("d1", ctx)
        y, d2 = parse_weyl("y", ctx), parse_weyl("d2", ctx)
        one = WeylElement.constant(ctx, 1)
        assert d1 * x - x * d1 == one and d2 * y - y * d2 == one
        assert d1 * y == y * d1 and d2 * x == x * d2
        print("criterion 8a (Weyl normal-form associativity, 1000 cases): PASS")

    def test_leibniz(self):
        rng = random.Random(103)
        for _ in range(self.CASES):
            f, g = random_poly(rng), random_poly(rng)
            for v in ("x", "y"):
                assert (f * g).diff(v) == f.diff(v) * g + f * g.diff(v)
        print("criterion 8b (Leibniz rule, 1000 cases): PASS")

    def test_transpose_involution(self):
        ctx = weyl_context(["x", "y"])
        rng = random.Random(107)
        for _ in range(self.CASES):
            a, b = random_weyl(rng, ctx, max_terms=2, max_exp=2), random_weyl(
                rng, ctx, max_terms=2, max_exp=2
            )
            assert transpose(transpose(a)) == a
            assert transpose(a * b) == transpose(b) * transpose(a)
        print("criterion 8c (transposition involutive anti-automorphism, 1000 cases): PASS")

    def test_eps_squared_zero_on_corpus(self, cache=None):
        for text, vars_ in FREE_CORPUS.items():
            ctx = VariableContext(vars_)
            h = parse_poly(text, ctx)
            fd = free_divisor(h)
            fd = euler_normalize(fd) or fd
            for label, q in Q_VALUES.items():
                sp = build_spencer(fd, q)
                assert check_complex(sp), (text, label)
        print("criterion 8d (eps∘eps = 0 on all corpus complexes, q in {s, s+1, -s-1, -s-2}): PASS")

    def test_gb_idempotence_and_buchberger_posthoc(self):
        rng = random.Random(109)
        checked = 0
        order = DegRevLexOrder()
        morder = ModuleOrder(order)
        while checked < self.CASES:
            gens = [random_poly(rng, max_terms=3, max_exp=2) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            ideal = Ideal(gens[0].ctx, gens)
            gb = ideal.groebner(order)
            assert Ideal(gens[0].ctx, gb).groebner(order) == gb
            assert buchberger_criterion_holds(
                [vec_from_poly(g) for g in gb], morder, Budget()
            )
            for g in gens:
                assert ideal.normal_form(g).is_zero()
            checked += 1
        print("criterion 8e (GB idempotence + Buchberger post-check, 1000 cases): PASS")

    def test_syzygy_exactness(self):
        rng = random.Random(113)
        checked = 0
        while checked < self.CASES:
            gens = [random_poly(rng, max_terms=2, max_exp=2) for _ in range(rng.randint(2, 3))]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            rows = syzygies(gens)
            for row in rows:
                total = MultiPoly.zero(gens[0].ctx)
                for c, g in zip(row, gens):
                    total = total + c * g
                assert total.is_zero()
            checked += 1
        print("criterion 8f (syzygy exactness sum r_i g_i = 0, 1000 cases): PASS")


def test_criterion_09_exclusions_documented():
    """Not reproducible at desk scale, covered by instance checks instead:

    - the universally quantified theorem for all free divisors of linear
      Jacobian type (we verify the five strongly Koszul corpus instances);
    - the duality b_E(s) = +/- b_{E*}(-s-2) for integrable logarithmic
      connections (out of scope);
    - sheaf-level logarithmic comparison statements (only the integer-root
      consequence is reported).
    """
    print("criterion 9 (excluded universal/sheaf-level statements documented): PASS")
