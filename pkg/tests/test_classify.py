"""classifier: hierarchy predicates, Rees kernels, cross-checks."""

import pytest

from logdiv.classify import (
    classify,
    degree_one_kernel,
    is_differential_linear_type,
    is_euler_homogeneous,
    is_koszul,
    is_linear_jacobian_type,
    is_strongly_euler_at_origin,
    is_strongly_koszul,
    is_weakly_koszul,
    product_with_line,
    rees_kernel,
)
from logdiv.context import VariableContext
from logdiv.divisor import euler_normalize, free_divisor
from logdiv.groebner import Ideal
from logdiv.poly import parse_poly

XY = VariableContext(["x", "y"])


def fd_for(text, vars_):
    ctx = VariableContext(vars_)
    h = parse_poly(text, ctx)
    fd = free_divisor(h)
    return euler_normalize(fd) or fd


CUSP = fd_for("x^2 - y^3", ["x", "y"])
NC2 = fd_for("x*y", ["x", "y"])
NC3 = fd_for("x*y*z", ["x", "y", "z"])
LINES3 = fd_for("x*y*(x+y)", ["x", "y"])
WKNK = fd_for("x1*x2*(x1+x2)*(x1+x3*x2)", ["x1", "x2", "x3"])
NONQH = fd_for("x^4 + y^5 + x*y^4", ["x", "y"])


class TestEuler:
    def test_cusp_witness(self):
        ok, witness = is_euler_homogeneous(CUSP)
        assert ok and "d1" in witness

    def test_normal_crossing(self):
        ok, _ = is_euler_homogeneous(NC2)
        assert ok

    def test_non_qh_curve_fails(self):
        ok, _ = is_euler_homogeneous(NONQH)
        assert not ok

    def test_strong_euler_at_origin(self):
        assert is_strongly_euler_at_origin(CUSP)[0] == "true"
        assert is_strongly_euler_at_origin(NC2)[0] == "true"
        assert is_strongly_euler_at_origin(WKNK)[0] == "true"
        assert is_strongly_euler_at_origin(NONQH)[0] == "false"


class TestKoszulFamily:
    def test_koszul(self):
        assert is_koszul(CUSP)[0]
        assert is_koszul(NC2)[0]
        assert is_koszul(NC3)[0]
        assert not is_koszul(WKNK)[0]
        assert is_koszul(NONQH)[0]

    def test_weakly_koszul(self):
        assert is_weakly_koszul(WKNK)[0]
        assert is_weakly_koszul(CUSP)[0]
        assert is_weakly_koszul(NC2)[0]

    def test_strongly_koszul(self):
        assert is_strongly_koszul(CUSP)[0]
        assert is_strongly_koszul(NC2)[0]
        assert not is_strongly_koszul(WKNK)[0]
        assert not is_strongly_koszul(NONQH)[0]


class TestReesKernel:
    def test_smooth_line(self):
        ctx = VariableContext(["x"])
        kernel = rees_kernel(parse_poly("x", ctx))
        target = parse_poly("s - x*xi1", kernel.ctx)
        assert kernel.member(target)
        assert Ideal(kernel.ctx, [target]).equal(kernel)

    def test_normal_crossing_relations(self):
        kernel = rees_kernel(parse_poly("x*y", XY))
        assert kernel.member(parse_poly("x*xi1 - s", kernel.ctx))
        assert kernel.member(parse_poly("y*xi2 - s", kernel.ctx))

    def test_cusp_relations(self):
        kernel = rees_kernel(parse_poly("x^2 - y^3", XY))
        assert kernel.member(parse_poly("6*s - 3*x*xi1 - 2*y*xi2", kernel.ctx))
        assert kernel.member(parse_poly("-3*y^2*xi1 - 2*x*xi2", kernel.ctx))

    def test_cusp_kernel_equals_degree_one_part(self):
        kernel = rees_kernel(CUSP.h)
        assert kernel.equal(degree_one_kernel(CUSP))


class TestLJT:
    def test_values(self):
        assert is_linear_jacobian_type(CUSP)[0] == "true"
        assert is_linear_jacobian_type(NC2)[0] == "true"
        assert is_linear_jacobian_type(NONQH)[0] == "false"
        assert is_linear_jacobian_type(WKNK)[0] == "false"

    def test_equivalence_with_strongly_koszul(self):
        # both sides computed by independent algorithms
        for fd in (CUSP, NC2, NC3, LINES3, WKNK, NONQH):
            sk = is_strongly_koszul(fd)[0]
            ljt = is_linear_jacobian_type(fd)[0]
            assert sk == (ljt in ("true", "true-at-0-only")), str(fd.h)


class TestDLT:
    def test_direct_mode_cusp(self):
        ok, info = is_differential_linear_type(CUSP, "direct")
        assert ok and info["mode"] == "direct"

    def test_direct_mode_normal_crossing(self):
        ok, _ = is_differential_linear_type(NC2, "direct")
        assert ok

    def test_via_equivalence_non_qh(self):
        ok, _ = is_differential_linear_type(NONQH, "via-equivalence")
        assert ok is False

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            is_differential_linear_type(CUSP, "guess")


class TestClassify:
    def test_cusp_all_true(self):
        rep = classify(CUSP)
        for name in rep.flags:
            assert rep.flags[name] == "true", name

    def test_paper_example_wk_not_k(self):
        rep = classify(WKNK)
        assert rep.value("weakly_koszul") == "true"
        assert rep.value("koszul") == "false"
        assert rep.value("strongly_koszul") == "false"

    def test_non_qh_curve(self):
        rep = classify(NONQH)
        assert rep.value("koszul") == "true"
        assert rep.value("strongly_koszul") == "false"

    def test_normal_crossing_3(self):
        rep = classify(NC3)
        assert all(v == "true" for v in rep.flags.values())

    def test_witnesses_present(self):
        rep = classify(CUSP)
        for name, value in rep.flags.items():
            if value in ("true", "false"):
                assert name in rep.witnesses

    def test_json_shape(self):
        payload = classify(NC2).to_json()
        for name, cell in payload.items():
            assert set(cell) == {"value", "witness", "cpu_budget_used"}


class TestProductWithLine:
    def test_predicates_stable_under_product(self):
        h2 = product_with_line(CUSP.h)
        fd2 = fd_for(str(h2), list(h2.ctx.names))
        assert is_strongly_koszul(fd2)[0]
        assert is_linear_jacobian_type(fd2)[0] == "true"
        assert is_strongly_euler_at_origin(fd2)[0] == "true"
