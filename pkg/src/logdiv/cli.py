"""Command-line front end: analyze | logderiv | classify | bsp | symmetry |
spencer | dual | annihilator | corpus.

Reports are deterministic JSON-able dictionaries: identical input and flags
produce identical bytes (timings are only included behind --timings).
Exit codes: 0 success, 1 mismatch or predicate failure, 2 input error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from logdiv.budget import Budget, BudgetExceededError
from logdiv.bernstein import (
    BernsteinPreconditionError,
    bs_free,
    bs_general,
    check_symmetry,
    qh_milnor_oracle,
    yano_reduced_b,
)
from logdiv.classify import classify
from logdiv.context import VariableContext
from logdiv.corpus import CorpusEntry, entry_weights, get_entries
from logdiv.divisor import (
    NotFreeError,
    euler_normalize,
    free_divisor,
    jacobian_ideal,
    log_derivations,
)
from logdiv.poly import MultiPoly, PolyParseError, parse_poly
from logdiv.spencer import build_spencer, check_complex, dual_presentation, verify_duality
from logdiv.upoly import UPoly, udivmod, umonic, ustr
from logdiv.weyl import annihilator_fs

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------

def _infer_vars(expr: str) -> list[str]:
    names = set()
    cur = ""
    for ch in expr + " ":
        if ch.isalnum() or ch == "_":
            cur += ch
        else:
            if cur and not cur[0].isdigit():
                names.add(cur)
            cur = ""
    if not names:
        raise InputError("no variables found in expression")
    return sorted(names)


def _parse_h(expr: str, vars_opt: str | None) -> MultiPoly:
    names = [v.strip() for v in vars_opt.split(",")] if vars_opt else _infer_vars(expr)
    if any(not n for n in names):
        raise InputError("empty variable name in --vars")
    ctx = VariableContext(names)
    try:
        return parse_poly(expr, ctx)
    except PolyParseError as exc:
        raise InputError(f"cannot parse polynomial: {exc}") from exc


def _check_divisor_input(h: MultiPoly, budget: Budget) -> None:
    if h.is_zero() or h.is_constant():
        raise InputError("h must be a nonconstant polynomial")
    if h.constant_value() != 0:
        raise InputError("h(0) != 0: not a divisor germ at the origin")
    d = h.ctx.nvars
    sing_dim = jacobian_ideal(h).krull_dimension(budget)
    if sing_dim > d - 2:
        raise InputError(
            f"h is not reduced: the locus V(h, dh) has dimension {sing_dim} > {d - 2}"
        )


def _parse_q(text: str) -> tuple[Fraction, Fraction]:
    ctx = VariableContext(["s"])
    try:
        p = parse_poly(text, ctx)
    except PolyParseError as exc:
        raise InputError(f"cannot parse q(s): {exc}") from exc
    if p.degree_in("s") > 1:
        raise InputError("q(s) must be linear in s")
    q0 = p.terms.get((0,), Fraction(0))
    q1 = p.terms.get((1,), Fraction(0))
    return (q0, q1)


def _parse_upoly(text: str) -> UPoly:
    ctx = VariableContext(["s"])
    try:
        p = parse_poly(text, ctx)
    except PolyParseError as exc:
        raise InputError(f"cannot parse polynomial in s: {exc}") from exc
    if p.is_zero():
        return []
    deg = p.degree_in("s")
    return [p.terms.get((i,), Fraction(0)) for i in range(deg + 1)]


def _budget_from_args(args) -> Budget:
    max_pairs, max_terms = 200_000, 50_000_000
    env = os.environ.get("LOGDIV_BUDGET")
    if env:
        parts = env.replace(":", ",").split(",")
        try:
            if len(parts) >= 1 and parts[0]:
                max_pairs = int(parts[0])
            if len(parts) >= 2 and parts[1]:
                max_terms = int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad LOGDIV_BUDGET value {env!r}") from exc
    if getattr(args, "max_pairs", None):
        max_pairs = args.max_pairs
    if getattr(args, "max_terms", None):
        max_terms = args.max_terms
    max_seconds = getattr(args, "timeout", None)
    return Budget(max_pairs, max_terms, max_seconds)


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, ensure_ascii=False)
    target = getattr(args, "json", None)
    if target and target != "-":
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        _render_human(report)
    elif target == "-":
        print(text)
    else:
        _render_human(report)


def _render_human(report: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _render_human(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _render_human(item, indent + 1)
                print(f"{pad}  -")
        else:
            print(f"{pad}{key}: {value}")


QS = (Fraction(0), Fraction(1))
QS1 = (Fraction(1), Fraction(1))


def _prepare(args, budget: Budget):
    h = _parse_h(args.expr, args.vars)
    _check_divisor_input(h, budget)
    fd = free_divisor(h, budget)
    fdn = euler_normalize(fd, budget)
    return h, (fdn if fdn is not None else fd)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_logderiv(args) -> int:
    budget = _budget_from_args(args)
    h = _parse_h(args.expr, args.vars)
    _check_divisor_input(h, budget)
    ders = log_derivations(h, budget)
    report = {
        "input": {"h": str(h), "vars": list(h.ctx.names)},
        "generators": [
            {"coeffs": [str(c) for c in d.coeffs], "eigenvalue": str(d.eigenvalue)}
            for d in ders
        ],
    }
    try:
        fd = free_divisor(h, budget)
        fdn = euler_normalize(fd, budget)
        report["free"] = (fdn or fd).report_fragment()
    except NotFreeError as exc:
        report["free"] = {"certified": False, "reason": str(exc), **exc.details}
    _emit(report, args)
    return EXIT_OK


def cmd_classify(args) -> int:
    budget = _budget_from_args(args)
    h, fd = _prepare(args, budget)
    rep = classify(fd, dlt_mode=args.dlt_mode, budget=budget)
    report = {
        "input": {"h": str(h), "vars": list(h.ctx.names)},
        "free": fd.report_fragment(),
        "classification": rep.to_json(),
    }
    _emit(report, args)
    return EXIT_OK


def cmd_bsp(args) -> int:
    budget = _budget_from_args(args)
    h = _parse_h(args.expr, args.vars)
    _check_divisor_input(h, budget)
    result = None
    method_note = None
    try:
        fd = free_divisor(h, budget)
        fdn = euler_normalize(fd, budget) or fd
        try:
            result = bs_free(fdn, budget)
        except BernsteinPreconditionError as exc:
            method_note = str(exc)
    except NotFreeError as exc:
        method_note = f"not free: {exc}"
    if result is None:
        result = bs_general(h, budget)
        if method_note:
            result.certificate = None
    report = {
        "input": {"h": str(h), "vars": list(h.ctx.names)},
        "bernstein": result.to_json(),
    }
    if method_note:
        report["note"] = method_note
    _emit(report, args)
    return EXIT_OK


def cmd_symmetry(args) -> int:
    budget = _budget_from_args(args)
    if args.poly:
        b = _parse_upoly(args.poly)
        if not b:
            raise InputError("zero polynomial has no symmetry verdict")
        verdict = check_symmetry(b, args.shift)
        report = {"poly": ustr(b), "shift": args.shift, "symmetric": verdict}
        _emit(report, args)
        return EXIT_OK if verdict else EXIT_MISMATCH
    if not args.expr:
        raise InputError("symmetry needs --poly or a divisor expression")
    h = _parse_h(args.expr, args.vars)
    _check_divisor_input(h, budget)
    result = bs_general(h, budget)
    verdict = check_symmetry(result.b, args.shift)
    report = {
        "input": {"h": str(h)},
        "b": ustr(result.b),
        "shift": args.shift,
        "symmetric": verdict,
    }
    _emit(report, args)
    return EXIT_OK if verdict else EXIT_MISMATCH


def cmd_spencer(args) -> int:
    budget = _budget_from_args(args)
    h, fd = _prepare(args, budget)
    q = _parse_q(args.q)
    sp = build_spencer(fd, q, budget)
    ok = check_complex(sp)
    report = {
        "input": {"h": str(h), "q": args.q},
        "complex": sp.dump(),
        "eps_squared_zero": ok,
    }
    _emit(report, args)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_dual(args) -> int:
    budget = _budget_from_args(args)
    h, fd = _prepare(args, budget)
    q = _parse_q(args.q)
    pres = dual_presentation(fd, q, budget)
    verdict = verify_duality(fd, q, budget)
    report = {
        "input": {"h": str(h), "q": args.q},
        "dual": {
            "relations": [str(g) for g in pres.relations.generators],
            "concentration_degree": pres.concentration_degree,
            "shifted_degree": pres.shifted_degree,
            "heuristic": pres.heuristic,
        },
        "duality_verified": verdict,
    }
    _emit(report, args)
    return EXIT_OK if verdict else EXIT_MISMATCH


def cmd_annihilator(args) -> int:
    budget = _budget_from_args(args)
    h = _parse_h(args.expr, args.vars)
    _check_divisor_input(h, budget)
    ann = annihilator_fs(h, budget)
    report = {
        "input": {"h": str(h), "vars": list(h.ctx.names)},
        "annihilator": [str(g) for g in ann.generators],
        "groebner": [str(g) for g in ann.groebner(budget=budget)],
    }
    _emit(report, args)
    return EXIT_OK


def cmd_analyze(args) -> int:
    budget = _budget_from_args(args)
    timings: dict[str, float] = {}

    def clock(name):
        class _T:
            def __enter__(self):
                self.t0 = time.monotonic()

            def __exit__(self, *exc):
                timings[name] = round(time.monotonic() - self.t0, 3)

        return _T()

    h = _parse_h(args.expr, args.vars)
    _check_divisor_input(h, budget)
    report: dict = {"input": {"h": str(h), "vars": list(h.ctx.names)}, "reduced": True}
    with clock("free"):
        fd0 = free_divisor(h, budget)
        fd = euler_normalize(fd0, budget) or fd0
    report["free"] = fd.report_fragment()
    with clock("classify"):
        rep = classify(fd, budget=budget)
    report["classification"] = rep.to_json()
    section: dict = {}
    with clock("bernstein"):
        try:
            if rep.value("strongly_koszul") == "true":
                rfree = bs_free(fd, budget)
                rgen = bs_general(h, budget)
                section = rfree.to_json()
                section["oracles_agree"] = rfree.b == rgen.b
            else:
                section = bs_general(h, budget).to_json()
        except BudgetExceededError as exc:
            section = {"error": f"budget exceeded: {exc}"}
    report["bernstein"] = section
    duality: dict = {}
    with clock("duality"):
        try:
            duality["q=s"] = verify_duality(fd, QS, budget)
            duality["q=s+1"] = verify_duality(fd, QS1, budget)
        except BudgetExceededError as exc:
            duality["error"] = f"budget exceeded: {exc}"
    report["duality"] = duality
    report["budget"] = budget.usage()
    if args.timings:
        report["timings"] = timings
    _emit(report, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

def run_entry(entry: CorpusEntry, budget: Budget | None = None) -> tuple[bool, list[str]]:
    """Run the checks an entry declares; returns (passed, failure notes)."""
    budget = budget or Budget()
    failures: list[str] = []
    ctx = VariableContext(entry.variables)
    h = parse_poly(entry.expr, ctx)

    fd = None
    if entry.free:
        try:
            fd0 = free_divisor(h, budget)
            fd = euler_normalize(fd0, budget) or fd0
        except NotFreeError as exc:
            failures.append(f"expected free divisor, certification failed: {exc}")
            return False, failures
    else:
        try:
            free_divisor(h, budget)
            failures.append("expected a non-free divisor but Saito certification succeeded")
        except NotFreeError:
            pass

    computed_b: UPoly | None = None

    if "classify" in entry.checks and fd is not None:
        rep = classify(fd, budget=budget)
        for name, expected in entry.flags.items():
            got = rep.value(name)
            if got != expected:
                failures.append(f"classify[{name}]: expected {expected}, got {got}")

    if "bsp" in entry.checks:
        expected_b = umonic(_parse_upoly(entry.b)) if entry.b else None
        if fd is not None:
            sk = entry.flags.get("strongly_koszul") == "true"
            if sk:
                rfree = bs_free(fd, budget)
                rgen = bs_general(h, budget)
                if rfree.b != rgen.b:
                    failures.append(
                        f"bs_free {ustr(rfree.b)} != bs_general {ustr(rgen.b)}"
                    )
                computed_b = rfree.b
                if not rfree.symmetry_shift2:
                    failures.append(f"symmetry b(s) = +/- b(-s-2) fails for {ustr(rfree.b)}")
                if not rfree.integer_root_bound_ok:
                    failures.append("integer root <= -2 found")
            else:
                computed_b = bs_general(h, budget).b
        else:
            computed_b = bs_general(h, budget).b
        if expected_b is not None and computed_b != expected_b:
            failures.append(f"b: expected {ustr(expected_b)}, got {ustr(computed_b)}")

    if "duality" in entry.checks and fd is not None:
        for label, q in (("s", QS), ("s+1", QS1)):
            if not verify_duality(fd, q, budget):
                failures.append(f"duality fails at q = {label}")

    if "yano" in entry.checks and entry.qh_weights is not None:
        roots = qh_milnor_oracle(h, entry_weights(entry), budget)
        reduced = yano_reduced_b(roots)
        shift = entry.yano_shift or h.ctx.nvars
        if reduced and not check_symmetry(reduced, shift):
            failures.append(f"Yano symmetry with shift {shift} fails for {ustr(reduced)}")
        if computed_b is not None:
            breduced, rem = udivmod(computed_b, [Fraction(1), Fraction(1)])
            assert not rem
            support = umonic(yano_reduced_b(roots))
            if umonic(_distinct_roots_poly(breduced)) != support:
                failures.append(
                    f"reduced-b support {ustr(_distinct_roots_poly(breduced))} "
                    f"!= Milnor oracle support {ustr(support)}"
                )
    return not failures, failures


def _distinct_roots_poly(b: UPoly) -> UPoly:
    from logdiv.upoly import rational_roots, umul

    roots, remainder = rational_roots(b)
    out = list(remainder)
    for r, _ in roots:
        out = umul(out, [-r, Fraction(1)])
    return out


def cmd_corpus(args) -> int:
    budget = _budget_from_args(args)
    entries = get_entries(args.filter)
    if not entries:
        print(f"warning: no corpus entries match filter {args.filter!r}")
        return EXIT_OK
    rows = []
    any_fail = False
    for entry in entries:
        b = Budget(budget.max_pairs, budget.max_term_ops)
        t0 = time.monotonic()
        try:
            ok, failures = run_entry(entry, b)
        except BudgetExceededError as exc:
            ok, failures = False, [f"budget exceeded: {exc}"]
        dt = time.monotonic() - t0
        status = "PASS" if ok else "FAIL"
        any_fail = any_fail or not ok
        rows.append(
            {
                "name": entry.name,
                "h": entry.expr,
                "status": status,
                "checks": list(entry.checks),
                "failures": failures,
            }
        )
        line = f"{entry.name:28s} {status}"
        if args.timings:
            line += f"  [{dt:6.2f}s]"
        print(line)
        for f in failures:
            print(f"    - {f}")
    if getattr(args, "json", None):
        report = {"corpus": rows}
        text = json.dumps(report, indent=2, ensure_ascii=False)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    return EXIT_MISMATCH if any_fail else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sp, expr=True):
    if expr:
        sp.add_argument("expr", help="polynomial h in the divisor variables")
    sp.add_argument("--vars", help="comma-separated variable names (default: inferred, sorted)")
    sp.add_argument("--json", help="write the JSON report to this path ('-' for stdout)")
    sp.add_argument("--max-pairs", type=int, help="S-pair budget for Groebner runs")
    sp.add_argument("--max-terms", type=int, help="term-operation budget for Groebner runs")
    sp.add_argument("--timeout", type=float, help="wall-clock limit in seconds for Groebner runs")
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="logdiv",
        description="Exact free-divisor analysis: logarithmic derivations, "
        "classification, Bernstein-Sato polynomials, Spencer duality.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="full pipeline report")
    _add_common(sp)
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("logderiv", help="logarithmic derivations and Saito basis")
    _add_common(sp)
    sp.set_defaults(fn=cmd_logderiv)

    sp = sub.add_parser("classify", help="linearity/Koszul hierarchy predicates")
    _add_common(sp)
    sp.add_argument("--dlt-mode", choices=["via-equivalence", "direct"], default="via-equivalence")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("bsp", help="Bernstein-Sato polynomial")
    _add_common(sp)
    sp.set_defaults(fn=cmd_bsp)

    sp = sub.add_parser("symmetry", help="test b(s) = +/- b(-s-shift)")
    _add_common(sp, expr=False)
    sp.add_argument("expr", nargs="?", help="divisor polynomial (omit when using --poly)")
    sp.add_argument("--poly", help="explicit polynomial in s to test")
    sp.add_argument("--shift", type=int, default=2)
    sp.set_defaults(fn=cmd_symmetry)

    sp = sub.add_parser("spencer", help="build and check the Spencer complex")
    _add_common(sp)
    sp.add_argument("--q", default="s", help="linear polynomial q(s), e.g. 's', 's+1', '-s-2'")
    sp.set_defaults(fn=cmd_spencer)

    sp = sub.add_parser("dual", help="dual presentation and duality verification")
    _add_common(sp)
    sp.add_argument("--q", default="s")
    sp.set_defaults(fn=cmd_dual)

    sp = sub.add_parser("annihilator", help="ann_{D[s]} h^s via the Malgrange construction")
    _add_common(sp)
    sp.set_defaults(fn=cmd_annihilator)

    sp = sub.add_parser("corpus", help="run the embedded corpus against expected values")
    sp.add_argument("--filter", default="", help="only entries whose name or equation matches")
    sp.add_argument("--json", help="write the JSON summary to this path ('-' for stdout)")
    sp.add_argument("--max-pairs", type=int)
    sp.add_argument("--max-terms", type=int)
    sp.add_argument("--timings", action="store_true")
    sp.set_defaults(fn=cmd_corpus)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotFreeError as exc:
        print(f"input error: divisor is not certified free: {exc}", file=sys.stderr)
        for key, value in exc.details.items():
            print(f"  {key}: {value}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
