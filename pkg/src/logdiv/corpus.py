"""Embedded example corpus with expected values and provenance notes.

Every expected value is either a classical fact reproduced by an
independent oracle in the test suite or a computation frozen after
dual-route verification (free elimination vs general annihilator vs
functional-equation certificate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expr: str
    variables: tuple[str, ...]
    provenance: str
    free: bool = True
    # expected classification flags (subset; names as in classify.PREDICATES)
    flags: dict = field(default_factory=dict)
    # expected monic b(s) as parseable text, or None to skip
    b: str | None = None
    # weights for the quasi-homogeneous Milnor oracle, or None
    qh_weights: tuple[str, ...] | None = None
    # shift for the Yano symmetry of the reduced polynomial, or None
    yano_shift: int | None = None
    # which checks cmd_corpus runs for this entry
    checks: tuple[str, ...] = ("classify", "bsp", "duality", "symmetry")


ALL_TRUE = {
    "euler_homogeneous": "true",
    "strongly_euler_at_origin": "true",
    "koszul": "true",
    "weakly_koszul": "true",
    "strongly_koszul": "true",
    "linear_jacobian_type": "true",
    "differential_linear_type": "true",
}

CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry(
        name="smooth",
        expr="x",
        variables=("x",),
        provenance="smooth divisor; b = s+1 certified by the d/dx functional equation",
        flags=dict(ALL_TRUE),
        b="s + 1",
        qh_weights=("1",),
        yano_shift=1,
    ),
    CorpusEntry(
        name="normal-crossing-2",
        expr="x*y",
        variables=("x", "y"),
        provenance="normal crossing; b = (s+1)^2 certified by dx*dy",
        flags=dict(ALL_TRUE),
        b="(s + 1)^2",
        qh_weights=("1/2", "1/2"),
        yano_shift=2,
    ),
    CorpusEntry(
        name="normal-crossing-3",
        expr="x*y*z",
        variables=("x", "y", "z"),
        provenance="normal crossing; b = (s+1)^3 certified by dx*dy*dz "
        "(non-isolated singular locus: Milnor oracle does not apply)",
        flags=dict(ALL_TRUE),
        b="(s + 1)^3",
    ),
    CorpusEntry(
        name="cusp",
        expr="x^2 - y^3",
        variables=("x", "y"),
        provenance="quasi-homogeneous plane curve; b via dual Groebner routes, "
        "reduced part matches the Milnor-basis oracle at weights (1/2, 1/3)",
        flags=dict(ALL_TRUE),
        b="(s + 1)*(s + 5/6)*(s + 7/6)",
        qh_weights=("1/2", "1/3"),
        yano_shift=2,
    ),
    CorpusEntry(
        name="three-lines",
        expr="x*y*(x+y)",
        variables=("x", "y"),
        provenance="free hyperplane arrangement; b via dual Groebner routes, "
        "reduced part matches the Milnor-basis oracle at weights (1/3, 1/3)",
        flags=dict(ALL_TRUE),
        b="(s + 1)^2*(s + 2/3)*(s + 4/3)",
        qh_weights=("1/3", "1/3"),
        yano_shift=2,
    ),
    CorpusEntry(
        name="weakly-koszul-not-koszul",
        expr="x1*x2*(x1+x2)*(x1+x3*x2)",
        variables=("x1", "x2", "x3"),
        provenance="weakly Koszul free divisor which is not Koszul",
        flags={
            "euler_homogeneous": "true",
            "strongly_euler_at_origin": "true",
            "koszul": "false",
            "weakly_koszul": "true",
            "strongly_koszul": "false",
            "linear_jacobian_type": "false",
            "differential_linear_type": "false",
        },
        checks=("classify", "duality"),
    ),
    CorpusEntry(
        name="non-qh-plane-curve",
        expr="x^4 + y^5 + x*y^4",
        variables=("x", "y"),
        provenance="non-quasihomogeneous plane curve: Koszul free, not strongly Koszul",
        flags={
            "euler_homogeneous": "false",
            "strongly_euler_at_origin": "false",
            "koszul": "true",
            "weakly_koszul": "true",
            "strongly_koszul": "false",
            "linear_jacobian_type": "false",
            "differential_linear_type": "false",
        },
        checks=("classify", "duality"),
    ),
    CorpusEntry(
        name="fermat-cubic",
        expr="x^3 + y^3 + z^3",
        variables=("x", "y", "z"),
        provenance="oracle-grade entry, not free: b from the general annihilator, "
        "reduced support matches the Milnor-basis oracle at weights (1/3, 1/3, 1/3)",
        free=False,
        b="(s + 1)^2*(s + 4/3)*(s + 5/3)*(s + 2)",
        qh_weights=("1/3", "1/3", "1/3"),
        yano_shift=3,
        checks=("bsp", "yano"),
    ),
)


def entry_weights(entry: CorpusEntry) -> list[Fraction] | None:
    if entry.qh_weights is None:
        return None
    return [Fraction(w) for w in entry.qh_weights]


def get_entries(filter_text: str = "") -> list[CorpusEntry]:
    return [e for e in CORPUS if filter_text in e.name or filter_text in e.expr]
