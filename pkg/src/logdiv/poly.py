"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to nonzero Fractions, tied
to a :class:`VariableContext`.  Zero coefficients are never stored, so
structural equality of the term maps is polynomial equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from logdiv.context import VariableContext, mono_mul

Terms = dict[tuple, Fraction]


class PolyParseError(ValueError):
    """Syntax or name error while parsing polynomial text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ContextMismatchError(ValueError):
    pass


class MultiPoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Terms):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: VariableContext) -> "MultiPoly":
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx: VariableContext, value) -> "MultiPoly":
        c = Fraction(value)
        return cls(ctx, {ctx.zero_exponent(): c} if c else {})

    @classmethod
    def variable(cls, ctx: VariableContext, name: str) -> "MultiPoly":
        e = [0] * ctx.nvars
        e[ctx.index(name)] = 1
        return cls(ctx, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, ctx: VariableContext, exps: tuple, coeff=1) -> "MultiPoly":
        c = Fraction(coeff)
        return cls(ctx, {tuple(exps): c} if c else {})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ctx.zero_exponent() in self.terms)

    def constant_value(self) -> Fraction:
        """The coefficient of the constant monomial (the value at 0)."""
        return self.terms.get(self.ctx.zero_exponent(), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def num_terms(self) -> int:
        return len(self.terms)

    def weighted_degrees(self, weights) -> set:
        return {sum(w * e for w, e in zip(weights, m)) for m in self.terms}

    def is_weighted_homogeneous(self, weights) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def support_vars(self) -> set[str]:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(self.ctx.names[i])
        return out

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"contexts differ: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(self.ctx, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: Terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly(self.ctx, out)

    def scale(self, value) -> "MultiPoly":
        c = Fraction(value)
        if not c:
            return MultiPoly.zero(self.ctx)
        return MultiPoly(self.ctx, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, name: str) -> "MultiPoly":
        i = self.ctx.index(name)
        out: Terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly(self.ctx, out)

    def substitute(self, values: dict[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for variables (all in the target context)."""
        if not values:
            return self
        tctx = next(iter(values.values())).ctx
        images = []
        for n in self.ctx.names:
            if n in values:
                images.append(values[n])
            else:
                images.append(MultiPoly.variable(tctx, n))
        out = MultiPoly.zero(tctx)
        for m, c in self.terms.items():
            term = MultiPoly.constant(tctx, c)
            for i, e in enumerate(m):
                if e:
                    term = term * images[i] ** e
            out = out + term
        return out

    def map_context(self, dst: VariableContext, rename: dict[str, str] | None = None) -> "MultiPoly":
        """Reinterpret in another context; variables map by (renamed) name.

        Only variables actually occurring need a slot in the destination.
        """
        rename = rename or {}
        slot: list[int | None] = [None] * self.ctx.nvars
        out: Terms = {}
        for m, c in self.terms.items():
            e = [0] * dst.nvars
            for i, x in enumerate(m):
                if x:
                    if slot[i] is None:
                        n = self.ctx.names[i]
                        slot[i] = dst.index(rename.get(n, n))
                    e[slot[i]] += x
            mm = tuple(e)
            s = out.get(mm, Fraction(0)) + c
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
        return MultiPoly(dst, out)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly | None":
        """Exact quotient self/other, or None when not divisible."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        key = lambda m: (sum(m), m)
        dl = max(other.terms, key=key)
        dc = other.terms[dl]
        rem = dict(self.terms)
        out: Terms = {}
        while rem:
            ml = max(rem, key=key)
            q = [a - b for a, b in zip(ml, dl)]
            if any(x < 0 for x in q):
                return None
            qm, qc = tuple(q), rem[ml] / dc
            out[qm] = out.get(qm, Fraction(0)) + qc
            for m, c in other.terms.items():
                mm = mono_mul(qm, m)
                s = rem.get(mm, Fraction(0)) - qc * c
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return MultiPoly(self.ctx, out)

    def primitive(self) -> "MultiPoly":
        """Integer-primitive form with positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        key = lambda m: (sum(m), m)
        lead = self.terms[max(self.terms, key=key)]
        if lead < 0:
            scale = -scale
        return self.scale(scale)

    # -- equality / ordering helpers ----------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        return poly_str(self)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _factor_str(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def poly_str(p: MultiPoly) -> str:
    """Canonical text form; ``parse_poly(poly_str(p)) == p``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        factors = [_factor_str(p.ctx.names[j], e) for j, e in enumerate(m) if e]
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


# ---------------------------------------------------------------------------
# parsing: expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
# factor := base ('^' nat)?; base := var | rational | '(' expr ')'
# ---------------------------------------------------------------------------

class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok], ctx: VariableContext):
        self.toks = toks
        self.i = 0
        self.ctx = ctx

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.next()
        if t.kind != kind:
            raise PolyParseError(f"expected {kind!r}, found {t.text!r}", t.pos)
        return t

    def parse_expr(self) -> MultiPoly:
        negate = False
        if self.peek().kind == "-":
            self.next()
            negate = True
        out = self.parse_term()
        if negate:
            out = -out
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.parse_term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def parse_term(self) -> MultiPoly:
        out = self.parse_factor()
        while self.peek().kind == "*":
            self.next()
            out = out * self.parse_factor()
        return out

    def parse_factor(self) -> MultiPoly:
        base = self.parse_base()
        if self.peek().kind == "^":
            self.next()
            t = self.expect("int")
            return base ** int(t.text)
        return base

    def parse_base(self) -> MultiPoly:
        t = self.next()
        if t.kind == "int":
            num = int(t.text)
            if self.peek().kind == "/":
                self.next()
                den = self.expect("int")
                if int(den.text) == 0:
                    raise PolyParseError("zero denominator", den.pos)
                return MultiPoly.constant(self.ctx, Fraction(num, int(den.text)))
            return MultiPoly.constant(self.ctx, num)
        if t.kind == "name":
            if not self.ctx.has(t.text):
                raise PolyParseError(f"unknown variable {t.text!r}", t.pos)
            return MultiPoly.variable(self.ctx, t.text)
        if t.kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise PolyParseError(f"unexpected token {t.text!r}", t.pos)


def parse_poly(text: str, ctx: VariableContext) -> MultiPoly:
    """Parse polynomial text into canonical form in the given context."""
    p = _Parser(_tokenize(text), ctx)
    out = p.parse_expr()
    end = p.next()
    if end.kind != "end":
        raise PolyParseError(f"trailing input {end.text!r}", end.pos)
    return out
