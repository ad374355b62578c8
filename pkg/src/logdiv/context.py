"""Variable contexts and monomial orders.

A :class:`VariableContext` fixes an ordered tuple of variable names with
roles (base coordinates, symbols, the central s, auxiliaries).  Monomials
are plain exponent tuples over that context.  Monomial orders are small
objects exposing a sort key; every order here is total, multiplicative and
well-founded, so it is usable both for commutative Groebner bases and for
leading terms in the Weyl algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ROLE_BASE = "base"
ROLE_SYMBOL = "symbol"
ROLE_CENTRAL = "central"
ROLE_AUX = "auxiliary"

_ROLES = (ROLE_BASE, ROLE_SYMBOL, ROLE_CENTRAL, ROLE_AUX)


class VariableContext:
    """Immutable ordered list of variable names with roles."""

    __slots__ = ("names", "roles", "_index")

    def __init__(self, names: Sequence[str], roles: Sequence[str] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        if not names:
            raise ValueError("empty variable context")
        if roles is None:
            roles = tuple(ROLE_BASE for _ in names)
        else:
            roles = tuple(roles)
            if len(roles) != len(names):
                raise ValueError("roles/names length mismatch")
            for r in roles:
                if r not in _ROLES:
                    raise ValueError(f"unknown role {r!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "roles", roles)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, *_):
        raise AttributeError("VariableContext is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, VariableContext)
            and self.names == other.names
            and self.roles == other.roles
        )

    def __hash__(self):
        return hash((self.names, self.roles))

    def __repr__(self):
        return f"VariableContext({', '.join(self.names)})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in context {self.names}") from None

    def has(self, name: str) -> bool:
        return name in self._index

    def vars_with_role(self, role: str) -> tuple[str, ...]:
        return tuple(n for n, r in zip(self.names, self.roles) if r == role)

    def extend(self, names: Sequence[str], roles: Sequence[str] | None = None) -> "VariableContext":
        if roles is None:
            roles = tuple(ROLE_AUX for _ in names)
        return VariableContext(self.names + tuple(names), self.roles + tuple(roles))

    def fresh_name(self, stem: str) -> str:
        """A name based on ``stem`` that does not collide with this context."""
        if stem not in self._index:
            return stem
        k = 0
        while f"{stem}{k}" in self._index:
            k += 1
        return f"{stem}{k}"

    def zero_exponent(self) -> tuple[int, ...]:
        return (0,) * len(self.names)


# ---------------------------------------------------------------------------
# monomial exponent helpers (monomials are bare tuples of ints)
# ---------------------------------------------------------------------------

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple | None:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(b: tuple, a: tuple) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """Base class: an order is defined by a sort key on exponent tuples."""

    tag = "order"

    def key(self, exps: tuple):  # pragma: no cover - interface
        raise NotImplementedError

    def compare(self, m1: tuple, m2: tuple) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        if k1 < k2:
            return -1
        if k1 > k2:
            return 1
        return 0

    def __repr__(self):
        return f"<{self.tag}>"


class LexOrder(MonomialOrder):
    tag = "lex"

    def key(self, exps):
        return exps


class DegRevLexOrder(MonomialOrder):
    tag = "degrevlex"

    def key(self, exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))


class WeightedOrder(MonomialOrder):
    """Weighted degree first, then a tie-break order.

    Weights must be non-negative rationals so the order stays well-founded.
    """

    def __init__(self, weights: Sequence[Fraction | int], tie: MonomialOrder | None = None):
        self.weights = tuple(Fraction(w) for w in weights)
        if any(w < 0 for w in self.weights):
            raise ValueError("weighted orders require non-negative weights")
        self.tie = tie if tie is not None else DegRevLexOrder()
        self.tag = f"weighted[{','.join(str(w) for w in self.weights)}]+{self.tie.tag}"

    def key(self, exps):
        wd = sum(w * e for w, e in zip(self.weights, exps))
        return (wd, self.tie.key(exps))


class BlockOrder(MonomialOrder):
    """Block order: earlier blocks dominate (elimination order)."""

    def __init__(self, blocks: Sequence[tuple[Sequence[int], MonomialOrder]]):
        self.blocks = tuple((tuple(ix), sub) for ix, sub in blocks)
        self.tag = "block[" + ";".join(
            f"({','.join(map(str, ix))}):{sub.tag}" for ix, sub in self.blocks
        ) + "]"

    def key(self, exps):
        return tuple(sub.key(tuple(exps[i] for i in ix)) for ix, sub in self.blocks)


def lex_order() -> LexOrder:
    return LexOrder()


def degrevlex_order() -> DegRevLexOrder:
    return DegRevLexOrder()


def weighted_order(weights: Iterable[Fraction | int], tie: MonomialOrder | None = None) -> WeightedOrder:
    return WeightedOrder(tuple(weights), tie)


def block_order(blocks) -> BlockOrder:
    return BlockOrder(blocks)


def elimination_order(ctx: VariableContext, drop: Iterable[str]) -> BlockOrder:
    """Block order whose first block is the variables to eliminate."""
    drop = set(drop)
    for name in drop:
        ctx.index(name)
    first = [i for i, n in enumerate(ctx.names) if n in drop]
    second = [i for i, n in enumerate(ctx.names) if n not in drop]
    if not first or not second:
        raise ValueError("elimination order needs a proper nonempty split")
    return BlockOrder([(first, DegRevLexOrder()), (second, DegRevLexOrder())])


def compare_monomials(order: MonomialOrder, m1: tuple, m2: tuple) -> str:
    """Spec-level comparison returning 'less' | 'equal' | 'greater'."""
    c = order.compare(m1, m2)
    return "less" if c < 0 else ("greater" if c > 0 else "equal")
