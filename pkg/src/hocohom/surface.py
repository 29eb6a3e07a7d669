"""Truncated group algebra of the closed genus-g surface group.

In degree terms the defining relation lets one trade the pattern ``x1 x2``
for ``b x2 x1 + (b - 1)(1 + x1 + x2)`` where ``b`` is the product of the
remaining commutators.  Repeating this until no ``x1 x2`` is left gives a
normal form supported on *admissible* monomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, ResourceError, RewriteBudgetError
from .magnus import (
    Monomial,
    TruncatedSeries,
    Word,
    commutator,
    expand_word,
    monomial_index,
    power_ideal_image,
    two_sided_ideal_image,
)
from .linalg import Subspace

REWRITE_BUDGET = 10**6
ORACLE_LIMIT = 10**6


def is_admissible(m: Monomial) -> bool:
    return all(not (a == 1 and b == 2) for a, b in zip(m, m[1:]))


def admissible_basis(g: int, q: int) -> list[Monomial]:
    """Degree-q monomials over letters 1..2g with no adjacent (1, 2), sorted."""
    if g < 0 or q < 0:
        raise InputError("genus and degree must be nonnegative")
    if q == 0:
        return [()]
    if g == 0:
        return []
    # extend letter by letter, pruning (1, 2) as soon as it appears
    words: list[Monomial] = [()]
    for _ in range(q):
        words = [w + (i,) for w in words for i in range(1, 2 * g + 1) if not (w and w[-1] == 1 and i == 2)]
    return sorted(words)


def surface_relator(g: int) -> Word:
    """[g1, g2] [g3, g4] ... [g_{2g-1}, g_{2g}]."""
    w = Word()
    for k in range(1, g + 1):
        w = w * commutator(Word(((2 * k - 1, 1),)), Word(((2 * k, 1),)))
    return w


def b_word(g: int) -> Word:
    """b = [g_{2g}, g_{2g-1}] ... [g4, g3], so that g1 g2 = b g2 g1."""
    w = Word()
    for k in range(g, 1, -1):
        w = w * commutator(Word(((2 * k, 1),)), Word(((2 * k - 1, 1),)))
    return w


@dataclass(frozen=True)
class GenusContext:
    g: int
    cap: int
    b_series: TruncatedSeries = field(init=False, repr=False, compare=False)
    replacement: TruncatedSeries = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.g < 1:
            raise InputError("rewriting needs genus >= 1")
        if self.cap < 0:
            raise InputError("cap must be nonnegative")
        b = expand_word(b_word(self.g), self.cap)
        one = TruncatedSeries.one(self.cap)
        x1 = TruncatedSeries.letter(1, self.cap)
        x2 = TruncatedSeries.letter(2, self.cap)
        rhs = b * (x2 * x1) + (b - one) * (one + x1 + x2)
        object.__setattr__(self, "b_series", b)
        object.__setattr__(self, "replacement", rhs)


@lru_cache(maxsize=32)
def genus_context(g: int, cap: int) -> GenusContext:
    return GenusContext(g, cap)


def _leftmost_12(m: Monomial) -> int:
    for i in range(len(m) - 1):
        if m[i] == 1 and m[i + 1] == 2:
            return i
    return -1


def _raw_coeffs(e) -> tuple[int, dict[Monomial, Fraction]]:
    if isinstance(e, (TruncatedSeries, SurfaceElement)):
        return e.cap, dict(e.coeffs)
    raise InputError(f"cannot rewrite object of type {type(e).__name__}")


def rewrite_normal_form(e, ctx: GenusContext, budget: int = REWRITE_BUDGET) -> "SurfaceElement":
    """Reduce ``e`` to a combination of admissible monomials.

    Lowest degree first; inside a degree the leftmost ``x1 x2`` of any
    offending monomial is replaced.  The same-degree part of the replacement
    is lex-smaller when letters are ordered 1 > 2 > 3 > ..., and everything
    else has higher degree, so the loop terminates.
    """
    cap, coeffs = _raw_coeffs(e)
    if cap > ctx.cap:
        raise InputError(f"element cap {cap} exceeds context cap {ctx.cap}")
    for m in coeffs:
        if any(i < 1 or i > 2 * ctx.g for i in m):
            raise InputError(f"monomial {m} uses a letter outside 1..{2 * ctx.g}")
    repl = [(m, c) for m, c in ctx.replacement.coeffs.items()]
    steps = 0
    while True:
        bad = [m for m, c in coeffs.items() if c and not is_admissible(m)]
        if not bad:
            break
        d = min(len(m) for m in bad)
        for m in sorted(x for x in bad if len(x) == d):
            c = coeffs.pop(m, 0)
            if not c:
                continue
            steps += 1
            if steps > budget:
                raise RewriteBudgetError(f"rewrite budget {budget} exhausted")
            i = _leftmost_12(m)
            u, v = m[:i], m[i + 2 :]
            room = cap - len(u) - len(v)
            for t, ct in repl:
                if len(t) <= room:
                    key = u + t + v
                    x = coeffs.get(key, 0) + c * ct
                    if x:
                        coeffs[key] = x
                    else:
                        coeffs.pop(key, None)
    return SurfaceElement(ctx.g, cap, {m: c for m, c in coeffs.items() if c})


class SurfaceElement:
    """Combination of admissible monomials of degree <= cap."""

    __slots__ = ("g", "cap", "coeffs")

    def __init__(self, g: int, cap: int, coeffs: dict[Monomial, Fraction]):
        for m in coeffs:
            if not is_admissible(m):
                raise InputError(f"monomial {m} is not admissible")
            if len(m) > cap:
                raise InputError(f"monomial {m} exceeds cap {cap}")
        self.g = g
        self.cap = cap
        self.coeffs = {m: Fraction(c) for m, c in coeffs.items() if c}

    @classmethod
    def from_letters(cls, g: int, cap: int, *letters: int) -> "SurfaceElement":
        return rewrite_normal_form(TruncatedSeries(cap, {tuple(letters): 1}), genus_context(g, cap))

    def raw(self) -> TruncatedSeries:
        return TruncatedSeries(self.cap, self.coeffs)

    def __eq__(self, other):
        if isinstance(other, SurfaceElement):
            return (self.g, self.cap, self.coeffs) == (other.g, other.cap, other.coeffs)
        return NotImplemented

    def __mul__(self, other):
        return surface_mul(self, other)

    def __repr__(self):
        return f"SurfaceElement(g={self.g}, {self.raw()!r})"


def surface_mul(a: SurfaceElement, b: SurfaceElement) -> SurfaceElement:
    if a.g != b.g or a.cap != b.cap:
        raise InputError(f"genus/cap mismatch: ({a.g}, {a.cap}) vs ({b.g}, {b.cap})")
    return rewrite_normal_form(a.raw() * b.raw(), genus_context(a.g, a.cap))


def relator_ideal(g: int, cap: int) -> Subspace:
    """Image of the two-sided ideal generated by (relator - 1), letters 1..2g."""
    rel = expand_word(surface_relator(g), cap) - 1
    return two_sided_ideal_image([rel], cap, 2 * g)


def require_feasible(g: int, q: int):
    if g < 1 or q < 1:
        raise InputError("oracle needs g >= 1 and q >= 1")
    if (2 * g) ** (q + 1) > ORACLE_LIMIT:
        raise ResourceError(f"(2g)^(q+1) = {(2 * g) ** (q + 1)} coordinates exceeds {ORACLE_LIMIT}")


def relator_ideal_graded_dim(g: int, q: int) -> int:
    """dim I^q / I^(q+1) for the surface group, by linear algebra in the free algebra."""
    require_feasible(g, q)
    k = relator_ideal(g, q)
    top = power_ideal_image(q, q, 2 * g)
    return (top + k).dim - k.dim


def admissible_spans_slice(g: int, q: int) -> bool:
    """True if admissible degree-q monomials span the degree-q slice modulo the relator ideal."""
    require_feasible(g, q)
    idx = monomial_index(2 * g, q)
    k = relator_ideal(g, q)
    adm = k.extend(_unit(idx.dim, idx.index[m]) for m in admissible_basis(g, q))
    return (adm + power_ideal_image(q, q, 2 * g)).dim == adm.dim


def _unit(n: int, i: int) -> list[int]:
    v = [0] * n
    v[i] = 1
    return v


def n_by_enumeration(g: int, q: int) -> int:
    """Brute force over all (2g)^q tuples."""
    if g == 0:
        return 1 if q == 0 else 0
    return sum(1 for t in itertools.product(range(1, 2 * g + 1), repeat=q) if is_admissible(t))
