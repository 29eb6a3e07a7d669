"""Free-group words and their truncated Magnus expansions.

A generator ``g_i`` is sent to ``1 + x_i`` in the algebra of noncommutative
polynomials in ``x_1..x_r`` with all monomials of degree above ``cap``
discarded; this is the group ring of the free group modulo ``I^(cap+1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InputError
from .linalg import QQ, Subspace, span_sparse, zero_subspace

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Word:
    """Freely reduced word; ``letters`` holds ``(generator, +1/-1)`` pairs."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        out: list[tuple[int, int]] = []
        for gen, e in self.letters:
            if e not in (1, -1) or gen < 1:
                raise InputError(f"bad letter ({gen}, {e})")
            if out and out[-1] == (gen, -e):
                out.pop()
            else:
                out.append((gen, e))
        object.__setattr__(self, "letters", tuple(out))

    @classmethod
    def from_signed(cls, seq: Iterable[int]) -> "Word":
        """``[1, 2, -1, -2]`` is the commutator ``g1 g2 g1^-1 g2^-1``."""
        return cls(tuple((abs(k), 1 if k > 0 else -1) for k in seq))

    def signed(self) -> list[int]:
        return [g * e for g, e in self.letters]

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"g{g}" if e == 1 else f"g{g}^-1" for g, e in self.letters)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


class TruncatedSeries:
    """Element of Q<x_1..x_r> modulo monomials of degree > cap."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap: int, coeffs: Mapping[Monomial, object] | None = None):
        if cap < 0:
            raise InputError("cap must be nonnegative")
        self.cap = cap
        self.coeffs: dict[Monomial, Fraction] = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if c and len(m) <= cap:
                self.coeffs[m] = self.coeffs.get(m, 0) + Fraction(c)
        self.coeffs = {m: c for m, c in self.coeffs.items() if c}

    @classmethod
    def one(cls, cap: int) -> "TruncatedSeries":
        return cls(cap, {(): 1})

    @classmethod
    def letter(cls, i: int, cap: int) -> "TruncatedSeries":
        return cls(cap, {(i,): 1})

    def aug(self) -> Fraction:
        return self.coeffs.get((), Fraction(0))

    def valuation(self) -> float:
        return min((len(m) for m in self.coeffs), default=float("inf"))

    def degree_part(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries(self.cap, {m: c for m, c in self.coeffs.items() if len(m) == d})

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise InputError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.cap != self.cap:
            raise InputError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries(self.cap, {(): other})
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.cap, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.cap, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "TruncatedSeries":
        return TruncatedSeries(self.cap, {m: c * s for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(Fraction(other))
        return mul(self, other)

    def __rmul__(self, other):
        return self.scale(Fraction(other))

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.cap == other.cap and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.cap, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: (len(m), m)):
            c = self.coeffs[m]
            mono = "".join(f"x{i}" for i in m) or "1"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Truncated product; terms of degree above the common cap are dropped."""
    a._check(b)
    cap = a.cap
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.coeffs.items():
        room = cap - len(ma)
        for mb, cb in b.coeffs.items():
            if len(mb) <= room:
                m = ma + mb
                out[m] = out.get(m, 0) + ca * cb
    return TruncatedSeries(cap, out)


def letter_series(gen: int, exp: int, cap: int) -> TruncatedSeries:
    if exp == 1:
        return TruncatedSeries(cap, {(): 1, (gen,): 1})
    # g^-1 = sum_k (1 - g)^k = sum_k (-x)^k
    return TruncatedSeries(cap, {(gen,) * k: (-1) ** k for k in range(cap + 1)})


def expand_word(w: Word, cap: int, r: int | None = None) -> TruncatedSeries:
    """Image of ``w`` in Q[F_r] / I^(cap+1)."""
    if r is not None and w.max_generator() > r:
        raise InputError(f"generator {w.max_generator()} out of range 1..{r}")
    out = TruncatedSeries.one(cap)
    for gen, e in w.letters:
        out = mul(out, letter_series(gen, e, cap))
    return out


class MonomialIndex:
    """Coordinates for monomials of degree <= cap: graded, then lex (1 < 2 < ...)."""

    def __init__(self, r: int, cap: int):
        self.r = r
        self.cap = cap
        self.monomials: list[Monomial] = [
            m for d in range(cap + 1) for m in itertools.product(range(1, r + 1), repeat=d)
        ]
        self.index = {m: i for i, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def labels(self) -> tuple[str, ...]:
        return tuple("".join(f"x{i}" for i in m) or "1" for m in self.monomials)

    def vector(self, s: TruncatedSeries) -> dict[int, Fraction]:
        if s.cap > self.cap:
            s = TruncatedSeries(self.cap, s.coeffs)
        out = {}
        for m, c in s.coeffs.items():
            if any(i > self.r for i in m):
                raise InputError(f"monomial {m} uses a letter outside 1..{self.r}")
            out[self.index[m]] = c
        return out

    def dense(self, s: TruncatedSeries) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        for i, c in self.vector(s).items():
            v[i] = c
        return v

    def series(self, vec) -> TruncatedSeries:
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        return TruncatedSeries(self.cap, {self.monomials[i]: c for i, c in items if c})

    def degree_range(self, lo: int, hi: int) -> range:
        start = sum(self.r**d for d in range(lo))
        stop = sum(self.r**d for d in range(hi + 1))
        return range(start, stop)


@lru_cache(maxsize=64)
def monomial_index(r: int, cap: int) -> MonomialIndex:
    return MonomialIndex(r, cap)


def power_ideal_image(q: int, cap: int, r: int) -> Subspace:
    """Image of I^q in Q[F_r]/I^(cap+1): all monomials of degree q..cap."""
    if q < 1:
        raise InputError("q must be at least 1")
    if q > cap + 1:
        raise InputError(f"q={q} exceeds cap+1={cap + 1}")
    idx = monomial_index(r, cap)
    if q == cap + 1:
        return zero_subspace(idx.dim, QQ, idx.labels())
    return span_sparse(({i: 1} for i in idx.degree_range(q, cap)), idx.dim, QQ, idx.labels())


def _monomials_up_to(r: int, d: int):
    for k in range(d + 1):
        yield from itertools.product(range(1, r + 1), repeat=k)


def two_sided_ideal_image(gens: list[TruncatedSeries], cap: int, r: int) -> Subspace:
    """Span of m_a * g * m_b over generators g and monomials m_a, m_b."""
    if not gens:
        raise InputError("two-sided ideal needs at least one generator")
    idx = monomial_index(r, cap)
    vectors = []
    for k, g in enumerate(gens):
        if g.cap != cap:
            g = TruncatedSeries(cap, g.coeffs)
        if g.aug() != 0:
            raise InputError(f"generator {k} has nonzero constant term; the ideal would be the unit ideal")
        v = g.valuation()
        if v == float("inf"):
            continue
        room = cap - int(v)
        for ma in _monomials_up_to(r, room):
            for mb in _monomials_up_to(r, room - len(ma)):
                lim = cap - len(ma) - len(mb)
                vec = {}
                for m, c in g.coeffs.items():
                    if len(m) <= lim:
                        vec[idx.index[ma + m + mb]] = c
                if vec:
                    vectors.append(vec)
    return span_sparse(vectors, idx.dim, QQ, idx.labels())


def left_multiply_image(space: Subspace, cap: int, r: int) -> Subspace:
    """Span of x_i * v for v in ``space``: the image of I * (left ideal)."""
    idx = monomial_index(r, cap)
    vectors = []
    for row in space.basis:
        s = idx.series(row)
        for i in range(1, r + 1):
            prod = mul(TruncatedSeries.letter(i, cap), s)
            if prod.coeffs:
                vectors.append(idx.vector(prod))
    return span_sparse(vectors, idx.dim, QQ, idx.labels())
