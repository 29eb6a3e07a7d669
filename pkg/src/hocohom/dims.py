"""Closed forms and recursions for the cohomology dimensions of Fuchsian groups.

Everything here is exact integer arithmetic.  The closed form for N_g(q) is
evaluated in Z[sqrt(g^2 - 1)], where alpha = g + sqrt(g^2 - 1) has norm 1 so
that alpha^-1 is its conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError


@dataclass(frozen=True)
class QuadraticInteger:
    """a + b*sqrt(d)."""

    a: int
    b: int
    d: int

    def _same(self, other: "QuadraticInteger"):
        if self.d != other.d:
            raise InputError(f"discriminants differ: {self.d} vs {other.d}")

    def __add__(self, other):
        if isinstance(other, int):
            return QuadraticInteger(self.a + other, self.b, self.d)
        self._same(other)
        return QuadraticInteger(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticInteger(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadraticInteger(self.a * other, self.b * other, self.d)
        self._same(other)
        return QuadraticInteger(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative powers: multiply by the conjugate instead")
        out = QuadraticInteger(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QuadraticInteger":
        return QuadraticInteger(self.a, -self.b, self.d)

    def norm(self) -> int:
        return self.a * self.a - self.d * self.b * self.b


def alpha(g: int) -> QuadraticInteger:
    return QuadraticInteger(g, 1, g * g - 1)


def n_g_closed_form(g: int, q: int) -> QuadraticInteger:
    """alpha^q + alpha^(q-2) + ... + alpha^(-q), with alpha^-k = conj(alpha)^k."""
    if g < 1:
        raise InputError("the closed form is stated for g >= 1")
    al = alpha(g)
    conj = al.conjugate()
    total = QuadraticInteger(0, 0, al.d)
    for k in range(q, -q - 1, -2):
        total = total + (al**k if k >= 0 else conj ** (-k))
    return total


@lru_cache(maxsize=None)
def n_g(g: int, q: int) -> int:
    """N_g(q) by the three-term recursion; N_g(0) = 1 and N_0(q) = 0 for q >= 1."""
    if g < 0 or q < 0:
        raise InputError("g and q must be nonnegative")
    if q == 0:
        return 1
    if g == 0:
        return 0
    if q == 1:
        return 2 * g
    return 2 * g * n_g(g, q - 1) - n_g(g, q - 2)


def bar_n(g: int, q: int) -> int:
    """1 + N_g(1) + ... + N_g(q)."""
    if q < 0:
        raise InputError("q must be nonnegative")
    return sum(n_g(g, k) for k in range(q + 1))


def _validate(g: int, s: int, n: int, q: int | None = None):
    if n < 0 or n % 2:
        raise InputError(f"n must be even and nonnegative, got {n}")
    if g < 0 or s < 0:
        raise InputError("g and s must be nonnegative")
    if g == 0 and s < 3:
        raise InputError(f"(g, s) = ({g}, {s}) is not an admitted signature")
    if q is not None and q < 1:
        raise InputError("q must be at least 1")


def dim_h1_classical(g: int, s: int, n: int) -> int:
    _validate(g, s, n)
    if n >= 1:
        return (2 * g + s - 2) * (n + 1)
    return 2 * g + s - 1 if s > 0 else 2 * g


def dim_h1_par_classical(g: int, s: int, n: int) -> int:
    _validate(g, s, n)
    return (2 * g - 2) * (n + 1) + s * n if n >= 1 else 2 * g


def dim_h1(g: int, s: int, n: int, q: int) -> int:
    _validate(g, s, n, q)
    if n >= 1:
        return bar_n(g, q - 1) * (2 * g + s - 2) * (n + 1)
    if s > 0:
        return bar_n(g, q - 1) * (2 * g + s - 2) + 1
    return n_g(g, q)


def dim_h1_par(g: int, s: int, n: int, q: int) -> int:
    _validate(g, s, n, q)
    if n == 0:
        return n_g(g, q)
    return bar_n(g, q - 1) * ((2 * g - 2) * (n + 1) + s * n)


def dim_cusp_classical(g: int, s: int, n: int) -> int:
    """(2g - 2)(n + 1) + n s; at n = 0 this is convention-sensitive (see dim_aux)."""
    _validate(g, s, n)
    return (2 * g - 2) * (n + 1) + n * s


def dim_ext2_s0(g: int, q: int) -> int:
    if q < 1:
        raise InputError("q must be at least 1")
    return n_g(g, q - 1)


@dataclass(frozen=True)
class AuxDims:
    dim_cusp_classical: int
    dim_ext2_s0: int | None
    dim_h1_classical: int
    warnings: tuple[str, ...] = ()


def dim_aux(g: int, s: int, n: int, q: int, want_ext2: bool = False) -> AuxDims:
    """Auxiliary dimensions; asking for Ext^2 with s > 0 is a domain error (it vanishes)."""
    _validate(g, s, n, q)
    if want_ext2 and s > 0:
        raise InputError("Ext^2(A/J_q, V) = 0 when s > 0; the s = 0 formula does not apply")
    warnings = []
    if n == 0:
        warnings.append(
            "n=0: (2g-2)(n+1)+ns differs from the complex dimension g of weight-2 cusp forms; "
            "value reported as given"
        )
    return AuxDims(
        dim_cusp_classical=dim_cusp_classical(g, s, n),
        dim_ext2_s0=dim_ext2_s0(g, q) if s == 0 and n == 0 else None,
        dim_h1_classical=dim_h1_classical(g, s, n),
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class SequenceCheck:
    branch: str
    q: int
    terms: tuple[int, ...]
    alternating_sum: int

    @property
    def ok(self) -> bool:
        return self.alternating_sum == 0


def _alt(terms) -> int:
    return sum(t if i % 2 == 0 else -t for i, t in enumerate(terms))


def sequence_consistency(g: int, s: int, n: int, q_max: int) -> list[SequenceCheck]:
    """Alternating sums of every exact sequence applicable to (g, s, n), q = 1..q_max.

    Branch (a): n >= 1; (b): n = 0, s > 0; (c): n = 0 = s; par: n >= 1.
    """
    _validate(g, s, n)
    out = []
    h1 = dim_h1_classical(g, s, n)
    for q in range(1, q_max + 1):
        N = n_g(g, q)
        a, b = dim_h1(g, s, n, q), dim_h1(g, s, n, q + 1)
        if n >= 1:
            out.append(SequenceCheck("a", q, (a, b, h1 * N), _alt((a, b, h1 * N))))
            pa, pb = dim_h1_par(g, s, n, q), dim_h1_par(g, s, n, q + 1)
            hp = dim_h1_par_classical(g, s, n)
            out.append(SequenceCheck("par", q, (pa, pb, hp * N), _alt((pa, pb, hp * N))))
        elif s > 0:
            terms = (N, a, b, h1 * N)
            out.append(SequenceCheck("b", q, terms, _alt(terms)))
        else:
            terms = (N, a, b, h1 * N, n_g(g, q - 1))
            out.append(SequenceCheck("c", q, terms, _alt(terms)))
    return out
