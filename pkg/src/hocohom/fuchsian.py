"""The ideals J_q = I^q + A*I_par for a free Fuchsian group with cusps.

With s >= 1 cusps the group is free on r = 2g + s - 1 letters: the
hyperbolic generators 1..2g followed by the first s - 1 parabolic ones.  The
last parabolic generator is the word that makes the surface relation hold.

Working modulo I^(q+1) loses nothing because I^(q+1) lies in both IJ_q and
J_{q+1}, so all three images are computed at cap q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError, ResourceError
from .linalg import Subspace, quotient_dim
from .magnus import (
    TruncatedSeries,
    Word,
    commutator,
    expand_word,
    left_multiply_image,
    monomial_index,
    power_ideal_image,
    two_sided_ideal_image,
)

COORDINATE_LIMIT = 10**6


@dataclass(frozen=True)
class FuchsianSignature:
    g: int
    s: int
    dependent_parabolic: Word = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.g < 0 or self.s < 1:
            raise InputError(f"need g >= 0 and s >= 1, got (g, s) = ({self.g}, {self.s})")
        if self.g == 0 and self.s < 3:
            raise InputError(f"(g, s) = (0, {self.s}) is not hyperbolic; need s >= 3")
        w = Word()
        for k in range(1, self.g + 1):
            w = w * commutator(Word(((2 * k - 1, 1),)), Word(((2 * k, 1),)))
        for j in self.parabolic_letters:
            w = w * Word(((j, 1),))
        object.__setattr__(self, "dependent_parabolic", w.inverse())

    @property
    def r(self) -> int:
        return 2 * self.g + self.s - 1

    @property
    def hyperbolic_letters(self) -> range:
        return range(1, 2 * self.g + 1)

    @property
    def parabolic_letters(self) -> range:
        return range(2 * self.g + 1, 2 * self.g + self.s)

    def parabolic_words(self) -> list[Word]:
        return [Word(((j, 1),)) for j in self.parabolic_letters] + [self.dependent_parabolic]

    def relator(self) -> Word:
        """Full relator; it reduces to the empty word by construction."""
        w = Word()
        for k in range(1, self.g + 1):
            w = w * commutator(Word(((2 * k - 1, 1),)), Word(((2 * k, 1),)))
        for p in self.parabolic_words():
            w = w * p
        return w


@dataclass(frozen=True)
class JqModel:
    signature: FuchsianSignature
    q: int
    cap: int
    jq_image: Subspace
    i_jq_image: Subspace
    jq_next_image: Subspace
    parabolic_image: Subspace


def _parabolic_generators(sig: FuchsianSignature, cap: int) -> list[TruncatedSeries]:
    return [expand_word(p, cap, sig.r) - 1 for p in sig.parabolic_words()]


@lru_cache(maxsize=32)
def build_jq(sig: FuchsianSignature, q: int) -> JqModel:
    if q < 1:
        raise InputError("q must be at least 1")
    if sig.r ** (q + 1) > COORDINATE_LIMIT:
        raise ResourceError(f"r^(q+1) = {sig.r ** (q + 1)} exceeds {COORDINATE_LIMIT}")
    cap = q
    par = two_sided_ideal_image(_parabolic_generators(sig, cap), cap, sig.r)
    jq = power_ideal_image(q, cap, sig.r) + par
    # I^(q+1) vanishes at this cap, so J_{q+1} is just the parabolic part
    jq_next = par
    i_jq = left_multiply_image(jq, cap, sig.r)
    return JqModel(sig, q, cap, jq, i_jq, jq_next, par)


def h1_dim_n0(sig: FuchsianSignature, q: int) -> int:
    """dim J_q/IJ_q, which is dim H^1_q with trivial coefficients."""
    m = build_jq(sig, q)
    return quotient_dim(m.jq_image, m.i_jq_image)


def h1_par_dim_n0(sig: FuchsianSignature, q: int) -> int:
    m = build_jq(sig, q)
    return quotient_dim(m.jq_image, m.jq_next_image)


def parabolic_class_rank(sig: FuchsianSignature, q: int) -> int:
    """Rank of the classes of p_j - 1 (all s of them) in J_q/IJ_q."""
    m = build_jq(sig, q)
    idx = monomial_index(sig.r, m.cap)
    vecs = [idx.dense(g) for g in _parabolic_generators(sig, m.cap)]
    return m.i_jq_image.extend(vecs).dim - m.i_jq_image.dim
