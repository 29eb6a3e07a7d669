"""Weight-k cusp forms given by q-expansions, and the polynomial representation P_n.

Forms are evaluated from their q-series with a certified truncation: under the
envelope |a_m| <= m^2 the neglected tail at height y is bounded in closed form
and the series is cut once that bound drops below ``tail_tol``.  Points that
are too low are first moved by the Fricke involution z -> -1/(N z) when the
form carries a Fricke sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import EvaluationDomainError, InputError

DEFAULT_MIN_IM = 1e-3
DEFAULT_TAIL_TOL = 1e-13
TWO_PI_I = 2j * math.pi


# ---------------------------------------------------------------- matrices


def det(g) -> float:
    (a, b), (c, d) = g
    return a * d - b * c


def mat_mul(g, h):
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return ((a * e + b * x, a * f + b * y), (c * e + d * x, c * f + d * y))


def mat_inv(g):
    """Inverse of a determinant-one matrix."""
    (a, b), (c, d) = g
    return ((d, -b), (-c, a))


def mobius(g, z):
    (a, b), (c, d) = g
    return (a * z + b) / (c * z + d)


def cocycle_factor(g, z):
    """c z + d."""
    return g[1][0] * z + g[1][1]


def pn_matrix(g, n: int, exact: bool = False):
    """Matrix of P(X, Y) -> P(g^-1 (X, Y)) on the basis X^n, X^(n-1) Y, ..., Y^n.

    Column j holds the image of X^(n-j) Y^j.  With ``exact`` the entries are
    Fractions (for integer matrices) instead of floats.
    """
    if n < 0 or n % 2:
        raise InputError(f"n must be even and nonnegative, got {n}")
    if abs(det(g) - 1) > 1e-12:
        raise InputError(f"matrix {g} does not have determinant 1")
    (a, b), (c, d) = g
    # g^-1 (X, Y) = (d X - b Y, -c X + a Y)
    u = _binomial_powers(d, -b, n)
    v = _binomial_powers(-c, a, n)
    zero = Fraction(0) if exact else 0.0
    out = [[zero] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        prod = _poly_mul(u[n - j], v[j])
        for i, x in enumerate(prod):
            out[i][j] = Fraction(x) if exact else float(x)
    return out if exact else np.array(out, dtype=float)


def _binomial_powers(p, q, n):
    """Coefficient lists of (p X + q Y)^k for k = 0..n (index = power of Y)."""
    out = [[1]]
    for _ in range(n):
        prev = out[-1]
        nxt = [0] * (len(prev) + 1)
        for i, x in enumerate(prev):
            nxt[i] += x * p
            nxt[i + 1] += x * q
        out.append(nxt)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def delta_vector(z: complex, n: int) -> np.ndarray:
    """Coefficients of (X - z Y)^n."""
    return np.array([comb(n, k) * (-z) ** k for k in range(n + 1)], dtype=complex)


# ---------------------------------------------------------------- q-series


def tail_bound(y: float, terms: int) -> float:
    """Upper bound for sum_{m > terms} m^2 exp(-2 pi m y)."""
    r = math.exp(-2 * math.pi * y)
    k = terms + 1
    one = 1 - r
    return r**k * (r * (1 + r) / one**3 + 2 * k * r / one**2 + k * k / one)


@lru_cache(maxsize=256)
def terms_needed(y: float, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest M whose certified tail at height y is below ``tail_tol``."""
    if y <= 0:
        raise EvaluationDomainError("height must be positive")
    lo, hi = 0, 16
    while tail_bound(y, hi) >= tail_tol:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_bound(y, mid) < tail_tol:
            hi = mid
        else:
            lo = mid + 1
    return lo


def euler_series(length: int) -> np.ndarray:
    """prod_{m >= 1} (1 - q^m) up to q^(length-1), by the pentagonal number theorem."""
    c = np.zeros(length, dtype=np.int64)
    c[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 < length:
        sign = -1 if k % 2 else 1
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e < length:
                c[e] += sign
        k += 1
    return c


def _truncated_product(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    return np.convolve(a[:length], b[:length])[:length]


@lru_cache(maxsize=16)
def eta_product_coefficients(exponents: tuple[tuple[int, int], ...], count: int) -> tuple[int, ...]:
    """a_1..a_count of prod_d eta(d z)^(r_d); ``exponents`` holds (d, r_d) pairs.

    Only nonnegative exponents with an integral q-shift equal to 1 are handled
    (that is what makes the product a cusp form with a_1 = 1).
    """
    shift = Fraction(sum(d * r for d, r in exponents), 24)
    if shift != 1 or any(r < 0 or d < 1 for d, r in exponents):
        raise InputError(f"eta product {exponents} is not supported (q-shift {shift})")
    length = count  # series index j corresponds to q^(j+1)
    base = euler_series(length)
    out = np.zeros(length, dtype=np.int64)
    out[0] = 1
    for d, r in exponents:
        spread = np.zeros(length, dtype=np.int64)
        spread[::d] = base[: (length + d - 1) // d]
        for _ in range(r):
            out = _truncated_product(out, spread, length)
    return tuple(int(x) for x in out)


@dataclass(frozen=True)
class CuspForm:
    """sum_{m >= 1} a_m q^m of weight ``weight`` on Gamma_0(level).

    ``fricke_sign`` s means f(z) = s (sqrt(N) z)^(-k) f(-1/(N z)).
    """

    weight: int
    level: int
    coefficients: tuple[float | complex, ...]
    fricke_sign: int | None = None
    min_im: float = DEFAULT_MIN_IM
    tail_tol: float = DEFAULT_TAIL_TOL
    note: str = ""
    _arr: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2:
            raise InputError("weight must be even and at least 2")
        if not self.coefficients:
            raise InputError("no coefficients")
        arr = np.array(self.coefficients, dtype=complex)
        m = np.arange(1, len(arr) + 1, dtype=float)
        bad = np.nonzero(np.abs(arr) > m**2)[0]
        if bad.size:
            raise InputError(f"coefficient a_{bad[0] + 1} violates the envelope |a_m| <= m^2")
        needed = terms_needed(self.min_im, self.tail_tol)
        if len(arr) < needed:
            raise InputError(
                f"{len(arr)} coefficients cannot certify height {self.min_im}; need {needed}"
            )
        object.__setattr__(self, "_arr", arr)

    @classmethod
    def eta_product(cls, exponents, level: int, min_im: float = DEFAULT_MIN_IM,
                    tail_tol: float = DEFAULT_TAIL_TOL, fricke_sign: int | None = None) -> "CuspForm":
        exps = tuple(sorted((int(d), int(r)) for d, r in exponents))
        weight = sum(r for _, r in exps) // 2
        count = terms_needed(min_im, tail_tol)
        coeffs = eta_product_coefficients(exps, count)
        f = cls(weight, level, coeffs, None, min_im, tail_tol, f"eta product {exps}")
        if fricke_sign is None:
            fricke_sign = f.detect_fricke_sign()
        return cls(weight, level, coeffs, fricke_sign, min_im, tail_tol, f.note)

    # -- evaluation

    def _series(self, z: np.ndarray, weights: np.ndarray | None = None) -> np.ndarray:
        """sum a_m w_m exp(2 pi i m z) with a certified cut, vectorised over z."""
        y = float(np.min(z.imag))
        if y < self.min_im * (1 - 1e-12):
            raise EvaluationDomainError(f"Im z = {y:.3e} below threshold {self.min_im:.3e}")
        M = min(max(1, terms_needed(y, self.tail_tol)), len(self._arr))
        coeffs = self._arr[:M] if weights is None else self._arr[:M] * weights[:M]
        m = np.arange(1, M + 1)
        out = np.empty(z.shape, dtype=complex)
        # chunk to bound memory
        flat = z.ravel()
        res = out.ravel()
        step = max(1, 2_000_000 // M)
        for s in range(0, flat.size, step):
            e = np.exp(TWO_PI_I * np.outer(flat[s : s + step], m))
            res[s : s + step] = e @ coeffs
        return res.reshape(z.shape)

    def effective_height(self, z):
        z = np.asarray(z, dtype=complex)
        if self.fricke_sign is None:
            return z.imag
        return np.maximum(z.imag, (-1 / (self.level * z)).imag)

    def _split(self, z: np.ndarray):
        """Mask of points that should go through the Fricke involution."""
        if self.fricke_sign is None:
            return np.zeros(z.shape, dtype=bool)
        return (-1 / (self.level * z)).imag > z.imag

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z):
        scalar = np.isscalar(z)
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if np.any(z.imag <= 0):
            raise EvaluationDomainError("points must lie in the upper half plane")
        out = np.empty(z.shape, dtype=complex)
        flip = self._split(z)
        if np.any(~flip):
            out[~flip] = self._series(z[~flip])
        if np.any(flip):
            w = z[flip]
            u = -1 / (self.level * w)
            out[flip] = self.fricke_sign * (math.sqrt(self.level) * w) ** (-self.weight) * self._series(u)
        return complex(out[0]) if scalar else out

    def detect_fricke_sign(self) -> int:
        """Read off s from one point where both z and -1/(N z) are high."""
        N = self.level
        z = 0.8j / math.sqrt(N)
        u = -1 / (N * z)
        ratio = self._series(np.array([z]))[0] / (
            (math.sqrt(N) * z) ** (-self.weight) * self._series(np.array([u]))[0]
        )
        s = round(ratio.real)
        if s not in (1, -1) or abs(ratio - s) > 1e-8:
            raise InputError(f"form is not a Fricke eigenform (ratio {ratio})")
        return s

    def scaled(self, c: complex) -> "ScaledForm":
        return ScaledForm(self, c)


class ScaledForm:
    """c * f."""

    def __init__(self, base, c: complex):
        self.base = base
        self.c = complex(c)
        self.weight = base.weight

    def evaluate(self, z):
        return self.c * self.base.evaluate(z)

    __call__ = evaluate

    def effective_height(self, z):
        return self.base.effective_height(z)


class EichlerIntegral:
    """Primitive of 2 pi i f vanishing at i*infinity (weight 2 only)."""

    def __init__(self, f: CuspForm):
        if f.weight != 2:
            raise InputError("the Eichler integral here is for weight 2")
        self.f = f
        m = np.arange(1, len(f._arr) + 1, dtype=float)
        self._inv_m = 1.0 / m
        self._fricke_const = None
        if f.fricke_sign is not None:
            # Lambda(-1/(N z)) = s Lambda(z) + C; at the fixed point this gives C
            fixed = np.array([1j / math.sqrt(f.level)])
            self._fricke_const = (1 - f.fricke_sign) * f._series(fixed, self._inv_m)[0]

    def effective_height(self, z):
        return self.f.effective_height(z)

    def evaluate(self, z):
        f = self.f
        scalar = np.isscalar(z)
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.empty(z.shape, dtype=complex)
        flip = f._split(z)
        if np.any(~flip):
            out[~flip] = f._series(z[~flip], self._inv_m)
        if np.any(flip):
            u = -1 / (f.level * z[flip])
            out[flip] = f.fricke_sign * f._series(u, self._inv_m) + self._fricke_const
        return complex(out[0]) if scalar else out

    __call__ = evaluate


class ProductForm:
    """Pointwise product of evaluable forms; weights add."""

    def __init__(self, *factors, weight: int):
        self.factors = factors
        self.weight = weight

    def evaluate(self, z):
        out = None
        for f in self.factors:
            v = f.evaluate(z)
            out = v if out is None else out * v
        return out

    __call__ = evaluate

    def effective_height(self, z):
        return self.factors[0].effective_height(z)


class SecondOrderForm(ProductForm):
    """G = f * Lambda; G|(gamma - 1) = lambda(gamma) f for gamma in the group."""

    def __init__(self, f: CuspForm):
        self.f = f
        self.eichler = EichlerIntegral(f)
        super().__init__(f, self.eichler, weight=2)

    def period(self, g, z: complex) -> complex:
        """lambda(g) = Lambda(g z) - Lambda(z), evaluated at base point z."""
        return self.eichler(mobius(g, z)) - self.eichler(z)


def slash(form, g, z, weight: int | None = None):
    """(form |_k g)(z) = (c z + d)^(-k) form(g z)."""
    k = form.weight if weight is None else weight
    z = np.asarray(z, dtype=complex)
    return cocycle_factor(g, z) ** (-k) * form.evaluate(mobius(g, z))


def count_points_11a1(p: int) -> int:
    """Affine solutions of y^2 + y = x^3 - x^2 - 10x - 20 over F_p."""
    squares: dict[int, int] = {}
    for y in range(p):
        v = (y * y + y) % p
        squares[v] = squares.get(v, 0) + 1
    return sum(squares.get((x**3 - x * x - 10 * x - 20) % p, 0) for x in range(p))


def naive_eta_product(exponents, count: int) -> list[int]:
    """a_1..a_count by multiplying out the finite product directly."""
    series = [0] * count
    series[0] = 1
    for d, r in exponents:
        for _ in range(r):
            for m in range(1, count // d + 1):
                step = d * m
                # multiply by (1 - q^step)
                for j in range(count - 1, step - 1, -1):
                    series[j] -= series[j - step]
    return series

