"""Period integrals of cusp forms and the cocycles they define on a Fuchsian group.

For a form f of weight n + 2 the P_n-valued differential is
2 pi i f(z) (X - z Y)^n dz, and a base point z turns it into the function

    phi_z(f)(gamma) = p_n(gamma) Re int_z^{gamma^-1 z} 2 pi i f(w) (X - w Y)^n dw

on the group, extended linearly to the group ring.  Integrals run along
straight segments with adaptive Gauss-Legendre quadrature.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, EvaluationDomainError, InputError
from .linalg import QQ, nullspace, span_reduce, intersect
from .magnus import Word
from .modular import (
    CuspForm,
    ProductForm,
    ScaledForm,
    SecondOrderForm,
    TWO_PI_I,
    cocycle_factor,
    delta_vector,
    det,
    mat_inv,
    mat_mul,
    mobius,
    pn_matrix,
    slash,
)

Matrix = tuple[tuple[int, int], tuple[int, int]]
GroupRingElement = dict[Word, float]


@dataclass(frozen=True)
class IntegrationConfig:
    tol: float = 1e-12
    order: int = 32
    max_depth: int = 20
    min_im: float = 1e-3
    tail_tol: float = 1e-13
    detour_lift: float = 0.3

    def digest(self) -> dict:
        return {
            "tol": self.tol,
            "order": self.order,
            "max_depth": self.max_depth,
            "min_im": self.min_im,
            "tail_tol": self.tail_tol,
        }


def relation_matrix(g: int, mats) -> Matrix:
    """[m1, m2] ... [m_{2g-1}, m_{2g}] times the remaining matrices."""
    out: Matrix = ((1, 0), (0, 1))
    for k in range(g):
        a, b = mats[2 * k], mats[2 * k + 1]
        out = mat_mul(out, mat_mul(mat_mul(a, b), mat_mul(mat_inv(a), mat_inv(b))))
    for p in mats[2 * g :]:
        out = mat_mul(out, p)
    return out


def group_fixture_violations(level, g, s, generators, cusps, scaling=()) -> list[str]:
    """Every structural problem with a generator list; empty when valid."""
    problems = []
    if len(generators) != 2 * g + s:
        return [f"expected {2 * g + s} generators, got {len(generators)}"]
    for name, m in generators:
        if det(m) != 1:
            problems.append(f"matrix {name} = {m} has determinant {det(m)}")
            continue
        if level and m[1][0] % level:
            problems.append(f"matrix {name} = {m} is not in Gamma_0({level})")
        tr = abs(m[0][0] + m[1][1])
        if tr < 2:
            problems.append(f"matrix {name} = {m} is elliptic (|trace| = {tr})")
    names = [n for n, _ in generators]
    mats = dict(generators)
    for pname, _ in cusps:
        if pname not in mats:
            problems.append(f"cusp generator {pname} is not a generator")
        elif abs(mats[pname][0][0] + mats[pname][1][1]) != 2:
            problems.append(f"parabolic {pname} = {mats[pname]} has |trace| != 2")
    if [n for n, _ in cusps] != names[2 * g :]:
        problems.append("cusp list must name the last s generators in order")
    for label, sm in scaling:
        if abs(det(sm) - 1) > 1e-12:
            problems.append(f"scaling matrix for cusp {label} has determinant {det(sm)}")
    if not problems:
        rel = relation_matrix(g, [m for _, m in generators])
        if rel not in (((1, 0), (0, 1)), ((-1, 0), (0, -1))):
            problems.append(f"relation evaluates to {rel}, not +-identity")
    return problems


@dataclass(frozen=True)
class GroupFixture:
    """Generators of a torsion-free congruence group, hyperbolic ones first.

    ``generators`` lists the 2g hyperbolic and s parabolic matrices in the
    order of the relation [h1, h2] ... [h_{2g-1}, h_{2g}] p1 ... ps = +-1; the
    first 2g + s - 1 of them form a free basis.
    """

    name: str
    level: int
    g: int
    s: int
    generators: tuple[tuple[str, Matrix], ...]
    cusps: tuple[tuple[str, str], ...]  # (parabolic generator name, cusp label)
    scaling: tuple[tuple[str, tuple[tuple[float, float], tuple[float, float]]], ...] = ()

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise InputError("; ".join(problems))

    def violations(self) -> list[str]:
        return group_fixture_violations(self.level, self.g, self.s, self.generators, self.cusps, self.scaling)

    def relation_matrix(self) -> Matrix:
        return relation_matrix(self.g, [m for _, m in self.generators])

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.generators]

    @property
    def rank(self) -> int:
        return 2 * self.g + self.s - 1

    def matrix(self, w: Word) -> Matrix:
        mats = [m for _, m in self.generators]
        out: Matrix = ((1, 0), (0, 1))
        for gen, e in w.letters:
            if gen > len(mats):
                raise InputError(f"word uses generator {gen}, fixture has {len(mats)}")
            m = mats[gen - 1]
            out = mat_mul(out, m if e == 1 else mat_inv(m))
        return out

    def letter(self, name: str) -> Word:
        return Word(((self.names.index(name) + 1, 1),))

    def parabolic_words(self) -> list[Word]:
        return [self.letter(n) for n, _ in self.cusps]

    def hyperbolic_words(self) -> list[Word]:
        return [self.letter(n) for n in self.names[: 2 * self.g]]

    def generator_words(self) -> list[Word]:
        return [self.letter(n) for n in self.names]


def word_label(fx: GroupFixture, w: Word) -> str:
    if not w.letters:
        return "1"
    return "*".join(fx.names[g - 1] + ("" if e == 1 else "^-1") for g, e in w.letters)


# ---------------------------------------------------------------- group ring


def ring_one() -> GroupRingElement:
    return {Word(): 1.0}


def ring_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    out: GroupRingElement = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa * wb
            out[w] = out.get(w, 0.0) + ca * cb
    return {w: c for w, c in out.items() if c}


def minus_one(w: Word) -> GroupRingElement:
    """w - 1."""
    return {w: 1.0, Word(): -1.0} if w.letters else {}


def product_of_differences(words) -> GroupRingElement:
    out = ring_one()
    for w in words:
        out = ring_mul(out, minus_one(w))
    return out


def augmentation(m: GroupRingElement) -> float:
    return sum(m.values())


# ---------------------------------------------------------------- quadrature


@lru_cache(maxsize=8)
def _gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _omega_values(form, n: int, z: np.ndarray) -> np.ndarray:
    """2 pi i f(z) (X - z Y)^n for each point, shape (len(z), n + 1)."""
    fz = np.atleast_1d(form.evaluate(z))
    k = np.arange(n + 1)
    binom = np.array([math.comb(n, j) for j in k], dtype=float)
    return TWO_PI_I * fz[:, None] * binom[None, :] * (-z[:, None]) ** k[None, :]


def integrate_omega(form, n: int, z0: complex, z1: complex, cfg: IntegrationConfig = IntegrationConfig()) -> np.ndarray:
    """int_{z0}^{z1} 2 pi i f(z) (X - z Y)^n dz along the straight segment."""
    z0, z1 = complex(z0), complex(z1)
    if z0 == z1:
        return np.zeros(n + 1, dtype=complex)
    if min(z0.imag, z1.imag) <= 0:
        raise EvaluationDomainError("segment endpoints must lie in the upper half plane")
    x, w = _gauss_legendre(cfg.order)
    dz = z1 - z0

    def rule(a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        # both halves of [a, b] at once
        mid = 0.5 * (a + b)
        h = 0.25 * (b - a)
        t = np.concatenate([a + h * (x + 1), mid + h * (x + 1)])
        vals = _omega_values(form, n, z0 + t * dz)
        left = h * (w @ vals[: cfg.order])
        right = h * (w @ vals[cfg.order :])
        return left, right

    def whole(a: float, b: float) -> np.ndarray:
        h = 0.5 * (b - a)
        t = a + h * (x + 1)
        return h * (w @ _omega_values(form, n, z0 + t * dz))

    total = np.zeros(n + 1, dtype=complex)
    stack = [(0.0, 1.0, whole(0.0, 1.0), 0)]
    while stack:
        a, b, est, depth = stack.pop()
        left, right = rule(a, b)
        if np.max(np.abs(left + right - est)) < cfg.tol:
            total += left + right
            continue
        if depth + 1 > cfg.max_depth:
            raise ConvergenceError(
                f"quadrature on [{z0}, {z1}] did not settle at depth {cfg.max_depth} (t in [{a}, {b}])"
            )
        mid = 0.5 * (a + b)
        stack.append((mid, b, right, depth + 1))
        stack.append((a, mid, left, depth + 1))
    return total * dz


def integrate_with_detour(form, n: int, z0: complex, z1: complex, cfg: IntegrationConfig = IntegrationConfig()):
    """Same integral through the midpoint lifted by ``cfg.detour_lift``; returns (direct, detour)."""
    direct = integrate_omega(form, n, z0, z1, cfg)
    apex = 0.5 * (z0 + z1) + 1j * cfg.detour_lift
    detour = integrate_omega(form, n, z0, apex, cfg) + integrate_omega(form, n, apex, z1, cfg)
    return direct, detour


# ---------------------------------------------------------------- cocycles


class PeriodMap:
    """phi_z(f) on group-ring elements for one fixture, form and weight parameter."""

    def __init__(self, fixture: GroupFixture, form, n: int, cfg: IntegrationConfig = IntegrationConfig()):
        if n < 0 or n % 2:
            raise InputError(f"n must be even and nonnegative, got {n}")
        if form.weight != n + 2:
            raise InputError(f"form of weight {form.weight} does not pair with P_{n}")
        self.fixture = fixture
        self.form = form
        self.n = n
        self.cfg = cfg
        self._cache: dict[tuple, np.ndarray] = {}

    def integral(self, z0: complex, z1: complex) -> np.ndarray:
        key = (complex(z0), complex(z1))
        if key not in self._cache:
            self._cache[key] = integrate_omega(self.form, self.n, z0, z1, self.cfg)
        return self._cache[key]

    def on_word(self, w: Word, z: complex) -> np.ndarray:
        g = self.fixture.matrix(w)
        vec = self.integral(z, mobius(mat_inv(g), z)).real
        if self.n == 0:
            return vec
        return pn_matrix(g, self.n) @ vec

    def __call__(self, m: GroupRingElement, z: complex) -> np.ndarray:
        out = np.zeros(self.n + 1)
        for w, c in sorted(m.items(), key=lambda kv: kv[0].signed()):
            if w.letters:
                out = out + c * self.on_word(w, z)
        return out


def _segment_heights(form, z: np.ndarray, targets: np.ndarray, samples: int = 17) -> np.ndarray:
    """Minimum effective height along each segment z -> target."""
    t = np.linspace(0.0, 1.0, samples)
    pts = z[..., None] + t * (targets - z)[..., None]
    return np.min(form.effective_height(pts), axis=-1)


def base_point_grid() -> np.ndarray:
    xs = np.round(np.arange(-1.0, 1.0 + 1e-9, 0.05), 10)
    ys = np.geomspace(0.05, 3.0, 40)
    return (xs[:, None] + 1j * ys[None, :]).ravel()


def choose_base_points(fixture: GroupFixture, form, words, count: int = 2, min_sep: float = 0.2):
    """Grid points z maximising the lowest effective height met by the segments z -> w^-1 z.

    Returns ``[(z, height), ...]``; later points keep distance ``min_sep`` from earlier ones.
    """
    grid = base_point_grid()
    score = form.effective_height(grid).astype(float)
    for w in words:
        if not w.letters:
            continue
        gi = mat_inv(fixture.matrix(w))
        score = np.minimum(score, _segment_heights(form, grid, mobius(gi, grid)))
    order = np.argsort(-score, kind="stable")
    chosen: list[tuple[complex, float]] = []
    for i in order:
        z = complex(grid[i])
        if all(abs(z - c) >= min_sep for c, _ in chosen):
            chosen.append((z, float(score[i])))
        if len(chosen) == count:
            break
    return chosen


# ---------------------------------------------------------------- checks


def pullback_residual(g: Matrix, n: int, points) -> float:
    """max |g^* delta_n - (cz + d)^(-n-2) p_n(g) delta_n| over the points."""
    pn = pn_matrix(g, n)
    worst = 0.0
    for z in points:
        gz = mobius(g, z)
        j = cocycle_factor(g, z)
        lhs = delta_vector(gz, n) * j ** (-2)  # d(gz)/dz = (cz+d)^-2
        rhs = j ** (-n - 2) * (pn @ delta_vector(z, n))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def shriek_residual(form, g: Matrix, n: int, points) -> float:
    """max |g_! omega(f) - omega(f)| with g_! omega = p_n(g) (g^-1)^* omega.

    For f on the group this vanishes; the left side is assembled from the
    definition (f at g^-1 z, the derivative of g^-1 and the polynomial action)
    without using the transformation law of delta_n.
    """
    gi = mat_inv(g)
    pn = pn_matrix(g, n)
    worst = 0.0
    for z in points:
        u = mobius(gi, z)
        deriv = cocycle_factor(gi, z) ** (-2)
        pulled = TWO_PI_I * form.evaluate(u) * deriv * delta_vector(u, n)
        lhs = pn @ pulled
        rhs = TWO_PI_I * form.evaluate(z) * delta_vector(z, n)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def invariants_tower_exact(fixture: GroupFixture, n: int, q_max: int) -> list[int]:
    """dim V^{I^q} for V = P_n over Q, q = 1..q_max, from exact integer matrices."""
    dim = n + 1
    minus = []
    for _, m in fixture.generators:
        p = pn_matrix(m, n, exact=True)
        minus.append([[p[i][j] - (1 if i == j else 0) for j in range(dim)] for i in range(dim)])
    w = span_reduce([], dim, QQ)
    dims = []
    for _ in range(q_max):
        ann = nullspace(w.basis, dim, QQ).basis
        nxt = span_reduce([[int(i == j) for j in range(dim)] for i in range(dim)], dim, QQ)
        for mat in minus:
            rows = [[sum(a[k] * mat[k][j] for k in range(dim)) for j in range(dim)] for a in ann]
            nxt = intersect(nxt, nullspace(rows, dim, QQ))
        w = nxt
        dims.append(w.dim)
    return dims


@dataclass
class Check:
    name: str
    anchor: str
    expected: str
    computed: float | int | str
    threshold: float | None
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class CocycleTable:
    order: int
    form: str
    base_point: complex
    entries: dict[str, list[float]]
    parabolic: tuple[str, ...]


def _check(name, anchor, value, threshold, expected=None, **detail) -> Check:
    return Check(name, anchor, expected or f"< {threshold:.0e}", float(value), threshold, bool(value < threshold), detail)


def jq_generators(fixture: GroupFixture, q: int) -> dict[str, GroupRingElement]:
    """Generating set of J_q as a left ideal, up to products of length q in the free basis."""
    free = fixture.generator_words()[: fixture.rank]
    out = {}
    for combo in itertools.product(free, repeat=q):
        out["".join(f"({word_label(fixture, w)}-1)" for w in combo)] = product_of_differences(combo)
    for w in fixture.parabolic_words():
        out[f"({word_label(fixture, w)}-1)"] = minus_one(w)
    return out


def _all_words(m: GroupRingElement):
    return [w for w in m if w.letters]


def _scan(fixture: GroupFixture, form, elements, min_sep=0.2):
    words = sorted({w for m in elements for w in _all_words(m)}, key=lambda w: w.signed())
    return choose_base_points(fixture, form, words, 2, min_sep)


@dataclass
class SuiteResult:
    checks: list[Check]
    tables: list[CocycleTable]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_suite(fixture: GroupFixture, f: CuspForm, q_max: int = 2, cfg: IntegrationConfig = IntegrationConfig(),
                 n_values=(0, 2), samples: int = 10, seed: int = 0) -> SuiteResult:
    """Every numerical identity behind the period map, for a weight-2 form on ``fixture``."""
    if q_max not in (1, 2):
        raise InputError("the numerical suite covers orders 1 and 2")
    if f.weight != 2:
        raise InputError("the suite expects a weight-2 form")
    checks: list[Check] = []
    tables: list[CocycleTable] = []
    rng = np.random.default_rng(seed)
    gens = fixture.generator_words()
    parab = fixture.parabolic_words()
    names = fixture.names

    # representation law on random words
    worst = 0.0
    for _ in range(50):
        length = int(rng.integers(1, 5))
        w1 = Word(tuple((int(rng.integers(1, len(gens) + 1)), int(rng.choice([-1, 1]))) for _ in range(length)))
        w2 = Word(tuple((int(rng.integers(1, len(gens) + 1)), int(rng.choice([-1, 1]))) for _ in range(length)))
        for n in n_values:
            a = pn_matrix(fixture.matrix(w1 * w2), n)
            b = pn_matrix(fixture.matrix(w1), n) @ pn_matrix(fixture.matrix(w2), n)
            worst = max(worst, float(np.max(np.abs(a - b))))
    checks.append(_check("pn_representation_law", "p_n(g h) = p_n(g) p_n(h)", worst, 1e-12))

    # pullback law for delta_n at sample points, every generator
    pts = [complex(x, y) for x, y in zip(rng.uniform(-1, 1, samples), rng.uniform(0.2, 2.0, samples))]
    for n in n_values:
        res = max(pullback_residual(m, n, pts) for _, m in fixture.generators)
        checks.append(_check(f"pullback_law_n{n}", "g^* delta_n = (cz+d)^(-n-2) p_n(g) delta_n", res, 1e-9))

    # m_! omega(f) = 0 for m = g - 1, sampled where both z and g^-1 z are high
    worst = 0.0
    for name, m in fixture.generators:
        (z0, _), = choose_base_points(fixture, f, [fixture.letter(name)], 1)
        sample = [z0 + 0.01 * complex(a, b) for a, b in rng.uniform(-1, 1, (5, 2))]
        worst = max(worst, shriek_residual(f, m, 0, sample))
    checks.append(_check("shriek_annihilation_n0", "(g - 1)_! omega(f) = 0", worst, 1e-9))

    # P_n has no I^q-invariants for n >= 2; exact check
    for n in n_values:
        if n >= 2:
            dims = invariants_tower_exact(fixture, n, max(q_max, 2))
            checks.append(Check(
                f"invariants_vanish_n{n}", "V^{I^q} = 0 for n > 0", "0", int(max(dims)), None, max(dims) == 0,
                {"dims": dims},
            ))

    # Eichler integral and second-order form
    lam_form = SecondOrderForm(f)

    # decay at every cusp: |(F|sigma_c)(x + iy)| e^(2 pi y) stays bounded
    for label, sigma in fixture.scaling:
        for fname, form in (("f", f), ("G", lam_form)):
            vals = [abs(slash(form, sigma, 0.2 + 1j * y, 2)) * math.exp(2 * math.pi * y) for y in (1.0, 2.0, 3.0)]
            checks.append(Check(
                f"decay_{fname}_cusp_{label}", "F|sigma_c = O(exp(-2 pi y))", "<= 10", max(vals), 10.0,
                max(vals) <= 10.0, {"scaled_values": vals},
            ))
    eich = lam_form.eichler
    h = 1e-4
    z = 1.3j
    fd = abs((eich(z + h) - eich(z - h)) / (2 * h) - TWO_PI_I * f(z))
    checks.append(_check("eichler_derivative", "d/dz Lambda = 2 pi i f", fd, 1e-8))
    checks.append(_check("eichler_periodicity", "Lambda(z + 1) = Lambda(z)", abs(eich(0.3 + 0.7j) - eich(1.3 + 0.7j)), 1e-13))

    lam = {}
    lam_spread = 0.0
    for name in names:
        w = fixture.letter(name)
        mat = fixture.matrix(w)
        cands = choose_base_points(fixture, f, [w.inverse()], 3, 0.1)
        vals = [lam_form.period(mat, zz) for zz, _ in cands]
        lam[name] = vals[0]
        lam_spread = max(lam_spread, max(abs(v - vals[0]) for v in vals))
    checks.append(_check("lambda_constant", "Lambda(g z) - Lambda(z) independent of z", lam_spread, 1e-8))
    checks.append(_check(
        "lambda_parabolic", "lambda(p) = 0 for parabolic p", max(abs(lam[n]) for n, _ in fixture.cusps), 1e-8,
    ))
    # additivity: lambda(gh) = lambda(g) + lambda(h), the right side from separate base points
    worst = 0.0
    for a, b in itertools.product(names, repeat=2):
        w = fixture.letter(a) * fixture.letter(b)
        (zz, _), = choose_base_points(fixture, f, [w.inverse()], 1)
        worst = max(worst, abs(lam_form.period(fixture.matrix(w), zz) - lam[a] - lam[b]))
    checks.append(_check("lambda_additive", "lambda(gh) = lambda(g) + lambda(h)", worst, 1e-8))

    # G|(g - 1) = lambda(g) f, and (fG)|(g - 1) = lambda(g) f^2
    fg = ProductForm(f, lam_form, weight=4)
    worst_g = worst_fg = 0.0
    for name, m in fixture.generators:
        cands = choose_base_points(fixture, f, [fixture.letter(name).inverse()], samples, 0.05)
        for zz, _ in cands[:5]:
            defect = slash(lam_form, m, zz) - lam_form(zz)
            worst_g = max(worst_g, abs(defect - lam[name] * f(zz)))
            defect4 = slash(fg, m, zz, 4) - fg(zz)
            worst_fg = max(worst_fg, abs(defect4 - lam[name] * f(zz) ** 2))
    checks.append(_check("second_order_defect", "G|(g - 1) = lambda(g) f", worst_g, 1e-8))
    checks.append(_check("product_defect", "(f G)|(g - 1) = lambda(g) f^2", worst_fg, 1e-6))

    # detour agreement
    direct, detour = integrate_with_detour(f, 0, 1j, 1 + 1j, cfg)
    checks.append(_check("path_independence", "integral independent of the path", float(np.max(np.abs(direct - detour))), 1e-10))
    rev = integrate_omega(f, 0, 1 + 1j, 1j, cfg)
    checks.append(_check("orientation", "reversing the path negates the integral", float(np.max(np.abs(rev + direct))), 1e-13))

    # order 1: cocycles from f and i f
    rows = []
    for label, form in (("f", f), ("if", ScaledForm(f, 1j))):
        pm = PeriodMap(fixture, form, 0, cfg)
        pair_res = 0.0
        closed = 0.0
        for a, b in itertools.product(gens, repeat=2):
            ab = a * b
            (zz, _), *_ = _scan(fixture, form, [{a: 1.0}, {b: 1.0}, {ab: 1.0}])
            lhs = pm.on_word(ab, zz)
            rhs = pm.on_word(a, zz) + pm.on_word(b, zz)
            pair_res = max(pair_res, float(np.max(np.abs(lhs - rhs))))
            target = mobius(mat_inv(fixture.matrix(ab)), zz)
            exact = (form.c if isinstance(form, ScaledForm) else 1) * (eich(target) - eich(zz))
            closed = max(closed, abs(lhs[0] - exact.real))
        checks.append(_check(f"cocycle_identity_{label}", "phi(gh) = phi(g) + phi(h) at n = 0", pair_res, 1e-8))
        checks.append(_check(f"closed_form_{label}", "period equals difference of Eichler integrals", closed, 1e-8))
        table = _order_table(fixture, pm, 1, label)
        tables.append(table)
        checks.extend(_table_checks(fixture, pm, table, label))
        rows.append([table.entries[k][0] for k in sorted(table.entries) if k not in table.parabolic])
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    rank = int(np.sum(sv > 1e-6))
    checks.append(Check(
        "cocycle_rank", "dim H^1_par = 2g at n = 0", str(2 * fixture.g), rank, 1e-6, rank == 2 * fixture.g,
        {"singular_values": [float(x) for x in sv]},
    ))

    if q_max >= 2:
        pm = PeriodMap(fixture, lam_form, 0, cfg)
        table = _order_table(fixture, pm, 2, "G")
        tables.append(table)
        checks.extend(_table_checks(fixture, pm, table, "G"))
        # closed form for the second-order periods
        worst = 0.0
        for key, m in jq_generators(fixture, 2).items():
            (zz, _), *_ = _scan(fixture, lam_form, [m])
            val = pm(m, zz)[0]
            exact = 0.0
            for w, c in m.items():
                if w.letters:
                    t = mobius(mat_inv(fixture.matrix(w)), zz)
                    exact += c * (0.5 * (eich(t) ** 2 - eich(zz) ** 2)).real
            worst = max(worst, abs(val - exact))
        checks.append(_check("closed_form_G", "int 2 pi i f Lambda = (Lambda^2)/2 differences", worst, 1e-8))
        # A-linearity: phi(g m) = phi(m) for m = (h - 1)(k - 1), over the
        # combinations whose segments stay comfortably inside the domain
        worst = 0.0
        used = skipped = 0
        floor = 2 * cfg.min_im
        free = gens[: fixture.rank]
        letters = free + [w.inverse() for w in free]
        for gg in gens + [w.inverse() for w in gens]:
            for hh, kk in itertools.product(letters, repeat=2):
                m = product_of_differences([hh, kk])
                gm = ring_mul({gg: 1.0}, m)
                (zz, height), *_ = _scan(fixture, lam_form, [m, gm])
                if height < floor:
                    skipped += 1
                    continue
                used += 1
                worst = max(worst, float(np.max(np.abs(pm(gm, zz) - pm(m, zz)))))
        checks.append(Check(
            "a_linearity_G", "phi(g m) = p_n(g) phi(m) on J_q", "< 1e-06", worst, 1e-6,
            used > 0 and worst < 1e-6, {"combinations_checked": used, "combinations_below_height": skipped},
        ))
    return SuiteResult(checks, tables)


def _order_table(fixture: GroupFixture, pm: PeriodMap, q: int, label: str) -> CocycleTable:
    gens = jq_generators(fixture, q)
    (z0, _), *_ = _scan(fixture, pm.form, list(gens.values()))
    entries = {k: [float(x) for x in pm(m, z0)] for k, m in gens.items()}
    parabolic = tuple(f"({word_label(fixture, w)}-1)" for w in fixture.parabolic_words())
    return CocycleTable(q, label, z0, entries, parabolic)


def _table_checks(fixture: GroupFixture, pm: PeriodMap, table: CocycleTable, label: str) -> list[Check]:
    gens = jq_generators(fixture, table.order)
    par = max(float(np.linalg.norm(table.entries[k])) for k in table.parabolic)
    out = [_check(f"parabolic_vanishing_{label}_q{table.order}", "phi vanishes on parabolic elements", par, 1e-6)]
    worst = 0.0
    for key, m in gens.items():
        (z1, _), (z2, _) = _scan(fixture, pm.form, [m])
        worst = max(worst, float(np.max(np.abs(pm(m, z1) - pm(m, z2)))))
    out.append(_check(f"base_point_independence_{label}_q{table.order}", "phi_z(m) = phi_z'(m) for m in J_q", worst, 1e-6))
    return out
