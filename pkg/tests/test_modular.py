import cmath
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hocohom.errors import EvaluationDomainError, InputError
from hocohom.magnus import Word
from hocohom.modular import (
    CuspForm,
    EichlerIntegral,
    SecondOrderForm,
    delta_vector,
    eta_product_coefficients,
    mat_mul,
    naive_eta_product,
    pn_matrix,
    slash,
)
from hocohom.periods import (
    IntegrationConfig,
    PeriodMap,
    integrate_omega,
    integrate_with_detour,
    invariants_tower_exact,
    minus_one,
    pullback_residual,
    shriek_residual,
)

T = ((1, 1), (0, 1))
EXPS = ((1, 2), (11, 2))


def pn_oracle(g, n):
    X, Y = sympy.symbols("X Y")
    (a, b), (c, d) = g
    cols = []
    for j in range(n + 1):
        img = sympy.Poly(sympy.expand((d * X - b * Y) ** (n - j) * (-c * X + a * Y) ** j), X, Y)
        cols.append([img.coeff_monomial(X ** (n - i) * Y**i) for i in range(n + 1)])
    return [[int(cols[j][i]) for j in range(n + 1)] for i in range(n + 1)]


def points_on_curve(p):
    # y^2 + y = x^3 - x^2 - 10x - 20, plus the point at infinity
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y + y - (x**3 - x * x - 10 * x - 20)) % p == 0)


# ---------------------------------------------------------------- polynomial module


def test_pn_examples():
    ident = ((1, 0), (0, 1))
    assert np.allclose(pn_matrix(ident, 4), np.eye(5))
    assert pn_matrix(((2, 1), (1, 1)), 0).tolist() == [[1.0]]
    assert pn_matrix(T, 2, exact=True) == [[1, 0, 0], [-2, 1, 0], [1, -1, 1]]


sl2 = st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)).filter(lambda t: t[0] != 0).map(
    lambda t: ((t[0], t[1]), (t[2], (1 + t[1] * t[2]) // t[0])) if (1 + t[1] * t[2]) % t[0] == 0 else ((1, t[1]), (0, 1))
)


@given(sl2, st.sampled_from([0, 2, 4]))
@settings(max_examples=30, deadline=None)
def test_pn_matches_sympy(g, n):
    assert pn_matrix(g, n, exact=True) == pn_oracle(g, n)


@given(st.lists(st.sampled_from(range(4)), min_size=1, max_size=4), st.lists(st.sampled_from(range(4)), min_size=1, max_size=4), st.sampled_from([2, 4]))
@settings(max_examples=50, deadline=None)
def test_pn_representation_law(u, v, n):
    gens = [((-3, 2), (-11, 7)), ((8, -3), (11, -4)), ((1, 1), (0, 1)), ((1, 0), (-11, 1))]

    def word(ix):
        out = ((1, 0), (0, 1))
        for i in ix:
            out = mat_mul(out, gens[i])
        return out

    a, b = word(u), word(v)
    err = np.max(np.abs(pn_matrix(mat_mul(a, b), n) - pn_matrix(a, n) @ pn_matrix(b, n)))
    assert err < 1e-12 * max(1.0, np.max(np.abs(pn_matrix(mat_mul(a, b), n))))


def test_pullback_examples(group11):
    pts = [0.3 + 1.1j, -0.2 + 0.5j, 1.5j]
    assert pullback_residual(((1, 0), (0, 1)), 2, pts) == 0
    assert pullback_residual(T, 2, [1.5j]) < 1e-9
    for _, m in group11.generators:
        assert pullback_residual(m, 0, pts) < 1e-9
        assert pullback_residual(m, 2, pts) < 1e-9


def test_delta_vector():
    assert np.allclose(delta_vector(2j, 2), [1, -4j, -4])


def test_invariants_vanish_for_positive_n(group11):
    assert invariants_tower_exact(group11, 2, 3) == [0, 0, 0]
    assert invariants_tower_exact(group11, 0, 2) == [1, 1]


# ---------------------------------------------------------------- q-expansion


def test_leading_coefficients():
    assert eta_product_coefficients(EXPS, 5) == (1, -2, -1, 2, 1)


def test_coefficients_against_naive_product():
    assert list(eta_product_coefficients(EXPS, 300)) == naive_eta_product(EXPS, 300)


def test_coefficients_against_sympy_series():
    q = sympy.Symbol("q")
    poly = sympy.Poly(q, q)
    for m in range(1, 31):
        for d in (m, 11 * m):
            if d <= 30:
                poly = poly * sympy.Poly((1 - q**d) ** 2, q)
                poly = sympy.Poly(sum(c * q**k for (k,), c in poly.terms() if k <= 30), q)
    expected = [int(poly.coeff_monomial(q**k)) for k in range(1, 31)]
    assert list(eta_product_coefficients(EXPS, 30)) == expected


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
def test_hecke_eigenvalues_count_points(p):
    a = eta_product_coefficients(EXPS, p)[p - 1]
    assert a == p + 1 - points_on_curve(p)


def test_evaluation_examples(form11):
    z = 10j
    assert abs(form11(z)) <= 1e-26
    assert abs(form11(z) - math.exp(-20 * math.pi)) < 1e-30
    for z in (0.3 + 0.7j, -0.41 + 0.25j, 0.13 + 0.1j):
        assert abs(form11(z + 1) - form11(z)) < 1e-13
    # near the real line the direct series cancels heavily; roundoff dominates
    assert abs(form11(1.02 + 0.01j) - form11(0.02 + 0.01j)) < 1e-10


def test_fricke_branch_matches_direct_series(form11):
    # both branches are valid at these heights; they must agree
    for z in (0.05 + 0.25j, -0.1 + 0.2j, 0.2 + 0.28j):
        direct = form11._series(np.array([z]))[0]
        w = -1 / (11 * z)
        flipped = -1 * (math.sqrt(11) * z) ** -2 * form11._series(np.array([w]))[0]
        assert abs(direct - flipped) < 1e-12


def test_modularity_on_generators(form11, group11):
    for _, m in group11.generators:
        for z in (0.1 + 0.4j, -0.3 + 0.2j):
            assert abs(slash(form11, m, z) - form11(z)) < 1e-10


def test_domain_errors(form11):
    with pytest.raises(EvaluationDomainError):
        form11(0.5 - 0.1j)
    with pytest.raises(EvaluationDomainError):
        form11(0.5 + 1e-5j)


def test_envelope_and_count_validation():
    with pytest.raises(InputError):
        CuspForm(2, 11, (1, 10), None, 1.0)
    with pytest.raises(InputError):
        CuspForm(2, 11, (1, -2), None, 1e-3)
    with pytest.raises(InputError):
        CuspForm(3, 11, (1,), None, 5.0)


def test_fricke_sign_detected():
    assert CuspForm.eta_product(EXPS, 11, min_im=0.02).fricke_sign == -1


# ---------------------------------------------------------------- Eichler integral


def test_eichler_examples(form11):
    lam = EichlerIntegral(form11)
    assert abs(lam(0.3 + 0.7j) - lam(1.3 + 0.7j)) < 1e-13
    assert abs(lam(10j) - math.exp(-20 * math.pi)) < 1e-30
    h, z = 1e-4, 1.3j
    fd = (lam(z + h) - lam(z - h)) / (2 * h)
    assert abs(fd - 2j * math.pi * form11(z)) < 1e-8


def test_eichler_fricke_rule(form11):
    lam = EichlerIntegral(form11)
    for z in (0.02 + 0.25j, -0.05 + 0.3j):
        # direct series is valid on both sides at these heights
        direct = form11._series(np.array([-1 / (11 * z)]), lam._inv_m)[0]
        assert abs(lam(-1 / (11 * z)) - direct) < 1e-12
        rule = -lam(z) + 2 * lam(1j / math.sqrt(11))
        assert abs(direct - rule) < 1e-12


def test_second_order_examples(form11, group11):
    G = SecondOrderForm(form11)
    p1 = dict(group11.generators)["p1"]
    assert abs(G.period(p1, 0.2 + 0.5j)) < 1e-12
    for _, m in group11.generators:
        z = 0.15 + 0.35j
        lam = G.period(m, z)
        assert abs(slash(G, m, z) - G(z) - lam * form11(z)) < 1e-8


# ---------------------------------------------------------------- quadrature


def test_integral_examples(form11):
    cfg = IntegrationConfig()
    assert np.all(integrate_omega(form11, 2, 0.4 + 1j, 0.4 + 1j, cfg) == 0)
    a = integrate_omega(form11, 2, 1j, 1 + 1j, cfg)
    b = integrate_omega(form11, 2, 1 + 1j, 1j, cfg)
    assert np.max(np.abs(a + b)) < 1e-13
    direct, detour = integrate_with_detour(form11, 0, 1j, 1 + 1j, cfg)
    assert np.max(np.abs(direct - detour)) < 1e-10


def test_integral_equals_eichler_difference(form11):
    lam = EichlerIntegral(form11)
    z0, z1 = 0.1 + 0.2j, -0.3 + 0.6j
    val = integrate_omega(form11, 0, z0, z1)[0]
    assert abs(val - (lam(z1) - lam(z0))) < 1e-10


def test_period_map_examples(form11, group11):
    pm = PeriodMap(group11, form11, 0)
    assert np.all(pm({Word(): 1.0}, 0.2 + 0.5j) == 0)
    p1 = group11.letter("p1")
    assert np.linalg.norm(pm(minus_one(p1), 0.2 + 0.5j)) < 1e-8


def test_period_map_weight_mismatch(form11, group11):
    with pytest.raises(InputError):
        PeriodMap(group11, form11, 2)


def test_shriek(form11, group11):
    pts = [0.1 + 0.3j, -0.2 + 0.45j]
    for _, m in group11.generators:
        assert shriek_residual(form11, m, 0, pts) < 1e-9


# ---------------------------------------------------------------- whole suite


def test_suite_passes(suite11):
    failed = [(c.name, c.computed) for c in suite11.checks if not c.passed]
    assert not failed


def test_suite_rank_and_singular_values(checks11):
    c = checks11["cocycle_rank"]
    assert c.computed == 2
    assert min(c.detail["singular_values"]) > 1e-6


def test_periods_match_known_lattice(suite11, form11):
    # real period of 11a1 is 1.26920930427955; half of it shows up on g1
    table = next(t for t in suite11.tables if t.form == "f" and t.order == 1)
    vals = sorted(abs(v[0]) for k, v in table.entries.items() if k not in table.parabolic)
    assert any(abs(v - 1.26920930427955 / 2) < 1e-8 for v in vals)


def test_a_linearity_reports_coverage(checks11):
    c = checks11["a_linearity_G"]
    assert c.passed
    assert c.detail["combinations_checked"] > 100


def test_lambda_parabolic_phase(form11):
    assert cmath.isclose(EichlerIntegral(form11)(2j + 1), EichlerIntegral(form11)(2j), abs_tol=1e-14)
