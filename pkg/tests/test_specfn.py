import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre

from hgstate.errors import DomainError
from hgstate.specfn import gen_binomial, laguerre, log_gen_binomial, vandermonde_identity_gap


def test_gen_binomial_zero_order_is_one():
    assert gen_binomial(2.5, 0) == 1.0
    assert gen_binomial(-7.3, 0) == 1.0


def test_gen_binomial_integer_case():
    assert gen_binomial(5, 2) == pytest.approx(10.0, rel=1e-14)


def test_gen_binomial_real_upper_argument():
    # 2.5 * 1.5 / 2
    assert gen_binomial(2.5, 2) == pytest.approx(1.875, rel=1e-14)


def test_gen_binomial_allows_negative_factors():
    # alpha < n - 1 is fine in the plain product route
    assert gen_binomial(1.0, 3) == pytest.approx(0.0, abs=1e-15)
    assert gen_binomial(0.5, 2) == pytest.approx(0.5 * -0.5 / 2, rel=1e-14)


@given(
    alpha=st.floats(min_value=-30.0, max_value=30.0, allow_nan=False),
    n=st.integers(min_value=1, max_value=30),
)
@settings(max_examples=200)
def test_gen_binomial_pascal_recurrence(alpha, n):
    lhs = gen_binomial(alpha, n)
    rhs = gen_binomial(alpha - 1.0, n) + gen_binomial(alpha - 1.0, n - 1)
    scale = max(abs(lhs), abs(gen_binomial(alpha - 1.0, n)),
                abs(gen_binomial(alpha - 1.0, n - 1)), 1.0)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_log_gen_binomial_basic_values():
    assert log_gen_binomial(10.0, 0).log_magnitude == 0.0
    assert log_gen_binomial(5.0, 2).log_magnitude == pytest.approx(math.log(10.0), rel=1e-14)


def test_log_gen_binomial_zero_flag_on_integer_truncation():
    out = log_gen_binomial(3.0, 4)
    assert out.zero_flag
    assert out.value() == 0.0


def test_log_gen_binomial_rejects_negative_factor_region():
    with pytest.raises(DomainError):
        log_gen_binomial(2.5, 4)


def test_log_gen_binomial_matches_plain_route():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(0, 60))
        alpha = float(n - 1 + rng.uniform(0.0, 200.0))
        plain = gen_binomial(alpha, n)
        if plain == 0.0 or not math.isfinite(plain):
            continue
        assert log_gen_binomial(alpha, n).value() == pytest.approx(plain, rel=1e-12)


def test_log_gen_binomial_against_exact_integer_coefficients():
    # exact big-integer binomials probe the extreme range alpha <= 1e6, n <= 200
    for alpha, n in [(10**6, 200), (10**6, 7), (123456, 150), (500, 200), (37, 36)]:
        exact_log = math.log(math.comb(alpha, n))
        got = log_gen_binomial(float(alpha), n).log_magnitude
        assert abs(got - exact_log) <= 1e-12 * max(1.0, abs(exact_log))


def test_laguerre_degree_zero_and_one():
    assert laguerre(0, 3.7, 9.9) == 1.0
    assert laguerre(1, 1.0, 2.0) == pytest.approx(0.0, abs=1e-15)


def test_laguerre_explicit_degree_two():
    # 1 - 2x + x^2/2 at x = 2
    assert laguerre(2, 0.0, 2.0) == pytest.approx(-1.0, rel=1e-14)


def test_laguerre_against_scipy():
    rng = np.random.default_rng(5)
    for _ in range(300):
        n = int(rng.integers(0, 120))
        alpha = float(rng.uniform(0.0, 60.0))
        x = float(rng.uniform(0.0, 50.0))
        ref = float(eval_genlaguerre(n, alpha, x))
        got = laguerre(n, alpha, x)
        assert got == pytest.approx(ref, rel=1e-9, abs=1e-9 * max(1.0, abs(ref)))


def test_laguerre_three_term_recurrence():
    rng = np.random.default_rng(17)
    for _ in range(200):
        n = int(rng.integers(1, 150))
        alpha = float(rng.uniform(0.0, 40.0))
        x = float(rng.uniform(0.0, 50.0))
        lhs = (n + 1) * laguerre(n + 1, alpha, x)
        rhs = (2 * n + 1 + alpha - x) * laguerre(n, alpha, x) - (n + alpha) * laguerre(n - 1, alpha, x)
        scale = max(abs(lhs), abs(rhs), 1.0)
        assert abs(lhs - rhs) <= 1e-10 * scale


def test_vandermonde_examples():
    assert vandermonde_identity_gap(3.0, 2.0, 2) == pytest.approx(0.0, abs=1e-12)
    assert vandermonde_identity_gap(2.5, 2.5, 1) == pytest.approx(0.0, abs=1e-12)
    assert vandermonde_identity_gap(5.0, 5.0, 0) == 0.0


def test_vandermonde_gap_is_relative_roundoff():
    rng = np.random.default_rng(23)
    for _ in range(100):
        m = int(rng.integers(0, 51))
        alpha = float(rng.uniform(m, 1e4))
        beta = float(rng.uniform(m, 1e4))
        gap = vandermonde_identity_gap(alpha, beta, m)
        rhs = log_gen_binomial(alpha + beta, m).value()
        assert gap <= 1e-10 * rhs
