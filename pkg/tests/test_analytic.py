import math

import numpy as np
import pytest
import sympy

import oracles
from friable import analytic, sieve
from friable.errors import ArgumentError, NumericError, ResourceError


# ---------------------------------------------------------------------------
# saddle point
# ---------------------------------------------------------------------------


def test_saddle_closed_form_root():
    # log 2 / (2^alpha - 1) = log 2 forces alpha = 1
    sp = analytic.solve_saddle_alpha(2, 2)
    assert sp.alpha == pytest.approx(1.0, abs=1e-11)
    assert sp.residual <= 1e-10 * math.log(2)


def test_saddle_definitional_residual():
    # whenever N = round(exp(LHS(1))), the root sits near 1 by construction
    primes = sieve.primes_up_to(50)
    lhs1 = analytic.saddle_lhs(1.0, primes)
    N = round(math.exp(lhs1))
    sp = analytic.solve_saddle_alpha(N, 50)
    assert abs(analytic.saddle_lhs(sp.alpha, primes) - math.log(N)) <= 1e-10 * math.log(N)


def test_saddle_longdouble_oracle():
    for N, y in [(10**4, 100.0), (10**3, 30.0), (10**6, 500.0)]:
        sp = analytic.solve_saddle_alpha(N, y)
        assert abs(sp.alpha - oracles.saddle_longdouble(N, y)) <= 1e-9


def test_saddle_lhs_strictly_decreasing():
    primes = sieve.primes_up_to(100)
    grid = np.linspace(0.05, 8.0, 60)
    vals = [analytic.saddle_lhs(a, primes) for a in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_saddle_monotone_in_N_and_y():
    ns = [10**3, 10**4, 10**5, 10**6, 10**7]
    ys = [20.0, 50.0, 100.0, 300.0, 1000.0]
    alphas = {(n, y): analytic.solve_saddle_alpha(n, y).alpha for n in ns for y in ys}
    for y in ys:
        col = [alphas[(n, y)] for n in ns]
        assert all(a >= b for a, b in zip(col, col[1:]))  # nonincreasing in N
    for n in ns:
        row = [alphas[(n, y)] for y in ys]
        assert all(a <= b for a, b in zip(row, row[1:]))  # nondecreasing in y


def test_saddle_argument_errors():
    with pytest.raises(ArgumentError):
        analytic.solve_saddle_alpha(1, 10)
    with pytest.raises(ArgumentError):
        analytic.solve_saddle_alpha(10, 1.5)


# ---------------------------------------------------------------------------
# singular series S0
# ---------------------------------------------------------------------------


def test_s0_vanishing_at_alpha_one():
    # (p - p^alpha)^3 = 0 at alpha = 1: only the sifted product remains
    got = analytic.singular_series_s0(1.0, 100.0, 10**5)
    primes = sieve.primes_up_to(10**5)
    big = primes[primes > 100].astype(float)
    expected = float(np.prod(1.0 - 1.0 / (big - 1.0) ** 2))
    assert got.value == pytest.approx(expected, rel=1e-12)
    assert analytic.singular_series_s0(1.0, 7.0, 7).value == 1.0


def test_s0_direct_product_oracle():
    got = analytic.singular_series_s0(0.8, 100.0, 10**6)
    direct = oracles.s0_direct_product(0.8, 100.0, 10**6)
    assert got.value == pytest.approx(direct, rel=1e-12)


def test_s0_order_independence():
    value = analytic.singular_series_s0(0.9, 200.0, 10**5).value
    primes = sieve.primes_up_to(10**5).astype(float)[::-1]  # reversed order
    acc = 1.0
    for p in primes:
        if p <= 200.0:
            acc *= 1.0 + (p - p**0.9) ** 3 / (p * (p - 1) ** 2 * (p ** (3 * 0.9 - 1) - 1))
        else:
            acc *= 1.0 - 1.0 / (p - 1) ** 2
    assert value == pytest.approx(acc, rel=1e-12)


def test_s0_tail_bound_shrinks():
    t1 = analytic.singular_series_s0(0.9, 100.0, 10**4).tail_bound
    t2 = analytic.singular_series_s0(0.9, 100.0, 10**6).tail_bound
    assert t2 < t1
    assert t2 == pytest.approx(2.0 / 10**6)
    # the discarded factors really do live inside the bracket
    v1 = analytic.singular_series_s0(0.9, 100.0, 10**4).value
    v2 = analytic.singular_series_s0(0.9, 100.0, 10**6).value
    assert math.exp(-2 * t1) * v1 <= v2 <= v1


def test_s0_singularity_guard():
    with pytest.raises(NumericError):
        analytic.singular_series_s0(1.0 / 3.0, 10.0, 100)
    with pytest.raises(NumericError):
        analytic.singular_series_s0(1.0 / 3.0 + 5e-7, 10.0, 100)
    with pytest.raises(ArgumentError):
        analytic.singular_series_s0(0.5, 10.0, 5)


# ---------------------------------------------------------------------------
# singular series S1
# ---------------------------------------------------------------------------


def test_s1_exact_values():
    assert analytic.singular_series_s1(1.0) == pytest.approx(0.5, abs=1e-12)
    t1, t2 = sympy.symbols("t1 t2", positive=True)
    integrand = 8 * t1 * t2 * (t1 + t2)
    exact = sympy.integrate(sympy.integrate(integrand, (t2, 0, 1 - t1)), (t1, 0, 1))
    assert analytic.singular_series_s1(2.0) == pytest.approx(float(exact), abs=1e-12)


def test_s1_monte_carlo_oracle():
    est, se = oracles.mc_simplex_integral(0.9, 10**8, seed=42)
    got = analytic.singular_series_s1(0.9)
    assert abs(got - est) <= 3.0 * se


def test_s1_continuity_in_alpha():
    # steep but continuous towards the alpha = 1/3 divergence
    grid = np.linspace(0.5, 2.0, 32)
    vals = [analytic.singular_series_s1(a) for a in grid]
    diffs = np.abs(np.diff(vals))
    assert float(np.max(diffs)) < 0.1


def test_s1_arguments():
    with pytest.raises(ArgumentError):
        analytic.singular_series_s1(2.5)
    with pytest.raises(ArgumentError):
        analytic.singular_series_s1(1.0, tol=1e-13)
    with pytest.raises(NumericError):
        analytic.singular_series_s1(0.3)  # divergent region


# ---------------------------------------------------------------------------
# Harper prediction
# ---------------------------------------------------------------------------


def test_harper_prediction_positive():
    p = analytic.harper_prediction(10**3, 50.0)
    assert p > 0.0 and math.isfinite(p)


def test_harper_prediction_y_equals_N():
    N = 200
    sp = analytic.solve_saddle_alpha(N, float(N))
    s0 = analytic.singular_series_s0(sp.alpha, float(N), 10**6)
    s1 = analytic.singular_series_s1(sp.alpha)
    expected = s0.value * s1 * N**2  # Psi(N, N) = N
    assert analytic.harper_prediction(N, float(N)) == pytest.approx(expected, rel=1e-12)


def test_harper_argument_errors():
    with pytest.raises(ArgumentError):
        analytic.harper_prediction(10, 11.0)
    with pytest.raises(ArgumentError):
        analytic.harper_prediction(1, 2.0)


# ---------------------------------------------------------------------------
# sifted Mobius sums
# ---------------------------------------------------------------------------


def test_mobius_sum_u_one():
    assert analytic.sifted_mobius_sum(100, 1.0) == 1.0
    assert analytic.sifted_mobius_sum(10**4, 1.0) == 1.0


def test_mobius_sum_hand_enumeration():
    got = analytic.sifted_mobius_sum(100, 2.0)
    expected = math.fsum(
        m / k for k, m in oracles.sifted_squarefree(100, 10.0)
    )
    assert got == pytest.approx(expected, abs=1e-15)


def test_mobius_sum_near_rho(rho_table):
    rho2 = rho_table.eval(2.0)
    got = analytic.sifted_mobius_sum(10**6, 2.0)
    assert abs(got - rho2) <= 0.5 * rho2


def test_mu2_tail_examples():
    assert analytic.sifted_mu2_tail(10**4, 1.0, 0.2) == 0.0
    got = analytic.sifted_mu2_tail(10**4, 2.0, 0.2)
    cutoff = (10**4) ** 0.8
    expected = math.fsum(
        1.0 / k for k, _ in oracles.sifted_squarefree(10**4, 100.0) if k > cutoff
    )
    assert got == pytest.approx(expected, abs=1e-15)


def test_mu2_tail_growth_constant():
    # value <= C * tau * u^2 with a uniformly bounded C across the grid
    u, tau = 2.0, 0.2
    for N in (10**4, 10**5, 10**6):
        val = analytic.sifted_mu2_tail(N, u, tau)
        assert val <= 20.0 * tau * u * u


def test_mertens_argument_and_resource_errors():
    with pytest.raises(ArgumentError):
        analytic.sifted_mobius_sum(1, 2.0)
    with pytest.raises(ArgumentError):
        analytic.sifted_mobius_sum(100, 0.5)
    with pytest.raises(ResourceError):
        analytic.sifted_mobius_sum(2 * 10**8, 2.0)
    with pytest.raises(ArgumentError):
        analytic.sifted_mu2_tail(100, 2.0, 0.9)  # tau * u >= 1
    with pytest.raises(ArgumentError):
        analytic.sifted_mu2_tail(100, 2.0, 0.1)  # below 1/log N
