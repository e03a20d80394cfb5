import math

import numpy as np
import pytest

import oracles
from friable import dickman
from friable.errors import ArgumentError

# Frozen values of the 150-point Gauss-Legendre oracle (oracles.rho_quadrature),
# recomputed live in test_oracle_stability below.
RHO_ORACLE = {
    2.5: 0.1303195618322508,
    3.0: 0.04860838829113168,
    5.0: 0.0003547247004561452,
    10.0: 2.7701764643235473e-11,
}


def test_exact_on_initial_interval(rho_table):
    assert rho_table.eval(0.0) == 1.0
    assert rho_table.eval(0.5) == 1.0
    assert rho_table.eval(1.0) == 1.0
    grid = np.linspace(0.0, 1.0, 257)
    assert np.all(rho_table.eval(grid) == 1.0)


def test_closed_form_on_second_interval(rho_table):
    # the delay equation forces rho(u) = 1 - log u on [1, 2]
    for u in (1.1, 1.5, 1.9, 2.0):
        assert rho_table.eval(u) == pytest.approx(1.0 - math.log(u), abs=1e-12)


def test_quadrature_oracle_agreement(rho_table):
    for u, expected in RHO_ORACLE.items():
        assert abs(rho_table.eval(u) - expected) <= 1e-10


def test_oracle_stability():
    for u, frozen in RHO_ORACLE.items():
        live = oracles.rho_quadrature(u)
        assert abs(live - frozen) <= 1e-12 * max(1.0, abs(frozen))


def test_dde_residual(rho_table):
    _, residuals = dickman.dde_residual_grid(rho_table, 1000, 1.0, 20.0)
    assert residuals.size >= 998
    assert float(np.max(residuals)) <= 10.0 * rho_table.tol


def test_continuity_at_knots(rho_table):
    # adjacent pieces evaluated at the same knot
    from numpy.polynomial.chebyshev import chebval

    assert abs(chebval(-1.0, rho_table.pieces[0]) - 1.0) <= rho_table.tol
    for k in range(2, 20):
        left = chebval(1.0, rho_table.pieces[k - 2])
        right = chebval(-1.0, rho_table.pieces[k - 1])
        assert abs(left - right) <= rho_table.tol


def test_strictly_positive_and_decreasing(rho_table):
    grid = np.linspace(1.0, 20.0, 4001)
    vals = rho_table.eval(grid)
    assert np.all(vals > 0.0)
    assert np.all(np.diff(vals) < 0.0)
    for u in (1.5, 2.0, 3.0, 7.5, 12.0, 19.5):
        assert 0.0 < rho_table.eval(u) < rho_table.eval(u - 1.0)


def test_refinement_self_consistency(rho_table):
    finer = dickman.build_rho_table(20.0, rho_table.tol / 4.0)
    grid = np.linspace(0.0, 20.0, 2003)
    assert float(np.max(np.abs(rho_table.eval(grid) - finer.eval(grid)))) <= rho_table.tol


def test_fractional_u_max():
    t = dickman.build_rho_table(2.5, 1e-10)
    assert t.eval(2.5) == pytest.approx(RHO_ORACLE[2.5], abs=1e-10)
    with pytest.raises(ArgumentError):
        t.eval(2.6)


def test_module_level_rho_and_extension():
    assert dickman.rho(1.0) == 1.0
    assert dickman.rho(2.0) == pytest.approx(1.0 - math.log(2.0), abs=1e-10)
    assert dickman.rho(21.5) > 0.0  # triggers an extension past the default u_max
    arr = dickman.rho(np.array([0.5, 1.5, 3.0]))
    assert arr.shape == (3,)
    with pytest.raises(ArgumentError):
        dickman.rho(-0.5)
    with pytest.raises(ArgumentError):
        dickman.rho(50.5)


def test_build_argument_errors():
    with pytest.raises(ArgumentError):
        dickman.build_rho_table(0.5, 1e-10)
    with pytest.raises(ArgumentError):
        dickman.build_rho_table(51.0, 1e-10)
    with pytest.raises(ArgumentError):
        dickman.build_rho_table(10.0, 1e-15)
    with pytest.raises(ArgumentError):
        dickman.build_rho_table(10.0, 1e-5)


def test_eval_domain_errors(rho_table):
    with pytest.raises(ArgumentError):
        rho_table.eval(-0.1)
    with pytest.raises(ArgumentError):
        rho_table.eval(20.1)


def test_residual_grid_arguments(rho_table):
    with pytest.raises(ArgumentError):
        dickman.dde_residual_grid(rho_table, 100, 0.5, 5.0)
    with pytest.raises(ArgumentError):
        dickman.dde_residual_grid(rho_table, 100, 5.0, 25.0)
