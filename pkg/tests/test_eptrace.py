import numpy as np
import pytest

from ptscatter.error import BracketError, InsufficientDataError, InvalidParameterError
from ptscatter.physics.eptrace import (
    EpRecord,
    EpTrace,
    ep_fit_grid,
    fit_power_law,
    gamma_grid,
    locate_ep,
    trace,
)
from ptscatter.physics.potential import DimerParams
from ptscatter.physics.spectrum import Resonance, resonance_pair


def _resonance(position):
    return Resonance(position, 1.0, 0.01, 0.9)


def synthetic_trace(big_gammas, splittings, gammas=None):
    gammas = big_gammas if gammas is None else gammas
    records = [
        EpRecord(g, x, _resonance(0.2), None if s is None else _resonance(0.2 + s))
        for g, x, s in zip(gammas, big_gammas, splittings)
    ]
    return EpTrace(records, 0.235)


def test_recovers_exact_power_law():
    x = np.geomspace(1e-4, 2e-2, 12)
    fit = fit_power_law(synthetic_trace(x, 0.061 * x ** 0.47))
    assert fit.A == pytest.approx(0.061, rel=1e-10)
    assert fit.B == pytest.approx(0.47, abs=1e-10)
    assert fit.residual < 1e-10
    assert fit.n_points == 12


def test_square_root_law():
    x = np.geomspace(1e-4, 2e-2, 8)
    fit = fit_power_law(synthetic_trace(x, 0.3 * np.sqrt(x)))
    assert fit.B == pytest.approx(0.5, abs=1e-10)


def test_distance_abscissa():
    edge = 0.02
    x = np.linspace(0.0, 0.018, 10)
    fit = fit_power_law(synthetic_trace(x, 0.2 * np.sqrt(edge - x)), abscissa="distance", big_gamma_ep=edge)
    assert fit.abscissa == "distance"
    assert fit.B == pytest.approx(0.5, abs=1e-10)
    assert fit.A == pytest.approx(0.2, rel=1e-10)


def test_exclusion_zone_drops_points_near_the_ep():
    gammas = np.linspace(0.01, 0.1, 10)
    x = gammas * 0.2
    splittings = list(0.061 * x ** 0.47)
    splittings[-1] *= 0.1  # merging peaks, inside 5% of gamma_EP = 0.1
    fit = fit_power_law(synthetic_trace(x, splittings, gammas), gamma_ep=0.1)
    assert fit.B == pytest.approx(0.47, abs=1e-10)
    assert fit.n_points == 9
    assert fit.gamma_range == pytest.approx((0.01, 0.09))


def test_coalesced_and_zero_gamma_records_are_skipped():
    x = np.concatenate(([0.0], np.geomspace(1e-3, 1e-2, 6), [0.011, 0.012]))
    splittings = [0.01, *(0.061 * np.geomspace(1e-3, 1e-2, 6) ** 0.47), None, None]
    fit = fit_power_law(synthetic_trace(x, splittings))
    assert fit.n_points == 6


def test_insufficient_data():
    x = np.geomspace(1e-3, 1e-2, 4)
    with pytest.raises(InsufficientDataError):
        fit_power_law(synthetic_trace(x, 0.1 * x))


def test_fit_options_validated():
    x = np.geomspace(1e-3, 1e-2, 6)
    with pytest.raises(InvalidParameterError):
        fit_power_law(synthetic_trace(x, 0.1 * x), abscissa="log")
    with pytest.raises(InvalidParameterError):
        fit_power_law(synthetic_trace(x, 0.1 * x), abscissa="distance")


def test_trace_gammas_strictly_increasing():
    with pytest.raises(InvalidParameterError):
        synthetic_trace([0.0, 0.02, 0.01], [0.05, 0.04, 0.03])


def test_coalescence_index():
    ep_trace = synthetic_trace([0.0, 0.01, 0.02, 0.03], [0.05, 0.03, None, None])
    assert ep_trace.coalescence_index == 2
    assert np.isnan(ep_trace.splittings[2])
    assert ep_trace.records[1].splitting == pytest.approx(0.03)


def test_fit_grid():
    grid = ep_fit_grid(0.02, 12, 0.5)
    assert grid[0] == 0.0
    assert len(grid) == 13
    assert np.all(np.diff(grid) > 0)
    assert grid[1] == pytest.approx(0.01)
    assert grid[-1] == pytest.approx(0.019)
    with pytest.raises(InvalidParameterError):
        ep_fit_grid(0.02, 12, 0.01)


def test_gamma_grid_helper():
    np.testing.assert_array_equal(gamma_grid([0.02, 0.01, 0.02]), [0.0, 0.01, 0.02])
    np.testing.assert_array_equal(gamma_grid([0.0, 0.01]), [0.0, 0.01])


def test_trace_grid_must_start_at_zero():
    with pytest.raises(InvalidParameterError):
        trace(DimerParams(), [0.01, 0.02])


def test_bracket_error_without_coalescence():
    with pytest.raises(BracketError) as excinfo:
        locate_ep(DimerParams(), 0.0, 1e-6, tol_gamma=1e-7)
    assert excinfo.value.counts == (2, 2)


@pytest.mark.slow
def test_locate_ep_converges(ep_bracket):
    lo, hi = ep_bracket
    coarse = locate_ep(DimerParams(), lo, hi, tol_gamma=1e-4)
    fine = locate_ep(DimerParams(), lo, hi, tol_gamma=1e-5)
    assert lo < coarse.gamma_ep < hi
    assert abs(coarse.gamma_ep - fine.gamma_ep) < 1e-4
    assert fine.bracket[1] - fine.bracket[0] < 1e-5
    assert fine.big_gamma_ep > 0


@pytest.mark.slow
def test_locate_ep_grid_resolution(ep_bracket):
    lo, hi = ep_bracket
    tol = 1e-5
    base = locate_ep(DimerParams(), lo, hi, tol_gamma=tol, n_points=4001)
    doubled = locate_ep(DimerParams(), lo, hi, tol_gamma=tol, n_points=8001)
    assert abs(base.gamma_ep - doubled.gamma_ep) < 2 * tol


@pytest.mark.slow
def test_splitting_shrinks_towards_the_ep(ep_bracket):
    lo, hi = ep_bracket
    location = locate_ep(DimerParams(), lo, hi, tol_gamma=1e-5)
    grid = [0.0, *(location.gamma_ep * np.array([0.25, 0.5, 0.75, 0.95])), hi]
    ep_trace = trace(DimerParams(), grid)
    splittings = ep_trace.splittings[:-1]
    assert np.all(splittings > 0)
    assert np.all(np.diff(splittings) < 0)
    assert ep_trace.records[-1].coalesced
    assert ep_trace.coalescence_index == len(grid) - 1
    assert ep_trace.big_gammas[0] == 0.0


@pytest.mark.slow
def test_reference_dimer_ep(ep_location):
    assert ep_location.gamma_ep == pytest.approx(0.010848, abs=5e-6)
    # the gamma -> Gamma map as given puts the EP an order of magnitude
    # below the published Gamma = 0.0266 (see DESIGN.md)
    assert ep_location.big_gamma_ep == pytest.approx(0.00205, rel=0.02)


@pytest.mark.slow
def test_reference_dimer_splitting_exponents(ep_location):
    ep_trace = trace(DimerParams(), ep_fit_grid(ep_location.gamma_ep))
    fit = fit_power_law(ep_trace, ep_location.gamma_ep)
    distance = fit_power_law(
        ep_trace, ep_location.gamma_ep, abscissa="distance", big_gamma_ep=ep_location.big_gamma_ep,
    )
    # peak positions, not eigenvalues: the splitting shrinks with Gamma and
    # closes faster than a square root towards the merge
    assert fit.B == pytest.approx(-0.928, abs=0.02)
    assert distance.B == pytest.approx(0.253, abs=0.02)
    assert distance.A == pytest.approx(0.117, rel=0.05)


@pytest.mark.slow
def test_lower_height_rises_through_the_merge(ep_location):
    fractions = (0.0, 0.25, 0.5, 0.75, 0.95, 1.1)
    heights = [resonance_pair(DimerParams(), f * ep_location.gamma_ep)[0].height for f in fractions]
    assert np.all(np.diff(heights) > 0)
    np.testing.assert_allclose(heights, [1.000, 1.054, 1.256, 1.812, 3.291, 9.150], rtol=0.03)
    assert resonance_pair(DimerParams(), 1.1 * ep_location.gamma_ep)[1] is None
