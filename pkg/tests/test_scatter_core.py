import numpy as np
import pytest
from conftest import free_potential

from ptscatter.error import InvalidParameterError, SingularInterfaceError
from ptscatter.physics.potential import LEAD, DimerParams, LayeredPotential, Region, build_dimer
from ptscatter.physics.scatter_core import (
    IDENTITY,
    PhaseSegment,
    cascade,
    classify_unitarity,
    interface_smatrix,
    star_combine,
    unitarity_defect,
)

ENERGIES = np.linspace(0.15, 0.30, 301)


def test_matched_interface_is_transparent():
    s = interface_smatrix(3.0, 3.0)
    assert s.r == 0 and s.r_prime == 0
    assert s.t == 1 and s.t_prime == 1


def test_interface_flux_balance():
    k_left, k_right = 2.0, 5.0
    s = interface_smatrix(k_left, k_right)
    assert abs(s.r) ** 2 + (k_right / k_left) * abs(s.t) ** 2 == pytest.approx(1.0, abs=1e-15)
    assert s.r_prime == -s.r


def test_interface_example_values():
    s = interface_smatrix(2.0, 1.0)
    assert s.r == pytest.approx(1 / 3, abs=1e-15)
    assert s.t == pytest.approx(4 / 3, abs=1e-15)
    assert s.r_prime == pytest.approx(-1 / 3, abs=1e-15)
    assert s.t_prime == pytest.approx(2 / 3, abs=1e-15)


def test_star_product_is_associative(rng):
    for _ in range(50):
        k = rng.uniform(0.5, 8.0, size=4) + 1j * rng.uniform(-0.3, 0.3, size=4)
        first, second = (PhaseSegment(k[i], rng.uniform(0.0, 1.0)) for i in (1, 2))
        a = interface_smatrix(k[0], k[1])
        b = interface_smatrix(k[1], k[2])
        c = interface_smatrix(k[2], k[3])
        left = star_combine(star_combine(a, first, b), second, c)
        right = star_combine(a, first, star_combine(b, second, c))
        np.testing.assert_allclose(left.matrix, right.matrix, rtol=1e-12, atol=1e-14)


def test_singular_interface():
    with pytest.raises(SingularInterfaceError):
        interface_smatrix(1.0, -1.0)


def test_negative_segment():
    with pytest.raises(InvalidParameterError):
        PhaseSegment(1.0, -0.1)


def test_star_with_identities_is_propagation():
    k, d = 4.0 + 0.5j, 0.3
    s = star_combine(IDENTITY, PhaseSegment(k, d), IDENTITY)
    assert s.r == 0 and s.r_prime == 0
    assert s.t == pytest.approx(np.exp(1j * k * d), abs=1e-15)
    assert s.t_prime == pytest.approx(np.exp(1j * k * d), abs=1e-15)


def test_free_space_cascade():
    potential = free_potential(1.0, 2.0)
    k = np.sqrt(ENERGIES / potential.hbar2_over_2m)
    s = cascade(potential, ENERGIES)
    np.testing.assert_allclose(s.r, 0, atol=1e-15)
    np.testing.assert_allclose(s.t, np.exp(3j * k), rtol=1e-13)


def test_scalar_and_array_energies_agree():
    dimer = build_dimer(DimerParams(gamma=0.01))
    s = cascade(dimer, ENERGIES)
    single = cascade(dimer, float(ENERGIES[17]))
    assert isinstance(single.t, complex)
    assert single.t == pytest.approx(s.t[17], rel=1e-14)
    assert s.matrix.shape == (2, 2, len(ENERGIES))


def test_hermitian_dimer_is_unitary():
    s = cascade(build_dimer(DimerParams()), ENERGIES)
    left, right = unitarity_defect(s)
    np.testing.assert_allclose(left, 0, atol=1e-12)
    np.testing.assert_allclose(right, 0, atol=1e-12)
    assert set(classify_unitarity(left)) == {"conserving"}


@pytest.mark.parametrize("gamma", [0.002, 0.01, 0.03])
def test_pt_dimer_generalised_unitarity(gamma):
    s = cascade(build_dimer(DimerParams(gamma=gamma)), ENERGIES)
    # reciprocity holds for any potential between identical leads
    np.testing.assert_allclose(s.t, s.t_prime, rtol=1e-10)
    # PT symmetry: |T - 1| = sqrt(R R')
    np.testing.assert_allclose(
        np.abs(s.transmission - 1),
        np.sqrt(s.reflection * s.reflection_prime),
        rtol=1e-8,
        atol=1e-12,
    )


def test_reversed_potential_swaps_sides():
    dimer = build_dimer(DimerParams(gamma=0.01))
    forward = cascade(dimer, ENERGIES)
    backward = cascade(dimer.reversed(), ENERGIES)
    np.testing.assert_allclose(backward.r, forward.r_prime, rtol=1e-11, atol=1e-14)
    np.testing.assert_allclose(backward.r_prime, forward.r, rtol=1e-11, atol=1e-14)
    np.testing.assert_allclose(backward.t, forward.t_prime, rtol=1e-11)


def test_absorbing_and_emitting_slabs():
    loss = LayeredPotential([LEAD, Region(0.5, 0.2, -0.5), LEAD])
    gain = loss.conjugated()
    assert classify_unitarity(unitarity_defect(cascade(loss, 1.0))[0]) == "absorbing"
    assert classify_unitarity(unitarity_defect(cascade(gain, 1.0))[0]) == "emitting"


def test_classify_unitarity_labels():
    labels = classify_unitarity(np.array([-1e-3, 0.0, 5e-11, 1e-3]))
    assert list(labels) == ["absorbing", "conserving", "conserving", "emitting"]
