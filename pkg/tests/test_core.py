import math

import numpy as np
import pytest

from chiral_vacuum import (
    MoleculeSpectrum,
    Thermal,
    Transition,
    bose_occupation,
    isotropic_average,
    random_rotations,
)
from chiral_vacuum.acceptance import oracle_mc_isotropic_average


# ---------------------------------------------------------------- types

def test_transition_rejects_nonpositive_gap():
    with pytest.raises(ValueError):
        Transition(0.0, 0.1)
    with pytest.raises(ValueError):
        Transition(-1.0, 0.1)


def test_molecule_needs_transitions():
    with pytest.raises(ValueError):
        MoleculeSpectrum(())


def test_mirror_negates_strengths_and_is_involution():
    mol = MoleculeSpectrum.from_lists([2.0, 3.5], [0.1, -0.04])
    mirrored = mol.mirror()
    assert [t.im_rot_strength for t in mirrored.transitions] == [-0.1, 0.04]
    assert [t.gap_ev for t in mirrored.transitions] == [2.0, 3.5]
    assert mirrored.mirror() == mol


def test_thermal_rejects_negative_temperature():
    with pytest.raises(ValueError):
        Thermal(-1.0)


def test_thermal_from_kbt():
    th = Thermal.from_kbt_ev(0.034)
    assert th.kbt_ev == pytest.approx(0.034, rel=1e-12)


# ------------------------------------------------------ bose occupation

def test_bose_zero_temperature_is_zero():
    assert bose_occupation(0.1, Thermal(0.0)) == 0.0


def test_bose_value_at_kbt_034():
    # 2 n_B(0.1/0.034) = 11% implies n_B ~ 0.0557
    n_b = bose_occupation(0.1, Thermal.from_kbt_ev(0.034))
    assert n_b == pytest.approx(0.0557, abs=1e-3)
    assert n_b == pytest.approx(0.05574722273070314, rel=1e-12)  # frozen


def test_bose_closed_form_at_log2():
    # beta omega = ln 2  =>  1/(2 - 1) = 1
    th = Thermal.from_kbt_ev(0.1 / math.log(2.0))
    assert bose_occupation(0.1, th) == pytest.approx(1.0, rel=1e-12)


def test_bose_rejects_nonpositive_omega():
    with pytest.raises(ValueError):
        bose_occupation(0.0, Thermal(300.0))
    with pytest.raises(ValueError):
        bose_occupation(-0.1, Thermal(300.0))


def test_bose_monotonic_in_omega_and_temperature():
    th = Thermal(300.0)
    omegas = np.linspace(0.01, 0.5, 25)
    vals = [bose_occupation(w, th) for w in omegas]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    temps = np.linspace(50.0, 800.0, 25)
    vals_t = [bose_occupation(0.1, Thermal(t)) for t in temps]
    assert all(b > a for a, b in zip(vals_t, vals_t[1:]))


def test_bose_no_overflow_for_huge_ratio():
    assert bose_occupation(100.0, Thermal(1.0)) == 0.0


# --------------------------------------------------- isotropic average

def test_aligned_unit_vectors_give_third():
    ex = [1.0, 0.0, 0.0]
    assert isotropic_average(ex, ex, ex, ex) == pytest.approx(1.0 / 3.0, rel=1e-15)


def test_orthogonal_dipoles_vanish():
    rng = np.random.default_rng(7)
    d = np.array([1.0, 2.0, 0.5])
    m = np.array([2.0, -1.0, 0.0])  # d.m = 0
    assert abs(np.dot(d, m)) < 1e-15
    for _ in range(5):
        e_f = rng.normal(size=3) + 1j * rng.normal(size=3)
        b_f = rng.normal(size=3) + 1j * rng.normal(size=3)
        assert isotropic_average(d, m, e_f, b_f) == 0.0


def test_parity_flip_and_bilinearity():
    rng = np.random.default_rng(11)
    d = rng.normal(size=3)
    m = rng.normal(size=3)
    e_f = rng.normal(size=3) + 1j * rng.normal(size=3)
    b_f = rng.normal(size=3) + 1j * rng.normal(size=3)
    base = isotropic_average(d, m, e_f, b_f)
    assert isotropic_average(-d, m, e_f, b_f) == pytest.approx(-base, rel=1e-12)
    assert isotropic_average(2.0 * d, m, e_f, b_f) == pytest.approx(2.0 * base, rel=1e-12)
    assert isotropic_average(d, m, 3.0 * e_f, b_f) == pytest.approx(3.0 * base, rel=1e-12)


def test_matches_monte_carlo_rotation_oracle():
    rng = np.random.default_rng(20260810)
    d = rng.normal(size=3)
    m = rng.normal(size=3)
    e_f = rng.normal(size=3) + 1j * rng.normal(size=3)
    b_f = rng.normal(size=3) + 1j * rng.normal(size=3)
    mc, sigma = oracle_mc_isotropic_average(d, m, e_f, b_f, 100_000, rng)
    exact = isotropic_average(d, m, e_f, b_f)
    assert abs(mc - exact) < 3.0 * sigma


def test_shape_validation():
    with pytest.raises(ValueError):
        isotropic_average([1.0, 2.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0])


# -------------------------------------------------------- rotations

def test_random_rotations_are_orthogonal_with_unit_determinant():
    rng = np.random.default_rng(3)
    rot = random_rotations(200, rng)
    eye = np.eye(3)
    for r in rot:
        assert np.allclose(r @ r.T, eye, atol=1e-12)
        assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)


def test_random_rotations_spread_uniformly():
    # a fixed vector rotated by Haar samples has zero mean direction
    rng = np.random.default_rng(5)
    rot = random_rotations(20_000, rng)
    imgs = rot @ np.array([0.0, 0.0, 1.0])
    assert np.linalg.norm(imgs.mean(axis=0)) < 0.02
