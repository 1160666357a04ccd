"""Molecular spectra, thermal state, and the isotropic orientation average."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .units import BOLTZMANN_EV


@dataclass(frozen=True)
class Transition:
    """One electronic transition from the ground state.

    Parameters
    ----------
    gap_ev : float
        Transition energy in eV, strictly positive.
    im_rot_strength : float
        Imaginary part of the rotatory strength in units of e*a0*mu_B
        (signed).
    """

    gap_ev: float
    im_rot_strength: float

    def __post_init__(self):
        if not self.gap_ev > 0.0:
            raise ValueError(f"transition gap must be positive, got {self.gap_ev}")


@dataclass(frozen=True)
class MoleculeSpectrum:
    """Electronic gaps and rotatory strengths of one molecular species."""

    transitions: tuple[Transition, ...]

    def __post_init__(self):
        if not self.transitions:
            raise ValueError("molecule needs at least one transition")

    @classmethod
    def two_level(cls, gap_ev: float, im_rot_strength: float) -> "MoleculeSpectrum":
        return cls((Transition(gap_ev, im_rot_strength),))

    @classmethod
    def from_lists(cls, gaps_ev, strengths) -> "MoleculeSpectrum":
        if len(gaps_ev) != len(strengths):
            raise ValueError("gap and rotatory-strength lists must have equal length")
        return cls(tuple(Transition(g, s) for g, s in zip(gaps_ev, strengths)))

    def mirror(self) -> "MoleculeSpectrum":
        """Return the mirror-image enantiomer: every rotatory strength negated."""
        return MoleculeSpectrum(
            tuple(Transition(t.gap_ev, -t.im_rot_strength) for t in self.transitions)
        )


@dataclass(frozen=True)
class Thermal:
    """Thermal state of the photonic environment.

    ``temperature_k = 0`` is the distinct zero-temperature limit in which
    every Bose occupation vanishes.
    """

    temperature_k: float

    def __post_init__(self):
        if self.temperature_k < 0.0:
            raise ValueError(f"temperature must be >= 0 K, got {self.temperature_k}")

    @classmethod
    def from_kbt_ev(cls, kbt_ev: float) -> "Thermal":
        """Build from the thermal energy k_B*T given in eV."""
        if kbt_ev < 0.0:
            raise ValueError("k_B*T must be >= 0")
        return cls(kbt_ev / BOLTZMANN_EV)

    @property
    def kbt_ev(self) -> float:
        return BOLTZMANN_EV * self.temperature_k


def bose_occupation(omega_ev: float, thermal: Thermal) -> float:
    """Bose-Einstein occupation 1/(exp(omega/kT) - 1).

    Parameters
    ----------
    omega_ev : float
        Mode energy in eV, strictly positive.
    thermal : Thermal
        Temperature; T = 0 returns exactly 0.

    Returns
    -------
    float
        Mean occupation number.
    """
    if not omega_ev > 0.0:
        raise ValueError(f"omega must be positive, got {omega_ev}")
    if thermal.temperature_k == 0.0:
        return 0.0
    x = omega_ev / thermal.kbt_ev
    if x > 700.0:  # exp would overflow; occupation is below double precision anyway
        return 0.0
    return 1.0 / math.expm1(x)


def isotropic_average(d, m, e_field, b_field) -> float:
    """Orientation average of Re[(R d . E)(R m . B)] over rotations R.

    The exact SO(3) average collapses to Re[(d . m)(E . B)] / 3, which
    this evaluates directly.  ``d`` and ``m`` are real 3-vectors; the
    field vectors may be complex (plain bilinear dot, no conjugation).
    """
    d = np.asarray(d, dtype=float)
    m = np.asarray(m, dtype=float)
    e_field = np.asarray(e_field, dtype=complex)
    b_field = np.asarray(b_field, dtype=complex)
    for name, v in (("d", d), ("m", m), ("e_field", e_field), ("b_field", b_field)):
        if v.shape != (3,):
            raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    return float(np.real(np.dot(d, m) * np.dot(e_field, b_field)) / 3.0)


def random_rotations(n: int, rng: np.random.Generator) -> np.ndarray:
    """Sample ``n`` rotation matrices uniformly (Haar) on SO(3).

    Uses normalized random quaternions, which give the unbiased uniform
    measure.  Returns an array of shape (n, 3, 3).
    """
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    rot = np.empty((n, 3, 3))
    rot[:, 0, 0] = 1.0 - 2.0 * (y * y + z * z)
    rot[:, 0, 1] = 2.0 * (x * y - w * z)
    rot[:, 0, 2] = 2.0 * (x * z + w * y)
    rot[:, 1, 0] = 2.0 * (x * y + w * z)
    rot[:, 1, 1] = 1.0 - 2.0 * (x * x + z * z)
    rot[:, 1, 2] = 2.0 * (y * z - w * x)
    rot[:, 2, 0] = 2.0 * (x * z - w * y)
    rot[:, 2, 1] = 2.0 * (y * z + w * x)
    rot[:, 2, 2] = 1.0 - 2.0 * (x * x + y * y)
    return rot
