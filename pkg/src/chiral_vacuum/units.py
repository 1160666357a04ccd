"""Physical constants and unit conversions.

All constants are CODATA 2018 recommended values (SI defining constants
where exact).  The library computes internally in natural units with
hbar = c = 1: energies in eV, lengths in 1/eV.  Public interfaces speak
eV, meV, nm and K; conversions happen here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# --- SI defining constants (exact) ---
E_CHARGE = 1.602176634e-19          # C
PLANCK_H = 6.62607015e-34           # J s
HBAR = PLANCK_H / (2.0 * math.pi)   # J s
C_LIGHT = 299792458.0               # m/s
BOLTZMANN_J = 1.380649e-23          # J/K

# --- CODATA 2018 measured values ---
BOHR_RADIUS = 5.29177210903e-11     # m
BOHR_MAGNETON = 9.2740100783e-24    # J/T
FINE_STRUCTURE = 7.2973525693e-3
RYDBERG_EV = 13.605693122994        # eV
EPSILON_0 = 8.8541878128e-12        # F/m
MU_0 = 1.25663706212e-6             # N/A^2
ELECTRON_MASS = 9.1093837015e-31    # kg
ATOMIC_MASS_EV = 9.3149410242e8     # eV, energy equivalent of 1 u

# --- derived ---
BOLTZMANN_EV = BOLTZMANN_J / E_CHARGE       # eV/K
HBARC_EV_NM = HBAR * C_LIGHT / E_CHARGE * 1e9   # eV nm; 1 eV^-1 of length = HBARC_EV_NM nm
BOHR_RADIUS_NM = BOHR_RADIUS * 1e9


class UnitError(ValueError):
    """Raised when a conversion is requested between incompatible units."""


@dataclass(frozen=True)
class UnitSystem:
    """Constant table exposed as a single object.

    Attributes
    ----------
    e : float
        Elementary charge in C.
    a0 : float
        Bohr radius in m.
    mu_b : float
        Bohr magneton in J/T.
    alpha : float
        Fine-structure constant.
    e_ryd : float
        Rydberg energy in eV.
    k_b : float
        Boltzmann constant in eV/K.
    eps0, mu0 : float
        Vacuum permittivity (F/m) and permeability (N/A^2).
    c : float
        Speed of light in m/s.
    hbar : float
        Reduced Planck constant in J s.
    """

    e: float = E_CHARGE
    a0: float = BOHR_RADIUS
    mu_b: float = BOHR_MAGNETON
    alpha: float = FINE_STRUCTURE
    e_ryd: float = RYDBERG_EV
    k_b: float = BOLTZMANN_EV
    eps0: float = EPSILON_0
    mu0: float = MU_0
    c: float = C_LIGHT
    hbar: float = HBAR


UNITS = UnitSystem()

# unit name -> (dimension, scale to the dimension's base unit)
# bases: energy -> eV, length -> nm, temperature -> K
_UNIT_TABLE = {
    "eV": ("energy", 1.0),
    "meV": ("energy", 1e-3),
    "J": ("energy", 1.0 / E_CHARGE),
    "nm": ("length", 1.0),
    "m": ("length", 1e9),
    "1/eV": ("length", HBARC_EV_NM),
    "K": ("temperature", 1.0),
}


def convert(value: float, from_unit: str, to_unit: str) -> float:
    """Convert ``value`` between units of the same dimension.

    Supported units: eV, meV, J (energy); nm, m, 1/eV (length, where
    "1/eV" is the natural length hbar*c/E); K (temperature).

    Raises
    ------
    UnitError
        If a unit name is unknown or the dimensions differ.
    """
    try:
        dim_from, scale_from = _UNIT_TABLE[from_unit]
    except KeyError:
        raise UnitError(f"unknown unit {from_unit!r}; known: {sorted(_UNIT_TABLE)}") from None
    try:
        dim_to, scale_to = _UNIT_TABLE[to_unit]
    except KeyError:
        raise UnitError(f"unknown unit {to_unit!r}; known: {sorted(_UNIT_TABLE)}") from None
    if dim_from != dim_to:
        raise UnitError(
            f"cannot convert {from_unit!r} ({dim_from}) to {to_unit!r} ({dim_to})"
        )
    return value * scale_from / scale_to
