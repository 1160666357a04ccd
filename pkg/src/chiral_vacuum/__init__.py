"""Chirality-dependent vacuum energy shifts and enantioselective kinetics.

The package computes the parity-odd part of the vacuum-fluctuation
energy shift of molecules near two parity-broken environments (a
half-space Pasteur material and a gyrotropic cavity) and translates the
shifts into chirality-selective reaction-rate predictions.
"""

from .version import __version__
from .units import UNITS, UnitError, UnitSystem, convert
from .core import (
    MoleculeSpectrum,
    Thermal,
    Transition,
    bose_occupation,
    isotropic_average,
    random_rotations,
)
from .pasteur import (
    HalfspaceResult,
    PasteurMaterial,
    QuadratureConfig,
    QuadratureError,
    chiral_shift_halfspace,
    chiral_shift_nonretarded,
    energy_unit_mev,
    halfspace_sweep,
    length_unit_nm,
    reflection_cross,
    reflection_limit,
    trace_curl_green,
)
from .cavity import (
    CavityMode,
    CavityModeSet,
    CavityShiftReport,
    ModeReport,
    OutOfRegimeError,
    PolarizedEnsemble,
    cavity_shift_report,
    debye_shift_per_molecule,
    london_shift,
    thermal_ratio_debye,
    thermal_ratio_london,
)
from .kinetics import (
    ReactionProfile,
    SelectivityCurve,
    SelectivityPoint,
    selectivity,
    selectivity_sweep,
    selectivity_tst,
    tst_activation,
    zero_point_frequency_shift,
)

__all__ = [
    "__version__",
    "UNITS", "UnitError", "UnitSystem", "convert",
    "MoleculeSpectrum", "Thermal", "Transition",
    "bose_occupation", "isotropic_average", "random_rotations",
    "HalfspaceResult", "PasteurMaterial", "QuadratureConfig", "QuadratureError",
    "chiral_shift_halfspace", "chiral_shift_nonretarded", "energy_unit_mev",
    "halfspace_sweep", "length_unit_nm", "reflection_cross", "reflection_limit",
    "trace_curl_green",
    "CavityMode", "CavityModeSet", "CavityShiftReport", "ModeReport",
    "OutOfRegimeError", "PolarizedEnsemble", "cavity_shift_report",
    "debye_shift_per_molecule", "london_shift", "thermal_ratio_debye",
    "thermal_ratio_london",
    "ReactionProfile", "SelectivityCurve", "SelectivityPoint",
    "selectivity", "selectivity_sweep", "selectivity_tst",
    "tst_activation", "zero_point_frequency_shift",
]
