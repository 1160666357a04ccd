"""Command-line front end.

Exit codes: 0 success, 1 physics/domain error (including partial sweep
failures), 2 configuration error.
"""

from __future__ import annotations

import math
import sys
from typing import Optional

import numpy as np

from . import acceptance
from .cavity import (
    CavityMode,
    CavityModeSet,
    PolarizedEnsemble,
    cavity_shift_report,
    debye_shift_per_molecule,
    thermal_ratio_debye,
)
from .config import ConfigError, RunConfig, parse_config, usage
from .core import MoleculeSpectrum, Thermal
from .kinetics import ReactionProfile, selectivity, selectivity_tst, tst_activation, \
    zero_point_frequency_shift
from .output import Column, SweepOutput, render
from .pasteur import PasteurMaterial, QuadratureConfig, QuadratureError, \
    energy_unit_mev, halfspace_sweep, length_unit_nm


def _echo(config: RunConfig) -> list:
    return sorted(config.raw.items())


class _Builder:
    """Wraps domain-object construction so invariant violations surface as
    configuration errors (exit code 2) rather than runtime physics errors."""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, ValueError) \
                and not isinstance(exc, ConfigError):
            raise ConfigError(str(exc)) from exc
        return False


def _build_molecule(config: RunConfig) -> MoleculeSpectrum:
    return MoleculeSpectrum.from_lists(config["molecule.gap_ev"],
                                       config["molecule.im_rot_strength"])


def _build_modes(config: RunConfig) -> CavityModeSet:
    detailed = config["cavity.modes_detailed"]
    if detailed:
        modes = []
        for entry in detailed:
            missing = {"omega_ev", "veff_nm3", "chirality_factor"} - set(entry)
            if missing:
                raise ConfigError(f"mode entry is missing {sorted(missing)}",
                                  key="cavity.modes_detailed")
            modes.append(CavityMode(**entry))
        return CavityModeSet(tuple(modes))
    return CavityModeSet.uniform(config["cavity.modes"], config["cavity.veff_nm3"],
                                 config["cavity.chirality_factor"])


def _build_quadrature(config: RunConfig) -> QuadratureConfig:
    return QuadratureConfig(
        rel_tol=config["quad.rel_tol"],
        abs_tol=config["quad.abs_tol"],
        max_subdivisions=config["quad.max_subdivisions"],
        inner_cutoff_epsilon=config["quad.inner_cutoff_epsilon"],
        outer_scheme=config["quad.outer_scheme"],
    )


def _z_grid(config: RunConfig) -> list:
    explicit = config["sweep.z_list"].strip()
    if explicit:
        return [float(p) for p in explicit.split(",") if p.strip()]
    n = config["sweep.z_points"]
    lo, hi = config["sweep.z_min"], config["sweep.z_max"]
    if n < 1:
        raise ConfigError("z_points must be >= 1", key="sweep.z_points")
    if config["sweep.z_scale"] == "log":
        if lo <= 0:
            raise ConfigError("log spacing needs z_min > 0", key="sweep.z_min")
        return list(np.geomspace(lo, hi, n))
    return list(np.linspace(lo, hi, n))


def _run_pasteur(config: RunConfig) -> tuple[SweepOutput, int]:
    with _Builder():
        molecule = _build_molecule(config)
        material = PasteurMaterial(config["material.eps_r"], config["material.mu_r"],
                                   config["material.kappa"])
        cfg = _build_quadrature(config)
        grid = _z_grid(config)
        if any(z <= 0 for z in grid):
            raise ConfigError("z grid must be positive", key="sweep.z_list")

    results = halfspace_sweep(grid, molecule, material, cfg)
    any_failed = any(r.warning is not None for r in results)
    columns = [
        Column("z_over_zunit", "z_unit"),
        Column("shift_over_Eunit", "E_unit"),
        Column("shift_meV", "meV"),
        Column("nonretarded_over_Eunit", "E_unit"),
        Column("quad_error", "E_unit"),
    ]
    if any_failed:
        columns.append(Column("error_flag", "dimensionless"))
    rows = []
    for r in results:
        row = [r.z_over_zunit, r.shift_eunit, r.shift_mev,
               r.nonretarded_eunit, r.error_eunit]
        if any_failed:
            row.append(1 if r.warning else 0)
        rows.append(tuple(row))
    notes = [
        ("energy_unit_meV", energy_unit_mev(molecule)),
        ("length_unit_nm", length_unit_nm(molecule)),
    ]
    out = SweepOutput("pasteur", _echo(config), tuple(columns), rows, notes)
    return out, (1 if any_failed else 0)


def _run_cavity(config: RunConfig) -> tuple[SweepOutput, int]:
    with _Builder():
        molecule = _build_molecule(config)
        modes = _build_modes(config)
        thermal = Thermal(config["thermal.temperature_k"])

    report = cavity_shift_report(modes, molecule, None, thermal)
    columns = (
        Column("mode_index", "dimensionless"),
        Column("omega_eV", "eV"),
        Column("chirality_factor", "dimensionless"),
        Column("veff_nm3", "nm^3"),
        Column("london_T0_meV", "meV"),
        Column("london_thermal_ratio", "dimensionless"),
        Column("london_meV", "meV"),
        Column("resonant", "dimensionless"),
    )
    rows = [
        (i, m.omega_ev, m.chirality_factor, m.veff_nm3, m.london_t0_ev * 1e3,
         m.london_thermal_ratio, m.london_ev * 1e3, 1 if m.resonant else 0)
        for i, m in enumerate(report.per_mode, 1)
    ]
    notes = [
        ("temperature_K", thermal.temperature_k),
        ("london_total_T0_meV", report.london_total_t0_ev * 1e3),
        ("london_total_meV", report.london_total_ev * 1e3),
        ("resonant_modes", report.resonant_count),
    ]
    return SweepOutput("cavity", _echo(config), columns, rows, notes), 0


def _run_debye(config: RunConfig) -> tuple[SweepOutput, int]:
    with _Builder():
        modes = _build_modes(config)
        ensemble_base = PolarizedEnsemble(config["ensemble.d00"],
                                          config["ensemble.m00"], 1)
        thermal = Thermal(config["thermal.temperature_k"])
        n_list = config["sweep.n_list"]
        if not n_list:
            raise ConfigError("n_list must not be empty", key="sweep.n_list")
        ensembles = [PolarizedEnsemble(config["ensemble.d00"],
                                       config["ensemble.m00"], n) for n in n_list]

    # per-mode thermal ratios; the T=0 per-mode term is frequency independent
    def corrected(ens: PolarizedEnsemble) -> float:
        return math.fsum(
            debye_shift_per_molecule(CavityModeSet((m,)), ens)
            * thermal_ratio_debye(m.omega_ev, thermal)
            for m in modes.modes
        )

    rows = []
    for ens in ensembles:
        pm_t0 = debye_shift_per_molecule(modes, ens)
        pm = corrected(ens)
        rows.append((ens.n_molecules, pm_t0 * 1e3, pm * 1e3,
                     pm_t0 * ens.n_molecules * 1e3, pm * ens.n_molecules * 1e3))
    columns = (
        Column("n_molecules", "dimensionless"),
        Column("per_molecule_T0_meV", "meV"),
        Column("per_molecule_meV", "meV"),
        Column("total_T0_meV", "meV"),
        Column("total_meV", "meV"),
    )
    base_ratio = corrected(ensemble_base) / debye_shift_per_molecule(modes, ensemble_base) \
        if debye_shift_per_molecule(modes, ensemble_base) != 0.0 else 1.0
    notes = [
        ("temperature_K", thermal.temperature_k),
        ("thermal_enhancement", base_ratio),
    ]
    return SweepOutput("debye", _echo(config), columns, rows, notes), 0


def _run_selectivity(config: RunConfig) -> tuple[SweepOutput, int]:
    with _Builder():
        grid = config["sweep.delta_e_mev"]
        temps = [Thermal(t_k) for t_k in config["thermal.temperatures"]]
        if any(t.temperature_k <= 0 for t in temps):
            raise ConfigError("temperatures must be positive",
                              key="thermal.temperatures")
    rows = [
        (de, t.temperature_k, selectivity(de, t))
        for de in grid for t in temps
    ]
    columns = (
        Column("delta_e_meV", "meV"),
        Column("temperature_K", "K"),
        Column("p_chi", "dimensionless"),
    )
    return SweepOutput("selectivity", _echo(config), columns, rows, []), 0


def _run_tst(config: RunConfig) -> tuple[SweepOutput, int]:
    with _Builder():
        profile = ReactionProfile(
            barrier_ev=config["profile.barrier_ev"],
            omega_nu_ev=config["profile.omega_nu_ev"],
            curvature_b_ev3=config["profile.curvature_b_ev3"],
            mass_amu=config["profile.mass_amu"],
        )
        temps = [Thermal(t_k) for t_k in config["thermal.temperatures"]]
        if any(t.temperature_k <= 0 for t in temps):
            raise ConfigError("temperatures must be positive",
                              key="thermal.temperatures")
    e_a = tst_activation(profile)
    d_omega = zero_point_frequency_shift(profile)
    rows = [
        (de, t.temperature_k, selectivity(de, t), e_a, d_omega,
         selectivity_tst(de, profile, t))
        for de in config["sweep.delta_e_mev"] for t in temps
    ]
    columns = (
        Column("delta_e_meV", "meV"),
        Column("temperature_K", "K"),
        Column("p_chi", "dimensionless"),
        Column("e_a_eV", "eV"),
        Column("delta_omega_eV", "eV"),
        Column("p_chi_tst", "dimensionless"),
    )
    return SweepOutput("tst", _echo(config), columns, rows, []), 0


def _run_verify(config: RunConfig) -> tuple[SweepOutput, int]:
    results = acceptance.run_all()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.index}. {r.name}: {r.detail}")
    rows = [(r.index, 1 if r.passed else 0) for r in results]
    columns = (Column("criterion", "dimensionless"), Column("passed", "dimensionless"))
    notes = [(f"criterion_{r.index}", f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
             for r in results]
    code = 0 if all(r.passed for r in results) else 1
    return SweepOutput("verify", _echo(config), columns, rows, notes), code


_RUNNERS = {
    "pasteur": _run_pasteur,
    "cavity": _run_cavity,
    "debye": _run_debye,
    "selectivity": _run_selectivity,
    "tst": _run_tst,
    "verify": _run_verify,
}


def run(config: RunConfig) -> tuple[SweepOutput, int]:
    """Dispatch a resolved configuration to its command implementation."""
    return _RUNNERS[config.command](config)


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        print(usage())
        return 0 if argv else 2

    try:
        config = parse_config(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        out, code = run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    text = render(out, config["output.format"])
    path = config["output.path"]
    if path == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"config error: cannot write {path!r}: {exc}", file=sys.stderr)
            return 2
    return code


if __name__ == "__main__":
    raise SystemExit(main())
