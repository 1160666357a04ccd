"""Chiral Casimir-Polder shift above a half-space Pasteur material.

The shift is evaluated on the imaginary frequency axis.  With the
molecule a distance z above the surface, the orientation-averaged
shift per transition is the reduced double integral

    <dE(z)> = mu0/(3 pi^2 z^2) * sum_i w_i0 ImR_i0
              * int_0^inf x^3 dx / ((w_i0 z)^2 + x^2)
              * int_1^inf dc' exp(-2 x c') (c'^2 - 1) r(c')

where r(c') is the real-valued cross-polarization reflection
coefficient on the imaginary axis (r_sp = i r, r_ps = -r_sp) and
x = xi*z.  Everything here is computed in the dimensionless scaled
variables; physical energies are restored at the edges via the scale

    E_scale = mu0 * ImR_10 * E_10^3 / (3 pi^2)      (per first transition)
    z_scale = 1 / E_10.

All distances passed to the shift routines are multiples of z_scale;
shift values are returned in multiples of E_scale and converted to meV
in :class:`HalfspaceResult`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad

from .core import MoleculeSpectrum
from .units import E_CHARGE, HBAR, C_LIGHT, MU_0, BOHR_RADIUS, BOHR_MAGNETON, HBARC_EV_NM


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge.

    Carries the partial result and its error estimate so that sweeps can
    report the point instead of discarding it.
    """

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class PasteurMaterial:
    """Half-space bi-isotropic medium with parity-breaking parameter kappa.

    The relative parameter kappa_r = kappa / sqrt(eps_r * mu_r) must lie
    in [-1, 1].
    """

    eps_r: float = 1.0
    mu_r: float = 1.0
    kappa: float = 0.0

    def __post_init__(self):
        if not self.eps_r > 0.0:
            raise ValueError(f"eps_r must be positive, got {self.eps_r}")
        if not self.mu_r > 0.0:
            raise ValueError(f"mu_r must be positive, got {self.mu_r}")
        if abs(self.kappa_r) > 1.0:
            raise ValueError(
                f"relative Pasteur parameter {self.kappa_r} outside [-1, 1]"
            )

    @property
    def kappa_r(self) -> float:
        return self.kappa / math.sqrt(self.eps_r * self.mu_r)

    @property
    def impedance_ratio(self) -> float:
        """eta / eta0 = sqrt(mu_r / eps_r)."""
        return math.sqrt(self.mu_r / self.eps_r)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for the adaptive double quadrature.

    ``outer_scheme`` selects how the semi-infinite x integral is handled:
    "truncated" integrates up to the point where the exponential weight
    falls below ``inner_cutoff_epsilon``; "mapped" substitutes
    x = t/(1-t) onto (0, 1).  Both converge to the same value and are
    cross-validated in the test suite.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-14
    max_subdivisions: int = 200
    inner_cutoff_epsilon: float = 1e-16
    outer_scheme: str = "truncated"

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.inner_cutoff_epsilon > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be >= 10")
        if self.outer_scheme not in ("truncated", "mapped"):
            raise ValueError(f"unknown outer_scheme {self.outer_scheme!r}")

    @property
    def t_cutoff(self) -> float:
        """Upper limit in t = x*c' beyond which exp(-2t) < inner_cutoff_epsilon."""
        return -0.5 * math.log(self.inner_cutoff_epsilon)


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class HalfspaceResult:
    """One point of a half-space sweep, in scaled units and meV."""

    z_over_zunit: float
    shift_eunit: float
    shift_mev: float
    nonretarded_eunit: float
    nonretarded_mev: float
    error_eunit: float
    error_mev: float
    warning: Optional[str] = None


def reflection_cross(c_prime, material: PasteurMaterial):
    """Cross-polarization reflection coefficient r(c') on the imaginary axis.

    Defined through r_sp = i r with

        r = 2 eta0 eta c' (c'_+ - c'_-) / Delta',
        Delta' = (eta0^2 + eta^2) c' (c'_+ + c'_-)
                 + 2 eta0 eta (c'^2 + c'_+ c'_-),
        c'_{+-}^2 = 1 + (c'^2 - 1) / (eps_r mu_r (1 +- kappa_r)^2),

    with positive square roots.  Odd in kappa; identically zero for
    kappa = 0.  Accepts a scalar or ndarray c' >= 1.

    Parameters
    ----------
    c_prime : float or ndarray
        Imaginary-axis angle variable, >= 1.
    material : PasteurMaterial

    Returns
    -------
    float or ndarray
    """
    is_array = isinstance(c_prime, np.ndarray)
    if is_array:
        if np.any(c_prime < 1.0):
            raise ValueError("c_prime must be >= 1")
    elif c_prime < 1.0:
        raise ValueError(f"c_prime must be >= 1, got {c_prime}")
    kr = material.kappa_r
    if kr == 0.0:
        return np.zeros_like(c_prime) if is_array else 0.0
    sqrt = np.sqrt if is_array else math.sqrt
    eta = material.impedance_ratio
    t = (c_prime * c_prime - 1.0) / (material.eps_r * material.mu_r)
    cp = sqrt(1.0 + t / (1.0 + kr) ** 2)
    cm = sqrt(1.0 + t / (1.0 - kr) ** 2)
    num = 2.0 * eta * c_prime * (cp - cm)
    den = (1.0 + eta * eta) * c_prime * (cp + cm) + 2.0 * eta * (c_prime * c_prime + cp * cm)
    return num / den


def reflection_limit(material: PasteurMaterial) -> float:
    """Algebraic c' -> infinity limit of :func:`reflection_cross`.

    For eps_r = mu_r = 1 this reduces to -2 kappa / (4 - kappa^2).
    """
    kr = material.kappa_r
    if kr == 0.0:
        return 0.0
    n = math.sqrt(material.eps_r * material.mu_r)
    eta = material.impedance_ratio
    num = -4.0 * eta * kr * n
    den = 2.0 * (1.0 + eta * eta) * n + 2.0 * eta * (n * n * (1.0 - kr * kr) + 1.0)
    return num / den


def _quad_checked(func, lo, hi, cfg: QuadratureConfig, rel_scale=1.0, points=None):
    # rel_scale < 1 tightens the tolerance (used for the inner integral)
    kwargs = dict(
        epsabs=cfg.abs_tol * rel_scale,
        epsrel=cfg.rel_tol * rel_scale,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    if points:
        kwargs["points"] = points
    out = quad(func, lo, hi, **kwargs)
    val, err = out[0], out[1]
    if len(out) > 3:
        raise QuadratureError(str(out[3]), val, err)
    return val, err


def _g_kernel(x: float, material: PasteurMaterial, cfg: QuadratureConfig):
    """g(x) = int_x^T exp(-2t) (t^2 - x^2) r(t/x) dt, with t = x c'.

    Equals x^3 * int_1^inf dc' exp(-2 x c') (c'^2 - 1) r(c').  The t
    substitution keeps the integrand single-scale for every x, which is
    what makes the nested quadrature cheap.  Returns
    (value, error_estimate, failure_message_or_None); convergence
    failures are reported, not raised, so an enclosing outer quadrature
    can finish and attribute a meaningful partial result.
    """
    tmax = cfg.t_cutoff
    if x >= tmax:
        return 0.0, 0.0, None

    def integrand(t):
        return math.exp(-2.0 * t) * (t * t - x * x) * reflection_cross(t / x, material)

    try:
        val, err = _quad_checked(integrand, x, tmax, cfg, rel_scale=0.1)
        return val, err, None
    except QuadratureError as exc:
        return exc.value, exc.error_estimate, str(exc)


def trace_curl_green(xi_ev: float, z_inv_ev: float, material: PasteurMaterial,
                     cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Trace of the curl of the scattering Green's function at i*xi.

    The trace is purely imaginary on the imaginary axis; this returns its
    real coefficient V, where Tr(curl G)(i xi) = i V and

        V = -(xi^2 / 2 pi) int_1^inf dc' exp(-2 c' xi z) (c'^2 - 1) r(c').

    Parameters
    ----------
    xi_ev : float
        Imaginary frequency in eV, > 0.
    z_inv_ev : float
        Distance above the surface in natural length units 1/eV, > 0.
    material : PasteurMaterial
    cfg : QuadratureConfig

    Returns
    -------
    float
        V in eV^3.

    Raises
    ------
    QuadratureError
        On non-convergence; carries the partial value.
    """
    if not xi_ev > 0.0:
        raise ValueError(f"xi must be positive, got {xi_ev}")
    if not z_inv_ev > 0.0:
        raise ValueError(f"z must be positive, got {z_inv_ev}")
    x = xi_ev * z_inv_ev
    g, err, failure = _g_kernel(x, material, cfg)
    scale = -(xi_ev * xi_ev) / (2.0 * math.pi) / x**3
    if failure is not None:
        raise QuadratureError(failure, scale * g, abs(scale) * err)
    return scale * g


def _outer_integral(a: float, material: PasteurMaterial, cfg: QuadratureConfig):
    """I(a) = int_0^inf dx x^3/(a^2+x^2) * int_1^inf dc' e^{-2xc'}(c'^2-1) r(c').

    Returns (I, error_estimate).  The estimate combines the outer
    QUADPACK estimate with the worst relative error reported by the
    inner quadrature.
    """
    tmax = cfg.t_cutoff
    worst_inner = [0.0]
    inner_failures: list[str] = []

    def f(x):
        if x <= 0.0 or x >= tmax:
            return 0.0
        g, gerr, failure = _g_kernel(x, material, cfg)
        if failure is not None and len(inner_failures) < 3:
            inner_failures.append(failure)
        if g != 0.0:
            worst_inner[0] = max(worst_inner[0], abs(gerr / g))
        return g / (a * a + x * x)

    outer_failure = None
    try:
        if cfg.outer_scheme == "mapped":
            def f_mapped(t):
                x = t / (1.0 - t)
                return f(x) / (1.0 - t) ** 2

            pts = sorted({p / (1.0 + p) for p in (a, 3 * a, 10 * a, 30 * a, 100 * a, 300 * a)
                          if 0.0 < p < tmax})
            val, err = _quad_checked(f_mapped, 0.0, 1.0, cfg, points=pts)
        else:
            pts = sorted({p for p in (a, 3 * a, 10 * a, 30 * a, 100 * a, 300 * a)
                          if 0.0 < p < tmax})
            val, err = _quad_checked(f, 0.0, tmax, cfg, points=pts)
    except QuadratureError as exc:
        val, err, outer_failure = exc.value, exc.error_estimate, str(exc)

    estimate = err + abs(val) * worst_inner[0]
    if outer_failure is not None or inner_failures:
        message = outer_failure if outer_failure is not None \
            else f"inner quadrature: {inner_failures[0]}"
        raise QuadratureError(message, val, estimate)
    return val, estimate


def energy_unit_mev(molecule: MoleculeSpectrum) -> float:
    """Energy scale mu0 * ImR_10 * E_10^3 / (3 pi^2) of the first transition, in meV."""
    t = molecule.transitions[0]
    imr_si = t.im_rot_strength * E_CHARGE * BOHR_RADIUS * BOHR_MAGNETON
    gap_j = t.gap_ev * E_CHARGE
    e_unit_j = MU_0 * imr_si * gap_j**3 / (3.0 * math.pi**2 * HBAR**3 * C_LIGHT**2)
    return e_unit_j / E_CHARGE * 1e3


def length_unit_nm(molecule: MoleculeSpectrum) -> float:
    """Length scale 1/E_10 of the first transition, in nm."""
    return HBARC_EV_NM / molecule.transitions[0].gap_ev


def _transition_weights(molecule: MoleculeSpectrum):
    # weights and scaled gaps relative to the first transition
    t0 = molecule.transitions[0]
    out = []
    for t in molecule.transitions:
        gap_ratio = t.gap_ev / t0.gap_ev
        if t0.im_rot_strength != 0.0:
            weight = (t.im_rot_strength / t0.im_rot_strength) * gap_ratio**3
        else:
            weight = 0.0 if t.im_rot_strength == 0.0 else math.nan
        out.append((gap_ratio, weight))
    if any(math.isnan(w) for _, w in out):
        raise ValueError(
            "first transition has zero rotatory strength; the scaled energy "
            "unit is undefined for this spectrum"
        )
    return out


def _shift_scaled(z: float, molecule: MoleculeSpectrum, material: PasteurMaterial,
                  cfg: QuadratureConfig):
    """Shift and error estimate in units of the first transition's energy scale."""
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z}")
    total = 0.0
    total_err = 0.0
    failure = None
    for gap_ratio, weight in _transition_weights(molecule):
        if weight == 0.0:
            continue
        a = z * gap_ratio
        try:
            val, err = _outer_integral(a, material, cfg)
        except QuadratureError as exc:
            failure = exc
            val, err = exc.value, exc.error_estimate
        total += weight * val / (a * a)
        total_err += abs(weight) * err / (a * a)
    if failure is not None:
        raise QuadratureError(str(failure), total, total_err)
    return total, total_err


def chiral_shift_halfspace(z: float, molecule: MoleculeSpectrum,
                           material: PasteurMaterial,
                           cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Full orientation-averaged chiral shift at height z above the half-space.

    Parameters
    ----------
    z : float
        Distance in multiples of the length scale 1/E_10 of the first
        transition, > 0.
    molecule : MoleculeSpectrum
    material : PasteurMaterial
    cfg : QuadratureConfig

    Returns
    -------
    float
        Shift in multiples of the energy scale mu0 ImR_10 E_10^3/(3 pi^2);
        multiply by :func:`energy_unit_mev` for meV.  Linear in every
        rotatory strength and odd under kappa -> -kappa.

    Raises
    ------
    QuadratureError
        On non-convergence; carries the partial scaled value.
    """
    val, _ = _shift_scaled(z, molecule, material, cfg)
    return val


def chiral_shift_nonretarded(z: float, molecule: MoleculeSpectrum,
                             material: PasteurMaterial) -> float:
    """Closed-form short-distance (non-retarded) limit of the chiral shift.

    Equals (pi/8) r(inf) sum_i ImR_i0/ImR_10 / z^3 in the scaled units of
    :func:`chiral_shift_halfspace`; exact 1/z^3 scaling.
    """
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z}")
    t0 = molecule.transitions[0]
    if t0.im_rot_strength == 0.0:
        _transition_weights(molecule)  # raises if the unit is undefined
        return 0.0
    strength_sum = math.fsum(t.im_rot_strength for t in molecule.transitions)
    coeff = (math.pi / 8.0) * reflection_limit(material) * strength_sum / t0.im_rot_strength
    return coeff / z**3


def _sweep_threads() -> int:
    raw = os.environ.get("CHIRAL_VACUUM_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def halfspace_sweep(z_grid: Sequence[float], molecule: MoleculeSpectrum,
                    material: PasteurMaterial,
                    cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> list[HalfspaceResult]:
    """Evaluate the full and non-retarded shifts on a grid of distances.

    Per-point quadrature failures are reported in the ``warning`` field of
    the corresponding result instead of aborting the sweep.  Points are
    independent; the CHIRAL_VACUUM_THREADS environment variable caps the
    parallel fan-out (default serial).
    """
    if len(z_grid) == 0:
        raise ValueError("z grid must not be empty")
    e_mev = energy_unit_mev(molecule)

    def one(z: float) -> HalfspaceResult:
        warning = None
        try:
            val, err = _shift_scaled(z, molecule, material, cfg)
        except QuadratureError as exc:
            val, err = exc.value, exc.error_estimate
            warning = str(exc)
        nr = chiral_shift_nonretarded(z, molecule, material)
        return HalfspaceResult(
            z_over_zunit=z,
            shift_eunit=val,
            shift_mev=val * e_mev,
            nonretarded_eunit=nr,
            nonretarded_mev=nr * e_mev,
            error_eunit=err,
            error_mev=err * abs(e_mev),
            warning=warning,
        )

    threads = _sweep_threads()
    if threads > 1 and len(z_grid) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, z_grid))
    return [one(z) for z in z_grid]
