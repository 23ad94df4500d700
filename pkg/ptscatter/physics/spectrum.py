"""Transmission sweeps and resonance (transmission maximum) extraction."""
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
import scipy.signal
from scipy.optimize import bisect, minimize_scalar

from ptscatter.error import InvalidParameterError, NoResonanceError, WindowError
from ptscatter.physics import DEFAULT_PROMINENCE, DEFAULT_WINDOW, HBAR2_OVER_2M, LOGGER
from ptscatter.physics.potential import DimerParams, LayeredPotential, build_dimer
from ptscatter.physics.scatter_core import TwoPortScattering, cascade, unitarity_defect

DEFAULT_POINTS = 4001
PEAK_XTOL = 1e-10
FWHM_XTOL = 1e-12

Transmission = Callable[[float], float]


@dataclass(frozen=True)
class SpectrumSweep:
    energies: np.ndarray
    transmission: np.ndarray
    reflection: np.ndarray
    transmission_prime: np.ndarray
    reflection_prime: np.ndarray
    defect_left: np.ndarray
    defect_right: np.ndarray
    smatrix: Optional[TwoPortScattering] = None
    potential: Optional[LayeredPotential] = None

    def __post_init__(self):
        if np.any(np.diff(self.energies) <= 0):
            raise InvalidParameterError("energy grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.energies)

    @classmethod
    def from_samples(cls, energies, transmission) -> "SpectrumSweep":
        """A sweep holding only T(E), for spectra that do not come from a cascade."""
        energies = np.asarray(energies, dtype=float)
        blank = np.full(energies.shape, np.nan)
        return cls(energies, np.asarray(transmission, dtype=float), blank, blank, blank, blank, blank)


@dataclass(frozen=True)
class Resonance:
    position: float
    height: float
    fwhm: float
    prominence: float

    def __post_init__(self):
        if not self.fwhm > 0:
            raise InvalidParameterError(f"resonance width must be positive, got {self.fwhm!r}")

    @property
    def q(self) -> float:
        return self.position / self.fwhm


def sweep(potential: LayeredPotential, e_min: float, e_max: float, n_points: int = DEFAULT_POINTS) -> SpectrumSweep:
    """Evaluate the cascade on a uniform grid inside the (V', V_b) band."""
    floor, ceiling = potential.energy_window()
    if not floor < e_min < e_max < ceiling:
        raise WindowError(
            f"energy window [{e_min!r}, {e_max!r}] must lie strictly inside ({floor!r}, {ceiling!r})",
        )
    if n_points < 3:
        raise InvalidParameterError(f"a sweep needs at least 3 points, got {n_points}")
    energies = np.linspace(e_min, e_max, n_points)
    s = cascade(potential, energies)
    defect_left, defect_right = unitarity_defect(s)
    LOGGER.debug("swept %d energies in [%.6g, %.6g] eV", n_points, e_min, e_max)
    return SpectrumSweep(
        energies,
        s.transmission,
        s.reflection,
        s.transmission_prime,
        s.reflection_prime,
        defect_left,
        defect_right,
        s,
        potential,
    )


def transmission_of(potential: LayeredPotential) -> Transmission:
    def transmission(energy: float) -> float:
        return float(cascade(potential, energy).transmission)

    return transmission


def grid_peaks(values: np.ndarray, prominence_min: float = DEFAULT_PROMINENCE):
    """Grid maxima whose prominence is at least ``prominence_min`` times max(values)."""
    top = float(np.max(values))
    if top <= 0:
        return np.array([], dtype=int), {"prominences": np.array([]), "left_bases": np.array([], dtype=int), "right_bases": np.array([], dtype=int)}
    return scipy.signal.find_peaks(values, prominence=prominence_min * top)


def count_peaks(potential: LayeredPotential, window: Tuple[float, float], n_points: int = DEFAULT_POINTS, prominence_min: float = DEFAULT_PROMINENCE) -> int:
    indices, _ = grid_peaks(sweep(potential, *window, n_points).transmission, prominence_min)
    return len(indices)


def find_peaks(
    sweep: SpectrumSweep,
    prominence_min: float = DEFAULT_PROMINENCE,
    transmission: Optional[Transmission] = None,
) -> List[Resonance]:
    """Prominent transmission maxima, refined on the continuous T(E).

    Positions come from golden-section search on the bracketing grid interval,
    widths from bisection on the half-prominence crossings.
    """
    if len(sweep) < 3:
        raise InvalidParameterError("peak search needs at least 3 sweep points")
    if transmission is None:
        if sweep.potential is None:
            raise InvalidParameterError("sweep has no potential; pass a transmission function")
        transmission = transmission_of(sweep.potential)

    energies, values = sweep.energies, sweep.transmission
    indices, properties = grid_peaks(values, prominence_min)
    resonances = []
    for idx, left_base, right_base in zip(indices, properties["left_bases"], properties["right_bases"]):
        position = _refine(transmission, energies[idx - 1], energies[idx], energies[idx + 1])
        height = transmission(position)
        base = max(values[left_base], values[right_base])
        prominence = height - base
        level = height - prominence / 2
        left = _crossing(transmission, level, energies, values, idx, left_base, position)
        right = _crossing(transmission, level, energies, values, idx, right_base, position)
        resonances.append(Resonance(position, height, right - left, prominence))
    return resonances


def resonance_pair(
    params: DimerParams,
    gamma: float,
    window: Tuple[float, float] = DEFAULT_WINDOW,
    n_points: int = DEFAULT_POINTS,
    prominence_min: float = DEFAULT_PROMINENCE,
    hbar2_over_2m: float = HBAR2_OVER_2M,
) -> Tuple[Resonance, Optional[Resonance]]:
    """The doublet at ``gamma``; ``upper`` is None once only one maximum survives."""
    potential = build_dimer(params.with_gamma(gamma), hbar2_over_2m)
    peaks = find_peaks(sweep(potential, *window, n_points), prominence_min)
    if not peaks:
        raise NoResonanceError("no transmission maximum in the window", gamma)
    if len(peaks) > 2:
        LOGGER.warning("%d maxima at gamma = %.6g eV; keeping the two most prominent", len(peaks), gamma)
        peaks = sorted(peaks, key=lambda peak: peak.prominence, reverse=True)[:2]
    peaks = sorted(peaks, key=lambda peak: peak.position)
    return peaks[0], peaks[1] if len(peaks) == 2 else None


def _refine(transmission: Transmission, lo: float, mid: float, hi: float) -> float:
    def negative(energy: float) -> float:
        return -transmission(energy)

    xtol = PEAK_XTOL / (2 * max(abs(mid), PEAK_XTOL))
    try:
        result = minimize_scalar(negative, bracket=(lo, mid, hi), method="golden", options={"xtol": xtol})
    except ValueError:
        # flat-topped grid maximum, no strict bracket
        result = minimize_scalar(negative, bounds=(lo, hi), method="bounded", options={"xatol": PEAK_XTOL})
    position = float(result.x)
    if not lo <= position <= hi:
        LOGGER.warning("peak refinement left its bracket at %.9g eV; keeping the grid maximum", position)
        return float(mid)
    return position


def _crossing(transmission, level, energies, values, start, stop, position) -> float:
    step = 1 if stop > start else -1
    inner = position
    j = start
    while values[j] >= level and j != stop:
        if step * (energies[j] - position) >= 0:
            inner = energies[j]
        j += step
    if values[j] >= level:
        return float(energies[j])
    return float(bisect(lambda energy: transmission(energy) - level, energies[j], inner, xtol=FWHM_XTOL))
