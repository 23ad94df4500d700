"""Doublet tracking versus gamma, exceptional point location and the splitting fit."""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from ptscatter.error import BracketError, InsufficientDataError, InvalidParameterError
from ptscatter.physics import (
    DEFAULT_PROMINENCE,
    DEFAULT_WINDOW,
    HBAR2_OVER_2M,
    LOGGER,
    SHOW_PROGRESS,
    WORKERS,
)
from ptscatter.physics.potential import DimerParams, build_dimer, gamma_to_big_gamma
from ptscatter.physics.spectrum import DEFAULT_POINTS, Resonance, count_peaks, resonance_pair

EXCLUSION = 0.05
MIN_FIT_POINTS = 5
DEFAULT_TOL_GAMMA = 1e-6
ABSCISSAS = ("gamma", "distance")


@dataclass(frozen=True)
class EpRecord:
    gamma: float
    big_gamma: float
    lower: Resonance
    upper: Optional[Resonance] = None

    @property
    def coalesced(self) -> bool:
        return self.upper is None

    @property
    def splitting(self) -> Optional[float]:
        if self.upper is None:
            return None
        return self.upper.position - self.lower.position


@dataclass(frozen=True)
class EpTrace:
    records: Tuple[EpRecord, ...]
    energy_ref: float
    v_prime: float = 0.0
    hbar2_over_2m: float = HBAR2_OVER_2M

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        gammas = self.gammas
        if np.any(np.diff(gammas) <= 0):
            raise InvalidParameterError("trace gammas must be strictly increasing")
        for record in self.records:
            if record.splitting is not None and not record.splitting > 0:
                raise InvalidParameterError(f"non-positive splitting at gamma = {record.gamma!r}")
        flags = [record.coalesced for record in self.records]
        first = self.coalescence_index
        if first is not None and not all(flags[first:]):
            LOGGER.warning("doublet reappears after coalescence at gamma = %.6g eV", gammas[first])

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def gammas(self) -> np.ndarray:
        return np.array([record.gamma for record in self.records], dtype=float)

    @property
    def big_gammas(self) -> np.ndarray:
        return np.array([record.big_gamma for record in self.records], dtype=float)

    @property
    def splittings(self) -> np.ndarray:
        """Splitting per record, NaN once coalesced."""
        return np.array(
            [np.nan if record.splitting is None else record.splitting for record in self.records],
            dtype=float,
        )

    @property
    def coalescence_index(self) -> Optional[int]:
        for index, record in enumerate(self.records):
            if record.coalesced:
                return index
        return None


@dataclass(frozen=True)
class EpLocation:
    gamma_ep: float
    big_gamma_ep: float
    bracket: Tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class PowerLawFit:
    """splitting = A * x^B, x set by ``abscissa``."""

    A: float
    B: float
    residual: float
    gamma_range: Tuple[float, float]
    n_points: int
    abscissa: str = "gamma"

    def __call__(self, x):
        return self.A * np.asarray(x, dtype=float) ** self.B


def hermitian_reference_energy(
    params: DimerParams,
    window: Tuple[float, float] = DEFAULT_WINDOW,
    n_points: int = DEFAULT_POINTS,
    prominence_min: float = DEFAULT_PROMINENCE,
    hbar2_over_2m: float = HBAR2_OVER_2M,
) -> float:
    """Mean of the gamma = 0 doublet, the energy at which Gamma is reported."""
    lower, upper = resonance_pair(params, 0.0, window, n_points, prominence_min, hbar2_over_2m)
    if upper is None:
        return lower.position
    return 0.5 * (lower.position + upper.position)


def trace(
    params: DimerParams,
    gamma_grid: Sequence[float],
    window: Tuple[float, float] = DEFAULT_WINDOW,
    n_points: int = DEFAULT_POINTS,
    prominence_min: float = DEFAULT_PROMINENCE,
    energy_ref: Optional[float] = None,
    hbar2_over_2m: float = HBAR2_OVER_2M,
    workers: int = WORKERS,
) -> EpTrace:
    """Resonance pair at every gamma of ``gamma_grid``, which must start at 0."""
    gamma_grid = [float(gamma) for gamma in gamma_grid]
    if not gamma_grid or gamma_grid[0] != 0:
        raise InvalidParameterError("gamma grid must start at 0")

    pairs = Parallel(n_jobs=workers, prefer="threads")(
        delayed(resonance_pair)(params, gamma, window, n_points, prominence_min, hbar2_over_2m)
        for gamma in tqdm(gamma_grid, desc="gamma", disable=not SHOW_PROGRESS)
    )
    if energy_ref is None:
        lower, upper = pairs[0]
        energy_ref = lower.position if upper is None else 0.5 * (lower.position + upper.position)

    records = [
        EpRecord(gamma, gamma_to_big_gamma(abs(gamma), energy_ref, params.v_prime, hbar2_over_2m), lower, upper)
        for gamma, (lower, upper) in zip(gamma_grid, pairs)
    ]
    result = EpTrace(records, energy_ref, params.v_prime, hbar2_over_2m)
    LOGGER.info(
        "traced %d gammas, coalescence at index %s (E_ref %.6g eV)",
        len(result),
        result.coalescence_index,
        energy_ref,
    )
    return result


def locate_ep(
    params: DimerParams,
    gamma_lo: float,
    gamma_hi: float,
    tol_gamma: float = DEFAULT_TOL_GAMMA,
    window: Tuple[float, float] = DEFAULT_WINDOW,
    n_points: int = DEFAULT_POINTS,
    prominence_min: float = DEFAULT_PROMINENCE,
    energy_ref: Optional[float] = None,
    hbar2_over_2m: float = HBAR2_OVER_2M,
) -> EpLocation:
    """Bisect on the number of grid transmission maxima until the 2 -> 1 step is pinned."""
    if not tol_gamma > 0:
        raise InvalidParameterError(f"tol_gamma must be positive, got {tol_gamma!r}")

    def peaks_at(gamma: float) -> int:
        potential = build_dimer(params.with_gamma(gamma), hbar2_over_2m)
        return count_peaks(potential, window, n_points, prominence_min)

    counts = (peaks_at(gamma_lo), peaks_at(gamma_hi))
    if counts != (2, 1):
        raise BracketError(f"expected (2, 1) peaks at the bracket ends, got {counts}", counts)

    lo, hi = float(gamma_lo), float(gamma_hi)
    iterations = 0
    while hi - lo >= tol_gamma:
        mid = 0.5 * (lo + hi)
        if peaks_at(mid) >= 2:
            lo = mid
        else:
            hi = mid
        iterations += 1
        LOGGER.debug("EP bracket [%.12g, %.12g]", lo, hi)

    gamma_ep = 0.5 * (lo + hi)
    if energy_ref is None:
        energy_ref = hermitian_reference_energy(params, window, n_points, prominence_min, hbar2_over_2m)
    big_gamma_ep = gamma_to_big_gamma(gamma_ep, energy_ref, params.v_prime, hbar2_over_2m)
    LOGGER.info("EP at gamma = %.10g eV (Gamma = %.6g) after %d bisections", gamma_ep, big_gamma_ep, iterations)
    return EpLocation(gamma_ep, big_gamma_ep, (lo, hi), iterations)


def fit_power_law(
    trace: EpTrace,
    gamma_ep: Optional[float] = None,
    exclusion: float = EXCLUSION,
    abscissa: str = "gamma",
    big_gamma_ep: Optional[float] = None,
) -> PowerLawFit:
    """Least squares on the logs of the pre-coalescence splittings.

    ``abscissa="gamma"`` regresses against Gamma itself, ``"distance"`` against
    Gamma_EP - Gamma. Records with gamma above (1 - exclusion) * gamma_EP are
    dropped when ``gamma_ep`` is given.
    """
    if abscissa not in ABSCISSAS:
        raise InvalidParameterError(f"abscissa must be one of {ABSCISSAS}, got {abscissa!r}")

    records = [record for record in trace if record.splitting is not None]
    if gamma_ep is not None:
        records = [record for record in records if record.gamma <= (1 - exclusion) * gamma_ep]

    if abscissa == "distance":
        if big_gamma_ep is None:
            if gamma_ep is None:
                raise InvalidParameterError("distance fit needs gamma_ep or big_gamma_ep")
            big_gamma_ep = gamma_to_big_gamma(gamma_ep, trace.energy_ref, trace.v_prime, trace.hbar2_over_2m)
        x = np.array([big_gamma_ep - record.big_gamma for record in records])
    else:
        x = np.array([record.big_gamma for record in records])
    y = np.array([record.splitting for record in records])
    usable = (x > 0) & (y > 0)
    x, y = x[usable], y[usable]
    gammas = [record.gamma for record, keep in zip(records, usable) if keep]
    if len(x) < MIN_FIT_POINTS:
        raise InsufficientDataError(f"need {MIN_FIT_POINTS} usable points for the fit, got {len(x)}")

    log_x, log_y = np.log(x), np.log(y)
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residual = float(np.sqrt(np.mean((log_y - (intercept + slope * log_x)) ** 2)))
    fit = PowerLawFit(float(np.exp(intercept)), float(slope), residual, (min(gammas), max(gammas)), len(x), abscissa)
    LOGGER.info("power law (%s): A = %.6g, B = %.6g, rms %.3g over %d points", abscissa, fit.A, fit.B, residual, len(x))
    return fit


def ep_fit_grid(gamma_ep: float, n: int = 12, span: float = 0.5, exclusion: float = EXCLUSION) -> np.ndarray:
    """0 followed by ``n`` gammas clustered geometrically towards gamma_EP.

    The points cover [(1 - span), (1 - exclusion)] * gamma_EP.
    """
    if not 0 < exclusion < span < 1:
        raise InvalidParameterError(f"need 0 < exclusion < span < 1, got {exclusion!r}, {span!r}")
    if n < 1:
        raise InvalidParameterError(f"n must be positive, got {n}")
    distances = np.geomspace(span, exclusion, n)
    return np.concatenate(([0.0], gamma_ep * (1 - distances)))


def gamma_grid(values: Iterable[float]) -> np.ndarray:
    """Sorted, de-duplicated gammas with 0 prepended when missing."""
    grid = np.unique(np.abs(np.asarray(list(values), dtype=float)))
    if grid.size == 0 or grid[0] != 0:
        grid = np.concatenate(([0.0], grid))
    return grid
