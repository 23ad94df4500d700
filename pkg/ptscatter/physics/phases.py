"""Eigenvalues of the S-matrix, complex eigenphases and Argand trajectories."""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ptscatter.error import InvalidParameterError, ZeroEigenvalueError
from ptscatter.physics import DEFAULT_WINDOW, HBAR2_OVER_2M, LOGGER
from ptscatter.physics.potential import DimerParams, build_dimer
from ptscatter.physics.scatter_core import TwoPortScattering
from ptscatter.physics.spectrum import DEFAULT_POINTS, Resonance, SpectrumSweep, sweep

BRANCHES = ("branch1", "branch2")
JUMP_FACTOR = 10.0
DEFAULT_BINS = 64
DOUBLET_WIDTHS = 2.0


@dataclass(frozen=True)
class EigenphasePair:
    lambda_plus: complex
    lambda_minus: complex

    @property
    def theta(self) -> complex:
        theta_re, theta_im = eigenphase_split(self.lambda_plus)
        return complex(theta_re, theta_im)

    @property
    def theta_prime(self) -> complex:
        theta_re, theta_im = eigenphase_split(self.lambda_minus)
        return complex(theta_re, theta_im)


@dataclass(frozen=True)
class ArgandTrace:
    """Both eigenvalue branches over an energy grid, columns ordered as ``labels``."""

    energies: np.ndarray
    eigenvalues: np.ndarray
    jumps: Tuple[int, ...] = ()
    labels: Tuple[str, str] = BRANCHES

    def __post_init__(self):
        if self.eigenvalues.shape != (len(self.energies), 2):
            raise InvalidParameterError(
                f"eigenvalues must have shape ({len(self.energies)}, 2), got {self.eigenvalues.shape}",
            )

    def __len__(self) -> int:
        return len(self.energies)

    @property
    def theta_re(self) -> np.ndarray:
        return eigenphase_split(self.eigenvalues)[0]

    @property
    def theta_im(self) -> np.ndarray:
        return eigenphase_split(self.eigenvalues)[1]

    @property
    def radius(self) -> np.ndarray:
        return np.abs(self.eigenvalues)


@dataclass(frozen=True)
class PhaseHistogram:
    edges: np.ndarray
    counts: np.ndarray
    labels: Tuple[str, str] = BRANCHES

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def eigenvalues(s: TwoPortScattering):
    """lambda_+- = ((r + r') +- sqrt((r - r')^2 + 4 t t')) / 2, principal root."""
    r, t = np.asarray(s.r, dtype=complex), np.asarray(s.t, dtype=complex)
    r_prime, t_prime = np.asarray(s.r_prime, dtype=complex), np.asarray(s.t_prime, dtype=complex)
    root = np.sqrt((r - r_prime) ** 2 + 4 * t * t_prime)
    plus = 0.5 * (r + r_prime + root)
    minus = 0.5 * (r + r_prime - root)
    if plus.ndim == 0:
        return complex(plus), complex(minus)
    return plus, minus


def eigenphase_pair(s: TwoPortScattering) -> EigenphasePair:
    return EigenphasePair(*eigenvalues(s))


def eigenphase_split(lam):
    """(theta_re, theta_im) with lambda = e^{i theta_re} e^{-theta_im} and theta_re in (-pi, pi]."""
    lam = np.asarray(lam, dtype=complex)
    magnitude = np.abs(lam)
    if np.any(magnitude == 0):
        raise ZeroEigenvalueError("eigenphase undefined for a zero eigenvalue")
    theta_re = np.angle(lam)
    theta_re = np.where(theta_re == -np.pi, np.pi, theta_re)
    theta_im = -np.log(magnitude)
    if theta_re.ndim == 0:
        return float(theta_re), float(theta_im)
    return theta_re, theta_im


def track_branches(energies: np.ndarray, plus: np.ndarray, minus: np.ndarray) -> ArgandTrace:
    """Pair eigenvalues between neighbouring energies by least total displacement."""
    lam = np.stack([np.asarray(plus, dtype=complex), np.asarray(minus, dtype=complex)], axis=1)
    for i in range(1, len(lam)):
        previous = lam[i - 1]
        keep = abs(lam[i, 0] - previous[0]) + abs(lam[i, 1] - previous[1])
        swap = abs(lam[i, 1] - previous[0]) + abs(lam[i, 0] - previous[1])
        if swap < keep:
            lam[i] = lam[i, ::-1]

    jumps: List[int] = []
    if len(lam) > 2:
        steps = np.abs(np.diff(lam, axis=0)).max(axis=1)
        median = np.median(steps)
        if median > 0:
            jumps = [int(i) + 1 for i in np.flatnonzero(steps > JUMP_FACTOR * median)]
    if jumps:
        LOGGER.warning(
            "eigenvalue branches jump at %d energies, first at %.6g eV",
            len(jumps),
            energies[jumps[0]],
        )
    return ArgandTrace(np.asarray(energies, dtype=float), lam, tuple(jumps))


def eigenphase_curves(spectrum: SpectrumSweep) -> ArgandTrace:
    """theta_re and theta_im of both branches along a cascade sweep."""
    if spectrum.smatrix is None:
        raise InvalidParameterError("sweep carries no S-matrix samples")
    plus, minus = eigenvalues(spectrum.smatrix)
    return track_branches(spectrum.energies, plus, minus)


def trace_argand(
    params: DimerParams,
    gamma: float,
    window: Tuple[float, float] = DEFAULT_WINDOW,
    n_points: int = DEFAULT_POINTS,
    hbar2_over_2m: float = HBAR2_OVER_2M,
) -> ArgandTrace:
    potential = build_dimer(params.with_gamma(gamma), hbar2_over_2m)
    return eigenphase_curves(sweep(potential, *window, n_points))


def phase_histogram(trace: ArgandTrace, n_bins: int = DEFAULT_BINS) -> PhaseHistogram:
    """Per-branch counts of theta_re in uniform bins over [-pi, pi]."""
    if n_bins < 2:
        raise InvalidParameterError(f"need at least 2 histogram bins, got {n_bins}")
    edges = np.linspace(-np.pi, np.pi, n_bins + 1)
    theta_re = trace.theta_re
    counts = np.stack([np.histogram(theta_re[:, branch], bins=edges)[0] for branch in (0, 1)], axis=1)
    return PhaseHistogram(edges, counts, trace.labels)


def fraction_near_pi(
    trace: ArgandTrace,
    radius: float = 0.5,
    energies: Optional[Tuple[float, float]] = None,
) -> float:
    """Share of theta_re samples, both branches, within ``radius`` of +-pi.

    ``energies`` restricts the count to samples inside that closed interval.
    """
    theta_re = trace.theta_re
    if energies is not None:
        lo, hi = energies
        grid = np.asarray(trace.energies)
        theta_re = theta_re[(grid >= lo) & (grid <= hi)]
    if theta_re.size == 0:
        raise InvalidParameterError(f"no eigenphase samples in {energies!r}")
    return float(np.mean(np.abs(theta_re) >= np.pi - radius))


def doublet_window(
    lower: Resonance,
    upper: Optional[Resonance] = None,
    widths: float = DOUBLET_WIDTHS,
) -> Tuple[float, float]:
    """Energies from ``widths`` FWHMs below the lower peak to as far above the upper one."""
    top = lower if upper is None else upper
    return lower.position - widths * lower.fwhm, top.position + widths * top.fwhm
