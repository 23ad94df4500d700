"""Direct boundary matching of plane waves, and sampled wavefunctions.

In region 0 (the left lead) psi = a e^{ikx} + b e^{-ikx}; in every other
region psi = b e^{ikx} + a e^{-ikx}, with x the global abscissa of
``LayeredPotential.interfaces``. The linear system is assembled in
coordinates local to each region and converted afterwards, which keeps it
well conditioned inside evanescent barriers.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from ptscatter.error import DegenerateError, InvalidParameterError, SingularSystemError
from ptscatter.physics import LOGGER
from ptscatter.physics.potential import LayeredPotential

CONDITION_LIMIT = 1e13
LEAD_PADDING = 0.2
SYMMETRIC_THRESHOLD = 0.9
ANTISYMMETRIC_THRESHOLD = 0.1
NORM_FLOOR = 1e-30
UNIT_LENGTH = 1.0


@dataclass(frozen=True)
class RegionAmplitudes:
    potential: LayeredPotential
    energy: float
    k: np.ndarray
    a: np.ndarray
    b: np.ndarray
    interfaces: np.ndarray
    incidence: str = "left"

    @property
    def forward(self) -> np.ndarray:
        """Coefficients of e^{ikx} per region."""
        return np.concatenate((self.a[:1], self.b[1:]))

    @property
    def backward(self) -> np.ndarray:
        """Coefficients of e^{-ikx} per region."""
        return np.concatenate((self.b[:1], self.a[1:]))

    # lead amplitudes at the outer interfaces, the S-matrix reference planes
    @property
    def _incoming(self) -> Tuple[complex, complex]:
        k, x = self.k, self.interfaces
        return self.a[0] * np.exp(1j * k[0] * x[0]), self.a[-1] * np.exp(-1j * k[-1] * x[-1])

    @property
    def _outgoing(self) -> Tuple[complex, complex]:
        k, x = self.k, self.interfaces
        return self.b[0] * np.exp(-1j * k[0] * x[0]), self.b[-1] * np.exp(1j * k[-1] * x[-1])

    @property
    def reflection(self) -> complex:
        """r (left incidence) or r' (right incidence)."""
        side = 0 if self.incidence == "left" else 1
        return complex(self._outgoing[side] / self._incoming[side])

    @property
    def transmission(self) -> complex:
        """t (left incidence) or t' (right incidence)."""
        side = 0 if self.incidence == "left" else 1
        return complex(self._outgoing[1 - side] / self._incoming[side])

    def region_of(self, x) -> np.ndarray:
        return np.searchsorted(self.interfaces, x, side="right")

    def evaluate(self, x, region=None) -> Tuple[np.ndarray, np.ndarray]:
        """psi and dpsi/dx at ``x``; ``region`` forces the branch used."""
        x = np.asarray(x, dtype=float)
        region = self.region_of(x) if region is None else np.broadcast_to(region, x.shape)
        k = self.k[region]
        right = self.forward[region] * np.exp(1j * k * x)
        left = self.backward[region] * np.exp(-1j * k * x)
        return right + left, 1j * k * (right - left)


@dataclass(frozen=True)
class SampledWavefunction:
    x: np.ndarray
    psi: np.ndarray
    region: np.ndarray
    energy: float = float("nan")

    def __post_init__(self):
        if np.any(np.diff(self.x) <= 0):
            raise InvalidParameterError("wavefunction grid must be strictly increasing")
        if not np.all(np.isfinite(self.psi)):
            raise InvalidParameterError("wavefunction samples must be finite")

    @property
    def max_amplitude(self) -> float:
        return float(np.max(np.abs(self.psi)))


def solve_amplitudes(
    potential: LayeredPotential,
    energy: float,
    incidence: str = "left",
) -> RegionAmplitudes:
    """Match psi and psi' at every interface for a unit wave arriving from one lead.

    Left incidence fixes a_1 = 1, a_N = 0; right incidence a_1 = 0, a_N = 1.
    """
    if incidence not in ("left", "right"):
        raise InvalidParameterError(f"incidence must be 'left' or 'right', got {incidence!r}")
    energy = float(energy)
    if not np.isfinite(energy):
        raise InvalidParameterError("energy must be finite")

    n = len(potential)
    k = potential.wavenumbers(energy)
    x = potential.interfaces()
    # local origin: right edge of the left lead, left edge of every other region
    origin = np.concatenate(([x[0]], x))
    offset = np.array([0.0] + [region.width for region in potential.interior] + [0.0])

    size = 2 * (n - 1)

    def column(region: int, forward: bool):
        if region == 0:
            return None if forward else 0
        if region == n - 1:
            return size - 1 if forward else None
        return 2 * region - 1 if forward else 2 * region

    known = {(0, True): 1.0} if incidence == "left" else {(n - 1, False): 1.0}

    matrix = np.zeros((size, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)
    for j in range(n - 1):
        for region, s, sign in ((j, offset[j], 1.0), (j + 1, 0.0, -1.0)):
            for forward in (True, False):
                direction = 1.0 if forward else -1.0
                factor = np.exp(direction * 1j * k[region] * s)
                value = sign * factor
                slope = sign * direction * 1j * k[region] * factor
                col = column(region, forward)
                if col is not None:
                    matrix[2 * j, col] += value
                    matrix[2 * j + 1, col] += slope
                elif (region, forward) in known:
                    rhs[2 * j] -= value * known[region, forward]
                    rhs[2 * j + 1] -= slope * known[region, forward]

    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise SingularSystemError("matching matrix is numerically singular", condition)
    solution = scipy.linalg.solve(matrix, rhs)

    forward_local = np.zeros(n, dtype=complex)
    backward_local = np.zeros(n, dtype=complex)
    for (region, forward), value in known.items():
        (forward_local if forward else backward_local)[region] = value
    for region in range(n):
        for forward, store in ((True, forward_local), (False, backward_local)):
            col = column(region, forward)
            if col is not None:
                store[region] = solution[col]

    forward_global = forward_local * np.exp(-1j * k * origin)
    backward_global = backward_local * np.exp(1j * k * origin)
    # unit incoming amplitude, global phase convention
    if incidence == "left":
        scale = 1.0 / forward_global[0]
    else:
        scale = 1.0 / backward_global[-1]
    forward_global *= scale
    backward_global *= scale

    a = np.concatenate((forward_global[:1], backward_global[1:]))
    b = np.concatenate((backward_global[:1], forward_global[1:]))
    LOGGER.debug("solved %d-region matching at E = %.6g eV (cond %.2e)", n, energy, condition)
    return RegionAmplitudes(potential, energy, k, a, b, x, incidence)


def sample_wavefunction(
    amps: RegionAmplitudes,
    n_points: int,
    padding: float = LEAD_PADDING,
) -> SampledWavefunction:
    """psi on a uniform grid over the interior plus ``padding`` nm of each lead."""
    if n_points < 2 * len(amps.potential):
        raise InvalidParameterError(
            f"need at least 2 points per region ({2 * len(amps.potential)}), got {n_points}",
        )
    x = np.linspace(amps.interfaces[0] - padding, amps.interfaces[-1] + padding, n_points)
    region = amps.region_of(x)
    psi, _ = amps.evaluate(x, region)
    return SampledWavefunction(x, psi, region, amps.energy)


def symmetry_score(wf: SampledWavefunction, center: float = 0.0) -> float:
    """Even fraction of Re psi about ``center`` after fixing the global phase.

    The phase is chosen so that sum(psi^2) is real and non-negative; 1 means
    purely even, 0 purely odd.
    """
    norm = np.sqrt(np.sum(np.abs(wf.psi) ** 2))
    if norm < NORM_FLOOR:
        raise DegenerateError(f"wavefunction norm {norm:.3e} is too small to classify")
    square = np.sum(wf.psi ** 2)
    aligned = (wf.psi * np.exp(-0.5j * np.angle(square))).real
    mirrored = np.interp(2 * center - wf.x, wf.x, aligned)
    even = np.sum((0.5 * (aligned + mirrored)) ** 2)
    odd = np.sum((0.5 * (aligned - mirrored)) ** 2)
    return float(even / (even + odd))


def classify_symmetry(score: float) -> str:
    if score > SYMMETRIC_THRESHOLD:
        return "symmetric"
    if score < ANTISYMMETRIC_THRESHOLD:
        return "antisymmetric"
    return "mixed"


def continuity_residual(amps: RegionAmplitudes) -> float:
    """Worst jump of psi (plus psi' times one nm) across an interface, relative to max |psi| there."""
    j = np.arange(len(amps.interfaces))
    psi_left, slope_left = amps.evaluate(amps.interfaces, j)
    psi_right, slope_right = amps.evaluate(amps.interfaces, j + 1)
    scale = max(np.max(np.abs(psi_left)), np.max(np.abs(psi_right)))
    if scale == 0:
        return 0.0
    jumps = np.abs(psi_left - psi_right) + np.abs(slope_left - slope_right) * UNIT_LENGTH
    return float(np.max(jumps) / scale)
