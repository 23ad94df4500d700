"""Piecewise-constant complex potentials and the PT-symmetric dimer builder.

Units throughout: energies in eV, lengths in nm, wavenumbers in 1/nm.
"""
import math
from dataclasses import dataclass, replace
from typing import Iterator, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from ptscatter.error import ConvergenceError, DomainError, InvalidParameterError
from ptscatter.physics import HBAR2_OVER_2M, LOGGER

ArrayLike = Union[float, np.ndarray]

GAMMA_RTOL = 1e-12
_BRACKET_DOUBLINGS = 200


@dataclass(frozen=True)
class Region:
    """One slab of constant potential V = potential_real + i*potential_imag.

    Leads are semi-infinite; they carry ``width = math.inf``.
    """

    width: float
    potential_real: float = 0.0
    potential_imag: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.potential_real) and math.isfinite(self.potential_imag)):
            raise InvalidParameterError(
                f"region potential must be finite, got {self.potential_real!r}, {self.potential_imag!r}",
            )
        if math.isnan(self.width) or self.width <= 0:
            raise InvalidParameterError(f"region width must be positive, got {self.width!r}")

    @property
    def potential(self) -> complex:
        return complex(self.potential_real, self.potential_imag)

    @property
    def is_lead(self) -> bool:
        return math.isinf(self.width)

    def conjugated(self) -> "Region":
        return replace(self, potential_imag=-self.potential_imag)


LEAD = Region(math.inf)


@dataclass(frozen=True)
class LayeredPotential:
    """Ordered regions, leads first and last, plus the kinetic unit constant."""

    regions: Tuple[Region, ...]
    hbar2_over_2m: float = HBAR2_OVER_2M

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        if len(self.regions) < 3:
            raise InvalidParameterError(
                f"need at least 3 regions (lead, scatterer, lead), got {len(self.regions)}",
            )
        for side, lead in (("left", self.regions[0]), ("right", self.regions[-1])):
            if lead.potential_real != 0 or lead.potential_imag != 0:
                raise InvalidParameterError(f"the {side} lead must have zero potential")
        for index, region in enumerate(self.regions[1:-1], start=1):
            if not math.isfinite(region.width):
                raise InvalidParameterError(f"interior region {index} must have a finite width")
        if not (math.isfinite(self.hbar2_over_2m) and self.hbar2_over_2m > 0):
            raise InvalidParameterError(
                f"hbar2_over_2m must be positive, got {self.hbar2_over_2m!r}",
            )

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self) -> Iterator[Region]:
        return iter(self.regions)

    def __getitem__(self, index: int) -> Region:
        return self.regions[index]

    @property
    def interior(self) -> Tuple[Region, ...]:
        return self.regions[1:-1]

    @property
    def length(self) -> float:
        return math.fsum(region.width for region in self.interior)

    def interfaces(self) -> np.ndarray:
        """Interface abscissas with the interior centred on x = 0."""
        widths = np.array([region.width for region in self.interior])
        return -0.5 * self.length + np.concatenate(([0.0], np.cumsum(widths)))

    def wavenumbers(self, energy: ArrayLike) -> np.ndarray:
        """Wavenumbers of every region, shape ``(len(self),) + np.shape(energy)``."""
        return np.stack(
            [np.asarray(wavenumber(region, energy, self.hbar2_over_2m)) for region in self.regions],
        )

    def energy_window(self) -> Tuple[float, float]:
        """Lowest and highest interior real potential, the band that holds resonances."""
        values = [region.potential_real for region in self.interior]
        return min(values), max(values)

    def reversed(self) -> "LayeredPotential":
        return replace(self, regions=tuple(reversed(self.regions)))

    def conjugated(self) -> "LayeredPotential":
        return replace(self, regions=tuple(region.conjugated() for region in self.regions))


@dataclass(frozen=True)
class DimerParams:
    """Geometry of the gain/loss dimer; defaults are the reference structure."""

    a: float = 1.15
    c: float = 0.01
    b: float = 0.02
    v_barrier: float = 50.0
    v_prime: float = 0.0
    gamma: float = 0.0

    def validate(self) -> "DimerParams":
        for name in ("a", "b", "c", "v_barrier", "v_prime", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        for name in ("a", "b", "c"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"width {name} must be positive, got {getattr(self, name)!r}")
        if self.v_barrier <= self.v_prime:
            raise InvalidParameterError(
                f"v_barrier ({self.v_barrier!r}) must exceed v_prime ({self.v_prime!r})",
            )
        return self

    def with_gamma(self, gamma: float) -> "DimerParams":
        return replace(self, gamma=float(gamma))

    @property
    def half_length(self) -> float:
        return self.a + self.b / 2 + self.c


def build_dimer(params: DimerParams, hbar2_over_2m: float = HBAR2_OVER_2M) -> LayeredPotential:
    """Seven regions: lead, barrier, loss well, barrier, gain well, barrier, lead."""
    params.validate()
    barrier_outer = Region(params.c, params.v_barrier)
    return LayeredPotential(
        (
            LEAD,
            barrier_outer,
            Region(params.a, params.v_prime, -params.gamma),
            Region(params.b, params.v_barrier),
            Region(params.a, params.v_prime, params.gamma),
            barrier_outer,
            LEAD,
        ),
        hbar2_over_2m,
    )


def wavenumber(region: Region, energy: ArrayLike, hbar2_over_2m: float = HBAR2_OVER_2M):
    """Principal square root of (E - V) / (hbar^2/2m).

    A negative real radicand gives a positive imaginary k (decaying wave).
    """
    energy = np.asarray(energy, dtype=float)
    radicand = np.empty(energy.shape, dtype=complex)
    radicand.real = (energy - region.potential_real) / hbar2_over_2m
    # +0.0 folds a signed zero onto the upper side of the cut
    radicand.imag = -region.potential_imag / hbar2_over_2m + 0.0
    k = np.sqrt(radicand)
    return complex(k) if k.ndim == 0 else k


def gamma_to_big_gamma(
    gamma: float,
    energy_ref: float,
    v_prime: float = 0.0,
    hbar2_over_2m: float = HBAR2_OVER_2M,
) -> float:
    """Reported control parameter sqrt([(hbar^2/m) gamma^2 + (E - V')]^2 - (E - V')^2)."""
    if not energy_ref > v_prime:
        raise DomainError(f"energy_ref ({energy_ref!r}) must exceed v_prime ({v_prime!r})")
    excess = energy_ref - v_prime
    shift = 2.0 * hbar2_over_2m * gamma ** 2
    # (shift + excess)^2 - excess^2, factored to keep small-gamma precision
    radicand = shift * (shift + 2.0 * excess)
    if radicand < 0:
        raise DomainError(f"negative radicand {radicand!r} in the gamma map")
    return math.sqrt(radicand)


def big_gamma_to_gamma(
    big_gamma: float,
    energy_ref: float,
    v_prime: float = 0.0,
    hbar2_over_2m: float = HBAR2_OVER_2M,
) -> float:
    """The gamma >= 0 that maps to ``big_gamma``; bracketed, then Brent's method."""
    if big_gamma < 0 or not math.isfinite(big_gamma):
        raise DomainError(f"big_gamma must be finite and non-negative, got {big_gamma!r}")
    if big_gamma == 0:
        return 0.0

    def residual(gamma: float) -> float:
        return gamma_to_big_gamma(gamma, energy_ref, v_prime, hbar2_over_2m) - big_gamma

    upper = 1.0
    for _ in range(_BRACKET_DOUBLINGS):
        if residual(upper) >= 0:
            break
        upper *= 2.0
    else:
        raise ConvergenceError("could not bracket gamma", residual(upper) / big_gamma)

    gamma, result = brentq(
        residual,
        0.0,
        upper,
        xtol=np.finfo(float).tiny,
        rtol=4 * np.finfo(float).eps,
        maxiter=500,
        full_output=True,
        disp=False,
    )
    relative = abs(residual(gamma)) / big_gamma
    if not result.converged or relative > GAMMA_RTOL:
        raise ConvergenceError("gamma inversion did not converge", relative)
    LOGGER.debug("big_gamma %.6g -> gamma %.6g (%d iterations)", big_gamma, gamma, result.iterations)
    return gamma
