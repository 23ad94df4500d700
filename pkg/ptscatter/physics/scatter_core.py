"""Two-port S-matrices: interfaces, star composition and the layered cascade.

Amplitudes are referenced to the interface planes: for a cascade the left
reference is the first interface and the right reference the last one, which
is the reference-plane convention of ``[b1 e^{ik1 X}, b7 e^{ik7 X}] = S [a1
e^{-ik1 X}, a7 e^{-ik7 X}]`` with X the half length of the structure.

Every function accepts numpy arrays of energies/wavenumbers and works
elementwise.
"""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ptscatter.error import (
    InvalidParameterError,
    ResonantSingularityError,
    SingularInterfaceError,
)
from ptscatter.physics.potential import ArrayLike, LayeredPotential

Amplitude = Union[complex, np.ndarray]

DENOMINATOR_FLOOR = 1e-300
UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class TwoPortScattering:
    """S = [[r, t'], [t, r']]; unprimed amplitudes are for incidence from the left."""

    r: Amplitude
    t: Amplitude
    r_prime: Amplitude
    t_prime: Amplitude

    @property
    def matrix(self) -> np.ndarray:
        """The S-matrix, shape ``(2, 2) + shape(r)``."""
        return np.array([[self.r, self.t_prime], [self.t, self.r_prime]])

    @property
    def transmission(self):
        return np.abs(self.t) ** 2

    @property
    def reflection(self):
        return np.abs(self.r) ** 2

    @property
    def transmission_prime(self):
        return np.abs(self.t_prime) ** 2

    @property
    def reflection_prime(self):
        return np.abs(self.r_prime) ** 2


@dataclass(frozen=True)
class PhaseSegment:
    """Propagation through ``d`` nm of a region with wavenumber ``k``."""

    k: Amplitude
    d: float

    def __post_init__(self):
        if not self.d >= 0:
            raise InvalidParameterError(f"segment length must be non-negative, got {self.d!r}")


IDENTITY = TwoPortScattering(0j, 1 + 0j, 0j, 1 + 0j)


def interface_smatrix(k_left: Amplitude, k_right: Amplitude) -> TwoPortScattering:
    k_left = np.asarray(k_left, dtype=complex)
    k_right = np.asarray(k_right, dtype=complex)
    total = k_left + k_right
    scale = np.abs(k_left) + np.abs(k_right)
    if np.any(np.abs(total) <= np.finfo(float).eps * scale) or np.any(scale == 0):
        raise SingularInterfaceError("k_left + k_right vanishes")
    r = (k_left - k_right) / total
    return TwoPortScattering(
        _scalar(r),
        _scalar(2 * k_left / total),
        _scalar(-r),
        _scalar(2 * k_right / total),
    )


def star_combine(
    left: TwoPortScattering,
    segment: PhaseSegment,
    right: TwoPortScattering,
) -> TwoPortScattering:
    """Join two scatterers through ``segment``, summing the multiple reflections."""
    phase = np.exp(-1j * np.asarray(segment.k) * segment.d)
    denominator = phase ** 2 - np.asarray(left.r_prime) * np.asarray(right.r)
    if np.any(np.abs(denominator) < DENOMINATOR_FLOOR):
        raise ResonantSingularityError("multiple-reflection series diverges")
    r = left.r + left.t_prime * right.r * left.t / denominator
    t = right.t * phase * left.t / denominator
    r_prime = right.r_prime + right.t * left.r_prime * right.t_prime / denominator
    t_prime = left.t_prime * phase * right.t_prime / denominator
    return TwoPortScattering(_scalar(r), _scalar(t), _scalar(r_prime), _scalar(t_prime))


def cascade(potential: LayeredPotential, energy: ArrayLike) -> TwoPortScattering:
    """Fold interfaces left to right, propagating through each interior region."""
    k = potential.wavenumbers(energy)
    try:
        index = 0
        result = interface_smatrix(k[0], k[1])
        for index in range(1, len(potential) - 1):
            segment = PhaseSegment(k[index], potential[index].width)
            result = star_combine(result, segment, interface_smatrix(k[index], k[index + 1]))
    except SingularInterfaceError as err:
        raise SingularInterfaceError("k_left + k_right vanishes", index) from err
    except ResonantSingularityError as err:
        raise ResonantSingularityError("multiple-reflection series diverges", index) from err
    return result


def unitarity_defect(s: TwoPortScattering) -> Tuple[Amplitude, Amplitude]:
    """R + T - 1 for incidence from the left and from the right.

    Negative means net absorption, positive net emission.
    """
    defect_left = s.reflection + s.transmission - 1
    defect_right = s.reflection_prime + s.transmission_prime - 1
    return _scalar(defect_left), _scalar(defect_right)


def classify_unitarity(defect: Amplitude, tol: float = UNITARITY_TOL):
    labels = np.where(
        np.abs(defect) <= tol,
        "conserving",
        np.where(np.asarray(defect) < 0, "absorbing", "emitting"),
    )
    return str(labels) if labels.ndim == 0 else labels


def _scalar(value):
    value = np.asarray(value)
    if value.ndim:
        return value
    if np.iscomplexobj(value):
        return complex(value)
    return float(value)

