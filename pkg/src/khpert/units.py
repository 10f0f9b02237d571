"""Constants, unit conversions and derived laser/atom parameters.

Everything downstream works in natural units with hbar = c = 1: energies in
eV, lengths and times in eV^-1, and e^2 equal to the fine-structure constant.
SI quantities only appear in :func:`ponderomotive_energy`, which takes the
laser intensity in W/cm^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class Constants:
    electron_mass_m: float = 510998.95  # eV
    alpha_e2: float = 1.0 / 137.035999
    # SI values used only for the intensity -> U_p conversion
    elementary_charge_C: float = 1.602176634e-19
    vacuum_permittivity: float = 8.8541878128e-12  # F/m
    speed_of_light: float = 299792458.0  # m/s
    electron_mass_kg: float = 9.1093837015e-31
    hbar_Js: float = 1.054571817e-34
    hbar_c_eV_um: float = 1.239841984 / (2.0 * math.pi)  # eV um
    W_per_cm2_to_W_per_m2: float = 1.0e4


CONSTANTS = Constants()
M_E = CONSTANTS.electron_mass_m
ALPHA = CONSTANTS.alpha_e2


@dataclass(frozen=True)
class LaserParams:
    """Monochromatic, linearly polarized field with instant turn-on.

    Build with :meth:`from_intensity` or :meth:`from_ponderomotive`; the
    remaining fields are derived.
    """

    photon_energy_omega: float
    ponderomotive_Up: float
    quiver_amplitude_lambdaL: float
    field_E: float
    intensity: Optional[float] = None

    def __post_init__(self):
        if not self.photon_energy_omega > 0:
            raise DomainError(f"photon energy must be positive, got {self.photon_energy_omega}")
        if self.ponderomotive_Up < 0 or self.quiver_amplitude_lambdaL < 0:
            raise DomainError("U_p and lambda_L must be non-negative")

    @classmethod
    def from_ponderomotive(cls, Up: float, omega: float, intensity: Optional[float] = None) -> "LaserParams":
        lam = quiver_amplitude(Up, omega)
        # U_p = e^2 E^2 / (4 m omega^2)
        field = math.sqrt(4.0 * M_E * Up) * omega / math.sqrt(ALPHA)
        return cls(omega, Up, lam, field, intensity)

    @classmethod
    def from_intensity(cls, intensity: float, omega: float) -> "LaserParams":
        return cls.from_ponderomotive(ponderomotive_energy(intensity, omega), omega, intensity)

    @property
    def wavelength_um(self) -> float:
        return 2.0 * math.pi * CONSTANTS.hbar_c_eV_um / self.photon_energy_omega


@dataclass(frozen=True)
class AtomSpec:
    Z: int
    ionization_IB: float

    def __post_init__(self):
        if int(self.Z) != self.Z or self.Z < 1:
            raise DomainError(f"nuclear charge must be an integer >= 1, got {self.Z}")
        if not self.ionization_IB > 0:
            raise DomainError(f"ionization energy must be positive, got {self.ionization_IB}")

    @property
    def bohr_radius_a(self) -> float:
        return bohr_radius(self.Z)


def ponderomotive_energy(intensity: float, photon_energy: float) -> float:
    """Ponderomotive energy in eV for a peak intensity in W/cm^2.

    Uses I = eps0 c E0^2 / 2 and U_p = e^2 E0^2 / (4 m omega^2).
    """
    if not intensity > 0 or not photon_energy > 0:
        raise DomainError("intensity and photon energy must both be positive")
    c = CONSTANTS
    e = c.elementary_charge_C
    omega_si = photon_energy * e / c.hbar_Js
    intensity_si = intensity * c.W_per_cm2_to_W_per_m2
    up_joule = e**2 * intensity_si / (2.0 * c.vacuum_permittivity * c.speed_of_light * c.electron_mass_kg * omega_si**2)
    return up_joule / e


def quiver_amplitude(Up: float, omega: float) -> float:
    """Free-electron quiver excursion lambda_L = sqrt(4 U_p / m) / omega, in eV^-1."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if Up < 0:
        raise DomainError(f"U_p must be non-negative, got {Up}")
    return math.sqrt(4.0 * Up / M_E) / omega


def keldysh_gamma(IB: float, Up: float) -> float:
    """sqrt(I_B / U_p); note the missing factor 2 relative to the usual convention."""
    if not IB > 0:
        raise DomainError(f"I_B must be positive, got {IB}")
    if not Up > 0:
        raise DomainError("U_p must be positive (gamma diverges at zero field)")
    return math.sqrt(IB / Up)


def keldysh_gamma_conventional(IB: float, Up: float) -> float:
    """Textbook Keldysh parameter sqrt(I_B / (2 U_p)), for comparison only."""
    return keldysh_gamma(IB, 2.0 * Up)


def min_harmonic_order(IB: float, omega: float) -> int:
    """Smallest n >= 0 with (2n+1) omega - I_B >= 0."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    n = max(0, math.ceil((IB / omega - 1.0) / 2.0))
    # guard the ceil against rounding either way
    while n > 0 and (2 * n - 1) * omega - IB >= 0:
        n -= 1
    while (2 * n + 1) * omega - IB < 0:
        n += 1
    return n


def bohr_radius(Z: int) -> float:
    """Hydrogen-like Bohr radius 1/(m Z e^2) in eV^-1."""
    if Z < 1:
        raise DomainError(f"Z must be >= 1, got {Z}")
    return 1.0 / (M_E * Z * ALPHA)


def hydrogenic_ground_energy(Z: int) -> float:
    """Magnitude of the hydrogen-like ground-state energy, Z e^2 / (2a), in eV."""
    return Z * ALPHA / (2.0 * bohr_radius(Z))


def effective_charge(IB: float) -> float:
    """Charge Z_eff for which a hydrogenic ground state is bound by I_B.

    Solves I_B = m (Z_eff e^2)^2 / 2. Non-integer in general.
    """
    if not IB > 0:
        raise DomainError(f"I_B must be positive, got {IB}")
    return math.sqrt(2.0 * IB / M_E) / ALPHA
