"""Odd-harmonic dipole spectrum, cutoff law and time-domain signals.

The induced dipole is a sine series over odd orders k = 2n+1 >= 2 n0 + 1,

    <x>(t) = sum_n A_n sin(k w t) e^{-Gamma t},
    A_n = -C x_n^{3/2} / (x_n + gamma^2/3)^5,   x_n = (k w - I_B) / (3 U_p),

with C = (64 / 3^{9/2}) Z e^2 w / U_p^2 gamma^5.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import DomainError
from .spectral import power_spectrum
from .units import ALPHA, min_harmonic_order

DEFAULT_X_MAX = 3.0


@dataclass(frozen=True)
class HarmonicLine:
    n: int
    order: int
    frequency: float  # eV
    amplitude: float  # eV^-1, coefficient of sin(frequency t)


@dataclass
class HarmonicSpectrum:
    lines: list
    constant_C: float
    damping_Gamma: float = 0.0
    provenance: dict = field(default_factory=dict)

    def orders(self):
        return [ln.order for ln in self.lines]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "frequency_eV", "amplitude_eV-1", "amplitude_squared_eV-2"])
        for ln in self.lines:
            w.writerow([ln.order, repr(ln.frequency), repr(ln.amplitude), repr(ln.amplitude**2)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "constant_C_eV-1": self.constant_C,
            "damping_Gamma_eV": self.damping_Gamma,
            "lines": [asdict(ln) for ln in self.lines],
            "provenance": self.provenance,
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def x_n(n: int, omega: float, IB: float, Up: float) -> float:
    """Reduced photon excess ((2n+1) w - I_B) / (3 U_p)."""
    if n < min_harmonic_order(IB, omega):
        raise DomainError(f"n={n} is below the ionization threshold")
    if not Up > 0:
        raise DomainError("U_p must be positive")
    return ((2 * n + 1) * omega - IB) / (3.0 * Up)


def amplitude_constant(Z: float, omega: float, Up: float, gamma: float) -> float:
    """C = (64/3^{9/2}) (Z e^2 w / U_p^2) gamma^5, in eV^-1."""
    return 64.0 / 3.0**4.5 * Z * ALPHA * omega / Up**2 * gamma**5


def reduced_amplitude(x, gamma: float):
    """x^{3/2} / (x + gamma^2/3)^5."""
    x = np.asarray(x, dtype=float)
    return x**1.5 / (x + gamma**2 / 3.0) ** 5


def reduced_amplitude_small_gamma(x):
    """Small-gamma limit x^{-7/2}."""
    return np.asarray(x, dtype=float) ** -3.5


def line_amplitude(n: int, omega: float, IB: float, Up: float, gamma: float, Z: float) -> float:
    """Signed coefficient of sin((2n+1) w t) in <x>, eV^-1."""
    xn = x_n(n, omega, IB, Up)
    return -amplitude_constant(Z, omega, Up, gamma) * float(reduced_amplitude(xn, gamma))


def cutoff_order(omega: float, IB: float, Up: float) -> int:
    """Largest odd order k with k w <= I_B + 3 U_p."""
    if not omega > 0 or not IB > 0 or Up < 0:
        raise DomainError("need omega > 0, I_B > 0, U_p >= 0")
    kmax = math.floor((IB + 3.0 * Up) / omega)
    k = kmax if kmax % 2 else kmax - 1
    first = 2 * min_harmonic_order(IB, omega) + 1
    # with U_p -> 0 nothing lies below the cutoff; report the threshold line
    return max(k, first)


def build_spectrum(omega: float, IB: float, Up: float, gamma: float, Z: float, damping: float = 0.0,
                   x_max: float = DEFAULT_X_MAX, provenance: dict | None = None) -> HarmonicSpectrum:
    """Lines from threshold n0 up to reduced energy x_n <= ``x_max``."""
    if damping < 0:
        raise DomainError("damping must be non-negative")
    n0 = min_harmonic_order(IB, omega)
    C = amplitude_constant(Z, omega, Up, gamma)
    lines = []
    n = n0
    while True:
        xn = x_n(n, omega, IB, Up)
        if xn > x_max and n > n0:
            break
        k = 2 * n + 1
        lines.append(HarmonicLine(n, k, k * omega, -C * float(reduced_amplitude(xn, gamma))))
        n += 1
    return HarmonicSpectrum(lines, C, damping, dict(provenance or {}))


def dipole_signal(t, spectrum: HarmonicSpectrum) -> np.ndarray:
    """<x>(t) = sum amplitude sin(frequency t) e^{-Gamma t}."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for ln in spectrum.lines:
        out += ln.amplitude * np.sin(ln.frequency * t)
    if spectrum.damping_Gamma:
        out *= np.exp(-spectrum.damping_Gamma * t)
    return out


def rabi_shifted_lines(spectrum: HarmonicSpectrum, OmegaR: float) -> HarmonicSpectrum:
    """Split each line into k w +- Omega_R/2 with half amplitude.

    Follows from sin(k w t) cos(Omega_R t / 2) = [sin((k w + Omega_R/2) t)
    + sin((k w - Omega_R/2) t)] / 2. ``Omega_R == 0`` returns the spectrum
    unchanged.
    """
    if OmegaR < 0:
        raise DomainError("Omega_R must be non-negative")
    if OmegaR == 0:
        return replace(spectrum, lines=list(spectrum.lines))
    half = OmegaR / 2.0
    lines = []
    for ln in spectrum.lines:
        lines.append(HarmonicLine(ln.n, ln.order, ln.frequency - half, ln.amplitude / 2.0))
        lines.append(HarmonicLine(ln.n, ln.order, ln.frequency + half, ln.amplitude / 2.0))
    return replace(spectrum, lines=lines)


def time_grid(spectrum: HarmonicSpectrum, omega: float, min_cycles: int = 20,
              min_samples_per_cycle: int = 64):
    """Sampling grid resolving the highest line and the damping time.

    At least ``min_samples_per_cycle`` samples per optical cycle (more if the
    top line needs it) over max(min_cycles, 5/Gamma).
    """
    period = 2.0 * math.pi / omega
    fmax = max((ln.frequency for ln in spectrum.lines), default=omega)
    spc = max(min_samples_per_cycle, 4 * int(math.ceil(fmax / omega)))
    spc = 1 << (spc - 1).bit_length()
    duration = period * min_cycles
    if spectrum.damping_Gamma > 0:
        duration = max(duration, 5.0 / spectrum.damping_Gamma)
    cycles = int(math.ceil(duration / period))
    n = cycles * spc
    return np.arange(n) * (period / spc)


def dipole_power_spectrum(spectrum: HarmonicSpectrum, omega: float, **grid_kw):
    t = time_grid(spectrum, omega, **grid_kw)
    sig = dipole_signal(t, spectrum)
    return t, sig, power_spectrum(sig, t[1] - t[0])
