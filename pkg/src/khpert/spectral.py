"""FFT power spectra and peak picking for sampled time signals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks


@dataclass
class PowerSpectrum:
    """One-sided spectrum on an angular-frequency grid (eV).

    ``power`` is normalized so that a sinusoid of unit amplitude produces a
    peak of height ~1 (exactly 1 when it falls on a bin centre).
    """

    frequency: np.ndarray
    power: np.ndarray

    def peaks(self, rel_floor: float = 1e-6, abs_floor: float = 1e-20):
        """Local maxima above ``rel_floor`` times the strongest one."""
        if self.power.size == 0 or self.power.max() <= abs_floor:
            return []
        height = max(rel_floor * self.power.max(), abs_floor)
        idx, _ = find_peaks(self.power, height=height)
        return [(float(self.frequency[i]), float(self.power[i])) for i in idx]

    def band_power(self, center: float, half_width: float) -> float:
        sel = np.abs(self.frequency - center) <= half_width
        return float(self.power[sel].max()) if np.any(sel) else 0.0


def power_spectrum(signal, dt: float, window: str | None = "hann", pad_to: int | None = None,
                   detrend: bool = True) -> PowerSpectrum:
    """Windowed FFT power spectrum of a real signal sampled at step ``dt``.

    Frequencies are angular (2 pi f) so they compare directly with photon
    energies in natural units.
    """
    x = np.asarray(signal, dtype=float)
    if detrend:
        x = x - x.mean()
    n = x.size
    w = np.hanning(n) if window == "hann" else np.ones(n)
    nfft = max(n, pad_to or 0)
    spec = np.fft.rfft(x * w, n=nfft)
    amp = 2.0 * np.abs(spec) / w.sum()
    freq = 2.0 * np.pi * np.fft.rfftfreq(nfft, d=dt)
    return PowerSpectrum(freq, amp**2)


def parseval_residual(signal) -> float:
    """|sum x^2 - sum |X|^2 / N| relative to sum x^2, unwindowed full FFT."""
    x = np.asarray(signal, dtype=float)
    X = np.fft.fft(x)
    lhs = float(np.sum(x * x))
    rhs = float(np.sum(np.abs(X) ** 2)) / x.size
    return abs(lhs - rhs) / lhs if lhs else abs(rhs)


def fwhm(freq: np.ndarray, power: np.ndarray) -> float:
    """Full width at half maximum of the dominant peak, linearly interpolated."""
    i = int(np.argmax(power))
    half = power[i] / 2.0
    lo = i
    while lo > 0 and power[lo] > half:
        lo -= 1
    hi = i
    while hi < power.size - 1 and power[hi] > half:
        hi += 1

    def cross(a, b):
        return freq[a] + (half - power[a]) * (freq[b] - freq[a]) / (power[b] - power[a])

    return float(cross(hi - 1, hi) - cross(lo, lo + 1))
