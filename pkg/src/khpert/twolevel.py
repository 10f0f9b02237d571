"""Driven two-level model in the original and dressed frames.

H(t) = (w0/2) s3 + Omega cos(w t) s1. The unitary U(t) = exp(-i s1 F(t)) with
F(t) = (Omega/w) sin(w t) removes the drive and leaves

    H_F(t) = (w0/2) e^{2 i s1 F(t)} s3
           = (w0/2) sum_n J_n(2 Omega / w) e^{i n s1 w t} s3,

so psi(t) = U(t) phi(t). Both Hamiltonians are traceless, H = h(t).sigma,
and are carried as the real Pauli vector h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConfigurationError, DomainError
from .spectral import PowerSpectrum, power_spectrum
from .specfun import bessel_J

UP = np.array([1.0, 0.0], dtype=complex)
MAX_NORM_STEP = 0.1


@dataclass(frozen=True)
class TwoLevelParams:
    omega0: float
    Omega: float
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError("drive frequency must be positive")
        if self.omega0 < 0 or self.Omega < 0:
            raise DomainError("omega0 and Omega must be non-negative")

    @property
    def bessel_argument(self) -> float:
        return 2.0 * self.Omega / self.omega

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def dressed_coefficient(n: int, params: TwoLevelParams) -> float:
    """(w0/2) J_n(2 Omega / w), the n-th harmonic of H_F."""
    return 0.5 * params.omega0 * bessel_J(n, params.bessel_argument)


def original_field(params: TwoLevelParams):
    """t -> Pauli vector (hx, hy, hz) of H(t); vectorized over t."""
    def h(t):
        t = np.asarray(t, dtype=float)
        return (params.Omega * np.cos(params.omega * t), np.zeros_like(t), np.full_like(t, 0.5 * params.omega0))
    return h


def dressed_field(params: TwoLevelParams, n_max: int | None = None):
    """t -> Pauli vector of H_F(t); exact, or Jacobi-Anger truncated at |n| <= n_max.

    e^{i n s1 wt} s3 = cos(n wt) s3 + sin(n wt) s2.
    """
    half = 0.5 * params.omega0
    z = params.bessel_argument
    if n_max is None:
        def h(t):
            phase = z * np.sin(params.omega * np.asarray(t, dtype=float))
            return (np.zeros_like(phase), half * np.sin(phase), half * np.cos(phase))
        return h
    ns = np.arange(-n_max, n_max + 1)
    coeffs = half * bessel_J(ns, z)

    def h(t):
        wt = params.omega * np.asarray(t, dtype=float)
        arg = np.multiply.outer(wt, ns)
        return (np.zeros_like(wt), np.sin(arg) @ coeffs, np.cos(arg) @ coeffs)
    return h


_G1 = 0.5 - math.sqrt(3.0) / 6.0
_G2 = 0.5 + math.sqrt(3.0) / 6.0
_C3 = math.sqrt(3.0) / 6.0


def magnus4_steps(h, t0, dt: float):
    """Fourth-order Magnus propagators over [t0, t0+dt] for H(t) = h(t).sigma.

    ``t0`` is an array of step start times; returns the matrix entries
    (u00, u01, u10, u11) as arrays. With two Gauss points the exponent is
    -i dt [(h1+h2)/2 + sqrt(3)/6 dt (h2 x h1)].sigma.
    """
    t0 = np.asarray(t0, dtype=float)
    h1 = np.array(h(t0 + _G1 * dt))
    h2 = np.array(h(t0 + _G2 * dt))
    b = 0.5 * (h1 + h2) + _C3 * dt * np.cross(h2, h1, axis=0)
    norm = np.sqrt(np.sum(b * b, axis=0))
    theta = norm * dt
    c = np.cos(theta)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(norm > 0, np.sin(theta) / norm, dt)
    bx, by, bz = b
    # cos(theta) I - i sin(theta) (b/|b|).sigma
    return (c - 1j * s * bz, -1j * s * bx - s * by, -1j * s * bx + s * by, c + 1j * s * bz)


def _field_bound(params: TwoLevelParams) -> float:
    return math.hypot(params.Omega, 0.5 * params.omega0)


def propagate(h, state0, T: float, steps: int, norm_bound: float):
    """Trajectory of shape (steps+1, 2) on the uniform grid, Magnus-4 stepping."""
    if steps < 1:
        raise ConfigurationError("steps must be >= 1")
    dt = T / steps
    if norm_bound * dt > MAX_NORM_STEP:
        raise ConfigurationError(
            f"step too large: |H| dt = {norm_bound * dt:.3g} > {MAX_NORM_STEP}; use at least "
            f"{math.ceil(norm_bound * T / MAX_NORM_STEP)} steps"
        )
    u00, u01, u10, u11 = (x.tolist() for x in magnus4_steps(h, np.arange(steps) * dt, dt))
    a, b = (complex(v) for v in np.asarray(state0, dtype=complex))
    out_a = [a]
    out_b = [b]
    for i in range(steps):
        a, b = u00[i] * a + u01[i] * b, u10[i] * a + u11[i] * b
        out_a.append(a)
        out_b.append(b)
    return np.column_stack([out_a, out_b])


def propagate_original(params: TwoLevelParams, state0, T: float, steps: int) -> np.ndarray:
    """Trajectory under H(t) = (w0/2) s3 + Omega cos(wt) s1 on t = i T/steps."""
    return propagate(original_field(params), state0, T, steps, _field_bound(params))


def propagate_dressed(params: TwoLevelParams, state0, T: float, steps: int, n_max: int | None = None):
    """Trajectory of the dressed-frame state phi(t) under H_F(t)."""
    return propagate(dressed_field(params, n_max), state0, T, steps, 0.5 * params.omega0)


def transform_matrix(params: TwoLevelParams, t: float) -> np.ndarray:
    """U(t) = exp(-i s1 (Omega/w) sin(w t))."""
    f = params.Omega / params.omega * math.sin(params.omega * t)
    return np.array([[math.cos(f), -1j * math.sin(f)], [-1j * math.sin(f), math.cos(f)]])


def transform_to_dressed(state, params: TwoLevelParams, t: float) -> np.ndarray:
    """phi = U(t)^dagger psi."""
    return transform_matrix(params, t).conj().T @ np.asarray(state, dtype=complex)


def transform_from_dressed(state, params: TwoLevelParams, t: float) -> np.ndarray:
    """psi = U(t) phi."""
    return transform_matrix(params, t) @ np.asarray(state, dtype=complex)


def frame_equivalence_residual(params: TwoLevelParams, cycles: float, steps_per_cycle: int = 2048,
                               state0=UP, n_max: int | None = None) -> float:
    """Max |P_up(original) - P_up(dressed, mapped back)| over the time grid."""
    T = cycles * params.period
    steps = int(round(cycles * steps_per_cycle))
    psi = propagate_original(params, state0, T, steps)
    phi = propagate_dressed(params, transform_to_dressed(state0, params, 0.0), T, steps, n_max)
    dt = T / steps
    f = params.Omega / params.omega * np.sin(params.omega * dt * np.arange(steps + 1))
    up_back = np.cos(f) * phi[:, 0] - 1j * np.sin(f) * phi[:, 1]
    return float(np.max(np.abs(np.abs(psi[:, 0]) ** 2 - np.abs(up_back) ** 2)))


def reference_trajectory(params: TwoLevelParams, state0, t_eval, rtol: float = 1e-12, atol: float = 1e-13):
    """Independent solution with scipy's DOP853, for cross-checks."""
    h = original_field(params)

    def rhs(t, y):
        psi = y[:2] + 1j * y[2:]
        hx, hy, hz = (float(v) for v in h(t))
        H = np.array([[hz, hx - 1j * hy], [hx + 1j * hy, -hz]])
        d = -1j * (H @ psi)
        return np.concatenate([d.real, d.imag])

    y0 = np.concatenate([np.real(state0), np.imag(state0)]).astype(float)
    sol = solve_ivp(rhs, (t_eval[0], t_eval[-1]), y0, method="DOP853", t_eval=t_eval, rtol=rtol, atol=atol)
    return (sol.y[:2] + 1j * sol.y[2:]).T


def expectation(traj: np.ndarray, observable: str = "sigma3") -> np.ndarray:
    """<psi| s_i |psi> along a trajectory."""
    a, b = traj[:, 0], traj[:, 1]
    if observable == "sigma3":
        return np.abs(a) ** 2 - np.abs(b) ** 2
    if observable == "sigma1":
        return 2.0 * np.real(np.conj(a) * b)
    if observable == "sigma2":
        return 2.0 * np.imag(np.conj(a) * b)
    raise DomainError(f"unknown observable {observable!r}")


@dataclass
class EmissionSpectrum:
    params: TwoLevelParams
    spectrum: PowerSpectrum
    observable: str

    def harmonic_power(self, order: int, half_width: float = 0.1) -> float:
        """Strongest spectral power within +-half_width*w of order*w."""
        w = self.params.omega
        return self.spectrum.band_power(order * w, half_width * w)

    def harmonic_orders(self, rel_floor: float = 1e-6, max_order: int = 15, half_width: float = 0.1):
        """Drive harmonics m >= 1 whose band holds a peak above the floor.

        The floor is relative to the strongest spectral peak.
        """
        peaks = self.spectrum.peaks(rel_floor)
        if not peaks:
            return []
        w = self.params.omega
        found = []
        for m in range(1, max_order + 1):
            if any(abs(f - m * w) <= half_width * w for f, _ in peaks):
                found.append(m)
        return found

    def peaks(self, rel_floor: float = 1e-6):
        return self.spectrum.peaks(rel_floor)


def emission_spectrum(params: TwoLevelParams, T_cycles: int = 64, observable: str = "sigma3",
                      state0=UP, steps_per_cycle: int = 256) -> EmissionSpectrum:
    """Hann-windowed power spectrum of <observable>(t) from :func:`propagate_original`.

    Lines at even multiples of w come from the Floquet-diagonal part of <s3>;
    the odd ones appear split by the dressed quasi-energy gap.
    """
    if T_cycles < 64:
        raise ConfigurationError("T_cycles must be >= 64 to resolve drive harmonics")
    steps = T_cycles * steps_per_cycle
    T = T_cycles * params.period
    traj = propagate_original(params, state0, T, steps)
    sig = expectation(traj, observable)
    return EmissionSpectrum(params, power_spectrum(sig, T / steps), observable)
