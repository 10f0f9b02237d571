"""Golden-rule transition rates and the above-threshold ionization rate."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import AccuracyError, DomainError
from .hydrogen import BoundState, dipole_x_element, planewave_dipole_element
from .units import ALPHA, M_E, effective_charge, keldysh_gamma, min_harmonic_order, quiver_amplitude

log = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-4


@dataclass
class RateResult:
    total_rate_Gamma: float
    per_channel: list = field(default_factory=list)  # (order 2n+1, partial rate eV)
    n0: int = 0
    tail_bound: float = 0.0

    def to_json(self) -> str:
        doc = asdict(self)
        doc["per_channel"] = [{"order": k, "partial_rate_eV": r} for k, r in self.per_channel]
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "partial_rate_eV"])
        for k, r in self.per_channel:
            w.writerow([k, repr(float(r))])
        return buf.getvalue()


def ati_channel_terms(n, omega: float, IB: float) -> np.ndarray:
    """Summand [I_B/((2n+1)w)]^{5/2} [1 - I_B/((2n+1)w)]^{3/2}."""
    u = IB / ((2 * np.asarray(n, dtype=float) + 1.0) * omega)
    return u**2.5 * np.clip(1.0 - u, 0.0, None) ** 1.5


def ati_prefactor(gamma: float, omega: float, Up: float) -> float:
    return 32.0 / 3.0 * omega**2 / Up * gamma**2


def ati_tail_bound(n_max: int, gamma: float, omega: float, Up: float, IB: float) -> float:
    """Upper bound on sum_{n > n_max} of the rate terms.

    Uses (1-u)^{3/2} <= 1 and the integral bound for the decreasing
    (2n+1)^{-5/2} tail.
    """
    c = IB / omega
    return ati_prefactor(gamma, omega, Up) * c**2.5 / (3.0 * (2 * n_max + 1) ** 1.5)


def ati_rate_closed(gamma: float, omega: float, Up: float, IB: float, n_max=None,
                    rel_tol: float = DEFAULT_REL_TOL) -> RateResult:
    """ATI rate Gamma = (32/3)(w^2/U_p) gamma^2 sum_{n>=n0} [...]^{5/2} [...]^{3/2}.

    With ``n_max=None`` the sum is extended until the tail bound drops below
    ``rel_tol`` times the partial sum. An explicit ``n_max`` whose tail bound
    exceeds that raises :class:`AccuracyError`.
    """
    for name, v in (("gamma", gamma), ("omega", omega), ("Up", Up), ("IB", IB)):
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v}")
    n0 = min_harmonic_order(IB, omega)
    pref = ati_prefactor(gamma, omega, Up)
    auto = n_max is None
    if auto:
        n_max = n0 + 1024
    while True:
        if n_max < n0:
            return RateResult(0.0, [], n0, ati_tail_bound(n0, gamma, omega, Up, IB))
        ns = np.arange(n0, n_max + 1)
        partial = pref * ati_channel_terms(ns, omega, IB)
        total = math.fsum(partial)
        bound = ati_tail_bound(n_max, gamma, omega, Up, IB)
        if bound <= rel_tol * total:
            break
        if not auto:
            raise AccuracyError(
                f"n_max={n_max} leaves tail bound {bound:.3e} eV above {rel_tol:g} x {total:.3e} eV",
                estimate=total,
                error=bound,
            )
        # bound scales as n^{-3/2}
        need = (bound / (rel_tol * total)) ** (2.0 / 3.0)
        n_max = int(math.ceil((n_max + 0.5) * need * 1.05))
    channels = [(int(2 * n + 1), float(r)) for n, r in zip(ns, partial)]
    return RateResult(total, channels, n0, bound)


def sphere_rule(n_theta: int = 48, n_phi: int = 64):
    """Unit vectors and weights integrating over the full solid angle.

    Gauss-Legendre in cos(theta) times the trapezoid rule in phi.
    """
    c, wc = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    s = np.sqrt(1.0 - c * c)
    dirs = np.stack(
        [np.outer(s, np.cos(phi)), np.outer(s, np.sin(phi)), np.outer(c, np.ones_like(phi))], axis=-1
    ).reshape(-1, 3)
    weights = np.outer(wc, np.full(n_phi, 2.0 * np.pi / n_phi)).reshape(-1)
    return dirs, weights


def golden_rule_rate(coupling, omega: float, IB: float, orders, initial_shift: float = 0.0,
                     mass: float = M_E, n_theta: int = 48, n_phi: int = 64) -> RateResult:
    """Rate 2 pi sum_k int d^3p/(2pi)^3 |M_k(p)|^2 delta(E_p - E_i - k w).

    ``coupling(k, p)`` returns the matrix element <p|v_k|i> for an (N, 3)
    array of momenta (plane waves with unit box normalization). The initial
    energy is -I_B + ``initial_shift``. The delta function is resolved onto
    the shell |p| = sqrt(2m(kw + E_i)) and the angular integral done
    numerically. Closed channels are skipped.
    """
    E_i = -IB + initial_shift
    dirs, weights = sphere_rule(n_theta, n_phi)
    channels = []
    for k in orders:
        E_f = k * omega + E_i
        if E_f < 0:
            continue
        p = math.sqrt(2.0 * mass * E_f)
        m2 = np.abs(np.asarray(coupling(k, p * dirs))) ** 2
        # d^3p delta(p^2/2m - E) = m p dOmega
        rate = 2.0 * math.pi * mass * p / (2.0 * math.pi) ** 3 * float(np.dot(weights, m2))
        channels.append((int(k), rate))
    n0 = min_harmonic_order(-E_i, omega)
    total = math.fsum(r for _, r in channels)
    return RateResult(total, channels, n0, 0.0)


def hydrogenic_coupling(lambdaL: float, a: float, Z_e2: float):
    """Dipole-order coupling |<p|v_k|1s>| for odd k, zero for even k.

    ``Z_e2`` is the charge factor Z e^2 of the dressed potential and ``a`` the
    radius of the 1s state.
    """

    def coupling(k, p):
        if k % 2 == 0:
            return np.zeros(len(p))
        return k * Z_e2 / lambdaL**2 * planewave_dipole_element(p, a)

    return coupling


def rabi_frequency(bra: BoundState, ket: BoundState, k: int, lambdaL: float) -> float:
    """Omega_R = 2 |<bra|v_k|ket>| with the dipole-order odd component."""
    if bra.Z != ket.Z:
        raise DomainError("states must share Z")
    if k % 2 == 0:
        log.info("even harmonic k=%d has no dipole-order coupling; Omega_R = 0", k)
        return 0.0
    if not lambdaL > 0:
        raise DomainError("lambda_L must be positive")
    return 2.0 * k * bra.Z * ALPHA / lambdaL**2 * abs(dipole_x_element(bra, ket))


def golden_rule_consistency(omega: float, Up: float, IB: float, n_channels: int = 10, **rule_kw):
    """Closed-form channel terms against the numerical golden rule.

    The closed form assumes a hydrogenic 1s state bound by I_B, so the
    oracle uses Z_eff with I_B = m (Z_eff e^2)^2 / 2 for both the 1s radius
    and the coupling strength. Returns rows (order, closed, numeric, rel_dev)
    for the first ``n_channels`` open channels.
    """
    gamma = keldysh_gamma(IB, Up)
    lam = quiver_amplitude(Up, omega)
    z_eff = effective_charge(IB)
    a_eff = 1.0 / (M_E * z_eff * ALPHA)
    n0 = min_harmonic_order(IB, omega)
    orders = [2 * n + 1 for n in range(n0, n0 + n_channels)]
    numeric = golden_rule_rate(hydrogenic_coupling(lam, a_eff, z_eff * ALPHA), omega, IB, orders, **rule_kw)
    pref = ati_prefactor(gamma, omega, Up)
    rows = []
    for k, num in numeric.per_channel:
        closed = pref * float(ati_channel_terms((k - 1) // 2, omega, IB))
        rows.append((k, closed, num, abs(num - closed) / closed))
    return rows
