"""Hydrogen-like states and matrix elements of the laser-dressed potential.

Bound states are quantized along z while the laser polarizes along x, so the
dressing operator P_2n(x/r) couples magnetic numbers differing by an even
amount (not only equal ones). Radial functions are closed forms for n <= 3.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, DivergentTermError, DomainError, PoleError
from .khpotential import A_coefficient
from .specfun import integrate_radial, legendre_x_axis_element
from .units import ALPHA, M_E, bohr_radius


MAX_N = 3


@dataclass(frozen=True)
class BoundState:
    n: int
    l: int
    lz: int
    Z: int = 1

    def __post_init__(self):
        if not (self.n >= 1 and 0 <= self.l < self.n and abs(self.lz) <= self.l):
            raise DomainError(f"invalid quantum numbers (n, l, lz) = ({self.n}, {self.l}, {self.lz})")
        if self.Z < 1:
            raise DomainError("Z must be >= 1")

    @property
    def a(self) -> float:
        return bohr_radius(self.Z)

    @property
    def energy(self) -> float:
        """E_n = -Z e^2 / (2 a n^2), eV."""
        return -self.Z * ALPHA / (2.0 * self.a * self.n**2)


@dataclass(frozen=True)
class ContinuumState:
    p: tuple
    mass: float = M_E

    @property
    def energy(self) -> float:
        return float(np.dot(self.p, self.p)) / (2.0 * self.mass)


def bound_states(n_max: int = MAX_N, Z: int = 1):
    return [BoundState(n, l, m, Z) for n in range(1, n_max + 1) for l in range(n) for m in range(-l, l + 1)]


def radial_wavefunction(state: BoundState, r):
    """Normalized R_nl(r) for charge Z, in eV^{3/2}; r in eV^-1."""
    if state.n > MAX_N:
        raise CapabilityError(f"radial functions implemented for n <= {MAX_N}, got n={state.n}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    a = state.a
    rho = r / a
    n, l = state.n, state.l
    if (n, l) == (1, 0):
        out = 2.0 * np.exp(-rho)
    elif (n, l) == (2, 0):
        out = (1.0 / math.sqrt(2.0)) * (1.0 - rho / 2.0) * np.exp(-rho / 2.0)
    elif (n, l) == (2, 1):
        out = (1.0 / (2.0 * math.sqrt(6.0))) * rho * np.exp(-rho / 2.0)
    elif (n, l) == (3, 0):
        out = (2.0 / (3.0 * math.sqrt(3.0))) * (1.0 - 2.0 * rho / 3.0 + 2.0 * rho**2 / 27.0) * np.exp(-rho / 3.0)
    elif (n, l) == (3, 1):
        out = (8.0 / (27.0 * math.sqrt(6.0))) * rho * (1.0 - rho / 6.0) * np.exp(-rho / 3.0)
    else:
        out = (4.0 / (81.0 * math.sqrt(30.0))) * rho**2 * np.exp(-rho / 3.0)
    out = out * a**-1.5
    return out if out.ndim else float(out)


def _pair_decay(bra: BoundState, ket: BoundState) -> float:
    # product R_bra R_ket ~ exp(-r/s) with 1/s = 1/(n a) + 1/(n' a)
    return 1.0 / (1.0 / (bra.n * bra.a) + 1.0 / (ket.n * ket.a))


def radial_integral(bra: BoundState, ket: BoundState, power: int) -> float:
    """int R_bra R_ket r^power r^2 dr."""
    if bra.Z != ket.Z:
        raise DomainError("states must share Z")
    if bra.l + ket.l + power + 2 < 0:
        raise DivergentTermError(
            f"radial integral r^{power} between l={bra.l} and l={ket.l} diverges at r = 0"
        )
    return integrate_radial(
        lambda r: radial_wavefunction(bra, r) * radial_wavefunction(ket, r) * r ** (power + 2),
        _pair_decay(bra, ket),
    )


def overlap(bra: BoundState, ket: BoundState) -> float:
    if (bra.l, bra.lz) != (ket.l, ket.lz):
        return 0.0
    return radial_integral(bra, ket, 0)


def deltaLV_terms(bra: BoundState, ket: BoundState, lambdaL: float):
    """Per-order contributions (n, value) to <bra| delta_L V |ket>.

    Order n carries -Z e^2 A_n lambda_L^{2n} r^{-(2n+1)} P_2n(x/r). Only
    orders with a non-vanishing angular factor (2n <= l + l') are returned.
    """
    if bra.Z != ket.Z:
        raise DomainError("states must share Z")
    if not lambdaL > 0:
        raise DomainError("lambda_L must be positive")
    Z = bra.Z
    terms = []
    for n in range(1, (bra.l + ket.l) // 2 + 1):
        ang = legendre_x_axis_element(bra.l, bra.lz, 2 * n, ket.l, ket.lz)
        if ang == 0.0:
            continue
        rad = radial_integral(bra, ket, -(2 * n + 1))
        terms.append((n, -Z * ALPHA * A_coefficient(n) * lambdaL ** (2 * n) * rad * ang))
    return terms


def deltaLV_matrix_element(bra: BoundState, ket: BoundState, lambdaL: float) -> float:
    """<bra| delta_L V |ket> in eV, summed term-wise over the Legendre series."""
    return math.fsum(v for _, v in deltaLV_terms(bra, ket, lambdaL))


def dipole_x_element(bra: BoundState, ket: BoundState) -> float:
    """<bra| x |ket> in eV^-1; x is the polarization axis."""
    ang = legendre_x_axis_element(bra.l, bra.lz, 1, ket.l, ket.lz)
    if ang == 0.0:
        return 0.0
    return ang * radial_integral(bra, ket, 1)


# rational coefficients of <3,2,0|dV|1,0,0>, <3,2,0|dV|3,2,0> in units Z e^2/a
_C31 = math.sqrt(150.0) / 10800.0
_C33_2 = 1.0 / 5670.0
_C33_4 = 1.0 / 136080.0


def rigidity_denominator(lambdaL_over_a: float) -> float:
    """(E~_3 - E~_1) / (Z e^2/a) for the 3d0 <- 1s correction."""
    x2 = lambdaL_over_a**2
    return 4.0 / 9.0 + _C33_2 * x2 - _C33_4 * x2**2


def rigidity_pole() -> float:
    """Positive lambda_L/a at which the 3d0 level crosses the ground level."""
    # c4 y^2 - c2 y - 4/9 = 0 with y = x^2
    y = (_C33_2 + math.sqrt(_C33_2**2 + 4.0 * _C33_4 * 4.0 / 9.0)) / (2.0 * _C33_4)
    return math.sqrt(y)


def rigidity_prefactor(lambdaL_over_a: float) -> float:
    """Real prefactor of a^RS_{3,2,0}(t), multiplying (e^{i 8/9 |E_1| t} - 1)."""
    if not lambdaL_over_a > 0:
        raise DomainError("lambda_L/a must be positive")
    den = rigidity_denominator(lambdaL_over_a)
    if abs(den) <= 1e-12 * (4.0 / 9.0 + _C33_4 * lambdaL_over_a**4):
        raise PoleError(f"level crossing at lambda_L/a = {rigidity_pole()!r}")
    return -_C31 * lambdaL_over_a**2 / den


def rigidity_amplitude(lambdaL_over_a: float, t: float, Z: int = 1) -> complex:
    """First-order amplitude of the 3d0 admixture into the ground state.

    The oscillation frequency is (8/9)|E_1| = E_3 - E_1, the unshifted
    level gap; the laser-induced shifts only enter the prefactor.
    """
    gap = 8.0 / 9.0 * abs(BoundState(1, 0, 0, Z).energy)
    return rigidity_prefactor(lambdaL_over_a) * (cmath.exp(1j * gap * t) - 1.0)


def momentum_wavefunction_1s(p, a: float):
    """int e^{-i p.r} psi_1s(r) d^3r = 8 sqrt(pi) a^{3/2} / (1 + p^2 a^2)^2."""
    p = np.asarray(p, dtype=float)
    p2 = np.sum(p * p, axis=-1)
    return 8.0 * math.sqrt(math.pi) * a**1.5 / (1.0 + p2 * a * a) ** 2


def planewave_dipole_element(p, a: float) -> complex:
    """<p| x |1s> for the plane wave e^{i p.r} (unit box), eV^{-5/2}.

    Equal to i d/dp_x of the momentum-space ground state:
    -32 i sqrt(pi) a^{7/2} p_x / (1 + p^2 a^2)^3. ``p`` may be an (..., 3)
    array.
    """
    p = np.asarray(p, dtype=float)
    p2 = np.sum(p * p, axis=-1)
    out = -32j * math.sqrt(math.pi) * a**3.5 * p[..., 0] / (1.0 + p2 * a * a) ** 3
    return out if np.ndim(out) else complex(out)


def planewave_dipole_for_state(cont: ContinuumState, ground: BoundState) -> complex:
    if (ground.n, ground.l) != (1, 0):
        raise CapabilityError("plane-wave dipole element implemented for the 1s ground state only")
    return planewave_dipole_element(cont.p, ground.a)
