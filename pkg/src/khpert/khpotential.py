"""Kramers-Henneberger dressed Coulomb potential.

In the KH frame a linearly polarized field (along x) shifts the atomic
potential by a(t) = lambda_L sin(wt) x_hat. Expanding V(x + a(t)) over the
cycle gives a static part v_0 and harmonic components v_k,

    V(x + a(t)) = v_0(x) + sum_{k>=1} i^k [e^{ikwt} + (-1)^k e^{-ikwt}] v_k(x),

    v_k(x) = int_{-1}^{1} V(|x - lambda_L s x_hat|) T_k(s) ds / (pi sqrt(1-s^2)).

The bracket equals 2 cos(k (wt + pi/2)), so the reconstruction is real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError
from .specfun import QuadratureSpec, chebyshev_T, gauss_chebyshev, integrate_chebyshev_weight, legendre_P
from .units import ALPHA

# the dipole-projection check resolves a feature of width softening/lambda_L
SELECTION_SPEC = QuadratureSpec(node_count=64, target_rel_tol=1e-10, max_refinements=14)

MAX_TERMS_INSIDE = 40


@dataclass(frozen=True)
class SpacePoint:
    x: float
    y: float = 0.0
    z: float = 0.0

    @property
    def r(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    @property
    def rho(self) -> float:
        return math.hypot(self.y, self.z)


def coulomb(r, Z: int, softening: float = 0.0):
    """-Z e^2 / sqrt(r^2 + s^2)."""
    return -Z * ALPHA / np.sqrt(np.square(r) + softening**2)


def coulomb_derivative(r, Z: int, softening: float = 0.0):
    """dV/dr of :func:`coulomb`."""
    r = np.asarray(r, dtype=float)
    return Z * ALPHA * r / (np.square(r) + softening**2) ** 1.5


def _check_path(p: SpacePoint, lambdaL: float, softening: float):
    if softening > 0 or p.rho > 0:
        return
    if lambdaL == 0:
        if p.x == 0:
            raise SingularityError("evaluation point is the Coulomb centre")
        return
    s0 = p.x / lambdaL
    if abs(s0) <= 1.0:
        raise SingularityError(
            f"on-axis integration path x - lambda_L s crosses r = 0 at s = {s0!r} "
            f"(x = {p.x!r}); use rho > 0 or a softening length"
        )


def _chebyshev_table(kmax: int, s: np.ndarray) -> np.ndarray:
    table = np.empty((kmax + 1, s.size))
    table[0] = 1.0
    if kmax >= 1:
        table[1] = s
    for k in range(2, kmax + 1):
        table[k] = 2.0 * s * table[k - 1] - table[k - 2]
    return table


def vk_components(kmax: int, p: SpacePoint, lambdaL: float, Z: int, softening: float = 0.0,
                  spec: QuadratureSpec = QuadratureSpec()) -> np.ndarray:
    """All harmonic components v_0 .. v_kmax at one point, in eV.

    Shares a single set of Gauss-Chebyshev node evaluations across k; refines
    until every component has converged.
    """
    if kmax < 0:
        raise DomainError("kmax must be non-negative")
    if lambdaL < 0:
        raise DomainError("lambda_L must be non-negative")
    _check_path(p, lambdaL, softening)
    rho2 = p.rho**2

    def integrand(s):
        r = np.sqrt((p.x - lambdaL * s) ** 2 + rho2)
        return coulomb(r, Z, softening)[None, :] * _chebyshev_table(kmax, s)

    return np.atleast_1d(integrate_chebyshev_weight(integrand, spec))


def vk_numeric(k: int, p: SpacePoint, lambdaL: float, Z: int, softening: float = 0.0,
               spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Harmonic component v_k at ``p`` by Gauss-Chebyshev quadrature.

    With ``softening == 0`` the integration path must avoid r = 0, i.e. the
    point must be off the polarization axis or farther than lambda_L along it.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    return float(vk_components(k, p, lambdaL, Z, softening, spec)[k])


def vk_coulomb_dipole(n: int, x: float, lambdaL: float, Z: int) -> float:
    """Closed-form odd component v_{2n+1} of the bare Coulomb potential.

    Returns the real magnitude (2n+1) (Z e^2 / lambda_L) (x / lambda_L); the
    complex phase is :func:`vk_coulomb_phase`. Rates only need |v|^2.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if not lambdaL > 0:
        raise DomainError(f"lambda_L must be positive, got {lambdaL}")
    return (2 * n + 1) * (Z * ALPHA / lambdaL) * (x / lambdaL)


def vk_coulomb_phase(n: int) -> complex:
    """Phase factor -i (-1)^n multiplying :func:`vk_coulomb_dipole`."""
    return complex(0.0, -((-1) ** n))


def A_coefficient(n: int) -> float:
    """Moment <s^{2n}> of the arcsine distribution, (2n-1)!!/(2n)!!."""
    if n < 1:
        raise DomainError("n must be >= 1")
    out = 1.0
    for j in range(1, n + 1):
        out *= (2 * j - 1) / (2 * j)
    return out


def _series_bracket(p: SpacePoint, lambdaL: float, n_terms: int) -> float:
    r = p.r
    if r == 0:
        raise SingularityError("dressed potential series is singular at r = 0")
    if n_terms < 0:
        raise DomainError("n_terms must be non-negative")
    if r < lambdaL and n_terms > MAX_TERMS_INSIDE:
        raise DomainError(
            f"series diverges for r < lambda_L; n_terms={n_terms} exceeds {MAX_TERMS_INSIDE}"
        )
    ratio2 = (lambdaL / r) ** 2
    c = p.x / r
    total = 0.0
    power = 1.0
    for n in range(1, n_terms + 1):
        power *= ratio2
        total += A_coefficient(n) * power * legendre_P(2 * n, c)
    return total


def v0_series(p: SpacePoint, lambdaL: float, Z: int, n_terms: int) -> float:
    """Static dressed potential -Z e^2/r [1 + sum A_n (lambda_L/r)^{2n} P_2n(x/r)].

    Exact (for n_terms -> inf) when r > lambda_L.
    """
    bracket = _series_bracket(p, lambdaL, n_terms)
    return -Z * ALPHA / p.r * (1.0 + bracket)


def delta_LV(p: SpacePoint, lambdaL: float, Z: int, n_terms: int) -> float:
    """Laser-induced part of the static potential, v_0 - V(r)."""
    bracket = _series_bracket(p, lambdaL, n_terms)
    return -Z * ALPHA / p.r * bracket


def delta_LV_taylor(p: SpacePoint, lambdaL: float, Z: int) -> float:
    """Quadratic Taylor term (lambda_L^2/4r^3)[V' y^2 + V' z^2 + V'' x^2 r] for Coulomb."""
    r = p.r
    v1 = Z * ALPHA / r**2
    v2 = -2.0 * Z * ALPHA / r**3
    return lambdaL**2 / (4.0 * r**3) * (v1 * p.y**2 + v1 * p.z**2 + v2 * p.x**2 * r)


@dataclass(frozen=True)
class ParityReport:
    k: int
    value: float
    vanishes: bool
    softening: float

    @property
    def expected_sign(self) -> int:
        """(-1)^n for k = 2n+1; 0 for even k."""
        return 0 if self.k % 2 == 0 else (-1) ** ((self.k - 1) // 2)


def dipole_projection(k: int, lambdaL: float, Z: int, softening: float,
                      spec: QuadratureSpec = SELECTION_SPEC) -> float:
    """int V'(lambda_L |s|) sign(s) T_k(s) ds / (pi sqrt(1-s^2)), softened Coulomb.

    This is the coefficient of -x in the first-order Taylor term of v_k.
    """
    if not softening > 0:
        raise DomainError("dipole projection needs a positive softening length")

    def integrand(s):
        # V'(lambda |s|) sign(s) written as an explicitly odd function of s
        u = lambdaL * s
        return Z * ALPHA * u / (u * u + softening**2) ** 1.5 * chebyshev_T(k, s)

    if k % 2 == 0:
        # odd integrand: a single fixed rule is exact, pairs cancel identically
        return float(gauss_chebyshev(integrand, spec.node_count))
    return float(integrate_chebyshev_weight(integrand, spec))


def odd_harmonic_selection_check(k: int, lambdaL: float, Z: int, softening: float,
                                 spec: QuadratureSpec = SELECTION_SPEC) -> ParityReport:
    """Dipole projection of harmonic k and whether it vanishes."""
    if k < 1:
        raise DomainError("k must be >= 1")
    value = dipole_projection(k, lambdaL, Z, softening, spec)
    return ParityReport(k=k, value=value, vanishes=value == 0.0, softening=softening)


# phase offset of the weights for a(t) = lambda_L sin(wt) and lambda_L cos(wt)
_DRIVE_OFFSET = {"sin": 0.5 * math.pi, "cos": math.pi}


def _drive_offset(drive: str) -> float:
    try:
        return _DRIVE_OFFSET[drive]
    except KeyError:
        raise DomainError(f"drive must be 'sin' or 'cos', got {drive!r}") from None


def harmonic_weight(k: int, omega_t, drive: str = "sin") -> np.ndarray:
    """Weight of v_k in V(x + a(t)).

    For a(t) = lambda_L sin(wt) this is i^k [e^{ik wt} + (-1)^k e^{-ik wt}]
    = 2 cos(k (wt + pi/2)); for a(t) = lambda_L cos(wt) it is 2 (-1)^k cos(k wt).
    """
    return 2.0 * np.cos(k * (np.asarray(omega_t, dtype=float) + _drive_offset(drive)))


def reconstruct_kh_potential(components: np.ndarray, omega_t, drive: str = "sin") -> np.ndarray:
    """Sum v_0 + sum_k weight_k(wt) v_k for components indexed by k."""
    components = np.asarray(components, dtype=float)
    omega_t = np.asarray(omega_t, dtype=float)
    out = np.full(omega_t.shape, components[0])
    for k in range(1, len(components)):
        out = out + harmonic_weight(k, omega_t, drive) * components[k]
    return out


def kh_potential_direct(p: SpacePoint, lambdaL: float, Z: int, omega_t, softening: float = 0.0,
                        drive: str = "sin"):
    """V(x + a(t)) with a(t) = lambda_L sin(wt) (or cos) along x."""
    phase = np.asarray(omega_t, dtype=float) + _drive_offset(drive) - 0.5 * math.pi
    shift = lambdaL * np.sin(phase)
    r = np.sqrt((p.x + shift) ** 2 + p.rho**2)
    return coulomb(r, Z, softening)


def vk_grid_rows(kmax: int, xs, ys, zs, lambdaL: float, Z: int, softening: float = 0.0,
                 spec: QuadratureSpec = QuadratureSpec()):
    """Rows (k, x, y, z, v_k) over the Cartesian product of coordinates."""
    for x in xs:
        for y in ys:
            for z in zs:
                comps = vk_components(kmax, SpacePoint(x, y, z), lambdaL, Z, softening, spec)
                for k, v in enumerate(comps):
                    yield k, float(x), float(y), float(z), float(v)
