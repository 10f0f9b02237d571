"""Special functions and quadrature kernels.

Chebyshev and Legendre polynomials are evaluated by three-term recurrence.
Bessel functions of integer order delegate to :func:`scipy.special.jv`.
Two integrators are provided: Gauss-Chebyshev for integrals carrying the
weight ``1/(pi sqrt(1-x^2))`` on (-1, 1), and scaled Gauss-Laguerre for
exponentially decaying radial integrands on (0, inf).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy import special

from .errors import AccuracyError, DomainError, IntegrandError

_EDGE = 1.0 - 1e-8


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 64
    target_rel_tol: float = 1e-10
    max_refinements: int = 6  # 64 -> 4096 nodes

    def __post_init__(self):
        if self.node_count < 2:
            raise DomainError("node_count must be >= 2")
        if not self.target_rel_tol > 0:
            raise DomainError("target_rel_tol must be positive")
        if self.max_refinements < 0:
            raise DomainError("max_refinements must be >= 0")

    def node_counts(self):
        return [self.node_count * 2**i for i in range(self.max_refinements + 1)]


def _check_unit_interval(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("argument outside [-1, 1]")
    return x


def chebyshev_T(k: int, x):
    """Chebyshev polynomial of the first kind T_k(x) on [-1, 1]."""
    if k < 0:
        raise DomainError(f"order must be non-negative, got {k}")
    x = _check_unit_interval(x)
    t_prev, t = np.ones_like(x), x.copy()
    if k == 0:
        out = t_prev
    else:
        for _ in range(k - 1):
            t_prev, t = t, 2.0 * x * t - t_prev
        out = t
    # the recurrence loses accuracy in the last ulps next to +-1
    edge = np.abs(x) > _EDGE
    if np.any(edge):
        ax = np.minimum(np.abs(x), 1.0)
        sign = np.where(x < 0, (-1.0) ** k, 1.0)
        out = np.where(edge, sign * np.cos(k * np.arccos(ax)), out)
    return out if out.ndim else float(out)


def legendre_P(n: int, x):
    """Legendre polynomial P_n(x) via Bonnet's recurrence."""
    if n < 0:
        raise DomainError(f"order must be non-negative, got {n}")
    x = _check_unit_interval(x)
    p_prev, p = np.ones_like(x), x.copy()
    if n == 0:
        out = p_prev
    else:
        for m in range(1, n):
            p_prev, p = p, ((2 * m + 1) * x * p - m * p_prev) / (m + 1)
        out = p
    return out if out.ndim else float(out)


def bessel_J(n: int, x):
    """Bessel function of the first kind, integer order n (negative allowed).

    ``n`` and ``x`` broadcast against each other.
    """
    n = np.asarray(n)
    if not np.all(n == np.round(n)):
        raise DomainError("only integer orders are supported")
    out = special.jv(n.astype(float), np.asarray(x, dtype=float))
    return out if np.ndim(out) else float(out)


@functools.lru_cache(maxsize=64)
def chebyshev_nodes(n: int) -> np.ndarray:
    """Gauss-Chebyshev nodes cos((2i-1) pi / 2n), exactly mirror-symmetric.

    Only the non-negative half is computed; the rest is its negation, so an
    odd integrand cancels pairwise to exactly zero.
    """
    half = n // 2
    theta = (2.0 * np.arange(1, half + 1) - 1.0) * np.pi / (2.0 * n)
    pos = np.cos(theta)
    mid = np.zeros(n % 2)
    nodes = np.concatenate([pos, mid, -pos[::-1]])
    nodes.flags.writeable = False
    return nodes


def _chebyshev_mean(values: np.ndarray) -> np.ndarray:
    """Average along axis -1, summing mirrored node pairs first."""
    n = values.shape[-1]
    half = n // 2
    paired = values[..., :half] + values[..., n - half:][..., ::-1]
    total = paired.sum(axis=-1)
    if n % 2:
        total = total + values[..., half]
    return total / n


def gauss_chebyshev(f, n: int):
    """Fixed-order rule for (1/pi) int_{-1}^{1} f(x) / sqrt(1 - x^2) dx.

    ``f`` must be vectorized over a 1-d node array; it may return extra
    leading axes (several integrands at once), the nodes being the last axis.
    """
    nodes = chebyshev_nodes(n)
    values = np.asarray(f(nodes), dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.argwhere(bad)[0][-1]
        raise IntegrandError(f"non-finite integrand at node x = {nodes[idx]!r}", node=float(nodes[idx]))
    return _chebyshev_mean(values)


def integrate_chebyshev_weight(f, spec: QuadratureSpec = QuadratureSpec()):
    """Integrate f against the normalized Chebyshev weight 1/(pi sqrt(1-x^2)).

    The weight integrates to one. Node count doubles until successive
    estimates agree to ``spec.target_rel_tol``; vector-valued integrands
    converge componentwise relative to their largest entry.
    """
    prev = None
    err = math.inf
    for n in spec.node_counts():
        nodes = chebyshev_nodes(n)
        values = np.asarray(f(nodes), dtype=float)
        bad = ~np.isfinite(values)
        if np.any(bad):
            idx = np.argwhere(bad)[0][-1]
            raise IntegrandError(f"non-finite integrand at node x = {nodes[idx]!r}", node=float(nodes[idx]))
        est = _chebyshev_mean(values)
        scale = max(np.max(np.abs(est)), np.mean(np.abs(values)))
        if prev is not None:
            err = np.max(np.abs(est - prev))
            if err <= spec.target_rel_tol * scale:
                return est if np.ndim(est) else float(est)
        prev = est
    raise AccuracyError(
        f"Gauss-Chebyshev did not converge with {spec.node_counts()[-1]} nodes",
        estimate=prev,
        error=float(err),
    )


_LAGUERRE_MAX = 160  # e^{node} overflows beyond this


@functools.lru_cache(maxsize=16)
def _laguerre_rule(n: int):
    x, w = laggauss(n)
    return x, w * np.exp(x)


def integrate_radial(f, decay_scale: float, spec: QuadratureSpec = QuadratureSpec(node_count=16, max_refinements=3)):
    """Integrate f over (0, inf) with scaled Gauss-Laguerre quadrature.

    ``decay_scale`` is the length s with f ~ exp(-r/s); the rule is exact for
    polynomial times exp(-r/s). Raises :class:`AccuracyError` if doubling the
    node count does not reach the tolerance.
    """
    if not decay_scale > 0:
        raise DomainError("decay_scale must be positive")
    prev = None
    err = math.inf
    for n in spec.node_counts():
        if n > _LAGUERRE_MAX:
            break
        x, w = _laguerre_rule(n)
        r = decay_scale * x
        values = np.asarray(f(r), dtype=float)
        if not np.all(np.isfinite(values)):
            idx = int(np.argwhere(~np.isfinite(values))[0][0])
            raise IntegrandError(f"non-finite radial integrand at r = {r[idx]!r}", node=float(r[idx]))
        est = decay_scale * float(np.dot(w, values))
        if prev is not None:
            err = abs(est - prev)
            scale = max(abs(est), decay_scale * float(np.dot(w, np.abs(values))))
            if err <= spec.target_rel_tol * scale:
                return est
        prev = est
    raise AccuracyError("radial quadrature did not converge", estimate=prev, error=err)


def wigner_3j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """Wigner 3j symbol for integer arguments (Racah formula)."""
    if m1 + m2 + m3 != 0:
        return 0.0
    if j3 < abs(j1 - j2) or j3 > j1 + j2:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return 0.0
    f = math.factorial
    tri = f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3) / f(j1 + j2 + j3 + 1)
    pre = math.sqrt(
        tri * f(j1 + m1) * f(j1 - m1) * f(j2 + m2) * f(j2 - m2) * f(j3 + m3) * f(j3 - m3)
    )
    kmin = max(0, j2 - j3 - m1, j1 - j3 + m2)
    kmax = min(j1 + j2 - j3, j1 - m1, j2 + m2)
    total = 0.0
    for k in range(kmin, kmax + 1):
        total += (-1) ** k / (
            f(k) * f(j1 + j2 - j3 - k) * f(j1 - m1 - k) * f(j2 + m2 - k) * f(j3 - j2 + m1 + k) * f(j3 - j1 - m2 + k)
        )
    return (-1) ** (j1 - j2 - m3) * pre * total


def gaunt(l1: int, m1: int, l2: int, m2: int, l3: int, m3: int) -> float:
    """int conj(Y_{l1 m1}) Y_{l2 m2} Y_{l3 m3} dOmega (Condon-Shortley phases)."""
    if (l1 + l2 + l3) % 2:
        return 0.0
    # conj(Y_{l m}) = (-1)^m Y_{l,-m}
    return (
        (-1) ** m1
        * math.sqrt((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1) / (4.0 * math.pi))
        * wigner_3j(l1, l2, l3, 0, 0, 0)
        * wigner_3j(l1, l2, l3, -m1, m2, m3)
    )


def sph_harm_on_x_axis(l: int, m: int) -> float:
    """Y_{l m} evaluated at the +x direction (theta = pi/2, phi = 0); real."""
    if abs(m) > l:
        return 0.0
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * math.factorial(l - m) / math.factorial(l + m))
    return norm * float(special.lpmv(m, l, 0.0))


def legendre_x_axis_element(l1: int, m1: int, k: int, l2: int, m2: int) -> float:
    """Angular element <l1 m1| P_k(x/r) |l2 m2> with z-quantized harmonics.

    Uses the addition theorem
    P_k(x/r) = 4 pi/(2k+1) sum_q conj(Y_kq(x_hat)) Y_kq(r_hat).
    """
    q = m1 - m2
    if abs(q) > k:
        return 0.0
    return 4.0 * math.pi / (2 * k + 1) * sph_harm_on_x_axis(k, q) * gaunt(l1, m1, k, q, l2, m2)
