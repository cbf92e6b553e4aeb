"""Adaptive Gauss-Kronrod integration, including thermally damped integrals.

``integrate`` is a globally adaptive bisection scheme: every panel carries a
21-point Kronrod estimate and the difference to the embedded 10-point Gauss
rule as its error; the panel with the largest error is split until the total
error meets the tolerance.  ``integrate_thermal`` applies it to
int_0^inf f(w) / sinh^2(beta w / 2) dw on [0, cutoff_multiplier / beta].
"""

from dataclasses import dataclass
import heapq
import math

import numpy as np
from numpy.polynomial import legendre as _leg

from ._backend import kernels
from .errors import DomainError, IntegrandError


def _kronrod_rule(n):
    """Nodes and weights of the (2n+1)-point Kronrod extension of n-point Gauss-Legendre.

    The n+1 new nodes are the zeros of the Stieltjes polynomial, which is
    orthogonal to every polynomial of degree <= n under the weight P_n(x).
    Weights follow from exactness on P_0 .. P_2n.
    """
    gx, gw = _leg.leggauss(n)
    qx, qw = _leg.leggauss(3 * n + 4)
    pn = _leg.legval(qx, [0] * n + [1])
    # E_{n+1} = P_{n+1} + sum_{m<=n} c_m P_m
    basis = np.array([_leg.legval(qx, [0] * m + [1]) for m in range(n + 2)])
    a = np.array([[np.sum(qw * pn * basis[m] * basis[j]) for m in range(n + 1)] for j in range(n + 1)])
    b = -np.array([np.sum(qw * pn * basis[n + 1] * basis[j]) for j in range(n + 1)])
    coef, *_ = np.linalg.lstsq(a, b, rcond=None)
    coef = np.append(coef, 1.0)
    new = np.sort(np.real(_leg.legroots(coef)))
    nodes = np.sort(np.concatenate([gx, new]))
    vander = np.array([_leg.legval(nodes, [0] * j + [1]) for j in range(2 * n + 1)])
    moments = np.zeros(2 * n + 1)
    moments[0] = 2.0
    kw = np.linalg.solve(vander, moments)
    # symmetrize to kill rounding asymmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    kw = 0.5 * (kw + kw[::-1])
    gauss_weights = np.zeros_like(nodes)
    idx = np.searchsorted(nodes, gx - 1e-14)
    gauss_weights[idx] = gw
    return nodes, kw, gauss_weights


GK_NODES, GK_WEIGHTS, G_WEIGHTS = _kronrod_rule(10)


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-30
    max_subdivisions: int = 2000
    cutoff_multiplier: float = 40.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if not self.abs_tol >= 0:
            raise DomainError("abs_tol must be >= 0")
        if self.max_subdivisions < 10:
            raise DomainError("max_subdivisions must be >= 10")
        if not self.cutoff_multiplier >= 10:
            raise DomainError("cutoff_multiplier must be >= 10")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool


def _panel(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * GK_NODES
    y = np.asarray(f(x), dtype=np.float64)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise IntegrandError(f"integrand is not finite at omega = {bad!r}", omega=float(bad))
    k = half * float(np.dot(GK_WEIGHTS, y))
    g = half * float(np.dot(G_WEIGHTS, y))
    return k, abs(k - g)


def integrate(f, a, b, rel_tol=1e-8, abs_tol=0.0, max_subdivisions=2000, breakpoints=()):
    """Adaptive integral of a vectorized callable ``f`` over [a, b].

    ``breakpoints`` inside (a, b) start as panel edges, so features there are
    seen from the first pass.  Returns a :class:`QuadratureResult`.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, True)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})
    heap = []
    evals = 0
    # heap items: (-error, insertion order, a, b, value, error)
    order = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _panel(f, lo, hi)
        evals += len(GK_NODES)
        heap.append((-err, order, lo, hi, val, err))
        order += 1
    heapq.heapify(heap)
    splits = 0
    while True:
        total = math.fsum(item[4] for item in heap)
        error = math.fsum(item[5] for item in heap)
        if error <= max(rel_tol * abs(total), abs_tol):
            converged = True
            break
        if splits >= max_subdivisions:
            converged = False
            break
        _, _, lo, hi, _, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:  # panel below float resolution
            converged = False
            break
        for p, q in ((lo, mid), (mid, hi)):
            val, err = _panel(f, p, q)
            evals += len(GK_NODES)
            heapq.heappush(heap, (-err, order, p, q, val, err))
            order += 1
        splits += 1
    return QuadratureResult(sign * total, error, evals, converged)


def thermal_integrand(f, beta):
    """Wrap ``f`` as f(w) / sinh^2(beta w / 2) with the small-argument series guard."""

    def g(w):
        w = np.asarray(w, dtype=np.float64)
        return np.asarray(f(w)) * kernels.inv_sinh2_half(beta, w.ravel()).reshape(w.shape)

    return g


def thermal_cutoff(beta, settings=None, omega_max=None):
    settings = settings or QuadratureSettings()
    cut = settings.cutoff_multiplier / beta
    if omega_max is not None:
        cut = min(cut, omega_max)
    return cut


def integrate_thermal(f, beta, settings=None, breakpoints=(), omega_max=None):
    """int_0^inf f(w) / sinh^2(beta w / 2) dw, truncated at cutoff_multiplier / beta.

    ``omega_max`` lowers the truncation point further (e.g. to stay below an
    atomic resonance); the neglected tail estimate 4 |f(w_c)| exp(-beta w_c) / beta
    is added to the error either way.
    """
    settings = settings or QuadratureSettings()
    if not beta > 0:
        raise DomainError("beta must be positive")
    cut = thermal_cutoff(beta, settings, omega_max)
    res = integrate(
        thermal_integrand(f, beta),
        0.0,
        cut,
        rel_tol=settings.rel_tol,
        abs_tol=settings.abs_tol,
        max_subdivisions=settings.max_subdivisions,
        breakpoints=breakpoints,
    )
    f_cut = float(np.asarray(f(np.array([cut]))).reshape(-1)[0])
    tail = 4.0 * abs(f_cut) * math.exp(-beta * cut) / beta
    err = res.error_estimate + tail
    converged = res.converged and err <= max(settings.rel_tol * abs(res.value), settings.abs_tol)
    return QuadratureResult(res.value, err, res.evaluations + 1, converged)


def trapezoid_thermal(f, beta, omega_cut, panels=1_000_000):
    """Composite trapezoid of f(w)/sinh^2(beta w/2) on [0, omega_cut] with uniform panels.

    Brute-force reference; the w = 0 endpoint is replaced by a point 1e-6 of a
    panel in, which equals the limit to first order.
    """
    w = np.linspace(0.0, omega_cut, panels + 1)
    h = omega_cut / panels
    w[0] = 1e-6 * h
    y = np.asarray(f(w)) / np.sinh(0.5 * beta * w) ** 2
    return h * (math.fsum(y[1:-1]) + 0.5 * (y[0] + y[-1]))
