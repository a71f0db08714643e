"""Smoothed maxima, Gibbs measures on index sets, and log-Laplace calculus.

For a finite T in R^n and beta > 0 the smoothed maximum is

    F_beta(x) = (1/beta) log sum_t exp(beta <x, t>),

which brackets the true maximum:  max <= F_beta <= max + log|T|/beta
(|T| counts rows, duplicates included).  Its partial derivatives along a
coordinate are central moments of the coordinate functional l_i(t) = t_i
under the Gibbs measure with weights proportional to exp(beta <x, t>).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .index_sets import IndexSet, geometric_profile
from . import numdiff

WEIGHT_FLUSH = 1e-300

# moment-bound constants for the third and fourth log-Laplace derivatives
THIRD_DERIV_CONST = 6.0
FOURTH_DERIV_CONST = 26.0


def _require_beta(beta: float) -> float:
    beta = float(beta)
    if not beta > 0.0 or not math.isfinite(beta):
        raise ValueError("beta must be positive and finite")
    return beta


def log_partition(T: IndexSet, beta: float, x) -> float:
    """F_beta(x), evaluated stably (max subtraction via logsumexp)."""
    beta = _require_beta(beta)
    z = beta * (T.points @ np.asarray(x, dtype=np.float64))
    return float(logsumexp(z)) / beta


def log_partition_rows(T: IndexSet, beta: float, X: np.ndarray) -> np.ndarray:
    """F_beta at each row of X, shape (m, n) -> (m,)."""
    beta = _require_beta(beta)
    Z = beta * (X @ T.points.T)
    return logsumexp(Z, axis=1) / beta


def sandwich_gap(T: IndexSet, beta: float, x):
    """(F_beta(x) - max_t <x,t>, log|T|/beta); the gap lies in [0, bound]."""
    beta = _require_beta(beta)
    z = T.points @ np.asarray(x, dtype=np.float64)
    top = float(z.max())
    f = float(logsumexp(beta * z)) / beta
    return f - top, T.log_cardinality / beta


@dataclass(frozen=True)
class WeightedMeasure:
    """A probability measure on the rows of an index set."""

    base: IndexSet
    weights: np.ndarray

    def moment(self, i: int, k: int, absolute: bool = False) -> float:
        li = self.base.points[:, i]
        vals = np.abs(li) ** k if absolute else li ** k
        return float(self.weights @ vals)


@dataclass(frozen=True)
class GibbsMeasure(WeightedMeasure):
    """Gibbs measure on T at inverse temperature beta and location x."""

    beta: float = 1.0
    location: np.ndarray | None = None


def uniform_measure(T: IndexSet) -> WeightedMeasure:
    w = np.full(T.cardinality, 1.0 / T.cardinality)
    w.setflags(write=False)
    return WeightedMeasure(T, w)


def weighted_measure(T: IndexSet, weights) -> WeightedMeasure:
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (T.cardinality,):
        raise ValueError("weights must have one entry per point")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and nonnegative")
    s = w.sum()
    if s <= 0:
        raise ValueError("weights must have positive total mass")
    w = w / s
    w.setflags(write=False)
    return WeightedMeasure(T, w)


def _normalized_exp(z: np.ndarray) -> np.ndarray:
    z = z - z.max()
    w = np.exp(z)
    w[w < WEIGHT_FLUSH] = 0.0
    return w / w.sum()


def gibbs_measure(T: IndexSet, beta: float, x) -> GibbsMeasure:
    """Weights proportional to exp(beta <x, t>), max-subtracted; weights
    below 1e-300 flush to exact zero."""
    beta = _require_beta(beta)
    x = np.asarray(x, dtype=np.float64)
    w = _normalized_exp(beta * (T.points @ x))
    w.setflags(write=False)
    return GibbsMeasure(T, w, beta, x)


def gibbs_weights(T: IndexSet, beta: float, x) -> np.ndarray:
    return gibbs_measure(T, beta, x).weights


def gibbs_moment(mu: WeightedMeasure, i: int, k: int,
                 absolute: bool = False) -> float:
    """E_mu[l_i^k] (or E_mu|l_i|^k), l_i(t) = t_i."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return mu.moment(i, k, absolute)


def log_partition_grad(T: IndexSet, beta: float, x) -> np.ndarray:
    """grad F_beta(x) = E_mu[t]; lies in the convex hull of T."""
    mu = gibbs_measure(T, beta, x)
    return mu.weights @ T.points


def _central_moments(w: np.ndarray, li: np.ndarray, up_to: int):
    m1 = float(w @ li)
    c = li - m1
    out = {1: m1}
    for k in range(2, up_to + 1):
        out[k] = float(w @ c ** k)
    return out


def log_partition_partial(T: IndexSet, beta: float, x, i: int,
                          order: int) -> float:
    """Analytic coordinate partials of F_beta of orders 1..4.

    d1 = E[l_i]; d2 = beta Var; d3 = beta^2 E[(l_i - E l_i)^3];
    d4 = beta^3 (E[(l_i - E l_i)^4] - 3 Var^2).  All moments under the
    Gibbs measure at (beta, x).
    """
    if order not in (1, 2, 3, 4):
        raise ValueError("order must be in 1..4")
    beta = _require_beta(beta)
    mu = gibbs_measure(T, beta, x)
    li = T.points[:, i]
    cm = _central_moments(mu.weights, li, max(order, 2))
    if order == 1:
        return cm[1]
    if order == 2:
        return beta * cm[2]
    if order == 3:
        return beta ** 2 * cm[3]
    return beta ** 3 * (cm[4] - 3.0 * cm[2] ** 2)


def log_partition_partials_rows(T: IndexSet, beta: float, X: np.ndarray,
                                i: int, order: int) -> np.ndarray:
    """log_partition_partial at each row of X in one vectorized pass."""
    if order not in (2, 3, 4):
        raise ValueError("order must be in 2..4")
    beta = _require_beta(beta)
    Z = beta * (X @ T.points.T)
    Z -= Z.max(axis=1, keepdims=True)
    W = np.exp(Z)
    W[W < WEIGHT_FLUSH] = 0.0
    W /= W.sum(axis=1, keepdims=True)
    li = T.points[:, i]
    m1 = W @ li
    C = li[None, :] - m1[:, None]
    if order == 2:
        return beta * np.einsum("bt,bt->b", W, C ** 2)
    if order == 3:
        return beta ** 2 * np.einsum("bt,bt->b", W, C ** 3)
    var = np.einsum("bt,bt->b", W, C ** 2)
    m4 = np.einsum("bt,bt->b", W, C ** 4)
    return beta ** 3 * (m4 - 3.0 * var ** 2)


@dataclass(frozen=True)
class DerivativeBoundReport:
    """Analytic partials vs their Gibbs-moment majorants at one (x, i)."""

    d2: float
    d3: float
    d4: float
    d2_bound: float
    d3_bound: float
    d4_bound: float
    ok: bool


def derivative_bound_check(T: IndexSet, beta: float, x, i: int,
                           slack: float = 1e-12) -> DerivativeBoundReport:
    """Check 0 <= d2 <= beta E[l_i^2], |d3| <= 6 beta^2 E|l_i|^3,
    |d4| <= 26 beta^3 E[l_i^4], moments under the Gibbs measure."""
    beta = _require_beta(beta)
    mu = gibbs_measure(T, beta, x)
    li = T.points[:, i]
    cm = _central_moments(mu.weights, li, 4)
    d2 = beta * cm[2]
    d3 = beta ** 2 * cm[3]
    d4 = beta ** 3 * (cm[4] - 3.0 * cm[2] ** 2)
    b2 = beta * gibbs_moment(mu, i, 2, absolute=True)
    b3 = THIRD_DERIV_CONST * beta ** 2 * gibbs_moment(mu, i, 3, absolute=True)
    b4 = FOURTH_DERIV_CONST * beta ** 3 * gibbs_moment(mu, i, 4)
    tol = slack * max(1.0, b2, b3, b4)
    ok = (-tol <= d2 <= b2 + tol) and abs(d3) <= b3 + tol and abs(d4) <= b4 + tol
    return DerivativeBoundReport(d2, d3, d4, b2, b3, b4, ok)


def log_laplace(mu: WeightedMeasure, x) -> float:
    """Lambda_mu(x) = log E_mu exp(<x, l>), computed stably."""
    x = np.asarray(x, dtype=np.float64)
    z = mu.base.points @ x
    with np.errstate(divide="ignore"):
        logw = np.where(mu.weights > 0, np.log(mu.weights), -np.inf)
    return float(logsumexp(z + logw))


def tilted_measure(mu: WeightedMeasure, x) -> WeightedMeasure:
    """The measure with density proportional to exp(<x, l>) against mu."""
    x = np.asarray(x, dtype=np.float64)
    z = mu.base.points @ x
    with np.errstate(divide="ignore"):
        logw = np.where(mu.weights > 0, np.log(mu.weights), -np.inf)
    w = _normalized_exp(z + logw)
    w.setflags(write=False)
    return WeightedMeasure(mu.base, w)


def log_laplace_partial(mu: WeightedMeasure, x, i: int, order: int) -> float:
    """Coordinate partials of Lambda_mu at x: central moments of l_i under
    the tilted measure (the beta = 1 case of log_partition_partial)."""
    if order not in (1, 2, 3, 4):
        raise ValueError("order must be in 1..4")
    nu = tilted_measure(mu, x)
    li = mu.base.points[:, i]
    cm = _central_moments(nu.weights, li, max(order, 2))
    if order == 1:
        return cm[1]
    if order == 2:
        return cm[2]
    if order == 3:
        return cm[3]
    return cm[4] - 3.0 * cm[2] ** 2


def uniform_identity_gap(T: IndexSet, beta: float, x) -> float:
    """|F_beta(x) - (log|T| + Lambda_nu(beta x))/beta| for nu uniform on T.

    Identically zero in exact arithmetic; the return is the float residual.
    """
    beta = _require_beta(beta)
    lhs = log_partition(T, beta, x)
    rhs = (T.log_cardinality
           + log_laplace(uniform_measure(T), beta * np.asarray(x, float))) / beta
    return abs(lhs - rhs)


@dataclass(frozen=True)
class LipschitzMomentReport:
    """Log fourth-moment shift between two Gibbs locations vs its bounds."""

    log_moment_x: float
    log_moment_y: float
    gap: float
    general_bound: float
    coordinate_bound: float | None
    ok: bool


def lipschitz_log_moment_check(T: IndexSet, beta: float, x, y, i: int,
                               k: int = 4,
                               slack: float = 1e-10) -> LipschitzMomentReport:
    """Check |log E_{mu_x}|l_i|^k - log E_{mu_y}|l_i|^k| <= 2 beta sup_t |<t, x-y>|.

    When x - y is supported on coordinate i alone the sharper coordinate form
    2 beta Rinf |x_i - y_i| is also checked (Rinf = sup_t |t|_inf).
    """
    beta = _require_beta(beta)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    mx = gibbs_moment(gibbs_measure(T, beta, x), i, k, absolute=True)
    my = gibbs_moment(gibbs_measure(T, beta, y), i, k, absolute=True)
    if mx == 0.0 and my == 0.0:
        gap = 0.0
        lx = ly = -math.inf
    elif mx == 0.0 or my == 0.0:
        # flushed weights can zero a moment; report an honest infinite gap
        gap = math.inf
        lx = -math.inf if mx == 0.0 else math.log(mx)
        ly = -math.inf if my == 0.0 else math.log(my)
    else:
        lx, ly = math.log(mx), math.log(my)
        gap = abs(lx - ly)
    diff = x - y
    general = 2.0 * beta * float(np.abs(T.points @ diff).max())
    support = np.nonzero(diff)[0]
    coord = None
    if support.size == 0:
        coord = 0.0
    elif support.size == 1 and support[0] == i:
        coord = 2.0 * beta * geometric_profile(T).rinf * abs(float(diff[i]))
    bound = general if coord is None else min(general, coord)
    ok = gap <= bound + slack * max(1.0, bound)
    return LipschitzMomentReport(lx, ly, gap, general, coord, ok)


def grad_fd_report(T: IndexSet, beta: float, x, i: int, order: int):
    """(analytic, finite-difference) pair for one partial; testing hook."""
    x = np.asarray(x, dtype=np.float64)
    analytic = log_partition_partial(T, beta, x, i, order)
    # the value varies on scale 1/(beta max|t_i|) along coordinate i, so the
    # step shrinks by that factor; a zero column makes the partial exactly 0
    scale = beta * float(np.abs(T.points[:, i]).max())
    h = numdiff.default_step(order, 0.0) / scale if scale > 0 else None
    fd = numdiff.central_partial_batched(
        lambda locs: log_partition_rows(T, beta, locs), x, i, order, h)
    return analytic, fd


def collapse_weight(T: IndexSet, x, margin_factor: float = 50.0) -> float:
    """Gibbs weight of the maximizing row at beta = margin_factor / margin,
    margin = gap between the best and second-best inner products.  Requires
    a unique maximizer among distinct values."""
    z = T.points @ np.asarray(x, dtype=np.float64)
    order = np.argsort(z)
    top, second = z[order[-1]], z[order[-2]]
    margin = top - second
    if margin <= 0:
        raise ValueError("maximizer is not unique")
    beta = margin_factor / margin
    w = gibbs_weights(T, beta, x)
    return float(w[order[-1]])
