"""Ornstein-Uhlenbeck semigroup, its potential operator, and discrete
second-order (Stein-type) integral representations.

The semigroup is P_t f(x) = E f(e^{-t} x + sqrt(1 - e^{-2t}) G) with G
standard Gaussian; its generator is L f = Laplacian f - <x, grad f>, and
the potential is PP f(x) = int_0^inf (P_t f(x) - E f(G)) dt, satisfying
f - E f(G) = -L PP f = -PP L f.

Polynomials get exact closed forms throughout (smoothing is a binomial
expansion against Gaussian moments, the time integrals become polynomial
integrals in u = e^{-t}, so Gauss-Legendre quadrature is exact).  Other
test functions (the smoothed maximum) go through Monte-Carlo with common
random numbers across quadrature nodes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .distributions import DEFAULT_SEED, CoordinateDistribution, RandomStream
from .index_sets import IndexSet, geometric_profile, sign_patterns
from . import softmax as sm

T_MAX_CAP = 60.0


def _gauss_moment(k: int) -> float:
    """E G^k for standard Gaussian: (k-1)!! for even k, 0 for odd."""
    if k % 2 == 1:
        return 0.0
    out = 1.0
    for j in range(k - 1, 0, -2):
        out *= j
    return out


class Polynomial:
    """Multivariate polynomial as a dict {exponent tuple: coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.terms = {}
        if terms:
            for expo, coeff in terms.items():
                expo = tuple(int(e) for e in expo)
                if len(expo) != n or any(e < 0 for e in expo):
                    raise ValueError(f"bad exponent tuple {expo}")
                c = self.terms.get(expo, 0.0) + float(coeff)
                if c == 0.0:
                    self.terms.pop(expo, None)
                else:
                    self.terms[expo] = c

    @classmethod
    def constant(cls, n: int, c: float) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def linear(cls, a) -> "Polynomial":
        a = np.asarray(a, dtype=np.float64)
        n = a.size
        terms = {}
        for i, c in enumerate(a):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = float(c)
        return cls(n, terms)

    @classmethod
    def coordinate_power(cls, n: int, i: int, k: int,
                         coeff: float = 1.0) -> "Polynomial":
        e = [0] * n
        e[i] = k
        return cls(n, {tuple(e): coeff})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        terms = dict(self.terms)
        out = Polynomial(self.n, terms)
        for expo, c in other.terms.items():
            nc = out.terms.get(expo, 0.0) + c
            if nc == 0.0:
                out.terms.pop(expo, None)
            else:
                out.terms[expo] = nc
        return out

    def __mul__(self, c: float) -> "Polynomial":
        return Polynomial(self.n, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (other * -1.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        batched = x.ndim == 2
        acc = np.zeros(x.shape[0]) if batched else 0.0
        for expo, c in self.terms.items():
            term = c
            for i, e in enumerate(expo):
                if e:
                    term = term * (x[:, i] ** e if batched else x[i] ** e)
            acc = acc + term
        return acc

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def partial(self, i: int, order: int = 1) -> "Polynomial":
        p = self
        for _ in range(order):
            terms = {}
            for expo, c in p.terms.items():
                if expo[i] == 0:
                    continue
                e = list(expo)
                e[i] -= 1
                terms[tuple(e)] = terms.get(tuple(e), 0.0) + c * expo[i]
            p = Polynomial(self.n, terms)
        return p

    def multiply_coordinate(self, i: int) -> "Polynomial":
        """x_i * self."""
        terms = {}
        for expo, c in self.terms.items():
            e = list(expo)
            e[i] += 1
            terms[tuple(e)] = c
        return Polynomial(self.n, terms)

    def gaussian_mean(self) -> float:
        """E f(G) exactly via Gaussian moments of each monomial."""
        out = 0.0
        for expo, c in self.terms.items():
            m = c
            for e in expo:
                m *= _gauss_moment(e)
                if m == 0.0:
                    break
            out += m
        return out

    def ou_smoothed(self, t: float) -> "Polynomial":
        """P_t f, exactly: each x_i^k expands binomially against Gaussian
        moments of the sqrt(1 - e^{-2t}) component."""
        if t < 0:
            raise ValueError("t must be >= 0")
        a = math.exp(-t)
        b2 = max(0.0, 1.0 - a * a)
        out_terms = {}
        for expo, c in self.terms.items():
            active = [(i, k) for i, k in enumerate(expo) if k > 0]
            # per active coordinate: x_i^k -> sum_j C(k,j) a^{k-j} b2^{j/2} m_j x_i^{k-j}
            options = []
            for i, k in active:
                opts = []
                for j in range(0, k + 1, 2):
                    w = math.comb(k, j) * a ** (k - j) * b2 ** (j // 2) * _gauss_moment(j)
                    if w != 0.0:
                        opts.append((i, k - j, w))
                options.append(opts)
            for combo in itertools.product(*options):
                e = [0] * self.n
                w = c
                for i, rem, fac in combo:
                    e[i] = rem
                    w *= fac
                e = tuple(e)
                out_terms[e] = out_terms.get(e, 0.0) + w
        return Polynomial(self.n, out_terms)

    def generator(self) -> "Polynomial":
        """L f = Laplacian f - sum_i x_i d_i f, again a polynomial."""
        out = Polynomial(self.n, {})
        for i in range(self.n):
            out = out + self.partial(i, 2) - self.partial(i, 1).multiply_coordinate(i)
        return out

    def gradient_norm_bound(self, radius: float) -> float:
        """Upper bound on |grad f| over the ball of the given radius."""
        r = max(1.0, float(radius))
        sq = 0.0
        for i in range(self.n):
            bi = sum(abs(c) * r ** sum(e) for e, c in self.partial(i).terms.items())
            sq += bi ** 2
        return math.sqrt(sq)


class PolynomialFunction:
    """Polynomial test function with every operator in closed form."""

    kind = "polynomial"

    def __init__(self, poly: Polynomial):
        self.poly = poly
        self.n = poly.n

    def value(self, x) -> float:
        return float(self.poly(np.asarray(x, dtype=np.float64)))

    def value_rows(self, X) -> np.ndarray:
        return np.asarray(self.poly(np.asarray(X, dtype=np.float64)))

    def partial_value(self, x, i: int, order: int = 1) -> float:
        return float(self.poly.partial(i, order)(np.asarray(x, dtype=np.float64)))

    def partial_rows(self, X, i: int, order: int) -> np.ndarray:
        return np.asarray(self.poly.partial(i, order)(np.asarray(X, dtype=np.float64)))

    def generator_value(self, x) -> float:
        return float(self.poly.generator()(np.asarray(x, dtype=np.float64)))

    def generator_rows(self, X) -> np.ndarray:
        return np.asarray(self.poly.generator()(np.asarray(X, dtype=np.float64)))

    def gaussian_mean(self):
        return self.poly.gaussian_mean()

    def lipschitz_bound(self, radius: float) -> float:
        return self.poly.gradient_norm_bound(radius)

    def smoothed_value(self, t: float, x) -> float:
        return float(self.poly.ou_smoothed(t)(np.asarray(x, dtype=np.float64)))


class SoftmaxFunction:
    """F_beta for an index set; globally Lipschitz with constant R2."""

    kind = "softmax"

    def __init__(self, T: IndexSet, beta: float):
        self.T = T
        self.beta = float(beta)
        self.n = T.dim
        self._r2 = geometric_profile(T).r2

    def value(self, x) -> float:
        return sm.log_partition(self.T, self.beta, x)

    def value_rows(self, X) -> np.ndarray:
        return sm.log_partition_rows(self.T, self.beta, np.asarray(X, float))

    def partial_value(self, x, i: int, order: int = 1) -> float:
        return sm.log_partition_partial(self.T, self.beta, x, i, order)

    def partial_rows(self, X, i: int, order: int) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if order == 1:
            Z = self.beta * (X @ self.T.points.T)
            Z -= Z.max(axis=1, keepdims=True)
            W = np.exp(Z)
            W /= W.sum(axis=1, keepdims=True)
            return W @ self.T.points[:, i]
        return sm.log_partition_partials_rows(self.T, self.beta, X, i, order)

    def generator_value(self, x) -> float:
        return float(self.generator_rows(np.asarray(x, float)[None, :])[0])

    def generator_rows(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        pts = self.T.points
        Z = self.beta * (X @ pts.T)
        Z -= Z.max(axis=1, keepdims=True)
        W = np.exp(Z)
        W /= W.sum(axis=1, keepdims=True)
        M1 = W @ pts
        M2 = W @ pts ** 2
        lap = self.beta * (M2 - M1 ** 2).sum(axis=1)
        drift = (X * M1).sum(axis=1)
        return lap - drift

    def gaussian_mean(self):
        return None

    def lipschitz_bound(self, radius: float = 0.0) -> float:
        # grad F is a convex combination of the points
        return self._r2


@dataclass(frozen=True)
class OperatorEstimate:
    """A semigroup/potential evaluation with its error budget."""

    value: float
    std_error: float
    samples: int
    nodes: int
    t_max: float
    tail_bound: float
    method: str


def _stream_or_default(stream: RandomStream | None, tag: str) -> RandomStream:
    base = stream if stream is not None else RandomStream(DEFAULT_SEED)
    return base.substream(tag)


def ou_apply(f, t: float, x, samples: int = 4096,
             stream: RandomStream | None = None) -> OperatorEstimate:
    """Monte-Carlo P_t f(x); exact (zero-error) at t = 0."""
    if t < 0:
        raise ValueError("t must be >= 0")
    x = np.asarray(x, dtype=np.float64)
    if t == 0.0:
        return OperatorEstimate(f.value(x), 0.0, 0, 0, 0.0, 0.0, "exact-t0")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    rng = _stream_or_default(stream, "ou-apply").generator()
    a = math.exp(-t)
    b = math.sqrt(max(0.0, (1.0 - a) * (1.0 + a)))
    G = rng.standard_normal((samples, x.size))
    vals = f.value_rows(a * x + b * G)
    mean = float(np.mean(vals))
    se = float(np.std(vals, ddof=1)) / math.sqrt(samples)
    return OperatorEstimate(mean, se, samples, 0, t, 0.0, "mc")


def ou_apply_exact(f: PolynomialFunction, t: float, x) -> float:
    """Closed-form P_t f(x) for polynomial f."""
    if not isinstance(f, PolynomialFunction):
        raise TypeError("exact smoothing requires a polynomial test function")
    return f.smoothed_value(t, x)


def generator_apply(f, x) -> float:
    """L f(x) = Laplacian f(x) - <x, grad f(x)>."""
    return f.generator_value(x)


def _gauss_legendre(nodes: int, lo: float, hi: float):
    u, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * (hi - lo)
    return lo + half * (u + 1.0), half * w


def _u_polynomial(poly: Polynomial, x: np.ndarray) -> np.ndarray:
    """Coefficients q of u -> P_{-log u} poly (x) as a polynomial in u.

    Each x_i^k smooths to sum_j C(k,j) m_j x_i^{k-j} u^{k-j} (1-u^2)^{j/2}
    with j even, a polynomial in u; products convolve.  q[0] is E poly(G).
    """
    total = np.zeros(1)
    for expo, c in poly.terms.items():
        acc = np.array([float(c)])
        for i, k in enumerate(expo):
            if k == 0:
                continue
            factor = np.zeros(k + 1)
            for j in range(0, k + 1, 2):
                base = math.comb(k, j) * _gauss_moment(j) * float(x[i]) ** (k - j)
                if base == 0.0:
                    continue
                # u^{k-j} (1-u^2)^{j/2} expanded
                for l in range(j // 2 + 1):
                    factor[k - j + 2 * l] += base * math.comb(j // 2, l) * (-1.0) ** l
            acc = np.convolve(acc, factor)
        if acc.size > total.size:
            total = np.concatenate([total, np.zeros(acc.size - total.size)])
        total[:acc.size] += acc
    return total


def _gaussian_mean_estimate(f, n: int, samples: int,
                            stream: RandomStream | None):
    mg = f.gaussian_mean()
    if mg is not None:
        return float(mg), 0.0
    rng = _stream_or_default(stream, "gaussian-mean").generator()
    vals = f.value_rows(rng.standard_normal((samples, n)))
    return float(np.mean(vals)), float(np.std(vals, ddof=1)) / math.sqrt(samples)


def ou_potential(f, x, nodes: int = 64, samples: int = 2048,
                 stream: RandomStream | None = None,
                 tail_tol: float = 1e-9) -> OperatorEstimate:
    """PP f(x) = int_0^inf (P_t f(x) - E f(G)) dt.

    Substituting u = e^{-t} gives int_{u_min}^1 (P_{-log u} f(x) - E f(G))/u du
    on a finite interval; Gauss-Legendre there is exact for polynomials
    (the integrand is a polynomial in u) and the truncation tail is bounded
    by e^{-t_max} Lip(f) (|x| + sqrt(n)).
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if isinstance(f, PolynomialFunction):
        # the integrand (q(u) - q(0))/u is a polynomial in u; integrate it
        # term by term over [0, 1], with no truncation at all
        q = _u_polynomial(f.poly, x)
        value = sum(float(q[m]) / m for m in range(1, q.size))
        return OperatorEstimate(value, 0.0, 0, 0, math.inf, 0.0, "closed-form")
    mg, mg_se = _gaussian_mean_estimate(f, n, max(samples, 4096), stream)
    scale = f.lipschitz_bound(float(np.linalg.norm(x)) + math.sqrt(n)) \
        * (float(np.linalg.norm(x)) + math.sqrt(n))
    t_max = min(max(1.0, math.log(max(scale, tail_tol) / tail_tol)), T_MAX_CAP)
    tail = math.exp(-t_max) * scale
    u, w = _gauss_legendre(nodes, math.exp(-t_max), 1.0)
    if samples < 2:
        raise ValueError("samples must be >= 2")
    rng = _stream_or_default(stream, "ou-potential").generator()
    G = rng.standard_normal((samples, n))
    acc = np.zeros(samples)
    for uj, wj in zip(u, w):
        a = uj
        b = math.sqrt(max(0.0, (1.0 - a) * (1.0 + a)))
        acc += (wj / uj) * (f.value_rows(a * x + b * G) - mg)
    value = float(np.mean(acc))
    se_mc = float(np.std(acc, ddof=1)) / math.sqrt(samples)
    se = math.hypot(se_mc, t_max * mg_se)
    return OperatorEstimate(value, se, samples, nodes, t_max, tail,
                            "mc-quadrature")


def potential_partial(f, x, i: int, k: int, nodes: int = 64,
                      samples: int = 2048,
                      stream: RandomStream | None = None) -> OperatorEstimate:
    """d_i^{(k)} PP f(x) = int_0^inf e^{-kt} P_t(d_i^{(k)} f)(x) dt, k >= 1.

    The commutation identity pulls the derivative inside the semigroup at
    exponential cost e^{-kt}; with u = e^{-t} the integral is
    int_0^1 u^{k-1} P_{-log u}(d_i^{(k)} f)(x) du over the full interval,
    so there is no truncation error.  k = 0 delegates to ou_potential.
    """
    if k == 0:
        return ou_potential(f, x, nodes, samples, stream)
    if k < 0:
        raise ValueError("k must be >= 0")
    x = np.asarray(x, dtype=np.float64)
    if isinstance(f, PolynomialFunction):
        # int_0^1 u^{k-1} q(u) du with q polynomial: sum q_m / (m + k)
        q = _u_polynomial(f.poly.partial(i, k), x)
        value = sum(float(q[m]) / (m + k) for m in range(q.size))
        return OperatorEstimate(value, 0.0, 0, 0, math.inf, 0.0, "closed-form")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    u, w = _gauss_legendre(nodes, 0.0, 1.0)
    rng = _stream_or_default(stream, f"potential-partial-{i}-{k}").generator()
    G = rng.standard_normal((samples, x.size))
    acc = np.zeros(samples)
    for uj, wj in zip(u, w):
        a = uj
        b = math.sqrt(max(0.0, (1.0 - a) * (1.0 + a)))
        acc += wj * uj ** (k - 1) * f.partial_rows(a * x + b * G, i, k)
    value = float(np.mean(acc))
    se = float(np.std(acc, ddof=1)) / math.sqrt(samples)
    return OperatorEstimate(value, se, samples, nodes, math.inf, 0.0,
                            "mc-quadrature")


@dataclass(frozen=True)
class PoissonReport:
    """Both sides of f - E f(G) = -L PP f (and = -PP L f when closed-form)."""

    lhs: float
    rhs_generator_of_potential: float
    rhs_potential_of_generator: float | None
    std_error: float
    tolerance: float
    exact: bool
    ok: bool


def poisson_identity_check(f, x, nodes: int = 64, samples: int = 2048,
                           stream: RandomStream | None = None) -> PoissonReport:
    """Check f(x) - E f(G) = -L PP f(x); polynomials also check -PP L f(x).

    -L PP f = sum_i x_i d_i PP f - sum_i d_i^2 PP f, each partial through
    potential_partial.  Exact paths must agree to 1e-10; Monte-Carlo paths
    to 4 combined standard errors.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    base = stream if stream is not None else RandomStream(DEFAULT_SEED)
    mg, mg_se = _gaussian_mean_estimate(f, n, max(samples, 4096),
                                        base.substream("poisson-mean"))
    lhs = f.value(x) - mg
    rhs = 0.0
    var = mg_se ** 2
    exact = isinstance(f, PolynomialFunction)
    for i in range(n):
        d1 = potential_partial(f, x, i, 1, nodes, samples,
                               base.substream("poisson-d1", i))
        d2 = potential_partial(f, x, i, 2, nodes, samples,
                               base.substream("poisson-d2", i))
        rhs += float(x[i]) * d1.value - d2.value
        var += (float(x[i]) * d1.std_error) ** 2 + d2.std_error ** 2
    rhs2 = None
    if exact:
        gen = PolynomialFunction(f.poly.generator())
        rhs2 = -ou_potential(gen, x, nodes).value
    se = math.sqrt(var)
    tolerance = 1e-10 if exact else 4.0 * se + 1e-9
    ok = abs(lhs - rhs) <= tolerance
    if rhs2 is not None:
        ok = ok and abs(lhs - rhs2) <= tolerance
    return PoissonReport(lhs, rhs, rhs2, se, tolerance, exact, ok)


class HypothesisViolation(ValueError):
    """A moment hypothesis of an integral representation fails; the message
    names the violated assumption."""

    def __init__(self, moment: str, detail: str):
        super().__init__(f"hypothesis violated ({moment}): {detail}")
        self.moment = moment


@dataclass(frozen=True)
class SteinReport:
    """Both sides of a discrete integral representation of E L f(xi)."""

    variant: str
    lhs: float
    rhs: float
    std_error: float
    tolerance: float
    exact: bool
    replicates: int
    s_nodes: int
    ok: bool

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)


VARIANTS = ("third", "fourth")


def _stein_terms(f, X: np.ndarray, variant: str, s_nodes: int) -> np.ndarray:
    """Per-sample right-hand side of the representation, for sample rows X."""
    m, n = X.shape
    s, w = _gauss_legendre(s_nodes, 0.0, 1.0)
    order = 3 if variant == "third" else 4
    rhs = np.zeros(m)
    for i in range(n):
        xi = X[:, i]
        plain = np.zeros(m)
        lin = np.zeros(m)
        quad = np.zeros(m)
        base = X.copy()
        for sj, wj in zip(s, w):
            base[:, i] = sj * xi
            d = f.partial_rows(base, i, order)
            if variant == "third":
                plain += wj * d
                lin += wj * (1.0 - sj) * d
            else:
                lin += wj * (1.0 - sj) * d
                quad += wj * (1.0 - sj) ** 2 * d
        if variant == "third":
            rhs += xi * plain - xi ** 3 * lin
        else:
            rhs += xi ** 2 * lin - 0.5 * xi ** 4 * quad
    return rhs


def stein_representation_check(f, dist: CoordinateDistribution,
                               variant: str = "fourth",
                               stream: RandomStream | None = None,
                               replicates: int = 2000, s_nodes: int = 32,
                               force_mc: bool = False) -> SteinReport:
    """Check E L f(xi) against its integral representation.

    variant 'third' uses third partials and needs E xi^2 = 1, E|xi|^3 < inf;
    variant 'fourth' uses fourth partials and additionally needs E xi^3 = 0.
    A violated hypothesis raises HypothesisViolation naming the moment.
    Rademacher coordinates with n <= 12 are enumerated exactly (tolerance
    1e-10); other laws go through Monte-Carlo with common random numbers
    and a 4 sigma tolerance.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if abs(dist.variance - 1.0) > 1e-12:
        raise HypothesisViolation(
            "second moment", f"E xi^2 must equal 1, got {dist.variance}")
    if variant == "fourth" and dist.third_moment != 0.0:
        raise HypothesisViolation(
            "third moment", f"E xi^3 must vanish, got {dist.third_moment}")
    n = f.n
    exact = dist.name == "rademacher" and n <= 12 and not force_mc
    if exact:
        X = sign_patterns(n)
        lhs_vals = f.generator_rows(X)
        rhs_vals = _stein_terms(f, X, variant, s_nodes)
        lhs = float(np.mean(lhs_vals))
        rhs = float(np.mean(rhs_vals))
        tol = 1e-10
        return SteinReport(variant, lhs, rhs, 0.0, tol, True, X.shape[0],
                           s_nodes, abs(lhs - rhs) <= tol)
    if replicates < 100:
        raise ValueError("replicates must be >= 100 for the Monte-Carlo path")
    rng = _stream_or_default(stream, "stein-xi").generator()
    X = dist.sample(rng, (replicates, n))
    lhs_vals = f.generator_rows(X)
    rhs_vals = _stein_terms(f, X, variant, s_nodes)
    diffs = lhs_vals - rhs_vals
    mean_diff = float(np.mean(diffs))
    se = float(np.std(diffs, ddof=1)) / math.sqrt(replicates)
    tol = 4.0 * se + 1e-9
    return SteinReport(variant, float(np.mean(lhs_vals)),
                       float(np.mean(rhs_vals)), se, tol, False, replicates,
                       s_nodes, abs(mean_diff) <= tol)


def semigroup_check(f, t1: float, t2: float, x, samples: int = 4096,
                    stream: RandomStream | None = None):
    """P_{t1} P_{t2} f(x) vs P_{t1+t2} f(x).

    Polynomials compare exactly (<= 1e-10); otherwise the nested average is
    compared to the direct one at 4 combined standard errors.  Returns
    (lhs, rhs, tolerance, ok).
    """
    x = np.asarray(x, dtype=np.float64)
    if isinstance(f, PolynomialFunction):
        lhs = PolynomialFunction(f.poly.ou_smoothed(t2).ou_smoothed(t1)).value(x)
        rhs = f.smoothed_value(t1 + t2, x)
        return lhs, rhs, 1e-10, abs(lhs - rhs) <= 1e-10
    base = stream if stream is not None else RandomStream(DEFAULT_SEED)
    rng = base.substream("semigroup").generator()
    a1, a2 = math.exp(-t1), math.exp(-t2)
    b1 = math.sqrt(max(0.0, 1.0 - a1 * a1))
    b2 = math.sqrt(max(0.0, 1.0 - a2 * a2))
    G1 = rng.standard_normal((samples, x.size))
    G2 = rng.standard_normal((samples, x.size))
    nested = f.value_rows(a2 * (a1 * x + b1 * G1) + b2 * G2)
    direct = ou_apply(f, t1 + t2, x, samples, base.substream("semigroup-direct"))
    lhs = float(np.mean(nested))
    se = math.hypot(float(np.std(nested, ddof=1)) / math.sqrt(samples),
                    direct.std_error)
    tol = 4.0 * se + 1e-9
    return lhs, direct.value, tol, abs(lhs - direct.value) <= tol


def ergodic_check(f, t: float, x, samples: int = 4096,
                  stream: RandomStream | None = None):
    """|P_t f(x) - E f(G)| against e^{-t} Lip(f) (|x| + sqrt(n)) (+ MC noise).

    Returns (deviation, bound, ok).
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    norm = float(np.linalg.norm(x))
    if isinstance(f, PolynomialFunction):
        # P_t f(x) - E f(G) = sum_{m>=1} q_m u^m with u = e^{-t}, so the
        # deviation decays at least like e^{-t} sum |q_m|
        q = _u_polynomial(f.poly, x)
        dev = abs(f.smoothed_value(t, x) - f.poly.gaussian_mean())
        bound = math.exp(-t) * float(np.abs(q[1:]).sum())
        return dev, bound, dev <= bound * (1 + 1e-9) + 1e-12
    base = stream if stream is not None else RandomStream(DEFAULT_SEED)
    mg, mg_se = _gaussian_mean_estimate(f, n, max(samples, 4096),
                                        base.substream("ergodic-mean"))
    est = ou_apply(f, t, x, samples, base.substream("ergodic"))
    dev = abs(est.value - mg)
    bound = math.exp(-t) * f.lipschitz_bound(0.0) * (norm + math.sqrt(n)) \
        + 4.0 * math.hypot(est.std_error, mg_se)
    return dev, bound, dev <= bound
