"""Coordinate distributions (mean zero, independent coordinates) and
reproducible random streams.

Stream scheme: a master seed plus a substream id key a Philox counter
generator.  Substream ids are derived statelessly from (parent id, tag,
index) with FNV-1a over the tag followed by two splitmix64 rounds, so any
draw in the package is reachable from the master seed alone and schedule
order never matters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

_MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

# master seed used everywhere a stream is not supplied explicitly
DEFAULT_SEED = 202608


def splitmix64(z: int) -> int:
    """One splitmix64 output step (public, so the mix is reproducible elsewhere)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


def derive_substream(parent_id: int, tag: str, index: int = 0) -> int:
    """64-bit substream id from a parent id, a tag string, and an index."""
    z = (parent_id ^ fnv1a64(tag.encode("utf-8"))) & _MASK64
    z = splitmix64(z)
    return splitmix64((z + index) & _MASK64)


@dataclass(frozen=True)
class RandomStream:
    """A named position in the seed tree: (master_seed, substream_id)."""

    master_seed: int
    substream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = (self.master_seed & _MASK64) | ((self.substream_id & _MASK64) << 64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, tag: str, index: int = 0) -> "RandomStream":
        return RandomStream(self.master_seed,
                            derive_substream(self.substream_id, tag, index))


KINDS = ("rademacher", "gaussian", "uniform", "laplace",
         "laplace-normalized", "scaled-rademacher", "two-point")

_SQRT3 = math.sqrt(3.0)
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CoordinateDistribution:
    """A coordinate law with its exact moments.

    variance       E xi^2
    third_moment   E xi^3 (zero for the symmetric kinds)
    abs_third      E |xi|^3 = sigma3^3
    fourth         E xi^4 = sigma4^4
    bound          M with |xi| <= M a.s., or None (unbounded law)
    """

    name: str
    variance: float
    third_moment: float
    abs_third: float
    fourth: float
    bound: float | None
    param: float = 0.0

    @property
    def sigma3(self) -> float:
        return self.abs_third ** (1.0 / 3.0)

    @property
    def sigma4(self) -> float:
        return self.fourth ** 0.25

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.name == "rademacher":
            return rng.integers(0, 2, size=size).astype(np.float64) * 2.0 - 1.0
        if self.name == "gaussian":
            return rng.standard_normal(size)
        if self.name == "uniform":
            return rng.uniform(-_SQRT3, _SQRT3, size=size)
        if self.name == "laplace":
            return rng.laplace(0.0, 1.0, size=size)
        if self.name == "laplace-normalized":
            return rng.laplace(0.0, 1.0 / _SQRT2, size=size)
        if self.name in ("scaled-rademacher", "two-point"):
            return self.ppf(rng.random(size))
        raise ValueError(f"no sampler for distribution {self.name!r}")

    def ppf(self, u: np.ndarray) -> np.ndarray:
        """Inverse CDF, monotone in u (for common-random-number pairing)."""
        u = np.asarray(u, dtype=np.float64)
        if self.name == "rademacher":
            return np.where(u < 0.5, -1.0, 1.0)
        if self.name == "gaussian":
            return special.ndtri(u)
        if self.name == "uniform":
            return _SQRT3 * (2.0 * u - 1.0)
        if self.name in ("laplace", "laplace-normalized"):
            b = 1.0 if self.name == "laplace" else 1.0 / _SQRT2
            half = u - 0.5
            return -b * np.sign(half) * np.log1p(-2.0 * np.abs(half))
        if self.name == "scaled-rademacher":
            # +-M with prob 1/(2 M^2) each, else 0
            p = 1.0 / (2.0 * self.param ** 2)
            return np.where(u < p, -self.param,
                            np.where(u >= 1.0 - p, self.param, 0.0))
        if self.name == "two-point":
            a = self.param
            q = a ** 2 / (1.0 + a ** 2)
            return np.where(u < q, -1.0 / a, a)
        raise ValueError(f"no quantile function for distribution {self.name!r}")


def rademacher() -> CoordinateDistribution:
    return CoordinateDistribution("rademacher", 1.0, 0.0, 1.0, 1.0, 1.0)


def gaussian() -> CoordinateDistribution:
    # E|g|^3 = 2 sqrt(2/pi)
    return CoordinateDistribution("gaussian", 1.0, 0.0,
                                  2.0 * math.sqrt(2.0 / math.pi), 3.0, None)


def uniform_symmetric() -> CoordinateDistribution:
    # uniform on [-sqrt(3), sqrt(3)]: variance 1, E|x|^3 = 3 sqrt(3)/4, Ex^4 = 9/5
    return CoordinateDistribution("uniform", 1.0, 0.0,
                                  3.0 * _SQRT3 / 4.0, 1.8, _SQRT3)


def laplace(normalized: bool = False) -> CoordinateDistribution:
    if normalized:
        # scale 1/sqrt(2): variance 1, E|x|^3 = 3/sqrt(2), Ex^4 = 6
        return CoordinateDistribution("laplace-normalized", 1.0, 0.0,
                                      3.0 / _SQRT2, 6.0, None)
    # literal scale 1: variance 2, E|x|^3 = 6, Ex^4 = 24
    return CoordinateDistribution("laplace", 2.0, 0.0, 6.0, 24.0, None)


def scaled_rademacher(M: float) -> CoordinateDistribution:
    """Three-point law on {-M, 0, +M} with P(+-M) = 1/(2 M^2): variance 1,
    bound M, E|x|^3 = M, Ex^4 = M^2.  Requires M >= 1."""
    if M < 1.0:
        raise ValueError("scaled-rademacher requires M >= 1")
    return CoordinateDistribution("scaled-rademacher", 1.0, 0.0,
                                  float(M), float(M) ** 2, float(M), float(M))


def two_point(a: float) -> CoordinateDistribution:
    """Skewed two-point law: a with prob 1/(1+a^2), -1/a with prob a^2/(1+a^2).

    Mean zero, variance one, E xi^3 = a - 1/a (nonzero unless a = 1), so it
    exercises every path that only assumes a normalized second moment.
    """
    if a <= 0.0:
        raise ValueError("two-point requires a > 0")
    a = float(a)
    p = 1.0 / (1.0 + a ** 2)
    q = 1.0 - p
    return CoordinateDistribution(
        "two-point", 1.0, a - 1.0 / a,
        a ** 3 * p + q / a ** 3,
        a ** 4 * p + q / a ** 4,
        max(a, 1.0 / a), a)


def from_name(name: str) -> CoordinateDistribution:
    """Parse a CLI distribution name, e.g. 'gaussian' or 'scaled-rademacher:2'."""
    if name == "rademacher":
        return rademacher()
    if name == "gaussian":
        return gaussian()
    if name == "uniform":
        return uniform_symmetric()
    if name == "laplace":
        return laplace(False)
    if name == "laplace-normalized":
        return laplace(True)
    if name.startswith("scaled-rademacher:"):
        return scaled_rademacher(float(name.split(":", 1)[1]))
    if name.startswith("two-point:"):
        return two_point(float(name.split(":", 1)[1]))
    raise ValueError(f"unknown distribution {name!r}; known kinds: "
                     "rademacher, gaussian, uniform, laplace, "
                     "laplace-normalized, scaled-rademacher:M, two-point:a")


def moments(dist: CoordinateDistribution):
    """(variance, third moment, E|xi|^3, E xi^4, bound-or-None)."""
    return (dist.variance, dist.third_moment, dist.abs_third,
            dist.fourth, dist.bound)


def sample_vector(dist: CoordinateDistribution, n: int,
                  stream: RandomStream) -> np.ndarray:
    """One vector with n iid coordinates from dist."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return dist.sample(stream.generator(), n)


@dataclass(frozen=True)
class MomentCheckReport:
    """Empirical vs declared moments with standard errors and z flags."""

    name: str
    sample_count: int
    mean: float
    mean_se: float
    variance: float
    variance_se: float
    third: float
    third_se: float
    fourth: float
    fourth_se: float
    declared_variance: float
    declared_third: float
    declared_fourth: float
    z_threshold: float
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def empirical_moment_check(dist: CoordinateDistribution, sample_count: int,
                           stream: RandomStream,
                           z_threshold: float = 5.0) -> MomentCheckReport:
    """Draw a sample and compare mean/variance/third/fourth raw moments to the
    declared values at z_threshold standard errors.  A moment whose sampling
    variance is exactly zero (lattice laws) is flagged only on exact mismatch.
    """
    if sample_count < 2:
        raise ValueError("sample_count must be >= 2")
    x = dist.sample(stream.generator(), sample_count)
    nobs = float(sample_count)

    def raw(k):
        return float(np.mean(x ** k))

    m1, m2, m3, m4 = raw(1), raw(2), raw(3), raw(4)
    m6, m8 = raw(6), raw(8)
    mean_se = math.sqrt(max(m2 - m1 ** 2, 0.0) / nobs)
    var_se = math.sqrt(max(m4 - m2 ** 2, 0.0) / nobs)
    third_se = math.sqrt(max(m6 - m3 ** 2, 0.0) / nobs)
    fourth_se = math.sqrt(max(m8 - m4 ** 2, 0.0) / nobs)

    violations = []
    for label, emp, decl, se in (
            ("mean", m1, 0.0, mean_se),
            ("variance", m2, dist.variance, var_se),
            ("third", m3, dist.third_moment, third_se),
            ("fourth", m4, dist.fourth, fourth_se)):
        diff = abs(emp - decl)
        if se == 0.0:
            if diff != 0.0:
                violations.append(label)
        elif diff > z_threshold * se:
            violations.append(label)
    if dist.bound is not None and float(np.max(np.abs(x))) > dist.bound * (1 + 1e-12):
        violations.append("bound")
    return MomentCheckReport(dist.name, sample_count, m1, mean_se, m2, var_se,
                             m3, third_se, m4, fourth_se, dist.variance,
                             dist.third_moment, dist.fourth, z_threshold,
                             tuple(violations))
