"""Finite index sets in R^n: constructors, geometric profiles, CSV round-trip.

An index set is a finite collection of points t in R^n over which suprema
sup_t <x, t> are taken.  Points are stored row-wise in a read-only float64
array.  Duplicate rows are retained: the declared cardinality enters
log-cardinality bounds, and deduplication is the caller's choice.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

MAX_CARDINALITY = 2 ** 22
MAX_DIM = 2 ** 20


@dataclass(frozen=True)
class IndexSet:
    """A finite set of points in R^n, one point per row of ``points``.

    ``kind`` tags structured constructions so estimators can use exact
    fast paths; ``explicit`` means no structure is assumed.  ``param``
    carries the structured construction's scalar parameter (theta for
    negative-scaled basis families), else 0.0.
    """

    points: np.ndarray
    kind: str = "explicit"
    descriptor: str = "explicit"
    param: float = 0.0

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def cardinality(self) -> int:
        return self.points.shape[0]

    @property
    def log_cardinality(self) -> float:
        return math.log(self.cardinality)


def _finalize(points: np.ndarray, kind: str, descriptor: str,
              param: float = 0.0) -> IndexSet:
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError("points must be a 2d array, one point per row")
    if points.shape[0] < 1:
        raise ValueError("index set must contain at least one point")
    if points.shape[0] > MAX_CARDINALITY:
        raise ValueError(f"cardinality {points.shape[0]} exceeds cap {MAX_CARDINALITY}")
    if points.shape[1] < 1 or points.shape[1] > MAX_DIM:
        raise ValueError(f"dimension {points.shape[1]} outside [1, {MAX_DIM}]")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must be finite")
    points.setflags(write=False)
    return IndexSet(points, kind, descriptor, param)


def build_explicit(points) -> IndexSet:
    """Wrap an explicit list/array of points after validation."""
    arr = np.array(points, dtype=np.float64)
    if arr.ndim == 1:
        raise ValueError("points must be a 2d array, one point per row")
    return _finalize(arr, "explicit", "explicit")


BASIS_MODES = ("canonical", "signed", "negative-scaled")


def make_basis_family(n: int, mode: str = "canonical",
                      theta: float | None = None) -> IndexSet:
    """Basis-derived families: {e_i}, {+-e_i}, or {-theta e_i}.

    canonical        the n standard basis vectors
    signed           all 2n signed basis vectors (+e_i then -e_i)
    negative-scaled  {-theta e_i}, theta > 0 required
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode not in BASIS_MODES:
        raise ValueError(f"unknown basis mode {mode!r}; choose from {BASIS_MODES}")
    eye = np.eye(n)
    if mode == "canonical":
        return _finalize(eye, "basis-canonical", f"basis:n={n}")
    if mode == "signed":
        pts = np.vstack([eye, -eye])
        return _finalize(pts, "basis-signed", f"basis:n={n},mode=signed")
    if theta is None or theta <= 0:
        raise ValueError("negative-scaled mode requires theta > 0")
    return _finalize(-theta * eye, "basis-negative-scaled",
                     f"basis:n={n},mode=negative-scaled,theta={theta:g}", float(theta))


def sign_patterns(n: int, count: int | None = None) -> np.ndarray:
    """First ``count`` sign vectors in {-1,+1}^n, lexicographic.

    -1 sorts before +1 and the first coordinate is most significant,
    matching itertools.product((-1, 1), repeat=n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 1 << n
    if count is None:
        count = total
    if not 1 <= count <= total:
        raise ValueError(f"count must be in [1, 2^{n}]")
    idx = np.arange(count, dtype=np.uint64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    bits = (idx[:, None] >> shifts[None, :]) & 1
    return bits.astype(np.float64) * 2.0 - 1.0


def make_diagonal_cube(diag, signs=None, k: int | None = None) -> IndexSet:
    """Points {(s_1 d_1, ..., s_n d_n)} for sign vectors s.

    ``diag`` is a strictly decreasing positive sequence d_1 > ... > d_n > 0.
    Sign vectors come from ``signs`` (explicit {-1,+1} matrix), or the first
    2^k in lexicographic order, or the full cube when both are omitted.
    """
    d = np.asarray(diag, dtype=np.float64)
    if d.ndim != 1 or d.size < 1:
        raise ValueError("diag must be a 1d sequence")
    if not np.all(d > 0):
        raise ValueError("diag entries must be positive")
    if np.any(np.diff(d) >= 0):
        raise ValueError("diag must be strictly decreasing")
    n = d.size
    if signs is not None and k is not None:
        raise ValueError("give either signs or k, not both")
    if signs is not None:
        s = np.asarray(signs, dtype=np.float64)
        if s.ndim != 2 or s.shape[1] != n:
            raise ValueError("signs must have one column per diag entry")
        if not np.all(np.abs(s) == 1.0):
            raise ValueError("signs entries must be +-1")
        desc = f"diagcube:n={n},signs=explicit"
    else:
        if n > 22 and k is None:
            raise ValueError("full cube beyond n=22 exceeds the cardinality cap; pass k")
        count = None if k is None else 1 << k
        if k is not None and (k < 0 or k > n):
            raise ValueError("k must be in [0, n]")
        s = sign_patterns(n, count)
        desc = f"diagcube:n={n}" + ("" if k is None else f",k={k}")
    return _finalize(s * d[None, :], "diagonal-cube", desc)


def make_spin_quadratic(N: int, normalized: bool = False) -> IndexSet:
    """Index set of a two-spin interaction: rows t_sigma with entries
    sigma_i sigma_j over pairs i < j, one row per sigma in {-1,+1}^N.

    Equivalent to make_spin_tensor(N, 2, normalized).
    """
    return make_spin_tensor(N, 2, normalized)


def make_spin_tensor(N: int, m: int, normalized: bool = False) -> IndexSet:
    """Order-m spin interaction index set.

    One row per sigma in {-1,+1}^N; coordinates are the products
    sigma_{i_1} ... sigma_{i_m} over m-subsets i_1 < ... < i_m in
    lexicographic order.  Scaling: with ``normalized`` rows are multiplied
    by 1/(binom(N,m)^{1/2} N^{1/2}), giving row l2 norms exactly N^{-1/2};
    otherwise by N^{-(m+1)/2}, the energy-density scaling under which the
    Gaussian value converges as N grows.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if not 1 <= m <= N:
        raise ValueError("m must be in [1, N]")
    if (1 << N) > MAX_CARDINALITY:
        raise ValueError("2^N exceeds the cardinality cap")
    dim = math.comb(N, m)
    if dim > MAX_DIM:
        raise ValueError("binom(N, m) exceeds the dimension cap")
    S = sign_patterns(N)
    pts = np.empty(((1 << N), dim))
    for c, combo in enumerate(itertools.combinations(range(N), m)):
        pts[:, c] = S[:, combo].prod(axis=1)
    if normalized:
        scale = 1.0 / (math.sqrt(dim) * math.sqrt(N))
        tag = ",normalized=1"
    else:
        scale = N ** (-(m + 1) / 2.0)
        tag = ""
    pts *= scale
    kind = "spin-quadratic" if m == 2 else "spin-tensor"
    desc = (f"spin-quadratic:N={N}{tag}" if m == 2
            else f"spin-tensor:N={N},m={m}{tag}")
    return _finalize(pts, kind, desc, scale)


@dataclass(frozen=True)
class GeometricProfile:
    """Norm profile of an index set.

    r2/r3/r4/rinf are sup_t of the l2/l3/l4/linf norms of the points;
    col3/col4 are the lp norms of the coordinate-wise max-abs vector
    (max_t |t_i|)_i; u1/u2 are the window endpoints (r4/rinf)^4 and
    (r2/rinf)^2; log_cardinality uses the declared (multiset) cardinality.
    """

    r2: float
    r3: float
    r4: float
    rinf: float
    col3: float
    col4: float
    u1: float
    u2: float
    log_cardinality: float


def geometric_profile(T: IndexSet) -> GeometricProfile:
    """Compute the norm profile of T (duplicates do not affect it)."""
    a = np.abs(T.points)
    r2 = float(np.sqrt((a ** 2).sum(axis=1).max()))
    r3 = float(np.cbrt((a ** 3).sum(axis=1).max()))
    r4 = float(((a ** 4).sum(axis=1).max()) ** 0.25)
    rinf = float(a.max())
    colmax = a.max(axis=0)
    col3 = float(((colmax ** 3).sum()) ** (1.0 / 3.0))
    col4 = float(((colmax ** 4).sum()) ** 0.25)
    if rinf == 0.0:
        u1 = u2 = 0.0
    else:
        u1 = (r4 / rinf) ** 4
        u2 = (r2 / rinf) ** 2
    return GeometricProfile(r2, r3, r4, rinf, col3, col4, u1, u2,
                            T.log_cardinality)


def save_csv(T: IndexSet, path) -> None:
    """Write T to CSV: header ``dim,cardinality``, its values, then one
    point per row at 17 significant digits (lossless for float64)."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("dim,cardinality\n")
        fh.write(f"{T.dim},{T.cardinality}\n")
        for row in T.points:
            fh.write(",".join(format(v, ".17g") for v in row))
            fh.write("\n")


def load_csv(path) -> IndexSet:
    """Read an index set written by save_csv; validates the metadata header."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "dim,cardinality":
            raise ValueError(f"bad header {header!r}, expected 'dim,cardinality'")
        meta = fh.readline().strip().split(",")
        if len(meta) != 2:
            raise ValueError("metadata row must be 'dim,cardinality' values")
        dim, card = int(meta[0]), int(meta[1])
        rows = np.loadtxt(fh, delimiter=",", ndmin=2)
    if rows.shape != (card, dim):
        raise ValueError(f"data shape {rows.shape} does not match metadata ({card}, {dim})")
    return _finalize(rows, "explicit", "explicit")


def dedupe(T: IndexSet) -> IndexSet:
    """Distinct points of T (sup-invariant reduction)."""
    uniq = np.unique(T.points, axis=0)
    if uniq.shape[0] == T.cardinality:
        return T
    return _finalize(uniq, "explicit", T.descriptor + ",deduped")


def scale(T: IndexSet, c: float) -> IndexSet:
    """The set c*T, keeping structure tags only when sup paths survive."""
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    return _finalize(T.points * c, "explicit", f"scaled({c:g})*" + T.descriptor)
