"""Ordered and unordered m-point configurations in the unit ball.

An unordered configuration is stored as its canonical representative: the
points sorted lexicographically on (Re z_1, Im z_1, ..., Re z_s, Im z_s).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_bipartite_matching

from .ball import as_ball_point
from .errors import DimensionError, TooLargeError

MAX_FIBER_M = 8


def _as_points(points):
    try:
        arr = np.array(points, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise DimensionError(f"not an array of complex points: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"expected an (m, s) array of points, got shape {arr.shape}")
    norms = np.sqrt(np.sum(arr.real ** 2 + arr.imag ** 2, axis=1))
    if not np.all(norms < 1.0):
        # not(norm < 1) also catches NaN; the scalar check builds the error
        for i in np.flatnonzero(~(norms < 1.0)):
            as_ball_point(arr[i], index=int(i))
    # + 0.0 folds signed zeros so that bitwise equality matches numeric equality
    arr = arr + 0.0
    arr.setflags(write=False)
    return arr


def canonical_order(points) -> np.ndarray:
    """Indices sorting ``points`` into canonical order (stable on ties)."""
    points = np.asarray(points)
    cols = []
    for j in range(points.shape[1]):
        cols += [points[:, j].real, points[:, j].imag]
    # lexsort treats the last key as primary
    return np.lexsort(cols[::-1])


class _ConfigBase:
    points: np.ndarray

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def s(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.m

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.points.shape == other.points.shape
                and self.points.tobytes() == other.points.tobytes())

    def __hash__(self):
        return hash((type(self).__name__, self.points.shape, self.points.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({self.points.tolist()})"


@dataclass(frozen=True, eq=False, repr=False)
class OrderedConfig(_ConfigBase):
    """A point ``(x^1, ..., x^m)`` of the Cartesian power of the ball."""

    points: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", _as_points(self.points))

    def permuted(self, sigma) -> "OrderedConfig":
        """``sigma . x = (x^sigma(1), ..., x^sigma(m))`` with 0-based ``sigma``."""
        return OrderedConfig(self.points[list(sigma)])


@dataclass(frozen=True, eq=False, repr=False)
class SymConfig(_ConfigBase):
    """An unordered m-tuple of ball points, kept in canonical order."""

    points: np.ndarray

    def __post_init__(self):
        pts = _as_points(self.points)
        pts = pts[canonical_order(pts)]
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def diagonal(cls, z, m: int) -> "SymConfig":
        """The point <z : m>, i.e. z repeated m times."""
        z = as_ball_point(z)
        return cls(np.tile(z, (m, 1)))


class Partition(tuple):
    """Weakly decreasing positive integers ``(m_1, ..., m_k)``."""

    def __new__(cls, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 1:
                raise ValueError(f"partition parts must be positive integers, got {parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing, got {parts!r}")
        return super().__new__(cls, (int(p) for p in parts))

    @property
    def m(self) -> int:
        return sum(self)

    @property
    def k(self) -> int:
        return len(self)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


def partitions(m: int):
    """All partitions of ``m``, largest first part first."""

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    for p in rec(m, m):
        yield Partition(p)


def project(t: OrderedConfig) -> SymConfig:
    """The quotient map from ordered to unordered configurations."""
    return SymConfig(t.points)


def covering_degree(p) -> int:
    p = Partition(p)
    return math.factorial(p.m) // math.prod(math.factorial(q) for q in p)


def _class_labels(c: SymConfig):
    # canonical order puts bitwise-equal points next to each other
    pts = c.points
    labels = [0]
    for i in range(1, c.m):
        same = pts[i].tobytes() == pts[i - 1].tobytes()
        labels.append(labels[-1] if same else labels[-1] + 1)
    return labels


def fiber(c: SymConfig) -> set:
    """All ordered tuples projecting onto ``c``."""
    if c.m > MAX_FIBER_M:
        raise TooLargeError(
            f"fiber materialization is limited to m <= {MAX_FIBER_M}; use fiber_size")
    labels = _class_labels(c)
    reps = {}
    for i, lab in enumerate(labels):
        reps.setdefault(lab, i)
    out = set()
    for word in set(itertools.permutations(labels)):
        out.add(OrderedConfig(c.points[[reps[lab] for lab in word]]))
    return out


def fiber_size(c: SymConfig) -> int:
    return covering_degree(classify_stratum(c, 0.0))


def pairwise_sup(p, q) -> np.ndarray:
    """Matrix of sup-norm distances between the rows of ``p`` and ``q``."""
    return np.max(np.abs(p[:, None, :] - q[None, :, :]), axis=-1)


def classify_stratum(c: SymConfig, tol: float = 0.0) -> Partition:
    """Multiplicities of the clusters of ``c`` under the closure of ``|z - w|_inf <= tol``."""
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    if tol == 0:
        labels = _class_labels(c)
        counts = np.bincount(labels)
    else:
        adj = pairwise_sup(c.points, c.points) <= tol
        _, labels = connected_components(csr_matrix(adj), directed=False)
        counts = np.bincount(labels)
    return Partition(sorted(counts.tolist(), reverse=True))


def stratum_codimension(p, s: int) -> int:
    """Complex codimension s (m - k) of the stratum V(m_1, ..., m_k)."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    p = Partition(p)
    return s * (p.m - p.k)


def _has_perfect_matching(adj) -> bool:
    match = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    return bool(np.all(match >= 0))


def sym_distance(c1, c2) -> float:
    """Bottleneck distance between two unordered configurations.

    This is the minimum over bijections of the largest sup-norm displacement,
    the natural metric on the quotient.
    """
    p, q = c1.points, c2.points
    if p.shape != q.shape:
        raise DimensionError(f"configurations of shapes {p.shape} and {q.shape}")
    d0 = float(np.max(np.abs(p - q)))
    if d0 == 0.0:
        return 0.0
    dist = pairwise_sup(p, q)
    # every point must travel at least to its nearest partner
    lower = max(dist.min(axis=1).max(), dist.min(axis=0).max())
    if lower == d0:
        return d0
    cand = np.unique(dist[(dist >= lower) & (dist <= d0)])
    lo, hi = 0, len(cand) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _has_perfect_matching(dist <= cand[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(cand[lo])


def multiset_close(p, q, tol: float) -> bool:
    """Whether the rows of ``p`` and ``q`` agree as multisets up to ``tol``."""
    p = np.asarray(p)
    q = np.asarray(q)
    if p.shape != q.shape:
        raise DimensionError(f"configurations of shapes {p.shape} and {q.shape}")
    if np.max(np.abs(p[canonical_order(p)] - q[canonical_order(q)])) <= tol:
        return True
    return _has_perfect_matching(pairwise_sup(p, q) <= tol)


def sym_close(c1, c2, tol: float) -> bool:
    return multiset_close(c1.points, c2.points, tol)
