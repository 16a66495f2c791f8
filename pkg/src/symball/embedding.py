"""Segre-Whitney coordinates of symmetric powers.

A point ``z`` of the ball is lifted to the linear form
``x_0 + z_1 x_1 + ... + z_s x_s``; an unordered m-tuple maps to the monomial
coefficients of the product of its m linear forms.  The coefficient of
``x_0^m`` is always 1, which fixes the affine chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError
from .sympower import OrderedConfig, SymConfig


@lru_cache(maxsize=None)
def _indices(m: int, n: int) -> tuple:
    # tuples of length n summing to m, lexicographically descending
    if n == 1:
        return ((m,),)
    return tuple((first,) + rest
                 for first in range(m, -1, -1)
                 for rest in _indices(m - first, n - 1))


def _check_ms(m, s):
    for name, v in (("m", m), ("s", s)):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def multi_indices(m: int, s: int) -> list:
    """All ``mu = (mu_0, ..., mu_s)`` with ``|mu| = m``, lexicographically descending."""
    _check_ms(m, s)
    return list(_indices(int(m), int(s) + 1))


def embedding_dimension(m: int, s: int) -> int:
    """N(m, s) = binom(m + s, m) - 1."""
    _check_ms(m, s)
    return math.comb(m + s, m) - 1


@lru_cache(maxsize=None)
def _shift_tables(d: int, s: int):
    # tables[i][p] = position in degree d+1 of (multi-index p of degree d) + e_i
    target = {mu: pos for pos, mu in enumerate(_indices(d + 1, s + 1))}
    tables = []
    for i in range(s + 1):
        tab = []
        for mu in _indices(d, s + 1):
            nu = list(mu)
            nu[i] += 1
            tab.append(target[tuple(nu)])
        tables.append(np.array(tab, dtype=np.intp))
    return tables


def product_coefficients(points) -> np.ndarray:
    """Coefficients of prod_j (x_0 + <points[j], x>) in the order of ``multi_indices``.

    ``points`` has shape (..., m, s); leading axes are batch axes.  The
    factors are multiplied in the given order.
    """
    points = np.asarray(points, dtype=np.complex128)
    *batch, m, s = points.shape
    coef = np.ones(tuple(batch) + (1,), dtype=np.complex128)
    for j in range(m):
        tables = _shift_tables(j, s)
        new = np.zeros(tuple(batch) + (math.comb(j + 1 + s, s),), dtype=np.complex128)
        new[..., tables[0]] += coef
        for i in range(1, s + 1):
            new[..., tables[i]] += coef * points[..., j, i - 1, None]
        coef = new
    return coef


@dataclass(frozen=True, eq=False)
class EmbeddingCoords:
    """Affine Segre-Whitney coordinates, one value per multi-index of weight m."""

    m: int
    s: int
    values: np.ndarray

    def __post_init__(self):
        _check_ms(self.m, self.s)
        vals = np.array(self.values, dtype=np.complex128)
        n = math.comb(self.m + self.s, self.m)
        if vals.shape != (n,):
            raise DimensionError(f"expected {n} coefficients, got shape {vals.shape}")
        if vals[0] != 1:
            raise ValueError(f"coefficient of x_0^m must be 1, got {vals[0]!r}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def indices(self) -> list:
        return multi_indices(self.m, self.s)

    @property
    def coeffs(self) -> dict:
        return dict(zip(self.indices, self.values.tolist()))

    def __getitem__(self, mu):
        mu = tuple(mu)
        if len(mu) != self.s + 1 or sum(mu) != self.m or min(mu) < 0:
            raise KeyError(mu)
        return complex(self.values[self.indices.index(mu)])

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, EmbeddingCoords):
            return NotImplemented
        return (self.m, self.s) == (other.m, other.s) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.m, self.s, self.values.tobytes()))


def segre_whitney(c) -> EmbeddingCoords:
    """Embed a configuration.

    A ``SymConfig`` is evaluated in canonical order, so the result is an
    exact function of the multiset; an ``OrderedConfig`` is evaluated in the
    order given.
    """
    if not isinstance(c, (SymConfig, OrderedConfig)):
        raise TypeError(f"expected SymConfig or OrderedConfig, got {type(c).__name__}")
    return EmbeddingCoords(c.m, c.s, product_coefficients(c.points))


def embedding_distance(e1: EmbeddingCoords, e2: EmbeddingCoords) -> float:
    if (e1.m, e1.s) != (e2.m, e2.s):
        raise DimensionError("embeddings of different (m, s)")
    return float(np.max(np.abs(e1.values - e2.values)))


def elementary_symmetric(c) -> np.ndarray:
    """(sigma_1, ..., sigma_m) of a configuration of points in the disc."""
    if c.s != 1:
        raise DimensionError(f"elementary symmetric chart needs s = 1, got s = {c.s}")
    e = np.zeros(c.m + 1, dtype=np.complex128)
    e[0] = 1.0
    for z in c.points[:, 0]:
        e[1:] = e[1:] + z * e[:-1]
    return e[1:]
