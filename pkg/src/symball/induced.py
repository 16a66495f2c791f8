"""Maps induced on symmetric powers and recovery of their generators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ball import PROBE_RADIUS, Automorphism, _mobius, nearest_unitary
from .errors import DimensionError, NotInducedError, OutsideBallError, TooLargeError
from .sampling import make_rng, random_sym_config
from .sympower import (
    OrderedConfig,
    SymConfig,
    multiset_close,
    project,
    sym_close,
    sym_distance,
)

MAX_INVARIANCE_M = 8


@dataclass(frozen=True)
class InducedMap:
    """The m-th symmetric power of a ball automorphism."""

    generator: Automorphism
    power: int

    def __post_init__(self):
        if isinstance(self.power, bool) or int(self.power) != self.power or self.power < 1:
            raise ValueError(f"power must be a positive integer, got {self.power!r}")
        object.__setattr__(self, "power", int(self.power))

    @property
    def s(self) -> int:
        return self.generator.s

    def __call__(self, c: SymConfig) -> SymConfig:
        return induced_eval(self, c)

    def inverse(self) -> "InducedMap":
        from .ball import automorphism_inverse

        return InducedMap(automorphism_inverse(self.generator), self.power)


def induced_eval(f: InducedMap, c: SymConfig) -> SymConfig:
    if (c.m, c.s) != (f.power, f.s):
        raise DimensionError(
            f"map on (B_{f.s})^{f.power}_Sym applied to a configuration with m={c.m}, s={c.s}")
    return SymConfig(f.generator._apply(c.points))


@dataclass(frozen=True)
class TupleMap:
    """``(t^1, ..., t^m) -> (h_1(t^sigma(1)), ..., h_m(t^sigma(m)))``, ``sigma`` 0-based."""

    components: tuple
    sigma: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        sigma = tuple(int(i) for i in self.sigma)
        if not comps:
            raise ValueError("a tuple map needs at least one component")
        if sorted(sigma) != list(range(len(comps))):
            raise ValueError(f"sigma {sigma} is not a permutation of 0..{len(comps) - 1}")
        if len({h.s for h in comps}) != 1:
            raise DimensionError("components act on balls of different dimension")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "sigma", sigma)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def s(self) -> int:
        return self.components[0].s

    def _apply_points(self, pts):
        # pts has shape (..., m, s)
        x = pts[..., list(self.sigma), :]
        return np.stack([h._apply(x[..., j, :]) for j, h in enumerate(self.components)],
                        axis=-2)

    def __call__(self, t: OrderedConfig) -> OrderedConfig:
        if (t.m, t.s) != (self.m, self.s):
            raise DimensionError(f"tuple map of shape ({self.m}, {self.s}) applied to ({t.m}, {t.s})")
        return OrderedConfig(self._apply_points(t.points))


def commutes_with_projection(g: Automorphism, t: OrderedConfig, tol: float = 1e-10) -> bool:
    """Check ``pi(g x ... x g (t)) == g^m_Sym(pi(t))`` up to ``tol``."""
    lhs = project(OrderedConfig(g._apply(t.points)))
    rhs = induced_eval(InducedMap(g, t.m), project(t))
    return sym_close(lhs, rhs, tol)


def _diagonal_image(f, z, m, tol):
    try:
        out = f(SymConfig.diagonal(z, m))
    except (OutsideBallError, DimensionError) as exc:
        raise NotInducedError(f"black box failed on a diagonal point: {exc}") from exc
    pts = np.asarray(out.points)
    if pts.shape != (m, len(z)):
        raise NotInducedError(f"black box returned shape {pts.shape}, expected {(m, len(z))}")
    spread = float(np.max(np.abs(pts - pts[0])))
    if spread > tol:
        raise NotInducedError(f"image of a diagonal point is not diagonal (spread {spread:.3e})")
    return pts[0]


def roundtrip_error(f, g: Automorphism, configs) -> float:
    """Largest bottleneck distance between ``g^m_Sym(c)`` and ``f(c)``."""
    err = 0.0
    for c in configs:
        err = max(err, sym_distance(induced_eval(InducedMap(g, c.m), c), f(c)))
    return err


def extract_generator(f, s: int, m: int, *, tol: float = 1e-8, n_check: int = 100,
                      seed: int = 0) -> Automorphism:
    """Recover g from a black box f promised to equal g^m_Sym.

    g is read off the diagonal, f(<z:m>) = <g(z):m>.  With b = g(0) the map
    phi_b o g fixes the origin and is therefore a unitary V, so g = V o phi_{V* b}.
    Raises NotInducedError when the black box is visibly not of this form.
    """
    def g(z):
        return _diagonal_image(f, z, m, tol)

    b = g(np.zeros(s, dtype=np.complex128))
    if not np.linalg.norm(b) < 1.0:
        raise NotInducedError("image of the origin lies outside the ball")
    t = PROBE_RADIUS
    cols = [_mobius(b, g(t * e)) / t for e in np.eye(s, dtype=np.complex128)]
    v = np.column_stack(cols)
    dev = float(np.max(np.abs(v.conj().T @ v - np.eye(s))))
    if dev > tol:
        raise NotInducedError(f"recovered linear part is not unitary (deviation {dev:.3e})")
    v = nearest_unitary(v)
    rec = Automorphism(v, v.conj().T @ b)

    rng = make_rng(seed, "extract_generator")
    configs = [random_sym_config(rng, m, s) for _ in range(n_check)]
    try:
        err = roundtrip_error(f, rec, configs)
    except (OutsideBallError, DimensionError) as exc:
        raise NotInducedError(f"black box failed on a test configuration: {exc}") from exc
    if not err < tol:
        raise NotInducedError(f"recovered generator misses the black box by {err:.3e}")
    return rec


def check_sm_invariance(h: TupleMap, samples, tol: float = 1e-10) -> bool:
    """Whether ``pi o h`` is invariant under every permutation of its arguments.

    Brute force over S_m on each sample; rejects as soon as one permutation
    changes the multiset of outputs by more than ``tol``.
    """
    if h.m > MAX_INVARIANCE_M:
        raise TooLargeError(f"brute force over S_m is limited to m <= {MAX_INVARIANCE_M}")
    perms = np.array(list(itertools.permutations(range(h.m))), dtype=np.intp)
    for tau in samples:
        if (tau.m, tau.s) != (h.m, h.s):
            raise DimensionError(f"sample of shape ({tau.m}, {tau.s}) for a ({h.m}, {h.s}) tuple map")
        ref = h._apply_points(tau.points)
        images = h._apply_points(tau.points[perms])
        for img in images:
            if not multiset_close(img, ref, tol):
                return False
    return True
