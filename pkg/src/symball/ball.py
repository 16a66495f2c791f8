"""Points of the unit ball in C^s and its holomorphic automorphisms.

Every automorphism is stored in the canonical form ``z -> U @ phi_a(z)`` where
``U`` is unitary and ``phi_a`` is the Moebius involution exchanging ``0`` and
``a``.  With the convention ``phi_0 = -id`` the identity map is ``(-I, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, OutsideBallError

UNITARY_TOL = 1e-12
# evaluation radius used to read off the linear part of an origin-fixing map
PROBE_RADIUS = 0.5


def _frozen(arr):
    arr = np.array(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def as_ball_point(z, s=None, index=None):
    """Validate ``z`` as a point of the open unit ball and return it read-only."""
    try:
        arr = np.array(z, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise DimensionError(f"not a complex vector: {exc}") from None
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"a point must be a non-empty vector, got shape {arr.shape}")
    if s is not None and arr.size != s:
        raise DimensionError(f"expected a point of C^{s}, got C^{arr.size}")
    if not np.all(np.isfinite(arr)):
        raise OutsideBallError("point has non-finite coordinates",
                               coords=arr, norm=float("nan"), index=index)
    norm = float(np.linalg.norm(arr))
    if not norm < 1.0:
        where = "" if index is None else f" at index {index}"
        raise OutsideBallError(f"point{where} has norm {norm!r} >= 1",
                               coords=arr, norm=norm, index=index)
    arr.setflags(write=False)
    return arr


def inner(z, w):
    """Hermitian product <z, w> = sum z_i conj(w_i); batched over leading axes of z."""
    return np.asarray(z) @ np.conj(w)


def _mobius(a, z):
    # unchecked kernel; z may carry leading batch axes
    z = np.asarray(z, dtype=np.complex128)
    na = float(np.linalg.norm(a))
    if na == 0.0:
        return -z
    # project on the unit vector a/|a|: |a|^2 underflows for tiny a
    u = a / na
    zu = inner(z, u)
    pz = zu[..., None] * u
    qz = z - pz
    s_a = np.sqrt((1.0 - na) * (1.0 + na))
    return (a - pz - s_a * qz) / (1.0 - na * zu)[..., None]


def mobius_eval(a, z):
    """Evaluate the involution phi_a at z.

    phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>) with P_a the orthogonal
    projection onto span(a), Q_a = id - P_a and s_a = sqrt(1 - |a|^2).
    """
    a = as_ball_point(a)
    z = as_ball_point(z, s=a.size)
    return _mobius(a, z)


def is_unitary(u, tol=UNITARY_TOL):
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def nearest_unitary(m):
    """Unitary factor of the polar decomposition of ``m``."""
    w, _, vh = np.linalg.svd(m)
    return w @ vh


@dataclass(frozen=True, eq=False)
class Automorphism:
    """The ball automorphism ``z -> unitary @ phi_center(z)``."""

    unitary: np.ndarray
    center: np.ndarray

    def __post_init__(self):
        u = _frozen(self.unitary)
        a = as_ball_point(self.center)
        if u.shape != (a.size, a.size):
            raise DimensionError(
                f"unitary part has shape {u.shape}, center lives in C^{a.size}")
        if not is_unitary(u):
            dev = float(np.max(np.abs(u.conj().T @ u - np.eye(a.size))))
            raise ValueError(f"matrix is not unitary (max deviation {dev:.3e})")
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "center", a)

    @property
    def s(self) -> int:
        return self.center.size

    @classmethod
    def identity(cls, s: int) -> "Automorphism":
        return cls(-np.eye(s), np.zeros(s))

    @classmethod
    def linear(cls, u) -> "Automorphism":
        """The unitary map ``z -> u @ z``."""
        u = np.asarray(u, dtype=np.complex128)
        return cls(-u, np.zeros(u.shape[0]))

    def __call__(self, z):
        return automorphism_eval(self, z)

    def _apply(self, z):
        # unchecked, batched over leading axes of z
        return _mobius(self.center, z) @ self.unitary.T

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return (np.array_equal(self.unitary, other.unitary)
                and np.array_equal(self.center, other.center))

    def __hash__(self):
        return hash((self.unitary.tobytes(), self.center.tobytes()))

    def __repr__(self):
        return f"Automorphism(unitary={self.unitary.tolist()}, center={self.center.tolist()})"


def automorphism_eval(g: Automorphism, z):
    z = as_ball_point(z)
    if z.size != g.s:
        raise DimensionError(f"automorphism of B_{g.s} applied to a point of C^{z.size}")
    return g._apply(z)


def automorphism_inverse(g: Automorphism) -> Automorphism:
    # phi_a o U* = U* o phi_{U a}
    u = g.unitary
    return Automorphism(u.conj().T, u @ g.center)


def _linear_part(h, s):
    # h fixes the origin, so it is linear; read it off column by column
    t = PROBE_RADIUS
    cols = [h(t * e) / t for e in np.eye(s, dtype=np.complex128)]
    return nearest_unitary(np.column_stack(cols))


def automorphism_compose(g1: Automorphism, g2: Automorphism) -> Automorphism:
    """Canonical form of ``g1 o g2``."""
    if g1.s != g2.s:
        raise DimensionError(f"cannot compose automorphisms of B_{g1.s} and B_{g2.s}")
    # b is the point sent to 0: g2^{-1}(g1^{-1}(0)) = g2^{-1}(a1)
    b = _mobius(g2.center, g2.unitary.conj().T @ g1.center)
    b = as_ball_point(b)

    def h(z):
        return g1._apply(g2._apply(_mobius(b, z)))

    return Automorphism(_linear_part(h, g1.s), b)


def random_unitary(rng, s: int):
    """Haar-distributed unitary from the QR factorization of a complex Gaussian."""
    z = (rng.standard_normal((s, s)) + 1j * rng.standard_normal((s, s))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_direction(rng, s: int):
    v = rng.standard_normal(s) + 1j * rng.standard_normal(s)
    return v / np.linalg.norm(v)


def sample_automorphism(rng, s: int, max_radius: float = 0.9) -> Automorphism:
    """Draw an automorphism from ``rng``; the center norm is uniform on [0, max_radius]."""
    if s < 1:
        raise ValueError(f"dimension must be >= 1, got {s}")
    u = random_unitary(rng, s)
    a = rng.uniform(0.0, max_radius) * random_direction(rng, s)
    return Automorphism(u, a)


def random_automorphism(seed: int, s: int) -> Automorphism:
    """Deterministic random automorphism of B_s for the given seed."""
    from .sampling import make_rng

    if s < 1:
        raise ValueError(f"dimension must be >= 1, got {s}")
    return sample_automorphism(make_rng(seed, "random_automorphism"), s)


def automorphism_distance(g1: Automorphism, g2: Automorphism) -> float:
    """Sup-norm distance between the canonical parameters."""
    return float(max(np.max(np.abs(g1.unitary - g2.unitary)),
                     np.max(np.abs(g1.center - g2.center))))
