"""Seeded random streams and samplers for points and configurations.

Each consumer draws from its own named Philox stream, so results do not
depend on the order in which independent consumers run.
"""

import zlib

import numpy as np

from .ball import random_direction


def make_rng(seed: int, stream: str = "") -> np.random.Generator:
    key = zlib.crc32(stream.encode("utf-8"))
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(key,))
    return np.random.Generator(np.random.Philox(ss))


def random_ball_point(rng, s: int, max_radius: float = 0.95):
    """Point distributed uniformly by volume in the ball of radius ``max_radius``."""
    r = max_radius * rng.uniform() ** (1.0 / (2 * s))
    return r * random_direction(rng, s)


def random_points(rng, m: int, s: int, max_radius: float = 0.95):
    """``m`` independent points, each uniform by volume; shape (m, s)."""
    v = rng.standard_normal((m, s)) + 1j * rng.standard_normal((m, s))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    r = max_radius * rng.uniform(size=(m, 1)) ** (1.0 / (2 * s))
    return r * v


def random_ordered_config(rng, m: int, s: int, max_radius: float = 0.95):
    from .sympower import OrderedConfig

    return OrderedConfig(random_points(rng, m, s, max_radius))


def random_sym_config(rng, m: int, s: int, max_radius: float = 0.95):
    from .sympower import SymConfig

    return SymConfig(random_points(rng, m, s, max_radius))


def stratum_representative(rng, partition, s: int, max_radius: float = 0.9):
    """A configuration of type ``partition``: distinct points repeated m_j times."""
    from .sympower import SymConfig

    pts = random_points(rng, len(partition), s, max_radius)
    return SymConfig(np.repeat(pts, list(partition), axis=0))
