"""Seeded verification suites.

Each suite draws from its own named random stream and returns a
``SuiteResult``; ``run_suites`` collects them in a fixed order, so the report
is identical however the suites are scheduled.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .ball import (
    Automorphism,
    _mobius,
    automorphism_compose,
    automorphism_distance,
    automorphism_inverse,
    mobius_eval,
    sample_automorphism,
)
from .embedding import (
    elementary_symmetric,
    embedding_dimension,
    embedding_distance,
    multi_indices,
    product_coefficients,
    segre_whitney,
)
from .induced import (
    InducedMap,
    TupleMap,
    check_sm_invariance,
    commutes_with_projection,
    extract_generator,
    induced_eval,
    roundtrip_error,
)
from .sampling import (
    make_rng,
    random_ball_point,
    random_ordered_config,
    random_points,
    random_sym_config,
    stratum_representative,
)
from .sympower import (
    OrderedConfig,
    SymConfig,
    classify_stratum,
    covering_degree,
    fiber,
    partitions,
    project,
    stratum_codimension,
    sym_distance,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    samples: int
    metric: str
    observed: float
    threshold: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: {self.metric} = {self.observed:.3e} "
                f"(threshold {self.threshold:.1e}, {self.samples} samples)")

    def to_json(self) -> dict:
        return asdict(self)


def _result(name, ok, samples, metric, observed, threshold):
    return SuiteResult(name, bool(ok), int(samples), metric, float(observed), float(threshold))


def dimension_formula(seed=0):
    """Counts of multi-indices against binomials; small cases against brute force."""
    mismatches = 0
    cases = 0
    for m in range(1, 9):
        for s in range(1, 9):
            cases += 1
            n = math.comb(m + s, m)
            idx = multi_indices(m, s)
            if embedding_dimension(m, s) != n - 1 or len(idx) != n or len(set(idx)) != n:
                mismatches += 1
            if m + s <= 9:
                brute = sorted((mu for mu in itertools.product(range(m + 1), repeat=s + 1)
                                if sum(mu) == m), reverse=True)
                mismatches += brute != idx
    return _result("dimension_formula", mismatches == 0, cases,
                   "mismatched (m, s) cases", mismatches, 0)


def mobius_involution(seed=0, n=1000, tol=1e-10):
    rng = make_rng(seed, "mobius_involution")
    worst = 0.0
    escaped = 0
    scalar = 0.0
    for s in (1, 2, 3):
        for _ in range(n):
            a = random_ball_point(rng, s, 0.99)
            z = random_ball_point(rng, s, 0.99)
            w = mobius_eval(a, z)
            escaped += not np.linalg.norm(w) < 1.0
            worst = max(worst, float(np.max(np.abs(mobius_eval(a, w) - z))))
            if s == 1:
                ref = (a[0] - z[0]) / (1 - np.conj(a[0]) * z[0])
                scalar = max(scalar, abs(w[0] - ref))
    ok = worst < tol and escaped == 0 and scalar < 1e-14
    return _result("mobius_involution", ok, 3 * n,
                   "max |phi_a(phi_a(z)) - z|_inf", worst, tol)


def quotient_invariance(seed=0, n=500, tol=1e-12):
    rng = make_rng(seed, "quotient_invariance")
    worst = 0.0
    broken = 0
    for _ in range(n):
        m = int(rng.integers(1, 6))
        s = int(rng.integers(1, 4))
        t = random_ordered_config(rng, m, s)
        canon = project(t)
        perms = list(itertools.permutations(range(m)))
        broken += sum(project(t.permuted(p)) != canon for p in perms)
        ref = segre_whitney(canon).values
        direct = product_coefficients(t.points[np.array(perms)])
        worst = max(worst, float(np.max(np.abs(direct - ref))))
    return _result("quotient_invariance", broken == 0 and worst < tol, n,
                   "max segre_whitney ordering deviation", worst, tol)


def _distinct_orderings(c):
    seen = set()
    for p in itertools.permutations(range(c.m)):
        seen.add(c.points[list(p)].tobytes())
    return len(seen)


def covering_degrees(seed=0, max_m=6):
    rng = make_rng(seed, "covering_degrees")
    bad = 0
    cases = 0
    for m in range(1, max_m + 1):
        for p in partitions(m):
            cases += 1
            c = stratum_representative(rng, p, 2)
            want = math.factorial(m) // math.prod(math.factorial(q) for q in p)
            got = len(fiber(c))
            bad += not (got == want == covering_degree(p) == _distinct_orderings(c)
                        and classify_stratum(c, 0.0) == p)
    return _result("covering_degrees", bad == 0, cases,
                   "partitions with wrong fiber size", bad, 0)


def _subset_esp(z, k):
    return sum(math.prod(c) for c in itertools.combinations(z, k))


def polydisc_reduction(seed=0, n=500, tol=1e-12):
    rng = make_rng(seed, "polydisc_reduction")
    worst = 0.0
    for _ in range(n):
        m = int(rng.integers(1, 7))
        c = random_sym_config(rng, m, 1)
        esp = elementary_symmetric(c)
        coeffs = segre_whitney(c)
        z = c.points[:, 0].tolist()
        for k in range(1, m + 1):
            worst = max(worst, abs(coeffs[(m - k, k)] - esp[k - 1]),
                        abs(_subset_esp(z, k) - esp[k - 1]))
    return _result("polydisc_reduction", worst < tol, n,
                   "max |c_(m-k,k) - sigma_k|", worst, tol)


def generator_recovery(seed=0, n=100, tol=1e-8):
    rng = make_rng(seed, "generator_recovery")
    worst = 0.0
    count = 0
    for s in (2, 3):
        for m in (2, 3):
            for i in range(n):
                g = sample_automorphism(rng, s)
                f = InducedMap(g, m)
                rec = extract_generator(f, s, m, tol=tol, seed=seed + i)
                configs = [random_sym_config(rng, m, s) for _ in range(10)]
                worst = max(worst, automorphism_distance(rec, g),
                            roundtrip_error(f, rec, configs))
                count += 1
    return _result("generator_recovery", worst < tol, count,
                   "max parameter / round-trip error", worst, tol)


def functoriality(seed=0, n=200, tol=1e-10):
    rng = make_rng(seed, "functoriality")
    worst = 0.0
    for _ in range(n):
        m = int(rng.integers(1, 5))
        s = int(rng.integers(1, 4))
        g1, g2, g3 = (sample_automorphism(rng, s) for _ in range(3))
        c = random_sym_config(rng, m, s)
        f1, f2 = InducedMap(g1, m), InducedMap(g2, m)
        comp = InducedMap(automorphism_compose(g1, g2), m)
        inv = InducedMap(automorphism_inverse(g1), m)
        left = InducedMap(automorphism_compose(automorphism_compose(g1, g2), g3), m)
        right = InducedMap(automorphism_compose(g1, automorphism_compose(g2, g3)), m)
        worst = max(worst,
                    sym_distance(comp(c), f1(f2(c))),
                    sym_distance(inv(f1(c)), c),
                    sym_distance(f1(inv(c)), c),
                    sym_distance(left(c), right(c)))
    return _result("functoriality", worst < tol, n,
                   "max composition / inverse deviation", worst, tol)


def _perturbation(rng, s, eps):
    # -phi_a with |a| = eps is within O(eps) of the identity
    return Automorphism(-np.eye(s), eps * (rng.standard_normal(s) + 1j * rng.standard_normal(s))
                        / np.sqrt(2 * s))


def rigidity(seed=0, n=100, tol=1e-10, gap=1e-3, n_samples=4):
    rng = make_rng(seed, "rigidity")
    wrong = 0
    trials = 0
    for m in (2, 3, 4):
        for _ in range(n):
            s = int(rng.integers(1, 4))
            sigma = rng.permutation(m)
            samples = [random_ordered_config(rng, m, s) for _ in range(n_samples)]
            g = sample_automorphism(rng, s)
            wrong += not check_sm_invariance(TupleMap([g] * m, sigma), samples, tol)

            i, j = rng.choice(m, size=2, replace=False)
            comps = [g] * m
            while True:
                if rng.uniform() < 0.5:
                    other = sample_automorphism(rng, s)
                else:
                    other = automorphism_compose(g, _perturbation(rng, s, rng.uniform(1e-3, 1e-1)))
                pts = np.concatenate([t.points for t in samples])
                diff = np.max(np.abs(g._apply(pts) - other._apply(pts)))
                if diff >= gap:
                    break
            comps[j] = other
            wrong += check_sm_invariance(TupleMap(comps, sigma), samples, tol)
            trials += 2
    return _result("rigidity", wrong == 0, trials,
                   "misclassified tuple maps", wrong, 0)


def _constraint_codimension(p, s):
    # rank of the linear equations z^i = z^j within each block of the partition
    m = sum(p)
    rows = []
    start = 0
    for size in p:
        block = range(start, start + size)
        for i, j in itertools.combinations(block, 2):
            for ell in range(s):
                r = np.zeros(m * s)
                r[i * s + ell], r[j * s + ell] = 1.0, -1.0
                rows.append(r)
        start += size
    return int(np.linalg.matrix_rank(np.array(rows))) if rows else 0


def _stratum_jacobian_rank(rng, p, s, h=1e-5):
    # complex rank of (x^1..x^k) -> Segre coordinates of <x^1:m_1, ..., x^k:m_k>
    x = random_points(rng, len(p), s, 0.7).ravel()
    reps = list(p)

    def coords(v):
        return product_coefficients(np.repeat(v.reshape(len(p), s), reps, axis=0))

    cols = []
    for q in range(x.size):
        e = np.zeros(x.size, dtype=np.complex128)
        e[q] = h
        cols.append((coords(x + e) - coords(x - e)) / (2 * h))
    sv = np.linalg.svd(np.column_stack(cols), compute_uv=False)
    return int(np.sum(sv > 1e-6 * sv[0]))


def stratum_dimensions(seed=0):
    rng = make_rng(seed, "stratum_dimensions")
    bad = 0
    cases = 0
    for s in (2, 3):
        for m in range(2, 7):
            cases += 1
            bad += stratum_codimension((2,) + (1,) * (m - 2), s) != s
    for m in range(1, 5):
        for p in partitions(m):
            for s in (1, 2, 3):
                cases += 1
                codim = stratum_codimension(p, s)
                rank = _stratum_jacobian_rank(rng, p, s)
                bad += not (codim == _constraint_codimension(p, s) == s * m - rank
                            and rank == s * len(p))
    return _result("stratum_dimensions", bad == 0, cases,
                   "inconsistent (partition, s) cases", bad, 0)


def embedding_injectivity(seed=0, n=500, sep=1e-3, bound=1e-9):
    rng = make_rng(seed, "embedding_injectivity")
    closest = math.inf
    taken = 0
    while taken < n:
        m = int(rng.integers(1, 5))
        s = int(rng.integers(1, 4))
        c1 = random_sym_config(rng, m, s, 0.9)
        if taken % 2:
            c2 = random_sym_config(rng, m, s, 0.9)
        else:
            pts = np.array(c1.points)
            i, ell = int(rng.integers(m)), int(rng.integers(s))
            pts[i, ell] += rng.uniform(sep, 1e-2) * np.exp(2j * np.pi * rng.uniform())
            c2 = SymConfig(pts)
        if sym_distance(c1, c2) < sep:
            continue
        taken += 1
        closest = min(closest, embedding_distance(segre_whitney(c1), segre_whitney(c2)))
    return _result("embedding_injectivity", closest > bound, n,
                   "min embedding sup-distance", closest, bound)


def projection_commutation(seed=0, m=3, s=2, n=100, tol=1e-10):
    """Commuting square pi o g^m = g^m_Sym o pi at one (m, s), plus diagonals."""
    rng = make_rng(seed, "projection_commutation")
    fails = 0
    spread = 0.0
    for _ in range(n):
        g = sample_automorphism(rng, s)
        t = random_ordered_config(rng, m, s)
        fails += not commutes_with_projection(g, t, tol)
        d = induced_eval(InducedMap(g, m), SymConfig.diagonal(random_ball_point(rng, s), m))
        spread = max(spread, float(np.max(np.abs(d.points - d.points[0]))))
    return _result(f"projection_commutation(m={m},s={s})", fails == 0 and spread < 1e-12, n,
                   "max diagonal spread", spread, 1e-12)


ACCEPTANCE_SUITES = (
    dimension_formula,
    mobius_involution,
    quotient_invariance,
    covering_degrees,
    polydisc_reduction,
    generator_recovery,
    functoriality,
    rigidity,
    stratum_dimensions,
    embedding_injectivity,
)


def run_suites(seed=0, m=3, s=2, jobs=1, only=None):
    """Run the acceptance suites plus the commutation suite at (m, s).

    ``only`` restricts the run to suites whose function names it contains.
    """
    suites = ACCEPTANCE_SUITES + (projection_commutation,)
    if only is not None:
        suites = tuple(fn for fn in suites if fn.__name__ in only)
    tasks = [lambda fn=fn: fn(seed) if fn is not projection_commutation
             else fn(seed, m=m, s=s) for fn in suites]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda task: task(), tasks))
    return [task() for task in tasks]
