"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import math

import numpy as np

from symball import (
    Automorphism,
    InducedMap,
    OrderedConfig,
    SymConfig,
    TupleMap,
    automorphism_compose,
    automorphism_inverse,
    check_sm_invariance,
    covering_degree,
    elementary_symmetric,
    embedding_dimension,
    extract_generator,
    fiber,
    mobius_eval,
    multi_indices,
    partitions,
    project,
    segre_whitney,
    stratum_codimension,
    sym_distance,
)
from symball.ball import sample_automorphism
from symball.embedding import embedding_distance
from symball.sampling import (
    make_rng,
    random_ball_point,
    random_ordered_config,
    random_sym_config,
    stratum_representative,
)

SEED = 20240601


def mobius_by_projections(a, z):
    """phi_a(z) built from the explicit matrices P_a = a a^*/|a|^2 and Q_a = I - P_a."""
    a = np.asarray(a, dtype=complex)
    s = a.size
    p = np.outer(a, a.conj()) / np.vdot(a, a).real
    q = np.eye(s) - p
    s_a = math.sqrt(1.0 - np.vdot(a, a).real)
    return (a - p @ z - s_a * (q @ z)) / (1.0 - np.vdot(a, z))


def apply_pointwise(g, c):
    return SymConfig([g(z) for z in c.points])


def test_criterion_1_dimension_formula(report):
    bad = []
    for m in range(1, 9):
        for s in range(1, 9):
            n = math.comb(m + s, m)
            if embedding_dimension(m, s) != n - 1 or len(multi_indices(m, s)) != n:
                bad.append((m, s))
    ok = report(1, not bad, f"{64 - len(bad)}/64 (m, s) cases match binom(m+s, m)")
    assert ok, bad


def test_criterion_2_mobius_involution(report):
    rng = make_rng(SEED, "acceptance-2")
    worst = 0.0
    oracle = 0.0
    escaped = 0
    for s in (1, 2, 3):
        for _ in range(1000):
            a = random_ball_point(rng, s, 0.99)
            z = random_ball_point(rng, s, 0.99)
            w = mobius_eval(a, z)
            escaped += not np.linalg.norm(w) < 1.0
            worst = max(worst, float(np.max(np.abs(mobius_eval(a, w) - z))))
            oracle = max(oracle, float(np.max(np.abs(w - mobius_by_projections(a, z)))))
    ok = worst < 1e-10 and escaped == 0 and oracle < 1e-10
    report(2, ok, f"involution error {worst:.2e}, projection-matrix oracle {oracle:.2e}, "
                  f"{escaped} images outside the ball (3000 samples)")
    assert ok


def test_criterion_3_quotient_invariance(report):
    rng = make_rng(SEED, "acceptance-3")
    broken = 0
    worst = 0.0
    for _ in range(500):
        m, s = int(rng.integers(1, 6)), int(rng.integers(1, 4))
        t = random_ordered_config(rng, m, s)
        canon = project(t)
        ref = segre_whitney(canon).values
        for sigma in itertools.permutations(range(m)):
            tp = t.permuted(sigma)
            broken += project(tp).points.tobytes() != canon.points.tobytes()
            worst = max(worst, float(np.max(np.abs(segre_whitney(tp).values - ref))))
    ok = broken == 0 and worst < 1e-12
    report(3, ok, f"{broken} non-bitwise projections, max ordering deviation {worst:.2e}")
    assert ok


def test_criterion_4_covering_degree(report):
    rng = make_rng(SEED, "acceptance-4")
    bad = []
    cases = 0
    for m in range(1, 7):
        for p in partitions(m):
            cases += 1
            c = stratum_representative(rng, p, 2)
            want = math.factorial(m) // math.prod(math.factorial(q) for q in p)
            orderings = {c.points[list(sigma)].tobytes()
                         for sigma in itertools.permutations(range(m))}
            if not len(fiber(c)) == want == len(orderings) == covering_degree(p):
                bad.append(tuple(p))
    ok = report(4, not bad, f"{cases - len(bad)}/{cases} partitions with m <= 6 have exact fiber size")
    assert ok, bad


def test_criterion_5_polydisc_reduction(report):
    rng = make_rng(SEED, "acceptance-5")
    worst = 0.0
    oracle = 0.0
    for _ in range(500):
        m = int(rng.integers(1, 7))
        c = random_sym_config(rng, m, 1)
        coeffs = segre_whitney(c)
        esp = elementary_symmetric(c)
        # np.poly gives prod (x - z_j), whose k-th coefficient is (-1)^k sigma_k
        poly = np.poly(c.points[:, 0])
        for k in range(1, m + 1):
            worst = max(worst, abs(coeffs[(m - k, k)] - esp[k - 1]))
            oracle = max(oracle, abs((-1) ** k * poly[k] - esp[k - 1]))
    ok = worst < 1e-12 and oracle < 1e-12
    report(5, ok, f"max |c_(m-k,k) - sigma_k| = {worst:.2e}, root-polynomial oracle {oracle:.2e}")
    assert ok


def test_criterion_6_generator_recovery(report):
    rng = make_rng(SEED, "acceptance-6")
    d_center = d_unitary = d_trip = 0.0
    count = 0
    for s in (2, 3):
        for m in (2, 3):
            for i in range(100):
                g = sample_automorphism(rng, s)
                f = InducedMap(g, m)
                rec = extract_generator(f, s, m, seed=i)
                d_center = max(d_center, float(np.max(np.abs(rec.center - g.center))))
                d_unitary = max(d_unitary, float(np.max(np.abs(rec.unitary - g.unitary))))
                for _ in range(5):
                    c = random_sym_config(rng, m, s)
                    d_trip = max(d_trip, sym_distance(f(c), apply_pointwise(rec, c)))
                count += 1
    ok = max(d_center, d_unitary, d_trip) < 1e-8
    report(6, ok, f"|a - a^| {d_center:.2e}, |U - U^| {d_unitary:.2e}, "
                  f"round trip {d_trip:.2e} ({count} automorphisms)")
    assert ok


def test_criterion_7_functoriality(report):
    rng = make_rng(SEED, "acceptance-7")
    worst = 0.0
    for _ in range(200):
        m, s = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        g1, g2 = sample_automorphism(rng, s), sample_automorphism(rng, s)
        c = random_sym_config(rng, m, s)
        f1, f2 = InducedMap(g1, m), InducedMap(g2, m)
        comp = InducedMap(automorphism_compose(g1, g2), m)
        inv = InducedMap(automorphism_inverse(g1), m)
        pointwise = SymConfig([g1(g2(z)) for z in c.points])
        worst = max(worst,
                    sym_distance(comp(c), f1(f2(c))),
                    sym_distance(comp(c), pointwise),
                    sym_distance(inv(f1(c)), c),
                    sym_distance(f1(inv(c)), c),
                    sym_distance(f1.inverse()(f1(c)), c))
    ok = worst < 1e-10
    report(7, ok, f"max composition / inverse deviation {worst:.2e} (200 configs)")
    assert ok


def test_criterion_8_rigidity(report):
    rng = make_rng(SEED, "acceptance-8")
    accepted_bad = rejected_good = trials = 0
    for m in (2, 3, 4):
        for _ in range(100):
            s = int(rng.integers(1, 4))
            sigma = rng.permutation(m)
            samples = [random_ordered_config(rng, m, s) for _ in range(4)]
            pts = np.concatenate([t.points for t in samples])
            g = sample_automorphism(rng, s)
            rejected_good += not check_sm_invariance(TupleMap([g] * m, sigma), samples)
            while True:
                if rng.uniform() < 0.5:
                    other = sample_automorphism(rng, s)
                else:
                    # a small center gives a map close to g
                    eps = rng.uniform(1e-3, 1e-1)
                    a = eps * random_ball_point(rng, s, 1.0)
                    other = automorphism_compose(g, Automorphism(-np.eye(s), a))
                if np.max(np.abs(g._apply(pts) - other._apply(pts))) >= 1e-3:
                    break
            comps = [g] * m
            comps[int(rng.integers(m))] = other
            accepted_bad += check_sm_invariance(TupleMap(comps, sigma), samples)
            trials += 1
    ok = accepted_bad == 0 and rejected_good == 0
    report(8, ok, f"{accepted_bad}/{trials} mixed maps accepted, "
                  f"{rejected_good}/{trials} all-equal maps rejected")
    assert ok


def constraint_rank(p, s):
    """Real rank of the equations z^i = z^j (real and imaginary parts) within each block."""
    m = sum(p)
    rows = []
    start = 0
    for size in p:
        for i, j in itertools.combinations(range(start, start + size), 2):
            for ell in range(2 * s):
                r = np.zeros(2 * m * s)
                r[2 * s * i + ell], r[2 * s * j + ell] = 1.0, -1.0
                rows.append(r)
        start += size
    return int(np.linalg.matrix_rank(np.array(rows))) if rows else 0


def test_criterion_9_stratum_codimension(report):
    bad = []
    for s in (2, 3):
        for m in range(2, 8):
            if stratum_codimension((2,) + (1,) * (m - 2), s) != s:
                bad.append(("diagonal", m, s))
    for m in range(1, 5):
        for p in partitions(m):
            for s in (1, 2, 3):
                codim = stratum_codimension(p, s)
                # complex codimension is half the real rank; dimension s*k completes s*m
                if constraint_rank(p, s) != 2 * codim or codim + s * len(p) != s * m:
                    bad.append((tuple(p), s))
    ok = report(9, not bad, "codimension s for (2,1,...,1) and s*k + codim = s*m for every "
                            "partition with m <= 4" if not bad else f"inconsistent cases {bad}")
    assert ok


def test_criterion_10_embedding_injectivity(report):
    rng = make_rng(SEED, "acceptance-10")
    closest = math.inf
    taken = 0
    while taken < 500:
        m, s = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        c1 = random_sym_config(rng, m, s, 0.9)
        if taken % 2:
            c2 = random_sym_config(rng, m, s, 0.9)
        else:
            pts = np.array(c1.points)
            pts[int(rng.integers(m)), int(rng.integers(s))] += (
                rng.uniform(1e-3, 1e-2) * np.exp(2j * np.pi * rng.uniform()))
            if np.linalg.norm(pts, axis=1).max() >= 1.0:
                continue
            c2 = SymConfig(pts)
        # separation as multisets, which also bounds the canonical sup-distance
        if sym_distance(c1, c2) < 1e-3:
            continue
        taken += 1
        closest = min(closest, embedding_distance(segre_whitney(c1), segre_whitney(c2)))
    ok = closest > 1e-9
    report(10, ok, f"min embedding sup-distance {closest:.2e} over 500 separated pairs")
    assert ok
