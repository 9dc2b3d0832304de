"""Acceptance criteria, one test per criterion.

Every numeric criterion is asserted at its stated tolerance (rational
equality means Fraction comparison, no floats).  Each test prints one
summary line; run `pytest -v -s tests/test_acceptance.py` to see them.
"""

import itertools
import random
import subprocess
import sys
from fractions import Fraction

from conftest import brute_has_minor
from fqminors import formulas, oracle, sampler
from fqminors.gf import field
from fqminors.matrix import FqMatrix, format_matrix
from fqminors.matroid import catalog, from_matrix
from fqminors.minor import find_minor, verify_witness
from fqminors.sampler import SeedSpec, mc_event_prob, mc_minor_prob, wilson_interval
from fqminors.sweep import run_class_sweep

F2 = field(2)
SEED = 20260810


def test_criterion_1_exact_formula_vs_oracle():
    """Rational equality of the closed forms with brute-force enumeration."""
    checked = 0
    for q in (2, 3):
        for m in range(1, 5):
            for n in range(1, 5):
                if q ** (m * n) > 2**20:
                    continue
                hist = oracle.rank_histogram(q, m, n)
                assert sum(hist) == q ** (m * n)
                for k in range(min(m, n) + 1):
                    assert hist[k] == formulas.count_rank_matrices(m, n, q, k)
                    checked += 1
                if m >= n:
                    got = oracle.exact_event_prob(q, m, n, "full-column-rank").exact
                    assert got == formulas.prob_full_col_rank(m, n, q)
                    checked += 1
                for r in range(min(m, n) + 1):
                    got = oracle.exact_event_prob(q, m, n, f"rank-at-least:{r}").exact
                    assert got == formulas.prob_free_minor(m, n, q, r)
                    checked += 1
                if q ** (m * n) <= 3**9:
                    for r in range(min(m, n) + 1):
                        got = oracle.exact_minor_prob(q, m, n, catalog(f"free:{r}")).exact
                        assert got == formulas.prob_free_minor(m, n, q, r)
                        checked += 1
    # the largest permitted q=3 shapes, through the real minor searcher
    for (m, n) in ((3, 4), (4, 3)):
        for r in (0, 2, 3):
            got = oracle.exact_minor_prob(3, m, n, catalog(f"free:{r}")).exact
            assert got == formulas.prob_free_minor(m, n, 3, r)
            checked += 1
    print(f"ACCEPTANCE 1 PASS: {checked} exact equalities, zero tolerance")


def test_criterion_2_bound_sandwich():
    """Strict lower bound and upper bound sandwich the exact probability."""
    loopy = from_matrix(FqMatrix(F2, 2, 4, (1, 0, 1, 0, 0, 1, 1, 0)))
    targets = {
        "U:1,2": catalog("U:1,2"),
        "U:1,3": catalog("U:1,3"),
        "U23+loop": loopy,
        "all-loops:2": catalog("U:0,2"),
    }
    lower_checked = upper_checked = 0
    for name, target in targets.items():
        st = target.stats()
        for m in range(st.r, 4):
            for n in range(st.e, 6):
                exact = oracle.exact_minor_prob(2, m, n, target).exact
                if min(n - st.e, m - st.r) >= 1:
                    bound = formulas.lower_bound_nonfree(m, n, 2, st)
                    assert bound.value < exact, (name, m, n, bound.value, exact)
                    lower_checked += 1
                if m >= n:
                    upper = formulas.upper_bound_nonfree(m, n, 2)
                    assert exact <= upper, (name, m, n, exact, upper)
                    upper_checked += 1
    print(f"ACCEPTANCE 2 PASS: {lower_checked} strict lower, "
          f"{upper_checked} upper comparisons, rational arithmetic")


def test_criterion_3_representation_counting():
    """Exhaustive representation counts dominate the closed-form bound.

    The count bound presupposes the target is representable over GF(q); the
    single catalog combo violating that hypothesis, U_{2,4} over GF(2), is
    instead asserted to have no representation at all.
    """
    checked = 0
    names = [f"U:{k},{n}" for n in range(1, 5) for k in range(n + 1)]
    for q in (2, 3):
        for name in names:
            M = catalog(name)
            st = M.stats()
            for m in range(st.r, 4):
                exact = oracle.count_representations_exact(M, m, q)
                if name == "U:2,4" and q == 2:
                    assert exact == 0, "U_{2,4} must not be GF(2)-representable"
                    continue
                bound = formulas.rep_count_lower_bound(m, q, st)
                assert exact >= bound, (name, m, q, exact, bound)
                checked += 1
    assert oracle.count_representations_exact(catalog("U:2,3"), 2, 2) == 6
    assert formulas.rep_count_lower_bound(2, 2, catalog("U:2,3").stats()) == 6
    print(f"ACCEPTANCE 3 PASS: {checked} count comparisons; "
          f"equality at (U_{{2,3}}, m=2, q=2) = 6; U24/GF(2) has 0 representations")


def test_criterion_4_cq_constant_and_square_mc():
    """C_q evaluation window, pentagonal floor, and the square-matrix MC."""
    approx, terms, floor_bound = formulas.cq_constant(2, 1e-9)
    assert 0.288788095 < approx < 0.288788096
    assert floor_bound == Fraction(1, 4) and approx > 0.25
    exact = float(formulas.prob_full_col_rank(30, 30, 2))
    est = mc_event_prob(2, 30, 30, "full-column-rank", 100_000, seed=SEED)
    lo, hi = wilson_interval(est.successes, est.trials, z=3.0)
    assert lo <= exact <= hi, (est.point, exact, lo, hi)
    print(f"ACCEPTANCE 4 PASS: C_2 = {approx:.10f} ({terms} factors) > 1/4; "
          f"MC point {est.point:.5f} vs partial product {exact:.5f} within 3 Wilson sigma")


def test_criterion_5_distribution_invariance():
    """Exhaustive change-of-basis bijections and conditional uniformity."""
    for (m, n) in ((2, 2), (2, 1)):
        rep = oracle.distribution_check("change-of-basis", 2, m, n)
        assert rep.ok, rep.details
    for (m, n, k) in ((2, 2, 1), (3, 2, 1), (2, 3, 1)):
        rep = oracle.distribution_check("reduce-conditional", 2, m, n, k)
        assert rep.ok and rep.details["uniform"], rep.details
    print("ACCEPTANCE 5 PASS: bijection checks at 2x2 and 2x1; "
          "reduce exactly uniform at (2,2), (3,2), (2,3) with k=1")


def test_criterion_6_phase_transition_trends():
    """The finite-n shadow of the phase transition, 10^4 trials per point."""
    u12 = catalog("U:1,2")
    # (a) n - m -> infinity regime: probability climbs to 1
    points_a = []
    for n in (12, 20, 28, 36):
        est = mc_minor_prob(2, n - 8, n, u12, 10_000, seed=SEED, budget=20_000)
        points_a.append(est)
    for prev, nxt in zip(points_a, points_a[1:]):
        prev_lo = wilson_interval(prev.successes, prev.trials, z=3.0)[0]
        nxt_hi = wilson_interval(nxt.successes, nxt.trials, z=3.0)[1]
        assert nxt_hi >= prev_lo, "decreasing beyond 3 sigma"
    assert points_a[-1].point > 0.99
    # (b) m - n -> infinity regime: probability pinned near 0
    points_b = []
    for n in (4, 8, 12, 16):
        est = mc_minor_prob(2, n + 8, n, u12, 10_000, seed=SEED, budget=20_000)
        points_b.append(est)
        assert est.point < 0.02, (n, est.point)
    # (c) and the matroid is outright free almost always
    est_free = mc_event_prob(2, 24, 16, "is-free-matroid", 10_000, seed=SEED)
    assert est_free.point > 0.98
    print("ACCEPTANCE 6 PASS: "
          f"(a) points {[round(e.point, 4) for e in points_a]} non-decreasing, last > 0.99; "
          f"(b) points {[round(e.point, 4) for e in points_b]} all < 0.02; "
          f"(c) free frequency {est_free.point:.4f} > 0.98")


def test_criterion_7_search_soundness_completeness():
    """find_minor against the all-(C, D) brute force on 200 random instances."""
    rng = random.Random(SEED)
    disagreements = 0
    witnesses = 0
    for _ in range(200):
        m = rng.randint(1, 3)
        n = rng.randint(1, 7)
        host = from_matrix(FqMatrix(F2, m, n, tuple(rng.randrange(2) for _ in range(m * n))))
        tm = rng.randint(1, 2)
        tn = rng.randint(1, 5)
        target = from_matrix(FqMatrix(F2, tm, tn, tuple(rng.randrange(2) for _ in range(tm * tn))))
        w = find_minor(host, target)
        if (w is not None) != brute_has_minor(host, target):
            disagreements += 1
        if w is not None:
            assert verify_witness(host, target, w)
            witnesses += 1
    assert disagreements == 0
    print(f"ACCEPTANCE 7 PASS: 200 instances, 0 disagreements, "
          f"{witnesses} witnesses all verified")


def test_criterion_8_graphic_class_check():
    """Tutte excluded-minor test and the non-graphic frequency sweep."""
    from fqminors.minor import has_excluded_minor_matrix

    k4_edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    rows = [[1 if v in e else 0 for e in k4_edges] for v in range(4)]
    rep = has_excluded_minor_matrix(FqMatrix.from_rows(F2, rows), "graphic")
    assert rep.membership == "yes"

    u24_rep = FqMatrix.from_rows(field(5), [[1, 1, 1, 1], [0, 1, 2, 3]])
    rep = has_excluded_minor_matrix(u24_rep, "graphic")
    assert rep.membership == "no" and rep.outcomes["U:2,4"] == "found"

    rows = run_class_sweep(2, "graphic", (8, 24, 8), "n-minus:8",
                           trials=1000, seed=SEED, budget=20_000)
    freq = {r.n: r.frequency for r in rows}
    assert freq[24] > 0.95, freq
    print(f"ACCEPTANCE 8 PASS: K4 graphic, U24/GF(5) non-graphic; "
          f"sweep non-graphic frequency {freq}")


def _run_cli(args):
    return subprocess.run([sys.executable, "-m", "fqminors"] + args,
                          capture_output=True, text=True)


def test_criterion_9_determinism():
    """Byte-identical outputs across repeated runs and parallelism settings."""
    a = _run_cli(["validate"])
    b = _run_cli(["validate"])
    assert a.returncode == 0 and a.stdout == b.stdout and a.stderr == b.stderr

    sim = ["simulate", "--q", "2", "--target", "name:U:1,2",
           "--n-start", "6", "--n-stop", "12", "--n-step", "3",
           "--m-rule", "n-minus:4", "--trials", "500", "--seed", "17"]
    r1 = _run_cli(sim)
    r2 = _run_cli(sim)
    r_jobs = _run_cli(sim + ["--jobs", "2"])
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout == r_jobs.stdout
    assert r1.stdout.startswith("n,m,trials,point,")
    print("ACCEPTANCE 9 PASS: validate and simulate byte-identical across "
          "runs and jobs settings")
