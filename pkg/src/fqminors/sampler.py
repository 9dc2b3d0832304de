"""Seeded uniform sampling over GF(q), the randomness-preserving reduction,
and Monte Carlo estimation of minor-containment probabilities.

RNG contract (bit-exact, reproducible across platforms and schedules):

* Each (seed, stream) pair owns an independent word stream produced by the
  Philox-4x64-10 counter-based generator with key ``[seed mod 2^64,
  stream mod 2^64]`` and counter starting at 0 (numpy's Philox bit
  generator, drained via ``random_raw``).
* Matrix entries are filled in row-major order.  With T = q * (2^64 // q),
  the first m*n words are assigned to the m*n positions in order; a word
  w < T yields the entry w mod q, a word >= T is rejected.  Rejected
  positions are refilled, in position order, from the next block of words,
  repeating until none remain.  (For q a power of two T = 2^64 and no
  rejection ever happens.)
* Monte Carlo trial i uses stream i, so trials are independent of execution
  order and may be split across processes without changing any output.

Estimates carry Wilson 95% intervals and report budget-exhausted searches
as a separate `unknowns` count, never folding them into successes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BadArgumentsError, BudgetExceededError, UnknownEventError
from .gf import field
from .matrix import FqMatrix, contract_unit_columns, rref
from .matroid import Matroid
from .minor import DEFAULT_BUDGET, find_minor_matrix, verify_witness_matrix

_MASK64 = (1 << 64) - 1
_WILSON_Z95 = 1.959963984540054


@dataclass(frozen=True)
class SeedSpec:
    """(seed, stream) fully determines every sampled bit."""

    seed: int
    stream: int


def _philox(spec: SeedSpec) -> np.random.Philox:
    return np.random.Philox(key=[spec.seed & _MASK64, spec.stream & _MASK64])


def sample_entries(q: int, count: int, spec: SeedSpec) -> list[int]:
    """`count` i.i.d. uniform element codes per the module RNG contract."""
    field(q)  # validates q
    if count == 0:
        return []
    bg = _philox(spec)
    words = bg.random_raw(count).copy()
    out = (words % np.uint64(q)).astype(np.int64)
    threshold = (2**64 // q) * q
    if threshold < 2**64:
        bad = np.flatnonzero(words >= np.uint64(threshold))
        while bad.size:
            redraw = bg.random_raw(bad.size)
            accept = redraw < np.uint64(threshold)
            out[bad[accept]] = (redraw[accept] % np.uint64(q)).astype(np.int64)
            bad = bad[~accept]
    return out.tolist()


def sample_matrix(q: int, m: int, n: int, spec: SeedSpec) -> FqMatrix:
    """Uniform m x n matrix over GF(q), deterministic in (q, m, n, spec)."""
    if m < 0 or n < 0:
        raise BadArgumentsError(f"negative shape {m}x{n}")
    return FqMatrix(field(q), m, n, tuple(sample_entries(q, m * n, spec)))


# ----------------------------------------------------------------------
# the reduction procedure
# ----------------------------------------------------------------------


def reduce(A: FqMatrix, k: int) -> FqMatrix | None:
    """Contract k columns out of M[A] by the deterministic realization of
    the randomness-preserving reduction; None when the independence test
    fails.

    For m > n the first k columns must be linearly independent.  For m <= n
    the first k rows must be linearly independent, and the contracted
    columns are the leftmost pivot set of that top block (a fixed concrete
    choice where any independent k columns would do).  In both cases an
    invertible change of basis sends the chosen columns to unit vectors,
    which are then contracted away, leaving (m-k) x (n-k).
    Conditioned on success the output is exactly uniform; the oracle module
    verifies this exhaustively at small sizes.
    """
    m, n = A.m, A.n
    if not 0 <= k <= min(m, n):
        raise BadArgumentsError(f"need 0 <= k <= min(m, n), got k={k} for {m}x{n}")
    if k == 0:
        return A
    o = linalg.ops_for(A.field, m)
    cols = o.cols_of(A)
    if m > n:
        chosen = list(range(k))
        if o.rank_cols([cols[j] for j in chosen]) != k:
            return None
    else:
        top = FqMatrix(A.field, k, n, A.entries[: k * n])
        _, pivots = rref(top)
        if len(pivots) != k:
            return None
        chosen = list(pivots)
    basis = linalg.complete_to_basis(o, [cols[j] for j in chosen])
    p_rows = o.inverse_rows(basis)
    entries = []
    for i in range(m):
        for j in range(n):
            entries.append(o.dot(p_rows[i], cols[j]))
    pa = FqMatrix(A.field, m, n, tuple(entries))
    return contract_unit_columns(pa, chosen)


# ----------------------------------------------------------------------
# estimates
# ----------------------------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = _WILSON_Z95) -> tuple[float, float]:
    if trials < 1:
        raise BadArgumentsError("trials must be >= 1")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4 * trials * trials)) / denom
    # the interval provably contains phat; clamp against float rounding
    return (max(0.0, min(center - half, phat)), min(1.0, max(center + half, phat)))


@dataclass(frozen=True)
class Estimate:
    trials: int
    successes: int
    unknowns: int
    point: float
    wilson_lo: float
    wilson_hi: float
    seed: int

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "unknowns": self.unknowns,
            "point": self.point,
            "ci": [self.wilson_lo, self.wilson_hi],
            "seed": self.seed,
            "method": "wilson95",
        }


def _make_estimate(trials: int, successes: int, unknowns: int, seed: int) -> Estimate:
    lo, hi = wilson_interval(successes, trials)
    return Estimate(trials, successes, unknowns, successes / trials, lo, hi, seed)


# ----------------------------------------------------------------------
# named events (shared with the oracle)
# ----------------------------------------------------------------------


def parse_event(name: str):
    """Named rank predicates: full-column-rank, is-free-matroid,
    rank-at-least:r, rank-exactly:k."""
    if name in ("full-column-rank", "is-free-matroid"):
        # M[A] is free exactly when the columns are linearly independent
        return lambda rank, m, n: rank == n
    if name.startswith("rank-at-least:"):
        r = _parse_event_int(name)
        return lambda rank, m, n: rank >= r
    if name.startswith("rank-exactly:"):
        k = _parse_event_int(name)
        return lambda rank, m, n: rank == k
    raise UnknownEventError(f"unknown event {name!r}")


def _parse_event_int(name: str) -> int:
    try:
        return int(name.split(":", 1)[1])
    except ValueError:
        raise UnknownEventError(f"bad event parameter in {name!r}") from None


def _bit_rows_rank(rows: list[int]) -> int:
    basis: list[int] = []
    r = 0
    for v in rows:
        for b in basis:
            low = b & -b
            if v & low:
                v ^= b
        if v:
            basis.append(v)
            r += 1
    return r


def _trial_rank(q: int, m: int, n: int, spec: SeedSpec) -> int:
    if q == 2 and n <= 63:
        entries = sample_entries(q, m * n, spec)
        rows = []
        for i in range(m):
            v = 0
            base = i * n
            for j in range(n):
                if entries[base + j]:
                    v |= 1 << j
            rows.append(v)
        return _bit_rows_rank(rows)
    return linalg.fast_rank(sample_matrix(q, m, n, spec))


def mc_event_prob(q: int, m: int, n: int, event: str, trials: int, seed: int) -> Estimate:
    """Monte Carlo frequency of a named rank event (no unknowns possible)."""
    if trials < 1:
        raise BadArgumentsError("trials must be >= 1")
    pred = parse_event(event)
    successes = 0
    for i in range(trials):
        rank = _trial_rank(q, m, n, SeedSpec(seed, i))
        if pred(rank, m, n):
            successes += 1
    return _make_estimate(trials, successes, 0, seed)


def _mc_minor_chunk(args) -> tuple[int, int]:
    q, m, n, ground, bases, seed, lo, hi, budget = args
    target = Matroid(ground, bases)
    successes = unknowns = 0
    for i in range(lo, hi):
        A = sample_matrix(q, m, n, SeedSpec(seed, i))
        try:
            w = find_minor_matrix(A, target, budget)
        except BudgetExceededError:
            unknowns += 1
            continue
        if w is not None:
            if verify_witness_matrix(A, target, w):
                successes += 1
            else:
                unknowns += 1  # soundness breach; never counted as success
    return successes, unknowns


def mc_minor_prob(q: int, m: int, n: int, target: Matroid, trials: int, seed: int,
                  budget: int | None = DEFAULT_BUDGET, jobs: int = 1) -> Estimate:
    """Monte Carlo estimate of P{target is a minor of M[A]}, A uniform m x n.

    Trial i uses SeedSpec(seed, i); a trial counts as a success only when
    the witness found verifies, and budget-exceeded searches are reported in
    `unknowns` (the truth lies in [successes, successes + unknowns] trials).
    The result is independent of `jobs`: trials are partitioned by index and
    the counts summed.
    """
    if trials < 1:
        raise BadArgumentsError("trials must be >= 1")
    bases = tuple(sorted(target.bases))
    ground = target.ground_size
    if jobs <= 1:
        successes, unknowns = _mc_minor_chunk(
            (q, m, n, ground, bases, seed, 0, trials, budget)
        )
    else:
        bounds = [round(i * trials / jobs) for i in range(jobs + 1)]
        chunks = [
            (q, m, n, ground, bases, seed, bounds[i], bounds[i + 1], budget)
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_mc_minor_chunk, chunks))
        successes = sum(p[0] for p in parts)
        unknowns = sum(p[1] for p in parts)
    return _make_estimate(trials, successes, unknowns, seed)
