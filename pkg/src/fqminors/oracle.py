"""Brute-force exact probabilities over all q^(m*n) matrices at tiny sizes.

This is the ground truth the formula and bound modules are validated
against.  Matrices are enumerated by running through all column-code
combinations (each matrix visited exactly once); ranks and basis families
are memoized on the sorted column multiset, which is sound because both are
invariant under column permutation.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, sampler
from .errors import BadArgumentsError, TooLargeError
from .gf import field
from .matrix import FqMatrix
from .matroid import Matroid, from_matrix
from .minor import find_minor, verify_witness

DEFAULT_CAP = 2**24


@dataclass(frozen=True)
class OracleResult:
    total: int
    hits: int
    exact: Fraction

    def to_json(self) -> dict:
        return {
            "total": str(self.total),
            "hits": str(self.hits),
            "exact": {"num": str(self.exact.numerator), "den": str(self.exact.denominator)},
        }


def _check_cap(q: int, cells: int, cap: int):
    if q**cells > cap:
        raise TooLargeError(f"q^{cells} = {q**cells} exceeds the cap {cap}")


def _decode_col(code: int, q: int, m: int):
    """Column code -> backend vector (bit int for q=2, digit tuple else)."""
    if q == 2:
        return code
    return tuple((code // q**i) % q for i in range(m))


def _matrix_from_codes(codes, q: int, m: int) -> FqMatrix:
    n = len(codes)
    entries = []
    for i in range(m):
        for c in codes:
            entries.append((c // q**i) % q)
    return FqMatrix(field(q), m, n, tuple(entries))


_rank_hist_cache: dict = {}


def rank_histogram(q: int, m: int, n: int, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """counts[k] = number of m x n matrices over GF(q) with rank k."""
    key = (q, m, n)
    if key in _rank_hist_cache:
        return _rank_hist_cache[key]
    _check_cap(q, m * n, cap)
    o = linalg.ops_for(field(q), m)
    counts = [0] * (min(m, n) + 1)
    rank_memo: dict = {}
    for codes in itertools.product(range(q**m), repeat=n):
        skey = tuple(sorted(codes))
        r = rank_memo.get(skey)
        if r is None:
            r = o.rank_cols([_decode_col(c, q, m) for c in skey])
            rank_memo[skey] = r
        counts[r] += 1
    result = tuple(counts)
    _rank_hist_cache[key] = result
    return result


def exact_event_prob(q: int, m: int, n: int, event: str, cap: int = DEFAULT_CAP) -> OracleResult:
    """Exact probability of a named rank event (see sampler.parse_event)."""
    pred = sampler.parse_event(event)
    counts = rank_histogram(q, m, n, cap)
    hits = sum(c for r, c in enumerate(counts) if pred(r, m, n))
    total = q ** (m * n)
    return OracleResult(total, hits, Fraction(hits, total))


def exact_minor_prob(q: int, m: int, n: int, target: Matroid, cap: int = DEFAULT_CAP) -> OracleResult:
    """Exact P{target is a minor of M[A]} by exhausting all matrices.

    The abstract searcher runs unbudgeted here (exhaustive by termination at
    these sizes) and every returned witness is re-verified; a verification
    failure would be a soundness bug and raises immediately.
    """
    _check_cap(q, m * n, cap)
    hits = 0
    memo: dict = {}
    for codes in itertools.product(range(q**m), repeat=n):
        skey = tuple(sorted(codes))
        found = memo.get(skey)
        if found is None:
            A = _matrix_from_codes(skey, q, m)
            host = from_matrix(A)
            w = find_minor(host, target, budget=None)
            if w is not None and not verify_witness(host, target, w):
                raise RuntimeError(f"unsound witness for codes {skey}")
            found = w is not None
            memo[skey] = found
        if found:
            hits += 1
    total = q ** (m * n)
    return OracleResult(total, hits, Fraction(hits, total))


_census_cache: dict = {}


def _representation_census(q: int, m: int, e: int, cap: int) -> dict:
    """Counter mapping basis family -> number of m x e matrices having it."""
    key = (q, m, e)
    if key in _census_cache:
        return _census_cache[key]
    _check_cap(q, m * e, cap)
    o = linalg.ops_for(field(q), m)
    indep_memo: dict = {}

    def independent(codes) -> bool:
        got = indep_memo.get(codes)
        if got is None:
            got = o.rank_cols([_decode_col(c, q, m) for c in codes]) == len(codes)
            indep_memo[codes] = got
        return got

    census: Counter = Counter()
    positions = list(range(e))
    for codes in itertools.product(range(q**m), repeat=e):
        bases = None
        for size in range(min(m, e), -1, -1):
            found = []
            for combo in itertools.combinations(positions, size):
                sub = tuple(sorted(codes[j] for j in combo))
                if independent(sub):
                    mask = 0
                    for j in combo:
                        mask |= 1 << j
                    found.append(mask)
            if found:
                bases = frozenset(found)
                break
        census[bases] += 1
    _census_cache[key] = census
    return census


def count_representations_exact(M: Matroid, m: int, q: int, cap: int = DEFAULT_CAP) -> int:
    """|{A in F_q^{m x |E|} : M[A] = M with the identity labeling}|."""
    census = _representation_census(q, m, M.ground_size, cap)
    return census.get(M.bases, 0)


@dataclass(frozen=True)
class DistributionReport:
    procedure: str
    ok: bool
    details: dict


def distribution_check(procedure: str, q: int, m: int, n: int, k: int = 0,
                       cap: int = DEFAULT_CAP) -> DistributionReport:
    """Exhaustively verify the distribution facts behind the reduction.

    change-of-basis: A -> PA is a bijection on F_q^{m x n} for every
    invertible P (hence uniform-preserving).

    reduce-conditional: over all A where reduce(A, k) succeeds, each matrix
    of the reduced shape occurs equally often, and the success fraction
    beats 1 - q^(k - max(m, n)).
    """
    f = field(q)
    if procedure == "change-of-basis":
        _check_cap(q, m * n, cap)
        _check_cap(q, m * m, cap)
        all_a = [
            FqMatrix(f, m, n, entries)
            for entries in itertools.product(range(q), repeat=m * n)
        ]
        invertible = 0
        for p_entries in itertools.product(range(q), repeat=m * m):
            P = FqMatrix(f, m, m, p_entries)
            if linalg.fast_rank(P) != m:
                continue
            invertible += 1
            images = {P.matmul(A).entries for A in all_a}
            if len(images) != len(all_a):
                return DistributionReport(procedure, False, {"bad_p": p_entries})
        return DistributionReport(
            procedure, True, {"invertible": invertible, "matrices": len(all_a)}
        )
    if procedure == "reduce-conditional":
        _check_cap(q, m * n, cap)
        outputs: Counter = Counter()
        successes = 0
        total = q ** (m * n)
        for entries in itertools.product(range(q), repeat=m * n):
            B = sampler.reduce(FqMatrix(f, m, n, entries), k)
            if B is not None:
                successes += 1
                outputs[B.entries] += 1
        want = q ** ((m - k) * (n - k))
        uniform = len(outputs) == want and len(set(outputs.values())) <= 1
        floor = 1 - Fraction(1, q ** (max(m, n) - k))
        frac = Fraction(successes, total)
        return DistributionReport(
            procedure,
            uniform and frac > floor,
            {
                "successes": successes,
                "total": total,
                "distinct_outputs": len(outputs),
                "expected_outputs": want,
                "uniform": uniform,
                "success_fraction": frac,
                "success_floor": floor,
            },
        )
    raise BadArgumentsError(f"unknown procedure {procedure!r}")
