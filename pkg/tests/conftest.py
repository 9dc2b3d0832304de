"""Shared test helpers: independent oracles kept deliberately separate from
the package implementations they check."""

from __future__ import annotations

import itertools

from fqminors.matroid import Matroid, is_isomorphic


def gf2_rank_bits(rows: list[int]) -> int:
    """GF(2) rank of row bitmasks by plain elimination (test-local oracle)."""
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot = min(rows, key=lambda r: r & -r)
        rows.remove(pivot)
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def modp_rank(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p), p prime, by fraction-free elimination (test oracle)."""
    rows = [list(r) for r in rows]
    n = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rows and col < n:
        piv = next((i for i, r in enumerate(rows) if r[col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[0], rows[piv] = rows[piv], rows[0]
        inv = pow(rows[0][col], p - 2, p)
        prow = [(x * inv) % p for x in rows[0]]
        rows = [
            [(r[j] - r[col] * prow[j]) % p for j in range(n)]
            for r in rows[1:]
        ]
        rank += 1
        col += 1
    return rank


def brute_has_minor(host: Matroid, target: Matroid) -> bool:
    """All (C, D) pairs, dependent contraction sets included, then
    isomorphism.  The comparison oracle for find_minor's completeness."""
    e_h, e_t = host.ground_size, target.ground_size
    if e_t > e_h:
        return False
    drop = e_h - e_t
    ground = range(e_h)
    for c_size in range(drop + 1):
        for c_combo in itertools.combinations(ground, c_size):
            c_mask = sum(1 << x for x in c_combo)
            rest = [x for x in ground if not (c_mask >> x) & 1]
            for d_combo in itertools.combinations(rest, drop - c_size):
                d_mask = sum(1 << x for x in d_combo)
                if is_isomorphic(target, host.minor(c_mask, d_mask)) is not None:
                    return True
    return False


def check_basis_exchange(M: Matroid) -> bool:
    """Exhaustive basis-exchange axiom check."""
    for b1 in M.bases:
        for b2 in M.bases:
            if b1 == b2:
                continue
            only1 = b1 & ~b2
            t = only1
            while t:
                xbit = t & -t
                t ^= xbit
                swapped = False
                u = b2 & ~b1
                while u:
                    ybit = u & -u
                    u ^= ybit
                    if (b1 ^ xbit) | ybit in M.bases:
                        swapped = True
                        break
                if not swapped:
                    return False
    return True
