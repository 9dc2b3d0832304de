"""Finite-n sweeps over row-growth regimes m(n).

An m_rule maps n to the number of rows: `constant:c`, `n-minus:d`,
`n-plus:d`, or `ratio:r` (m = floor(r * n)).  A minor sweep estimates the
containment probability per n and attaches whatever exact bounds apply; a
class sweep estimates how often the sampled matroid is confirmed outside
the class (witness found and verified).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParametersError
from .formulas import lower_bound_nonfree, prob_free_minor, upper_bound_nonfree
from .matroid import Matroid
from .minor import DEFAULT_BUDGET, has_excluded_minor_matrix
from .sampler import Estimate, SeedSpec, mc_minor_prob, sample_matrix


def m_for(rule: str, n: int) -> int:
    kind, _, arg = rule.partition(":")
    try:
        if kind == "constant":
            return int(arg)
        if kind == "n-minus":
            return n - int(arg)
        if kind == "n-plus":
            return n + int(arg)
        if kind == "ratio":
            return math.floor(float(arg) * n)
    except ValueError:
        raise BadParametersError(f"bad m_rule argument in {rule!r}") from None
    raise BadParametersError(f"unknown m_rule {rule!r}")


def n_values(start: int, stop: int, step: int) -> list[int]:
    if step <= 0 or stop < start:
        raise BadParametersError(f"empty n range {start}..{stop} step {step}")
    return list(range(start, stop + 1, step))


@dataclass(frozen=True)
class SweepRow:
    n: int
    m: int
    estimate: Estimate
    lower: Fraction | None
    upper: Fraction | None


def bounds_for(target: Matroid, q: int, m: int, n: int):
    """(lower, upper) exact bounds applicable at this size, None when not."""
    st = target.stats()
    if m < st.r:
        return Fraction(0), Fraction(0)  # the minor is impossible outright
    if target.is_free():
        exact = prob_free_minor(m, n, q, st.r)
        return exact, exact
    lower = None
    upper = None
    if n >= st.e:
        lower = lower_bound_nonfree(m, n, q, st).value
    if m >= n:
        upper = upper_bound_nonfree(m, n, q)
    return lower, upper


def run_minor_sweep(q: int, target: Matroid, n_range, m_rule: str, trials: int,
                    seed: int, budget: int | None = DEFAULT_BUDGET,
                    jobs: int = 1) -> list[SweepRow]:
    ns = n_values(*n_range)
    for n in ns:
        if m_for(m_rule, n) < 0:
            raise BadParametersError(f"m_rule {m_rule!r} gives negative m at n={n}")
    rows = []
    for n in ns:
        m = m_for(m_rule, n)
        est = mc_minor_prob(q, m, n, target, trials, seed, budget, jobs)
        lower, upper = bounds_for(target, q, m, n)
        rows.append(SweepRow(n, m, est, lower, upper))
    return rows


def minor_rows_to_csv(rows: list[SweepRow]) -> str:
    out = ["n,m,trials,point,ci_lo,ci_hi,lower_bound,upper_bound"]
    for r in rows:
        e = r.estimate
        lower = "" if r.lower is None else f"{float(r.lower):.12g}"
        upper = "" if r.upper is None else f"{float(r.upper):.12g}"
        out.append(
            f"{r.n},{r.m},{e.trials},{e.point:.12g},"
            f"{e.wilson_lo:.12g},{e.wilson_hi:.12g},{lower},{upper}"
        )
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ClassSweepRow:
    n: int
    m: int
    trials: int
    confirmed_out: int  # excluded minor found and verified
    unknown: int        # at least one target search hit its budget, none found

    @property
    def frequency(self) -> float:
        return self.confirmed_out / self.trials


def run_class_sweep(q: int, class_name: str, n_range, m_rule: str, trials: int,
                    seed: int, budget: int | None = 20000) -> list[ClassSweepRow]:
    ns = n_values(*n_range)
    for n in ns:
        if m_for(m_rule, n) < 0:
            raise BadParametersError(f"m_rule {m_rule!r} gives negative m at n={n}")
    rows = []
    for n in ns:
        m = m_for(m_rule, n)
        confirmed = unknown = 0
        for i in range(trials):
            A = sample_matrix(q, m, n, SeedSpec(seed, i))
            rep = has_excluded_minor_matrix(A, class_name, budget, short_circuit=True)
            if rep.membership == "no":
                confirmed += 1
            elif rep.membership == "unknown":
                unknown += 1
        rows.append(ClassSweepRow(n, m, trials, confirmed, unknown))
    return rows


def class_rows_to_csv(rows: list[ClassSweepRow]) -> str:
    out = ["n,m,trials,nongraphic_found,unknown,frequency"]
    for r in rows:
        out.append(
            f"{r.n},{r.m},{r.trials},{r.confirmed_out},{r.unknown},{r.frequency:.12g}"
        )
    return "\n".join(out) + "\n"
