"""Matroids on at most 20 elements, stored by their explicit basis family.

Ground sets are 0..E-1 and subsets are bitmasks, so rank queries are greedy
scans over an independence family and duality is mask complementation.
Construction from matrices and graphs, the catalog of named matroids used
by the graphic-class test, general contraction/deletion, and isomorphism
testing all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import (
    BadParametersError,
    GroundTooLargeError,
    OverlappingSetsError,
    ParseError,
    UnknownNameError,
)
from .gf import field
from .matrix import FqMatrix

MAX_GROUND = 20


@dataclass(frozen=True)
class MatroidStats:
    """Ground size, rank and loop count; the bound formulas consume this."""

    e: int
    r: int
    l: int

    def __post_init__(self):
        if not (0 <= self.r <= self.e and 0 <= self.l <= self.e - self.r):
            raise BadParametersError(f"inconsistent stats e={self.e} r={self.r} l={self.l}")
        if self.r == 0 and self.l != self.e:
            raise BadParametersError("rank 0 forces every element to be a loop")


class Matroid:
    def __init__(self, ground_size: int, bases):
        if ground_size < 0 or ground_size > MAX_GROUND:
            raise GroundTooLargeError(f"ground size {ground_size} outside 0..{MAX_GROUND}")
        bases = frozenset(bases)
        if not bases:
            raise BadParametersError("basis family must be nonempty")
        full = (1 << ground_size) - 1
        sizes = {b.bit_count() for b in bases}
        if len(sizes) != 1:
            raise BadParametersError("bases must share one cardinality")
        for b in bases:
            if b & ~full:
                raise BadParametersError("basis uses elements outside the ground set")
        self.ground_size = ground_size
        self.bases = bases
        self.rank = next(iter(sizes))
        self._indep: frozenset[int] | None = None

    # -- basic queries -------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.ground_size) - 1

    def _indep_family(self) -> frozenset[int]:
        """All independent sets (downward closure of the bases)."""
        if self._indep is None:
            level = set(self.bases)
            family = set(level)
            while level:
                nxt = set()
                for s in level:
                    t = s
                    while t:
                        bit = t & -t
                        nxt.add(s ^ bit)
                        t ^= bit
                nxt -= family
                family |= nxt
                level = nxt
            self._indep = frozenset(family)
        return self._indep

    def is_independent(self, mask: int) -> bool:
        return mask in self._indep_family()

    def rank_of(self, mask: int) -> int:
        """Rank of a subset: greedy extension works in any matroid."""
        indep = self._indep_family()
        cur = 0
        t = mask
        while t:
            bit = t & -t
            if (cur | bit) in indep:
                cur |= bit
            t ^= bit
        return cur.bit_count()

    def loops(self) -> int:
        union = 0
        for b in self.bases:
            union |= b
        return self.full_mask & ~union

    def is_free(self) -> bool:
        return self.rank == self.ground_size

    def stats(self) -> MatroidStats:
        return MatroidStats(self.ground_size, self.rank, self.loops().bit_count())

    def element_degree(self, x: int) -> int:
        bit = 1 << x
        return sum(1 for b in self.bases if b & bit)

    def parallel_classes(self) -> list[int]:
        """Masks of parallel classes of non-loop elements (loops excluded)."""
        loops = self.loops()
        classes: list[int] = []
        seen = 0
        for x in range(self.ground_size):
            bx = 1 << x
            if bx & (loops | seen):
                continue
            cls = bx
            for y in range(x + 1, self.ground_size):
                by = 1 << y
                if by & (loops | seen):
                    continue
                if not self.is_independent(bx | by):
                    cls |= by
            classes.append(cls)
            seen |= cls
        return classes

    # -- constructions -------------------------------------------------

    def dual(self) -> "Matroid":
        full = self.full_mask
        return Matroid(self.ground_size, (full ^ b for b in self.bases))

    def minor(self, contract_mask: int, delete_mask: int) -> "Matroid":
        """(M / C) \\ D with survivors relabeled 0.. in original order."""
        if contract_mask & delete_mask:
            raise OverlappingSetsError("contract and delete sets overlap")
        if (contract_mask | delete_mask) & ~self.full_mask:
            raise BadParametersError("sets use elements outside the ground set")
        survivors = [x for x in range(self.ground_size) if not ((1 << x) & (contract_mask | delete_mask))]
        surv_mask = 0
        for x in survivors:
            surv_mask |= 1 << x
        r_c = self.rank_of(contract_mask)
        rr = self.rank_of(surv_mask | contract_mask) - r_c
        pos = {x: i for i, x in enumerate(survivors)}
        new_bases = []
        for combo in itertools.combinations(survivors, rr):
            mask = 0
            for x in combo:
                mask |= 1 << x
            if self.rank_of(mask | contract_mask) == rr + r_c:
                nb = 0
                for x in combo:
                    nb |= 1 << pos[x]
                new_bases.append(nb)
        return Matroid(len(survivors), new_bases)

    def contract(self, contract_mask: int) -> "Matroid":
        return self.minor(contract_mask, 0)

    def delete(self, delete_mask: int) -> "Matroid":
        return self.minor(0, delete_mask)

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and other.ground_size == self.ground_size
            and other.bases == self.bases
        )

    def __hash__(self):
        return hash((self.ground_size, self.bases))

    def __repr__(self):
        return f"Matroid(E={self.ground_size}, r={self.rank}, bases={len(self.bases)})"


def from_matrix(A: FqMatrix) -> Matroid:
    """Column-dependence matroid M[A]; element i is column i."""
    if A.n > MAX_GROUND:
        raise GroundTooLargeError(f"{A.n} columns exceed the {MAX_GROUND}-element bound")
    o = linalg.ops_for(A.field, A.m)
    cols = o.cols_of(A)
    r = o.rank_cols(cols)
    bases: list[int] = []

    def walk(start: int, ech: list, mask: int, size: int):
        if size == r:
            bases.append(mask)
            return
        for j in range(start, A.n - (r - size) + 1):
            ech2 = list(ech)
            if o.insert(ech2, cols[j]):
                walk(j + 1, ech2, mask | (1 << j), size + 1)

    walk(0, [], 0, 0)
    return Matroid(A.n, bases)


def from_graph(edges) -> Matroid:
    """Graphic matroid: bases are the maximum-size spanning forests."""
    edges = [tuple(e) for e in edges]
    if len(edges) > MAX_GROUND:
        raise GroundTooLargeError(f"{len(edges)} edges exceed the {MAX_GROUND}-element bound")
    verts = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(verts)}

    def forest_size(subset) -> int:
        parent = list(range(len(verts)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        size = 0
        for (u, v) in subset:
            ru, rv = find(index[u]), find(index[v])
            if ru == rv:
                return -1  # cycle (covers self-loops)
            parent[ru] = rv
            size += 1
        return size

    # greedy maximum forest gives the rank
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    r = 0
    for (u, v) in edges:
        ru, rv = find(index[u]), find(index[v])
        if ru != rv:
            parent[ru] = rv
            r += 1

    bases = []
    for combo in itertools.combinations(range(len(edges)), r):
        if forest_size([edges[j] for j in combo]) == r:
            mask = 0
            for j in combo:
                mask |= 1 << j
            bases.append(mask)
    return Matroid(len(edges), bases)


def uniform(k: int, n: int) -> Matroid:
    if not (0 <= k <= n <= MAX_GROUND):
        raise BadParametersError(f"uniform matroid needs 0 <= k <= n <= {MAX_GROUND}")
    if k == 0:
        return Matroid(n, [0])
    bases = []
    for combo in itertools.combinations(range(n), k):
        mask = 0
        for x in combo:
            mask |= 1 << x
        bases.append(mask)
    return Matroid(n, bases)


def _fano() -> Matroid:
    # columns are the nonzero vectors of GF(2)^3 in ascending code order,
    # bit i of the code = row i
    f2 = field(2)
    entries = []
    for i in range(3):
        for c in range(1, 8):
            entries.append((c >> i) & 1)
    return from_matrix(FqMatrix(f2, 3, 7, tuple(entries)))


_K5_EDGES = tuple((u, v) for u in range(5) for v in range(u + 1, 5))
_K33_EDGES = tuple((u, v) for u in range(3) for v in range(3, 6))


@lru_cache(maxsize=None)
def _named(name: str) -> Matroid:
    if name == "F7":
        return _fano()
    if name == "F7*":
        return _fano().dual()
    if name == "MK5*":
        return from_graph(_K5_EDGES).dual()
    if name == "MK33*":
        return from_graph(_K33_EDGES).dual()
    raise UnknownNameError(name)


def catalog(name: str) -> Matroid:
    """Named matroids: U:k,n and free:n families, F7, F7*, MK5*, MK33*."""
    if name.startswith("U:"):
        parts = name[2:].split(",")
        if len(parts) != 2:
            raise BadParametersError(f"expected U:k,n, got {name!r}")
        try:
            k, n = int(parts[0]), int(parts[1])
        except ValueError:
            raise BadParametersError(f"expected U:k,n, got {name!r}") from None
        return uniform(k, n)
    if name.startswith("free:"):
        try:
            n = int(name[5:])
        except ValueError:
            raise BadParametersError(f"expected free:n, got {name!r}") from None
        return uniform(n, n)
    if name in ("F7", "F7*", "MK5*", "MK33*"):
        return _named(name)
    raise UnknownNameError(f"unknown catalog name {name!r}")


# -- isomorphism -------------------------------------------------------


def _invariants(M: Matroid):
    loops = M.loops()
    degs = tuple(M.element_degree(x) for x in range(M.ground_size))
    classes = M.parallel_classes()
    class_of = {}
    for cls in classes:
        size = cls.bit_count()
        t = cls
        while t:
            bit = t & -t
            class_of[bit.bit_length() - 1] = size
            t ^= bit
    profile = tuple(
        (degs[x], (1 << x) & loops != 0, class_of.get(x, 0)) for x in range(M.ground_size)
    )
    return profile, sorted(profile), sorted(cls.bit_count() for cls in classes)


def is_isomorphic(M1: Matroid, M2: Matroid):
    """A ground-set bijection mapping bases onto bases, or None.

    The returned tuple maps element i of M1 to element tuple[i] of M2.
    """
    if M1.ground_size != M2.ground_size or M1.rank != M2.rank:
        return None
    if len(M1.bases) != len(M2.bases):
        return None
    prof1, sorted1, csizes1 = _invariants(M1)
    prof2, sorted2, csizes2 = _invariants(M2)
    if sorted1 != sorted2 or csizes1 != csizes2:
        return None
    e = M1.ground_size
    if e == 0:
        return ()
    # bases of M1 grouped by their highest element, for incremental pruning
    by_max: list[list[int]] = [[] for _ in range(e)]
    for b in M1.bases:
        if b:
            by_max[b.bit_length() - 1].append(b)
    empty_is_basis = 0 in M1.bases

    candidates = [
        [y for y in range(e) if prof2[y] == prof1[x]] for x in range(e)
    ]
    mapping = [-1] * e
    used = [False] * e
    bases2 = M2.bases

    def mapped_mask(mask: int) -> int:
        out = 0
        t = mask
        while t:
            bit = t & -t
            out |= 1 << mapping[bit.bit_length() - 1]
            t ^= bit
        return out

    def assign(x: int) -> bool:
        if x == e:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            mapping[x] = y
            used[y] = True
            ok = all(mapped_mask(b) in bases2 for b in by_max[x])
            if ok and assign(x + 1):
                return True
            mapping[x] = -1
            used[y] = False
        return False

    if empty_is_basis and 0 not in bases2:
        return None
    if assign(0):
        return tuple(mapping)
    return None


# -- text format -------------------------------------------------------


def format_matroid(M: Matroid) -> str:
    lines = [f"{M.ground_size} {M.rank}"]
    for b in sorted(M.bases):
        elems = [str(x) for x in range(M.ground_size) if b & (1 << x)]
        lines.append(" ".join(elems))
    return "\n".join(lines) + "\n"


def parse_matroid(text: str) -> Matroid:
    """Parse `E r` header followed by one basis per line."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing header", 1, 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be `E r`", 1, 1)
    try:
        e, r = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header values must be integers", 1, 1) from None
    if not (0 <= r <= e <= MAX_GROUND):
        raise ParseError(f"need 0 <= r <= E <= {MAX_GROUND}", 1, 1)
    bases = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        mask = 0
        parts = line.split()
        if len(parts) != r:
            raise ParseError(f"basis must list {r} elements", i, 1)
        for j, tok in enumerate(parts):
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"bad element {tok!r}", i, j + 1) from None
            if not 0 <= x < e:
                raise ParseError(f"element {x} outside 0..{e - 1}", i, j + 1)
            if mask & (1 << x):
                raise ParseError(f"repeated element {x}", i, j + 1)
            mask |= 1 << x
        bases.append(mask)
    if not bases:
        if r == 0:
            bases = [0]
        else:
            raise ParseError("no bases listed", 2, 1)
    return Matroid(e, bases)
