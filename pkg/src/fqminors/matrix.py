"""Dense matrices over GF(q): rank, reduced row echelon form, change of
basis, and the unit-column contraction primitive.

All arithmetic is exact (field tables), elimination uses first-nonzero pivot
selection, so every operation is deterministic.  Degenerate shapes (0 rows
or 0 columns) are legal everywhere and have rank 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    DuplicatePivotRowError,
    NotInvertibleError,
    NotUnitColumnError,
    ParseError,
)
from .gf import Field, field


@dataclass(frozen=True)
class FqMatrix:
    """Immutable m x n matrix of field element codes, row-major."""

    field: Field
    m: int
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DimensionMismatchError(f"negative shape {self.m}x{self.n}")
        if len(self.entries) != self.m * self.n:
            raise DimensionMismatchError(
                f"{self.m}x{self.n} matrix needs {self.m * self.n} entries, "
                f"got {len(self.entries)}"
            )
        q = self.field.q
        for e in self.entries:
            if not 0 <= e < q:
                raise DimensionMismatchError(f"entry {e} out of range for GF({q})")

    @classmethod
    def from_rows(cls, f: Field, rows) -> "FqMatrix":
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != n:
                raise DimensionMismatchError("ragged rows")
        return cls(f, m, n, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, f: Field, m: int) -> "FqMatrix":
        return cls(f, m, m, tuple(1 if i == j else 0 for i in range(m) for j in range(m)))

    @classmethod
    def zero(cls, f: Field, m: int, n: int) -> "FqMatrix":
        return cls(f, m, n, (0,) * (m * n))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.n + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.n : (i + 1) * self.n]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.n] if self.n else ()

    def rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.m)]

    def transpose(self) -> "FqMatrix":
        return FqMatrix(
            self.field,
            self.n,
            self.m,
            tuple(self.entries[i * self.n + j] for j in range(self.n) for i in range(self.m)),
        )

    def matmul(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field:
            raise DimensionMismatchError("field mismatch")
        if self.n != other.m:
            raise DimensionMismatchError(f"{self.m}x{self.n} times {other.m}x{other.n}")
        f = self.field
        add, mul = f.add_table, f.mul_table
        out = []
        for i in range(self.m):
            ri = self.row(i)
            for j in range(other.n):
                acc = 0
                for k in range(self.n):
                    a = ri[k]
                    if a:
                        acc = add[acc][mul[a][other.entries[k * other.n + j]]]
                out.append(acc)
        return FqMatrix(f, self.m, other.n, tuple(out))


def rref(A: FqMatrix) -> tuple[FqMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    f = A.field
    add, mul, neg, inv = f.add_table, f.mul_table, f.neg_table, f.inv_table
    rows = A.rows()
    pivots = []
    r = 0
    for c in range(A.n):
        pivot_row = None
        for i in range(r, A.m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        s = inv[rows[r][c]]
        if s != 1:
            rows[r] = [mul[s][x] for x in rows[r]]
        for i in range(A.m):
            if i != r and rows[i][c]:
                factor = neg[rows[i][c]]
                ri, rr = rows[i], rows[r]
                rows[i] = [add[ri[k]][mul[factor][rr[k]]] for k in range(A.n)]
        pivots.append(c)
        r += 1
        if r == A.m:
            break
    return FqMatrix.from_rows(f, rows) if A.m else A, tuple(pivots)


def rank(A: FqMatrix) -> int:
    return len(rref(A)[1])


def is_invertible(A: FqMatrix) -> bool:
    return A.m == A.n and rank(A) == A.m


def change_of_basis(P: FqMatrix, A: FqMatrix) -> FqMatrix:
    """P @ A for invertible P; raises NotInvertible / DimensionMismatch."""
    if P.field != A.field:
        raise DimensionMismatchError("field mismatch")
    if P.m != P.n or P.n != A.m:
        raise DimensionMismatchError(f"P is {P.m}x{P.n}, A is {A.m}x{A.n}")
    if not is_invertible(P):
        raise NotInvertibleError("change-of-basis matrix is singular")
    return P.matmul(A)


def contract_unit_columns(A: FqMatrix, cols) -> FqMatrix:
    """Delete the listed unit columns together with their pivot rows.

    Each listed column must be a standard basis vector; the pivot rows must
    be pairwise distinct.  This realizes contraction (and deletion) of those
    columns on the column-dependence matroid.
    """
    cols = list(cols)
    pivot_rows = []
    for j in cols:
        if not 0 <= j < A.n:
            raise NotUnitColumnError(f"column index {j} out of range")
        col = A.col(j)
        nz = [i for i, e in enumerate(col) if e]
        if len(nz) != 1 or col[nz[0]] != 1:
            raise NotUnitColumnError(f"column {j} is not a standard basis vector")
        pivot_rows.append(nz[0])
    if len(set(cols)) != len(cols) or len(set(pivot_rows)) != len(pivot_rows):
        raise DuplicatePivotRowError("listed columns share a pivot row")
    drop_rows = set(pivot_rows)
    drop_cols = set(cols)
    kept = [
        A.entry(i, j)
        for i in range(A.m)
        if i not in drop_rows
        for j in range(A.n)
        if j not in drop_cols
    ]
    return FqMatrix(A.field, A.m - len(cols), A.n - len(cols), tuple(kept))


def format_matrix(A: FqMatrix) -> str:
    lines = [f"{A.field.q} {A.m} {A.n}"]
    for i in range(A.m):
        lines.append(" ".join(str(e) for e in A.row(i)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FqMatrix:
    """Parse the matrix text format: `q m n` header then m rows of n codes."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing header", 1, 1)
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError("header must be `q m n`", 1, 1)
    try:
        q, m, n = (int(x) for x in head)
    except ValueError:
        raise ParseError("header values must be integers", 1, 1) from None
    f = field(q)
    if m < 0 or n < 0:
        raise ParseError("negative dimensions", 1, 1)
    entries = []
    for i in range(m):
        lineno = i + 2
        if i + 1 >= len(lines):
            raise ParseError(f"expected {m} rows, found {i}", lineno, 1)
        parts = lines[i + 1].split()
        if len(parts) != n:
            raise ParseError(f"expected {n} entries, found {len(parts)}", lineno, len(parts) + 1)
        for j, tok in enumerate(parts):
            try:
                e = int(tok)
            except ValueError:
                raise ParseError(f"bad entry {tok!r}", lineno, j + 1) from None
            if not 0 <= e < q:
                raise ParseError(f"entry {e} out of range for GF({q})", lineno, j + 1)
            entries.append(e)
    for extra, line in enumerate(lines[m + 1 :]):
        if line.strip():
            raise ParseError("trailing data after matrix rows", m + 2 + extra, 1)
    return FqMatrix(f, m, n, tuple(entries))
