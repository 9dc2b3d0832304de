"""Exact arithmetic tables for the Galois field GF(q), prime powers q <= 16.

Elements are coded as integers 0..q-1.  For prime q the code is the residue
itself.  For extension fields GF(p^d) the code is the coefficient vector of
the polynomial residue read as base-p digits (constant term = least
significant digit), reduced modulo a fixed irreducible polynomial:

    GF(4):  x^2 + x + 1
    GF(8):  x^3 + x + 1
    GF(9):  x^2 + 1
    GF(16): x^4 + x + 1

Fixing the polynomials keeps element codes reproducible across runs, which
the matrix text format relies on.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import NotPrimePowerError, UnsupportedFieldError

MAX_Q = 16

# Irreducible polynomials as coefficient tuples, ascending degree,
# leading coefficient included.
_IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
}

_PRIMES = (2, 3, 5, 7, 11, 13)


def _prime_power(q: int):
    """Return (p, deg) with q = p**deg, or None if q is not a prime power."""
    for p in _PRIMES:
        if q % p == 0:
            deg = 0
            w = q
            while w % p == 0:
                w //= p
                deg += 1
            return (p, deg) if w == 1 else None
    return None


class Field:
    """GF(q) with complete add/mul/neg/inv tables over codes 0..q-1.

    Immutable after construction; safe for concurrent reads.
    """

    def __init__(self, q: int):
        if q < 2:
            raise NotPrimePowerError(f"q={q} is not a prime power >= 2")
        if q > MAX_Q:
            raise UnsupportedFieldError(f"q={q} exceeds the table bound {MAX_Q}")
        pp = _prime_power(q)
        if pp is None:
            raise NotPrimePowerError(f"q={q} is not a prime power")
        self.q = q
        self.p, self.deg = pp
        if self.deg == 1:
            self.add_table = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
            self.mul_table = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
        else:
            self.add_table = tuple(
                tuple(self._poly_add(a, b) for b in range(q)) for a in range(q)
            )
            self.mul_table = tuple(
                tuple(self._poly_mul(a, b) for b in range(q)) for a in range(q)
            )
        self.neg_table = tuple(self.add_table[a].index(0) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.mul_table[a].index(1)
        self.inv_table = tuple(inv)

    def _digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.deg):
            out.append(code % self.p)
            code //= self.p
        return out

    def _code(self, digits: list[int]) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + d
        return out

    def _poly_add(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._code([(x + y) % self.p for x, y in zip(da, db)])

    def _poly_mul(self, a: int, b: int) -> int:
        p, deg = self.p, self.deg
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the irreducible polynomial (monic of degree deg)
        irr = _IRREDUCIBLE[self.q]
        for i in range(len(prod) - 1, deg - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(deg):
                    prod[i - deg + j] = (prod[i - deg + j] - c * irr[j]) % p
        return self._code(prod[:deg])

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inv(0) is undefined")
        return self.inv_table[a]

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self):
        return hash(("Field", self.q))

    def __repr__(self):
        return f"Field(q={self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> Field:
    """Cached Field factory; the canonical way to obtain GF(q)."""
    return Field(q)
