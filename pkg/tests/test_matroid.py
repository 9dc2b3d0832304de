import itertools
import random

import pytest

from conftest import check_basis_exchange
from fqminors.errors import (
    BadParametersError,
    GroundTooLargeError,
    OverlappingSetsError,
    ParseError,
    UnknownNameError,
)
from fqminors.gf import field
from fqminors.matrix import FqMatrix, change_of_basis, rank
from fqminors.matroid import (
    Matroid,
    catalog,
    format_matroid,
    from_graph,
    from_matrix,
    is_isomorphic,
    parse_matroid,
    uniform,
)

F2 = field(2)
F3 = field(3)


def test_from_matrix_examples():
    assert from_matrix(FqMatrix.identity(F2, 2)) == uniform(2, 2)
    m = from_matrix(FqMatrix.from_rows(F2, [[1, 1]]))
    assert m == uniform(1, 2)
    with_loop = from_matrix(FqMatrix.from_rows(F2, [[1, 0], [0, 0]]))
    assert with_loop.loops() == 0b10


def test_from_matrix_ground_too_large():
    with pytest.raises(GroundTooLargeError):
        from_matrix(FqMatrix.zero(F2, 1, 21))


def test_dual_examples():
    assert uniform(1, 3).dual() == uniform(2, 3)
    assert uniform(4, 4).dual() == uniform(0, 4)
    f7d = catalog("F7").dual()
    assert f7d.rank == 4 and f7d.ground_size == 7
    assert f7d.bases == frozenset((1 << 7) - 1 ^ b for b in catalog("F7").bases)
    for name in ("U:2,4", "F7", "MK33*"):
        m = catalog(name)
        assert m.dual().dual() == m


def test_from_graph_examples():
    triangle = from_graph([(0, 1), (1, 2), (0, 2)])
    assert triangle == uniform(2, 3)
    self_loop = from_graph([(0, 0)])
    assert self_loop.rank == 0 and self_loop.ground_size == 1
    k4 = from_graph([(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert k4.rank == 3 and k4.ground_size == 6
    assert len(k4.bases) == 16  # Cayley: 4^2 spanning trees of K4
    with pytest.raises(GroundTooLargeError):
        from_graph([(0, i + 1) for i in range(21)])


def test_parallel_edges_become_parallel_elements():
    m = from_graph([(0, 1), (0, 1), (1, 2)])
    assert not m.is_independent(0b011)
    assert m.is_independent(0b101)


def test_catalog_examples():
    u24 = catalog("U:2,4")
    assert u24.rank == 2 and u24.ground_size == 4 and len(u24.bases) == 6
    assert catalog("free:3") == uniform(3, 3)
    f7 = catalog("F7")
    assert f7.rank == 3 and f7.ground_size == 7 and len(f7.bases) == 28
    assert catalog("MK5*").ground_size == 10 and catalog("MK5*").rank == 6
    assert catalog("MK33*").ground_size == 9 and catalog("MK33*").rank == 4
    with pytest.raises(UnknownNameError):
        catalog("nope")
    with pytest.raises(BadParametersError):
        catalog("U:5,3")
    with pytest.raises(BadParametersError):
        catalog("U:2,21")


def test_is_isomorphic_examples():
    f7 = catalog("F7")
    assert is_isomorphic(f7, f7) is not None
    assert is_isomorphic(uniform(1, 2), uniform(2, 2)) is None
    m = from_matrix(FqMatrix.from_rows(F2, [[1, 0, 1], [0, 1, 1]]))
    bij = is_isomorphic(m, uniform(2, 3))
    assert bij is not None and sorted(bij) == [0, 1, 2]
    assert is_isomorphic(f7, catalog("F7*")) is None


def test_isomorphism_respects_structure_not_labels():
    # permuted fano columns stay isomorphic to F7
    f7 = catalog("F7")
    entries = []
    perm = [3, 0, 6, 1, 5, 2, 4]
    for i in range(3):
        for c in perm:
            entries.append(((c + 1) >> i) & 1)
    shuffled = from_matrix(FqMatrix(F2, 3, 7, tuple(entries)))
    bij = is_isomorphic(f7, shuffled)
    assert bij is not None
    mapped = {sum(1 << bij[i] for i in range(7) if b & (1 << i)) for b in f7.bases}
    assert mapped == shuffled.bases


def test_stats_and_is_free():
    assert uniform(3, 3).is_free()
    assert not uniform(2, 3).is_free()
    st = from_matrix(FqMatrix.from_rows(F2, [[1, 0, 1, 0], [0, 1, 1, 0]])).stats()
    assert (st.e, st.r, st.l) == (4, 2, 1)
    with pytest.raises(BadParametersError):
        from fqminors.matroid import MatroidStats

        MatroidStats(3, 0, 1)  # rank 0 forces all loops


def test_minor_operations():
    u24 = catalog("U:2,4")
    assert u24.delete(1 << 3) == uniform(2, 3)
    assert u24.contract(1 << 0) == uniform(1, 3)
    with pytest.raises(OverlappingSetsError):
        u24.minor(0b0011, 0b0010)


def test_minor_with_dependent_contraction():
    # contracting a dependent set equals contracting a maximal independent
    # subset and deleting the rest
    m = from_matrix(FqMatrix.from_rows(F2, [[1, 1, 0, 1], [0, 0, 1, 1]]))
    c = 0b0011  # two parallel elements, rank 1
    contracted = m.contract(c)
    assert contracted.rank == m.rank - 1


def test_dual_contract_delete_duality():
    for name in ("U:2,4", "U:1,3", "F7"):
        m = catalog(name)
        for x in range(m.ground_size):
            mask = 1 << x
            assert m.contract(mask).dual() == m.dual().delete(mask)


def test_basis_exchange_axiom():
    rng = random.Random(7)
    matroids = [catalog(n) for n in ("U:2,4", "U:0,3", "F7", "F7*", "MK33*", "MK5*")]
    for _ in range(10):
        entries = tuple(rng.randrange(2) for _ in range(3 * 6))
        matroids.append(from_matrix(FqMatrix(F2, 3, 6, entries)))
    for m in matroids:
        assert check_basis_exchange(m)


def test_from_matrix_basis_change_invariant():
    invertible = [
        FqMatrix(F2, 2, 2, e)
        for e in itertools.product(range(2), repeat=4)
        if rank(FqMatrix(F2, 2, 2, e)) == 2
    ]
    for e in itertools.product(range(2), repeat=6):
        a = FqMatrix(F2, 2, 3, e)
        ma = from_matrix(a)
        for p in invertible:
            assert from_matrix(change_of_basis(p, a)) == ma


def test_loops_equal_zero_columns():
    for e in itertools.product(range(3), repeat=6):
        a = FqMatrix(F3, 2, 3, e)
        zero_cols = sum(1 << j for j in range(3) if all(x == 0 for x in a.col(j)))
        assert from_matrix(a).loops() == zero_cols


def test_rank_of_and_independence():
    f7 = catalog("F7")
    assert f7.rank_of(f7.full_mask) == 3
    assert f7.rank_of(0) == 0
    # three collinear fano points are dependent: columns 1,2,3 (codes) satisfy 1^2=3
    assert f7.rank_of(0b111) == 2


def test_text_format_roundtrip():
    for name in ("U:2,4", "F7", "U:0,2", "free:3"):
        m = catalog(name)
        assert parse_matroid(format_matroid(m)) == m


def test_parse_matroid_errors():
    with pytest.raises(ParseError):
        parse_matroid("")
    with pytest.raises(ParseError):
        parse_matroid("3\n0 1\n")
    with pytest.raises(ParseError):
        parse_matroid("3 2\n0 5\n")
    with pytest.raises(ParseError):
        parse_matroid("3 2\n0 0\n")
    with pytest.raises(ParseError):
        parse_matroid("3 2\n0\n")


def test_matroid_validation():
    with pytest.raises(BadParametersError):
        Matroid(3, [])
    with pytest.raises(BadParametersError):
        Matroid(3, [0b1, 0b11])
    with pytest.raises(GroundTooLargeError):
        Matroid(21, [0b1])
