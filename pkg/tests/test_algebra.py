from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from oracles import naive_snf, rank_mod_p

from artin_homology.algebra import (
    GF,
    QQ,
    ZZ,
    LaurentRing,
    Poly,
    PolyRing,
    QuotientRing,
    SparseMatrix,
    UnsupportedRingError,
    rank,
    restrict_scalars,
    snf,
)
from artin_homology.algebra.rings import parse_ring
from artin_homology.algebra.sparse import scalar_block

QT = PolyRing(QQ)
LQ = LaurentRing(QQ)


def qp(*c):
    return Poly(QQ, [Fraction(x) for x in c])


def dense(ring, rows):
    return SparseMatrix.from_dense(ring, rows, len(rows[0]) if rows else 0)


# rings

def test_prime_field_checks_primality():
    assert GF(5).p == 5
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        parse_ring("Fp:9")
    assert parse_ring("Fp:7") == GF(7)
    assert parse_ring("Q") == QQ
    with pytest.raises(ValueError):
        parse_ring("R")


def test_quotient_moduli():
    with pytest.raises(ValueError):
        QuotientRing(ZZ, "1+t^2")
    R = QuotientRing(ZZ, "1-t^2")
    assert R.rank == 2
    assert R.reduce(Poly(ZZ, [0, 0, 1])) == Poly(ZZ, [1])
    assert QuotientRing(ZZ, "1+t").reduce(Poly(ZZ, [0, 1])) == Poly(ZZ, [-1])


def test_laurent_units_and_canonical():
    assert LQ.is_unit(qp(0, 0, 3))
    assert not LQ.is_unit(qp(1, 1))
    # factors are normalized monic with the t-power removed
    assert LQ.canonical(qp(0, 2, 2))[0] == qp(1, 1)


def test_poly_divmod():
    q, r = qp(1, 0, -1).divmod(qp(1, 1))
    assert q == qp(1, -1) and r.is_zero()


# sparse matrices

def test_sparse_basic_ops():
    A = dense(ZZ, [[1, 2], [0, 3]])
    B = dense(ZZ, [[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [3, 0]]
    assert (A + B - B) == A
    assert A.transpose().to_dense() == [[1, 0], [2, 3]]
    assert A.apply({0: 1, 1: 1}) == {0: 3, 1: 3}
    assert SparseMatrix.identity(ZZ, 2) @ A == A
    assert dense(ZZ, [[0, 0]]).nnz == 0


def test_restrict_scalars_examples():
    R = QuotientRing(ZZ, "1-t^2")
    assert scalar_block(R, Poly(ZZ, [1, 1])) == [[1, 1], [1, 1]]
    assert scalar_block(R, Poly(ZZ, [1])) == [[1, 0], [0, 1]]
    assert scalar_block(R, Poly(ZZ, [1, -1])) == [[1, -1], [-1, 1]]
    A = SparseMatrix.from_dense(R, [[Poly(ZZ, [1, 1]), Poly(ZZ, [2])]], 2)
    assert restrict_scalars(A).to_dense() == [[1, 1, 2, 0], [1, 1, 0, 2]]


def _mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_restrict_scalars_is_a_ring_homomorphism(v):
    R = QuotientRing(ZZ, "1-t^2")
    x, y = Poly(ZZ, v[:2]), Poly(ZZ, v[2:])
    bx, by = scalar_block(R, x), scalar_block(R, y)
    assert scalar_block(R, R.reduce(x * y)) == _mat_mul(bx, by)
    assert scalar_block(R, R.reduce(x + y)) == [[bx[i][j] + by[i][j] for j in range(2)] for i in range(2)]


# Smith normal form

def test_snf_examples():
    assert snf(dense(ZZ, [[2, 4], [6, 8]])).invariant_factors == [2, 4]
    assert snf(SparseMatrix.identity(ZZ, 3)).invariant_factors == [1, 1, 1]
    res = snf(dense(QT, [[qp(1, 1), qp()], [qp(), qp(1, 0, -1)]]))
    assert res.invariant_factors == [qp(1, 1), qp(-1, 0, 1)]
    assert snf(SparseMatrix.zero(ZZ, 3, 2)).rank == 0


def test_snf_laurent_clears_t_powers():
    res = snf(dense(LQ, [[qp(0, 1, 1)], [qp(0, 0, 1, 1)]]))
    assert res.invariant_factors == [qp(1, 1)]


def test_snf_rejects_non_pid():
    with pytest.raises(UnsupportedRingError):
        snf(dense(LaurentRing(ZZ), [[Poly(ZZ, [1, 1])]]))
    with pytest.raises(UnsupportedRingError):
        snf(dense(QuotientRing(ZZ, "1-t^2"), [[Poly(ZZ, [1, 1])]]))


def _check_transforms(A):
    res = snf(A, transforms=True)
    D = res.U @ A @ res.V
    for i in range(A.nrows):
        for j in range(A.ncols):
            want = res.diagonal[i] if i == j and i < len(res.diagonal) else A.ring.zero
            assert A.ring.is_zero(A.ring.sub(D.get(i, j), want))
    assert (res.U @ res.U_inv) == SparseMatrix.identity(A.ring, A.nrows)
    assert (res.V @ res.V_inv) == SparseMatrix.identity(A.ring, A.ncols)
    return res


matrices = st.integers(1, 7).flatmap(
    lambda m: st.integers(1, 7).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_integer_properties(rows):
    A = dense(ZZ, rows)
    res = _check_transforms(A)
    f = res.invariant_factors
    assert all(d > 0 for d in f)
    assert all(f[k + 1] % f[k] == 0 for k in range(len(f) - 1))
    assert f == naive_snf(rows) == snf(A).invariant_factors
    # rank over Q equals rank mod p when p divides no invariant factor
    for p in (2, 3, 5, 7):
        if not any(d % p == 0 for d in f):
            assert rank_mod_p(rows, p) == len(f)
    assert rank(dense(QQ, rows)) == len(f) == rank(dense(QQ, rows), exact=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.lists(
    st.lists(st.lists(st.integers(-2, 2), max_size=3), min_size=m, max_size=m), min_size=1, max_size=5)))
def test_snf_polynomial_properties(rows):
    A = dense(QT, [[qp(*c) for c in r] for r in rows])
    res = _check_transforms(A)
    f = res.invariant_factors
    assert all(d.lead == 1 for d in f)
    assert all(f[k + 1].divmod(f[k])[1].is_zero() for k in range(len(f) - 1))
    assert f == snf(A).invariant_factors


def test_rank_examples():
    assert rank(SparseMatrix.zero(QQ, 3, 3)) == 0
    assert rank(dense(GF(2), [[1, 1], [1, 1]])) == 1
    assert rank(dense(GF(3), [[1, 2], [2, 1]])) == 1
    assert rank(dense(QQ, [[Fraction(1, 2), 1], [1, 2]])) == 1
