import random
from fractions import Fraction

import pytest

from triality.fields import FieldError, PrimeField, QQ
from triality.linalg import (
    DimensionError,
    Echelon,
    Mat,
    kernel,
    random_vector,
    rref,
    solve_in_span,
    span_basis,
    unit_vec,
)


def test_rref_identity():
    m = Mat.identity(QQ, 3)
    red, pivots, rank = rref(m)
    assert rank == 3 and pivots == [0, 1, 2]
    assert red == m


def test_rref_dependent_rows():
    m = Mat(QQ, [[1, 2], [2, 4]])
    _, pivots, rank = rref(m)
    assert rank == 1 and pivots == [0]


def test_rref_zero_matrix():
    m = Mat.zeros(QQ, 4)
    _, pivots, rank = rref(m)
    assert rank == 0 and pivots == []


def test_rref_rejects_empty():
    with pytest.raises(DimensionError):
        rref(Mat(QQ, []))


def test_rref_prime_matches_rational():
    rng = random.Random(5)
    p = PrimeField(97)
    for _ in range(20):
        rows = [[rng.randint(0, 20) for _ in range(5)] for _ in range(4)]
        _, _, rank_q = rref(Mat(QQ, rows))
        _, _, rank_p = rref(Mat(p, rows))
        # rank can only drop mod p; with entries this small against 97 it never does
        assert rank_p == rank_q


def test_rank_equals_transpose_rank():
    rng = random.Random(9)
    for _ in range(12):
        m = Mat(QQ, [[Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                      for _ in range(6)] for _ in range(6)])
        assert rref(m)[2] == rref(m.transpose())[2]


def test_span_basis_plane():
    basis = span_basis(QQ, [[1, 0], [0, 1], [1, 1]])
    assert len(basis) == 2


def test_span_basis_collinear():
    assert len(span_basis(QQ, [[2, 4], [1, 2]])) == 1


def test_span_basis_empty():
    assert span_basis(QQ, []) == []


def test_solve_in_span():
    basis = span_basis(QQ, [[1, 0], [0, 1]])
    assert solve_in_span(QQ, basis, [3, 5]) == [3, 5]
    assert solve_in_span(QQ, [[1, 0]], [0, 1]) is None


def test_solve_recovers_every_spanning_vector():
    rng = random.Random(2)
    vs = [[Fraction(rng.randint(-4, 4)) for _ in range(5)] for _ in range(7)]
    basis = span_basis(QQ, vs)
    for v in vs:
        coeffs = solve_in_span(QQ, basis, v)
        assert coeffs is not None
        recon = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(5)]
        assert recon == [Fraction(x) for x in v]


def test_kernel_identity_and_zero():
    assert kernel(Mat.identity(QQ, 3)) == []
    assert len(kernel(Mat.zeros(QQ, 4))) == 4


def test_kernel_vectors_annihilate():
    rng = random.Random(7)
    for _ in range(10):
        m = Mat(QQ, [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)])
        for k in kernel(m):
            assert all(x == 0 for x in m.matvec(k))
        assert len(kernel(m)) == 5 - rref(m)[2]


def test_echelon_deterministic_first_seen_pivot():
    e1 = Echelon(QQ, 3)
    for v in ([0, 1, 0], [1, 0, 0]):
        e1.insert(v)
    assert e1.pivots == [0, 1]
    # the first-seen vector claims its pivot even after reordering
    e2 = Echelon(QQ, 3)
    for v in ([1, 1, 0], [1, 0, 0]):
        e2.insert(v)
    assert e2.basis == [[1, 0, 0], [0, 1, 0]]


def test_prime_mode_linear_algebra():
    p = PrimeField(13)
    basis = span_basis(p, [[1, 2, 3], [4, 5, 6], [5, 7, 9]])
    assert len(basis) == 2
    coeffs = solve_in_span(p, basis, [5, 7, 9])
    assert coeffs is not None


def test_matmul_prime_matches_rational():
    rng = random.Random(21)
    p = PrimeField(10007)
    rows_a = [[rng.randint(0, 50) for _ in range(20)] for _ in range(20)]
    rows_b = [[rng.randint(0, 50) for _ in range(20)] for _ in range(20)]
    prod_q = Mat(QQ, rows_a) @ Mat(QQ, rows_b)
    prod_p = Mat(p, rows_a) @ Mat(p, rows_b)
    assert prod_p.rows == [[x % 10007 for x in r] for r in prod_q.rows]


def test_random_vector_determinism_and_mode():
    p = PrimeField(1009)
    assert random_vector(p, 4, random.Random(42)) == random_vector(p, 4, random.Random(42))
    assert random_vector(p, 0, random.Random(1)) == []
    with pytest.raises(FieldError):
        random_vector(QQ, 3, random.Random(1))


def test_random_vector_seeds_differ():
    p = PrimeField(1009)
    draws = {tuple(random_vector(p, 6, random.Random(s))) for s in range(100)}
    assert len(draws) > 95


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        Mat(QQ, [[1]]) @ Mat(PrimeField(7), [[1]])


def test_unit_vec():
    assert unit_vec(QQ, 3, 1) == [0, 1, 0]
