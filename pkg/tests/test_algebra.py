import random

import pytest

from triality.algebra import ZornDataError, restricted_algebra, tensor_product, zorn
from triality.catalog import _cross_table, catalog, octonion, preonly3, quaternion
from triality.fields import FieldError, PrimeField, QQ
from triality.linalg import Mat, vec_add, vec_eq, vec_scale, vec_sub


def rand_vec(alg, rng):
    return [rng.randint(-3, 3) for _ in range(alg.n)]


def test_unit_multiplication():
    a = octonion()
    for i in range(a.n):
        b = a.basis_vec(i)
        assert a.multiply(a.unit, b) == b
        assert a.multiply(b, a.unit) == b


def test_zorn_cross_slot_product():
    # an x-slot element against a y-slot element lands on the first diagonal
    # idempotent with the base-form value
    a = octonion()
    idx = {n: i for i, n in enumerate(a.basis_names)}
    x1 = a.basis_vec(idx["x1"])
    y1 = a.basis_vec(idx["y1"])
    prod = a.multiply(x1, y1)
    expect = [0] * a.n
    expect[idx["u"]] = -1  # base form is minus the dot product
    assert prod == expect
    assert a.multiply(y1, x1)[idx["v"]] == -1


def test_preonly3_distinguished_square():
    a = preonly3(2, 5)
    g = a.basis_vec(2)
    assert a.multiply(g, g) == [2, 5, 0]
    assert a.associator(g, g, g) == [0, 0, 0]


def test_left_right_ops_match_multiply():
    a = octonion()
    for i in range(a.n):
        l = a.left_op(a.basis_vec(i))
        r = a.right_op(a.basis_vec(i))
        for j in range(a.n):
            ej = a.basis_vec(j)
            assert l.col(j) == a.multiply(a.basis_vec(i), ej)
            assert r.col(j) == a.multiply(ej, a.basis_vec(i))
    assert a.left_op(a.unit) == Mat.identity(a.field, a.n)
    assert a.right_op(a.unit) == Mat.identity(a.field, a.n)


def test_operator_linearity():
    a = quaternion()
    rng = random.Random(0)
    for _ in range(10):
        u, v = rand_vec(a, rng), rand_vec(a, rng)
        c = rng.randint(-3, 3)
        lhs = a.left_op(vec_add(a.field, vec_scale(a.field, c, u), v))
        rhs = a.left_op(u).scale(c) + a.left_op(v)
        assert lhs == rhs


def test_associator_unit_vanishes():
    a = octonion()
    rng = random.Random(4)
    for _ in range(5):
        x, y = rand_vec(a, rng), rand_vec(a, rng)
        assert a.associator(a.unit, x, y) == [0] * a.n
        assert a.associator(x, a.unit, y) == [0] * a.n


def test_octonion_alternative():
    a = octonion()
    rng = random.Random(8)
    for _ in range(20):
        x, y = rand_vec(a, rng), rand_vec(a, rng)
        assert all(v == 0 for v in a.associator(x, x, y))
        assert all(v == 0 for v in a.associator(x, y, y))


def test_conjugate_operator_involutive():
    a = octonion()
    rng = random.Random(15)
    q = Mat(a.field, [[rng.randint(-2, 2) for _ in range(a.n)] for _ in range(a.n)])
    assert a.conjugate_operator(a.conjugate_operator(q)) == q
    ident = Mat.identity(a.field, a.n)
    assert a.conjugate_operator(ident) == ident


def test_sh_split_dimensions():
    assert (octonion().sh_split().dim_s, octonion().sh_split().dim_h) == (1, 7)
    e = catalog("preonly3")
    assert (e.algebra.sh_split().dim_s, e.algebra.sh_split().dim_h) == (3, 0)
    e = catalog("comp3-sym")
    assert (e.algebra.sh_split().dim_s, e.algebra.sh_split().dim_h) == (2, 1)


def test_sh_split_reconstructs():
    a = octonion()
    f = a.field
    split = a.sh_split()
    from triality.linalg import Echelon

    s_ech = Echelon(f, a.n)
    for v in split.s_basis:
        s_ech.insert(v)
    h_ech = Echelon(f, a.n)
    for v in split.h_basis:
        h_ech.insert(v)
    half = f.inv(2)
    for i in range(a.n):
        x = a.basis_vec(i)
        xb = a.involute(x)
        sym = vec_scale(f, half, vec_add(f, x, xb))
        skew = vec_scale(f, half, vec_sub(f, x, xb))
        assert s_ech.contains(sym)
        assert h_ech.contains(skew)
        assert vec_eq(f, vec_add(f, sym, skew), x)


def test_validate_bad_involution():
    a = preonly3(1, 1)
    bad = Mat(QQ, [[-1 if i == j else 0 for j in range(3)] for i in range(3)])
    from triality.algebra import Algebra

    b = Algebra("bad", QQ, a.basis_names, a.c, a.unit, bad)
    rep = b.validate()
    assert rep["involution-fixes-unit"].failed


def test_validate_corrupted_product_table():
    a = octonion()
    c = [[[x for x in cell] for cell in row] for row in a.c]
    idx = {n: i for i, n in enumerate(a.basis_names)}
    i, j = idx["x1"], idx["x2"]
    k = next(k for k, v in enumerate(c[i][j]) if v != 0)
    c[i][j][k] = -c[i][j][k]
    from triality.algebra import Algebra

    b = Algebra("corrupted", QQ, a.basis_names, c, a.unit, a.inv)
    rep = b.validate()
    assert rep["involution-antiautomorphism"].failed
    assert rep["involution-antiautomorphism"].witness is not None


def test_validate_catalog_clean():
    for name in ("octonion", "quaternion", "kuzmin", "zorn-trivial",
                 "comp3-skew", "comp3-sym", "preonly3"):
        assert catalog(name).algebra.validate().all_hold(), name


def test_zorn_rejects_incompatible_form():
    # positive dot product with the rotation table breaks the contraction law
    f = QQ
    with pytest.raises(ZornDataError):
        zorn(3, _cross_table(f),
             [[1 if i == j else 0 for j in range(3)] for i in range(3)],
             [[-1 if i == j else 0 for j in range(3)] for i in range(3)],
             flavor="skew")


def test_zorn_rejects_non_anticommutative_base():
    f = QQ
    prod = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]  # symmetric product
    with pytest.raises(ZornDataError):
        zorn(2, prod, [[0, 0], [0, 1]],
             [[-1, 0], [0, -1]], flavor="skew")


def test_zorn_form_involution_compatibility():
    # identity base involution forces a symmetric form; an asymmetric one is rejected
    zero2 = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    ident = [[1, 0], [0, 1]]
    with pytest.raises(ZornDataError):
        zorn(2, zero2, [[0, 1], [0, 0]], ident, flavor="general")
    alg = zorn(2, zero2, [[0, 1], [1, 0]], ident, flavor="general")
    assert alg.n == 6


def test_zorn_general_flavor_accepts_symmetric_case():
    alg = zorn(1, [[[0]]], [[1]], [[1]], flavor="general")
    assert alg.n == 4


def test_zorn_dims():
    assert octonion().n == 8
    assert quaternion().n == 4
    assert catalog("kuzmin").algebra.n == 6
    assert catalog("zorn-trivial").algebra.n == 2


def test_tensor_product_with_ground_field():
    a = octonion()
    one = zorn(0, [], [], [], flavor="skew", name="unit-line")
    # a 1-dimensional field algebra: build directly
    from triality.algebra import Algebra

    line = Algebra("line", QQ, ["e"], [[[1]]], [1], Mat.identity(QQ, 1))
    t = tensor_product(a, line)
    assert t.n == a.n
    assert t.c == a.c
    assert t.unit == a.unit


def test_tensor_product_of_octonions():
    t = tensor_product(octonion(), octonion())
    assert t.n == 64
    assert t.validate().all_hold()
    split = t.sh_split()
    assert (split.dim_s, split.dim_h) == (50, 14)
    assert t.multiply(t.unit, t.basis_vec(5)) == t.basis_vec(5)


def test_tensor_field_mismatch():
    with pytest.raises(FieldError):
        tensor_product(octonion(), octonion().to_prime(7))


def test_to_prime_reduces():
    a = preonly3(1, 1).to_prime(7)
    assert isinstance(a.field, PrimeField)
    g = a.basis_vec(2)
    assert a.multiply(g, g) == [1, 1, 0]


def test_restricted_algebra_coordinates():
    a = preonly3(1, 1)
    sub = restricted_algebra(a, [a.basis_vec(0), a.basis_vec(1)], "sub")
    assert sub.n == 2
    assert sub.validate().all_hold()
    # f*f = 0 and e acts as unit
    assert sub.multiply([0, 1], [0, 1]) == [0, 0]


def test_restricted_algebra_rejects_open_subspace():
    a = preonly3(1, 1)
    with pytest.raises(ValueError):
        restricted_algebra(a, [a.basis_vec(0), a.basis_vec(2)], "bad")
