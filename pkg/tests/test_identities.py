import random

import pytest

from triality.algebra import restricted_algebra
from triality.catalog import catalog, kuzmin, octonion, preonly3, quaternion, zorn_trivial
from triality.fields import DEFAULT_PRIME
from triality.identities import (
    SUITE_NAMES,
    TrialityOps,
    a0_subalgebra,
    exchange_identity_verdict,
    identity_suite,
    is_generalized_structurable,
    is_pre_structurable,
    is_structurable,
    resolve_context,
    skew_alternativity_verdict,
    triality_relation_verdict,
)
from triality.linalg import vec_add, vec_sub
from triality.randomgen import random_algebra


def rand_vec(alg, rng):
    return [rng.randint(-3, 3) for _ in range(alg.n)]


def test_t_ops_antisymmetric_and_unit():
    ops = TrialityOps(octonion())
    a = ops.alg
    for j in range(3):
        assert ops.t_mat(j, a.unit, a.unit).is_zero()
    rng = random.Random(0)
    v = rand_vec(a, rng)
    for j in range(3):
        assert ops.t_mat(j, v, v).is_zero()


def test_t0_matches_direct_expansion():
    # t0(a,b)c = c(conj(a) b - conj(b) a) + b(conj(a) c) - a(conj(b) c)
    ops = TrialityOps(octonion())
    alg = ops.alg
    f = alg.field
    rng = random.Random(3)
    for _ in range(10):
        a, b, c = (rand_vec(alg, rng) for _ in range(3))
        ab, bb = alg.involute(a), alg.involute(b)
        expect = alg.multiply(c, vec_sub(f, alg.multiply(ab, b), alg.multiply(bb, a)))
        expect = vec_add(f, expect, alg.multiply(b, alg.multiply(ab, c)))
        expect = vec_sub(f, expect, alg.multiply(a, alg.multiply(bb, c)))
        assert ops.t_apply(0, a, b, c) == expect
        assert ops.t_mat(0, a, b).matvec(c) == expect


def test_t_index_wraps_mod_three():
    ops = TrialityOps(quaternion())
    rng = random.Random(1)
    a, b = rand_vec(ops.alg, rng), rand_vec(ops.alg, rng)
    for j in range(3):
        assert ops.t_mat(j, a, b) == ops.t_mat(j + 3, a, b)


def test_d_is_derivation_on_octonion():
    ops = TrialityOps(octonion())
    alg = ops.alg
    f = alg.field
    for a in range(3):
        for b in range(a + 1, 4):
            m = ops.d_mat(alg.basis_vec(a), alg.basis_vec(b))
            for x in range(alg.n):
                for y in range(alg.n):
                    lhs = m.matvec(alg.c[x][y])
                    rhs = vec_add(f, alg.multiply(m.col(x), alg.basis_vec(y)),
                                  alg.multiply(alg.basis_vec(x), m.col(y)))
                    assert lhs == rhs


def test_d_vanishes_on_diagonal():
    ops = TrialityOps(octonion())
    rng = random.Random(5)
    v = rand_vec(ops.alg, rng)
    assert ops.d_mat(v, v).is_zero()


def test_d0_antisymmetric_on_structurable():
    ops = TrialityOps(octonion())
    alg = ops.alg
    rng = random.Random(6)
    a, b = rand_vec(alg, rng), rand_vec(alg, rng)
    assert ops.d0_mat(a, b) == -ops.d0_mat(b, a)


def test_q_unit_annihilation():
    ops = TrialityOps(preonly3(1, 1))
    alg = ops.alg
    for j in range(3):
        for k in range(3):
            assert ops.q_mat(alg.unit, alg.basis_vec(j), alg.basis_vec(k)).is_zero()
            assert all(v == 0 for v in ops.q_basis(j, k, 0).matvec(alg.unit))


def test_q_distinguished_value():
    ops = TrialityOps(preonly3(1, 1))
    g = ops.alg.basis_vec(2)
    assert ops.q_apply(g, g, g, g) == [0, 3, 0]


def test_q_vanishes_on_octonion():
    ops = TrialityOps(octonion())
    from triality.identities import _sorted_tuples

    for i, j, k in _sorted_tuples(8, 3):
        assert ops.q_basis(i, j, k).is_zero()


def test_q_from_reassoc_cross_oracle():
    # the two constructions of the defect operator agree wherever
    # skew-alternativity holds and the algebra is pre-structurable
    for name in ("octonion", "quaternion", "kuzmin", "zorn-trivial",
                 "comp3-skew", "comp3-sym", "preonly3"):
        alg = catalog(name).algebra
        ops = TrialityOps(alg)
        from triality.identities import _sorted_tuples

        for i, j, k in _sorted_tuples(alg.n, 3):
            lhs = ops.q_basis(i, j, k)
            rhs = ops.q_from_reassoc(alg.basis_vec(i), alg.basis_vec(j),
                                     alg.basis_vec(k))
            assert lhs == rhs, (name, i, j, k)


def test_q_from_reassoc_distinguished_value():
    ops = TrialityOps(preonly3(1, 1))
    g = ops.alg.basis_vec(2)
    assert ops.q_from_reassoc(g, g, g).matvec(g) == [0, 3, 0]
    e = ops.alg.unit
    assert ops.q_from_reassoc(e, e, e).is_zero()


def test_certification_catalog():
    expectations = {
        "octonion": (True, True),
        "quaternion": (True, True),
        "kuzmin": (True, True),
        "zorn-trivial": (True, True),
        "comp3-skew": (True, True),
        "comp3-sym": (True, True),
    }
    for name, (pre, st) in expectations.items():
        ops = TrialityOps(catalog(name).algebra)
        assert is_pre_structurable(ops).holds is pre, name
        assert is_structurable(ops).holds is st, name


def test_preonly3_certification_and_witness():
    ops = TrialityOps(preonly3(1, 1))
    assert is_pre_structurable(ops).holds is True
    st = is_structurable(ops)
    assert st.holds is False
    assert st.witness.labels == ("g", "g", "g", "g")
    assert st.witness.defect == [0, 3, 0]
    assert is_structurable(TrialityOps(preonly3(0, 1))).holds is True
    assert is_structurable(TrialityOps(preonly3(1, 0))).holds is True


def test_random_commutative_failure_witnessed():
    rng = random.Random("0")
    alg = random_algebra(3, rng, commutative=True)
    v = is_pre_structurable(TrialityOps(alg))
    assert v.holds is False
    assert v.witness is not None
    # brute-force oracle at the witness: expand the exchange identity directly
    ops = TrialityOps(alg)
    ctx = resolve_context(alg)
    direct = triality_relation_verdict(ops, ctx)
    assert direct.holds is False


def test_probabilistic_mode_on_prime_twin():
    alg = preonly3(1, 1)
    ops = TrialityOps(alg)
    pre = is_pre_structurable(ops, mode="probabilistic", trials=60, seed=1)
    st = is_structurable(ops, mode="probabilistic", trials=60, seed=1)
    assert pre.holds is True and pre.mode == "probabilistic"
    assert pre.prime == DEFAULT_PRIME
    assert st.holds is False


def test_a0_subalgebra_preonly3():
    ops = TrialityOps(preonly3(1, 1))
    basis = a0_subalgebra(ops)
    assert len(basis) == 2
    from triality.linalg import Echelon

    ech = Echelon(ops.f, 3)
    for v in basis:
        ech.insert(v)
    assert ech.contains([1, 0, 0])  # unit
    assert ech.contains([0, 1, 0])  # the distinguished nilpotent direction
    sub = restricted_algebra(ops.alg, basis)
    assert is_structurable(TrialityOps(sub)).holds is True


def test_a0_full_for_structurable():
    for name in ("octonion", "zorn-trivial"):
        alg = catalog(name).algebra
        basis = a0_subalgebra(TrialityOps(alg))
        assert len(basis) == alg.n, name


def test_a0_requires_pre_structurable():
    rng = random.Random("0")
    alg = random_algebra(3, rng, commutative=True)
    with pytest.raises(ValueError):
        a0_subalgebra(TrialityOps(alg))


def test_generalized_structurable():
    res = is_generalized_structurable(TrialityOps(octonion()))
    assert res.verdict.holds is True
    assert res.d_identically_zero is False
    res = is_generalized_structurable(TrialityOps(zorn_trivial()))
    assert res.verdict.holds is True
    assert res.d_identically_zero is True
    res = is_generalized_structurable(TrialityOps(preonly3(1, 1)))
    assert res.verdict.skipped


def test_suite_names_fixed():
    assert len(SUITE_NAMES) == len(set(SUITE_NAMES))
    for required in ("t0-cyclic", "skew-assoc", "t-commutator", "q-total-symmetry",
                     "q-d-sum", "cb-skew-agreement", "d0-cyclic",
                     "exchange-implication-chain"):
        assert required in SUITE_NAMES


def test_suite_octonion_all_applicable_hold():
    report = identity_suite(TrialityOps(octonion()), seed=2)
    for name, verdict in report:
        assert verdict.holds is not False, (name, verdict)
    assert report["d0-cyclic"].holds is True  # structurable entries ran


def test_suite_preonly3_profile():
    report = identity_suite(TrialityOps(preonly3(1, 1)), seed=2)
    for name in ("t0-cyclic", "skew-assoc", "bar-assoc-exchange", "inner-exchange",
                 "q-total-symmetry", "q-unit", "q-skew", "q-d-sum"):
        assert report[name].holds is True, name
    assert report["s-power-associativity"].holds is False
    assert report["d0-cyclic"].skipped
    assert report["exchange-implication-chain"].holds is True


def test_suite_skips_are_never_passes():
    rng = random.Random("0")
    alg = random_algebra(3, rng, commutative=True)  # fails the exchange identity
    report = identity_suite(TrialityOps(alg), seed=0)
    assert report["t-commutator"].skipped
    assert report["t-commutator"].holds is None
    assert report["t0-cyclic"].holds is True  # unconditional law still holds


def test_skew_alternativity_witness_dim4():
    rng = random.Random("0")
    alg = random_algebra(4, rng, commutative=False)
    v = skew_alternativity_verdict(TrialityOps(alg))
    assert v.holds is False
    assert v.witness is not None


def test_exchange_equals_triality_relation_on_catalog():
    for name in ("octonion", "quaternion", "kuzmin", "comp3-skew", "preonly3"):
        alg = catalog(name).algebra
        ops = TrialityOps(alg)
        ctx = resolve_context(alg)
        assert (exchange_identity_verdict(ops, ctx).holds
                == triality_relation_verdict(ops, ctx).holds), name
