"""Bilinear-form analytics: quadratic forms read off the algebra, composition
and associativity laws, radicals, and multiplicative linear functionals.

Gram matrices live in the algebra basis. The composition law is checked
through its full four-linear polarisation (complete on basis tuples away from
characteristic 2) plus a sampled pointwise pass for readability.
"""

from __future__ import annotations

import random

from .algebra import Algebra
from .fields import PrimeField
from .linalg import Mat, Vec, kernel, random_vector, vec_add, vec_eq, vec_scale, vec_sub
from .verdicts import Verdict, Witness, failed, passed


def form_eval(alg: Algebra, gram: Mat, x: Vec, y: Vec):
    f = alg.field
    acc = f.zero
    for i, xi in enumerate(x):
        if f.is_zero(xi):
            continue
        row = gram.rows[i]
        for j, yj in enumerate(y):
            if not f.is_zero(yj):
                acc = f.add(acc, f.mul(f.mul(xi, yj), row[j]))
    return acc


def _unit_coefficient(alg: Algebra, v: Vec):
    """Write v as c*e if possible, else None."""
    f = alg.field
    k0 = next(i for i, x in enumerate(alg.unit) if not f.is_zero(x))
    c = f.div(v[k0], alg.unit[k0])
    if vec_eq(f, v, vec_scale(f, c, alg.unit)):
        return c
    return None


def derive_quadratic_form(alg: Algebra) -> Mat | None:
    """Recover the symmetric form with a conj(a) = <a|a> e by polarisation.

    Requires a fixed subspace of dimension one (so the fixed part is spanned
    by the unit) and the skew-alternativity law. Returns None when some
    a conj(a) falls outside the span of the unit, which cannot happen for
    data passing ``validate``.
    """
    from .identities import TrialityOps, skew_alternativity_verdict

    f = alg.field
    split = alg.sh_split()
    if split.dim_s != 1:
        raise ValueError("quadratic form derivation needs a one-dimensional fixed part")
    if skew_alternativity_verdict(TrialityOps(alg)).holds is not True:
        raise ValueError("quadratic form derivation needs the skew-alternativity law")
    two_inv = f.inv(f.add(f.one, f.one))
    n = alg.n
    gram_rows = [[f.zero] * n for _ in range(n)]
    for i in range(n):
        ei = alg.basis_vec(i)
        for j in range(i, n):
            ej = alg.basis_vec(j)
            pol = vec_add(f, alg.multiply(ei, alg.involute(ej)),
                          alg.multiply(ej, alg.involute(ei)))
            c = _unit_coefficient(alg, pol)
            if c is None:
                return None
            val = f.mul(two_inv, c)
            gram_rows[i][j] = val
            gram_rows[j][i] = val
    gram = Mat(f, gram_rows)
    # conj(a) = 2<a|e> e - a must reproduce the involution
    for i in range(n):
        ei = alg.basis_vec(i)
        coef = f.mul(f.add(f.one, f.one), form_eval(alg, gram, ei, alg.unit))
        expected = vec_sub(f, vec_scale(f, coef, alg.unit), ei)
        if not vec_eq(f, alg.involute(ei), expected):
            return None
    return gram


def zorn_form(alg: Algebra) -> Mat:
    """The canonical form of a vector-matrix algebra: half the sum of the
    cross diagonal products minus the base-form pairings of opposite slots."""
    if alg.meta.get("origin") != "zorn":
        raise ValueError("zorn_form needs an algebra built by the zorn constructor")
    f = alg.field
    m = alg.meta["bdim"]
    bform = alg.meta["bform"]
    half = f.inv(f.add(f.one, f.one))
    n = alg.n
    rows = [[f.zero] * n for _ in range(n)]
    rows[0][1] = half
    rows[1][0] = half
    for i in range(m):
        for j in range(m):
            val = f.neg(f.mul(half, bform[i][j]))
            rows[2 + i][2 + m + j] = f.add(rows[2 + i][2 + m + j], val)
            rows[2 + m + j][2 + i] = f.add(rows[2 + m + j][2 + i], val)
    return Mat(f, rows)


def composition_check(alg: Algebra, gram: Mat, samples: int = 50, seed: int = 0) -> Verdict:
    """<ab|ab> = <a|a><b|b>, checked through its full polarisation on basis
    tuples plus ``samples`` random pointwise evaluations."""
    f = alg.field
    names = alg.basis_names
    n = alg.n
    checked = 0
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                for l in range(k, n):
                    a1, a2 = alg.basis_vec(i), alg.basis_vec(j)
                    b1, b2 = alg.basis_vec(k), alg.basis_vec(l)
                    lhs = f.add(form_eval(alg, gram, alg.multiply(a1, b1), alg.multiply(a2, b2)),
                                form_eval(alg, gram, alg.multiply(a1, b2), alg.multiply(a2, b1)))
                    rhs = f.mul(f.add(f.one, f.one),
                                f.mul(form_eval(alg, gram, a1, a2), form_eval(alg, gram, b1, b2)))
                    checked += 1
                    if not f.is_zero(f.sub(lhs, rhs)):
                        return failed("exhaustive", checked,
                                      Witness((names[i], names[j], names[k], names[l]),
                                              [f.sub(lhs, rhs)], "polarised composition law"))
    rng = random.Random(f"composition:{seed}")
    for t in range(samples):
        a = _random_vec(alg, rng)
        b = _random_vec(alg, rng)
        ab = alg.multiply(a, b)
        lhs = form_eval(alg, gram, ab, ab)
        rhs = f.mul(form_eval(alg, gram, a, a), form_eval(alg, gram, b, b))
        checked += 1
        if not f.is_zero(f.sub(lhs, rhs)):
            return failed("exhaustive", checked,
                          Witness((f"sample {t}",), [f.sub(lhs, rhs)], "pointwise composition law"))
    return passed("exhaustive", checked)


def _random_vec(alg: Algebra, rng) -> Vec:
    if isinstance(alg.field, PrimeField):
        return random_vector(alg.field, alg.n, rng)
    return [alg.field.from_int(rng.randint(-3, 3)) for _ in range(alg.n)]


def form_associativity_check(alg: Algebra, gram: Mat) -> Verdict:
    """<conj a|bc> = <conj b|ca> = <conj c|ab> on basis triples."""
    f = alg.field
    names = alg.basis_names
    checked = 0
    for i in range(alg.n):
        ei = alg.basis_vec(i)
        for j in range(alg.n):
            ej = alg.basis_vec(j)
            for k in range(alg.n):
                ek = alg.basis_vec(k)
                v1 = form_eval(alg, gram, alg.involute(ei), alg.multiply(ej, ek))
                v2 = form_eval(alg, gram, alg.involute(ej), alg.multiply(ek, ei))
                v3 = form_eval(alg, gram, alg.involute(ek), alg.multiply(ei, ej))
                checked += 1
                if not (f.is_zero(f.sub(v1, v2)) and f.is_zero(f.sub(v2, v3))):
                    return failed("exhaustive", checked,
                                  Witness((names[i], names[j], names[k]),
                                          [f.sub(v1, v2), f.sub(v2, v3)]))
    return passed("exhaustive", checked)


def radical(gram: Mat) -> list[Vec]:
    """Kernel of the Gram matrix."""
    return kernel(gram)


def linear_composition_check(alg: Algebra, phi: Vec) -> Verdict:
    """phi(xy) = phi(x) phi(y) on basis pairs (both sides bilinear)."""
    f = alg.field

    def ev(v):
        acc = f.zero
        for x, p in zip(v, phi):
            acc = f.add(acc, f.mul(x, p))
        return acc

    names = alg.basis_names
    checked = 0
    for i in range(alg.n):
        for j in range(alg.n):
            lhs = ev(alg.c[i][j])
            rhs = f.mul(phi[i], phi[j])
            checked += 1
            if not f.is_zero(f.sub(lhs, rhs)):
                return failed("exhaustive", checked,
                              Witness((names[i], names[j]), [f.sub(lhs, rhs)]))
    return passed("exhaustive", checked)
