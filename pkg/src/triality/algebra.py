"""Unital involutive algebras presented by structure constants.

An algebra is a dimension, a rank-3 structure tensor ``c`` with
``e_i e_j = sum_k c[i][j][k] e_k``, the unit's coordinates, and the involution
as an explicit matrix. Nothing about the data is trusted: ``validate`` checks
the unit law, that the involution squares to the identity and fixes the unit,
and that it reverses products.

Constructors here cover the two generic builders (vector-matrix algebras over
a base algebra with a bilinear form, and tensor products); the named example
families live in ``catalog``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import Field, FieldError, PrimeField, QQ, same_field
from .linalg import (
    DimensionError,
    Mat,
    Vec,
    kernel,
    unit_vec,
    vec_eq,
    vec_is_zero,
    vec_sub,
    zeros_vec,
)
from .verdicts import IdentityReport, Witness, failed, passed


class ZornDataError(ValueError):
    """Base-algebra data violates the vector-matrix constraints."""


@dataclass
class SHSplit:
    """Eigenspace bases of the involution: fixed vectors (S) and negated ones (H)."""

    s_basis: list[Vec]
    h_basis: list[Vec]

    @property
    def dim_s(self) -> int:
        return len(self.s_basis)

    @property
    def dim_h(self) -> int:
        return len(self.h_basis)


class Algebra:
    def __init__(self, name: str, field: Field, basis_names: list[str],
                 c, unit: Vec, inv: Mat, meta: dict | None = None):
        n = len(basis_names)
        if len(set(basis_names)) != n:
            raise ValueError("duplicate basis names")
        if len(c) != n or any(len(row) != n for row in c) or any(
                len(cell) != n for row in c for cell in row):
            raise DimensionError("structure tensor is not n x n x n")
        if len(unit) != n or inv.nrows != n or inv.ncols != n:
            raise DimensionError("unit or involution has wrong shape")
        self.name = name
        self.field = field
        self.n = n
        self.basis_names = list(basis_names)
        self.c = [[[field.coerce(x) for x in cell] for cell in row] for row in c]
        self.unit = [field.coerce(x) for x in unit]
        self.inv = Mat(field, [[field.coerce(x) for x in r] for r in inv.rows])
        self.meta = dict(meta or {})
        self._lmats: list[Mat] | None = None
        self._rmats: list[Mat] | None = None
        self._mul_idx = None
        self._inv_cols = None

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.n}, field={self.field.tag})"

    # -- basic calculus ----------------------------------------------------

    def _check_len(self, *vecs):
        for v in vecs:
            if len(v) != self.n:
                raise DimensionError(f"vector length {len(v)} != dim {self.n}")

    def multiply(self, x: Vec, y: Vec) -> Vec:
        self._check_len(x, y)
        f = self.field
        n = self.n
        if isinstance(f, PrimeField):
            p = f.p
            if n >= 32:
                i_a, j_a, k_a, co = self._mul_arrays()
                xa = np.array(x, dtype=np.int64)
                ya = np.array(y, dtype=np.int64)
                vals = xa[i_a] * ya[j_a] % p * co % p
                out = np.zeros(n, dtype=np.int64)
                np.add.at(out, k_a, vals)
                return [int(t) for t in out % p]
            out = [0] * n
            c = self.c
            for i, xi in enumerate(x):
                if xi:
                    for j, yj in enumerate(y):
                        if yj:
                            w = xi * yj % p
                            for k, co in enumerate(c[i][j]):
                                if co:
                                    out[k] = (out[k] + w * co) % p
            return out
        out = [0] * n
        c = self.c
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        w = xi * yj
                        for k, co in enumerate(c[i][j]):
                            if co:
                                out[k] = out[k] + w * co
        return out

    def _mul_arrays(self):
        if self._mul_idx is None:
            ii, jj, kk, co = [], [], [], []
            for i in range(self.n):
                for j in range(self.n):
                    for k, x in enumerate(self.c[i][j]):
                        if not self.field.is_zero(x):
                            ii.append(i)
                            jj.append(j)
                            kk.append(k)
                            co.append(x)
            self._mul_idx = (np.array(ii), np.array(jj), np.array(kk),
                             np.array(co, dtype=np.int64))
        return self._mul_idx

    def involute(self, x: Vec) -> Vec:
        self._check_len(x)
        if self._inv_cols is None:
            f = self.field
            self._inv_cols = [[(k, v) for k, v in enumerate(self.inv.col(j))
                               if not f.is_zero(v)] for j in range(self.n)]
        f = self.field
        out = [f.zero] * self.n
        for j, xj in enumerate(x):
            if not f.is_zero(xj):
                for k, v in self._inv_cols[j]:
                    out[k] = f.add(out[k], f.mul(xj, v))
        return out

    conj = involute

    def skew_part(self, x: Vec) -> Vec:
        return vec_sub(self.field, x, self.involute(x))

    def commutator(self, x: Vec, y: Vec) -> Vec:
        return vec_sub(self.field, self.multiply(x, y), self.multiply(y, x))

    def associator(self, x: Vec, y: Vec, z: Vec) -> Vec:
        self._check_len(x, y, z)
        left = self.multiply(self.multiply(x, y), z)
        right = self.multiply(x, self.multiply(y, z))
        return vec_sub(self.field, left, right)

    def _build_mult_mats(self):
        f = self.field
        n = self.n
        self._lmats = [Mat(f, [[self.c[i][j][k] for j in range(n)] for k in range(n)])
                       for i in range(n)]
        self._rmats = [Mat(f, [[self.c[j][i][k] for j in range(n)] for k in range(n)])
                       for i in range(n)]

    def left_mat(self, i: int) -> Mat:
        if self._lmats is None:
            self._build_mult_mats()
        return self._lmats[i]

    def right_mat(self, i: int) -> Mat:
        if self._rmats is None:
            self._build_mult_mats()
        return self._rmats[i]

    def _op_from_coords(self, a: Vec, mats: list[Mat]) -> Mat:
        f = self.field
        if isinstance(f, PrimeField) and self.n >= 32:
            p = f.p
            acc = np.zeros((self.n, self.n), dtype=np.int64)
            for i, ai in enumerate(a):
                ai %= p
                if ai:
                    # entries < p and ai < p: products stay under 2**62, and
                    # the accumulator holds at most n reduced terms
                    acc += mats[i]._np_view() * ai % p
            return Mat(f, (acc % p).tolist())
        out = Mat.zeros(f, self.n)
        for i, ai in enumerate(a):
            if not f.is_zero(ai):
                out = out + mats[i].scale(ai)
        return out

    def left_op(self, a: Vec) -> Mat:
        self._check_len(a)
        if self._lmats is None:
            self._build_mult_mats()
        return self._op_from_coords(a, self._lmats)

    def right_op(self, a: Vec) -> Mat:
        self._check_len(a)
        if self._rmats is None:
            self._build_mult_mats()
        return self._op_from_coords(a, self._rmats)

    def conjugate_operator(self, q: Mat) -> Mat:
        """The unique operator with conj(Q x) = conj(Q) conj(x)."""
        return self.inv @ q @ self.inv

    def basis_vec(self, i: int) -> Vec:
        return unit_vec(self.field, self.n, i)

    def format_vec(self, v: Vec) -> str:
        f = self.field
        parts = [f"{f.format(x)} {name}" for x, name in zip(v, self.basis_names)
                 if not f.is_zero(x)]
        return " + ".join(parts) if parts else "0"

    # -- structure ----------------------------------------------------------

    def sh_split(self) -> SHSplit:
        f = self.field
        ident = Mat.identity(f, self.n)
        s_basis = kernel(self.inv - ident)
        h_basis = kernel(self.inv + ident)
        if len(s_basis) + len(h_basis) != self.n:
            raise FieldError("involution is not diagonalisable into +/-1 eigenspaces")
        return SHSplit(s_basis, h_basis)

    def validate(self) -> IdentityReport:
        f = self.field
        report = IdentityReport()
        names = self.basis_names

        checked = 0
        bad = None
        for i in range(self.n):
            b = self.basis_vec(i)
            left = self.multiply(self.unit, b)
            right = self.multiply(b, self.unit)
            checked += 2
            if not vec_eq(f, left, b):
                bad = Witness((names[i],), vec_sub(f, left, b), "e*x != x")
                break
            if not vec_eq(f, right, b):
                bad = Witness((names[i],), vec_sub(f, right, b), "x*e != x")
                break
        report.add("unit-law", failed("exhaustive", checked, bad)
                   if bad else passed("exhaustive", checked))

        sq = self.inv @ self.inv
        ident = Mat.identity(f, self.n)
        if sq == ident:
            report.add("involution-order-two", passed("exhaustive", self.n))
        else:
            j = next(j for j in range(self.n)
                     if not vec_eq(f, sq.col(j), ident.col(j)))
            report.add("involution-order-two",
                       failed("exhaustive", self.n,
                              Witness((names[j],), vec_sub(f, sq.col(j), ident.col(j)),
                                      "inv(inv(x)) != x")))

        e_bar = self.involute(self.unit)
        if vec_eq(f, e_bar, self.unit):
            report.add("involution-fixes-unit", passed("exhaustive", 1))
        else:
            report.add("involution-fixes-unit",
                       failed("exhaustive", 1,
                              Witness(("e",), vec_sub(f, e_bar, self.unit), "inv(e) != e")))

        bad = None
        checked = 0
        for i in range(self.n):
            for j in range(self.n):
                lhs = self.involute([self.c[i][j][k] for k in range(self.n)])
                rhs = self.multiply(self.involute(self.basis_vec(j)),
                                    self.involute(self.basis_vec(i)))
                checked += 1
                if not vec_eq(f, lhs, rhs):
                    bad = Witness((names[i], names[j]), vec_sub(f, lhs, rhs),
                                  "conj(x*y) != conj(y)*conj(x)")
                    break
            if bad:
                break
        report.add("involution-antiautomorphism",
                   failed("exhaustive", checked, bad) if bad
                   else passed("exhaustive", checked))
        return report

    def to_prime(self, p: int) -> "Algebra":
        """Same presentation with all scalars reduced mod p."""
        pf = PrimeField(p)
        return Algebra(f"{self.name} mod {p}", pf, self.basis_names,
                       self.c, self.unit, Mat(pf, self.inv.rows), dict(self.meta))


def restricted_algebra(alg: Algebra, basis: list[Vec], name: str | None = None) -> Algebra:
    """The algebra induced on a subspace that is closed under product and
    involution and contains the unit; raises if it is not."""
    from .linalg import Echelon

    f = alg.field
    m = len(basis)
    ech = Echelon(f, alg.n)
    for v in basis:
        if not ech.insert(v):
            raise ValueError("subspace basis is linearly dependent")
    coords = ech.solve

    def solve_or_raise(v, what):
        out = coords(v)
        if out is None:
            raise ValueError(f"subspace is not closed: {what} leaves it")
        return out

    # ech.solve gives coefficients over the echelonized rows; go through the
    # change-of-basis matrix to land on the requested basis instead
    change = [solve_or_raise(v, "basis vector") for v in basis]
    inv_change = _invert_square(Mat(f, [list(r) for r in zip(*change)]))

    def in_requested(v, what):
        return inv_change.matvec(solve_or_raise(v, what))

    c = [[in_requested(alg.multiply(basis[i], basis[j]), "a product")
          for j in range(m)] for i in range(m)]
    unit = in_requested(alg.unit, "the unit")
    inv_cols = [in_requested(alg.involute(v), "an involution image") for v in basis]
    inv = Mat.from_cols(f, inv_cols)
    names = [f"s{i}" for i in range(m)]
    return Algebra(name or f"{alg.name}|sub", f, names,
                   [[list(cell) for cell in row] for row in c], unit, inv,
                   {"origin": "restriction", "parent": alg.name})


def _invert_square(m: Mat) -> Mat:
    from .linalg import rref

    f = m.field
    n = m.nrows
    aug = Mat(f, [list(m.rows[i]) + [f.one if j == i else f.zero for j in range(n)]
                  for i in range(n)])
    red, piv, rank = rref(aug)
    if rank != n or piv != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat(f, [r[n:] for r in red.rows])


def zorn(bdim: int, bproduct, bform, binv, flavor: str = "skew",
         name: str = "zorn", field: Field = QQ) -> Algebra:
    """Vector-matrix algebra over a base algebra B with a bilinear form.

    The 2+2m dimensional algebra of 2x2 arrays with scalar diagonal and
    B-valued off-diagonal slots; diagonal products pick up the form of
    opposite off-diagonal entries and off-diagonal products fall through to
    the opposite slot. The involution swaps the diagonal and applies B's
    involution in place, which requires (conj y | conj x) = (x | y).

    The "skew" flavor (anticommutative B with involution -1) additionally
    enforces the contraction law x(yz) = (y|x)z - (x|z)y and the cyclic form
    law (x|yz) = (y|zx) = (z|xy); those are exactly the conditions under which
    the skew part of the result behaves alternatively. Degenerate forms are
    accepted.
    """
    m = bdim
    f = field
    bproduct = [[[f.coerce(x) for x in cell] for cell in row] for row in bproduct]
    bform = [[f.coerce(x) for x in row] for row in bform]
    binv = [[f.coerce(x) for x in row] for row in binv]
    if m:
        if len(bproduct) != m or len(bform) != m or len(binv) != m:
            raise DimensionError("base-algebra data has wrong shape")

    def bf(i, j):
        return bform[i][j]

    binv_mat = Mat(f, binv) if m else Mat(f, [])
    # (conj y | conj x) = (x | y) on basis pairs
    for i in range(m):
        for j in range(m):
            yb = binv_mat.col(j)
            xb = binv_mat.col(i)
            lhs = f.zero
            for a, ya in enumerate(yb):
                for b, xbv in enumerate(xb):
                    lhs = f.add(lhs, f.mul(f.mul(ya, xbv), bform[a][b]))
            if not f.is_zero(f.sub(lhs, bform[i][j])):
                raise ZornDataError(
                    f"form is not involution-compatible at basis pair ({i},{j})")

    if flavor == "skew":
        ident = Mat.identity(f, m) if m else Mat(f, [])
        if m and binv_mat != -ident:
            raise ZornDataError("skew flavor requires the base involution x -> -x")
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if not f.is_zero(f.add(bproduct[i][j][k], bproduct[j][i][k])):
                        raise ZornDataError("skew flavor requires an anticommutative base product")

        def bmul(x, y):
            out = [f.zero] * m
            for i, xi in enumerate(x):
                if not f.is_zero(xi):
                    for j, yj in enumerate(y):
                        if not f.is_zero(yj):
                            w = f.mul(xi, yj)
                            for k in range(m):
                                out[k] = f.add(out[k], f.mul(w, bproduct[i][j][k]))
            return out

        def bform_vec(i, w):
            return sum((f.mul(wa, bform[i][a]) for a, wa in enumerate(w)), f.zero)

        for i in range(m):
            ei = unit_vec(f, m, i)
            for j in range(m):
                for k in range(m):
                    prod = [bproduct[j][k][t] for t in range(m)]
                    lhs = bmul(ei, prod)
                    rhs = [f.sub(f.mul(bform[j][i], unit_vec(f, m, k)[t]),
                                 f.mul(bform[i][k], unit_vec(f, m, j)[t]))
                           for t in range(m)]
                    if not vec_eq(f, lhs, rhs):
                        raise ZornDataError(
                            f"contraction law x(yz)=(y|x)z-(x|z)y fails at ({i},{j},{k})")
                    a1 = bform_vec(i, prod)
                    a2 = bform_vec(j, bmul(unit_vec(f, m, k), ei))
                    a3 = bform_vec(k, bmul(ei, unit_vec(f, m, j)))
                    if not (f.is_zero(f.sub(a1, a2)) and f.is_zero(f.sub(a2, a3))):
                        raise ZornDataError(
                            f"cyclic form law (x|yz)=(y|zx)=(z|xy) fails at ({i},{j},{k})")
    elif flavor != "general":
        raise ValueError(f"unknown zorn flavor {flavor!r}")

    n = 2 + 2 * m
    names = ["u", "v"] + [f"x{i+1}" for i in range(m)] + [f"y{i+1}" for i in range(m)]
    U, V = 0, 1

    def X(i):
        return 2 + i

    def Y(i):
        return 2 + m + i

    c = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
    c[U][U][U] = f.one
    c[V][V][V] = f.one
    for i in range(m):
        c[U][X(i)][X(i)] = f.one
        c[X(i)][V][X(i)] = f.one
        c[V][Y(i)][Y(i)] = f.one
        c[Y(i)][U][Y(i)] = f.one
        for j in range(m):
            c[X(i)][Y(j)][U] = bf(i, j)
            c[Y(i)][X(j)][V] = bf(i, j)
            for k in range(m):
                c[X(i)][X(j)][Y(k)] = bproduct[i][j][k]
                c[Y(i)][Y(j)][X(k)] = bproduct[i][j][k]

    inv = Mat.zeros(f, n)
    inv.rows[V][U] = f.one
    inv.rows[U][V] = f.one
    for i in range(m):
        for k in range(m):
            inv.rows[X(k)][X(i)] = binv[k][i]
            inv.rows[Y(k)][Y(i)] = binv[k][i]

    unit = zeros_vec(f, n)
    unit[U] = f.one
    unit[V] = f.one

    meta = {"origin": "zorn", "bdim": m, "bform": bform, "flavor": flavor}
    return Algebra(name, f, names, c, unit, inv, meta)


def tensor_product(a1: Algebra, a2: Algebra, name: str | None = None) -> Algebra:
    """(x tensor y)(z tensor w) = xz tensor yw, with componentwise involution."""
    f = same_field(a1.field, a2.field)
    n1, n2 = a1.n, a2.n
    n = n1 * n2
    names = [f"{p}*{q}" for p in a1.basis_names for q in a2.basis_names]
    c = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
    for i1 in range(n1):
        for j1 in range(n1):
            cell1 = a1.c[i1][j1]
            for k1 in range(n1):
                x = cell1[k1]
                if f.is_zero(x):
                    continue
                for i2 in range(n2):
                    for j2 in range(n2):
                        cell2 = a2.c[i2][j2]
                        row = c[i1 * n2 + i2][j1 * n2 + j2]
                        for k2 in range(n2):
                            y = cell2[k2]
                            if not f.is_zero(y):
                                row[k1 * n2 + k2] = f.add(row[k1 * n2 + k2], f.mul(x, y))
    unit = [f.mul(a1.unit[i1], a2.unit[i2]) for i1 in range(n1) for i2 in range(n2)]
    inv = Mat.zeros(f, n)
    for i1 in range(n1):
        for k1 in range(n1):
            v1 = a1.inv.rows[k1][i1]
            if f.is_zero(v1):
                continue
            for i2 in range(n2):
                for k2 in range(n2):
                    v2 = a2.inv.rows[k2][i2]
                    if not f.is_zero(v2):
                        inv.rows[k1 * n2 + k2][i1 * n2 + i2] = f.mul(v1, v2)
    if name is None:
        name = f"{a1.name}(x){a2.name}"
    return Algebra(name, f, names, c, unit, inv,
                   {"origin": "tensor", "factors": (a1.name, a2.name)})
