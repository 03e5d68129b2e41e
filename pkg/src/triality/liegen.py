"""Graded Lie algebra synthesis from a structurable algebra.

Three copies of the algebra sit around an inner block spanned by shifted
operator triples (t_l, t_{l+1}, t_{l+2})(a, b); copy-copy brackets land in
the inner block (same copy) or flip to the third copy through the involuted
product, and the inner block acts componentwise. The triple identification
makes the bracket table close automatically exactly when the source algebra
is structurable, which is why the builder refuses anything weaker.

Also here: the ternary triple-product checks, commutator algebras on the
skew part or the derived span with the Malcev/Jacobi diagnostics, and the
exact Jacobi scan over the generated table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .algebra import Algebra
from .fields import PrimeField, Field
from .identities import TrialityOps, identity_suite, is_structurable
from .linalg import Echelon, Mat, Vec, vec_add, vec_scale, vec_sub
from .verdicts import IdentityReport, Verdict, Witness, failed, passed, skipped


class NotStructurableError(ValueError):
    """The Lie construction was asked to run on a non-structurable algebra."""


class ClosureError(RuntimeError):
    """A bracket left the inner-block span; the input table is corrupted."""


@dataclass
class OperatorTriple:
    """Element of End(A)^3 with the componentwise bracket."""

    mats: tuple[Mat, Mat, Mat]

    def component(self, j: int) -> Mat:
        return self.mats[j % 3]

    def flatten(self) -> Vec:
        return [a for m in self.mats for row in m.rows for a in row]

    def rotate_right(self) -> "OperatorTriple":
        q0, q1, q2 = self.mats
        return OperatorTriple((q2, q0, q1))

    def commutator(self, other: "OperatorTriple") -> "OperatorTriple":
        return OperatorTriple(tuple(
            a @ b - b @ a for a, b in zip(self.mats, other.mats)))

    def __add__(self, other: "OperatorTriple") -> "OperatorTriple":
        return OperatorTriple(tuple(a + b for a, b in zip(self.mats, other.mats)))


def _triple_from_flat(field, n: int, flat: Vec) -> OperatorTriple:
    mats = []
    for c in range(3):
        base = c * n * n
        mats.append(Mat(field, [flat[base + i * n: base + (i + 1) * n] for i in range(n)]))
    return OperatorTriple(tuple(mats))


def _pair_tmats(ops: TrialityOps, a: int, b: int) -> tuple[Mat, Mat, Mat]:
    return (ops.t_basis(0, a, b), ops.t_basis(1, a, b), ops.t_basis(2, a, b))


def shifted_triple(ops: TrialityOps, l: int, a: int, b: int) -> OperatorTriple:
    """Component j is t_{l+j}(e_a, e_b)."""
    tm = _pair_tmats(ops, a, b)
    return OperatorTriple((tm[l % 3], tm[(l + 1) % 3], tm[(l + 2) % 3]))


def t_space(ops: TrialityOps) -> list[OperatorTriple]:
    """Echelonized basis of the span of all shifted pair triples."""
    ech = _t_space_echelon(ops)
    n = ops.n
    return [_triple_from_flat(ops.f, n, row) for row in ech.basis]


def _t_space_echelon(ops: TrialityOps) -> Echelon:
    n = ops.n
    ech = Echelon(ops.f, 3 * n * n)
    for a in range(n):
        for b in range(a + 1, n):
            tm = _pair_tmats(ops, a, b)
            for l in range(3):
                flat = [x for j in range(3) for row in tm[(l + j) % 3].rows for x in row]
                ech.insert(flat)
    return ech


@dataclass
class LieAlgebra:
    """Bracket table over the three algebra copies plus the inner block.

    Basis layout: indices [0, n) copy 0, [n, 2n) copy 1, [2n, 3n) copy 2,
    then the inner-block coordinates. Only the upper triangle is stored; the
    lower one is its negative and the diagonal vanishes.
    """

    field: Field
    n: int
    t_dim: int
    labels: list[str]
    gammas: tuple
    upper: dict  # (i, j) with i < j -> list[(k, coeff)]
    triples: list[OperatorTriple]
    sub_span: list[list[Vec]]  # per-shift spans of the inner block, tau coords
    meta: dict

    @property
    def dim(self) -> int:
        return 3 * self.n + self.t_dim

    def bracket_basis(self, i: int, j: int) -> list[tuple]:
        if i == j:
            return []
        if i < j:
            return self.upper.get((i, j), [])
        f = self.field
        return [(k, f.neg(c)) for k, c in self.upper.get((j, i), [])]

    def bracket(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        out = [f.zero] * self.dim
        nz_x = [(i, v) for i, v in enumerate(x) if not f.is_zero(v)]
        nz_y = [(j, v) for j, v in enumerate(y) if not f.is_zero(v)]
        for i, xi in nz_x:
            for j, yj in nz_y:
                w = f.mul(xi, yj)
                for k, c in self.bracket_basis(i, j):
                    out[k] = f.add(out[k], f.mul(w, c))
        return out

    def format_element(self, i: int) -> str:
        return self.labels[i]


def build_lie(ops: TrialityOps, gammas=None, mode: str = "auto", trials: int = 200,
              seed: int = 0, prime: int | None = None) -> LieAlgebra:
    """Assemble the graded Lie algebra; refuses non-structurable input."""
    alg = ops.alg
    f = ops.f
    n = alg.n
    gammas = tuple(f.coerce(g) for g in (gammas or (1, 1, 1)))
    if any(f.is_zero(g) for g in gammas):
        raise ValueError("gamma scale factors must be nonzero")
    cert = is_structurable(ops, mode, trials, seed, prime)
    if cert.holds is not True:
        detail = ""
        if cert.witness is not None:
            detail = f" (witness {', '.join(cert.witness.labels)})"
        raise NotStructurableError(
            f"{alg.name} failed structurable certification in {cert.mode} mode{detail}")

    ech = _t_space_echelon(ops)
    t_dim = ech.rank
    triples = [_triple_from_flat(f, n, row) for row in ech.basis]
    m = 3 * n + t_dim

    labels = [f"rho{j}({name})" for j in range(3) for name in alg.basis_names]
    labels += [f"T{s}" for s in range(t_dim)]

    upper: dict = {}

    def put(i, j, entries):
        entries = [(k, c) for k, c in entries if not f.is_zero(c)]
        if not entries:
            return
        if i < j:
            upper[(i, j)] = entries
        elif j < i:
            upper[(j, i)] = [(k, f.neg(c)) for k, c in entries]
        else:
            raise ClosureError("nonzero bracket on a diagonal pair")

    # per-shift coordinates of each generating pair, reused for copy-copy
    # brackets and for the per-shift sub-span record
    shift_coords: dict = {}
    sub_span: list[list[Vec]] = [[], [], []]
    sub_ech = [Echelon(f, t_dim) for _ in range(3)]
    for a in range(n):
        for b in range(a + 1, n):
            tm = _pair_tmats(ops, a, b)
            for l in range(3):
                flat = [x for j in range(3) for row in tm[(l + j) % 3].rows for x in row]
                coords = ech.solve(flat)
                if coords is None:
                    raise ClosureError("shifted triple escaped its own span")
                shift_coords[(l, a, b)] = coords
                if sub_ech[l].insert(coords):
                    sub_span[l].append(coords)

    # copy-copy, same copy: lands in the inner block with shift 3 - i
    for i in range(3):
        scale = f.div(gammas[(i + 1) % 3], gammas[(i + 2) % 3])
        for a in range(n):
            for b in range(a + 1, n):
                coords = shift_coords[((3 - i) % 3, a, b)]
                put(i * n + a, i * n + b,
                    [(3 * n + s, f.mul(scale, c)) for s, c in enumerate(coords)])

    # copy-copy, different copies: flips to the third copy via conj(ab)
    def cross(bi, bj, a, b):
        # (bi, bj, k) cyclic: [rho_bi(e_a), rho_bj(e_b)] = -g_bj/g_bi rho_k(conj(e_a e_b))
        k = 3 - bi - bj
        scale = f.neg(f.div(gammas[bj], gammas[bi]))
        vec = alg.involute(alg.c[a][b])
        return [(k * n + t, f.mul(scale, c)) for t, c in enumerate(vec)]

    for a in range(n):
        for b in range(n):
            put(0 * n + a, 1 * n + b, cross(0, 1, a, b))
            put(1 * n + a, 2 * n + b, cross(1, 2, a, b))
            # (2,0) is the cyclic order: [rho0(e_a), rho2(e_b)] = -[rho2(e_b), rho0(e_a)]
            put(0 * n + a, 2 * n + b,
                [(k, f.neg(c)) for k, c in cross(2, 0, b, a)])

    # inner block on a copy: component j acts on copy j
    for s, triple in enumerate(triples):
        for j in range(3):
            comp = triple.component(j)
            for c in range(n):
                put(3 * n + s, j * n + c,
                    [(j * n + k, v) for k, v in enumerate(comp.col(c)) if not f.is_zero(v)])

    # inner block with itself: componentwise commutators, resolved exactly
    for s in range(t_dim):
        for t in range(s + 1, t_dim):
            comm = triples[s].commutator(triples[t])
            coords = ech.solve(comm.flatten())
            if coords is None:
                raise ClosureError(
                    "componentwise commutator left the inner block; "
                    "the source algebra cannot be structurable")
            put(3 * n + s, 3 * n + t,
                [(3 * n + k, c) for k, c in enumerate(coords)])

    return LieAlgebra(f, n, t_dim, labels, gammas, upper, triples,
                      [e.basis for e in sub_ech],
                      {"source": alg.name, "mode": cert.mode,
                       "certification": cert, "basis_names": list(alg.basis_names)})


# -- Jacobi scanning ----------------------------------------------------------


def _integer_rows(L: LieAlgebra):
    """Clear denominators so each bracket row is integral; exact for both
    field modes (prime rows are already integers)."""
    if isinstance(L.field, PrimeField):
        return 1, {ij: [(k, int(c)) for k, c in entries]
                   for ij, entries in L.upper.items()}
    den = 1
    for entries in L.upper.values():
        for _, c in entries:
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    rows = {}
    for ij, entries in L.upper.items():
        rows[ij] = [(k, int(c * den)) for k, c in entries]
    return den, rows


def _dense_int_table(L: LieAlgebra, rows) -> np.ndarray | None:
    m = L.dim
    if m > 160:
        return None
    table = np.zeros((m, m, m), dtype=np.int64)
    maxabs = 0
    for (i, j), entries in rows.items():
        for k, c in entries:
            if abs(c) > maxabs:
                maxabs = abs(c)
            table[i, j, k] = c
            table[j, i, k] = -c
    if not isinstance(L.field, PrimeField) and maxabs * maxabs * m >= (1 << 62):
        return None
    return table


def _np_vecmat_mod(x: np.ndarray, mat: np.ndarray, p: int) -> np.ndarray:
    hi, lo = np.divmod(x, 1 << 16)
    return ((hi @ mat % p << 16) + lo @ mat) % p


def jacobi_check(L: LieAlgebra, mode: str = "auto", trials: int = 2000,
                 seed: int = 0, exhaustive_limit: int = 100) -> Verdict:
    """Exact Jacobi scan of the bracket table.

    Exhaustive mode first verifies antisymmetry of the table, after which the
    Jacobi sum is alternating and vanishing on increasing triples forces it
    to vanish on all dim^3 ordered triples; the scan covers the increasing
    ones. Above the dimension limit it samples random basis triples, each
    evaluated exactly.
    """
    if mode == "auto":
        mode = "exhaustive" if L.dim <= exhaustive_limit else "probabilistic"
    den, rows = _integer_rows(L)
    prime = L.field.p if isinstance(L.field, PrimeField) else None
    f = L.field
    m = L.dim

    def sparse_bracket(i, j):
        if i == j:
            return ()
        if i < j:
            return rows.get((i, j), ())
        return tuple((k, -c) for k, c in rows.get((j, i), ()))

    def defect_sparse(i, j, k):
        acc: dict[int, int] = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            for mm, w in sparse_bracket(x, y):
                for kk, w2 in sparse_bracket(mm, z):
                    acc[kk] = acc.get(kk, 0) + w * w2
        if prime is None:
            return {k2: v for k2, v in acc.items() if v}
        return {k2: v % prime for k2, v in acc.items() if v % prime}

    def witness_from(i, j, k, bad: dict):
        scale = Fraction(1, den * den) if prime is None else None
        vec = [f.zero] * m
        for kk, v in bad.items():
            vec[kk] = f.coerce(Fraction(v) * scale) if prime is None else v % prime
        return Witness((L.labels[i], L.labels[j], L.labels[k]), vec)

    if mode == "exhaustive":
        # antisymmetry of the stored table (diagonals are empty by storage)
        checked = 0
        table = _dense_int_table(L, rows)
        if table is not None:
            if prime is None:
                sym = table + np.swapaxes(table, 0, 1)
                if np.any(sym):
                    i, j, k = map(int, np.argwhere(sym)[0])
                    return failed("exhaustive", 0,
                                  Witness((L.labels[i], L.labels[j]), None,
                                          "bracket table is not antisymmetric"))
                mats = [np.ascontiguousarray(table[:, k, :]) for k in range(m)]
                for i in range(m):
                    ti = table[i]
                    for j in range(i + 1, m):
                        row_ij = ti[j]
                        for k in range(j + 1, m):
                            d = row_ij @ mats[k] + table[j, k] @ mats[i] - table[i, k] @ mats[j]
                            checked += 1
                            if np.any(d):
                                bad = {kk: int(v) for kk, v in enumerate(d) if v}
                                return failed("exhaustive", checked, witness_from(i, j, k, bad))
            else:
                p = prime
                sym = (table + np.swapaxes(table, 0, 1)) % p
                if np.any(sym):
                    i, j, k = map(int, np.argwhere(sym)[0])
                    return failed("exhaustive", 0,
                                  Witness((L.labels[i], L.labels[j]), None,
                                          "bracket table is not antisymmetric"))
                mats = [np.ascontiguousarray(table[:, k, :]) for k in range(m)]
                for i in range(m):
                    for j in range(i + 1, m):
                        for k in range(j + 1, m):
                            d = (_np_vecmat_mod(table[i, j], mats[k], p)
                                 + _np_vecmat_mod(table[j, k], mats[i], p)
                                 + (p - 1) * _np_vecmat_mod(table[i, k], mats[j], p)) % p
                            checked += 1
                            if np.any(d):
                                bad = {kk: int(v) for kk, v in enumerate(d) if v}
                                return failed("exhaustive", checked, witness_from(i, j, k, bad))
        else:
            # storage is upper-triangular, so antisymmetry is structural here
            for i in range(m):
                for j in range(i + 1, m):
                    for k in range(j + 1, m):
                        bad = defect_sparse(i, j, k)
                        checked += 1
                        if bad:
                            return failed("exhaustive", checked, witness_from(i, j, k, bad))
        return passed("exhaustive", checked)

    rng = random.Random(f"jacobi:{seed}")
    for trial in range(trials):
        i = rng.randrange(m)
        j = rng.randrange(m)
        k = rng.randrange(m)
        bad = defect_sparse(i, j, k)
        if bad:
            return failed("probabilistic", trial + 1, witness_from(i, j, k, bad),
                          trials=trials, prime=prime)
    return passed("probabilistic", trials, trials=trials, prime=prime)


# -- gradation and symmetry ----------------------------------------------------


@dataclass
class GradedReport:
    dim_l: int
    dim_t: int
    branch_dims: tuple[int, int, int]
    branch_closure: Verdict
    z3: Verdict
    jacobi: Verdict


def graded_report(L: LieAlgebra, jacobi_mode: str = "auto", trials: int = 2000,
                  seed: int = 0) -> GradedReport:
    """Branch dimensions, branch closure, cyclic-shift symmetry, and Jacobi."""
    f = L.field
    n = L.n
    m = L.dim
    branch_dims = tuple(n + len(L.sub_span[(3 - j) % 3]) for j in range(3))

    closure = _branch_closure(L)
    gammas_equal = all(f.is_zero(f.sub(g, L.gammas[0])) for g in L.gammas)
    z3 = _z3_check(L) if gammas_equal else skipped("shift map needs equal gamma factors")
    jac = jacobi_check(L, jacobi_mode, trials, seed)
    return GradedReport(m, L.t_dim, branch_dims, closure, z3, jac)


def _branch_closure(L: LieAlgebra) -> Verdict:
    f = L.field
    n = L.n
    checked = 0
    for j in range(3):
        sub = L.sub_span[(3 - j) % 3]
        ech = Echelon(f, L.t_dim)
        for v in sub:
            ech.insert(v)
        members: list[Vec] = []
        for a in range(n):
            v = [f.zero] * L.dim
            v[j * n + a] = f.one
            members.append(v)
        for coords in sub:
            v = [f.zero] * L.dim
            for s, c in enumerate(coords):
                v[3 * n + s] = c
            members.append(v)

        def inside(vec):
            for b in range(3):
                if b != j and any(not f.is_zero(vec[b * n + a]) for a in range(n)):
                    return False
            return ech.contains(vec[3 * n:]) if L.t_dim else True

        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                out = L.bracket(members[x], members[y])
                checked += 1
                if not inside(out):
                    return failed("exhaustive", checked,
                                  Witness((f"branch {j}", f"member {x}", f"member {y}"),
                                          out, "bracket escaped the branch"))
    return passed("exhaustive", checked)


def _z3_check(L: LieAlgebra) -> Verdict:
    """The cyclic shift rho_j -> rho_{j+1}, triples rotated, as a bracket map."""
    f = L.field
    n = L.n
    m = L.dim
    ech = Echelon(f, 3 * n * n)
    for t in L.triples:
        ech.insert(t.flatten())
    images: list[Vec] = []
    for j in range(3):
        for a in range(n):
            v = [f.zero] * m
            v[((j + 1) % 3) * n + a] = f.one
            images.append(v)
    for t in L.triples:
        coords = ech.solve(t.rotate_right().flatten())
        if coords is None:
            return failed("exhaustive", 0,
                          Witness(("rotation",), None, "rotated triple left the span"))
        v = [f.zero] * m
        for s, c in enumerate(coords):
            v[3 * n + s] = c
        images.append(v)

    def apply(vec):
        out = [f.zero] * m
        for i, c in enumerate(vec):
            if not f.is_zero(c):
                out = vec_add(f, out, vec_scale(f, c, images[i]))
        return out

    checked = 0
    for i in range(m):
        for j in range(i + 1, m):
            lhs = apply(_basis_bracket_vec(L, i, j))
            rhs = L.bracket(images[i], images[j])
            checked += 1
            d = vec_sub(f, lhs, rhs)
            if any(not f.is_zero(x) for x in d):
                return failed("exhaustive", checked,
                              Witness((L.labels[i], L.labels[j]), d,
                                      "shift map is not a bracket automorphism"))
    return passed("exhaustive", checked)


def _basis_bracket_vec(L: LieAlgebra, i: int, j: int) -> Vec:
    f = L.field
    out = [f.zero] * L.dim
    for k, c in L.bracket_basis(i, j):
        out[k] = c
    return out


# -- ternary triple product -----------------------------------------------------


def lts_product(ops: TrialityOps, a: Vec, b: Vec, c: Vec) -> Vec:
    """The ternary product t0(a, b) c."""
    return ops.t_apply(0, a, b, c)


def lts_check(ops: TrialityOps, mode: str = "auto", trials: int = 200,
              seed: int = 0, prime: int | None = None) -> IdentityReport:
    """Antisymmetry, the cyclic sum, the five-slot derivation law, and the
    operator commutator law for the ternary product."""
    return identity_suite(ops, mode, trials, seed, prime,
                          include=("triple-antisymmetry", "triple-cyclic",
                                   "triple-derivation", "t0-commutator"))


def jacobian_defect(ops: TrialityOps, a: Vec, b: Vec, c: Vec) -> OperatorTriple:
    """The inner-block triple measuring the only nonvanishing Jacobi sum,
    taken over one element of each copy. Its copy-j action must match the
    symmetric defect operator, which is asserted here."""
    alg = ops.alg
    f = ops.f

    def conj_mul(x, y):
        return alg.involute(alg.multiply(x, y))

    total = None
    for l, (u, v) in enumerate(((a, conj_mul(b, c)), (c, conj_mul(a, b)),
                                (b, conj_mul(c, a)))):
        mats = tuple(ops.t_mat(l + j, u, v) for j in range(3))
        triple = OperatorTriple(mats)
        total = triple if total is None else total + triple
    q = ops.q_mat(a, b, c)
    for j in range(3):
        if not (total.component(j) - q).is_zero():
            raise RuntimeError(
                "jacobian triple component differs from the defect operator; "
                "the algebra is not pre-structurable")
    return total


# -- commutator algebras and the Malcev identity --------------------------------


@dataclass
class CommutatorAlgebra:
    """Anticommutative product [x, y] = xy - yx on a commutator-closed subspace."""

    name: str
    field: Field
    parent: Algebra
    basis: list[Vec]  # in parent coordinates
    table: list[list[Vec]]  # products in subspace coordinates

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if not f.is_zero(yj):
                    w = f.mul(xi, yj)
                    out = vec_add(f, out, vec_scale(f, w, self.table[i][j]))
        return out


def commutator_algebra(alg: Algebra, restrict_to_derived: bool = False) -> CommutatorAlgebra:
    """Commutator product on the skew part, or on the span of all commutators."""
    f = alg.field
    ech = Echelon(f, alg.n)
    if restrict_to_derived:
        for i in range(alg.n):
            for j in range(i + 1, alg.n):
                ech.insert(alg.commutator(alg.basis_vec(i), alg.basis_vec(j)))
        name = f"[{alg.name},{alg.name}]"
    else:
        for v in alg.sh_split().h_basis:
            ech.insert(v)
        name = f"{alg.name}|skew"
    # echelonized vectors are the working basis, so membership coefficients
    # from the solver line up with the table indices
    basis = ech.basis
    dim = len(basis)
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            com = alg.commutator(basis[i], basis[j])
            coords = ech.solve(com)
            if coords is None:
                raise ValueError("commutator left the subspace; not closed")
            row.append(coords)
        table.append(row)
    return CommutatorAlgebra(name, f, alg, basis, table)


@dataclass
class MalcevReport:
    anticommutativity: Verdict
    malcev: Verdict
    jacobi: Verdict


def malcev_check(M: CommutatorAlgebra) -> MalcevReport:
    """Anticommutativity, the Malcev identity J(x,y,[x,z]) = [J(x,y,z),x]
    (checked on basis triples and, because it is quadratic in x, on the
    polarised substitutions x1+x2), and a separate Jacobi verdict."""
    f = M.field
    dim = M.dim

    def jac(x, y, z):
        out = M.mul(M.mul(x, y), z)
        out = vec_add(f, out, M.mul(M.mul(y, z), x))
        return vec_add(f, out, M.mul(M.mul(z, x), y))

    anti = None
    checked = 0
    for i in range(dim):
        for j in range(i, dim):
            d = vec_add(f, M.table[i][j], M.table[j][i])
            checked += 1
            if any(not f.is_zero(x) for x in d):
                anti = failed("exhaustive", checked, Witness((f"{i}", f"{j}"), d))
                break
        if anti:
            break
    if anti is None:
        anti = passed("exhaustive", checked)

    def basis(i):
        v = [f.zero] * dim
        v[i] = f.one
        return v

    def malcev_defect(x, y, z):
        lhs = jac(x, y, M.mul(x, z))
        rhs = M.mul(jac(x, y, z), x)
        return vec_sub(f, lhs, rhs)

    mal = None
    checked = 0
    xs = [basis(i) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                d = malcev_defect(xs[i], xs[j], xs[k])
                checked += 1
                if any(not f.is_zero(v) for v in d):
                    mal = failed("exhaustive", checked, Witness((f"{i}", f"{j}", f"{k}"), d))
                    break
            if mal:
                break
        if mal:
            break
    if mal is None:
        # quadratic slot: polarised substitutions complete the basis scan
        for i in range(dim):
            for i2 in range(i + 1, dim):
                x = vec_add(f, xs[i], xs[i2])
                for j in range(dim):
                    for k in range(dim):
                        d = malcev_defect(x, xs[j], xs[k])
                        checked += 1
                        if any(not f.is_zero(v) for v in d):
                            mal = failed("exhaustive", checked,
                                         Witness((f"{i}+{i2}", f"{j}", f"{k}"), d))
                            break
                    if mal:
                        break
                if mal:
                    break
            if mal:
                break
    if mal is None:
        mal = passed("exhaustive", checked)

    jacv = None
    checked = 0
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                d = jac(xs[i], xs[j], xs[k])
                checked += 1
                if any(not f.is_zero(v) for v in d):
                    jacv = failed("exhaustive", checked,
                                  Witness((f"{i}", f"{j}", f"{k}"), d))
                    break
            if jacv:
                break
        if jacv:
            break
    if jacv is None:
        jacv = passed("exhaustive", checked)
    return MalcevReport(anti, mal, jacv)
