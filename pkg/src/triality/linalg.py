"""Dense exact linear algebra over rational and prime fields.

Vectors are plain lists of scalars; matrices are row-major ``Mat`` values.
Row reduction is deterministic (first nonzero entry in column order picks the
pivot), which the rest of the library relies on for reproducible bases and
witnesses. Prime-mode kernels are vectorised with int64 numpy arrays; a
16-bit split keeps every intermediate below 2**63, so the results stay exact.
"""

from __future__ import annotations

import numpy as np

from .fields import Field, FieldError, PrimeField, same_field

Vec = list


class DimensionError(ValueError):
    """Operand shapes do not match."""


def zeros_vec(field: Field, n: int) -> Vec:
    return [field.zero] * n


def unit_vec(field: Field, n: int, i: int) -> Vec:
    v = [field.zero] * n
    v[i] = field.one
    return v


def vec_add(field, u, v):
    return [field.add(a, b) for a, b in zip(u, v, strict=True)]


def vec_sub(field, u, v):
    return [field.sub(a, b) for a, b in zip(u, v, strict=True)]


def vec_neg(field, u):
    return [field.neg(a) for a in u]


def vec_scale(field, c, u):
    return [field.mul(c, a) for a in u]


def vec_is_zero(field, u) -> bool:
    return all(field.is_zero(a) for a in u)


def vec_eq(field, u, v) -> bool:
    return all(field.is_zero(field.sub(a, b)) for a, b in zip(u, v, strict=True))


def _np_mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # Entries lie in [0, p); splitting b into 16-bit halves keeps every dot
    # product below 2**63 for p < 2**31 and inner dimension up to ~2**16.
    b_hi, b_lo = np.divmod(b, 1 << 16)
    return ((a @ b_hi % p << 16) + a @ b_lo) % p


class Mat:
    """Dense matrix over a single field, row-major storage.

    Instances are treated as immutable by every operation here (all return
    fresh matrices), which lets the prime-mode kernels cache an int64 view.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_np")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        self._np = None
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionError("ragged rows")

    def _np_view(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self.rows, dtype=np.int64)
        return self._np

    @classmethod
    def zeros(cls, field, n, m=None):
        m = n if m is None else m
        return cls(field, [[field.zero] * m for _ in range(n)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_cols(cls, field, cols):
        rows = [list(r) for r in zip(*cols)] if cols else []
        return cls(field, rows)

    def col(self, j) -> Vec:
        return [r[j] for r in self.rows]

    def copy(self) -> "Mat":
        return Mat(self.field, self.rows)

    def transpose(self) -> "Mat":
        return Mat(self.field, [list(r) for r in zip(*self.rows)])

    def _vectorized(self) -> bool:
        return isinstance(self.field, PrimeField) and self.nrows * self.ncols >= 256

    def __add__(self, other: "Mat") -> "Mat":
        f = same_field(self.field, other.field)
        if self._vectorized():
            return Mat(f, ((self._np_view() + other._np_view()) % f.p).tolist())
        return Mat(f, [[f.add(a, b) for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows, strict=True)])

    def __sub__(self, other: "Mat") -> "Mat":
        f = same_field(self.field, other.field)
        if self._vectorized():
            return Mat(f, ((self._np_view() - other._np_view()) % f.p).tolist())
        return Mat(f, [[f.sub(a, b) for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows, strict=True)])

    def __neg__(self) -> "Mat":
        f = self.field
        if self._vectorized():
            return Mat(f, ((-self._np_view()) % f.p).tolist())
        return Mat(f, [[f.neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "Mat":
        f = self.field
        if self._vectorized():
            # c < p and entries < p keeps products under 2**62
            return Mat(f, (self._np_view() * (c % f.p) % f.p).tolist())
        return Mat(f, [[f.mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        f = same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionError(f"{self.ncols} cols vs {other.nrows} rows")
        if isinstance(f, PrimeField) and self.nrows * self.ncols >= 256:
            out = Mat(f, _np_mod_matmul(self._np_view(), other._np_view(), f.p).tolist())
            return out
        bt = list(zip(*other.rows))
        zero = f.zero
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = zero
                for x, y in zip(r, c):
                    acc = f.add(acc, f.mul(x, y))
                row.append(acc)
            out.append(row)
        return Mat(f, out)

    def matvec(self, v: Vec) -> Vec:
        f = self.field
        if len(v) != self.ncols:
            raise DimensionError(f"{self.ncols} cols vs vector of length {len(v)}")
        if self._vectorized():
            col = np.asarray(v, dtype=np.int64).reshape(-1, 1) % f.p
            return [int(x) for x in _np_mod_matmul(self._np_view(), col, f.p).ravel()]
        out = []
        for r in self.rows:
            acc = f.zero
            for x, y in zip(r, v):
                acc = f.add(acc, f.mul(x, y))
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field or self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        f = self.field
        return all(f.is_zero(f.sub(a, b))
                   for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None  # mutable

    def __repr__(self):
        return f"Mat({self.field.tag}, {self.nrows}x{self.ncols})"


def flatten_mats(mats: list[Mat]) -> Vec:
    return [a for m in mats for r in m.rows for a in r]


def unflatten_mats(field, flat: Vec, shapes: list[tuple[int, int]]) -> list[Mat]:
    out, pos = [], 0
    for n, m in shapes:
        rows = [flat[pos + i * m: pos + (i + 1) * m] for i in range(n)]
        out.append(Mat(field, rows))
        pos += n * m
    return out


class Echelon:
    """Incrementally maintained reduced row echelon basis of a span.

    Insertion order decides pivots (first-seen wins); rows are kept fully
    reduced with unit pivots, so membership coefficients can be read off at
    the pivot columns and verified in one pass.
    """

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self._prime = isinstance(field, PrimeField)
        self.pivots: list[int] = []
        self._rows: list = []  # np.int64 arrays in prime mode, lists otherwise

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _residual(self, vec):
        f = self.field
        if self._prime:
            p = f.p
            v = np.asarray(vec, dtype=np.int64) % p
            for piv, row in zip(self.pivots, self._rows):
                c = int(v[piv])
                if c:
                    v = (v - c * row) % p
            return v
        v = list(vec)
        for piv, row in zip(self.pivots, self._rows):
            c = v[piv]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return v

    def insert(self, vec) -> bool:
        """Reduce ``vec`` against the basis; add the residual if independent."""
        f = self.field
        if len(vec) != self.width:
            raise DimensionError("vector width mismatch")
        v = self._residual(vec)
        if self._prime:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            lead = int(nz[0])
            v = v * f.inv(int(v[lead])) % f.p
            for i, row in enumerate(self._rows):
                c = int(row[lead])
                if c:
                    self._rows[i] = (row - c * v) % f.p
        else:
            lead = next((i for i, a in enumerate(v) if not f.is_zero(a)), None)
            if lead is None:
                return False
            c = f.inv(v[lead])
            v = [f.mul(c, a) for a in v]
            for i, row in enumerate(self._rows):
                c = row[lead]
                if not f.is_zero(c):
                    self._rows[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(row, v)]
        at = next((k for k, piv in enumerate(self.pivots) if piv > lead), len(self.pivots))
        self.pivots.insert(at, lead)
        self._rows.insert(at, v)
        return True

    def solve(self, vec) -> list | None:
        """Coefficients over the basis rows, or None if ``vec`` is outside the span."""
        f = self.field
        if len(vec) != self.width:
            raise DimensionError("vector width mismatch")
        if self._prime:
            p = f.p
            v = np.asarray(vec, dtype=np.int64) % p
            coeffs = [int(v[piv]) for piv in self.pivots]
            for c, row in zip(coeffs, self._rows):
                if c:
                    v = (v - c * row) % p
            if np.any(v):
                return None
            return coeffs
        coeffs = [vec[piv] for piv in self.pivots]
        v = list(vec)
        for c, row in zip(coeffs, self._rows):
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        if any(not f.is_zero(a) for a in v):
            return None
        return coeffs

    def contains(self, vec) -> bool:
        v = self._residual(vec)
        if self._prime:
            return not np.any(v)
        f = self.field
        return all(f.is_zero(a) for a in v)

    @property
    def basis(self) -> list[Vec]:
        if self._prime:
            return [[int(x) for x in row] for row in self._rows]
        return [list(row) for row in self._rows]


def span_basis(field: Field, vectors: list[Vec]) -> list[Vec]:
    """Echelonized basis of the span; empty input gives an empty basis."""
    if not vectors:
        return []
    ech = Echelon(field, len(vectors[0]))
    for v in vectors:
        ech.insert(v)
    return ech.basis


def solve_in_span(field: Field, basis: list[Vec], vec: Vec) -> list | None:
    """Coefficients expressing ``vec`` over an echelonized ``basis`` (None if outside)."""
    if not basis:
        return [] if vec_is_zero(field, vec) else None
    ech = Echelon(field, len(basis[0]))
    for b in basis:
        ech.insert(b)
    return ech.solve(vec)


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    """Reduced row echelon form, pivot columns, and rank."""
    if m.nrows == 0 or m.ncols == 0:
        raise DimensionError("empty matrix")
    f = m.field
    if isinstance(f, PrimeField):
        p = f.p
        a = np.array(m.rows, dtype=np.int64) % p
        pivots = []
        r = 0
        for col in range(m.ncols):
            nz = np.nonzero(a[r:, col])[0]
            if nz.size == 0:
                continue
            lead = r + int(nz[0])
            a[[r, lead]] = a[[lead, r]]
            a[r] = a[r] * f.inv(int(a[r, col])) % p
            fac = a[:, col].copy()
            fac[r] = 0
            a = (a - np.outer(fac, a[r])) % p
            pivots.append(col)
            r += 1
            if r == m.nrows:
                break
        return Mat(f, a.tolist()), pivots, len(pivots)
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for col in range(m.ncols):
        lead = next((i for i in range(r, len(rows)) if not f.is_zero(rows[i][col])), None)
        if lead is None:
            continue
        rows[r], rows[lead] = rows[lead], rows[r]
        c = f.inv(rows[r][col])
        rows[r] = [f.mul(c, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and not f.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return Mat(f, rows), pivots, len(pivots)


def kernel(m: Mat) -> list[Vec]:
    """Basis of the right null space; size equals cols - rank."""
    f = m.field
    red, pivots, rank = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [f.zero] * m.ncols
        v[j] = f.one
        for r, piv in enumerate(pivots):
            v[piv] = f.neg(red.rows[r][j])
        basis.append(v)
    return basis


def random_vector(field: Field, n: int, rng) -> Vec:
    """Uniform vector mod p from an explicit seeded generator (prime mode only)."""
    if not isinstance(field, PrimeField):
        raise FieldError("random_vector requires a prime field")
    return [field.random(rng) for _ in range(n)]
