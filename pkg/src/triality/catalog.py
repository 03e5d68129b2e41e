"""Named example algebras, with their bilinear forms and linear functionals
where the construction defines them.

Every entry validates cleanly; the skew vector-matrix ones also pass the
contraction and cyclic form laws enforced by the ``zorn`` builder. Note the
octonion base form is minus the standard dot product: with +1 signs the
contraction law (and with it alternativity of the 8-dimensional algebra)
fails, which is easy to confirm by direct computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import Algebra, tensor_product, zorn
from .fields import Field, QQ
from .linalg import Mat, Vec


@dataclass
class CatalogEntry:
    algebra: Algebra
    form: Mat | None = None  # Gram matrix in the algebra basis
    phi: Vec | None = None  # linear functional coordinates


CATALOG_NAMES = (
    "octonion",
    "quaternion",
    "kuzmin",
    "zorn-trivial",
    "comp3-skew",
    "comp3-sym",
    "preonly3",
    "oxo",
)

PARAM_NAMES = {
    "comp3-skew": ("alpha", "beta"),
    "comp3-sym": ("alpha", "lambda"),
    "preonly3": ("alpha", "beta"),
}


def _cross_table(f):
    # e1 e2 = e3, e2 e3 = e1, e3 e1 = e2, anticommutative, squares zero
    c = [[[f.zero] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i][j][k] = f.one
        c[j][i][k] = f.neg(f.one)
    return c


def octonion(field: Field = QQ) -> Algebra:
    f = field
    neg = f.neg(f.one)
    bform = [[neg if i == j else f.zero for j in range(3)] for i in range(3)]
    binv = [[neg if i == j else f.zero for j in range(3)] for i in range(3)]
    return zorn(3, _cross_table(f), bform, binv, flavor="skew",
                name="octonion", field=f)


def quaternion(field: Field = QQ) -> Algebra:
    f = field
    bprod = [[[f.zero]]]
    return zorn(1, bprod, [[f.one]], [[f.neg(f.one)]], flavor="skew",
                name="quaternion", field=f)


def kuzmin(field: Field = QQ) -> Algebra:
    f = field
    c = [[[f.zero] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = f.one
    c[1][0][0] = f.neg(f.one)
    bform = [[f.zero, f.zero], [f.zero, f.one]]
    binv = [[f.neg(f.one), f.zero], [f.zero, f.neg(f.one)]]
    return zorn(2, c, bform, binv, flavor="skew", name="kuzmin", field=f)


def zorn_trivial(field: Field = QQ) -> Algebra:
    return zorn(0, [], [], [], flavor="skew", name="zorn-trivial", field=field)


def comp3_skew(alpha=1, beta=1, field: Field = QQ) -> CatalogEntry:
    """Dim-3 composition algebra with a skew pair f, g.

    f^2 = a^2 e, g^2 = b^2 e, fg = -ab e + b f + a g, gf = -ab e - b f - a g;
    its form is degenerate along b f + a g, and phi = (1, a, -b) is
    multiplicative.
    """
    f = field
    a = f.coerce(alpha)
    b = f.coerce(beta)
    one, zero = f.one, f.zero
    names = ["e", "f", "g"]
    c = [[[zero] * 3 for _ in range(3)] for _ in range(3)]
    ab = f.mul(a, b)
    table = {
        (1, 1): [f.mul(a, a), zero, zero],
        (2, 2): [f.mul(b, b), zero, zero],
        (1, 2): [f.neg(ab), b, a],
        (2, 1): [f.neg(ab), f.neg(b), f.neg(a)],
    }
    _fill_unital(f, c, table)
    inv = Mat(f, [[one, zero, zero], [zero, f.neg(one), zero], [zero, zero, f.neg(one)]])
    alg = Algebra("comp3-skew", f, names, c, [one, zero, zero], inv,
                  {"origin": "comp3-skew", "alpha": a, "beta": b})
    gram = Mat(f, [
        [one, zero, zero],
        [zero, f.neg(f.mul(a, a)), ab],
        [zero, ab, f.neg(f.mul(b, b))],
    ])
    phi = [one, a, f.neg(b)]
    return CatalogEntry(alg, gram, phi)


def _exact_sqrt(f, x):
    if f.is_zero(x):
        return f.zero
    q = Fraction(x)
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return f.div(f.from_int(rn), f.from_int(rd))
    return None


def comp3_sym(alpha=1, lam=2, field: Field = QQ) -> CatalogEntry:
    """Dim-3 commutative associative composition algebra with symmetric part e, f.

    f^2 = a^2 e, fg = gf = a g, g^2 = l(a e + f); the form is degenerate along
    f - a e. The multiplicative functional needs phi(g)^2 = 2 l a, so the
    parameters must make 2 l a a perfect square (the defaults give phi(g)=2).
    """
    f = field
    a = f.coerce(alpha)
    l = f.coerce(lam)
    one, zero = f.one, f.zero
    names = ["e", "f", "g"]
    c = [[[zero] * 3 for _ in range(3)] for _ in range(3)]
    table = {
        (1, 1): [f.mul(a, a), zero, zero],
        (1, 2): [zero, zero, a],
        (2, 1): [zero, zero, a],
        (2, 2): [f.mul(l, a), l, zero],
    }
    _fill_unital(f, c, table)
    inv = Mat(f, [[one, zero, zero], [zero, one, zero], [zero, zero, f.neg(one)]])
    alg = Algebra("comp3-sym", f, names, c, [one, zero, zero], inv,
                  {"origin": "comp3-sym", "alpha": a, "lambda": l})
    two = f.add(one, one)
    gram = Mat(f, [
        [one, a, zero],
        [a, f.mul(a, a), zero],
        [zero, zero, f.neg(f.mul(two, f.mul(l, a)))],
    ])
    phi_g = _exact_sqrt(f, f.mul(two, f.mul(l, a))) if not f.is_prime_mode else None
    if f.is_prime_mode:
        raise ValueError("comp3-sym is defined over the rationals; reduce afterwards")
    if phi_g is None:
        raise ValueError("comp3-sym functional needs 2*lambda*alpha to be a perfect square")
    phi = [one, a, phi_g]
    return CatalogEntry(alg, gram, phi)


def preonly3(alpha=1, beta=1, field: Field = QQ) -> Algebra:
    """Dim-3 commutative algebra with identity involution and g^2 = a e + b f.

    The canonical witness separating the two certification levels: the
    triality exchange identity holds, but the symmetric defect operator acts
    on (g,g,g,g) as 3ab f, so for ab != 0 the algebra fails the vanishing
    test. Either parameter set to zero collapses it to a structurable
    (Jordan, or even associative) algebra.
    """
    f = field
    a = f.coerce(alpha)
    b = f.coerce(beta)
    one, zero = f.one, f.zero
    names = ["e", "f", "g"]
    c = [[[zero] * 3 for _ in range(3)] for _ in range(3)]
    table = {
        (1, 1): [zero, zero, zero],
        (1, 2): [zero, zero, zero],
        (2, 1): [zero, zero, zero],
        (2, 2): [a, b, zero],
    }
    _fill_unital(f, c, table)
    inv = Mat.identity(f, 3)
    return Algebra("preonly3", f, names, c, [one, zero, zero], inv,
                   {"origin": "preonly3", "alpha": a, "beta": b})


def _fill_unital(f, c, table):
    """Unit row/column plus explicit non-unit products (basis 0 is the unit)."""
    n = len(c)
    c[0][0][0] = f.one
    for i in range(1, n):
        c[0][i][i] = f.one
        c[i][0][i] = f.one
    for (i, j), vec in table.items():
        c[i][j] = list(vec)


def oxo(field: Field = QQ) -> Algebra:
    left = octonion(field)
    right = octonion(field)
    alg = tensor_product(left, right, name="oxo")
    return alg


def catalog(name: str, field: Field = QQ, **params) -> CatalogEntry:
    """Build a named catalog algebra; unknown names or parameters raise."""
    known = {"alpha", "beta", "lambda"}
    for key in params:
        if key not in known:
            raise ValueError(f"unknown parameter {key!r}")
    allowed = set(PARAM_NAMES.get(name, ()))
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"{name} takes no parameter {sorted(extra)}")

    if name == "octonion":
        alg = octonion(field)
    elif name == "quaternion":
        alg = quaternion(field)
    elif name == "kuzmin":
        alg = kuzmin(field)
    elif name == "zorn-trivial":
        alg = zorn_trivial(field)
    elif name == "comp3-skew":
        return comp3_skew(params.get("alpha", 1), params.get("beta", 1), field)
    elif name == "comp3-sym":
        return comp3_sym(params.get("alpha", 1), params.get("lambda", 2), field)
    elif name == "preonly3":
        return CatalogEntry(preonly3(params.get("alpha", 1), params.get("beta", 1), field))
    elif name == "oxo":
        return CatalogEntry(oxo(field))
    else:
        raise ValueError(f"unknown catalog algebra {name!r}")

    from .forms import zorn_form  # local import: forms builds on algebra

    return CatalogEntry(alg, zorn_form(alg))
