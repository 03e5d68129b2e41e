"""Seeded random unital involutive algebras.

Structure constants are drawn from small integers over the non-unit basis
pairs with the unit row and column forced, so every sample passes the unit
law by construction. Involutions are diagonal sign patterns fixing the unit;
the mirror products are derived from the anti-automorphism constraint, and
squares are confined to the fixed subspace, so the involution axioms hold by
construction as well.
"""

from __future__ import annotations

import random

from .algebra import Algebra
from .fields import Field, QQ
from .linalg import Mat

COEFF_RANGE = (-2, 2)


def random_algebra(dim: int, rng: random.Random, commutative: bool = False,
                   field: Field = QQ, name: str | None = None) -> Algebra:
    """One random sample; commutative mode uses the identity involution."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    f = field
    lo, hi = COEFF_RANGE

    def coeff():
        return f.from_int(rng.randint(lo, hi))

    names = ["e"] + [f"b{i}" for i in range(1, dim)]
    c = [[[f.zero] * dim for _ in range(dim)] for _ in range(dim)]
    c[0][0][0] = f.one
    for i in range(1, dim):
        c[0][i][i] = f.one
        c[i][0][i] = f.one

    if commutative:
        signs = [1] * dim
    else:
        # at least one negated direction, otherwise the identity involution
        # on a non-commutative table could not reverse products
        signs = [1] + [rng.choice((1, -1)) for _ in range(dim - 1)]
        if all(s == 1 for s in signs[1:]):
            signs[rng.randrange(1, dim)] = -1

    def conj_vec(v):
        return [x if s == 1 else f.neg(x) for x, s in zip(v, signs)]

    for i in range(1, dim):
        for j in range(i, dim):
            if i == j:
                # squares must stay in the fixed subspace
                vec = [coeff() if s == 1 else f.zero for s in signs]
                c[i][i] = vec
            else:
                vec = [coeff() for _ in range(dim)]
                c[i][j] = vec
                if commutative:
                    c[j][i] = list(vec)
                else:
                    mirror = conj_vec(vec)
                    sign = signs[i] * signs[j]
                    c[j][i] = mirror if sign == 1 else [f.neg(x) for x in mirror]

    inv = Mat(f, [[f.one if (i == j and signs[i] == 1)
                   else (f.neg(f.one) if i == j else f.zero)
                   for j in range(dim)] for i in range(dim)])
    unit = [f.one] + [f.zero] * (dim - 1)
    return Algebra(name or f"random{dim}", f, names, c, unit, inv,
                   {"origin": "random", "commutative": commutative})
