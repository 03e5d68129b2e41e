"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Scalars are plain Python values, interpreted through a field object:

* rational mode: ``int`` or ``fractions.Fraction`` (always reduced, positive
  denominator; denominator-1 values are normalised back to ``int`` so that
  integer-heavy workloads stay on fast native arithmetic),
* prime mode: ``int`` in ``[0, p)`` for a prime ``p >= 5``.

Characteristic 2 and 3 are rejected: the skew/symmetric split needs 1/2 and
several certification checks divide by 3.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Mixed field modes, bad modulus, or an operation outside a field's domain."""


Scalar = int | Fraction

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _norm_rational(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class RationalField:
    """The rationals. All operations are exact; ints are kept as ints."""

    tag = "rational"
    is_prime_mode = False

    zero = 0
    one = 1

    def coerce(self, x) -> Scalar:
        if isinstance(x, bool):
            raise FieldError("bool is not a scalar")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return _norm_rational(x)
        raise FieldError(f"cannot coerce {x!r} into the rational field")

    def add(self, a, b):
        return _norm_rational(a + b)

    def sub(self, a, b):
        return _norm_rational(a - b)

    def mul(self, a, b):
        return _norm_rational(a * b)

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _norm_rational(Fraction(1, 1) / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return _norm_rational(Fraction(a) / b)

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int) -> Scalar:
        return n

    def format(self, a) -> str:
        if isinstance(a, Fraction):
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def format_machine(self, a) -> str:
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.div(int(num), int(den))
            return int(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational scalar {text!r}") from exc

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """Integers mod a prime p >= 5."""

    is_prime_mode = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"modulus {p!r} is not prime")
        if p < 5:
            raise FieldError(f"modulus {p} too small: characteristic 2 and 3 unsupported")
        self.p = p
        self.tag = f"mod {p}"

    zero = 0
    one = 1

    def coerce(self, x) -> int:
        if isinstance(x, bool):
            raise FieldError("bool is not a scalar")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        raise FieldError(f"cannot coerce {x!r} into {self.tag}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def format(self, a) -> str:
        return str(a % self.p)

    def format_machine(self, a) -> str:
        return str(a % self.p)

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(text) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad scalar {text!r} for {self.tag}") from exc

    def random(self, rng) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


Field = RationalField | PrimeField

QQ = RationalField()

# Large default modulus for probabilistic runs; fits comfortably in int64
# (p**2 < 2**63) so numpy kernels can use the 16-bit split trick.
DEFAULT_PRIME = 2147483629


def field_from_tag(tag: str) -> Field:
    tag = tag.strip()
    if tag == "rational":
        return QQ
    if tag.startswith("mod"):
        rest = tag[3:].lstrip(": ")
        try:
            p = int(rest)
        except ValueError as exc:
            raise FieldError(f"bad field tag {tag!r}") from exc
        return PrimeField(p)
    raise FieldError(f"unknown field tag {tag!r}")


def same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldError(f"mixed field modes: {first.tag} vs {f.tag}")
    return first
