"""Exact coefficient fields: prime fields F_p and arbitrary-precision rationals.

Elements are plain Python objects: ints in [0, p) for F_p, Fraction for the
rationals.  No floating point is used anywhere in the engine.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p for an odd prime p < 2^31."""

    kind = "prime"

    def __init__(self, p: int):
        if not (2 < p < 2**31) or not _is_prime(p):
            raise InputError(f"not an odd prime < 2^31: {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return self(x.numerator) * self.inv(self(x.denominator)) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def random(self, rng) -> int:
        return int(rng.integers(0, self.p))

    def random_nonzero(self, rng) -> int:
        return int(rng.integers(1, self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"F_{self.p}"

    def to_json(self):
        return {"field": {"prime": self.p}}


class RationalField:
    """Arbitrary-precision rationals."""

    kind = "rational"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng) -> Fraction:
        return Fraction(int(rng.integers(-20, 21)))

    def random_nonzero(self, rng) -> Fraction:
        n = int(rng.integers(1, 21))
        return Fraction(n if rng.integers(0, 2) else -n)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "Q"

    def to_json(self):
        return {"field": "rational"}


def field_from_json(obj) -> PrimeField | RationalField:
    """Parse {"field": {"prime": p}} or {"field": "rational"}."""
    spec = obj.get("field") if isinstance(obj, dict) else obj
    if spec == "rational":
        return RationalField()
    if isinstance(spec, dict) and "prime" in spec:
        return PrimeField(int(spec["prime"]))
    raise InputError(f"bad field spec: {obj!r}")


def default_field() -> PrimeField:
    return PrimeField(DEFAULT_PRIME)
