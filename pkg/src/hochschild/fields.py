"""Exact scalar arithmetic over the rationals and prime fields.

Elements of Q are `fractions.Fraction` (always stored reduced with positive
denominator, which Fraction guarantees).  Elements of F_p are plain ints in
the canonical range 0..p-1.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    """Bad field specification or unsupported field operation."""


def is_prime(n: int) -> bool:
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


@dataclass(frozen=True)
class Field:
    """Ground field: characteristic 0 means Q, a prime p means F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c == 0:
            return
        if not (0 < c < 2**31) or not is_prime(c):
            raise FieldError(f"characteristic must be 0 or a prime < 2^31, got {c}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    # -- element constructors ------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1 % self.characteristic

    def from_int(self, n: int):
        if self.characteristic == 0:
            return Fraction(n)
        return n % self.characteristic

    def parse(self, s) :
        """Parse an int, or a string like '3', '-2/7' (lowest terms enforced)."""
        if isinstance(s, int) and not isinstance(s, bool):
            return self.from_int(s)
        if isinstance(s, Fraction):
            frac = s
        elif isinstance(s, str):
            frac = Fraction(s)
        else:
            raise FieldError(f"cannot parse scalar {s!r}")
        if self.characteristic == 0:
            return frac
        p = self.characteristic
        den = frac.denominator % p
        if den == 0:
            raise FieldError(f"denominator of {s!r} is divisible by {p}")
        return frac.numerator * pow(den, -1, p) % p

    def format(self, x) -> str:
        return str(x)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        r = a + b
        return r if self.characteristic == 0 else r % self.characteristic

    def sub(self, a, b):
        r = a - b
        return r if self.characteristic == 0 else r % self.characteristic

    def mul(self, a, b):
        r = a * b
        return r if self.characteristic == 0 else r % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
