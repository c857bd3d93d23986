"""Prime field arithmetic."""

from __future__ import annotations

from dataclasses import dataclass

MAX_MODULUS = 1 << 16


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting the zero element."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The prime field F_q. Elements are plain ints in ``range(q)``."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError(f"modulus must be an int, got {type(self.q).__name__}")
        if self.q > MAX_MODULUS or not is_prime(self.q):
            raise ValueError(f"q={self.q} is not a supported prime (2 <= q <= {MAX_MODULUS})")

    def __repr__(self):
        return f"GF({self.q})"

    def reduce(self, a: int) -> int:
        return a % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.q})")
        return pow(a, -1, self.q)

    def elements(self) -> range:
        return range(self.q)

    @property
    def is_binary(self) -> bool:
        return self.q == 2


def as_field(field) -> FieldCtx:
    """Accept either a FieldCtx or a bare modulus."""
    if isinstance(field, FieldCtx):
        return field
    return FieldCtx(int(field))
