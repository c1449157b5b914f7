"""Exact arithmetic in cyclotomic integer rings Z[omega_N].

A CycInt at level N is an integer coefficient vector c of length N denoting
sum_k c[k] * omega_N^k with omega_N = exp(2*pi*i/N).  The representation is
redundant (the vectors form Z[X]/(X^N - 1), not the ring itself), so equality
and the zero test go through exact divisibility by the N-th cyclotomic
polynomial: the value is zero iff Phi_N(X) divides the coefficient
polynomial.  Coefficients are Python ints, so nothing overflows.

Times are rational multiples of 2*pi: RationalTime(r, N) denotes
t = 2*pi*r/N, stored reduced with 0 <= r < N.  All mixing certificates at
rational times reduce to zero tests of CycInt values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from . import intpoly
from .errors import LevelMismatch


def vector_is_zero(level: int, coeffs) -> bool:
    """Exact zero test for a raw coefficient vector at the given level.

    Shared by CycInt and by hot loops that avoid allocating CycInt objects.
    """
    poly = intpoly.trim(list(coeffs))
    if not poly:
        return True
    return intpoly.divides_monic(list(intpoly.cyclotomic(level)), poly)


class CycInt:
    """Immutable cyclotomic integer at a fixed level N."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        if level < 1:
            raise ValueError("level must be >= 1")
        coeffs = tuple(coeffs)
        if len(coeffs) != level:
            raise ValueError(f"need exactly {level} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("CycInt is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(level: int) -> "CycInt":
        return CycInt(level, (0,) * level)

    @staticmethod
    def from_int(level: int, value: int) -> "CycInt":
        c = [0] * level
        c[0] = value
        return CycInt(level, c)

    # -- ring operations -------------------------------------------------

    def _match(self, other: "CycInt") -> None:
        if self.level != other.level:
            raise LevelMismatch(f"levels differ: {self.level} vs {other.level}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.level, other)
        self._match(other)
        return CycInt(self.level, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.level, (-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.level, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.level, (other * a for a in self.coeffs))
        self._match(other)
        n = self.level
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                k = i + j
                out[k - n if k >= n else k] += a * b
        return CycInt(n, out)

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        """Complex conjugate: omega^k -> omega^(N-k)."""
        n = self.level
        out = [0] * n
        for k, a in enumerate(self.coeffs):
            out[-k % n] += a
        return CycInt(n, out)

    def modulus_squared(self) -> "CycInt":
        return self * self.conj()

    # -- predicates and conversions ---------------------------------------

    def is_zero(self) -> bool:
        return vector_is_zero(self.level, self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.from_int(self.level, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        self._match(other)
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("CycInt is not hashable (equality is up to Phi_N)")

    def is_real(self) -> bool:
        return self == self.conj()

    def as_int(self) -> int | None:
        """The rational integer this value equals, or None.

        The only possible candidate is the rounded numeric value; the
        verification of the candidate is exact.
        """
        z = self.to_complex()
        m = round(z.real)
        if abs(z.imag) > 0.01 or abs(z.real - m) > 0.01:
            return None
        return m if (self - m).is_zero() else None

    def to_complex(self) -> complex:
        roots = _unit_roots(self.level)
        return sum((a * roots[k] for k, a in enumerate(self.coeffs) if a), complex(0))

    def lift(self, new_level: int) -> "CycInt":
        """Reinterpret at a level that is a multiple of the current one."""
        if new_level % self.level:
            raise LevelMismatch(f"{new_level} is not a multiple of {self.level}")
        stride = new_level // self.level
        out = [0] * new_level
        for k, a in enumerate(self.coeffs):
            out[k * stride] = a
        return CycInt(new_level, out)

    def __repr__(self):
        return f"CycInt({self.level}, {list(self.coeffs)})"


def root_power(level: int, k: int) -> CycInt:
    """omega_level ** k as a CycInt."""
    c = [0] * level
    c[k % level] = 1
    return CycInt(level, c)


@lru_cache(maxsize=64)
def _unit_roots(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / n) for k in range(n))


@dataclass(frozen=True)
class RationalTime:
    """The time t = 2*pi*r/N, stored reduced with 0 <= r < N."""

    numerator: int
    denominator: int

    def __init__(self, numerator: int, denominator: int):
        if denominator < 1:
            raise ValueError("denominator must be >= 1")
        r = numerator % denominator
        g = math.gcd(r, denominator)
        if r == 0:
            r, denominator = 0, 1
        else:
            r //= g
            denominator //= g
        object.__setattr__(self, "numerator", r)
        object.__setattr__(self, "denominator", denominator)

    def to_float(self) -> float:
        return 2.0 * math.pi * self.numerator / self.denominator

    @staticmethod
    def parse(text: str) -> "RationalTime":
        num, _, den = text.partition("/")
        return RationalTime(int(num.strip()), int(den.strip() or "1"))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"
