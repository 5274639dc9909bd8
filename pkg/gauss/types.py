"""
Value types of the ring Z[i].

GaussInt is an immutable pair of Python integers, so arithmetic is exact at any size.
"""

import math
import operator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

GaussLike = Union["GaussInt", int, tuple]


@dataclass(frozen=True)
class GaussInt:
    """Exact Gaussian integer re + im*i."""

    re: int
    im: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", operator.index(self.re))
        object.__setattr__(self, "im", operator.index(self.im))

    @classmethod
    def coerce(cls, value: GaussLike) -> "GaussInt":
        """Accept a GaussInt, a rational integer or an (re, im) pair."""
        if isinstance(value, GaussInt):
            return value
        if isinstance(value, tuple):
            return cls(*value)
        return cls(value, 0)

    # Ring structure

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __add__(self, other: GaussLike) -> "GaussInt":
        other = GaussInt.coerce(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: GaussLike) -> "GaussInt":
        other = GaussInt.coerce(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: GaussLike) -> "GaussInt":
        return GaussInt.coerce(other) - self

    def __mul__(self, other: GaussLike) -> "GaussInt":
        other = GaussInt.coerce(other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GaussInt":
        if exponent < 0:
            raise ValueError("Negative powers are not Gaussian integers")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: GaussLike) -> tuple["GaussInt", "GaussInt"]:
        """
        Euclidean division with the quotient rounded to the nearest lattice point.

        Ties round toward the negative component, so the remainder norm is at most half
        the divisor norm.
        """
        other = GaussInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        num = self * other.conj()
        q = GaussInt(_round_half_down(num.re, n), _round_half_down(num.im, n))
        return q, self - q * other

    def __floordiv__(self, other: GaussLike) -> "GaussInt":
        return divmod(self, other)[0]

    def __mod__(self, other: GaussLike) -> "GaussInt":
        return divmod(self, other)[1]

    def divides(self, other: GaussLike) -> bool:
        """True if self | other."""
        other = GaussInt.coerce(other)
        if not self:
            return not other
        n = self.norm()
        num = other * self.conj()
        return num.re % n == 0 and num.im % n == 0

    def exact_div(self, other: GaussLike) -> "GaussInt":
        """self / other, which must be exact."""
        other = GaussInt.coerce(other)
        n = other.norm()
        num = self * other.conj()
        if n == 0 or num.re % n or num.im % n:
            raise ArithmeticError(f"{other} does not divide {self}")
        return GaussInt(num.re // n, num.im // n)

    # Units and associates

    def is_unit(self) -> bool:
        return self.norm() == 1

    def times_i(self) -> "GaussInt":
        return GaussInt(-self.im, self.re)

    def associates(self) -> tuple["GaussInt", ...]:
        """(z, iz, -z, -iz)."""
        z1 = self.times_i()
        z2 = z1.times_i()
        return (self, z1, z2, z2.times_i())

    def canonical(self) -> "GaussInt":
        """The associate with re > 0 and im >= 0 (zero maps to zero)."""
        if not self:
            return self
        for z in self.associates():
            if z.re > 0 and z.im >= 0:
                return z
        raise AssertionError("unreachable: every nonzero orbit meets the first quadrant")

    def is_canonical(self) -> bool:
        return self.re > 0 and self.im >= 0

    # Conversions

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def arg(self) -> float:
        return math.atan2(self.im, self.re)

    def sort_key(self) -> tuple[int, int, int]:
        """Norm ascending, then re ascending, then im ascending."""
        return (self.norm(), self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    def as_pair(self) -> list[int]:
        return [self.re, self.im]


def _imag_str(im: int) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def _round_half_down(a: int, n: int) -> int:
    """Nearest integer to a/n (n > 0), ties toward negative infinity."""
    return -((n - 2 * a) // (2 * n))


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
UNITS = (ONE, I, GaussInt(-1, 0), GaussInt(0, -1))


@dataclass(frozen=True)
class GaussFactorization:
    """
    alpha = unit * prod(prime ** exponent).

    Primes are canonical associates, pairwise non-associate, sorted by norm then re then im.
    """

    unit: GaussInt
    factors: tuple[tuple[GaussInt, int], ...]

    def expand(self) -> GaussInt:
        value = self.unit
        for prime, exponent in self.factors:
            value = value * prime**exponent
        return value

    @property
    def primes(self) -> tuple[GaussInt, ...]:
        return tuple(prime for prime, _ in self.factors)

    def omega(self) -> int:
        return len(self.factors)

    def as_record(self) -> dict:
        return {
            "unit": self.unit.as_pair(),
            "factors": [{"prime": p.as_pair(), "exponent": e} for p, e in self.factors],
        }


@dataclass(frozen=True)
class ResidueSystem:
    """
    Complete residue system modulo gamma built from the Hermite normal form of gamma*Z[i].

    Representatives are x + y*i with 0 <= y < g and 0 <= x < N/g, where g is the content
    gcd(re, im) of the modulus and N its norm, ordered by y then x.
    """

    modulus: GaussInt
    representatives: tuple[GaussInt, ...]
    reduced: tuple[int, ...]
    hnf: tuple[int, int, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def phi(self) -> int:
        return len(self.reduced)

    def reduced_elements(self) -> tuple[GaussInt, ...]:
        return tuple(self.representatives[k] for k in self.reduced)

    def index_of(self, alpha: GaussLike) -> int:
        """Position of the representative congruent to alpha."""
        from gauss.lattice import reduce_with_hnf

        x, y = reduce_with_hnf(GaussInt.coerce(alpha), self.hnf)
        width = self.hnf[0]
        return y * width + x

    @cached_property
    def inverses(self) -> tuple[GaussInt, ...]:
        """delta* for each reduced representative, aligned with reduced_elements()."""
        from gauss.arithmetic import inv_mod

        return tuple(inv_mod(delta, self.modulus) for delta in self.reduced_elements())
