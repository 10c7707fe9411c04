"""Exact arithmetic on dyadic rationals m / 2^k.

Values are kept in canonical form: either the exponent is 0 or the
mantissa is odd, so every rational in Z[1/2] has exactly one
representation and equality/hashing can compare fields directly.
"""

from __future__ import annotations

import re
import sys
from fractions import Fraction
from typing import Union

__all__ = [
    "Dyadic",
    "DyadicParseError",
    "dy_arith",
    "dy_codec",
    "parse",
    "format_dyadic",
    "as_dyadic",
]

_GRAMMAR = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*2\s*\^\s*(\d+))?\s*$")
# plain m/d with d a power of two is accepted as a convenience
_PLAIN_FRACTION = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


_HASH_MODULUS = sys.hash_info.modulus


class DyadicParseError(ValueError):
    """Raised for text that is not a dyadic rational in m/2^k form."""


def _normalize(m: int, e: int) -> tuple[int, int]:
    if m == 0:
        return 0, 0
    if e > 0 and not m & 1:
        # strip common factors of two in one step
        tz = (m & -m).bit_length() - 1
        shift = min(tz, e)
        m >>= shift
        e -= shift
    elif e < 0:
        m <<= -e
        e = 0
    return m, e


class Dyadic:
    __slots__ = ("m", "e")

    m: int
    e: int

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        if not isinstance(mantissa, int) or not isinstance(exponent, int):
            raise TypeError("mantissa and exponent must be integers")
        m, e = _normalize(mantissa, exponent)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)

    @classmethod
    def _raw(cls, m: int, e: int) -> "Dyadic":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "e", e)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.m, self.e))

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Dyadic":
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not a dyadic rational")
        return cls(q.numerator, den.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.m, 1 << self.e)

    @property
    def mantissa(self) -> int:
        return self.m

    @property
    def exponent(self) -> int:
        return self.e

    def is_integer(self) -> bool:
        return self.e == 0

    def floor(self) -> int:
        return self.m >> self.e

    def ceil(self) -> int:
        return -((-self.m) >> self.e)

    def scale2(self, k: int) -> "Dyadic":
        """Multiply by 2**k (k may be negative)."""
        return Dyadic(self.m, self.e - k)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, int):
            other = Dyadic._raw(other, 0)
        elif not isinstance(other, Dyadic):
            return NotImplemented
        e1, e2 = self.e, other.e
        if e1 == e2:
            return Dyadic(self.m + other.m, e1)
        if e1 > e2:
            return Dyadic._raw(self.m + (other.m << (e1 - e2)), e1)
        return Dyadic._raw((self.m << (e2 - e1)) + other.m, e2)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic._raw(-self.m, self.e)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.m >= 0 else -self

    def __sub__(self, other):
        if isinstance(other, int):
            other = Dyadic._raw(other, 0)
        elif not isinstance(other, Dyadic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int):
            return Dyadic._raw(other, 0) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return Dyadic(self.m * other, self.e)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return Dyadic(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    # ordering

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            other = Dyadic._raw(other, 0)
        e = max(self.e, other.e)
        a = self.m << (e - self.e)
        b = other.m << (e - other.e)
        return (a > b) - (a < b)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.m == other.m and self.e == other.e
        if isinstance(other, int):
            return self.e == 0 and self.m == other
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        # must agree with hash(Fraction) because __eq__ accepts Fractions
        if self.e == 0:
            return hash(self.m)
        if _HASH_MODULUS != (1 << 61) - 1:
            return hash(self.to_fraction())
        # 2 has order 61 modulo 2**61 - 1, so 2**-e is a plain shift
        h = (abs(self.m) % _HASH_MODULUS) * (1 << (-self.e % 61)) % _HASH_MODULUS
        if self.m < 0:
            h = -h
        return -2 if h == -1 else h

    def __lt__(self, other):
        if not isinstance(other, (Dyadic, int)):
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if not isinstance(other, (Dyadic, int)):
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, (Dyadic, int)):
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not isinstance(other, (Dyadic, int)):
            return NotImplemented
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.m != 0

    def __str__(self):
        return format_dyadic(self)

    def __repr__(self):
        return f"Dyadic({format_dyadic(self)!r})"


DyadicLike = Union[Dyadic, int, str, Fraction]


def as_dyadic(value: DyadicLike) -> Dyadic:
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a dyadic rational")
    if isinstance(value, int):
        return Dyadic._raw(value, 0)
    if isinstance(value, str):
        return parse(value)
    if isinstance(value, Fraction):
        return Dyadic.from_fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a dyadic rational")


def parse(text: str) -> Dyadic:
    """Parse ``INT`` or ``INT/2^UINT``; non-reduced input such as ``2/2^1`` is normalized."""
    match = _GRAMMAR.match(text)
    if not match:
        plain = _PLAIN_FRACTION.match(text)
        if plain:
            den = int(plain.group(2))
            if den > 0 and not den & (den - 1):
                return Dyadic(int(plain.group(1)), den.bit_length() - 1)
        raise DyadicParseError(f"not a dyadic rational: {text!r}")
    m = int(match.group(1))
    e = int(match.group(2)) if match.group(2) is not None else 0
    return Dyadic(m, e)


def format_dyadic(q: Dyadic) -> str:
    if q.e == 0:
        return str(q.m)
    return f"{q.m}/2^{q.e}"


def dy_arith(op: str, p: Dyadic, q: Dyadic):
    """Binary dispatch used by the CLI and the oracle tests.

    ``cmp`` returns -1, 0 or 1; the other ops return a Dyadic. ``neg``
    ignores ``q``.
    """
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    if op == "cmp":
        return p._cmp(q)
    raise ValueError(f"unknown operation {op!r}")


def dy_codec(direction: str, value):
    if direction == "parse":
        return parse(value)
    if direction == "format":
        return format_dyadic(as_dyadic(value))
    raise ValueError(f"unknown direction {direction!r}")


def pow2_exponent(num: Dyadic, den: Dyadic) -> int | None:
    """Return k with num/den == 2**k, or None if the ratio is not a power of two."""
    if num.m <= 0 or den.m <= 0:
        if num.m < 0 and den.m < 0:
            return pow2_exponent(-num, -den)
        return None
    a, b = num.m, den.m
    # both mantissas are odd or the value is an integer; strip powers of two
    ta = (a & -a).bit_length() - 1
    tb = (b & -b).bit_length() - 1
    if a >> ta != b >> tb:
        return None
    return (ta - num.e) - (tb - den.e)


def floor_log2_ratio(num: Dyadic, den: Dyadic) -> int:
    """floor(log2(num/den)) for positive num, den."""
    if num.m <= 0 or den.m <= 0:
        raise ValueError("ratio must be positive")
    # num/den = (num.m * 2^den.e) / (den.m * 2^num.e)
    p = num.m << den.e
    q = den.m << num.e
    t = p.bit_length() - q.bit_length()
    # 2^t * q <= p < 2^(t+1) * q after correction
    if t >= 0:
        if (q << t) > p:
            t -= 1
    else:
        if q > (p << -t):
            t -= 1
    return t
