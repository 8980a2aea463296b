"""Fixed-width binary strings and the prefix arithmetic the search layers use.

A key is a plain ``int`` in ``[0, 2**w)`` read most-significant bit first.
A :class:`BitString` is a prefix: ``value`` holds its ``length`` bits, so
``x[0..l)`` of a w-bit key ``x`` is ``BitString(x >> (w - l), l)``.
"""
from __future__ import annotations

import math
from typing import NamedTuple, Optional, Union


class ContractError(ValueError):
    """Raised when an operation is called outside its precondition."""


class BitString(NamedTuple):
    value: int
    length: int

    @classmethod
    def parse(cls, text: str) -> "BitString":
        if any(c not in "01" for c in text):
            raise ContractError(f"not a binary string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def key(cls, value: int, w: int) -> "BitString":
        if not 0 <= value < (1 << w):
            raise ContractError(f"{value} does not fit in {w} bits")
        return cls(value, w)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __len__(self) -> int:
        return self.length

    def bit(self, i: int) -> int:
        return (self.value >> (self.length - 1 - i)) & 1

    def is_prefix_of(self, other: "BitString") -> bool:
        """Prefix order (reflexive)."""
        if self.length > other.length:
            return False
        return other.value >> (other.length - self.length) == self.value

    def is_proper_prefix_of(self, other: "BitString") -> bool:
        return self.length < other.length and self.is_prefix_of(other)


EMPTY = BitString(0, 0)

Bits = Union[BitString, str]


def _coerce(x: Bits) -> BitString:
    return BitString.parse(x) if isinstance(x, str) else x


def slice(x: Bits, a: int, b: int) -> BitString:  # noqa: A001 - mirrors x[a..b)
    """Return ``x[a..b)``."""
    x = _coerce(x)
    if not 0 <= a <= b <= x.length:
        raise ContractError(f"bad slice [{a}..{b}) of a {x.length}-bit string")
    return BitString((x.value >> (x.length - b)) & ((1 << (b - a)) - 1), b - a)


def prefix(x: int, w: int, length: int) -> int:
    """Value of ``x[0..length)`` for a w-bit key."""
    return x >> (w - length)


def lcp_len(x: int, y: int, w: int) -> int:
    """Length of the longest common prefix of two w-bit keys."""
    return w - (x ^ y).bit_length()


def lcp(u: Bits, v: Bits) -> BitString:
    u, v = _coerce(u), _coerce(v)
    m = min(u.length, v.length)
    a = u.value >> (u.length - m)
    b = v.value >> (v.length - m)
    n = m - (a ^ b).bit_length()
    return BitString(a >> (m - n), n)


def msb(z: int) -> int:
    if z <= 0:
        raise ContractError("msb of a non-positive integer")
    return z.bit_length() - 1


def trailing_zeros(z: int) -> int:
    return (z & -z).bit_length() - 1


def two_fattest(a: int, b: int) -> int:
    """The element of the half-open interval ``(a..b]`` with most trailing zeros."""
    if not 0 <= a < b:
        raise ContractError(f"empty or negative interval ({a}..{b}]")
    return (-1 << (a ^ b).bit_length() - 1) & b


def two_fattest_iterative(a: int, b: int) -> int:
    """Same result as :func:`two_fattest`, by decreasing power-of-two tests."""
    if not 0 <= a < b:
        raise ContractError(f"empty or negative interval ({a}..{b}]")
    i = (b - a - 1).bit_length()
    while (-1 << i) & a == (-1 << i) & b:
        i -= 1
    return b & (-1 << i)


def succ_prefix(p: Bits) -> Optional[BitString]:
    """``p + 1`` among strings of length ``|p|``, or ``None`` if ``p`` is all ones."""
    p = _coerce(p)
    if p.value + 1 >= 1 << p.length:
        return None
    return BitString(p.value + 1, p.length)


def pred_prefix(p: Bits) -> Optional[BitString]:
    p = _coerce(p)
    if p.value == 0:
        return None
    return BitString(p.value - 1, p.length)


def pack(value: int, length: int) -> int:
    """Injective encoding of a bit string as one int (sentinel-bit form)."""
    return (1 << length) | value


def unpack(code: int) -> BitString:
    length = code.bit_length() - 1
    return BitString(code ^ (1 << length), length)


def log2c(x: float) -> float:
    """Binary logarithm with the convention ``log x = 1`` for ``x < 2``."""
    return math.log2(x) if x >= 2 else 1.0
