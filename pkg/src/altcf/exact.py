"""Exact rational arithmetic and certified decimal rendering.

``Rat`` is :class:`fractions.Fraction`: arbitrary-precision, always stored in
lowest terms with a positive denominator.  The helpers here add the few
operations the rest of the package needs on top of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction

__all__ = [
    "Rat",
    "CertifiedDecimal",
    "as_rat",
    "rat_normalize",
    "rat_arith",
    "rat_floor",
    "render_decimal",
]


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction (floats refused)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rat_normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def rat_floor(x) -> int:
    return math.floor(as_rat(x))


_BINARY = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
}


def rat_arith(op: str, x, y=None):
    """Dispatch one exact operation by name.

    ``cmp`` returns -1, 0 or 1; ``floor`` takes a single argument and returns
    an int; everything else returns a Fraction.
    """
    x = as_rat(x)
    if op == "floor":
        if y is not None:
            raise TypeError("floor takes one argument")
        return math.floor(x)
    if y is None:
        raise TypeError(f"{op} takes two arguments")
    y = as_rat(y)
    if op in _BINARY:
        return _BINARY[op](x, y)
    if op == "div":
        if y == 0:
            raise ZeroDivisionError("division by zero")
        return x / y
    if op == "cmp":
        return (x > y) - (x < y)
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class CertifiedDecimal:
    sign: str
    integer_part: str
    fraction_digits: str
    error_bound: Fraction
    truncated: bool = False

    def __str__(self) -> str:
        text = self.integer_part
        if self.fraction_digits:
            text += "." + self.fraction_digits
        return ("-" if self.sign == "-" else "") + text

    @property
    def exact(self) -> bool:
        return self.error_bound == 0 and not self.truncated


def _fraction_digits(x: Fraction, max_digits: int) -> tuple[int, str, bool]:
    """Integer part, truncated fraction digits, and whether digits were cut off."""
    ip, rem = divmod(x.numerator, x.denominator)
    den = x.denominator
    digits = []
    while rem and len(digits) < max_digits:
        d, rem = divmod(rem * 10, den)
        digits.append(str(d))
    return ip, "".join(digits), rem != 0


def render_decimal(value, error_bound=0, max_digits: int = 15) -> CertifiedDecimal:
    """Render ``value`` in decimal, printing only digits that ``error_bound`` cannot move.

    With a zero bound the exact expansion is truncated at ``max_digits``.
    Otherwise the digits printed are the longest common prefix of the
    truncated expansions of ``value - error_bound`` and ``value + error_bound``.
    """
    value = as_rat(value)
    error_bound = as_rat(error_bound)
    if error_bound < 0:
        raise ValueError("error bound must be non-negative")
    if max_digits < 0:
        raise ValueError("max_digits must be non-negative")

    if error_bound == 0:
        sign = "-" if value < 0 else "+"
        ip, frac, cut = _fraction_digits(abs(value), max_digits)
        return CertifiedDecimal(sign, str(ip), frac, error_bound, cut)

    lo, hi = value - error_bound, value + error_bound
    if lo < 0 < hi:
        raise ValueError("interval straddles zero; sign is not certified")
    if hi <= 0:
        sign, lo, hi = "-", -hi, -lo
    else:
        sign = "+"

    lo_ip, lo_rem = divmod(lo.numerator, lo.denominator)
    hi_ip, hi_rem = divmod(hi.numerator, hi.denominator)
    if lo_ip != hi_ip:
        raise ValueError("error bound too large to certify the integer part")
    digits = []
    while len(digits) < max_digits:
        d_lo, lo_rem = divmod(lo_rem * 10, lo.denominator)
        d_hi, hi_rem = divmod(hi_rem * 10, hi.denominator)
        if d_lo != d_hi:
            break
        digits.append(str(d_lo))
    return CertifiedDecimal(sign, str(lo_ip), "".join(digits), error_bound, True)
