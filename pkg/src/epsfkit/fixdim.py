"""TeX fixed-point dimensions.

A dimension is an integer count of scaled points (sp), 65536 sp to the
point.  Everything here is integer arithmetic reproducing what TeX's
``scan_dimen``, ``\\divide``, ``\\multiply`` and ``print_scaled`` do; no
binary floating point is involved anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Union

UNITY = 65536
MAX_DIMEN = 2**30 - 1

# unit -> (numerator, denominator) relative to pt
UNITS: dict[str, tuple[int, int]] = {
    "pt": (1, 1),
    "bp": (7227, 7200),
    "in": (7227, 100),
    "cm": (7227, 254),
    "mm": (7227, 2540),
    "sp": (1, 65536),
}

# TeX only looks at the first 17 fraction digits
_MAX_DECIMALS = 17

_DECIMAL_RE = re.compile(r"([+-]?)(\d*)(?:[.,](\d*))?")
_LITERAL_RE = re.compile(r"\s*([+-]?)\s*(\d*(?:[.,]\d*)?)\s*([A-Za-z]*)\s*")

DecimalLike = Union[str, int, Decimal]


class DimensionError(ValueError):
    """Base class for malformed or out-of-range dimensions."""


class DimensionOverflow(DimensionError, OverflowError):
    """A result would exceed TeX's largest dimension (2**30 - 1 sp)."""


class UnknownUnit(DimensionError):
    pass


@dataclass(frozen=True, order=True)
class Dim:
    """A signed dimension in scaled points.

    Plain operators are unchecked (wide Python ints); the named operations
    in this module enforce TeX's bound where TeX itself would complain.
    """

    sp: int = 0

    def __add__(self, other: Dim) -> Dim:
        return Dim(self.sp + other.sp)

    def __sub__(self, other: Dim) -> Dim:
        return Dim(self.sp - other.sp)

    def __neg__(self) -> Dim:
        return Dim(-self.sp)

    def __mul__(self, k: int) -> Dim:
        return Dim(self.sp * k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.sp != 0

    def __str__(self) -> str:
        return print_scaled(self) + "pt"

    @classmethod
    def parse(cls, text: str) -> Dim:
        return dim_from_literal(text)


ZERO = Dim(0)


def check(d: Dim, what: str = "dimension") -> Dim:
    if abs(d.sp) > MAX_DIMEN:
        raise DimensionOverflow(f"{what} too large: {d.sp}sp exceeds {MAX_DIMEN}sp")
    return d


def round_decimals(digits: str) -> int:
    """Round a fraction given by its decimal digits to a multiple of 2**-16.

    Returns the numerator over 65536, rounded half up, exactly as TeX's
    ``round_decimals`` does (including its 17-digit cut-off).
    """
    a = 0
    for ch in reversed(digits[:_MAX_DECIMALS]):
        a = (a + int(ch) * 2**17) // 10
    return (a + 1) // 2


def parse_decimal(value: DecimalLike) -> tuple[bool, int, str]:
    """Split a decimal constant into (negative, integer part, fraction digits)."""
    if isinstance(value, Decimal):
        value = format(value, "f")
    elif isinstance(value, int):
        value = str(value)
    m = _DECIMAL_RE.fullmatch(value.strip())
    if m is None or not (m.group(2) or m.group(3)):
        raise DimensionError(f"not a decimal constant: {value!r}")
    sign, whole, frac = m.groups()
    return sign == "-", int(whole or "0"), frac or ""


def dim_from_literal(text: str) -> Dim:
    """Scan a dimension literal such as ``"0.4pt"`` or ``"-1.5in"``."""
    m = _LITERAL_RE.fullmatch(text)
    if m is None or not m.group(2).strip(".,"):
        raise DimensionError(f"malformed dimension: {text!r}")
    sign, number, unit = m.groups()
    unit = unit.lower()
    if unit not in UNITS:
        raise UnknownUnit(f"unknown unit {unit!r} in {text!r}" if unit
                          else f"missing unit in {text!r}")
    _, n, digits = parse_decimal(number)
    f = round_decimals(digits)
    num, den = UNITS[unit]
    if (num, den) != (1, 1):
        whole, r = divmod(n * num, den)
        f = (num * f + UNITY * r) // den
        n = whole + f // UNITY
        f %= UNITY
    d = Dim(n * UNITY + f)
    check(d)
    return -d if sign == "-" else d


def _xn_over_d(x: int, n: int, d: int) -> int:
    # x*n/d truncated toward zero, as TeX's xn_over_d
    q = abs(x) * n // d
    return -q if x < 0 else q


def dim_scale_decimal(d: Dim, factor: DecimalLike) -> Dim:
    """Evaluate ``<factor><dimen>`` the way TeX does (e.g. ``720\\pspoints``).

    The integer part of the factor multiplies exactly; the fraction part,
    first rounded to 16 binary places, scales with truncation.
    """
    negative, n, digits = parse_decimal(factor)
    f = round_decimals(digits)
    result = n * d.sp + _xn_over_d(d.sp, f, UNITY)
    check(Dim(result), "scaled dimension")
    return Dim(-result if negative else result)


def _truncdiv(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero dimension")
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def dim_div_truncate(d: Dim, k: int) -> Dim:
    """``\\divide`` semantics: truncate toward zero."""
    return Dim(_truncdiv(d.sp, k))


def dim_ratio(a: Dim, b: Dim) -> int:
    """Integer quotient of two sp counts, truncated toward zero."""
    return _truncdiv(a.sp, b.sp)


def dim_mul(d: Dim, k: int) -> Dim:
    """``\\multiply``; overflow is an error as it is in TeX."""
    return check(Dim(d.sp * k), "product")


def print_scaled(d: Dim) -> str:
    """Render a dimension as ``\\the`` would, minus the ``pt`` suffix.

    Produces the shortest decimal that scans back to the same sp value.
    """
    s = d.sp
    sign = ""
    if s < 0:
        sign = "-"
        s = -s
    out = [sign, str(s // UNITY), "."]
    s = 10 * (s % UNITY) + 5
    delta = 10
    while True:
        if delta > UNITY:
            s += 0o100000 - 50000  # round the last digit
        out.append(str(s // UNITY))
        s = 10 * (s % UNITY)
        delta *= 10
        if s <= delta:
            break
    return "".join(out)


PSPOINTS = dim_from_literal("1bp")
