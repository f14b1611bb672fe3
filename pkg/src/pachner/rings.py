"""Exact scalar rings: arbitrary-precision rationals and GF(2).

Every number in the library is either a ``fractions.Fraction`` (ring ``"Q"``)
or an int in {0, 1} (ring ``"GF2"``).  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Q = "Q"
GF2 = "GF2"

RINGS = (Q, GF2)


def check_ring(ring):
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")


def zero(ring):
    return 0 if ring == GF2 else Fraction(0)


def one(ring):
    return 1 if ring == GF2 else Fraction(1)


def coerce(ring, value):
    """Coerce an int/Fraction/str into a scalar of the ring."""
    if ring == GF2:
        if isinstance(value, Fraction):
            if value.denominator % 2 == 0:
                raise ValueError(f"cannot reduce {value} mod 2")
            value = value.numerator * pow(value.denominator, -1, 2)
        elif isinstance(value, str):
            value = int(value)
        return int(value) % 2
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def add(ring, a, b):
    return (a + b) % 2 if ring == GF2 else a + b


def sub(ring, a, b):
    return (a - b) % 2 if ring == GF2 else a - b


def mul(ring, a, b):
    return (a * b) % 2 if ring == GF2 else a * b


def neg(ring, a):
    return a % 2 if ring == GF2 else -a


def inv(ring, a):
    if ring == GF2:
        if a % 2 == 0:
            raise ZeroDivisionError("0 is not invertible in GF(2)")
        return 1
    if a == 0:
        raise ZeroDivisionError("0 is not invertible in Q")
    return Fraction(1) / a


def scalar_to_str(ring, a):
    """Serialize a scalar: GF2 as 0/1 ints, rationals as "p/q" strings."""
    if ring == GF2:
        return int(a)
    a = Fraction(a)
    return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)


def scalar_from_json(ring, value):
    if ring == GF2:
        return int(value) % 2
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise ValueError(f"bad scalar literal {value!r} for ring {ring}")
