"""Scalar helpers for the two arithmetic modes.

Exact mode works with ``int`` and ``fractions.Fraction`` only, so every
algebraic identity can be checked with ``==``. Floating mode uses Python
``float``/``complex`` and compares with an explicit tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Any, Union

Scalar = Union[int, Fraction, float, complex]

EXACT = "exact"
FLOATING = "floating"
DEFAULT_TOL = 1e-10


def is_exact(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def parse_scalar(value: Any, mode: str = EXACT) -> Scalar:
    """Turn a JSON-ish value into a scalar of the requested mode.

    Accepts ints, ``"p/q"`` or decimal strings, floats (floating mode
    only) and ``[re, im]`` pairs.  A pair with a zero imaginary part
    collapses to its real part.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex scalar must be [re, im], got {value!r}")
        re, im = (parse_scalar(v, mode) for v in value)
        if im == 0:
            return re
        if mode == EXACT:
            raise ValueError("exact mode supports real rationals only")
        return complex(float(re), float(im))
    if mode == EXACT:
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            return _normalize(value)
        if isinstance(value, str):
            return _normalize(Fraction(value.strip()))
        raise TypeError(f"cannot read {value!r} as an exact scalar")
    if isinstance(value, str):
        s = value.strip()
        try:
            return float(Fraction(s))
        except ValueError:
            return complex(s.replace("i", "j"))
    if isinstance(value, Number):
        return complex(value) if isinstance(value, complex) else float(value)
    raise TypeError(f"cannot read {value!r} as a scalar")


def _normalize(q: Fraction) -> Scalar:
    return q.numerator if q.denominator == 1 else q


def format_scalar(value: Scalar) -> str | float:
    """Rational strings for exact values, plain floats otherwise."""
    if is_exact(value):
        q = Fraction(value)
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if isinstance(value, complex):
        raise TypeError("use format_pair for complex values")
    return float(value)


def format_pair(value: Scalar) -> list:
    """``[re, im]`` encoding used by the vector serializers."""
    if isinstance(value, complex):
        return [value.real, value.imag]
    if is_exact(value):
        return [format_scalar(value), "0"]
    return [float(value), 0.0]


def magnitude(value: Scalar) -> Scalar:
    """|z|, exact for rationals."""
    return abs(value)


def unit_phase(value: Scalar) -> Scalar:
    """A unimodular ``u`` with ``u * value == |value|`` (``1`` for zero)."""
    if value == 0:
        return 1
    if isinstance(value, complex):
        return value.conjugate() / abs(value)
    return 1 if value > 0 else -1


def close(a: Scalar, b: Scalar, tol: float | None = None) -> bool:
    """Exact equality when both sides are exact, otherwise ``|a-b| <= tol``."""
    if is_exact(a) and is_exact(b):
        return a == b if tol is None else abs(a - b) <= tol
    if a == b:
        return True
    return abs(complex(a) - complex(b)) <= (DEFAULT_TOL if tol is None else tol)


def nth_root(value: Scalar, n: int) -> float:
    return float(value) ** (1.0 / n)
