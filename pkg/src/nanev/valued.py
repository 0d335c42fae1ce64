"""Exact p-adic valuations on the rationals.

Logarithms are base p throughout, so ``lognorm(x) = log_p |x|_p = -v_p(x)``
is always an exact rational (in fact an integer) and every "log" quantity
downstream stays inside :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

INF = math.inf
NEG_INF = -math.inf


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p!r}")


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val(x, p: int):
    """Additive p-adic valuation of a rational; ``val(0) == inf``."""
    _check_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    # Fraction is always reduced, so the two parts never share a factor of p.
    return Fraction(_int_val(abs(x.numerator), p) - _int_val(x.denominator, p))


def lognorm(x, p: int):
    """``log_p |x|``; equal to ``-val(x)`` and ``-inf`` at zero."""
    v = val(x, p)
    return NEG_INF if v == INF else -v


def unit_part(x, p: int) -> Fraction:
    """Return ``x / p**val(x)`` (a p-adic unit); requires ``x != 0``."""
    x = as_fraction(x)
    if x == 0:
        raise ZeroDivisionError("zero has no unit part")
    return x / Fraction(p) ** val(x, p)


@dataclass(frozen=True)
class PAdic:
    """A rational number viewed inside Q_p.

    Arithmetic is plain exact rational arithmetic; the prime only matters
    for :meth:`val` and :meth:`lognorm`.  Mixing primes raises ``ValueError``.
    """

    value: Fraction
    p: int

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "value", as_fraction(self.value))

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other.value
        return as_fraction(other)

    def __add__(self, other):
        return PAdic(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PAdic(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return PAdic(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return PAdic(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise ZeroDivisionError("division by zero in Q_p")
        return PAdic(self.value / d, self.p)

    def __rtruediv__(self, other):
        if self.value == 0:
            raise ZeroDivisionError("division by zero in Q_p")
        return PAdic(self._coerce(other) / self.value, self.p)

    def __neg__(self):
        return PAdic(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0 and self.value == 0:
            raise ZeroDivisionError("negative power of zero")
        return PAdic(self.value ** n, self.p)

    def __eq__(self, other):
        if isinstance(other, PAdic):
            return self.p == other.p and self.value == other.value
        try:
            return self.value == as_fraction(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def val(self):
        return val(self.value, self.p)

    def lognorm(self):
        return lognorm(self.value, self.p)

    def __repr__(self):
        return f"PAdic({self.value}, p={self.p})"


def format_rational(x) -> str:
    """Serialize as ``"num/den"``; infinities become ``"inf"`` / ``"-inf"``."""
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    """Inverse of :func:`format_rational`; also accepts ints and ``"3"``."""
    if isinstance(s, str):
        s = s.strip()
        if s in ("inf", "+inf"):
            return INF
        if s == "-inf":
            return NEG_INF
    if isinstance(s, float):
        if math.isinf(s):
            return s
        raise TypeError("floats are not exact; pass a 'num/den' string")
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    return as_fraction(s)
