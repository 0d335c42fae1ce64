"""Laurent polynomials and rational functions over Q, viewed inside Q_p.

Both types are immutable.  The prime is carried along so that norms can be
taken without extra arguments; arithmetic between different primes is an
error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .valued import as_fraction, lognorm


def _check_same_prime(a: int, b: int) -> int:
    if a != b:
        raise ValueError(f"mixed primes {a} and {b}")
    return a


class LaurentPoly:
    """Finite Laurent sum ``sum a_n z**n`` with exact rational coefficients."""

    __slots__ = ("_terms", "p")

    def __init__(self, terms: Mapping[int, object] | Iterable[Tuple[int, object]] = (), p: int = 2):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[int, Fraction] = {}
        for n, c in items:
            if not isinstance(n, int) or isinstance(n, bool):
                raise TypeError(f"exponent must be an int, got {n!r}")
            acc[n] = acc.get(n, Fraction(0)) + as_fraction(c)
        self._terms: Tuple[Tuple[int, Fraction], ...] = tuple(
            sorted((n, c) for n, c in acc.items() if c != 0)
        )
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"p must be an integer >= 2, got {p!r}")
        self.p = p

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, terms: Tuple[Tuple[int, Fraction], ...], p: int) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.p = p
        return obj

    @classmethod
    def monomial(cls, c, n: int, p: int) -> "LaurentPoly":
        return cls({n: c}, p)

    @classmethod
    def constant(cls, c, p: int) -> "LaurentPoly":
        return cls({0: c}, p)

    @classmethod
    def z(cls, p: int) -> "LaurentPoly":
        return cls({1: 1}, p)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, p: int, offset: int = 0) -> "LaurentPoly":
        """Ascending coefficient list starting at exponent ``offset``."""
        return cls({offset + i: c for i, c in enumerate(coeffs)}, p)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self._terms)

    def support(self) -> Tuple[int, ...]:
        return tuple(n for n, _ in self._terms)

    def coeff(self, n: int) -> Fraction:
        for m, c in self._terms:
            if m == n:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def is_constant(self) -> bool:
        return all(n == 0 for n, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient_points(self):
        """The cloud ``(n, log_p|a_n|)`` used for Newton polygons and norms."""
        return [(n, lognorm(c, self.p)) for n, c in self._terms]

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _check_same_prime(self.p, other.p)
            return other
        return LaurentPoly.constant(as_fraction(other), self.p)

    def __add__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        other = self._lift(other)
        acc = dict(self._terms)
        for n, c in other._terms:
            acc[n] = acc.get(n, Fraction(0)) + c
        return LaurentPoly(acc, self.p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(tuple((n, -c) for n, c in self._terms), self.p)

    def __sub__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        other = self._lift(other)
        acc: Dict[int, Fraction] = {}
        for n, a in self._terms:
            for m, b in other._terms:
                acc[n + m] = acc.get(n + m, Fraction(0)) + a * b
        return LaurentPoly(acc, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RationalFn(self, other)

    def __rtruediv__(self, other):
        return RationalFn(self._lift(other), self)

    def __pow__(self, e: int):
        if e < 0:
            return RationalFn(LaurentPoly.constant(1, self.p), self ** (-e))
        out = LaurentPoly.constant(1, self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.p == other.p and self._terms == other._terms
        if isinstance(other, RationalFn):
            return other == self
        try:
            return self._terms == LaurentPoly.constant(as_fraction(other), self.p)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self._terms, self.p))

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by ``z**s``."""
        return LaurentPoly._raw(tuple((n + s, c) for n, c in self._terms), self.p)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly({n: a * as_fraction(c) for n, a in self._terms}, self.p)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({n - 1: n * c for n, c in self._terms if n != 0}, self.p)

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``z -> 1/z`` (negate every exponent)."""
        return LaurentPoly._raw(tuple(sorted((-n, c) for n, c in self._terms)), self.p)

    def substitute_power(self, d: int) -> "LaurentPoly":
        """Substitute ``z -> z**d``."""
        return LaurentPoly({n * d: c for n, c in self._terms}, self.p)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        if x == 0 and self._terms and self._terms[0][0] < 0:
            raise ZeroDivisionError("Laurent polynomial has a pole at 0")
        return sum((c * x ** n for n, c in self._terms), Fraction(0))

    def __repr__(self):
        if not self._terms:
            return f"LaurentPoly(0, p={self.p})"
        parts = []
        for n, c in reversed(self._terms):
            if n == 0:
                parts.append(f"{c}")
            elif n == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{n}")
        return f"LaurentPoly({' + '.join(parts)}, p={self.p})"


# -- polynomial gcd (ascending coefficient lists, lowest exponent 0) ------


def _to_dense(f: LaurentPoly) -> list:
    lo = f.min_exp
    out = [Fraction(0)] * (f.max_exp - lo + 1)
    for n, c in f.items():
        out[n - lo] = c
    return out


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        _trim(a)
    return a


def _poly_quo(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    while a and len(a) - 1 >= db:
        c = a[-1] / lead
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        _trim(a)
    if any(x != 0 for x in a):
        raise ArithmeticError("inexact polynomial division")
    return q


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    lead = a[-1]
    return [c / lead for c in a]


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Monic gcd of the monomial-free parts of ``f`` and ``g``.

    Laurent polynomials are units times polynomials with nonzero constant
    term, so the gcd is only defined up to monomials; we return the
    representative with lowest exponent 0 and leading coefficient 1.
    """
    p = _check_same_prime(f.p, g.p)
    if f.is_zero() or g.is_zero():
        raise ValueError("gcd with zero is not used here")
    return LaurentPoly.from_coeffs(_poly_gcd(_to_dense(f), _to_dense(g)), p)


def laurent_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """``f / g`` assuming ``g`` divides ``f`` up to a monomial factor."""
    q = _poly_quo(_to_dense(f), _to_dense(g))
    return LaurentPoly.from_coeffs(q, f.p, offset=f.min_exp - g.min_exp)


class RationalFn:
    """Quotient ``num / den`` of Laurent polynomials.

    Stored in canonical form: the denominator has lowest exponent 0 with
    coefficient 1 there (any monomial factor is moved to the numerator).
    Common non-monomial factors are *not* removed eagerly since norms do not
    care; :meth:`reduced` does a full gcd reduction when zeros and poles
    matter.
    """

    __slots__ = ("num", "den", "p", "_reduced")

    def __init__(self, num, den=None, p: int | None = None):
        if isinstance(num, RationalFn) and den is None:
            self.num, self.den, self.p = num.num, num.den, num.p
            self._reduced = num._reduced
            return
        if p is None:
            p = num.p if isinstance(num, LaurentPoly) else den.p if isinstance(den, LaurentPoly) else None
            if p is None:
                raise ValueError("prime must be given for constant rational functions")
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(as_fraction(num), p)
        if den is None:
            den = LaurentPoly.constant(1, p)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(as_fraction(den), p)
        _check_same_prime(num.p, den.p)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        lo = den.min_exp
        lead = den.coeff(lo)
        den = den.shift(-lo)
        num = num.shift(-lo)
        if lead != 1:
            inv = 1 / lead
            den = den.scale(inv)
            num = num.scale(inv)
        self.num: LaurentPoly = num
        self.den: LaurentPoly = den
        self.p: int = num.p
        self._reduced = None

    @classmethod
    def coerce(cls, x, p: int | None = None) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        return cls(LaurentPoly.constant(as_fraction(x), p))

    # -- normal forms -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def reduced(self) -> "RationalFn":
        """Lowest-terms representative (gcd of numerator and denominator removed)."""
        if self._reduced is not None:
            return self._reduced
        if self.num.is_zero():
            out = RationalFn(LaurentPoly({}, self.p), LaurentPoly.constant(1, self.p))
        elif self.den.is_monomial():
            out = self
        else:
            g = laurent_gcd(self.num, self.den)
            if g.max_exp == 0:
                out = self
            else:
                out = RationalFn(laurent_exact_div(self.num, g), laurent_exact_div(self.den, g))
        out._reduced = out
        self._reduced = out
        return out

    def is_laurent(self) -> bool:
        r = self.reduced()
        return r.den.is_monomial()

    def as_laurent(self) -> LaurentPoly:
        r = self.reduced()
        if not r.den.is_monomial():
            raise ValueError("not a Laurent polynomial")
        return r.num

    def is_constant(self) -> bool:
        r = self.reduced()
        return r.num.is_constant() and r.den.is_constant()

    def order_at_zero(self) -> int:
        """Order of vanishing at the origin (negative for a pole)."""
        if self.num.is_zero():
            raise ValueError("zero function has no order")
        return self.num.min_exp

    def exponents(self) -> Tuple[int, ...]:
        """Exponents occurring in the reduced numerator and denominator."""
        r = self.reduced()
        return tuple(sorted(set(r.num.support()) | set(r.den.support())))

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            _check_same_prime(self.p, other.p)
            return other
        if isinstance(other, LaurentPoly):
            _check_same_prime(self.p, other.p)
            return RationalFn(other)
        return RationalFn(LaurentPoly.constant(as_fraction(other), self.p))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of the zero function")
            return RationalFn(self.den ** (-e), self.num ** (-e))
        return RationalFn(self.num ** e, self.den ** e)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    # -- calculus and substitution ---------------------------------------

    def derivative(self) -> "RationalFn":
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFn(n.derivative(), d)
        return RationalFn(n.derivative() * d - n * d.derivative(), d * d)

    def nth_derivative(self, k: int) -> "RationalFn":
        """k-th derivative, kept in the form ``N_k / den**(k+1)``.

        Iterating the quotient rule would square the denominator each time.
        """
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        if k == 0:
            return self
        n, d = self.num, self.den
        if d.is_constant():
            for _ in range(k):
                n = n.derivative()
            return RationalFn(n, d)
        dd = d.derivative()
        # d/dz (N / D**j) = (N' D - j N D') / D**(j+1)
        for j in range(1, k + 1):
            n = n.derivative() * d - n * dd * j
        return RationalFn(n, d ** (k + 1))

    def invert_variable(self) -> "RationalFn":
        return RationalFn(self.num.invert_variable(), self.den.invert_variable())

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        r = self.reduced()
        if x == 0:
            s = r.order_at_zero() if not r.num.is_zero() else 0
            if s < 0:
                raise ZeroDivisionError("pole at 0")
            return r.num.coeff(0) / r.den.coeff(0)
        d = r.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return r.num(x) / d

    def __repr__(self):
        if self.den.is_constant():
            return f"RationalFn({self.num!r})"
        return f"RationalFn({self.num!r} / {self.den!r})"
