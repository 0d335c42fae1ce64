"""Gauss norms, Newton polygons and zero counting on p-adic annuli.

Radii are always given as exact log-radii ``t`` (so ``r = p**t``), and norms
are returned as ``log_p |f|_r``.  For a Laurent polynomial this is the
tropical polynomial ``max_n (log_p|a_n| + n t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple, Union

from .errors import DomainError
from .piecewise import PiecewiseLinearFn
from .series import LaurentPoly, RationalFn
from .valued import INF, NEG_INF, as_fraction, lognorm

Function = Union[LaurentPoly, RationalFn]


def _ext(x):
    if x == INF or x == NEG_INF:
        return x
    return as_fraction(x)


@dataclass(frozen=True)
class AnnulusWindow:
    """The annulus ``p**t_low <= |z| <= p**t_high``; ``t_low = -inf`` is a disk."""

    t_low: object = NEG_INF
    t_high: object = INF

    def __post_init__(self):
        lo, hi = _ext(self.t_low), _ext(self.t_high)
        if lo == INF or hi == NEG_INF or lo > hi:
            raise DomainError("window-order", f"need t_low <= t_high, got [{lo}, {hi}]")
        object.__setattr__(self, "t_low", lo)
        object.__setattr__(self, "t_high", hi)

    @property
    def is_disk(self) -> bool:
        return self.t_low == NEG_INF

    @property
    def is_bounded(self) -> bool:
        return self.t_low != NEG_INF and self.t_high != INF

    def contains(self, t) -> bool:
        return self.t_low <= t <= self.t_high

    def interior_contains(self, t) -> bool:
        return self.t_low < t < self.t_high

    def reflect(self) -> "AnnulusWindow":
        return AnnulusWindow(-self.t_high, -self.t_low)


class TropPoly:
    """Max-plus polynomial ``t -> max_n (c_n + n t)`` with integer slopes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object]):
        if not terms:
            raise DomainError("nonzero-function", "tropical polynomial needs at least one term")
        self.terms: Dict[int, Fraction] = {int(n): as_fraction(c) for n, c in terms.items()}

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "TropPoly":
        if f.is_zero():
            raise DomainError("nonzero-function", "the zero function has no finite norm")
        return cls({n: lognorm(c, f.p) for n, c in f.items()})

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        return max(c + n * t for n, c in self.terms.items())

    def argmax_range(self, t) -> Tuple[int, int]:
        """Smallest and largest slope attaining the max at ``t``."""
        if t == NEG_INF:
            n = min(self.terms)
            return n, n
        if t == INF:
            n = max(self.terms)
            return n, n
        t = as_fraction(t)
        best = self(t)
        hits = [n for n, c in self.terms.items() if c + n * t == best]
        return min(hits), max(hits)

    def vertices(self) -> List[Tuple[int, Fraction]]:
        return upper_hull(sorted(self.terms.items()))

    def breakpoints(self) -> List[Fraction]:
        v = self.vertices()
        return [-(c2 - c1) / (n2 - n1) for (n1, c1), (n2, c2) in zip(v, v[1:])]

    def to_piecewise(self, lo=NEG_INF, hi=INF) -> PiecewiseLinearFn:
        v = self.vertices()
        breaks = self.breakpoints()
        slopes = [n for n, _ in v]
        if breaks:
            anchor_t = breaks[0]
            anchor_v = v[0][1] + v[0][0] * anchor_t
        else:
            anchor_t, anchor_v = Fraction(0), v[0][1]
        full = PiecewiseLinearFn(NEG_INF, INF, breaks, slopes, anchor_t, anchor_v)
        if lo == NEG_INF and hi == INF:
            return full
        return full.restrict(lo, hi)

    def __eq__(self, other):
        if not isinstance(other, TropPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        body = ", ".join(f"({n}, {c})" for n, c in sorted(self.terms.items()))
        return f"TropPoly[{body}]"


def upper_hull(points: List[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    """Upper convex hull of points with distinct, ascending abscissae."""
    hull: List[Tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            # drop the middle point unless the turn is strictly clockwise
            if (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    """Upper hull of ``(n, log_p|a_n|)``; edge slope ``s`` means zeros of log-radius ``-s``."""

    vertices: Tuple[Tuple[int, Fraction], ...]

    def slopes(self) -> List[Fraction]:
        v = self.vertices
        return [(c2 - c1) / (n2 - n1) for (n1, c1), (n2, c2) in zip(v, v[1:])]

    def zero_radii(self) -> List[Tuple[Fraction, int]]:
        """``(log-radius, multiplicity)`` for the nonzero roots, ascending in radius."""
        v = self.vertices
        return [(-(c2 - c1) / (n2 - n1), n2 - n1) for (n1, c1), (n2, c2) in zip(v, v[1:])]


def _as_rational(f) -> RationalFn:
    return f if isinstance(f, RationalFn) else RationalFn(f)


def gauss_norm(f: LaurentPoly, t):
    """``log_p |f|_{p^t}``; ``-inf`` for the zero polynomial."""
    if f.is_zero():
        return NEG_INF
    t = as_fraction(t)
    return max(lognorm(c, f.p) + n * t for n, c in f.items())


def lognorm_fn(f: LaurentPoly) -> TropPoly:
    return TropPoly.from_laurent(f)


def gauss_norm_rational(f: Function, t):
    f = _as_rational(f)
    return gauss_norm(f.num, t) - gauss_norm(f.den, t)


def norm_profile(f: Function, window: AnnulusWindow) -> PiecewiseLinearFn:
    """``t -> log_p |f|_{p^t}`` on the window as a piecewise-linear function."""
    f = _as_rational(f)
    if f.is_zero():
        raise DomainError("nonzero-function", "log-norm of the zero function is -inf")
    lo, hi = window.t_low, window.t_high
    num = TropPoly.from_laurent(f.num).to_piecewise(lo, hi)
    if f.den.is_constant():
        return num - gauss_norm(f.den, 0)
    return num - TropPoly.from_laurent(f.den).to_piecewise(lo, hi)


def kK(f: LaurentPoly, t) -> Tuple[int, int]:
    """Least and greatest index attaining the Gauss norm at log-radius ``t``.

    At ``t = -inf`` (radius 0) this returns ``(0, lowest exponent)``, which is
    the usual convention when f(0) = 0 and the limiting argmax otherwise.
    """
    if f.is_zero():
        raise DomainError("nonzero-function", "k and K are undefined for the zero function")
    if t == NEG_INF:
        if f.min_exp < 0:
            raise DomainError("analytic-at-origin", "negative exponents on a window reaching radius 0")
        return 0, f.min_exp
    return TropPoly.from_laurent(f).argmax_range(t)


def newton_polygon(f: LaurentPoly) -> NewtonPolygon:
    if f.is_zero():
        raise DomainError("nonzero-function", "the zero function has no Newton polygon")
    return NewtonPolygon(tuple(upper_hull(f.coefficient_points())))


def count_zeros(f: LaurentPoly, window: AnnulusWindow) -> int:
    """Zeros of ``f`` in the closed annulus, with multiplicity."""
    _, K = kK(f, window.t_high)
    k, _ = kK(f, window.t_low)
    return K - k


def invert_variable(f: Function, window: AnnulusWindow):
    """Substitute ``z -> 1/z`` and reflect the window ``t -> -t``."""
    return _as_rational(f).invert_variable(), window.reflect()


def root_radii(f: LaurentPoly) -> List[Tuple[object, int]]:
    """Log-radii of all roots of a Laurent polynomial with multiplicity.

    A root at the origin is reported with log-radius ``-inf``; a pole at the
    origin (negative lowest exponent) is not a root and is skipped.
    """
    out: List[Tuple[object, int]] = []
    if f.min_exp > 0:
        out.append((NEG_INF, f.min_exp))
    out.extend(newton_polygon(f).zero_radii())
    return out


def zeros_and_poles(f: Function):
    """``(zeros, poles)`` of ``f`` in lowest terms as ``(log-radius, mult)`` lists."""
    r = _as_rational(f).reduced()
    if r.is_zero():
        raise DomainError("nonzero-function", "the zero function has no divisor")
    num = r.num.shift(-r.num.min_exp)
    s = r.num.min_exp
    zeros = newton_polygon(num).zero_radii()
    poles = newton_polygon(r.den).zero_radii()
    if s > 0:
        zeros.insert(0, (NEG_INF, s))
    elif s < 0:
        poles.insert(0, (NEG_INF, -s))
    return zeros, poles


def has_divisor_inside(f: Function, window: AnnulusWindow) -> bool:
    """True if ``f`` has a zero or pole at a log-radius strictly inside the window."""
    zeros, poles = zeros_and_poles(f)
    return any(window.interior_contains(t) for t, _ in zeros + poles)
