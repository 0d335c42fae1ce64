"""Continuous piecewise-linear functions of the log-radius with exact data."""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Callable, List, Sequence

from .valued import INF, NEG_INF, as_fraction


def _ext(x):
    """Exact rational, or a float infinity for an unbounded end."""
    if x == INF or x == NEG_INF:
        return x
    return as_fraction(x)


def _interior(a, b) -> Fraction:
    if a == NEG_INF and b == INF:
        return Fraction(0)
    if a == NEG_INF:
        return b - 1
    if b == INF:
        return a + 1
    return (a + b) / 2


class PiecewiseLinearFn:
    """Continuous function on ``[lo, hi]`` that is affine between breakpoints.

    ``breaks`` lie strictly inside the domain, ``slopes[i]`` is the slope on
    the i-th segment, and the function is pinned by one value.  Adjacent
    segments with equal slope are merged, so two functions are equal iff
    their stored data agree.
    """

    __slots__ = ("lo", "hi", "breaks", "slopes", "anchor_t", "anchor_value", "_vals")

    def __init__(self, lo, hi, breaks: Sequence, slopes: Sequence, anchor_t, anchor_value):
        lo, hi = _ext(lo), _ext(hi)
        if lo == INF or hi == NEG_INF or lo > hi:
            raise ValueError(f"invalid domain [{lo}, {hi}]")
        breaks = [as_fraction(b) for b in breaks]
        slopes = [as_fraction(s) for s in slopes]
        if len(slopes) != len(breaks) + 1:
            raise ValueError("need exactly one more slope than breakpoints")
        for a, b in zip(breaks, breaks[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        if breaks and not (lo < breaks[0] and breaks[-1] < hi):
            raise ValueError("breakpoints must lie strictly inside the domain")
        anchor_t, anchor_value = as_fraction(anchor_t), as_fraction(anchor_value)

        # pin the value at the first breakpoint (or at the anchor) before merging
        if breaks:
            v0 = anchor_value + _integrate(breaks, slopes, anchor_t, breaks[0])
            vals = [v0]
            for i in range(1, len(breaks)):
                vals.append(vals[-1] + slopes[i] * (breaks[i] - breaks[i - 1]))
            keep_b, keep_v, keep_s = [], [], [slopes[0]]
            for i, b in enumerate(breaks):
                if slopes[i + 1] != keep_s[-1]:
                    keep_b.append(b)
                    keep_v.append(vals[i])
                    keep_s.append(slopes[i + 1])
            if keep_b:
                breaks, slopes, vals = keep_b, keep_s, keep_v
                anchor_t, anchor_value = breaks[0], vals[0]
            else:
                anchor_value = v0
                anchor_t = breaks[0]
                breaks, slopes, vals = [], keep_s, []
        else:
            vals = []
        if not breaks:
            ref = lo if lo != NEG_INF else hi if hi != INF else Fraction(0)
            anchor_value = anchor_value + slopes[0] * (ref - anchor_t)
            anchor_t = ref
        self.lo = lo
        self.hi = hi
        self.breaks = tuple(breaks)
        self.slopes = tuple(slopes)
        self.anchor_t = anchor_t
        self.anchor_value = anchor_value
        self._vals = tuple(vals)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, lo, hi, c) -> "PiecewiseLinearFn":
        return cls(lo, hi, [], [0], 0, c)

    @classmethod
    def affine(cls, lo, hi, slope, intercept) -> "PiecewiseLinearFn":
        """``t -> intercept + slope * t``."""
        return cls(lo, hi, [], [slope], 0, intercept)

    @classmethod
    def hinge(cls, lo, hi, corner, mult=1) -> "PiecewiseLinearFn":
        """``t -> mult * max(0, t - corner)``."""
        lo, hi, corner = _ext(lo), _ext(hi), as_fraction(corner)
        if corner <= lo:
            return cls(lo, hi, [], [mult], corner, 0)
        if corner >= hi:
            return cls.constant(lo, hi, 0)
        return cls(lo, hi, [corner], [0, mult], corner, 0)

    # -- evaluation -------------------------------------------------------

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        if not (self.lo <= t <= self.hi):
            raise ValueError(f"t={t} outside domain [{self.lo}, {self.hi}]")
        return self._eval(t)

    def _eval(self, t: Fraction) -> Fraction:
        if not self.breaks:
            return self.anchor_value + self.slopes[0] * (t - self.anchor_t)
        i = bisect_right(self.breaks, t)
        if i == 0:
            return self._vals[0] + self.slopes[0] * (t - self.breaks[0])
        return self._vals[i - 1] + self.slopes[i] * (t - self.breaks[i - 1])

    def slope_right(self, t) -> Fraction:
        """Right derivative at ``t`` (the last slope at ``hi``)."""
        return self.slopes[bisect_right(self.breaks, as_fraction(t))]

    def slope_left(self, t) -> Fraction:
        t = as_fraction(t)
        i = bisect_right(self.breaks, t)
        if i and self.breaks[i - 1] == t:
            i -= 1
        return self.slopes[i]

    @property
    def leftmost_slope(self) -> Fraction:
        return self.slopes[0]

    @property
    def final_slope(self) -> Fraction:
        return self.slopes[-1]

    def values_at_breaks(self):
        return tuple(zip(self.breaks, self._vals))

    def critical_points(self) -> List[Fraction]:
        """Finite domain ends plus breakpoints, ascending."""
        pts = list(self.breaks)
        if self.lo != NEG_INF:
            pts.insert(0, self.lo)
        if self.hi != INF and self.hi != self.lo:
            pts.append(self.hi)
        return pts

    def supremum(self):
        """Exact supremum over the domain (``inf`` if unbounded above)."""
        if self.lo == NEG_INF and self.slopes[0] < 0:
            return INF
        if self.hi == INF and self.slopes[-1] > 0:
            return INF
        pts = self.critical_points()
        if not pts:
            return self.anchor_value
        return max(self._eval(t) for t in pts)

    def infimum(self):
        if self.lo == NEG_INF and self.slopes[0] > 0:
            return NEG_INF
        if self.hi == INF and self.slopes[-1] < 0:
            return NEG_INF
        pts = self.critical_points()
        if not pts:
            return self.anchor_value
        return min(self._eval(t) for t in pts)

    def argmin(self):
        """A point where the infimum is attained, or None when it is not."""
        inf = self.infimum()
        if inf == NEG_INF:
            return None
        pts = self.critical_points() or [self.anchor_t]
        for t in pts:
            if self._eval(t) == inf:
                return t
        return None

    def argmax(self):
        sup = self.supremum()
        if sup == INF:
            return None
        pts = self.critical_points() or [self.anchor_t]
        for t in pts:
            if self._eval(t) == sup:
                return t
        return None

    def is_identically(self, c) -> bool:
        return not self.breaks and self.slopes[0] == 0 and self.anchor_value == as_fraction(c)

    def restrict(self, lo, hi) -> "PiecewiseLinearFn":
        lo, hi = _ext(lo), _ext(hi)
        if lo < self.lo or hi > self.hi:
            raise ValueError("restriction must shrink the domain")
        keep = [i for i, b in enumerate(self.breaks) if lo < b < hi]
        if keep:
            slopes = [self.slopes[keep[0]]] + [self.slopes[i + 1] for i in keep]
            b0 = self.breaks[keep[0]]
            return PiecewiseLinearFn(lo, hi, [self.breaks[i] for i in keep], slopes, b0, self._eval(b0))
        ref = _interior(lo, hi) if lo != hi else lo
        return PiecewiseLinearFn(lo, hi, [], [self.slope_right(ref)], ref, self._eval(ref))

    # -- algebra ----------------------------------------------------------

    def _coerce(self, other) -> "PiecewiseLinearFn":
        if isinstance(other, PiecewiseLinearFn):
            if (other.lo, other.hi) != (self.lo, self.hi):
                raise ValueError("piecewise-linear functions on different domains")
            return other
        return PiecewiseLinearFn.constant(self.lo, self.hi, as_fraction(other))

    def _combine(self, other, pick: Callable, crossings: bool) -> "PiecewiseLinearFn":
        g = self._coerce(other)
        knots = sorted(set(self.breaks) | set(g.breaks))
        if crossings:
            extra = []
            pts = [self.lo] + knots + [self.hi]
            for a, b in zip(pts, pts[1:]):
                r = _interior(a, b)
                fs, gs = self.slope_right(r), g.slope_right(r)
                if fs != gs:
                    tc = r - (self._eval(r) - g._eval(r)) / (fs - gs)
                    if a < tc < b:
                        extra.append(tc)
            knots = sorted(set(knots) | set(extra))
        pts = [self.lo] + knots + [self.hi]
        slopes = []
        ref_t = ref_v = None
        for a, b in zip(pts, pts[1:]):
            r = _interior(a, b)
            v, s = pick(self._eval(r), self.slope_right(r), g._eval(r), g.slope_right(r))
            slopes.append(s)
            if ref_t is None:
                ref_t, ref_v = r, v
        return PiecewiseLinearFn(self.lo, self.hi, knots, slopes, ref_t, ref_v)

    def __add__(self, other):
        return self._combine(other, lambda fv, fs, gv, gs: (fv + gv, fs + gs), False)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda fv, fs, gv, gs: (fv - gv, fs - gs), False)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "PiecewiseLinearFn":
        c = as_fraction(c)
        return PiecewiseLinearFn(
            self.lo, self.hi, self.breaks if c else [],
            [c * s for s in self.slopes] if c else [0],
            self.anchor_t, c * self.anchor_value,
        )

    def __mul__(self, c):
        if isinstance(c, PiecewiseLinearFn):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def maximum(self, other) -> "PiecewiseLinearFn":
        def pick(fv, fs, gv, gs):
            return (fv, fs) if fv >= gv else (gv, gs)
        return self._combine(other, pick, True)

    def minimum(self, other) -> "PiecewiseLinearFn":
        def pick(fv, fs, gv, gs):
            return (fv, fs) if fv <= gv else (gv, gs)
        return self._combine(other, pick, True)

    def positive_part(self) -> "PiecewiseLinearFn":
        return self.maximum(0)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLinearFn):
            return NotImplemented
        return (
            self.lo == other.lo and self.hi == other.hi
            and self.breaks == other.breaks and self.slopes == other.slopes
            and self.anchor_t == other.anchor_t and self.anchor_value == other.anchor_value
        )

    def __hash__(self):
        return hash((self.lo, self.hi, self.breaks, self.slopes, self.anchor_t, self.anchor_value))

    def __repr__(self):
        return (
            f"PiecewiseLinearFn([{self.lo}, {self.hi}], breaks={list(map(str, self.breaks))}, "
            f"slopes={list(map(str, self.slopes))}, f({self.anchor_t})={self.anchor_value})"
        )


def _integrate(breaks, slopes, t0: Fraction, t1: Fraction) -> Fraction:
    """Integral of the slope function from t0 to t1 (signed)."""
    if t1 < t0:
        return -_integrate(breaks, slopes, t1, t0)
    total = Fraction(0)
    edges = [NEG_INF] + list(breaks) + [INF]
    for i, s in enumerate(slopes):
        a, b = max(edges[i], t0), min(edges[i + 1], t1)
        if a < b:
            total += s * (b - a)
    return total


def pl_sum(fns: Sequence[PiecewiseLinearFn], lo, hi) -> PiecewiseLinearFn:
    out = PiecewiseLinearFn.constant(lo, hi, 0)
    for f in fns:
        out = out + f
    return out
