"""Proximity, counting and characteristic functions on annuli, and checks.

Every function of the radius is returned as a :class:`PiecewiseLinearFn` of
the log-radius ``t`` (base p).  In that variable the ``dt/t`` integrals of
the counting function become integrals of integer step functions, so all
results are exact.

Counting functions are taken relative to the inner edge of the window:
zeros of log-radius ``s`` in ``[t_low, t]`` contribute ``t - s``.  On a disk
window (``t_low = -inf``) a zero of order ``d`` at the origin contributes
``d * t`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .annulus import (
    AnnulusWindow,
    has_divisor_inside,
    kK,
    norm_profile,
    zeros_and_poles,
)
from .errors import DomainError
from .piecewise import PiecewiseLinearFn, pl_sum
from .series import LaurentPoly, RationalFn
from .valued import INF, NEG_INF, PAdic, as_fraction

Target = Union[Fraction, int, str, float, PAdic]


def _rational(f) -> RationalFn:
    return f if isinstance(f, RationalFn) else RationalFn(f)


def _target(a):
    """Normalize a target value: a Fraction, or ``INF`` for the point at infinity."""
    if isinstance(a, PAdic):
        return a.value
    if a == INF or a == "inf":
        return INF
    return as_fraction(a)


def _shifted(f: RationalFn, a) -> RationalFn:
    g = f - a
    if g.is_zero():
        raise DomainError("f-not-identically-a", f"f is the constant {a}")
    return g


def proximity(f, a, window: AnnulusWindow) -> PiecewiseLinearFn:
    f, a = _rational(f), _target(a)
    if a == INF:
        return norm_profile(f, window).positive_part()
    return (-norm_profile(_shifted(f, a), window)).positive_part()


def _counting_from_divisor(points, window: AnnulusWindow) -> PiecewiseLinearFn:
    lo, hi = window.t_low, window.t_high
    parts = []
    for t, mult in points:
        if t == NEG_INF:
            if window.is_disk:
                parts.append(PiecewiseLinearFn.affine(lo, hi, mult, 0))
        elif t >= lo:
            parts.append(PiecewiseLinearFn.hinge(lo, hi, t, mult))
    return pl_sum(parts, lo, hi)


def counting(f, a, window: AnnulusWindow) -> PiecewiseLinearFn:
    """Integrated count of solutions of ``f = a`` (poles when ``a`` is infinity)."""
    f, a = _rational(f), _target(a)
    if a == INF:
        if f.is_zero():
            raise DomainError("f-not-identically-a", "zero function")
        _, points = zeros_and_poles(f)
    else:
        points, _ = zeros_and_poles(_shifted(f, a))
    return _counting_from_divisor(points, window)


def characteristic(f, window: AnnulusWindow) -> PiecewiseLinearFn:
    f = _rational(f)
    if f.is_zero():
        raise DomainError("nonzero-function", "characteristic of the zero function")
    return proximity(f, INF, window) + counting(f, INF, window)


@dataclass(frozen=True)
class NevanlinnaReport:
    m: PiecewiseLinearFn
    N: PiecewiseLinearFn
    T: PiecewiseLinearFn
    a: object
    window: AnnulusWindow


def nevanlinna_report(f, a, window: AnnulusWindow) -> NevanlinnaReport:
    f = _rational(f)
    return NevanlinnaReport(
        m=proximity(f, a, window),
        N=counting(f, a, window),
        T=characteristic(f, window),
        a=_target(a),
        window=window,
    )


def jensen_identity_check(f: LaurentPoly, window: AnnulusWindow) -> PiecewiseLinearFn:
    """Residual of the Jensen formula; identically zero when the theory is consistent.

    The norm side comes from the tropical polynomial, the zero side from the
    Newton polygon, so the two routes are computed independently.
    """
    if isinstance(f, RationalFn):
        f = f.as_laurent()
    if f.is_zero():
        raise DomainError("nonzero-function", "Jensen formula for the zero function")
    if window.is_disk:
        raise DomainError("finite-window-base", "Jensen check needs a finite inner log-radius")
    t1 = window.t_low
    G = norm_profile(f, window)
    k1, _ = kK(f, t1)
    g1 = G(t1)
    base = PiecewiseLinearFn.affine(window.t_low, window.t_high, k1, g1 - k1 * t1)
    return G - base - counting(f, 0, window)


def exponent_spread(f) -> int:
    exps = _rational(f).exponents()
    return exps[-1] - exps[0]


def fmt_residual(f, a, window: AnnulusWindow) -> PiecewiseLinearFn:
    """``T - m(a) - N(a)`` on the window."""
    f = _rational(f)
    return characteristic(f, window) - proximity(f, a, window) - counting(f, a, window)


def fmt_check(f, a, window: AnnulusWindow) -> Tuple[bool, PiecewiseLinearFn]:
    """Check the error term of the First Main Theorem.

    On every window the residual's slopes must be bounded by the exponent
    spread of ``f`` (the ``O(log r)`` statement).  On a disk window the
    residual must in addition be bounded as ``t -> -inf``, i.e. have
    leftmost slope 0.
    """
    res = fmt_residual(f, a, window)
    bound = exponent_spread(f)
    holds = all(abs(s) <= bound for s in res.slopes)
    if window.is_disk:
        holds = holds and res.leftmost_slope == 0
    return holds, res


def ldl_check(f, k: int, window: AnnulusWindow) -> Tuple[bool, Optional[PiecewiseLinearFn]]:
    """Check ``|f^(k) / f|_r <= r**-k`` exactly on the window.

    Returns ``(holds, margin)`` with ``margin(t) = -k t - log_p|f^(k)/f|``.
    When ``f^(k) = 0`` the inequality holds vacuously and the margin is None.
    """
    f = _rational(f)
    if k < 1:
        raise DomainError("positive-order", f"k must be >= 1, got {k}")
    if f.is_constant():
        raise DomainError("nonconstant", "the lemma needs a nonconstant function")
    fk = f.nth_derivative(k)
    if fk.is_zero():
        return True, None
    g = fk / f
    margin = PiecewiseLinearFn.affine(window.t_low, window.t_high, -k, 0) - norm_profile(g, window)
    return margin.infimum() >= 0, margin


def dlog_check(f, k: int, window: AnnulusWindow) -> Tuple[bool, object]:
    """Smallest ``C`` with ``log_p|d^k log f|_r <= C - k t`` on the window.

    ``holds`` is False exactly when no finite constant works (``C = inf``).
    """
    from .jets import log_derivatives

    f = _rational(f)
    if k < 1:
        raise DomainError("positive-order", f"k must be >= 1, got {k}")
    if f.is_constant():
        raise DomainError("nonconstant", "the lemma needs a nonconstant function")
    if has_divisor_inside(f, window):
        raise DomainError("no-divisor-in-window", "f has a zero or pole strictly inside the window")
    d = log_derivatives(f, k)[-1]
    if d.is_zero():
        return True, NEG_INF
    excess = norm_profile(d, window) + PiecewiseLinearFn.affine(window.t_low, window.t_high, k, 0)
    C = excess.supremum()
    return C != INF, C


def is_log_growth(T: PiecewiseLinearFn) -> Tuple[bool, Fraction]:
    """``T(t) = O(t)`` as ``t -> inf``; returns the final slope as the certificate."""
    if T.hi != INF:
        raise DomainError("unbounded-above", "growth is only meaningful on windows unbounded above")
    return True, T.final_slope
