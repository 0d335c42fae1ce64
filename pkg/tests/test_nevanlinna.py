import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nanev import (
    AnnulusWindow,
    DomainError,
    LaurentPoly,
    PiecewiseLinearFn,
    RationalFn,
    characteristic,
    counting,
    dlog_check,
    fmt_check,
    fmt_residual,
    is_log_growth,
    jensen_identity_check,
    ldl_check,
    nevanlinna_report,
    proximity,
)
from nanev.nevanlinna import exponent_spread
from nanev.valued import INF, NEG_INF, PAdic, lognorm

from conftest import laurents, primes, rand_nonconstant, rationals

DISK = AnnulusWindow()


def Z(p):
    return LaurentPoly.z(p)


def grid(lo, hi, den=3):
    return [Fraction(n, den) for n in range(int(lo * den), int(hi * den) + 1)]


def direct_norm(f: LaurentPoly, t):
    return max(lognorm(c, f.p) + n * t for n, c in f.items())


def direct_rational_norm(f: RationalFn, t):
    return direct_norm(f.num, t) - direct_norm(f.den, t)


def counting_oracle(factors, origin, t, t1):
    """N from an explicit list of zero log-radii; ``origin`` is the order at 0."""
    total = sum(t - r for r in factors if t1 <= r <= t)
    if t1 == NEG_INF:
        total += origin * t
    return total


def test_proximity_examples():
    p = 2
    assert proximity(Z(p), 0, DISK) == PiecewiseLinearFn.affine(NEG_INF, INF, -1, 0).positive_part()
    assert proximity(Z(p), "inf", DISK) == PiecewiseLinearFn.affine(NEG_INF, INF, 1, 0).positive_part()
    m = proximity(Z(p) + 2, 0, DISK)
    for t in grid(-5, 5):
        assert m(t) == min(max(0, -t), 1)
    assert sorted(m.breaks) == [-1, 0]
    with pytest.raises(DomainError):
        proximity(LaurentPoly.constant(3, p), 3, DISK)


def test_counting_examples():
    p = 2
    assert counting(Z(p), 0, DISK) == PiecewiseLinearFn.affine(NEG_INF, INF, 1, 0)
    N = counting(Z(p) ** 2 + 2 * Z(p), 0, AnnulusWindow(-2, 0))
    for t in grid(-2, 0):
        assert N(t) == max(0, t + 1)
    assert counting(Z(p) + 1, 0, AnnulusWindow(1, 4)).is_identically(0)


def test_characteristic_examples():
    p = 3
    assert characteristic(Z(p), DISK) == PiecewiseLinearFn.affine(NEG_INF, INF, 1, 0).positive_part()
    inv = RationalFn(LaurentPoly.constant(1, p), Z(p))
    assert characteristic(inv, AnnulusWindow(0, 3)).is_identically(0)
    assert characteristic(LaurentPoly.constant(Fraction(1, 9), p), DISK).is_identically(2)
    assert characteristic(LaurentPoly.constant(9, p), DISK).is_identically(0)


def test_report_consistency():
    p = 5
    f = RationalFn(Z(p) ** 2 - 5, Z(p) + Fraction(1, 5))
    rep = nevanlinna_report(f, PAdic(1, p), AnnulusWindow(-3, 3))
    assert rep.T == proximity(f, INF, rep.window) + counting(f, INF, rep.window)
    assert rep.a == 1


def test_jensen_examples():
    p = 2
    f = Z(p) ** 2 + 2 * Z(p)
    res = jensen_identity_check(f, AnnulusWindow(-2, 0))
    assert res.is_identically(0)
    assert jensen_identity_check(Z(p) ** 4, AnnulusWindow(-3, 1)).is_identically(0)
    for q in (2, 3, 5):
        assert jensen_identity_check((Z(q) - 1) * (Z(q) - q), AnnulusWindow(-2, 2)).is_identically(0)
    with pytest.raises(DomainError) as e:
        jensen_identity_check(f, DISK)
    assert e.value.precondition == "finite-window-base"


def test_fmt_examples():
    p = 2
    assert fmt_residual(Z(p), 0, DISK).is_identically(0)
    assert fmt_residual(Z(p), INF, DISK).is_identically(0)
    f = RationalFn((Z(p) - 1) * (Z(p) - 2), Z(p))
    holds, res = fmt_check(f, 0, AnnulusWindow(-3, INF))
    assert holds
    assert all(-3 <= s <= 3 for s in res.slopes)
    # brute-force the five functions on the breakpoint grid
    w = AnnulusWindow(-3, 4)
    res = fmt_residual(f, 0, w)
    for t in grid(-3, 4):
        G = direct_rational_norm(f, t)
        T = max(0, G) + counting_oracle([], 0, t, -3)  # f's only pole is the origin
        m0 = max(0, -G)
        N0 = counting_oracle([0, -1], 0, t, -3)
        assert res(t) == T - m0 - N0


def test_ldl_examples():
    holds, margin = ldl_check(Z(2), 1, DISK)
    assert holds and margin.is_identically(0)
    for n in (2, 3, 4, 6, 9):
        for p in (2, 3):
            holds, margin = ldl_check(Z(p) ** n, 1, DISK)
            assert holds and margin.is_identically(-lognorm(n, p))
    assert ldl_check(Z(2) + 2, 2, DISK) == (True, None)
    with pytest.raises(DomainError):
        ldl_check(LaurentPoly.constant(5, 5), 1, DISK)


def test_dlog_examples():
    assert dlog_check(Z(2), 1, DISK) == (True, 0)
    assert dlog_check(Z(3), 2, DISK) == (True, 0)
    assert dlog_check(Z(2) + 4, 1, AnnulusWindow(0, 5)) == (True, 0)
    with pytest.raises(DomainError) as e:
        dlog_check(Z(2) + 4, 1, AnnulusWindow(-5, 5))
    assert e.value.precondition == "no-divisor-in-window"


def test_dlog_constant_on_a_disk_window():
    # d log(1+z) = 1/(1+z) has norm 0 for t <= 0, so C = sup(t) = -1 on (-inf, -1]
    assert dlog_check(Z(2) + 1, 1, AnnulusWindow(NEG_INF, -1)) == (True, -1)
    # on [1, inf) the norm is -t and the bound is attained everywhere
    assert dlog_check(Z(2) + 1, 1, AnnulusWindow(1, INF)) == (True, 0)


def test_is_log_growth():
    assert is_log_growth(PiecewiseLinearFn.affine(NEG_INF, INF, 1, 0).positive_part()) == (True, 1)
    assert is_log_growth(PiecewiseLinearFn.constant(NEG_INF, INF, 5)) == (True, 0)
    assert is_log_growth(PiecewiseLinearFn.affine(0, INF, 7, 0)) == (True, 7)
    with pytest.raises(DomainError):
        is_log_growth(PiecewiseLinearFn.constant(0, 1, 0))


# -- properties ---------------------------------------------------------------


@st.composite
def windows(draw):
    if draw(st.booleans()):
        return DISK
    lo = draw(st.fractions(-6, 3, max_denominator=3))
    return AnnulusWindow(lo, lo + draw(st.integers(1, 8)))


@given(primes.flatmap(rationals), st.integers(-3, 3), windows())
@settings(max_examples=60, deadline=None)
def test_proximity_matches_direct_formula(f, a, w):
    if (f - a).is_zero():
        return
    m = proximity(f, a, w)
    g = (f - a).reduced()
    lo = -6 if w.is_disk else w.t_low
    for t in grid(lo, lo + 8, 2):
        if w.contains(t):
            assert m(t) == max(0, -direct_rational_norm(g, t))


def test_counting_matches_explicit_zeros():
    rng = random.Random(5)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        f, radii, origin = LaurentPoly.constant(1, p), [], 0
        for _ in range(rng.randint(1, 5)):
            if rng.random() < 0.2:
                f, origin = f * Z(p), origin + 1
            else:
                j = rng.randint(-3, 3)
                f = f * (Z(p) - Fraction(p) ** j * rng.choice([1, -1]))
                radii.append(Fraction(-j))
        if rng.random() < 0.5:
            w = DISK
            ts = grid(-5, 5)
        else:
            t1 = Fraction(rng.randint(-12, 6), 3)
            w = AnnulusWindow(t1, t1 + 6)
            ts = grid(t1, t1 + 6)
        N = counting(f, 0, w)
        for t in ts:
            assert N(t) == counting_oracle(radii, origin, t, w.t_low)


@given(primes.flatmap(rationals), windows())
@settings(max_examples=60, deadline=None)
def test_counting_is_nondecreasing_and_convex(f, w):
    if f.is_zero():
        return
    N = counting(f, INF, w)
    assert all(s >= 0 for s in N.slopes)
    assert list(N.slopes) == sorted(N.slopes)


@given(primes.flatmap(rationals), windows())
@settings(max_examples=60, deadline=None)
def test_functions_are_nonnegative(f, w):
    """Nonnegative everywhere on punctured windows; on disks for t >= 0 (r >= 1)."""
    if f.is_zero():
        return
    fns = [proximity(f, INF, w), counting(f, INF, w), characteristic(f, w)]
    if not (f - 1).is_zero():
        fns += [proximity(f, 1, w), counting(f, 1, w)]
    for fn in fns:
        if w.is_disk:
            fn = fn.restrict(0, INF)
        assert fn.infimum() >= 0


@given(primes.flatmap(rationals), windows())
@settings(max_examples=40, deadline=None)
def test_report_is_representative_independent(f, w):
    if f.is_zero() or (f - 1).is_zero():
        return
    h = LaurentPoly({0: 1, 1: 1, 3: f.p}, f.p)
    g = RationalFn(f.num * h, f.den * h)
    assert nevanlinna_report(g, 1, w) == nevanlinna_report(f, 1, w)
    assert nevanlinna_report(g, INF, w) == nevanlinna_report(f, INF, w)


@given(primes.flatmap(laurents), st.fractions(-6, 4, max_denominator=3))
@settings(max_examples=80, deadline=None)
def test_jensen_identity(f, t1):
    assert jensen_identity_check(f, AnnulusWindow(t1, INF)).is_identically(0)


def test_fmt_slope_bound_and_disk_boundedness():
    rng = random.Random(21)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        f = rand_nonconstant(rng, p, pole_at_zero=False)
        a = rng.choice([INF, 0, Fraction(rng.randint(-5, 5), rng.randint(1, 3))])
        if a != INF and (f - a).is_zero():
            continue
        holds, res = fmt_check(f, a, DISK)
        assert holds and res.leftmost_slope == 0
        t1 = Fraction(rng.randint(-9, 3), 3)
        holds, res = fmt_check(f, a, AnnulusWindow(t1, t1 + 7))
        assert holds and all(abs(s) <= exponent_spread(f) for s in res.slopes)


def test_ldl_random():
    rng = random.Random(8)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        f = rand_nonconstant(rng, p)
        k = rng.randint(1, 4)
        holds, margin = ldl_check(f, k, DISK)
        assert holds
        if margin is not None:
            # spot-check the margin against a direct evaluation
            g = (f.nth_derivative(k) / f).reduced()
            for t in grid(-3, 3):
                assert margin(t) == -k * t - direct_rational_norm(g, t)
