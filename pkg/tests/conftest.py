import random
from fractions import Fraction

from hypothesis import strategies as st

from nanev import Coefficient, Jet, JetDifferential, JetSymbol, LaurentPoly, RationalFn

PRIMES = (2, 3, 5)


def rand_scalar(rng: random.Random, p: int, spread: int = 3) -> Fraction:
    """Nonzero rational with a p-power factor, so valuations vary."""
    num = rng.choice([x for x in range(-12, 13) if x])
    return Fraction(num, rng.randint(1, 7)) * Fraction(p) ** rng.randint(-spread, spread)


def rand_laurent(rng: random.Random, p: int, lo: int = 0, hi: int = 6, density: float = 0.6) -> LaurentPoly:
    while True:
        terms = {n: rand_scalar(rng, p) for n in range(lo, hi + 1) if rng.random() < density}
        if terms:
            return LaurentPoly(terms, p)


def rand_rational(rng: random.Random, p: int, pole_at_zero: bool = True) -> RationalFn:
    num = rand_laurent(rng, p, -2 if pole_at_zero else 0, rng.randint(0, 5))
    den = rand_laurent(rng, p, 0, rng.randint(0, 4))
    if not pole_at_zero and den.coeff(0) == 0:
        den = den + 1
    return RationalFn(num, den)


def rand_nonconstant(rng: random.Random, p: int, **kw) -> RationalFn:
    while True:
        f = rand_rational(rng, p, **kw)
        if not f.is_constant():
            return f


# -- hypothesis strategies ---------------------------------------------------

primes = st.sampled_from(PRIMES)
small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_q = small_q.filter(lambda x: x != 0)


@st.composite
def padic_scalars(draw, p=None):
    """(value, p) with value nonzero and a visible p-power part."""
    p = p if p is not None else draw(primes)
    u = draw(nonzero_q)
    return u * Fraction(p) ** draw(st.integers(-4, 4)), p


@st.composite
def laurents(draw, p, lo=-3, hi=6, max_terms=5):
    exps = draw(st.lists(st.integers(lo, hi), min_size=1, max_size=max_terms, unique=True))
    coeffs = [draw(padic_scalars(p))[0] for _ in exps]
    return LaurentPoly(dict(zip(exps, coeffs)), p)


@st.composite
def rationals(draw, p, pole_at_zero=True):
    num = draw(laurents(p, lo=-2 if pole_at_zero else 0, hi=5, max_terms=4))
    den = draw(laurents(p, lo=0, hi=4, max_terms=3))
    if not pole_at_zero and den.coeff(0) == 0:
        den = den + 1
    return RationalFn(num, den)


log_radii = st.fractions(min_value=-8, max_value=8, max_denominator=6)


# -- jets ---------------------------------------------------------------------


def rand_partition(rng: random.Random, m: int, k: int):
    """Random parts in 1..k summing to m."""
    parts = []
    while m:
        j = rng.randint(1, min(k, m))
        parts.append(j)
        m -= j
    return parts


def rand_coefficient(rng: random.Random, n: int, ell: int):
    def exps():
        # negative powers only on the log coordinates, which stay off the divisor
        return tuple(rng.randint(-1 if i < ell else 0, 2) for i in range(n))

    num = {exps(): Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)) for _ in range(rng.randint(1, 2))}
    return Coefficient(num, nvars=n)


def rand_jet_differential(rng: random.Random, k: int, m: int, ell: int, n: int, mixed: bool = True,
                          max_terms: int = 3, unit: bool = False):
    mons = []
    for _ in range(rng.randint(1, max_terms)):
        syms = []
        for j in rand_partition(rng, m, k):
            i = rng.randint(1, n)
            log = i <= ell and (not mixed or rng.random() < 0.5)
            syms.append(JetSymbol(i, j, log))
        mons.append((Coefficient.constant(1, n) if unit else rand_coefficient(rng, n, ell), syms))
    return JetDifferential(k, m, ell, n, mons)


def rand_jet(rng: random.Random, n: int, k: int, ell: int):
    """Random regular jet whose first ``ell`` coordinates have nonzero value."""
    def entry(nonzero=False):
        x = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        return x if (x or not nonzero) else Fraction(1)

    while True:
        rows = tuple(
            tuple([entry(nonzero=i < ell)] + [entry() for _ in range(k)]) for i in range(n)
        )
        a = Jet(rows)
        if a.is_regular():
            return a


# -- acceptance reporting -------------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title, detail = ACCEPTANCE[n]
        line = f"[{status}] criterion {n:>2}: {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
