"""Jets, logarithmic jet differentials on torus charts, and their pullbacks.

A chart is ``(G_m)^ell x A^(n-ell)`` with coordinates ``z_1..z_n``; the
boundary divisor is ``z_1 ... z_ell = 0``.  Jet differentials are weighted
homogeneous polynomials in the symbols ``d^j log z_i`` (``i <= ell``) and
``d^j z_i`` with weight ``j``, carrying rational coefficients in the ``z_i``.

Logarithmic derivatives are expanded with Faa di Bruno's formula through
partial Bell polynomials:

    d^n log f = sum_{j=1..n} (-1)^(j-1) (j-1)! f^(-j) B_{n,j}(f', f'', ...)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .annulus import AnnulusWindow, has_divisor_inside, norm_profile
from .errors import DomainError
from .piecewise import PiecewiseLinearFn
from .series import LaurentPoly, RationalFn
from .valued import INF, as_fraction


# -- Faa di Bruno ---------------------------------------------------------


def bell_table(xs: Sequence, n_max: int, zero, one) -> Dict[Tuple[int, int], object]:
    """Partial Bell polynomials ``B_{n,k}(xs[1], xs[2], ...)`` for ``n <= n_max``.

    ``xs[0]`` is ignored so that ``xs`` can be a derivative tuple.  Works
    over any commutative ring given its zero and one.
    """
    B: Dict[Tuple[int, int], object] = {(0, 0): one}
    for n in range(1, n_max + 1):
        B[(n, 0)] = zero
        for k in range(1, n + 1):
            acc = zero
            for i in range(1, n - k + 2):
                prev = B.get((n - i, k - 1), zero)
                if prev is zero:
                    continue
                acc = acc + (xs[i] * prev) * comb(n - 1, i - 1)
            B[(n, k)] = acc
    return B


def log_jet(coord: Sequence, k: Optional[int] = None) -> Tuple[Fraction, ...]:
    """``(d log f, ..., d^k log f)`` at 0 from the derivative tuple of ``f`` at 0."""
    coord = [as_fraction(c) for c in coord]
    if k is None:
        k = len(coord) - 1
    if k > len(coord) - 1:
        raise DomainError("jet-order", f"need derivatives up to order {k}")
    f0 = coord[0]
    if f0 == 0:
        raise DomainError("nonzero-constant-term", "log of a jet vanishing at 0")
    B = bell_table(coord, k, Fraction(0), Fraction(1))
    out = []
    for n in range(1, k + 1):
        out.append(sum(
            (-1) ** (j - 1) * factorial(j - 1) * B[(n, j)] / f0 ** j for j in range(1, n + 1)
        ))
    return tuple(out)


def _log_numerators(g: LaurentPoly, k: int) -> List[LaurentPoly]:
    """``P_n`` with ``d^n log g = P_n / g**n`` for ``n = 1..k``."""
    derivs = [g]
    for _ in range(k):
        derivs.append(derivs[-1].derivative())
    zero = LaurentPoly({}, g.p)
    B = bell_table(derivs, k, zero, LaurentPoly.constant(1, g.p))
    powers = [LaurentPoly.constant(1, g.p)]
    for _ in range(k):
        powers.append(powers[-1] * g)
    # multiply the j-th Faa di Bruno term through by g**n
    return [
        sum(
            (B[(n, j)] * powers[n - j] * ((-1) ** (j - 1) * factorial(j - 1)) for j in range(1, n + 1)),
            zero,
        )
        for n in range(1, k + 1)
    ]


def log_derivatives(f: RationalFn, k: int) -> List[RationalFn]:
    """Symbolic ``[d log f, ..., d^k log f]`` for a rational function.

    Uses ``log f = log num - log den`` and expands each side separately.
    """
    if f.is_zero():
        raise DomainError("nonzero-function", "log of the zero function")
    f = f.reduced()
    num, den = f.num, f.den
    P = _log_numerators(num, k)
    if den.is_constant():
        return [RationalFn(P[n - 1], num ** n) for n in range(1, k + 1)]
    Q = _log_numerators(den, k)
    out = []
    for n in range(1, k + 1):
        nn, dn = num ** n, den ** n
        out.append(RationalFn(P[n - 1] * dn - Q[n - 1] * nn, nn * dn))
    return out


# -- jets -------------------------------------------------------------------


def _leibniz(u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(
        sum(comb(n, i) * u[i] * v[n - i] for i in range(n + 1)) for n in range(len(u))
    )


def _reciprocal(u: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    if u[0] == 0:
        raise DomainError("nonzero-constant-term", "reciprocal of a jet vanishing at 0")
    w = [1 / u[0]]
    for n in range(1, len(u)):
        w.append(-sum(comb(n, i) * u[i] * w[n - i] for i in range(1, n + 1)) / u[0])
    return tuple(w)


@dataclass(frozen=True)
class Jet:
    """k-jet at 0 of a germ ``(F, 0) -> F^n``: per coordinate ``(f(0), f'(0), ..., f^(k)(0))``."""

    coords: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        coords = tuple(tuple(as_fraction(c) for c in row) for row in self.coords)
        if not coords:
            raise DomainError("jet-shape", "a jet needs at least one coordinate")
        lengths = {len(r) for r in coords}
        if len(lengths) != 1 or lengths.pop() < 2:
            raise DomainError("jet-shape", "all coordinates need the same order k >= 1")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, funcs: Iterable, k: int, at=0) -> "Jet":
        """Jet at ``at`` of a tuple of rational functions of one variable."""
        rows = []
        for f in funcs:
            f = f if isinstance(f, RationalFn) else RationalFn(f)
            rows.append(tuple(f.nth_derivative(j)(at) for j in range(k + 1)))
        return cls(tuple(rows))

    @property
    def order(self) -> int:
        return len(self.coords[0]) - 1

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def point(self) -> Tuple[Fraction, ...]:
        return tuple(r[0] for r in self.coords)

    def is_regular(self) -> bool:
        return any(r[1] != 0 for r in self.coords)

    def _check(self, other: "Jet"):
        if (self.order, self.dim) != (other.order, other.dim):
            raise DomainError("jet-shape", "jets of different order or dimension")

    def __add__(self, other: "Jet") -> "Jet":
        self._check(other)
        return Jet(tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(self.coords, other.coords)))

    def __mul__(self, other: "Jet") -> "Jet":
        self._check(other)
        return Jet(tuple(_leibniz(u, v) for u, v in zip(self.coords, other.coords)))

    def reciprocal(self) -> "Jet":
        return Jet(tuple(_reciprocal(u) for u in self.coords))

    @classmethod
    def zero(cls, dim: int, k: int) -> "Jet":
        return cls(tuple((Fraction(0),) * (k + 1) for _ in range(dim)))


def jet_add(a: Jet, b: Jet) -> Jet:
    return a + b


def jet_mul(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_reciprocal(a: Jet) -> Jet:
    return a.reciprocal()


def reparametrize(a: Jet, lam) -> Jet:
    """Jet of ``f(lam * z)``: the j-th derivative picks up ``lam**j``."""
    lam = as_fraction(lam)
    if lam == 0:
        raise DomainError("nonzero-lambda", "the homothety ratio must be nonzero")
    return Jet(tuple(tuple(c * lam ** j for j, c in enumerate(row)) for row in a.coords))


# -- coefficients -----------------------------------------------------------


class Coefficient:
    """Quotient of multivariate Laurent polynomials in ``z_1..z_n``."""

    __slots__ = ("num", "den", "nvars")

    def __init__(self, num: Mapping, den: Optional[Mapping] = None, nvars: Optional[int] = None):
        self.num = self._clean(num)
        self.den = self._clean(den) if den is not None else None
        if self.den is not None and not self.den:
            raise DomainError("nonzero-denominator", "coefficient with zero denominator")
        keys = list(self.num) + list(self.den or {})
        sizes = {len(e) for e in keys}
        if nvars is None:
            if len(sizes) != 1:
                raise DomainError("coefficient-shape", "cannot infer number of variables")
            nvars = sizes.pop()
        elif sizes - {nvars}:
            raise DomainError("coefficient-shape", "exponent tuples of the wrong length")
        self.nvars = nvars

    @staticmethod
    def _clean(terms: Mapping) -> Dict[Tuple[int, ...], Fraction]:
        out: Dict[Tuple[int, ...], Fraction] = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            out[e] = out.get(e, Fraction(0)) + as_fraction(c)
        return {e: c for e, c in out.items() if c != 0}

    @classmethod
    def constant(cls, c, nvars: int) -> "Coefficient":
        return cls({(0,) * nvars: c}, nvars=nvars)

    def is_one(self) -> bool:
        return self.den is None and self.num == {(0,) * self.nvars: 1}

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        if other.nvars != self.nvars:
            raise DomainError("coefficient-shape", "different numbers of variables")

        def mul(a, b):
            out: Dict[Tuple[int, ...], Fraction] = {}
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return out

        num = mul(self.num, other.num)
        if self.den is None and other.den is None:
            return Coefficient(num, nvars=self.nvars)
        one = {(0,) * self.nvars: Fraction(1)}
        return Coefficient(num, mul(self.den or one, other.den or one), nvars=self.nvars)

    @staticmethod
    def _eval_poly(terms, point) -> Fraction:
        total = Fraction(0)
        for e, c in terms.items():
            term = c
            for x, k in zip(point, e):
                if k < 0 and x == 0:
                    raise DomainError("basepoint-off-divisor", "coefficient has a pole at the basepoint")
                term *= x ** k
            total += term
        return total

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_fraction(x) for x in point]
        val = self._eval_poly(self.num, point)
        if self.den is None:
            return val
        d = self._eval_poly(self.den, point)
        if d == 0:
            raise DomainError("basepoint-off-divisor", "coefficient has a pole at the basepoint")
        return val / d

    @staticmethod
    def _compose_poly(terms, funcs: Sequence[RationalFn]) -> RationalFn:
        p = funcs[0].p
        total = RationalFn(LaurentPoly({}, p))
        for e, c in terms.items():
            term = RationalFn(LaurentPoly.constant(c, p))
            for f, k in zip(funcs, e):
                if k:
                    term = term * f ** k
            total = total + term
        return total

    def compose(self, funcs: Sequence[RationalFn]) -> RationalFn:
        val = self._compose_poly(self.num, funcs)
        if self.den is None:
            return val
        return val / self._compose_poly(self.den, funcs)

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            return NotImplemented
        return (self.nvars, self.num, self.den) == (other.nvars, other.num, other.den)

    def __repr__(self):
        return f"Coefficient({self.num!r}, {self.den!r})"


# -- jet differentials ------------------------------------------------------


@dataclass(frozen=True, order=True)
class JetSymbol:
    """``d^j log z_i`` when ``log`` is set, otherwise ``d^j z_i`` (1-based ``i``)."""

    i: int
    j: int
    log: bool = False

    @property
    def weight(self) -> int:
        return self.j


Monomial = Tuple[Coefficient, Tuple[JetSymbol, ...]]


class JetDifferential:
    """Weighted homogeneous polynomial in jet symbols with rational coefficients."""

    __slots__ = ("k", "m", "ell", "n", "monomials")

    def __init__(self, k: int, m: int, ell: int, n: int, monomials: Iterable[Tuple[Coefficient, Iterable[JetSymbol]]]):
        if k < 1 or m < 0 or not 0 <= ell <= n:
            raise DomainError("jet-differential-shape", f"bad (k, m, ell, n) = {(k, m, ell, n)}")
        mons: List[Monomial] = []
        for coeff, symbols in monomials:
            symbols = tuple(sorted(symbols))
            if coeff.nvars != n:
                raise DomainError("jet-differential-shape", "coefficient has the wrong number of variables")
            for s in symbols:
                if not 1 <= s.i <= n:
                    raise DomainError("jet-differential-shape", f"coordinate index {s.i} out of range")
                if not 1 <= s.j <= k:
                    raise DomainError("jet-differential-shape", f"derivative order {s.j} exceeds k={k}")
                if s.log and s.i > ell:
                    raise DomainError("jet-differential-shape", f"log symbol on non-boundary coordinate {s.i}")
            if sum(s.j for s in symbols) != m:
                raise DomainError("weighted-homogeneity", f"monomial of weight {sum(s.j for s in symbols)} != {m}")
            mons.append((coeff, symbols))
        self.k, self.m, self.ell, self.n = k, m, ell, n
        self.monomials: Tuple[Monomial, ...] = tuple(mons)

    @classmethod
    def symbol(cls, s: JetSymbol, k: int, ell: int, n: int) -> "JetDifferential":
        return cls(k, s.j, ell, n, [(Coefficient.constant(1, n), (s,))])

    def __mul__(self, other: "JetDifferential") -> "JetDifferential":
        if (self.ell, self.n) != (other.ell, other.n):
            raise DomainError("jet-differential-shape", "product of forms on different charts")
        mons = [
            (c1 * c2, s1 + s2)
            for c1, s1 in self.monomials
            for c2, s2 in other.monomials
        ]
        return JetDifferential(max(self.k, other.k), self.m + other.m, self.ell, self.n, mons)

    def __add__(self, other: "JetDifferential") -> "JetDifferential":
        if (self.m, self.ell, self.n) != (other.m, other.ell, other.n):
            raise DomainError("weighted-homogeneity", "sum of forms of different weight")
        return JetDifferential(max(self.k, other.k), self.m, self.ell, self.n, self.monomials + other.monomials)

    def __repr__(self):
        return f"JetDifferential(k={self.k}, m={self.m}, ell={self.ell}, n={self.n}, {len(self.monomials)} monomials)"


def evaluate(Q: JetDifferential, a: Jet, basepoint: Optional[Sequence] = None) -> Fraction:
    """Value of ``Q`` on the jet ``a``; coefficients are taken at ``basepoint``.

    ``basepoint`` defaults to the point of the jet, ``a.point``.
    """
    if a.dim != Q.n:
        raise DomainError("jet-shape", f"jet has dimension {a.dim}, form needs {Q.n}")
    if a.order < Q.k:
        raise DomainError("jet-order", f"jet of order {a.order} < {Q.k}")
    point = a.point if basepoint is None else tuple(as_fraction(x) for x in basepoint)
    if len(point) != Q.n:
        raise DomainError("basepoint-shape", "basepoint has the wrong dimension")
    if any(point[i] == 0 for i in range(Q.ell)):
        raise DomainError("basepoint-off-divisor", "basepoint lies on the boundary divisor")
    logs: Dict[int, Tuple[Fraction, ...]] = {}
    total = Fraction(0)
    for coeff, symbols in Q.monomials:
        term = coeff.evaluate(point)
        for s in symbols:
            if s.log:
                if s.i not in logs:
                    logs[s.i] = log_jet(a.coords[s.i - 1], Q.k)
                term *= logs[s.i][s.j - 1]
            else:
                term *= a.coords[s.i - 1][s.j]
        total += term
    return total


def homogeneity_check(Q: JetDifferential, a: Jet, lam) -> bool:
    """``Q(j_k(f o phi_lam)) == lam**m Q(j_k(f))``, exactly."""
    lam = as_fraction(lam)
    return evaluate(Q, reparametrize(a, lam)) == lam ** Q.m * evaluate(Q, a)


# -- torus maps, pullback and the jet-differential LDL ----------------------


class TorusMap:
    """Map ``xi -> (f_1(xi), ..., f_n(xi))`` on an annulus window.

    The first ``ell`` coordinates land in ``G_m``: they may not vanish or
    have poles at log-radii strictly inside the window.
    """

    __slots__ = ("coords", "window", "ell")

    def __init__(self, coords: Sequence, window: AnnulusWindow, ell: int = 0):
        coords = tuple(c if isinstance(c, RationalFn) else RationalFn(c) for c in coords)
        if not coords:
            raise DomainError("torus-map-shape", "need at least one coordinate")
        if len({c.p for c in coords}) != 1:
            raise DomainError("torus-map-shape", "coordinates over different primes")
        if not 0 <= ell <= len(coords):
            raise DomainError("torus-map-shape", f"ell={ell} out of range")
        for i in range(ell):
            if coords[i].is_zero():
                raise DomainError("divisor-avoidance", f"coordinate {i + 1} is identically zero")
            if has_divisor_inside(coords[i], window):
                raise DomainError("divisor-avoidance", f"coordinate {i + 1} meets the divisor inside the window")
        self.coords = coords
        self.window = window
        self.ell = ell

    @property
    def p(self) -> int:
        return self.coords[0].p

    def __mul__(self, other: "TorusMap") -> "TorusMap":
        if self.window != other.window or len(self.coords) != len(other.coords):
            raise DomainError("torus-map-shape", "product of maps on different windows or charts")
        return TorusMap([a * b for a, b in zip(self.coords, other.coords)], self.window, min(self.ell, other.ell))


def pullback(omega: JetDifferential, f: TorusMap) -> RationalFn:
    """``phi`` with ``f^* omega = phi(xi) (d xi)^m``."""
    if omega.n != len(f.coords):
        raise DomainError("torus-map-shape", "form and map live on charts of different dimension")
    plain: Dict[int, List[RationalFn]] = {}
    logs: Dict[int, List[RationalFn]] = {}
    total = RationalFn(LaurentPoly({}, f.p))
    for coeff, symbols in omega.monomials:
        term = coeff.compose(f.coords) if not coeff.is_one() else RationalFn(LaurentPoly.constant(1, f.p))
        for s in symbols:
            fi = f.coords[s.i - 1]
            if s.log:
                if s.i > f.ell:
                    raise DomainError("divisor-avoidance", f"log symbol on coordinate {s.i} not kept off the divisor")
                if s.i not in logs:
                    logs[s.i] = log_derivatives(fi, omega.k)
                term = term * logs[s.i][s.j - 1]
            else:
                if s.i not in plain:
                    plain[s.i] = [fi.nth_derivative(j) for j in range(omega.k + 1)]
                term = term * plain[s.i][s.j]
        total = total + term
    return total.reduced()


def jet_ldl_check(omega: JetDifferential, f: TorusMap) -> Tuple[bool, object]:
    """Sup over the window of ``log_p|phi|_r + m t``.

    Returns ``(holds, C)``; ``holds`` is False iff the supremum is infinite.
    A vanishing pullback makes the check vacuous and returns ``(True, None)``.
    """
    phi = pullback(omega, f)
    if phi.is_zero():
        return True, None
    w = f.window
    excess = norm_profile(phi, w) + PiecewiseLinearFn.affine(w.t_low, w.t_high, omega.m, 0)
    C = excess.supremum()
    return C != INF, C


# -- Green-Griffiths dimension ----------------------------------------------


def _weighted_tuples(k: int, m: int):
    """All ``(l_1, ..., l_k)`` with ``l_1 + 2 l_2 + ... + k l_k = m``."""
    if k == 1:
        yield (m,)
        return
    for lk in range(m // k + 1):
        for rest in _weighted_tuples(k - 1, m - k * lk):
            yield rest + (lk,)


def gg_dim(n: int, k: int, m: int) -> int:
    """Rank of the Green-Griffiths bundle of order k and weight m on an n-fold.

    Sum over the graded pieces of the filtration, each a tensor product of
    symmetric powers ``S^{l_1} (x) ... (x) S^{l_k}`` of a rank-n bundle.
    """
    if n < 1 or k < 1 or m < 0:
        raise DomainError("gg-dim-range", f"need n, k >= 1 and m >= 0, got {(n, k, m)}")
    return sum(
        reduce(lambda acc, l: acc * comb(n + l - 1, l), ls, 1)
        for ls in _weighted_tuples(k, m)
    )
