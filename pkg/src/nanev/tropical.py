"""Tropicalization into Q^g, lattices, fundamental domains and cubes.

``trop_point`` sends a torus point to its coordinatewise valuations (the
``-log|.|`` map), and ``trop_map`` does the same along an analytic curve,
giving a piecewise-linear path in the log-radius.  A lattice is supplied
by an integer basis (its columns); the fundamental domain is the half-open
parallelepiped spanned by the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import List, Optional, Sequence, Set, Tuple

from .annulus import AnnulusWindow, norm_profile
from .errors import DomainError
from .jets import TorusMap
from .piecewise import PiecewiseLinearFn
from .series import RationalFn
from .valued import INF, NEG_INF, as_fraction, val

Vector = Tuple[Fraction, ...]


def trop_point(x: Sequence, p: int) -> Vector:
    xs = [as_fraction(c) for c in x]
    if any(c == 0 for c in xs):
        raise DomainError("nonzero-coordinates", "torus points have nonzero coordinates")
    return tuple(val(c, p) for c in xs)


@dataclass(frozen=True)
class TropPath:
    """Per-coordinate piecewise-linear functions on a common log-radius domain."""

    coords: Tuple[PiecewiseLinearFn, ...]

    def __post_init__(self):
        doms = {(c.lo, c.hi) for c in self.coords}
        if len(doms) != 1:
            raise DomainError("path-domain", "coordinates on different domains")

    @property
    def lo(self):
        return self.coords[0].lo

    @property
    def hi(self):
        return self.coords[0].hi

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __call__(self, t) -> Vector:
        return tuple(c(t) for c in self.coords)

    def breakpoints(self) -> List[Fraction]:
        return sorted(set().union(*(c.breaks for c in self.coords)))

    def __add__(self, other: "TropPath") -> "TropPath":
        return TropPath(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def restrict(self, lo, hi) -> "TropPath":
        return TropPath(tuple(c.restrict(lo, hi) for c in self.coords))


def trop_map(f, window: Optional[AnnulusWindow] = None) -> TropPath:
    """Valuations of the coordinates of ``f`` as functions of the log-radius.

    Coordinate i at ``t`` is ``-log_p |f_i|_{p^t}``; slopes are integers.
    """
    if isinstance(f, TorusMap):
        coords, window = f.coords, window or f.window
    else:
        coords = [c if isinstance(c, RationalFn) else RationalFn(c) for c in f]
    if window is None:
        raise DomainError("path-domain", "a window is required")
    for i, c in enumerate(coords):
        if c.is_zero():
            raise DomainError("nonzero-coordinates", f"coordinate {i + 1} is identically zero")
    return TropPath(tuple(-norm_profile(c, window) for c in coords))


# -- lattices -----------------------------------------------------------------


def _inverse(m: Sequence[Sequence[Fraction]]) -> Optional[List[List[Fraction]]]:
    """Exact Gauss-Jordan inverse, or None for a singular matrix."""
    g = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(g)] for i, row in enumerate(m)]
    for col in range(g):
        piv = next((r for r in range(col, g) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(g):
            if r != col and a[r][col] != 0:
                fct = a[r][col]
                a[r] = [x - fct * y for x, y in zip(a[r], a[col])]
    return [row[g:] for row in a]


class Lattice:
    """Full-rank lattice in Z^g; the columns of ``matrix`` form a basis."""

    __slots__ = ("matrix", "g", "_inv")

    def __init__(self, matrix: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        g = len(rows)
        if g == 0 or any(len(r) != g for r in rows):
            raise DomainError("square-lattice-basis", "lattice basis must be a square matrix")
        inv = _inverse(rows)
        if inv is None:
            raise DomainError("full-rank-lattice", "lattice basis is singular")
        self.matrix = rows
        self.g = g
        self._inv = inv

    @classmethod
    def identity(cls, g: int) -> "Lattice":
        return cls([[int(i == j) for j in range(g)] for i in range(g)])

    def apply(self, u: Sequence) -> Vector:
        return tuple(sum(a * as_fraction(x) for a, x in zip(row, u)) for row in self.matrix)

    def coordinates(self, x: Sequence) -> Vector:
        """``u`` with ``matrix @ u == x``."""
        return tuple(sum(a * as_fraction(v) for a, v in zip(row, x)) for row in self._inv)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.matrix == other.matrix

    def __repr__(self):
        return f"Lattice({[list(r) for r in self.matrix]})"


def fundamental_reduce(x: Sequence, lattice: Lattice) -> Tuple[Tuple[int, ...], Vector]:
    """Split ``x = lattice @ gamma + residue`` with residue in the half-open cell."""
    if len(x) != lattice.g:
        raise DomainError("dimension-mismatch", "point and lattice have different dimension")
    u = lattice.coordinates(x)
    gamma = tuple(floor(c) for c in u)
    shift = lattice.apply(gamma)
    return gamma, tuple(as_fraction(a) - b for a, b in zip(x, shift))


def in_fundamental_domain(x: Sequence, lattice: Lattice) -> bool:
    return all(0 <= c < 1 for c in lattice.coordinates(x))


# -- cubes --------------------------------------------------------------------


@dataclass(frozen=True)
class Cube:
    """Closed cube ``{t : |t_i - center_i| <= eps}``."""

    center: Vector
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(as_fraction(c) for c in self.center))
        object.__setattr__(self, "eps", as_fraction(self.eps))
        if self.eps <= 0:
            raise DomainError("positive-eps", "cube half-width must be positive")

    def translate(self, a: Sequence) -> "Cube":
        return Cube(tuple(c + as_fraction(x) for c, x in zip(self.center, a)), self.eps)

    def meets(self, other: "Cube") -> bool:
        return all(
            max(c1 - self.eps, c2 - other.eps) <= min(c1 + self.eps, c2 + other.eps)
            for c1, c2 in zip(self.center, other.center)
        )


def cube_disjointness(cube: Cube) -> bool:
    """True iff ``(a + S) & S`` is empty for every nonzero integer vector ``a``.

    Translates meet iff ``|a_i| <= 2 eps`` on every axis.  A nonzero integer
    vector has some ``|a_i| >= 1``, and a unit vector has exactly one such
    entry, so the unit vectors are the only candidates worth testing.
    """
    g = len(cube.center)
    for i in range(g):
        e = tuple(int(i == j) for j in range(g))
        if cube.translate(e).meets(cube):
            return False
    return True


# -- translates met by a path -------------------------------------------------


def _segment_times(path: TropPath, lattice: Lattice, a: Fraction, b: Fraction) -> List[Fraction]:
    """Times in ``[a, b]`` where some lattice coordinate of the path is an integer."""
    u_a = lattice.coordinates(path(a))
    u_b = lattice.coordinates(path(b))
    times = {a, b}
    if a == b:
        return [a]
    for ua, ub in zip(u_a, u_b):
        if ua == ub:
            continue
        lo, hi = min(ua, ub), max(ua, ub)
        n = floor(lo)
        if n < lo:
            n += 1
        while n <= hi:
            times.add(a + (n - ua) * (b - a) / (ub - ua))
            n += 1
    return sorted(times)


def translates_met(path: TropPath, lattice: Lattice, window: Optional[AnnulusWindow] = None) -> List[Tuple[int, ...]]:
    """Distinct ``gamma`` with ``path(t)`` in ``gamma + F`` for some ``t`` in the window.

    The window is split at the path's breakpoints, where the lattice
    coordinates are affine, and then at every integer crossing of a lattice
    coordinate; ``gamma`` is constant between consecutive splitting times.
    """
    if path.dim != lattice.g:
        raise DomainError("dimension-mismatch", "path and lattice have different dimension")
    lo = path.lo if window is None else window.t_low
    hi = path.hi if window is None else window.t_high
    if lo == NEG_INF or hi == INF:
        raise DomainError("bounded-window", "translate enumeration needs a bounded window")
    if lo < path.lo or hi > path.hi:
        raise DomainError("path-domain", "window exceeds the path's domain")
    knots = [lo] + [t for t in path.breakpoints() if lo < t < hi] + [hi]
    found: Set[Tuple[int, ...]] = set()
    for a, b in zip(knots, knots[1:]):
        times = _segment_times(path, lattice, a, b)
        samples = list(times) + [(s + t) / 2 for s, t in zip(times, times[1:])]
        for t in samples:
            found.add(fundamental_reduce(path(t), lattice)[0])
    return sorted(found)
