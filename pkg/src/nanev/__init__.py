"""Exact non-archimedean value distribution over (Q, |.|_p).

Laurent polynomials and rational functions on p-adic annuli, their Gauss
norms and Newton polygons, Nevanlinna functions as exact piecewise-linear
functions of the log-radius, jets and logarithmic jet differentials, and
tropicalization of torus maps against a lattice.
"""

from .annulus import (
    AnnulusWindow,
    NewtonPolygon,
    TropPoly,
    count_zeros,
    gauss_norm,
    gauss_norm_rational,
    invert_variable,
    kK,
    newton_polygon,
    norm_profile,
    root_radii,
    zeros_and_poles,
)
from .errors import DomainError
from .jets import (
    Coefficient,
    Jet,
    JetDifferential,
    JetSymbol,
    TorusMap,
    evaluate,
    gg_dim,
    homogeneity_check,
    jet_ldl_check,
    log_derivatives,
    log_jet,
    pullback,
    reparametrize,
)
from .nevanlinna import (
    NevanlinnaReport,
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
from .piecewise import PiecewiseLinearFn
from .series import LaurentPoly, RationalFn
from .tropical import (
    Cube,
    Lattice,
    TropPath,
    cube_disjointness,
    fundamental_reduce,
    translates_met,
    trop_map,
    trop_point,
)
from .valued import INF, NEG_INF, PAdic, lognorm, val

__version__ = "0.1.0"
