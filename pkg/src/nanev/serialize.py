"""JSON encodings for the library's exact objects.

Rationals are ``"num/den"`` strings and infinities ``"inf"`` / ``"-inf"``.
Decoders accept a little more than encoders emit (plain ints, ``"3"``,
a bare rational for a constant function) to keep job files short.
"""

from __future__ import annotations

from typing import Any, Dict, Optional

from .annulus import AnnulusWindow
from .jets import Coefficient, Jet, JetDifferential, JetSymbol, TorusMap
from .nevanlinna import NevanlinnaReport
from .piecewise import PiecewiseLinearFn
from .series import LaurentPoly, RationalFn
from .tropical import Lattice, TropPath
from .valued import INF, NEG_INF, format_rational, parse_rational


class SchemaError(ValueError):
    """Input document does not match the expected shape."""


def q(x) -> str:
    return format_rational(x)


def _rat(x, what: str):
    try:
        return parse_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{what}: expected a rational, got {x!r}") from exc


def _finite(x, what: str):
    v = _rat(x, what)
    if v in (INF, NEG_INF):
        raise SchemaError(f"{what}: expected a finite rational")
    return v


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{what}: expected an integer, got {x!r}")
    return x


def _pick_prime(doc_p, p: Optional[int], what: str) -> int:
    if p is not None:
        return p
    if doc_p is None:
        raise SchemaError(f"{what}: no prime given")
    return _int(doc_p, f"{what}.p")


# -- series -------------------------------------------------------------------


def laurent_to_json(f: LaurentPoly) -> Dict[str, Any]:
    return {"p": f.p, "terms": {str(n): q(c) for n, c in f.items()}}


def laurent_from_json(doc, p: Optional[int] = None) -> LaurentPoly:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise SchemaError("Laurent polynomial must be an object with 'terms'")
    prime = _pick_prime(doc.get("p"), p, "LaurentPoly")
    terms = doc["terms"]
    if not isinstance(terms, dict):
        raise SchemaError("LaurentPoly.terms must be an object")
    try:
        parsed = {int(n): _finite(c, f"coefficient of z^{n}") for n, c in terms.items()}
    except ValueError as exc:
        raise SchemaError(f"bad exponent in {list(terms)}") from exc
    return LaurentPoly(parsed, prime)


def rational_to_json(f: RationalFn) -> Dict[str, Any]:
    return {"num": laurent_to_json(f.num), "den": laurent_to_json(f.den)}


def rational_from_json(doc, p: Optional[int] = None) -> RationalFn:
    """Accepts ``{"num", "den"}``, a bare Laurent polynomial, or a constant."""
    if isinstance(doc, dict) and "num" in doc:
        num = laurent_from_json(doc["num"], p)
        den = laurent_from_json(doc["den"], p if p is not None else num.p) if "den" in doc else LaurentPoly.constant(1, num.p)
        if den.is_zero():
            raise SchemaError("RationalFn.den must be nonzero")
        return RationalFn(num, den)
    if isinstance(doc, dict):
        return RationalFn(laurent_from_json(doc, p))
    if p is None:
        raise SchemaError("constant function needs a prime")
    return RationalFn(LaurentPoly.constant(_finite(doc, "constant"), p))


def window_to_json(w: AnnulusWindow) -> Dict[str, str]:
    return {"t_low": q(w.t_low), "t_high": q(w.t_high)}


def window_from_json(doc) -> AnnulusWindow:
    if doc is None:
        return AnnulusWindow()
    if not isinstance(doc, dict):
        raise SchemaError("window must be an object with t_low / t_high")
    return AnnulusWindow(_rat(doc.get("t_low", "-inf"), "t_low"), _rat(doc.get("t_high", "inf"), "t_high"))


# -- piecewise-linear ----------------------------------------------------------


def pl_to_json(f: PiecewiseLinearFn) -> Dict[str, Any]:
    return {
        "domain": [q(f.lo), q(f.hi)],
        "breakpoints": [q(b) for b in f.breaks],
        "slopes": [q(s) for s in f.slopes],
        "anchor_t": q(f.anchor_t),
        "anchor_value": q(f.anchor_value),
    }


def pl_from_json(doc) -> PiecewiseLinearFn:
    lo, hi = doc.get("domain", ["-inf", "inf"])
    return PiecewiseLinearFn(
        _rat(lo, "domain"), _rat(hi, "domain"),
        [_finite(b, "breakpoint") for b in doc["breakpoints"]],
        [_finite(s, "slope") for s in doc["slopes"]],
        _finite(doc["anchor_t"], "anchor_t"), _finite(doc["anchor_value"], "anchor_value"),
    )


def report_to_json(r: NevanlinnaReport) -> Dict[str, Any]:
    return {
        "a": q(r.a),
        "window": window_to_json(r.window),
        "m": pl_to_json(r.m),
        "N": pl_to_json(r.N),
        "T": pl_to_json(r.T),
    }


def path_to_json(path: TropPath):
    return [pl_to_json(c) for c in path.coords]


# -- jets -------------------------------------------------------------------------


def _exp_key(e) -> str:
    return ",".join(str(x) for x in e)


def _parse_exp_key(key: str):
    try:
        return tuple(int(x) for x in key.split(","))
    except ValueError as exc:
        raise SchemaError(f"bad exponent key {key!r}") from exc


def coefficient_to_json(c: Coefficient) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"num": {"terms": {_exp_key(e): q(v) for e, v in sorted(c.num.items())}}}
    if c.den is not None:
        doc["den"] = {"terms": {_exp_key(e): q(v) for e, v in sorted(c.den.items())}}
    return doc


def coefficient_from_json(doc, n: int) -> Coefficient:
    if doc is None:
        return Coefficient.constant(1, n)
    if not isinstance(doc, dict):
        return Coefficient.constant(_finite(doc, "coefficient"), n)

    def terms(part):
        if not isinstance(part, dict) or "terms" not in part:
            raise SchemaError("coefficient parts need 'terms'")
        return {_parse_exp_key(k): _finite(v, "coefficient") for k, v in part["terms"].items()}

    num = terms(doc["num"])
    den = terms(doc["den"]) if "den" in doc else None
    return Coefficient(num, den, nvars=n)


def jet_differential_to_json(Q: JetDifferential) -> Dict[str, Any]:
    return {
        "k": Q.k, "m": Q.m, "ell": Q.ell, "n": Q.n,
        "monomials": [
            {
                "coeff": coefficient_to_json(c),
                "symbols": [{"i": s.i, "j": s.j, "log": s.log} for s in syms],
            }
            for c, syms in Q.monomials
        ],
    }


def jet_differential_from_json(doc) -> JetDifferential:
    try:
        k, m, ell = _int(doc["k"], "k"), _int(doc["m"], "m"), _int(doc["ell"], "ell")
        mons = doc["monomials"]
    except (KeyError, TypeError) as exc:
        raise SchemaError("jet differential needs k, m, ell, monomials") from exc
    if "n" in doc:
        n = _int(doc["n"], "n")
    else:
        n = max([ell] + [s["i"] for mon in mons for s in mon.get("symbols", [])])
    out = []
    for mon in mons:
        syms = [JetSymbol(_int(s["i"], "i"), _int(s["j"], "j"), bool(s.get("log", False))) for s in mon.get("symbols", [])]
        out.append((coefficient_from_json(mon.get("coeff"), n), syms))
    return JetDifferential(k, m, ell, n, out)


def jet_to_json(a: Jet):
    return {"coords": [[q(c) for c in row] for row in a.coords]}


def jet_from_json(doc) -> Jet:
    rows = doc["coords"] if isinstance(doc, dict) else doc
    return Jet(tuple(tuple(_finite(c, "jet entry") for c in row) for row in rows))


def torus_map_to_json(f: TorusMap):
    return {"coords": [rational_to_json(c) for c in f.coords], "window": window_to_json(f.window), "ell": f.ell}


def torus_map_from_json(doc, p: Optional[int] = None) -> TorusMap:
    coords = [rational_from_json(c, p) for c in doc["coords"]]
    return TorusMap(coords, window_from_json(doc.get("window")), _int(doc.get("ell", 0), "ell"))


def lattice_from_json(doc) -> Lattice:
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise SchemaError("lattice must be a row-major array of integer rows")
    return Lattice([[_int(x, "lattice entry") for x in row] for row in doc])


def lattice_to_json(L: Lattice):
    return [list(r) for r in L.matrix]
