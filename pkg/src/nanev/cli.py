"""Batch front-end: ``nanev run jobs.json [--out report.json] [--p PRIME]``.

A job file holds one job object or a list of them.  Each job names a
``command`` and carries that command's payload at top level.  The report
mirrors the input: one entry per job, in order, each echoing the job and
holding either a ``result`` or an ``error``.

Exit status: 0 when every check holds, 1 when some check failed, 2 on a
usage, schema or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Dict, Optional, Tuple

from . import annulus, jets, nevanlinna, tropical
from .errors import DomainError
from .serialize import (
    SchemaError,
    _finite,
    _int,
    _rat,
    jet_differential_from_json,
    jet_from_json,
    lattice_from_json,
    path_to_json,
    pl_to_json,
    q,
    rational_from_json,
    rational_to_json,
    report_to_json,
    torus_map_from_json,
    window_from_json,
)
from .valued import INF

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

Result = Tuple[Dict[str, Any], bool]


def _need(job: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in job]
    if missing:
        raise SchemaError(f"command {job.get('command')!r} is missing {missing}")


def _target(x):
    v = _rat(x, "a")
    return INF if v == INF else v


def _laurent(job, p):
    f = rational_from_json(job["f"], p)
    if not f.is_laurent():
        raise SchemaError("'f' must be a Laurent polynomial for this command")
    return f.as_laurent()


def _margin_witness(fn) -> Optional[str]:
    """A log-radius where a margin function is most negative, if finite."""
    t = fn.argmin()
    return None if t is None else q(t)


def cmd_norm(job, p) -> Result:
    _need(job, "f")
    f = rational_from_json(job["f"], p)
    if "t" in job:
        return {"norm": q(annulus.gauss_norm_rational(f, _finite(job["t"], "t")))}, True
    w = window_from_json(job.get("window"))
    return {"profile": pl_to_json(annulus.norm_profile(f, w))}, True


def cmd_newton(job, p) -> Result:
    _need(job, "f")
    f = _laurent(job, p)
    np_ = annulus.newton_polygon(f)
    return {
        "vertices": [[n, q(c)] for n, c in np_.vertices],
        "zero_radii": [{"t": q(t), "mult": m} for t, m in np_.zero_radii()],
        "tropical": {str(n): q(c) for n, c in sorted(annulus.lognorm_fn(f).terms.items())},
    }, True


def cmd_count_zeros(job, p) -> Result:
    _need(job, "f", "window")
    return {"zeros": annulus.count_zeros(_laurent(job, p), window_from_json(job["window"]))}, True


def cmd_nevanlinna(job, p) -> Result:
    _need(job, "f")
    f = rational_from_json(job["f"], p)
    rep = nevanlinna.nevanlinna_report(f, _target(job.get("a", "inf")), window_from_json(job.get("window")))
    return report_to_json(rep), True


def cmd_fmt_check(job, p) -> Result:
    _need(job, "f", "a")
    f = rational_from_json(job["f"], p)
    holds, res = nevanlinna.fmt_check(f, _target(job["a"]), window_from_json(job.get("window")))
    return {
        "holds": holds,
        "residual": pl_to_json(res),
        "spread": nevanlinna.exponent_spread(f),
    }, holds


def cmd_ldl_check(job, p) -> Result:
    _need(job, "f", "k")
    f = rational_from_json(job["f"], p)
    holds, margin = nevanlinna.ldl_check(f, _int(job["k"], "k"), window_from_json(job.get("window")))
    out: Dict[str, Any] = {"holds": holds, "margin": None if margin is None else pl_to_json(margin)}
    if margin is not None:
        out["min_margin"] = q(margin.infimum())
        out["witness_t"] = _margin_witness(margin)
    return out, holds


def cmd_dlog_check(job, p) -> Result:
    _need(job, "f", "k")
    f = rational_from_json(job["f"], p)
    holds, C = nevanlinna.dlog_check(f, _int(job["k"], "k"), window_from_json(job.get("window")))
    return {"holds": holds, "C": q(C)}, holds


def cmd_jensen_check(job, p) -> Result:
    _need(job, "f", "window")
    res = nevanlinna.jensen_identity_check(_laurent(job, p), window_from_json(job["window"]))
    holds = res.is_identically(0)
    out: Dict[str, Any] = {"holds": holds, "residual": pl_to_json(res)}
    if not holds:
        t = next((t for t in res.critical_points() if res(t) != 0), res.anchor_t)
        out["witness_t"] = q(t)
    return out, holds


def cmd_jet_eval(job, p) -> Result:
    _need(job, "Q", "jet")
    Q = jet_differential_from_json(job["Q"])
    a = jet_from_json(job["jet"])
    base = job.get("basepoint")
    base = None if base is None else [_finite(x, "basepoint") for x in base]
    out: Dict[str, Any] = {"value": q(jets.evaluate(Q, a, base))}
    ok = True
    if "lambda" in job:
        ok = jets.homogeneity_check(Q, a, _finite(job["lambda"], "lambda"))
        out["homogeneous"] = ok
    return out, ok


def cmd_jet_pullback(job, p) -> Result:
    _need(job, "omega", "f")
    phi = jets.pullback(jet_differential_from_json(job["omega"]), torus_map_from_json(job["f"], p))
    return {"phi": rational_to_json(phi)}, True


def cmd_jet_ldl_check(job, p) -> Result:
    _need(job, "omega", "f")
    holds, C = jets.jet_ldl_check(jet_differential_from_json(job["omega"]), torus_map_from_json(job["f"], p))
    return {"holds": holds, "C": None if C is None else q(C), "vacuous": C is None}, holds


def cmd_gg_dim(job, p) -> Result:
    _need(job, "n", "k", "m")
    return {"dim": jets.gg_dim(_int(job["n"], "n"), _int(job["k"], "k"), _int(job["m"], "m"))}, True


def cmd_trop_point(job, p) -> Result:
    _need(job, "x")
    prime = p if p is not None else _int(job.get("p"), "p")
    return {"point": [q(v) for v in tropical.trop_point([_finite(x, "x") for x in job["x"]], prime)]}, True


def cmd_trop_map(job, p) -> Result:
    _need(job, "f")
    f = torus_map_from_json(job["f"], p)
    return {"path": path_to_json(tropical.trop_map(f))}, True


def cmd_lattice_reduce(job, p) -> Result:
    _need(job, "x", "lattice")
    gamma, res = tropical.fundamental_reduce([_finite(x, "x") for x in job["x"]], lattice_from_json(job["lattice"]))
    return {"gamma": list(gamma), "residue": [q(r) for r in res]}, True


def cmd_translates_met(job, p) -> Result:
    _need(job, "f", "lattice")
    f = torus_map_from_json(job["f"], p)
    w = window_from_json(job["window"]) if "window" in job else f.window
    found = tropical.translates_met(tropical.trop_map(f, w), lattice_from_json(job["lattice"]))
    return {"translates": [list(g) for g in found], "count": len(found)}, True


def cmd_cube_check(job, p) -> Result:
    _need(job, "eps")
    if "center" in job:
        center = [_finite(c, "center") for c in job["center"]]
    else:
        center = [0] * _int(job.get("g", 1), "g")
    disjoint = tropical.cube_disjointness(tropical.Cube(tuple(center), _finite(job["eps"], "eps")))
    return {"disjoint": disjoint}, disjoint


COMMANDS: Dict[str, Callable[[dict, Optional[int]], Result]] = {
    "norm": cmd_norm,
    "newton": cmd_newton,
    "count-zeros": cmd_count_zeros,
    "nevanlinna": cmd_nevanlinna,
    "fmt-check": cmd_fmt_check,
    "ldl-check": cmd_ldl_check,
    "dlog-check": cmd_dlog_check,
    "jensen-check": cmd_jensen_check,
    "jet-eval": cmd_jet_eval,
    "jet-pullback": cmd_jet_pullback,
    "jet-ldl-check": cmd_jet_ldl_check,
    "gg-dim": cmd_gg_dim,
    "trop-point": cmd_trop_point,
    "trop-map": cmd_trop_map,
    "lattice-reduce": cmd_lattice_reduce,
    "translates-met": cmd_translates_met,
    "cube-check": cmd_cube_check,
}


def run_job(job: Any, p_override: Optional[int] = None) -> Tuple[int, Dict[str, Any]]:
    """Run a single job; returns ``(exit status, report entry)``."""
    entry: Dict[str, Any] = {"input": job}
    try:
        if not isinstance(job, dict) or "command" not in job:
            raise SchemaError("each job must be an object with a 'command'")
        handler = COMMANDS.get(job["command"])
        if handler is None:
            raise SchemaError(f"unknown command {job['command']!r}")
        p = p_override
        if p is None and "p" in job:
            p = _int(job["p"], "p")
        result, ok = handler(job, p)
    except DomainError as exc:
        entry["error"] = {"kind": "precondition", "precondition": exc.precondition, "message": str(exc)}
        return EXIT_USAGE, entry
    except (SchemaError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        entry["error"] = {"kind": "schema", "message": f"{type(exc).__name__}: {exc}"}
        return EXIT_USAGE, entry
    entry["result"] = result
    entry["ok"] = ok
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), entry


def run(doc: Any, p_override: Optional[int] = None) -> Tuple[int, Any]:
    """Run one job or a list of jobs; the report has the same shape as the input."""
    if isinstance(doc, list):
        results = [run_job(j, p_override) for j in doc]
        status = max((s for s, _ in results), default=EXIT_OK)
        return status, [e for _, e in results]
    return run_job(doc, p_override)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="nanev", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="action", required=True)
    runp = sub.add_parser("run", help="run a JSON job file")
    runp.add_argument("jobfile", help="path to the job file ('-' for stdin)")
    runp.add_argument("--out", help="write the report here instead of stdout")
    runp.add_argument("--p", type=int, default=None, help="override the prime of every job")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.p is not None and args.p < 2:
        print("--p must be an integer >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.jobfile == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.jobfile, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read job file: {exc}", file=sys.stderr)
        return EXIT_USAGE

    status, report = run(doc, args.p)
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
