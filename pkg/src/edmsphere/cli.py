"""Command line front end.

Subcommands: validate, orthorep, decompose, gen, check-rankin.  Every run
prints exactly one JSON report to stdout (the single exception: `gen`
without --out prints the raw matrix text) and human diagnostics to stderr.
Exit codes: 0 success, 2 for rejected input or a failed precondition, 1 for
an internal fault, including results that would contradict theory.

Tolerances come from the profile named by the EDM_SPHERE_TOL_PROFILE
environment variable (default, strict, loose), overridable per run with
--tol-profile and per threshold with --tol-psd, --tol-rank, --tol-cluster,
--tol-sign, --tol-unit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
import traceback
from dataclasses import asdict

import numpy as np

from . import __version__
from .decomposition import (
    crosspolytope_recognize,
    kuperberg_decompose,
    rankin_codimension2_check,
)
from .edm import (
    SPHERICAL,
    EdmRejection,
    embedding_dim_via_delta,
    gen_crosspolytope,
    gen_random_spherical,
    gen_regular_simplex,
    gen_unit_simplex,
    spherical_certificate,
    validate_edm,
)
from .errors import ConsistencyError, FormatError, PreconditionError
from .graphs import parse_graph
from .matrixio import format_matrix_text, load_matrix
from .orthorep import construct_orthorep, minimality_bound, verify_sign_pattern
from .tolerances import TOL_PROFILE_ENV, Tolerances, from_profile

OK = 0
REJECTED = 2
FAULT = 1


def _jsonable(obj):
    """Recursively convert to strict-JSON-safe values (no NaN/Infinity tokens)."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float):
        return obj if np.isfinite(obj) else repr(obj)
    return obj


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _listify(M) -> list:
    return [[float(x) for x in row] for row in np.asarray(M, dtype=float)]


def _resolve_tolerances(args) -> tuple[Tolerances, str]:
    profile = args.tol_profile or os.environ.get(TOL_PROFILE_ENV, "default")
    base = from_profile(profile)  # ValueError on unknown names
    tol = base.with_overrides(
        psd=args.tol_psd, rank=args.tol_rank, cluster=args.tol_cluster,
        sign=args.tol_sign, unit=args.tol_unit,
    )
    return tol, profile


def _spherical_dict(cert) -> dict:
    out = {
        "status": cert.status,
        "unit_spherical": cert.unit_spherical,
        "residual": cert.residual,
        "etw": cert.etw,
        "radius": cert.radius,
        "w": None if cert.w is None else [float(x) for x in cert.w],
    }
    if cert.status == SPHERICAL:
        out["note"] = "radius is the circumradius of the sphere through the points in their affine hull"
    return out


# each handler: (args, tol, ctx) -> (status, result, checks, exit_code, raw_stdout)

def cmd_validate(args, tol, ctx):
    ctx["inputs"][args.matrix] = _digest(args.matrix)
    M = load_matrix(args.matrix)
    res = validate_edm(M, tol)
    if isinstance(res, EdmRejection):
        result = {
            "edm": False,
            "reason": res.reason,
            "detail": res.detail,
            "witness_eigenvalue": res.witness_eigenvalue,
        }
        print(f"rejected: {res.reason} ({res.detail})", file=sys.stderr)
        return "rejected", result, {}, REJECTED, None
    cert = spherical_certificate(res)
    result = {
        "edm": True,
        "n": res.n,
        "embedding_dim": res.embedding_dim,
        "min_offdiagonal": res.min_offdiagonal,
        "spherical": _spherical_dict(cert),
    }
    checks = {}
    if cert.unit_spherical:
        rep = embedding_dim_via_delta(res, cert)
        checks["delta_dimension"] = {
            "dimension": rep.dimension,
            "used_perron": rep.used_perron,
            "lambda_max": rep.lambda_max,
            "multiplicity": rep.multiplicity,
            "lambda_max_ok": rep.lambda_max_ok,
            "eigvec_residual": rep.eigvec_residual,
            "eigvec_ok": rep.eigvec_ok,
            "note": rep.note,
        }
    return "ok", result, checks, OK, None


def cmd_orthorep(args, tol, ctx):
    ctx["inputs"][args.graph] = _digest(args.graph)
    with open(args.graph, "r", encoding="utf-8") as fh:
        G = parse_graph(fh.read())
    rep = construct_orthorep(G, tol)
    result = {
        "n": rep.n,
        "k": rep.k,
        "d": rep.d,
        "points": _listify(rep.points),
        "edm": _listify(rep.edm.dist2),
        "w": None if rep.w is None else [float(x) for x in rep.w],
    }
    sign = verify_sign_pattern(rep.edm, G, tol)
    bound = minimality_bound(rep, tol)
    gram = rep.points @ rep.points.T
    checks = {
        "unit_spherical": rep.unit_spherical,
        "unit_rows_max_dev": float(np.max(np.abs(np.diag(gram) - 1.0))) if rep.n else 0.0,
        "sign_pattern": {
            "ok": sign.ok,
            "min_edge_excess": sign.min_edge_excess,
            "max_nonedge_dev": sign.max_nonedge_dev,
        },
        "adjacency_lambda_max": list(rep.adjacency_lambda_max),
        "minimality": {
            "m": bound.m,
            "k": bound.k,
            "dimension": bound.dimension,
            "block_lambda_max": list(bound.block_lambda_max),
            "bound_ok": bound.bound_ok,
            "tight": bound.tight,
        },
        "note": rep.note,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_jsonable(result), fh, indent=2)
            fh.write("\n")
        checks["out"] = args.out
    return "ok", result, checks, OK, None


def cmd_decompose(args, tol, ctx):
    ctx["inputs"][args.matrix] = _digest(args.matrix)
    M = load_matrix(args.matrix)
    res = validate_edm(M, tol)
    if isinstance(res, EdmRejection):
        print(f"rejected: {res.reason} ({res.detail})", file=sys.stderr)
        return "rejected", {"edm": False, "reason": res.reason, "detail": res.detail}, {}, REJECTED, None
    dec = kuperberg_decompose(res, tol)
    result = {
        "permutation": list(dec.permutation),
        "blocks": [
            {
                "indices": list(b.indices),
                "edm": _listify(b.edm.dist2),
                "simplex": b.certificate.is_simplex,
                "w": [float(x) for x in b.certificate.w],
                "origin": b.certificate.origin_position,
            }
            for b in dec.blocks
        ],
        "cross_check": dec.cross_check,
    }
    checks = {
        "n": dec.n,
        "r": dec.r,
        "block_count": dec.block_count,
        "subspace_dims": list(dec.subspace_dims),
        "isolated_assignment": list(dec.isolated_assignment),
        "cross_gram_max": dec.cross_gram_max,
        "block_lambda_max": [b.certificate.lambda_max for b in dec.blocks],
        "block_methods": [b.certificate.method for b in dec.blocks],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_jsonable(result), fh, indent=2)
            fh.write("\n")
        checks["out"] = args.out
    return "ok", result, checks, OK, None


def cmd_gen(args, tol, ctx):
    kind = args.kind
    if kind == "simplex":
        if args.n is None:
            raise PreconditionError("gen simplex needs -n")
        edm = gen_regular_simplex(args.n, args.gamma, tol)
        header = f"gen simplex n={args.n} gamma={args.gamma!r}"
        params = {"n": args.n, "gamma": args.gamma}
    elif kind == "unit-simplex":
        if args.n is None:
            raise PreconditionError("gen unit-simplex needs -n")
        edm = gen_unit_simplex(args.n, tol)
        header = f"gen unit-simplex n={args.n}"
        params = {"n": args.n}
    elif kind == "crosspolytope":
        if args.r is None:
            raise PreconditionError("gen crosspolytope needs -r")
        edm = gen_crosspolytope(args.r, tol)
        header = f"gen crosspolytope r={args.r}"
        params = {"r": args.r}
    elif kind == "random-sphere":
        if args.n is None or args.r is None:
            raise PreconditionError("gen random-sphere needs -n and -r")
        edm, _ = gen_random_spherical(args.n, args.r, args.seed, tol)
        header = f"gen random-sphere n={args.n} r={args.r} seed={args.seed}"
        params = {"n": args.n, "r": args.r, "seed": args.seed}
    else:  # argparse choices make this unreachable
        raise PreconditionError(f"unknown kind {kind!r}")
    text = format_matrix_text(edm.dist2, comment=header)
    if not args.out:
        # documented exception: raw matrix text instead of a JSON report
        return "ok", None, None, OK, text
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    cert = spherical_certificate(edm)
    result = {
        "kind": kind,
        **params,
        "order": edm.n,
        "embedding_dim": edm.embedding_dim,
        "min_offdiagonal": edm.min_offdiagonal,
        "radius": cert.radius,
        "unit_spherical": cert.unit_spherical,
        "out": args.out,
        "sha256": _digest(args.out),
    }
    return "ok", result, {}, OK, None


def cmd_check_rankin(args, tol, ctx):
    if (args.matrix is None) == (args.sample is None):
        raise PreconditionError("give either a matrix file or --sample R, not both")
    if args.matrix is not None:
        return _check_rankin_file(args, tol, ctx)
    return _check_rankin_sample(args, tol)


def _check_rankin_file(args, tol, ctx):
    ctx["inputs"][args.matrix] = _digest(args.matrix)
    M = load_matrix(args.matrix)
    res = validate_edm(M, tol)
    if isinstance(res, EdmRejection):
        print(f"rejected: {res.reason} ({res.detail})", file=sys.stderr)
        return "rejected", {"edm": False, "reason": res.reason, "detail": res.detail}, {}, REJECTED, None
    n, r = res.n, res.embedding_dim
    result = {"mode": "file", "n": n, "r": r}
    code = OK
    status = "ok"
    applicable = False
    if n == r + 2:
        applicable = True
        rep = rankin_codimension2_check(res, tol)
        result["codimension2"] = {
            "ok": rep.ok,
            "min_offdiag": rep.min_offdiag,
            "witness": list(rep.witness),
            "message": rep.message,
        }
        if not rep.ok:
            status, code = "inconsistent", FAULT
            print(rep.message, file=sys.stderr)
    if n == 2 * r:
        applicable = True
        rec = crosspolytope_recognize(res, tol)
        result["crosspolytope"] = {
            "ok": rec.ok,
            "permutation": None if rec.permutation is None else list(rec.permutation),
            "max_deviation": rec.max_deviation,
            "reason": rec.reason,
        }
        if not rec.ok and code == OK:
            status, code = "declined", REJECTED
            print(f"not a crosspolytope: {rec.reason}", file=sys.stderr)
    if not applicable:
        raise PreconditionError(
            f"no extremal case applies: n = {n}, r = {r} is neither r + 2 nor 2r"
        )
    return status, result, {}, code, None


def _check_rankin_sample(args, tol):
    r = args.sample
    if r < 2:
        raise PreconditionError(f"--sample needs r >= 2, got {r}")
    if args.trials < 1:
        raise PreconditionError(f"--trials must be positive, got {args.trials}")
    master = np.random.SeedSequence(args.seed)
    children = master.spawn(args.trials)
    per_trial = []
    failures = []
    for t, child in enumerate(children):
        edm, _ = gen_random_spherical(r + 2, r, child, tol)
        if edm.embedding_dim != r:
            # rank-degenerate sample; astronomically unlikely, still a result
            failures.append({"trial": t, "reason": f"embedding_dim {edm.embedding_dim} != {r}"})
            per_trial.append(None)
            continue
        rep = rankin_codimension2_check(edm, tol)
        per_trial.append(rep.min_offdiag)
        if not rep.ok:
            failures.append({"trial": t, "reason": rep.message})
    finite = [v for v in per_trial if v is not None]
    result = {
        "mode": "sample",
        "r": r,
        "n": r + 2,
        "trials": args.trials,
        "seed": args.seed,
        "all_ok": not failures,
        "failures": failures,
        "max_min_offdiag": max(finite) if finite else None,
        "min_offdiag_per_trial": per_trial,
    }
    if failures:
        print(f"{len(failures)} of {args.trials} trials inconsistent", file=sys.stderr)
        return "inconsistent", result, {}, FAULT, None
    return "ok", result, {}, OK, None


def build_parser() -> argparse.ArgumentParser:
    tolp = argparse.ArgumentParser(add_help=False)
    g = tolp.add_argument_group("tolerances")
    g.add_argument("--tol-profile", choices=["default", "strict", "loose"], default=None,
                   help=f"threshold preset (default: ${TOL_PROFILE_ENV} or 'default')")
    g.add_argument("--tol-psd", type=float, default=None, help="PSD slack, relative to scale")
    g.add_argument("--tol-rank", type=float, default=None, help="rank cut, relative to scale")
    g.add_argument("--tol-cluster", type=float, default=None, help="eigenvalue clustering band")
    g.add_argument("--tol-sign", type=float, default=None, help="distance-vs-2 separation band")
    g.add_argument("--tol-unit", type=float, default=None, help="unit circumradius band")

    p = argparse.ArgumentParser(
        prog="edmsphere",
        description="Spherical Euclidean distance matrix toolkit",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("validate", parents=[tolp],
                        help="certify a matrix as an EDM and test sphericity")
    pv.add_argument("matrix", help="matrix file (text or JSON)")
    pv.set_defaults(handler=cmd_validate)

    po = sub.add_parser("orthorep", parents=[tolp],
                        help="minimum-dimension orthonormal representation of a graph")
    po.add_argument("graph", help="edge list file")
    po.add_argument("--out", default=None, help="also write the representation JSON here")
    po.set_defaults(handler=cmd_orthorep)

    pd = sub.add_parser("decompose", parents=[tolp],
                        help="split a unit spherical EDM into orthogonal simplex blocks")
    pd.add_argument("matrix", help="matrix file (text or JSON)")
    pd.add_argument("--out", default=None, help="also write the decomposition JSON here")
    pd.set_defaults(handler=cmd_decompose)

    pg = sub.add_parser("gen", parents=[tolp], help="generate a canonical EDM")
    pg.add_argument("kind", choices=["simplex", "unit-simplex", "crosspolytope", "random-sphere"])
    pg.add_argument("-n", type=int, default=None, help="number of points")
    pg.add_argument("-r", type=int, default=None, help="dimension")
    pg.add_argument("--gamma", type=float, default=1.0, help="squared edge length (simplex)")
    pg.add_argument("--seed", type=int, default=0, help="RNG seed (random-sphere)")
    pg.add_argument("--out", default=None,
                    help="write matrix text here and report JSON on stdout; "
                         "without it the matrix text itself goes to stdout")
    pg.set_defaults(handler=cmd_gen)

    pr = sub.add_parser("check-rankin", parents=[tolp],
                        help="extremal checks at n = r + 2 and n = 2r")
    pr.add_argument("matrix", nargs="?", default=None, help="matrix file (text or JSON)")
    pr.add_argument("--sample", type=int, default=None, metavar="R",
                    help="instead of a file: sample random unit sphere configs at n = R + 2")
    pr.add_argument("--trials", type=int, default=100, help="sample mode trial count")
    pr.add_argument("--seed", type=int, default=0, help="sample mode master seed")
    pr.set_defaults(handler=cmd_check_rankin)
    return p


def main(argv=None) -> int:
    echo = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    ctx = {"inputs": {}}
    profile = "default"
    raw = None
    try:
        tol, profile = _resolve_tolerances(args)
        status, result, checks, code, raw = args.handler(args, tol, ctx)
        tol_dict = asdict(tol)
    except FormatError as exc:
        status, result, checks, code = "precondition-failed", {"error": str(exc)}, {}, REJECTED
        tol_dict = _tol_dict_safe(args)
        print(f"input format error: {exc}", file=sys.stderr)
    except (PreconditionError, FileNotFoundError, IsADirectoryError, PermissionError, ValueError) as exc:
        status, result, checks, code = "precondition-failed", {"error": str(exc)}, {}, REJECTED
        tol_dict = _tol_dict_safe(args)
        print(f"precondition failed: {exc}", file=sys.stderr)
    except ConsistencyError as exc:
        status, result, checks, code = "inconsistent", {"error": str(exc)}, {}, FAULT
        tol_dict = _tol_dict_safe(args)
        print(f"internal inconsistency: {exc}", file=sys.stderr)
    except Exception as exc:  # pragma: no cover - final safety net
        status, result, checks, code = "error", {"error": f"{type(exc).__name__}: {exc}"}, {}, FAULT
        tol_dict = _tol_dict_safe(args)
        traceback.print_exc()
    if raw is not None:
        sys.stdout.write(raw)
        return code
    report = {
        "tool": "edmsphere",
        "version": __version__,
        "command": echo,
        "inputs": ctx["inputs"],
        "profile": profile,
        "tolerances": tol_dict,
        "status": status,
        "result": result,
        "checks": checks,
        "elapsed_seconds": round(time.perf_counter() - t0, 6),
    }
    print(json.dumps(_jsonable(report), indent=2))
    return code


def _tol_dict_safe(args):
    try:
        tol, _ = _resolve_tolerances(args)
        return asdict(tol)
    except Exception:
        return None


if __name__ == "__main__":
    sys.exit(main())
