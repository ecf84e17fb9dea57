"""Command-line front end.

Every command reads a JSON config (see :mod:`veronese_lab.jsonio`) and
writes a JSON report to stdout or ``--out``.  Exit codes: 0 on a completed
computation (whatever the verdict), 2 on invalid input, 3 when an operation's
hypotheses are not met.

    veronese-lab classify --degree 2 points.json
    veronese-lab multidegree-check --r 2 --degree 2 --n 6 --trials 100 --seed 42
    veronese-lab classify --degree 3 --batch configs/
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from . import jsonio
from .errors import InvalidInputError, PreconditionError
from .exactcore import DEFAULT_MINOR_CAP, minors_vanish
from .fit import fit_hypersurface, minimal_degree
from .singular import (
    DEFAULT_KGEN_CAP,
    classify,
    classify_plane,
    classify_quadric_p3,
    is_d_normal,
    k_generality,
    max_secant,
    regularity_of_points,
    span_dimension,
)
from .variety import hypersurface_system, membership, multidegree_check, recover_coefficients_local
from .veronese import monomial_basis, multi_veronese, num_monomials

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 2, 3

COMMANDS = (
    "membership",
    "interpolate",
    "classify",
    "classify-plane",
    "classify-quadric3",
    "regularity",
    "secants",
    "fit",
    "minimal-degree",
    "multidegree-check",
)


def _need(value, flag: str):
    if value is None:
        raise InvalidInputError(f"{flag}: required for this command (flag or config key)")
    return value


def _option(args, cfg, attr: str, key: str):
    v = getattr(args, attr, None)
    return v if v is not None else cfg.options.get(key)


def _run_membership(args, cfg):
    pts = jsonio.config_points(cfg)
    d = _need(_option(args, cfg, "degree", "d"), "--degree")
    m = _option(args, cfg, "m", "m") or 1
    verdict = membership(pts, d, m)
    out = jsonio.membership_json(verdict)
    if args.cap_minors is not None:
        M = multi_veronese(pts, d)
        t = num_monomials(pts.r, d) - m + 1
        if t <= min(M.rows, M.cols):
            out["minors_vanish"] = minors_vanish(M, t, args.cap_minors)
        else:
            out["minors_vanish"] = True  # no minors of that size exist
    return out, []


def _run_interpolate(args, cfg):
    pts = jsonio.config_points(cfg)
    d = _need(_option(args, cfg, "degree", "d"), "--degree")
    system = hypersurface_system(pts, d)
    out = jsonio.system_json(system)
    if system.m == 1:
        out["local_recovery_agrees"] = recover_coefficients_local(pts, d) == system.forms[0]
    return out, []


def _run_classify(args, cfg):
    pts = jsonio.config_points(cfg)
    d = _need(_option(args, cfg, "degree", "d"), "--degree")
    rep = classify(pts, d, kgen_cap=args.cap_kgen)
    return jsonio.classification_json(rep), list(rep.char_warnings)


def _run_classify_plane(args, cfg):
    pts = jsonio.config_points(cfg)
    d = _need(_option(args, cfg, "degree", "d"), "--degree")
    return jsonio.special_json(classify_plane(pts, d)), []


def _run_classify_quadric3(args, cfg):
    pts = jsonio.config_points(cfg)
    return jsonio.special_json(classify_quadric_p3(pts)), []


def _run_regularity(args, cfg):
    pts = jsonio.config_points(cfg)
    distinct = list(pts)
    out = {
        "n": len(distinct),
        "span_dimension": span_dimension(distinct),
        "regularity": regularity_of_points(distinct),
    }
    d = _option(args, cfg, "degree", "d")
    if d is not None:
        out["d"] = d
        out["d_normal"] = is_d_normal(distinct, d)
    return out, []


def _run_secants(args, cfg):
    pts = list(jsonio.config_points(cfg))
    count, witness = max_secant(pts)
    t = k_generality(pts, args.cap_kgen, args.cap_minors or DEFAULT_MINOR_CAP)
    return {
        "max_secant": count,
        "witness": list(witness),
        "k_generality": jsonio._tgen(t),
        "span_dimension": span_dimension(pts),
    }, []


def _run_fit(args, cfg):
    cloud = jsonio.config_cloud(cfg)
    d = _need(_option(args, cfg, "degree", "d"), "--degree")
    res = fit_hypersurface(cloud, d)
    return jsonio.fit_json(res, monomial_basis(cloud.r, d).exponents), []


def _run_minimal_degree(args, cfg):
    cloud = jsonio.config_cloud(cfg)
    d_max = _need(_option(args, cfg, "dmax", "d_max"), "--dmax")
    eps = _option(args, cfg, "eps", "eps")
    search = minimal_degree(cloud, d_max, eps)
    exps = monomial_basis(cloud.r, search.degree).exponents if search.found else ()
    return jsonio.search_json(search, exps), []


def _run_multidegree(args, cfg):
    r = _need(args.r if args.r is not None else cfg.r, "--r")
    d = _need(_option(args, cfg, "degree", "d"), "--degree")
    n = _need(_option(args, cfg, "n", "n"), "--n")
    trials = _need(_option(args, cfg, "trials", "trials"), "--trials")
    seed = _need(_option(args, cfg, "seed", "seed"), "--seed")
    if cfg.is_float:
        raise InvalidInputError("field: multidegree-check needs an exact field")
    rep = multidegree_check(r, d, n, trials, seed, cfg.field)
    return jsonio.multidegree_json(rep), []


_RUNNERS = {
    "membership": _run_membership,
    "interpolate": _run_interpolate,
    "classify": _run_classify,
    "classify-plane": _run_classify_plane,
    "classify-quadric3": _run_classify_quadric3,
    "regularity": _run_regularity,
    "secants": _run_secants,
    "fit": _run_fit,
    "minimal-degree": _run_minimal_degree,
    "multidegree-check": _run_multidegree,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="veronese-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="JSON config file ('-' for stdin)")
        p.add_argument("--degree", "-d", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--field", help="rational | fp:<prime> | float (overrides the config)")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--dmax", type=int)
        p.add_argument("--eps", type=float)
        p.add_argument("--r", type=int, help="ambient dimension (multidegree-check)")
        p.add_argument("--n", type=int, help="number of points (multidegree-check)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--batch", help="run on every *.json file of this directory")
        p.add_argument("--cap-minors", type=int, default=None)
        p.add_argument("--cap-kgen", type=int, default=DEFAULT_KGEN_CAP)
    return parser


def _arguments_echo(args) -> dict:
    skip = {"input", "out", "batch"}
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and k not in skip}


def run_one(args, raw: bytes | None) -> tuple[int, dict]:
    """Run ``args.command`` on one raw config; returns (exit code, report)."""
    report = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "tool": "veronese_lab",
        "version": __version__,
        "command": args.command,
        "arguments": _arguments_echo(args),
        "input_digest": "sha256:" + hashlib.sha256(raw).hexdigest() if raw is not None else None,
    }
    start = time.perf_counter()
    code = EXIT_OK
    try:
        if raw is None:
            data = {"field": "fp:1000003"} if args.command == "multidegree-check" else None
            if data is None:
                raise InvalidInputError("input: a JSON config file is required for this command")
        else:
            try:
                data = json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise InvalidInputError(f"input: malformed JSON ({exc})") from None
            if args.command == "multidegree-check" and isinstance(data, dict):
                data.setdefault("field", "fp:1000003")
        cfg = jsonio.load_config(data, args.field)
        result, warnings = _RUNNERS[args.command](args, cfg)
        report["result"] = result
        report["char_warnings"] = warnings
    except InvalidInputError as exc:
        code = EXIT_INPUT
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except PreconditionError as exc:
        code = EXIT_PRECONDITION
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return code, report


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("VERONESE_LAB_THREADS", "1")))
    except ValueError:
        return 1


def run_batch(args) -> tuple[int, dict]:
    directory = Path(args.batch)
    if not directory.is_dir():
        return EXIT_INPUT, {"error": {"type": "InvalidInputError", "message": f"batch: {directory} is not a directory"}}
    files = sorted(directory.glob("*.json"))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda f: run_one(args, f.read_bytes()), files))
    entries = [{"file": f.name, "exit_code": code, "report": rep} for f, (code, rep) in zip(files, results)]
    failed = sum(1 for e in entries if e["exit_code"] != EXIT_OK)
    aggregate = {
        "schema_version": jsonio.SCHEMA_VERSION,
        "tool": "veronese_lab",
        "version": __version__,
        "command": args.command,
        "batch": True,
        "reports": entries,
        "summary": {"files": len(entries), "succeeded": len(entries) - failed, "failed": failed},
    }
    code = max((e["exit_code"] for e in entries), default=EXIT_OK)
    return code, aggregate


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.batch:
        code, report = run_batch(args)
    else:
        raw = None
        if args.input == "-":
            raw = sys.stdin.buffer.read()
        elif args.input is not None:
            try:
                raw = Path(args.input).read_bytes()
            except OSError as exc:
                print(f"input: cannot read {args.input}: {exc}", file=sys.stderr)
                return EXIT_INPUT
        code, report = run_one(args, raw)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
