"""Command line front end: ``ohwalk verify | simulate | scan``.

Exit codes: 0 success, 1 a check failed, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import dynamics, krawtchouk, projection, scheme, transfer
from .checks import CheckReport, GuardError
from .lattice import check_site, sites
from .snapshot import SnapshotDocument

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("scheme", "projection", "polynomials", "dynamics", "all")
GUARDS = {"scheme": scheme.DEFAULT_MAX_N, "projection": scheme.DEFAULT_MAX_N,
          "polynomials": krawtchouk.MAX_RECURRENCE_N, "dynamics": 30}
DYNAMICS_TIMES = (0.3, math.pi / 5, math.pi / 4, math.pi / 2, 1.7)


class UsageError(Exception):
    pass


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt}


def parse_real(text: str) -> float:
    """Evaluate a small arithmetic expression such as ``pi/4`` or ``sqrt(2)``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported expression {text!r}")

    try:
        value = ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError, ValueError) as exc:
        raise UsageError(f"cannot parse number {text!r}: {exc}") from None
    if not math.isfinite(value):
        raise UsageError(f"{text!r} is not finite")
    return value


def parse_site(text: str, N: int):
    try:
        i, j = (int(v) for v in text.split(","))
        return check_site(N, (i, j))
    except ValueError as exc:
        raise UsageError(f"bad site {text!r}: {exc}") from None


def parse_ratio(text: str):
    parts = text.split("/")
    try:
        if len(parts) != 2:
            raise ValueError("expected a/b")
        a, b = int(parts[0]), int(parts[1])
        return transfer.classify_ratio(a, b)
    except ValueError as exc:
        raise UsageError(f"malformed ratio {text!r}: {exc}") from None


def _guard(suite: str, N: int, override: bool) -> Optional[int]:
    limit = None if override else GUARDS[suite]
    if limit is not None and N > limit:
        raise GuardError(f"suite {suite!r}: N={N} exceeds guard N <= {limit} (use --guard-override)")
    return limit


def _verify_scheme(N, alpha, beta, limit) -> List[CheckReport]:
    _, bm = scheme.verify_bose_mesner(N, max_n=limit)
    return [bm, scheme.check_regularity(N, max_n=limit)]


def _verify_projection(N, alpha, beta, limit) -> List[CheckReport]:
    cb = projection.build_columns(N, max_n=limit)
    rep = CheckReport(f"projection vs lattice Hamiltonian N={N} alpha={alpha} beta={beta}")
    dev = float(np.max(np.abs(projection.project_walk(cb, alpha, beta).matrix
                              - dynamics.build_hamiltonian(N, alpha, beta).matrix)))
    rep.details["max_deviation"] = dev
    rep.require(dev < 1e-12, f"max entry deviation {dev:.3e} >= 1e-12")
    return [projection.check_column_invariance(cb), rep]


def _verify_polynomials(N, alpha, beta, limit) -> List[CheckReport]:
    reports = [krawtchouk.check_recurrences(N, alpha=alpha, beta=beta, max_n=limit)]
    rng = np.random.default_rng(N)
    for s, t in rng.uniform(-1.5, 1.5, size=(3, 2)):
        reports.append(krawtchouk.check_generating_function(N, s=float(s), t=float(t)))
    sd = krawtchouk.build_spectral(N, alpha, beta)
    H = dynamics.build_hamiltonian(N, alpha, beta).matrix
    rep = CheckReport(f"eigenbasis N={N}")
    orth = krawtchouk.orthogonality_error(N)
    resid = float(np.max(np.abs(H @ sd.U - sd.U * sd.eigenvalues)))
    rep.details.update(orthogonality=orth, eigen_residual=resid)
    rep.require(orth < 1e-10, f"orthogonality error {orth:.3e}")
    rep.require(resid < 1e-9, f"eigen residual {resid:.3e}")
    reports.append(rep)
    return reports


def _verify_dynamics(N, alpha, beta, limit) -> List[CheckReport]:
    sd = krawtchouk.build_spectral(N, alpha, beta)
    H = dynamics.build_hamiltonian(N, alpha, beta)
    rep = CheckReport(f"triple equivalence N={N} alpha={alpha} beta={beta}")
    worst = norm_err = 0.0
    for t in DYNAMICS_TIMES:
        spec = dynamics.field_spectral(sd, (0, 0), t)
        oracle = dynamics.amplitude_expm_oracle(H, (0, 0), t)
        closed = np.array([dynamics.amplitude_closed_form(N, alpha, beta, i, j, t) for i, j in sites(N)])
        worst = max(worst, float(np.max(np.abs(spec.amplitudes - oracle.amplitudes))),
                    float(np.max(np.abs(spec.amplitudes - closed))))
        norm_err = max(norm_err, abs(spec.norm ** 2 - 1), abs(oracle.norm ** 2 - 1))
    rep.details.update(max_deviation=worst, max_norm_error=norm_err)
    rep.require(worst < 1e-9, f"methods disagree by {worst:.3e}")
    rep.require(norm_err < 1e-10, f"norm error {norm_err:.3e}")
    return [rep]


_SUITE_FUNCS = {"scheme": _verify_scheme, "projection": _verify_projection,
                "polynomials": _verify_polynomials, "dynamics": _verify_dynamics}


def cmd_verify(args) -> int:
    names = [s for s in SUITES if s != "all"] if args.suite == "all" else [args.suite]
    alpha, beta = parse_real(args.alpha), parse_real(args.beta)
    if alpha < 0 or beta < 0:
        raise UsageError("alpha and beta must be non-negative")
    limits = {name: _guard(name, args.n, args.guard_override) for name in names}
    reports: List[CheckReport] = []
    for name in names:
        reports += _SUITE_FUNCS[name](args.n, alpha, beta, limits[name])
    passed = all(r.passed for r in reports)
    doc = {"N": args.n, "alpha": alpha, "beta": beta, "suites": names,
           "passed": passed, "checks": [r.to_dict() for r in reports]}
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for r in reports:
            print(r.summary())
        print("ALL PASSED" if passed else "FAILED")
    if args.out:
        _write(Path(args.out), json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_simulate(args) -> int:
    N = args.n
    alpha, beta = parse_real(args.alpha), parse_real(args.beta)
    source = parse_site(args.source, N)
    times = [parse_real(t) for t in args.times.split(",") if t.strip()]
    if not times:
        raise UsageError("no times given")
    sd = krawtchouk.build_spectral(N, alpha, beta)
    docs = [SnapshotDocument(N, alpha, beta, source, f.t, f)
            for f in dynamics.evolve_field(sd, source, times)]
    ext = args.format
    if args.out is None:
        if ext == "csv":
            raise UsageError("--format csv needs --out DIR")
        sys.stdout.write("[\n" + ",\n".join(d.to_json().rstrip("\n") for d in docs) + "\n]\n")
        return EXIT_OK
    out = Path(args.out)
    for k, doc in enumerate(docs):
        text = doc.to_json() if ext == "json" else doc.to_csv()
        _write(out / f"snapshot_{k:03d}.{ext}", text)
    print(f"wrote {len(docs)} snapshot(s) to {out}")
    return EXIT_OK


def cmd_scan(args) -> int:
    N = args.n
    prediction = None
    if args.ratio is not None:
        rc = parse_ratio(args.ratio)
        alpha, beta = float(rc.a), float(rc.b)
        prediction = {"a": rc.a, "b": rc.b, "tag": rc.tag,
                      "pst_predicted": rc.pst_predicted, "predicted_time": rc.pst_time}
    else:
        alpha, beta = parse_real(args.alpha), parse_real(args.beta)
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    t_max = parse_real(args.tmax)
    source = parse_site(args.source, N)
    sd = krawtchouk.build_spectral(N, alpha, beta)
    trace = transfer.scan_times(sd, source, t_max, args.steps)
    events = transfer.find_events(sd, source, trace)
    doc: Dict = {"N": N, "alpha": alpha, "beta": beta, "source": list(source),
                 "t_max": t_max, "steps": args.steps,
                 "max_corner_probability": float(trace.corner.max()),
                 "events": [e.to_dict() for e in events]}
    if prediction is not None:
        doc["prediction"] = prediction
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ohwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--alpha", default="1")
    v.add_argument("--beta", default="2")
    v.add_argument("--guard-override", action="store_true")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="write amplitude snapshots")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", default="1")
    s.add_argument("--beta", default="2")
    s.add_argument("--source", default="0,0")
    s.add_argument("--times", required=True, help="comma separated, e.g. 0,pi/6,pi/4")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out", help="output directory")
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("scan", help="search a time grid for PST and FR events")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--ratio", help="alpha/beta as integers a/b (sets alpha=a, beta=b)")
    c.add_argument("--alpha", default="1")
    c.add_argument("--beta", default="2")
    c.add_argument("--source", default="0,0")
    c.add_argument("--tmax", default="pi")
    c.add_argument("--steps", type=int, default=4000)
    c.add_argument("--out", help="write the JSON event list here")
    c.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
