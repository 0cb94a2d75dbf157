"""Command-line front end.

Exit codes: 0 when a computation succeeds or a verification passes, 1 when a
verification fails, 2 on usage or input errors.  Results go to standard
output as JSON (sorted keys) or, with ``--csv``, as CSV rows.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .config import Config, load_config
from .constants import bound_chain
from .cover import (
    SuParams,
    circle_curve,
    class_params,
    cover_mul,
    hyperbola_curve,
    lift_curve,
    lift_path,
    su2_geodesic,
    vtD_curve,
)
from .decay import TestMultiplier, decay_experiment, default_multiplier, surrogate_norm
from .errors import OutOfWindow, SpcoverError
from .harmonic import CoeffExpansion, disc_coefficients, l1_multiplier_norm, legendre_coefficients, lp_coefficient_norm
from .haar import su2_rule
from .serialize import cover_from_json, cover_to_json, dumps, matrix_from_json, path_from_json
from .symplectic import kak_parameters
from .verify import SUITES, measured_ctilde


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _json_arg(text: str):
    """Inline JSON, or ``@path`` to read it from a file."""
    try:
        if text.startswith("@"):
            return json.loads(Path(text[1:]).read_text(encoding="utf-8"))
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON argument: {exc}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="JSON file of Config fields")
    p.add_argument("--seed", type=int, help="random seed (overrides config)")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON where supported")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="spcover", description="Universal cover of Sp(2,R): arithmetic and verification suites.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("kak", parents=[common], help="polar parameters of a symplectic matrix")
    p.add_argument("--matrix", required=True, help="16 numbers row-major (JSON or @file)")

    p = sub.add_parser("cover-mul", parents=[common], help="product of two cover elements")
    p.add_argument("--x", required=True, help='{"g": [...16...], "t": ...}')
    p.add_argument("--y", required=True)

    p = sub.add_parser("lift", parents=[common], help="lift a path to the cover")
    p.add_argument("--path", required=True, choices=["vtD", "su2", "hyperbola", "circle", "file"])
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--quat", type=float, nargs=4, metavar=("A", "B", "C", "D"), default=(1.0, 0.0, 0.0, 0.0))
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--samples", help="JSON array of matrices (or @file) for --path file")

    p = sub.add_parser("class", parents=[common], help="class parameters (beta, gamma, t) of a cover element")
    p.add_argument("--element", required=True)

    p = sub.add_parser("verify-lemma", parents=[common], help="run a verification suite")
    p.add_argument("lemma", choices=sorted(SUITES))
    p.add_argument("--grid", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("expand", parents=[common], help="synthesize an expansion, or analyze it back")
    p.add_argument("--expansion", required=True, help='{"kind": ..., "coeffs": [...]} (JSON or @file)')
    p.add_argument("--at", help="JSON list of points: [re, im] pairs for disc, reals for legendre")
    p.add_argument("--analyze", action="store_true", help="round-trip through Haar quadrature")

    p = sub.add_parser("norms", parents=[common], help="l1 and weighted lp coefficient norms")
    p.add_argument("--expansion", required=True)
    p.add_argument("--p", type=float)

    p = sub.add_parser("constants", parents=[common], help="explicit constant chain")
    p.add_argument("--p", type=float, help="Schatten exponent (p-mode)")
    p.add_argument("--ctilde", type=float)

    p = sub.add_parser("decay", parents=[common], help="decay experiment on a synthetic multiplier")
    p.add_argument("--multiplier", help="multiplier JSON (or @file); default built-in")
    p.add_argument("--s-max", type=float, default=30.0)
    p.add_argument("--steps", type=int, default=121)
    p.add_argument("--t-count", type=int, default=9)
    return parser


def _config(args) -> Config:
    try:
        return load_config(args.config, {"seed": args.seed})
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad config: {exc}") from exc


def _emit_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _cmd_kak(args, cfg):
    m = matrix_from_json(_json_arg(args.matrix))
    return kak_parameters(m, cfg.tol_sp), 0


def _cmd_cover_mul(args, cfg):
    x, y = cover_from_json(_json_arg(args.x)), cover_from_json(_json_arg(args.y))
    return cover_to_json(cover_mul(x, y)), 0


def _cmd_lift(args, cfg):
    kw = dict(steps=cfg.path_steps, max_depth=cfg.path_max_depth)
    if args.path == "file":
        if not args.samples:
            raise UsageError("--path file needs --samples")
        x = lift_path(path_from_json(_json_arg(args.samples)))
    else:
        if args.path == "vtD":
            curve = vtD_curve(args.t, args.beta, args.gamma)
        elif args.path == "su2":
            curve = su2_geodesic(SuParams.normalized(*args.quat))
        elif args.path == "hyperbola":
            curve = hyperbola_curve(args.alpha, SuParams.normalized(*args.quat))
        else:
            curve = circle_curve(args.alpha, SuParams.normalized(*args.quat), args.sign)
        x = lift_curve(curve, **kw)
    out = cover_to_json(x)
    out["t_end"] = x.t
    out["class"] = class_params(x)
    return out, 0


def _cmd_class(args, cfg):
    return class_params(cover_from_json(_json_arg(args.element))), 0


def _cmd_verify(args, cfg):
    report = SUITES[args.lemma](cfg, args)
    report = {"lemma": args.lemma, **report}
    if args.csv:
        extra = report.get("extra", {})
        if "sup_by_degree" in extra:
            return _emit_csv(["degree", "sup_ratio"], enumerate(extra["sup_by_degree"])), 0 if report["passed"] else 1
    return report, 0 if report["passed"] else 1


def _cmd_expand(args, cfg):
    e = CoeffExpansion.from_json(_json_arg(args.expansion))
    out = {"expansion": e.to_json(), "degree": e.degree}
    if args.at:
        pts = _json_arg(args.at)
        if e.kind == "disc":
            z = np.array([complex(*p) if isinstance(p, list) else complex(p) for p in pts])
            out["values"] = e.synthesize(z)
        else:
            out["values"] = e.synthesize(np.array(pts, dtype=float))
    if args.analyze:
        order = max(cfg.haar_order, 4 * e.degree + 1 if e.kind == "legendre" else 2 * e.degree + 1)
        rule = su2_rule(order)
        fn = disc_coefficients if e.kind == "disc" else legendre_coefficients
        back = fn(e.on_su2(), rule, max_degree=e.degree)
        out["analyzed"] = CoeffExpansion(e.kind, {k: v for k, v in back.coeffs.items() if abs(v) > 1e-12}).to_json()
        out["max_roundtrip_error"] = max(
            [abs(back.coeffs.get(k, 0) - e.coeffs.get(k, 0)) for k in set(back.coeffs) | set(e.coeffs)] or [0.0]
        )
    return out, 0


def _cmd_norms(args, cfg):
    e = CoeffExpansion.from_json(_json_arg(args.expansion))
    out = {"kind": e.kind, "l1": l1_multiplier_norm(e)}
    p = args.p if args.p is not None else e.p
    if p is not None:
        out["p"] = p
        out["lp"] = lp_coefficient_norm(e, p)
    return out, 0


def _cmd_constants(args, cfg):
    ctilde = args.ctilde if args.ctilde is not None else measured_ctilde(cfg)
    try:
        chain = bound_chain(ctilde, args.p)
    except OutOfWindow as exc:
        return {"error": "OutOfWindow", "p": exc.p, "endpoint": exc.endpoint, "dual_endpoint": exc.dual_endpoint}, 2
    return chain.to_dict(), 0


def _cmd_decay(args, cfg):
    m = TestMultiplier.from_json(_json_arg(args.multiplier)) if args.multiplier else default_multiplier()
    chain = bound_chain(measured_ctilde(cfg))
    norm = surrogate_norm(m, rng=np.random.default_rng(cfg.seed))
    t_values = np.linspace(-math.pi, math.pi, args.t_count)
    res = decay_experiment(m, chain, t_values, args.s_max, args.steps, norm=norm)
    code = 0 if res.passed() else 1
    if args.csv:
        header = ["t", "s", "beta", "gamma", "phi_re", "phi_im", "deviation", "envelope", "in_regime"]
        return _emit_csv(header, res.rows), code
    out = {k: v for k, v in vars(res).items() if k not in ("rows", "ray_values")}
    out["passed"] = res.passed()
    out["multiplier"] = m.to_json()
    return out, code


COMMANDS = {
    "kak": _cmd_kak,
    "cover-mul": _cmd_cover_mul,
    "lift": _cmd_lift,
    "class": _cmd_class,
    "verify-lemma": _cmd_verify,
    "expand": _cmd_expand,
    "norms": _cmd_norms,
    "constants": _cmd_constants,
    "decay": _cmd_decay,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage())
        cfg = _config(args)
        result, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 2
    except (SpcoverError, ValueError, TypeError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    text = result if isinstance(result, str) else dumps(result) + "\n"
    stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
