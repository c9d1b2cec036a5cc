"""Command-line front end.

Every subcommand maps onto one library operation and writes a JSON document
with sorted keys and a top-level ``"schema": 1``. Exit status is 0 when every
report passes, 1 when some report is not certified, and 2 on input errors.

Parameters can also come from a key-value file given with ``--config``::

    # lines are "key = value"; keys are flag names without the dashes
    command = theorem-b
    branch = d=3; points=0,1,inf; mults=1,1,1
    lambda = 1
    digits = 80

Flags given on the command line win over the file.
"""

from __future__ import annotations

import argparse
import ast
import json
import operator
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any

import mpmath

from . import cover, monomials, verify
from .errors import ConfigError, GammaPeriodsError
from .exact import as_fraction, format_fraction, unit_group
from .numerics import min_poly, pslq

SCHEMA_VERSION = 1
DIGITS_ENV = "GAMMA_PERIODS_DIGITS"
MIN_DIGITS = 20

# reference curves for the discriminants the lcs command knows by default
DEFAULT_CM_CURVES = {-4: (Fraction(-1), Fraction(0)), -3: (Fraction(0), Fraction(16))}

DEFAULT_DIGITS = {
    "theorem-b": 60, "euler": 50, "lcs": 60, "distribution": 50,
    "unit-period": 40, "pslq": 50, "duality": 60,
}


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    digits: int = 50
    pslq_degree: int | None = None
    pslq_height: int = verify.DEFAULT_HEIGHT
    output: Path | None = None
    jobs: int = 1
    timings: bool = False


# ---------------------------------------------------------------- parsing

def _fraction_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction_arg(t.strip()) for t in text.split(",") if t.strip()]


def _hodge_pairs(text: str) -> dict[int, int]:
    """``"1:0, 2:1"`` -> {1: 0, 2: 1}."""
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            lam, p = item.split(":")
            out[int(lam)] = int(p)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"expected lambda:p pairs, got {item.strip()!r}") from exc
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="key-value file with default parameters")
    common.add_argument("--digits", type=int, help=f"working precision (>= {MIN_DIGITS}); "
                        f"default from ${DIGITS_ENV} or per command")
    common.add_argument("--output", type=Path, help="write the JSON report here instead of stdout")
    common.add_argument("--jobs", type=int, help="parallel verifications (default: CPU count)")
    common.add_argument("--timings", action="store_true", help="include runtimes (not byte-stable)")

    pslq_opts = _Parser(add_help=False)
    pslq_opts.add_argument("--pslq-degree", type=int, help="maximum polynomial degree")
    pslq_opts.add_argument("--pslq-height", type=int, help="coefficient height in digits")

    branch = _Parser(add_help=False)
    branch.add_argument("--branch", required=True,
                        help='branch data, e.g. "d=3; points=0,1,inf; mults=1,1,1"')
    branch.add_argument("--lambda", dest="lam", type=_int_list,
                        help="comma-separated units (default: all units)")

    parser = _Parser(prog="gamma-periods", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve-epsilon", parents=[common], help="solve for an exponent function")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", dest="hodge", type=_hodge_pairs, required=True,
                   help='Hodge function as "lambda:p" pairs over all units')
    p.add_argument("--weight", type=int, default=1)

    p = sub.add_parser("koblitz-ogus", parents=[common], help="test whether all moments vanish")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=_fraction_list, required=True,
                   help="values eps(0), ..., eps(d-1)")

    sub.add_parser("cover", parents=[common, branch], help="cover invariants and Hodge table")
    sub.add_parser("hrr-check", parents=[common, branch], help="multiplicativity identity")
    sub.add_parser("serre-check", parents=[common, branch], help="Serre duality bookkeeping")
    sub.add_parser("theorem-b", parents=[common, branch, pslq_opts],
                   help="eigen-period against its gamma monomial")
    sub.add_parser("duality", parents=[common, branch, pslq_opts],
                   help="per(M_lambda) per(M_-lambda) against (2 pi i)^chi(U)")

    p = sub.add_parser("euler", parents=[common], help="beta integral against gamma values")
    p.add_argument("--a", type=_fraction_arg, required=True)
    p.add_argument("--b", type=_fraction_arg, required=True)

    p = sub.add_parser("lcs", parents=[common, pslq_opts], help="Lerch-Chowla-Selberg check")
    p.add_argument("--discriminant", type=int, required=True)
    p.add_argument("--curve", type=_fraction_list,
                   help="a4,a6 of y^2 = x^3 + a4 x + a6 (default: a reference curve)")
    p.add_argument("--period", help="curve period as a decimal string (overrides --curve)")
    p.add_argument("--scale", type=_fraction_list,
                   help="multiply the period by sqrt of this rational (robustness check)")

    p = sub.add_parser("distribution", parents=[common], help="Gauss multiplication formula")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=_fraction_list, required=True, help="comma-separated s values")

    p = sub.add_parser("unit-period", parents=[common], help="unit-object period determinant")
    p.add_argument("--m", type=_int_list, required=True, help="comma-separated puncture counts")

    p = sub.add_parser("pslq", parents=[common], help="integer relation or minimal polynomial")
    p.add_argument("--values", required=True,
                   help="comma-separated decimals or mpmath constants (pi, e, sqrt(2), ...)")
    p.add_argument("--min-poly", action="store_true",
                   help="treat the single value as z and search for its minimal polynomial")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--max-coeff", type=int, default=10**6)
    return parser


def _read_config(path: Path) -> dict[str, tuple[str, int, int]]:
    """Return ``key -> (value, line, column)``."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ConfigError(f"{path}: expected 'key = value'", line=lineno, column=col)
        key, value = line.split("=", 1)
        col = len(key) + 2 + (len(value) - len(value.lstrip()))
        key = key.strip().replace("_", "-")
        if not key:
            raise ConfigError(f"{path}: empty key", line=lineno, column=1)
        out[key] = (value.strip(), lineno, col)
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return parser.parse_args(argv)
    entries = _read_config(known.config)
    argv = list(argv)
    command = entries.pop("command", None)
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    if not any(tok in subparsers.choices for tok in argv):
        if command is None:
            raise ConfigError("no subcommand given on the command line or in the config")
        argv.insert(0, command[0])
    name = next(tok for tok in argv if tok in subparsers.choices)
    sub = subparsers.choices[name]
    by_flag = {opt: act for act in sub._actions for opt in act.option_strings}
    defaults = {}
    for key, (value, line, col) in entries.items():
        act = by_flag.get("--" + key)
        if act is None or key in ("config", "help"):
            raise ConfigError(f"unknown config key {key!r} for {name}", line=line, column=1)
        try:
            if isinstance(act, argparse._StoreTrueAction):
                converted = value.lower() in ("1", "true", "yes", "on")
            else:
                converted = act.type(value) if act.type else value
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {exc}", line=line, column=col) from exc
        defaults[act.dest] = converted
        act.required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _resolve_digits(ns: argparse.Namespace) -> int:
    digits = ns.digits
    if digits is None:
        env = os.environ.get(DIGITS_ENV)
        if env:
            try:
                digits = int(env)
            except ValueError as exc:
                raise ConfigError(f"${DIGITS_ENV} must be an integer, got {env!r}") from exc
        else:
            digits = DEFAULT_DIGITS.get(ns.command, 50)
    if digits < MIN_DIGITS:
        raise ConfigError(f"digits must be >= {MIN_DIGITS}, got {digits}")
    return digits


def parse_config(argv: list[str]) -> RunConfig:
    ns = _apply_config(build_parser(), argv)
    digits = _resolve_digits(ns)
    jobs = ns.jobs if ns.jobs is not None else (os.cpu_count() or 1)
    if jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    skip = {"command", "config", "digits", "output", "jobs", "timings", "pslq_degree", "pslq_height"}
    params = {k: v for k, v in vars(ns).items() if k not in skip}
    height = getattr(ns, "pslq_height", None)
    return RunConfig(
        command=ns.command, params=params, digits=digits,
        pslq_degree=getattr(ns, "pslq_degree", None),
        pslq_height=height if height is not None else verify.DEFAULT_HEIGHT,
        output=ns.output, jobs=jobs, timings=ns.timings,
    )


# ---------------------------------------------------------------- tasks
# Each task is a picklable (name, kwargs) pair that returns (json, passed).

def _report(rep: verify.VerificationReport, timings: bool):
    return rep.to_json(include_runtime=timings), rep.passed


def _task_theorem_b(branch, lam, digits, deg, height, timings):
    b = cover.parse_branch(branch)
    return _report(verify.verify_theorem_b(b, lam, digits, deg, height), timings)


def _task_duality(branch, lam, digits, deg, height, timings):
    b = cover.parse_branch(branch)
    return _report(verify.verify_duality(b, lam, digits, deg, height), timings)


def _task_euler(a, b, digits, timings):
    return _report(verify.verify_euler(a, b, digits), timings)


def _task_distribution(d, s, digits, timings):
    return _report(verify.verify_distribution(d, s, digits), timings)


def _task_unit_period(m, digits, timings):
    return _report(verify.verify_unit_period(m, digits), timings)


TASKS = {
    "theorem-b": _task_theorem_b,
    "duality": _task_duality,
    "euler": _task_euler,
    "distribution": _task_distribution,
    "unit-period": _task_unit_period,
}


def _run_tasks(tasks: list[tuple[str, dict]], jobs: int) -> list:
    """Run tasks, returning results in submission order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [TASKS[name](**kw) for name, kw in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        futures = [pool.submit(TASKS[name], **kw) for name, kw in tasks]
        return [f.result() for f in futures]


def _units(b: cover.BranchData, lams: list[int] | None) -> list[int]:
    if not lams:
        return unit_group(b.d)
    for lam in lams:
        if gcd(lam, b.d) != 1:
            raise ConfigError(f"lambda {lam} is not a unit modulo {b.d}")
    return [lam % b.d for lam in lams]


def _branch(cfg: RunConfig) -> cover.BranchData:
    b = cover.parse_branch(cfg.params["branch"])
    cover.validate(b)
    return b


_CONSTANTS = {"pi": lambda: mpmath.pi, "e": lambda: mpmath.e, "phi": lambda: mpmath.phi,
              "euler": lambda: mpmath.euler}
_FUNCTIONS = {"sqrt": mpmath.sqrt, "cbrt": mpmath.cbrt, "root": mpmath.root, "log": mpmath.log,
              "exp": mpmath.exp, "gamma": mpmath.gamma}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_node(node, src: str):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, src)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        # re-read the literal text so long decimals keep full precision
        return mpmath.mpf(ast.get_source_segment(src, node))
    if isinstance(node, ast.Name) and node.id in _CONSTANTS:
        return +_CONSTANTS[node.id]()
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, src)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left, src), _eval_node(node.right, src))
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCTIONS and not node.keywords):
        return _FUNCTIONS[node.func.id](*[_eval_node(a, src) for a in node.args])
    raise ValueError("unsupported expression")


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        depth += (ch == "(") - (ch == ")")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [t for t in parts if t.strip()]


def _parse_value(text: str, digits: int):
    """A decimal string, or a small arithmetic expression in pi, e, sqrt, ..."""
    with mpmath.workdps(digits + 10):
        text = text.strip()
        try:
            return mpmath.mpf(text)
        except (ValueError, TypeError):
            pass
        try:
            return _eval_node(ast.parse(text, mode="eval"), text)
        except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot evaluate value {text!r}") from exc


def run_command(cfg: RunConfig) -> tuple[dict, int]:
    """Execute ``cfg`` and return ``(document, exit_code)``."""
    p = cfg.params
    cmd = cfg.command
    reports: list = []
    passed: list[bool] = []
    result: dict[str, Any] = {}

    if cmd == "solve-epsilon":
        hodge = monomials.HodgeFunction(p["d"], p["hodge"], p["weight"])
        eps = monomials.solve_epsilon(hodge)
        kernel = monomials.epsilon_kernel(p["d"])
        result = {"epsilon": eps.to_json(), "kernel_dimension": len(kernel),
                  "moments": {str(lam): format_fraction(monomials.moment(eps, lam))
                              for lam in unit_group(p["d"])}}
        passed.append(True)
    elif cmd == "koblitz-ogus":
        eps = monomials.ExponentFunction(p["d"], tuple(p["eps"]))
        trivial = monomials.koblitz_ogus_trivial(eps)
        result = {"trivial": trivial,
                  "moments": {str(lam): format_fraction(monomials.moment(eps, lam))
                              for lam in unit_group(p["d"])}}
        passed.append(True)
    elif cmd == "cover":
        b = _branch(cfg)
        summary = cover.validate(b)
        result = {
            "branch": b.to_json(), "summary": summary.to_json(),
            "betti": list(cover.betti_numbers(b)),
            "eigenspaces": {
                str(lam): {
                    "sheaf_degree": ed.sheaf_degree, "support": list(ed.support),
                    "residues": [format_fraction(r) for r in ed.residues],
                    "hodge": {f"{pq[0]},{pq[1]}": h for pq, h in cover.hodge_numbers(b, lam).items()},
                    "monomial": cover.theorem_b_monomial(b, lam).to_json() if ed.m else None,
                }
                for lam in unit_group(b.d)
                for ed in [cover.eigen_data(b, lam)]
            },
        }
        passed.append(True)
    elif cmd in ("hrr-check", "serre-check"):
        b = _branch(cfg)
        for lam in _units(b, p.get("lam")):
            if cmd == "hrr-check":
                chk = cover.hrr_check(b, lam)
                reports.append({"lambda": lam, **chk.to_json()})
                passed.append(chk.equal)
            else:
                ok = cover.serre_duality_check(b, lam)
                reports.append({"lambda": lam, "equal": ok})
                passed.append(ok)
    elif cmd in ("theorem-b", "duality"):
        b = _branch(cfg)
        tasks = [(cmd, dict(branch=b.to_text(), lam=lam, digits=cfg.digits, deg=cfg.pslq_degree,
                            height=cfg.pslq_height, timings=cfg.timings))
                 for lam in _units(b, p.get("lam"))]
        for doc, ok in _run_tasks(tasks, cfg.jobs):
            reports.append(doc)
            passed.append(ok)
    elif cmd == "euler":
        doc, ok = _task_euler(p["a"], p["b"], cfg.digits, cfg.timings)
        reports.append(doc)
        passed.append(ok)
    elif cmd == "distribution":
        tasks = [("distribution", dict(d=p["d"], s=s, digits=cfg.digits, timings=cfg.timings))
                 for s in p["s"]]
        for doc, ok in _run_tasks(tasks, cfg.jobs):
            reports.append(doc)
            passed.append(ok)
    elif cmd == "unit-period":
        tasks = [("unit-period", dict(m=m, digits=cfg.digits, timings=cfg.timings)) for m in p["m"]]
        for doc, ok in _run_tasks(tasks, cfg.jobs):
            reports.append(doc)
            passed.append(ok)
    elif cmd == "lcs":
        D = p["discriminant"]
        with mpmath.workdps(cfg.digits + 10):
            if p.get("period"):
                period = _parse_value(p["period"], cfg.digits)
                source = {"period": p["period"]}
            else:
                curve = p.get("curve") or DEFAULT_CM_CURVES.get(D)
                if curve is None or len(curve) != 2:
                    raise ConfigError(f"give --curve a4,a6 or --period for discriminant {D}")
                period = verify.cm_period(curve[0], curve[1], cfg.digits)
                source = {"curve": [format_fraction(c) for c in curve]}
            if p.get("scale"):
                period *= mpmath.sqrt(verify._mpf(p["scale"][0]))
                source["scale_sqrt"] = format_fraction(p["scale"][0])
            rep = verify.verify_lcs(D, period, cfg.digits, cfg.pslq_degree or 4, cfg.pslq_height)
        doc, ok = _report(rep, cfg.timings)
        doc["parameters"]["source"] = source
        reports.append(doc)
        passed.append(ok)
    elif cmd == "pslq":
        values = [_parse_value(t, cfg.digits) for t in _split_top_level(p["values"])]
        if p["min_poly"]:
            if len(values) != 1:
                raise ConfigError("--min-poly takes exactly one value")
            poly = min_poly(values[0], p["max_degree"], cfg.pslq_height, cfg.digits)
            result = {"min_poly": poly.to_json() if poly else None}
            passed.append(poly is not None)
        else:
            rel = pslq(values, cfg.digits, p["max_coeff"])
            result = {"relation": rel.to_json() if rel else None}
            passed.append(rel is not None)
    else:  # pragma: no cover - argparse restricts the choices
        raise ConfigError(f"unknown command {cmd}")

    all_ok = all(passed)
    doc = {"schema": SCHEMA_VERSION, "command": cmd, "digits": cfg.digits,
           "status": "pass" if all_ok else "not-certified"}
    if reports:
        doc["reports"] = reports
    if result:
        doc["result"] = result
    return doc, 0 if all_ok else 1


def _error_document(exc: GammaPeriodsError) -> dict:
    err = {"code": exc.code, "message": str(exc)}
    for key in ("line", "column"):
        if getattr(exc, key, None) is not None:
            err[key] = getattr(exc, key)
    if exc.details.get("certificate") is not None:
        err["certificate"] = [format_fraction(as_fraction(c)) for c in exc.details["certificate"]]
    return {"schema": SCHEMA_VERSION, "status": "error", "error": err}


def _diagnostic(exc: GammaPeriodsError) -> str:
    where = ""
    if getattr(exc, "line", None) is not None:
        where = f"line {exc.line}, column {exc.column or 1}: "
    elif getattr(exc, "column", None) is not None:
        where = f"column {exc.column}: "
    return f"gamma-periods: error [{exc.code}]: {where}{exc}"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    output = None
    try:
        if any(a in ("-h", "--help") for a in argv):
            build_parser().parse_args(argv)
        cfg = parse_config(argv)
        output = cfg.output
        doc, code = run_command(cfg)
    except GammaPeriodsError as exc:
        print(_diagnostic(exc), file=sys.stderr)
        doc, code = _error_document(exc), 2
    text = dumps(doc)
    if output is not None:
        output.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
