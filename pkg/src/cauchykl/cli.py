"""Command-line front end.

Subcommands
-----------
kl, cross-entropy, entropy, integral-a, prudnikov, mc
    Compute one quantity from numeric flags and print a single result
    record. kl, cross-entropy and integral-a accept --numeric to route
    through the quadrature oracle instead of the closed form.
batch
    Read newline-delimited JSON job records from standard input and
    write one result record per input line, in order; a malformed or
    failing record produces an error record without aborting the stream.
verify
    Run the verification suites (closed-vs-quadrature, certificate, ode,
    monte-carlo, or all) and print one machine-readable line per check.

Records are JSON objects with a fixed key order, one per line; floats
are printed with 17 significant digits so values round-trip exactly.
Exit status is 0 iff every record succeeded (or every check passed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import core, oracle, suites
from .core import CauchyDist, PositiveQuadratic
from .errors import CauchyKLError, ParameterError

__all__ = ["main", "execute_job", "format_record"]


# --------------------------------------------------------------------------
# record formatting: fixed key order, 17-significant-digit floats
# --------------------------------------------------------------------------

def _fmt(value: Any) -> str:
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_fmt(v)}" for k, v in value.items()) + "}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return json.dumps(value)


def format_record(record: dict) -> str:
    """Serialize a result record to one JSON line with stable key order."""
    return _fmt(record)


# --------------------------------------------------------------------------
# job execution shared by the single-shot subcommands and batch mode
# --------------------------------------------------------------------------

_PARAM_ORDER = {
    "kl": ("l1", "s1", "l2", "s2"),
    "cross-entropy": ("l1", "s1", "l2", "s2"),
    "entropy": ("l", "s"),
    "integral-a": ("a", "b", "c", "d", "e", "f"),
    "prudnikov": ("a", "b", "z"),
    "mc": ("l1", "s1", "l2", "s2"),
}
_CONFIG_KEYS = ("numeric", "rtol", "atol", "max_depth", "samples", "seed")
_NUMERIC_OPS = ("kl", "cross-entropy", "integral-a")


def _number(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"parameter {name!r} must be a number, got {value!r}")
    return float(value)


def _int_config(config: dict, key: str, default: int) -> int:
    value = config.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParameterError(f"config {key!r} must be an integer, got {value!r}")
    return value


def _quad_config(config: dict) -> oracle.QuadratureConfig:
    return oracle.QuadratureConfig(
        relative_tolerance=float(config.get("rtol", 1e-10)),
        absolute_tolerance=float(config.get("atol", 1e-14)),
        max_refinement_depth=_int_config(config, "max_depth", 20),
    )


def _pair(p: dict) -> tuple[CauchyDist, CauchyDist]:
    return CauchyDist(p["l1"], p["s1"]), CauchyDist(p["l2"], p["s2"])


def _quadrature_diag(result: oracle.QuadratureResult) -> dict:
    return {
        "error_estimate": result.error_estimate,
        "evaluations": result.evaluations,
        "converged": result.converged,
    }


def _run_kl(p: dict, config: dict):
    if config.get("numeric"):
        r = oracle.kl_numeric(*_pair(p), _quad_config(config))
        return r.value, _quadrature_diag(r)
    return core.kl_closed(*_pair(p)), None


def _run_cross_entropy(p: dict, config: dict):
    if config.get("numeric"):
        r = oracle.cross_entropy_numeric(*_pair(p), _quad_config(config))
        return r.value, _quadrature_diag(r)
    return core.cross_entropy_closed(*_pair(p)), None


def _run_entropy(p: dict, config: dict):
    return core.entropy_closed(CauchyDist(p["l"], p["s"])), None


def _run_integral_a(p: dict, config: dict):
    q1 = PositiveQuadratic(p["a"], p["b"], p["c"])
    q2 = PositiveQuadratic(p["d"], p["e"], p["f"])
    if config.get("numeric"):
        r = oracle.integral_a_numeric(q1, q2, _quad_config(config))
        return r.value, _quadrature_diag(r)
    return core.integral_a(q1, q2), None


def _run_prudnikov(p: dict, config: dict):
    return core.prudnikov_special(p["a"], p["b"], p["z"]), None


def _run_mc(p: dict, config: dict):
    samples = _int_config(config, "samples", 1_000_000)
    seed = _int_config(config, "seed", 0)
    r = oracle.kl_monte_carlo(*_pair(p), samples=samples, seed=seed)
    diag = {"standard_error": r.standard_error, "samples": r.samples, "seed": r.seed}
    return r.estimate, diag


_EXECUTORS: dict[str, Callable[[dict, dict], tuple[float, dict | None]]] = {
    "kl": _run_kl,
    "cross-entropy": _run_cross_entropy,
    "entropy": _run_entropy,
    "integral-a": _run_integral_a,
    "prudnikov": _run_prudnikov,
    "mc": _run_mc,
}


def execute_job(record: Any) -> dict:
    """Run one job record and return the result record (never raises).

    A job record is {"op": name, "params": {...}, "config": {...}?}; the
    result echoes op/params/config and adds status, value and optional
    diagnostics, or status "error" with a message.
    """
    if not isinstance(record, dict):
        return {"input": record, "status": "error", "error": "record must be a JSON object"}
    op = record.get("op")
    echo: dict[str, Any] = {"op": op if isinstance(op, str) else repr(op)}
    try:
        if op not in _EXECUTORS:
            raise ParameterError(
                f"unknown operation {op!r}; expected one of {sorted(_EXECUTORS)}"
            )
        raw_params = record.get("params", {})
        if not isinstance(raw_params, dict):
            raise ParameterError("params must be an object of name -> number")
        order = _PARAM_ORDER[op]
        unknown = sorted(set(raw_params) - set(order))
        if unknown:
            raise ParameterError(f"unknown parameters {unknown} for operation {op!r}")
        missing = [k for k in order if k not in raw_params]
        if missing:
            raise ParameterError(f"missing parameters {missing} for operation {op!r}")
        params = {k: _number(raw_params[k], k) for k in order}
        echo["params"] = params
        config = record.get("config", {})
        if not isinstance(config, dict):
            raise ParameterError("config must be an object")
        unknown = sorted(set(config) - set(_CONFIG_KEYS))
        if unknown:
            raise ParameterError(f"unknown config keys {unknown}")
        if config:
            echo["config"] = {k: config[k] for k in _CONFIG_KEYS if k in config}
        value, diagnostics = _EXECUTORS[op](params, config)
        result = dict(echo)
        result["status"] = "ok"
        result["value"] = value
        if diagnostics is not None:
            result["diagnostics"] = diagnostics
        return result
    except (CauchyKLError, KeyError, TypeError, ValueError, OverflowError) as exc:
        result = dict(echo)
        result["status"] = "error"
        result["error"] = str(exc) or exc.__class__.__name__
        return result


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def _single_record_from_args(args: argparse.Namespace) -> dict:
    params = {name: getattr(args, name.replace("-", "_")) for name in _PARAM_ORDER[args.op]}
    config: dict[str, Any] = {}
    if args.op in _NUMERIC_OPS and args.numeric:
        config["numeric"] = True
        if args.rtol is not None:
            config["rtol"] = args.rtol
        if args.atol is not None:
            config["atol"] = args.atol
        if args.max_depth is not None:
            config["max_depth"] = args.max_depth
    if args.op == "mc":
        config["samples"] = args.samples
        config["seed"] = args.seed
    record = {"op": args.op, "params": params}
    if config:
        record["config"] = config
    return record


def _handle_single(args: argparse.Namespace) -> int:
    result = execute_job(_single_record_from_args(args))
    line = format_record(result)
    if result["status"] == "ok":
        print(line)
        return 0
    print(line, file=sys.stderr)
    return 1


def _handle_batch(args: argparse.Namespace) -> int:
    errors = 0
    for raw in sys.stdin:
        line = raw.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            result = {"input": line, "status": "error", "error": f"malformed record: {exc}"}
        else:
            result = execute_job(record)
        errors += result["status"] != "ok"
        print(format_record(result))
    return 0 if errors == 0 else 1


def _handle_verify(args: argparse.Namespace) -> int:
    try:
        outcomes = suites.run_suite(args.suite, args.count, args.seed, args.samples)
    except ParameterError as exc:
        print(format_record({"status": "error", "error": str(exc)}), file=sys.stderr)
        return 1
    failed = 0
    for outcome in outcomes:
        failed += not outcome.passed
        print(format_record({
            "check": outcome.name,
            "status": "pass" if outcome.passed else "fail",
            "worst": outcome.worst,
            "detail": outcome.detail,
        }))
    print(format_record({
        "suite": args.suite,
        "seed": args.seed,
        "checks": len(outcomes),
        "failed": failed,
        "status": "pass" if failed == 0 else "fail",
    }))
    return 0 if failed == 0 else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _add_numeric_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--numeric", action="store_true",
                     help="evaluate by adaptive quadrature instead of the closed form")
    sub.add_argument("--rtol", type=float, default=None, help="quadrature relative tolerance")
    sub.add_argument("--atol", type=float, default=None, help="quadrature absolute tolerance")
    sub.add_argument("--max-depth", type=int, default=None, help="quadrature refinement depth")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchykl",
        description="Closed-form divergences between Cauchy distributions, "
                    "with numerical and exact-arithmetic verification.",
    )
    subparsers = parser.add_subparsers(dest="op", required=True)

    for op in ("kl", "cross-entropy", "mc"):
        sub = subparsers.add_parser(op)
        for flag in ("--l1", "--s1", "--l2", "--s2"):
            sub.add_argument(flag, type=float, required=True)
        if op == "mc":
            sub.add_argument("--samples", type=int, default=1_000_000)
            sub.add_argument("--seed", type=int, default=0)
        else:
            _add_numeric_flags(sub)
        sub.set_defaults(handler=_handle_single)

    sub = subparsers.add_parser("entropy")
    sub.add_argument("--l", type=float, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.set_defaults(handler=_handle_single)

    sub = subparsers.add_parser("integral-a")
    for flag in ("--a", "--b", "--c", "--d", "--e", "--f"):
        sub.add_argument(flag, type=float, required=True)
    _add_numeric_flags(sub)
    sub.set_defaults(handler=_handle_single)

    sub = subparsers.add_parser("prudnikov")
    for flag in ("--a", "--b", "--z"):
        sub.add_argument(flag, type=float, required=True)
    sub.set_defaults(handler=_handle_single)

    sub = subparsers.add_parser("batch")
    sub.set_defaults(handler=_handle_batch)

    sub = subparsers.add_parser("verify")
    sub.add_argument("--suite", choices=suites.SUITE_NAMES, default="all")
    sub.add_argument("--count", type=int, default=None,
                     help="check points per suite (default: per-suite standard count)")
    sub.add_argument("--seed", type=int, default=1)
    sub.add_argument("--samples", type=int, default=1_000_000,
                     help="samples per monte-carlo estimate")
    sub.set_defaults(handler=_handle_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
