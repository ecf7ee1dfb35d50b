"""Command-line front end: ``list``, ``verify`` and ``eval``.

Exit codes: 0 when everything requested passed, 1 when an identity failed,
2 on configuration, input or evaluation errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
from typing import Optional, Sequence

from .cubic import gamma
from .errors import EllipsumError, UnknownIdentity
from .identities import SamplingRanges, check_identity, get_identity, list_identities
from .identities.registry import to_jsonable
from .pochhammer import qp_fact
from .series import BalancedQuintuple, VwpSpec, ft_rhs, vwp_sum
from .theta import DEFAULT_POLICY, EllipticParams, TruncationPolicy, theta

CONFIG_ENV = "ELLIPSUM_CONFIG"
FORMATS = ("json", "csv", "human")
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

log = logging.getLogger("ellipsum")


class ConfigError(Exception):
    """Invalid run configuration or command-line input."""


# -- complex literals ------------------------------------------------------------

_COMPLEX_RE = re.compile(r"^[0-9eE.+\-]*i?$")


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi``, ``a-bi`` or ``bi`` with decimal reals."""
    s = text.strip()
    if not s or not _COMPLEX_RE.match(s):
        raise ConfigError(f"cannot parse complex literal {text!r} (use a+bi)")
    try:
        return complex(s[:-1] + "j") if s.endswith("i") else complex(float(s))
    except ValueError:
        raise ConfigError(f"cannot parse complex literal {text!r} (use a+bi)") from None


def format_complex(z: complex) -> str:
    """17 significant digits; the imaginary part is omitted when it is exactly zero."""
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}i"


# -- run configuration ---------------------------------------------------------------

_CONFIG_KEYS = {"ids", "all", "trials", "seed", "tolerance", "tail_tol", "max_factors",
                "ranges", "format", "output", "workers", "perturb", "timing"}


def load_config(path: Optional[str]) -> dict:
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge the config file with command-line flags (flags win) and validate."""
    cfg = {"ids": [], "all": False, "trials": None, "seed": 0, "tolerance": None,
           "tail_tol": DEFAULT_POLICY.tail_tol, "max_factors": DEFAULT_POLICY.max_factors,
           "ranges": {}, "format": "human", "output": None, "workers": 1, "perturb": 0.0,
           "timing": True}
    cfg.update(load_config(args.config))
    for key in ("trials", "seed", "tolerance", "tail_tol", "max_factors", "format",
                "output", "workers", "perturb"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    if args.ids:
        cfg["ids"] = args.ids
    if args.all:
        cfg["all"] = True
    if args.no_timing:
        cfg["timing"] = False

    if cfg["all"]:
        cfg["ids"] = [ident.id for ident in list_identities()]
    if not cfg["ids"]:
        raise ConfigError("select identities with --id or --all")
    for ident in cfg["ids"]:
        get_identity(ident)
    if cfg["trials"] is not None and int(cfg["trials"]) < 1:
        raise ConfigError("trials must be >= 1")
    if cfg["tolerance"] is not None and not float(cfg["tolerance"]) > 0:
        raise ConfigError("tolerance must be positive")
    if cfg["format"] not in FORMATS:
        raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
    if int(cfg["workers"]) < 1:
        raise ConfigError("workers must be >= 1")
    if int(cfg["seed"]) < 0:
        raise ConfigError("seed must be a nonnegative integer")
    try:
        cfg["policy"] = TruncationPolicy(tail_tol=float(cfg["tail_tol"]),
                                         max_factors=int(cfg["max_factors"]))
        cfg["sampling"] = SamplingRanges.from_dict(cfg["ranges"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


# -- report rendering -------------------------------------------------------------------

def build_report(cfg: dict, reports: list) -> dict:
    policy = cfg["policy"]
    return {
        "suite_seed": int(cfg["seed"]),
        "policy": {"tail_tol": policy.tail_tol, "max_factors": policy.max_factors,
                   "max_nome": policy.max_nome},
        "ranges": cfg["sampling"].to_dict(),
        "perturb": float(cfg["perturb"]),
        "results": [r.to_dict(include_time=cfg["timing"]) for r in reports],
    }


def render_json(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"


_CSV_FIELDS = ["id", "kind", "trials", "seed", "tolerance", "max_residual", "median_residual",
               "failure_count", "passed", "resamples", "wall_time"]


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    fields = [f for f in _CSV_FIELDS if f != "wall_time" or any("wall_time" in r for r in report["results"])]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in report["results"]:
        row = {k: r.get(k) for k in fields}
        row["max_residual"] = repr(r["max_residual"])
        row["median_residual"] = repr(r["median_residual"])
        writer.writerow(row)
    return buf.getvalue()


def render_human(report: dict) -> str:
    lines = []
    for r in report["results"]:
        status = "PASS" if r["passed"] else "FAIL"
        line = (f"{status}  {r['id']:<30} trials={r['trials']:<4} max={r['max_residual']:.3e} "
                f"median={r['median_residual']:.3e}")
        if r["kind"] == "convergence":
            order = r["details"].get("median_empirical_order")
            line += " study" + (f" order={order:.3f}" if order is not None else " order=n/a")
        else:
            line += f" tol={r['tolerance']:.0e}"
        if r["failure_count"]:
            line += f" failures={r['failure_count']}"
        if "wall_time" in r:
            line += f" time={r['wall_time']:.2f}s"
        lines.append(line)
    passed = sum(r["passed"] for r in report["results"])
    lines.append(f"{passed}/{len(report['results'])} identities passed (seed {report['suite_seed']})")
    return "\n".join(lines) + "\n"


_RENDERERS = {"json": render_json, "csv": render_csv, "human": render_human}


# -- commands -----------------------------------------------------------------------------

def cmd_list(args: argparse.Namespace) -> int:
    idents = list_identities()
    if args.format == "json":
        rows = [{"id": i.id, "kind": i.kind, "trials": i.trials, "tolerance": i.tolerance,
                 "anchor": i.anchor, "summary": i.summary} for i in idents]
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
        return EXIT_OK
    for i in idents:
        tol = f"{i.tolerance:.0e}" if i.kind == "equality" else "study"
        sys.stdout.write(f"{i.id:<30} {i.trials:>4} {tol:>6}  {i.anchor}\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    reports = []
    for ident in cfg["ids"]:
        log.info("verifying %s", ident)
        reports.append(check_identity(
            ident, trials=cfg["trials"], seed=int(cfg["seed"]), tolerance=cfg["tolerance"],
            ranges=cfg["sampling"], policy=cfg["policy"], perturb=float(cfg["perturb"]),
            workers=int(cfg["workers"]),
        ))
    text = _RENDERERS[cfg["format"]](build_report(cfg, reports))
    if cfg["output"]:
        try:
            with open(cfg["output"], "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {cfg['output']}: {exc}") from exc
        if cfg["format"] != "human":
            sys.stdout.write(render_human(build_report(cfg, reports)))
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _params(args) -> EllipticParams:
    return EllipticParams.from_qp(parse_complex(args.q), parse_complex(args.p))


def _eval_value(args: argparse.Namespace) -> complex:
    policy = TruncationPolicy(tail_tol=args.tail_tol, max_factors=args.max_factors)
    kind = args.kind
    if kind == "theta":
        return theta(parse_complex(args.x), parse_complex(args.p), policy)
    if kind == "gamma":
        return gamma(parse_complex(args.z), parse_complex(args.a), parse_complex(args.p), policy)
    params = _params(args)
    if kind == "qpfact":
        return qp_fact(parse_complex(args.a), args.n, params, policy)
    if kind == "vwp":
        upper = [parse_complex(u) for u in args.upper] + [params.q ** (-args.n)]
        return vwp_sum(VwpSpec(parse_complex(args.a1), upper, args.n), params, policy)
    if kind == "ftrhs":
        q5 = BalancedQuintuple.solve(*(parse_complex(x) for x in (args.a, args.b, args.c, args.d)),
                                     args.n, params)
        return ft_rhs(q5, params, policy)
    raise ConfigError(f"unknown kind {kind!r}")


def cmd_eval(args: argparse.Namespace) -> int:
    sys.stdout.write(format_complex(_eval_value(args)) + "\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipsum",
        description="Evaluate elliptic and cubic theta kernels and verify identities by random sampling.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list registered identities")
    p_list.add_argument("--format", choices=("human", "json"), default="human")
    p_list.set_defaults(func=cmd_list)

    p_ver = sub.add_parser("verify", help="run sampled checks of identities")
    p_ver.add_argument("--id", dest="ids", action="append", metavar="SLUG",
                       help="identity to check (repeatable)")
    p_ver.add_argument("--all", action="store_true", help="check every registered identity")
    p_ver.add_argument("--trials", type=int, help="trials per identity (default: per identity)")
    p_ver.add_argument("--seed", type=int, help="suite seed (default 0)")
    p_ver.add_argument("--tolerance", type=float, help="residual tolerance override")
    p_ver.add_argument("--tail-tol", dest="tail_tol", type=float, help="truncation tail tolerance")
    p_ver.add_argument("--max-factors", dest="max_factors", type=int, help="truncation cap")
    p_ver.add_argument("--format", choices=FORMATS, help="report format (default human)")
    p_ver.add_argument("-o", "--output", help="write the report to this file")
    p_ver.add_argument("--config", help=f"JSON run configuration (default: ${CONFIG_ENV})")
    p_ver.add_argument("--workers", type=int, help="worker threads (results do not depend on it)")
    p_ver.add_argument("--perturb", type=float,
                       help="scale every right-hand side by 1 + PERTURB (negative control)")
    p_ver.add_argument("--no-timing", action="store_true", help="omit wall_time from the report")
    p_ver.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate one kernel; complex values as a+bi")
    kinds = p_eval.add_subparsers(dest="kind", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tail-tol", dest="tail_tol", type=float, default=DEFAULT_POLICY.tail_tol)
    common.add_argument("--max-factors", dest="max_factors", type=int, default=DEFAULT_POLICY.max_factors)
    common.add_argument("--p", default="0", help="nome p (default 0)")

    k = kinds.add_parser("theta", parents=[common], help="theta(x; p)")
    k.add_argument("--x", required=True)
    k = kinds.add_parser("gamma", parents=[common], help="cubic theta gamma(z, a; p)")
    k.add_argument("--z", required=True)
    k.add_argument("--a", required=True)
    k = kinds.add_parser("qpfact", parents=[common], help="(a; q, p)_n, n may be negative")
    k.add_argument("--a", required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--q", required=True)
    k = kinds.add_parser("vwp", parents=[common],
                         help="terminating very-well-poised sum; q^-n is appended to --upper")
    k.add_argument("--a1", required=True)
    k.add_argument("--upper", nargs="*", default=[], help="a6 ... a_s (without q^-n)")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--q", required=True)
    k = kinds.add_parser("ftrhs", parents=[common],
                         help="closed form of the 10V9 summation, e solved from balancing")
    for name in "abcd":
        k.add_argument(f"--{name}", required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--q", required=True)
    p_eval.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UnknownIdentity as exc:
        sys.stderr.write(f"error: unknown identity {exc.args[0]!r}\n")
    except (ConfigError, EllipsumError, ValueError, ArithmeticError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
