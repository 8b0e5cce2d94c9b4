"""Command-line driver: ``npoint``, ``trace``, ``tau`` and ``verify``.

Exit codes: 0 success, 1 a verify identity failed, 2 usage error, 3 window error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import FockchernError, WindowError
from .partitions import parse_partition
from .series import Series, SeriesRing, format_fraction

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_WINDOW = 0, 1, 2, 3

_INT_KEYS = {"points", "z_order", "z_pole", "q_order", "n_max", "m", "K", "total_degree",
             "max_n", "seed"}


class UsageError(Exception):
    pass


def _positive(name: str, value: int | None, allow_zero: bool = False) -> None:
    if value is None:
        return
    if value < 0 or (value == 0 and not allow_zero):
        raise UsageError(f"--{name.replace('_', '-')} must be {'nonnegative' if allow_zero else 'positive'}")


def _variables(n: int) -> list[str]:
    return ["z"] if n == 1 else [f"z{i}" for i in range(1, n + 1)]


def series_csv(series: Series) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["exponent_vector", "value"])
    for e, c in series.items():
        w.writerow(["|".join(str(x) for x in e), format_fraction(c)])
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -------------------------------------------------------------------

def cmd_npoint(args) -> tuple[int, str]:
    from .correlators import coefficient_table, f_bullet, g_npoint
    if args.lam is None or args.mu is None:
        raise UsageError("npoint needs --lambda and --mu")
    lam, mu = _partition("lambda", args.lam), _partition("mu", args.mu)
    n = args.points
    _positive("points", n)
    _positive("z_order", args.z_order, allow_zero=True)
    _positive("z_pole", args.z_pole)
    zs = _variables(n)
    f_ring = SeriesRing.of(*[(z, args.z_pole, args.z_order) for z in zs])
    g_ring = SeriesRing.of(*[(z, 0, args.z_order) for z in zs])
    f = f_bullet(lam, mu, zs, f_ring)
    g = g_npoint(lam, mu, zs, g_ring)
    if args.format == "csv":
        return EXIT_OK, series_csv(f if args.series == "F" else g)
    return EXIT_OK, _dump({"lambda": list(lam), "mu": list(mu), "F": f.to_json(), "G": g.to_json(),
                           "table": coefficient_table(g)})


def cmd_trace(args) -> tuple[int, str]:
    from . import traces as tr
    _positive("q_order", args.q_order, allow_zero=True)
    _positive("z_order", args.z_order, allow_zero=True)
    _positive("n_max", args.n_max, allow_zero=True)
    n_max = args.q_order if args.n_max is None else args.n_max
    if args.factors == "identity" or args.points == 0:
        ring = SeriesRing.of(("q", 0, args.q_order))
        direct = tr.q_trace(tr.TraceRequest((), ring, n_max))
        closed = tr.q_pochhammer_inverse(ring)
    else:
        _positive("points", args.points)
        zs = _variables(args.points)
        if args.factors == "chern":
            ring = tr.total_degree_ring(zs, args.z_order, args.q_order, 0)
            closed = tr.trace_theorem_rhs(zs, args.z_order, args.q_order)
        else:
            ring = tr.total_degree_ring(zs, args.z_order, args.q_order)
            closed = tr.bloch_okounkov_rhs(zs, args.z_order, args.q_order)
        direct = tr.trace(args.factors, zs, ring, n_max)
    equal = direct == closed
    if args.format == "csv":
        return EXIT_OK, series_csv(direct)
    return EXIT_OK, _dump({"direct": direct.to_json(), "closed_form": closed.to_json(), "equal": equal})


def cmd_tau(args) -> tuple[int, str]:
    from .toda import TauRequest, tau
    _positive("K", args.K)
    _positive("total_degree", args.total_degree, allow_zero=True)
    _positive("n_max", args.n_max, allow_zero=True)
    n_max = 4 if args.n_max is None else args.n_max
    t = tau(TauRequest(args.m, args.K, args.total_degree, n_max))
    if args.format == "csv":
        return EXIT_OK, series_csv(t)
    return EXIT_OK, _dump(t.to_json())


def cmd_verify(args) -> tuple[int, str]:
    from .verify import run_suite
    _positive("max_n", args.max_n)
    checks = run_suite(args.suite, args.max_n)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        body = _dump({"passed": ok, "checks": [
            {"module": c.module, "identity": c.identity, "passed": c.passed, "detail": c.detail}
            for c in checks]})
    else:
        body = "".join(c.line() + "\n" for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), body


COMMANDS = {"npoint": cmd_npoint, "trace": cmd_trace, "tau": cmd_tau, "verify": cmd_verify}


def _partition(name: str, text: str):
    try:
        return parse_partition(text)
    except (ValueError, FockchernError) as exc:
        raise UsageError(f"--{name}: {exc}") from None


# -- parsing -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--seed", type=int, help="accepted and ignored")

    p = _Parser(prog="fockchern", description="Exact Fock-space correlators, traces and tau functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    n = sub.add_parser("npoint", parents=[common], help="F and G between two basis states")
    n.add_argument("--lambda", dest="lam")
    n.add_argument("--mu")
    n.add_argument("--points", type=int, default=1)
    n.add_argument("--z-order", type=int, default=8)
    n.add_argument("--z-pole", type=int, default=1)
    n.add_argument("--series", choices=("F", "G"), default="G", help="series written in csv mode")

    t = sub.add_parser("trace", parents=[common], help="q-trace against its closed form")
    t.add_argument("--factors", choices=("chern", "epsilon0", "identity"), default="chern")
    t.add_argument("--points", type=int, default=1)
    t.add_argument("--q-order", type=int, default=6)
    t.add_argument("--z-order", type=int, default=4)
    t.add_argument("--n-max", type=int)

    u = sub.add_parser("tau", parents=[common], help="charge-m tau function")
    u.add_argument("--m", type=int, default=0)
    u.add_argument("--K", type=int, default=3)
    u.add_argument("--total-degree", type=int, default=4)
    u.add_argument("--n-max", type=int)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", choices=("arith", "partitions", "fock", "operators", "correlators",
                                       "traces", "toda", "all"), default="all")
    v.add_argument("--max-n", type=int, default=6)
    v.set_defaults(format="text")
    return p


def read_config(path: str) -> dict:
    out = {}
    for num, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "lambda":
            key = "lam"
        value = value.strip("\"'")
        if key in _INT_KEYS:
            try:
                value = int(value)
            except ValueError:
                raise UsageError(f"{path}:{num}: {key} must be an integer") from None
        out[key] = value
    return out


def parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            conf = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"--config: {exc}") from None
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(conf) - known
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        sub.set_defaults(**conf)
        args = parser.parse_args(argv)
    return args


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = parse(list(sys.argv[1:] if argv is None else argv))
        code, text = COMMANDS[args.command](args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except WindowError as exc:
        err.write(json.dumps({"error": "WindowError", "message": str(exc)}) + "\n")
        return EXIT_WINDOW
    except FockchernError as exc:
        err.write(f"usage error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    out.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
