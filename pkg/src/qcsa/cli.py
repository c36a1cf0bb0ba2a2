"""Command-line front end.

Subcommands: construct (build and dump a full channel bundle), verify
(re-check every invariant of a bundle file), simulate (seeded end-to-end
trials), rates (exact rate tables over a parameter grid).

Exit codes: 0 success, 1 internal failure or failed checks/trials,
2 invalid parameters, 3 malformed input file.  Output is deterministic
for a fixed argument list, seed included, so runs can be diffed.
"""

import argparse
import csv
import io
import json
import os
import sys

from .codes import ParameterError, QcsaParams, qcsa_matrix
from .field import PrimeField
from .nsumbox import QcsaSystem, build_qcsa_system, verify_system
from .scheme import rate_report, reduced_params, run_trials

DEFAULT_SEED = 1729
OUTPUT_DIR_ENV = "QCSA_OUTPUT_DIR"


class BundleFormatError(Exception):
    """Input file is missing, unreadable, or structurally invalid."""


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _int_range(text: str) -> tuple:
    """A single value 'n' or an inclusive range 'a:b'."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        value = int(text)
        return value, value
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A:B, got {text!r}")


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcsa",
        description="Construct, verify, and simulate over-the-air CSA channels over GF(p).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_param_flags(p, with_beta=True):
        p.add_argument("--p", type=int, required=True, help="prime field modulus")
        p.add_argument("--N", type=int, required=True, help="number of servers")
        p.add_argument("--L", type=int, required=True, help="desired symbols per instance")
        p.add_argument("--alpha", type=_int_list, help="N evaluation points (comma-separated)")
        p.add_argument("--f", type=_int_list, help="L desired-symbol points (comma-separated)")
        p.add_argument("--u", type=_int_list, help="N nonzero multipliers (default: all ones)")
        if with_beta:
            p.add_argument("--beta", type=_int_list,
                           help="extra multipliers; construct also emits the QCSA matrix for them")

    con = sub.add_parser("construct", help="build a channel bundle and write it as JSON")
    add_param_flags(con)
    con.add_argument("--seed", type=int, default=DEFAULT_SEED, help="recorded in the bundle")
    con.add_argument("--out", help="output file (default: stdout)")
    con.add_argument("--format", choices=["json"], default="json")

    ver = sub.add_parser("verify", help="re-check every invariant of a bundle file")
    ver.add_argument("path", help="bundle file produced by construct")

    sim = sub.add_parser("simulate", help="run seeded end-to-end trials")
    add_param_flags(sim, with_beta=False)
    sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sim.add_argument("--trials", type=int, default=100)
    sim.add_argument("--out", help="trial reports as JSON lines (default: stdout)")
    sim.add_argument("--format", choices=["json"], default="json")

    rat = sub.add_parser("rates", help="exact rate table over an (N, L) grid")
    rat.add_argument("--N", type=_int_range, required=True, help="N or A:B (inclusive)")
    rat.add_argument("--L", type=_int_range, help="L or A:B filter (default: all 1 <= L < N)")
    rat.add_argument("--out", help="output file (default: stdout)")
    rat.add_argument("--format", choices=["csv", "json"], default="csv")
    return parser


def _field_from_args(args) -> PrimeField:
    try:
        return PrimeField(args.p)
    except (TypeError, ValueError) as exc:
        raise ParameterError(str(exc))


def cmd_construct(args) -> int:
    field = _field_from_args(args)
    u = args.u if args.u is not None else (1,) * args.N
    alpha = args.alpha if args.alpha is not None else tuple(range(args.N))
    f = args.f if args.f is not None else tuple(range(args.N, args.N + args.L))
    params = QcsaParams(field, args.N, args.L, alpha, u, f)
    system = build_qcsa_system(params)
    bundle = system.to_dict()
    bundle["seed"] = args.seed
    if args.beta is not None:
        bundle["Q_beta"] = qcsa_matrix(params.with_beta(args.beta)).to_dict()
    _write_text(_resolve_out(args.out), _json_dumps(bundle))
    return 0


def _load_bundle(path: str) -> QcsaSystem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BundleFormatError(f"cannot read bundle {path}: {exc}")
    try:
        return QcsaSystem.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleFormatError(f"malformed bundle {path}: {exc}")


def cmd_verify(args) -> int:
    system = _load_bundle(args.path)
    checks = verify_system(system)
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    failed = sum(not ok for ok in checks.values())
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def cmd_simulate(args) -> int:
    field = _field_from_args(args)
    params = reduced_params(field, args.N, args.L, alpha=args.alpha, beta=args.u, f=args.f)
    if args.trials < 0:
        raise ParameterError("--trials must be nonnegative")
    summary = run_trials(params, args.seed, args.trials)
    lines = [json.dumps(row, sort_keys=True) for row in summary.pop("reports")]
    summary["reduced"] = (params.N, params.L) != (args.N, args.L)
    summary["requested"] = {"N": args.N, "L": args.L}
    lines.append(json.dumps(summary, sort_keys=True))
    _write_text(_resolve_out(args.out), "".join(line + "\n" for line in lines))
    print(
        f"{summary['passed']}/{summary['trials']} trials passed at "
        f"N={params.N} L={params.L} q={field.p} "
        f"({params.N} qudits per trial for {2 * params.L} desired symbols)",
        file=sys.stderr,
    )
    return 0 if summary["passed"] == summary["trials"] else 1


_RATE_COLUMNS = ["N", "L", "N'", "L'", "R_C", "R_Q", "dits_per_symbol",
                 "qudits_per_symbol", "R_C_decimal", "R_Q_decimal"]


def cmd_rates(args) -> int:
    n_lo, n_hi = args.N
    if n_lo < 2:
        raise ParameterError(f"need N >= 2, got {n_lo}")
    rows = []
    for n in range(n_lo, n_hi + 1):
        l_lo, l_hi = args.L if args.L is not None else (1, n - 1)
        for l in range(max(1, l_lo), min(n - 1, l_hi) + 1):
            rows.append(rate_report(n, l).to_dict())
    if args.format == "json":
        text = _json_dumps(rows)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_RATE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    _write_text(_resolve_out(args.out), text)
    return 0


_HANDLERS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "rates": cmd_rates,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except ParameterError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except BundleFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive catch-all
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
