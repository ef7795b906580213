"""Command-line front end.

Exit codes: 0 PASS, 1 FAIL, 2 UNKNOWN, 3 usage or hypothesis error.
``--json`` prints one JSON object per run; all fields except ``timing`` are
a deterministic function of the command line.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import __version__, polyalg, realize
from .errors import CensusUndefinedError, DoldkitError, InputFormatError
from .recurrence import check_hypotheses, make_recurrence, minimal_polynomial
from .witness import TransitionMatrix, sft_counts

EXIT_CODES = {"PASS": 0, "FAIL": 1, "UNKNOWN": 2}
EXIT_ERROR = 3
HEAD = 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text: str, field: str) -> List[int]:
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputFormatError(field, f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise InputFormatError(field, "empty list")
    return values


def _json_int_list(value, field: str) -> List[int]:
    if not isinstance(value, list) or not value or not all(isinstance(x, int) for x in value):
        raise InputFormatError(field, "expected a nonempty array of integers")
    return value


def parse_matrix(text: str) -> TransitionMatrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError("matrix", f"not a bracketed integer array ({exc.msg})") from None
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rows
    ):
        raise InputFormatError("matrix", "expected nested integer rows such as [[1,1],[1,0]]")
    try:
        return TransitionMatrix.of(rows)
    except DoldkitError as exc:
        raise InputFormatError("matrix", str(exc)) from None


def load_recurrence_file(path: str) -> dict:
    """Read a recurrence document with coeffs, initials and optional multiplier/exponent."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputFormatError("file", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputFormatError("file", f"invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise InputFormatError("file", "expected an object")
    out = {
        "coeffs": _json_int_list(data.get("coeffs"), "coeffs"),
        "initials": _json_int_list(data.get("initials"), "initials"),
    }
    for key in ("multiplier", "exponent"):
        if key in data:
            if not isinstance(data[key], int):
                raise InputFormatError(key, "expected an integer")
            out[key] = data[key]
    return out


def _recurrence_input(args) -> Optional[dict]:
    given: dict = {}
    if getattr(args, "file", None):
        given = load_recurrence_file(args.file)
    if getattr(args, "coeffs", None):
        given["coeffs"] = _int_list(args.coeffs, "coeffs")
    if getattr(args, "initials", None):
        given["initials"] = _int_list(args.initials, "initials")
    if not given:
        return None
    for key in ("coeffs", "initials"):
        if key not in given:
            raise InputFormatError(key, "missing")
    if len(given["coeffs"]) != len(given["initials"]):
        raise InputFormatError("initials", "must have as many entries as coeffs")
    for key in ("multiplier", "exponent"):
        value = getattr(args, key, None)
        if value is not None:
            given[key] = value
    return given


def _sequence(args):
    """The term source named on the command line, and its echo for the report."""
    if getattr(args, "terms", None):
        terms = _int_list(args.terms, "terms")
        return terms, {"terms": terms}
    if getattr(args, "matrix", None):
        A = parse_matrix(args.matrix)
        return sft_counts(A, args.max_n), {"matrix": [list(r) for r in A.rows]}
    given = _recurrence_input(args)
    if given is None:
        raise InputFormatError("coeffs", "supply --coeffs/--initials, --file, --terms or --matrix")
    rec = make_recurrence(given["coeffs"], given["initials"])
    M, s = given.get("multiplier", 1), given.get("exponent", 1)
    return realize.SampledSequence(rec, M, s), dict(given, multiplier=M, exponent=s)


# --- subcommands ----------------------------------------------------------


def _cmd_check(args, report):
    seq, echo = _sequence(args)
    report["inputs"].update(echo)
    verdict = realize.check_realizable(seq, args.max_n, args.strategy)
    report.update(verdict.to_dict())


def _cmd_params(args, report):
    given = _recurrence_input(args)
    if given is None:
        raise InputFormatError("coeffs", "supply --coeffs and --initials or --file")
    report["inputs"].update(given, delta_k=args.delta_k, conservative=args.conservative)
    rec = make_recurrence(given["coeffs"], given["initials"])
    params = realize.derive_params(rec, args.delta_k, args.conservative)
    report["params"] = params.to_dict()
    report["hypotheses"] = {name: ok for name, ok in vars(check_hypotheses(rec)).items()}
    report["char_poly"] = str(polyalg.char_poly(rec))


def _cmd_orbits(args, report):
    seq, echo = _sequence(args)
    report["inputs"].update(echo)
    try:
        census = realize.orbit_census(seq, args.max_n)
    except CensusUndefinedError as exc:
        report.update(realize.Verdict(realize.Status.FAIL, realize.Issue(exc.n, "D"), exc.n).to_dict())
        return
    report.update(verdict="PASS", first_issue=None, checked_up_to=args.max_n)
    report["orbits"] = census.counts
    if args.csv:
        text = census.to_csv()
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            Path(args.csv).write_text(text)


def _cmd_sft(args, report):
    A = parse_matrix(args.matrix)
    counts = sft_counts(A, args.max_n)
    report["inputs"].update(matrix=[list(r) for r in A.rows], check=args.check)
    report["terms_head"] = counts[:HEAD]
    if args.check:
        report.update(realize.check_realizable(counts, args.max_n).to_dict())


def _cmd_thm2(args, report):
    report["inputs"].update(k=args.k, ell=args.ell)
    consts = realize.theorem2_constants(args.k)
    report["params"] = dict(vars(consts), s=consts.N_k * args.ell)
    report.update(realize.verify_theorem2(args.k, args.ell, args.max_n).to_dict())


def _cmd_thm3(args, report):
    report["inputs"].update(P=args.p, Q=args.q)
    result = realize.verify_theorem3(args.p, args.q, args.max_n)
    report.update(result.verdict.to_dict())
    report["verdict"] = result.status.value
    report["params"] = {"multiplier": result.multiplier}
    if result.sharper is not None:
        report["sharper"] = dict(result.sharper.to_dict(), multiplier=abs(args.p))


def _cmd_multiplier(args, report):
    seq, echo = _sequence(args)
    report["inputs"].update(echo, max_m=args.max_m)
    M = realize.minimal_multiplier(seq, args.max_n, args.max_m)
    report["multiplier"] = M
    report.update(verdict="PASS" if M is not None else "FAIL", first_issue=None, checked_up_to=args.max_n)


def _cmd_minpoly(args, report):
    terms = _int_list(args.terms, "terms")
    report["inputs"].update(terms=terms)
    poly = minimal_polynomial(terms)
    report["minimal_polynomial"] = str(poly)
    report["coefficients"] = list(poly.coeffs)


COMMANDS = {
    "check": _cmd_check,
    "params": _cmd_params,
    "orbits": _cmd_orbits,
    "sft": _cmd_sft,
    "thm2": _cmd_thm2,
    "thm3": _cmd_thm3,
    "multiplier": _cmd_multiplier,
    "minpoly": _cmd_minpoly,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="doldkit", description="Dold and sign conditions for integer sequences.")
    parser.add_argument("--version", action="version", version=f"doldkit {__version__}")
    parser.add_argument("--json", action="store_true", help="print a machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def recurrence_args(p, sampled=True):
        p.add_argument("--coeffs", help="a_1,...,a_k")
        p.add_argument("--initials", help="u_1,...,u_k")
        p.add_argument("--file", help="JSON document with coeffs, initials[, multiplier, exponent]")
        if sampled:
            p.add_argument("--multiplier", type=int)
            p.add_argument("--exponent", type=int)

    p = sub.add_parser("check", help="scan (D) and (S) up to --max-n")
    recurrence_args(p)
    p.add_argument("--terms", help="explicit terms a_1,a_2,...")
    p.add_argument("--max-n", type=int, default=500)
    p.add_argument("--strategy", choices=["auto", "exact", "bound"], default="auto")

    p = sub.add_parser("params", help="derive M, s, n0, n1, ell0")
    recurrence_args(p, sampled=False)
    p.add_argument("--delta-k", type=int, help="splitting-field discriminant override")
    p.add_argument("--conservative", action="store_true", help="use k! as the exponent step")

    p = sub.add_parser("orbits", help="orbit counts O_n")
    recurrence_args(p)
    p.add_argument("--terms")
    p.add_argument("--matrix")
    p.add_argument("--max-n", type=int, default=50)
    p.add_argument("--csv", help="write n,O_n rows to this path ('-' for stdout)")

    p = sub.add_parser("sft", help="trace counts of a transition matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--max-n", type=int, default=100)
    p.add_argument("--check", action="store_true")

    p = sub.add_parser("thm2", help="k-generalized Fibonacci driver")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--max-n", type=int, default=300)

    p = sub.add_parser("thm3", help="((P^2-4Q) u_{n^2}) Dold driver")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-n", type=int, default=500)

    p = sub.add_parser("multiplier", help="least M with (M a_n) satisfying (D)")
    recurrence_args(p)
    p.add_argument("--terms")
    p.add_argument("--max-n", type=int, default=100)
    p.add_argument("--max-m", type=int, default=10**6)

    p = sub.add_parser("minpoly", help="minimal polynomial of a window of terms")
    p.add_argument("--terms", required=True)
    return parser


def execute(args) -> tuple:
    """Run a parsed command; returns (report, exit_code)."""
    report: dict = {
        "command": args.command,
        "inputs": {"max_n": getattr(args, "max_n", None)},
        "verdict": None,
        "first_issue": None,
        "checked_up_to": None,
        "params": None,
        "version": __version__,
    }
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
        code = EXIT_CODES.get(report["verdict"], 0)
    except InputFormatError as exc:
        report["error"] = {"field": exc.field, "message": str(exc)}
        code = EXIT_ERROR
    except DoldkitError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_ERROR
    report["timing"] = round(time.perf_counter() - start, 6)
    return report, code


def _human(report: dict) -> str:
    lines = []
    if "error" in report:
        return f"error: {report['error']['message']}"
    if report.get("terms_head") is not None:
        lines.append("first terms: " + ", ".join(map(str, report["terms_head"])))
    for key in ("minimal_polynomial", "char_poly", "multiplier"):
        if key in report:
            lines.append(f"{key.replace('_', ' ')}: {report[key]}")
    if report.get("params"):
        for key, value in report["params"].items():
            lines.append(f"  {key}: {value}")
    if report.get("orbits") is not None:
        lines.append("orbits: " + ", ".join(map(str, report["orbits"][:HEAD])))
    if report["verdict"]:
        line = f"{report['verdict']} (checked up to n = {report['checked_up_to']})"
        issue = report.get("first_issue")
        if issue:
            line += f"; first issue at n = {issue['n']}, condition {issue['condition']}: {issue['detail']}"
        lines.append(line)
    if "sharper" in report:
        lines.append(f"sharper |P| multiplier: {report['sharper']['verdict']}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    report, code = execute(args)
    if args.json:
        print(json.dumps(report))
    else:
        out = _human(report)
        print(out, file=sys.stderr if "error" in report else sys.stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
