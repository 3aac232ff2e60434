"""Command-line front end.

Exit codes: 0 pass, 1 violation or mismatch, 2 usage error, 3 numerical failure.
"""

import argparse
import csv
import io as _io
import sys

from . import repro
from .classes import classify
from .errors import DomainError, NumericalFailure, OpineqError, PreconditionUnmet, UsageError
from .io import dumps, load_matrix
from .means import MeanSpec
from .numrange import wnum_report
from .theorems import falsify, resolve, scan

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CSV_FIELDS = ("check_id", "dim", "seed", "margin", "passed")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_dims(text):
    """``"2-8"``, ``"2,3,5"`` or a mix such as ``"2,4-6"``."""
    dims = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = (int(p) for p in part.split("-", 1))
                if hi < lo:
                    raise ValueError
                dims.extend(range(lo, hi + 1))
            elif part:
                dims.append(int(part))
    except ValueError:
        raise UsageError(f"bad --dims {text!r}") from None
    if not dims or min(dims) < 1:
        raise UsageError("--dims must list positive integers")
    return dims


def _common(p):
    p.add_argument("--seed", type=int, help="base seed (required for scans)")
    p.add_argument("--tol", type=float, help="relative tolerance")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", default="2-8")
    p.add_argument("--corpus", help="ginibre, normal, psd, unitary, invertible (hyponormal, semi-hyponormal alias normal)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--file", action="append", default=[], help="matrix JSON; repeat for several inputs")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser():
    parser = _Parser(prog="opineq", description="Operator inequality laboratory")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="evaluate one named check")
    p.add_argument("check_id")
    _common(p)
    p.add_argument("--fg", help="f,g pair: sqrt, power:<t>, one-id, id-one")
    p.add_argument("--t", type=float, help="mean weight or eq12 parameter")
    p.add_argument("--t-prime", type=float, default=1.0)
    p.add_argument("--v-prime", type=float, default=1.0)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)

    p = sub.add_parser("falsify", help="seeded counterexample search")
    p.add_argument("check_id")
    _common(p)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("classify", help="operator class and (alpha, beta) profile")
    _common(p)

    p = sub.add_parser("wnum", help="numerical radius and its bounds")
    _common(p)
    p.add_argument("--S", help="matrix JSON for S (default I)")
    p.add_argument("--t", type=float, default=0.5)

    p = sub.add_parser("repro", help="fixed-instance regression table")
    _common(p)
    return parser


def _csv(rows):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([r[k] for k in CSV_FIELDS])
    return buf.getvalue()


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_tol(args, allow_zero=False):
    if args.tol is None:
        return
    if args.tol < 0 or (args.tol == 0 and not allow_zero):
        raise UsageError("--tol must be positive")


def _need_seed(args):
    if args.seed is None:
        raise UsageError("scan commands need an explicit --seed")
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")


def _check_kwargs(entry, args, mats):
    names = [n for n in entry.inputs if n != "spec"]
    if len(mats) != len(names):
        raise UsageError(f"{entry.check_id} takes {len(names)} matrix file(s) ({', '.join(names) or 'none'}), "
                         f"got {len(mats)}")
    kw = dict(zip(names, mats))
    params = entry.func.__code__.co_varnames[: entry.func.__code__.co_argcount]
    if "fg" in params and args.fg:
        kw["fg"] = args.fg
    if "sign" in params:
        kw["sign"] = args.sign
    if "spec" in params:
        kw["spec"] = MeanSpec.weighted(0.5 if args.t is None else args.t)
    if "t" in params:
        kw["t"] = 0.5 if args.t is None else args.t
    if "t_prime" in params:
        kw["t_prime"], kw["v_prime"] = args.t_prime, args.v_prime
    return kw


def cmd_check(args):
    _check_tol(args)
    entry = resolve(args.check_id)
    mats = [load_matrix(f) for f in args.file]
    if mats or not [n for n in entry.inputs if n != "spec"]:
        rep = entry.func(tol=args.tol, **_check_kwargs(entry, args, mats))
        if args.format == "csv":
            dim = mats[0].shape[0] if mats else 2
            text = _csv([{"check_id": rep.check_id, "dim": dim, "seed": "", "margin": rep.margin,
                          "passed": rep.passed}])
        else:
            text = dumps(rep.to_json())
        _emit(args, text)
        return EXIT_PASS if rep.passed else EXIT_FAIL
    _need_seed(args)
    cid, corpus, dims, rows = scan(entry.check_id, parse_dims(args.dims), args.trials, args.seed,
                                   args.corpus, args.tol)
    results = [{"trial": t, "dim": n, "margin": m, "passed": bool(ok) if m is not None else None}
               for t, n, m, ok, _ in rows]
    failed = sum(1 for r in results if r["passed"] is False)
    if args.format == "csv":
        text = _csv([{"check_id": cid, "dim": r["dim"], "seed": args.seed, "margin": r["margin"],
                      "passed": r["passed"]} for r in results])
    else:
        text = dumps({"check_id": cid, "corpus": corpus, "dims": dims, "seed": args.seed,
                      "trials": args.trials, "n_failed": failed,
                      "skipped": sum(1 for r in results if r["passed"] is None),
                      "passed": failed == 0, "results": results})
    _emit(args, text)
    return EXIT_PASS if failed == 0 else EXIT_FAIL


def cmd_falsify(args):
    _check_tol(args)
    _need_seed(args)
    res = falsify(args.check_id, parse_dims(args.dims), args.trials, args.seed, args.corpus, args.tol,
                  args.workers)
    if args.format == "csv":
        text = _csv([{"check_id": res.check_id, "dim": v["dim"], "seed": args.seed, "margin": v["margin"],
                      "passed": False} for v in res.violations])
    else:
        text = dumps(res.to_json())
    _emit(args, text)
    return EXIT_FAIL if res.found else EXIT_PASS


def _one_file(args):
    if len(args.file) != 1:
        raise UsageError("pass exactly one --file")
    return load_matrix(args.file[0])


def cmd_classify(args):
    T = _one_file(args)
    out = classify(T, args.tol)
    if args.format == "csv":
        cells = ["" if out[k] is None else str(out[k]) for k in ("class", "margin", "alpha", "beta")]
        text = "class,margin,alpha,beta\n" + ",".join(cells) + "\n"
    else:
        text = dumps(out)
    _emit(args, text)
    return EXIT_PASS


def cmd_wnum(args):
    T = _one_file(args)
    S = load_matrix(args.S) if args.S else None
    out = wnum_report(T, S, args.t)
    if args.format == "csv":
        b = out["bounds"]
        keys = ("eq12", "eq24", "eq25", "eq31", "eq22_lower")
        text = ("omega,theta,error_bound," + ",".join(keys) + "\n"
                + ",".join(str(v) for v in (out["omega"], out["theta"], out["error_bound"]))
                + "," + ",".join("" if b[k] is None else str(b[k]) for k in keys) + "\n")
    else:
        text = dumps(out)
    _emit(args, text)
    return EXIT_PASS


def cmd_repro(args):
    _check_tol(args, allow_zero=True)
    rows = repro.run(args.tol)
    if args.format == "json":
        text = dumps({"passed": all(r.passed for r in rows), "rows": [r.to_json() for r in rows]})
    else:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("instance", "value", "expected", "tol", "passed"))
        for r in rows:
            w.writerow((r.instance, r.value, r.expected, r.tol, r.passed))
        text = buf.getvalue()
    if not args.out:
        sys.stderr.write(repro.format_table(rows) + "\n")
    _emit(args, text)
    return EXIT_PASS if all(r.passed for r in rows) else EXIT_FAIL


COMMANDS = {"check": cmd_check, "falsify": cmd_falsify, "classify": cmd_classify,
            "wnum": cmd_wnum, "repro": cmd_repro}


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.trials is not None and args.trials < 1:
        print("opineq: error: --trials must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except NumericalFailure as exc:
        print(f"opineq: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, DomainError, PreconditionUnmet) as exc:
        print(f"opineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OpineqError as exc:
        print(f"opineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
