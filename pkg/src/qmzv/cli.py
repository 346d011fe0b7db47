"""Command-line front end: ``qmzv renorm | table | series | check | numeric``.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when ``check`` finds a failing identity, 2 for invalid input and 3 when a
series was not known far enough (a truncation-policy bug).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from qmzv import __version__
from qmzv.characters import (
    DEFAULT_GUARD,
    CharacterTable,
    Mode,
    compute_psi,
    make_signature,
    sig_to_word,
    truncation_order,
)
from qmzv.errors import InsufficientTruncation, PoleAtT, QMZVError
from qmzv.exact.ratfunc import RatFunc
from qmzv.renorm import eval_renorm, eval_renorm_complex, parse_complex, renormalised_mzv

#: Bumped whenever the truncation policy or value format changes; older cache files are ignored.
CACHE_VERSION = f"{__version__}/graded-guard-v1"

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# values and records
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexValue:
    """A complex number printed to a fixed number of significant digits."""

    re: str
    im: str
    digits: int

    def __str__(self) -> str:
        sign = "-" if self.im.startswith("-") else "+"
        return f"{self.re}{sign}{self.im.lstrip('-')}i"


Value = Union[Fraction, RatFunc, ComplexValue]


def _poly_to_json(p) -> list:
    return [str(c) for c in p]


def encode_value(v: Value) -> dict:
    if isinstance(v, RatFunc):
        if v.is_constant():
            v = v.constant_value()
        else:
            return {"type": "ratfunc", "num": _poly_to_json(v.num), "den": _poly_to_json(v.den), "text": str(v)}
    if isinstance(v, int):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return {"type": "rational", "num": str(v.numerator), "den": str(v.denominator)}
    if isinstance(v, ComplexValue):
        return {"type": "complex", "re": v.re, "im": v.im, "digits": v.digits}
    raise TypeError(f"cannot encode {type(v).__name__}")


def decode_value(d: dict) -> Value:
    kind = d.get("type")
    if kind == "rational":
        return Fraction(int(d["num"]), int(d["den"]))
    if kind == "ratfunc":
        return RatFunc(tuple(int(c) for c in d["num"]), tuple(int(c) for c in d["den"]))
    if kind == "complex":
        return ComplexValue(d["re"], d["im"], int(d["digits"]))
    raise ValueError(f"unknown value type {kind!r}")


@dataclass(frozen=True)
class OutputRecord:
    signature: tuple  # negative integers, as typed on the command line
    mode: str
    t: str
    value: Value
    order_used: int

    def to_dict(self) -> dict:
        return {
            "signature": list(self.signature),
            "mode": self.mode,
            "t": self.t,
            "value": encode_value(self.value),
            "order_used": self.order_used,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OutputRecord":
        return cls(tuple(int(x) for x in d["signature"]), d["mode"], d["t"],
                   decode_value(d["value"]), int(d["order_used"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls.from_dict(json.loads(text))


def plain_value(v: Value) -> str:
    if isinstance(v, RatFunc) and v.is_constant():
        return str(v.constant_value())
    return str(v)


# --------------------------------------------------------------------------
# cache
# --------------------------------------------------------------------------

class ValueCache:
    """JSON file of symbolic values keyed by ``mode|signature|order``."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.entries: dict = {}
        self.hits = 0
        self.misses = 0
        self.dirty = False
        if path and os.path.exists(path):
            try:
                with open(path) as fh:
                    data = json.load(fh)
            except (OSError, ValueError) as exc:
                print(f"warning: ignoring unreadable cache {path}: {exc}", file=sys.stderr)
                data = {}
            if data.get("version") == CACHE_VERSION:
                self.entries = data.get("entries", {})
            elif data:
                print(f"note: cache {path} has version {data.get('version')!r}, starting fresh", file=sys.stderr)

    @staticmethod
    def key(mode: Mode, sig: Sequence[int], order: int) -> str:
        return f"{mode.value}|{','.join(str(-k) for k in sig)}|{order}"

    def get(self, mode: Mode, sig, order: int) -> Optional[RatFunc]:
        if not self.path:
            return None
        d = self.entries.get(self.key(mode, sig, order))
        if d is None:
            self.misses += 1
            return None
        self.hits += 1
        v = decode_value(d)
        return v if isinstance(v, RatFunc) else RatFunc.from_scalar(v)

    def put(self, mode: Mode, sig, order: int, value: RatFunc) -> None:
        if not self.path:
            return
        self.entries[self.key(mode, sig, order)] = encode_value(value)
        self.dirty = True

    def save(self) -> None:
        if not (self.path and self.dirty):
            return
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"version": CACHE_VERSION, "entries": self.entries}, fh, sort_keys=True, indent=1)
        os.replace(tmp, self.path)


class Session:
    """Shared state of one invocation: cache, character tables, counters."""

    def __init__(self, cache_path: Optional[str], verbose: bool):
        self.cache = ValueCache(cache_path)
        self.verbose = verbose
        self.tables: dict = {}
        self.started = time.perf_counter()

    def table(self, mode: Mode, order: int, t: Optional[Fraction] = None) -> CharacterTable:
        key = (mode, t)
        tab = self.tables.get(key)
        if tab is None or tab.order < order:
            tab = CharacterTable(mode, order, t=t)
            self.tables[key] = tab
        return tab

    def symbolic(self, sig: tuple, mode: Mode, guard: int, table_order: int = 0) -> tuple:
        """(value, order) for a signature, through the cache when one is given.

        ``table_order`` lets a batch of signatures share one table built at the
        largest order they need.
        """
        order = truncation_order(sig, guard)
        v = self.cache.get(mode, sig, order)
        if v is None:
            v = renormalised_mzv(sig, mode, table=self.table(mode, max(order, table_order))).value
            self.cache.put(mode, sig, order, v)
        return v, order

    def report(self) -> None:
        if not self.verbose:
            return
        psi = sum(t.stats["psi"] for t in self.tables.values())
        split = sum(t.stats["birkhoff"] for t in self.tables.values())
        elapsed = time.perf_counter() - self.started
        print(f"stats: psi={psi} birkhoff={split} cache_hits={self.cache.hits} "
              f"cache_misses={self.cache.misses} elapsed={elapsed:.3f}s", file=sys.stderr)


# --------------------------------------------------------------------------
# argument parsing helpers
# --------------------------------------------------------------------------

def parse_int_list(text: str) -> list:
    try:
        vals = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not vals:
        raise UsageError("empty index list")
    return vals


def parse_signature(text: str) -> tuple:
    """``"-1,-3"`` -> (1, 3); every entry must be a negative integer."""
    vals = parse_int_list(text)
    if any(v >= 0 for v in vals):
        raise UsageError(f"arguments must be negative integers (e.g. -1,-3), got {text!r}")
    return make_signature(-v for v in vals)


def parse_t(text: str):
    """'sym' -> None, rationals and decimals -> Fraction, otherwise a complex string."""
    s = text.strip()
    if s.lower() in ("sym", "symbolic", "t"):
        return None
    if re.fullmatch(r"[+-]?\d+(/\d+)?", s) or re.fullmatch(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?", s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad value for t: {text!r}") from None
    try:
        parse_complex(s)
    except ValueError:
        raise UsageError(f"bad value for t: {text!r} (expected sym, p/q, a decimal or a+bi)") from None
    return s


def t_label(t) -> str:
    return "sym" if t is None else str(t)


def _complex_value(z, digits: int) -> ComplexValue:
    return ComplexValue(mpmath.nstr(mpmath.re(z), digits), mpmath.nstr(mpmath.im(z), digits), digits)


_NUMERIC_OPTS = ("-k", "--sig", "--t", "--q")


def _merge_negative_values(argv: Sequence[str]) -> list:
    """Let ``-k -1,-3`` and ``--t -1/2`` through argparse, which would read them as flags."""
    out = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _NUMERIC_OPTS and i + 1 < len(argv) and re.fullmatch(r"-[\d.][\d.,/eE+\-ij ]*", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_renorm(args, session: Session) -> int:
    sig = parse_signature(args.k)
    mode = Mode.parse(args.mode)
    t = parse_t(args.t)
    if args.guard < 0:
        raise UsageError("--guard must be >= 0")
    order = truncation_order(sig, args.guard)
    if isinstance(t, Fraction) and not session.cache.path:
        value: Value = eval_renorm(sig, t, mode, table=session.table(mode, order, t))
    else:
        sym, order = session.symbolic(sig, mode, args.guard)
        if t is None:
            value = sym
        elif isinstance(t, Fraction):
            value = sym.evaluate(t)
        else:
            value = _complex_value(eval_renorm_complex(sig, t, args.precision, mode, value=sym), args.precision)
    rec = OutputRecord(tuple(-k for k in sig), mode.value, t_label(t), value, order)
    if args.format == "json":
        print(rec.to_json())
    else:
        print(plain_value(value))
        if args.factored and isinstance(value, RatFunc) and not value.is_constant():
            print(value.format_factored())
    return EXIT_OK


def _table_values(args, session: Session) -> list:
    mode = Mode.parse(args.mode)
    t = parse_t(args.t)
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    if t is not None and not isinstance(t, Fraction):
        raise UsageError("table needs --t sym or a rational value")
    order = truncation_order((args.max, args.max), args.guard)
    rows = []
    for k1 in range(1, args.max + 1):
        row = []
        for k2 in range(1, args.max + 1):
            sig = (k1, k2)
            if t is not None and not session.cache.path:
                row.append(eval_renorm(sig, t, mode, table=session.table(mode, order, t)))
            else:
                sym, _ = session.symbolic(sig, mode, args.guard, order)
                row.append(sym if t is None else sym.evaluate(t))
        rows.append(row)
    return rows


def cmd_table(args, session: Session) -> int:
    rows = _table_values(args, session)
    t = parse_t(args.t)
    if args.format == "json":
        out = {
            "max": args.max,
            "mode": Mode.parse(args.mode).value,
            "t": t_label(t),
            "rows": [[encode_value(v) for v in row] for row in rows],
        }
        print(json.dumps(out, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow([plain_value(v) for v in row])
        sys.stdout.write(buf.getvalue())
    else:
        cells = [[plain_value(v) for v in row] for row in rows]
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            print("  ".join(c.rjust(width) for c in row))
    return EXIT_OK


def cmd_series(args, session: Session) -> int:
    sig = parse_signature(args.k)
    mode = Mode.parse(args.mode)
    t = parse_t(args.t)
    if t is not None and not isinstance(t, Fraction):
        raise UsageError("series needs --t sym or a rational value")
    if args.kind == "psi":
        s = compute_psi(sig, args.order, mode, t=t)
    else:
        tab = CharacterTable(mode, args.order, t=t, graded=False)
        session.tables[("series", args.kind)] = tab
        w = sig_to_word(sig)
        s = {"minus": tab.minus, "plus": tab.plus, "prepared": tab.prepared}[args.kind](w)
    if args.format == "json":
        out = {
            "signature": [-k for k in sig],
            "mode": mode.value,
            "t": t_label(t),
            "kind": args.kind,
            "lo": s.lo,
            "hi": s.hi,
            "coeffs": {str(d): encode_value(c if not isinstance(c, int) else Fraction(c)) for d, c in s.items()},
        }
        print(json.dumps(out, sort_keys=True))
    else:
        print(s.format(show_order=args.show_order))
    return EXIT_OK


def cmd_check(args, session: Session) -> int:
    from qmzv import checks

    t = parse_t(args.t)
    if t is not None and not isinstance(t, Fraction):
        raise UsageError("check needs --t sym or a rational value")
    if args.max_weight < 1:
        raise UsageError("--max-weight must be >= 1")
    results = checks.run_all(args.max_weight, t=t, mode=Mode.parse(args.mode))
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_numeric(args, session: Session) -> int:
    from qmzv.qseries import QEvalParams, qmzv_modified

    ks = parse_int_list(args.k)
    try:
        p = QEvalParams(args.q, args.t, args.cutoff, args.precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = qmzv_modified(ks, p)
    value = mpmath.nstr(res.value, args.precision)
    bound = mpmath.nstr(res.tail_bound, 6)
    if args.format == "json":
        print(json.dumps({"ks": ks, "q": args.q, "t": args.t, "cutoff": args.cutoff,
                          "precision": args.precision, "value": value, "tail_bound": bound}, sort_keys=True))
    else:
        print(f"{value} +- {bound}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", metavar="PATH", help="JSON file of symbolic values reused across runs")
    common.add_argument("--verbose", action="store_true", help="print work counters to stderr")

    parser = argparse.ArgumentParser(prog="qmzv", description="Renormalised q-MZVs at negative arguments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def mode_arg(p):
        p.add_argument("--mode", default="log", choices=["log", "1mq"], help="normalisation (default log)")

    p = sub.add_parser("renorm", parents=[common], help="one renormalised value")
    p.add_argument("-k", "--sig", dest="k", required=True, help="arguments, e.g. -1,-3")
    p.add_argument("--t", default="sym", help="sym, p/q, decimal or a+bi (default sym)")
    mode_arg(p)
    p.add_argument("--format", default="plain", choices=["plain", "json"])
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="extra truncation orders (default 2)")
    p.add_argument("--precision", type=int, default=30, help="digits for complex t")
    p.add_argument("--factored", action="store_true", help="also print the factored denominator")
    p.set_defaults(func=cmd_renorm)

    p = sub.add_parser("table", parents=[common], help="depth-two table")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--t", default="1")
    mode_arg(p)
    p.add_argument("--format", default="csv", choices=["csv", "json", "plain"])
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", parents=[common], help="print psi, psi_-, psi_+ or the prepared series")
    p.add_argument("-k", "--sig", dest="k", required=True)
    p.add_argument("--order", type=int, required=True, help="known through z^order")
    p.add_argument("--t", default="sym")
    p.add_argument("--kind", default="psi", choices=["psi", "minus", "plus", "prepared"])
    mode_arg(p)
    p.add_argument("--format", default="plain", choices=["plain", "json"])
    p.add_argument("--show-order", action="store_true", help="append the O(z^n) term")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("check", parents=[common], help="run the property suites")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--t", default="sym")
    mode_arg(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("numeric", parents=[common], help="nested q-sum with a tail bound")
    p.add_argument("-k", "--sig", dest="k", required=True, help="indices k_1,...,k_n (k_1 != 0)")
    p.add_argument("--q", required=True)
    p.add_argument("--t", default="1")
    p.add_argument("--cutoff", type=int, default=500)
    p.add_argument("--precision", type=int, default=20)
    p.add_argument("--format", default="plain", choices=["plain", "json"])
    p.set_defaults(func=cmd_numeric)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    session = Session(getattr(args, "cache", None), getattr(args, "verbose", False))
    try:
        code = args.func(args, session)
    except UsageError as exc:
        print(f"qmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InsufficientTruncation as exc:
        print(f"qmzv: insufficient truncation (please report): {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except PoleAtT as exc:
        print(f"qmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QMZVError, ValueError) as exc:
        print(f"qmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    session.cache.save()
    session.report()
    return code


if __name__ == "__main__":
    sys.exit(main())
