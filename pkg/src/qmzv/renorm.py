"""Renormalised values zeta_+^(t)(-k_1, ..., -k_n) and their closed-form checks.

The value is the constant term of psi_+ for the word y_{-k_1}...y_{-k_n}; it is
a rational function of t.  Depth one and depth two with odd weight can be
compared with the values of the meromorphic continuation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath

from qmzv.characters import (
    DEFAULT_GUARD,
    CharacterTable,
    Mode,
    make_signature,
    sig_to_word,
    truncation_order,
)
from qmzv.errors import InsufficientTruncation, PoleAtT
from qmzv.exact.bernoulli import bernoulli
from qmzv.exact.ratfunc import RatFunc, real_roots_rational

#: Sample points for the denominator regularity check.
REGULARITY_SAMPLES = (Fraction(1, 7), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(10))


@dataclass(frozen=True)
class RenormResult:
    """zeta_+^(t)(-sig) in canonical form, with the settings that produced it."""

    sig: tuple
    value: RatFunc
    mode: Mode
    order_used: int

    @property
    def word(self) -> tuple:
        return sig_to_word(self.sig)

    def evaluate(self, t0) -> Fraction:
        return self.value.evaluate(Fraction(t0))

    def is_constant(self) -> bool:
        return self.value.is_constant()


@dataclass(frozen=True)
class MeroOracleResult:
    defined: bool
    value: Optional[Fraction] = None


def _as_ratfunc(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc.from_scalar(x)


def _check_table(table: CharacterTable, sig: tuple, mode: Mode, symbolic: bool) -> None:
    if table.mode is not mode:
        raise ValueError(f"table mode {table.mode.value} does not match {mode.value}")
    if symbolic and table.t is not None:
        raise ValueError("a symbolic value needs a table with symbolic t")
    need = sum(sig) + len(sig)
    if table.order < need:
        raise InsufficientTruncation(
            f"table order {table.order} is below weight + depth = {need} for {sig}")


def renormalised_mzv(sig: Sequence[int], mode: Union[Mode, str] = Mode.LOGQ,
                     guard: int = DEFAULT_GUARD,
                     table: Optional[CharacterTable] = None) -> RenormResult:
    """The renormalised value as a rational function of t.

    ``sig`` lists the positive k_j of the arguments -k_j.  A shared ``table``
    (symbolic t, same mode, order at least weight + depth) may be passed to
    reuse work across signatures.
    """
    sig = make_signature(sig)
    mode = Mode.parse(mode)
    if table is None:
        table = CharacterTable(mode, truncation_order(sig, guard))
    _check_table(table, sig, mode, symbolic=True)
    value = _as_ratfunc(table.plus(sig_to_word(sig)).constant_term())
    return RenormResult(sig, value, mode, table.order)


def renormalised_many(sigs: Iterable[Sequence[int]], mode: Union[Mode, str] = Mode.LOGQ,
                      guard: int = DEFAULT_GUARD) -> list:
    """Several values computed on one shared table."""
    sigs = [make_signature(s) for s in sigs]
    if not sigs:
        return []
    mode = Mode.parse(mode)
    order = max(truncation_order(s, guard) for s in sigs)
    table = CharacterTable(mode, order)
    return [renormalised_mzv(s, mode, table=table) for s in sigs]


def eval_renorm(sig: Sequence[int], t0, mode: Union[Mode, str] = Mode.LOGQ,
                guard: int = DEFAULT_GUARD, table: Optional[CharacterTable] = None) -> Fraction:
    """Exact value at a rational t0.

    t is specialised before the Birkhoff recursion, which gives the same
    number as evaluating the symbolic value (evaluation is a ring morphism)
    at a fraction of the cost.
    """
    sig = make_signature(sig)
    mode = Mode.parse(mode)
    t0 = Fraction(t0)
    if table is None:
        table = CharacterTable(mode, truncation_order(sig, guard), t=t0)
    elif table.t != t0:
        raise ValueError(f"table is specialised at t={table.t}, not {t0}")
    _check_table(table, sig, mode, symbolic=False)
    try:
        return Fraction(table.plus(sig_to_word(sig)).constant_term())
    except ZeroDivisionError as exc:
        raise PoleAtT(f"t = {t0} is a pole of an intermediate coefficient for {sig}") from exc


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def parse_complex(text: str) -> mpmath.mpc:
    """``"2+1i"``, ``"1.5"``, ``"3/2"``, ``"-0.5i"`` -> mpc at the current precision."""
    s = text.strip().replace(" ", "").replace("j", "i")
    if re.fullmatch(r"[+-]?\d+/\d+", s):
        f = Fraction(s)
        return mpmath.mpc(mpmath.mpf(f.numerator) / f.denominator)
    m = re.fullmatch(rf"([+-]?{_NUM})", s)
    if m:
        return mpmath.mpc(mpmath.mpf(m.group(1)))
    m = re.fullmatch(rf"([+-]?)({_NUM})?i", s)
    if m:
        mag = mpmath.mpf(m.group(2)) if m.group(2) else mpmath.mpf(1)
        return mpmath.mpc(0, -mag if m.group(1) == "-" else mag)
    m = re.fullmatch(rf"([+-]?{_NUM})([+-])({_NUM})?i", s)
    if m:
        mag = mpmath.mpf(m.group(3)) if m.group(3) else mpmath.mpf(1)
        return mpmath.mpc(mpmath.mpf(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise ValueError(f"cannot parse {text!r} as a complex number")


def eval_renorm_complex(sig: Sequence[int], t0, precision: int = 30,
                        mode: Union[Mode, str] = Mode.LOGQ,
                        value: Optional[RatFunc] = None) -> mpmath.mpc:
    """Evaluate the symbolic value at a complex t0 with Re(t0) > 0.

    The result carries ``precision`` decimal digits (plus guard digits); print
    it with ``mpmath.nstr(result, precision)``.
    """
    if value is None:
        value = renormalised_mzv(sig, mode).value
    with mpmath.workdps(precision + 10):
        t = parse_complex(t0) if isinstance(t0, str) else mpmath.mpc(t0)
        if not t.real > 0:
            raise ValueError("t0 must have positive real part")
        num = mpmath.polyval([mpmath.mpf(c) for c in reversed(value.num)], t) if value.num else mpmath.mpc(0)
        den = mpmath.polyval([mpmath.mpf(c) for c in reversed(value.den)], t)
        return num / den


def mero_oracle(sig: Sequence[int]) -> MeroOracleResult:
    """Closed-form continuation values where they exist.

    Depth one: zeta(-k) = -B_{k+1}/(k+1).  Depth two with k_1 + k_2 odd:
    (1/2) B_{k_1+k_2+1}/(k_1+k_2+1).  Other negative points are singular.
    """
    sig = make_signature(sig)
    if len(sig) == 1:
        k = sig[0]
        return MeroOracleResult(True, -bernoulli(k + 1) / (k + 1))
    if len(sig) == 2 and sum(sig) % 2 == 1:
        w = sum(sig)
        return MeroOracleResult(True, bernoulli(w + 1) / (2 * (w + 1)))
    return MeroOracleResult(False)


def table(max_k: int, mode: Union[Mode, str] = Mode.LOGQ, t0=1,
          guard: int = DEFAULT_GUARD) -> list:
    """Matrix of zeta_+(-k1, -k2) for 1 <= k1, k2 <= max_k.

    ``t0=None`` gives symbolic entries (RatFunc); otherwise exact rationals.
    """
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    mode = Mode.parse(mode)
    order = truncation_order((max_k, max_k), guard)
    t = None if t0 is None else Fraction(t0)
    shared = CharacterTable(mode, order, t=t)
    rows = []
    for k1 in range(1, max_k + 1):
        row = []
        for k2 in range(1, max_k + 1):
            if t is None:
                row.append(renormalised_mzv((k1, k2), mode, table=shared).value)
            else:
                row.append(eval_renorm((k1, k2), t, mode, table=shared))
        rows.append(row)
    return rows


@dataclass(frozen=True)
class RegularityReport:
    samples_ok: bool
    rational_roots: tuple
    certified: Optional[bool]

    @property
    def ok(self) -> bool:
        return self.samples_ok and all(r <= 0 for r in self.rational_roots) and self.certified is not False


def denominator_regularity(value: RatFunc, samples: Sequence = REGULARITY_SAMPLES) -> RegularityReport:
    """Check that ``value`` has no pole at the samples or at a positive rational.

    When the denominator splits into linear factors a + b t (the usual case)
    every root is -a/b, so ``certified`` says whether all poles lie in
    Re(t) <= 0.  For other denominators ``certified`` is None.
    """
    value = _as_ratfunc(value)
    den = value.den
    samples_ok = all(sum(c * Fraction(s) ** i for i, c in enumerate(den)) != 0 for s in samples)
    dc, fac, rest = value.den_factors()
    roots = {-Fraction(a, b) for (a, b), _ in fac}
    if len(rest) > 1:
        roots.update(real_roots_rational(rest))
    certified: Optional[bool]
    if rest == (1,):
        certified = all(-Fraction(a, b) <= 0 for (a, b), _ in fac)
    else:
        certified = None
    return RegularityReport(samples_ok, tuple(sorted(roots)), certified)
