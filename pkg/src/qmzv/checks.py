"""Property suites for the Hopf algebra, the characters and the renormalised values.

Each suite returns a :class:`CheckResult`; a failure carries the first
counterexample found.  The CLI ``check`` command and the test-suite both run
these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Optional

from qmzv.characters import CharacterTable, convolve, inverse_minus
from qmzv.exact.laurent import LaurentSeries, laurent_sum
from qmzv.exact.ratfunc import RatFunc, ratfunc_dot
from qmzv.quasi_shuffle import (
    EMPTY,
    TensorSum,
    WordSum,
    antipode,
    coproduct,
    format_word,
    quasi_shuffle,
    weight,
    words_up_to_weight,
)
from qmzv.renorm import denominator_regularity, mero_oracle


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    cases: int = 0
    counterexample: Optional[str] = None
    notes: list = field(default_factory=list)

    def fail(self, detail: str) -> None:
        if self.passed:
            self.counterexample = detail
        self.passed = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name} ({self.cases} cases)"
        if self.counterexample:
            out += f": {self.counterexample}"
        return out


def word_pairs(max_weight: int, sign: int = -1, symmetric: bool = True) -> Iterator[tuple]:
    """Pairs (u, v) of non-empty words with wt(u) + wt(v) <= max_weight.

    With ``symmetric`` only one of (u, v), (v, u) is produced, since the
    identities checked here are symmetric in u and v.
    """
    words = sorted(words_up_to_weight(max_weight - 1, sign), key=lambda w: (weight(w), len(w), w))
    if symmetric:
        for u, v in combinations_with_replacement(words, 2):
            if weight(u) + weight(v) <= max_weight:
                yield u, v
    else:
        for u in words:
            for v in words:
                if weight(u) + weight(v) <= max_weight:
                    yield u, v


# --------------------------------------------------------------------------
# Hopf algebra
# --------------------------------------------------------------------------

def _triples_left(w) -> dict:
    acc: dict = {}
    for (u, v), c in coproduct(w).items():
        for (a, b), d in coproduct(u).items():
            acc[(a, b, v)] = acc.get((a, b, v), 0) + c * d
    return acc


def _triples_right(w) -> dict:
    acc: dict = {}
    for (u, v), c in coproduct(w).items():
        for (a, b), d in coproduct(v).items():
            acc[(u, a, b)] = acc.get((u, a, b), 0) + c * d
    return acc


def check_coassociativity(max_weight: int = 6) -> CheckResult:
    res = CheckResult("coassociativity (D (x) id) D = (id (x) D) D")
    for w in words_up_to_weight(max_weight):
        res.cases += 1
        if _triples_left(w) != _triples_right(w):
            res.fail(format_word(w))
    return res


def _coproduct_of_sum(x: WordSum) -> TensorSum:
    acc: dict = {}
    for w, c in x.items():
        for k, d in coproduct(w).items():
            acc[k] = acc.get(k, 0) + c * d
    return TensorSum(acc)


def check_bialgebra(max_weight: int = 6) -> CheckResult:
    res = CheckResult("bialgebra D(u * v) = D(u) * D(v)")
    for u, v in word_pairs(max_weight, symmetric=False):
        res.cases += 1
        if _coproduct_of_sum(quasi_shuffle(u, v)) != coproduct(u) * coproduct(v):
            res.fail(f"u={format_word(u)} v={format_word(v)}")
    return res


def check_antipode(max_weight: int = 6) -> CheckResult:
    res = CheckResult("antipode m(S (x) id)D = m(id (x) S)D = counit")
    for w in words_up_to_weight(max_weight):
        res.cases += 1
        left = WordSum()
        right = WordSum()
        for (a, b), c in coproduct(w).items():
            left = left + (antipode(a) * WordSum.word(b)).scale(c)
            right = right + (WordSum.word(a) * antipode(b)).scale(c)
        if left or right:
            res.fail(format_word(w))
    return res


# --------------------------------------------------------------------------
# minimal subtraction
# --------------------------------------------------------------------------

def random_series(rng: random.Random, symbolic: bool = False) -> LaurentSeries:
    lo = rng.randint(-5, 1)
    hi = rng.randint(lo, 4)

    def coeff():
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        if symbolic and rng.random() < 0.5:
            return RatFunc.linear(rng.randint(-3, 3), rng.randint(0, 3)) * x / RatFunc.linear(rng.randint(1, 4), 1)
        return x

    return LaurentSeries([coeff() for _ in range(lo, hi + 1)], lo, None)


def check_rota_baxter(samples: int = 200, seed: int = 1) -> CheckResult:
    """P(a)P(b) = P(P(a)b) + P(aP(b)) - P(ab) for the pole-part projector P."""
    res = CheckResult("Rota-Baxter identity for the pole part (weight -1)")
    rng = random.Random(seed)
    for i in range(samples):
        a, b = random_series(rng, i % 2 == 1), random_series(rng, i % 2 == 1)
        res.cases += 1
        P = LaurentSeries.pole_part
        left = P(a) * P(b)
        right = P(P(a) * b) + P(a * P(b)) - P(a * b)
        if not (left - right).agrees_with(LaurentSeries.zero()):
            res.fail(f"a={a.format()} b={b.format()}")
    return res


# --------------------------------------------------------------------------
# characters and Birkhoff decomposition
# --------------------------------------------------------------------------

def _apply(table: CharacterTable, which: str, x: WordSum) -> LaurentSeries:
    f = getattr(table, which)
    return laurent_sum(f(w).scale(c) for w, c in x.items())


def check_character(table: CharacterTable, max_weight: int) -> CheckResult:
    """psi(u) psi(v) = psi(u * v) on the degrees both sides know."""
    res = CheckResult(f"psi is a character (weight <= {max_weight})")
    for u, v in word_pairs(max_weight):
        res.cases += 1
        left = table.psi(u) * table.psi(v)
        right = _apply(table, "psi", quasi_shuffle(u, v))
        if not left.agrees_with(right):
            res.fail(f"u={format_word(u)} v={format_word(v)}")
    return res


def check_birkhoff_split(table: CharacterTable, max_weight: int) -> CheckResult:
    res = CheckResult(f"plus - prepared - minus = 0, minus is a pure pole part (weight <= {max_weight})")
    for w in words_up_to_weight(max_weight):
        res.cases += 1
        minus, plus, prep = table.minus(w), table.plus(w), table.prepared(w)
        ok = (plus - prep - minus).agrees_with(LaurentSeries.zero())
        ok = ok and minus.pole_part() == minus and plus.pole_part().agrees_with(LaurentSeries.zero())
        if not ok:
            res.fail(format_word(w))
    return res


def check_convolution(table: CharacterTable, max_weight: int) -> CheckResult:
    """convolve(psi_-, psi, w) = psi_+(w) and psi_-^{*-1} * psi_+ = psi."""
    res = CheckResult(f"psi_+ = psi_- * psi and psi = psi_-^(*-1) * psi_+ (weight <= {max_weight})")
    inv = inverse_minus(table)
    for w in words_up_to_weight(max_weight):
        res.cases += 1
        if not convolve(table.minus, table.psi, w).agrees_with(table.plus(w)):
            res.fail(f"psi_- * psi != psi_+ at {format_word(w)}")
        elif not convolve(inv, table.plus, w).agrees_with(table.psi(w)):
            res.fail(f"psi_-^(*-1) * psi_+ != psi at {format_word(w)}")
    return res


def zeta_plus(table: CharacterTable, w):
    if not w:
        return RatFunc.ONE if table.t is None else Fraction(1)
    value = table.plus(w).constant_term()
    if table.t is None:
        return value if isinstance(value, RatFunc) else RatFunc.from_scalar(value)
    return Fraction(value)


def check_zeta_morphism(table: CharacterTable, max_weight: int,
                        pairs: Optional[Iterable[tuple]] = None, name: Optional[str] = None) -> CheckResult:
    """zeta_+(u) zeta_+(v) = sum_w c_w zeta_+(w) over u * v, as exact identities."""
    res = CheckResult(name or f"zeta_+ respects the quasi-shuffle product (weight <= {max_weight})")
    if pairs is None:
        pairs = word_pairs(max_weight)
    symbolic = table.t is None
    for u, v in pairs:
        res.cases += 1
        terms = [(int(c), zeta_plus(table, w)) for w, c in quasi_shuffle(u, v).items()]
        if symbolic:
            left = zeta_plus(table, u) * zeta_plus(table, v)
            right = ratfunc_dot(terms)
        else:
            left = Fraction(zeta_plus(table, u)) * Fraction(zeta_plus(table, v))
            right = sum(c * Fraction(x) for c, x in terms)
        if left != right:
            res.fail(f"u={format_word(u)} v={format_word(v)}: {left} != {right}")
    return res


def check_mero(table: CharacterTable, max_weight: int) -> CheckResult:
    res = CheckResult(f"depth <= 2 values match the meromorphic continuation (weight <= {max_weight})")
    for w in words_up_to_weight(max_weight):
        if len(w) > 2:
            continue
        oracle = mero_oracle(tuple(-x for x in w))
        if not oracle.defined:
            continue
        res.cases += 1
        value = zeta_plus(table, w)
        if (value.constant_value() if isinstance(value, RatFunc) and value.is_constant() else value) != oracle.value:
            res.fail(f"{format_word(w)}: {value} != {oracle.value}")
    return res


def check_regularity(table: CharacterTable, max_weight: int) -> CheckResult:
    res = CheckResult(f"denominators have no poles in Re(t) > 0 (weight <= {max_weight})")
    if table.t is not None:
        res.notes.append("skipped: table is specialised")
        return res
    for w in words_up_to_weight(max_weight):
        res.cases += 1
        rep = denominator_regularity(zeta_plus(table, w))
        if not rep.ok:
            res.fail(f"{format_word(w)}: roots {rep.rational_roots}, certified={rep.certified}")
    return res


def hopf_suites(max_weight: int) -> list:
    return [check_coassociativity(max_weight), check_bialgebra(max_weight), check_antipode(max_weight)]


def run_all(max_weight: int, t=None, mode="log") -> list:
    """Every suite at the given weight, sharing one character table."""
    from qmzv.characters import DEFAULT_GUARD

    table = CharacterTable(mode, 2 * max_weight + DEFAULT_GUARD, t=t)
    return hopf_suites(max_weight) + [
        check_rota_baxter(),
        check_character(table, max_weight),
        check_birkhoff_split(table, max_weight),
        check_convolution(table, max_weight),
        check_zeta_morphism(table, max_weight),
        check_mero(table, max_weight),
        check_regularity(table, max_weight),
    ]
