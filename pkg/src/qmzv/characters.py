"""The regularised character psi^(t) on negative words and its Birkhoff factorisation.

For k_1..k_n >= 1 the character sends y_{-k_1}...y_{-k_n} to the Laurent series

    psi(z) = (-1)^K z^-K  sum_{l} prod_j binom(k_j, l_j) (-1)^(l_j+1) F(z S_j),

where K = k_1+...+k_n, S_j = sum_{i<=j} (l_i + k_i t) and
F(x) = e^x/(e^x-1) = sum_m B_m x^(m-1)/m! (B_1 = +1/2).  Expanding F gives the
explicit coefficients ``c_coeff``; :meth:`CharacterTable.psi` evaluates the
same sum by a dynamic program over the partial sums l_1+...+l_j.

Minimal subtraction (``pole_part``) and the recursion

    prepared(x) = psi(x) + sum_(x) psi_-(x') psi(x'')
    psi_-(x)    = -pole_part(prepared(x))
    psi_+(x)    = prepared(x) - pole_part(prepared(x))

give the factorisation psi = psi_-^{*-1} * psi_+.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, gcd, lcm
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from qmzv.exact.bernoulli import bernoulli
from qmzv.exact.laurent import LaurentSeries, exp_ratio_power, laurent_sum
from qmzv.exact.ratfunc import (
    RatFunc,
    expand_factors,
    poly_add,
    poly_mul,
    poly_scale,
    ratfunc_dot,
    ratfunc_from_factored,
)
from qmzv.quasi_shuffle import EMPTY, Word, WordSum, antipode

#: Default number of extra known orders carried beyond weight + depth.
DEFAULT_GUARD = 2


class Mode(str, enum.Enum):
    """How the q-sum is normalised before minimal subtraction.

    LOGQ multiplies by (-log q)^{-K}; ONE_MINUS_Q by (1-q)^{-K}.
    """

    LOGQ = "log"
    ONE_MINUS_Q = "1mq"

    @classmethod
    def parse(cls, text: Union[str, "Mode"]) -> "Mode":
        if isinstance(text, Mode):
            return text
        aliases = {"log": cls.LOGQ, "logq": cls.LOGQ, "1mq": cls.ONE_MINUS_Q, "oneminusq": cls.ONE_MINUS_Q}
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown normalisation mode {text!r} (expected 'log' or '1mq')") from None


Signature = tuple  # tuple[int, ...] of positive ints


def make_signature(ks: Iterable[int]) -> Signature:
    sig = tuple(int(k) for k in ks)
    if not sig:
        raise ValueError("signature must be non-empty")
    if any(k < 1 for k in sig):
        raise ValueError(f"signature entries must be positive integers, got {sig}")
    return sig


def sig_to_word(sig: Sequence[int]) -> Word:
    return tuple(-k for k in sig)


def word_to_sig(w: Word) -> Signature:
    if any(x >= 0 for x in w):
        raise ValueError(f"characters are defined on negative-index words only, got {w}")
    return tuple(-x for x in w)


def truncation_order(sig: Sequence[int], guard: int = DEFAULT_GUARD) -> int:
    """Known order for every psi series when extracting the value of ``sig``."""
    return sum(sig) + len(sig) + guard


# --------------------------------------------------------------------------
# explicit coefficients
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _c_coeff(ks: tuple, ms: tuple) -> RatFunc:
    total = RatFunc.ZERO
    for ls in product(*(range(k + 1) for k in ks)):
        term = RatFunc.ONE
        a = b = 0
        for k, l, m in zip(ks, ls, ms):
            a += l
            b += k
            sign = -1 if (l + k + 1) % 2 else 1
            term = term * (sign * comb(k, l))
            s = RatFunc.linear(a, b)
            term = term * (s ** (m - 1))
        total = total + term
    return total


def c_coeff(ks: Sequence[int], ms: Sequence[int]) -> RatFunc:
    """C^{k}_{m}(t): signed binomial sum over l_j in [0, k_j] of prod_j S_j^(m_j - 1)."""
    if len(ks) != len(ms):
        raise ValueError("ks and ms must have equal length")
    return _c_coeff(tuple(ks), tuple(ms))


def psi_from_c(sig: Sequence[int], order: int) -> LaurentSeries:
    """psi(sig) by direct enumeration of multi-indices m (slow; used as an oracle)."""
    n, K = len(sig), sum(sig)
    lo = -(K + n)
    coeffs = [RatFunc.ZERO] * (order - lo + 1)
    for ms in product(range(order - lo + 1), repeat=n):
        if sum(ms) > order - lo:
            continue
        scal = Fraction(1)
        for m in ms:
            scal *= bernoulli(m) / factorial(m)
        if not scal:
            continue
        coeffs[sum(ms)] = coeffs[sum(ms)] + c_coeff(sig, ms) * scal
    return LaurentSeries(coeffs, lo, order)


# --------------------------------------------------------------------------
# fast psi
# --------------------------------------------------------------------------

def _mul_trunc(alo: int, a: list, blo: int, b: list, top: int):
    """(lo, coeffs) of the product, degrees lo..top; a and b must be known far enough."""
    lo = alo + blo
    n = top - lo
    bd = {j: y for j, y in enumerate(b) if y}
    nza = [(i, x) for i, x in enumerate(a) if x and i <= n]
    symbolic = any(isinstance(x, RatFunc) for _, x in nza)
    out = []
    for d in range(n + 1):
        pairs = [(x, bd[d - i]) for i, x in nza if d - i in bd]
        if symbolic:
            out.append(ratfunc_dot(pairs))
        else:
            out.append(sum((x * y for x, y in pairs), Fraction(0)))
    return lo, out


class _Field:
    """Coefficient arithmetic for symbolic t (RatFunc) or a fixed rational t."""

    def __init__(self, t: Optional[Fraction]):
        self.t = t
        self.zero = RatFunc.ZERO if t is None else Fraction(0)
        self.one = RatFunc.ONE if t is None else Fraction(1)
        self._f_cache: dict = {}

    def dot(self, pairs):
        if self.t is None:
            return ratfunc_dot(pairs)
        return sum((x * y for x, y in pairs), Fraction(0))

    def linear(self, a: int, b: int):
        """a + b*t."""
        if self.t is None:
            return RatFunc.linear(a, b)
        return Fraction(a) + b * self.t

    def f_series(self, a: int, b: int, top: int) -> list:
        """Coefficients of F(z S) = sum_m B_m S^(m-1) z^(m-1)/m!, degrees -1..top, S = a+bt."""
        key = (a, b)
        cached = self._f_cache.get(key)
        if cached is not None and len(cached) >= top + 2:
            return cached[: top + 2]
        s = self.linear(a, b)
        out = [1 / s if self.t is not None else s.inverse()]
        power = self.one
        for m in range(1, top + 2):
            bm = bernoulli(m)
            out.append(power * (bm / factorial(m)) if bm else self.zero)
            power = power * s
        self._f_cache[key] = out
        return out


def _dp_step(states: dict, k: int, cum: int, top: int, field: _Field) -> dict:
    """One letter of the dynamic program: states g_{j-1}(L) -> g_j(L)."""
    new_states: dict = {}
    for L in range(0, max(states) + k + 1):
        # h(L) = sum_l binom(k,l) (-1)^(l+1) g_{j-1}(L - l)
        parts = []
        for l in range(0, k + 1):
            prev = states.get(L - l)
            if prev is not None:
                parts.append((comb(k, l) * (1 if l % 2 else -1), prev))
        if not parts:
            continue
        # all states of one step share the same lowest degree
        h_lo = parts[0][1][0]
        h = [field.dot([(c, pc[i]) for c, (_, pc) in parts]) for i in range(len(parts[0][1][1]))]
        if not any(h):
            continue
        f = field.f_series(L, cum, top - h_lo)
        new_states[L] = _mul_trunc(h_lo, h, -1, f, top)
    return new_states


# symbolic t: one factored denominator per state, integer polynomial numerators.
# A state is (lo, dc, fac, nums) meaning nums[i] / (dc * prod fac) at z^(lo+i).

@lru_cache(maxsize=4096)
def _f_int(a: int, b: int, top: int) -> tuple:
    """(M, polys) with M*S*F(zS) = sum_i polys[i] z^(i-1), S = a + b t, through z^top."""
    bs = [bernoulli(m) / factorial(m) for m in range(1, top + 2)]
    M = 1
    for x in bs:
        M = lcm(M, x.denominator)
    polys = [(M,)]
    for m, x in enumerate(bs, start=1):
        if not x:
            polys.append(())
            continue
        c = int(x * M)
        polys.append(tuple(c * comb(m, i) * a ** (m - i) * b ** i for i in range(m + 1)))
    return M, polys


def _merge_dens(parts) -> tuple:
    dc, fac = 1, {}
    for st in parts:
        dc = lcm(dc, st[1])
        for f, m in st[2].items():
            if m > fac.get(f, 0):
                fac[f] = m
    return dc, fac


def _lift(st, dc: int, fac: dict, mult: int) -> tuple:
    """The cofactor that rewrites a state over the denominator dc * prod fac, times mult."""
    sfac = st[2]
    missing = tuple(sorted((f, m - sfac.get(f, 0)) for f, m in fac.items() if m > sfac.get(f, 0)))
    c = mult * (dc // st[1])
    return poly_scale(expand_factors(missing), c) if missing else (c,)


def _sym_step(states: dict, k: int, cum: int, top: int) -> dict:
    new_states: dict = {}
    for L in range(0, max(states) + k + 1):
        parts = []
        for l in range(0, k + 1):
            prev = states.get(L - l)
            if prev is not None:
                parts.append((comb(k, l) * (1 if l % 2 else -1), prev))
        if not parts:
            continue
        h_lo = parts[0][1][0]
        n = len(parts[0][1][3])
        dc, fac = _merge_dens([st for _, st in parts])
        h = [()] * n
        for c, st in parts:
            cof = _lift(st, dc, fac, c)
            for i, p in enumerate(st[3]):
                if p:
                    h[i] = poly_add(h[i], poly_mul(p, cof))
        if not any(h):
            continue
        M, fi = _f_int(L, cum, top - h_lo)
        lo = h_lo - 1
        out = []
        for d in range(top - lo + 1):
            acc: tuple = ()
            for i in range(max(0, d - len(fi) + 1), min(d, n - 1) + 1):
                x, y = h[i], fi[d - i]
                if x and y:
                    acc = poly_add(acc, poly_mul(x, y))
            out.append(acc)
        g0 = gcd(L, cum)
        prim = (L // g0, cum // g0)
        fac[prim] = fac.get(prim, 0) + 1
        dc *= M * g0
        g = dc
        for p in out:
            for x in p:
                g = gcd(g, x)
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            out = [tuple(x // g for x in p) for p in out]
            dc //= g
        new_states[L] = (lo, dc, fac, out)
    return new_states


def _sym_total(states: dict, size: int, sign: int) -> list:
    parts = list(states.values())
    dc, fac = _merge_dens(parts)
    total = [()] * size
    for st in parts:
        cof = _lift(st, dc, fac, sign)
        for i, p in enumerate(st[3][:size]):
            if p:
                total[i] = poly_add(total[i], poly_mul(p, cof))
    return [ratfunc_from_factored(p, dc, fac) for p in total]


def _psi_logq(sig: tuple, order: int, field: _Field, cache: Optional[dict] = None) -> LaurentSeries:
    n, K = len(sig), sum(sig)
    # g_j(L) is needed through degree order + K + (n - j); its lowest degree is -j
    top_final = order + K
    tops = [top_final + n - j for j in range(1, n + 1)]
    symbolic = field.t is None
    start = 0
    states = {0: (0, 1, {}, [(1,)])} if symbolic else {0: (0, [field.one])}
    if cache is not None:
        # resume from the longest prefix whose states are known far enough
        for j in range(n, 0, -1):
            hit = cache.get(sig[:j])
            if hit is not None and hit[0] >= tops[j - 1]:
                start, states = j, hit[1]
                break
    cum = sum(sig[:start])
    for j in range(start + 1, n + 1):
        cum += sig[j - 1]
        if symbolic:
            states = _sym_step(states, sig[j - 1], cum, tops[j - 1])
        else:
            states = _dp_step(states, sig[j - 1], cum, tops[j - 1], field)
        if cache is not None:
            cache[sig[:j]] = (tops[j - 1], states)
    lo = -n
    size = top_final - lo + 1
    if symbolic:
        total = _sym_total(states, size, -1 if K % 2 else 1)
    else:
        total = [field.dot([(1, sc[i]) for _, sc in states.values()]) for i in range(size)]
        if K % 2:
            total = [-x for x in total]
    return LaurentSeries(total, lo - K, order)


def compute_psi(sig: Sequence[int], order: int, mode: Mode = Mode.LOGQ,
                t: Optional[Fraction] = None, field: Optional[_Field] = None,
                cache: Optional[dict] = None) -> LaurentSeries:
    """psi(y_{-k_1}...y_{-k_n}) known through z^order.

    ``cache`` maps signature prefixes to dynamic-program states and lets words
    sharing a prefix skip the shared steps.
    """
    sig = make_signature(sig)
    if order < -(sum(sig) + len(sig)) - 1:
        raise ValueError("order is below the lowest degree of the series")
    field = field or _Field(None if t is None else Fraction(t))
    mode = Mode.parse(mode)
    K, n = sum(sig), len(sig)
    series = _psi_logq(sig, order, field, cache)
    if mode is Mode.ONE_MINUS_Q:
        series = (series * exp_ratio_power(-K, order + K + n)).truncate(order)
    return series


def psi(sig: Sequence[int], order: int, mode: Union[Mode, str] = Mode.LOGQ) -> LaurentSeries:
    """The character on a single word with symbolic t."""
    return compute_psi(sig, order, Mode.parse(mode))


# --------------------------------------------------------------------------
# memoised table and Birkhoff decomposition
# --------------------------------------------------------------------------

class CharacterTable:
    """psi, psi_- and psi_+ on negative words, memoised for one (mode, order, t).

    ``t=None`` keeps t symbolic (coefficients in Q(t)); a rational ``t``
    specialises every coefficient to Q.

    With ``graded=False`` every psi series is known through ``z^order``.  With
    ``graded=True`` (default) psi(v) is known through
    ``z^(order - wt(v) - depth(v))``: the poles of psi_-(u) have order at most
    wt(u) + depth(u), so every product psi_-(u) psi(v) with uv = w is still
    known through ``z^(order - wt(w) - depth(w))``, and so is psi_+(w).  The
    constant term of psi_+(w) is therefore available whenever
    ``order >= wt(w) + depth(w)``, in either mode.
    """

    def __init__(self, mode: Union[Mode, str] = Mode.LOGQ, order: int = 8, t=None,
                 graded: bool = True):
        self.mode = Mode.parse(mode)
        self.order = order
        self.graded = graded
        self.t = None if t is None else Fraction(t)
        self._field = _Field(self.t)
        self._psi: dict = {}
        self._prefix: dict = {}
        self._minus: dict = {EMPTY: LaurentSeries.one()}
        self._plus: dict = {EMPTY: LaurentSeries.one()}
        self._lock = threading.RLock()
        self.stats = {"psi": 0, "birkhoff": 0}

    def __repr__(self) -> str:
        tt = "sym" if self.t is None else str(self.t)
        return f"CharacterTable(mode={self.mode.value}, order={self.order}, t={tt}, graded={self.graded})"

    @staticmethod
    def _check(w: Word) -> Word:
        w = tuple(w)
        if any(x >= 0 for x in w):
            raise ValueError(f"characters are defined on negative-index words only, got {w}")
        return w

    def psi(self, w: Word) -> LaurentSeries:
        w = self._check(w)
        if not w:
            return LaurentSeries.one()
        with self._lock:
            s = self._psi.get(w)
            if s is None:
                s = compute_psi(word_to_sig(w), self.series_order(w), self.mode, field=self._field,
                                cache=self._prefix)
                self._psi[w] = s
                self.stats["psi"] += 1
            return s

    def series_order(self, w: Word) -> int:
        """Known order of psi(w) in this table."""
        if not self.graded:
            return self.order
        return self.order - sum(-x for x in w) - len(w)

    def prepared(self, w: Word) -> LaurentSeries:
        """psi(w) + sum over proper splittings of psi_-(w') psi(w'')."""
        w = self._check(w)
        terms = [self.psi(w)]
        for i in range(1, len(w)):
            terms.append(self.minus(w[:i]) * self.psi(w[i:]))
        return laurent_sum(terms)

    def _split(self, w: Word) -> None:
        prep = self.prepared(w)
        pole = prep.pole_part()
        self._minus[w] = -pole
        self._plus[w] = prep.regular_part()
        self.stats["birkhoff"] += 1

    def minus(self, w: Word) -> LaurentSeries:
        w = self._check(w)
        with self._lock:
            if w not in self._minus:
                self._split(w)
            return self._minus[w]

    def plus(self, w: Word) -> LaurentSeries:
        w = self._check(w)
        with self._lock:
            if w not in self._plus:
                self._split(w)
            return self._plus[w]

    def apply(self, which: str, x: Union[WordSum, Word]) -> LaurentSeries:
        """Extend ``psi``/``minus``/``plus`` linearly to a WordSum."""
        f = {"psi": self.psi, "minus": self.minus, "plus": self.plus}[which]
        if not isinstance(x, WordSum):
            return f(x)
        total = LaurentSeries.zero()
        for w, c in x.items():
            total = total + f(w).scale(c)
        return total


def birkhoff(sig: Sequence[int], table: CharacterTable):
    """(psi_-, psi_+) for the word y_{-k_1}...y_{-k_n}."""
    w = sig_to_word(make_signature(sig))
    return table.minus(w), table.plus(w)


SeriesMap = Union[Callable[[Word], LaurentSeries], Mapping[Word, LaurentSeries]]


def convolve(phi: SeriesMap, psi_map: SeriesMap, w: Word) -> LaurentSeries:
    """(phi * psi)(w) = sum over uv = w of phi(u) psi(v)."""
    f = phi if callable(phi) else phi.__getitem__
    g = psi_map if callable(psi_map) else psi_map.__getitem__
    w = tuple(w)
    total = LaurentSeries.zero()
    for i in range(len(w) + 1):
        total = total + f(w[:i]) * g(w[i:])
    return total


def inverse_minus(table: CharacterTable) -> Callable[[Word], LaurentSeries]:
    """psi_- composed with the antipode, the convolution inverse of psi_-."""
    return lambda w: table.apply("minus", antipode(w))
