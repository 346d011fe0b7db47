"""Truncated Laurent series in the regulator ``z``.

A series stores coefficients for degrees ``lo .. hi``.  Degrees below ``lo``
are exactly zero; degrees above ``hi`` are *unknown*.  ``hi is None`` marks an
exact Laurent polynomial (everything above the stored range is zero), which is
what the pole-part projector produces.

Coefficients may be any exact field elements supporting ``+ - *`` and truth
testing: :class:`~qmzv.exact.ratfunc.RatFunc` for symbolic ``t`` or
:class:`fractions.Fraction` once ``t`` is specialised.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional

from qmzv.errors import InsufficientTruncation
from qmzv.exact.bernoulli import bernoulli
from qmzv.exact.ratfunc import RatFunc, ratfunc_dot, ratfunc_sum
from math import factorial


def _min_hi(x: Optional[int], y: Optional[int]) -> Optional[int]:
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


class LaurentSeries:
    __slots__ = ("lo", "hi", "coeffs")

    def __init__(self, coeffs: Iterable = (), lo: int = 0, hi: Optional[int] = None):
        coeffs = list(coeffs)
        if hi is not None:
            want = hi - lo + 1
            if want < 0:
                if coeffs:
                    raise ValueError("coefficients given beyond the truncation order")
                coeffs, lo = [], hi + 1
            elif len(coeffs) > want:
                coeffs = coeffs[:want]
            elif len(coeffs) < want:
                coeffs = coeffs + [0] * (want - len(coeffs))
        # strip known leading zeros
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        lo += start
        coeffs = coeffs[start:]
        if hi is None:
            end = len(coeffs)
            while end and not coeffs[end - 1]:
                end -= 1
            coeffs = coeffs[:end]
            if not coeffs:
                lo = 0
        self.lo = lo
        self.hi = hi
        self.coeffs = tuple(coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_dict(cls, terms: Mapping[int, object], hi: Optional[int] = None) -> "LaurentSeries":
        terms = {d: c for d, c in terms.items() if c}
        if hi is not None and any(d > hi for d in terms):
            raise ValueError("term beyond truncation order")
        if not terms:
            return cls((), (hi + 1) if hi is not None else 0, hi)
        lo = min(terms)
        top = max(terms) if hi is None else hi
        return cls([terms.get(d, 0) for d in range(lo, top + 1)], lo, hi)

    @classmethod
    def monomial(cls, c, degree: int, hi: Optional[int] = None) -> "LaurentSeries":
        return cls.from_dict({degree: c}, hi)

    @classmethod
    def one(cls) -> "LaurentSeries":
        return cls((1,), 0, None)

    @classmethod
    def zero(cls, hi: Optional[int] = None) -> "LaurentSeries":
        return cls((), (hi + 1) if hi is not None else 0, hi)

    # -- access -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.hi is None

    @property
    def top(self) -> int:
        """Highest stored degree."""
        return self.lo + len(self.coeffs) - 1

    def coeff(self, d: int):
        if self.hi is not None and d > self.hi:
            raise InsufficientTruncation(f"coefficient of z^{d} requested, series known to z^{self.hi}")
        i = d - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def items(self):
        """(degree, coefficient) pairs for the nonzero stored coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lo + i, c

    def to_dict(self) -> dict:
        return dict(self.items())

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lo, self.hi, self.coeffs))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equal on the degrees both series know."""
        hi = _min_hi(self.hi, other.hi)
        lo = min(self.lo, other.lo)
        top = hi if hi is not None else max(self.top, other.top)
        return all(self.coeff(d) == other.coeff(d) for d in range(lo, top + 1))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries((other,), 0, None)
        hi = _min_hi(self.hi, other.hi)
        if not self.coeffs:
            lo = other.lo
        elif not other.coeffs:
            lo = self.lo
        else:
            lo = min(self.lo, other.lo)
        top = hi if hi is not None else max(self.top, other.top)
        out = []
        for d in range(lo, top + 1):
            i, j = d - self.lo, d - other.lo
            a = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
            b = other.coeffs[j] if 0 <= j < len(other.coeffs) else 0
            out.append(a + b)
        return LaurentSeries(out, lo, hi)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries([-c for c in self.coeffs], self.lo, self.hi)

    def __sub__(self, other) -> "LaurentSeries":
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def scale(self, s) -> "LaurentSeries":
        return LaurentSeries([c * s for c in self.coeffs], self.lo, self.hi)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by z^k."""
        return LaurentSeries(self.coeffs, self.lo + k, None if self.hi is None else self.hi + k)

    def truncate(self, hi: int) -> "LaurentSeries":
        if self.hi is not None and hi > self.hi:
            raise InsufficientTruncation(f"cannot extend truncation from {self.hi} to {hi}")
        return LaurentSeries(self.coeffs, self.lo, hi)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        a, b = self, other
        lo = a.lo + b.lo
        hi = _min_hi(None if a.hi is None else a.hi + b.lo,
                     None if b.hi is None else b.hi + a.lo)
        ca, cb = a.coeffs, b.coeffs
        if not ca or not cb:
            if hi is None:
                return LaurentSeries.zero()
            return LaurentSeries.zero(hi)
        top = hi if hi is not None else a.top + b.top
        return LaurentSeries(_cauchy(ca, cb, top - lo), lo, hi)

    __rmul__ = __mul__

    # -- minimal subtraction ---------------------------------------------

    def pole_part(self) -> "LaurentSeries":
        """Degrees lo..-1, as an exact Laurent polynomial."""
        if self.hi is not None and self.hi < -1:
            raise InsufficientTruncation(f"pole part needs z^-1, series known to z^{self.hi}")
        n = max(0, -self.lo)
        return LaurentSeries(self.coeffs[:n], self.lo, None)

    def regular_part(self) -> "LaurentSeries":
        """Degrees 0..hi (the image of Id - pole_part)."""
        if self.lo >= 0:
            return self
        start = -self.lo
        return LaurentSeries(self.coeffs[start:], 0, self.hi)

    def constant_term(self):
        if self.hi is not None and self.hi < 0:
            raise InsufficientTruncation(f"constant term needs z^0, series known to z^{self.hi}")
        return self.coeff(0)

    # -- evaluation / display --------------------------------------------

    def map_coeffs(self, f) -> "LaurentSeries":
        return LaurentSeries([f(c) for c in self.coeffs], self.lo, self.hi)

    def evaluate(self, z, coeff_eval=None):
        """Sum the known terms at ``z``; ``coeff_eval`` maps each coefficient to a number."""
        total = 0
        for d, c in self.items():
            v = coeff_eval(c) if coeff_eval else c
            total += v * z ** d
        return total

    def format(self, show_order: bool = True) -> str:
        """Lowest degree first: ``1/2 z^-2  -1/12  7/720 z^2  O(z^3)``.

        Coefficients depending on t are bracketed.
        """
        parts = []
        for d, c in self.items():
            s = str(c)
            if "t" in s:
                s = f"[{s}]"
            parts.append(s if d == 0 else f"{s} z^{d}")
        if not parts:
            parts.append("0")
        if show_order and self.hi is not None:
            parts.append(f"O(z^{self.hi + 1})")
        return "  ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentSeries({self.format()})"


def _cauchy(ca, cb, n: int) -> list:
    """Coefficients 0..n of the product of two coefficient tuples."""
    nza = [(i, c) for i, c in enumerate(ca) if c and i <= n]
    nzb = {j: c for j, c in enumerate(cb) if c}
    if any(isinstance(c, RatFunc) for _, c in nza) or any(isinstance(c, RatFunc) for c in nzb.values()):
        # one reduction per output coefficient instead of one per term
        return [ratfunc_dot([(x, nzb[d - i]) for i, x in nza if d - i in nzb]) for d in range(n + 1)]
    out = [0] * (n + 1)
    for i, x in nza:
        for j, y in nzb.items():
            d = i + j
            if d <= n:
                out[d] = out[d] + x * y
    return out


def laurent_sum(items: Iterable["LaurentSeries"]) -> "LaurentSeries":
    """Sum of several series; for RatFunc coefficients each degree is reduced once."""
    items = [x for x in items]
    if not items:
        return LaurentSeries.zero()
    if len(items) == 1:
        return items[0]
    hi = None
    for x in items:
        hi = _min_hi(hi, x.hi)
    nonempty = [x for x in items if x.coeffs]
    if not nonempty:
        return LaurentSeries((), min(x.lo for x in items), hi)
    lo = min(x.lo for x in nonempty)
    top = hi if hi is not None else max(x.top for x in nonempty)
    out = []
    for d in range(lo, top + 1):
        col = [x.coeffs[d - x.lo] for x in nonempty if 0 <= d - x.lo < len(x.coeffs)]
        col = [c for c in col if c]
        if any(isinstance(c, RatFunc) for c in col):
            out.append(ratfunc_sum(col))
        else:
            out.append(sum(col, 0))
    return LaurentSeries(out, lo, hi)


def laurent_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def laurent_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def laurent_constant_term(a: LaurentSeries):
    return a.constant_term()


def pole_part(a: LaurentSeries) -> LaurentSeries:
    return a.pole_part()


def regular_part(a: LaurentSeries) -> LaurentSeries:
    return a.regular_part()


def exp_ratio_power(p: int, n: int) -> LaurentSeries:
    """((e^z - 1)/z)^p as a power series known through z^n.

    Negative ``p`` is allowed; ((e^z-1)/z)^-1 = z/(e^z-1) = sum B_m (-z)^m / m!.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    if p >= 0:
        base = [Fraction(1, factorial(m + 1)) for m in range(n + 1)]
    else:
        base = [bernoulli(m) * (-1) ** m / factorial(m) for m in range(n + 1)]
    result = [Fraction(1)] + [Fraction(0)] * n
    for _ in range(abs(p)):
        result = _cauchy(result, base, n)
    return LaurentSeries(result, 0, n)
