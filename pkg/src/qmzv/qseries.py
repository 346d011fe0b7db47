"""Direct numerical evaluation of the q-sums behind the characters.

The modified q-MZV is

    sum_{m_1 > ... > m_n > 0} q^{(|k_1| m_1 + ... + |k_n| m_n) t} / prod_j (1 - q^{m_j})^{k_j},

summed over m_1 <= M with a rigorous bound on the rest.  At q = e^z it
reproduces psi^(t) up to the factor (-1)^K z^{-K}, which gives an independent
check on the exact Laurent coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import mpmath

from qmzv.characters import Mode, compute_psi, make_signature
from qmzv.errors import ZeroLeadingIndex
from qmzv.exact.laurent import LaurentSeries

Number = Union[int, float, Fraction, str, mpmath.mpf, mpmath.mpc]

DEFAULT_PRECISION = 30


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, complex):
        return mpmath.mpc(x)
    if isinstance(x, str):
        from qmzv.renorm import parse_complex

        z = parse_complex(x)
        return z.real if z.imag == 0 else z
    return mpmath.mpf(x)


@dataclass(frozen=True)
class QEvalParams:
    """Evaluation point and truncation for the nested sums."""

    q: Number
    t: Number = 1
    cutoff: int = 200
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        with mpmath.workdps(self.precision):
            q, t = _mp(self.q), _mp(self.t)
            if isinstance(q, mpmath.mpc) or not (0 < q < 1):
                raise ValueError(f"q must be a real number in (0, 1), got {self.q}")
            if not mpmath.re(t) > 0:
                raise ValueError(f"t must have positive real part, got {self.t}")
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")


@dataclass(frozen=True)
class QSumResult:
    value: Union[mpmath.mpf, mpmath.mpc]
    tail_bound: mpmath.mpf
    cutoff: int
    precision: int

    def __str__(self) -> str:
        return f"{mpmath.nstr(self.value, self.precision)} +- {mpmath.nstr(self.tail_bound, 5)}"


def nested_sum(factors: Sequence[Callable[[int], object]], cutoff: int):
    """sum over cutoff >= m_1 > ... > m_n >= 1 of prod_j factors[j](m_j), in O(n * cutoff)."""
    # inner[m] = sum over m > m_{j+1} > ... of the inner factors
    inner = [1] * (cutoff + 2)
    for f in reversed(factors):
        cur = [0] * (cutoff + 2)
        acc = 0
        for m in range(1, cutoff + 2):
            cur[m] = acc
            if m <= cutoff:
                acc = acc + f(m) * inner[m]
        inner = cur
    return inner[cutoff + 1]


def tail_bound(ks: Sequence[int], q, t, cutoff: int):
    """Upper bound for the part of the modified q-sum with m_1 > cutoff.

    |summand| <= C x^{m_1} prod_{j>=2} x_j^{m_j} with x_j = q^{|k_j| Re t} and
    C = max(1, (1-q)^{-sum max(k_j, 0)}).  Dropping the ordering of the inner
    indices bounds each inner sum by x_j/(1-x_j), or by m_1 when k_j = 0.
    """
    q, t = _mp(q), _mp(t)
    re_t = mpmath.re(t)
    pos = sum(max(k, 0) for k in ks)
    C = max(mpmath.mpf(1), (1 - q) ** (-pos))
    x = q ** (abs(ks[0]) * re_t)
    const = C
    z = 0
    for k in ks[1:]:
        if k == 0:
            z += 1
        else:
            xj = q ** (abs(k) * re_t)
            const *= xj / (1 - xj)
    M = cutoff
    rho = ((mpmath.mpf(M + 2) / (M + 1)) ** z) * x
    if rho >= 1:
        return mpmath.inf
    first = mpmath.mpf(M + 1) ** z * x ** (M + 1)
    return const * first / (1 - rho)


def _check_ks(ks: Sequence[int]) -> tuple:
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise ValueError("ks must be non-empty")
    if ks[0] == 0:
        raise ZeroLeadingIndex("the leading index k_1 must be nonzero for convergence")
    return ks


def qmzv_modified(ks: Sequence[int], p: QEvalParams) -> QSumResult:
    """Partial sum over m_1 <= p.cutoff plus a rigorous tail bound."""
    ks = _check_ks(ks)
    with mpmath.workdps(p.precision + 10):
        q, t = _mp(p.q), _mp(p.t)
        logq = mpmath.log(q)

        def factor(k):
            a = abs(k) * t * logq

            def f(m):
                return mpmath.exp(a * m) / (1 - q ** m) ** k

            return f

        value = nested_sum([factor(k) for k in ks], p.cutoff)
        bound = tail_bound(ks, q, t, p.cutoff)
        return QSumResult(value, bound, p.cutoff, p.precision)


def qmzv_sz(ks: Sequence[int], q, cutoff: int, precision: int = DEFAULT_PRECISION):
    """Partial sum of q^{|k_1| m_1 + ... + |k_n| m_n} / prod [m_j]_q^{k_j} over m_1 <= cutoff."""
    ks = _check_ks(ks)
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    with mpmath.workdps(precision + 10):
        q = _mp(q)
        if not 0 < q < 1:
            raise ValueError("q must lie in (0, 1)")

        def factor(k):
            def f(m):
                qm = q ** m
                return qm ** abs(k) / ((1 - qm) / (1 - q)) ** k

            return f

        return nested_sum([factor(k) for k in ks], cutoff)


def auto_cutoff(ks: Sequence[int], q, t, rel_tol, start: Optional[int] = None) -> int:
    """Smallest doubling of a first guess whose tail bound is below rel_tol times a crude size."""
    ks = _check_ks(ks)
    q, t = _mp(q), _mp(t)
    x = q ** (abs(ks[0]) * mpmath.re(t))
    if start is None:
        start = int(mpmath.ceil(mpmath.log(rel_tol) / mpmath.log(x))) + 10
    M = max(start, 1)
    while tail_bound(ks, q, t, M) > rel_tol:
        M *= 2
    return M


@dataclass(frozen=True)
class ConsistencyResult:
    symbolic: mpmath.mpf
    numeric: mpmath.mpf
    relative_error: mpmath.mpf
    tail_bound: mpmath.mpf
    cutoff: int
    series: LaurentSeries


def evaluate_series(series: LaurentSeries, z) -> mpmath.mpf:
    """Sum of the known coefficients times z^d (coefficients must be rational)."""
    z = _mp(z)
    total = mpmath.mpf(0)
    for d, c in series.items():
        c = Fraction(c)
        total += mpmath.mpf(c.numerator) / c.denominator * z ** d
    return total


def laurent_consistency(sig: Sequence[int], t, z, order: int,
                        precision: int = 40, cutoff: Optional[int] = None) -> ConsistencyResult:
    """Compare the truncated psi series with the q-sum it expands, at q = e^z.

    ``t`` must be a positive rational (int, Fraction or decimal string) so that
    the series coefficients are exact; ``z`` must be negative.
    """
    sig = make_signature(sig)
    K, n = sum(sig), len(sig)
    if order < K + n:
        raise ValueError(f"order must be >= |k| + n = {K + n}")
    t_exact = Fraction(t) if not isinstance(t, float) else Fraction(str(t))
    if t_exact <= 0:
        raise ValueError("t must be positive")
    series = compute_psi(sig, order, Mode.LOGQ, t=t_exact)
    with mpmath.workdps(precision + 10):
        zz = _mp(z)
        if not zz < 0:
            raise ValueError("z must be negative so that q = e^z lies in (0, 1)")
        q = mpmath.exp(zz)
        tt = _mp(t_exact)
        ks = [-k for k in sig]
        # the q-sum is of size about |z|^-(K+n); aim well below the precision
        scale = abs(zz) ** (-(K + n))
        tol = scale * mpmath.mpf(10) ** (-(precision + 5))
        M = cutoff if cutoff is not None else auto_cutoff(ks, q, tt, tol)
        qs = qmzv_modified(ks, QEvalParams(q, tt, M, precision + 10))
        numeric = (-1) ** K * zz ** (-K) * qs.value
        symbolic = evaluate_series(series, zz)
        rel = abs(symbolic - numeric) / abs(numeric)
        return ConsistencyResult(symbolic, numeric, rel, abs(zz ** (-K)) * qs.tail_bound, M, series)
