"""Univariate polynomials and rational functions in ``t`` over Q.

Polynomials are stored fraction-free as tuples of Python ints, lowest degree
first, with no trailing zeros (``()`` is the zero polynomial).  A rational
function ``num/den`` is kept in canonical form:

* ``gcd(num, den) == 1`` in Q[t],
* the integer contents of ``num`` and ``den`` are coprime,
* the leading coefficient of ``den`` is positive,

so two rational functions are equal iff their ``(num, den)`` tuples are.
Rational scalars are rational functions with constant numerator and
denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from qmzv.errors import PoleAtT

Poly = tuple  # tuple[int, ...], lowest degree first

Scalar = Union[int, Fraction]


# --------------------------------------------------------------------------
# integer polynomial helpers
# --------------------------------------------------------------------------

def _trim(c) -> Poly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_scale(b, -1))


def poly_scale(a: Poly, s: int) -> Poly:
    if not s:
        return ()
    return tuple(s * x for x in a)


def _bias(n: int, nbytes: int) -> int:
    """Sum of 2^(8*nbytes - 1) placed in each of n slots of nbytes bytes."""
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * n, "little")


def _pack(a: Poly, nbytes: int) -> int:
    """sum a[i] 2^(8*nbytes*i), built from biased non-negative slots."""
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((x + half).to_bytes(nbytes, "little") for x in a)
    return int.from_bytes(raw, "little") - _bias(len(a), nbytes)


def _unpack(v: int, n: int, nbytes: int) -> Poly:
    """Inverse of _pack for n signed slots each smaller than 2^(8*nbytes-1) in size."""
    half = 1 << (8 * nbytes - 1)
    raw = (v + _bias(n, nbytes)).to_bytes(n * nbytes, "little")
    return tuple(int.from_bytes(raw[i:i + nbytes], "little") - half for i in range(0, n * nbytes, nbytes))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return poly_scale(b, a[0])
    if len(b) == 1:
        return poly_scale(a, b[0])
    if len(a) * len(b) < 400:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim(out)
    # Kronecker substitution: evaluate at 2^bits, multiply integers, read back
    ma = max(max(a), -min(a))
    mb = max(max(b), -min(b))
    nbytes = (ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 9) // 8
    n = len(a) + len(b) - 1
    return _trim(_unpack(_pack(a, nbytes) * _pack(b, nbytes), n, nbytes))


def poly_content(a: Poly) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def poly_primitive(a: Poly) -> Poly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    c = poly_content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        r = list(_trim(r))
    return tuple(r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd in Z[t] (equivalently, the gcd in Q[t] up to a unit)."""
    if not a:
        return poly_primitive(b)
    if not b:
        return poly_primitive(a)
    if len(a) == 1 or len(b) == 1:
        return (1,)
    a = poly_primitive(a)
    b = poly_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        r = _prem(a, b)
        a, b = b, poly_primitive(r)
    return a


def poly_exquo(a: Poly, b: Poly) -> Poly:
    """Exact quotient a / b in Z[t]; b must divide a with integral quotient."""
    if len(b) == 1:
        q = b[0]
        out = []
        for x in a:
            d, m = divmod(x, q)
            if m:
                raise ArithmeticError("inexact polynomial division")
            out.append(d)
        return tuple(out)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        c, m = divmod(lr, lb)
        if m:
            raise ArithmeticError("inexact polynomial division")
        shift = len(r) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] -= c * y
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def poly_eval(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_derivative(a: Poly) -> Poly:
    return _trim([i * c for i, c in enumerate(a)][1:])


def format_poly(a: Poly, var: str = "t") -> str:
    """Descending monomials with explicit signs, e.g. ``166t^2+166t+31``."""
    if not a:
        return "0"
    parts = []
    for deg in range(len(a) - 1, -1, -1):
        c = a[deg]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


_MONO = re.compile(r"([+-]?)(\d*)(?:(t)(?:\^(\d+))?)?")


def parse_poly(text: str, var: str = "t") -> Poly:
    """Inverse of :func:`format_poly` (whitespace is ignored)."""
    s = text.replace(" ", "").replace(var, "t")
    if s == "0":
        return ()
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _MONO.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign in polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) else 1
        deg = 0
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) else 1
        coeffs[deg] = coeffs.get(deg, 0) + sign * mag
        pos = m.end()
    top = max(coeffs)
    return _trim([coeffs.get(i, 0) for i in range(top + 1)])


# --------------------------------------------------------------------------
# primitive linear factors a + b*t  (gcd(a, b) = 1, b > 0)
# --------------------------------------------------------------------------

def _lin_divides(p: Poly, a: int, b: int) -> bool:
    """True iff a + b*t divides p, i.e. p(-a/b) = 0."""
    if not p:
        return True
    if a == 0:
        return p[0] == 0
    n = len(p) - 1
    acc = p[n]
    bpow = 1
    na = -a
    for k in range(n - 1, -1, -1):
        bpow *= b
        acc = acc * na + p[k] * bpow
    return acc == 0


def _lin_divide(p: Poly, a: int, b: int) -> Poly:
    """Exact quotient p / (a + b*t); integral by Gauss's lemma."""
    n = len(p) - 1
    q = [0] * n
    q[n - 1] = p[n] // b
    for k in range(n - 1, 0, -1):
        q[k - 1] = (p[k] - a * q[k]) // b
    return tuple(q)


def _lin_mul(p: Poly, a: int, b: int) -> Poly:
    if not p:
        return ()
    if not a:
        return (0,) + tuple(b * x for x in p)
    return tuple([a * p[0]] + [a * x + b * y for x, y in zip(p[1:], p)] + [b * p[-1]])


@lru_cache(maxsize=1 << 16)
def expand_factors(fac: tuple) -> Poly:
    """Expanded product of sorted ((a, b), m) linear factors a + b*t."""
    out: Poly = (1,)
    for (a, b), m in fac:
        for _ in range(m):
            out = _lin_mul(out, a, b)
    return out


def _split_linear(p: Poly, hints=()) -> tuple:
    """Factor a primitive, positive-leading p as (factors, rest).

    Linear factors are found among ``hints`` and, for small coefficients, by
    the rational root theorem; anything left over is returned as ``rest``.
    """
    fac: dict = {}

    def pull(f):
        nonlocal p
        while len(p) > 1 and _lin_divides(p, *f):
            p = _lin_divide(p, *f)
            fac[f] = fac.get(f, 0) + 1

    for f in hints:
        pull(f)
    pull((0, 1))
    if len(p) == 2:
        f = (p[0], p[1])
        fac[f] = fac.get(f, 0) + 1
        return fac, (1,)
    if len(p) > 2 and abs(p[0]) <= 10**8 and abs(p[-1]) <= 10**8:
        for num in _divisors(abs(p[0])):
            for den in _divisors(abs(p[-1])):
                if gcd(num, den) != 1:
                    continue
                for s in (1, -1):
                    pull((s * num, den))
                    if len(p) <= 2:
                        break
        if len(p) == 2:
            f = (p[0], p[1])
            fac[f] = fac.get(f, 0) + 1
            return fac, (1,)
    return fac, p


def _expand(dc: int, fac, rest: Poly) -> Poly:
    out: Poly = (dc,)
    for (a, b), m in fac:
        for _ in range(m):
            out = _lin_mul(out, a, b)
    if rest != (1,):
        out = poly_mul(out, rest)
    return out


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------

def _make(num: Poly, dc: int, fac, rest: Poly = (1,)) -> "RatFunc":
    """Build from a reduced fraction; normalises the integer content."""
    if not num:
        return RatFunc.ZERO
    g = gcd(poly_content(num), dc)
    if g != 1:
        num = tuple(x // g for x in num)
        dc //= g
    if isinstance(fac, dict):
        fac = tuple(sorted((f, m) for f, m in fac.items() if m))
    return RatFunc._raw(num, dc, fac, rest)


def _from_polys(num: Poly, den: Poly, hints=()) -> "RatFunc":
    """Reduce an arbitrary integer fraction num/den to canonical form."""
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RatFunc.ZERO
    if len(den) > 1 and len(num) > 1:
        g = poly_gcd(num, den)
        if len(g) > 1:
            num = poly_exquo(num, g)
            den = poly_exquo(den, g)
    c = poly_content(den)
    if den[-1] < 0:
        c = -c
    prim = tuple(x // c for x in den)
    if c < 0:
        num = tuple(-x for x in num)
        c = -c
    fac, rest = _split_linear(prim, hints)
    return _make(num, c, fac, rest)


def _to_int_poly(coeffs) -> tuple:
    """(integer poly, common denominator) for a sequence of ints/Fractions."""
    coeffs = [Fraction(c) for c in coeffs]
    m = 1
    for c in coeffs:
        m = m * c.denominator // gcd(m, c.denominator)
    return _trim([int(c * m) for c in coeffs]), m


class RatFunc:
    """Canonical element of Q(t).  Immutable and hashable.

    The canonical form is ``num/den`` with integer polynomials, gcd 1 in Q[t],
    coprime integer contents and a positive leading coefficient in ``den``.
    Internally the denominator is kept factored as
    ``dc * prod (a + b t)^m * rest`` so sums and products of the functions
    arising here (denominators built from linear forms) never need a
    polynomial gcd.
    """

    __slots__ = ("num", "dc", "fac", "rest", "_den", "_hash")

    ZERO: "RatFunc"
    ONE: "RatFunc"
    T: "RatFunc"

    def __new__(cls, num=(), den=(1,)):
        if isinstance(num, (int, Fraction)):
            num = (num,)
        if isinstance(den, (int, Fraction)):
            den = (den,)
        n, mn = _to_int_poly(num)
        d, md = _to_int_poly(den)
        # (n/mn)/(d/md) = (n*md)/(d*mn)
        return _from_polys(poly_scale(n, md), poly_scale(d, mn))

    @classmethod
    def _raw(cls, num: Poly, dc: int, fac: tuple = (), rest: Poly = (1,)) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.dc = dc
        obj.fac = fac
        obj.rest = rest
        obj._den = None
        obj._hash = None
        return obj

    @classmethod
    def from_scalar(cls, x: Scalar) -> "RatFunc":
        x = Fraction(x)
        if not x:
            return cls.ZERO
        return cls._raw((x.numerator,), x.denominator)

    @classmethod
    def linear(cls, a: int, b: int) -> "RatFunc":
        """The polynomial ``a + b*t`` with integer coefficients."""
        if not (a or b):
            return cls.ZERO
        return _make(_trim([a, b]), 1, ())

    @property
    def den(self) -> Poly:
        if self._den is None:
            self._den = _expand(self.dc, self.fac, self.rest)
        return self._den

    def den_factors(self) -> tuple:
        """(integer content, ((a, b), multiplicity) linear factors, remaining factor)."""
        return self.dc, self.fac, self.rest

    # -- predicates ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return not self.fac and self.rest == (1,)

    def is_constant(self) -> bool:
        return self.is_polynomial() and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[0], self.dc)

    def _generic(self) -> bool:
        return self.rest != (1,)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        if self._generic() or o._generic():
            return _from_polys(
                poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
                poly_mul(self.den, o.den),
                hints=[f for f, _ in self.fac + o.fac],
            )
        dx, dy = self.dc, o.dc
        dl = dx * dy // gcd(dx, dy)
        nx = poly_scale(self.num, dl // dx) if dl != dx else self.num
        ny = poly_scale(o.num, dl // dy) if dl != dy else o.num
        if self.fac == o.fac:
            fac = dict(self.fac)
            common = list(fac)
        else:
            fx, fy = dict(self.fac), dict(o.fac)
            fac = dict(fx)
            for f, m in fy.items():
                if m > fac.get(f, 0):
                    fac[f] = m
            common = []
            for f, m in fac.items():
                mx, my = fx.get(f, 0), fy.get(f, 0)
                for _ in range(m - mx):
                    nx = _lin_mul(nx, *f)
                for _ in range(m - my):
                    ny = _lin_mul(ny, *f)
                if mx == my:
                    common.append(f)
        n = poly_add(nx, ny)
        if not n:
            return RatFunc.ZERO
        # a factor with unequal multiplicities in the two denominators cannot cancel
        for f in common:
            m = fac[f]
            while m and len(n) > 1 and _lin_divides(n, *f):
                n = _lin_divide(n, *f)
                m -= 1
            fac[f] = m
        return _make(n, dl, fac)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        if not self.num:
            return self
        return RatFunc._raw(tuple(-x for x in self.num), self.dc, self.fac, self.rest)

    def __pos__(self) -> "RatFunc":
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other or not self.num:
                return RatFunc.ZERO
            return _make(poly_scale(self.num, other), self.dc, self.fac, self.rest)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, c = self.num, o.num
        if not a or not c:
            return RatFunc.ZERO
        if self._generic() or o._generic():
            return _from_polys(poly_mul(a, c), poly_mul(self.den, o.den),
                               hints=[f for f, _ in self.fac + o.fac])
        fb, fd = dict(self.fac), dict(o.fac)
        if len(a) > 1:
            for f, m in fd.items():
                while m and len(a) > 1 and _lin_divides(a, *f):
                    a = _lin_divide(a, *f)
                    m -= 1
                fd[f] = m
        if len(c) > 1:
            for f, m in fb.items():
                while m and len(c) > 1 and _lin_divides(c, *f):
                    c = _lin_divide(c, *f)
                    m -= 1
                fb[f] = m
        for f, m in fd.items():
            fb[f] = fb.get(f, 0) + m
        return _make(poly_mul(a, c), self.dc * o.dc, fb)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return _from_polys(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFunc.ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.num != o.num:
            return False
        if self.dc == o.dc and self.fac == o.fac and self.rest == o.rest:
            return True
        return self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __reduce__(self):
        return (RatFunc, (self.num, self.den))

    # -- evaluation / display --------------------------------------------

    def __call__(self, t0):
        return self.evaluate(t0)

    def evaluate(self, t0):
        """Evaluate at ``t0``; exact for int/Fraction input.

        Raises :class:`PoleAtT` when the denominator vanishes at ``t0``.
        """
        if isinstance(t0, int):
            t0 = Fraction(t0)
        d = self.dc * poly_eval(self.rest, t0)
        for (a, b), m in self.fac:
            d = d * (a + b * t0) ** m
        if d == 0:
            raise PoleAtT(f"denominator {format_poly(self.den)} vanishes at t = {t0}")
        return poly_eval(self.num, t0) / d

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.is_constant():
            return str(self.constant_value())
        n = format_poly(self.num)
        if self.den == (1,):
            return n
        return f"({n})/({format_poly(self.den)})"

    def format_factored(self) -> str:
        """Denominator shown factored, e.g. ``(166t^2+166t+31)/(8064(4t+1)(4t+3))``."""
        if self.is_polynomial():
            return str(self)
        parts = [] if self.dc == 1 else [str(self.dc)]
        for f, m in self.fac:
            lin = f"({format_poly(f)})"
            parts.append(lin if m == 1 else f"{lin}^{m}")
        if self.rest != (1,):
            parts.append(f"({format_poly(self.rest)})")
        return f"({format_poly(self.num)})/{''.join(parts)}"


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_scalar(x)
    return None


RatFunc.ZERO = RatFunc._raw((), 1)
RatFunc.ONE = RatFunc._raw((1,), 1)
RatFunc.T = RatFunc._raw((0, 1), 1)


def _combine(terms: list) -> RatFunc:
    """Sum of unreduced fractions (num, dc, fac-dict), reduced once at the end."""
    # merge terms with identical denominators first
    groups: dict = {}
    for num, dc, fac in terms:
        key = tuple(sorted(fac.items()))
        g = groups.get(key)
        if g is None:
            groups[key] = [num, dc, fac]
        elif g[1] == dc:
            g[0] = poly_add(g[0], num)
        else:
            dl = g[1] * dc // gcd(g[1], dc)
            g[0] = poly_add(poly_scale(g[0], dl // g[1]), poly_scale(num, dl // dc))
            g[1] = dl
    dl = 1
    lfac: dict = {}
    for _, dc, fac in groups.values():
        dl = dl * dc // gcd(dl, dc)
        for f, m in fac.items():
            if m > lfac.get(f, 0):
                lfac[f] = m
    total: Poly = ()
    for num, dc, fac in groups.values():
        if not num:
            continue
        if dc != dl:
            num = poly_scale(num, dl // dc)
        missing = tuple((f, m - fac.get(f, 0)) for f, m in sorted(lfac.items()) if m > fac.get(f, 0))
        if missing:
            num = poly_mul(num, expand_factors(missing))
        total = poly_add(total, num)
    if not total:
        return RatFunc.ZERO
    for f, m in lfac.items():
        while m and len(total) > 1 and _lin_divides(total, *f):
            total = _lin_divide(total, *f)
            m -= 1
        lfac[f] = m
    return _make(total, dl, lfac)


def ratfunc_from_factored(num: Poly, dc: int, fac: dict) -> RatFunc:
    """Reduce num / (dc * prod (a + b t)^m) to canonical form."""
    num = _trim(list(num))
    if not num:
        return RatFunc.ZERO
    fac = dict(fac)
    for f, m in fac.items():
        while m and len(num) > 1 and _lin_divides(num, *f):
            num = _lin_divide(num, *f)
            m -= 1
        fac[f] = m
    return _make(num, dc, fac)


def ratfunc_dot(pairs) -> RatFunc:
    """sum of x*y over the pairs, with a single reduction at the end."""
    terms = []
    extra = RatFunc.ZERO
    for x, y in pairs:
        x, y = _coerce(x), _coerce(y)
        if not x.num or not y.num:
            continue
        if x._generic() or y._generic():
            extra = extra + x * y
            continue
        fac = dict(x.fac)
        for f, m in y.fac:
            fac[f] = fac.get(f, 0) + m
        terms.append((poly_mul(x.num, y.num), x.dc * y.dc, fac))
    if not terms:
        return extra
    out = _combine(terms)
    return out + extra if extra.num else out


def ratfunc_sum(items) -> RatFunc:
    """sum of the items, with a single reduction at the end."""
    terms = []
    extra = RatFunc.ZERO
    for x in items:
        x = _coerce(x)
        if not x.num:
            continue
        if x._generic():
            extra = extra + x
            continue
        terms.append((x.num, x.dc, dict(x.fac)))
    if not terms:
        return extra
    if len(terms) == 1 and not extra.num:
        return _make(terms[0][0], terms[0][1], terms[0][2])
    out = _combine(terms)
    return out + extra if extra.num else out


def ratfunc_add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def ratfunc_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def ratfunc_neg(a: RatFunc) -> RatFunc:
    return -a


def ratfunc_eval(f: RatFunc, t0) -> Fraction:
    return f.evaluate(t0)


def real_roots_rational(p: Poly) -> list[Fraction]:
    """All rational roots of an integer polynomial (rational root theorem)."""
    p = _trim(list(p))
    roots: list[Fraction] = []
    if len(p) <= 1:
        return roots
    # strip the root at 0
    while p and p[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return roots
    lead, const = abs(p[-1]), abs(p[0])
    if lead < 10 ** 8 and const < 10 ** 8:
        candidates = [Fraction(s * num, den) for num in _divisors(const) for den in _divisors(lead) for s in (1, -1)]
    else:
        candidates = _root_candidates(p)
    for r in candidates:
        if r not in roots and poly_eval(p, r) == 0:
            roots.append(r)
    return sorted(roots)


def _root_candidates(p: Poly) -> list[Fraction]:
    """Rationals near the real roots of p, close enough to catch every rational root.

    A rational root u/v in lowest terms has v | lead, and two distinct such
    fractions differ by at least 1/lead^2, so a numerical root within
    1/(2 lead^2) rounds to it under limit_denominator(lead).
    """
    import mpmath

    lead = abs(p[-1])
    digits = 2 * len(str(lead)) + 20
    with mpmath.workdps(digits):
        found = mpmath.polyroots(list(reversed(p)), maxsteps=400, extraprec=4 * digits, error=False)
        out = []
        for x in found:
            if abs(mpmath.im(x)) > mpmath.mpf(10) ** (-digits // 2):
                continue
            out.append(Fraction(mpmath.nstr(mpmath.re(x), digits)).limit_denominator(lead))
    return out


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out
