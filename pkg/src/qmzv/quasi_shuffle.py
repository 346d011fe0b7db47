"""The quasi-shuffle Hopf algebra on words in letters y_n (n a nonzero integer).

A word is a tuple of nonzero ints, ``(-1, -3)`` standing for y_{-1} y_{-3};
the empty tuple is the unit word.  Linear combinations are :class:`WordSum`
(word -> Fraction) and :class:`TensorSum` ((word, word) -> Fraction).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from qmzv.errors import EmptyWord, ZeroIndexLetter

Word = tuple  # tuple[int, ...]
EMPTY: Word = ()


def make_word(letters: Iterable[int]) -> Word:
    w = tuple(int(x) for x in letters)
    if any(x == 0 for x in w):
        raise ZeroIndexLetter("the letter y_0 is not allowed")
    return w


def word_key(w: Word):
    """Canonical term order: by length, then index sequence."""
    return (len(w), w)


def weight(w: Word) -> int:
    return sum(abs(x) for x in w)


def depth(w: Word) -> int:
    return len(w)


def format_word(w: Word) -> str:
    """``(-1, -3)`` -> ``"y-1.y-3"``; the empty word is ``"e"``."""
    if not w:
        return "e"
    return ".".join(f"y{x}" for x in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("e", ""):
        return EMPTY
    letters = []
    for part in text.split("."):
        part = part.strip()
        if not part.startswith("y"):
            raise ValueError(f"bad letter {part!r} in word {text!r}")
        try:
            letters.append(int(part[1:]))
        except ValueError:
            raise ValueError(f"bad letter {part!r} in word {text!r}") from None
    return make_word(letters)


def words_of_weight(w: int, sign: int = -1) -> Iterator[Word]:
    """All sign-homogeneous words of the given weight (compositions of w)."""
    if w == 0:
        yield EMPTY
        return
    for first in range(1, w + 1):
        for rest in words_of_weight(w - first, sign):
            yield (sign * first,) + rest


def words_up_to_weight(w: int, sign: int = -1) -> Iterator[Word]:
    for k in range(1, w + 1):
        yield from words_of_weight(k, sign)


# --------------------------------------------------------------------------
# linear combinations
# --------------------------------------------------------------------------

Coeff = Union[int, Fraction]


class WordSum:
    """Finite Q-linear combination of words; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Word, Coeff], Iterable[tuple]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict = {}
        for w, c in terms:
            w = tuple(w)
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: Fraction(c) for w, c in sorted(acc.items(), key=lambda kv: word_key(kv[0])) if c}

    @classmethod
    def word(cls, w: Word, c: Coeff = 1) -> "WordSum":
        return cls({tuple(w): c})

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, WordSum):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "WordSum") -> "WordSum":
        return WordSum(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "WordSum":
        return WordSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "WordSum") -> "WordSum":
        return self + (-other)

    def scale(self, s: Coeff) -> "WordSum":
        return WordSum({w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        """Quasi-shuffle product, or scalar multiple."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        acc: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                for w, c in quasi_shuffle(u, v).items():
                    acc[w] = acc.get(w, 0) + a * b * c
        return WordSum(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            parts.append(f"{c}*{format_word(w)}" if c != 1 else format_word(w))
        return " + ".join(parts)


class TensorSum:
    """Finite Q-linear combination of tensors u (x) v of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[tuple, Coeff], Iterable[tuple]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict = {}
        for (u, v), c in terms:
            key = (tuple(u), tuple(v))
            acc[key] = acc.get(key, 0) + c
        self.terms = {
            k: Fraction(c)
            for k, c in sorted(acc.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))
            if c
        }

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorSum):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other: "TensorSum") -> "TensorSum":
        return TensorSum(list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other: "TensorSum") -> "TensorSum":
        """Componentwise quasi-shuffle: (a(x)b)(c(x)d) = (a*c)(x)(b*d)."""
        acc: dict = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                left = quasi_shuffle(a, c)
                right = quasi_shuffle(b, d)
                for u, p in left.items():
                    for v, q in right.items():
                        acc[(u, v)] = acc.get((u, v), 0) + x * y * p * q
        return TensorSum(acc)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            (f"{c}*" if c != 1 else "") + f"{format_word(u)} (x) {format_word(v)}"
            for (u, v), c in self.terms.items()
        )


# --------------------------------------------------------------------------
# product, coproduct, antipode
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _qsh(u: Word, v: Word) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    n, m = u[0], v[0]
    if n + m == 0:
        raise ZeroIndexLetter(f"quasi-shuffle would merge y{n} and y{m} into y0")
    acc: dict = {}
    for w, c in _qsh(u[1:], v):
        key = (n,) + w
        acc[key] = acc.get(key, 0) + c
    for w, c in _qsh(u, v[1:]):
        key = (m,) + w
        acc[key] = acc.get(key, 0) + c
    for w, c in _qsh(u[1:], v[1:]):
        key = (n + m,) + w
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def quasi_shuffle(u: Word, v: Word) -> WordSum:
    """u * v for words, by the recursive rule
    y_n u * y_m v = y_n (u * y_m v) + y_m (y_n u * v) + y_{n+m} (u * v).
    """
    return WordSum(_qsh(tuple(u), tuple(v)))


def coproduct(w: Word) -> TensorSum:
    """Deconcatenation: sum of u (x) v over all splittings uv = w."""
    w = tuple(w)
    return TensorSum(((w[:i], w[i:]), 1) for i in range(len(w) + 1))


def reduced_coproduct(w: Word) -> TensorSum:
    w = tuple(w)
    if not w:
        raise EmptyWord("reduced coproduct of the empty word")
    return TensorSum(((w[:i], w[i:]), 1) for i in range(1, len(w)))


def coproduct_sum(x: WordSum) -> TensorSum:
    acc: dict = {}
    for w, c in x.items():
        for k, d in coproduct(w).items():
            acc[k] = acc.get(k, 0) + c * d
    return TensorSum(acc)


@lru_cache(maxsize=None)
def _antipode(w: Word) -> tuple:
    if not w:
        return ((EMPTY, 1),)
    acc: dict = {w: -1}
    for i in range(1, len(w)):
        for s, c in _antipode(w[:i]):
            for x, d in _qsh(s, w[i:]):
                acc[x] = acc.get(x, 0) - c * d
    return tuple((x, c) for x, c in acc.items() if c)


def antipode(w: Word) -> WordSum:
    """S(e) = e, S(w) = -w - sum over proper splittings of S(w') * w''."""
    return WordSum(_antipode(tuple(w)))


def antipode_sum(x: WordSum) -> WordSum:
    acc: dict = {}
    for w, c in x.items():
        for s, d in antipode(w).items():
            acc[s] = acc.get(s, 0) + c * d
    return WordSum(acc)
