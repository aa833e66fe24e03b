"""Finite words over small integer alphabets.

A word is a fixed sequence of symbols drawn from {0, ..., m-1}.  This module
provides the basic combinatorial vocabulary used everywhere else: periods,
exponents (as exact rationals with an optional "plus" marker), fractional
powers, and maximal runs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Word",
    "Exponent",
    "Run",
    "periods",
    "exponent",
    "fractional_power",
    "runs",
    "parse_word",
    "format_word",
    "parse_exponent",
]


class Word:
    """An immutable finite word over the alphabet {0, ..., alphabet_size-1}.

    Symbols are stored as a read-only numpy uint8 array, so alphabets are
    limited to at most 256 letters (far more than anything here needs).
    An optional ``letters`` string maps symbol indices back to display
    characters for words that were ingested from letter text.
    """

    __slots__ = ("symbols", "alphabet_size", "letters")

    def __init__(
        self,
        symbols: Iterable[int] | np.ndarray | str,
        alphabet_size: int | None = None,
        letters: str | None = None,
    ):
        if isinstance(symbols, str):
            arr = np.frombuffer(symbols.encode("ascii"), dtype=np.uint8) - ord("0")
        else:
            arr = np.asarray(symbols, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("a word must be a one-dimensional symbol sequence")
        arr = arr.copy()
        arr.setflags(write=False)
        top = int(arr.max()) + 1 if arr.size else 1
        if alphabet_size is None:
            alphabet_size = top
        elif alphabet_size < top:
            raise ValueError(
                f"alphabet size {alphabet_size} too small for symbol {top - 1}"
            )
        if alphabet_size < 1:
            raise ValueError("alphabet size must be at least 1")
        object.__setattr__(self, "symbols", arr)
        object.__setattr__(self, "alphabet_size", int(alphabet_size))
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_letters(cls, text: str) -> "Word":
        """Code a string of arbitrary characters, first occurrence first.

        >>> Word.from_letters("entente").symbols.tolist()
        [0, 1, 2, 0, 1, 2, 0]
        """
        seen: dict[str, int] = {}
        coded = []
        for ch in text:
            if ch not in seen:
                seen[ch] = len(seen)
            coded.append(seen[ch])
        return cls(coded, alphabet_size=max(1, len(seen)), letters="".join(seen))

    def __len__(self) -> int:
        return int(self.symbols.size)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols.tolist())

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.symbols[i], self.alphabet_size, self.letters)
        return int(self.symbols[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (
            self.symbols.shape == other.symbols.shape
            and bool(np.all(self.symbols == other.symbols))
        )

    def __hash__(self) -> int:
        return hash(self.symbols.tobytes())

    def __repr__(self) -> str:
        text = format_word(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"Word({text!r}, alphabet_size={self.alphabet_size})"

    def __str__(self) -> str:
        return format_word(self)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(
            np.concatenate([self.symbols, other.symbols]),
            max(self.alphabet_size, other.alphabet_size),
            self.letters,
        )


@dataclass(frozen=True)
class Run:
    """A maximal block of equal symbols: ``symbol`` repeated ``length`` times
    starting at index ``start``."""

    symbol: int
    start: int
    length: int


class Exponent:
    """An exact rational exponent with an optional strictness marker.

    ``Exponent(7, 3)`` is the value 7/3; ``Exponent(7, 3, plus=True)`` is
    written ``7/3+`` and sits strictly between 7/3 and every larger rational.
    Avoiding powers "at least 7/3+" therefore means avoiding everything with
    exponent strictly above 7/3.
    """

    __slots__ = ("num", "den", "plus")

    def __init__(self, num: int, den: int = 1, plus: bool = False):
        if den == 0:
            raise ZeroDivisionError("exponent denominator is zero")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)
        object.__setattr__(self, "plus", bool(plus))

    def __setattr__(self, name, value):
        raise AttributeError("Exponent is immutable")

    @classmethod
    def from_fraction(cls, f: Fraction, plus: bool = False) -> "Exponent":
        return cls(f.numerator, f.denominator, plus)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def with_plus(self, plus: bool = True) -> "Exponent":
        return Exponent(self.num, self.den, plus)

    # total order: compare the rational parts by cross multiplication and use
    # the plus flag only to break exact ties
    def _cmp(self, other: "Exponent") -> int:
        lhs = self.num * other.den
        rhs = other.num * self.den
        if lhs != rhs:
            return -1 if lhs < rhs else 1
        if self.plus == other.plus:
            return 0
        return 1 if self.plus else -1

    def _coerce(self, other) -> "Exponent | None":
        if isinstance(other, Exponent):
            return other
        if isinstance(other, int):
            return Exponent(other)
        if isinstance(other, Fraction):
            return Exponent(other.numerator, other.denominator)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) == 0

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) >= 0

    def __hash__(self) -> int:
        return hash((self.num, self.den, self.plus))

    def __repr__(self) -> str:
        return f"Exponent({self})"

    def __str__(self) -> str:
        body = str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        return body + ("+" if self.plus else "")


_EXP_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*(\+)?\s*$")


def parse_exponent(text: str) -> Exponent:
    """Parse ``"3"``, ``"7/3"`` or ``"7/3+"`` into an Exponent."""
    m = _EXP_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse exponent {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Exponent(num, den, plus=m.group(3) is not None)


def parse_word(text: str, fmt: str = "auto") -> Word:
    """Parse word text.

    Two formats are supported: one character per symbol (``"0110"``, digits
    only) and whitespace separated integers (``"0 1 1 0"``).  With
    ``fmt="auto"`` the presence of whitespace selects the integer format.
    """
    if fmt not in ("auto", "digits", "ints"):
        raise ValueError(f"unknown word format {fmt!r}")
    text = text.strip()
    if fmt == "auto":
        fmt = "ints" if any(c.isspace() for c in text) else "digits"
    if fmt == "ints":
        try:
            symbols = [int(tok) for tok in text.split()]
        except ValueError as e:
            raise ValueError(f"bad integer word text {text!r}") from e
        if any(s < 0 for s in symbols):
            raise ValueError("word symbols must be nonnegative")
        return Word(symbols)
    if not text:
        return Word([])
    if not text.isdigit():
        raise ValueError(f"digit-format word may contain only digits: {text!r}")
    return Word([int(c) for c in text])


def format_word(w: Word, fmt: str = "auto") -> str:
    """Inverse of parse_word.  Words over alphabets beyond 10 letters fall
    back to the whitespace separated integer format."""
    if fmt not in ("auto", "digits", "ints"):
        raise ValueError(f"unknown word format {fmt!r}")
    if w.letters is not None and fmt == "auto":
        return "".join(w.letters[s] for s in w.symbols.tolist())
    if fmt == "auto":
        fmt = "digits" if w.alphabet_size <= 10 else "ints"
    if fmt == "digits":
        if w.alphabet_size > 10:
            raise ValueError("digit format needs an alphabet of at most 10")
        return "".join(str(s) for s in w.symbols.tolist())
    return " ".join(str(s) for s in w.symbols.tolist())


def periods(w: Word) -> set[int]:
    """All periods of a nonempty word.

    p is a period of w when w[i] == w[i+p] for every i < |w| - p; the length
    |w| itself is always a period.

    >>> sorted(periods(Word.from_letters("abcab")))
    [3, 5]
    """
    if len(w) == 0:
        raise ValueError("the empty word has no periods")
    a = w.symbols
    found = {len(w)}
    for p in range(1, len(w)):
        if bool(np.all(a[:-p] == a[p:])):
            found.add(p)
    return found


def exponent(w: Word) -> Exponent:
    """|w| divided by the smallest period of w, in lowest terms.

    >>> str(exponent(Word.from_letters("entente")))
    '7/3'
    """
    if len(w) == 0:
        raise ValueError("the empty word has no exponent")
    return Exponent(len(w), min(periods(w)))


def fractional_power(x: Word, num: int, den: int = 1) -> Word:
    """The prefix of x^infinity of length |x| * num / den.

    Requires num/den >= 1 and den dividing |x| * num evenly so the result
    length is an integer.

    >>> str(fractional_power(parse_word("012"), 7, 3))
    '0120120'
    """
    if len(x) == 0:
        raise ValueError("cannot take powers of the empty word")
    if num < den or den <= 0:
        raise ValueError("fractional power needs an exponent of at least 1")
    total = len(x) * num
    if total % den != 0:
        raise ValueError(
            f"exponent {num}/{den} does not give a whole length for |x|={len(x)}"
        )
    n = total // den
    reps = -(-n // len(x))
    return Word(np.tile(x.symbols, reps)[:n], x.alphabet_size, x.letters)


def runs(w: Word) -> list[Run]:
    """Maximal runs of equal symbols, left to right.

    >>> [r.length for r in runs(parse_word("0110100"))]
    [1, 2, 1, 1, 2]
    """
    if len(w) == 0:
        return []
    a = w.symbols
    boundaries = np.flatnonzero(a[1:] != a[:-1]) + 1
    starts = np.concatenate([[0], boundaries])
    ends = np.concatenate([boundaries, [len(w)]])
    return [
        Run(int(a[s]), int(s), int(e - s)) for s, e in zip(starts.tolist(), ends.tolist())
    ]
