"""Pseudoperiod checking and enumeration.

A tuple of offsets (p1 < p2 < ... < pk) is a pseudoperiod of a word w when
every symbol at a position i with 0 <= i < |w| - pk reappears at one of the
offsets: w[i] in {w[i + p] : p in the tuple}.  Positions within pk of the end
carry no constraint, so short words satisfy every tuple vacuously.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .words import Word, Run, runs

__all__ = [
    "PpTuple",
    "parse_tuple",
    "format_tuple",
    "is_pseudoperiod",
    "is_pseudoperiod_by_factors",
    "first_violation",
    "PrefixScanner",
    "enumerate_pseudoperiods",
    "min_pseudoperiod_size",
    "max_gap",
    "run_length_tuple",
    "matches_pp12_form",
]


class PpTuple(tuple):
    """A strictly increasing tuple of positive offsets."""

    def __new__(cls, entries):
        t = tuple(int(p) for p in entries)
        if not t:
            raise ValueError("a pseudoperiod tuple needs at least one entry")
        if t[0] < 1:
            raise ValueError(f"offsets must be positive, got {t[0]}")
        if any(a >= b for a, b in zip(t, t[1:])):
            raise ValueError(f"offsets must be strictly increasing: {t}")
        return super().__new__(cls, t)

    @property
    def size(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return format_tuple(self)

    def __repr__(self) -> str:
        return f"PpTuple({format_tuple(self)})"


def parse_tuple(text: str) -> PpTuple:
    """Parse ``"(1,8,9)"`` (parentheses optional) into a PpTuple."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not re.fullmatch(r"\s*\d+\s*(,\s*\d+\s*)*", body):
        raise ValueError(f"cannot parse tuple {text!r}")
    return PpTuple(int(tok) for tok in body.split(","))


def format_tuple(t) -> str:
    return "(" + ",".join(str(p) for p in t) + ")"


class PrefixScanner:
    """Caches per-offset match arrays for one word so that many tuples can be
    checked against it cheaply.

    For offset p the cached array holds w[i] == w[i+p] for every i; a tuple is
    consistent when the entrywise OR over its offsets is all true on the
    constrained range.
    """

    def __init__(self, w: Word):
        self.word = w
        self._arr = w.symbols
        self._eq: dict[int, np.ndarray] = {}

    def _match(self, p: int) -> np.ndarray:
        eq = self._eq.get(p)
        if eq is None:
            a = self._arr
            eq = a[:-p] == a[p:] if p < a.size else np.zeros(0, dtype=bool)
            self._eq[p] = eq
        return eq

    def first_violation(self, t) -> int | None:
        t = t if isinstance(t, PpTuple) else PpTuple(t)
        limit = len(self.word) - t[-1]
        if limit <= 0:
            return None
        ok = self._match(t[0])[:limit].copy()
        for p in t[1:]:
            np.logical_or(ok, self._match(p)[:limit], out=ok)
        if ok.all():
            return None
        return int(np.argmin(ok))

    def is_consistent(self, t) -> bool:
        return self.first_violation(t) is None


def first_violation(w: Word, t) -> int | None:
    """Smallest index i < |w| - max(t) where w[i] differs from all of
    w[i + p], or None when no constrained position fails."""
    return PrefixScanner(w).first_violation(t)


def is_pseudoperiod(w: Word, t) -> bool:
    """True when t is a pseudoperiod of w (vacuously so if |w| <= max(t))."""
    return first_violation(w, t) is None


def is_pseudoperiod_by_factors(w: Word, t) -> bool:
    """Equivalent check through the sliding window: every factor of length
    max(t) + 1 must satisfy the membership at its first position.  Useful when
    the distinct factors are few and as an independent second opinion."""
    t = t if isinstance(t, PpTuple) else PpTuple(t)
    window = t[-1] + 1
    seen: set[bytes] = set()
    a = w.symbols
    for i in range(len(w) - window + 1):
        f = a[i : i + window]
        key = f.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if not any(f[0] == f[p] for p in t):
            return False
    return True


def enumerate_pseudoperiods(
    w: Word, size: int, bound: int, threads: int = 1
) -> list[PpTuple]:
    """All strictly increasing size-``size`` tuples with entries in
    [1, bound] that are pseudoperiods of w, in lexicographic order."""
    if size < 1:
        raise ValueError("tuple size must be at least 1")
    if bound < size:
        raise ValueError(f"bound {bound} cannot host {size} distinct offsets")
    scanner = PrefixScanner(w)

    def tuples_starting(first: int) -> list[PpTuple]:
        out = []
        rest = range(first + 1, bound + 1)
        for tail in itertools.combinations(rest, size - 1):
            t = PpTuple((first,) + tail)
            if scanner.is_consistent(t):
                out.append(t)
        return out

    firsts = range(1, bound - size + 2)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(tuples_starting, firsts))
    else:
        chunks = [tuples_starting(f) for f in firsts]
    return [t for chunk in chunks for t in chunk]


def min_pseudoperiod_size(w: Word, bound: int) -> int | None:
    """Smallest k such that some strictly increasing k-tuple within
    [1, bound] is a pseudoperiod of w; None when no size up to bound works."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    scanner = PrefixScanner(w)
    # monotonicity: adding offsets never breaks a pseudoperiod, so if the full
    # tuple (1..bound) fails there is no point trying subsets
    if not scanner.is_consistent(PpTuple(range(1, bound + 1))):
        return None
    for k in range(1, bound + 1):
        for combo in itertools.combinations(range(1, bound + 1), k):
            if scanner.is_consistent(PpTuple(combo)):
                return k
    return None


def max_gap(w: Word) -> int:
    """Largest distance between consecutive occurrences of the same letter,
    over letters that occur at least twice."""
    if len(w) < 2:
        raise ValueError("max_gap needs a word of length at least 2")
    a = w.symbols
    best = 0
    for s in np.unique(a):
        pos = np.flatnonzero(a == s)
        if pos.size >= 2:
            best = max(best, int(np.diff(pos).max()))
    if best == 0:
        raise ValueError("no letter occurs twice")
    return best


def run_length_tuple(w: Word) -> PpTuple:
    """For a binary word with at least two runs: (1, 2, ..., B+1) where B is
    the longest run length ignoring the initial run.  Always a pseudoperiod
    of w."""
    if w.alphabet_size > 2 or (len(w) and int(w.symbols.max()) > 1):
        raise ValueError("run_length_tuple expects a binary word")
    rr = runs(w)
    if len(rr) < 2:
        raise ValueError("need at least two runs")
    longest = max(r.length for r in rr[1:])
    return PpTuple(range(1, longest + 2))


def matches_pp12_form(w: Word) -> bool:
    """True when w has the shape a^*(ab)^*(a or nothing) for two distinct
    letters a and b, or is empty or over a single letter.

    These are exactly the finite words admitting (1,2) as a pseudoperiod.
    """
    n = len(w)
    if n <= 1:
        return True
    a = w.symbols
    first = a[0]
    if bool(np.all(a == first)):
        return True
    # the word is a-run then b, then a strict b/a alternation of any parity
    run_end = int(np.argmax(a != first))
    b = a[run_end]
    tail = a[run_end:]
    expect = np.where(np.arange(tail.size) % 2 == 0, b, first)
    return bool(np.all(tail == expect))
