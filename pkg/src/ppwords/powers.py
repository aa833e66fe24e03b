"""Fractional power detection and critical exponents.

The exponent of a finite word is its length divided by its smallest period;
a word is e-free when no factor has exponent at least e, and e+-free when no
factor has exponent strictly above e.  The detector below scans periods and
match runs with numpy, which is comfortably fast at the word lengths this
package works with (up to a few times 10^4).
"""

from __future__ import annotations

import numpy as np

from .words import Exponent, Word

__all__ = [
    "PowerWitness",
    "contains_power_at_least",
    "is_e_free",
    "is_e_plus_free",
    "critical_exponent",
]


from dataclasses import dataclass


@dataclass(frozen=True)
class PowerWitness:
    """A factor w[start : start + length] whose repetition certificate is
    w[i] == w[i + period] across the factor; its exponent is at least
    length / period."""

    start: int
    length: int
    period: int


def _coerce_exponent(e) -> Exponent:
    if isinstance(e, Exponent):
        return e
    if isinstance(e, int):
        return Exponent(e)
    raise TypeError(f"expected an Exponent, got {type(e).__name__}")


def _true_runs(eq: np.ndarray):
    """Starts and lengths of maximal runs of True."""
    d = np.diff(np.concatenate((np.zeros(1, np.int8), eq.view(np.int8), np.zeros(1, np.int8))))
    starts = np.flatnonzero(d == 1)
    lengths = np.flatnonzero(d == -1) - starts
    return starts, lengths


def contains_power_at_least(w: Word, e) -> PowerWitness | None:
    """Leftmost-then-shortest factor with exponent >= e (or > e when e
    carries the plus marker); None when w is e-free (resp. e+-free).
    """
    e = _coerce_exponent(e)
    if e.num < e.den:
        raise ValueError(f"threshold exponent must be at least 1, got {e}")
    L = len(w)
    if L == 0:
        return None
    if e.num == e.den and not e.plus:
        # every single letter has exponent exactly 1
        return PowerWitness(0, 1, 1)
    a = w.symbols
    best: tuple[int, int, int] | None = None
    n = 1
    while True:
        # smallest factor length that reaches the threshold at period n
        if e.plus:
            l_min = (n * e.num) // e.den + 1
        else:
            l_min = -((-n * e.num) // e.den)
        if l_min > L:
            break
        m_min = l_min - n  # required run of matches w[i] == w[i+n]
        eq = a[: L - n] == a[n:]
        starts, lengths = _true_runs(eq)
        qual = np.flatnonzero(lengths >= m_min)
        if qual.size:
            cand = (int(starts[qual[0]]), l_min, n)
            if best is None or cand < best:
                best = cand
            if best[0] == 0:
                # later periods force strictly longer factors, so a witness
                # starting at 0 cannot be improved
                break
        n += 1
    if best is None:
        return None
    return PowerWitness(*best)


def is_e_free(w: Word, e) -> bool:
    """No factor of w has exponent >= e (with a plus threshold: > e)."""
    return contains_power_at_least(w, e) is None


def is_e_plus_free(w: Word, e) -> bool:
    """No factor of w has exponent strictly above e."""
    e = _coerce_exponent(e)
    return contains_power_at_least(w, e.with_plus(True)) is None


def critical_exponent(w: Word) -> Exponent:
    """Largest exponent over all nonempty factors of w, as an exact
    rational.  Single letters give the floor value 1."""
    L = len(w)
    if L == 0:
        raise ValueError("the empty word has no critical exponent")
    a = w.symbols
    best_num, best_den = 1, 1
    for n in range(1, L):
        eq = a[: L - n] == a[n:]
        _, lengths = _true_runs(eq)
        if lengths.size == 0:
            continue
        m = int(lengths.max())
        # a run of m matches at period n certifies a factor of length m + n
        if (m + n) * best_den > best_num * n:
            best_num, best_den = m + n, n
    return Exponent(best_num, best_den)
