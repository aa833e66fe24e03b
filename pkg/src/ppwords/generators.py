"""Generators for the classical sequences the rest of the package studies.

Everything here produces finite prefixes, as Word values, of infinite
sequences: fixed points of morphisms (Thue-Morse and friends), the
Rudin-Shapiro sequence, paperfolding sequences for arbitrary instruction
codes, and characteristic Sturmian words built from continued fraction
partial quotients.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

import numpy as np

from .words import Word

__all__ = [
    "Morphism",
    "PaperfoldingCode",
    "parse_morphism",
    "apply_morphism",
    "fixed_point_prefix",
    "named_sequence",
    "sequence_names",
    "rudin_shapiro_prefix",
    "paperfolding_word",
    "sturmian_characteristic",
]


class Morphism:
    """A map from symbols to nonempty words, extended to words by
    concatenation.

    Images are given as a dict from source symbol to anything Word() accepts
    (digit strings included).  The source alphabet must be {0, ..., m-1} with
    every image nonempty.
    """

    def __init__(self, images: dict[int, "Word | str | Sequence[int]"]):
        if not images:
            raise ValueError("a morphism needs at least one image")
        keys = sorted(images)
        if keys != list(range(len(keys))):
            raise ValueError(f"source alphabet must be 0..{len(keys) - 1}, got {keys}")
        self.images: dict[int, Word] = {}
        for k in keys:
            img = images[k]
            w = img if isinstance(img, Word) else Word(img)
            if len(w) == 0:
                raise ValueError(f"image of {k} is empty")
            self.images[k] = w
        self.source_size = len(keys)
        self.target_size = max(w.alphabet_size for w in self.images.values())
        lengths = {len(w) for w in self.images.values()}
        self.uniform_length: int | None = lengths.pop() if len(lengths) == 1 else None
        # uniform morphisms get a stacked image matrix for fast application
        if self.uniform_length is not None:
            self._matrix = np.stack(
                [self.images[k].symbols for k in range(self.source_size)]
            )
        else:
            self._matrix = None

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.images == other.images

    def __repr__(self) -> str:
        return f"Morphism({format_morphism(self)!r})"

    def is_prolongable_on(self, seed: int) -> bool:
        """True when image(seed) starts with seed and is at least 2 long,
        so that iterating from seed converges to an infinite fixed point."""
        if seed not in self.images:
            return False
        img = self.images[seed]
        return len(img) >= 2 and img[0] == seed


def parse_morphism(text: str) -> Morphism:
    """Parse the one-line morphism format ``"0->00011 1->00111"``.

    Rules are whitespace separated, each ``symbol->image`` with the image a
    digit string.  Every rule must use a distinct single-symbol source.
    """
    images: dict[int, str] = {}
    toks = text.split()
    if not toks:
        raise ValueError("empty morphism text")
    for tok in toks:
        if "->" not in tok:
            raise ValueError(f"morphism rule {tok!r} lacks '->'")
        src, _, img = tok.partition("->")
        if not src.isdigit() or len(src) != 1:
            raise ValueError(f"morphism source {src!r} must be a single digit")
        if not img.isdigit():
            raise ValueError(f"morphism image {img!r} must be a digit string")
        s = int(src)
        if s in images:
            raise ValueError(f"duplicate rule for symbol {s}")
        images[s] = img
    return Morphism(images)


def format_morphism(m: Morphism) -> str:
    return " ".join(
        f"{k}->{''.join(str(s) for s in m.images[k])}" for k in range(m.source_size)
    )


def apply_morphism(m: Morphism, w: Word) -> Word:
    """Concatenate the images of the symbols of w."""
    if len(w) and int(w.symbols.max()) >= m.source_size:
        bad = int(w.symbols.max())
        raise ValueError(f"symbol {bad} outside the morphism's source alphabet")
    if len(w) == 0:
        return Word([], alphabet_size=m.target_size)
    if m._matrix is not None:
        out = m._matrix[w.symbols].reshape(-1)
    else:
        out = np.concatenate([m.images[s].symbols for s in w.symbols.tolist()])
    return Word(out, alphabet_size=m.target_size)


def fixed_point_prefix(m: Morphism, seed: int, n: int) -> Word:
    """The length-n prefix of the infinite fixed point of m starting with
    seed.  Requires m prolongable on seed."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    if not m.is_prolongable_on(seed):
        raise ValueError(f"morphism is not prolongable on {seed}")
    w = Word([seed], alphabet_size=m.target_size)
    while len(w) < n:
        w = apply_morphism(m, w)
    return w[:n]


# the classical cast: each entry is either (morphism text, seed) or a
# dedicated generator function over index arrays
_MORPHIC = {
    "t": ("0->01 1->10", 0),  # Thue-Morse
    "f": ("0->01 1->0", 0),  # Fibonacci
    "tr": ("0->01 1->02 2->0", 0),  # Tribonacci
    "vtm": ("0->1 1->20 2->210", 2),  # ternary squarefree relative of t
    "mw": ("0->001 1->110", 0),  # Mephisto Waltz
    "pd": ("0->11 1->10", 1),  # period doubling
}


def rudin_shapiro_prefix(n: int) -> Word:
    """First n symbols of the Rudin-Shapiro sequence: position i carries the
    parity of the number of (possibly overlapping) 11 blocks in binary i.

    >>> str(rudin_shapiro_prefix(8))
    '00010010'
    """
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    idx = np.arange(n, dtype=np.uint64)
    pairs = idx & (idx >> np.uint64(1))
    return Word(np.bitwise_count(pairs) & np.uint64(1), alphabet_size=2)


class _SequenceCache:
    """Grow-on-demand prefix cache for one named sequence."""

    def __init__(self, build):
        self._build = build  # n -> Word of length >= n
        self._word = Word([], alphabet_size=2)
        self._lock = threading.Lock()

    def prefix(self, n: int) -> Word:
        if len(self._word) >= n:
            return self._word[:n]
        with self._lock:
            if len(self._word) < n:
                # grow geometrically so repeated mildly increasing requests
                # do not rebuild from scratch every time
                target = max(n, 2 * len(self._word), 64)
                self._word = self._build(target)
        return self._word[:n]


def _make_cache(name: str) -> _SequenceCache:
    if name in _MORPHIC:
        text, seed = _MORPHIC[name]
        m = parse_morphism(text)
        return _SequenceCache(lambda n: fixed_point_prefix(m, seed, n))
    if name == "rs":
        return _SequenceCache(rudin_shapiro_prefix)
    raise ValueError(f"unknown sequence name {name!r}")


_CACHES: dict[str, _SequenceCache] = {}
_CACHES_LOCK = threading.Lock()


def sequence_names() -> list[str]:
    return sorted(list(_MORPHIC) + ["rs"])


def named_sequence(name: str, n: int) -> Word:
    """Length-n prefix of a registered sequence.

    Registered names: t (Thue-Morse), f (Fibonacci), tr (Tribonacci),
    vtm (ternary relative of Thue-Morse), mw (Mephisto Waltz),
    pd (period doubling), rs (Rudin-Shapiro).
    """
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    with _CACHES_LOCK:
        cache = _CACHES.get(name)
        if cache is None:
            cache = _make_cache(name)
            _CACHES[name] = cache
    return cache.prefix(n)


class PaperfoldingCode:
    """A finite sequence of unfolding instructions, each +1 or -1.

    A code of length j determines a paperfolding word of length 2^j - 1.
    """

    def __init__(self, instructions: Iterable[int]):
        instr = tuple(int(x) for x in instructions)
        if not instr:
            raise ValueError("a paperfolding code needs at least one instruction")
        if any(x not in (1, -1) for x in instr):
            raise ValueError("instructions must be +1 or -1")
        self.instructions = instr

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)

    def __repr__(self) -> str:
        return f"PaperfoldingCode({list(self.instructions)})"


def paperfolding_word(code: PaperfoldingCode | Iterable[int]) -> Word:
    """The paperfolding word determined by an instruction code.

    Unfolding once per instruction: the word for the first j instructions
    has length 2^j - 1, and appending instruction b maps P to
    P . bit(b) . complement(reverse(P)).  Instruction +1 contributes bit 1,
    so the all +1 code gives the regular paperfolding sequence 1101100...

    >>> str(paperfolding_word([1, 1, 1]))
    '1101100'
    """
    if not isinstance(code, PaperfoldingCode):
        code = PaperfoldingCode(code)
    w = np.zeros(0, dtype=np.uint8)
    for b in code.instructions:
        bit = np.array([1 if b == 1 else 0], dtype=np.uint8)
        w = np.concatenate([w, bit, 1 - w[::-1]])
    return Word(w, alphabet_size=2)


def sturmian_characteristic(cf: Sequence[int], n: int) -> Word:
    """Length-n prefix of the characteristic Sturmian word whose slope has
    continued fraction expansion [0; c1, c2, c3, ...].

    Built by the standard word recursion s(-1) = 1, s(0) = 0,
    s(1) = 0^(c1 - 1) 1, and s(j) = s(j-1)^c(j) s(j-2) for j >= 2.  The
    partial quotients supplied must be enough to reach length n.

    >>> str(sturmian_characteristic([2, 1, 1, 1, 1], 8))
    '01001010'
    """
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    cf = list(cf)
    if any(c < 1 for c in cf):
        raise ValueError("partial quotients must be positive")
    if n == 0:
        return Word([], alphabet_size=2)
    if not cf:
        raise ValueError("need at least one partial quotient")
    prev = np.array([1], dtype=np.uint8)  # s(-1)
    cur = np.array([0], dtype=np.uint8)  # s(0)
    for j, c in enumerate(cf):
        reps = c - 1 if j == 0 else c
        cur, prev = np.concatenate([np.tile(cur, reps), prev]), cur
        if cur.size >= n:
            return Word(cur[:n], alphabet_size=2)
    raise ValueError(
        f"not enough partial quotients to reach length {n} (got {cur.size})"
    )
