"""Exhaustive search over constrained word trees and morphism verification.

The tree of interest for a pseudoperiod tuple and a forbidden exponent has
as nodes all words (over a fixed alphabet) that satisfy the tuple on their
constrained range and contain no forbidden power.  Both properties are
closed under taking prefixes, so depth-first search with incremental checks
explores the tree exactly.  A finite tree proves that no infinite word
meets the constraints and its depth is the length record.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .generators import Morphism, apply_morphism, named_sequence, parse_morphism
from .powers import PowerWitness, contains_power_at_least
from .pseudoperiod import PpTuple, first_violation
from .words import Exponent, Word

__all__ = [
    "SearchSpec",
    "SearchOutcome",
    "SearchCapError",
    "longest_constrained_word",
    "generate_threshold_word",
    "verify_construction",
    "verify_residue_class",
    "verify_large_alphabet_theorem",
    "ConstructionReport",
    "ResidueReport",
    "TheoremReport",
    "shipped_morphism_names",
    "shipped_morphism",
    "load_block_morphism",
    "aligned_prefix_occurrences",
]


class SearchCapError(RuntimeError):
    """Raised when a generation search exhausts its backtrack budget."""


@dataclass(frozen=True)
class SearchSpec:
    """Parameters of one constrained word tree."""

    alphabet_size: int
    pp: PpTuple
    forbidden_exponent: Exponent
    depth_cap: int = 1000

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError("alphabet must have at least 2 letters")
        if not isinstance(self.pp, PpTuple):
            object.__setattr__(self, "pp", PpTuple(self.pp))
        if self.depth_cap < self.pp[-1]:
            raise ValueError("depth cap below the largest offset is useless")


@dataclass(frozen=True)
class SearchOutcome:
    verdict: str  # "finite_tree" or "cap_exceeded"
    longest_length: int
    witness_word: Word


class _TreeWalker:
    """Incremental checks for one growing word.

    Appending a symbol at position L constrains exactly the index L - pmax
    of the tuple condition, and can only create forbidden powers in factors
    that end at L; both are checked in place against the current buffer.
    """

    def __init__(self, pp: PpTuple, e: Exponent, cap: int):
        if e.num < e.den or (e.num == e.den and not e.plus):
            raise ValueError("forbidden exponent must be above 1 to leave any words")
        self.pp = pp
        self.pmax = pp[-1]
        self.num, self.den, self.plus = e.num, e.den, e.plus
        self.buf = np.zeros(cap, dtype=np.int8)
        self.length = 0

    def fits(self, c: int) -> bool:
        buf, L = self.buf, self.length
        i = L - self.pmax
        if i >= 0:
            target = buf[i]
            ok = False
            for p in self.pp:
                v = c if i + p == L else buf[i + p]
                if v == target:
                    ok = True
                    break
            if not ok:
                return False
        # powers: for each period n, walk the match run backwards from the
        # new position and reject once it reaches the forbidden length
        newlen = L + 1
        n = 1
        while True:
            if self.plus:
                l_min = (n * self.num) // self.den + 1
            else:
                l_min = -((-n * self.num) // self.den)
            if l_min > newlen:
                break
            m_min = l_min - n
            if m_min >= 1:
                j = L - n
                m = 0
                while j >= 0:
                    v = c if j + n == L else buf[j + n]
                    if buf[j] != v:
                        break
                    m += 1
                    if m >= m_min:
                        return False
                    j -= 1
            n += 1
        return True

    def push(self, c: int):
        self.buf[self.length] = c
        self.length += 1

    def pop(self):
        self.length -= 1

    def snapshot(self) -> Word:
        return Word(self.buf[: self.length].astype(np.uint8))


def _search_subtree(spec: SearchSpec, first_symbol: int) -> tuple[int, Word | None, bool]:
    """Longest word in the subtree rooted at one first symbol.

    Returns (longest length, lexicographically least witness of that length,
    hit_cap).  Smallest-symbol-first order makes the first word reaching a
    new depth the lexicographically least of that depth.
    """
    walker = _TreeWalker(spec.pp, spec.forbidden_exponent, spec.depth_cap)
    if not walker.fits(first_symbol):
        return 0, None, False
    walker.push(first_symbol)
    best_len, best_word = 1, walker.snapshot()
    if spec.depth_cap == 1:
        return 1, best_word, True
    next_try = [0]
    while True:
        c = next_try[-1]
        if c < spec.alphabet_size and walker.fits(c):
            walker.push(c)
            next_try[-1] = c + 1
            next_try.append(0)
            if walker.length > best_len:
                best_len, best_word = walker.length, walker.snapshot()
                if best_len >= spec.depth_cap:
                    return best_len, best_word, True
        elif c < spec.alphabet_size:
            next_try[-1] = c + 1
        else:
            next_try.pop()
            if not next_try:
                return best_len, best_word, False
            walker.pop()


def longest_constrained_word(spec: SearchSpec, threads: int = 1) -> SearchOutcome:
    """Explore the whole constrained tree and report its depth.

    verdict "finite_tree" means the search exhausted the tree and
    longest_length is exact; "cap_exceeded" means a word of length
    depth_cap exists and the tree may go on.
    """
    symbols = range(spec.alphabet_size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: _search_subtree(spec, s), symbols))
    else:
        results = [_search_subtree(spec, s) for s in symbols]
    best_len, best_word, hit_cap = 0, Word([], spec.alphabet_size), False
    for length, word, capped in results:
        hit_cap = hit_cap or capped
        if word is not None and length > best_len:
            best_len, best_word = length, word
    return SearchOutcome(
        verdict="cap_exceeded" if hit_cap else "finite_tree",
        longest_length=best_len,
        witness_word=best_word,
    )


def generate_threshold_word(
    alphabet_size: int, threshold, target_len: int, cap: int = 10**6
) -> Word:
    """Lexicographically least word of the target length over the given
    alphabet with no factor of exponent strictly above the threshold, found
    by backtracking.  ``cap`` bounds the number of backtrack steps."""
    if alphabet_size < 2:
        raise ValueError("alphabet must have at least 2 letters")
    if target_len < 0:
        raise ValueError("target length must be nonnegative")
    thr = threshold if isinstance(threshold, Exponent) else Exponent(threshold)
    walker = _TreeWalker(PpTuple([target_len + 1]), thr.with_plus(True), target_len + 1)
    next_try = [0]
    backtracks = 0
    while walker.length < target_len:
        c = next_try[-1]
        if c >= alphabet_size:
            next_try.pop()
            if not next_try:
                raise SearchCapError(
                    f"no {thr}+-free word of length {target_len} over "
                    f"{alphabet_size} letters"
                )
            walker.pop()
            backtracks += 1
            if backtracks > cap:
                raise SearchCapError(f"backtrack budget {cap} exhausted")
            continue
        if walker.fits(c):
            walker.push(c)
            next_try[-1] = c + 1
            next_try.append(0)
        else:
            next_try[-1] = c + 1
    return walker.snapshot()


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class ConstructionReport:
    morphism: str
    base: str
    pp: PpTuple
    free_at: Exponent
    prefix_len: int
    pp_violation: int | None
    power_witness: PowerWitness | None

    @property
    def passed(self) -> bool:
        return self.pp_violation is None and self.power_witness is None


@dataclass(frozen=True)
class ResidueReport:
    residue: int
    modulus: int
    prefix_len: int
    power_witness: PowerWitness | None
    sample_violations: dict[int, int | None]

    @property
    def passed(self) -> bool:
        return self.power_witness is None and all(
            v is None for v in self.sample_violations.values()
        )


@dataclass(frozen=True)
class TheoremReport:
    which: str
    base_len: int
    image_len: int
    pp: PpTuple
    free_at: Exponent
    pp_violation: int | None
    power_witness: PowerWitness | None
    prefix_synchronizing: bool

    @property
    def passed(self) -> bool:
        return (
            self.pp_violation is None
            and self.power_witness is None
            and self.prefix_synchronizing
        )


def _base_word(base, length: int) -> tuple[str, Word]:
    if isinstance(base, Word):
        return "word", base[:length]
    return str(base), named_sequence(str(base), length)


def verify_construction(
    m: Morphism, base, pp, free_at, prefix_len: int
) -> ConstructionReport:
    """Check that the image of a base sequence under m has the claimed
    pseudoperiod and power-freeness, on an image prefix of the given length."""
    pp = pp if isinstance(pp, PpTuple) else PpTuple(pp)
    free_at = free_at if isinstance(free_at, Exponent) else Exponent(free_at)
    if prefix_len < 10 * pp[-1]:
        raise ValueError("prefix length below 10 * max offset is too weak a check")
    min_img = min(len(w) for w in m.images.values())
    base_name, base_word = _base_word(base, prefix_len // min_img + 2)
    image = apply_morphism(m, base_word)[:prefix_len]
    if len(image) < prefix_len:
        raise ValueError("base word too short to reach the requested image prefix")
    return ConstructionReport(
        morphism=repr(m),
        base=base_name,
        pp=pp,
        free_at=free_at,
        prefix_len=prefix_len,
        pp_violation=first_violation(image, pp),
        power_witness=contains_power_at_least(image, free_at),
    )


def verify_residue_class(
    m: Morphism, residue: int, modulus: int, a_samples, prefix_len: int
) -> ResidueReport:
    """Check pp (1, a) plus cube-plus-freeness of the morphism's image of
    the Thue-Morse sequence, for each sampled offset a in the residue class."""
    if m.uniform_length != modulus:
        raise ValueError(
            f"morphism is not uniform of length {modulus} (got {m.uniform_length})"
        )
    samples = [int(a) for a in a_samples]
    for a in samples:
        if a % modulus != residue % modulus:
            raise ValueError(f"sample {a} is not {residue} mod {modulus}")
    _, base_word = _base_word("t", prefix_len // modulus + 2)
    image = apply_morphism(m, base_word)[:prefix_len]
    witness = contains_power_at_least(image, Exponent(3, plus=True))
    viols = {a: first_violation(image, PpTuple([1, a])) for a in samples}
    return ResidueReport(
        residue=residue,
        modulus=modulus,
        prefix_len=prefix_len,
        power_witness=witness,
        sample_violations=viols,
    )


_THEOREM_TABLE = {
    "18_37": ("pp_18_37_u188.txt", 188, (18, 37), Exponent(7, 4), 4, Exponent(7, 5)),
    "4_10": ("pp_4_10_u170.txt", 170, (4, 10), Exponent(3, 2), 4, Exponent(7, 5)),
    "9_19": ("pp_9_19_u84.txt", 84, (9, 19), Exponent(4, 3), 5, Exponent(5, 4)),
}


def load_block_morphism(name: str) -> tuple[Morphism, Word, int]:
    """Load a data file in the factored form

        uniform <n>
        prefix <digits>
        <letter> <digits>
        ...

    where each image is the common prefix followed by the letter's suffix.
    Returns (morphism, prefix word, uniform length) and refuses any file
    whose reassembled images do not all have the declared length."""
    text = resources.files("ppwords.data.morphisms").joinpath(name).read_text("ascii")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3 or not lines[0].startswith("uniform ") or not lines[1].startswith("prefix "):
        raise ValueError(f"{name}: malformed block morphism file")
    n = int(lines[0].split()[1])
    prefix = lines[1].split()[1]
    images: dict[int, str] = {}
    for ln in lines[2:]:
        sym, _, suffix = ln.partition(" ")
        images[int(sym)] = prefix + suffix.strip()
    for sym, img in images.items():
        if len(img) != n:
            raise ValueError(
                f"{name}: transcription checksum mismatch, image of {sym} "
                f"has length {len(img)}, expected {n}"
            )
    return Morphism(images), Word(prefix), n


def aligned_prefix_occurrences(image: Word, prefix: Word, block: int) -> bool:
    """True when every occurrence of ``prefix`` in ``image`` starts at a
    multiple of ``block`` (the synchronizing-prefix property)."""
    hay = image.symbols.tobytes()
    needle = prefix.symbols.tobytes()
    pos = hay.find(needle)
    while pos != -1:
        if pos % block != 0:
            return False
        pos = hay.find(needle, pos + 1)
    return True


def verify_large_alphabet_theorem(which: str, base_len: int = 50) -> TheoremReport:
    """End-to-end check of one of the three uniform-morphism constructions:
    generate a suitable threshold-free base word, apply the shipped morphism,
    and verify the pseudoperiod, the power-freeness, and that the common
    prefix occurs only at image block boundaries."""
    if which not in _THEOREM_TABLE:
        raise ValueError(f"unknown theorem key {which!r}; use one of {sorted(_THEOREM_TABLE)}")
    fname, n, pp, free_at, base_k, base_thr = _THEOREM_TABLE[which]
    m, prefix, _ = load_block_morphism(fname)
    base = generate_threshold_word(base_k, base_thr, base_len)
    image = apply_morphism(m, base)
    return TheoremReport(
        which=which,
        base_len=base_len,
        image_len=len(image),
        pp=PpTuple(pp),
        free_at=free_at,
        pp_violation=first_violation(image, PpTuple(pp)),
        power_witness=contains_power_at_least(image, free_at.with_plus(True)),
        prefix_synchronizing=aligned_prefix_occurrences(image, prefix, n),
    )


def shipped_morphism_names() -> list[str]:
    """Names of the plain-format morphism data files (without extension)."""
    root = resources.files("ppwords.data.morphisms")
    names = []
    for entry in root.iterdir():
        if entry.name.endswith(".txt") and not entry.name.startswith("pp_1") and "_u" not in entry.name:
            names.append(entry.name[:-4])
        elif entry.name in ("pp_1_5.txt", "pp_1_6_ternary.txt"):
            names.append(entry.name[:-4])
    return sorted(names)


def shipped_morphism(name: str) -> Morphism:
    """Load a shipped plain-format morphism by name (e.g. ``pp_1_5`` or
    ``residue_4_mod_5``)."""
    path = resources.files("ppwords.data.morphisms").joinpath(name + ".txt")
    try:
        text = path.read_text("ascii")
    except FileNotFoundError:
        raise ValueError(f"no shipped morphism named {name!r}") from None
    return parse_morphism(text)
