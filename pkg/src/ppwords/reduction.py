"""Hitting-set machinery: the gadget reduction showing that deciding the
existence of a bounded-size pseudoperiod is as hard as HITTING SET, plus
brute-force solvers for both sides at validation scale.

The generated word is u v w z_1 ... z_m with

    u   = 11 0^(4n+3)
    v   = 101 0^(4n+3)
    w   = 1001 0^(4n+3)
    z_i = 1 000 a(1,i) 000 a(2,i) ... 000 a(n,i) 0000 (0011)^n 0

where a(l,i) = 1 exactly when l is in the i-th set.  Asking for a
pseudoperiod of size k' + 4 with offsets bounded by 4n + 5 makes the head
symbol of each z_i solvable exactly through an offset 4*l with l hitting
the i-th set; the offsets 1, 2, 3 and 4n+4 take care of everything else.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .pseudoperiod import PpTuple, is_pseudoperiod
from .words import Word, parse_word, format_word

__all__ = [
    "HittingSetInstance",
    "PseudoperiodInstance",
    "build_pp_instance",
    "solve_pseudoperiod",
    "solve_hitting_set",
    "extract_hitting_set",
    "load_hitting_set_file",
    "save_hitting_set_file",
    "load_pp_instance_file",
    "save_pp_instance_file",
    "EXPLOSION_GUARD",
]

EXPLOSION_GUARD = 10**7


@dataclass(frozen=True)
class HittingSetInstance:
    n: int
    sets: tuple[frozenset[int], ...]
    k_prime: int

    def __init__(self, n: int, sets, k_prime: int):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(
            self, "sets", tuple(frozenset(int(e) for e in s) for s in sets)
        )
        object.__setattr__(self, "k_prime", int(k_prime))
        if self.n < 1:
            raise ValueError("universe must be nonempty")
        if not self.sets:
            raise ValueError("need at least one set")
        for s in self.sets:
            if not s:
                raise ValueError("sets must be nonempty")
            if any(e < 1 or e > self.n for e in s):
                raise ValueError(f"set {sorted(s)} leaves the universe [1,{self.n}]")
        if not (1 <= self.k_prime <= self.n):
            raise ValueError(f"target size {self.k_prime} outside [1,{self.n}]")


@dataclass(frozen=True)
class PseudoperiodInstance:
    x: Word
    k: int
    B: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("tuple size must be at least 1")
        if self.B < self.k:
            raise ValueError(f"bound {self.B} cannot host {self.k} distinct offsets")
        if len(self.x) and int(self.x.symbols.max()) > 1:
            raise ValueError("instance word must be binary")


def build_pp_instance(h: HittingSetInstance) -> PseudoperiodInstance:
    """The gadget word for a hitting-set instance, with size target k'+4 and
    offset bound 4n+5."""
    n = h.n
    parts = [[1, 1] + [0] * (4 * n + 3),
             [1, 0, 1] + [0] * (4 * n + 3),
             [1, 0, 0, 1] + [0] * (4 * n + 3)]
    for s in h.sets:
        z = [1, 0, 0, 0]
        for el in range(1, n + 1):
            z.append(1 if el in s else 0)
            if el < n:
                z.extend([0, 0, 0])
        z.extend([0, 0, 0, 0])
        z.extend([0, 0, 1, 1] * n)
        z.append(0)
        assert len(z) == 8 * n + 6
        parts.append(z)
    x = Word([b for part in parts for b in part], alphabet_size=2)
    return PseudoperiodInstance(x=x, k=h.k_prime + 4, B=4 * n + 5)


def _solution_guard(total: int, guard: int):
    if total > guard:
        raise ValueError(
            f"{total} candidate subsets exceed the explosion guard {guard}"
        )


# cache of candidate masks, keyed by (largest offset, number of smaller
# offsets): combos of range(1, M) as uint64 bitmasks plus the tuples
_COMBO_CACHE: dict[tuple[int, int], tuple[np.ndarray, list[tuple[int, ...]]]] = {}


def _combos_below(m: int, r: int):
    key = (m, r)
    hit = _COMBO_CACHE.get(key)
    if hit is None:
        tuples = list(itertools.combinations(range(1, m), r))
        masks = np.zeros(len(tuples), dtype=np.uint64)
        for idx, t in enumerate(tuples):
            acc = 0
            for p in t:
                acc |= 1 << (p - 1)
            masks[idx] = acc
        hit = (masks, tuples)
        _COMBO_CACHE[key] = hit
    return hit


def solve_pseudoperiod(
    inst: PseudoperiodInstance, guard: int = EXPLOSION_GUARD
) -> PpTuple | None:
    """Lexicographically least size-k offset set within [1, B] that is a
    pseudoperiod of the instance word, or None.  Exhaustive; refuses when
    C(B, k) exceeds the guard."""
    _solution_guard(math.comb(inst.B, inst.k), guard)
    if inst.B <= 63:
        return _solve_bitmask(inst)
    arr = inst.x
    for combo in itertools.combinations(range(1, inst.B + 1), inst.k):
        if is_pseudoperiod(arr, PpTuple(combo)):
            return PpTuple(combo)
    return None


def _solve_bitmask(inst: PseudoperiodInstance) -> PpTuple | None:
    a = inst.x.symbols
    L = len(a)
    B, k = inst.B, inst.k
    # per-position clause: the offsets p <= B whose target symbol matches
    clause = np.zeros(L, dtype=np.uint64)
    for p in range(1, min(B, L - 1) + 1):
        eq = a[: L - p] == a[p:]
        clause[: L - p] |= eq.astype(np.uint64) << np.uint64(p - 1)
    best: tuple[int, ...] | None = None
    for top in range(k, B + 1):
        limit = L - top
        masks, tuples = _combos_below(top, k - 1)
        if limit > 0:
            tests = np.unique(clause[:limit])
            if tests.size and tests[0] == 0:
                continue  # some position matches no offset at all
            top_bit = np.uint64(1 << (top - 1))
            valid = np.ones(len(tuples), dtype=bool)
            full = masks | top_bit
            for c in tests:
                valid &= (full & c) != 0
                if not valid.any():
                    break
            idx = int(np.argmax(valid)) if valid.any() else -1
        else:
            idx = 0 if tuples else -1  # vacuous: nothing is constrained
        if idx >= 0:
            cand = tuples[idx] + (top,)
            if best is None or cand < best:
                best = cand
    return PpTuple(best) if best is not None else None


def solve_hitting_set(
    h: HittingSetInstance, guard: int = EXPLOSION_GUARD
) -> frozenset[int] | None:
    """Lexicographically least hitting set of the exact target size, or
    None.  Exhaustive with the same explosion guard."""
    _solution_guard(math.comb(h.n, h.k_prime), guard)
    for combo in itertools.combinations(range(1, h.n + 1), h.k_prime):
        chosen = set(combo)
        if all(s & chosen for s in h.sets):
            return frozenset(chosen)
    return None


def extract_hitting_set(inst: PseudoperiodInstance, solution) -> frozenset[int]:
    """Recover a hitting set from a solution of a built instance: drop the
    scaffold offsets {1, 2, 3, 4n+4} and divide the rest by 4.

    Solutions are predicted to stay inside {1,2,3,4n+4} plus multiples of 4
    up to 4n; anything else (possible when the size target is loose) is
    reported as a structural error rather than silently mapped.
    """
    solution = solution if isinstance(solution, PpTuple) else PpTuple(solution)
    if (inst.B - 5) % 4 != 0 or inst.B < 9:
        raise ValueError(f"offset bound {inst.B} does not fit the built shape 4n+5")
    n = (inst.B - 5) // 4
    if not is_pseudoperiod(inst.x, solution):
        raise ValueError(f"{solution} does not solve the instance")
    scaffold = {1, 2, 3, 4 * n + 4}
    hits = set()
    for p in solution:
        if p in scaffold:
            continue
        if p % 4 == 0 and 1 <= p // 4 <= n:
            hits.add(p // 4)
        else:
            raise ValueError(
                f"structural error: offset {p} lies outside the predicted "
                f"shape {{1,2,3,{4 * n + 4}}} plus 4*[1,{n}]"
            )
    if len(hits) != len(solution) - 4:
        raise ValueError(
            "structural error: solution does not contain the full scaffold "
            f"{{1,2,3,{4 * n + 4}}}"
        )
    return frozenset(hits)


# ---------------------------------------------------------------------------
# file formats


def load_hitting_set_file(path) -> HittingSetInstance:
    """First line ``n m k'``, then m lines of whitespace-separated
    elements."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty instance file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"{path}: first line must be 'n m k-prime'")
    n, m, k_prime = (int(t) for t in head)
    if len(lines) - 1 != m:
        raise ValueError(f"{path}: expected {m} set lines, found {len(lines) - 1}")
    sets = [frozenset(int(t) for t in ln.split()) for ln in lines[1:]]
    return HittingSetInstance(n=n, sets=sets, k_prime=k_prime)


def save_hitting_set_file(path, h: HittingSetInstance):
    with open(path, "w") as fh:
        fh.write(f"{h.n} {len(h.sets)} {h.k_prime}\n")
        for s in h.sets:
            fh.write(" ".join(str(e) for e in sorted(s)) + "\n")


def load_pp_instance_file(path) -> PseudoperiodInstance:
    """Word line, then a line ``k B``."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) != 2:
        raise ValueError(f"{path}: expected a word line and a 'k B' line")
    word = parse_word(lines[0])
    tail = lines[1].split()
    if len(tail) != 2:
        raise ValueError(f"{path}: second line must be 'k B'")
    return PseudoperiodInstance(x=word, k=int(tail[0]), B=int(tail[1]))


def save_pp_instance_file(path, inst: PseudoperiodInstance):
    with open(path, "w") as fh:
        fh.write(format_word(inst.x) + "\n")
        fh.write(f"{inst.k} {inst.B}\n")
