"""Tuple automata over most-significant-first base-2 numeration.

An automaton of arity r reads r-tuples of naturals digit by digit: the
components are written in binary, left-padded with zeros to a common length,
and the machine consumes one column of r bits per step.  Missing transitions
reject.  The file format is the plain-text one used by automaton provers:

    msd_2 msd_2 msd_2

    0 0
    0 0 1 -> 1
    ...

a header naming the numeration per component, then one block per state
("state acceptance") followed by its transitions ("digits -> target").

The package ships one such machine, built to accept exactly the triples
(a,b,c) that are pseudoperiods of the Thue-Morse sequence; closed-form
predicates for related characterizations live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

__all__ = [
    "TupleDfa",
    "DfaParseError",
    "parse_walnut_dfa",
    "load_dfa",
    "tm_triple_automaton",
    "dfa_accepts",
    "dfa_enumerate",
    "shev_cond",
    "tm_distance_predicates",
    "vtm_triple_predicate",
]


class DfaParseError(ValueError):
    """Raised on malformed automaton text; the message carries a 1-based
    line number."""


@dataclass(frozen=True)
class TupleDfa:
    arity: int
    num_states: int
    accepting: frozenset[int]
    transitions: dict[tuple[int, tuple[int, ...]], int]

    def __post_init__(self):
        for (src, digits), dst in self.transitions.items():
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise ValueError(f"transition {src}->{dst} references a missing state")
            if len(digits) != self.arity:
                raise ValueError(f"transition digits {digits} do not match arity")


def parse_walnut_dfa(text: str) -> TupleDfa:
    """Parse automaton text in the format described in the module docstring.

    Tolerates blank lines and surrounding whitespace, nothing else; errors
    mention the offending line number.
    """
    arity: int | None = None
    flags: dict[int, int] = {}
    transitions: dict[tuple[int, tuple[int, ...]], int] = {}
    current: int | None = None

    def err(lineno: int, msg: str):
        raise DfaParseError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        toks = line.split()
        if arity is None:
            if not toks or any(t != "msd_2" for t in toks):
                err(lineno, f"header must list msd_2 tags, got {line!r}")
            arity = len(toks)
            continue
        if "->" in toks:
            if current is None:
                err(lineno, "transition before any state block")
            pos = toks.index("->")
            if pos != len(toks) - 2:
                err(lineno, f"malformed transition {line!r}")
            digits_part, target_part = toks[:pos], toks[-1]
            if len(digits_part) != arity:
                err(lineno, f"expected {arity} digits, got {len(digits_part)}")
            if not all(t in ("0", "1") for t in digits_part):
                err(lineno, f"digit out of base 2 in {line!r}")
            if not target_part.lstrip("-").isdigit():
                err(lineno, f"bad target state {target_part!r}")
            digits = tuple(int(t) for t in digits_part)
            key = (current, digits)
            if key in transitions:
                err(lineno, f"duplicate transition {line!r} for state {current}")
            transitions[key] = int(target_part)
        else:
            if len(toks) != 2 or not all(t.lstrip("-").isdigit() for t in toks):
                err(lineno, f"expected 'state acceptance', got {line!r}")
            state, acc = int(toks[0]), int(toks[1])
            if acc not in (0, 1):
                err(lineno, f"acceptance flag must be 0 or 1, got {acc}")
            if state in flags:
                err(lineno, f"duplicate block for state {state}")
            flags[state] = acc
            current = state

    if arity is None:
        raise DfaParseError("line 1: empty automaton text")
    if not flags:
        raise DfaParseError("line 1: no state blocks")
    n = len(flags)
    if sorted(flags) != list(range(n)):
        raise DfaParseError(f"line 1: state ids must be contiguous from 0, got {sorted(flags)}")
    for (src, _), dst in transitions.items():
        if dst not in flags:
            raise DfaParseError(
                f"line 1: transition from {src} targets missing state {dst}"
            )
    return TupleDfa(
        arity=arity,
        num_states=n,
        accepting=frozenset(s for s, a in flags.items() if a == 1),
        transitions=transitions,
    )


def load_dfa(path) -> TupleDfa:
    with open(path, "r", encoding="ascii") as fh:
        return parse_walnut_dfa(fh.read())


_TRIPLE_CACHE: TupleDfa | None = None


def tm_triple_automaton() -> TupleDfa:
    """The shipped 53-state machine recognizing the Thue-Morse pseudoperiod
    triples."""
    global _TRIPLE_CACHE
    if _TRIPLE_CACHE is None:
        text = (
            resources.files("ppwords.data").joinpath("tm_triples.dfa").read_text("ascii")
        )
        _TRIPLE_CACHE = parse_walnut_dfa(text)
    return _TRIPLE_CACHE


def _columns(values: tuple[int, ...], width: int):
    for shift in range(width - 1, -1, -1):
        yield tuple((v >> shift) & 1 for v in values)


def dfa_accepts(d: TupleDfa, values) -> bool:
    """Run the machine on a tuple of naturals, msd first, components padded
    to a common width."""
    values = tuple(int(v) for v in values)
    if len(values) != d.arity:
        raise ValueError(f"expected {d.arity} components, got {len(values)}")
    if any(v < 0 for v in values):
        raise ValueError("components must be nonnegative")
    width = max(1, max(v.bit_length() for v in values))
    state = 0
    for col in _columns(values, width):
        nxt = d.transitions.get((state, col))
        if nxt is None:
            return False
        state = nxt
    return state in d.accepting


def dfa_enumerate(d: TupleDfa, bound: int) -> list[tuple[int, ...]]:
    """All accepted tuples with every component in [0, bound], sorted.

    Tuples are explored through their canonical representations (no leading
    all-zero column except for the all-zero tuple), so each is evaluated
    exactly the way dfa_accepts evaluates it.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    width_max = bound.bit_length()
    out: list[tuple[int, ...]] = []
    all_cols = [
        tuple((mask >> j) & 1 for j in range(d.arity - 1, -1, -1))
        for mask in range(1 << d.arity)
    ]

    def walk(state: int, values: tuple[int, ...], remaining: int):
        if remaining == 0:
            if state in d.accepting:
                out.append(values)
            return
        shift = remaining - 1
        for col in all_cols:
            nxt = d.transitions.get((state, col))
            if nxt is None:
                continue
            grown = tuple((v << 1) | b for v, b in zip(values, col))
            if any((g << shift) > bound for g in grown):
                continue
            walk(nxt, grown, shift)

    for width in range(1, width_max + 1):
        start_cols = all_cols if width == 1 else all_cols[1:]  # no leading zero column
        for col in start_cols:
            nxt = d.transitions.get((0, col))
            if nxt is None:
                continue
            if any((b << (width - 1)) > bound for b in col):
                continue
            walk(nxt, col, width - 1)
    return sorted(out)


def shev_cond(a: int, b: int, c: int) -> bool:
    """True when b - a is a power of two 2^k with a >= 1 and c = a + 2^(k+1),
    the arithmetic family of Thue-Morse pseudoperiod triples."""
    d = b - a
    return a >= 1 and d >= 1 and (d & (d - 1)) == 0 and c - b == d


def _odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def tm_distance_predicates(n: int) -> tuple[bool, bool]:
    """Closed forms for the two distance sets of Thue-Morse pseudoperiod
    triples (values of b-a, and of c-b).

    First: n = (2^j - 1) 2^i, or (2^(2j-1) + 1) 2^i with j >= 1, or 11*2^i.
    Second: n = (2^j - 1) 2^i, or (2^j + 1) 2^i with j >= 1.
    Both false at n = 0.  Equivalent to base-2 regex membership in
    0*11*0* | 0*1(00)*10* | 0*10110* and 0*100*10* | 0*11*0*.
    """
    if n <= 0:
        return (False, False)
    o = _odd_part(n)
    all_ones = _is_power_of_two(o + 1)
    above_power = o >= 3 and _is_power_of_two(o - 1)
    exp_odd = above_power and ((o - 1).bit_length() - 1) % 2 == 1
    parta = all_ones or exp_odd or o == 11
    partb = all_ones or above_power
    return (parta, partb)


def vtm_triple_predicate(a: int, b: int, c: int) -> bool:
    """Membership of (a,b,c) in the three two-parameter families that make
    up all pseudoperiod triples of the ternary sequence vtm:

      ((2^(2i+1) - 1) 2^(2j+1), (2^(2i+2) - 1) 2^(2j), 2^(2i+2j+2))
      (3 * 2^(2j), (2^(2i+2) + 1) 2^(2j+1), (2^(2i+1) + 1) 2^(2j+2))
      (2^(2i+2j+3), (2^(2i+3) + 1) 2^(2j), (2^(2i+2) + 1) 2^(2j+1))

    with parameters i, j >= 0.
    """
    if not (1 <= a < b < c):
        return False
    top = c
    i = 0
    while True:
        if (1 << (2 * i + 1)) - 1 > top:
            break
        j = 0
        while True:
            f1 = (
                ((1 << (2 * i + 1)) - 1) << (2 * j + 1),
                ((1 << (2 * i + 2)) - 1) << (2 * j),
                1 << (2 * i + 2 * j + 2),
            )
            f2 = (
                3 << (2 * j),
                ((1 << (2 * i + 2)) + 1) << (2 * j + 1),
                ((1 << (2 * i + 1)) + 1) << (2 * j + 2),
            )
            f3 = (
                1 << (2 * i + 2 * j + 3),
                ((1 << (2 * i + 3)) + 1) << (2 * j),
                ((1 << (2 * i + 2)) + 1) << (2 * j + 1),
            )
            if (a, b, c) in (f1, f2, f3):
                return True
            if min(f1[0], f2[0], f3[0]) > top:
                break
            j += 1
        i += 1
    return False
