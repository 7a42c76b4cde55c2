"""Constructive Ramsey extraction: monochromatic subsets of uniform
hypergraph colorings, monochromatic boxes of product colorings, and
explicit big-integer upper bounds for both thresholds.

The threshold recurrences are classical iterated-pigeonhole bounds (no
attempt at tightness; only validity and monotonicity matter):

subset_threshold(r, s, t)
    s = 1: exact pigeonhole r(t-1)+1.  t <= s or r = 1: t.
    s >= 2: pick elements x_1, x_2, ... one at a time; after the k-th
    pick, refine the remaining pool so every (s-1)-subset T of the
    picks gives all remaining y the same color on T+{y} (a factor
    r^C(k, s-1) refinement). With m = subset_threshold(r, s-1, t-1) + 1
    picks, the induced (s-1)-uniform coloring of the first m-1 picks
    has a monochromatic (t-1)-subset M, and M plus the last pick is a
    monochromatic t-subset. Pool sizes: N_{m-1} = 1 and
    N_k = 1 + r^C(k+1, s-1) * N_{k+1}.

product_threshold(r, s, t)
    s = 1: pigeonhole r(t-1)+1.  r = 1: t.
    s >= 2: trim the first s-1 factors to M = product_threshold(r, s-1, t)
    elements; each element of the last factor induces one of r^(M^(s-1))
    colorings of the trimmed product, so r^(M^(s-1)) * (t-1) + 1 elements
    give t with identical induced colorings, and the shared coloring has
    a monochromatic box by the choice of M.

Values grow tower-fast; a digit cap (default 10000) refuses anything
whose decimal size provably exceeds it, before looping or exponentiating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Mapping, Sequence

from .errors import CapExceeded, FormatError

DEFAULT_DIGIT_CAP = 10000
_LOG10_2 = math.log10(2)


def _digits_of(x: int) -> float:
    return x.bit_length() * _LOG10_2


def _check_pow_digits(base: int, exp: int, extra_digits: float, cap: int) -> None:
    """Refuse base**exp when its decimal size would exceed cap.

    Pure integer comparison so astronomically large `exp` values never
    touch float arithmetic: digits ~= exp * bitlen(base) * log10(2).
    """
    if base <= 1 or exp <= 0:
        return
    scaled = exp * base.bit_length() * 30103  # 100000 * log10(2), rounded up
    if scaled > int((cap - extra_digits) * 100000):
        raise CapExceeded(
            f"power of a {base.bit_length()}-bit base to exponent ~2^"
            f"{exp.bit_length()} exceeds the {cap}-digit cap")


def subset_threshold(r: int, s: int, t: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """Upper bound on the hypergraph Ramsey threshold: any coloring of
    the s-subsets of a ground set of at least this size with at most r
    colors has a monochromatic t-subset. Monotone in r and t, and in s
    whenever t > s."""
    if r < 1 or s < 1 or t < 1:
        raise ValueError("threshold arguments must be positive")
    if r == 1 or t <= s:
        return t
    if s == 1:
        return r * (t - 1) + 1
    inner = subset_threshold(r, s - 1, t - 1, digit_cap)
    m = inner + 1
    # result >= 2^(m-s): refuse over-long chains without iterating
    if (m - s) * 30103 > digit_cap * 100000:
        raise CapExceeded(
            f"chain of ~2^{m.bit_length()} refinement steps forces more than "
            f"{digit_cap} digits")
    n = 1
    for k in range(m - 2, -1, -1):
        e = math.comb(k + 1, s - 1)
        _check_pow_digits(r, e, _digits_of(n), digit_cap)
        n = 1 + r ** e * n
        if _digits_of(n) > digit_cap:
            raise CapExceeded(f"threshold exceeds {digit_cap} digits")
    return max(n, t)


def product_threshold(r: int, s: int, t: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """Upper bound on the product Ramsey threshold: factors of at least
    this size force a monochromatic combinatorial box with t-element
    sides under any coloring with at most r colors."""
    if r < 1 or s < 1 or t < 1:
        raise ValueError("threshold arguments must be positive")
    if r == 1:
        return t
    if s == 1:
        return r * (t - 1) + 1
    m = product_threshold(r, s - 1, t, digit_cap)
    if (s - 1) * max(m.bit_length() - 1, 0) > 60:
        raise CapExceeded("induced-coloring count exceeds any sane digit cap")
    exp = m ** (s - 1)
    _check_pow_digits(r, exp, _digits_of(max(t - 1, 1)), digit_cap)
    return r ** exp * (t - 1) + 1


# -- colorings -----------------------------------------------------------


def _sorted_palette(colors) -> list:
    return sorted(set(colors), key=repr)


@dataclass(frozen=True)
class SubsetColoring:
    """A total coloring of the s-subsets of an ordered ground set."""

    ground: tuple
    s: int
    mapping: Mapping[frozenset, Hashable]

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("uniformity must be at least 1")
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set has repeated elements")
        for sub in combinations(self.ground, self.s):
            if frozenset(sub) not in self.mapping:
                raise ValueError(f"coloring not total: missing {set(sub)}")

    def color(self, subset) -> Hashable:
        return self.mapping[frozenset(subset)]

    @property
    def palette(self) -> list:
        return _sorted_palette(self.mapping.values())

    @classmethod
    def from_text(cls, text: str) -> "SubsetColoring":
        """One line per s-subset: the s member tokens, then the color id."""
        mapping = {}
        ground: set = set()
        s = None
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            parts = ln.split()
            if len(parts) < 2:
                raise FormatError(f"bad coloring line: {ln!r}")
            members, color = parts[:-1], parts[-1]
            if s is None:
                s = len(members)
            elif len(members) != s:
                raise FormatError("inconsistent subset sizes in coloring table")
            ground.update(members)
            mapping[frozenset(members)] = color
        if s is None:
            raise FormatError("empty coloring table")
        return cls(tuple(sorted(ground)), s, mapping)


@dataclass(frozen=True)
class ProductColoring:
    """A total coloring of the product A_1 x ... x A_s."""

    factors: tuple
    mapping: Mapping[tuple, Hashable]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("need at least one factor")
        from itertools import product
        for tup in product(*self.factors):
            if tup not in self.mapping:
                raise ValueError(f"coloring not total: missing {tup}")

    def color(self, tup) -> Hashable:
        return self.mapping[tuple(tup)]

    @property
    def palette(self) -> list:
        return _sorted_palette(self.mapping.values())

    @classmethod
    def from_text(cls, text: str) -> "ProductColoring":
        rows = []
        width = None
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            parts = ln.split()
            if len(parts) < 2:
                raise FormatError(f"bad coloring line: {ln!r}")
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise FormatError("inconsistent tuple sizes in coloring table")
            rows.append((tuple(parts[:-1]), parts[-1]))
        if width is None:
            raise FormatError("empty coloring table")
        s = width - 1
        factors = tuple(tuple(sorted({tup[i] for tup, _ in rows})) for i in range(s))
        mapping = {tup: color for tup, color in rows}
        return cls(factors, mapping)


# -- witness search ------------------------------------------------------


def mono_subset(coloring: SubsetColoring, t: int, strategy: str = "exhaustive"):
    """Monochromatic t-subset of the ground set, or None.

    The default strategy is exhaustive lexicographic backtracking and
    returns the lexicographically least witness (by ground positions).
    strategy="stepping_up" (s=2 only) runs the greedy refine-and-pick
    chain from the threshold proof instead; it can miss witnesses that
    exist below the threshold.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    ground = coloring.ground
    if t > len(ground):
        return None
    if t < coloring.s:
        # no s-subsets to constrain; vacuously monochromatic
        return coloring.palette[0] if coloring.mapping else None, tuple(ground[:t])
    if strategy == "stepping_up":
        return _mono_subset_stepping_up(coloring, t)
    if strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")
    s = coloring.s
    n = len(ground)
    chosen: list[int] = []
    fail = object()

    def extended_color(pos: int, color):
        """Color after adding pos, or `fail` on a mismatched s-subset."""
        if len(chosen) < s - 1:
            return color
        for rest in combinations(chosen, s - 1):
            c = coloring.mapping[frozenset(ground[i] for i in rest + (pos,))]
            if color is None:
                color = c
            elif c != color:
                return fail
        return color

    def search(start: int, color):
        if len(chosen) == t:
            return color
        for pos in range(start, n - (t - len(chosen)) + 1):
            nxt = extended_color(pos, color)
            if nxt is fail:
                continue
            chosen.append(pos)
            got = search(pos + 1, nxt)
            if got is not fail:
                return got
            chosen.pop()
        return fail

    color = search(0, None)
    if color is fail:
        return None
    witness = tuple(ground[i] for i in chosen)
    _verify_mono_subset(coloring, color, witness)
    return color, witness


def _mono_subset_stepping_up(coloring: SubsetColoring, t: int):
    if coloring.s != 2:
        raise ValueError("stepping_up strategy only supports s=2")
    ground = coloring.ground
    pool = list(range(len(ground)))
    picks: list[tuple[int, Hashable]] = []
    while pool:
        head, rest = pool[0], pool[1:]
        if not rest:
            break
        classes: dict = {}
        for x in rest:
            c = coloring.mapping[frozenset((ground[head], ground[x]))]
            classes.setdefault(c, []).append(x)
        color = max(classes, key=lambda c: (len(classes[c]), repr(c)))
        picks.append((head, color))
        pool = classes[color]
    by_color: dict = {}
    for pos, c in picks:
        by_color.setdefault(c, []).append(pos)
    for c in _sorted_palette(by_color):
        if len(by_color[c]) >= t:
            witness = tuple(ground[i] for i in by_color[c][:t])
            _verify_mono_subset(coloring, c, witness)
            return c, witness
    return None


def _verify_mono_subset(coloring: SubsetColoring, color, witness) -> None:
    if len(set(witness)) != len(witness):
        raise AssertionError("witness repeats elements")
    for sub in combinations(witness, coloring.s):
        if coloring.mapping[frozenset(sub)] != color:
            raise AssertionError("witness is not monochromatic")


_MISMATCH = object()  # rows disagree; never equal to a real color


def mono_product(coloring: ProductColoring, t: int):
    """Monochromatic box (one t-subset per factor), or None.

    Complete row-collapse recursion: choose t rows of the last factor,
    collapse them to the coloring the rows agree on (disagreements get a
    sentinel never matched), and recurse on the remaining factors.
    Deterministic lexicographic order, smallest witness first.
    """
    if t < 1:
        raise ValueError("t must be positive")
    factors = coloring.factors
    if any(t > len(f) for f in factors):
        return None
    result = _mono_product_rec([dict(coloring.mapping)], factors, t)
    if result is None:
        return None
    color, boxes = result
    from itertools import product
    for tup in product(*boxes):
        if coloring.mapping[tup] != color:
            raise AssertionError("box is not monochromatic")
    return color, boxes


def _mono_product_rec(tables: list[dict], factors: tuple, t: int):
    s = len(factors)
    table = tables[-1]
    if s == 1:
        for sub in combinations(factors[0], t):
            colors = {table[(x,)] for x in sub}
            if len(colors) == 1:
                color = colors.pop()
                if color is not _MISMATCH:
                    return color, (sub,)
        return None
    from itertools import product
    heads = list(product(*factors[:-1]))
    for rows in combinations(factors[-1], t):
        derived = {}
        for head in heads:
            colors = {table[head + (x,)] for x in rows}
            derived[head] = colors.pop() if len(colors) == 1 else _MISMATCH
        got = _mono_product_rec(tables + [derived], factors[:-1], t)
        if got is not None:
            color, boxes = got
            return color, boxes + (rows,)
    return None
