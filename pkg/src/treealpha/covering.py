"""Constructive covering of a shared vertex set: split V into parts
whose induced subgraphs have small independence number in their own
graph, given that every graph is K_{a,a}-free and the union has small
independence number.

The two-graph engine mirrors the inductive argument: exchange
neighborhoods M_1(v) = N_{G2}(v) \\ N_{G1}(v) and M_2(v) symmetric,
exact "covered" decisions through a memoised optimal-split search,
chain escalation when a vertex resists, and the B/C/D decomposition
that recurses on a smaller independence bound. The many-graph version
peels one graph at a time against the union of the rest.

Shared-vertex text format: a vertex-count line, then one edge block per
graph ("u v" lines), blocks separated by a line containing "--".
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from . import bounds
from .errors import CapExceeded, FormatError, HypothesisViolation
from .graphs import Graph, _alpha_mask, bits, mask_of, set_of
from .patterns import contains_induced
from .ramsey import product_threshold

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SharedVertexGraphs:
    """Graphs G_1..G_b on one common vertex set."""

    graphs: tuple[Graph, ...]

    def __post_init__(self):
        if not self.graphs:
            raise ValueError("need at least one graph")
        n = self.graphs[0].n
        if any(g.n != n for g in self.graphs):
            raise ValueError("all graphs must share the vertex set")

    @property
    def n(self) -> int:
        return self.graphs[0].n

    @property
    def b(self) -> int:
        return len(self.graphs)

    def union(self) -> Graph:
        g = self.graphs[0]
        for h in self.graphs[1:]:
            g = g.union(h)
        return g

    @classmethod
    def from_text(cls, text: str) -> "SharedVertexGraphs":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise FormatError("empty shared-vertex input")
        try:
            n = int(lines[0])
        except ValueError as exc:
            raise FormatError(f"bad vertex count line: {lines[0]!r}") from exc
        blocks: list[list[tuple[int, int]]] = [[]]
        for ln in lines[1:]:
            if ln == "--":
                blocks.append([])
                continue
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError(f"bad edge line: {ln!r}")
            blocks[-1].append((int(parts[0]), int(parts[1])))
        return cls(tuple(Graph(n, block) for block in blocks))

    def to_text(self) -> str:
        chunks = []
        for g in self.graphs:
            chunks.append("\n".join(f"{u} {v}" for u, v in g.edges()))
        return f"{self.n}\n" + "\n--\n".join(chunks) + "\n"


@dataclass(frozen=True)
class CoverWitness:
    parts: tuple[frozenset, ...]
    alphas: tuple[int, ...]
    bound: int | None  # advertised bound for the requested parameters


@dataclass(frozen=True)
class ChainWitness:
    """A chain grown during escalation: later vertices lie in M_1 of
    all earlier ones, and both running intersections resist covering
    at the recorded level."""

    vertices: tuple[int, ...]
    m: int
    residual_m1: frozenset
    residual_m2: frozenset


class _ProofGap(Exception):
    """The mirrored cascade reached a state the argument rules out
    (possible only at q=2 with a>=2, or on hypothesis-violating input
    when checks were skipped)."""


def exchange_neighborhoods(pair: SharedVertexGraphs, v: int) -> tuple[frozenset, frozenset]:
    """(M1, M2): neighbors gained/lost when swapping the two graphs."""
    if pair.b != 2:
        raise ValueError("exchange neighborhoods need exactly two graphs")
    g1, g2 = pair.graphs
    m1 = g2.adj(v) & ~g1.adj(v)
    m2 = g1.adj(v) & ~g2.adj(v)
    return set_of(m1), set_of(m2)


class _TwoCover:
    """Covering engine for one (G1, G2, a) instance, mask-based so the
    many-graph recursion can reuse it on vertex subsets."""

    def __init__(self, g1: Graph, g2: Graph, a: int,
                 trace: list[ChainWitness] | None = None):
        if g1.n != g2.n:
            raise ValueError("graphs must share the vertex set")
        self.g1, self.g2, self.a = g1, g2, a
        self.union = g1.union(g2)
        self._value: dict[int, tuple[int, int]] = {}  # mask -> (value, part1)
        self.trace = trace
        self._m1 = [g2.adj(v) & ~g1.adj(v) for v in range(g1.n)]
        self._m2 = [g1.adj(v) & ~g2.adj(v) for v in range(g1.n)]

    # exact coveredness ------------------------------------------------

    def cover_value(self, mask: int) -> int:
        got = self._value.get(mask)
        if got is not None:
            return got[0]
        best, best_part = None, 0
        sub = mask
        while True:
            val = max(_alpha_mask(self.g1, sub), _alpha_mask(self.g2, mask & ~sub))
            if best is None or val < best:
                best, best_part = val, sub
            if sub == 0:
                break
            sub = (sub - 1) & mask
        self._value[mask] = (best, best_part)
        return best

    def covered(self, mask: int, beta: int) -> bool:
        return self.cover_value(mask) < beta

    def cover_witness(self, mask: int, beta: int) -> tuple[int, int]:
        if not self.covered(mask, beta):
            raise AssertionError("cover_witness on an uncovered set")
        part1 = self._value[mask][1]
        return part1, mask & ~part1

    # chain escalation ---------------------------------------------------

    def _grow_chain(self, v: int, mask: int, betas: list[int]) -> None:
        """Grow a chain from a vertex whose exchange sets both resist
        covering. Ends in a K_{a,a} witness (HypothesisViolation) or a
        state the argument forbids (_ProofGap)."""
        a = self.a
        chain = [v]
        z1 = self._m1[v] & mask
        z2 = self._m2[v] & mask
        self._record_chain(chain, z1, z2)
        while len(chain) < a:
            level = betas[a - len(chain)]  # beta_{a-l} for the extension
            nxt = None
            for w in bits(z1):
                nz1 = z1 & self._m1[w]
                nz2 = z2 & self._m2[w]
                if not self.covered(nz1, level) and not self.covered(nz2, level):
                    nxt = (w, nz1, nz2)
                    break
            if nxt is None:
                raise _ProofGap("chain extension exhausted")
            chain.append(nxt[0])
            z1, z2 = nxt[1], nxt[2]
            self._record_chain(chain, z1, z2)
        # length-a chain: the chain is stable in G1 and complete to z2
        stable_a = _lex_stable_subset(self.g1, z2, a)
        if stable_a is not None:
            raise HypothesisViolation(
                f"K_{{{a},{a}}} in the first graph",
                witness=(sorted(chain), sorted(bits(stable_a))))
        raise _ProofGap("length-a chain with no complete-bipartite witness")

    def _record_chain(self, chain, z1, z2):
        if self.trace is not None:
            self.trace.append(ChainWitness(tuple(chain), self.a,
                                           set_of(z1), set_of(z2)))

    # the mirrored recursion ---------------------------------------------

    def cover(self, mask: int, q: int) -> tuple[int, int]:
        """Cover `mask` with both parts strictly below (2a)^(a(q-1))."""
        if mask == 0:
            return 0, 0
        a = self.a
        if q < 2:
            raise AssertionError("nonempty set with independence bound below 1")
        assert _alpha_mask(self.union, mask) < q
        betas = [0] + [bounds.beta(a, q, i) for i in range(1, a + 2)]
        try:
            y1 = y2 = 0
            for v in bits(mask):
                c1 = self.covered(self._m1[v] & mask, betas[a])
                c2 = self.covered(self._m2[v] & mask, betas[a])
                if not c1 and not c2:
                    self._grow_chain(v, mask, betas)  # always raises
                    raise AssertionError("chain escalation returned")
                y1 |= (1 << v) if c1 else 0
                y2 |= (1 << v) if c2 else 0
            a1 = _alpha_mask(self.g1, y1)
            a2 = _alpha_mask(self.g2, y2)
            if a1 < betas[a + 1] and a2 < betas[a + 1]:
                return y1, y2
            i = 1 if a1 >= betas[a + 1] else 2
            return self._split_bcd(mask, q, betas, i, y1 if i == 1 else y2)
        except _ProofGap:
            if self.covered(mask, betas[a + 1]):
                log.info("mirrored cascade hit a forbidden state; "
                         "falling back to the exact cover search")
                return self.cover_witness(mask, betas[a + 1])
            raise HypothesisViolation(
                "covering bound unattainable; input violates the "
                "K_{a,a}-free or independence hypotheses", witness=set_of(mask))

    def _split_bcd(self, mask: int, q: int, betas: list[int], i: int,
                   y_i: int) -> tuple[int, int]:
        a = self.a
        gi = self.g1 if i == 1 else self.g2
        mi = self._m1 if i == 1 else self._m2
        stable = _lex_stable_subset(gi, y_i, a)
        assert stable is not None  # alpha(y_i) >= beta_{a+1} > a
        part1 = part2 = 0
        inter = mask
        for v in bits(stable):
            w1, w2 = self.cover_witness(mi[v] & mask, betas[a])
            part1 |= w1
            part2 |= w2
            sub = mask & ~(self.union.adj(v) | (1 << v))
            c1, c2 = self.cover(sub, q - 1)
            part1 |= c1 | (1 << v)  # v itself is anticomplete to sub
            part2 |= c2
            inter &= gi.adj(v)
        # the common-neighborhood block has small independence in G_i,
        # else a complete bipartite pattern contradicts the hypothesis
        block = _lex_stable_subset(gi, inter, a)
        if block is not None:
            raise HypothesisViolation(
                f"K_{{{a},{a}}} in graph {i}",
                witness=(sorted(bits(stable)), sorted(bits(block))))
        if i == 1:
            part1 |= inter
        else:
            part2 |= inter
        assert part1 | part2 == mask
        assert _alpha_mask(self.g1, part1) < betas[a + 1]
        assert _alpha_mask(self.g2, part2) < betas[a + 1]
        return part1, part2


def _lex_stable_subset(g: Graph, mask: int, size: int) -> int | None:
    """Lexicographically least stable set of exactly `size` vertices
    within mask, or None."""
    if size == 0:
        return 0
    if _alpha_mask(g, mask) < size:
        return None
    for v in bits(mask):
        rest = mask & ~(g.adj(v) | (1 << v))
        sub = _lex_stable_subset(g, rest, size - 1)
        if sub is not None:
            return sub | (1 << v)
    return None


def _check_kaa_free(g: Graph, a: int, which: str) -> None:
    emb = contains_induced(g, Graph.complete_bipartite(a, a))
    if emb is not None:
        raise HypothesisViolation(
            f"{which} contains an induced K_{{{a},{a}}}", witness=emb)


def cover_two(pair: SharedVertexGraphs, a: int, q: int, *,
              check_hypotheses: bool = True,
              trace: list[ChainWitness] | None = None) -> CoverWitness:
    """Cover the shared vertex set of two K_{a,a}-free graphs whose
    union has independence number below q; each part's independence
    number in its own graph stays strictly below (2a)^(a(q-1)).

    The recursion effectively runs at min(q, alpha(union)+1); the
    reported bound is for the requested q (the bound is monotone).
    With check_hypotheses=False the upfront scans are skipped and
    violations surface from inside the cascade instead.
    """
    if pair.b != 2:
        raise ValueError("cover_two needs exactly two graphs")
    if a < 1 or q < 1:
        raise ValueError("a and q must be positive")
    g1, g2 = pair.graphs
    union = pair.union()
    alpha_u = _alpha_mask(union, union.full_mask)
    if check_hypotheses:
        _check_kaa_free(g1, a, "first graph")
        _check_kaa_free(g2, a, "second graph")
        if alpha_u >= q:
            raise HypothesisViolation(
                f"union independence number {alpha_u} not below q={q}")
    engine = _TwoCover(g1, g2, a, trace=trace)
    q_eff = min(q, alpha_u + 1)
    if q_eff == 1:
        if g1.n:
            raise HypothesisViolation("q=1 demands an empty vertex set")
        parts = (frozenset(), frozenset())
        return CoverWitness(parts, (0, 0), bounds.twograph_bound(a, q))
    p1, p2 = engine.cover(g1.full_mask, q_eff)
    w = CoverWitness((set_of(p1), set_of(p2)),
                     (_alpha_mask(g1, p1), _alpha_mask(g2, p2)),
                     bounds.twograph_bound(a, q))
    assert w.parts[0] | w.parts[1] == frozenset(range(g1.n))
    assert all(x < w.bound for x in w.alphas)
    return w


def cover_many(shared: SharedVertexGraphs, a: int, q: int, *,
               check_hypotheses: bool = True,
               kfree_check_cap: int = 3) -> CoverWitness:
    """Cover the shared vertex set of b K_{a,a}-free graphs, peeling
    G_1 against the union of the rest with an inflated bipartite
    parameter, then recursing on the second part.

    The inner free-ness claim for the peeled union is only verified
    while the inflated parameter stays within kfree_check_cap; beyond
    that it is skipped with a log note (correctness is checked on the
    outputs either way)."""
    if a < 1 or q < 1:
        raise ValueError("a and q must be positive")
    graphs = shared.graphs
    union = shared.union()
    alpha_u = _alpha_mask(union, union.full_mask)
    if check_hypotheses:
        for k, g in enumerate(graphs):
            _check_kaa_free(g, a, f"graph {k + 1}")
        if alpha_u >= q:
            raise HypothesisViolation(
                f"union independence number {alpha_u} not below q={q}")

    def rec(gs: tuple[Graph, ...], mask: int, q_here: int) -> list[int]:
        if len(gs) == 1:
            assert _alpha_mask(gs[0], mask) < q_here
            return [mask]
        gamma = product_threshold(len(gs) - 1, 2, a)
        rest_union = gs[1]
        for h in gs[2:]:
            rest_union = rest_union.union(h)
        if gamma <= kfree_check_cap:
            _check_kaa_free(rest_union, gamma, "peeled union")
        else:
            log.info("skipping K_{%d,%d}-freeness check of the peeled union "
                     "(cap %d)", gamma, gamma, kfree_check_cap)
        engine = _TwoCover(gs[0], rest_union, gamma)
        u_here = gs[0].union(rest_union)
        q_eff = min(q_here, _alpha_mask(u_here, mask) + 1)
        if q_eff == 1:
            assert mask == 0
            return [0] * len(gs)
        p1, p_rest = engine.cover(mask, q_eff)
        next_union = rest_union
        q_next = _alpha_mask(next_union, p_rest) + 1
        return [p1] + rec(gs[1:], p_rest, q_next)

    masks = rec(graphs, union.full_mask, min(q, alpha_u + 1))
    parts = tuple(set_of(m) for m in masks)
    alphas = tuple(_alpha_mask(g, m) for g, m in zip(graphs, masks))
    covered = frozenset().union(*parts) if parts else frozenset()
    assert covered == frozenset(range(shared.n))
    try:
        bound = bounds.f(a, shared.b, q)
    except CapExceeded:
        bound = None
    if bound is not None:
        assert all(x <= bound for x in alphas)
    return CoverWitness(parts, alphas, bound)


def optimal_cover_oracle(shared: SharedVertexGraphs, *, n_cap: int = 12,
                         b_cap: int = 3) -> CoverWitness:
    """Exhaustive minimiser of max_i alpha(G_i[V_i]) over all covers.

    Independent verification oracle: optimal parts may be assumed to
    partition V (shrinking a part never raises its independence
    number), so assignments are enumerated directly."""
    if shared.n > n_cap:
        raise CapExceeded(f"oracle capped at n <= {n_cap}")
    if shared.b > b_cap:
        raise CapExceeded(f"oracle capped at b <= {b_cap}")
    graphs = shared.graphs
    n, b = shared.n, shared.b
    best = None
    for assign in product(range(b), repeat=n):
        masks = [0] * b
        for v, part in enumerate(assign):
            masks[part] |= 1 << v
        val = max(_alpha_mask(graphs[i], masks[i]) for i in range(b))
        if best is None or val < best[0]:
            best = (val, tuple(masks))
    val, masks = best
    return CoverWitness(tuple(set_of(m) for m in masks),
                        tuple(_alpha_mask(graphs[i], masks[i]) for i in range(b)),
                        None)
