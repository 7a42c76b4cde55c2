"""Maximum weight independent set, exactly: a brute-force oracle and a
dynamic program over a tree decomposition whose per-bag states are the
independent subsets of the bag (nice-form refinement built internally,
join states merged by identical bag subsets). All weights are exact
rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .decomp import TreeDecomposition, decomposition_alpha
from .errors import CapExceeded
from .graphs import Graph, bits, mask_of, set_of


def _as_fractions(weights, n: int) -> list[Fraction]:
    vals = [Fraction(x) for x in weights]
    if len(vals) != n:
        raise ValueError(f"{len(vals)} weights for {n} vertices")
    if any(x < 0 for x in vals):
        raise ValueError("weights must be nonnegative")
    return vals


def mwis_bruteforce(g: Graph, weights: Sequence, cap: int = 20) -> tuple[Fraction, frozenset]:
    """Exhaustive optimum over all independent sets (n <= cap)."""
    if g.n > cap:
        raise CapExceeded(f"brute force capped at n <= {cap}")
    w = _as_fractions(weights, g.n)
    indep = [False] * (1 << g.n)
    indep[0] = True
    best = (Fraction(0), 0)
    for mask in range(1, 1 << g.n):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if indep[rest] and not g.adj(v) & rest:
            indep[mask] = True
            value = sum((w[u] for u in bits(mask)), Fraction(0))
            if value > best[0]:
                best = (value, mask)
    return best[0], set_of(best[1])


# -- nice-form refinement ---------------------------------------------------


@dataclass
class _Nice:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: int
    vertex: int = -1
    left: "_Nice | None" = None
    right: "_Nice | None" = None


def _chain(from_bag: int, to_bag: int, below: _Nice) -> _Nice:
    """Forget down to the intersection, then introduce up to to_bag."""
    node = below
    cur = from_bag
    for v in bits(from_bag & ~to_bag):
        cur &= ~(1 << v)
        node = _Nice("forget", cur, vertex=v, left=node)
    for v in bits(to_bag & ~from_bag):
        cur |= 1 << v
        node = _Nice("introduce", cur, vertex=v, left=node)
    return node


def _build_nice(td: TreeDecomposition, node: int, parent: int,
                adj: dict[int, list[int]]) -> _Nice:
    bag = mask_of(td.bags[node])
    pipes = []
    for child in adj[node]:
        if child == parent:
            continue
        sub = _build_nice(td, child, node, adj)
        pipes.append(_chain(mask_of(td.bags[child]), bag, sub))
    if not pipes:
        return _chain(0, bag, _Nice("leaf", 0))
    out = pipes[0]
    for other in pipes[1:]:
        out = _Nice("join", bag, left=out, right=other)
    return out


def mwis_over_decomposition(g: Graph, weights: Sequence,
                            td: TreeDecomposition) -> tuple[Fraction, frozenset]:
    """Exact optimum by DP over the decomposition; the returned set is
    re-verified independent and weight-consistent.

    Per-bag state counts are asserted against sum_{i<=k} C(|bag|, i)
    where k is the decomposition's independence measure."""
    if td.host is not g and td.host != g:
        raise ValueError("decomposition belongs to a different graph")
    k = decomposition_alpha(td)  # validates the decomposition
    w = _as_fractions(weights, g.n)
    adj: dict[int, list[int]] = {i: [] for i in range(len(td.bags))}
    for i, j in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    root = _build_nice(td, 0, -1, adj)

    def state_cap(bag: int) -> int:
        size = bag.bit_count()
        return sum(math.comb(size, i) for i in range(min(size, k) + 1))

    def run(node: _Nice) -> dict[int, tuple[Fraction, int]]:
        if node.kind == "leaf":
            return {0: (Fraction(0), 0)}
        if node.kind == "join":
            left = run(node.left)
            right = run(node.right)
            out = {}
            for s, (lw, lset) in left.items():
                got = right.get(s)
                if got is None:
                    continue
                shared = sum((w[u] for u in bits(s)), Fraction(0))
                out[s] = (lw + got[0] - shared, lset | got[1])
            assert len(out) <= state_cap(node.bag)
            return out
        table = run(node.left)
        v = node.vertex
        out: dict[int, tuple[Fraction, int]] = {}
        if node.kind == "introduce":
            for s, (wt, chosen) in table.items():
                out[s] = (wt, chosen)
                if not g.adj(v) & s:
                    out[s | (1 << v)] = (wt + w[v], chosen | (1 << v))
        else:  # forget
            for s, (wt, chosen) in table.items():
                key = s & ~(1 << v)
                cur = out.get(key)
                if cur is None or wt > cur[0]:
                    out[key] = (wt, chosen)
        assert len(out) <= state_cap(node.bag)
        return out

    final = run(root)
    value, chosen = max(final.values(), key=lambda t: t[0])
    chosen_set = set_of(chosen)
    for u in chosen_set:
        if g.adj(u) & chosen:
            raise AssertionError("solver returned a dependent set")
    if sum((w[u] for u in chosen_set), Fraction(0)) != value:
        raise AssertionError("witness weight mismatch")
    return value, chosen_set


def greedy_fill_decomposition(g: Graph) -> TreeDecomposition:
    """Valid (not necessarily optimal) decomposition from a min-fill
    elimination ordering; useful when the exact oracle is over cap."""
    from .decomp import _decomposition_from_order, _elimination_bag, validate

    remaining = list(range(g.n))
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    order = []
    while remaining:
        def fill_cost(v: int) -> tuple[int, int]:
            nbrs = [u for u in adj[v] if u in adj]
            missing = sum(1 for a, b in
                          ((x, y) for i, x in enumerate(nbrs) for y in nbrs[i + 1:])
                          if b not in adj[a])
            return missing, v

        v = min(remaining, key=fill_cost)
        nbrs = [u for u in adj[v] if u in adj]
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                adj[x].add(y)
                adj[y].add(x)
        for u in nbrs:
            adj[u].discard(v)
        del adj[v]
        remaining.remove(v)
        order.append(v)
    td = _decomposition_from_order(g, order)
    ok, problems = validate(td)
    assert ok, problems
    return td
