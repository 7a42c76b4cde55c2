"""Tree decompositions measured by bag independence number: validation,
exact tree-alpha, exact treewidth (same engine, different measure),
normal weight functions, balanced separators, separator domination,
dominant-set systems, the packing reduction, and the recursive
separator-to-decomposition constructions.

Exact tree-alpha enumerates vertex elimination orderings through a
memoised DP over eliminated subsets: after eliminating a set E, the bag
of v is {v} plus the neighborhood of the E-component reachable from v,
which is independent of the order within E. Every ordering induces a
valid decomposition whose bags are these elimination bags (so the DP
value is an upper bound), some optimal decomposition is a clique tree
of a minimal chordal completion, every minimal completion is the fill-in
of some ordering, and for that ordering each elimination bag sits inside
a maximal clique of the completion (so the DP value is also a lower
bound). An independent cross-check oracle lives in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .errors import CapExceeded, ContractBreach, FormatError, HypothesisViolation
from .graphs import (Graph, _alpha_mask, _component_masks, alpha, bits,
                     mask_of, set_of)
from .patterns import MULTICLAW_COMPONENTS, PatternSpec, contains_induced, realize, subdivide
from .systems import BSystem, min_alpha_hitting_set, path_hitting_set

# -- tree decompositions -------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree plus one bag per node over a host graph."""

    host: Graph
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]

    def num_nodes(self) -> int:
        return len(self.bags)

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def to_text(self) -> str:
        lines = [f"td {len(self.bags)} {self.host.n}"]
        for i, bag in enumerate(self.bags):
            lines.append("bag " + " ".join([str(i)] + [str(v) for v in sorted(bag)]))
        lines += [f"edge {i} {j}" for i, j in self.tree_edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, host: Graph, text: str) -> "TreeDecomposition":
        bags: dict[int, frozenset] = {}
        edges = []
        count = None
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            parts = ln.split()
            try:
                if parts[0] == "td":
                    count = int(parts[1])
                elif parts[0] == "bag":
                    bags[int(parts[1])] = frozenset(int(v) for v in parts[2:])
                elif parts[0] == "edge":
                    edges.append((int(parts[1]), int(parts[2])))
                else:
                    raise FormatError(f"unknown line {ln!r}")
            except (IndexError, ValueError) as exc:
                raise FormatError(f"bad decomposition line: {ln!r}") from exc
        if count is None or set(bags) != set(range(count)):
            raise FormatError("node list does not match the declared count")
        return cls(host, tuple(bags[i] for i in range(count)), tuple(edges))


def validate(td: TreeDecomposition) -> tuple[bool, list[str]]:
    """Check the three decomposition axioms plus tree-shape; returns
    (ok, violation descriptions)."""
    g = td.host
    k = len(td.bags)
    problems = []
    if k == 0:
        return False, ["decomposition has no nodes"]
    adj = {i: set() for i in range(k)}
    for i, j in td.tree_edges:
        if not (0 <= i < k and 0 <= j < k):
            return False, [f"tree edge ({i},{j}) out of range"]
        adj[i].add(j)
        adj[j].add(i)
    if len(td.tree_edges) != k - 1:
        problems.append(f"{len(td.tree_edges)} tree edges for {k} nodes")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != k:
        problems.append("tree is disconnected")
    if problems:
        return False, problems
    covered = frozenset().union(*td.bags) if td.bags else frozenset()
    for v in range(g.n):
        if v not in covered:
            problems.append(f"vertex {v} in no bag")
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in td.bags):
            problems.append(f"edge ({u},{v}) in no bag")
    for v in range(g.n):
        nodes = {i for i, bag in enumerate(td.bags) if v in bag}
        if not nodes:
            continue
        start = next(iter(nodes))
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodes and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != nodes:
            problems.append(f"bags containing vertex {v} are not connected")
    return not problems, problems


def decomposition_alpha(td: TreeDecomposition) -> int:
    """Largest independence number of a bag's induced subgraph."""
    ok, problems = validate(td)
    if not ok:
        raise ValueError("invalid tree decomposition: " + "; ".join(problems))
    return max((alpha(td.host, bag) for bag in td.bags), default=0)


# -- exact tree-alpha via elimination orderings ---------------------------


def _elimination_bag(g: Graph, v: int, eliminated: int) -> int:
    reach = 1 << v
    frontier = reach
    while frontier:
        grow = 0
        for u in bits(frontier):
            grow |= g.adj(u)
        grow &= eliminated & ~reach
        reach |= grow
        frontier = grow
    nb = 0
    for u in bits(reach):
        nb |= g.adj(u)
    return (1 << v) | (nb & ~eliminated & ~(1 << v) & ~reach)


def _elimination_dp(g: Graph, measure: Callable[[int], int]) -> tuple[int, list[int]]:
    full = g.full_mask
    memo: dict[int, int] = {full: 0}

    def best(eliminated: int) -> int:
        got = memo.get(eliminated)
        if got is not None:
            return got
        out = None
        for v in bits(full & ~eliminated):
            cost = max(measure(_elimination_bag(g, v, eliminated)),
                       best(eliminated | (1 << v)))
            if out is None or cost < out:
                out = cost
        memo[eliminated] = out
        return out

    value = best(0)
    order = []
    eliminated = 0
    while eliminated != full:
        for v in bits(full & ~eliminated):
            cost = max(measure(_elimination_bag(g, v, eliminated)),
                       best(eliminated | (1 << v)))
            if cost <= value:
                order.append(v)
                eliminated |= 1 << v
                break
        else:  # pragma: no cover - impossible if the DP is correct
            raise AssertionError("ordering reconstruction failed")
    return value, order


def _decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    n = g.n
    if n == 0:
        return TreeDecomposition(g, (frozenset(),), ())
    position = {v: k for k, v in enumerate(order)}
    bag_masks = []
    eliminated = 0
    for v in order:
        bag_masks.append(_elimination_bag(g, v, eliminated))
        eliminated |= 1 << v
    edges = []
    for k, bm in enumerate(bag_masks[:-1]):
        later = [position[u] for u in bits(bm) if u != order[k]]
        parent = min(later) if later else k + 1
        edges.append((k, parent))
    return TreeDecomposition(g, tuple(set_of(b) for b in bag_masks), tuple(edges))


def exact_tree_alpha(g: Graph, cap: int = 9) -> tuple[int, TreeDecomposition]:
    """Exact tree independence number with an optimal decomposition."""
    if g.n > cap:
        raise CapExceeded(f"exact tree-alpha capped at n <= {cap}")
    value, order = _elimination_dp(g, lambda bag: _alpha_mask(g, bag))
    td = _decomposition_from_order(g, order)
    ok, problems = validate(td)
    assert ok, problems
    assert decomposition_alpha(td) == value
    return value, td


def exact_treewidth(g: Graph, cap: int = 12) -> tuple[int, TreeDecomposition]:
    """Exact treewidth from the same elimination engine."""
    if g.n > cap:
        raise CapExceeded(f"exact treewidth capped at n <= {cap}")
    if g.n == 0:
        return 0, _decomposition_from_order(g, [])
    value, order = _elimination_dp(g, lambda bag: bag.bit_count() - 1)
    td = _decomposition_from_order(g, order)
    ok, problems = validate(td)
    assert ok, problems
    assert td.width() == value
    return value, td


# -- normal weight functions ----------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """Rational vertex weights, nonnegative and summing to exactly 1."""

    weights: Mapping[int, Fraction]

    def __post_init__(self):
        total = Fraction(0)
        for v, x in self.weights.items():
            if x < 0:
                raise ValueError(f"negative weight at vertex {v}")
            total += x
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")

    @classmethod
    def uniform(cls, vertices: Iterable[int]) -> "WeightFunction":
        verts = sorted(set(vertices))
        if not verts:
            raise ValueError("cannot spread weight over nothing")
        share = Fraction(1, len(verts))
        return cls({v: share for v in verts})

    def value(self, v: int) -> Fraction:
        return self.weights.get(v, Fraction(0))

    def weight_of(self, vertices) -> Fraction:
        if isinstance(vertices, int):
            vertices = bits(vertices)
        return sum((self.value(v) for v in vertices), Fraction(0))

    def renormalized(self, vertices: Iterable[int]) -> "WeightFunction":
        """Restriction to `vertices`, scaled back to total 1."""
        keep = set(vertices)
        total = self.weight_of(keep)
        if total == 0:
            raise ValueError("restriction carries no weight")
        return WeightFunction({v: self.weights[v] / total
                               for v in keep if self.value(v) > 0})

    def integerized(self) -> tuple[dict[int, int], int]:
        """(numerators, common denominator) for fast comparisons."""
        den = math.lcm(*(x.denominator for x in self.weights.values()), 1)
        return {v: int(x * den) for v, x in self.weights.items() if x > 0}, den


def parse_weights(text: str, n: int) -> list[Fraction]:
    """One rational per line (p/q or integer), n lines."""
    vals = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        try:
            vals.append(Fraction(ln))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad weight line: {ln!r}") from exc
    if len(vals) != n:
        raise FormatError(f"{len(vals)} weights for {n} vertices")
    return vals


# -- balanced separators ----------------------------------------------------


def _balanced_mask(g: Graph, region: int, removed: int,
                   nums: dict[int, int], den: int) -> bool:
    for comp in _component_masks(g, region & ~removed):
        s = 0
        for v in bits(comp):
            s += nums.get(v, 0)
        if 2 * s > den:
            return False
    return True


def is_balanced_separator(g: Graph, w: WeightFunction, z,
                          region: Iterable[int] | int | None = None) -> bool:
    """Exact rational check: every component of (the region of) g minus
    z weighs at most 1/2. Weight exactly 1/2 counts as balanced."""
    region_mask = g.full_mask if region is None else (
        region if isinstance(region, int) else mask_of(region))
    z_mask = z if isinstance(z, int) else mask_of(z)
    nums, den = w.integerized()
    return _balanced_mask(g, region_mask, z_mask, nums, den)


def separator_dominated_search(g: Graph, w: WeightFunction, b: int,
                               region: Iterable[int] | int | None = None) -> frozenset | None:
    """Smallest X (|X| <= b, lexicographic ties) whose closed
    neighborhood within the region is a balanced separator there."""
    region_mask = g.full_mask if region is None else (
        region if isinstance(region, int) else mask_of(region))
    nums, den = w.integerized()
    verts = list(bits(region_mask))
    for size in range(0, b + 1):
        for combo in combinations(verts, size):
            x = mask_of(combo)
            closed = (g.closed_neighborhood_mask(x) | x) & region_mask
            if _balanced_mask(g, region_mask, closed, nums, den):
                return frozenset(combo)
    return None


def _dominant_sets(g: Graph, w: WeightFunction, b: int, c: int,
                   region_mask: int) -> dict[frozenset, frozenset]:
    """All S with 1 <= |S| <= b that are dominant within the region:
    some X with alpha(G[X]) <= c makes N[S] ∪ X a balanced separator.
    Maps each dominant S to its lexicographically first witness X."""
    nums, den = w.integerized()
    verts = list(bits(region_mask))
    alpha_ok = [0] + [x for x in _submasks_ascending(region_mask)
                      if x and _alpha_mask(g, x) <= c]
    out: dict[frozenset, frozenset] = {}
    for size in range(1, b + 1):
        for combo in combinations(verts, size):
            s_mask = mask_of(combo)
            closed = (g.closed_neighborhood_mask(s_mask) | s_mask) & region_mask
            for x in alpha_ok:
                if x & closed:
                    continue  # redundant: already removed with N[S]
                if _balanced_mask(g, region_mask, closed | x, nums, den):
                    out[frozenset(combo)] = set_of(x)
                    break
    return out


def _submasks_ascending(mask: int) -> list[int]:
    verts = list(bits(mask))
    out = []
    for size in range(len(verts) + 1):
        out += [mask_of(c) for c in combinations(verts, size)]
    return out


def dominant_set_system(g: Graph, w: WeightFunction, b: int, c: int,
                        region: Iterable[int] | int | None = None,
                        n_cap: int = 16) -> BSystem:
    """The b-system of all dominant sets for the weight function."""
    region_mask = g.full_mask if region is None else (
        region if isinstance(region, int) else mask_of(region))
    if region_mask.bit_count() > n_cap:
        raise CapExceeded(f"dominant-set scan capped at {n_cap} region vertices")
    found = _dominant_sets(g, w, b, c, region_mask)
    return BSystem(g, tuple(sorted(found, key=lambda m: (len(m), sorted(m)))), b)


# -- packing reduction -------------------------------------------------------


def fplus_packing_reduction(g: Graph, F: PatternSpec, W: PatternSpec,
                            w: WeightFunction, b73: int) -> frozenset:
    """Greedy anticomplete packing of subdivided claws, then a
    separator-domination search on the untouched remainder; returns X
    with N[X] balanced and |X| <= 3r^2 + b73.

    The wall pattern W only documents where b73 comes from; the inner
    search is exhaustive and does not use its structure."""
    f_graph = realize(F)
    r = f_graph.n
    emb = contains_induced(g, f_graph)
    if emb is not None:
        raise HypothesisViolation("host is not free of the forbidden pattern",
                                  witness=emb)
    fplus = subdivide(MULTICLAW_COMPONENTS["K13"], r - 1)
    copies = []
    available = g.full_mask
    while True:
        sub, back = g.induced(set_of(available))
        inner = contains_induced(sub, fplus)
        if inner is None:
            break
        copy_mask = mask_of(back[v] for v in inner.values())
        copies.append(copy_mask)
        available &= ~(g.closed_neighborhood_mask(copy_mask) | copy_mask)
    assert len(copies) <= r - 1, "packing exceeds the pattern-freeness bound"
    u_mask = 0
    for m in copies:
        u_mask |= m
    closed_u = (g.closed_neighborhood_mask(u_mask) | u_mask) if u_mask else 0
    remainder = g.full_mask & ~closed_u
    if w.weight_of(remainder) == 0:
        x_mask = u_mask
    else:
        w0 = w.renormalized(set_of(remainder))
        s0 = separator_dominated_search(g, w0, b73, region=remainder)
        if s0 is None:
            raise HypothesisViolation(
                "remainder is not separator-dominated within the stated bound",
                witness=(set_of(remainder), w0))
        x_mask = u_mask | mask_of(s0)
    closed_x = (g.closed_neighborhood_mask(x_mask) | x_mask) if x_mask else 0
    if not is_balanced_separator(g, w, closed_x):
        raise AssertionError("assembled neighborhood fails the balance check")
    assert x_mask.bit_count() <= 3 * r * r + b73
    return set_of(x_mask)


# -- separator-driven decomposition construction -----------------------------

SeparatorOracle = Callable[[Graph, frozenset, WeightFunction], Iterable[int]]


def build_decomposition(g: Graph, sep_oracle: SeparatorOracle, d: int) -> TreeDecomposition:
    """Recursive construction from a balanced-separator oracle.

    The oracle receives (host graph, region, normal weight function on
    the region) and must return a separator inside the region that is
    balanced there with independence number at most d; anything else
    raises ContractBreach. Weights are uniform on the boundary of the
    active part, retried uniform on the active part itself whenever the
    split makes no progress. The measure of the result is asserted to
    stay within 5d."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    bags: list[frozenset] = []
    edges: list[tuple[int, int]] = []

    def query(h_mask: int, w: WeightFunction) -> int:
        z = frozenset(sep_oracle(g, set_of(h_mask), w))
        z_mask = mask_of(z)
        if z_mask & ~h_mask:
            raise ContractBreach("separator leaves the queried region")
        if _alpha_mask(g, z_mask) > d:
            raise ContractBreach(
                f"separator independence {_alpha_mask(g, z_mask)} exceeds d={d}")
        if not is_balanced_separator(g, w, z_mask, region=h_mask):
            raise ContractBreach("separator is not balanced for the queried weights")
        return z_mask

    def emit(bag_mask: int) -> int:
        bags.append(set_of(bag_mask))
        return len(bags) - 1

    def rec(a_mask: int, b_mask: int) -> int:
        h_mask = a_mask | b_mask
        if a_mask == 0 or _alpha_mask(g, h_mask) <= 5 * d:
            return emit(h_mask)
        w = WeightFunction.uniform(set_of(b_mask if b_mask else a_mask))
        z_mask = query(h_mask, w)
        bag = b_mask | z_mask
        comps = _component_masks(g, h_mask & ~bag)
        if len(comps) == 1 and comps[0] == a_mask:
            boundary = _boundary(comps[0], bag)
            if boundary == b_mask:
                # no progress; force a split of the active part
                w = WeightFunction.uniform(set_of(a_mask))
                z_mask = query(h_mask, w)
                bag = b_mask | z_mask
                comps = _component_masks(g, h_mask & ~bag)
                assert all(c.bit_count() <= a_mask.bit_count() // 2 for c in comps)
        node = emit(bag)
        for comp in comps:
            child = rec(comp, _boundary(comp, bag))
            edges.append((node, child))
        return node

    def _boundary(comp_mask: int, bag_mask: int) -> int:
        nb = 0
        for v in bits(comp_mask):
            nb |= g.adj(v)
        return nb & bag_mask

    rec(g.full_mask, 0)
    td = TreeDecomposition(g, tuple(bags), tuple(edges))
    ok, problems = validate(td)
    assert ok, problems
    measure = decomposition_alpha(td)
    assert measure <= 5 * d, f"measure {measure} exceeds 5d = {5 * d}"
    return td


# -- the full pipeline --------------------------------------------------------


def ta_pipeline(g: Graph, b: int, c: int, d: int, n_cap: int = 12) -> TreeDecomposition:
    """Decomposition with measure at most 10c + 5d via dominant-set
    systems and loose separability, hypothesis failures reported with
    the offending subgraph or weights.

    For each weight function demanded by the recursive construction,
    the separator is either a low-independence hitting set of the
    dominant-set system (necessarily balanced when separator domination
    holds) or the union of two dominance witnesses and a path-hitting
    set between an anticomplete pair of dominant sets."""
    if g.n > n_cap:
        raise CapExceeded(f"pipeline capped at n <= {n_cap}")

    def oracle(host: Graph, region: frozenset, w: WeightFunction) -> frozenset:
        region_mask = mask_of(region)
        nums, den = w.integerized()
        dom = _dominant_sets(host, w, b, c, region_mask)
        sys = BSystem(host, tuple(sorted(dom, key=lambda m: (len(m), sorted(m)))),
                      b)
        x0, aval = min_alpha_hitting_set(sys)
        if aval <= c:
            x0_mask = mask_of(x0)
            if _balanced_mask(host, region_mask, x0_mask, nums, den):
                return x0
            rest = region_mask & ~x0_mask
            w0 = w.renormalized(set_of(rest))
            s0 = separator_dominated_search(host, w0, b, region=rest)
            if s0 is not None:
                raise AssertionError(
                    "dominant-set system missed a dominant set; "
                    "internal inconsistency")
            raise HypothesisViolation(
                "region minus the hitting set is not separator-dominated",
                witness=(set_of(rest), w0))
        for s1, s2 in combinations(sys.members, 2):
            y = path_hitting_set(host, s1, s2, d, strict=False,
                                 region=region_mask)
            if y is None:
                continue
            z = mask_of(dom[s1]) | mask_of(dom[s2]) | mask_of(y)
            assert _alpha_mask(host, z) <= 2 * c + d
            if not _balanced_mask(host, region_mask, z, nums, den):
                raise AssertionError("assembled separator fails the balance "
                                     "check; internal inconsistency")
            return set_of(z)
        raise HypothesisViolation(
            "dominant-set system is not loosely separable at (b, c, d)",
            witness=sys)

    td = build_decomposition(g, oracle, 2 * c + d)
    assert decomposition_alpha(td) <= 10 * c + 5 * d
    return td
