"""Pattern families (complete bipartite graphs, multistars, multiclaws,
walls, their subdivisions and line graphs) and exact induced-subgraph
detection against them.

Pattern text grammar (parse_pattern):

    Kaa:<a>                      complete bipartite K_{a,a}
    Kbip:<p>,<q>                 complete bipartite K_{p,q}
    multistar:<d1>,<d2>,...      one star K_{1,di} per entry (di >= 0)
    multiclaw:<C1>,<C2>,...      components from {K1, K2, P3, K13}
    wall:<r>x<c>                 hexagonal wall with r x c cells

    optional suffix  @sub=<r>          uniform exact-r subdivision
                     @sub=<c1>,...     per-edge extra-vertex counts
                     @sub<=<r>         at-most-r rule (families only)
                     @sub=proper | @sub=pure

Per-edge counts follow the lexicographic edge order of the realized
base graph. Family rules (at-most / proper / pure) describe detection
families and cannot be realized into a single graph.

Wall convention: an r x c wall is r+1 horizontal paths of 2c+2 vertices
with rungs between rows i and i+1 at even columns for even i and odd
columns for odd i, followed by trimming the two degree-1 corners; so it
has (r+1)(2c+2) - 2 vertices. The 1x1 wall is a single hexagon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import FormatError
from .graphs import Graph, bits, mask_of

MULTICLAW_COMPONENTS = {
    "K1": Graph(1),
    "K2": Graph(2, [(0, 1)]),
    "P3": Graph.path(3),
    "K13": Graph(4, [(0, 1), (0, 2), (0, 3)]),
}


@dataclass(frozen=True)
class PatternSpec:
    """A pattern family: a base kind plus an optional subdivision rule.

    kind: "complete_bipartite" (params (p, q)), "multistar" (degree
    tuple), "multiclaw" (component-name tuple), or "wall" ((rows, cols)).
    subdivision: None, ("exact", r), ("counts", (c1, ...)),
    ("at_most", r), ("proper",) or ("pure",).
    """

    kind: str
    params: tuple
    subdivision: tuple | None = None

    def describe(self) -> str:
        base = {
            "complete_bipartite": f"K_{{{self.params[0]},{self.params[1]}}}",
            "multistar": "multistar(" + ",".join(map(str, self.params)) + ")",
            "multiclaw": "multiclaw(" + ",".join(self.params) + ")",
            "wall": f"{self.params[0]}x{self.params[1]} wall",
        }[self.kind]
        if self.subdivision is None:
            return base
        return f"{base} @sub={self.subdivision}"


def parse_pattern(text: str) -> PatternSpec:
    """Parse the compact pattern syntax; see the module docstring."""
    body, sub = text, None
    if "@sub" in text:
        body, _, tail = text.partition("@sub")
        sub = _parse_subdivision(tail)
    if ":" not in body:
        raise FormatError(f"pattern {text!r} missing ':'")
    head, _, args = body.partition(":")
    head = head.strip()
    args = args.strip()
    try:
        if head == "Kaa":
            a = int(args)
            return PatternSpec("complete_bipartite", (a, a), sub)
        if head == "Kbip":
            p, q = (int(x) for x in args.split(","))
            return PatternSpec("complete_bipartite", (p, q), sub)
        if head == "multistar":
            degrees = tuple(int(x) for x in args.split(","))
            return PatternSpec("multistar", degrees, sub)
        if head == "multiclaw":
            comps = tuple(x.strip() for x in args.split(","))
            for c in comps:
                if c not in MULTICLAW_COMPONENTS:
                    raise FormatError(f"unknown multiclaw component {c!r}")
            return PatternSpec("multiclaw", comps, sub)
        if head == "wall":
            r, c = (int(x) for x in args.lower().split("x"))
            return PatternSpec("wall", (r, c), sub)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"bad pattern arguments in {text!r}") from exc
    raise FormatError(f"unknown pattern kind {head!r}")


def _parse_subdivision(tail: str) -> tuple:
    if tail.startswith("<="):
        try:
            return ("at_most", int(tail[2:]))
        except ValueError as exc:
            raise FormatError(f"bad subdivision bound {tail!r}") from exc
    if not tail.startswith("="):
        raise FormatError(f"bad subdivision suffix {tail!r}")
    val = tail[1:]
    if val == "proper":
        return ("proper",)
    if val == "pure":
        return ("pure",)
    try:
        counts = tuple(int(x) for x in val.split(","))
    except ValueError as exc:
        raise FormatError(f"bad subdivision counts {val!r}") from exc
    if any(c < 0 for c in counts):
        raise FormatError("subdivision counts must be nonnegative")
    if len(counts) == 1:
        return ("exact", counts[0])
    return ("counts", counts)


# -- realization --------------------------------------------------------


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph(offset, edges)


def subdivide(g: Graph, counts) -> Graph:
    """Replace each edge by a path, inserting counts[e] extra vertices.

    `counts` is an int (uniform) or a sequence aligned with g.edges()
    in lexicographic order. New vertices are appended after the
    originals, edge by edge.
    """
    edge_list = g.edges()
    if isinstance(counts, int):
        counts = [counts] * len(edge_list)
    counts = list(counts)
    if len(counts) != len(edge_list):
        raise ValueError(f"{len(edge_list)} edges but {len(counts)} subdivision counts")
    if any(c < 0 for c in counts):
        raise ValueError("subdivision counts must be nonnegative")
    edges = []
    nxt = g.n
    for (u, v), extra in zip(edge_list, counts):
        chain = [u] + list(range(nxt, nxt + extra)) + [v]
        nxt += extra
        edges += list(zip(chain, chain[1:]))
    return Graph(nxt, edges)


def wall(rows: int, cols: int) -> Graph:
    """Hexagonal wall with rows x cols cells; see module docstring."""
    if rows < 1 or cols < 1:
        raise ValueError("wall needs at least 1x1 cells")
    width = 2 * cols + 2
    idx = lambda i, j: i * width + j
    edges = []
    for i in range(rows + 1):
        edges += [(idx(i, j), idx(i, j + 1)) for j in range(width - 1)]
    for i in range(rows):
        start = 0 if i % 2 == 0 else 1
        edges += [(idx(i, j), idx(i + 1, j)) for j in range(start, width, 2)]
    g = Graph((rows + 1) * width, edges)
    # trim degree-1 corners until stable (exactly two for this layout)
    keep = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in sorted(keep):
            if sum(1 for w in bits(g.adj(v)) if w in keep) <= 1:
                keep.discard(v)
                changed = True
    h, _ = g.induced(keep)
    return h


def wall_vertex_count(rows: int, cols: int) -> int:
    return (rows + 1) * (2 * cols + 2) - 2


def realize(spec: PatternSpec) -> Graph:
    """Concrete graph for the spec. Family subdivision rules (at-most,
    proper, pure) and subdivisions of edgeless kinds are rejected."""
    if spec.kind == "complete_bipartite":
        base = Graph.complete_bipartite(*spec.params)
    elif spec.kind == "multistar":
        if any(d < 0 for d in spec.params):
            raise ValueError("multistar degrees must be nonnegative")
        base = disjoint_union(Graph.complete_bipartite(1, d) if d else Graph(1)
                              for d in spec.params)
    elif spec.kind == "multiclaw":
        base = disjoint_union(MULTICLAW_COMPONENTS[c] for c in spec.params)
    elif spec.kind == "wall":
        base = wall(*spec.params)
    else:
        raise ValueError(f"unknown pattern kind {spec.kind!r}")
    if spec.subdivision is None:
        return base
    rule = spec.subdivision
    if rule[0] in ("at_most", "proper", "pure"):
        raise ValueError(f"subdivision rule {rule[0]!r} describes a family, not one graph")
    if base.edge_count == 0:
        raise ValueError(f"cannot subdivide edgeless pattern {spec.describe()}")
    return subdivide(base, rule[1])


def figure_multiclaw() -> PatternSpec:
    """The four-component subdivided multiclaw used in the wall
    containment checks: a (1,1,1)-subdivided claw, a 2-subdivided edge,
    a (1,1)-subdivided P3, and an isolated vertex."""
    return PatternSpec("multiclaw", ("K13", "K2", "P3", "K1"),
                       ("counts", (1, 1, 1, 2, 1, 1)))


# -- line graphs ---------------------------------------------------------


def line_graph(g: Graph) -> Graph:
    """Graph on the edges of g; two edges adjacent iff they share an end."""
    edge_list = g.edges()
    m = len(edge_list)
    out_edges = []
    for i in range(m):
        u1, v1 = edge_list[i]
        for j in range(i + 1, m):
            u2, v2 = edge_list[j]
            if u1 in (u2, v2) or v1 in (u2, v2):
                out_edges.append((i, j))
    return Graph(m, out_edges, labels=[f"{u}-{v}" for u, v in edge_list])


# -- induced-subgraph detection ------------------------------------------


def _embedding_order(h: Graph) -> list[int]:
    """Vertex order for the backtracking: components by decreasing size,
    inside a component by connectivity from the highest-degree vertex."""
    comp_masks = []
    seen = 0
    for v in range(h.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= h.adj(u)
            grow &= ~comp
            comp |= grow
            frontier = grow
        comp_masks.append(comp)
        seen |= comp
    comp_masks.sort(key=lambda c: (-c.bit_count(), c))
    order: list[int] = []
    for comp in comp_masks:
        verts = list(bits(comp))
        start = max(verts, key=lambda v: (h.degree(v), -v))
        placed = [start]
        placed_mask = 1 << start
        while len(placed) < len(verts):
            cand = [v for v in verts if not placed_mask >> v & 1]
            nxt = max(cand, key=lambda v: ((h.adj(v) & placed_mask).bit_count(),
                                           h.degree(v), -v))
            placed.append(nxt)
            placed_mask |= 1 << nxt
        order += placed
    return order


def contains_induced(g: Graph, h: Graph) -> dict[int, int] | None:
    """Find an induced embedding of h into g.

    Returns an injection V(h) -> V(g) preserving adjacency and
    non-adjacency, or None. Backtracking tries candidate g-vertices in
    ascending index, with degree and mapped-neighborhood pruning; the
    returned map is re-verified before returning.
    """
    if h.n > g.n:
        return None
    order = _embedding_order(h)
    assign: dict[int, int] = {}
    used_mask = 0

    def feasible(hv: int, gv: int) -> bool:
        if g.degree(gv) < h.degree(hv):
            return False
        for hu, gu in assign.items():
            if h.has_edge(hv, hu) != g.has_edge(gv, gu):
                return False
        return True

    def search(depth: int) -> bool:
        nonlocal used_mask
        if depth == len(order):
            return True
        hv = order[depth]
        for gv in range(g.n):
            if used_mask >> gv & 1:
                continue
            if feasible(hv, gv):
                assign[hv] = gv
                used_mask |= 1 << gv
                if search(depth + 1):
                    return True
                del assign[hv]
                used_mask &= ~(1 << gv)
        return False

    if not search(0):
        return None
    embedding = dict(assign)
    _verify_embedding(g, h, embedding)
    return embedding


def _verify_embedding(g: Graph, h: Graph, emb: dict[int, int]) -> None:
    if len(emb) != h.n or len(set(emb.values())) != h.n:
        raise AssertionError("embedding is not an injection on V(h)")
    for u in range(h.n):
        for v in range(u + 1, h.n):
            if h.has_edge(u, v) != g.has_edge(emb[u], emb[v]):
                raise AssertionError(f"embedding breaks pair ({u},{v})")


def is_free_of(g: Graph, specs: Iterable[PatternSpec]) -> bool:
    """True iff g contains none of the realized patterns induced."""
    return all(contains_induced(g, realize(s)) is None for s in specs)


# -- line graphs of wall subdivisions -------------------------------------


@dataclass(frozen=True)
class WallLineVerdict:
    """Outcome of the wall-subdivision line-graph search.

    status: "yes" (witness found), "no_exhaustive" (every candidate
    subdivision was tested), or "no_within_budget".
    """

    status: str
    witness_counts: tuple | None = None
    embedding: dict | None = field(default=None, compare=False)
    candidates_tested: int = 0


def _subdivision_vectors(num_edges: int, max_total: int):
    """Per-edge extra-vertex vectors, non-decreasing total then
    lexicographic."""
    if num_edges == 0:
        if max_total >= 0:
            yield ()
        return
    vec = [0] * num_edges

    def rec(pos: int, left: int):
        if pos == num_edges - 1:
            vec[pos] = left
            yield tuple(vec)
            return
        for take in range(left + 1):
            vec[pos] = take
            yield from rec(pos + 1, left - take)

    for total in range(max_total + 1):
        yield from rec(0, total)


def contains_line_of_wall_subdivision(g: Graph, wall_spec: PatternSpec,
                                      budget: int) -> WallLineVerdict:
    """Search g for an induced line graph of some subdivision of the wall.

    Enumerates subdivisions W' with |E(W')| <= |V(g)| (smallest first)
    and tests line_graph(W') via contains_induced. Each candidate costs
    1 + (its extra vertices) budget units; budget exhaustion before the
    enumeration completes yields "no_within_budget".
    """
    if wall_spec.kind != "wall":
        raise ValueError("pattern must be a wall")
    base = wall(*wall_spec.params)
    max_extra = g.n - base.edge_count
    tested = 0
    if max_extra < 0:
        return WallLineVerdict("no_exhaustive", candidates_tested=0)
    spent = 0
    for counts in _subdivision_vectors(base.edge_count, max_extra):
        cost = 1 + sum(counts)
        if spent + cost > budget:
            return WallLineVerdict("no_within_budget", candidates_tested=tested)
        spent += cost
        tested += 1
        sub = subdivide(base, counts)
        emb = contains_induced(g, line_graph(sub))
        if emb is not None:
            return WallLineVerdict("yes", witness_counts=counts,
                                   embedding=emb, candidates_tested=tested)
    return WallLineVerdict("no_exhaustive", candidates_tested=tested)
