"""Immutable graphs over int bitsets, plus the set primitives everything
else consumes: exact independence number, components, anticompleteness,
and enumeration of induced (X,Y)-paths.

Vertices are indices 0..n-1; a set of vertices is either an int bitmask
(internal) or any iterable of indices (public API). Adjacency is one
bitmask per vertex, so set-level operations are single `&`/`|` ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FormatError

VertexSet = frozenset  # indices of a host graph


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset:
    return frozenset(bits(mask))


class Graph:
    """Simple undirected graph, immutable after construction.

    No loops, no parallel edges (duplicate edges collapse). Labels
    default to the vertex indices and must be unique.
    """

    __slots__ = ("n", "labels", "_adj", "_label_index", "_alpha_cache", "_edge_count")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        adj = [0] * n
        count = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            if not adj[u] >> v & 1:
                count += 1
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)
        self._edge_count = count
        if labels is None:
            labels = tuple(range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("label count must equal vertex count")
            if len(set(labels)) != n:
                raise ValueError("vertex labels must be unique")
        self.labels = labels
        self._label_index = {lab: i for i, lab in enumerate(labels)}
        self._alpha_cache: dict[int, int] = {}

    # -- constructors -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, p: int, q: int) -> "Graph":
        return cls(p + q, [(i, p + j) for i in range(p) for j in range(q)])

    # -- queries -------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adj(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> frozenset:
        return set_of(self._adj[v])

    def closed_neighborhood_mask(self, vertices) -> int:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        out = m
        for v in bits(m):
            out |= self._adj[v]
        return out

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self._adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def index_of(self, label) -> int:
        return self._label_index[label]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self._adj == other._adj and self.labels == other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new index -> old index."""
        keep = sorted(vertices)
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u in keep for v in bits(self._adj[u])
                 if v in pos and u < v]
        return Graph(len(keep), edges, labels=[self.labels[v] for v in keep]), keep

    def union(self, other: "Graph") -> "Graph":
        """Graph union on a shared vertex set (labels taken from self)."""
        if other.n != self.n:
            raise ValueError("graph union requires identical vertex sets")
        edges = self.edges() + other.edges()
        return Graph(self.n, edges, labels=self.labels)


def graph_union(graphs: Sequence[Graph]) -> Graph:
    if not graphs:
        raise ValueError("empty union")
    g = graphs[0]
    for h in graphs[1:]:
        g = g.union(h)
    return g


# -- independence number ----------------------------------------------


def _alpha_mask(g: Graph, mask: int) -> int:
    """Exact max stable set size within `mask`, branch-and-bound on a
    max-degree vertex (include/exclude), memoised per graph."""
    cache = g._alpha_cache
    hit = cache.get(mask)
    if hit is not None:
        return hit
    if mask == 0:
        return 0
    best_v, best_d = -1, -1
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        d = (g._adj[v] & mask).bit_count()
        if d > best_d:
            best_v, best_d = v, d
        m ^= low
    if best_d == 0:
        out = mask.bit_count()
    else:
        v = best_v
        out = max(1 + _alpha_mask(g, mask & ~(g._adj[v] | (1 << v))),
                  _alpha_mask(g, mask & ~(1 << v)))
    cache[mask] = out
    return out


def alpha(g: Graph, s: Iterable[int] | None = None) -> int:
    """Independence number of G[s] (whole graph when s is None). Exact."""
    mask = g.full_mask if s is None else (s if isinstance(s, int) else mask_of(s))
    return _alpha_mask(g, mask)


def max_stable_set(g: Graph, s: Iterable[int] | None = None) -> frozenset:
    """Lexicographically least maximum stable set of G[s]."""
    mask = g.full_mask if s is None else (s if isinstance(s, int) else mask_of(s))
    out = []
    target = _alpha_mask(g, mask)
    while target:
        for v in bits(mask):
            rest = mask & ~(g._adj[v] | (1 << v))
            if 1 + _alpha_mask(g, rest) == target:
                out.append(v)
                mask = rest
                target -= 1
                break
        else:  # pragma: no cover - unreachable if alpha is correct
            raise AssertionError("witness reconstruction failed")
    return frozenset(out)


def is_stable(g: Graph, s) -> bool:
    mask = s if isinstance(s, int) else mask_of(s)
    return all(g._adj[v] & mask == 0 for v in bits(mask))


# -- components and anticompleteness ----------------------------------


def _component_masks(g: Graph, mask: int) -> list[int]:
    out = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g._adj[v]
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        remaining &= ~comp
    return out  # ordered by smallest contained vertex


def components(g: Graph, s: Iterable[int] | None = None) -> list[frozenset]:
    """Connected components of G[s], ordered by their minimum vertex."""
    mask = g.full_mask if s is None else (s if isinstance(s, int) else mask_of(s))
    return [set_of(c) for c in _component_masks(g, mask)]


def is_connected(g: Graph, s: Iterable[int] | None = None) -> bool:
    mask = g.full_mask if s is None else (s if isinstance(s, int) else mask_of(s))
    return len(_component_masks(g, mask)) <= 1


def anticomplete(g: Graph, x, y) -> bool:
    """True iff x and y are disjoint with no edge between them."""
    mx = x if isinstance(x, int) else mask_of(x)
    my = y if isinstance(y, int) else mask_of(y)
    if mx & my:
        return False
    return all(g._adj[v] & my == 0 for v in bits(mx))


def complete_between(g: Graph, x, y) -> bool:
    """True iff x and y are disjoint and every cross pair is an edge."""
    mx = x if isinstance(x, int) else mask_of(x)
    my = y if isinstance(y, int) else mask_of(y)
    if mx & my:
        return False
    return all(g._adj[v] & my == my for v in bits(mx))


# -- induced paths -----------------------------------------------------


@dataclass(frozen=True)
class Path:
    """An induced path given by its vertex sequence.

    Construct through `make_path` so the induced-path invariants are
    checked against the host graph.
    """

    vertices: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> frozenset:
        return frozenset(self.vertices[1:-1])

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def mask(self) -> int:
        return mask_of(self.vertices)


def make_path(g: Graph, vertices: Sequence[int]) -> Path:
    seq = tuple(vertices)
    if len(seq) != len(set(seq)):
        raise ValueError("path repeats a vertex")
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            expect = (j == i + 1)
            if g.has_edge(u, seq[j]) != expect:
                kind = "missing edge" if expect else "chord"
                raise ValueError(f"not an induced path: {kind} {u},{seq[j]}")
    return Path(seq)


def xy_paths(g: Graph, x, y, max_len: int | None = None) -> list[Path]:
    """All (X,Y)-paths in g: either length zero inside X∩Y, or one end in
    X\\Y, the other in Y\\X, interior avoiding X∪Y.  With `max_len`, only
    paths of at most that many edges.  Output sorted by vertex sequence.
    """
    mx = x if isinstance(x, int) else mask_of(x)
    my = y if isinstance(y, int) else mask_of(y)
    out = [Path((v,)) for v in bits(mx & my)]
    if max_len is not None and max_len < 1:
        out.sort(key=lambda p: p.vertices)
        return out
    starts = mx & ~my
    ends = my & ~mx
    blocked = mx | my

    def extend(seq: tuple[int, ...], seq_mask: int):
        last = seq[-1]
        older = seq_mask & ~(1 << last)
        for w in bits(g._adj[last]):
            if seq_mask >> w & 1 or g._adj[w] & older:
                continue  # revisit or chord
            if ends >> w & 1:
                out.append(Path(seq + (w,)))
            elif not blocked >> w & 1:
                if max_len is None or len(seq) < max_len:
                    extend(seq + (w,), seq_mask | (1 << w))

    for s in bits(starts):
        extend((s,), 1 << s)
    out.sort(key=lambda p: p.vertices)
    return out


# -- plain edge-list text format ---------------------------------------


def to_edge_list_text(g: Graph) -> str:
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise FormatError(f"bad vertex count line: {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad edge line: {ln!r}") from exc
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
