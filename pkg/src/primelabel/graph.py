"""Undirected simple graphs, generators, and bipartiteness certificates."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import InvalidArgumentError, ParseError, ResourceLimitError

SIDE_A = 0
SIDE_B = 1

MAX_HYPERCUBE_DIM = 20


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices 0..num_vertices-1.

    Edges are stored canonically as (u, v) with u < v.
    """

    num_vertices: int
    edges: frozenset
    _adj: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise InvalidArgumentError("vertex count must be nonnegative")
        adj = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            if not (0 <= u < v < self.num_vertices):
                raise InvalidArgumentError(f"bad edge ({u}, {v})")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        seen = set()
        for u, v in edges:
            if u == v:
                raise InvalidArgumentError(f"self-loop at {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise InvalidArgumentError(f"edge ({u}, {v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InvalidArgumentError(f"duplicate edge {e}")
            seen.add(e)
        return cls(num_vertices, frozenset(seen))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.num_vertices, [*self.edges, (u, v)])

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices


def complete_bipartite(m: int, n: int) -> tuple[Graph, tuple[range, range]]:
    """K_{m,n} with side A = 0..m-1 and side B = m..m+n-1."""
    if m < 1 or n < 1:
        raise InvalidArgumentError("both sides of K_{m,n} must be nonempty")
    edges = frozenset((i, m + j) for i in range(m) for j in range(n))
    return Graph(m + n, edges), (range(m), range(m, m + n))


def hypercube(n: int, max_dim: int = MAX_HYPERCUBE_DIM) -> Graph:
    if n < 1:
        raise InvalidArgumentError("hypercube dimension must be >= 1")
    if n > max_dim:
        raise ResourceLimitError(f"hypercube dimension {n} exceeds limit {max_dim}")
    size = 1 << n
    edges = frozenset((v, v | (1 << b)) for v in range(size) for b in range(n) if not v >> b & 1)
    return Graph(size, edges)


# -- bipartition ------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    side: tuple[int, ...]  # SIDE_A or SIDE_B per vertex


@dataclass(frozen=True)
class OddCycle:
    cycle: tuple[int, ...]


BipartitionResult = Union[Coloring, OddCycle]


def bipartition(g: Graph) -> BipartitionResult:
    """2-color ``g`` by BFS, or return an odd cycle proving it impossible.

    Every component is colored independently, its smallest vertex on side A.
    """
    color = [-1] * g.num_vertices
    parent = [-1] * g.num_vertices
    depth = [0] * g.num_vertices
    for root in range(g.num_vertices):
        if color[root] != -1:
            continue
        color[root] = SIDE_A
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return OddCycle(_odd_cycle(u, w, parent, depth))
    return Coloring(tuple(color))


def _odd_cycle(u, w, parent, depth):
    # u and w are adjacent, same color: tree paths to their LCA close an odd cycle
    left, right = [u], [w]
    while depth[u] > depth[w]:
        u = parent[u]
        left.append(u)
    while depth[w] > depth[u]:
        w = parent[w]
        right.append(w)
    while u != w:
        u = parent[u]
        w = parent[w]
        left.append(u)
        right.append(w)
    right.pop()  # LCA already at the end of left
    return tuple(left + right[::-1])


def is_valid_coloring(g: Graph, coloring: Coloring) -> bool:
    side = coloring.side
    if len(side) != g.num_vertices or any(s not in (SIDE_A, SIDE_B) for s in side):
        return False
    return all(side[u] != side[v] for u, v in g.edges)


def is_valid_odd_cycle(g: Graph, cycle: OddCycle) -> bool:
    c = cycle.cycle
    k = len(c)
    if k < 3 or k % 2 == 0 or len(set(c)) != k:
        return False
    if any(not 0 <= v < g.num_vertices for v in c):
        return False
    return all(g.has_edge(c[i], c[(i + 1) % k]) for i in range(k))


def check_certificate(g: Graph, result: BipartitionResult) -> bool:
    if isinstance(result, Coloring):
        return is_valid_coloring(g, result)
    if isinstance(result, OddCycle):
        return is_valid_odd_cycle(g, result)
    return False


# -- hypercube embedding ----------------------------------------------------

@dataclass(frozen=True)
class HypercubeEmbedding:
    """Q_n placed inside K_{2^(n-1), 2^(n-1)} by popcount parity.

    Even-popcount vertices go to side A, odd to side B; within a side,
    vertices are ranked by id.
    """

    n: int
    side_of: tuple[int, ...]
    index_within_side: tuple[int, ...]

    @property
    def half(self) -> int:
        return 1 << (self.n - 1)

    def bipartite_vertex(self, v: int) -> int:
        """Vertex id of ``v``'s image in the canonical K_{half,half}."""
        offset = 0 if self.side_of[v] == SIDE_A else self.half
        return offset + self.index_within_side[v]


def embed_hypercube(n: int, max_dim: int = MAX_HYPERCUBE_DIM) -> HypercubeEmbedding:
    if n < 1:
        raise InvalidArgumentError("hypercube dimension must be >= 1")
    if n > max_dim:
        raise ResourceLimitError(f"hypercube dimension {n} exceeds limit {max_dim}")
    sides = []
    index = []
    counts = [0, 0]
    for v in range(1 << n):
        s = bin(v).count("1") & 1
        sides.append(s)
        index.append(counts[s])
        counts[s] += 1
    return HypercubeEmbedding(n, tuple(sides), tuple(index))


# -- edge-list I/O ----------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the ``V E`` header + ``u v`` lines format.

    Edges given as ``v u`` are accepted and stored canonically.
    """
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    header = lines[0].split()
    try:
        nv, ne = (int(t) for t in header)
    except ValueError:
        raise ParseError(f"expected 'V E' header, got {lines[0]!r}", 1) from None
    if nv < 0 or ne < 0:
        raise ParseError("negative count in header", 1)
    body = lines[1:]
    if len(body) != ne:
        raise ParseError(f"header declares {ne} edges, found {len(body)} lines", len(lines))
    seen = set()
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        try:
            u, v = (int(t) for t in parts)
        except ValueError:
            raise ParseError(f"expected 'u v', got {line!r}", lineno) from None
        for x in (u, v):
            if not 0 <= x < nv:
                raise ParseError(f"vertex {x} out of range 0..{nv - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    return Graph(nv, frozenset(seen))


def serialize_edge_list(g: Graph) -> str:
    out = [f"{g.num_vertices} {g.num_edges}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"
