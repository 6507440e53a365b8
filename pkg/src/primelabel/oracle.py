"""Exact brute-force oracles.

``brute_force_label`` decides, for a fixed label ceiling, whether a graph
admits a prime edge-sum labeling. It knows nothing about the K_{m,n}
construction, so it can cross-check it, and it can certify infeasibility
on odd cycles by exhaustion.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import InvalidArgumentError
from .graph import Graph
from .labeling import Labeling, Report, verify_labeling
from .primes import is_prime


@dataclass(frozen=True)
class Found:
    labeling: Labeling
    nodes: int


@dataclass(frozen=True)
class Infeasible:
    max_label: int
    nodes: int


@dataclass(frozen=True)
class BudgetExhausted:
    max_label: int
    nodes: int


OracleOutcome = Union[Found, Infeasible, BudgetExhausted]


def bfs_order(g: Graph) -> list[int]:
    """BFS from vertex 0, restarting at the smallest unseen vertex."""
    seen = [False] * g.num_vertices
    order = []
    for root in range(g.num_vertices):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


class _OutOfBudget(Exception):
    pass


def brute_force_label(g: Graph, max_label: int, max_nodes: int | None = None,
                      parity_pruning: bool = True) -> OracleOutcome:
    """Backtracking search over distinct labels 1..max_label.

    Returns the first labeling in lexicographic order (vertices in BFS
    order, labels ascending). With ``parity_pruning`` each assignment forces
    the opposite parity on unlabeled neighbours: sums must be odd primes,
    because an even sum is either >= 4 or 1+1. ``max_nodes`` caps the number
    of label assignments tried.
    """
    nv = g.num_vertices
    if nv == 0:
        raise InvalidArgumentError("graph must have at least one vertex")
    if max_label < nv:
        raise InvalidArgumentError("max_label must be at least the vertex count")

    order = bfs_order(g)
    # neighbours already labeled when each vertex is reached
    earlier = []
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier.append([w for w in g.neighbors(v) if pos[w] < pos[v]])
    later = [[w for w in g.neighbors(v) if pos[w] > pos[v]] for v in order]

    prime = [is_prime(s) for s in range(2 * max_label + 1)]
    label = [0] * nv
    used = [False] * (max_label + 1)
    forced = [-1] * nv  # required parity or -1
    forced_count = [[0, 0] for _ in range(nv)]
    nodes = 0

    def force(v, parity, delta):
        counts = forced_count[v]
        counts[parity] += delta
        if counts[0] and counts[1]:
            return False
        forced[v] = 0 if counts[0] else 1 if counts[1] else -1
        return True

    def rec(k):
        nonlocal nodes
        if k == nv:
            return True
        v = order[k]
        prev = [label[w] for w in earlier[k]]
        want = forced[v] if parity_pruning else -1
        for x in range(1, max_label + 1):
            if used[x] or (want != -1 and x & 1 != want):
                continue
            if any(not prime[x + y] for y in prev):
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise _OutOfBudget
            label[v] = x
            used[x] = True
            ok = True
            touched = []
            if parity_pruning:
                for w in later[k]:
                    touched.append(w)
                    if not force(w, 1 - (x & 1), 1):
                        ok = False
                        break
            if ok and rec(k + 1):
                return True
            for w in touched:
                force(w, 1 - (x & 1), -1)
            used[x] = False
            label[v] = 0
        return False

    try:
        found = rec(0)
    except _OutOfBudget:
        return BudgetExhausted(max_label, nodes)
    if not found:
        return Infeasible(max_label, nodes)
    return Found(Labeling(tuple(label), {"mode": "brute_forced", "max_label": max_label}), nodes)


# -- Hamiltonian paths ------------------------------------------------------

def iter_hamiltonian_paths(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every directed Hamiltonian path, by start vertex then neighbour id."""
    nv = g.num_vertices
    if nv == 0:
        return
    on_path = [False] * nv
    path = []

    def extend(v):
        path.append(v)
        on_path[v] = True
        if len(path) == nv:
            yield tuple(path)
        else:
            for w in g.neighbors(v):
                if not on_path[w]:
                    yield from extend(w)
        on_path[v] = False
        path.pop()

    for start in range(nv):
        yield from extend(start)


@dataclass(frozen=True)
class HamiltonianPaths:
    paths: list
    count: int
    truncated: bool


def enumerate_hamiltonian_paths(g: Graph, limit: int | None = None) -> HamiltonianPaths:
    if g.num_vertices < 1:
        raise InvalidArgumentError("graph must have at least one vertex")
    paths = []
    truncated = False
    for path in iter_hamiltonian_paths(g):
        if limit is not None and len(paths) >= limit:
            truncated = True
            break
        paths.append(path)
    return HamiltonianPaths(paths, len(paths), truncated)


def check_paths_prime(g: Graph, labeling: Labeling, limit: int | None = None) -> Report:
    """Audit every consecutive sum along every Hamiltonian path."""
    if not verify_labeling(g, labeling).passed:
        raise InvalidArgumentError("labeling does not verify on this graph")
    checked = 0
    truncated = False
    violations = []
    for path in iter_hamiltonian_paths(g):
        if limit is not None and checked >= limit:
            truncated = True
            break
        checked += 1
        for a, b in zip(path, path[1:]):
            s = labeling[a] + labeling[b]
            if not is_prime(s):
                violations.append({"kind": "composite_path_sum", "path": list(path),
                                   "edge": [a, b], "sum": s})
    return Report(tuple(violations), {"paths_checked": checked, "truncated": truncated})
