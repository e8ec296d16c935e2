"""Simple undirected weighted graph with per-node volumes.

This is the object every hierarchy level works on.  Node ids are
integers; a freshly loaded input graph is labeled densely 0..n-1, while
coarser levels reuse the ids of their seed nodes (a sparse subset).
Parallel edges merge by summing weights, self-loops are rejected, and
all weights and volumes are strictly positive.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class Graph:
    """Mutable adjacency-map graph.  Copy before mutating shared values."""

    __slots__ = ("_adj", "_vol")

    def __init__(self) -> None:
        self._adj: dict[int, dict[int, float]] = {}
        self._vol: dict[int, float] = {}

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int] | tuple[int, int, float]],
        nodes: Iterable[int] = (),
    ) -> "Graph":
        g = cls()
        for v in nodes:
            g.add_node(v)
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else 1.0  # type: ignore[misc]
            g.add_edge(u, v, w)
        return g

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: dict(nbrs) for v, nbrs in self._adj.items()}
        g._vol = dict(self._vol)
        return g

    # ------------------------------------------------------------------
    # Mutation
    # ------------------------------------------------------------------

    def add_node(self, v: int, volume: float = 1.0) -> None:
        if volume <= 0:
            raise ValueError(f"volume must be positive, got {volume}")
        if v not in self._adj:
            self._adj[v] = {}
            self._vol[v] = volume

    def set_volume(self, v: int, volume: float) -> None:
        if volume <= 0:
            raise ValueError(f"volume must be positive, got {volume}")
        if v not in self._vol:
            raise KeyError(f"unknown node {v}")
        self._vol[v] = volume

    def add_edge(self, u: int, v: int, weight: float = 1.0) -> None:
        """Insert an edge; a repeated pair accumulates weight."""
        if u == v:
            raise ValueError(f"self-loop at node {u} rejected")
        if weight <= 0:
            raise ValueError(f"edge weight must be positive, got {weight}")
        self.add_node(u)
        self.add_node(v)
        w = self._adj[u].get(v, 0.0) + weight
        self._adj[u][v] = w
        self._adj[v][u] = w

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self._adj.get(u, ()):
            raise KeyError(f"no edge {{{u},{v}}}")
        del self._adj[u][v]
        del self._adj[v][u]

    def remove_node(self, v: int) -> None:
        if v not in self._adj:
            raise KeyError(f"unknown node {v}")
        for u in list(self._adj[v]):
            del self._adj[u][v]
        del self._adj[v]
        del self._vol[v]

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self._adj)

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def nodes(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def has_node(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def adjacency(self, v: int) -> dict[int, float]:
        """Neighbor -> weight map (do not mutate)."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def weight(self, u: int, v: int) -> float:
        try:
            return self._adj[u][v]
        except KeyError:
            raise KeyError(f"no edge {{{u},{v}}}") from None

    def volume(self, v: int) -> float:
        return self._vol[v]

    def total_edge_weight(self) -> float:
        return sum(w for u, v in self.edges() for w in (self._adj[u][v],))

    def total_volume(self) -> float:
        return sum(self._vol[v] for v in sorted(self._vol))

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._vol == other._vol

    def __repr__(self) -> str:
        return f"Graph(n={self.num_nodes}, m={self.num_edges})"

    def same_edge_set(self, other: "Graph") -> bool:
        """Structural equality ignoring weights and volumes."""
        if set(self._adj) != set(other._adj):
            return False
        return all(
            set(self._adj[v]) == set(other._adj[v]) for v in self._adj
        )


# ----------------------------------------------------------------------
# Structural queries used across the hierarchy
# ----------------------------------------------------------------------


def density(g: Graph) -> float:
    """2m / n(n-1); defined as 0 for graphs with fewer than 2 nodes."""
    n = g.num_nodes
    if n <= 1:
        return 0.0
    return 2.0 * g.num_edges / (n * (n - 1))


def weighted_degree(g: Graph, v: int) -> float:
    """Sum of incident edge weights (0 for an isolated node)."""
    return sum(g.adjacency(v).values())


def connected_components(g: Graph) -> list[set[int]]:
    """Maximal connected node sets, ordered by smallest contained id."""
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in g.nodes():
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for w in g.adjacency(u):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    frontier.append(w)
        comps.append(comp)
    comps.sort(key=min)
    return comps
