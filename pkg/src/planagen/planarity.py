"""Planarity testing and incremental edge-admission checks.

The tester is a left-right (LR) planarity test: one DFS orients the
graph and computes per-edge lowpoints and nesting depths, a second DFS
over nesting-ordered adjacency lists maintains a stack of conflict
pairs of back-edge intervals.  The graph is planar iff no conflict pair
ever acquires two incompatible same-side constraints.  Only the boolean
is computed; no embedding is built.

:class:`PlanarityGate` answers "may edge {u,v} be added?" against a
mutating planar graph.  It caches the block-cut decomposition: adding
{u,v} merges exactly the blocks on the u-v path of the block-cut
forest, so the LR test only has to run on the union of those blocks.
On sparse near-planar inputs this is far cheaper than re-testing the
whole graph per candidate edge.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph

__all__ = [
    "PlanarityVerdict",
    "is_planar",
    "admits_edge",
    "maximal_planar_subgraph",
    "PlanarityGate",
]


@dataclass(frozen=True)
class PlanarityVerdict:
    """Outcome of a planarity test.

    ``witness`` is an edge set forming a K5 or K3,3 subdivision; it is
    populated only when the graph is non-planar and the test was run
    with ``certificate=True``.
    """

    planar: bool
    witness: frozenset[tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return self.planar


# ----------------------------------------------------------------------
# Core LR test on compact integer adjacency
# ----------------------------------------------------------------------


def _lr_planar(n: int, adj: Sequence[Sequence[int]]) -> bool:
    """LR planarity of a simple graph given as 0..n-1 adjacency lists."""
    if n <= 4:
        return True
    m = sum(len(a) for a in adj) // 2
    if m > 3 * n - 6:
        return False

    # --- assign edge ids --------------------------------------------------
    eid_of: dict[tuple[int, int], int] = {}
    num_e = 0
    for u in range(n):
        for w in adj[u]:
            if u < w:
                eid_of[(u, w)] = num_e
                num_e += 1
    adj_e: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u in range(n):
        for w in adj[u]:
            e = eid_of[(u, w)] if u < w else eid_of[(w, u)]
            adj_e[u].append((w, e))

    NONE = -1
    height = [NONE] * n
    parent_eid = [NONE] * n
    oriented = [False] * num_e
    is_tree = [False] * num_e
    src = [NONE] * num_e
    dst = [NONE] * num_e
    lowpt = [0] * num_e
    lowpt2 = [0] * num_e
    nesting = [0] * num_e

    roots: list[int] = []

    def _finalize(e: int) -> None:
        # nesting depth of e, then fold its lowpoints into the parent edge
        u = src[e]
        nesting[e] = 2 * lowpt[e] + (1 if lowpt2[e] < height[u] else 0)
        pe = parent_eid[u]
        if pe == NONE:
            return
        if lowpt[e] < lowpt[pe]:
            lowpt2[pe] = min(lowpt[pe], lowpt2[e])
            lowpt[pe] = lowpt[e]
        elif lowpt[e] > lowpt[pe]:
            lowpt2[pe] = min(lowpt2[pe], lowpt[e])
        else:
            lowpt2[pe] = min(lowpt2[pe], lowpt2[e])

    # --- DFS 1: orientation, lowpoints, nesting depth ----------------------
    for r in range(n):
        if height[r] != NONE:
            continue
        roots.append(r)
        height[r] = 0
        stack = [(r, 0)]
        while stack:
            v, i = stack[-1]
            if i < len(adj_e[v]):
                stack[-1] = (v, i + 1)
                w, e = adj_e[v][i]
                if oriented[e]:
                    continue
                oriented[e] = True
                src[e] = v
                dst[e] = w
                lowpt[e] = height[v]
                lowpt2[e] = height[v]
                if height[w] == NONE:
                    is_tree[e] = True
                    parent_eid[w] = e
                    height[w] = height[v] + 1
                    stack.append((w, 0))
                else:
                    lowpt[e] = height[w]
                    _finalize(e)
            else:
                stack.pop()
                pe = parent_eid[v]
                if pe != NONE:
                    _finalize(pe)

    # --- adjacency of oriented edges, sorted by nesting depth --------------
    ordered: list[list[int]] = [[] for _ in range(n)]
    for e in range(num_e):
        ordered[src[e]].append(e)
    for v in range(n):
        ordered[v].sort(key=nesting.__getitem__)

    # --- DFS 2: conflict-pair testing --------------------------------------
    # interval = [low_eid | None, high_eid | None]; pair = [left, right]
    S: list[list[list[int | None]]] = []
    stack_bottom = [0] * num_e
    lowpt_edge = [NONE] * num_e
    ref: list[int] = [NONE] * num_e

    def _conflicting(iv: list[int | None], e: int) -> bool:
        return iv[1] is not None and lowpt[iv[1]] > lowpt[e]

    def _lowest(pair: list[list[int | None]]) -> int:
        left, right = pair
        if left[0] is None:
            return lowpt[right[0]]  # type: ignore[index]
        if right[0] is None:
            return lowpt[left[0]]  # type: ignore[index]
        return min(lowpt[left[0]], lowpt[right[0]])  # type: ignore[index]

    def _add_constraints(ei: int, e: int) -> bool:
        # e is the parent tree edge of src[ei]
        merged: list[list[int | None]] = [[None, None], [None, None]]
        # merge return edges of ei into the right interval of `merged`
        bottom = stack_bottom[ei]
        while len(S) > bottom:
            q = S.pop()
            if q[0][0] is not None or q[0][1] is not None:
                q[0], q[1] = q[1], q[0]
            if q[0][0] is not None or q[0][1] is not None:
                return False
            qr = q[1]
            if lowpt[qr[0]] > lowpt[e]:  # type: ignore[index]
                if merged[1][1] is None:
                    merged[1][1] = qr[1]
                else:
                    ref[merged[1][0]] = qr[1]  # type: ignore[index]
                merged[1][0] = qr[0]
            else:  # returns at or below lowpt(e): align with the parent edge
                ref[qr[0]] = lowpt_edge[e]  # type: ignore[index]
        # merge conflicting return edges of previous siblings
        while S and (_conflicting(S[-1][0], ei) or _conflicting(S[-1][1], ei)):
            q = S.pop()
            if _conflicting(q[1], ei):
                q[0], q[1] = q[1], q[0]
            if _conflicting(q[1], ei):
                return False
            # q's right interval nests under lowpt(ei) in merged right
            if merged[1][0] is not None:
                ref[merged[1][0]] = q[1][1]  # type: ignore[index]
            else:
                merged[1][1] = q[1][1]
            if q[1][0] is not None:
                merged[1][0] = q[1][0]
            # q's left interval joins merged left wholesale
            if merged[0][1] is None:
                merged[0][1] = q[0][1]
            else:
                ref[merged[0][0]] = q[0][1]  # type: ignore[index]
            merged[0][0] = q[0][0]
        if merged != [[None, None], [None, None]]:
            S.append(merged)
        return True

    def _trim_back_edges(u: int) -> None:
        # drop conflict pairs whose lowest return is u itself
        while S and _lowest(S[-1]) == height[u]:
            S.pop()
        if not S:
            return
        pair = S.pop()
        for side_idx in (0, 1):
            iv = pair[side_idx]
            while iv[1] is not None and dst[iv[1]] == u:
                r = ref[iv[1]]
                iv[1] = None if r == NONE else r
            if iv[1] is None and iv[0] is not None:
                other_low = pair[1 - side_idx][0]
                if other_low is not None:
                    ref[iv[0]] = other_low
                iv[0] = None
        if pair != [[None, None], [None, None]]:
            S.append(pair)

    ENTER, INTEGRATE = 0, 1
    for r in roots:
        frames: list[tuple[int, int, int]] = [(ENTER, r, 0)]
        while frames:
            ftype, v, i = frames[-1]
            if ftype == ENTER:
                if i >= len(ordered[v]):
                    frames.pop()
                    pe = parent_eid[v]
                    if pe != NONE:
                        u = src[pe]
                        _trim_back_edges(u)
                        if lowpt[pe] < height[u] and S:
                            hl = S[-1][0][1]
                            hr = S[-1][1][1]
                            if hl is not None and (hr is None or lowpt[hl] > lowpt[hr]):
                                ref[pe] = hl
                            elif hr is not None:
                                ref[pe] = hr
                    continue
                ei = ordered[v][i]
                stack_bottom[ei] = len(S)
                frames[-1] = (ENTER, v, i + 1)
                frames.append((INTEGRATE, v, i))
                if is_tree[ei]:
                    frames.append((ENTER, dst[ei], 0))
                else:
                    lowpt_edge[ei] = ei
                    S.append([[None, None], [ei, ei]])
            else:  # INTEGRATE edge ordered[v][i] into the constraints of v
                frames.pop()
                ei = ordered[v][i]
                if lowpt[ei] < height[v]:  # ei has a return edge
                    pe = parent_eid[v]
                    if i == 0:
                        if pe != NONE:
                            lowpt_edge[pe] = lowpt_edge[ei]
                    else:
                        if pe != NONE and not _add_constraints(ei, pe):
                            return False
    return True


def _compact(
    g: Graph,
    extra: tuple[int, int] | None = None,
    nodes: Iterable[int] | None = None,
) -> tuple[int, list[list[int]]]:
    """Relabel (a node subset of) g as 0..n-1 adjacency lists."""
    node_list = g.nodes() if nodes is None else sorted(nodes)
    index = {v: i for i, v in enumerate(node_list)}
    adj: list[list[int]] = [[] for _ in node_list]
    for v in node_list:
        row = adj[index[v]]
        for w in g.adjacency(v):
            if w in index:
                row.append(index[w])
    if extra is not None:
        u, w = extra
        adj[index[u]].append(index[w])
        adj[index[w]].append(index[u])
    return len(node_list), adj


# ----------------------------------------------------------------------
# Public operations
# ----------------------------------------------------------------------


def is_planar(g: Graph, certificate: bool = False) -> PlanarityVerdict:
    """Test whether g embeds in the plane without crossings.

    With ``certificate=True`` a non-planar result carries a Kuratowski
    witness: an edge-minimal non-planar subgraph, i.e. a K5 or K3,3
    subdivision.  Witness extraction re-tests the graph once per edge,
    so request it only where that cost is acceptable.
    """
    n, adj = _compact(g)
    if _lr_planar(n, adj):
        return PlanarityVerdict(True)
    if not certificate:
        return PlanarityVerdict(False)
    return PlanarityVerdict(False, witness=_kuratowski_witness(g))


def _kuratowski_witness(g: Graph) -> frozenset[tuple[int, int]]:
    """Edge-minimal non-planar subgraph of a non-planar g."""
    keep: set[tuple[int, int]] = set(g.edges())
    nodes = g.nodes()
    index = {v: i for i, v in enumerate(nodes)}

    def nonplanar(edge_set: set[tuple[int, int]]) -> bool:
        adj: list[list[int]] = [[] for _ in nodes]
        for a, b in edge_set:
            adj[index[a]].append(index[b])
            adj[index[b]].append(index[a])
        return not _lr_planar(len(nodes), adj)

    for e in sorted(keep):
        trial = keep - {e}
        if nonplanar(trial):
            keep = trial
    return frozenset(keep)


def admits_edge(g: Graph, u: int, v: int) -> bool:
    """Whether g stays planar after adding edge {u,v}.  g is not modified."""
    if u == v:
        raise ValueError("candidate edge must join two distinct nodes")
    if not g.has_node(u) or not g.has_node(v):
        raise KeyError(f"candidate endpoints {u},{v} must be nodes of the graph")
    if g.has_edge(u, v):
        raise ValueError(f"edge {{{u},{v}}} already present")
    n, adj = _compact(g, extra=(u, v))
    return _lr_planar(n, adj)


def maximal_planar_subgraph(g: Graph, rng: random.Random) -> Graph:
    """Greedy maximal planar subgraph over a seeded random edge order.

    Keeps every edge whose addition preserves planarity.  A rejected
    edge stays unaddable against any later supergraph, so a single pass
    is maximal: no discarded edge of g fits back in.
    """
    out = Graph()
    for v in g.nodes():
        out.add_node(v, g.volume(v))
    gate = PlanarityGate(out)
    edges = list(g.edges())
    rng.shuffle(edges)
    for u, v in edges:
        if gate.admits(u, v):
            gate.add_edge(u, v)
            out.add_edge(u, v, g.weight(u, v))
    return out


# ----------------------------------------------------------------------
# Incremental gate
# ----------------------------------------------------------------------


class PlanarityGate:
    """Edge-admission oracle over a mutating planar graph.

    The wrapped adjacency must stay planar: call ``add_edge`` only for
    pairs that ``admits`` approved.  Mutations keep the cached
    block-cut decomposition either incrementally (edge additions merge
    blocks along one path) or by marking it stale (deletions), in which
    case the next query rebuilds it.

    The gate holds its own copy of the adjacency; keep it in sync by
    routing every mutation of the underlying graph through it.
    """

    def __init__(self, g: Graph) -> None:
        self._adj: dict[int, set[int]] = {v: set(g.adjacency(v)) for v in g.nodes()}
        self._dirty = True
        self._block_edges: dict[int, list[tuple[int, int]]] = {}
        self._block_nodes: dict[int, set[int]] = {}
        self._blocks_of: dict[int, set[int]] = {}
        self._next_block = 0

    # -- queries -----------------------------------------------------------

    def admits(self, u: int, v: int) -> bool:
        """True iff the current graph plus {u,v} is planar."""
        if u == v:
            raise ValueError("candidate edge must join two distinct nodes")
        if v in self._adj[u]:
            raise ValueError(f"edge {{{u},{v}}} already present")
        if self._dirty:
            self._recompute()
        path = self._block_path(u, v)
        if path is None:  # distinct components: the new edge is a bridge
            return True
        return self._merged_block_planar(path, u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    # -- mutations ----------------------------------------------------------

    def add_node(self, v: int) -> None:
        if v not in self._adj:
            self._adj[v] = set()
            if not self._dirty:
                self._blocks_of[v] = set()

    def add_edge(self, u: int, v: int) -> None:
        """Record an accepted edge, merging blocks along its path."""
        if v in self._adj[u]:
            raise ValueError(f"edge {{{u},{v}}} already present")
        if not self._dirty:
            path = self._block_path(u, v)
            if path is None:
                self._install_block([(u, v)])
            else:
                self._merge_blocks(path, u, v)
        self._adj[u].add(v)
        self._adj[v].add(u)

    def remove_edge(self, u: int, v: int) -> None:
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._dirty = True

    def remove_node(self, v: int) -> None:
        for w in self._adj.pop(v, ()):
            self._adj[w].discard(v)
        self._dirty = True

    # -- internals ------------------------------------------------------------

    def _recompute(self) -> None:
        """Rebuild the block-cut decomposition (Hopcroft-Tarjan)."""
        self._block_edges.clear()
        self._block_nodes.clear()
        self._blocks_of = {v: set() for v in self._adj}
        self._next_block = 0

        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        timer = 0
        edge_stack: list[tuple[int, int]] = []

        for root in sorted(self._adj):
            if root in disc:
                continue
            disc[root] = low[root] = timer
            timer += 1
            order = {root: sorted(self._adj[root])}
            dfs: list[tuple[int, int, int]] = [(root, -1, 0)]  # (node, parent, next index)
            while dfs:
                v, parent, i = dfs[-1]
                nbrs = order[v]
                advanced = False
                while i < len(nbrs):
                    w = nbrs[i]
                    i += 1
                    if w == parent:
                        continue
                    if w not in disc:
                        disc[w] = low[w] = timer
                        timer += 1
                        edge_stack.append((v, w))
                        dfs[-1] = (v, parent, i)
                        order[w] = sorted(self._adj[w])
                        dfs.append((w, v, 0))
                        advanced = True
                        break
                    if disc[w] < disc[v]:
                        edge_stack.append((v, w))
                        if disc[w] < low[v]:
                            low[v] = disc[w]
                if advanced:
                    continue
                dfs.pop()
                if dfs:
                    u = dfs[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] >= disc[u]:
                        block: list[tuple[int, int]] = []
                        while True:
                            e = edge_stack.pop()
                            block.append(e)
                            if e == (u, v):
                                break
                        self._install_block(block)
        self._dirty = False

    def _install_block(self, block: list[tuple[int, int]]) -> int:
        bid = self._next_block
        self._next_block += 1
        nodes: set[int] = set()
        for a, b in block:
            nodes.add(a)
            nodes.add(b)
        self._block_edges[bid] = block
        self._block_nodes[bid] = nodes
        for x in nodes:
            self._blocks_of[x].add(bid)
        return bid

    def _block_path(self, u: int, v: int) -> list[int] | None:
        """Block ids on the u-v path of the block-cut forest, else None.

        Alternating BFS: vertices reach the blocks containing them,
        blocks reach their member vertices.
        """
        via_vertex: dict[int, int] = {}  # block -> vertex it was entered from
        via_block: dict[int, int] = {}  # vertex -> block it was entered from
        seen_v = {u}
        seen_b: set[int] = set()
        frontier = [u]
        target = -1
        while frontier and target == -1:
            nxt: list[int] = []
            for x in frontier:
                for bid in self._blocks_of[x]:
                    if bid in seen_b:
                        continue
                    seen_b.add(bid)
                    via_vertex[bid] = x
                    if v in self._block_nodes[bid]:
                        target = bid
                        break
                    for y in self._block_nodes[bid]:
                        if y not in seen_v:
                            seen_v.add(y)
                            via_block[y] = bid
                            nxt.append(y)
                if target != -1:
                    break
            frontier = nxt
        if target == -1:
            return None
        path = [target]
        x = via_vertex[target]
        while x != u:
            bid = via_block[x]
            path.append(bid)
            x = via_vertex[bid]
        path.reverse()
        return path

    def _merged_block_planar(self, path: list[int], u: int, v: int) -> bool:
        nodes: set[int] = set()
        deg: dict[int, int] = {}
        edges: list[tuple[int, int]] = []
        for bid in path:
            edges.extend(self._block_edges[bid])
            nodes |= self._block_nodes[bid]
        index = {x: i for i, x in enumerate(sorted(nodes))}
        adj: list[list[int]] = [[] for _ in index]
        for a, b in edges:
            adj[index[a]].append(index[b])
            adj[index[b]].append(index[a])
        adj[index[u]].append(index[v])
        adj[index[v]].append(index[u])
        return _lr_planar(len(index), adj)

    def _merge_blocks(self, path: list[int], u: int, v: int) -> None:
        edges: list[tuple[int, int]] = [(u, v)]
        nodes: set[int] = set()
        for bid in path:
            edges.extend(self._block_edges.pop(bid))
            bn = self._block_nodes.pop(bid)
            nodes |= bn
            for x in bn:
                self._blocks_of[x].discard(bid)
        merged = self._install_block(edges)
        del merged  # id unused; installation updates all indexes
