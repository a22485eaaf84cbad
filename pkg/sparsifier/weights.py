"""
Motif-weighted graph w_M(e) = sum of weights of instances containing e.

motif_weights_fast avoids enumeration: motif vertices are split into three
parts, graph vertices are replaced by ordered tuples (one tuple per part),
and weighted triangles of the resulting tripartite sigma-graph correspond
one-to-one to injective homomorphisms of the motif. Triangle weights per
sigma-edge come from U = D W D W D.
"""
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from sparsifier.conf import number_setting
from sparsifier.errors import InvalidGraphError, LimitExceededError
from sparsifier.graph import EdgeKey, Graph, Motif, edge_key
from sparsifier.motifs import automorphism_count, enumerate_instances


logger = logging.getLogger(__name__)


def part_sizes(r: int) -> Tuple[int, int, int]:
    """Balanced split of r motif vertices, larger parts first: r=4 -> (2, 1, 1)."""
    return tuple(r // 3 + (1 if i < r % 3 else 0) for i in range(3))


def _tuple_count(n: int, k: int) -> int:
    return math.perm(n, k) if k <= n else 0


@dataclass(frozen=True, eq=False)
class SigmaGraph:
    """
    Tripartite tuple graph. Rows offsets[i]..offsets[i]+len(parts[i]) of the
    matrices belong to part i; tuple t of part i maps motif vertex
    order[offsets_motif[i] + j] to t[j].
    """

    sizes: Tuple[int, int, int]
    order: Tuple[int, ...]
    parts: Tuple[Tuple[Tuple[int, ...], ...], ...]
    offsets: Tuple[int, int, int]
    # per row: host edge keys of internal motif edges
    internal_edges: Tuple[Tuple[EdgeKey, ...], ...]
    vertex_weight: np.ndarray
    adjacency: np.ndarray
    # (row, col) with row < col -> host edge keys of the cross motif edges
    cross_edges: Dict[Tuple[int, int], Tuple[EdgeKey, ...]]

    @property
    def size(self) -> int:
        return len(self.vertex_weight)

    def part_of(self, row: int) -> int:
        for i in (2, 1, 0):
            if row >= self.offsets[i]:
                return i
        raise IndexError(row)


def build_sigma_graph(g: Graph, m: Motif, budget: Optional[int] = None) -> SigmaGraph:
    if m.r < 3:
        raise InvalidGraphError("the sigma-graph needs a motif with at least 3 vertices")
    if g.kind != m.kind:
        raise InvalidGraphError(f"motif {m.label} is {m.kind} but the graph is {g.kind}")
    if budget is None:
        budget = number_setting("SPARSIFY_SIGMA_VERTEX_BUDGET", 6000, int)
    sizes = part_sizes(m.r)
    total = sum(_tuple_count(g.n, k) for k in sizes)
    if total > budget:
        raise LimitExceededError("sigma-graph vertex count", total, budget)

    order = tuple(range(m.r))
    motif_part = {}
    local = {}
    start = 0
    for i, k in enumerate(sizes):
        for j in range(k):
            motif_part[order[start + j]] = i
            local[order[start + j]] = j
        start += k

    parts = tuple(tuple(itertools.permutations(range(g.n), k)) for k in sizes)
    offsets = (0, len(parts[0]), len(parts[0]) + len(parts[1]))
    size = offsets[2] + len(parts[2])
    weights = g.weights

    internal: List[List[Tuple[int, int]]] = [[], [], []]
    cross: Dict[Tuple[int, int], List[Tuple[int, int, bool]]] = defaultdict(list)
    for a, b in m.edges:
        pa, pb = motif_part[a], motif_part[b]
        if pa == pb:
            internal[pa].append((local[a], local[b]))
        elif pa < pb:
            # arc from the lower part's tuple into the higher part's tuple
            cross[(pa, pb)].append((local[a], local[b], True))
        else:
            cross[(pb, pa)].append((local[b], local[a], False))

    vertex_weight = np.zeros(size)
    internal_edges: List[Tuple[EdgeKey, ...]] = []
    for i, tuples in enumerate(parts):
        for t_idx, t in enumerate(tuples):
            keys = tuple(edge_key(g.kind, t[x], t[y]) for x, y in internal[i])
            w = 1.0
            for key in keys:
                wk = weights.get(key)
                if wk is None:
                    w = 0.0
                    break
                w *= wk
            vertex_weight[offsets[i] + t_idx] = w
            internal_edges.append(keys)

    adjacency = np.zeros((size, size))
    cross_edges: Dict[Tuple[int, int], Tuple[EdgeKey, ...]] = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        links = cross[(i, j)]
        for s_idx, s in enumerate(parts[i]):
            row = offsets[i] + s_idx
            if vertex_weight[row] == 0:
                continue
            s_set = set(s)
            for t_idx, t in enumerate(parts[j]):
                col = offsets[j] + t_idx
                if vertex_weight[col] == 0 or s_set.intersection(t):
                    continue
                w = 1.0
                keys = []
                for x, y, forward in links:
                    key = edge_key(g.kind, s[x], t[y]) if forward else edge_key(g.kind, t[y], s[x])
                    wk = weights.get(key)
                    if wk is None:
                        w = 0.0
                        break
                    w *= wk
                    keys.append(key)
                if w == 0.0:
                    continue
                adjacency[row, col] = adjacency[col, row] = w
                cross_edges[(row, col)] = tuple(keys)

    logger.debug("Sigma-graph for %s: parts %s, %s vertices, %s edges", m.label, sizes, size, len(cross_edges))
    return SigmaGraph(
        sizes=sizes,
        order=order,
        parts=parts,
        offsets=offsets,
        internal_edges=tuple(internal_edges),
        vertex_weight=vertex_weight,
        adjacency=adjacency,
        cross_edges=cross_edges,
    )


def sigma_triangle_weights(sg: SigmaGraph) -> Tuple[np.ndarray, np.ndarray]:
    """Per sigma-edge and per sigma-vertex total weight of the triangles through it."""
    D = sg.vertex_weight
    DW = D[:, None] * sg.adjacency
    U = (DW @ DW) * D[None, :]
    edge_tri = sg.adjacency * U
    vertex_tri = 0.5 * edge_tri.sum(axis=1)
    return edge_tri, vertex_tri


def sigma_triangle_total(g: Graph, m: Motif) -> float:
    """Total triangle weight of the sigma-graph: the weighted homomorphism count of m in g."""
    sg = build_sigma_graph(g, m)
    _, vertex_tri = sigma_triangle_weights(sg)
    # every triangle has one vertex in each part
    return float(vertex_tri[sg.offsets[0]:sg.offsets[1]].sum())


def motif_weights_naive(g: Graph, m: Motif) -> Dict[EdgeKey, float]:
    result = {key: 0.0 for key in g.edge_keys}
    for inst in enumerate_instances(g, m):
        for key in inst.edge_set:
            result[key] += inst.weight
    return result


def motif_weights_fast(g: Graph, m: Motif) -> Dict[EdgeKey, float]:
    """w_M(e) for every edge of g; single-edge motifs go through enumeration."""
    if m.r == 2:
        return motif_weights_naive(g, m)
    result = {key: 0.0 for key in g.edge_keys}
    if not g.edges:
        return result
    A = automorphism_count(m)
    sg = build_sigma_graph(g, m)
    edge_tri, vertex_tri = sigma_triangle_weights(sg)

    for row in np.flatnonzero(vertex_tri):
        contribution = vertex_tri[row]
        for key in sg.internal_edges[row]:
            result[key] += contribution
    for (row, col), keys in sg.cross_edges.items():
        contribution = edge_tri[row, col]
        if contribution == 0:
            continue
        for key in keys:
            result[key] += contribution
    return {key: float(value / A) for key, value in result.items()}
