"""
Edge connectivities of the motif-weighted graph and layered importance.

k_{M,e} is the u-v minimum cut of G_M (undirected, edge weight w_M(e),
both directions of a directed pair summed), read off a Gomory-Hu tree.
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Union

import networkx as nx
from networkx.algorithms.flow import build_residual_network, preflow_push

from sparsifier.graph import EdgeKey, Graph, Motif
from sparsifier.weights import motif_weights_fast


logger = logging.getLogger(__name__)


def motif_weighted_graph(g: Graph, weights: Mapping[EdgeKey, float]) -> nx.Graph:
    """G_M as an undirected networkx graph; zero-weight edges are kept with weight 0."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for (u, v) in g.edge_keys:
        w = weights.get((u, v), 0.0)
        a, b = (u, v) if u < v else (v, u)
        if G.has_edge(a, b):
            G[a][b]["weight"] += w
        else:
            G.add_edge(a, b, weight=w)
    return G


def gomory_hu_tree(G: nx.Graph, capacity: str = "weight") -> nx.Graph:
    """
    Gusfield's construction: n-1 max-flow computations, tree edges carry cut
    values. One residual network is built and reset by every flow.
    """
    nodes = sorted(G.nodes())
    T = nx.Graph()
    T.add_nodes_from(nodes)
    if len(nodes) < 2:
        return T
    root = nodes[0]
    position = {v: i for i, v in enumerate(nodes)}
    pred = {v: root for v in nodes}
    pred[root] = None
    weight = {v: 0.0 for v in nodes}
    residual = build_residual_network(G, capacity)

    for v in nodes[1:]:
        p = pred[v]
        cut_value, (source_side, _) = nx.minimum_cut(G, v, p, capacity=capacity, flow_func=preflow_push,
                                                     residual=residual)
        weight[v] = cut_value
        for other in source_side:
            if position[other] > position[v] and pred[other] == p:
                pred[other] = v
        # grandparent on v's side: v and its parent swap places
        if pred[p] is not None and pred[p] in source_side:
            pred[v] = pred[p]
            pred[p] = v
            weight[v] = weight[p]
            weight[p] = cut_value

    for v in nodes:
        if pred[v] is not None:
            T.add_edge(v, pred[v], weight=weight[v])
    return T


def _pairwise_min_on_paths(T: nx.Graph) -> Dict[int, Dict[int, float]]:
    result: Dict[int, Dict[int, float]] = {}
    for source in T.nodes():
        best = {source: math.inf}
        stack = [source]
        while stack:
            x = stack.pop()
            for y, data in T[x].items():
                if y not in best:
                    best[y] = min(best[x], data["weight"])
                    stack.append(y)
        result[source] = best
    return result


def edge_connectivities(gm: Union[nx.Graph, Graph], capacity: str = "weight") -> Dict[EdgeKey, float]:
    """
    u-v minimum cut value for every edge {u, v} of gm (keys with u < v),
    0 when u and v are disconnected.
    """
    if isinstance(gm, Graph):
        gm = motif_weighted_graph(gm, gm.weights)
    tree = gomory_hu_tree(gm, capacity=capacity)
    mins = _pairwise_min_on_paths(tree)
    result = {}
    for u, v in gm.edges():
        a, b = (u, v) if u < v else (v, u)
        result[(a, b)] = mins[a].get(b, 0.0)
    return result


def connectivity_of(g: Graph, conn: Mapping[EdgeKey, float], key: EdgeKey) -> float:
    """k_{M,e} for an edge key of g (directed keys look up their undirected pair)."""
    u, v = key
    return conn.get((u, v) if u < v else (v, u), 0.0)


@dataclass(frozen=True)
class ImportanceTable:
    """Per-edge importance estimates of one motif and the critical threshold they are compared with."""

    motif: str
    importance: Dict[EdgeKey, float]
    threshold: float
    layers: int = 0
    extra: Dict[str, float] = field(default_factory=dict)

    def critical(self, threshold: Optional[float] = None) -> FrozenSet[EdgeKey]:
        t = self.threshold if threshold is None else threshold
        return frozenset(e for e, value in self.importance.items() if value >= t)


def layer_guard(g: Graph, m: Motif) -> int:
    """Cap on the number of layers: ceil(r*·log2 W + r·log2 n) + 1."""
    return math.ceil(m.r_star * math.log2(g.weight_ratio()) + m.r * math.log2(max(g.n, 2))) + 1


def layered_importance(g: Graph, m: Motif, conn: Optional[Mapping[EdgeKey, float]] = None,
                       weights: Optional[Mapping[EdgeKey, float]] = None,
                       threshold: float = 0.0) -> ImportanceTable:
    """
    nu_hat(e) = sum_j (w_{M,j}(e) - w_{M,j+1}(e)) * r* / (2^j * k_min), where
    w_{M,j} are motif weights on the layer E_j = {e: k_e >= 2^j k_min}.
    """
    if weights is None:
        weights = motif_weights_fast(g, m)
    if conn is None:
        conn = edge_connectivities(motif_weighted_graph(g, weights))
    k = {key: connectivity_of(g, conn, key) for key in g.edge_keys}
    nu_hat = {key: 0.0 for key in g.edge_keys}
    positive = [value for value in k.values() if value > 0]
    if not positive:
        return ImportanceTable(motif=m.label, importance=nu_hat, threshold=threshold)

    k_min = min(positive)
    k_max = max(positive)
    top = math.ceil(math.log2(k_max / k_min)) if k_max > k_min else 0
    guard = layer_guard(g, m)
    if top > guard:
        logger.warning("Layer count %s for %s capped at %s", top, m.label, guard)
        top = guard

    def layer_keys(j):
        bound = (2 ** j) * k_min
        return [key for key, value in k.items() if value > 0 and value >= bound]

    current_keys = layer_keys(0)
    current = weights if len(current_keys) == g.m else motif_weights_fast(g.edge_subgraph(current_keys), m)
    used = 0
    for j in range(top + 1):
        next_keys = layer_keys(j + 1) if j < top else []
        if len(next_keys) == len(current_keys):
            following = current
        elif next_keys:
            following = motif_weights_fast(g.edge_subgraph(next_keys), m)
        else:
            following = {}
        scale = m.r_star / ((2 ** j) * k_min)
        touched = False
        for key in current_keys:
            diff = current.get(key, 0.0) - following.get(key, 0.0)
            if diff:
                nu_hat[key] += diff * scale
                touched = True
        if touched:
            used += 1
        current_keys, current = next_keys, following
        if not current_keys:
            break

    logger.debug("Layered importance for %s: k_min=%.6g, %s layers (%s nonempty)", m.label, k_min, top + 1, used)
    return ImportanceTable(motif=m.label, importance=nu_hat, threshold=threshold, layers=top + 1,
                           extra={"k_min": k_min, "k_max": k_max})
