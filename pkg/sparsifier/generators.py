"""Graph generators for the gen command and the test suite."""
import itertools
import logging
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from sparsifier.errors import ConfigError
from sparsifier.graph import DIRECTED, UNDIRECTED, Graph


logger = logging.getLogger(__name__)


def complete_graph(n: int, kind: str = UNDIRECTED) -> Graph:
    if n < 1:
        raise ConfigError("clique needs n >= 1")
    pairs = itertools.permutations(range(n), 2) if kind == DIRECTED else itertools.combinations(range(n), 2)
    return Graph.from_edges(n, kind, [(u, v, 1.0) for u, v in pairs])


def from_networkx(G: nx.Graph, weight: str = "weight") -> Graph:
    """Relabels nodes to 0..n-1 in sorted order; missing weights count as 1."""
    nodes = sorted(G.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    kind = DIRECTED if G.is_directed() else UNDIRECTED
    edges = [(index[u], index[v], data.get(weight, 1.0)) for u, v, data in G.edges(data=True)]
    return Graph.from_edges(len(nodes), kind, edges)


def gnp_graph(n: int, p: float, seed: int = 0, directed: bool = False,
              weight_range: Optional[Tuple[float, float]] = None) -> Graph:
    """Erdős–Rényi G(n, p); unit weights unless weight_range is given (uniform, seeded)."""
    if n < 1:
        raise ConfigError("gnp needs n >= 1")
    if not 0 <= p <= 1:
        raise ConfigError(f"gnp needs p in [0, 1], got {p}")
    G = nx.gnp_random_graph(n, p, seed=seed, directed=directed)
    G.add_nodes_from(range(n))
    if weight_range is not None:
        low, high = weight_range
        rng = np.random.default_rng(seed)
        draws = rng.uniform(low, high, size=G.number_of_edges())
        for (u, v), w in zip(sorted(G.edges()), draws):
            G[u][v]["weight"] = float(w)
    return from_networkx(G)
