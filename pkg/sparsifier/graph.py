"""
Graph, motif and cut value types plus the edge-list file format.

Edge-list format:
  line 1: vertex count
  line 2: "d" (directed) or "u" (undirected)
  then one "u v w" line per edge, 0-based vertices, decimal weight.
Lines starting with "#" and blank lines are ignored.
"""
import logging
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from sparsifier.conf import number_setting
from sparsifier.errors import GraphFormatError, InvalidGraphError, LimitExceededError


logger = logging.getLogger(__name__)

DIRECTED = "directed"
UNDIRECTED = "undirected"
KINDS = (DIRECTED, UNDIRECTED)

_KIND_CODES = {"d": DIRECTED, "u": UNDIRECTED}

EdgeKey = Tuple[int, int]


def edge_key(kind: str, u: int, v: int) -> EdgeKey:
    """Canonical key of an edge: (u, v) for directed graphs, (min, max) otherwise."""
    if kind == UNDIRECTED and u > v:
        return (v, u)
    return (u, v)


@dataclass(frozen=True)
class Graph:
    """
    Weighted graph on vertices 0..n-1 with strictly positive weights.

    Build through Graph.from_edges(), which normalizes undirected edges to
    u < v, drops zero weights and sorts the edge list.
    """

    n: int
    kind: str
    edges: Tuple[Tuple[int, int, float], ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidGraphError(f"unknown graph kind {self.kind!r}")
        if self.n < 0:
            raise InvalidGraphError("vertex count must be nonnegative")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraphError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise InvalidGraphError(f"self-loop on vertex {u}")
            if not (w > 0) or math.isinf(w):
                raise InvalidGraphError(f"edge ({u}, {v}) has nonpositive or infinite weight {w}")
            if self.kind == UNDIRECTED and u > v:
                raise InvalidGraphError(f"undirected edge ({u}, {v}) is not stored with u < v")
            if (u, v) in seen:
                raise InvalidGraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, kind: str, edges: Iterable[Sequence], *, drop_zero: bool = True) -> "Graph":
        """Normalize (u, v[, w]) triples; missing weights default to 1."""
        normalized = {}
        for item in edges:
            u, v = int(item[0]), int(item[1])
            w = float(item[2]) if len(item) > 2 else 1.0
            if drop_zero and w == 0:
                continue
            key = edge_key(kind, u, v)
            if key in normalized:
                raise InvalidGraphError(f"duplicate edge {key}")
            normalized[key] = w
        return cls(n=n, kind=kind, edges=tuple((u, v, w) for (u, v), w in sorted(normalized.items())))

    @property
    def directed(self) -> bool:
        return self.kind == DIRECTED

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def weights(self) -> Dict[EdgeKey, float]:
        return {(u, v): w for u, v, w in self.edges}

    @cached_property
    def edge_keys(self) -> Tuple[EdgeKey, ...]:
        return tuple((u, v) for u, v, _ in self.edges)

    @cached_property
    def out_neighbors(self) -> Tuple[FrozenSet[int], ...]:
        """Successors for directed graphs, all neighbors for undirected graphs."""
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].add(v)
            if not self.directed:
                adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def in_neighbors(self) -> Tuple[FrozenSet[int], ...]:
        if not self.directed:
            return self.out_neighbors
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def key(self, u: int, v: int) -> EdgeKey:
        return edge_key(self.kind, u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.key(u, v) in self.weights

    def weight(self, u: int, v: int) -> Optional[float]:
        return self.weights.get(self.key(u, v))

    def weight_ratio(self) -> float:
        """W = max weight / min weight (1 for an edgeless graph)."""
        if not self.edges:
            return 1.0
        ws = [w for _, _, w in self.edges]
        return max(ws) / min(ws)

    def with_weights(self, weights: Dict[EdgeKey, float]) -> "Graph":
        """New graph over the given keys; keys with weight 0 are removed."""
        return Graph.from_edges(self.n, self.kind, ((u, v, w) for (u, v), w in weights.items()))

    def edge_subgraph(self, keys: Iterable[EdgeKey]) -> "Graph":
        ws = self.weights
        return Graph.from_edges(self.n, self.kind, ((u, v, ws[(u, v)]) for u, v in keys))

    def rescaled(self, factor: float) -> "Graph":
        return Graph(n=self.n, kind=self.kind, edges=tuple((u, v, w * factor) for u, v, w in self.edges))


@dataclass(frozen=True)
class Motif:
    """Weakly connected pattern graph on motif vertices 0..r-1."""

    r: int
    kind: str
    edges: Tuple[EdgeKey, ...]
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidGraphError(f"unknown motif kind {self.kind!r}")
        if self.r < 2:
            raise InvalidGraphError("a motif needs at least 2 vertices")
        if not self.edges:
            raise InvalidGraphError("a motif needs at least 1 edge")
        seen = set()
        for a, b in self.edges:
            if not (0 <= a < self.r and 0 <= b < self.r):
                raise InvalidGraphError(f"motif edge ({a}, {b}) outside 0..{self.r - 1}")
            if a == b:
                raise InvalidGraphError(f"motif self-loop on {a}")
            key = edge_key(self.kind, a, b)
            if key in seen:
                raise InvalidGraphError(f"duplicate motif edge ({a}, {b})")
            seen.add(key)
        skeleton = nx.Graph()
        skeleton.add_nodes_from(range(self.r))
        skeleton.add_edges_from(self.edges)
        if not nx.is_connected(skeleton):
            raise InvalidGraphError(f"motif {self.name or self.edges} is not weakly connected")

    @classmethod
    def from_edges(cls, r: int, kind: str, edges: Iterable[Sequence], name: str = "") -> "Motif":
        keys = sorted({edge_key(kind, int(e[0]), int(e[1])) for e in edges})
        return cls(r=r, kind=kind, edges=tuple(keys), name=name)

    @property
    def r_star(self) -> int:
        return len(self.edges)

    @property
    def directed(self) -> bool:
        return self.kind == DIRECTED

    @property
    def label(self) -> str:
        return self.name or f"motif(r={self.r},edges={list(self.edges)})"


@dataclass(frozen=True)
class MotifInstance:
    """
    One occurrence of a motif: vertex_map[i] is the image of motif vertex i,
    edge_set the sorted host edge keys, weight the product of their weights.
    """

    vertex_map: Tuple[int, ...]
    edge_set: Tuple[EdgeKey, ...]
    weight: float

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.vertex_map))

    @property
    def sort_key(self):
        return (self.vertices, self.edge_set)

    def reweighted(self, g: Graph) -> "MotifInstance":
        return replace(self, weight=instance_weight(g, self))


@dataclass(frozen=True)
class Cut:
    """Cut (S, V \\ S) stored as the side S; S is nonempty and proper."""

    n: int
    side: FrozenSet[int]

    def __post_init__(self):
        if not self.side:
            raise InvalidGraphError("cut side must be nonempty")
        if len(self.side) >= self.n:
            raise InvalidGraphError("cut side must be a proper subset of the vertices")
        if any(not (0 <= v < self.n) for v in self.side):
            raise InvalidGraphError("cut side has a vertex outside the graph")

    @classmethod
    def of(cls, n: int, side: Iterable[int]) -> "Cut":
        return cls(n=n, side=frozenset(int(v) for v in side))

    def crosses(self, vertices: Iterable[int]) -> bool:
        inside = outside = False
        for v in vertices:
            if v in self.side:
                inside = True
            else:
                outside = True
            if inside and outside:
                return True
        return False

    def canonical(self) -> "Cut":
        """Same cut with vertex 0 on side S."""
        if 0 in self.side:
            return self
        return Cut(n=self.n, side=frozenset(range(self.n)) - self.side)

    def as_list(self) -> List[int]:
        return sorted(self.side)


def parse_graph(text: str, *, source: str = "<string>") -> Graph:
    header: List[str] = []
    raw_edges = []
    seen: Dict[EdgeKey, int] = {}
    n = 0
    kind = UNDIRECTED
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if len(header) == 0:
            try:
                n = int(line)
            except ValueError:
                raise GraphFormatError(f"expected vertex count, got {line!r}", line_no)
            if n < 0:
                raise GraphFormatError("vertex count must be nonnegative", line_no)
            header.append(line)
            continue
        if len(header) == 1:
            code = line.lower()
            if code not in _KIND_CODES:
                raise GraphFormatError(f"expected 'd' or 'u', got {line!r}", line_no)
            kind = _KIND_CODES[code]
            header.append(line)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"expected 'u v w', got {line!r}", line_no)
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError(f"cannot parse edge {line!r}", line_no)
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", line_no)
        if not (w > 0) or math.isinf(w):
            raise GraphFormatError(f"nonpositive weight {parts[2]}", line_no)
        key = edge_key(kind, u, v)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key} (first on line {seen[key]})", line_no)
        seen[key] = line_no
        raw_edges.append((u, v, w))
    if len(header) < 2:
        raise GraphFormatError(f"{source}: missing vertex count or kind line")
    return Graph.from_edges(n, kind, raw_edges)


def load_graph(path) -> Graph:
    """Read an edge-list file; errors carry the offending line number."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise GraphFormatError(f"cannot read {path}: {e}")
    g = parse_graph(text, source=str(path))
    logger.debug("Loaded %s graph from %s (n=%s, m=%s)", g.kind, path, g.n, g.m)
    return g


def format_graph(g: Graph) -> str:
    # repr() prints the shortest string that round-trips the double
    lines = [str(g.n), "d" if g.directed else "u"]
    lines.extend(f"{u} {v} {w!r}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_graph(g))


def encode_undirected(g: Graph) -> Graph:
    """Bidirected encoding: {u, v} of weight w becomes (u, v) and (v, u) of weight sqrt(w)."""
    if g.directed:
        raise InvalidGraphError("encode_undirected expects an undirected graph")
    edges = []
    for u, v, w in g.edges:
        root = math.sqrt(w)
        edges.append((u, v, root))
        edges.append((v, u, root))
    return Graph.from_edges(g.n, DIRECTED, edges)


def bidirected_motif(m: Motif) -> Motif:
    """Directed motif whose instances are the images of undirected instances of m."""
    if m.directed:
        raise InvalidGraphError("bidirected_motif expects an undirected motif")
    arcs = [(a, b) for a, b in m.edges] + [(b, a) for a, b in m.edges]
    return Motif.from_edges(m.r, DIRECTED, arcs, name=f"{m.name}:bidirected" if m.name else "")


def instance_weight(g: Graph, inst: MotifInstance) -> float:
    ws = g.weights
    product = 1.0
    for key in inst.edge_set:
        w = ws.get(key)
        if w is None:
            raise InvalidGraphError(f"stale instance: edge {key} is not in the graph")
        product *= w
    return product


def motif_cut_value(instances: Sequence[MotifInstance], cut: Cut) -> float:
    """Total weight of instances with vertices on both sides of the cut."""
    total = 0.0
    for inst in instances:
        if cut.crosses(inst.vertex_map):
            total += inst.weight
    return total


def enumerate_cuts(n: int, limit: Optional[int] = None) -> Iterator[Cut]:
    """All 2^(n-1) - 1 proper cuts, each once, with vertex 0 on side S."""
    if limit is None:
        limit = number_setting("SPARSIFY_CUT_ENUMERATION_LIMIT", 20, int)
    if n > limit:
        raise LimitExceededError("cut enumeration vertex count", n, limit)
    if n < 2:
        return
    others = range(1, n)
    for mask in range((1 << (n - 1)) - 1):
        yield Cut(n=n, side=frozenset([0] + [v for v in others if mask >> (v - 1) & 1]))
