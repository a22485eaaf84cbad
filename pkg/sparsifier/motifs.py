"""
Motif presets, motif spec parsing, instance enumeration and automorphism counts.

Motif spec grammar:
  <preset>[:d|:u]   edge, triangle, path2, path3, pathK, cycleK, cliqueK (K <= 6)
  a path to a motif file in the edge-list format (weights are ignored)
  an inline edge list, lines separated by ";" e.g. "3;u;0 1 1;1 2 1"
"""
import itertools
import logging
import os
import re
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from sparsifier.conf import number_setting
from sparsifier.errors import GraphFormatError, InvalidGraphError, LimitExceededError, MotifSpecError
from sparsifier.graph import (
    DIRECTED,
    UNDIRECTED,
    EdgeKey,
    Graph,
    Motif,
    MotifInstance,
    edge_key,
    parse_graph,
)


logger = logging.getLogger(__name__)

MAX_PRESET_SIZE = 6

_PRESET_RE = re.compile(r"^(edge|triangle|path|cycle|clique)(\d*)$")


def _path_edges(length: int) -> List[EdgeKey]:
    return [(i, i + 1) for i in range(length)]


def _cycle_edges(k: int) -> List[EdgeKey]:
    return [(i, (i + 1) % k) for i in range(k)]


def _clique_edges(k: int) -> List[EdgeKey]:
    # For directed motifs this is the transitive tournament i -> j, i < j
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def preset_motif(name: str, kind: str = UNDIRECTED) -> Motif:
    """
    Build a named motif. Directed variants: pathK is the directed path,
    cycleK the directed cycle, triangle and cliqueK the transitive tournament.
    """
    match = _PRESET_RE.match(name.strip().lower())
    if not match:
        raise MotifSpecError(f"unknown motif preset {name!r}")
    family, size = match.group(1), match.group(2)
    label = f"{name.strip().lower()}:{'d' if kind == DIRECTED else 'u'}"

    if family in ("edge", "triangle"):
        if size:
            raise MotifSpecError(f"preset {family!r} takes no size")
        if family == "edge":
            return Motif.from_edges(2, kind, [(0, 1)], name=label)
        return Motif.from_edges(3, kind, _clique_edges(3), name=label)

    if not size:
        raise MotifSpecError(f"preset {family!r} needs a size, e.g. {family}3")
    k = int(size)
    if family == "path":
        if not 1 <= k <= MAX_PRESET_SIZE - 1:
            raise MotifSpecError(f"path length must be in 1..{MAX_PRESET_SIZE - 1}")
        return Motif.from_edges(k + 1, kind, _path_edges(k), name=label)
    if family == "cycle":
        if not 3 <= k <= MAX_PRESET_SIZE:
            raise MotifSpecError(f"cycle size must be in 3..{MAX_PRESET_SIZE}")
        return Motif.from_edges(k, kind, _cycle_edges(k), name=label)
    if not 2 <= k <= MAX_PRESET_SIZE:
        raise MotifSpecError(f"clique size must be in 2..{MAX_PRESET_SIZE}")
    return Motif.from_edges(k, kind, _clique_edges(k), name=label)


def _motif_from_text(text: str, label: str) -> Motif:
    try:
        g = parse_graph(text, source=label)
    except GraphFormatError as e:
        raise MotifSpecError(f"malformed motif {label!r}: {e}")
    try:
        return Motif.from_edges(g.n, g.kind, [(u, v) for u, v, _ in g.edges], name=label)
    except InvalidGraphError as e:
        raise MotifSpecError(f"invalid motif {label!r}: {e}")


def parse_motif(spec: str, default_kind: str = UNDIRECTED) -> Motif:
    """Resolve one motif spec; presets without a :d/:u suffix take default_kind."""
    spec = spec.strip()
    if not spec:
        raise MotifSpecError("empty motif spec")
    if ";" in spec:
        return _motif_from_text("\n".join(spec.split(";")), spec)
    if os.path.isfile(spec):
        with open(spec, "r", encoding="utf-8") as f:
            return _motif_from_text(f.read(), os.path.basename(spec))

    name, _, suffix = spec.partition(":")
    if suffix:
        codes = {"d": DIRECTED, "u": UNDIRECTED}
        if suffix.lower() not in codes:
            raise MotifSpecError(f"motif kind suffix must be :d or :u, got {suffix!r}")
        kind = codes[suffix.lower()]
    else:
        kind = default_kind
    return preset_motif(name, kind)


def parse_motif_list(specs: str, default_kind: str = UNDIRECTED) -> List[Motif]:
    """Comma-separated motif specs (inline edge lists cannot be mixed into a list)."""
    if ";" in specs:
        return [parse_motif(specs, default_kind)]
    motifs = [parse_motif(s, default_kind) for s in specs.split(",") if s.strip()]
    if not motifs:
        raise MotifSpecError("no motifs given")
    return motifs


def automorphism_count(m: Motif, limit: Optional[int] = None) -> int:
    """Number of vertex permutations mapping the motif edge set onto itself."""
    if limit is None:
        limit = number_setting("SPARSIFY_AUTOMORPHISM_LIMIT", 10, int)
    if m.r > limit:
        raise LimitExceededError("automorphism search motif size", m.r, limit)
    edges = {edge_key(m.kind, a, b) for a, b in m.edges}
    count = 0
    for perm in itertools.permutations(range(m.r)):
        if all(edge_key(m.kind, perm[a], perm[b]) in edges for a, b in m.edges):
            count += 1
    return count


def _matching_order(m: Motif) -> List[int]:
    """Connected order of motif vertices: highest degree first, then most links to the prefix."""
    degree = [0] * m.r
    links: Dict[int, set] = defaultdict(set)
    for a, b in m.edges:
        degree[a] += 1
        degree[b] += 1
        links[a].add(b)
        links[b].add(a)
    order = [max(range(m.r), key=lambda v: (degree[v], -v))]
    placed = set(order)
    while len(order) < m.r:
        frontier = [v for v in range(m.r) if v not in placed and links[v] & placed]
        nxt = max(frontier, key=lambda v: (len(links[v] & placed), degree[v], -v))
        order.append(nxt)
        placed.add(nxt)
    return order


class _Matcher:
    """Backtracking search for injective homomorphisms of a motif into a graph."""

    def __init__(self, g: Graph, m: Motif):
        self.g = g
        self.m = m
        self.order = _matching_order(m)
        position = {v: i for i, v in enumerate(self.order)}

        # constraints[i]: (earlier motif vertex, True if the arc leaves the new vertex)
        self.constraints: List[List[Tuple[int, bool]]] = [[] for _ in range(m.r)]
        out_deg = [0] * m.r
        in_deg = [0] * m.r
        for a, b in m.edges:
            out_deg[a] += 1
            in_deg[b] += 1
            if position[a] > position[b]:
                self.constraints[a].append((b, True))
            else:
                self.constraints[b].append((a, False))
        if m.directed:
            self.need = [(out_deg[v], in_deg[v]) for v in range(m.r)]
        else:
            self.need = [(out_deg[v] + in_deg[v], 0) for v in range(m.r)]

        self.out_adj = g.out_neighbors
        self.in_adj = g.in_neighbors
        if g.directed:
            self.have = [(len(self.out_adj[x]), len(self.in_adj[x])) for x in range(g.n)]
        else:
            self.have = [(len(self.out_adj[x]), 0) for x in range(g.n)]

    def _fits(self, x: int, v: int) -> bool:
        need_out, need_in = self.need[v]
        have_out, have_in = self.have[x]
        return have_out >= need_out and have_in >= need_in

    def _candidates(self, v: int, image: Dict[int, int]):
        anchor, outgoing = self.constraints[v][0]
        pool = self.in_adj[image[anchor]] if outgoing else self.out_adj[image[anchor]]
        used = set(image.values())
        for x in sorted(pool):
            if x in used or not self._fits(x, v):
                continue
            ok = True
            for other, out in self.constraints[v][1:]:
                y = image[other]
                if out:
                    ok = x in self.in_adj[y]
                else:
                    ok = x in self.out_adj[y]
                if not ok:
                    break
            if ok:
                yield x

    def homomorphisms(self, root_image: int):
        """Yield vertex maps (indexed by motif vertex) whose root maps to root_image."""
        root = self.order[0]
        if not self._fits(root_image, root):
            return
        image = {root: root_image}
        depth = len(self.order)

        def extend(i):
            if i == depth:
                yield tuple(image[v] for v in range(self.m.r))
                return
            v = self.order[i]
            for x in self._candidates(v, image):
                image[v] = x
                yield from extend(i + 1)
                del image[v]

        yield from extend(1)


def _check_kinds(g: Graph, m: Motif) -> None:
    if g.kind != m.kind:
        raise InvalidGraphError(
            f"motif {m.label} is {m.kind} but the graph is {g.kind}; "
            "use encode_undirected/bidirected_motif to mix them"
        )


def enumerate_instances(g: Graph, m: Motif, limit: Optional[int] = None) -> List[MotifInstance]:
    """
    Every subgraph of g isomorphic to m, once. Homomorphisms that differ by a
    motif automorphism share their mapped edge set and are merged.
    """
    _check_kinds(g, m)
    if limit is None:
        limit = number_setting("SPARSIFY_ENUMERATION_LIMIT", 10 ** 7, int)
    matcher = _Matcher(g, m)
    weights = g.weights
    found: Dict[Tuple[EdgeKey, ...], MotifInstance] = {}
    for root_image in range(g.n):
        for vmap in matcher.homomorphisms(root_image):
            keys = tuple(sorted(edge_key(g.kind, vmap[a], vmap[b]) for a, b in m.edges))
            if keys in found:
                continue
            weight = 1.0
            for key in keys:
                weight *= weights[key]
            found[keys] = MotifInstance(vertex_map=vmap, edge_set=keys, weight=weight)
            if len(found) > limit:
                raise LimitExceededError("motif instance count", len(found), limit)
    instances = sorted(found.values(), key=lambda inst: inst.sort_key)
    logger.debug("Enumerated %s instances of %s (n=%s, m=%s)", len(instances), m.label, g.n, g.m)
    return instances


def count_homomorphisms(g: Graph, m: Motif) -> int:
    """Injective homomorphisms by brute force over ordered vertex tuples (oracle, small n)."""
    _check_kinds(g, m)
    count = 0
    for vmap in itertools.permutations(range(g.n), m.r):
        if all(g.has_edge(vmap[a], vmap[b]) for a, b in m.edges):
            count += 1
    return count
