"""
Motif hypergraph, hypergraph minimum cuts and hyperedge strengths.

Strength of a hyperedge f is the largest k such that some induced
subhypergraph containing f has minimum cut >= k. Exact strengths come from
recursive min-cut peeling; larger hypergraphs get underestimates from a
level-doubling scheme that keeps sum w/kappa' within c*r*(n-1).
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from sparsifier.conf import number_setting
from sparsifier.errors import ContractViolation, InvalidGraphError, LimitExceededError
from sparsifier.graph import Cut, Graph, MotifInstance, instance_weight


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperedge:
    vertices: Tuple[int, ...]
    weight: float
    members: Tuple[int, ...]


@dataclass(frozen=True)
class MotifHypergraph:
    """One hyperedge per distinct instance vertex set, weight summed over its instances."""

    n: int
    hyperedges: Tuple[Hyperedge, ...]
    # instance index -> hyperedge index
    instance_edge: Tuple[int, ...]

    @property
    def total_weight(self) -> float:
        return sum(h.weight for h in self.hyperedges)

    def cut_value(self, side: Iterable[int]) -> float:
        side = set(side)
        total = 0.0
        for h in self.hyperedges:
            inside = sum(1 for v in h.vertices if v in side)
            if 0 < inside < len(h.vertices):
                total += h.weight
        return total

    def component_count(self) -> int:
        """Connected components of (V, hyperedges), isolated vertices included."""
        return nx.number_connected_components(_skeleton(range(self.n), self.hyperedges, range(len(self.hyperedges))))


@dataclass(frozen=True)
class StrengthTable:
    """Per-hyperedge and per-instance strengths; exact=False marks underestimates."""

    hyperedge_strength: Tuple[float, ...]
    instance_strength: Tuple[float, ...]
    exact: bool
    # (component vertices, its min cut value) for every component the peeling visited
    components: Tuple[Tuple[Tuple[int, ...], float], ...] = ()

    def normalized_sum(self, h: MotifHypergraph) -> float:
        """sum over hyperedges of w(f) / kappa_f."""
        return sum(e.weight / k for e, k in zip(h.hyperedges, self.hyperedge_strength))


def build_motif_hypergraph(g: Graph, instances: Sequence[MotifInstance]) -> MotifHypergraph:
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for i, inst in enumerate(instances):
        groups.setdefault(inst.vertices, []).append(i)
    keys = sorted(groups)
    hyperedges = []
    instance_edge = [0] * len(instances)
    for idx, key in enumerate(keys):
        members = groups[key]
        weight = sum(instance_weight(g, instances[i]) for i in members)
        hyperedges.append(Hyperedge(vertices=key, weight=weight, members=tuple(members)))
        for i in members:
            instance_edge[i] = idx
    return MotifHypergraph(n=g.n, hyperedges=tuple(hyperedges), instance_edge=tuple(instance_edge))


def _skeleton(vertices, hyperedges: Sequence[Hyperedge], indices) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(vertices)
    for idx in indices:
        vs = hyperedges[idx].vertices
        G.add_edges_from((vs[0], v) for v in vs[1:])
    return G


def _inside(hyperedges: Sequence[Hyperedge], indices: Iterable[int], active: FrozenSet[int]) -> List[int]:
    return [i for i in indices if all(v in active for v in hyperedges[i].vertices)]


def _canonical_side(side: FrozenSet[int], active: FrozenSet[int]) -> FrozenSet[int]:
    if min(active) in side:
        return side
    return active - side


def _ma_min_cut(active: FrozenSet[int], hyperedges: Sequence[Hyperedge], indices: Sequence[int],
                stop_below: Optional[float] = None) -> Tuple[FrozenSet[int], float]:
    """
    Minimum cut by maximum-adjacency (pendant pair) orderings.

    Key of a candidate v: weight of hyperedges through v that already touch
    the ordered prefix plus weight of hyperedges through v that v would
    complete. The last vertex of each phase is separated from the one
    before it by its own cut. Among tied phase cuts the lexicographically
    smallest canonical side wins. With stop_below, returns the first phase
    cut lighter than it.
    """
    groups: Dict[int, List[int]] = {v: [v] for v in active}
    label: Dict[int, int] = {v: v for v in active}
    best_value = math.inf
    best_side: Optional[FrozenSet[int]] = None

    while len(groups) > 1:
        phase_edges = []
        for idx in indices:
            reps = tuple(sorted({label[v] for v in hyperedges[idx].vertices}))
            if len(reps) > 1:
                phase_edges.append((reps, hyperedges[idx].weight))
        incident: Dict[int, List[int]] = {v: [] for v in groups}
        for j, (reps, _) in enumerate(phase_edges):
            for v in reps:
                incident[v].append(j)

        reps_sorted = sorted(groups)
        key = {v: 0.0 for v in reps_sorted}
        touched = [0] * len(phase_edges)
        in_prefix = set()
        order = []
        while len(order) < len(reps_sorted):
            if not order:
                u = reps_sorted[0]
            else:
                u = max((v for v in reps_sorted if v not in in_prefix), key=lambda v: (key[v], -v))
            order.append(u)
            in_prefix.add(u)
            for j in incident[u]:
                reps, w = phase_edges[j]
                touched[j] += 1
                if touched[j] == 1:
                    for v in reps:
                        if v not in in_prefix:
                            key[v] += w
                if touched[j] == len(reps) - 1:
                    for v in reps:
                        if v not in in_prefix:
                            key[v] += w

        s, t = order[-2], order[-1]
        phase_value = sum(phase_edges[j][1] for j in incident[t])
        side = _canonical_side(frozenset(groups[t]), active)
        if phase_value < best_value or (phase_value == best_value and sorted(side) < sorted(best_side)):
            best_value = phase_value
            best_side = side
            if stop_below is not None and best_value < stop_below:
                break
        groups[s].extend(groups.pop(t))
        for v in groups[s]:
            label[v] = s

    return _canonical_side(best_side, active), best_value


def brute_force_min_cut(active: FrozenSet[int], hyperedges: Sequence[Hyperedge],
                         indices: Sequence[int]) -> Tuple[FrozenSet[int], float]:
    """Exhaustive search; ties go to the lexicographically smallest canonical side."""
    verts = sorted(active)
    first, rest = verts[0], verts[1:]
    best_value = math.inf
    best_side = None
    for size in range(0, len(rest)):
        for combo in itertools.combinations(rest, size):
            side = frozenset((first,) + combo)
            value = 0.0
            for idx in indices:
                vs = hyperedges[idx].vertices
                inside = sum(1 for v in vs if v in side)
                if 0 < inside < len(vs):
                    value += hyperedges[idx].weight
            if value < best_value or (value == best_value and sorted(side) < sorted(best_side)):
                best_value = value
                best_side = side
    return best_side, best_value


def hypergraph_min_cut(h: MotifHypergraph, active: Iterable[int], method: str = "ma") -> Tuple[Cut, float]:
    """
    Minimum cut of the subhypergraph induced by `active`.

    The returned Cut holds side S (smallest active vertex included); the
    other side is active - S. method="brute" runs the exhaustive kernel.
    """
    active = frozenset(active)
    if len(active) < 2:
        raise InvalidGraphError("hypergraph_min_cut needs at least 2 active vertices")
    indices = _inside(h.hyperedges, range(len(h.hyperedges)), active)
    if method == "brute":
        limit = number_setting("SPARSIFY_BRUTE_FORCE_CUT_LIMIT", 20, int)
        if len(active) > limit:
            raise LimitExceededError("brute-force min cut vertex count", len(active), limit)
        side, value = brute_force_min_cut(active, h.hyperedges, indices)
    elif method == "ma":
        side, value = _ma_min_cut(active, h.hyperedges, indices)
    else:
        raise InvalidGraphError(f"unknown min cut method {method!r}")
    return Cut(n=h.n, side=side), value


def _instance_strengths(h: MotifHypergraph, kappa: Sequence[float]) -> Tuple[float, ...]:
    return tuple(kappa[e] for e in h.instance_edge)


def exact_strengths(h: MotifHypergraph, limit: Optional[int] = None) -> StrengthTable:
    """
    Recursive min-cut peeling. A hyperedge crossing the min cut c of the
    component holding it gets max(inherited, c); both sides recurse with
    inherited = max(inherited, c).
    """
    if limit is None:
        limit = number_setting("SPARSIFY_EXACT_STRENGTH_LIMIT", 64, int)
    if h.n > limit:
        raise LimitExceededError("exact strength vertex count", h.n, limit)
    kappa = [0.0] * len(h.hyperedges)
    components = []
    stack = [(frozenset(range(h.n)), list(range(len(h.hyperedges))), 0.0)]
    while stack:
        verts, inside, inherited = stack.pop()
        if not inside:
            continue
        side, c = _ma_min_cut(verts, h.hyperedges, inside)
        components.append((tuple(sorted(verts)), c))
        level = max(inherited, c)
        other = verts - side
        left, right = [], []
        for idx in inside:
            vs = h.hyperedges[idx].vertices
            if all(v in side for v in vs):
                left.append(idx)
            elif all(v in other for v in vs):
                right.append(idx)
            else:
                kappa[idx] = level
        stack.append((other, right, level))
        stack.append((side, left, level))
    components.sort()
    return StrengthTable(
        hyperedge_strength=tuple(kappa),
        instance_strength=_instance_strengths(h, kappa),
        exact=True,
        components=tuple(components),
    )


def _split_below(verts: FrozenSet[int], inside: List[int], hyperedges: Sequence[Hyperedge],
                 level: float) -> List[Tuple[FrozenSet[int], List[int]]]:
    """Split along cuts lighter than `level` until every piece is level-connected."""
    certified = []
    stack = [(verts, inside)]
    while stack:
        piece, idxs = stack.pop()
        if not idxs:
            continue
        side, value = _ma_min_cut(piece, hyperedges, idxs, stop_below=level)
        if value >= level:
            certified.append((piece, idxs))
            continue
        other = piece - side
        stack.append((side, [i for i in idxs if all(v in side for v in hyperedges[i].vertices)]))
        stack.append((other, [i for i in idxs if all(v in other for v in hyperedges[i].vertices)]))
    return certified


def iterative_strength_estimate(h: MotifHypergraph) -> StrengthTable:
    """
    Level-doubling underestimates. Every component is w_min-connected; at
    level 2k pieces are split along cuts lighter than 2k and hyperedges that
    fall out of the pieces keep kappa' = k. Hence kappa' <= kappa < 2 kappa'.
    """
    m = len(h.hyperedges)
    if m == 0:
        return StrengthTable(hyperedge_strength=(), instance_strength=_instance_strengths(h, []), exact=False)
    level = min(e.weight for e in h.hyperedges)
    kappa = [level] * m
    skeleton = _skeleton(range(h.n), h.hyperedges, range(m))
    pieces = []
    for comp in nx.connected_components(skeleton):
        comp = frozenset(comp)
        idxs = _inside(h.hyperedges, range(m), comp)
        if idxs:
            pieces.append((comp, idxs))
    rounds = 0
    while pieces:
        rounds += 1
        next_level = 2 * level
        survivors = []
        for piece, idxs in pieces:
            for sub, sub_idxs in _split_below(piece, idxs, h.hyperedges, next_level):
                for idx in sub_idxs:
                    kappa[idx] = next_level
                survivors.append((sub, sub_idxs))
        pieces = survivors
        level = next_level
    logger.debug("Strength estimate settled after %s doubling levels", rounds)
    return StrengthTable(hyperedge_strength=tuple(kappa), instance_strength=_instance_strengths(h, kappa), exact=False)


def estimate_strengths(h: MotifHypergraph, exact_limit: Optional[int] = None,
                       constant: Optional[float] = None) -> StrengthTable:
    """
    Strength underestimates with sum w/kappa' <= c*r*(n-1). Delegates to
    exact_strengths within the exact limit.
    """
    if exact_limit is None:
        exact_limit = number_setting("SPARSIFY_EXACT_STRENGTH_LIMIT", 64, int)
    if constant is None:
        constant = number_setting("SPARSIFY_STRENGTH_CONSTANT", 4.0)
    if not h.hyperedges:
        return StrengthTable(hyperedge_strength=(), instance_strength=_instance_strengths(h, []), exact=True)
    if h.n <= exact_limit:
        table = exact_strengths(h, limit=exact_limit)
    else:
        table = iterative_strength_estimate(h)
    r = max(len(e.vertices) for e in h.hyperedges)
    total = table.normalized_sum(h)
    bound = constant * r * max(h.n - 1, 1)
    if total > bound * (1 + 1e-9):
        raise ContractViolation(f"strength estimate sum {total:.6g} exceeds c*r*(n-1) = {bound:.6g}")
    if any(k <= 0 for k in table.hyperedge_strength):
        raise ContractViolation("strength estimate produced a nonpositive value")
    return table
