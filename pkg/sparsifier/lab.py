"""
Induced-motif lab: induced instances, the Δ⁻ graph (a clique with the three
edges of one triangle removed), the clique-minus-edge pair that does admit a
sparse reweighted approximation, and a heuristic search for sparse
sparsifiers of Δ⁻.
"""
import itertools
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from sparsifier.errors import ConfigError
from sparsifier.graph import UNDIRECTED, EdgeKey, Graph, Motif, MotifInstance, edge_key
from sparsifier.motifs import enumerate_instances, preset_motif
from sparsifier.verify import CutScanner, VerificationReport, max_cut_error, relative_errors


logger = logging.getLogger(__name__)

SPECIAL = (0, 1, 2)
DEFAULT_GRID = (0.5, 1.0, 2.0)
POOL_SUBGRAPH = "subgraph"
POOL_COMPLETE = "complete"
POOLS = (POOL_SUBGRAPH, POOL_COMPLETE)


def _induced_edge_count(g: Graph, vertices: Sequence[int]) -> int:
    if g.directed:
        return sum(1 for a, b in itertools.permutations(vertices, 2) if g.has_edge(a, b))
    return sum(1 for a, b in itertools.combinations(vertices, 2) if g.has_edge(a, b))


def enumerate_induced_instances(g: Graph, m: Motif, limit: Optional[int] = None) -> List[MotifInstance]:
    """Instances whose vertex set induces exactly the motif's edges."""
    return [inst for inst in enumerate_instances(g, m, limit=limit)
            if _induced_edge_count(g, inst.vertex_map) == m.r_star]


def build_delta_minus(n: int) -> Graph:
    """Unit clique on n vertices without the edges {0,1}, {1,2}, {2,0}."""
    if n < 6:
        raise ConfigError(f"delta-minus needs n >= 6, got {n}")
    removed = {(0, 1), (1, 2), (0, 2)}
    edges = [(u, v, 1.0) for u, v in itertools.combinations(range(n), 2) if (u, v) not in removed]
    return Graph.from_edges(n, UNDIRECTED, edges)


def clique_minus_edge_example(n: int, exponent: float = 2.0) -> Tuple[Graph, Graph]:
    """
    g: unit clique without {u, v} (u = 0, v = 1).
    g_hat: {u, v} at weight n^exponent plus u-x at weight n^-exponent for every other x.
    With exponent 2 the induced 2-path cut error is at most n^-3.
    """
    if n < 5:
        raise ConfigError(f"clique-minus-edge needs n >= 5, got {n}")
    u, v = 0, 1
    g = Graph.from_edges(n, UNDIRECTED, [(a, b, 1.0) for a, b in itertools.combinations(range(n), 2)
                                          if (a, b) != (u, v)])
    heavy = float(n) ** exponent
    light = float(n) ** -exponent
    g_hat = Graph.from_edges(n, UNDIRECTED, [(u, v, heavy)] + [(u, x, light) for x in range(2, n)])
    return g, g_hat


def two_path() -> Motif:
    return preset_motif("path2", UNDIRECTED)


def example_pair_error(n: int, exponent: float = 2.0) -> VerificationReport:
    g, g_hat = clique_minus_edge_example(n, exponent)
    return max_cut_error(g, g_hat, two_path(), induced=True)


@dataclass
class GraphletCensus:
    n: int
    epsilon: float
    by_special_count: Dict[int, float]
    by_pair: Dict[str, float]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def total(self) -> float:
        return sum(self.by_special_count.values())

    def to_dict(self) -> dict:
        data = asdict(self)
        data["total"] = self.total
        return data


def graphlet_census(g_hat: Graph, epsilon: float, special: Sequence[int] = SPECIAL,
                    floor: bool = True) -> GraphletCensus:
    """
    Induced 2-path weight of a candidate sparsifier of Δ⁻, split by the number
    of special vertices each path holds and, for two, by which pair. The
    countable consequences of being an epsilon-sparsifier are evaluated with
    epsilon raised to at least 100/n unless floor is off.
    """
    n = g_hat.n
    eps = max(epsilon, 100 / n) if floor else epsilon
    a, b, c = special
    pair_names = {frozenset((a, b)): "ab", frozenset((b, c)): "bc", frozenset((c, a)): "ca"}
    counts = {i: 0.0 for i in range(4)}
    pairs = {"ab": 0.0, "bc": 0.0, "ca": 0.0}
    special_set = set(special)
    for inst in enumerate_induced_instances(g_hat, two_path()):
        held = special_set.intersection(inst.vertex_map)
        counts[len(held)] += inst.weight
        if len(held) == 2:
            pairs[pair_names[frozenset(held)]] += inst.weight

    census = GraphletCensus(n=n, epsilon=eps, by_special_count=counts, by_pair=pairs)
    census.checks = {
        "total_weight": census.total <= 3 * (1 + eps) * n,
        "off_pair_weight": counts[0] + counts[1] + counts[3] <= 27 * eps * n,
        "pair_balance": all(pairs[x] + pairs[y] <= 2 * n + 2 * eps * n
                            for x, y in (("ab", "bc"), ("bc", "ca"), ("ca", "ab"))),
    }
    return census


@dataclass
class LowerBoundResult:
    """Best induced-motif cut error found for a sparse candidate against Δ⁻ (heuristic evidence)."""

    n: int
    trials: int
    max_edges: int
    grid: Tuple[float, ...]
    seed: int
    best_error: float
    best_edges: List[Tuple[int, int, float]]
    pool: str = POOL_SUBGRAPH
    evaluations: int = 0
    accepted_moves: int = 0
    heuristic: bool = True

    def to_dict(self) -> dict:
        data = asdict(self)
        data["best_error"] = "inf" if np.isinf(self.best_error) else self.best_error
        return data


def hub_candidates(n: int, grid: Sequence[float] = DEFAULT_GRID,
                   special: Sequence[int] = SPECIAL) -> List[Dict[EdgeKey, float]]:
    """
    Stars centered on one special vertex: weight H to the other two specials
    and h to every other vertex, for every (h, H) on the grid. They use two
    pairs Δ⁻ lacks, so they only belong to the complete pool.
    """
    out = []
    for center in special:
        others = [s for s in special if s != center]
        for h, heavy in itertools.product(grid, repeat=2):
            edges = {edge_key(UNDIRECTED, center, s): float(heavy) for s in others}
            edges.update({edge_key(UNDIRECTED, center, x): float(h) for x in range(n) if x not in special})
            out.append(edges)
    return out


class _Evaluator:
    """Exhaustive induced 2-path cut error of candidates against Δ⁻(n)."""

    def __init__(self, n: int):
        self.n = n
        self.motif = two_path()
        self.scanner = CutScanner.exhaustive(n)
        self.base = self.scanner.instance_values(enumerate_induced_instances(build_delta_minus(n), self.motif))
        self.count = 0

    def __call__(self, edges: Dict[EdgeKey, float]) -> float:
        self.count += 1
        candidate = Graph.from_edges(self.n, UNDIRECTED, [(u, v, w) for (u, v), w in sorted(edges.items())])
        values = self.scanner.instance_values(enumerate_induced_instances(candidate, self.motif))
        return float(relative_errors(self.base, values).max())


def _neighbour(edges: Dict[EdgeKey, float], pool: Sequence[EdgeKey], grid: Tuple[float, ...],
               max_edges: int, rng: np.random.Generator) -> Dict[EdgeKey, float]:
    """One reweight, remove, add or swap move."""
    out = dict(edges)
    present = sorted(out)
    absent = [key for key in pool if key not in out]
    move = int(rng.integers(4))
    if move == 1 and len(present) > 1:
        del out[present[int(rng.integers(len(present)))]]
    elif move == 2 and absent and len(present) < max_edges:
        out[absent[int(rng.integers(len(absent)))]] = float(rng.choice(grid))
    elif move == 3 and absent:
        old = present[int(rng.integers(len(present)))]
        out[absent[int(rng.integers(len(absent)))]] = out.pop(old)
    else:
        key = present[int(rng.integers(len(present)))]
        choices = [w for w in grid if w != out[key]] or list(grid)
        out[key] = float(rng.choice(choices))
    return out


def lower_bound_search(n: int, trials: int = 200, seed: int = 0, grid: Sequence[float] = DEFAULT_GRID,
                       max_edges: Optional[int] = None, pool: str = POOL_SUBGRAPH) -> LowerBoundResult:
    """
    Search for a sparse weighted graph whose induced 2-path cuts track Δ⁻(n).

    The subgraph pool draws edges from Δ⁻ only; the complete pool allows any
    vertex pair and is additionally seeded with the hub candidates. Half of
    the trials go to uniformly random candidates, the rest to a hill-climb
    from the best one found, accepting strict improvements only.
    """
    if trials < 1:
        raise ConfigError("trials must be at least 1")
    if pool not in POOLS:
        raise ConfigError(f"pool must be one of {', '.join(POOLS)}, got {pool!r}")
    max_edges = max_edges or n
    grid = tuple(float(x) for x in grid)
    keys = build_delta_minus(n).edge_keys if pool == POOL_SUBGRAPH else tuple(itertools.combinations(range(n), 2))
    evaluate = _Evaluator(n)
    rng = np.random.default_rng(seed)

    best_error = np.inf
    best: Dict[EdgeKey, float] = {}
    seeds = hub_candidates(n, grid) if pool == POOL_COMPLETE else []
    for edges in (e for e in seeds if len(e) <= max_edges):
        error = evaluate(edges)
        if not best or error < best_error:
            best_error, best = error, edges
    if seeds:
        logger.debug("Hub candidates for n=%s: best error %.4g", n, best_error)

    random_trials = (trials + 1) // 2
    for _ in range(random_trials):
        size = int(rng.integers(1, max_edges + 1))
        chosen = rng.choice(len(keys), size=size, replace=False)
        weights = rng.choice(grid, size=size)
        edges = {keys[i]: float(w) for i, w in zip(chosen, weights)}
        error = evaluate(edges)
        if not best or error < best_error:
            best_error, best = error, edges

    accepted = 0
    for _ in range(trials - random_trials):
        edges = _neighbour(best, keys, grid, max_edges, rng)
        error = evaluate(edges)
        if error < best_error:
            best_error, best = error, edges
            accepted += 1

    logger.info("Lower-bound search n=%s (%s pool): best error %.4g after %s evaluations, %s accepted moves",
                n, pool, best_error, evaluate.count, accepted)
    return LowerBoundResult(n=n, trials=trials, max_edges=max_edges, grid=grid, seed=seed,
                            best_error=best_error, best_edges=[(u, v, w) for (u, v), w in sorted(best.items())],
                            pool=pool, evaluations=evaluate.count, accepted_moves=accepted)
