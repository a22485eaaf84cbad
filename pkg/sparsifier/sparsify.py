"""
Motif cut sparsification.

Each round keeps the critical edges of every motif and samples every other
edge with probability p = 2^(-1/(2 r*_max)), reweighting survivors by 1/p.
Two engines decide criticality:
  strength      importance sum_{I ∋ e} w(I)/kappa'_I from hypergraph strengths
  connectivity  layered importance nu_hat from the motif-weighted graph

Sampling is independent per edge, or balanced: a dependent rounding with the
same per-edge probability that keeps every vertex degree near p times its
old value.
"""
import logging
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from sparsifier.conf import number_setting, setting
from sparsifier.connectivity import ImportanceTable, edge_connectivities, layered_importance, motif_weighted_graph
from sparsifier.errors import ConfigError, ContractViolation
from sparsifier.graph import EdgeKey, Graph, Motif, MotifInstance
from sparsifier.hypergraph import build_motif_hypergraph, estimate_strengths
from sparsifier.motifs import enumerate_instances
from sparsifier.weights import motif_weights_fast


logger = logging.getLogger(__name__)

ENGINE_STRENGTH = "strength"
ENGINE_CONNECTIVITY = "connectivity"
ENGINES = (ENGINE_STRENGTH, ENGINE_CONNECTIVITY)

SAMPLING_INDEPENDENT = "independent"
SAMPLING_BALANCED = "balanced"
SAMPLINGS = (SAMPLING_INDEPENDENT, SAMPLING_BALANCED)

_ROUNDING_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SparsifyConfig:
    epsilon: float = 0.5
    c1: float = 10.0
    d: float = 1 / 64
    d1: Optional[float] = None
    threshold_scale: float = 1.0
    seed: int = 0
    engine: str = ENGINE_STRENGTH
    rounds_override: Optional[int] = None
    strength_constant: float = 4.0
    sampling: str = SAMPLING_INDEPENDENT

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.threshold_scale < 1:
            raise ConfigError(f"threshold_scale must be >= 1, got {self.threshold_scale}")
        for name in ("c1", "d", "strength_constant"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.d1 is not None and not self.d1 > 0:
            raise ConfigError("d1 must be positive")
        if self.engine not in ENGINES:
            raise ConfigError(f"engine must be one of {', '.join(ENGINES)}, got {self.engine!r}")
        if self.sampling not in SAMPLINGS:
            raise ConfigError(f"sampling must be one of {', '.join(SAMPLINGS)}, got {self.sampling!r}")
        if self.rounds_override is not None and self.rounds_override < 1:
            raise ConfigError("rounds_override must be at least 1")

    @classmethod
    def from_settings(cls, **overrides) -> "SparsifyConfig":
        """Defaults from SPARSIFY_* settings; overrides equal to None are ignored."""
        values = {
            "c1": number_setting("SPARSIFY_C1", 10.0),
            "d": number_setting("SPARSIFY_D", 1 / 64),
            "d1": number_setting("SPARSIFY_D1", None),
            "threshold_scale": number_setting("SPARSIFY_THRESHOLD_SCALE", 1.0),
            "seed": number_setting("SPARSIFY_SEED", 0, int),
            "engine": setting("SPARSIFY_ENGINE", ENGINE_STRENGTH),
            "strength_constant": number_setting("SPARSIFY_STRENGTH_CONSTANT", 4.0),
            "sampling": setting("SPARSIFY_SAMPLING", SAMPLING_INDEPENDENT),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def effective_d1(self) -> float:
        return self.d1 if self.d1 is not None else self.c1 + 1


@dataclass
class RoundStats:
    round: int
    edges_in: int
    edges_out: int
    critical: Dict[str, int] = field(default_factory=dict)
    critical_union: int = 0


@dataclass
class SparsifyResult:
    graph: Graph
    eps_prime: float
    rounds: int
    engine: str
    sampling: str = SAMPLING_INDEPENDENT
    history: List[RoundStats] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "engine": self.engine,
            "sampling": self.sampling,
            "eps_prime": self.eps_prime,
            "rounds": self.rounds,
            "rounds_run": len(self.history),
            "input_edges": self.history[0].edges_in if self.history else self.graph.m,
            "output_edges": self.graph.m,
            "per_round": [asdict(s) for s in self.history],
        }


def sampling_probability(r_star_max: int) -> float:
    return 2 ** (-1 / (2 * r_star_max))


def schedule(n: int, motifs: Sequence[Motif], cfg: SparsifyConfig) -> Tuple[float, int]:
    """(eps', rounds) with eps' = eps/(5 c1 r*_max log2 n), rounds = ceil(2 c1 r*_max log2 n)."""
    r_star_max = max(m.r_star for m in motifs)
    log_n = math.log2(max(n, 2))
    eps_prime = cfg.epsilon / (5 * cfg.c1 * r_star_max * log_n)
    rounds = cfg.rounds_override or math.ceil(2 * cfg.c1 * r_star_max * log_n)
    return eps_prime, rounds


def critical_threshold(eps_prime: float, m: Motif, n: int, cfg: SparsifyConfig) -> float:
    """scale · d·eps'^2 / (r*(log2 n + r))."""
    return cfg.threshold_scale * cfg.d * eps_prime ** 2 / (m.r_star * (math.log2(max(n, 2)) + m.r))


def fast_threshold(eps_prime: float, m: Motif, n: int, cfg: SparsifyConfig) -> float:
    """scale · eps'^2 / (256 (d1 + r + 2r*) r*^2 r log2 n ln n)."""
    n = max(n, 2)
    denominator = 256 * (cfg.effective_d1 + m.r + 2 * m.r_star) * m.r_star ** 2 * m.r * math.log2(n) * math.log(n)
    return cfg.threshold_scale * eps_prime ** 2 / denominator


def critical_count_bound(eps_prime: float, m: Motif, n: int, cfg: SparsifyConfig) -> float:
    """c·r·r*^2·(n-1)(log2 n + r)/(d·eps'^2)."""
    return (cfg.strength_constant * m.r * m.r_star ** 2 * (n - 1) * (math.log2(max(n, 2)) + m.r)
            / (cfg.d * eps_prime ** 2))


def strength_importance(g: Graph, m: Motif, instances: Sequence[MotifInstance],
                        threshold: float = 0.0) -> ImportanceTable:
    """eta_hat(e) = sum over instances through e of w(I)/kappa'_I."""
    h = build_motif_hypergraph(g, instances)
    table = estimate_strengths(h)
    eta = {key: 0.0 for key in g.edge_keys}
    for inst, kappa in zip(instances, table.instance_strength):
        importance = inst.weight / kappa
        for key in inst.edge_set:
            eta[key] += importance
    return ImportanceTable(motif=m.label, importance=eta, threshold=threshold)


def _walk(adj: Dict[int, Dict[int, None]], ends: Sequence[Tuple[int, int]], start: int):
    """Walk fractional edges from start until a node repeats (cycle) or the walk is stuck (path)."""
    position = {start: 0}
    edges: List[int] = []
    node, previous = start, None
    while True:
        step = next((e for e in adj[node] if e != previous), None)
        if step is None:
            return edges, node, False
        a, b = ends[step]
        node = b if a == node else a
        edges.append(step)
        if node in position:
            return edges[position[node]:], node, True
        position[node] = len(edges)
        previous = step


def balanced_rounding(keys: Sequence[EdgeKey], p: float, rng: np.random.Generator) -> FrozenSet[EdgeKey]:
    """
    Dependent rounding of x_e = p over the bipartite graph that joins the
    out-copy of u to the in-copy of v for every key (u, v). Each key is kept
    with probability p, and every copy keeps the floor or the ceiling of p
    times its degree, so each vertex keeps p·deg(v) of the keys within 2.
    """
    if p >= 1:
        return frozenset(keys)
    if p <= 0 or not keys:
        return frozenset()
    ends = [(2 * u, 2 * v + 1) for u, v in keys]
    x = [p] * len(keys)
    adj: Dict[int, Dict[int, None]] = defaultdict(dict)
    for e, (a, b) in enumerate(ends):
        adj[a][e] = None
        adj[b][e] = None

    def settle(e: int) -> None:
        for node in ends[e]:
            del adj[node][e]
            if not adj[node]:
                del adj[node]

    while adj:
        start = next(iter(adj))
        walk, end, closed = _walk(adj, ends, start)
        if not closed and len(adj[start]) > 1:
            # restart from the dead end so the path is maximal at both ends
            walk, end, closed = _walk(adj, ends, end)
        up, down = walk[0::2], walk[1::2]
        alpha = min(min(1 - x[e] for e in up), min((x[e] for e in down), default=math.inf))
        beta = min(min(x[e] for e in up), min((1 - x[e] for e in down), default=math.inf))
        delta = alpha if rng.random() < beta / (alpha + beta) else -beta
        for e in up:
            x[e] += delta
        for e in down:
            x[e] -= delta
        for e in walk:
            if x[e] <= _ROUNDING_TOLERANCE:
                x[e] = 0.0
                settle(e)
            elif x[e] >= 1 - _ROUNDING_TOLERANCE:
                x[e] = 1.0
                settle(e)
    return frozenset(key for key, value in zip(keys, x) if value == 1.0)


def _sample(g: Graph, keep: frozenset, p: float, rng: np.random.Generator,
            sampling: str = SAMPLING_INDEPENDENT) -> Graph:
    if sampling == SAMPLING_BALANCED:
        chosen = balanced_rounding([key for key in g.edge_keys if key not in keep], p, rng)
        edges = [(u, v, w) if (u, v) in keep else (u, v, w / p)
                 for u, v, w in g.edges if (u, v) in keep or (u, v) in chosen]
        return Graph(n=g.n, kind=g.kind, edges=tuple(edges))
    # one draw per edge in canonical order, critical or not
    draws = rng.random(g.m)
    edges = []
    for (u, v, w), draw in zip(g.edges, draws):
        if (u, v) in keep:
            edges.append((u, v, w))
        elif draw < p:
            edges.append((u, v, w / p))
    return Graph(n=g.n, kind=g.kind, edges=tuple(edges))


def _check_critical_counts(critical: Dict[str, frozenset], motifs: Sequence[Motif], n: int,
                           eps_prime: float, cfg: SparsifyConfig) -> None:
    total_bound = 0.0
    for m in motifs:
        bound = critical_count_bound(eps_prime, m, n, cfg)
        total_bound += bound
        if len(critical[m.label]) > bound:
            raise ContractViolation(f"{len(critical[m.label])} critical edges for {m.label} exceed bound {bound:.6g}")
    union = frozenset().union(*critical.values()) if critical else frozenset()
    if len(union) > total_bound:
        raise ContractViolation(f"{len(union)} critical edges exceed the union bound {total_bound:.6g}")


def _strength_round(g: Graph, eps_prime: float, motifs: Sequence[Motif], cfg: SparsifyConfig,
                    rng: np.random.Generator, instances: Sequence[Sequence[MotifInstance]]):
    critical = {}
    for m, insts in zip(motifs, instances):
        tau = critical_threshold(eps_prime, m, g.n, cfg)
        critical[m.label] = strength_importance(g, m, insts, tau).critical()
    _check_critical_counts(critical, motifs, g.n, eps_prime, cfg)
    keep = frozenset().union(*critical.values())
    p = sampling_probability(max(m.r_star for m in motifs))
    return _sample(g, keep, p, rng, cfg.sampling), critical


def partial_sparsification(g: Graph, eps_prime: float, motifs: Sequence[Motif], cfg: SparsifyConfig,
                           rng: np.random.Generator,
                           instances: Optional[Sequence[Sequence[MotifInstance]]] = None) -> Graph:
    """One strength-engine round."""
    if not motifs:
        raise ConfigError("at least one motif is required")
    if not 0 < eps_prime < 1:
        raise ConfigError(f"eps_prime must be in (0, 1), got {eps_prime}")
    if instances is None:
        instances = [enumerate_instances(g, m) for m in motifs]
    out, _ = _strength_round(g, eps_prime, motifs, cfg, rng, instances)
    return out


def connectivity_importance(g: Graph, m: Motif, threshold: float = 0.0) -> ImportanceTable:
    weights = motif_weights_fast(g, m)
    conn = edge_connectivities(motif_weighted_graph(g, weights))
    return layered_importance(g, m, conn=conn, weights=weights, threshold=threshold)


def _connectivity_round(g: Graph, eps_prime: float, motifs: Sequence[Motif], cfg: SparsifyConfig,
                        rng: np.random.Generator):
    critical = {}
    if g.m:
        # importances are computed with the minimum weight rescaled to 1
        w_min = min(w for _, _, w in g.edges)
        scaled = g.rescaled(1 / w_min)
        for m in motifs:
            threshold = fast_threshold(eps_prime, m, g.n, cfg)
            critical[m.label] = connectivity_importance(scaled, m, threshold).critical()
    else:
        critical = {m.label: frozenset() for m in motifs}
    keep = frozenset().union(*critical.values())
    p = sampling_probability(max(m.r_star for m in motifs))
    # sampling uses the original weights
    return _sample(g, keep, p, rng, cfg.sampling), critical


def fast_partial_sparsification(g: Graph, eps_prime: float, motifs: Sequence[Motif], cfg: SparsifyConfig,
                                rng: np.random.Generator) -> Graph:
    """One connectivity-engine round (no instance enumeration)."""
    if not motifs:
        raise ConfigError("at least one motif is required")
    if not 0 < eps_prime < 1:
        raise ConfigError(f"eps_prime must be in (0, 1), got {eps_prime}")
    out, _ = _connectivity_round(g, eps_prime, motifs, cfg, rng)
    return out


def round_generator(base_seed: int, round_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([base_seed, round_index]))


def _surviving(instances: Sequence[MotifInstance], g: Graph) -> List[MotifInstance]:
    weights = g.weights
    kept = []
    for inst in instances:
        if all(key in weights for key in inst.edge_set):
            kept.append(inst.reweighted(g))
    return kept


def run_motif_sparsification(g: Graph, motifs: Sequence[Motif], cfg: SparsifyConfig,
                             rng: Optional[np.random.Generator] = None) -> SparsifyResult:
    """Repeated partial sparsification with the configured engine, plus per-round stats."""
    if not motifs:
        raise ConfigError("at least one motif is required")
    eps_prime, rounds = schedule(g.n, motifs, cfg)
    growth = (1 + eps_prime) ** rounds
    if growth > 1 + cfg.epsilon:
        logger.warning("(1+eps')^rounds = %.6f exceeds 1+eps = %.6f", growth, 1 + cfg.epsilon)
    base_seed = cfg.seed if rng is None else int(rng.integers(2 ** 63))
    logger.info("Sparsifying n=%s m=%s with %s engine (%s sampling): %s rounds, eps'=%.3g, motifs %s",
                g.n, g.m, cfg.engine, cfg.sampling, rounds, eps_prime, ", ".join(m.label for m in motifs))

    result = SparsifyResult(graph=g, eps_prime=eps_prime, rounds=rounds, engine=cfg.engine, sampling=cfg.sampling)
    if g.n < 2 or g.m == 0:
        return result

    instances = None
    if cfg.engine == ENGINE_STRENGTH:
        instances = [enumerate_instances(g, m) for m in motifs]

    current = g
    for t in range(rounds):
        rng_t = round_generator(base_seed, t)
        if cfg.engine == ENGINE_STRENGTH:
            nxt, critical = _strength_round(current, eps_prime, motifs, cfg, rng_t, instances)
            instances = [_surviving(insts, nxt) for insts in instances]
        else:
            nxt, critical = _connectivity_round(current, eps_prime, motifs, cfg, rng_t)
        union = frozenset().union(*critical.values())
        result.history.append(RoundStats(
            round=t,
            edges_in=current.m,
            edges_out=nxt.m,
            critical={label: len(edges) for label, edges in critical.items()},
            critical_union=len(union),
        ))
        logger.debug("Round %s: %s -> %s edges, %s critical", t, current.m, nxt.m, len(union))
        # every edge critical: later rounds see the same graph and keep it unchanged
        fixed_point = len(union) == current.m
        current = nxt
        if current.m == 0:
            logger.info("All edges dropped after round %s", t)
            break
        if fixed_point:
            logger.info("Every edge critical in round %s; remaining rounds are the identity", t)
            break

    result.graph = current
    logger.info("Sparsified %s -> %s edges", g.m, current.m)
    return result


def motif_sparsification(g: Graph, motifs: Sequence[Motif], cfg: SparsifyConfig,
                         rng: Optional[np.random.Generator] = None) -> Graph:
    return run_motif_sparsification(g, motifs, cfg, rng).graph
