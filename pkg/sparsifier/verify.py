"""
Brute-force oracles: motif cut errors, instance connectivities and the
invariant suite that runs the exact pipeline on small graphs.
"""
import itertools
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from sparsifier.conf import number_setting
from sparsifier.connectivity import edge_connectivities, layered_importance, motif_weighted_graph
from sparsifier.errors import ConfigError, InvalidGraphError, LimitExceededError
from sparsifier.graph import Cut, EdgeKey, Graph, Motif, MotifInstance, motif_cut_value
from sparsifier.hypergraph import (
    MotifHypergraph,
    brute_force_min_cut,
    build_motif_hypergraph,
    exact_strengths,
    iterative_strength_estimate,
)
from sparsifier.motifs import automorphism_count, count_homomorphisms, enumerate_instances
from sparsifier.weights import motif_weights_fast, motif_weights_naive, sigma_triangle_total


logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"

TOLERANCE = 1e-9
CHUNK = 2048


@dataclass
class InvariantResult:
    name: str
    passed: bool
    slack: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "slack": _json_number(self.slack), "detail": self.detail}


@dataclass
class VerificationReport:
    mode: str
    cuts_checked: int
    max_relative_error: float = 0.0
    argmax_cut: Optional[Cut] = None
    invariants: List[InvariantResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.invariants)

    def failures(self) -> List[InvariantResult]:
        return [item for item in self.invariants if not item.passed]

    def to_dict(self) -> dict:
        return {
            "max_relative_error": _json_number(self.max_relative_error),
            "argmax_cut": self.argmax_cut.as_list() if self.argmax_cut is not None else None,
            "cuts_checked": self.cuts_checked,
            "mode": self.mode,
            "invariants": [item.to_dict() for item in self.invariants],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _json_number(value: float):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


class CutScanner:
    """
    A fixed batch of cuts as a boolean side matrix, evaluated against
    weighted vertex sets with numpy in chunks.
    """

    def __init__(self, n: int, sides: np.ndarray, mode: str, threads: Optional[int] = None):
        self.n = n
        self.sides = sides
        self.mode = mode
        self.threads = max(1, int(threads) if threads is not None else number_setting("SPARSIFY_THREADS", 1, int))

    @classmethod
    def exhaustive(cls, n: int, limit: Optional[int] = None, threads: Optional[int] = None) -> "CutScanner":
        """All 2^(n-1) - 1 cuts with vertex 0 on side S, in enumerate_cuts order."""
        if limit is None:
            limit = number_setting("SPARSIFY_CUT_ENUMERATION_LIMIT", 20, int)
        if n > limit:
            raise LimitExceededError("exhaustive cut scan vertex count", n, limit, hint="use sampled mode")
        if n < 2:
            return cls(n, np.zeros((0, n), dtype=bool), EXHAUSTIVE, threads)
        masks = np.arange((1 << (n - 1)) - 1, dtype=np.int64)
        sides = np.ones(((1 << (n - 1)) - 1, n), dtype=bool)
        sides[:, 1:] = (masks[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
        return cls(n, sides, EXHAUSTIVE, threads)

    @classmethod
    def sampled(cls, n: int, samples: int, rng: np.random.Generator, threads: Optional[int] = None) -> "CutScanner":
        """Every singleton cut plus `samples` uniform random proper cuts."""
        if samples < 1:
            raise ConfigError("samples must be at least 1")
        if n < 2:
            raise InvalidGraphError("sampled cuts need at least 2 vertices")
        singletons = np.eye(n, dtype=bool)
        random_sides = rng.random((samples, n)) < 0.5
        sizes = random_sides.sum(axis=1)
        bad = (sizes == 0) | (sizes == n)
        while bad.any():
            random_sides[bad] = rng.random((int(bad.sum()), n)) < 0.5
            sizes = random_sides.sum(axis=1)
            bad = (sizes == 0) | (sizes == n)
        return cls(n, np.vstack([singletons, random_sides]), SAMPLED, threads)

    def __len__(self) -> int:
        return len(self.sides)

    def cut(self, index: int) -> Cut:
        return Cut.of(self.n, np.flatnonzero(self.sides[index]))

    def values(self, vertex_sets: Sequence[Sequence[int]], weights: Sequence[float]) -> np.ndarray:
        """Per cut: total weight of the vertex sets with members on both sides."""
        if not len(vertex_sets) or not len(self.sides):
            return np.zeros(len(self.sides))
        membership = np.zeros((self.n, len(vertex_sets)), dtype=np.int32)
        for j, vs in enumerate(vertex_sets):
            membership[list(vs), j] = 1
        sizes = membership.sum(axis=0)
        w = np.asarray(weights, dtype=float)

        def scan(start):
            block = self.sides[start:start + CHUNK].astype(np.int32)
            counts = block @ membership
            crossing = (counts > 0) & (counts < sizes)
            return crossing.astype(float) @ w

        starts = range(0, len(self.sides), CHUNK)
        if self.threads > 1 and len(self.sides) > CHUNK:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts = list(pool.map(scan, starts))
        else:
            parts = [scan(s) for s in starts]
        return np.concatenate(parts)

    def instance_values(self, instances: Sequence[MotifInstance]) -> np.ndarray:
        grouped: Dict[Tuple[int, ...], float] = {}
        for inst in instances:
            grouped[inst.vertices] = grouped.get(inst.vertices, 0.0) + inst.weight
        keys = list(grouped)
        return self.values(keys, [grouped[k] for k in keys])

    def crossing(self, vertices: Sequence[int]) -> np.ndarray:
        inside = self.sides[:, list(vertices)].sum(axis=1)
        return (inside > 0) & (inside < len(vertices))


def relative_errors(base: np.ndarray, other: np.ndarray) -> np.ndarray:
    """|other - base| / base; infinite where base is 0 and other is not."""
    errors = np.zeros_like(base, dtype=float)
    positive = base > 0
    errors[positive] = np.abs(other[positive] - base[positive]) / base[positive]
    errors[~positive & (other != 0)] = math.inf
    return errors


def _check_pair(g: Graph, g_hat: Graph) -> None:
    if g.n != g_hat.n:
        raise InvalidGraphError(f"vertex counts differ: {g.n} vs {g_hat.n}")
    if g.kind != g_hat.kind:
        raise InvalidGraphError(f"graph kinds differ: {g.kind} vs {g_hat.kind}")


def _instances(g: Graph, m: Motif, induced: bool) -> List[MotifInstance]:
    if induced:
        from sparsifier.lab import enumerate_induced_instances
        return enumerate_induced_instances(g, m)
    return enumerate_instances(g, m)


def _scan_report(scanner: CutScanner, g: Graph, g_hat: Graph, m: Motif, induced: bool,
                 epsilon: Optional[float]) -> VerificationReport:
    base = scanner.instance_values(_instances(g, m, induced))
    other = scanner.instance_values(_instances(g_hat, m, induced))
    errors = relative_errors(base, other)
    report = VerificationReport(mode=scanner.mode, cuts_checked=len(scanner))
    if len(errors):
        worst = int(np.argmax(errors))
        report.max_relative_error = float(errors[worst])
        report.argmax_cut = scanner.cut(worst)
    if epsilon is not None:
        report.invariants.append(InvariantResult(
            name=f"cut_error[{m.label}]",
            passed=report.max_relative_error <= epsilon,
            slack=epsilon - report.max_relative_error,
        ))
    logger.info("%s cut error for %s over %s cuts: %.6g", scanner.mode, m.label, len(scanner), report.max_relative_error)
    return report


def max_cut_error(g: Graph, g_hat: Graph, m: Motif, *, induced: bool = False, epsilon: Optional[float] = None,
                  threads: Optional[int] = None) -> VerificationReport:
    """Exhaustive max relative motif cut error of g_hat against g."""
    _check_pair(g, g_hat)
    limit = number_setting("SPARSIFY_VERIFY_LIMIT", 20, int)
    if g.n > limit:
        raise LimitExceededError("exhaustive verification vertex count", g.n, limit, hint="use sampled mode")
    return _scan_report(CutScanner.exhaustive(g.n, threads=threads), g, g_hat, m, induced, epsilon)


def sampled_cut_error(g: Graph, g_hat: Graph, m: Motif, samples: int, rng: np.random.Generator, *,
                      induced: bool = False, epsilon: Optional[float] = None,
                      threads: Optional[int] = None) -> VerificationReport:
    _check_pair(g, g_hat)
    return _scan_report(CutScanner.sampled(g.n, samples, rng, threads=threads), g, g_hat, m, induced, epsilon)


def merge_reports(reports: Sequence[VerificationReport]) -> VerificationReport:
    """One report for several motifs checked on the same cuts: the worst error wins."""
    merged = VerificationReport(mode=reports[0].mode, cuts_checked=reports[0].cuts_checked)
    for report in reports:
        if report.argmax_cut is not None and (merged.argmax_cut is None
                                              or report.max_relative_error > merged.max_relative_error):
            merged.max_relative_error = report.max_relative_error
            merged.argmax_cut = report.argmax_cut
        merged.invariants.extend(report.invariants)
    return merged


def instance_connectivities(g: Graph, instances: Sequence[MotifInstance],
                            scanner: Optional[CutScanner] = None) -> np.ndarray:
    """k_I for every instance: the lightest motif cut crossing it."""
    limit = number_setting("SPARSIFY_INSTANCE_CONNECTIVITY_LIMIT", 16, int)
    if g.n > limit:
        raise LimitExceededError("instance connectivity vertex count", g.n, limit)
    if scanner is None:
        scanner = CutScanner.exhaustive(g.n)
    values = scanner.instance_values(instances)
    return np.array([values[scanner.crossing(inst.vertices)].min() for inst in instances])


def instance_connectivity(g: Graph, m: Motif, inst: MotifInstance,
                          instances: Optional[Sequence[MotifInstance]] = None) -> float:
    """k_I for one instance; pass the instance list of g to skip re-enumeration."""
    limit = number_setting("SPARSIFY_INSTANCE_CONNECTIVITY_LIMIT", 16, int)
    if g.n > limit:
        raise LimitExceededError("instance connectivity vertex count", g.n, limit)
    if instances is None:
        instances = enumerate_instances(g, m)
    scanner = CutScanner.exhaustive(g.n)
    values = scanner.instance_values(instances)
    return float(values[scanner.crossing(inst.vertices)].min())


def brute_force_strengths(h: MotifHypergraph) -> Tuple[float, ...]:
    """kappa_f = max over vertex subsets U containing f of the min cut of H[U] (definition, tiny n)."""
    kappa = [0.0] * len(h.hyperedges)
    vertices = sorted({v for e in h.hyperedges for v in e.vertices})
    for size in range(2, len(vertices) + 1):
        for subset in itertools.combinations(vertices, size):
            active = frozenset(subset)
            inside = [i for i, e in enumerate(h.hyperedges) if active.issuperset(e.vertices)]
            if not inside:
                continue
            _, value = brute_force_min_cut(active, h.hyperedges, inside)
            for i in inside:
                kappa[i] = max(kappa[i], value)
    return tuple(kappa)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= TOLERANCE * max(1.0, abs(a), abs(b))


def _deviation(pairs) -> float:
    worst = 0.0
    for a, b in pairs:
        worst = max(worst, abs(a - b) / max(1.0, abs(a), abs(b)))
    return worst


def _equality(name: str, pairs, detail: str = "") -> InvariantResult:
    deviation = _deviation(pairs)
    return InvariantResult(name=name, passed=deviation <= TOLERANCE, slack=-deviation, detail=detail)


def _at_most(name: str, pairs, detail: str = "") -> InvariantResult:
    """Every (value, bound) pair must satisfy value <= bound (relative tolerance)."""
    slack = math.inf
    passed = True
    for value, bound in pairs:
        slack = min(slack, bound - value)
        if value > bound + TOLERANCE * max(1.0, abs(bound)):
            passed = False
    return InvariantResult(name=name, passed=passed, slack=0.0 if slack == math.inf else slack, detail=detail)


def _laminar(sets: Sequence[frozenset]) -> bool:
    for a, b in itertools.combinations(sets, 2):
        if a & b and not (a <= b or b <= a):
            return False
    return True


def check_invariants(g: Graph, m: Motif, cfg=None) -> VerificationReport:
    """
    Run the exact pipeline on a small graph and check every structural
    property it promises. Failures are report entries, never exceptions.
    """
    from sparsifier.sparsify import SparsifyConfig, critical_count_bound, critical_threshold, schedule

    limit = number_setting("SPARSIFY_INVARIANT_LIMIT", 14, int)
    if g.n > limit:
        raise LimitExceededError("invariant suite vertex count", g.n, limit)
    if cfg is None:
        cfg = SparsifyConfig.from_settings()

    scanner = CutScanner.exhaustive(g.n)
    report = VerificationReport(mode=EXHAUSTIVE, cuts_checked=len(scanner))
    checks = report.invariants
    instances = enumerate_instances(g, m)
    h = build_motif_hypergraph(g, instances)
    values = scanner.instance_values(instances)
    label = m.label

    # graph-core and enumeration
    if g.n <= 10:
        pairs = [(motif_cut_value(instances, scanner.cut(i)), values[i]) for i in range(len(scanner))]
        checks.append(_equality("cut_value_two_pass", pairs))
    if g.n <= 12:
        hyper = [(h.cut_value(np.flatnonzero(scanner.sides[i])), values[i]) for i in range(len(scanner))]
        checks.append(_equality("hypergraph_cut_transfer", hyper))
        report.max_relative_error = max((abs(a - b) / b for a, b in hyper if b > 0), default=0.0)
    A = automorphism_count(m)
    if g.n <= 8 and m.r <= 4:
        homs = count_homomorphisms(g, m)
        checks.append(_equality("instance_dedup", [(len(instances) * A, homs)],
                                detail=f"{len(instances)} instances x {A} automorphisms vs {homs} homomorphisms"))

    # strengths
    exact = exact_strengths(h)
    kappa = exact.hyperedge_strength
    if g.n <= 8:
        checks.append(_equality("strength_oracle", zip(kappa, brute_force_strengths(h))))
    components = h.component_count()
    total = exact.normalized_sum(h)
    checks.append(_at_most("conn_sum_bound", [(total, g.n - components)],
                           detail=f"sum w/kappa = {total:.6g}, n - C = {g.n - components}"))
    if h.hyperedges:
        normalized = scanner.values([e.vertices for e in h.hyperedges], [e.weight / k for e, k in zip(h.hyperedges, kappa)])
        lowest = float(normalized.min()) if len(normalized) else 0.0
        if lowest > TOLERANCE:
            checks.append(_equality("weighted_cut_size", [(lowest, 1.0)]))
        else:
            checks.append(InvariantResult("weighted_cut_size", True, 0.0, detail="vacuous: some cut crosses nothing"))
        estimate = iterative_strength_estimate(h)
        checks.append(_at_most("estimate_below_strength", zip(estimate.hyperedge_strength, kappa)))
        r = max(len(e.vertices) for e in h.hyperedges)
        checks.append(_at_most("estimate_sum_bound",
                               [(estimate.normalized_sum(h), cfg.strength_constant * r * (g.n - 1))]))
        checks.append(InvariantResult("laminar_components", _laminar([frozenset(c) for c, _ in exact.components]), 0.0))

        k_inst = instance_connectivities(g, instances, scanner)
        checks.append(_at_most("strength_below_connectivity",
                               zip(exact.instance_strength, k_inst)))
    else:
        estimate = None
        k_inst = np.zeros(0)
        checks.append(InvariantResult("weighted_cut_size", True, 0.0, detail="vacuous: no instances"))

    # motif weights
    fast = motif_weights_fast(g, m)
    naive = motif_weights_naive(g, m)
    checks.append(_equality("weights_oracle", ((fast[k], naive[k]) for k in g.edge_keys)))
    if m.r >= 3:
        checks.append(_equality("sigma_homomorphism_count",
                                [(sigma_triangle_total(g, m) / A, sum(inst.weight for inst in instances))]))
    gm_values = scanner.values([key for key in g.edge_keys], [fast[key] for key in g.edge_keys])
    checks.append(_at_most("cut_sandwich_lower", zip(values, gm_values)))
    checks.append(_at_most("cut_sandwich_upper", zip(gm_values, m.r_star * values)))

    # connectivities
    conn = edge_connectivities(motif_weighted_graph(g, fast))
    oracle_pairs = []
    for (u, v), k_uv in conn.items():
        separating = scanner.sides[:, u] != scanner.sides[:, v]
        oracle_pairs.append((k_uv, float(gm_values[separating].min())))
    checks.append(_equality("gomory_hu_oracle", oracle_pairs))

    def k_edge(key: EdgeKey) -> float:
        u, v = key
        return conn[(u, v) if u < v else (v, u)]

    mu_nu = []
    nu_edge = {key: 0.0 for key in g.edge_keys}
    for inst, k_i in zip(instances, k_inst):
        mu = inst.weight / k_i
        nu = inst.weight * m.r_star / min(k_edge(key) for key in inst.edge_set)
        mu_nu.append((mu, nu))
        for key in inst.edge_set:
            nu_edge[key] += nu
    checks.append(_at_most("connectivity_importance_lower", mu_nu))
    checks.append(_at_most("connectivity_importance_upper", ((nu, m.r_star * mu) for mu, nu in mu_nu)))
    table = layered_importance(g, m, conn=conn, weights=fast)
    nu_hat = table.importance
    checks.append(_at_most("layered_importance_lower", ((nu_edge[k], nu_hat[k]) for k in g.edge_keys)))
    checks.append(_at_most("layered_importance_upper", ((nu_hat[k], 2 * nu_edge[k]) for k in g.edge_keys)))

    # critical edges
    if h.hyperedges:
        eps_prime, _ = schedule(g.n, [m], cfg)
        tau = critical_threshold(eps_prime, m, g.n, cfg)
        eta_exact = {key: 0.0 for key in g.edge_keys}
        eta_estimate = {key: 0.0 for key in g.edge_keys}
        for i, inst in enumerate(instances):
            hyperedge = h.instance_edge[i]
            for key in inst.edge_set:
                eta_exact[key] += inst.weight / kappa[hyperedge]
                eta_estimate[key] += inst.weight / estimate.hyperedge_strength[hyperedge]
        exactly_critical = {k for k, value in eta_exact.items() if value >= tau}
        kept = {k for k, value in eta_estimate.items() if value >= tau}
        missing = exactly_critical - kept
        checks.append(InvariantResult("critical_preservation", not missing, -float(len(missing)),
                                      detail=f"{len(exactly_critical)} exactly critical, {len(kept)} kept"))
        checks.append(_at_most("critical_count", [(len(kept), critical_count_bound(eps_prime, m, g.n, cfg))]))

    failed = report.failures()
    if failed:
        logger.warning("%s invariant(s) failed for %s: %s", len(failed), label, ", ".join(f.name for f in failed))
    else:
        logger.info("All %s invariants hold for %s", len(checks), label)
    return report
