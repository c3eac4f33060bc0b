"""Sampled estimation of the mean red-to-blue hitting time.

The estimator replaces each exact linear solve with bounded absorbing
random walks.  The walk bound comes from a geometric-tail argument driven
by the spectral radius of the degree-normalized red-red adjacency block;
the per-node trial count comes from a Hoeffding bound on walks with values
in [0, walk_length].  In guarantee mode both knobs are derived from
epsilon/2 so that truncation error and sampling error each stay within half
of the allowed relative error.  Experiment mode relaxes everything and
additionally subsamples the start nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse

from .errors import InvalidParameter
from .graph import ShortcutSet, augmented_view, degree_stats
from .exact import _as_graph

__all__ = [
    "EstimatorConfig",
    "Estimate",
    "truncation_length",
    "sample_count",
    "spectral_radius",
    "bounded_walk",
    "estimate_mean_hitting",
    "empirical_hitting",
    "expected_bounded_steps",
]

_SPECTRAL_CAP = 1.0 - 1e-9


def truncation_length(mean_red_degree: float, epsilon: float, spectral_bound: float) -> int:
    """Walk bound that keeps the truncated tail below epsilon relative error.

    Monotone nondecreasing in ``spectral_bound``: a safer (larger) bound on
    the spectral radius never shortens the walks.
    """
    if not 0 < epsilon < 1:
        raise InvalidParameter(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0 <= spectral_bound < 1:
        raise InvalidParameter(
            f"spectral bound must lie in [0, 1), got {spectral_bound}"
        )
    if mean_red_degree < 1:
        raise InvalidParameter(f"mean red degree must be >= 1, got {mean_red_degree}")
    if spectral_bound == 0:
        return 1
    raw = (
        math.log(mean_red_degree / (epsilon * (1.0 - spectral_bound)))
        / math.log(1.0 / spectral_bound)
        - 1.0
    )
    return max(1, math.ceil(raw))


def sample_count(walk_length: int, epsilon: float, delta: float, node_count: int) -> int:
    """Per-node trial count from Hoeffding's bound on [0, walk_length] values."""
    if walk_length < 1:
        raise InvalidParameter(f"walk length must be >= 1, got {walk_length}")
    if epsilon <= 0:
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < 1:
        raise InvalidParameter(f"delta must lie in (0, 1), got {delta}")
    if node_count < 1:
        raise InvalidParameter(f"node count must be >= 1, got {node_count}")
    return math.ceil(
        (walk_length ** 2 / epsilon ** 2) * math.log(2.0 * node_count / delta)
    )


def spectral_radius(graph, tol: float = 1e-6, max_iter: int = 10000) -> float:
    """Spectral radius of the degree-normalized red-red adjacency block.

    Power iteration on the squared matrix, so both extreme eigenvalues are
    captured.  Returns 0 when the red subgraph has no edges.  The result is
    capped just below 1; weak chaining to the blue group keeps the true
    value strictly below 1 on valid instances.
    """
    reds = graph.red_ids
    r = reds.size
    pos = np.full(graph.n, -1, dtype=np.int64)
    pos[reds] = np.arange(r)
    rows, cols = [], []
    for i, v in enumerate(reds):
        nb = pos[graph.neighbors(v)]
        nb = nb[nb >= 0]
        rows.extend([i] * nb.size)
        cols.extend(nb.tolist())
    if not rows:
        return 0.0
    rows = np.array(rows, dtype=np.int64)
    cols = np.array(cols, dtype=np.int64)
    inv_sqrt = 1.0 / np.sqrt(graph.degrees[reds].astype(float))
    vals = inv_sqrt[rows] * inv_sqrt[cols]
    M = scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(r, r))

    rng = np.random.default_rng(0x5EED)
    v = rng.random(r)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(max_iter):
        w = M @ (M @ v)
        nrm = float(np.linalg.norm(w))
        if nrm <= 0.0:
            return 0.0
        new = math.sqrt(max(float(v @ w), 0.0))
        v = w / nrm
        if abs(new - est) <= tol * max(new, 1e-12):
            est = new
            break
        est = new
    return min(est, _SPECTRAL_CAP)


def bounded_walk(graph, start: int, walk_length: int, rng) -> int:
    """Steps taken by one absorbing walk from ``start``, truncated at the bound.

    Returns the number of edge traversals: the step that first lands on a
    blue node, or ``walk_length`` if the walk never gets absorbed.  A bound
    of 0 returns 0 without moving.
    """
    if not graph.is_red[start]:
        raise InvalidParameter(f"walks must start at a red node, got {start}")
    if walk_length < 0:
        raise InvalidParameter("walk length must be nonnegative")
    v = int(start)
    for step in range(1, int(walk_length) + 1):
        nb = graph.neighbors(v)
        v = int(nb[rng.integers(0, nb.size)])
        if not graph.is_red[v]:
            return step
    return int(walk_length)


@dataclass(frozen=True)
class EstimatorConfig:
    """Knobs for the sampled estimator.

    Unset fields are resolved per call: the spectral bound from power
    iteration on the augmented graph, walk length and trial count from the
    formulas, and the subsample fraction from the mode (1.0 when
    ``guarantee`` is set, 0.1 otherwise).  Guarantee mode insists on safe
    values: full sampling, a spectral override no smaller than the computed
    radius, and walk/trial overrides no smaller than the formulas with
    epsilon/2.
    """

    epsilon: float = 0.1
    delta: float = 0.1
    spectral_bound: float | None = None
    walk_length: int | None = None
    samples_per_node: int | None = None
    subsample_fraction: float | None = None
    seed: int | tuple = 0
    guarantee: bool = False

    def entropy(self) -> tuple:
        if isinstance(self.seed, tuple):
            ent = tuple(int(x) for x in self.seed)
        else:
            ent = (int(self.seed),)
        if any(x < 0 for x in ent):
            raise InvalidParameter("seed entries must be nonnegative")
        return ent

    def reseeded(self, *extra) -> "EstimatorConfig":
        return replace(self, seed=self.entropy() + tuple(int(x) for x in extra))


@dataclass(frozen=True)
class Estimate:
    """Result of one sampled evaluation, with the resolved knobs attached."""

    value: float
    walk_length: int
    samples_per_node: int
    spectral_bound: float
    subsample_fraction: float
    sampled_nodes: np.ndarray
    per_node_means: np.ndarray
    config: EstimatorConfig


def _flat_adjacency(graph):
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    chunks = []
    for v in range(graph.n):
        nb = graph.neighbors(v)
        indptr[v + 1] = indptr[v] + nb.size
        chunks.append(nb)
    return indptr, np.concatenate(chunks)


def _mean_bounded_steps(indptr, indices, is_red, start, walk_length, trials, rng):
    """Vectorized batch of bounded absorbing walks from one start node."""
    if walk_length == 0:
        return 0.0
    pos = np.full(trials, start, dtype=np.int64)
    steps = np.full(trials, walk_length, dtype=np.int64)
    alive = np.arange(trials)
    for step in range(1, walk_length + 1):
        cur = pos[alive]
        lo = indptr[cur]
        deg = indptr[cur + 1] - lo
        nxt = indices[lo + rng.integers(0, deg)]
        hit = ~is_red[nxt]
        if hit.any():
            steps[alive[hit]] = step
            keep = ~hit
            alive = alive[keep]
            pos[alive] = nxt[keep]
        else:
            pos[alive] = nxt
        if alive.size == 0:
            break
    return float(steps.mean())


def estimate_mean_hitting(instance, shortcuts=None, config: EstimatorConfig | None = None) -> Estimate:
    """Estimate the mean red-to-blue hitting time with bounded walks.

    Deterministic for a fixed (instance, shortcuts, config): every start
    node draws from its own substream keyed by (seed, node index), so the
    result does not depend on evaluation order.
    """
    config = config or EstimatorConfig()
    if not 0 < config.epsilon < 1:
        raise InvalidParameter(f"epsilon must lie in (0, 1), got {config.epsilon}")
    if not 0 < config.delta < 1:
        raise InvalidParameter(f"delta must lie in (0, 1), got {config.delta}")

    graph = _as_graph(instance, ShortcutSet.coerce(shortcuts))
    entropy = config.entropy()

    lam_hat = None
    if config.spectral_bound is None or config.guarantee:
        lam_hat = spectral_radius(graph)
    if config.spectral_bound is not None:
        if not 0 <= config.spectral_bound < 1:
            raise InvalidParameter("spectral bound must lie in [0, 1)")
        if config.guarantee and config.spectral_bound < lam_hat:
            raise InvalidParameter(
                f"guarantee mode rejects spectral bound {config.spectral_bound} "
                f"below the computed radius {lam_hat:.6f}"
            )
        lam = config.spectral_bound
    else:
        lam = lam_hat

    eps_eff = config.epsilon / 2.0 if config.guarantee else config.epsilon
    stats = degree_stats(graph)
    ell_formula = truncation_length(stats.mean_red_degree, eps_eff, lam)
    if config.walk_length is not None:
        if config.walk_length < 1:
            raise InvalidParameter("walk length must be >= 1")
        if config.guarantee and config.walk_length < ell_formula:
            raise InvalidParameter(
                f"guarantee mode needs walk length >= {ell_formula}"
            )
        ell = int(config.walk_length)
    else:
        ell = ell_formula

    t_formula = sample_count(ell, eps_eff, config.delta, graph.n)
    if config.samples_per_node is not None:
        if config.samples_per_node < 1:
            raise InvalidParameter("samples per node must be >= 1")
        if config.guarantee and config.samples_per_node < t_formula:
            raise InvalidParameter(
                f"guarantee mode needs at least {t_formula} samples per node"
            )
        trials = int(config.samples_per_node)
    else:
        trials = t_formula

    if config.subsample_fraction is not None:
        frac = float(config.subsample_fraction)
        if not 0 < frac <= 1:
            raise InvalidParameter("subsample fraction must lie in (0, 1]")
        if config.guarantee and frac != 1.0:
            raise InvalidParameter("guarantee mode requires full start-node sampling")
    else:
        frac = 1.0 if config.guarantee else 0.1

    reds = graph.red_ids
    if frac >= 1.0:
        sampled = reds
    else:
        size = max(1, int(frac * reds.size))
        sub_rng = np.random.default_rng(np.random.SeedSequence(entropy + (1,)))
        sampled = np.sort(sub_rng.choice(reds, size=size, replace=False))

    indptr, indices = _flat_adjacency(graph)
    per_node = np.empty(sampled.size)
    for j, u in enumerate(sampled):
        rng_u = np.random.default_rng(np.random.SeedSequence(entropy + (0, int(u))))
        per_node[j] = _mean_bounded_steps(
            indptr, indices, graph.is_red, int(u), ell, trials, rng_u
        )

    return Estimate(
        value=float(per_node.mean()),
        walk_length=ell,
        samples_per_node=trials,
        spectral_bound=float(lam),
        subsample_fraction=frac,
        sampled_nodes=sampled,
        per_node_means=per_node,
        config=config,
    )


def empirical_hitting(graph, nodes=None, trials: int = 10000, seed: int = 0,
                      max_steps: int = 1_000_000):
    """Unbounded absorbing-walk sample means and standard deviations.

    A plain Monte-Carlo oracle for cross-checking the exact solver on small
    instances.  Returns (means, stds) aligned with ``nodes`` (default: all
    red nodes).
    """
    if nodes is None:
        nodes = graph.red_ids
    nodes = np.asarray(list(nodes), dtype=np.int64)
    indptr, indices = _flat_adjacency(graph)
    means = np.empty(nodes.size)
    stds = np.empty(nodes.size)
    for j, u in enumerate(nodes):
        rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0, int(u))))
        pos = np.full(trials, int(u), dtype=np.int64)
        steps = np.zeros(trials, dtype=np.int64)
        alive = np.arange(trials)
        step = 0
        while alive.size:
            step += 1
            if step > max_steps:
                raise RuntimeError("absorbing walk exceeded the step budget")
            cur = pos[alive]
            lo = indptr[cur]
            deg = indptr[cur + 1] - lo
            nxt = indices[lo + rng.integers(0, deg)]
            hit = ~graph.is_red[nxt]
            if hit.any():
                steps[alive[hit]] = step
                keep = ~hit
                alive = alive[keep]
                pos[alive] = nxt[keep]
            else:
                pos[alive] = nxt
        means[j] = steps.mean()
        stds[j] = steps.std(ddof=1)
    return means, stds


def expected_bounded_steps(instance, shortcuts=None, length: int = 1) -> np.ndarray:
    """Exact expectation of the bounded step count, one entry per red node.

    The bounded walk records min(T, length) where T is the true absorption
    step count, so its expectation is the sum of the first ``length``
    survival probabilities.  Those come from repeated sparse matvecs with
    the red-to-red transition block; no sampling is involved.  This is the
    quantity the walk estimator is unbiased for, and it never exceeds the
    exact hitting time.
    """
    if length < 0:
        raise InvalidParameter(f"length must be >= 0, got {length}")
    graph = _as_graph(instance, ShortcutSet.coerce(shortcuts))
    red = np.asarray(graph.red_ids)
    pos_of = {int(u): i for i, u in enumerate(red)}
    rows, cols, vals = [], [], []
    for i, u in enumerate(red):
        nb = graph.neighbors(int(u))
        deg = nb.size
        for v in nb:
            if graph.is_red[v]:
                rows.append(i)
                cols.append(pos_of[int(v)])
                vals.append(1.0 / deg)
    q = scipy.sparse.csr_matrix(
        (vals, (rows, cols)), shape=(red.size, red.size)
    )
    survive = np.ones(red.size)
    total = np.zeros(red.size)
    for _ in range(length):
        total += survive
        survive = q @ survive
    return total
