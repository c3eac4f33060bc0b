"""Exact expected hitting times via absorbing-chain linear systems.

For a walk absorbed by the blue group, the expected hitting times of the
red (transient) nodes solve (I - Q) h = 1, where Q is the walk's transition
matrix restricted to red rows and columns.  The same machinery with a single
absorbing node gives node-to-node hitting times.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import InvalidParameter, SolverFailure
from .graph import AugmentedView, BipartiteInstance, ShortcutSet, augmented_view

__all__ = [
    "HittingProfile",
    "hitting_to_blue",
    "hitting_to_target",
    "evaluate",
    "DENSE_NODE_LIMIT",
    "RESIDUAL_TOL",
]

# Dense factorization below this node count, sparse factorization with
# iterative refinement above it.
DENSE_NODE_LIMIT = 4000
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class HittingProfile:
    """Per-red-node expected hitting times to the blue group.

    ``times`` is aligned with ``red_ids`` (ascending node index).  The
    constructor enforces the structural bound max <= 2 * |R|^(3/4) * mean,
    which holds for every connected instance; a violation means the solver
    produced garbage.
    """

    red_ids: np.ndarray
    times: np.ndarray
    mean_time: float
    max_time: float

    def __post_init__(self):
        bound = 2.0 * float(self.red_ids.size) ** 0.75 * self.mean_time
        if self.max_time > bound * (1.0 + 1e-9):
            raise AssertionError(
                "max/mean hitting-time ratio bound violated: "
                f"max={self.max_time}, mean={self.mean_time}, |R|={self.red_ids.size}"
            )

    def time_of(self, red_node) -> float:
        pos = int(np.searchsorted(self.red_ids, red_node))
        if pos >= self.red_ids.size or self.red_ids[pos] != red_node:
            raise InvalidParameter(f"node {red_node} is not a red node")
        return float(self.times[pos])


def _as_graph(instance, shortcuts):
    if isinstance(instance, AugmentedView):
        if ShortcutSet.coerce(shortcuts).k_used:
            raise InvalidParameter("pass shortcuts or an augmented view, not both")
        return instance
    return augmented_view(instance, shortcuts)


def _transient_times(graph, transient, dense_limit):
    """Solve (I - Q) h = 1 over the given transient node set."""
    m = transient.size
    pos = np.full(graph.n, -1, dtype=np.int64)
    pos[transient] = np.arange(m)
    deg = graph.degrees
    b = np.ones(m)

    if graph.n <= dense_limit:
        A = np.eye(m)
        for i, v in enumerate(transient):
            nb = graph.neighbors(v)
            t_nb = pos[nb]
            t_nb = t_nb[t_nb >= 0]
            A[i, t_nb] -= 1.0 / deg[v]
        lu = scipy.linalg.lu_factor(A)

        def solve(rhs):
            return scipy.linalg.lu_solve(lu, rhs)

        def matvec(x):
            return A @ x

    else:
        rows, cols, vals = [], [], []
        for i, v in enumerate(transient):
            rows.append(i)
            cols.append(i)
            vals.append(1.0)
            w = -1.0 / deg[v]
            for j in pos[graph.neighbors(v)]:
                if j >= 0:
                    rows.append(i)
                    cols.append(int(j))
                    vals.append(w)
        A = scipy.sparse.csc_matrix(
            (vals, (rows, cols)), shape=(m, m), dtype=np.float64
        )
        try:
            factor = scipy.sparse.linalg.splu(A)
        except RuntimeError as exc:
            raise SolverFailure(f"sparse factorization failed: {exc}") from exc

        def solve(rhs):
            return factor.solve(rhs)

        def matvec(x):
            return A @ x

    h = solve(b)
    residual = b - matvec(h)
    if np.abs(residual).max() > RESIDUAL_TOL:
        h = h + solve(residual)
        residual = b - matvec(h)
    worst = float(np.abs(residual).max())
    if worst > RESIDUAL_TOL:
        raise SolverFailure(
            f"residual {worst:.3e} exceeds {RESIDUAL_TOL} after refinement"
        )
    return h


def hitting_to_blue(instance, shortcuts=None, dense_limit=DENSE_NODE_LIMIT) -> HittingProfile:
    """Exact expected hitting times from every red node to the blue group.

    ``shortcuts`` is applied as an overlay before solving; the instance is
    untouched.  Raises SolverFailure if the residual cannot be pushed below
    the tolerance, or if the solution violates basic sanity bounds.
    """
    graph = _as_graph(instance, shortcuts)
    reds = graph.red_ids
    h = _transient_times(graph, reds, dense_limit)

    n_cubed = float(graph.n) ** 3
    if h.min() < 1.0 - 1e-9:
        raise SolverFailure(f"hitting time {h.min()} below 1")
    if h.max() > n_cubed * (1.0 + 1e-9):
        raise SolverFailure(f"hitting time {h.max()} above n^3 = {n_cubed}")

    return HittingProfile(
        red_ids=reds,
        times=h,
        mean_time=float(h.mean()),
        max_time=float(h.max()),
    )


def hitting_to_target(instance, target, dense_limit=DENSE_NODE_LIMIT) -> np.ndarray:
    """Exact expected hitting times from every node to a single target node.

    Returns an array of length n with H(u, target) at index u and 0 at the
    target itself.
    """
    graph = _as_graph(instance, None)
    target = int(target)
    if not 0 <= target < graph.n:
        raise InvalidParameter(f"target {target} out of range")
    transient = np.array(
        [v for v in range(graph.n) if v != target], dtype=np.int64
    )
    h = _transient_times(graph, transient, dense_limit)
    out = np.zeros(graph.n)
    out[transient] = h
    return out


def evaluate(instance, shortcuts=None, objective="avg") -> float:
    """Exact objective value of a shortcut multiset: "avg" or "max"."""
    profile = hitting_to_blue(instance, shortcuts)
    if objective == "avg":
        return profile.mean_time
    if objective == "max":
        return profile.max_time
    raise InvalidParameter(f"objective must be 'avg' or 'max', got {objective!r}")
