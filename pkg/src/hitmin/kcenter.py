"""Max-objective machinery: hitting-time quasi-metric and center-based shortcuts.

Expected hitting times between red nodes, together with a synthetic point
standing in for the whole blue group, form a quasi-metric: the triangle
inequality holds but symmetry does not.  Placing at most k centers under
that metric (the blue point is a free fixed center) and wiring each center
to the blue side gives a shortcut set whose max hitting time is within a
degree-dependent factor of optimal.  The mean-objective greedy can also be
reused directly, trading the guarantee for a group-size-dependent one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InstanceTooLarge, InvalidParameter
from .exact import hitting_to_blue, hitting_to_target
from .graph import ShortcutSet
from .optimize import GreedyTrace, brute_force_opt, greedy_exact, greedy_plus

__all__ = [
    "QuasiMetric",
    "CenterSolution",
    "build_quasi_metric",
    "asym_k_center_fixed",
    "kcenter_shortcuts",
    "minmax_via_mean",
    "lower_bound_check",
    "MAX_DENSE_RED",
    "BLUE_POINT",
]

# dense table memory cap: (5000+1)^2 doubles is about 200 MB
MAX_DENSE_RED = 5000

# sentinel for the synthetic point standing in for the blue group
BLUE_POINT = "b"


@dataclass(frozen=True)
class QuasiMetric:
    """Dense table of expected-step distances on the red nodes plus one
    synthetic point for the blue group.

    Row and column order follows ``red_ids`` (ascending node id); the last
    index is the blue point.  Entry [u, v] is the expected number of steps
    for a walk started at u to first reach v.  Diagonal entries are zero
    and the triangle inequality holds, but the table is not symmetric.
    """

    red_ids: np.ndarray
    table: np.ndarray

    @property
    def blue_index(self) -> int:
        return len(self.red_ids)

    def index_of(self, point) -> int:
        if point == BLUE_POINT:
            return self.blue_index
        pos = int(np.searchsorted(self.red_ids, point))
        if pos >= len(self.red_ids) or self.red_ids[pos] != point:
            raise InvalidParameter(f"node {point} is not a red node")
        return pos

    def distance(self, u, v) -> float:
        return float(self.table[self.index_of(u), self.index_of(v)])


@dataclass(frozen=True)
class CenterSolution:
    """Chosen centers (red node ids, ascending) and their covering radius.

    The radius is recomputed from the table after the search: the largest,
    over all red nodes, of the distance to the nearest chosen center or to
    the blue point.
    """

    centers: tuple
    radius: float


def build_quasi_metric(instance) -> QuasiMetric:
    """Assemble the full distance table from exact linear solves.

    One absorbing solve per red target fills that target's column,
    including the blue-point row (the worst blue starting node); one solve
    with the whole blue group absorbing fills the blue-point column.  The
    column solves are independent of each other.
    """
    red_ids = np.asarray(instance.red_ids)
    r = len(red_ids)
    if r > MAX_DENSE_RED:
        raise InstanceTooLarge(
            f"{r} red nodes exceed the dense table cap {MAX_DENSE_RED}"
        )
    blue_ids = np.asarray(instance.blue_ids)
    table = np.zeros((r + 1, r + 1))

    profile = hitting_to_blue(instance)
    table[:r, r] = profile.times

    for j in range(r):
        h = hitting_to_target(instance, int(red_ids[j]))
        table[:r, j] = h[red_ids]
        table[r, j] = float(h[blue_ids].max())
    return QuasiMetric(red_ids=red_ids, table=table)


def _greedy_cover(table, r_count, blue_col, radius, k):
    """Try to cover every red point with at most k centers at this radius.

    Points already within the radius of the blue point need no center.
    Remaining demand is met greedily: the center covering the most still
    uncovered points wins each round, ties to the lowest node index.
    Returns the chosen center indices or None when k centers do not
    suffice under this rule.
    """
    uncovered = table[:r_count, blue_col] > radius
    reach = table[:r_count, :r_count] <= radius
    centers: list[int] = []
    while uncovered.any():
        if len(centers) == k:
            return None
        gains = reach[uncovered].sum(axis=0)
        u = int(np.argmax(gains))
        centers.append(u)
        uncovered &= ~reach[:, u]
    return centers


def asym_k_center_fixed(qm: QuasiMetric, k: int) -> CenterSolution:
    """Place at most k centers so every red point is near one, or near the
    free blue-point center.

    Binary search over the distinct table values finds the smallest radius
    the greedy cover certifies feasible; the reported radius is then
    recomputed from the chosen centers and can only be smaller.  The
    result is always feasible (at most k centers); how close the radius is
    to optimal is checked against brute force on small instances rather
    than proven.
    """
    if k < 1:
        raise InvalidParameter(f"center budget k must be >= 1, got {k}")
    r_count = qm.blue_index
    table = qm.table
    values = np.unique(table)

    lo, hi = 0, len(values) - 1
    # the largest table value always covers everything through b alone
    best = _greedy_cover(table, r_count, r_count, values[hi], k)
    while lo < hi:
        mid = (lo + hi) // 2
        centers = _greedy_cover(table, r_count, r_count, values[mid], k)
        if centers is not None:
            best, hi = centers, mid
        else:
            lo = mid + 1

    center_ids = tuple(int(qm.red_ids[c]) for c in sorted(best))
    cols = list(best) + [r_count]
    radius = float(table[:r_count, cols].min(axis=1).max()) if r_count else 0.0
    return CenterSolution(centers=center_ids, radius=radius)


def kcenter_shortcuts(instance, k: int):
    """Shortcut selection for the max objective via center placement.

    Builds the quasi-metric, solves the fixed-center problem, then wires
    every returned center to a blue node (the lowest-index one it is not
    yet adjacent to).  A center already adjacent to every blue node stays
    a center but contributes no edge, so the result has at most k edges.
    Returns the shortcut set together with the center solution.
    """
    if k < 1:
        raise InvalidParameter(f"budget k must be >= 1, got {k}")
    qm = build_quasi_metric(instance)
    solution = asym_k_center_fixed(qm, k)
    endpoints = [
        c for c in solution.centers
        if int(instance.blue_degree[c]) < instance.blue_count
    ]
    return ShortcutSet(endpoints), solution


def minmax_via_mean(instance, k: int, epsilon: float = 0.1,
                    mode: str = "exact", estimator_config=None,
                    cap_at_k: bool = True):
    """Run the mean-objective greedy and hand its edges to the max objective.

    A good mean solution is a bounded-factor max solution because the two
    objectives never differ by more than a fixed power of the red group
    size.  Returns the greedy's shortcut set and trace unchanged; callers
    evaluate the max objective on the augmentation.
    """
    if mode not in ("exact", "estimated"):
        raise InvalidParameter(f"mode must be 'exact' or 'estimated', got {mode!r}")
    if k == 0:
        # zero budget is a legal no-op here even though the greedies demand k >= 1
        return ShortcutSet(()), GreedyTrace(mode=mode, budget=0)
    if mode == "exact":
        return greedy_exact(instance, k, epsilon=epsilon, cap_at_k=cap_at_k)
    return greedy_plus(instance, k, epsilon=epsilon,
                       estimator_config=estimator_config,
                       cap_at_k=cap_at_k)


def lower_bound_check(instance, k: int, tol: float = 1e-9,
                      max_subsets: int = 10 ** 6):
    """Exhaustively confirm that the best covering radius never exceeds the
    best achievable max hitting time with the same budget.

    Enumerates every center subset of size at most k for the true optimal
    radius, brute-forces the shortcut problem under the max objective, and
    asserts the former is no larger.  Returns (best radius, best max).
    """
    qm = build_quasi_metric(instance)
    r_count = qm.blue_index
    total = sum(math.comb(r_count, s) for s in range(min(k, r_count) + 1))
    if total > max_subsets:
        raise InstanceTooLarge(
            f"{total} center subsets exceed the enumeration cap {max_subsets}"
        )

    dist_b = qm.table[:r_count, r_count]
    c_star = float(dist_b.max()) if r_count else 0.0
    for size in range(1, min(k, r_count) + 1):
        for combo in combinations(range(r_count), size):
            cols = qm.table[:r_count, list(combo)].min(axis=1)
            radius = float(np.minimum(cols, dist_b).max())
            if radius < c_star:
                c_star = radius

    _, m_star = brute_force_opt(instance, k, objective="max")
    assert c_star <= m_star + tol, (
        f"covering radius {c_star} exceeds brute-force max objective {m_star}"
    )
    return c_star, m_star
