"""Synthetic instance families used by tests and the benchmark CLI."""

from __future__ import annotations

import numpy as np

from .errors import DisconnectedGraph, GenerationFailed, InvalidParameter
from .graph import BipartiteInstance

__all__ = [
    "gen_path",
    "gen_star_path_clique",
    "gen_lollipop",
    "gen_planted_two_community",
]


def gen_path(length: int, blue_positions) -> BipartiteInstance:
    """Path 0-1-...-(length-1) with blue nodes at the given positions."""
    if length < 3:
        raise InvalidParameter("path generator needs length >= 3")
    blue = {int(p) for p in blue_positions}
    for p in blue:
        if not 0 <= p < length:
            raise InvalidParameter(f"blue position {p} out of range")
    edges = [(i, i + 1) for i in range(length - 1)]
    is_red = [i not in blue for i in range(length)]
    return BipartiteInstance(length, edges, is_red)


def gen_star_path_clique(n: int) -> BipartiteInstance:
    """Star with a lollipop tail; the worst red node sits in the clique.

    Builds a star of n nodes whose center is the only blue node, attaches a
    path of n^(1/4) nodes to the center, and a clique of n^(1/4) nodes to the
    far end of the path.  n must be a perfect fourth power, at least 16.
    The max/mean hitting-time ratio of this family grows polynomially with n.
    """
    if n < 16:
        raise InvalidParameter("star-path-clique needs n >= 16")
    m = round(n ** 0.25)
    if m ** 4 != n:
        raise InvalidParameter(f"n={n} is not a perfect fourth power")

    # node layout: 0 = center, 1..n-1 leaves, then m path nodes, then m clique nodes
    path_start = n
    clique_start = n + m
    total = n + 2 * m
    edges = [(0, leaf) for leaf in range(1, n)]
    edges.append((0, path_start))
    for i in range(m - 1):
        edges.append((path_start + i, path_start + i + 1))
    edges.append((path_start + m - 1, clique_start))
    for i in range(m):
        for j in range(i + 1, m):
            edges.append((clique_start + i, clique_start + j))
    is_red = [v != 0 for v in range(total)]
    return BipartiteInstance(total, edges, is_red)


def gen_lollipop(path_len: int, clique_size: int) -> BipartiteInstance:
    """Path with a clique stuck on the far end; only the path's head is blue.

    Nodes 0..path_len-1 form the path, the next clique_size nodes the
    clique, joined at the path's last node.  Escaping the clique is slow,
    so the max hitting time concentrates there.
    """
    if path_len < 2:
        raise InvalidParameter("lollipop needs path_len >= 2")
    if clique_size < 1:
        raise InvalidParameter("lollipop needs clique_size >= 1")
    total = path_len + clique_size
    edges = [(i, i + 1) for i in range(path_len - 1)]
    edges.append((path_len - 1, path_len))
    for i in range(clique_size):
        for j in range(i + 1, clique_size):
            edges.append((path_len + i, path_len + j))
    is_red = [v != 0 for v in range(total)]
    return BipartiteInstance(total, edges, is_red)


def gen_planted_two_community(
    n_red: int,
    n_blue: int,
    p_in: float,
    p_out: float,
    seed: int,
    max_attempts: int = 100,
) -> BipartiteInstance:
    """Two dense communities (one per color) with sparse cross edges.

    Edges appear independently: probability p_in inside a community and
    p_out across.  Requires p_in > p_out > 0.  Resamples up to
    ``max_attempts`` times until the graph comes out connected; no edges are
    patched in afterwards.
    """
    if n_red < 1 or n_blue < 1:
        raise InvalidParameter("both communities need at least one node")
    if not (0 < p_out < p_in <= 1):
        raise InvalidParameter("need p_in > p_out > 0")

    n = n_red + n_blue
    is_red = np.zeros(n, dtype=bool)
    is_red[:n_red] = True
    iu, ju = np.triu_indices(n, k=1)
    same = is_red[iu] == is_red[ju]
    prob = np.where(same, p_in, p_out)

    for attempt in range(max_attempts):
        rng = np.random.default_rng(np.random.SeedSequence((int(seed), attempt)))
        mask = rng.random(iu.size) < prob
        edges = list(zip(iu[mask].tolist(), ju[mask].tolist()))
        try:
            return BipartiteInstance(n, edges, is_red)
        except DisconnectedGraph:
            continue
    raise GenerationFailed(
        f"no connected sample in {max_attempts} attempts "
        f"(n_red={n_red}, n_blue={n_blue}, p_in={p_in}, p_out={p_out})"
    )
