"""Graph containers shared by every other module.

An instance is an undirected, simple, connected graph whose nodes are split
into a red group and a blue group.  Shortcut bookkeeping stores only the red
endpoints of added inter-group edges: the objectives depend on nothing else,
so the blue partners are materialized on demand by a fixed deterministic
rule (lowest-index blue node not yet adjacent to the endpoint).
"""

from __future__ import annotations

import warnings
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CapacityExceeded,
    DisconnectedGraph,
    InvalidBipartition,
    InvalidParameter,
    MalformedInput,
)

__all__ = [
    "BipartiteInstance",
    "ShortcutSet",
    "AugmentedView",
    "DegreeStats",
    "load_instance",
    "augmented_view",
    "candidate_endpoints",
    "degree_stats",
]


class BipartiteInstance:
    """Undirected, simple, connected graph with a red/blue node split.

    Nodes are dense 0-based indices.  ``node_names`` keeps the external
    string identifiers when the instance came from files; generated
    instances leave it unset and fall back to the decimal index.
    Instances are immutable after construction.
    """

    def __init__(self, n, edges, is_red, node_names=None):
        n = int(n)
        if n < 2:
            raise InvalidBipartition("need at least one red and one blue node")
        is_red = np.array(is_red, dtype=bool)
        if is_red.shape != (n,):
            raise InvalidParameter(f"color vector must have length {n}")
        if node_names is not None:
            node_names = [str(x) for x in node_names]
            if len(node_names) != n or len(set(node_names)) != n:
                raise InvalidParameter("node names must be unique, one per node")

        nbrs: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        count = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedInput(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise MalformedInput(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise MalformedInput(f"duplicate edge {key}")
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
            count += 1

        self.n = n
        self.edge_count = count
        self._adj = [np.array(sorted(a), dtype=np.int64) for a in nbrs]
        self.is_red = is_red
        self.degrees = np.array([len(a) for a in nbrs], dtype=np.int64)
        self.blue_degree = np.array(
            [int(np.count_nonzero(~is_red[a])) if a.size else 0 for a in self._adj],
            dtype=np.int64,
        )
        for arr in (self.is_red, self.degrees, self.blue_degree):
            arr.setflags(write=False)
        self.red_ids = np.flatnonzero(is_red)
        self.blue_ids = np.flatnonzero(~is_red)
        self.node_names = node_names
        self._name_to_index = (
            {name: i for i, name in enumerate(node_names)} if node_names else None
        )

        if self.red_ids.size == 0 or self.blue_ids.size == 0:
            raise InvalidBipartition("both groups must be non-empty")
        self._check_connected()

    def _check_connected(self):
        seen = np.zeros(self.n, dtype=bool)
        queue = deque([0])
        seen[0] = True
        reached = 1
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if not seen[w]:
                    seen[w] = True
                    reached += 1
                    queue.append(int(w))
        if reached != self.n:
            raise DisconnectedGraph(
                f"graph has {self.n - reached} node(s) unreachable from node 0"
            )

    @property
    def red_count(self) -> int:
        return int(self.red_ids.size)

    @property
    def blue_count(self) -> int:
        return int(self.blue_ids.size)

    def neighbors(self, v) -> np.ndarray:
        return self._adj[v]

    def name_of(self, v) -> str:
        return self.node_names[v] if self.node_names else str(int(v))

    def index_of(self, name) -> int:
        if self._name_to_index is not None:
            try:
                return self._name_to_index[str(name)]
            except KeyError:
                raise InvalidParameter(f"unknown node name {name!r}") from None
        try:
            idx = int(name)
        except (TypeError, ValueError):
            raise InvalidParameter(f"unknown node name {name!r}") from None
        if not 0 <= idx < self.n:
            raise InvalidParameter(f"node index {idx} out of range")
        return idx

    def iter_edges(self):
        """Yield each undirected edge once as (u, v) with u < v."""
        for u in range(self.n):
            for v in self._adj[u]:
                if v > u:
                    yield u, int(v)

    def to_edge_lines(self) -> list[str]:
        return [f"{self.name_of(u)} {self.name_of(v)}" for u, v in self.iter_edges()]

    def to_partition_lines(self) -> list[str]:
        return [
            f"{self.name_of(v)} {'R' if self.is_red[v] else 'B'}"
            for v in range(self.n)
        ]

    def __repr__(self):
        return (
            f"BipartiteInstance(n={self.n}, edges={self.edge_count}, "
            f"red={self.red_count}, blue={self.blue_count})"
        )


@dataclass(frozen=True)
class ShortcutSet:
    """Multiset of red endpoints for added inter-group edges.

    Stored in sorted order so that equal multisets compare and hash equal.
    """

    endpoints: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "endpoints", tuple(sorted(int(e) for e in self.endpoints))
        )

    def __len__(self) -> int:
        return len(self.endpoints)

    def __iter__(self):
        return iter(self.endpoints)

    @property
    def k_used(self) -> int:
        return len(self.endpoints)

    def counts(self) -> Counter:
        return Counter(self.endpoints)

    def with_added(self, endpoint) -> "ShortcutSet":
        return ShortcutSet(self.endpoints + (int(endpoint),))

    @staticmethod
    def coerce(value) -> "ShortcutSet":
        if value is None:
            return ShortcutSet()
        if isinstance(value, ShortcutSet):
            return value
        return ShortcutSet(tuple(value))


class AugmentedView:
    """Read-only overlay: a base instance plus materialized shortcut edges.

    Each multiset entry r gains one edge to the lowest-index blue node not
    yet adjacent to r, so equal shortcut multisets always produce the same
    augmented graph.  The base instance is never modified.
    """

    def __init__(self, base: BipartiteInstance, shortcuts: ShortcutSet):
        self.base = base
        self.shortcuts = shortcuts
        self.n = base.n
        self.is_red = base.is_red
        self.red_ids = base.red_ids
        self.blue_ids = base.blue_ids

        counts = shortcuts.counts()
        degrees = base.degrees.copy()
        blue_degree = base.blue_degree.copy()
        extra = defaultdict(list)
        added = 0
        for r in sorted(counts):
            c = counts[r]
            if not 0 <= r < base.n or not base.is_red[r]:
                raise InvalidParameter(f"shortcut endpoint {r} is not a red node")
            taken = np.isin(base.blue_ids, base.neighbors(r), assume_unique=True)
            free = base.blue_ids[~taken]
            if free.size < c:
                raise CapacityExceeded(
                    f"endpoint {r} has {free.size} free blue slot(s), needs {c}"
                )
            chosen = free[:c]
            extra[r].extend(int(b) for b in chosen)
            for b in chosen:
                extra[int(b)].append(r)
            degrees[r] += c
            degrees[chosen] += 1
            blue_degree[r] += c
            added += c

        self.degrees = degrees
        self.blue_degree = blue_degree
        self.edge_count = base.edge_count + added
        self._merged = {
            v: np.concatenate((base.neighbors(v), np.array(sorted(lst), dtype=np.int64)))
            for v, lst in extra.items()
        }

    @property
    def red_count(self) -> int:
        return self.base.red_count

    @property
    def blue_count(self) -> int:
        return self.base.blue_count

    def neighbors(self, v) -> np.ndarray:
        got = self._merged.get(int(v))
        return got if got is not None else self.base.neighbors(v)

    def __repr__(self):
        return f"AugmentedView(base={self.base!r}, shortcuts={self.shortcuts.endpoints})"


@dataclass(frozen=True)
class DegreeStats:
    """Degree summaries used by the walk estimator and the k-center route."""

    mean_red_degree: float
    degrees: np.ndarray

    def max_over(self, nodes) -> int:
        nodes = np.asarray(list(nodes), dtype=np.int64)
        if nodes.size == 0:
            return 0
        return int(self.degrees[nodes].max())


def degree_stats(graph) -> DegreeStats:
    """Compute degree summaries for an instance or an augmented view."""
    mean = float(graph.degrees[graph.red_ids].mean())
    return DegreeStats(mean_red_degree=mean, degrees=graph.degrees)


def augmented_view(instance: BipartiteInstance, shortcuts=None) -> AugmentedView:
    """Overlay ``shortcuts`` on ``instance`` without copying the base graph."""
    return AugmentedView(instance, ShortcutSet.coerce(shortcuts))


def candidate_endpoints(instance: BipartiteInstance, shortcuts=None) -> list[int]:
    """Red nodes that can still take a shortcut on top of ``shortcuts``.

    A red node is a candidate while its blue-neighbor count, including one
    slot per shortcut already charged to it, stays below the blue group size.
    """
    counts = ShortcutSet.coerce(shortcuts).counts()
    total_blue = instance.blue_count
    out = []
    for r in instance.red_ids:
        r = int(r)
        if instance.blue_degree[r] + counts.get(r, 0) < total_blue:
            out.append(r)
    return out


def _as_lines(source):
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
    elif hasattr(source, "read"):
        yield from source
    else:
        yield from source


_RED_TOKENS = {"R", "RED"}
_BLUE_TOKENS = {"B", "BLUE"}


def load_instance(edge_source, partition_source) -> BipartiteInstance:
    """Parse an edge list and a partition file into a validated instance.

    Edge lines hold two whitespace-separated node identifiers; partition
    lines hold an identifier and an R or B label.  '#' starts a comment in
    both files.  Duplicate edges are dropped with a warning; self-loops and
    unparseable lines are rejected outright.
    """
    names: list[str] = []
    index: dict[str, int] = {}

    def node_id(token: str) -> int:
        got = index.get(token)
        if got is None:
            got = len(names)
            index[token] = got
            names.append(token)
        return got

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    duplicates = 0
    for lineno, raw in enumerate(_as_lines(edge_source), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(f"edge line {lineno}: expected 'u v', got {raw!r}")
        u, v = node_id(parts[0]), node_id(parts[1])
        if u == v:
            raise MalformedInput(f"edge line {lineno}: self-loop on {parts[0]!r}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)
    if duplicates:
        warnings.warn(f"dropped {duplicates} duplicate edge(s)", stacklevel=2)

    colors: dict[int, bool] = {}
    for lineno, raw in enumerate(_as_lines(partition_source), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(
                f"partition line {lineno}: expected 'node R|B', got {raw!r}"
            )
        label = parts[1].upper()
        if label in _RED_TOKENS:
            flag = True
        elif label in _BLUE_TOKENS:
            flag = False
        else:
            raise MalformedInput(f"partition line {lineno}: unknown label {parts[1]!r}")
        nid = node_id(parts[0])
        if nid in colors and colors[nid] != flag:
            raise MalformedInput(
                f"partition line {lineno}: conflicting label for {parts[0]!r}"
            )
        colors[nid] = flag

    n = len(names)
    if n == 0:
        raise MalformedInput("no nodes found in input")
    missing = [names[i] for i in range(n) if i not in colors]
    if missing:
        raise InvalidBipartition(f"unlabeled node(s): {missing[:5]}")
    is_red = [colors[i] for i in range(n)]
    return BipartiteInstance(n, edges, is_red, node_names=names)
