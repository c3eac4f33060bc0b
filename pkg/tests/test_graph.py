"""Instance construction, shortcut bookkeeping, and serialization."""

import numpy as np
import pytest

from hitmin import (
    AugmentedView,
    BipartiteInstance,
    CapacityExceeded,
    DisconnectedGraph,
    InvalidBipartition,
    InvalidParameter,
    MalformedInput,
    ShortcutSet,
    augmented_view,
    candidate_endpoints,
    degree_stats,
    load_instance,
)


def test_construction_rejects_disconnected():
    with pytest.raises(DisconnectedGraph):
        BipartiteInstance(4, [(0, 1), (2, 3)], [True, False, True, False])


def test_construction_rejects_single_color():
    with pytest.raises(InvalidBipartition):
        BipartiteInstance(3, [(0, 1), (1, 2)], [True, True, True])
    with pytest.raises(InvalidBipartition):
        BipartiteInstance(3, [(0, 1), (1, 2)], [False, False, False])


def test_construction_rejects_bad_edges():
    with pytest.raises(MalformedInput):
        BipartiteInstance(3, [(0, 0), (0, 1), (1, 2)], [True, False, True])
    with pytest.raises(MalformedInput):
        BipartiteInstance(3, [(0, 3), (0, 1)], [True, False, True])


def test_path_degrees_and_ids(path5):
    assert path5.n == 5
    assert path5.edge_count == 4
    assert list(path5.degrees) == [1, 2, 2, 2, 1]
    assert list(path5.blue_degree) == [0, 1, 0, 1, 0]
    assert list(path5.red_ids) == [0, 1, 3, 4]
    assert list(path5.blue_ids) == [2]
    assert path5.red_count == 4
    assert path5.blue_count == 1
    assert list(path5.neighbors(2)) == [1, 3]


def test_degree_stats(path5):
    stats = degree_stats(path5)
    assert stats.mean_red_degree == pytest.approx(1.5)
    assert stats.max_over([0, 4]) == 1
    assert stats.max_over([1, 3]) == 2


def test_shortcut_set_is_sorted_and_counted():
    s = ShortcutSet((4, 0, 4))
    assert s.endpoints == (0, 4, 4)
    assert s.k_used == 3
    assert len(s) == 3
    assert dict(s.counts()) == {0: 1, 4: 2}
    assert s.with_added(0).endpoints == (0, 0, 4, 4)
    # original unchanged
    assert s.endpoints == (0, 4, 4)


def test_shortcut_coerce():
    s = ShortcutSet((0, 4))
    assert ShortcutSet.coerce(s) is s
    assert ShortcutSet.coerce([4, 0]).endpoints == (0, 4)
    assert ShortcutSet.coerce(None).endpoints == ()


def test_augmented_view_adds_lowest_free_blue(path5):
    view = augmented_view(path5, ShortcutSet((0,)))
    assert isinstance(view, AugmentedView)
    assert view.edge_count == 5
    assert list(view.neighbors(0)) == [1, 2]
    assert 0 in list(view.neighbors(2))
    assert list(view.degrees) == [2, 2, 3, 2, 1]
    assert list(view.blue_degree) == [1, 1, 0, 1, 0]
    # base untouched
    assert path5.edge_count == 4


def test_augmented_view_capacity(path5):
    # node 0 has a single blue partner available, a second copy cannot land
    with pytest.raises(CapacityExceeded):
        augmented_view(path5, ShortcutSet((0, 0)))


def test_augmented_view_rejects_blue_endpoint(path5):
    with pytest.raises(InvalidParameter):
        augmented_view(path5, ShortcutSet((2,)))


def test_candidate_endpoints_shrink(path5):
    assert candidate_endpoints(path5) == [0, 4]
    assert candidate_endpoints(path5, ShortcutSet((0,))) == [4]
    assert candidate_endpoints(path5, ShortcutSet((0, 4))) == []


def test_load_instance_comments_and_labels():
    edges = ["# a comment", "a b", "b c", ""]
    parts = ["a R", "b B", "# trailing", "c red"]
    inst = load_instance(edges, parts)
    assert inst.n == 3
    assert inst.edge_count == 2
    assert inst.red_count == 2
    assert inst.name_of(inst.index_of("a")) == "a"


def test_load_instance_duplicate_edge_warns():
    with pytest.warns(UserWarning):
        inst = load_instance(["a b", "b a", "b c"], ["a R", "b B", "c R"])
    assert inst.edge_count == 2


def test_load_instance_label_conflict():
    with pytest.raises(MalformedInput):
        load_instance(["a b"], ["a R", "a B", "b B"])


def test_load_instance_unlabeled_node():
    with pytest.raises(InvalidBipartition):
        load_instance(["a b", "b c"], ["a R", "b B"])


def test_serialization_roundtrip(path5):
    back = load_instance(path5.to_edge_lines(), path5.to_partition_lines())
    assert back.n == path5.n
    assert back.edge_count == path5.edge_count
    assert back.red_count == path5.red_count
    assert sorted(back.degrees) == sorted(path5.degrees)
    assert sorted(back.blue_degree) == sorted(path5.blue_degree)
