"""Synthetic instance families."""

import numpy as np
import pytest

from hitmin import (
    GenerationFailed,
    InvalidBipartition,
    InvalidParameter,
    evaluate,
    gen_lollipop,
    gen_path,
    gen_planted_two_community,
    gen_star_path_clique,
    hitting_to_blue,
)


def test_gen_path_shape(path5):
    assert path5.n == 5
    assert path5.edge_count == 4
    assert list(path5.blue_ids) == [2]


def test_gen_path_validation():
    with pytest.raises(InvalidBipartition):
        gen_path(3, [0, 1, 2])
    with pytest.raises(InvalidBipartition):
        gen_path(3, [])
    with pytest.raises(InvalidParameter):
        gen_path(2, [0])


def test_star_path_clique_16_layout(spc16):
    # 16-node star (hub blue), 2-node path, 2-node clique
    assert spc16.n == 20
    assert spc16.blue_count == 1
    assert list(spc16.blue_ids) == [0]
    assert spc16.degrees[0] == 16  # 15 leaves plus the path attachment
    profile = hitting_to_blue(spc16)
    assert profile.mean_time == pytest.approx(65 / 19, abs=1e-9)
    assert profile.max_time == pytest.approx(16.0, abs=1e-9)
    # walk down the attached path into the clique: frozen solver values
    np.testing.assert_allclose(profile.times[-4:], [7.0, 12.0, 15.0, 16.0], atol=1e-9)


def test_star_path_clique_accepts_fourth_powers():
    inst = gen_star_path_clique(81)  # 81 = 3^4
    assert inst.n == 81 + 2 * 3
    with pytest.raises(InvalidParameter):
        gen_star_path_clique(15)
    with pytest.raises(InvalidParameter):
        gen_star_path_clique(17)
    with pytest.raises(InvalidParameter):
        gen_star_path_clique(1)


def test_star_path_clique_ratio_grows():
    r16 = evaluate(gen_star_path_clique(16), objective="max") / evaluate(
        gen_star_path_clique(16), objective="avg"
    )
    r256 = evaluate(gen_star_path_clique(256), objective="max") / evaluate(
        gen_star_path_clique(256), objective="avg"
    )
    assert r256 > r16


def test_star_path_clique_max_time_band():
    # the worst red node sits deep in the clique; its escape time grows
    # roughly like the cube of the attachment size
    f16 = evaluate(gen_star_path_clique(16), objective="max")
    f256 = evaluate(gen_star_path_clique(256), objective="max")
    assert f16 == pytest.approx(16.0, abs=1e-9)
    assert 8 * f16 / 8 <= f256 <= 8 * 8 * f16


def test_gen_lollipop_shape():
    inst = gen_lollipop(3, 4)
    # path of 3 plus clique of 4, one bridge edge
    assert inst.n == 7
    assert inst.blue_count == 1
    assert list(inst.blue_ids) == [0]
    assert inst.edge_count == 2 + 1 + 6
    with pytest.raises(InvalidParameter):
        gen_lollipop(1, 3)
    with pytest.raises(InvalidParameter):
        gen_lollipop(3, 0)


def test_planted_two_community_determinism():
    a = gen_planted_two_community(10, 10, 0.4, 0.1, 42)
    b = gen_planted_two_community(10, 10, 0.4, 0.1, 42)
    assert sorted(a.iter_edges()) == sorted(b.iter_edges())
    c = gen_planted_two_community(10, 10, 0.4, 0.1, 43)
    assert sorted(a.iter_edges()) != sorted(c.iter_edges())


def test_planted_two_community_validation():
    with pytest.raises(InvalidParameter):
        gen_planted_two_community(5, 5, 0.5, 0.0, 1)
    with pytest.raises(InvalidParameter):
        gen_planted_two_community(5, 5, 0.3, 0.3, 1)
    with pytest.raises(InvalidParameter):
        gen_planted_two_community(5, 5, 0.2, 0.4, 1)


def test_planted_two_community_gives_up():
    # cross probability so small that connectivity never materializes
    with pytest.raises(GenerationFailed):
        gen_planted_two_community(10, 10, 0.9, 1e-12, 0, max_attempts=5)


def test_planted_colors_follow_groups():
    inst = gen_planted_two_community(6, 9, 0.5, 0.2, 3)
    assert inst.red_count == 6
    assert inst.blue_count == 9
