"""Shared fixtures: small canonical instances reused across the suite."""

import pytest

from hitmin import gen_path, gen_planted_two_community, gen_star_path_clique


@pytest.fixture()
def path5():
    return gen_path(5, [2])


@pytest.fixture()
def path3():
    return gen_path(3, [2])


@pytest.fixture()
def spc16():
    return gen_star_path_clique(16)


@pytest.fixture(scope="session")
def tiny_batch():
    # 50 connected 8-node instances, shared by the brute-force sweeps
    return [gen_planted_two_community(4, 4, 0.6, 0.3, seed) for seed in range(50)]
