import itertools
import math
import random

import numpy as np
import pytest

from conftest import polygon_distance_matrix
from polyrips import oracle
from polyrips.errors import InputError, ResourceBudgetError


def two_cluster_matrix():
    d = np.zeros((4, 4))
    d[0, 1] = d[1, 0] = 1.0
    d[2, 3] = d[3, 2] = 1.0
    for i in (0, 1):
        for j in (2, 3):
            d[i, j] = d[j, i] = 10.0
    return d


def test_vr_complex_two_clusters():
    K = oracle.vr_complex(two_cluster_matrix(), 2.0, "strict", max_dim=2)
    assert oracle.betti(K, 1) == [2]


def test_vr_complex_hexagon_cycle():
    pts = [i / 6 for i in range(6)]
    K = oracle.vr_complex(polygon_distance_matrix(6, pts), 1.2, "strict", max_dim=3)
    assert [K.count(d) for d in range(3)] == [6, 6, 0]
    assert oracle.betti(K, 2) == [1, 1]


def test_octahedron_sphere():
    pts = [i / 6 for i in range(6)]
    K = oracle.vr_complex(
        polygon_distance_matrix(6, pts), math.sqrt(3), "closed", max_dim=3
    )
    assert oracle.betti(K) == [1, 0, 1]


def test_regular_12_4_euler_characteristic_and_betti():
    K = oracle.vr_complex(oracle.hop_distance_matrix(12), 4.5, "strict", max_dim=4)
    assert K.euler_characteristic() == 4  # wedge of three 2-spheres
    assert oracle.betti(K) == [1, 0, 3, 0]


def test_euler_poincare_consistency():
    rng = np.random.default_rng(0)
    pts = rng.random((9, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(-1))
    K = oracle.vr_complex(dist, 0.5, "strict", max_dim=9)
    b = oracle.betti(K)
    chi_simplices = K.euler_characteristic()
    chi_betti = sum((-1) ** d * bd for d, bd in enumerate(b))
    assert chi_simplices == chi_betti


def test_betti_invariant_under_relabeling():
    rng = np.random.default_rng(3)
    pts = [i / 9 for i in range(9)]
    dist = polygon_distance_matrix(9, pts)
    K = oracle.vr_complex(dist, 1.4, "strict", max_dim=4)
    base = oracle.betti(K)
    for _ in range(4):
        perm = rng.permutation(9)
        shuffled = dist[np.ix_(perm, perm)]
        K2 = oracle.vr_complex(shuffled, 1.4, "strict", max_dim=4)
        assert oracle.betti(K2) == base


def test_two_scale_identity_is_betti():
    d = two_cluster_matrix()
    assert oracle.two_scale_rank(d, 2.0, 2.0, "strict", 0) == 2
    pts = [i / 6 for i in range(6)]
    dist = polygon_distance_matrix(6, pts)
    assert oracle.two_scale_rank(dist, 1.2, 1.2, "strict", 1) == 1


def test_two_scale_cluster_merge():
    assert oracle.two_scale_rank(two_cluster_matrix(), 2.0, 20.0, "strict", 0) == 1


def test_two_scale_monotone_under_shrinking():
    pts = [i / 24 for i in range(24)]
    dist = polygon_distance_matrix(6, pts)
    wide = oracle.two_scale_rank(dist, 0.3, 1.6, "closed", 1)
    narrow = oracle.two_scale_rank(dist, 0.5, 1.2, "closed", 1)
    assert wide <= narrow


def test_bottleneck_examples():
    assert oracle.bottleneck([(0, 1), (2, 5)], [(0, 1), (2, 5)]) == 0.0
    bar_p = (0.0, math.sqrt(3) * math.cos(math.pi / 6))
    bar_c = (0.0, math.sqrt(3))
    expected = math.sqrt(3) * (1 - math.cos(math.pi / 6))
    assert oracle.bottleneck([bar_p], [bar_c]) == pytest.approx(expected, abs=1e-12)
    assert oracle.bottleneck([(0, 1)], []) == pytest.approx(0.5, abs=1e-15)


def test_bottleneck_prefers_diagonal_over_far_match():
    assert oracle.bottleneck([(0, 0.4)], [(10, 10.5)]) == pytest.approx(0.25)


def test_bottleneck_is_a_metric_on_random_multisets():
    rng = random.Random(11)

    def rand_bars(k):
        out = []
        for _ in range(k):
            b = rng.uniform(0, 2)
            out.append((b, b + rng.uniform(0, 2)))
        return out

    for _ in range(25):
        x, y, z = (rand_bars(rng.randint(0, 5)) for _ in range(3))
        dxy = oracle.bottleneck(x, y)
        dyx = oracle.bottleneck(y, x)
        assert dxy == pytest.approx(dyx, abs=1e-12)
        dxz = oracle.bottleneck(x, z)
        dyz = oracle.bottleneck(y, z)
        assert dxz <= dxy + dyz + 1e-12
        assert oracle.bottleneck(x, x) == 0.0


def test_simplex_budget_enforced(monkeypatch):
    dist = polygon_distance_matrix(6, [i / 30 for i in range(30)])
    with pytest.raises(ResourceBudgetError):
        oracle.vr_complex(dist, 1.5, "closed", max_dim=4, budget=100)
    monkeypatch.setenv("POLYRIPS_SIMPLEX_BUDGET", "123")
    assert oracle.simplex_budget() == 123
    monkeypatch.setenv("POLYRIPS_SIMPLEX_BUDGET", "bogus")
    with pytest.raises(InputError):
        oracle.simplex_budget()


def test_distance_matrix_io(tmp_path):
    dist = polygon_distance_matrix(5, [0.0, 0.2, 0.41, 0.77])
    path = tmp_path / "d.txt"
    oracle.write_distance_matrix(path, dist)
    back = oracle.read_distance_matrix(path)
    assert np.abs(back - dist).max() < 1e-10
    bad = tmp_path / "bad.txt"
    bad.write_text("not a size\n")
    with pytest.raises(InputError):
        oracle.read_distance_matrix(bad)


def test_distance_matrix_validation():
    with pytest.raises(InputError):
        oracle.check_distance_matrix(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(InputError):
        oracle.check_distance_matrix(np.array([[1.0]]))
