import math

import pytest

from wedgeprobe.cloud import count_narrow, narrow_vertex_indices
from wedgeprobe.errors import Infeasible
from wedgeprobe.geometry import ConvexPolygon, Point, ccw_angle
from wedgeprobe.harness import (
    ExperimentConfig,
    cyclic_hausdorff,
    gen_polygon,
    run_suite,
)


def test_generator_hits_narrow_target():
    for k in (0, 1, 2):
        cfg = ExperimentConfig(omega=math.pi / 2, n_range=(5, 10), trials=1, target_narrow=k, seed=k)
        for t in range(5):
            poly = gen_polygon(cfg, t)
            assert count_narrow(poly, math.pi / 2) == k
            for i in range(poly.n):
                assert abs(poly.internal_angle(i) - math.pi / 2) >= cfg.margin * 0.99


def test_generator_margin_audit():
    cfg = ExperimentConfig(omega=1.0, n_range=(6, 6), trials=1, target_narrow=0, seed=1, margin=0.2)
    poly = gen_polygon(cfg, 0)
    for i in range(poly.n):
        assert poly.internal_angle(i) >= 1.0 + 0.199


def test_three_narrow_infeasible_at_small_omega():
    cfg = ExperimentConfig(omega=math.pi / 3, n_range=(8, 8), trials=1, target_narrow=3, seed=0)
    with pytest.raises(Infeasible):
        gen_polygon(cfg, 0)


def test_epsilon_hypothesis_audit():
    cfg = ExperimentConfig(omega=math.pi / 2, n_range=(7, 7), trials=1, target_narrow=2,
                           epsilon=math.pi / 20, seed=9)
    poly = gen_polygon(cfg, 0)
    narrow = narrow_vertex_indices(poly, math.pi / 2)
    assert len(narrow) == 2
    a, b = narrow
    for x, y in ((a, b), (b, a)):
        chain = []
        i = (x + 1) % poly.n
        while i != y:
            chain.append(i)
            i = (i + 1) % poly.n
        if not chain:
            continue
        angles = []
        for v in chain:
            ang = ccw_angle(poly.vertex(y), poly.vertex(v), poly.vertex(x))
            angles.append(min(ang, 2 * math.pi - ang))
        assert min(angles) <= math.pi - math.pi / 20


def test_narrow_adjacent_flag():
    cfg = ExperimentConfig(omega=math.pi / 2, n_range=(6, 8), trials=1, target_narrow=2,
                           narrow_adjacent=True, epsilon=math.pi / 20, seed=3)
    poly = gen_polygon(cfg, 0)
    a, b = narrow_vertex_indices(poly, math.pi / 2)
    assert (b - a) % poly.n == 1 or (a - b) % poly.n == 1


def test_cyclic_hausdorff():
    sq = ConvexPolygon([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
    rolled = ConvexPolygon([Point(1, 0), Point(1, 1), Point(0, 1), Point(0, 0)])
    assert cyclic_hausdorff(sq, rolled) == 0.0
    tri = ConvexPolygon([Point(0, 0), Point(1, 0), Point(0, 1)])
    assert cyclic_hausdorff(sq, tri) == math.inf


def test_suite_deterministic_and_env_seed(tmp_path, monkeypatch):
    cfg = ExperimentConfig(omega=math.pi / 3, n_range=(5, 9), trials=6, target_narrow=0, seed=21)
    r1 = run_suite(cfg)
    r2 = run_suite(cfg)
    assert r1.rows == r2.rows
    monkeypatch.setenv("OMEGA_PROBE_SEED", "99")
    r3 = run_suite(cfg)
    assert r3.config.seed == 99
    assert r3.rows != r1.rows


def test_suite_budgets():
    rep = run_suite(ExperimentConfig(omega=math.pi / 3, n_range=(5, 12), trials=10,
                                     target_narrow=0, seed=5))
    assert rep.all_exact and rep.all_within_budget
    rep = run_suite(ExperimentConfig(omega=math.pi / 2, n_range=(5, 12), trials=10,
                                     target_narrow=0, seed=5, algorithm="input2"))
    assert rep.all_exact and rep.all_within_budget
    rep = run_suite(ExperimentConfig(omega=math.pi / 2, n_range=(5, 10), trials=10,
                                     target_narrow=1, seed=5))
    assert rep.all_exact and rep.all_within_budget
