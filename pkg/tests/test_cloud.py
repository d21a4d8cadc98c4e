import math

import pytest

from wedgeprobe.cloud import build_cloud, count_narrow
from wedgeprobe.errors import InvalidOmega
from wedgeprobe.geometry import ConvexPolygon, Point, dist, direction_cone
from wedgeprobe.harness import ExperimentConfig, gen_polygon

SQUARE = ConvexPolygon([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
HEX = ConvexPolygon([Point(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)])
TRI = ConvexPolygon([Point(0, 0), Point(2, 0), Point(0.6, 1.5)])


def _inside_ring(ring, p, slack):
    """Crossing-number containment; the cloud chain is not convex at pivots."""
    # on-boundary within slack counts as inside
    for i in range(len(ring)):
        a, b = ring[i], ring[(i + 1) % len(ring)]
        e = b - a
        ln = e.norm()
        if ln < 1e-15:
            continue
        t = max(0.0, min(1.0, (p - a).dot(e) / (ln * ln)))
        foot = Point(a.x + t * e.x, a.y + t * e.y)
        if dist(foot, p) <= slack:
            return True
    crossings = 0
    for i in range(len(ring)):
        a, b = ring[i], ring[(i + 1) % len(ring)]
        if (a.y > p.y) != (b.y > p.y):
            x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x_at > p.x:
                crossings += 1
    return crossings % 2 == 1


def test_square_right_angle_cloud():
    # every corner of a square is narrow at omega = pi/2 (the rectangle case),
    # so all four corners are pivots lying on the polygon and each arc is the
    # half-circle over one edge
    cloud = build_cloud(SQUARE, math.pi / 2)
    assert cloud.n_prime == 4
    assert len(cloud.on_polygon_pivots) == 4
    edge_mids = {(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)}
    centers = {(round(a.center.x, 9), round(a.center.y, 9)) for a in cloud.arcs}
    assert centers == edge_mids
    for arc in cloud.arcs:
        assert arc.radius == pytest.approx(0.5)
        assert arc.sweep == pytest.approx(math.pi)
        for q in arc.sample(7):
            assert abs(direction_cone(q, SQUARE.vertices)[1] - math.pi / 2) < 1e-9


def test_hexagon_right_angle_no_pivots_on_polygon():
    cloud = build_cloud(HEX, math.pi / 2)
    assert cloud.on_polygon_pivots == ()


def test_triangle_cloud_arcs_over_vertex_pairs():
    cloud = build_cloud(TRI, math.pi / 6)
    assert cloud.n_prime >= 3
    for (ia, ib), arc in zip(cloud.support_indices, cloud.arcs):
        assert dist(arc.support_a, TRI.vertex(ia)) < 1e-12
        assert dist(arc.support_b, TRI.vertex(ib)) < 1e-12
        assert ia != ib


def test_cloud_chain_closes_and_width_matches():
    for seed in range(8):
        cfg = ExperimentConfig(omega=(0.4, 0.9, 1.3, math.pi / 2)[seed % 4],
                               n_range=(4, 12), trials=1,
                               target_narrow=(0, 1)[seed % 2], seed=500 + seed)
        poly = gen_polygon(cfg, 0)
        cloud = build_cloud(poly, cfg.omega)
        scale = poly.diameter()
        assert cloud.n_prime <= 4 * poly.n
        for i, arc in enumerate(cloud.arcs):
            nxt = cloud.arcs[(i + 1) % cloud.n_prime]
            assert dist(arc.end_point, nxt.start_point) <= 1e-9 * scale
            for q in arc.sample(3):
                assert abs(direction_cone(q, poly.vertices)[1] - cfg.omega) < 1e-7
        # every polygon vertex is inside or on the closed cloud chain; the
        # sampled ring under-approximates each arc by at most its sagitta
        ring = []
        sagitta = 0.0
        for arc in cloud.arcs:
            ring.extend(arc.sample(16, interior=False))
            sagitta = max(sagitta, arc.radius * (1.0 - math.cos(arc.sweep / 32.0)))
        for v in poly.vertices:
            assert _inside_ring(ring, v, sagitta + 1e-9 * scale)


def test_count_narrow_examples():
    equi = ConvexPolygon([Point(0, 0), Point(1, 0), Point(0.5, math.sqrt(3) / 2)])
    assert count_narrow(equi, math.pi / 2) == 3
    assert count_narrow(equi, math.pi / 6) == 0
    assert count_narrow(SQUARE, math.pi / 2) == 4  # rectangle exception


def test_count_narrow_bounds():
    for seed in range(12):
        omega = (0.5, 1.0, math.pi / 2)[seed % 3]
        cfg = ExperimentConfig(omega=omega, n_range=(4, 14), trials=1,
                               target_narrow=seed % 3 if omega >= math.pi / 3 else seed % 2,
                               seed=900 + seed)
        poly = gen_polygon(cfg, 0)
        cn = count_narrow(poly, omega)
        assert cn <= 3
        if omega < math.pi / 3:
            assert cn <= 2


def test_invalid_omega():
    with pytest.raises(InvalidOmega):
        build_cloud(SQUARE, 2.2)
    with pytest.raises(InvalidOmega):
        build_cloud(SQUARE, 0.0)
