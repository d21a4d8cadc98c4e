import math

from wedgeprobe.geometry import ConvexPolygon, DirectedLine, Point
from wedgeprobe.oracle import new_session
from wedgeprobe.region import ConvexRegion, feasible_edge_region, gap_triangle

TRI = ConvexPolygon([Point(0, 0), Point(2, 0), Point(0.7, 1.6)])
OMEGA = math.pi / 6


def _wedges(lines):
    s = new_session(TRI, OMEGA, seed=0)
    return [s.probe(line).wedge() for line in lines]


def test_flush_probe_degenerates_its_edge():
    wedges = _wedges([DirectedLine.through(TRI.vertex(0), TRI.vertex(1))])
    fr = feasible_edge_region(TRI, 0, OMEGA, wedges)
    assert fr.degenerate
    assert fr.degenerate_segment == (TRI.vertex(0), TRI.vertex(1))


def test_unprobed_edge_region_can_stay_unbounded():
    wedges = _wedges([DirectedLine.through(TRI.vertex(0), TRI.vertex(1))])
    fr = feasible_edge_region(TRI, 1, OMEGA, wedges)
    assert not fr.degenerate
    assert fr.unbounded


def test_two_wedges_leave_bounded_triangle_over_edge():
    wedges = _wedges([
        DirectedLine.through(TRI.vertex(0), TRI.vertex(1)),
        DirectedLine(Point(1.2, 3.0), Point(-0.05, -1.0).unit()),
    ])
    fr = feasible_edge_region(TRI, 1, OMEGA, wedges)
    assert not fr.degenerate and not fr.unbounded
    a, b = TRI.vertex(1), TRI.vertex(2)
    outward = (b - a).unit().perp() * -1.0
    tri = gap_triangle(fr.region, a, b, outward)
    assert tri is not None
    w = tri[2]
    incenter = Point((a.x + b.x + w.x) / 3.0, (a.y + b.y + w.y) / 3.0)
    assert fr.contains(incenter)


def test_segment_gap_admits_gap_triangle():
    # two contacts only (the initial 2-gon): a probe over the segment still
    # leaves room beyond it for a hidden vertex
    seg_a, seg_b = Point(-1.0, 0.0), Point(1.0, 0.0)
    region = ConvexRegion(disc=(Point(0, 0), 5.0), scale=10.0)
    s = new_session(TRI, OMEGA, seed=0)  # any session; we only need a wedge shape
    out = s.probe(DirectedLine(Point(0.4, 3.0), Point(0.0, -1.0)))
    region.clip_wedge(out.wedge())
    tri = gap_triangle(region, seg_a, seg_b, Point(0.0, -1.0))
    assert tri is not None
    assert region.contains(tri[2])


def test_identity_clip_keeps_region():
    region = ConvexRegion(disc=(Point(0, 0), 1.0), scale=2.0)
    before = region.boundary_chain()
    region.clip_left(DirectedLine(Point(-5.0, -10.0), Point(1.0, 0.0)))
    after = region.boundary_chain()
    assert len(before) == len(after)
    assert region.contains(Point(0.0, 0.0))
    assert abs(region.boundary_distance(Point(0.0, 0.0)) - 1.0) < 1e-12


def test_ray_exit_disc():
    region = ConvexRegion(disc=(Point(0, 0), 2.0), scale=4.0)
    assert abs(region.ray_exit(Point(0, 0), Point(1, 0)) - 2.0) < 1e-12
    region.clip_left(DirectedLine(Point(1.0, 0.0), Point(0.0, 1.0)))  # keep x <= 1
    assert abs(region.ray_exit(Point(0, 0), Point(1, 0)) - 1.0) < 1e-12
