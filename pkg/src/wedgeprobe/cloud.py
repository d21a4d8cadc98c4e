"""Construction of the omega-cloud: the locus of apices of all valid probes.

The cloud is swept by the direction theta of the first arm over [0, 2*pi).
Support vertices stay constant between event angles (the polygon's edge
directions, for either arm), and each maximal constant-support interval
contributes one inscribed-angle arc over the support chord.  A vertex whose
internal angle is at most omega shows up as a pivot lying on the polygon.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .errors import InvalidOmega
from .geometry import (
    TAU,
    TAU_ANG,
    TWO_PI,
    ConvexPolygon,
    OmegaArc,
    Point,
    ccw_delta,
    norm_angle,
    omega_arc,
    unit_from_angle,
)


@dataclass(frozen=True)
class OmegaCloud:
    """Cyclic ccw chain of arcs; consecutive arcs share a pivot point."""

    omega: float
    arcs: tuple[OmegaArc, ...]
    support_indices: tuple[tuple[int, int], ...]
    pivots: tuple[Point, ...]
    on_polygon_pivots: tuple[tuple[int, int], ...]  # (pivot index, vertex index)

    @property
    def n_prime(self) -> int:
        return len(self.arcs)


class _SupportTable:
    """Constant-direction support lookup for a ccw convex polygon."""

    def __init__(self, polygon: ConvexPolygon):
        self.polygon = polygon
        n = polygon.n
        dirs = [polygon.edge_direction(i) for i in range(n)]
        start = min(range(n), key=lambda i: dirs[i])
        self.order = [(start + k) % n for k in range(n)]
        self.sorted_dirs = [dirs[i] for i in self.order]

    def h1_vertex(self, theta: float) -> int:
        """Vertex supporting a line with direction theta, polygon on its left."""
        t = norm_angle(theta)
        k = bisect.bisect_left(self.sorted_dirs, t - TAU_ANG)
        if k == len(self.sorted_dirs):
            k = 0
        return self.order[k]

    def h2_vertex(self, theta: float, omega: float) -> int:
        """Vertex supporting the second arm (polygon on its right)."""
        return self.h1_vertex(theta + omega - math.pi)


def _apex(a: Point, b: Point, theta: float, omega: float) -> Point:
    """Intersection of the support line through a (direction theta) and the
    one through b (direction theta + omega)."""
    u1 = unit_from_angle(theta)
    u2 = unit_from_angle(theta + omega)
    denom = u1.cross(u2)  # sin(omega) > 0
    s = (b - a).cross(u2) / denom
    return a + u1 * s


def build_cloud(polygon: ConvexPolygon, omega: float) -> OmegaCloud:
    """Sweep the wedge around the polygon and stitch the apex arcs."""
    if not (0.0 < omega <= math.pi / 2.0 + TAU_ANG):
        raise InvalidOmega(f"omega must be in (0, pi/2], got {omega}")
    n = polygon.n
    scale = polygon.diameter()
    table = _SupportTable(polygon)

    events: list[float] = []
    for i in range(n):
        d = polygon.edge_direction(i)
        events.append(norm_angle(d))
        # second arm flushes edge i when theta + omega - pi crosses d
        events.append(norm_angle(d + math.pi - omega))
    events.sort()
    merged: list[float] = []
    for e in events:
        if not merged or e - merged[-1] > TAU_ANG:
            merged.append(e)
    if len(merged) > 1 and (merged[0] + TWO_PI) - merged[-1] <= TAU_ANG:
        merged.pop()

    arcs: list[OmegaArc] = []
    supports: list[tuple[int, int]] = []
    m = len(merged)
    for j in range(m):
        th0 = merged[j]
        th1 = merged[(j + 1) % m] if m > 1 else merged[j] + TWO_PI
        span = ccw_delta(th0, th1) if m > 1 else TWO_PI
        mid = th0 + span / 2.0
        ia = table.h1_vertex(mid)
        ib = table.h2_vertex(mid, omega)
        if ia == ib:
            # narrow vertex: the apex parks on the polygon for this interval
            continue
        a = polygon.vertex(ia)
        b = polygon.vertex(ib)
        q0 = _apex(a, b, th0, omega)
        q1 = _apex(a, b, th1, omega)
        full = omega_arc(a, b, omega)
        a0 = norm_angle((q0 - full.center).angle())
        a1 = norm_angle((q1 - full.center).angle())
        piece = OmegaArc(full.center, full.radius, a0, a1, a, b)
        if piece.sweep <= TAU_ANG or piece.sweep >= TWO_PI - TAU_ANG:
            # zero-length arc: support pair changed at coincident events
            continue
        arcs.append(piece)
        supports.append((ia, ib))

    pivots = [arc.start_point for arc in arcs]
    on_poly: list[tuple[int, int]] = []
    for pi, p in enumerate(pivots):
        vi = polygon.vertex_index_of(p, tol=max(TAU * scale, 1e-12))
        if vi is not None:
            on_poly.append((pi, vi))
    return OmegaCloud(omega, tuple(arcs), tuple(supports), tuple(pivots), tuple(on_poly))


def count_narrow(polygon: ConvexPolygon, omega: float) -> int:
    """Number of vertices with internal angle at most omega (within TAU_ANG)."""
    return sum(1 for i in range(polygon.n) if polygon.internal_angle(i) <= omega + TAU_ANG)


def narrow_vertex_indices(polygon: ConvexPolygon, omega: float) -> list[int]:
    return [i for i in range(polygon.n) if polygon.internal_angle(i) <= omega + TAU_ANG]
