"""Planar primitives shared by the probing oracle, cloud builder and adversary.

Everything is plain 64-bit float arithmetic.  The global tolerance TAU is
interpreted relative to the instance scale (callers pass a scale where one is
known, e.g. the enclosing-circle diameter); angular comparisons use TAU_ANG
radians.  Angles are normalized to [0, 2*pi) and all named angles follow the
counterclockwise convention: angle(a, q, b) is the ccw rotation taking ray
q->a onto ray q->b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CoincidentPoints, DegenerateCorner, DegeneratePolygon, InvalidOmega

TAU = 1e-9
TAU_ANG = 1e-9

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Point":
        n = self.norm()
        if n == 0.0:
            raise CoincidentPoints("cannot normalize a zero vector")
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """Left normal (ccw rotation by pi/2)."""
        return Point(-self.y, self.x)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def rotated(self, theta: float) -> "Point":
        c, s = math.cos(theta), math.sin(theta)
        return Point(c * self.x - s * self.y, s * self.x + c * self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def unit_from_angle(theta: float) -> Point:
    return Point(math.cos(theta), math.sin(theta))


def norm_angle(theta: float) -> float:
    """Normalize to [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    return t + TWO_PI if t < 0.0 else t


def ccw_delta(start: float, end: float) -> float:
    """Counterclockwise sweep from start to end, in [0, 2*pi)."""
    return norm_angle(end - start)


def ccw_angle(a: Point, q: Point, b: Point) -> float:
    """Counterclockwise angle at q taking ray q->a onto ray q->b."""
    return ccw_delta((a - q).angle(), (b - q).angle())


def orient(a: Point, b: Point, c: Point, *, scale: float | None = None) -> int:
    """Sign of twice the signed area of (a, b, c): +1 left, -1 right, 0 collinear.

    Collinearity is declared when |area| <= TAU * scale**2; absent an explicit
    instance scale the local scale max(|ab|, |ac|) is used.
    """
    ab = b - a
    ac = c - a
    cross = ab.cross(ac)
    s = scale if scale is not None else max(ab.norm(), ac.norm())
    if abs(cross) <= TAU * s * s:
        return 0
    return 1 if cross > 0.0 else -1


def internal_angle(prev: Point, v: Point, nxt: Point) -> float:
    """Interior angle at v of a ccw polygon corner (prev, v, nxt), in (0, pi)."""
    d_out = nxt - v
    d_in = prev - v
    if d_out.norm() <= TAU or d_in.norm() <= TAU:
        raise DegenerateCorner("coincident corner points")
    if orient(prev, v, nxt) != 1:
        raise DegenerateCorner("corner is not a strict left turn")
    return ccw_delta(d_out.angle(), d_in.angle())


@dataclass(frozen=True, slots=True)
class DirectedLine:
    """Line through `origin` with unit `direction`; parameter t measures along it."""

    origin: Point
    direction: Point

    def __post_init__(self):
        n = self.direction.norm()
        if abs(n - 1.0) > 1e-7:
            if n == 0.0:
                raise CoincidentPoints("directed line needs a nonzero direction")
            object.__setattr__(self, "direction", Point(self.direction.x / n, self.direction.y / n))

    @classmethod
    def through(cls, a: Point, b: Point) -> "DirectedLine":
        return cls(a, (b - a).unit())

    def point_at(self, t: float) -> Point:
        return self.origin + self.direction * t

    def param_of(self, p: Point) -> float:
        return (p - self.origin).dot(self.direction)

    def side_of(self, p: Point) -> float:
        """Signed offset: positive on the left of the direction."""
        return self.direction.cross(p - self.origin)

    def rotated_about(self, pivot: Point, theta: float) -> "DirectedLine":
        return DirectedLine(pivot, self.direction.rotated(theta))

    def reversed(self) -> "DirectedLine":
        return DirectedLine(self.origin, self.direction * -1.0)


@dataclass(frozen=True, slots=True)
class Wedge:
    """Closed wedge with apex q between rays at `theta1` and `theta1 + omega` (ccw)."""

    apex: Point
    theta1: float
    omega: float

    @property
    def theta2(self) -> float:
        return norm_angle(self.theta1 + self.omega)

    @property
    def dir1(self) -> Point:
        return unit_from_angle(self.theta1)

    @property
    def dir2(self) -> Point:
        return unit_from_angle(self.theta2)

    def contains(self, p: Point, *, slack: float = 0.0) -> bool:
        """Membership with absolute slack in length units on both arm half-planes."""
        v = p - self.apex
        return self.dir1.cross(v) >= -slack and self.dir2.cross(v) <= slack

    def halfplane_offsets(self, p: Point) -> tuple[float, float]:
        v = p - self.apex
        return self.dir1.cross(v), -self.dir2.cross(v)


class ConvexPolygon:
    """Immutable strictly convex polygon with counterclockwise vertices."""

    __slots__ = ("_vertices",)

    def __init__(self, vertices: Iterable[Point]):
        vs = tuple(vertices)
        if len(vs) < 3:
            raise DegeneratePolygon("need at least 3 vertices")
        n = len(vs)
        for i in range(n):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
            if orient(a, b, c) != 1:
                raise DegeneratePolygon(
                    f"vertices {i - 1},{i},{(i + 1) % n} do not form a strict left turn"
                )
        self._vertices = vs

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexPolygon) and self._vertices == other._vertices

    def __hash__(self) -> int:
        return hash(self._vertices)

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(self._vertices)!r})"

    def vertex(self, i: int) -> Point:
        return self._vertices[i % len(self._vertices)]

    def edge_direction(self, i: int) -> float:
        """Angle of the directed edge vertex(i) -> vertex(i+1)."""
        return norm_angle((self.vertex(i + 1) - self.vertex(i)).angle())

    def internal_angle(self, i: int) -> float:
        return internal_angle(self.vertex(i - 1), self.vertex(i), self.vertex(i + 1))

    def centroid(self) -> Point:
        """Area centroid."""
        a2 = 0.0
        cx = cy = 0.0
        vs = self._vertices
        for i in range(len(vs)):
            p, q = vs[i], vs[(i + 1) % len(vs)]
            w = p.cross(q)
            a2 += w
            cx += (p.x + q.x) * w
            cy += (p.y + q.y) * w
        return Point(cx / (3.0 * a2), cy / (3.0 * a2))

    def diameter(self) -> float:
        vs = self._vertices
        return max(dist(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def contains(self, p: Point, *, slack: float = 0.0) -> bool:
        """True if p is inside or on the boundary (with absolute slack)."""
        vs = self._vertices
        for i in range(len(vs)):
            e = vs[(i + 1) % len(vs)] - vs[i]
            if e.cross(p - vs[i]) < -slack * e.norm():
                return False
        return True

    def vertex_index_of(self, p: Point, *, tol: float) -> int | None:
        for i, v in enumerate(self._vertices):
            if dist(v, p) <= tol:
                return i
        return None

    def translated(self, d: Point) -> "ConvexPolygon":
        return ConvexPolygon(v + d for v in self._vertices)

    def rotated(self, theta: float, about: Point | None = None) -> "ConvexPolygon":
        c = about if about is not None else Point(0.0, 0.0)
        return ConvexPolygon(c + (v - c).rotated(theta) for v in self._vertices)


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Strict convex hull (collinear interior points dropped), ccw order."""
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) <= 2:
        return [Point(x, y) for x, y in pts]

    def half(seq):
        out: list[tuple[float, float]] = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= 0.0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    ring = lower[:-1] + upper[:-1]
    return [Point(x, y) for x, y in ring]


@dataclass(frozen=True, slots=True)
class OmegaArc:
    """Circular arc swept ccw from start_angle to end_angle around `center`.

    Every interior point q satisfies ccw_angle(support_a, q, support_b) == omega
    for the inscribed angle omega the arc was built with.
    """

    center: Point
    radius: float
    start_angle: float
    end_angle: float
    support_a: Point
    support_b: Point

    @property
    def sweep(self) -> float:
        return ccw_delta(self.start_angle, self.end_angle)

    def point_at(self, theta: float) -> Point:
        return self.center + unit_from_angle(theta) * self.radius

    @property
    def start_point(self) -> Point:
        return self.point_at(self.start_angle)

    @property
    def end_point(self) -> Point:
        return self.point_at(self.end_angle)

    def contains_angle(self, theta: float, *, slack: float = TAU_ANG) -> bool:
        return ccw_delta(self.start_angle, theta) <= self.sweep + slack or \
            ccw_delta(self.start_angle, theta) >= TWO_PI - slack

    def sample(self, k: int, *, interior: bool = True) -> list[Point]:
        """k points along the arc; interior=True keeps clear of the endpoints."""
        sw = self.sweep
        if interior:
            fr = [(i + 1) / (k + 1) for i in range(k)]
        else:
            fr = [i / max(k - 1, 1) for i in range(k)]
        return [self.point_at(self.start_angle + f * sw) for f in fr]


def omega_arc(a: Point, b: Point, omega: float) -> OmegaArc:
    """Inscribed-angle locus: the ccw arc from b to a seeing chord (a, b) at omega.

    The circle passes through a and b with radius |ab| / (2 sin omega); the arc
    lies to the left of the directed chord a->b, so swapping (a, b) yields the
    mirror arc.  Valid for 0 < omega <= pi/2.
    """
    if not (0.0 < omega <= math.pi / 2.0 + TAU_ANG):
        raise InvalidOmega(f"omega must be in (0, pi/2], got {omega}")
    chord = b - a
    d = chord.norm()
    if d <= TAU:
        raise CoincidentPoints("arc endpoints coincide")
    radius = d / (2.0 * math.sin(omega))
    u = chord * (1.0 / d)
    mid = Point((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
    center = mid + u.perp() * ((d / 2.0) / math.tan(omega))
    start = norm_angle((b - center).angle())
    end = norm_angle((a - center).angle())
    return OmegaArc(center, radius, start, end, a, b)


def line_arc_intersections(line: DirectedLine, arc: OmegaArc, *, tol: float = TAU) -> list[tuple[Point, float]]:
    """Intersections of a line with an arc, ordered by line parameter.

    Tangency within tolerance collapses to a single point.  The angular span
    check uses a slack proportional to tol / radius so the arc endpoints are
    included.
    """
    oc = line.origin - arc.center
    b = line.direction.dot(oc)
    c = oc.dot(oc) - arc.radius * arc.radius
    disc = b * b - c
    span_slack = max(TAU_ANG, tol / max(arc.radius, tol))
    if disc < 0.0:
        if disc > -tol * max(1.0, arc.radius):
            disc = 0.0
        else:
            return []
    root = math.sqrt(max(disc, 0.0))
    if root <= tol * max(1.0, arc.radius):
        ts = [-b]
    else:
        ts = [-b - root, -b + root]
    out: list[tuple[Point, float]] = []
    for t in ts:
        p = line.point_at(t)
        theta = (p - arc.center).angle()
        if arc.contains_angle(theta, slack=span_slack):
            out.append((p, t))
    return out


def direction_cone(q: Point, points: Sequence[Point]) -> tuple[float, float]:
    """Minimal ccw cone [lo, lo+width] at q covering directions to all points.

    Returns (lo_angle, width).  Assumes q is outside the hull of the points so
    the width is below pi.
    """
    angles = sorted(norm_angle((p - q).angle()) for p in points if dist(p, q) > 0.0)
    if not angles:
        return 0.0, 0.0
    if len(angles) == 1:
        return angles[0], 0.0
    best_gap = -1.0
    best_i = 0
    for i in range(len(angles)):
        nxt = angles[(i + 1) % len(angles)]
        gap = ccw_delta(angles[i], nxt)
        if gap > best_gap:
            best_gap = gap
            best_i = i
    lo = angles[(best_i + 1) % len(angles)]
    return lo, TWO_PI - best_gap


def angular_width(q: Point, polygon: ConvexPolygon) -> float:
    """Angular width of the polygon as seen from an outside point q."""
    return direction_cone(q, polygon.vertices)[1]


def acute_between_lines(d1: Point, d2: Point) -> float:
    """Acute angle in [0, pi/2] between two (undirected) line directions."""
    raw = abs(norm_angle(d1.angle()) - norm_angle(d2.angle())) % math.pi
    return min(raw, math.pi - raw)
