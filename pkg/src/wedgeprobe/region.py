"""Convex regions bounded by circular arcs and segments.

A region is stored as constraints (at most one disc, plus keep-left
half-planes); the explicit boundary chain is derived on demand.  This backs
both the feasible-region queries and the adversary's shrinking workspace.
Regions here are small (tens of constraints), so no output-sensitive
cleverness is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import (
    TAU,
    TAU_ANG,
    TWO_PI,
    ConvexPolygon,
    DirectedLine,
    Point,
    Wedge,
    ccw_delta,
    dist,
    norm_angle,
    unit_from_angle,
)

_SYNTHETIC_FACTOR = 1.0e6


@dataclass(frozen=True, slots=True)
class SegPiece:
    p0: Point
    p1: Point

    @property
    def start(self) -> Point:
        return self.p0

    @property
    def end(self) -> Point:
        return self.p1

    def midpoint(self) -> Point:
        return Point((self.p0.x + self.p1.x) / 2.0, (self.p0.y + self.p1.y) / 2.0)


@dataclass(frozen=True, slots=True)
class ArcPiece:
    center: Point
    radius: float
    a0: float
    a1: float

    @property
    def sweep(self) -> float:
        return ccw_delta(self.a0, self.a1)

    def point_at(self, theta: float) -> Point:
        return self.center + unit_from_angle(theta) * self.radius

    @property
    def start(self) -> Point:
        return self.point_at(self.a0)

    @property
    def end(self) -> Point:
        return self.point_at(self.a1)

    def midpoint(self) -> Point:
        return self.point_at(self.a0 + self.sweep / 2.0)


BoundaryPiece = SegPiece | ArcPiece


def _clip_chain(pieces: list[BoundaryPiece], line: DirectedLine, tol: float) -> list[BoundaryPiece]:
    """Keep the part of a closed ccw chain on the left of `line`."""
    kept: list[BoundaryPiece] = []
    for piece in pieces:
        kept.extend(_clip_piece(piece, line, tol))
    if not kept:
        return []
    joined: list[BoundaryPiece] = []
    for i, piece in enumerate(kept):
        joined.append(piece)
        nxt = kept[(i + 1) % len(kept)]
        gap = dist(_end(piece), _start(nxt))
        if gap > tol:
            joined.append(SegPiece(_end(piece), _start(nxt)))
    return joined


def _start(piece: BoundaryPiece) -> Point:
    return piece.start


def _end(piece: BoundaryPiece) -> Point:
    return piece.end


def _clip_piece(piece: BoundaryPiece, line: DirectedLine, tol: float) -> list[BoundaryPiece]:
    if isinstance(piece, SegPiece):
        s0 = line.side_of(piece.p0)
        s1 = line.side_of(piece.p1)
        if s0 >= -tol and s1 >= -tol:
            return [piece]
        if s0 <= tol and s1 <= tol:
            return []
        t = s0 / (s0 - s1)
        x = Point(piece.p0.x + t * (piece.p1.x - piece.p0.x), piece.p0.y + t * (piece.p1.y - piece.p0.y))
        if s0 > 0.0:
            return [SegPiece(piece.p0, x)]
        return [SegPiece(x, piece.p1)]

    # Arc: split at circle/line intersections interior to the span, then keep
    # sub-arcs whose midpoint is inside.
    oc = line.origin - piece.center
    b = line.direction.dot(oc)
    c = oc.dot(oc) - piece.radius * piece.radius
    disc = b * b - c
    cut_angles: list[float] = []
    if disc > 0.0:
        root = math.sqrt(disc)
        for t in (-b - root, -b + root):
            p = line.point_at(t)
            theta = norm_angle((p - piece.center).angle())
            off = ccw_delta(piece.a0, theta)
            if TAU_ANG < off < piece.sweep - TAU_ANG:
                cut_angles.append(off)
    cut_angles.sort()
    offsets = [0.0] + cut_angles + [piece.sweep]
    out: list[BoundaryPiece] = []
    for i in range(len(offsets) - 1):
        lo, hi = offsets[i], offsets[i + 1]
        if hi - lo <= TAU_ANG:
            continue
        sub = ArcPiece(piece.center, piece.radius, norm_angle(piece.a0 + lo), norm_angle(piece.a0 + hi))
        if line.side_of(sub.midpoint()) >= -tol:
            out.append(sub)
    return out


@dataclass
class ConvexRegion:
    """Intersection of an optional disc and keep-left half-planes."""

    disc: tuple[Point, float] | None = None
    halfplanes: list[DirectedLine] = field(default_factory=list)
    scale: float = 1.0

    def copy(self) -> "ConvexRegion":
        return ConvexRegion(self.disc, list(self.halfplanes), self.scale)

    # -- constraint edits -------------------------------------------------

    def clip_left(self, line: DirectedLine) -> None:
        self.halfplanes.append(line)

    def clip_right(self, line: DirectedLine) -> None:
        self.halfplanes.append(DirectedLine(line.origin, line.direction * -1.0))

    def clip_wedge(self, wedge: Wedge) -> None:
        self.clip_left(DirectedLine(wedge.apex, wedge.dir1))
        self.clip_right(DirectedLine(wedge.apex, wedge.dir2))

    def reset_to_disc(self, center: Point, radius: float) -> None:
        """Replace everything with a disc known to lie inside the region."""
        self.disc = (center, radius)
        self.halfplanes = []

    # -- queries ----------------------------------------------------------

    def contains(self, p: Point, *, slack: float = 0.0) -> bool:
        if self.disc is not None:
            c, r = self.disc
            if dist(p, c) > r + slack:
                return False
        for line in self.halfplanes:
            if line.side_of(p) < -slack:
                return False
        return True

    def boundary_distance(self, p: Point) -> float:
        """Distance from an interior point to the boundary (negative if outside)."""
        d = math.inf
        if self.disc is not None:
            c, r = self.disc
            d = r - dist(p, c)
        for line in self.halfplanes:
            d = min(d, line.side_of(p))
        return d

    def ray_exit(self, origin: Point, direction: Point) -> float:
        """Largest t >= 0 with origin + t*direction inside; 0 if none."""
        tol = TAU * max(self.scale, 1.0)
        t_lo, t_hi = 0.0, math.inf
        if self.disc is not None:
            c, r = self.disc
            oc = origin - c
            b = direction.dot(oc)
            disc = b * b - (oc.dot(oc) - r * r)
            if disc < 0.0:
                return 0.0
            root = math.sqrt(disc)
            t_lo = max(t_lo, -b - root)
            t_hi = min(t_hi, -b + root)
        for line in self.halfplanes:
            s0 = line.side_of(origin)
            k = line.direction.cross(direction)
            if abs(k) <= TAU:
                if s0 < -tol:
                    return 0.0
                continue
            bound = -s0 / k
            if k < 0.0:
                t_hi = min(t_hi, bound)
            else:
                t_lo = max(t_lo, bound)
        if not math.isfinite(t_hi):
            t_hi = _SYNTHETIC_FACTOR * self.scale
        if t_hi < t_lo - tol or t_lo > tol:
            return 0.0
        return max(t_hi, 0.0)

    def is_unbounded(self) -> bool:
        """True when the recession cone of the constraints is nontrivial."""
        if self.disc is not None:
            return False
        lo, sweep = 0.0, TWO_PI
        for line in self.halfplanes:
            # directions d with line.direction.cross(d) >= 0 span [theta, theta+pi]
            theta = norm_angle(line.direction.angle())
            lo, sweep = _intersect_angular(lo, sweep, theta, math.pi)
            if sweep <= 0.0:
                return False
        return sweep > 1e-12

    def boundary_chain(self, *, reference: Point | None = None) -> list[BoundaryPiece]:
        """Closed ccw boundary; uses a synthetic far circle when unbounded."""
        if self.disc is not None:
            center, radius = self.disc
        else:
            center = reference if reference is not None else Point(0.0, 0.0)
            radius = _SYNTHETIC_FACTOR * self.scale
        half = ArcPiece(center, radius, 0.0, math.pi)
        other = ArcPiece(center, radius, math.pi, 0.0)
        chain: list[BoundaryPiece] = [half, other]
        tol = max(TAU * self.scale, 1e-12)
        for line in self.halfplanes:
            chain = _clip_chain(chain, line, tol)
            if not chain:
                return []
        return chain

    def sample_boundary_points(self, per_piece: int = 3, **kw) -> list[Point]:
        pts: list[Point] = []
        for piece in self.boundary_chain(**kw):
            pts.append(piece.start)
            if isinstance(piece, ArcPiece):
                sw = piece.sweep
                for j in range(1, per_piece + 1):
                    pts.append(piece.point_at(piece.a0 + sw * j / (per_piece + 1)))
        return pts


def _intersect_angular(lo: float, sweep: float, lo2: float, sweep2: float) -> tuple[float, float]:
    """Intersect ccw angular intervals; valid when the result is a single arc.

    The first interval may be the full circle; afterwards both operands have
    sweep <= pi so the intersection cannot split in two.
    """
    if sweep >= TWO_PI - 1e-15:
        return lo2, sweep2
    if ccw_delta(lo, lo2) <= sweep:
        start = lo2
    elif ccw_delta(lo2, lo) <= sweep2:
        start = lo
    else:
        return lo, 0.0
    remaining1 = sweep - ccw_delta(lo, start)
    remaining2 = sweep2 - ccw_delta(lo2, start)
    return start, max(min(remaining1, remaining2), 0.0)


@dataclass(frozen=True)
class FeasibleRegion:
    """Intersection of observed wedges (optionally clipped to a disc).

    `degenerate` means the region collapsed onto the line of the clipping
    edge; `unbounded` means the wedge constraints leave an open direction.
    """

    region: ConvexRegion
    boundary: tuple[BoundaryPiece, ...]
    unbounded: bool
    degenerate: bool
    degenerate_segment: tuple[Point, Point] | None = None

    def contains(self, p: Point, *, slack: float = 0.0) -> bool:
        return self.region.contains(p, slack=slack)


def _region_from_wedges(wedges, clip, scale: float) -> ConvexRegion:
    region = ConvexRegion(scale=scale)
    if clip is not None:
        center, radius = clip
        region.disc = (center, radius)
    for w in wedges:
        region.clip_wedge(w)
    return region


def feasible_region(
    Q: ConvexPolygon,
    omega: float,
    wedges=(),
    clip: tuple[Point, float] | None = None,
) -> FeasibleRegion:
    """Region consistent with every observed wedge containing Q.

    `wedges` are the wedges answered so far (each must contain Q); with no
    observations the region is the whole clip disc (or the plane).
    """
    scale = Q.diameter()
    region = _region_from_wedges(wedges, clip, scale)
    unbounded = region.is_unbounded()
    boundary = tuple(region.boundary_chain(reference=Q.centroid()))
    return FeasibleRegion(region, boundary, unbounded, degenerate=not boundary and not unbounded)


def feasible_edge_region(
    Q: ConvexPolygon,
    edge: int,
    omega: float,
    wedges=(),
    clip: tuple[Point, float] | None = None,
) -> FeasibleRegion:
    """Clip of the feasible region to the outward half-plane of edge `edge`.

    Degenerates to the edge segment itself exactly when some observed arm is
    flush with the edge line (the confirmed-edge situation).
    """
    scale = Q.diameter()
    a = Q.vertex(edge)
    b = Q.vertex(edge + 1)
    region = _region_from_wedges(wedges, clip, scale)
    # outward side of a ccw edge is the right of a->b
    region.clip_right(DirectedLine.through(a, b))
    boundary = tuple(region.boundary_chain(reference=Q.centroid()))
    unbounded = region.is_unbounded()
    edge_line = DirectedLine.through(a, b)
    tol = max(1e-7 * scale, 1e-12)
    flat = True
    if unbounded:
        flat = False
    for piece in boundary:
        pts = [piece.start, piece.end]
        if isinstance(piece, ArcPiece):
            pts.append(piece.midpoint())
        if any(abs(edge_line.side_of(p)) > tol for p in pts):
            flat = False
            break
    degenerate = flat
    return FeasibleRegion(
        region,
        boundary,
        unbounded,
        degenerate,
        degenerate_segment=(a, b) if degenerate else None,
    )


def gap_triangle(region: ConvexRegion, a: Point, b: Point, outward: Point) -> tuple[Point, Point, Point] | None:
    """A triangle with base (a, b) contained in the region, or None.

    `outward` is a unit vector pointing from the chord into the region's far
    side.  Exists whenever the region does not collapse onto the chord line.
    """
    mid = Point((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
    depth = region.ray_exit(mid, outward)
    if depth <= TAU * max(region.scale, 1.0):
        return None
    apex = mid + outward * (0.5 * depth)
    return (a, b, apex)
