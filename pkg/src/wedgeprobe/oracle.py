"""The hidden-polygon probe oracle.

A session owns the hidden polygon and reveals exactly one probe outcome
per query: apex, both arm directions, and the closest contact point on each
arm.  Probing along a directed line brings the apex in from far away; it
stops at the first point where the polygon's angular width equals omega, or
on the polygon itself when the line enters through a narrow vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .cloud import OmegaCloud, build_cloud
from .errors import InvalidOmega
from .geometry import (
    TAU,
    TAU_ANG,
    ConvexPolygon,
    DirectedLine,
    Point,
    Wedge,
    ccw_delta,
    direction_cone,
    dist,
    line_arc_intersections,
    norm_angle,
    unit_from_angle,
)

ARM_POLICIES = ("bisector-symmetric", "adversarial-minimal", "seeded-random")


class Miss:
    """Invalid probe: the line does not meet the polygon.  Carries nothing."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Miss"


MISS = Miss()


@dataclass(frozen=True, slots=True)
class ProbeOutcome:
    q: Point
    dir1: Point
    dir2: Point
    p1: Point
    p2: Point
    apex_on_polygon: bool = False

    @property
    def omega(self) -> float:
        return ccw_delta(self.dir1.angle(), self.dir2.angle())

    def wedge(self) -> Wedge:
        return Wedge(self.q, self.dir1.angle(), self.omega)


ProbeResult = ProbeOutcome | Miss


@dataclass(frozen=True, slots=True)
class TranscriptEntry:
    index: int
    line: DirectedLine
    result: ProbeResult


def _line_polygon_entry(polygon: ConvexPolygon, line: DirectedLine, tol: float):
    """First intersection of the full line with the polygon boundary.

    Returns (t, point, vertex_index_or_None) or None when disjoint.
    """
    vs = polygon.vertices
    n = len(vs)
    sides = [line.side_of(v) for v in vs]
    candidates: list[tuple[float, Point, int | None]] = []
    for i, v in enumerate(vs):
        if abs(sides[i]) <= tol:
            candidates.append((line.param_of(v), v, i))
    for i in range(n):
        s0, s1 = sides[i], sides[(i + 1) % n]
        if (s0 > tol and s1 < -tol) or (s0 < -tol and s1 > tol):
            u = s0 / (s0 - s1)
            a, b = vs[i], vs[(i + 1) % n]
            p = Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
            candidates.append((line.param_of(p), p, None))
    if not candidates:
        return None
    return min(candidates, key=lambda c: c[0])


_ANG_ON_RAY = 1e-9  # angular slack for "vertex lies on this arm"


def _arm_contacts(polygon: ConvexPolygon, q: Point, theta: float, tol: float) -> list[Point]:
    """Polygon vertices on the forward arm ray from q at angle theta, nearest first.

    Membership is angular (relative to the distance from the apex) so that
    flush edges are recognized at any feature scale.
    """
    d = unit_from_angle(theta)
    cross_floor = 1e-3 * tol
    hits = []
    for v in polygon.vertices:
        w = v - q
        r = w.norm()
        if r <= tol:
            hits.append((0.0, v))
        elif abs(d.cross(w)) <= max(cross_floor, _ANG_ON_RAY * r) and d.dot(w) > 0.0:
            hits.append((r, v))
    hits.sort(key=lambda h: h[0])
    return [v for _, v in hits]


def _narrow_arm_interval(polygon: ConvexPolygon, i: int, omega: float) -> tuple[float, float]:
    """Feasible theta1 range [lo, lo+span] for a wedge parked on narrow vertex i."""
    d_in = polygon.edge_direction(i - 1)
    d_out = polygon.edge_direction(i)
    lo = norm_angle(d_in + math.pi - omega)
    span = max(omega - polygon.internal_angle(i), 0.0)
    return lo, span


def solve_probe(polygon: ConvexPolygon, omega: float, line: DirectedLine,
                cloud: OmegaCloud | None = None, *, tol: float | None = None,
                narrow_frac=lambda: 0.5) -> ProbeResult:
    """Resolve one probe of `polygon` along `line` (stateless).

    The apex is the first intersection of the line with the omega-cloud that
    still has the polygon ahead of it, or the narrow vertex itself when the
    line enters through one.  `narrow_frac` picks the arm orientation within
    the feasible interval in that case (0 = clockwise extreme, 1 = ccw).
    """
    scale = polygon.diameter()
    if tol is None:
        tol = max(TAU * scale, 1e-13)
    entry = _line_polygon_entry(polygon, line, tol)
    if entry is None:
        return MISS
    t_entry, _, vi = entry
    if vi is not None and polygon.internal_angle(vi) <= omega + TAU_ANG:
        return _narrow_outcome(polygon, vi, omega, narrow_frac())
    if cloud is None:
        cloud = build_cloud(polygon, omega)
    best_t = None
    best_q = None
    for arc in cloud.arcs:
        for pt, t in line_arc_intersections(line, arc, tol=tol):
            if t <= t_entry + tol and (best_t is None or t < best_t):
                best_t, best_q = t, pt
    if best_q is None:
        # width never reaches omega ahead of the entry: numerical grazing
        return MISS
    return _outcome_at(polygon, best_q, omega, tol, scale)


def _outcome_at(polygon: ConvexPolygon, q: Point, omega: float, tol: float, scale: float) -> ProbeOutcome:
    lo, _width = direction_cone(q, polygon.vertices)
    contact_tol = max(tol, 1e-9 * scale)
    on1 = _arm_contacts(polygon, q, lo, contact_tol)
    on2 = _arm_contacts(polygon, q, lo + omega, contact_tol)
    return ProbeOutcome(q, unit_from_angle(lo), unit_from_angle(lo + omega), on1[0], on2[0])


def _narrow_outcome(polygon: ConvexPolygon, vi: int, omega: float, frac: float) -> ProbeOutcome:
    v = polygon.vertex(vi)
    lo, span = _narrow_arm_interval(polygon, vi, omega)
    theta1 = lo + (0.5 if span <= TAU_ANG else frac) * span
    return ProbeOutcome(v, unit_from_angle(theta1), unit_from_angle(theta1 + omega),
                        v, v, apex_on_polygon=True)


class ProbeSession:
    """Probing channel over a hidden polygon.

    Algorithms may read `omega`, `p`, `psi_center`, `psi_radius`, `rng_seed`
    and `probes_used`, and call `probe`.  The hidden polygon itself stays
    private to the oracle.
    """

    def __init__(self, hidden: ConvexPolygon, omega: float,
                 arm_policy: str = "adversarial-minimal", seed: int = 0):
        if not (0.0 < omega <= math.pi / 2.0 + TAU_ANG):
            raise InvalidOmega(f"omega must be in (0, pi/2], got {omega}")
        if arm_policy not in ARM_POLICIES:
            raise ValueError(f"unknown arm policy {arm_policy!r}")
        self._hidden = hidden
        self.omega = float(omega)
        self.arm_policy = arm_policy
        self.rng_seed = seed
        self._rng = random.Random(seed)
        self.p = hidden.centroid()
        self.psi_center = self.p
        self.psi_radius = 1.5 * max(dist(self.p, v) for v in hidden.vertices)
        self.probes_used = 0
        self.transcript: list[TranscriptEntry] = []
        self._cloud: OmegaCloud | None = None
        self._scale = hidden.diameter()
        self._tol = max(TAU * self._scale, 1e-13)

    @property
    def scale(self) -> float:
        return self._scale

    def cloud(self) -> OmegaCloud:
        if self._cloud is None:
            self._cloud = build_cloud(self._hidden, self.omega)
        return self._cloud

    def probe(self, line: DirectedLine) -> ProbeResult:
        """One omega-probe along `line`.  Every call consumes one probe."""
        self.probes_used += 1
        result = self._solve(line)
        self.transcript.append(TranscriptEntry(len(self.transcript), line, result))
        return result

    # -- internals ---------------------------------------------------------

    def _policy_frac(self) -> float:
        if self.arm_policy == "bisector-symmetric":
            return 0.5
        if self.arm_policy == "adversarial-minimal":
            return 0.1
        return self._rng.uniform(0.05, 0.95)

    def _solve(self, line: DirectedLine) -> ProbeResult:
        return solve_probe(self._hidden, self.omega, line, self.cloud(),
                           tol=self._tol, narrow_frac=self._policy_frac)

    def _narrow_outcome(self, vi: int) -> ProbeOutcome:
        return _narrow_outcome(self._hidden, vi, self.omega, self._policy_frac())


def new_session(hidden: ConvexPolygon, omega: float,
                arm_policy: str = "adversarial-minimal", seed: int = 0) -> ProbeSession:
    """Fresh session: p is the centroid, Psi is centered there with radius
    1.5x the farthest vertex distance, and the probe counter starts at zero."""
    return ProbeSession(hidden, omega, arm_policy, seed)


def brute_force_probe(session: ProbeSession, line: DirectedLine) -> ProbeResult:
    """Independent probe solver for cross-validation; does not consume probes.

    The apex is found by bisecting the line parameter for the point where the
    angular width of the hidden polygon equals omega, with no reference to
    the omega-cloud.
    """
    hidden = session._hidden
    omega = session.omega
    scale = session.scale
    tol = max(TAU * scale, 1e-13)

    vs = hidden.vertices
    sides = [line.side_of(v) for v in vs]
    entry_t = None
    entry_vertex = None
    for i, v in enumerate(vs):
        if abs(sides[i]) <= tol:
            t = line.param_of(v)
            if entry_t is None or t < entry_t:
                entry_t, entry_vertex = t, i
    for i in range(len(vs)):
        s0, s1 = sides[i], sides[(i + 1) % len(vs)]
        if (s0 > tol and s1 < -tol) or (s0 < -tol and s1 > tol):
            u = s0 / (s0 - s1)
            a, b = vs[i], vs[(i + 1) % len(vs)]
            p = Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
            t = line.param_of(p)
            if entry_t is None or t < entry_t:
                entry_t, entry_vertex = t, None
    if entry_t is None:
        return MISS

    if entry_vertex is not None and hidden.internal_angle(entry_vertex) <= omega + TAU_ANG:
        return session._narrow_outcome(entry_vertex)

    def width_at(t: float) -> float:
        return direction_cone(line.point_at(t), vs)[1]

    span = 4.0 * (session.psi_radius + dist(line.origin, session.psi_center) + scale)
    t_lo = entry_t - span
    while width_at(t_lo) >= omega and span < 1e9 * scale:
        span *= 4.0
        t_lo = entry_t - span
    t_hi = entry_t - tol
    if width_at(t_hi) < omega:
        t_hi = entry_t  # grazing entries: width jumps right at the boundary
    t_tol = 1e-10 * max(1.0, scale)
    while t_hi - t_lo > t_tol:
        mid = 0.5 * (t_lo + t_hi)
        if width_at(mid) >= omega:
            t_hi = mid
        else:
            t_lo = mid
    q = line.point_at(0.5 * (t_lo + t_hi))
    lo_angle, _ = direction_cone(q, vs)
    contact_tol = max(tol, 1e-7 * scale)
    on1 = _arm_contacts(hidden, q, lo_angle, contact_tol)
    on2 = _arm_contacts(hidden, q, lo_angle + omega, contact_tol)
    p1 = on1[0] if on1 else q
    p2 = on2[0] if on2 else q
    return ProbeOutcome(q, unit_from_angle(lo_angle), unit_from_angle(lo_angle + omega), p1, p2)


def outcome_is_valid(outcome: ProbeOutcome, polygon: ConvexPolygon,
                     omega: float | None = None, *, slack: float | None = None) -> bool:
    """Check that an outcome is a valid probe of a known polygon: the wedge
    contains every vertex and, when `omega` is given, opens by that angle."""
    if slack is None:
        slack = 1e-7 * polygon.diameter()
    w = outcome.wedge()
    if not all(w.contains(v, slack=slack) for v in polygon.vertices):
        return False
    if omega is not None and abs(outcome.omega - omega) > 1e-7:
        return False
    return True
