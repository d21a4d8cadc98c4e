"""Interactive adversary enforcing the no-narrow-vertex lower bound.

The adversary answers probe queries while committing to as little as
possible: it maintains the convex workspace A (the circle Psi intersected
with every wedge answered so far), a set of fixed points that will be
vertices of the final polygon, and reveals one new piece of information per
probe after the two or three initialization probes.  Playing any
reconstruction strategy against it therefore costs at least 2n - 2 probes
(2n - 3 for omega = pi/2), and the finished game yields a concrete polygon
on which an honest oracle replays the identical transcript.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .cloud import build_cloud
from .errors import InconsistencyFound, InvalidParams
from .geometry import (
    TAU_ANG,
    ConvexPolygon,
    DirectedLine,
    Point,
    acute_between_lines,
    ccw_angle,
    dist,
    orient,
    unit_from_angle,
)
from .oracle import MISS, ProbeOutcome, ProbeResult, TranscriptEntry, solve_probe
from .region import ConvexRegion

_PSI_RADIUS = 10.0


@dataclass
class PhiRecord:
    probe_index: int
    p_size: int
    f_value: int
    in_init: bool
    valid: bool


class Adversary:
    """Answers probes like a ProbeSession, but invents the polygon lazily.

    Exposes the same channel attributes as a session (omega, p, psi_center,
    psi_radius, rng_seed, probes_used, probe) so any algorithm can play
    against it unchanged.
    """

    def __init__(self, omega: float, n: int, seed: int = 0):
        if not (0.0 < omega <= math.pi / 2.0 + TAU_ANG):
            raise InvalidParams(f"omega must be in (0, pi/2], got {omega}")
        right_angle = abs(omega - math.pi / 2.0) <= TAU_ANG
        if right_angle and n < 5:
            raise InvalidParams("the pentagon frame needs n >= 5 at omega = pi/2")
        if not right_angle and n < 4:
            raise InvalidParams("the rectangle frame needs n >= 4")
        self.omega = float(omega)
        self.n = n
        self.rng_seed = seed
        self._rng = random.Random(f"adversary:{seed}")
        self._right_angle = right_angle
        self.p = Point(0.0, 0.0)
        self.psi_center = self.p
        self.psi_radius = _PSI_RADIUS
        self.scale = 2.0 * _PSI_RADIUS
        # identity/aiming tolerance: coordinates exchanged with the algorithm
        # are exact, so this only needs to dominate float noise
        self._tol = 1e-8 * self.scale
        self.A = ConvexRegion(disc=(self.p, _PSI_RADIUS), scale=self.scale)
        self.probes_used = 0
        self.transcript: list[TranscriptEntry] = []
        self.phi_log: list[PhiRecord] = []
        self.stage = "pre_init"
        self._init_valid = 0
        # committed points, ccw hull order; parallel confirmed-edge flags
        self._pts: list[Point] = []
        self._confirmed: list[bool] = []
        self._revealed: set[tuple[float, float]] = set()
        self._provisional: dict[str, Point] = {}
        self._prov_radius = 0.0
        self._prov_anchor: tuple[Point, float] | None = None  # rectangle: (p, rho)

    # -- channel interface --------------------------------------------------

    def probe(self, line: DirectedLine) -> ProbeResult:
        self.probes_used += 1
        stage_before = self.stage
        result = self._solve(line)
        self.transcript.append(TranscriptEntry(len(self.transcript), line, result))
        self.phi_log.append(PhiRecord(len(self.transcript) - 1, len(self._pts),
                                      self.F, stage_before in ("pre_init", "init"),
                                      result is not MISS))
        return result

    # -- bookkeeping ----------------------------------------------------------

    @property
    def F(self) -> int:
        return sum(1 for c in self._confirmed if not c)

    def committed_polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self._pts)

    def final_polygon(self) -> ConvexPolygon:
        if len(self._pts) != self.n or self.F != 0:
            raise InconsistencyFound("game is not finished")
        return self.committed_polygon()

    def _key(self, p: Point) -> tuple[float, float]:
        return (round(p.x, 9), round(p.y, 9))

    def _index_of(self, p: Point) -> int | None:
        for i, q in enumerate(self._pts):
            if dist(p, q) <= self._tol:
                return i
        return None

    def _insert(self, p: Point) -> int:
        pts = self._pts
        if len(pts) < 2:
            pos = len(pts)
        elif len(pts) == 2:
            pos = 1 if orient(pts[0], pts[1], p) == -1 else 2
        else:
            pos = None
            for i in range(len(pts)):
                j = (i + 1) % len(pts)
                if orient(pts[i], pts[j], p) == -1:
                    pos = j if j != 0 else len(pts)
                    break
            if pos is None:
                raise InconsistencyFound("fixed point is not outside the chain")
        pts.insert(pos, p)
        self._confirmed.insert(pos, False)
        return pos

    # -- probe resolution -----------------------------------------------------

    def _solve(self, line: DirectedLine) -> ProbeResult:
        if self.stage == "pre_init":
            if abs(line.side_of(self.p)) > 1e-6 * self.scale:
                return self._miss_pre_init(line)
            return self._first_valid(line)
        if not self._line_hits_core(line):
            return self._miss_clip(line)
        if self.stage == "init":
            return self._init_answer(line)
        return self._main_answer(line)

    def _miss_pre_init(self, line: DirectedLine) -> ProbeResult:
        # shrink the workspace to a p-centered circle the line cannot touch
        d = abs(line.side_of(self.p))
        r_now = self.A.boundary_distance(self.p)
        if d < r_now:
            self.A.reset_to_disc(self.p, 0.9 * min(d, r_now))
            self.psi_radius = 0.9 * min(d, r_now)
        return MISS

    def _miss_clip(self, line: DirectedLine) -> ProbeResult:
        if line.side_of(self.p) >= 0.0:
            self.A.clip_left(line)
        else:
            self.A.clip_right(line)
        return MISS

    def _core_items(self) -> list[tuple[Point, float]]:
        """Committed geometry with per-point buffers future moves must respect."""
        items: list[tuple[Point, float]] = [(q, 0.0) for q in self._pts]
        anchor_r = self._prov_anchor[1] if (self._prov_anchor and self._provisional) else 0.0
        items.append((self.p, anchor_r))
        for q in self._provisional.values():
            items.append((q, max(self._prov_radius, anchor_r)))
        return items

    def _line_hits_core(self, line: DirectedLine) -> bool:
        margin = 1e-6 * self.scale
        items = self._core_items()
        if all(line.side_of(q) > r + margin for q, r in items):
            return False
        if all(line.side_of(q) < -(r + margin) for q, r in items):
            return False
        return True

    # -- initialization -------------------------------------------------------

    def _first_valid(self, line: DirectedLine) -> ProbeOutcome:
        d = line.direction
        back = self.A.ray_exit(self.p, d * -1.0)
        s = 0.5 * back
        apex = self.p - d * s
        if self._right_angle:
            rho = s / (math.cos(0.4 * math.pi) + math.sin(0.4 * math.pi))
            axis = d
            nl = d.perp()
            def at(angle_deg_from_front: float) -> Point:
                a = math.radians(angle_deg_from_front)
                return self.p + (axis * math.cos(a) + nl * math.sin(a)) * rho
            v1 = at(252.0)
            v2 = at(108.0)
            self._provisional = {"c4": at(324.0), "c5": at(36.0), "c3": at(180.0)}
            self._prov_radius = (1.0 / (4.0 * math.sqrt(2.0))) * dist(v1, v2) * (1.0 - math.tan(math.pi / 5.0))
        else:
            half = self.omega / 2.0
            rho = s * math.tan(half)
            nl = d.perp()
            v1 = self.p - nl * rho
            v2 = self.p + nl * rho
            self._provisional = {"t3": self.p + d * rho, "t4": self.p - d * rho}
            self._prov_anchor = (self.p, rho)
            self._prov_radius = 0.0
        self._insert(v1)
        self._insert(v2)
        self._revealed.add(self._key(v1))
        self._revealed.add(self._key(v2))
        out = ProbeOutcome(apex, d.rotated(-self.omega / 2.0), d.rotated(self.omega / 2.0), v1, v2)
        self.A.clip_wedge(out.wedge())
        self.stage = "init"
        self._init_valid = 1
        return out

    def _provisional_polygon(self) -> ConvexPolygon:
        pts = list(self._pts) + list(self._provisional.values())
        hull = _ccw_hull(pts)
        return ConvexPolygon(hull)

    def _init_answer(self, line: DirectedLine) -> ProbeOutcome:
        self._init_valid += 1
        self._dodge_edges(line)
        poly = self._provisional_polygon()
        out = solve_probe(poly, self.omega, line)
        if out is MISS:
            raise InconsistencyFound("core-hitting probe missed the provisional frame")
        self.A.clip_wedge(out.wedge())
        # contacts on provisional points become fixed and revealed
        for contact in (out.p1, out.p2):
            for name in list(self._provisional):
                if dist(self._provisional[name], contact) <= self._tol:
                    self._insert(self._provisional.pop(name))
                    self._revealed.add(self._key(contact))
            if self._index_of(contact) is not None:
                self._revealed.add(self._key(contact))
        done = False
        if not self._right_angle:
            done = True  # rectangle: both temporaries are fixed after this probe
        else:
            if self._init_valid >= 3:
                done = True
            elif len(self._revealed) >= 4:
                done = True  # two probes revealed four pentagon vertices; fix the fifth
        if done:
            for name in list(self._provisional):
                self._insert(self._provisional.pop(name))
            self.stage = "main"
        return out

    def _dodge_edges(self, line: DirectedLine) -> None:
        """Move provisional points so no frame edge is collinear with the probe."""
        if not self._provisional:
            return
        for _ in range(64):
            poly = self._provisional_polygon()
            vs = poly.vertices
            flush = None
            for i in range(len(vs)):
                a, b = vs[i], vs[(i + 1) % len(vs)]
                if abs(line.side_of(a)) <= self._tol and abs(line.side_of(b)) <= self._tol:
                    flush = (a, b)
                    break
            if flush is None:
                return
            moved = False
            for name, pos in list(self._provisional.items()):
                if dist(pos, flush[0]) <= self._tol or dist(pos, flush[1]) <= self._tol:
                    self._provisional[name] = self._jiggle(name, pos, line)
                    moved = True
            if not moved:
                raise InconsistencyFound("probe flush with an edge of fixed vertices during init")
        raise InconsistencyFound("could not dodge a frame edge")

    def _jiggle(self, name: str, pos: Point, line: DirectedLine) -> Point:
        if self._right_angle:
            # stay inside the movable circle around the original center
            center = pos
            for _ in range(64):
                r = self._prov_radius * self._rng.uniform(0.2, 0.9)
                a = self._rng.uniform(0.0, 2.0 * math.pi)
                cand = center + unit_from_angle(a) * r
                if abs(line.side_of(cand)) > 10.0 * self._tol and self.A.contains(cand, slack=-1e-6 * self.scale):
                    return cand
            raise InconsistencyFound("could not move a pentagon vertex off the probe line")
        # rectangle: rotate the free diagonal
        anchor, rho = self._prov_anchor
        for _ in range(64):
            a = self._rng.uniform(0.0, 2.0 * math.pi)
            t3 = anchor + unit_from_angle(a) * rho
            t4 = anchor - unit_from_angle(a) * rho
            if abs(line.side_of(t3)) > 10.0 * self._tol and abs(line.side_of(t4)) > 10.0 * self._tol:
                self._provisional["t3"], self._provisional["t4"] = t3, t4
                return self._provisional[name]
        raise InconsistencyFound("could not rotate the rectangle diagonal off the probe line")

    # -- main stages ------------------------------------------------------------

    def _main_answer(self, line: DirectedLine) -> ProbeOutcome:
        pair = self._aligned_adjacent_pair(line)
        reveal = False
        if pair is not None and not self._confirmed[pair[0]]:
            p_size = len(self._pts)
            if p_size < self.n - 1:
                reveal = True
            elif p_size == self.n - 1:
                reveal = self.F <= 1  # the last unverified pair: surrender the nth vertex
            else:
                reveal = False
        if reveal:
            self._place_vertex(pair[0], pair[1], line)
        poly = self.committed_polygon()
        out = solve_probe(poly, self.omega, line)
        if out is MISS:
            raise InconsistencyFound("core-hitting probe missed the committed polygon")
        if out.apex_on_polygon:
            raise InconsistencyFound("adversary polygon produced a narrow apex")
        self.A.clip_wedge(out.wedge())
        for contact in (out.p1, out.p2):
            self._revealed.add(self._key(contact))
        self._record_confirmations(out)
        return out

    def _aligned_adjacent_pair(self, line: DirectedLine) -> tuple[int, int] | None:
        """Adjacent committed pair the probe line is aimed through, if any.

        Aiming lines pass exactly through the algorithm's known coordinates,
        so alignment is decided at float precision; a probe grazing some other
        nearly-collinear pair must not count.  Unconfirmed pairs win ties.
        """
        aim_tol = 1e-12 * self.scale
        m = len(self._pts)
        found: tuple[int, int] | None = None
        for i in range(m):
            j = (i + 1) % m
            if abs(line.side_of(self._pts[i])) <= aim_tol and abs(line.side_of(self._pts[j])) <= aim_tol:
                if not self._confirmed[i]:
                    return (i, j)
                found = found or (i, j)
        return found

    def _on_arm(self, out: ProbeOutcome, points) -> list[list[int]]:
        """Indices of committed points on each arm ray (angular membership)."""
        per_arm = []
        for theta in (out.dir1.angle(), out.dir2.angle()):
            ray = DirectedLine(out.q, unit_from_angle(theta))
            hits = [i for i, q in enumerate(points)
                    if ray.param_of(q) > -1e-3 * self._tol
                    and abs(ray.side_of(q)) <= max(1e-3 * self._tol, 1e-9 * ray.param_of(q))]
            hits.sort(key=lambda i: ray.param_of(points[i]))
            per_arm.append(hits)
        return per_arm

    def _record_confirmations(self, out: ProbeOutcome) -> None:
        for on_ray in self._on_arm(out, self._pts):
            if len(on_ray) >= 2:
                for a, b in zip(on_ray, on_ray[1:]):
                    if (a + 1) % len(self._pts) == b:
                        self._confirmed[a] = True
                    elif (b + 1) % len(self._pts) == a:
                        self._confirmed[b] = True

    def _place_vertex(self, i: int, j: int, line: DirectedLine) -> None:
        a, b = self._pts[i], self._pts[j]
        chord = (b - a).unit()
        outward = chord.perp() * -1.0  # right of the ccw edge a->b
        mid = Point((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
        margin_ang = max(1e-4, 10.0 * TAU_ANG)
        # beyond this height the new vertex would see the chord at under omega
        h_cap = (dist(a, b) / 2.0) / math.tan(self.omega / 2.0)
        gap = dist(a, b)
        for attempt in range(600):
            # keep both sub-gaps comparable so nested reveals shrink slowly
            t_off = self._rng.uniform(-0.06, 0.06) * gap
            base = mid + chord * t_off
            depth = self.A.ray_exit(base, outward)
            if depth <= 1e-11 * self.scale:
                continue
            depth = min(depth, 0.7 * h_cap)
            # deeper placements widen the angle between the new chords and the
            # answering arm, keeping the child gaps workable under nesting
            w = base + outward * (depth * self._rng.uniform(0.4, 0.85))
            if not self.A.contains(w, slack=-1e-12 * self.scale):
                continue
            if self.A.boundary_distance(w) < 1e-4 * depth:
                continue
            if not self._arm_clearance_ok(w):
                continue
            if not self._placement_ok(i, j, w, margin_ang):
                continue
            if not self._answer_reveals_cleanly(i, j, w, line):
                continue
            pos = self._insert(w)
            if pos != (i + 1) % (len(self._pts)):
                # hull order must put w between a and b
                prev_idx = (pos - 1) % len(self._pts)
                nxt_idx = (pos + 1) % len(self._pts)
                if not (dist(self._pts[prev_idx], a) <= self._tol and dist(self._pts[nxt_idx], b) <= self._tol):
                    raise InconsistencyFound("revealed vertex landed outside its gap")
            return
        raise InconsistencyFound(f"no feasible position for a new vertex in gap ({i},{j})")

    def _answer_reveals_cleanly(self, i: int, j: int, w: Point, line: DirectedLine) -> bool:
        """Simulate the upcoming answer: exactly one new piece of information.

        The wedge must contact w on one arm, the other contact must be an old
        vertex, and neither arm may lie flush with any edge (which would hand
        the algorithm a confirmation for free).
        """
        tentative = self._pts[:]
        tentative.insert(j if j != 0 else len(tentative), w)
        try:
            poly = ConvexPolygon(tentative)
        except Exception:
            return False
        out = solve_probe(poly, self.omega, line)
        if out is MISS or out.apex_on_polygon:
            return False
        contacts = {self._key(out.p1), self._key(out.p2)}
        if self._key(w) not in contacts:
            return False
        return all(len(hits) < 2 for hits in self._on_arm(out, tentative))

    def _arm_clearance_ok(self, w: Point, min_ang: float = 1e-8) -> bool:
        """Angular clearance from every answered arm, seen from its apex.

        The honest oracle counts points within 1e-9 rad of an arm as touching
        it; staying an order of magnitude clear keeps replayed contacts
        identical no matter how small the local features get.
        """
        for line in self.A.halfplanes:
            side = line.side_of(w)
            if side < min_ang * max(dist(w, line.origin), 1e-9):
                return False
        return True

    def _placement_ok(self, i: int, j: int, w: Point, margin_ang: float) -> bool:
        a, b = self._pts[i], self._pts[j]
        prev_a = self._pts[(i - 1) % len(self._pts)]
        next_b = self._pts[(j + 1) % len(self._pts)]
        if orient(a, w, b) != 1:
            return False
        # internal angles of the would-be hull at w, a, b stay above omega;
        # nested reveals only ever widen the angles at a and b afterwards
        ang_w = ccw_angle(b, w, a)
        ang_a = ccw_angle(w, a, prev_a)
        ang_b = ccw_angle(next_b, b, w)
        lo = self.omega + 1e-6
        hi = math.pi - 1e-7
        if not (lo < ang_w < hi and lo < ang_a < hi and lo < ang_b < hi):
            return False
        # no pair of edge lines may meet at exactly the wedge angle
        new_dirs = [w - a, b - w]
        old_dirs = []
        for k in range(len(self._pts)):
            k2 = (k + 1) % len(self._pts)
            if {k, k2} == {i, j}:
                continue
            old_dirs.append(self._pts[k2] - self._pts[k])
        for nd in new_dirs:
            for od in old_dirs + [d for d in new_dirs if d is not nd]:
                if abs(acute_between_lines(nd, od) - self.omega) < margin_ang:
                    return False
        return True


def _ccw_hull(points: list[Point]) -> list[Point]:
    from .geometry import convex_hull

    return convex_hull(points)


def new_adversary(omega: float, n: int, seed: int = 0) -> Adversary:
    """Fresh adversary hiding an (as yet uncommitted) n-gon without narrow
    vertices inside a circle of radius 10 around the origin."""
    return Adversary(omega, n, seed)


@dataclass
class AuditReport:
    ok: bool
    n: int
    probes: int
    issues: list[str] = field(default_factory=list)
    phi_final: int = 0

    def __bool__(self) -> bool:
        return self.ok


def audit(adv: Adversary, transcript: list[TranscriptEntry] | None = None) -> AuditReport:
    """Post-game consistency audit.

    Replays the transcript against an honest probe of the final polygon and
    checks the information bound: Phi = 2|P| - F rose by at most one per
    probe after the initialization probes.  Raises InconsistencyFound on the
    first violation.
    """
    if transcript is None:
        transcript = adv.transcript
    polygon = adv.final_polygon()
    scale = polygon.diameter()
    cloud = build_cloud(polygon, adv.omega)
    for e in transcript:
        honest = solve_probe(polygon, adv.omega, e.line, cloud)
        if (honest is MISS) != (e.result is MISS):
            raise InconsistencyFound(
                f"probe {e.index}: validity mismatch on replay", probe_index=e.index)
        if e.result is MISS:
            continue
        got: ProbeOutcome = e.result
        if dist(honest.q, got.q) > 1e-6 * scale:
            raise InconsistencyFound(
                f"probe {e.index}: apex moved on replay ({honest.q} vs {got.q})",
                probe_index=e.index)
        for h, g in ((honest.p1, got.p1), (honest.p2, got.p2)):
            if dist(h, g) > 1e-6 * scale:
                raise InconsistencyFound(
                    f"probe {e.index}: contact changed on replay", probe_index=e.index)
        if abs(ccw_angle(got.q + got.dir1, got.q, got.q + got.dir2) - adv.omega) > 1e-7:
            raise InconsistencyFound(
                f"probe {e.index}: wedge angle is not omega", probe_index=e.index)
    issues: list[str] = []
    phi_prev = 0
    init_end_phi = None
    for rec in adv.phi_log:
        phi = 2 * rec.p_size - rec.f_value
        if rec.in_init:
            init_end_phi = phi
        else:
            if phi - phi_prev > 1:
                raise InconsistencyFound(
                    f"probe {rec.probe_index}: Phi rose by {phi - phi_prev} after init",
                    probe_index=rec.probe_index)
        phi_prev = phi
    init_cap = 6 if adv._right_angle else 4
    if init_end_phi is not None and init_end_phi > init_cap:
        raise InconsistencyFound(f"initialization ended with Phi = {init_end_phi} > {init_cap}")
    phi_final = 2 * len(adv._pts) - adv.F
    if phi_final != 2 * adv.n:
        raise InconsistencyFound(f"final Phi = {phi_final}, expected {2 * adv.n}")
    return AuditReport(True, adv.n, adv.probes_used, issues, phi_final)


@dataclass
class DuelResult:
    algorithm: str
    omega: float
    n: int
    probes_used: int
    lower_bound: int
    met_lower_bound: bool
    reconstruction_exact: bool
    audit: AuditReport
    transcript: list[TranscriptEntry]
    final_polygon: ConvexPolygon


def duel(algorithm: str, omega: float, n: int, seed: int = 0) -> DuelResult:
    """Play a reconstruction strategy against the adversary and audit the game."""
    from .harness import cyclic_hausdorff
    from .reconstruct import greedy_reconstruct, reconstruct_general, reconstruct_no_narrow, reconstruct_right_angle

    algos = {
        "input1": reconstruct_no_narrow,
        "input2": reconstruct_right_angle,
        "general": reconstruct_general,
        "greedy": greedy_reconstruct,
    }
    adv = new_adversary(omega, n, seed)
    result = algos[algorithm](adv)
    report = audit(adv)
    final = adv.final_polygon()
    exact = result.polygon is not None and cyclic_hausdorff(final, result.polygon) <= 1e-6 * final.diameter()
    right_angle = abs(omega - math.pi / 2.0) <= TAU_ANG
    bound = 2 * n - 3 if right_angle else 2 * n - 2
    return DuelResult(algorithm, omega, n, adv.probes_used, bound,
                      adv.probes_used >= bound, exact, report, adv.transcript, final)
