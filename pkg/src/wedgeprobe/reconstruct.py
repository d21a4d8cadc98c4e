"""Reconstruction algorithms driven purely through the probe channel.

Three strategies are provided: the basic no-narrow-vertex loop (at most
2n - 2 probes), the right-angle variant with its hit step (2n - 3 probes for
omega = pi/2), and the general algorithm that tolerates narrow vertices
(2n - 1 + N_B + P_B probes).  A naive greedy strategy is included as a
reference opponent for the adversary game.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    BudgetExceeded,
    EpsilonViolated,
    NarrowVertexEncountered,
    OmegaMismatch,
)
from .geometry import (
    TAU,
    TAU_ANG,
    ConvexPolygon,
    DirectedLine,
    Point,
    ccw_angle,
    dist,
    orient,
    unit_from_angle,
)
from .oracle import MISS, ProbeOutcome, ProbeResult


def narrow_budget_surcharge(n_narrow: int) -> int:
    """The P_B term of the general bound 2n - 1 + N_B + P_B."""
    return {0: -1, 1: -1, 2: 2, 3: 3}[n_narrow]


@dataclass
class ReconstructionResult:
    polygon: ConvexPolygon | None
    probes_used: int
    bound: int | None
    vertices: tuple[Point, ...] = ()
    exact_claim: bool = True
    best_effort: bool = False
    unresolved_pairs: tuple[tuple[Point, Point], ...] = ()
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.vertices and self.polygon is not None:
            self.vertices = self.polygon.vertices

    def __iter__(self) -> Iterator:
        yield self.polygon
        yield self.probes_used


class ReconState:
    """Growing convex chain of discovered vertices with flag bookkeeping.

    flag(u) promises that u and its ccw successor form an edge of the hidden
    polygon; F is the number of vertices whose flag is still false.  Vertex
    identity across probes is a coordinate match within tolerance.
    """

    def __init__(self, scale: float):
        self.points: list[Point] = []
        self.flags: list[bool] = []
        self.bvertex: list[bool] = []
        self.birth: list[int] = []
        self._stamp = 0
        # contacts carry exact vertex coordinates, so identity matching only
        # needs to clear float noise
        self.tol = max(10.0 * TAU * scale, 1e-12)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def F(self) -> int:
        return sum(1 for f in self.flags if not f)

    def index_of(self, p: Point) -> int | None:
        for i, q in enumerate(self.points):
            if dist(p, q) <= self.tol:
                return i
        return None

    def ccw_next(self, i: int) -> int:
        return (i + 1) % len(self.points)

    def ccw_prev(self, i: int) -> int:
        return (i - 1) % len(self.points)

    def insert(self, p: Point, *, bvertex: bool = False) -> int:
        """Insert a new extreme point at its hull position; returns its index."""
        pts = self.points
        if self.index_of(p) is not None:
            raise ValueError("insert called with an already known vertex")
        if len(pts) < 2:
            pos = len(pts)
        elif len(pts) == 2:
            pos = 1 if orient(pts[0], pts[1], p) == -1 else 2
        else:
            pos = None
            for i in range(len(pts)):
                j = (i + 1) % len(pts)
                if orient(pts[i], pts[j], p) == -1:
                    if pos is not None:
                        raise ValueError("new point is outside more than one edge")
                    pos = j if j != 0 else len(pts)
            if pos is None:
                raise ValueError("new point is not outside the current chain")
        pts.insert(pos, p)
        self.flags.insert(pos, False)
        self.bvertex.insert(pos, bvertex)
        self.birth.insert(pos, self._stamp)
        self._stamp += 1
        return pos

    def unflagged_in_birth_order(self) -> list[int]:
        idx = [i for i in range(len(self.points)) if not self.flags[i]]
        idx.sort(key=lambda i: self.birth[i])
        return idx

    def internal_angle_at(self, i: int) -> float:
        return ccw_angle(self.points[self.ccw_next(i)], self.points[i], self.points[self.ccw_prev(i)])

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.points)


def _first_line(session, first_direction: float | None) -> DirectedLine:
    if first_direction is None:
        rng = random.Random(f"{session.rng_seed}:first-probe")
        first_direction = rng.uniform(0.0, 2.0 * math.pi)
    return DirectedLine(session.p, unit_from_angle(first_direction))


def _expect_outcome(result: ProbeResult) -> ProbeOutcome:
    if result is MISS:
        raise RuntimeError("probe unexpectedly missed the polygon")
    return result


def _guard(session, start: int, state: ReconState) -> None:
    if session.probes_used - start > 2 * len(state) + 8:
        raise BudgetExceeded(
            f"{session.probes_used - start} probes for {len(state)} known vertices"
        )


def _basic_loop(session, state: ReconState, start: int, *, pick_newest: bool = False) -> int:
    """The confirm-or-split loop shared by the no-narrow strategies.

    Returns how many times the flush contact appeared on the second arm
    (possible at most once, on the first probe after initialization).
    """
    p2_is_u_count = 0
    while state.F != 0:
        _guard(session, start, state)
        order = state.unflagged_in_birth_order()
        u = order[-1] if pick_newest else order[0]
        v = state.ccw_next(u)
        pu, pv = state.points[u], state.points[v]
        out = _expect_outcome(session.probe(DirectedLine.through(pu, pv)))
        if out.apex_on_polygon:
            raise NarrowVertexEncountered(f"apex stopped on the polygon at {out.q}")
        i1 = state.index_of(out.p1)
        i2 = state.index_of(out.p2)
        if i1 == u:
            state.flags[u] = True
            if i2 is None:
                state.insert(out.p2)
        elif i2 == u:
            p2_is_u_count += 1
            state.flags[v] = True
            state.insert(out.p1)
        else:
            state.insert(out.p1)
            if i2 is None:
                state.insert(out.p2)
    return p2_is_u_count


def reconstruct_no_narrow(session, first_direction: float | None = None) -> ReconstructionResult:
    """Reconstruct a polygon with no narrow vertices in at most 2n - 2 probes."""
    start = session.probes_used
    state = ReconState(2.0 * session.psi_radius)
    out = _expect_outcome(session.probe(_first_line(session, first_direction)))
    if out.apex_on_polygon:
        raise NarrowVertexEncountered("hidden polygon has a narrow vertex")
    state.insert(out.p1)
    state.insert(out.p2)
    p2u = _basic_loop(session, state, start)
    polygon = state.polygon()
    probes = session.probes_used - start
    bound = 2 * polygon.n - 2
    if probes > bound:
        raise BudgetExceeded(f"used {probes} probes, bound {bound}")
    return ReconstructionResult(polygon, probes, bound, extras={"p2_is_u_count": p2u})


def greedy_reconstruct(session, first_direction: float | None = None) -> ReconstructionResult:
    """Reference strategy: same probes, newest-first order, no probe accounting."""
    start = session.probes_used
    state = ReconState(2.0 * session.psi_radius)
    out = _expect_outcome(session.probe(_first_line(session, first_direction)))
    if out.apex_on_polygon:
        raise NarrowVertexEncountered("hidden polygon has a narrow vertex")
    state.insert(out.p1)
    state.insert(out.p2)
    _basic_loop(session, state, start, pick_newest=True)
    polygon = state.polygon()
    probes = session.probes_used - start
    return ReconstructionResult(polygon, probes, bound=2 * polygon.n - 2)


def reconstruct_right_angle(session, first_direction: float | None = None) -> ReconstructionResult:
    """Right-angle wedge strategy: at most 2n - 3 probes when omega = pi/2.

    The richer initialization and the single hit probe (which always yields
    two new pieces of information) save one probe over the basic loop.
    """
    if abs(session.omega - math.pi / 2.0) > TAU_ANG:
        raise OmegaMismatch(f"requires omega = pi/2, session has {session.omega}")
    start = session.probes_used
    state = ReconState(2.0 * session.psi_radius)

    out1 = _expect_outcome(session.probe(_first_line(session, first_direction)))
    if out1.apex_on_polygon:
        raise NarrowVertexEncountered("hidden polygon has a narrow vertex")
    v1, v2 = out1.p1, out1.p2
    state.insert(v1)
    state.insert(v2)

    out2 = _expect_outcome(session.probe(DirectedLine.through(v1, v2)))
    if out2.apex_on_polygon:
        raise NarrowVertexEncountered("hidden polygon has a narrow vertex")

    if state.index_of(out2.p2) == state.index_of(v1):
        # arm flush with v1v2: edge confirmed, O lies right of v1->v2
        v4 = out2.p1
        state.insert(v4)
        iv2 = state.index_of(v2)
        if state.ccw_next(iv2) != state.index_of(v1):
            raise RuntimeError("flush-confirmed edge is not a chain edge")
        state.flags[iv2] = True
        out3 = _expect_outcome(session.probe(DirectedLine.through(v4, v2)))
        if out3.apex_on_polygon:
            raise NarrowVertexEncountered("hidden polygon has a narrow vertex")
        v3 = out3.p1
        state.insert(v3)
        if state.index_of(out3.p2) is None:
            state.insert(out3.p2)
        hit_line = DirectedLine.through(v3, v4)
        hit_case = 3
    else:
        v3, v4 = out2.p1, out2.p2
        state.insert(v3)
        state.insert(v4)
        if ccw_angle(v2, v3, out2.q) < ccw_angle(out1.q, v2, v3):
            hit_line = DirectedLine.through(v3, v1)
            hit_case = 1
        else:
            hit_line = DirectedLine.through(v2, v4)
            hit_case = 2

    info_before = len(state) + sum(state.flags)
    hit = _expect_outcome(session.probe(hit_line))
    if hit.apex_on_polygon:
        raise NarrowVertexEncountered("hidden polygon has a narrow vertex")
    if hit_case == 1:
        state.insert(hit.p1)
        if state.index_of(hit.p2) == state.index_of(v3):
            i = state.index_of(v1)
            if state.ccw_next(i) != state.index_of(v3):
                raise RuntimeError("hit step confirmed a non-adjacent pair")
            state.flags[i] = True
        else:
            state.insert(hit.p2)
    elif hit_case == 2:
        state.insert(hit.p2)
        if state.index_of(hit.p1) == state.index_of(v2):
            i = state.index_of(v2)
            if state.ccw_next(i) != state.index_of(v4):
                raise RuntimeError("hit step confirmed a non-adjacent pair")
            state.flags[i] = True
        else:
            state.insert(hit.p1)
    else:
        state.insert(hit.p1)
        if state.index_of(hit.p2) == state.index_of(v3):
            i = state.index_of(v4)
            if state.ccw_next(i) != state.index_of(v3):
                raise RuntimeError("hit step confirmed a non-adjacent pair")
            state.flags[i] = True
        else:
            state.insert(hit.p2)
    hit_info_delta = len(state) + sum(state.flags) - info_before

    p2u = _basic_loop(session, state, start)
    polygon = state.polygon()
    probes = session.probes_used - start
    if polygon.n < 5:
        raise RuntimeError("right-angle strategy needs n >= 5; preconditions violated")
    bound = 2 * polygon.n - 3
    if probes > bound:
        raise BudgetExceeded(f"used {probes} probes, bound {bound}")
    return ReconstructionResult(
        polygon, probes, bound,
        extras={"hit_info_delta": hit_info_delta, "hit_case": hit_case, "p2_is_u_count": p2u},
    )


def reconstruct_general(session, epsilon: float | None = None,
                        first_direction: float | None = None) -> ReconstructionResult:
    """General reconstruction tolerating narrow vertices.

    With two or more narrow vertices an epsilon satisfying the separation
    promise must be supplied; without it the algorithm stops when only
    adjacent narrow pairs remain and returns a best-effort result carrying
    the unresolved pairs.
    """
    start = session.probes_used
    state = ReconState(2.0 * session.psi_radius)
    omega = session.omega

    out = _expect_outcome(session.probe(_first_line(session, first_direction)))
    if out.apex_on_polygon:
        state.insert(out.q, bvertex=True)
        bis = out.dir1.angle() + omega / 2.0
        follow = DirectedLine(out.q, unit_from_angle(bis + math.pi))
        out2 = _expect_outcome(session.probe(follow))
        if out2.apex_on_polygon:
            if state.index_of(out2.q) is None:
                state.insert(out2.q, bvertex=True)
            # a repeat of the same narrow apex would mean a degenerate object
        else:
            for p in (out2.p1, out2.p2):
                if state.index_of(p) is None:
                    state.insert(p)
    else:
        state.insert(out.p1)
        state.insert(out.p2)

    while state.F != 0:
        _guard(session, start, state)
        u = v = None
        reverse = False
        plain = [i for i in range(len(state)) if not state.flags[i] and not state.bvertex[i]]
        if plain:
            if len(state) >= 3:
                wide = [i for i in plain if state.internal_angle_at(i) > omega + TAU_ANG]
                pool = wide or plain
            else:
                pool = plain
            u = min(pool, key=lambda i: state.birth[i])
            v = state.ccw_next(u)
        else:
            for i in sorted(range(len(state)), key=lambda i: state.birth[i]):
                j = state.ccw_prev(i)
                if not state.bvertex[i] and not state.flags[j] and state.bvertex[j]:
                    u, v = i, j
                    reverse = True
                    break
        if u is None:
            # only adjacent narrow pairs remain
            pairs = [
                (i, state.ccw_next(i))
                for i in sorted(range(len(state)), key=lambda i: state.birth[i])
                if not state.flags[i] and state.bvertex[i] and state.bvertex[state.ccw_next(i)]
            ]
            if not pairs:
                raise RuntimeError("no probe target although F != 0")
            if epsilon is None:
                unresolved = tuple((state.points[i], state.points[j]) for i, j in pairs)
                polygon = state.polygon() if len(state) >= 3 else None
                probes = session.probes_used - start
                return ReconstructionResult(
                    polygon, probes, bound=None, vertices=tuple(state.points),
                    exact_claim=False, best_effort=True, unresolved_pairs=unresolved,
                )
            iu, iv = pairs[0]
            pu, pv = state.points[iu], state.points[iv]
            d = (pv - pu).unit()
            probe_a = DirectedLine(pv, d.rotated(epsilon / 2.0))
            out_a = _expect_outcome(session.probe(probe_a))
            if state.index_of(out_a.p1) != iv:
                if state.index_of(out_a.p1) is None:
                    state.insert(out_a.p1)
                else:
                    raise EpsilonViolated("rotated probe touched a known vertex other than the pivot")
            else:
                if not out_a.apex_on_polygon:
                    raise EpsilonViolated("rotated probe stopped off the narrow pivot")
                d_back = (pu - pv).unit()
                probe_b = DirectedLine(pu, d_back.rotated(-epsilon / 2.0))
                out_b = _expect_outcome(session.probe(probe_b))
                ib = state.index_of(out_b.p2)
                if ib != iu:
                    if ib is None:
                        state.insert(out_b.p2)
                    else:
                        raise EpsilonViolated("rotated probe touched a known vertex other than the pivot")
                else:
                    if not out_b.apex_on_polygon:
                        raise EpsilonViolated("rotated probe stopped off the narrow pivot")
                    state.flags[iu] = True
            continue

        pu, pv = state.points[u], state.points[v]
        out = _expect_outcome(session.probe(DirectedLine.through(pu, pv)))
        p1, p2 = out.p1, out.p2
        if reverse:
            # flag(u) is necessarily true here; the contacts swap roles
            p1, p2 = p2, p1
        if out.apex_on_polygon:
            if state.index_of(out.q) != u:
                raise RuntimeError("narrow apex off the probed vertex")
            state.bvertex[u] = True
            continue
        # insertions shift positions, so re-resolve u and v by identity
        i1 = state.index_of(p1)
        if i1 == u:
            if state.flags[u]:
                state.flags[state.index_of(pv)] = True
            else:
                state.flags[u] = True
        else:
            if i1 is not None:
                raise RuntimeError("first contact matched an unexpected known vertex")
            state.insert(p1)
        i2 = state.index_of(p2)
        if i2 == state.index_of(pu):
            state.flags[state.index_of(pv)] = True
        elif i2 is None:
            state.insert(p2)

    polygon = state.polygon()
    probes = session.probes_used - start
    n_narrow = sum(
        1 for i in range(polygon.n) if polygon.internal_angle(i) <= omega + TAU_ANG
    )
    bound = 2 * polygon.n - 1 + n_narrow + narrow_budget_surcharge(n_narrow)
    if probes > bound:
        raise BudgetExceeded(f"used {probes} probes, bound {bound}")
    return ReconstructionResult(polygon, probes, bound,
                                extras={"n_narrow": n_narrow})


def classify_narrow_pair(o1: ProbeOutcome, o2: ProbeOutcome, omega: float,
                         *, tol: float = 1e-9) -> str:
    """Two-probe narrow-vertex classification for 3-narrow polygons.

    Outcomes must share a contact u (second contact of o1, first of o2) with
    apices on different cloud arcs.  Returns "p1_and_p2_narrow",
    "shared_u_narrow", or "inconclusive" when the preconditions fail.
    """
    if o1.apex_on_polygon or o2.apex_on_polygon:
        return "inconclusive"
    u = o1.p2
    if dist(u, o2.p1) > tol:
        return "inconclusive"
    p1, p2 = o1.p1, o2.p2
    if dist(p1, p2) <= tol or dist(o1.q, o2.q) <= tol:
        return "inconclusive"
    # same support pair means the apices sit on the same arc
    if dist(o1.p1, o2.p1) <= tol and dist(o1.p2, o2.p2) <= tol:
        return "inconclusive"
    angle = ccw_angle(p1, u, p2)
    if angle > math.pi:
        angle = 2.0 * math.pi - angle
    return "p1_and_p2_narrow" if angle > omega else "shared_u_narrow"
