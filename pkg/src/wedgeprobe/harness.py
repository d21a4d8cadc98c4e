"""Instance generation with controlled narrow-vertex counts, and suite runs.

Polygons are built from prescribed internal angles (realized through edge
directions plus a closing length solve), which gives exact control over how
many vertices fall below omega and keeps every angle clear of omega by the
configured margin.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field, replace

from .cloud import count_narrow
from .errors import Infeasible
from .geometry import ConvexPolygon, Point, ccw_angle, dist
from .oracle import new_session
from .reconstruct import (
    ReconstructionResult,
    greedy_reconstruct,
    narrow_budget_surcharge,
    reconstruct_general,
    reconstruct_no_narrow,
    reconstruct_right_angle,
)

_CONVEXITY_MARGIN = 0.05  # every internal angle stays below pi - this


@dataclass(frozen=True)
class ExperimentConfig:
    omega: float
    n_range: tuple[int, int]
    trials: int
    target_narrow: int = 0
    margin: float = 0.05
    epsilon: float | None = None
    seed: int = 0
    algorithm: str | None = None  # input1 | input2 | general | greedy; None picks by target_narrow
    narrow_adjacent: bool = False
    arm_policy: str = "adversarial-minimal"

    def resolved_algorithm(self) -> str:
        if self.algorithm is not None:
            return self.algorithm
        return "input1" if self.target_narrow == 0 else "general"

    def resolved_epsilon(self) -> float | None:
        if self.target_narrow >= 2:
            return self.epsilon if self.epsilon is not None else self.omega / 10.0
        return self.epsilon


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[dict] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)

    def finalize(self) -> None:
        done = [r for r in self.rows if r["error"] == ""]
        self.aggregates = {
            "trials": len(self.rows),
            "completed": len(done),
            "exact_fraction": (sum(1 for r in done if r["exact_match"]) / len(done)) if done else 0.0,
            "max_budget_excess": max((r["probes_used"] - r["bound"] for r in done), default=0),
            "errors": sum(1 for r in self.rows if r["error"] != ""),
        }

    @property
    def all_within_budget(self) -> bool:
        return self.aggregates.get("errors", 1) == 0 and self.aggregates.get("max_budget_excess", 1) <= 0

    @property
    def all_exact(self) -> bool:
        return self.aggregates.get("errors", 1) == 0 and self.aggregates.get("exact_fraction", 0.0) == 1.0

    def summary(self) -> str:
        a = self.aggregates
        return (
            f"trials={a['trials']} completed={a['completed']} "
            f"exact={a['exact_fraction']:.3f} max_excess={a['max_budget_excess']} "
            f"errors={a['errors']}"
        )


def _feasible(omega: float, n: int, k: int, margin: float) -> bool:
    if k > 3 or n < max(3, k + 1):
        return False
    if k == 3 and omega <= math.pi / 3.0:
        return False
    total = (n - 2) * math.pi
    narrow_lo = min(max(0.25 * omega, 0.02), omega - margin - 1e-6)
    if narrow_lo <= 0:
        return False
    lo = (n - k) * (omega + margin) + k * narrow_lo
    hi = (n - k) * (math.pi - _CONVEXITY_MARGIN) + k * (omega - margin)
    return lo <= total <= hi


def _fit_angles(rng: random.Random, omega: float, n: int, k: int, margin: float):
    """Internal-angle targets: k below omega - margin, rest above omega + margin."""
    total = (n - 2) * math.pi
    narrow_lo = min(max(0.25 * omega, 0.02), omega - margin - 1e-6)
    narrow_hi = omega - margin
    wide_lo = omega + margin
    wide_hi = math.pi - _CONVEXITY_MARGIN
    bounds = [(narrow_lo, narrow_hi)] * k + [(wide_lo, wide_hi)] * (n - k)
    for _ in range(60):
        vals = [rng.uniform(lo, hi) for lo, hi in bounds]
        deficit = total - sum(vals)
        ok = True
        for _ in range(200):
            if abs(deficit) < 1e-12:
                break
            room = [
                (hi - v) if deficit > 0 else (v - lo)
                for v, (lo, hi) in zip(vals, bounds)
            ]
            total_room = sum(room)
            if total_room < abs(deficit):
                ok = False
                break
            for i in range(n):
                vals[i] += deficit * (room[i] / total_room)
            deficit = total - sum(vals)
        if ok and abs(deficit) < 1e-9:
            return vals[:k], vals[k:]
    return None


def _close_lengths(rng: random.Random, dirs: list[float]) -> list[float] | None:
    """Positive edge lengths making the direction walk close up.

    Alternates projection onto the two closing constraints with clipping to
    the positivity box; sharp corners legitimately need very unequal lengths
    (a near-degenerate spike), which a single projection cannot reach.
    """
    n = len(dirs)
    ux = [math.cos(d) for d in dirs]
    uy = [math.sin(d) for d in dirs]
    axx = sum(x * x for x in ux)
    axy = sum(x * y for x, y in zip(ux, uy))
    ayy = sum(y * y for y in uy)
    det = axx * ayy - axy * axy
    if abs(det) < 1e-12:
        return None

    def project(l):
        sx = sum(li * x for li, x in zip(l, ux))
        sy = sum(li * y for li, y in zip(l, uy))
        lam0 = (ayy * sx - axy * sy) / det
        lam1 = (-axy * sx + axx * sy) / det
        return [l[i] - (lam0 * ux[i] + lam1 * uy[i]) for i in range(n)]

    for _ in range(12):
        l = [1.0 + rng.uniform(-0.45, 0.45) for _ in range(n)]
        for _ in range(400):
            l = project(l)
            mean = sum(l) / n
            if mean <= 0.0:
                break
            if min(l) >= 0.02 * mean:
                return [li / mean for li in l]
            l = [max(li, 0.03 * mean) for li in l]
    return None


def gen_polygon(cfg: ExperimentConfig, trial_index: int) -> ConvexPolygon:
    """Strictly convex n-gon with exactly cfg.target_narrow narrow vertices.

    Centroid-normalized and randomly rotated; every internal angle keeps at
    least cfg.margin clearance from omega.  Raises Infeasible when no such
    polygon exists (e.g. three narrow vertices with omega <= pi/3).
    """
    rng = random.Random(f"{cfg.seed}:gen:{trial_index}")
    omega, k, margin = cfg.omega, cfg.target_narrow, cfg.margin
    n_lo, n_hi = cfg.n_range
    candidates = [n for n in range(n_lo, n_hi + 1) if _feasible(omega, n, k, margin)]
    if not candidates:
        raise Infeasible(
            f"no n in [{n_lo},{n_hi}] admits {k} narrow vertices at omega={omega:.4f}"
        )
    for _attempt in range(200):
        n = rng.choice(candidates)
        fitted = _fit_angles(rng, omega, n, k, margin)
        if fitted is None:
            continue
        narrow, wide = fitted
        angles = list(wide)
        if k:
            if cfg.narrow_adjacent and k >= 2:
                pos = rng.randrange(n)
                positions = [pos, (pos + 1) % n]
                if k == 3:
                    extra = rng.randrange(n)
                    while extra in positions or (extra + 1) % n == positions[0]:
                        extra = rng.randrange(n)
                    positions.append(extra)
            else:
                positions = rng.sample(range(n), k)
            angles = [0.0] * n
            rest = iter(wide)
            nar = iter(narrow)
            for i in range(n):
                angles[i] = next(nar) if i in positions else next(rest)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        dirs = []
        for a in angles:
            dirs.append(theta)
            theta += math.pi - a  # exterior turn
        lengths = _close_lengths(rng, dirs)
        if lengths is None:
            continue
        pts = []
        x = y = 0.0
        for d, l in zip(dirs, lengths):
            pts.append(Point(x, y))
            x += l * math.cos(d)
            y += l * math.sin(d)
        try:
            poly = ConvexPolygon(pts)
        except Exception:
            continue
        c = poly.centroid()
        scale = max(dist(c, v) for v in poly.vertices)
        poly = ConvexPolygon(Point((v.x - c.x) / scale, (v.y - c.y) / scale) for v in poly.vertices)
        if count_narrow(poly, omega) != k:
            continue
        if any(abs(poly.internal_angle(i) - omega) < margin * 0.99 for i in range(poly.n)):
            continue
        eps = cfg.resolved_epsilon()
        if k >= 2 and eps is not None and not _epsilon_hypothesis_holds(poly, omega, eps):
            continue
        return poly
    raise Infeasible(f"could not generate a feasible polygon after 200 attempts (cfg={cfg})")


def _epsilon_hypothesis_holds(poly: ConvexPolygon, omega: float, eps: float) -> bool:
    """Every non-edge ccw chain between two narrow vertices has a witness
    vertex seeing the pair at angle at most pi - eps."""
    narrow = [i for i in range(poly.n) if poly.internal_angle(i) <= omega]
    for a in narrow:
        for b in narrow:
            if a == b:
                continue
            chain = []
            i = (a + 1) % poly.n
            while i != b:
                chain.append(i)
                i = (i + 1) % poly.n
            if not chain:
                continue  # the pair shares that edge; nothing to witness
            best = min(_chord_view_angle(poly.vertex(v), poly.vertex(b), poly.vertex(a)) for v in chain)
            if best > math.pi - eps:
                return False
    return True


def _chord_view_angle(v: Point, b: Point, a: Point) -> float:
    ang = ccw_angle(b, v, a)
    return min(ang, 2.0 * math.pi - ang)


def cyclic_hausdorff(a: ConvexPolygon, b: ConvexPolygon) -> float:
    """Max vertex distance under the best cyclic alignment; inf if sizes differ."""
    if a.n != b.n:
        return math.inf
    n = a.n
    best = math.inf
    for off in range(n):
        worst = max(dist(a.vertex(i), b.vertex(i + off)) for i in range(n))
        best = min(best, worst)
    return best


def _bound_for(algorithm: str, n: int, n_narrow: int) -> int:
    if algorithm == "input2":
        return 2 * n - 3
    if algorithm in ("input1", "greedy"):
        return 2 * n - 2
    return 2 * n - 1 + n_narrow + narrow_budget_surcharge(n_narrow)


_ALGORITHMS = {
    "input1": reconstruct_no_narrow,
    "input2": reconstruct_right_angle,
    "greedy": greedy_reconstruct,
}


def run_trial(cfg: ExperimentConfig, trial_index: int) -> dict:
    polygon = gen_polygon(cfg, trial_index)
    session = new_session(polygon, cfg.omega, cfg.arm_policy,
                          seed=random.Random(f"{cfg.seed}:session:{trial_index}").getrandbits(31))
    algorithm = cfg.resolved_algorithm()
    n = polygon.n
    n_narrow = count_narrow(polygon, cfg.omega)
    row = {
        "trial": trial_index,
        "n": n,
        "n_narrow": n_narrow,
        "algorithm": algorithm,
        "probes_used": -1,
        "bound": _bound_for(algorithm, n, n_narrow),
        "exact_match": False,
        "hausdorff_error": math.inf,
        "error": "",
    }
    try:
        if algorithm == "general":
            result: ReconstructionResult = reconstruct_general(session, epsilon=cfg.resolved_epsilon())
        else:
            result = _ALGORITHMS[algorithm](session)
        err = cyclic_hausdorff(polygon, result.polygon) if result.polygon is not None else math.inf
        row["probes_used"] = result.probes_used
        row["hausdorff_error"] = err
        row["exact_match"] = err <= 1e-6 * polygon.diameter()
    except Exception as exc:  # per-trial failures recorded, suite continues
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_suite(cfg: ExperimentConfig) -> ExperimentReport:
    """Deterministic batch of trials; the OMEGA_PROBE_SEED env var, when set,
    overrides the configured seed."""
    env_seed = os.environ.get("OMEGA_PROBE_SEED")
    if env_seed is not None:
        cfg = replace(cfg, seed=int(env_seed))
    report = ExperimentReport(cfg)
    for t in range(cfg.trials):
        report.rows.append(run_trial(cfg, t))
    report.finalize()
    return report
