"""Acceptance checks: one runner per criterion, shared by pytest and the CLI.

Each runner returns (ok, detail).  Trial counts and tolerances are fixed
here; everything is seeded and deterministic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from .adversary import duel
from .cloud import build_cloud, count_narrow, narrow_vertex_indices
from .geometry import DirectedLine, dist, direction_cone, unit_from_angle
from .harness import ExperimentConfig, cyclic_hausdorff, gen_polygon, run_suite
from .oracle import MISS, brute_force_probe, new_session
from .reconstruct import reconstruct_general, reconstruct_right_angle

OMEGAS = (math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2)


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.detail})"


def _max_narrow(omega: float, n: int) -> int:
    if omega < math.pi / 3:
        return 2 if n >= 4 else 1
    return 2


def criterion_1_oracle_equivalence(pairs: int = 1000) -> CriterionResult:
    """probe and brute_force_probe agree on validity and apex position."""
    rng = random.Random("acceptance:1")
    bad = 0
    worst = 0.0
    done = 0
    poly_idx = 0
    while done < pairs:
        omega = OMEGAS[poly_idx % len(OMEGAS)]
        k = rng.randint(0, _max_narrow(omega, 8))
        cfg = ExperimentConfig(omega=omega, n_range=(4, 20), trials=1, target_narrow=k,
                               margin=0.05, seed=9000 + poly_idx)
        poly = gen_polygon(cfg, 0)
        session = new_session(poly, omega, seed=poly_idx)
        diam = poly.diameter()
        for _ in range(20):
            if done >= pairs:
                break
            theta = rng.uniform(0.0, 2.0 * math.pi)
            d = unit_from_angle(theta)
            off = rng.uniform(-2.0, 2.0)
            origin = session.p + d.perp() * off
            line = DirectedLine(origin, d)
            a = session.probe(line)
            b = brute_force_probe(session, line)
            done += 1
            if (a is MISS) != (b is MISS):
                bad += 1
                continue
            if a is MISS:
                continue
            err = dist(a.q, b.q)
            worst = max(worst, err)
            if err > 1e-6 * diam:
                bad += 1
        poly_idx += 1
    return CriterionResult(1, "oracle equivalence", bad == 0,
                           f"{pairs} pairs, {bad} disagreements, worst apex error {worst:.2e}")


def criterion_2_basic_budget(trials: int = 200) -> CriterionResult:
    """reconstruct_no_narrow: exact with at most 2n - 2 probes."""
    rng = random.Random("acceptance:2")
    bad = []
    for t in range(trials):
        omega = rng.uniform(0.3, math.pi / 2 - 0.05)
        cfg = ExperimentConfig(omega=omega, n_range=(5, 30), trials=1, target_narrow=0,
                               seed=20000 + t, algorithm="input1")
        report = run_suite(cfg)
        row = report.rows[0]
        if row["error"] or not row["exact_match"] or row["probes_used"] > row["bound"]:
            bad.append(row)
    return CriterionResult(2, "basic budget (2n-2)", not bad,
                           f"{trials} trials, {len(bad)} violations")


def criterion_3_right_angle_budget(trials: int = 200) -> CriterionResult:
    """reconstruct_right_angle: exact, at most 2n - 3 probes, hit step worth 2."""
    bad = 0
    for t in range(trials):
        cfg = ExperimentConfig(omega=math.pi / 2, n_range=(5, 30), trials=1,
                               target_narrow=0, seed=30000 + t)
        poly = gen_polygon(cfg, 0)
        session = new_session(poly, math.pi / 2, seed=t)
        try:
            res = reconstruct_right_angle(session)
        except Exception:
            bad += 1
            continue
        exact = cyclic_hausdorff(poly, res.polygon) <= 1e-6 * poly.diameter()
        if not exact or res.probes_used > 2 * poly.n - 3 or res.extras.get("hit_info_delta") != 2:
            bad += 1
    return CriterionResult(3, "right-angle budget (2n-3) + hit step", bad == 0,
                           f"{trials} trials, {bad} violations")


def criterion_4_narrow_budgets(trials_each: int = 100) -> CriterionResult:
    """reconstruct_general: 2n-1 / 2n+3 / 2n+5 probes for 1 / 2 / 3 narrow."""
    specs = {
        1: ((math.pi / 4, math.pi / 3, math.pi / 2), (5, 25), lambda n: 2 * n - 1),
        2: ((math.pi / 4, math.pi / 3, math.pi / 2), (5, 25), lambda n: 2 * n + 3),
        3: ((1.3, 1.45, math.pi / 2), (5, 11), lambda n: 2 * n + 5),
    }
    bad = {1: 0, 2: 0, 3: 0}
    for k, (omegas, n_range, bound_fn) in specs.items():
        for t in range(trials_each):
            omega = omegas[t % len(omegas)]
            cfg = ExperimentConfig(omega=omega, n_range=n_range, trials=1, target_narrow=k,
                                   epsilon=omega / 10 if k >= 2 else None, seed=40000 + 1000 * k + t)
            poly = gen_polygon(cfg, 0)
            session = new_session(poly, omega, seed=t)
            try:
                res = reconstruct_general(session, epsilon=omega / 10 if k >= 2 else None)
            except Exception:
                bad[k] += 1
                continue
            exact = res.polygon is not None and cyclic_hausdorff(poly, res.polygon) <= 1e-6 * poly.diameter()
            if not exact or res.probes_used > bound_fn(poly.n):
                bad[k] += 1
    ok = not any(bad.values())
    return CriterionResult(4, "narrow-vertex budgets (2n-1 / 2n+3 / 2n+5)", ok,
                           f"{trials_each} trials each; violations {bad}")


def criterion_5_lower_bound_game() -> CriterionResult:
    """Adversary forces 2n-2 (2n-3 at pi/2) probes; audits pass."""
    bad = []
    for omega in (math.pi / 3, math.pi / 2):
        for n in (5, 6, 8, 10):
            for alg in ("input1", "greedy"):
                try:
                    r = duel(alg, omega, n, seed=n + 13)
                except Exception as exc:
                    bad.append(f"{alg} n={n} omega={omega:.3f}: {exc}")
                    continue
                if not (r.met_lower_bound and r.reconstruction_exact and r.audit.ok):
                    bad.append(f"{alg} n={n} omega={omega:.3f}: probes={r.probes_used} lb={r.lower_bound}")
    return CriterionResult(5, "adversary lower bound", not bad,
                           f"16 duels, {len(bad)} violations" + ("; " + "; ".join(bad[:3]) if bad else ""))


def criterion_6_cloud_invariants(polygons: int = 100) -> CriterionResult:
    """Chain closure, sampled width, pivots on narrow vertices, count bounds."""
    rng = random.Random("acceptance:6")
    bad = 0
    for t in range(polygons):
        omega = OMEGAS[t % len(OMEGAS)]
        k = rng.randint(0, _max_narrow(omega, 8))
        cfg = ExperimentConfig(omega=omega, n_range=(4, 16), trials=1, target_narrow=k,
                               seed=60000 + t)
        poly = gen_polygon(cfg, 0)
        scale = poly.diameter()
        cloud = build_cloud(poly, omega)
        ok = True
        if cloud.n_prime > 4 * poly.n:
            ok = False
        for i, arc in enumerate(cloud.arcs):
            nxt = cloud.arcs[(i + 1) % len(cloud.arcs)]
            if dist(arc.end_point, nxt.start_point) > 1e-9 * scale:
                ok = False
            for q in arc.sample(5):
                if abs(direction_cone(q, poly.vertices)[1] - omega) > 1e-7:
                    ok = False
        narrow = set(narrow_vertex_indices(poly, omega))
        on_poly = {vi for _, vi in cloud.on_polygon_pivots}
        if narrow != on_poly:
            ok = False
        cn = count_narrow(poly, omega)
        if cn > 3 or (omega < math.pi / 3 and cn > 2):
            ok = False
        if not ok:
            bad += 1
    return CriterionResult(6, "cloud invariants", bad == 0, f"{polygons} polygons, {bad} violations")


def criterion_7_uniqueness(pairs: int = 500) -> CriterionResult:
    """Identical lines give identical apices; non-narrow outcomes ignore policy."""
    rng = random.Random("acceptance:7")
    bad = 0
    done = 0
    poly_idx = 0
    while done < pairs:
        omega = OMEGAS[poly_idx % len(OMEGAS)]
        k = rng.randint(0, _max_narrow(omega, 8))
        cfg = ExperimentConfig(omega=omega, n_range=(4, 14), trials=1, target_narrow=k,
                               seed=70000 + poly_idx)
        poly = gen_polygon(cfg, 0)
        sessions = [new_session(poly, omega, arm_policy=p, seed=5)
                    for p in ("bisector-symmetric", "adversarial-minimal", "seeded-random")]
        for _ in range(10):
            if done >= pairs:
                break
            theta = rng.uniform(0.0, 2.0 * math.pi)
            d = unit_from_angle(theta)
            line = DirectedLine(sessions[0].p + d.perp() * rng.uniform(-1.5, 1.5), d)
            results = [s.probe(line) for s in sessions]
            again = sessions[0].probe(line)
            done += 1
            r0 = results[0]
            if (r0 is MISS) != (again is MISS):
                bad += 1
                continue
            if r0 is not MISS and (again.q.x != r0.q.x or again.q.y != r0.q.y):
                bad += 1
                continue
            if r0 is MISS or r0.apex_on_polygon:
                continue
            for r in results[1:]:
                same = (r is not MISS and not r.apex_on_polygon
                        and dist(r.q, r0.q) == 0.0 and dist(r.p1, r0.p1) == 0.0
                        and dist(r.p2, r0.p2) == 0.0
                        and r.dir1 == r0.dir1 and r.dir2 == r0.dir2)
                if not same:
                    bad += 1
                    break
        poly_idx += 1
    return CriterionResult(7, "probe uniqueness and policy invariance", bad == 0,
                           f"{pairs} paired trials, {bad} violations")


def criterion_8_epsilon_impossibility(trials: int = 20) -> CriterionResult:
    """Without epsilon, an adjacent narrow pair is reported unresolved."""
    bad = 0
    for t in range(trials):
        omega = math.pi / 2 if t % 2 == 0 else math.pi / 3
        cfg = ExperimentConfig(omega=omega, n_range=(5, 9), trials=1, target_narrow=2,
                               narrow_adjacent=True, epsilon=omega / 10, seed=80000 + t)
        poly = gen_polygon(cfg, 0)
        narrow = narrow_vertex_indices(poly, omega)
        session = new_session(poly, omega, seed=t)
        res = reconstruct_general(session, epsilon=None)
        if not res.best_effort or res.exact_claim:
            bad += 1
            continue
        want = {(round(poly.vertex(i).x, 9), round(poly.vertex(i).y, 9)) for i in narrow}
        listed = any(
            {(round(a.x, 9), round(a.y, 9)), (round(b.x, 9), round(b.y, 9))} == want
            for a, b in res.unresolved_pairs
        )
        if not listed:
            bad += 1
    return CriterionResult(8, "epsilon impossibility (best effort)", bad == 0,
                           f"{trials} trials, {bad} violations")


ALL_CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_1_oracle_equivalence,
    criterion_2_basic_budget,
    criterion_3_right_angle_budget,
    criterion_4_narrow_budgets,
    criterion_5_lower_bound_game,
    criterion_6_cloud_invariants,
    criterion_7_uniqueness,
    criterion_8_epsilon_impossibility,
)


def run_all(printer=print) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        res = fn()
        results.append(res)
        if printer is not None:
            printer(res.line())
    return results
