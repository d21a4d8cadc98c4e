import math

import pytest

from wedgeprobe.adversary import audit, duel, new_adversary
from wedgeprobe.errors import InconsistencyFound, InvalidParams
from wedgeprobe.geometry import DirectedLine, Point, dist
from wedgeprobe.oracle import MISS, TranscriptEntry
from wedgeprobe.reconstruct import greedy_reconstruct, reconstruct_no_narrow


def test_invalid_params():
    with pytest.raises(InvalidParams):
        new_adversary(math.pi / 2, 4)  # pentagon frame needs n >= 5
    with pytest.raises(InvalidParams):
        new_adversary(math.pi / 4, 3)
    new_adversary(math.pi / 4, 4)  # rectangle frame accepts n = 4


def test_first_valid_probe_shape():
    adv = new_adversary(math.pi / 3, 6, seed=1)
    line = DirectedLine(adv.p, Point(1.0, 0.0))
    out = adv.probe(line)
    assert out is not MISS
    # arms sit at -/+ omega/2 around the probe direction
    assert out.dir1.angle() == pytest.approx(-math.pi / 6)
    assert out.dir2.angle() == pytest.approx(math.pi / 6)
    # contacts are symmetric about p
    mid = Point((out.p1.x + out.p2.x) / 2, (out.p1.y + out.p2.y) / 2)
    assert dist(mid, adv.p) < 1e-9


def test_miss_shrinks_workspace():
    adv = new_adversary(math.pi / 3, 6, seed=1)
    r_before = adv.A.boundary_distance(adv.p)
    miss = adv.probe(DirectedLine(Point(0.0, 5.0), Point(1.0, 0.0)))
    assert miss is MISS
    assert adv.probes_used == 1  # a miss costs the algorithm a probe
    assert adv.A.boundary_distance(adv.p) < r_before


def test_lower_bound_and_audit_small():
    for omega, lb in ((math.pi / 3, lambda n: 2 * n - 2), (math.pi / 2, lambda n: 2 * n - 3)):
        for n in (5, 6, 8, 10):
            r = duel("input1", omega, n, seed=n)
            assert r.probes_used >= lb(n)
            assert r.reconstruction_exact
            assert r.audit.ok
            r = duel("greedy", omega, n, seed=n)
            assert r.probes_used >= lb(n)
            assert r.reconstruction_exact
            assert r.audit.ok


def test_final_polygon_has_no_narrow_vertices():
    r = duel("greedy", math.pi / 3, 7, seed=2)
    poly = r.final_polygon
    assert poly.n == 7
    for i in range(poly.n):
        assert poly.internal_angle(i) > math.pi / 3


def test_phi_bound_per_probe():
    adv = new_adversary(math.pi / 3, 8, seed=3)
    reconstruct_no_narrow(adv)
    report = audit(adv)
    assert report.ok
    phi = [2 * rec.p_size - rec.f_value for rec in adv.phi_log]
    after_init = [b - a for rec, a, b in zip(adv.phi_log[1:], phi, phi[1:]) if not rec.in_init]
    assert all(d <= 1 for d in after_init)
    assert phi[-1] == 2 * 8


def test_repeat_line_gets_identical_answer():
    adv = new_adversary(math.pi / 3, 6, seed=4)
    greedy_reconstruct(adv)
    # replay every transcript line on the final polygon through a fresh session
    from wedgeprobe.oracle import new_session

    final = adv.final_polygon()
    session = new_session(final, math.pi / 3)
    for entry in adv.transcript:
        honest = session.probe(entry.line)
        if entry.result is MISS:
            assert honest is MISS
        else:
            assert dist(honest.q, entry.result.q) <= 1e-6 * final.diameter()
            assert dist(honest.p1, entry.result.p1) <= 1e-6 * final.diameter()
            assert dist(honest.p2, entry.result.p2) <= 1e-6 * final.diameter()


def test_audit_detects_forged_transcript():
    adv = new_adversary(math.pi / 3, 6, seed=5)
    reconstruct_no_narrow(adv)
    assert audit(adv).ok
    forged = list(adv.transcript)
    e = forged[3]
    assert e.result is not MISS
    fake = e.result.__class__(Point(9.0, 9.0), e.result.dir1, e.result.dir2,
                              e.result.p1, e.result.p2, False)
    forged[3] = TranscriptEntry(e.index, e.line, fake)
    with pytest.raises(InconsistencyFound):
        audit(adv, forged)


def test_duel_input2_respects_own_budget():
    for n in (5, 7, 9):
        r = duel("input2", math.pi / 2, n, seed=6)
        assert r.probes_used <= 2 * n - 3
        assert r.reconstruction_exact and r.audit.ok
