"""Serialization: polygon documents, probe transcripts, suite reports."""

from __future__ import annotations

import csv
import json
from typing import Iterable

from .geometry import ConvexPolygon, DirectedLine, Point
from .oracle import MISS, ProbeOutcome, ProbeResult, TranscriptEntry


def polygon_to_dict(polygon: ConvexPolygon) -> dict:
    return {"vertices": [[v.x, v.y] for v in polygon.vertices], "ccw": True}


def polygon_from_dict(doc: dict) -> ConvexPolygon:
    vs = [Point(float(x), float(y)) for x, y in doc["vertices"]]
    if not doc.get("ccw", True):
        vs = list(reversed(vs))
    return ConvexPolygon(vs)


def save_polygon(polygon: ConvexPolygon, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(polygon_to_dict(polygon), fh)
        fh.write("\n")


def load_polygon(path: str) -> ConvexPolygon:
    with open(path) as fh:
        return polygon_from_dict(json.load(fh))


def _result_to_dict(result: ProbeResult) -> dict | str:
    if result is MISS:
        return "miss"
    return {
        "q": [result.q.x, result.q.y],
        "dir1": [result.dir1.x, result.dir1.y],
        "dir2": [result.dir2.x, result.dir2.y],
        "p1": [result.p1.x, result.p1.y],
        "p2": [result.p2.x, result.p2.y],
        "apex_on_polygon": result.apex_on_polygon,
    }


def _result_from_dict(doc) -> ProbeResult:
    if doc == "miss":
        return MISS
    return ProbeOutcome(
        Point(*doc["q"]), Point(*doc["dir1"]), Point(*doc["dir2"]),
        Point(*doc["p1"]), Point(*doc["p2"]), doc["apex_on_polygon"],
    )


def save_transcript(entries: Iterable[TranscriptEntry], path: str) -> None:
    with open(path, "w") as fh:
        for e in entries:
            rec = {
                "t": e.index,
                "line": {"origin": [e.line.origin.x, e.line.origin.y],
                         "direction": [e.line.direction.x, e.line.direction.y]},
                "result": _result_to_dict(e.result),
            }
            fh.write(json.dumps(rec) + "\n")


def load_transcript(path: str) -> list[TranscriptEntry]:
    out = []
    with open(path) as fh:
        for line in fh:
            rec = json.loads(line)
            out.append(TranscriptEntry(
                rec["t"],
                DirectedLine(Point(*rec["line"]["origin"]), Point(*rec["line"]["direction"])),
                _result_from_dict(rec["result"]),
            ))
    return out


def rows_to_csv(rows: list[dict], path: str) -> None:
    if not rows:
        with open(path, "w") as fh:
            fh.write("")
        return
    fields = list(rows[0].keys())
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
