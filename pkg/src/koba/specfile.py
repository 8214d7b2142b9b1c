"""JSON domain documents.

Four document types, discriminated by ``"type"``::

    {"type": "intersection", "halfplanes": [[nx, ny, b], ...], "disks": [[cx, cy, rho], ...]}
    {"type": "hull", "generators": [[cx, cy, rho], ...]}
    {"type": "ball", "dim": n, "center": [[re, im], ...], "radius": R}
    {"type": "lens", "h": h}

Half-plane normals that are not unit length are normalised together with
their offset. Printed documents use ``repr`` floats, so re-parsing is bit exact.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from typing import Any

from .domains_nd import Ball, DomainND, Planar
from .errors import SpecError
from .oracles import LensMap, lens_exact_metric
from .region2d import Disk, HalfPlane, Hull, Intersection

__all__ = ["DomainSpec", "parse_spec", "load_spec"]


@dataclass(frozen=True)
class DomainSpec:
    kind: str
    data: tuple  # normalised fields, hashable

    def to_document(self) -> dict:
        if self.kind == "intersection":
            hps, dks = self.data
            return {"type": "intersection", "halfplanes": [list(h) for h in hps], "disks": [list(d) for d in dks]}
        if self.kind == "hull":
            return {"type": "hull", "generators": [list(g) for g in self.data]}
        if self.kind == "ball":
            center, radius = self.data
            return {"type": "ball", "dim": len(center), "center": [list(c) for c in center], "radius": radius}
        return {"type": "lens", "h": self.data[0]}

    def dumps(self) -> str:
        return json.dumps(self.to_document())

    def build(self) -> DomainND:
        if self.kind == "intersection":
            hps, dks = self.data
            return Planar(Intersection(tuple(HalfPlane(complex(nx, ny), b) for nx, ny, b in hps),
                                       tuple(Disk(complex(cx, cy), r) for cx, cy, r in dks)))
        if self.kind == "hull":
            return Planar(Hull(tuple(Disk(complex(cx, cy), r) for cx, cy, r in self.data)))
        if self.kind == "ball":
            center, radius = self.data
            return Ball(tuple(complex(re, im) for re, im in center), radius)
        lens = LensMap(self.data[0])
        return Planar(lens.region, functools.partial(lens_exact_metric, lens))


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise SpecError(f"{where}: must be finite")
    return x


def _rows(doc: dict, key: str, width: int, required: bool = False) -> list[tuple]:
    if key not in doc:
        if required:
            raise SpecError(f"{key}: missing field")
        return []
    rows = doc[key]
    if not isinstance(rows, list):
        raise SpecError(f"{key}: expected a list")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise SpecError(f"{key}[{i}]: expected {width} numbers")
        out.append(tuple(_number(v, f"{key}[{i}][{j}]") for j, v in enumerate(row)))
    return out


def _unit_halfplane(row: tuple, i: int) -> tuple:
    nx, ny, b = row
    n = math.hypot(nx, ny)
    if n == 0:
        raise SpecError(f"halfplanes[{i}]: zero normal")
    if abs(n - 1) > 1e-12:
        nx, ny, b = nx / n, ny / n, b / n
    return nx, ny, b


def parse_spec(doc: Any) -> DomainSpec:
    """Validate a parsed document; the domain is built once to surface geometric errors."""
    if not isinstance(doc, dict):
        raise SpecError("document must be a JSON object")
    kind = doc.get("type")
    if kind == "intersection":
        hps = tuple(_unit_halfplane(r, i) for i, r in enumerate(_rows(doc, "halfplanes", 3)))
        spec = DomainSpec(kind, (hps, tuple(_rows(doc, "disks", 3))))
    elif kind == "hull":
        spec = DomainSpec(kind, tuple(_rows(doc, "generators", 3, required=True)))
    elif kind == "ball":
        center = tuple(_rows(doc, "center", 2, required=True))
        if "dim" in doc and doc["dim"] != len(center):
            raise SpecError(f"dim: {doc['dim']!r} does not match {len(center)} center coordinates")
        spec = DomainSpec(kind, (center, _number(doc.get("radius"), "radius")))
    elif kind == "lens":
        spec = DomainSpec(kind, (_number(doc.get("h"), "h"),))
    else:
        raise SpecError(f"type: unknown domain type {kind!r}")
    try:
        spec.build()
    except ValueError as exc:
        raise SpecError(f"{kind}: {exc}") from exc
    return spec


def load_spec(text: str) -> DomainSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_spec(doc)
