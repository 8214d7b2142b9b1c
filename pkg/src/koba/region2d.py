"""Bounded planar convex regions.

Points of the plane are Python/numpy complex numbers. Two families are
supported:

* :class:`Intersection` -- finitely many closed half-planes ``<n, x> <= b``
  and open disks ``|x - c| < rho``;
* :class:`Hull` -- the convex hull of finitely many disks (radius 0 gives a
  point generator).

Both expose the signed *margin* function whose positive part is the distance
to the complement, and a description of every superlevel set
``{delta >= r}`` as an arrangement of lines and circles. The latter is what
makes exact Euclidean projection onto those sets possible
(:func:`project_onto_level_set`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import EmptyErosion, InvalidRegion, NotInterior

__all__ = [
    "BOUNDARY_EPS",
    "HalfPlane",
    "Disk",
    "ConvexRegion2D",
    "Intersection",
    "Hull",
    "contains",
    "boundary_distance",
    "erode",
    "project_onto_level_set",
    "disk_region",
    "polygon",
    "rectangle",
]

# Points closer than this to the boundary are treated as non-interior.
BOUNDARY_EPS = 1e-12


def _dot(x, n):
    """Real inner product of complex numbers viewed as plane vectors."""
    return np.real(x) * np.real(n) + np.imag(x) * np.imag(n)


def _unit(v, default=1.0 + 0j):
    """v / |v| componentwise (complex division overflows on subnormal parts)."""
    mag = np.abs(v)
    safe = np.where(mag > 0, mag, 1.0)
    return np.where(mag > 0, v.real / safe + 1j * (v.imag / safe), default)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane ``Re(conj(normal) * x) <= offset``; ``normal`` has unit length."""

    normal: complex
    offset: float

    @classmethod
    def from_xy(cls, nx: float, ny: float, b: float) -> "HalfPlane":
        return cls(complex(nx, ny), float(b))


@dataclass(frozen=True)
class Disk:
    """Disk with the given center and radius (open as a constraint, closed as a generator)."""

    center: complex
    radius: float


class LevelPieces(NamedTuple):
    """Lines, circles and loose points whose arrangement contains the boundary of a level set."""

    normals: np.ndarray  # complex, unit
    offsets: np.ndarray
    centers: np.ndarray  # complex
    radii: np.ndarray
    points: np.ndarray  # complex


def _arrangement(pieces: LevelPieces) -> np.ndarray:
    """All pairwise intersection points of the lines and circles in ``pieces``."""
    ln, lb, cc, cs = pieces.normals, pieces.offsets, pieces.centers, pieces.radii
    out = []
    if len(ln) >= 2:
        i, j = np.triu_indices(len(ln), 1)
        a1, b1, a2, b2 = ln[i].real, ln[i].imag, ln[j].real, ln[j].imag
        det = a1 * b2 - a2 * b1
        ok = np.abs(det) > 1e-14
        det = np.where(ok, det, 1.0)
        x = (lb[i] * b2 - lb[j] * b1) / det
        y = (a1 * lb[j] - a2 * lb[i]) / det
        out.append((x + 1j * y)[ok])
    if len(ln) and len(cc):
        k, m = (a.ravel() for a in np.meshgrid(np.arange(len(ln)), np.arange(len(cc))))
        t = lb[k] - _dot(cc[m], ln[k])
        foot = cc[m] + t * ln[k]
        h2 = cs[m] ** 2 - t**2
        ok = h2 >= -1e-12 * cs[m] ** 2
        hc = np.sqrt(np.clip(h2, 0.0, None))
        tangent = 1j * ln[k]
        out.append((foot + hc * tangent)[ok])
        out.append((foot - hc * tangent)[ok])
    if len(cc) >= 2:
        i, j = np.triu_indices(len(cc), 1)
        delta = cc[j] - cc[i]
        d = np.abs(delta)
        ok = d > 1e-15
        d = np.where(ok, d, 1.0)
        a = (d**2 + cs[i] ** 2 - cs[j] ** 2) / (2 * d)
        h2 = cs[i] ** 2 - a**2
        ok &= h2 >= -1e-12 * cs[i] ** 2
        hc = np.sqrt(np.clip(h2, 0.0, None))
        unit = delta / d
        base = cc[i] + a * unit
        out.append((base + hc * 1j * unit)[ok])
        out.append((base - hc * 1j * unit)[ok])
    if not out:
        return np.empty(0, dtype=complex)
    return np.concatenate(out)


class ConvexRegion2D:
    """Common behaviour of bounded planar convex regions.

    Subclasses provide :meth:`margin`, :meth:`level_pieces`, :meth:`support`,
    :meth:`pullback` and set ``_inradius``/``_witness``/``_bbox`` during
    construction.
    """

    _inradius: float | None
    _witness: complex | None
    _bbox: tuple | None

    # -- subclass interface -------------------------------------------------
    def margin(self, x):
        """Signed depth: equals the boundary distance inside, negative outside."""
        raise NotImplementedError

    def level_pieces(self, r: float) -> LevelPieces:
        raise NotImplementedError

    def support(self, u: complex) -> float:
        raise NotImplementedError

    def pullback(self, p: complex, e: complex) -> "ConvexRegion2D":
        """The region ``{z : p + e z in self}`` for a unit complex ``e``."""
        raise NotImplementedError

    # -- shared queries -----------------------------------------------------
    @property
    def inradius(self) -> float:
        return self._inradius

    @property
    def witness(self) -> complex:
        """A point of maximal depth (a Chebyshev center)."""
        return self._witness

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        """``(xmin, xmax, ymin, ymax)`` of the closure."""
        return self._bbox

    @property
    def scale(self) -> float:
        x0, x1, y0, y1 = self._bbox
        return max(x1 - x0, y1 - y0)

    def contains(self, x: complex) -> bool:
        return bool(self.margin(complex(x)) > BOUNDARY_EPS)

    def boundary_distance(self, x: complex) -> float:
        m = float(self.margin(complex(x)))
        if not m > BOUNDARY_EPS:
            raise NotInterior(f"{complex(x)} is not interior to the region")
        return m

    def _finish(self) -> None:
        """Compute inradius and a deep witness point (called once at construction)."""
        x0, x1, y0, y1 = self._bbox
        ref = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        hi = 0.5 * min(x1 - x0, y1 - y0)
        tol = 1e-14 * max(self.scale, 1.0)
        q = project_onto_level_set(self, ref, hi)
        if q is not None:
            lo, best = hi, q
        else:
            lo, best = 0.0, None
            for _ in range(200):
                if hi - lo <= tol:
                    break
                mid = 0.5 * (lo + hi)
                q = project_onto_level_set(self, ref, mid)
                if q is None:
                    hi = mid
                else:
                    lo, best = mid, q
        if best is None or lo <= BOUNDARY_EPS:
            raise InvalidRegion("region has empty interior")
        object.__setattr__(self, "_inradius", lo)
        object.__setattr__(self, "_witness", complex(best))


def _check_finite(*values: float) -> None:
    for v in values:
        if not np.isfinite(v):
            raise InvalidRegion(f"non-finite value {v!r}")


@dataclass(frozen=True)
class Intersection(ConvexRegion2D):
    """Intersection of closed half-planes and open disks (the open interior is the region)."""

    halfplanes: tuple[HalfPlane, ...] = ()
    disks: tuple[Disk, ...] = ()
    _inradius: float | None = field(default=None, compare=False, repr=False)
    _witness: complex | None = field(default=None, compare=False, repr=False)
    _bbox: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        hps = tuple(HalfPlane(complex(h.normal), float(h.offset)) for h in self.halfplanes)
        dks = tuple(Disk(complex(d.center), float(d.radius)) for d in self.disks)
        object.__setattr__(self, "halfplanes", hps)
        object.__setattr__(self, "disks", dks)
        for h in hps:
            _check_finite(h.normal.real, h.normal.imag, h.offset)
            if abs(abs(h.normal) - 1.0) > 1e-12:
                raise InvalidRegion(f"half-plane normal {h.normal} is not a unit vector")
        for d in dks:
            _check_finite(d.center.real, d.center.imag, d.radius)
            if not d.radius > 0:
                raise InvalidRegion(f"disk radius must be positive, got {d.radius}")
        if not dks and not self._is_bounded_polygon():
            raise InvalidRegion("intersection is unbounded")
        object.__setattr__(self, "_arrays", (
            np.array([h.normal for h in hps], dtype=complex),
            np.array([h.offset for h in hps], dtype=float),
            np.array([d.center for d in dks], dtype=complex),
            np.array([d.radius for d in dks], dtype=float),
        ))
        if self._bbox is None:
            box = (-self._support_raw(-1), self._support_raw(1),
                   -self._support_raw(-1j), self._support_raw(1j))
            if not all(np.isfinite(box)) or box[1] - box[0] <= 0 or box[3] - box[2] <= 0:
                raise InvalidRegion("region is empty")
            object.__setattr__(self, "_bbox", tuple(float(v) for v in box))
        if self._inradius is None:
            if len(dks) == 1 and not hps:
                object.__setattr__(self, "_inradius", dks[0].radius)
                object.__setattr__(self, "_witness", dks[0].center)
            else:
                self._finish()

    def _is_bounded_polygon(self) -> bool:
        normals = [h.normal for h in self.halfplanes]
        if len(normals) < 3:
            return False
        nn = np.array(normals)
        # The recession cone {d : <n_i, d> <= 0} is nontrivial iff one of its
        # extreme rays (perpendicular to some normal) lies in it.
        for n in normals:
            for d in (1j * n, -1j * n):
                if np.all(_dot(d, nn) <= 1e-12):
                    return False
        return True

    def margin(self, x):
        x = np.asarray(x, dtype=complex)
        ln, lb, cc, cs = self._arrays
        terms = []
        if len(ln):
            terms.append((lb - _dot(x[..., None], ln)).min(axis=-1))
        if len(cc):
            terms.append((cs - np.abs(x[..., None] - cc)).min(axis=-1))
        out = terms[0] if len(terms) == 1 else np.minimum(terms[0], terms[1])
        return out if out.ndim else float(out)

    def level_pieces(self, r: float) -> LevelPieces:
        ln, lb, cc, cs = self._arrays
        keep = cs - r > 0
        return LevelPieces(ln, lb - r, cc[keep], cs[keep] - r, cc)

    def _support_raw(self, u: complex) -> float:
        pieces = self.level_pieces(0.0)
        cands = [_arrangement(pieces), pieces.centers + pieces.radii * u]
        pts = np.concatenate(cands)
        if not len(pts):
            return -math.inf
        scale = 1.0 + float(np.max(np.abs(pts)))
        ok = self.margin(pts) >= -1e-10 * scale
        if not ok.any():
            return -math.inf
        return float(np.max(_dot(pts[ok], u)))

    def support(self, u: complex) -> float:
        return self._support_raw(complex(u))

    def erode(self, r: float) -> "Intersection":
        """The inner parallel region ``{x : delta(x) >= r}`` (as an open region of the same family)."""
        if not r > 0:
            raise ValueError("erosion radius must be positive")
        if r >= self._inradius:
            raise EmptyErosion(f"erosion radius {r} >= inradius {self._inradius}")
        x0, x1, y0, y1 = self._bbox
        return Intersection(
            tuple(HalfPlane(h.normal, h.offset - r) for h in self.halfplanes),
            tuple(Disk(d.center, d.radius - r) for d in self.disks),
            _inradius=self._inradius - r,
            _witness=self._witness,
            _bbox=(x0 + r, x1 - r, y0 + r, y1 - r),
        )

    def pullback(self, p: complex, e: complex) -> "Intersection":
        p, e = complex(p), complex(e)
        ce = e.conjugate()
        hps = tuple(HalfPlane(h.normal * ce, h.offset - float(_dot(p, h.normal))) for h in self.halfplanes)
        dks = tuple(Disk((d.center - p) * ce, d.radius) for d in self.disks)
        return Intersection(hps, dks, _inradius=self._inradius, _witness=(self._witness - p) * ce)


@dataclass(frozen=True)
class Hull(ConvexRegion2D):
    """Interior of the convex hull of a finite family of closed disks."""

    generators: tuple[Disk, ...]
    _inradius: float | None = field(default=None, compare=False, repr=False)
    _witness: complex | None = field(default=None, compare=False, repr=False)
    _bbox: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        gens = tuple(Disk(complex(g.center), float(g.radius)) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InvalidRegion("hull needs at least one generator")
        for g in gens:
            _check_finite(g.center.real, g.center.imag, g.radius)
            if g.radius < 0:
                raise InvalidRegion(f"generator radius must be nonnegative, got {g.radius}")
        cc = np.array([g.center for g in gens], dtype=complex)
        rr = np.array([g.radius for g in gens], dtype=float)
        object.__setattr__(self, "_cc", cc)
        object.__setattr__(self, "_rr", rr)
        object.__setattr__(self, "_breaks", self._breakpoints())
        if self._bbox is None:
            box = (-self.support(-1), self.support(1), -self.support(-1j), self.support(1j))
            if box[1] - box[0] <= 0 or box[3] - box[2] <= 0:
                raise InvalidRegion("hull has empty interior")
            object.__setattr__(self, "_bbox", tuple(float(v) for v in box))
        if self._inradius is None:
            if len(gens) == 1:
                object.__setattr__(self, "_inradius", gens[0].radius)
                object.__setattr__(self, "_witness", gens[0].center)
                if not gens[0].radius > BOUNDARY_EPS:
                    raise InvalidRegion("hull has empty interior")
            else:
                self._finish()

    def _h(self, u):
        u = np.asarray(u, dtype=complex)
        return (_dot(self._cc, u[..., None]) + self._rr).max(axis=-1)

    def _breakpoints(self) -> np.ndarray:
        """Unit normals at which the maximizing generator of the support function switches."""
        cc, rr = self._cc, self._rr
        out = []
        tol = 1e-12 * (1.0 + float(np.max(np.abs(cc))) + float(np.max(rr)))
        for i in range(len(cc)):
            for j in range(i + 1, len(cc)):
                a = cc[i] - cc[j]
                if abs(a) < 1e-15:
                    continue
                cosv = (rr[j] - rr[i]) / abs(a)
                if abs(cosv) > 1.0:
                    continue
                phase = np.angle(a)
                spread = math.acos(cosv)
                for theta in (phase + spread, phase - spread):
                    u = complex(math.cos(theta), math.sin(theta))
                    gi = _dot(cc[i], u) + rr[i]
                    if self._h(u) - gi <= tol:
                        out.append(u)
        return np.array(out, dtype=complex)

    def support(self, u: complex) -> float:
        return float(self._h(complex(u)))

    def margin(self, x):
        # min over unit u of h(u) - <x, u>; the minimum sits at a breakpoint of h
        # or at the stationary point of the active generator's term.
        x = np.asarray(x, dtype=complex)
        rel = self._cc - x[..., None]  # (..., m)
        stat = -_unit(rel)
        dirs = stat
        if len(self._breaks):
            br = np.broadcast_to(self._breaks, x.shape + self._breaks.shape)
            dirs = np.concatenate([stat, br], axis=-1)
        g = (_dot(rel[..., None, :], dirs[..., :, None]) + self._rr).max(axis=-1)
        out = g.min(axis=-1)
        return out if out.ndim else float(out)

    def level_pieces(self, r: float) -> LevelPieces:
        br = self._breaks
        keep = self._rr - r > 0
        pts = [self._cc]
        if len(br):
            pts.append((self._cc[:, None] + np.clip(self._rr - r, 0, None)[:, None] * br[None, :]).ravel())
        return LevelPieces(br, self._h(br) - r if len(br) else np.empty(0),
                           self._cc[keep], self._rr[keep] - r, np.concatenate(pts))

    def pullback(self, p: complex, e: complex) -> "Hull":
        p, e = complex(p), complex(e)
        ce = e.conjugate()
        gens = tuple(Disk((g.center - p) * ce, g.radius) for g in self.generators)
        return Hull(gens, _inradius=self._inradius, _witness=(self._witness - p) * ce)


# -- module-level API ----------------------------------------------------------

def contains(region: ConvexRegion2D, x: complex) -> bool:
    return region.contains(x)


def boundary_distance(region: ConvexRegion2D, x: complex) -> float:
    return region.boundary_distance(x)


def erode(region: Intersection, r: float) -> Intersection:
    if not isinstance(region, Intersection):
        raise TypeError("erosion is only closed-form for Intersection regions")
    return region.erode(r)


def project_onto_level_set(region: ConvexRegion2D, p: complex, r: float,
                           tol: float | None = None) -> complex | None:
    """Euclidean projection of ``p`` onto ``{x : delta(x) >= r}``, or ``None`` if that set is empty.

    The boundary of the level set is made of pieces of the lines and circles
    returned by :meth:`ConvexRegion2D.level_pieces`, so the projection is one
    of: ``p`` itself, the foot of ``p`` on one piece, or a junction of two
    pieces. Every such candidate is generated and filtered by the exact margin.
    """
    p = complex(p)
    pieces = region.level_pieces(r)
    ln, lb, cc, cs = pieces.normals, pieces.offsets, pieces.centers, pieces.radii
    cands = [np.array([p]), pieces.points, _arrangement(pieces)]
    if len(ln):
        cands.append(p - (_dot(p, ln) - lb) * ln)
    if len(cc):
        cands.append(cc + cs * _unit(p - cc))
    pts = np.concatenate(cands)
    if tol is None:
        tol = 1e-12 * max(region.scale if region._bbox else 1.0, 1.0)
    ok = region.margin(pts) >= r - tol
    if not ok.any():
        return None
    dist = np.where(ok, np.abs(pts - p), np.inf)
    return complex(pts[int(np.argmin(dist))])


# -- constructors ----------------------------------------------------------------

def disk_region(center: complex = 0j, radius: float = 1.0) -> Intersection:
    return Intersection(disks=(Disk(complex(center), float(radius)),))


def polygon(vertices: Iterable[complex]) -> Intersection:
    """Interior of the convex hull of ``vertices`` as a half-plane intersection."""
    pts = sorted({(complex(v).real, complex(v).imag) for v in vertices})
    if len(pts) < 3:
        raise InvalidRegion("polygon needs at least three distinct vertices")

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: list = []
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    ring = [complex(*v) for v in lower[:-1] + upper[:-1]]
    if len(ring) < 3:
        raise InvalidRegion("polygon vertices are collinear")
    hps = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        n = -1j * (b - a) / abs(b - a)
        hps.append(HalfPlane(n, float(_dot(a, n))))
    return Intersection(tuple(hps))


def rectangle(xmin: float, xmax: float, ymin: float, ymax: float) -> Intersection:
    return Intersection((
        HalfPlane(1 + 0j, xmax), HalfPlane(-1 + 0j, -xmin),
        HalfPlane(1j, ymax), HalfPlane(-1j, -ymin),
    ))
