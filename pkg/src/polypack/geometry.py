"""Polygon representation and the pairwise geometric tests.

A polygon's *structure* stores its vertices in polar form about its center
of mass; its *state* places that center at ``(x, y)`` and rotates the shape by
``alpha``. World coordinates of vertex ``v`` are
``(x + r_v cos(theta_v + alpha), y + r_v sin(theta_v + alpha))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels as K

#: Absolute tolerance on cross-product signs in orientation tests.
EPS = K.EPS


class ValidationError(ValueError):
    """Raised when a polygon or instance is malformed or degenerate."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class PolarVertex:
    r: float
    theta: float


@dataclass(frozen=True)
class PolygonState:
    x: float
    y: float
    alpha: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.alpha)):
            raise ValidationError(f"non-finite polygon state {self}")


@dataclass(frozen=True, eq=False)
class PolygonStructure:
    """Immutable shape and mass of one polygon.

    Construction validates the structure: at least three vertices, positive
    mass, strictly positive vertex radii, and a simple (non self-intersecting)
    outline with no three consecutive collinear vertices.
    """

    mass: float
    vertices: tuple[PolarVertex, ...]
    _r: np.ndarray = field(init=False, repr=False)
    _theta: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        verts = tuple(
            v if isinstance(v, PolarVertex) else PolarVertex(float(v[0]), float(v[1]))
            for v in self.vertices
        )
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "mass", float(self.mass))
        r = np.array([v.r for v in verts], dtype=float)
        theta = np.array([v.theta for v in verts], dtype=float)
        r.flags.writeable = False
        theta.flags.writeable = False
        object.__setattr__(self, "_r", r)
        object.__setattr__(self, "_theta", theta)
        _validate_structure(self)

    @classmethod
    def from_polar(cls, mass: float, r: Sequence[float], theta: Sequence[float]) -> PolygonStructure:
        if len(r) != len(theta):
            raise ValidationError(f"{len(r)} radii but {len(theta)} angles")
        return cls(mass, tuple(PolarVertex(float(a), float(b)) for a, b in zip(r, theta)))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def r(self) -> np.ndarray:
        return self._r

    @property
    def theta(self) -> np.ndarray:
        return self._theta

    @cached_property
    def radius(self) -> float:
        return float(self._r.max())

    def __eq__(self, other):
        if not isinstance(other, PolygonStructure):
            return NotImplemented
        return self.mass == other.mass and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.mass, self.vertices))


def _validate_structure(s: PolygonStructure) -> None:
    n = len(s.vertices)
    if n < 3:
        raise ValidationError(f"polygon needs at least 3 vertices, got {n}")
    if not (math.isfinite(s.mass) and s.mass > 0):
        raise ValidationError(f"polygon mass must be positive, got {s.mass}")
    if not (np.all(np.isfinite(s.r)) and np.all(np.isfinite(s.theta))):
        raise ValidationError("non-finite vertex coordinates")
    if np.any(s.r <= 0):
        raise ValidationError("vertex at the center of mass (r = 0) is degenerate")
    pts = world_array(s, PolygonState(0.0, 0.0, 0.0))
    if not is_simple(pts):
        raise ValidationError("polygon outline is not simple")


def is_simple(pts: np.ndarray, eps: float = EPS) -> bool:
    """True for a simple polygon with no repeated or collinear consecutive vertices."""
    n = len(pts)
    for a in range(n):
        p, q, s = pts[a - 1], pts[a], pts[(a + 1) % n]
        if K.orient(p[0], p[1], q[0], q[1], s[0], s[1], eps) == 0:
            return False
    for a in range(n):
        b = (a + 1) % n
        for c in range(a + 1, n):
            d = (c + 1) % n
            if c == b or d == a:
                continue
            if K.segments_intersect(*pts[a], *pts[b], *pts[c], *pts[d], eps):
                return False
    return True


def polygon_radius(s: PolygonStructure) -> float:
    """Radius of the covering circle centered at the center of mass."""
    return s.radius


def world_array(s: PolygonStructure, st: PolygonState) -> np.ndarray:
    """World-space vertices as an ``(n, 2)`` array."""
    out = np.empty((s.vertex_count, 2))
    K.world_into(s.r, s.theta, s.vertex_count, float(st.x), float(st.y), float(st.alpha), out)
    return out


def world_vertices(s: PolygonStructure, st: PolygonState) -> list[Point]:
    return [Point(float(x), float(y)) for x, y in world_array(s, st)]


def _poly_array(poly) -> np.ndarray:
    if isinstance(poly, np.ndarray):
        return np.ascontiguousarray(poly, dtype=float)
    return np.array([(p.x, p.y) for p in poly], dtype=float)


def segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point, eps: float = EPS) -> bool:
    """Closed segments share a point (crossing, endpoint touch, or collinear overlap)."""
    return bool(K.segments_intersect(a1.x, a1.y, a2.x, a2.y, b1.x, b1.y, b2.x, b2.y, eps))


def point_in_polygon(p: Point, poly, eps: float = EPS) -> bool:
    """Closed membership test; points on the boundary count as inside."""
    P = _poly_array(poly)
    return K.locate_point(p.x, p.y, P, len(P), eps) >= 0


def point_location(p: Point, poly, eps: float = EPS) -> int:
    """1 strictly inside, 0 on the boundary, -1 outside."""
    P = _poly_array(poly)
    return int(K.locate_point(p.x, p.y, P, len(P), eps))


def polygons_overlap(sa: PolygonStructure, sta: PolygonState,
                     sb: PolygonStructure, stb: PolygonState, eps: float = EPS) -> bool:
    """Closed-set intersection test: touching boundaries count as overlap."""
    P = world_array(sa, sta)
    Q = world_array(sb, stb)
    return bool(K.overlap_closed(P, len(P), Q, len(Q), eps))


def interiors_overlap(sa: PolygonStructure, sta: PolygonState,
                      sb: PolygonStructure, stb: PolygonState, eps: float = EPS) -> bool:
    """Positive-area intersection test; boundary contact alone is not overlap.

    This is the gate used by :func:`overlap_measure` and by feasibility checks.
    """
    P = world_array(sa, sta)
    Q = world_array(sb, stb)
    return bool(K.overlap_interior(P, len(P), Q, len(Q), eps))


def center_distance(sta: PolygonState, stb: PolygonState) -> float:
    dx = sta.x - stb.x
    dy = sta.y - stb.y
    return math.sqrt(dx * dx + dy * dy)


def overlap_measure(sa: PolygonStructure, sta: PolygonState,
                    sb: PolygonStructure, stb: PolygonState, eps: float = EPS) -> float:
    """Circle-based overlap penalty ``max(0, r_a + r_b - dist)``.

    The penalty is zero unless the two polygons share interior area, so it
    jumps discontinuously as shapes start to interpenetrate.
    """
    reach = sa.radius + sb.radius
    dist = center_distance(sta, stb)
    if dist >= reach:
        return 0.0
    if not interiors_overlap(sa, sta, sb, stb, eps):
        return 0.0
    return reach - dist
