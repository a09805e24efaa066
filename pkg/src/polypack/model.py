"""Layout-level quantities: center of mass, radius, overlap and energy.

The container is centered on the layout's center of mass, so the layout
radius is the smallest balanced container and there is no separate
imbalance term in the energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .geometry import EPS, Point, PolygonState, PolygonStructure, ValidationError


@dataclass(frozen=True, eq=False)
class Instance:
    """A named packing problem.

    ``initial_radius`` (R0) seeds the random start and scales the move
    window; it never constrains the solution.
    """

    name: str
    polygons: tuple[PolygonStructure, ...]
    initial_radius: float
    known_optimum: float | None = None
    comment: str = ""

    def __post_init__(self):
        object.__setattr__(self, "polygons", tuple(self.polygons))
        object.__setattr__(self, "initial_radius", float(self.initial_radius))
        if not self.polygons:
            raise ValidationError("instance needs at least one polygon")
        r0 = self.initial_radius
        if not (math.isfinite(r0) and r0 > 0):
            raise ValidationError(f"initial radius must be positive, got {r0}")
        rmax = max(p.radius for p in self.polygons)
        if r0 < rmax:
            raise ValidationError(f"initial radius {r0} is smaller than the largest polygon radius {rmax}")
        if self.known_optimum is not None:
            object.__setattr__(self, "known_optimum", float(self.known_optimum))

    @property
    def k(self) -> int:
        return len(self.polygons)

    @cached_property
    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(R, TH, NV, M, RAD)`` arrays consumed by the compiled kernels."""
        k = self.k
        nmax = max(p.vertex_count for p in self.polygons)
        R = np.zeros((k, nmax))
        TH = np.zeros((k, nmax))
        NV = np.empty(k, dtype=np.int64)
        M = np.empty(k)
        RAD = np.empty(k)
        for i, p in enumerate(self.polygons):
            n = p.vertex_count
            R[i, :n] = p.r
            TH[i, :n] = p.theta
            NV[i] = n
            M[i] = p.mass
            RAD[i] = p.radius
        for a in (R, TH, NV, M, RAD):
            a.flags.writeable = False
        return R, TH, NV, M, RAD

    @property
    def total_mass(self) -> float:
        return float(sum(p.mass for p in self.polygons))

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.name, self.polygons, self.initial_radius, self.known_optimum, self.comment) == (
            other.name, other.polygons, other.initial_radius, other.known_optimum, other.comment)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Layout:
    """States of all ``k`` polygons, stored as a read-only ``(k, 3)`` array of
    ``(x, y, alpha)`` rows."""

    array: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.array, dtype=float, copy=True).reshape(-1, 3)
        if not np.all(np.isfinite(a)):
            raise ValidationError("layout contains non-finite values")
        a.flags.writeable = False
        object.__setattr__(self, "array", a)

    @classmethod
    def from_states(cls, states: Iterable[PolygonState]) -> Layout:
        return cls(np.array([(s.x, s.y, s.alpha) for s in states], dtype=float).reshape(-1, 3))

    @property
    def states(self) -> list[PolygonState]:
        return [PolygonState(float(x), float(y), float(a)) for x, y, a in self.array]

    def __len__(self):
        return self.array.shape[0]

    def __getitem__(self, i) -> PolygonState:
        x, y, a = self.array[i]
        return PolygonState(float(x), float(y), float(a))

    def __eq__(self, other):
        if not isinstance(other, Layout):
            return NotImplemented
        return self.array.shape == other.array.shape and bool(np.array_equal(self.array, other.array))

    def __repr__(self):
        return f"Layout({self.array.tolist()!r})"

    def to_list(self) -> list[list[float]]:
        return self.array.tolist()


@dataclass(frozen=True)
class EnergyWeights:
    lambda1: float = 100.0
    lambda2: float = 100.0

    def __post_init__(self):
        for name in ("lambda1", "lambda2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class SolutionCheck:
    feasible: bool
    radius: float
    max_pair_overlap: float
    overlapping_pairs: tuple[tuple[int, int], ...] = ()


def _check(inst: Instance, L: Layout) -> np.ndarray:
    if len(L) != inst.k:
        raise ValidationError(f"layout has {len(L)} states, instance has {inst.k} polygons")
    return L.array


def world_coordinates(inst: Instance, L: Layout) -> np.ndarray:
    """``(k, nmax, 2)`` world vertices; rows past a polygon's vertex count are unused."""
    S = _check(inst, L)
    R, TH, NV, M, RAD = inst.packed
    W = np.zeros((inst.k, R.shape[1], 2))
    K.fill_world(R, TH, NV, S, W)
    return W


def center_of_mass(inst: Instance, L: Layout) -> Point:
    S = _check(inst, L)
    cx, cy = K.center_of_mass(inst.packed[3], S)
    return Point(float(cx), float(cy))


def layout_radius(inst: Instance, L: Layout) -> float:
    """Farthest vertex distance from the layout's center of mass."""
    W = world_coordinates(inst, L)
    R, TH, NV, M, RAD = inst.packed
    return float(K.layout_radius(W, NV, M, L.array))


def pair_overlaps(inst: Instance, L: Layout, eps: float = EPS) -> np.ndarray:
    """Symmetric ``(k, k)`` matrix of pairwise overlap measures."""
    S = _check(inst, L)
    R, TH, NV, M, RAD = inst.packed
    W = world_coordinates(inst, L)
    O = np.empty((inst.k, inst.k))
    K.fill_pairs(W, NV, RAD, S, O, eps)
    return O


def layout_overlap(inst: Instance, L: Layout, eps: float = EPS) -> float:
    """Sum of pairwise overlap measures over ordered pairs ``i != j``."""
    return float(K.total_overlap(pair_overlaps(inst, L, eps)))


def energy(inst: Instance, L: Layout, w: EnergyWeights = EnergyWeights(), eps: float = EPS) -> float:
    S = _check(inst, L)
    ove, rad = K.evaluate(*inst.packed, S, eps)
    return float(w.lambda1 * ove + w.lambda2 * rad)


def energy_terms(inst: Instance, L: Layout, eps: float = EPS) -> tuple[float, float]:
    """``(layout_overlap, layout_radius)`` from a single evaluation."""
    S = _check(inst, L)
    ove, rad = K.evaluate(*inst.packed, S, eps)
    return float(ove), float(rad)


def validate_solution(inst: Instance, L: Layout, tolerance: float = EPS) -> SolutionCheck:
    """Audit a layout with the exact geometric test rather than the circle measure.

    A layout is feasible when no two polygons share interior area;
    ``tolerance`` is the orientation epsilon used by that test.
    """
    S = _check(inst, L)
    R, TH, NV, M, RAD = inst.packed
    W = world_coordinates(inst, L)
    bad = []
    worst = 0.0
    for i in range(inst.k):
        for j in range(i + 1, inst.k):
            dx = S[i, 0] - S[j, 0]
            dy = S[i, 1] - S[j, 1]
            if math.sqrt(dx * dx + dy * dy) >= RAD[i] + RAD[j]:
                continue
            if K.overlap_interior(W[i], NV[i], W[j], NV[j], tolerance):
                bad.append((i, j))
                worst = max(worst, float(K.pair_measure(i, j, W, NV, RAD, S, tolerance)))
    return SolutionCheck(
        feasible=not bad,
        radius=float(K.layout_radius(W, NV, M, S)),
        max_pair_overlap=worst,
        overlapping_pairs=tuple(bad),
    )


def layout_from_rows(rows: Sequence[Sequence[float]]) -> Layout:
    return Layout(np.asarray(rows, dtype=float))
