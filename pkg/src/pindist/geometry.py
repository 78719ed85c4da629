"""Points of R^d, the quadratic distance form, and pinned distance sets.

The distance between u and v is sum((u_i - v_i)^2) evaluated in the ring; it
is a ring element, never an integer, and two distances are equal exactly when
the ring elements are.  Bulk computations run over element indices with the
ring's cached operation tables and fall back to element-level arithmetic for
rings too large to tabulate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, MismatchError
from .rings import RingElement, RingSpec, normalize_subset
from .sampling import sample_without_replacement


class Point:
    """A point of R^d: a fixed tuple of ring elements sharing one ring."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[RingElement]):
        coords = tuple(coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        spec = coords[0].spec
        for c in coords[1:]:
            if c.spec != spec:
                raise MismatchError("point coordinates mix different rings")
        self.coords = coords

    @property
    def spec(self) -> RingSpec:
        return self.coords[0].spec

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def index_vector(self) -> tuple[int, ...]:
        return tuple(c.index for c in self.coords)

    @classmethod
    def from_indices(cls, spec: RingSpec, indices: Iterable[int]) -> "Point":
        return cls(spec.element(i) for i in indices)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> RingElement:
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def serialize(self) -> str:
        parts = []
        for c in self.coords:
            s = c.serialize()
            parts.append(f"({s})" if "," in s else s)
        return "(" + ",".join(parts) + ")"

    def __repr__(self) -> str:
        return f"Point({self.spec.spec_string()}, {self.serialize()})"


class PointSet:
    """A duplicate-free set of points of fixed dimension over one ring.

    Points are kept sorted by coordinate index vector so iteration order,
    serialization, and every derived report are deterministic.
    """

    __slots__ = ("spec", "dim", "points", "_idx")

    def __init__(self, points: Iterable[Point]):
        pts = list(points)
        if not pts:
            raise ValueError("point set must be nonempty")
        spec, dim = pts[0].spec, pts[0].dim
        for pt in pts:
            if pt.spec != spec or pt.dim != dim:
                raise MismatchError("point set mixes rings or dimensions")
        pts.sort(key=lambda pt: pt.index_vector)
        for a, b in zip(pts, pts[1:]):
            if a.index_vector == b.index_vector:
                raise ValueError(f"duplicate point {a.serialize()} in point set")
        self.spec = spec
        self.dim = dim
        self.points = tuple(pts)
        self._idx = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt: Point) -> bool:
        return isinstance(pt, Point) and any(p == pt for p in self.points)

    def index_array(self) -> np.ndarray:
        if self._idx is None:
            self._idx = np.array([pt.index_vector for pt in self.points], dtype=np.int32)
        return self._idx

    def serialize(self) -> str:
        return ",".join(pt.serialize() for pt in self.points)


@dataclass(frozen=True)
class PinHistogram:
    """Distance counts seen from one pin: counts[t] = #{v in E : d(pin, v) = t}."""

    pin: Point
    counts: dict

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> set:
        return set(self.counts)

    def square_sum(self) -> int:
        return sum(c * c for c in self.counts.values())


def cartesian_square(subset: Iterable[RingElement]) -> PointSet:
    """The |A|^2 points (a, b) of A x A in R^2."""
    elems = normalize_subset(subset)
    return PointSet(Point((a, b)) for a in elems for b in elems)


def distance(u: Point, v: Point) -> RingElement:
    """sum((u_i - v_i)^2), evaluated in the ring."""
    if u.spec != v.spec or u.dim != v.dim:
        raise MismatchError("distance needs points of one ring and dimension")
    spec = u.spec
    acc = spec.zero
    for a, b in zip(u.coords, v.coords):
        d = a - b
        acc = acc + d * d
    return acc


def _tables_or_none(spec: RingSpec):
    try:
        return spec.tables()
    except CapacityError:
        return None


def distance_matrix(E: PointSet) -> np.ndarray:
    """Matrix of distance element indices, rows and columns in point order."""
    t = _tables_or_none(E.spec)
    if t is None:
        n = len(E)
        out = np.empty((n, n), dtype=np.int64)
        for i, u in enumerate(E.points):
            for j, v in enumerate(E.points):
                out[i, j] = distance(u, v).index
        return out
    idx = E.index_array()
    acc = np.zeros((len(E), len(E)), dtype=np.int32)
    for c in range(E.dim):
        diff = t.add[idx[:, None, c], t.neg[idx[None, :, c]]]
        acc = t.add[acc, t.mul[diff, diff]]
    return acc


def _distance_row(u: Point, E: PointSet) -> np.ndarray:
    if u.spec != E.spec or u.dim != E.dim:
        raise MismatchError("pin and point set must share ring and dimension")
    t = _tables_or_none(E.spec)
    if t is None:
        return np.array([distance(u, v).index for v in E.points], dtype=np.int64)
    idx = E.index_array()
    uvec = u.index_vector
    acc = np.zeros(len(E), dtype=np.int32)
    for c in range(E.dim):
        diff = t.add[uvec[c], t.neg[idx[:, c]]]
        acc = t.add[acc, t.mul[diff, diff]]
    return acc


def distance_set(E: PointSet) -> set:
    """All pairwise distances of E, including 0."""
    values = np.unique(distance_matrix(E))
    return {E.spec.element(int(i)) for i in values}


def pinned_set(u: Point, E: PointSet) -> set:
    """Distances from the pin u to the points of E."""
    values = np.unique(_distance_row(u, E))
    return {E.spec.element(int(i)) for i in values}


def pin_histogram(u: Point, E: PointSet) -> PinHistogram:
    row = _distance_row(u, E)
    counts = np.bincount(row, minlength=E.spec.order)
    spec = E.spec
    mapping = {spec.element(i): int(c) for i, c in enumerate(counts) if c}
    return PinHistogram(pin=u, counts=mapping)


def pinned_distance_counts(E: PointSet) -> np.ndarray:
    """Number of distinct pinned distances per point of E, in point order."""
    D = distance_matrix(E)
    D = np.sort(D, axis=1)
    return 1 + (np.diff(D, axis=1) != 0).sum(axis=1)


def max_pinned(E: PointSet) -> tuple[Point, int]:
    """A pin of E with the largest pinned distance set, and that size.

    Ties break to the first point in canonical order.
    """
    counts = pinned_distance_counts(E)
    i = int(np.argmax(counts))
    return E.points[i], int(counts[i])


def random_point_set(spec: RingSpec, dim: int, size: int, rng: random.Random) -> PointSet:
    """Uniform duplicate-free sample of `size` points from R^dim."""
    population = spec.order**dim
    if size < 1:
        raise ValueError("point set must be nonempty")
    if size > population:
        raise ValueError(f"cannot place {size} distinct points in a space of {population}")
    picks = sample_without_replacement(population, size, rng)
    pts = []
    for code in picks:
        coords = []
        for _ in range(dim):
            code, rem = code // spec.order, code % spec.order
            coords.append(spec.element(rem))
        pts.append(Point(coords))
    return PointSet(pts)
