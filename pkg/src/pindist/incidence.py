"""Point-plane incidences in R^3 and the counting identities behind them.

A subset A of the ring generates two multiplicity-carrying families:

  points  (2*u1, v2 - w2, w2^2 - v2^2)          over (u1, v2, w2) in A^3
  planes  normal (v1 - w1, 2*u2, 1),
          offset v1^2 - w1^2                    over (v1, w1, u2) in A^3

A point lies on a plane exactly when the defining sextuple solves

  2*u1*(v1 - w1) + 2*u2*(v2 - w2) + (w2^2 - v2^2) = v1^2 - w1^2,

so the weighted incidence count between the families equals the number of
ordered triples (u, v, w) in (A x A)^3 with d(u, v) = d(u, w): the isosceles
triple count that drives the pinned-distance machinery.

Planes require at least one unit coordinate in the normal; over a ring with
zero divisors this is what makes the solution set a genuine plane with
exactly q^(2r) points.  Every constructed plane has third coordinate 1.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapacityError, MismatchError
from .geometry import Point, PointSet
from .rings import RingElement, RingSpec, normalize_subset
from .sampling import sample_without_replacement


class Plane:
    """The plane {x in R^3 : n1*x1 + n2*x2 + n3*x3 = offset}.

    At least one normal coordinate must be a unit.
    """

    __slots__ = ("normal", "offset")

    def __init__(self, normal: Iterable[RingElement], offset: RingElement):
        normal = tuple(normal)
        if len(normal) != 3:
            raise ValueError("plane normal must have exactly 3 coordinates")
        spec = offset.spec
        for c in normal:
            if c.spec != spec:
                raise MismatchError("plane normal and offset mix different rings")
        if not any(c.is_unit() for c in normal):
            raise ValueError("plane normal needs at least one unit coordinate")
        self.normal = normal
        self.offset = offset

    @property
    def spec(self) -> RingSpec:
        return self.normal[0].spec

    @property
    def index_vector(self) -> tuple[int, int, int, int]:
        n1, n2, n3 = self.normal
        return (n1.index, n2.index, n3.index, self.offset.index)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Plane)
            and self.normal == other.normal
            and self.offset == other.offset
        )

    def __hash__(self) -> int:
        return hash((self.normal, self.offset))

    def serialize(self) -> str:
        parts = []
        for c in (*self.normal, self.offset):
            s = c.serialize()
            parts.append(f"({s})" if "," in s else s)
        return "[" + ",".join(parts) + "]"

    def __repr__(self) -> str:
        return f"Plane({self.spec.spec_string()}, {self.serialize()})"


class IncidenceCount(NamedTuple):
    distinct: int
    weighted: int


class IncidenceConfig:
    """Points and planes with multiplicities, plus the generating subset if any."""

    __slots__ = ("spec", "points", "planes", "source")

    def __init__(
        self,
        spec: RingSpec,
        points: dict,
        planes: dict,
        source: tuple[RingElement, ...] | None = None,
    ):
        for pt, mult in points.items():
            if pt.spec != spec or pt.dim != 3:
                raise MismatchError("incidence points must lie in R^3 of the given ring")
            if mult < 1:
                raise ValueError(f"point multiplicity must be >= 1, got {mult}")
        for pl, mult in planes.items():
            if pl.spec != spec:
                raise MismatchError("incidence planes must live over the given ring")
            if mult < 1:
                raise ValueError(f"plane multiplicity must be >= 1, got {mult}")
        self.spec = spec
        self.points = dict(points)
        self.planes = dict(planes)
        self.source = source

    @property
    def distinct_points(self) -> int:
        return len(self.points)

    @property
    def distinct_planes(self) -> int:
        return len(self.planes)


def is_incident(pt: Point, pl: Plane) -> bool:
    """Exact test normal . pt == offset in the ring."""
    if pt.spec != pl.spec:
        raise MismatchError("point and plane live over different rings")
    if pt.dim != 3:
        raise MismatchError("incidence is defined for points of R^3")
    spec = pt.spec
    acc = spec.zero
    for n, x in zip(pl.normal, pt.coords):
        acc = acc + n * x
    return acc == pl.offset


def count_incidences(cfg: IncidenceConfig) -> IncidenceCount:
    """Exact distinct and weighted incidence counts.

    distinct counts incident (point, plane) pairs over the supports;
    weighted sums point multiplicity times plane multiplicity over the same
    pairs.  Matches the naive double loop exactly.
    """
    if not cfg.points or not cfg.planes:
        return IncidenceCount(0, 0)
    pts = sorted(cfg.points, key=lambda pt: pt.index_vector)
    pls = sorted(cfg.planes, key=lambda pl: pl.index_vector)
    try:
        t = cfg.spec.tables()
    except CapacityError:
        t = None
    if t is None:
        distinct = weighted = 0
        for pl in pls:
            wp = cfg.planes[pl]
            for pt in pts:
                if is_incident(pt, pl):
                    distinct += 1
                    weighted += wp * cfg.points[pt]
        return IncidenceCount(distinct, weighted)
    P = np.array([pt.index_vector for pt in pts], dtype=np.int32)
    L = np.array([pl.index_vector for pl in pls], dtype=np.int32)
    wq = np.array([cfg.points[pt] for pt in pts], dtype=np.int64)
    wp = np.array([cfg.planes[pl] for pl in pls], dtype=np.int64)
    dot = t.mul[L[:, None, 0], P[None, :, 0]]
    dot = t.add[dot, t.mul[L[:, None, 1], P[None, :, 1]]]
    dot = t.add[dot, t.mul[L[:, None, 2], P[None, :, 2]]]
    mask = dot == L[:, 3][:, None]
    distinct = int(mask.sum())
    weighted = int((wp[:, None] * wq[None, :])[mask].sum())
    return IncidenceCount(distinct, weighted)


def build_point_family(subset: Iterable[RingElement]) -> dict:
    """Points (2*u1, v2 - w2, w2^2 - v2^2) with generating-triple multiplicity."""
    elems = normalize_subset(subset)
    out: dict[Point, int] = {}
    for u1, v2, w2 in itertools.product(elems, repeat=3):
        pt = Point((u1 + u1, v2 - w2, w2 * w2 - v2 * v2))
        out[pt] = out.get(pt, 0) + 1
    return out


def build_plane_family(subset: Iterable[RingElement]) -> dict:
    """Planes with normal (v1 - w1, 2*u2, 1) and offset v1^2 - w1^2."""
    elems = normalize_subset(subset)
    one = elems[0].spec.one
    out: dict[Plane, int] = {}
    for v1, w1, u2 in itertools.product(elems, repeat=3):
        pl = Plane((v1 - w1, u2 + u2, one), v1 * v1 - w1 * w1)
        out[pl] = out.get(pl, 0) + 1
    return out


def build_config(subset: Iterable[RingElement]) -> IncidenceConfig:
    elems = normalize_subset(subset)
    return IncidenceConfig(
        spec=elems[0].spec,
        points=build_point_family(elems),
        planes=build_plane_family(elems),
        source=elems,
    )


def count_isosceles_triples(E: PointSet) -> int:
    """Ordered triples (u, v, w) of E^3 with 2u.(v - w) + |w|^2 - |v|^2 = 0.

    The condition is the expanded form of d(u, v) = d(u, w); this routine
    evaluates the linear-in-u form directly, leaving the histogram identity
    sum_u sum_t r_u(t)^2 as an independent cross-check.
    """
    try:
        t = E.spec.tables()
    except CapacityError:
        return _count_isosceles_pure(E)
    idx = E.index_array()
    n, d = idx.shape
    norms = np.zeros(n, dtype=np.int32)
    for c in range(d):
        norms = t.add[norms, t.mul[idx[:, c], idx[:, c]]]
    # [v, w] entry holds |w|^2 - |v|^2
    const = t.add[norms[None, :], t.neg[norms[:, None]]]
    diffs = [t.add[idx[:, None, c], t.neg[idx[None, :, c]]] for c in range(d)]
    total = 0
    for u in range(n):
        acc = const
        for c in range(d):
            double_u = t.add[idx[u, c], idx[u, c]]
            acc = t.add[acc, t.mul[double_u, diffs[c]]]
        total += int((acc == 0).sum())
    return total


def _count_isosceles_pure(E: PointSet) -> int:
    spec = E.spec
    total = 0
    for u in E.points:
        two_u = [c + c for c in u.coords]
        for v in E.points:
            nv = spec.zero
            for c in v.coords:
                nv = nv + c * c
            for w in E.points:
                acc = spec.zero
                for tu, cv, cw in zip(two_u, v.coords, w.coords):
                    acc = acc + tu * (cv - cw)
                for c in w.coords:
                    acc = acc + c * c
                if acc - nv == spec.zero:
                    total += 1
    return total


def linear_solution_count(s: RingElement, t: RingElement) -> int:
    """#{y in R : s*y = t} = q^v(s) when v(s) <= v(t), else 0.

    With v(0) = r this covers the degenerate cases: s = 0 gives q^r
    solutions when t = 0 and none otherwise.
    """
    if s.spec != t.spec:
        raise MismatchError("coefficient and target live over different rings")
    spec = s.spec
    vs = spec.valuation(s)
    if vs > spec.valuation(t):
        return 0
    return spec.q**vs


def incidence_bound_rhs(n_points: int, n_planes: int, spec: RingSpec) -> float:
    """The bound value |Q||P|/q^r + q^(2r-1) * sqrt(|Q||P|).

    Plain float arithmetic; exact at desk scale (products below 2^53) up to
    the correctly rounded square root.
    """
    if n_points < 1 or n_planes < 1:
        raise ValueError("bound needs at least one point and one plane")
    qr = spec.q**spec.r
    return n_points * n_planes / qr + spec.q ** (2 * spec.r - 1) * math.sqrt(n_points * n_planes)


def incidence_bound_holds(
    incidences: int, n_points: int, n_planes: int, spec: RingSpec
) -> bool:
    """Whether incidences <= incidence_bound_rhs, settled exactly near ties.

    The float comparison decides except within relative 1e-6 of the bound,
    where the inequality L <= B*sqrt(A) is rechecked in exact integers as
    L^2 <= B^2 * A.
    """
    rhs = incidence_bound_rhs(n_points, n_planes, spec)
    if abs(rhs - incidences) > 1e-6 * max(1.0, abs(rhs)):
        return incidences <= rhs
    qr = spec.q**spec.r
    prod = n_points * n_planes
    lead = incidences * qr - prod
    if lead <= 0:
        return True
    scaled = spec.q ** (2 * spec.r - 1) * qr
    return lead * lead <= scaled * scaled * prod


def random_incidence_config(
    spec: RingSpec, n_points: int, n_planes: int, rng: random.Random
) -> IncidenceConfig:
    """Uniform distinct points of R^3 and distinct unit-normal planes.

    Requested counts are clamped to what the ring can host.
    """
    order = spec.order
    n_points = min(n_points, order**3)
    if n_points < 1 or n_planes < 1:
        raise ValueError("need at least one point and one plane")
    pts = {}
    for code in sample_without_replacement(order**3, n_points, rng):
        coords = []
        for _ in range(3):
            code, rem = code // order, code % order
            coords.append(spec.element(rem))
        pts[Point(coords)] = 1
    nonunits = order // spec.q
    available = (order**3 - nonunits**3) * order
    n_planes = min(n_planes, available)
    planes: dict[Plane, int] = {}
    while len(planes) < n_planes:
        code = rng.randrange(order**4)
        parts = []
        for _ in range(4):
            code, rem = code // order, code % order
            parts.append(spec.element(rem))
        if not any(c.is_unit() for c in parts[:3]):
            continue
        planes[Plane(parts[:3], parts[3])] = 1
    return IncidenceConfig(spec=spec, points=pts, planes=planes)
