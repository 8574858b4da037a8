"""Complete smooth fans in the plane and their dual polytopes.

A fan is given by its cyclically ordered primitive ray generators; maximal
cone ``i`` is spanned by rays ``i`` and ``i+1 (mod n)``.  A strictly convex
support function turns the fan into a lattice polygon whose vertices are
dual to the maximal cones and whose edges are dual to the rays.  On top of
the polygon we keep the first barycentric decomposition of its boundary and
a "disk model": straight segments from the barycenter of the polygon to the
edge midpoints, one per ray, cutting the polygon into one region per
maximal cone.

All coordinates are exact rationals (gcd-reduced Fractions); incidence
tests are therefore exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geom
from .errors import (NonPrimitiveRay, NotComplete, NotSmooth,
                     NotStrictlyConvex, UnknownCone)

ZERO_CONE = ("zero",)


def ray_cone(i):
    return ("ray", i)


def max_cone(i):
    return ("max", i)


class Fan:
    """A complete smooth fan in Z^2.

    Rays are primitive integer vectors listed in strict counterclockwise
    cyclic order.  Maximal cone ``i`` is cone(v_i, v_{i+1 mod n}); the
    shared ray of maximal cones ``i-1`` and ``i`` is ray ``i``.
    """

    def __init__(self, rays):
        self.rays = [tuple(int(c) for c in v) for v in rays]
        self.n = len(self.rays)

    def ray(self, i):
        return self.rays[i % self.n]

    def max_cone_rays(self, i):
        """Generators (v_i, v_{i+1}) of maximal cone i."""
        return (self.rays[i % self.n], self.rays[(i + 1) % self.n])

    def cone_generators(self, cone):
        """Generators of a cone reference ('zero',) | ('ray', i) | ('max', i)."""
        kind = cone[0]
        if kind == "zero":
            return ()
        if kind == "ray":
            if not (0 <= cone[1] < self.n):
                raise UnknownCone(f"ray index {cone[1]} out of range")
            return (self.rays[cone[1]],)
        if kind == "max":
            if not (0 <= cone[1] < self.n):
                raise UnknownCone(f"maximal cone index {cone[1]} out of range")
            return self.max_cone_rays(cone[1])
        raise UnknownCone(f"unknown cone reference {cone!r}")

    def max_cones(self):
        return [max_cone(i) for i in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, Fan) and self.rays == other.rays

    def __repr__(self):
        return f"Fan({self.rays})"


def make_fan(rays) -> Fan:
    """Build a complete smooth fan from cyclically ordered primitive rays.

    The given order is verified, never re-sorted: downstream labels index
    cones by position in this list.
    """
    if not rays:
        raise NotComplete("empty ray list")
    rays = [tuple(int(c) for c in v) for v in rays]
    for v in rays:
        if not geom.is_primitive(v):
            raise NonPrimitiveRay(f"ray {v} is not primitive")
    if len(set(rays)) != len(rays):
        raise NotComplete("duplicate ray directions")
    n = len(rays)
    if n < 3:
        raise NotComplete("a complete fan in the plane needs at least 3 rays")
    # Each consecutive gap must be a strictly convex cone (det > 0) and the
    # sequence must wrap around the circle exactly once: exactly one descent
    # with respect to the exact angular order.
    descents = 0
    for i in range(n):
        a, b = rays[i], rays[(i + 1) % n]
        d = geom.cross(a, b)
        if d <= 0:
            raise NotComplete(
                f"rays {a} -> {b} do not bound a convex cone in ccw order")
        if not geom.angle_less(a, b):
            descents += 1
    if descents != 1:
        raise NotComplete("ray directions wrap the circle more than once")
    for i in range(n):
        a, b = rays[i], rays[(i + 1) % n]
        if geom.cross(a, b) != 1:
            raise NotSmooth(
                f"cone ({a}, {b}) has determinant {geom.cross(a, b)} != 1")
    return Fan(rays)


class SupportFunction:
    """Integer values of a strictly convex support function, one per ray."""

    def __init__(self, fan: Fan, values):
        if len(values) != fan.n:
            raise NotStrictlyConvex("one value per ray required")
        self.fan = fan
        self.values = [int(v) for v in values]

    def __getitem__(self, i):
        return self.values[i % self.fan.n]


def _vertex_for_cone(fan: Fan, phi: SupportFunction, i):
    """Solve <x, v_i> = phi_i, <x, v_{i+1}> = phi_{i+1} (unimodular system)."""
    v1 = fan.ray(i)
    v2 = fan.ray(i + 1)
    det = geom.cross(v1, v2)  # == 1 for a smooth fan
    a, b = phi[i], phi[i + 1]
    x = Fraction(a * v2[1] - b * v1[1], det)
    y = Fraction(b * v1[0] - a * v2[0], det)
    return (x, y)


@dataclass(frozen=True)
class BarCell:
    """A cell of the first barycentric decomposition of the boundary.

    kind is one of 'vertex', 'barycenter', 'half-edge'.  For half-edges,
    ``vertex_index`` is the polygon vertex endpoint and ``points`` runs from
    that vertex to the barycenter; ``edge`` is the carrier edge (= dual ray
    index) for barycenters and half-edges.
    """
    kind: str
    edge: int | None
    vertex_index: int | None
    points: tuple


class Polytope:
    """The lattice polygon dual to (fan, support function).

    Vertex ``i`` is dual to maximal cone ``i``; the edge from vertex
    ``i-1`` to vertex ``i`` is dual to ray ``i``.  Vertices are in ccw
    order because the fan's rays are.
    """

    def __init__(self, fan: Fan, phi: SupportFunction, vertices):
        self.fan = fan
        self.phi = phi
        self.vertices = vertices
        self.n = len(vertices)

    def vertex(self, i):
        return self.vertices[i % self.n]

    def edge(self, i):
        """Endpoints of the edge dual to ray i: (vertex i-1, vertex i)."""
        return (self.vertices[(i - 1) % self.n], self.vertices[i % self.n])

    def edge_barycenter(self, i):
        a, b = self.edge(i)
        return geom.midpoint(a, b)

    def barycenter(self):
        return geom.polygon_barycenter(self.vertices)

    def contains(self, p):
        """1 interior, 0 boundary, -1 outside."""
        return geom.point_in_convex_polygon(p, self.vertices)

    def __repr__(self):
        return f"Polytope({self.vertices})"


def dual_polytope(fan: Fan, phi: SupportFunction) -> Polytope:
    """Polygon {x : <x, v_rho> >= phi(v_rho)} with its dual-cell structure.

    Strict convexity of phi is checked on every consecutive ray triple; it
    is exactly the condition for the vertex map cone -> vertex to be
    injective with edges of positive length.
    """
    if phi.fan is not fan and phi.fan != fan:
        raise NotStrictlyConvex("support function belongs to another fan")
    n = fan.n
    for i in range(n):
        m = _vertex_for_cone(fan, phi, i)
        v3 = fan.ray(i + 2)
        if geom.dot(m, v3) <= phi[i + 2]:
            raise NotStrictlyConvex(
                f"support function is not strictly convex across ray {(i + 2) % n}")
    vertices = [_vertex_for_cone(fan, phi, i) for i in range(n)]
    poly = Polytope(fan, phi, vertices)
    # Half-space/vertex consistency (cheap and worth asserting on build).
    for x in vertices:
        for j in range(n):
            assert geom.dot(x, fan.ray(j)) >= phi[j]
    return poly


def dual_cell(polytope: Polytope, cone):
    """Face of the polygon dual to a cone of its fan.

    Maximal cone -> vertex (a 1-point tuple), ray -> edge endpoints,
    zero cone -> all vertices.
    """
    fan = polytope.fan
    kind = cone[0]
    if kind == "zero":
        return tuple(polytope.vertices)
    if kind == "max":
        fan.cone_generators(cone)
        return (polytope.vertex(cone[1]),)
    if kind == "ray":
        fan.cone_generators(cone)
        return polytope.edge(cone[1])
    raise UnknownCone(f"unknown cone reference {cone!r}")


def barycentric_boundary(polytope: Polytope):
    """Cells of the first barycentric decomposition of the boundary.

    Each edge contributes its barycenter point and two closed half-edges,
    each half-edge remembering its polygon-vertex endpoint and carrier
    edge.  Order: for each edge i (ccw), [vertex i-1 point, half-edge from
    vertex i-1, barycenter, half-edge from vertex i].
    """
    cells = []
    n = polytope.n
    for i in range(n):
        a, b = polytope.edge(i)  # a = vertex i-1, b = vertex i
        mid = polytope.edge_barycenter(i)
        vi = (i - 1) % n
        cells.append(BarCell("vertex", None, vi, (a,)))
        cells.append(BarCell("half-edge", i, vi, (a, mid)))
        cells.append(BarCell("barycenter", i, None, (mid,)))
        cells.append(BarCell("half-edge", i, i % n, (polytope.vertex(i), mid)))
    # each vertex appears as the endpoint of two edges: keep one cell
    out, seen = [], set()
    for c in cells:
        if c.kind == "vertex":
            if c.vertex_index in seen:
                continue
            seen.add(c.vertex_index)
        out.append(c)
    return out


def _direction_in_sector(a, b, d):
    """Is direction d in the closed ccw sector from a to b?

    Handles sectors wider than pi (reflex at the center): those are the
    complements of the open opposite sector.
    """
    o = geom.cross(a, b)
    if o > 0:
        return geom.cross(a, d) >= 0 and geom.cross(d, b) >= 0
    if o < 0:
        return not (geom.cross(b, d) > 0 and geom.cross(d, a) > 0)
    # a and b opposite: the sector is the closed half-plane ccw of a
    return geom.cross(a, d) >= 0


class DiskModel:
    """Combinatorial stand-in for the Legendre transform picture.

    The polygon plays the role of the compactified plane; the segment from
    the polygon barycenter to the midpoint of the edge dual to ray ``rho``
    plays the role of the image of ``rho``.  Region ``i`` (for maximal cone
    ``i``) is the quadrilateral (center, midpoint_i, vertex_i,
    midpoint_{i+1}).
    """

    def __init__(self, fan: Fan, polytope: Polytope):
        self.fan = fan
        self.polytope = polytope
        self.center = polytope.barycenter()
        self.ray_segments = {
            i: (self.center, polytope.edge_barycenter(i)) for i in range(fan.n)
        }

    def spoke(self, i):
        return self.ray_segments[i % self.fan.n]

    def region_polygon(self, i):
        """Ccw quadrilateral of region i."""
        p = self.polytope
        return (self.center, p.edge_barycenter(i), p.vertex(i),
                p.edge_barycenter(i + 1))

    def region_count(self):
        return self.fan.n

    def locate(self, point):
        """Region membership of a point of the polygon.

        Returns (regions, on_polytope_boundary): the list of region indices
        whose closed region contains the point (two or more exactly when the
        point sits on a spoke or at the center), plus a boundary flag.
        """
        where = self.polytope.contains(point)
        if where < 0:
            return [], False
        on_boundary = where == 0
        c = self.center
        if point == c:
            return list(range(self.fan.n)), on_boundary
        regions = []
        d = geom.sub(point, c)
        for i in range(self.fan.n):
            a = geom.sub(self.polytope.edge_barycenter(i), c)
            b = geom.sub(self.polytope.edge_barycenter(i + 1), c)
            if _direction_in_sector(a, b, d):
                regions.append(i)
        return regions, on_boundary

    def region_of_interior_point(self, point):
        """The unique region containing an interior, off-spoke point."""
        regions, on_boundary = self.locate(point)
        if len(regions) != 1:
            raise UnknownCone(
                f"point {point} is not interior to a unique region")
        return regions[0]


def disk_model(fan: Fan, polytope: Polytope) -> DiskModel:
    return DiskModel(fan, polytope)
