"""Exact planar geometry helpers.

Points are pairs of ``Fraction``; lattice vectors are pairs of ``int``.
Everything here is a pure predicate or constructor on those tuples, so the
rest of the package never touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Point = tuple  # (Fraction, Fraction)
IVec = tuple   # (int, int)


def frac_point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def is_primitive(v: IVec) -> bool:
    x, y = v
    return (x, y) != (0, 0) and gcd(abs(x), abs(y)) == 1


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def sub(a, b) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a, b) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a, t) -> Point:
    return (a[0] * t, a[1] * t)


def lerp(a, b, t) -> Point:
    """Point a + t*(b-a) with exact rational t."""
    t = Fraction(t)
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def midpoint(a, b) -> Point:
    return lerp(a, b, Fraction(1, 2))


def rot90(v):
    """Counterclockwise quarter turn; maps ray generator to its perp."""
    return (-v[1], v[0])


def angular_half(v) -> int:
    """0 for the upper half-plane (incl. positive x-axis), 1 for the lower."""
    x, y = v
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def angle_less(a, b) -> bool:
    """Strict comparison of directions by angle in [0, 2*pi)."""
    ha, hb = angular_half(a), angular_half(b)
    if ha != hb:
        return ha < hb
    return cross(a, b) > 0


def orient(a, b, c):
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    s = cross(sub(b, a), sub(c, a))
    return (s > 0) - (s < 0)


def on_segment(p, a, b) -> bool:
    """True iff p lies on the closed segment [a, b]."""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_cross(p1, p2, q1, q2) -> bool:
    """True iff closed segments [p1,p2], [q1,q2] share at least one point."""
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
            and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
        return True
    if d1 == 0 and on_segment(p1, q1, q2):
        return True
    if d2 == 0 and on_segment(p2, q1, q2):
        return True
    if d3 == 0 and on_segment(q1, p1, p2):
        return True
    if d4 == 0 and on_segment(q2, p1, p2):
        return True
    return False


def segment_intersection_param(p1, p2, q1, q2):
    """Parameters (s, t) with p1+s*(p2-p1) == q1+t*(q2-q1), or None.

    Only proper (non-parallel) intersections are reported; s, t are exact
    Fractions, unrestricted to [0, 1].
    """
    d = sub(p2, p1)
    e = sub(q2, q1)
    den = cross(d, e)
    if den == 0:
        return None
    w = sub(q1, p1)
    s = Fraction(cross(w, e), den)
    t = Fraction(cross(w, d), den)
    return s, t


def polyline_pairwise_disjoint(poly_a, poly_b, skip_shared_endpoints=True) -> bool:
    """True iff two polylines have disjoint images.

    With ``skip_shared_endpoints`` a single common endpoint of the two
    polylines is tolerated (arms meeting at a branch point).
    """
    shared = set()
    if skip_shared_endpoints:
        ends_a = {poly_a[0], poly_a[-1]}
        ends_b = {poly_b[0], poly_b[-1]}
        shared = ends_a & ends_b
    for i in range(len(poly_a) - 1):
        for j in range(len(poly_b) - 1):
            a1, a2 = poly_a[i], poly_a[i + 1]
            b1, b2 = poly_b[j], poly_b[j + 1]
            if not segments_cross(a1, a2, b1, b2):
                continue
            # Tolerate contact that is exactly one shared endpoint.
            contact_ok = False
            for s in shared:
                if (s in (a1, a2)) and (s in (b1, b2)):
                    # Make sure the two segments only touch at s.
                    others = [p for p in (a1, a2) if p != s] + \
                             [p for p in (b1, b2) if p != s]
                    if all(not on_segment(o, b1, b2) or o == s for o in others[:1]) \
                       and all(not on_segment(o, a1, a2) or o == s for o in others[1:]):
                        contact_ok = True
            if not contact_ok:
                return False
    return True


def point_in_convex_polygon(p, vertices):
    """Location of p in a ccw convex polygon: 1 inside, 0 boundary, -1 outside."""
    n = len(vertices)
    on_edge = False
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        o = orient(a, b, p)
        if o < 0:
            return -1
        if o == 0 and on_segment(p, a, b):
            on_edge = True
    return 0 if on_edge else 1


def polygon_barycenter(vertices) -> Point:
    n = len(vertices)
    sx = sum((v[0] for v in vertices), Fraction(0))
    sy = sum((v[1] for v in vertices), Fraction(0))
    return (sx / n, sy / n)
