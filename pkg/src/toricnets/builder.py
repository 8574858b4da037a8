"""Explicit construction of a spectral network for a 2-fold multi-section.

Let V_1 < ... < V_N be the maximal cones where the two sheet graphs cross.
The network consists of N-2 Y-graphs (one branch point, three boundary
walls, one cut each), nested as a left comb: the Y at nesting depth d is
anchored at vertex V_{N-1-d}; its first wall runs all the way back to the
half-edge before V_1, its second wall lands just before its anchor vertex,
its third wall just after, and its cut at the barycenter immediately after
that.  Between the first and second walls sits the entire next-deeper Y
(or, at the innermost level, the bare vertex V_1); between consecutive
arms the boundary label flips an odd number of times (vertices count one
flip each, cuts one each), which is exactly the alternation the wall
factors around a branch point need.

Geometry: every Y hangs at its own depth below the boundary (deeper for
outer Y-graphs); the long first arm travels as a polyline through
constant-depth waypoints over the quarter points of the boundary edges,
crossing spokes transversely, and descends at its target.  All placement
is exact; if the polygon is shaped so that some arms collide, all depths
are halved and the layout retried (the structure localizes toward the
boundary, so this terminates).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geom
from .cover import BranchCutLayout, Cut, build_cover, sheet_lift_map
from .errors import NotRealizable, ParityViolation, SlopeTie, ToricNetsError
from .multisection import (classify_two_fold, intersection_cones,
                           n_genericity, parity_and_realizability, validate)
from .network import (SpectralNetwork, Wall, branch_point_arms,
                      half_edge_of_boundary_point, validate_network)


@dataclass(frozen=True)
class HalfEdgeLabel:
    edge: int
    cone: int            # cone of the vertex endpoint
    label: tuple         # ordered sheet pair (a, b)


class BoundaryLabeling:
    """Labels of the 2n boundary half-edges, in ccw order."""

    def __init__(self, entries):
        self.entries = list(entries)

    def flip_count(self):
        labels = [e.label for e in self.entries]
        n = len(labels)
        return sum(1 for i in range(n) if labels[i] != labels[(i + 1) % n])

    def label_of(self, edge, cone):
        for e in self.entries:
            if e.edge == edge and e.cone == cone:
                return e.label
        raise KeyError((edge, cone))


def _edge_point(polytope, e, t):
    a, b = polytope.edge(e)
    return geom.lerp(a, b, t)


def _depth_point(disk, boundary_point, s):
    return geom.lerp(boundary_point, disk.center, s)


def _label_from_slopes(tms, lift, cone, edge):
    v = tms.fan.ray(edge)
    m0 = tms.slope(lift[(cone, 0)])
    m1 = tms.slope(lift[(cone, 1)])
    pairing = geom.dot(geom.sub(m1, m0), v)
    if pairing > 0:
        return (0, 1)
    if pairing < 0:
        return (1, 0)
    raise SlopeTie(
        f"zero slope pairing on edge {edge} at cone {cone}; "
        "input is not separated")


def boundary_labels(tms, polytope, layout=None) -> BoundaryLabeling:
    """Label every boundary half-edge by its soliton sheet pair.

    The label of a half-edge is the ordered sheet pair (a, b) with
    <m(b) - m(a), v_ray> > 0 computed through the sheet/lift matching of
    the cover; it flips at the N intersection-cone vertices and at every
    cut landing.  When no layout is supplied the canonical one produced by
    ``build_network`` is used.
    """
    from .fans import disk_model

    disk = disk_model(tms.fan, polytope)
    if layout is None:
        _, layout = build_network(tms, disk)
    cover = build_cover(disk, layout, tms.degree)
    lift = sheet_lift_map(tms, cover)
    entries = []
    n = tms.fan.n
    for e in range(n):
        entries.append(HalfEdgeLabel(
            e, (e - 1) % n, _label_from_slopes(tms, lift, (e - 1) % n, e)))
        entries.append(HalfEdgeLabel(
            e, e % n, _label_from_slopes(tms, lift, e % n, e)))
    return BoundaryLabeling(entries)


@dataclass
class _YPlan:
    depth_index: int
    anchor: int          # cone index of the anchor vertex
    w1_edge: int
    w1_t: Fraction
    w2_edge: int
    w3_edge: int
    cut_edge: int


def _plan(tms):
    vees = intersection_cones(tms)
    n_value = len(vees)
    count = n_value - 2
    plans = []
    for d in range(count):
        anchor = vees[n_value - 2 - d]
        plans.append(_YPlan(
            depth_index=d,
            anchor=anchor,
            w1_edge=vees[0],
            w1_t=Fraction(1, 2) + Fraction(d + 1, 4 * (count + 1)),
            w2_edge=anchor,
            w3_edge=(anchor + 1) % tms.fan.n,
            cut_edge=(anchor + 1) % tms.fan.n,
        ))
    return plans


def _quarter_points_cw(polytope, start_edge, start_t, end_edge, end_t):
    """Quarter points (edge, 1/4 or 3/4) walking cw from start to end.

    Returned in cw order, excluding the start longitude, including the end
    one.  Longitudes live on the cyclic coordinate edge_index + t mod n.
    """
    n = polytope.n
    start = start_edge + start_t
    end = end_edge + end_t

    def cw_dist(frm, to):
        return (frm - to) % n

    horizon = cw_dist(start, end)
    out = []
    for e in range(n):
        for t in (Fraction(1, 4), Fraction(3, 4)):
            d = cw_dist(start, e + t)
            if 0 < d <= horizon:
                out.append((d, e, t))
    out.sort()
    return [(e, t) for _, e, t in out]


def _build_geometry(tms, disk, plans, shrink):
    polytope = disk.polytope
    walls_raw = []   # (branch index, role, polyline, end edge)
    cuts = []
    branch_points = []
    base_depth = Fraction(1, 3) * shrink
    for p in plans:
        s = base_depth * Fraction(1, 2) ** p.depth_index
        q_long = _edge_point(polytope, p.w3_edge, Fraction(1, 4))
        b = _depth_point(disk, q_long, s)
        branch_points.append(b)
        w3 = (b, q_long)
        cut_target = polytope.edge_barycenter(p.cut_edge)
        cut_poly = (b, cut_target)
        w2_target = _edge_point(polytope, p.w2_edge, Fraction(3, 4))
        w2 = (b, w2_target)
        w1_target = _edge_point(polytope, p.w1_edge, p.w1_t)
        waypoints = _quarter_points_cw(
            polytope, p.w3_edge, Fraction(1, 4), p.w1_edge, Fraction(3, 4))
        pts = [b]
        for (e, t) in waypoints:
            pts.append(_depth_point(disk, _edge_point(polytope, e, t), s))
        pts.append(w1_target)
        w1 = tuple(pts)
        bi = p.depth_index
        walls_raw.append((bi, "w1", w1, p.w1_edge))
        walls_raw.append((bi, "w2", tuple(w2), p.w2_edge))
        walls_raw.append((bi, "w3", tuple(w3), p.w3_edge))
        cuts.append(Cut(b, cut_poly, (0, 1), p.cut_edge))
    return walls_raw, cuts, branch_points


def _geometry_clean(walls_raw, cuts, disk):
    """Exact pairwise-disjointness of all arms and cuts."""
    polylines = []
    for bi, _, poly, _ in walls_raw:
        polylines.append((bi, list(poly)))
    for bi, c in enumerate(cuts):
        polylines.append((bi, list(c.polyline)))
    for i in range(len(polylines)):
        for j in range(i + 1, len(polylines)):
            bi, pa = polylines[i]
            bj, pb = polylines[j]
            if not geom.polyline_pairwise_disjoint(
                    pa, pb, skip_shared_endpoints=(bi == bj)):
                return False
    # walls must stay inside the polygon except at their endpoint
    for _, _, poly, _ in walls_raw:
        for p in poly[:-1]:
            if disk.polytope.contains(p) != 1:
                return False
    return True


def empty_network(tms, disk):
    """Wall-free network for covers that need no walls (rank 1)."""
    layout = BranchCutLayout([], [])
    net = SpectralNetwork(tms.fan, disk.polytope, disk, [], layout)
    return net, layout


def build_network(tms, disk):
    """Run the rank-2 construction; returns (network, layout).

    The output network passes ``validate_network`` with an empty report
    and carries exactly N-2 branch points.  Rank-1 inputs take the
    degenerate wall-free path.
    """
    rep = validate(tms)
    if not rep.ok:
        raise NotRealizable(f"invalid multi-section: {rep}")
    if tms.degree == 1:
        return empty_network(tms, disk)
    classify_two_fold(tms)  # raises NotTwoFold for other degrees
    n_value = n_genericity(tms)
    result = parity_and_realizability(tms, n_value)
    if not result.parity_ok:
        raise ParityViolation(
            f"N = {n_value} has the wrong parity for this cover class")
    if not result.realizable:
        raise NotRealizable(f"N = {n_value} < 3 admits no embedded realization")

    plans = _plan(tms)
    shrink = Fraction(1)
    for _ in range(40):
        walls_raw, cuts, branch_points = _build_geometry(tms, disk, plans, shrink)
        if _geometry_clean(walls_raw, cuts, disk):
            break
        shrink /= 2
    else:
        raise ToricNetsError("could not place a collision-free layout")

    layout = BranchCutLayout(branch_points, cuts)
    cover = build_cover(disk, layout, tms.degree)
    lift = sheet_lift_map(tms, cover)

    walls = []
    for wid, (bi, role, poly, end_edge) in enumerate(walls_raw):
        he = half_edge_of_boundary_point(disk.polytope, poly[-1])
        assert he is not None and he[0] == end_edge
        cone = he[1]
        label = _label_from_slopes(tms, lift, cone, end_edge)
        walls.append(Wall(wid, poly, label, bi, end_edge, cone))

    net = SpectralNetwork(tms.fan, disk.polytope, disk, walls, layout)

    # Wall labels around every branch point must alternate; this is forced
    # by the flip structure, so a failure means the geometry is wrong.
    for bi in range(len(branch_points)):
        arms = branch_point_arms(net, bi)
        labels = [w.label for w in arms]
        assert len(labels) == 3 and labels[0] == labels[2] != labels[1], \
            f"branch point {bi} labels {labels} do not alternate"

    report = validate_network(net, tms, cover)
    if not report.ok:
        raise ToricNetsError(f"builder produced an invalid network: {report}")
    return net, layout
