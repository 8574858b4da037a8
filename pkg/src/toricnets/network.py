"""Spectral networks subordinate to a 2-fold multi-section.

Walls are oriented rational polylines from a branch point to the boundary
of the polygon; each carries an ordered sheet pair (a, b) meaning its
solitons travel from sheet a to sheet b.  The package works in the regime
where walls are pairwise disjoint (one Y-graph per branch point), which is
what the rank-2 construction produces; joint-fed walls are detected and
rejected rather than propagated.

The boundary-track machinery turns the ccw cyclic order of boundary
landings (wall endpoints, cut endpoints, spoke barycenters) into crossing
sequences for path-ordered products: a loop just inside the boundary
crosses exactly these curves in exactly this order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geom
from .cover import Crossing, SurfacePath
from .errors import NotSupported
from .reporting import ValidationReport


@dataclass(frozen=True)
class Wall:
    id: int
    polyline: tuple          # oriented, start -> end
    label: tuple             # (source sheet, target sheet), solitons a -> b
    start_branch: int | None  # branch point index, None for joint-fed walls
    end_edge: int            # polygon edge carrying the endpoint
    end_cone: int            # cone of the half-edge's vertex endpoint

    @property
    def start(self):
        return self.polyline[0]

    @property
    def end(self):
        return self.polyline[-1]


class SpectralNetwork:
    def __init__(self, fan, polytope, disk, walls, layout):
        self.fan = fan
        self.polytope = polytope
        self.disk = disk
        self.walls = list(walls)
        self.layout = layout

    @property
    def branch_points(self):
        return self.layout.branch_points

    @property
    def cuts(self):
        return self.layout.cuts

    def walls_of_branch(self, b):
        return [w for w in self.walls if w.start_branch == b]


# -- boundary positions ------------------------------------------------------

def edge_parameter(polytope, edge_index, point):
    """Exact parameter of a point on the polygon edge, or None."""
    a, b = polytope.edge(edge_index)
    d = geom.sub(b, a)
    w = geom.sub(point, a)
    if geom.cross(d, w) != 0:
        return None
    if d[0] != 0:
        t = Fraction(w[0], d[0])
    else:
        t = Fraction(w[1], d[1])
    if 0 <= t <= 1:
        return t
    return None


def boundary_position(polytope, point):
    """(edge, parameter) of a boundary point (vertices resolve to t=0)."""
    n = polytope.n
    for e in range(n):
        t = edge_parameter(polytope, e, point)
        if t is not None and t < 1:
            return (e, t)
    for e in range(n):
        t = edge_parameter(polytope, e, point)
        if t == 1:
            return ((e + 1) % n, Fraction(0))
    return None


def half_edge_of_boundary_point(polytope, point):
    """(edge, cone-of-vertex-endpoint) for a half-edge interior point.

    Returns None when the point is a vertex or a barycenter (not in the
    relative interior of any half-edge).
    """
    pos = boundary_position(polytope, point)
    if pos is None:
        return None
    e, t = pos
    if t == 0 or t == Fraction(1, 2):
        return None
    n = polytope.n
    cone = (e - 1) % n if t < Fraction(1, 2) else e % n
    return e, cone


@dataclass(frozen=True)
class TrackEvent:
    """One crossing of the near-boundary ccw track."""
    key: tuple               # (edge, t, tier) ccw sort key
    kind: str                # 'wall' | 'spoke' | 'cut'
    index: int
    region: int              # region in which the crossing happens (walls,
                             # cuts) or the ccw-target region (spokes)


def track_events(net: SpectralNetwork, cover):
    """All boundary-track crossings in ccw cyclic order.

    At a barycenter the order is: cut hugging from the earlier region,
    then the spoke, then a cut hugging from the later region.
    """
    n = net.fan.n
    events = []
    for w in net.walls:
        pos = boundary_position(net.polytope, w.end)
        if pos is None:
            raise NotSupported(f"wall {w.id} does not end on the boundary")
        e, t = pos
        events.append(TrackEvent((e, t, 1), "wall", w.id, w.end_cone))
    for k, cut in enumerate(cover.cuts):
        e = cut.edge
        region = cover.cut_region[k]
        if region == (e - 1) % n:
            tier = 0
        elif region == e % n:
            tier = 2
        else:
            raise NotSupported(
                f"cut {k} lands on edge {e} from non-adjacent region {region}")
        events.append(TrackEvent((e, Fraction(1, 2), tier), "cut", k, region))
    for e in range(n):
        events.append(TrackEvent((e, Fraction(1, 2), 1), "spoke", e, e % n))
    events.sort(key=lambda ev: ev.key)
    return events


def vertex_chamber_key(cone_index, n):
    """Track sort key of the basepoint at the polygon vertex of a cone."""
    return ((cone_index + 1) % n, Fraction(0), -1)


def _cyclic_slice(events, from_key, to_key):
    """Events strictly between two keys going ccw, in crossing order."""
    if from_key == to_key:
        return []
    if from_key < to_key:
        chosen = [ev for ev in events if from_key < ev.key < to_key]
    else:
        chosen = [ev for ev in events if ev.key > from_key or ev.key < to_key]
    return sorted(chosen, key=lambda ev: _ccw_from(ev.key, from_key))


def track_path(net: SpectralNetwork, cover, from_cone, to_cone, ccw=True,
               full_loops=0) -> SurfacePath:
    """Boundary-track path between two vertex chambers, as a SurfacePath.

    The path starts on sheet 0 at the basepoint near the vertex dual to
    ``from_cone`` and crosses everything the ccw (or cw) track crosses.
    ``full_loops`` prepends that many complete boundary loops.
    """
    n = net.fan.n
    events = track_events(net, cover)
    a = vertex_chamber_key(from_cone, n)
    b = vertex_chamber_key(to_cone, n)
    loop_ccw = sorted(events, key=lambda ev: _ccw_from(ev.key, a))
    if ccw:
        chosen = loop_ccw * full_loops + _cyclic_slice(events, a, b)
        crossings = [Crossing(ev.kind, ev.index, +1) for ev in chosen]
    else:
        segment = list(reversed(_cyclic_slice(events, b, a)))
        chosen = list(reversed(loop_ccw)) * full_loops + segment
        crossings = [Crossing(ev.kind, ev.index, -1) for ev in chosen]
    return SurfacePath(from_cone % n, 0, crossings)


def _ccw_from(key, base):
    """Sort key for ccw order starting just after ``base``."""
    return (0 if key > base else 1, key)


def boundary_loop(net: SpectralNetwork, cover, base_cone, ccw=True) -> SurfacePath:
    """Full boundary-parallel loop based at a vertex chamber."""
    n = net.fan.n
    events = track_events(net, cover)
    base = vertex_chamber_key(base_cone, n)
    ordered = sorted(events, key=lambda ev: _ccw_from(ev.key, base))
    if not ccw:
        ordered = list(reversed(ordered))
    d = +1 if ccw else -1
    crossings = [Crossing(ev.kind, ev.index, d) for ev in ordered]
    return SurfacePath(base_cone % n, 0, crossings)


# -- solitons ----------------------------------------------------------------

@dataclass(frozen=True)
class Soliton:
    wall_id: int
    source_sheet: int
    target_sheet: int
    branch_point: int
    cut_index: int
    turns: int               # full tangent turns of the closed-up loop

    def transport_path(self, cover) -> SurfacePath:
        region = cover.cut_region[self.cut_index]
        return SurfacePath(region, self.source_sheet,
                           [Crossing("cut", self.cut_index, +1)],
                           turns=self.turns)


def _initial_direction(polyline):
    return geom.sub(polyline[1], polyline[0])


def branch_point_arms(net: SpectralNetwork, b: int):
    """Walls of a branch point in ccw order starting after its cut.

    Returns the wall list; position j (0-based) in this list is the
    winding count of the wall's soliton, which fixes its sign.
    """
    walls = net.walls_of_branch(b)
    cut = net.cuts[b]
    arms = [("cut", None, _initial_direction(cut.polyline))]
    for w in walls:
        arms.append(("wall", w, _initial_direction(w.polyline)))
    dirs = [a[2] for a in arms]
    order = sorted(range(len(arms)), key=_AngleKey(dirs))
    arms = [arms[i] for i in order]
    cut_pos = next(i for i, a in enumerate(arms) if a[0] == "cut")
    rotated = arms[cut_pos + 1:] + arms[:cut_pos]
    return [a[1] for a in rotated]


class _AngleKey:
    """functools-free exact angular sort key via cmp emulation."""

    def __init__(self, dirs):
        self.dirs = dirs

    def __call__(self, i):
        return _AngleItem(self.dirs[i])


class _AngleItem:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return geom.angle_less(self.v, other.v)

    def __eq__(self, other):
        return not geom.angle_less(self.v, other.v) and \
            not geom.angle_less(other.v, self.v)


def walls_pairwise_disjoint(net: SpectralNetwork) -> bool:
    for i, a in enumerate(net.walls):
        for b in net.walls[i + 1:]:
            shared = a.start_branch is not None and a.start_branch == b.start_branch
            if not geom.polyline_pairwise_disjoint(
                    list(a.polyline), list(b.polyline),
                    skip_shared_endpoints=shared):
                return False
    return True


def enumerate_solitons(net: SpectralNetwork, cover, wall: Wall):
    """Soliton classes of a wall in the pairwise-disjoint regime.

    A wall emanating from a simple branch point carries exactly one
    soliton class: backward along the wall, through the ramification point
    (one positive crossing of the branch point's cut), and forward again.
    Its winding count is the wall's ccw position after the cut among the
    branch point's arms.
    """
    if wall.start_branch is None:
        raise NotSupported("joint-fed walls carry no computable solitons here")
    if not walls_pairwise_disjoint(net):
        raise NotSupported("soliton enumeration requires pairwise-disjoint walls")
    arms = branch_point_arms(net, wall.start_branch)
    try:
        j = next(i for i, w in enumerate(arms) if w.id == wall.id)
    except StopIteration:
        raise NotSupported(f"wall {wall.id} is not an arm of its branch point")
    a, b = wall.label
    return [Soliton(wall.id, a, b, wall.start_branch, wall.start_branch, j)]


# -- chambers ----------------------------------------------------------------

@dataclass(frozen=True)
class Chamber:
    id: int
    arcs: tuple              # ccw landing-gap indices on the boundary circle
    adjacent: tuple          # (other chamber id, wall id) pairs


def chambers(net: SpectralNetwork):
    """Closures of the components of the polygon minus the wall support.

    Valid in the pairwise-disjoint tripod regime: a point's chamber is
    determined by its zone relative to each tripod's three landings, so
    chambers are zone-profiles of boundary arcs.
    """
    if not net.walls:
        return [Chamber(0, (0,), ())]
    if not walls_pairwise_disjoint(net):
        raise NotSupported("chamber decomposition requires disjoint walls")
    landings = []
    for w in net.walls:
        e, t = boundary_position(net.polytope, w.end)
        landings.append(((e, t), w))
    landings.sort(key=lambda x: x[0])
    m = len(landings)
    tripods = {}
    for pos_idx, (_, w) in enumerate(landings):
        tripods.setdefault(w.start_branch, []).append(pos_idx)

    def zone(arc_idx, positions):
        # arc arc_idx sits between landings arc_idx and arc_idx+1 (cyclic);
        # find which gap of the sorted tripod positions contains it.
        ps = sorted(positions)
        for z in range(len(ps)):
            lo = ps[z]
            hi = ps[(z + 1) % len(ps)]
            if lo < hi:
                if lo <= arc_idx < hi:
                    return z
            else:
                if arc_idx >= lo or arc_idx < hi:
                    return z
        return 0

    profiles = {}
    for arc in range(m):
        prof = tuple(zone(arc, pos) for _, pos in sorted(tripods.items()))
        profiles.setdefault(prof, []).append(arc)
    ids = {prof: i for i, prof in enumerate(sorted(profiles))}
    adjacency = {i: set() for i in ids.values()}
    arc_prof = {}
    for prof, arcs in profiles.items():
        for a in arcs:
            arc_prof[a] = prof
    for a in range(m):
        b = (a + 1) % m
        pa, pb = arc_prof[a], arc_prof[b]
        if pa != pb:
            wall = landings[b][1]
            adjacency[ids[pa]].add((ids[pb], wall.id))
            adjacency[ids[pb]].add((ids[pa], wall.id))
    out = []
    for prof, arcs in sorted(profiles.items()):
        cid = ids[prof]
        out.append(Chamber(cid, tuple(sorted(arcs)),
                           tuple(sorted(adjacency[cid]))))
    return out


# -- validation ---------------------------------------------------------------

def _proper_crossing(a1, a2, b1, b2):
    """Segments cross transversely at a single interior-ish point."""
    d1 = geom.orient(b1, b2, a1)
    d2 = geom.orient(b1, b2, a2)
    d3 = geom.orient(a1, a2, b1)
    d4 = geom.orient(a1, a2, b2)
    return d1 * d2 < 0 and d3 * d4 < 0


def validate_network(net: SpectralNetwork, tms, cover) -> ValidationReport:
    """Check the six defining conditions of a subordinate network."""
    from .cover import sheet_lift_map

    report = ValidationReport()
    poly = net.polytope
    fan = net.fan
    n = fan.n

    for w in net.walls:
        # (1) interior in the open polygon, away from cuts, transverse to spokes
        for p in w.polyline[1:-1]:
            if poly.contains(p) != 1:
                report.add("1", f"wall {w.id} has a non-interior vertex", p)
        if poly.contains(w.start) != 1 and w.start_branch is not None:
            report.add("1", f"wall {w.id} starts outside the open polygon", w.start)
        for cut in net.cuts:
            if not geom.polyline_pairwise_disjoint(
                    list(w.polyline), list(cut.polyline),
                    skip_shared_endpoints=(w.start_branch is not None)):
                report.add("1", f"wall {w.id} meets a branch cut", w.id)
        for si in range(n):
            s1, s2 = net.disk.spoke(si)
            for j in range(len(w.polyline) - 1):
                a, b = w.polyline[j], w.polyline[j + 1]
                if geom.segments_cross(a, b, s1, s2) and \
                        not _proper_crossing(a, b, s1, s2):
                    report.add("1",
                               f"wall {w.id} meets the spoke of ray {si} "
                               "non-transversely", si)
        # (2) labels name two distinct sheets
        a, b = w.label
        if a == b or not (0 <= a < cover.r and 0 <= b < cover.r):
            report.add("2", f"wall {w.id} carries a bad label {w.label}")
        # (5) at most one branch point on the wall
        interior_hits = 0
        for bi, bp in enumerate(net.branch_points):
            for j in range(len(w.polyline) - 1):
                if geom.on_segment(bp, w.polyline[j], w.polyline[j + 1]):
                    if not (j == 0 and w.start_branch == bi and bp == w.start):
                        interior_hits += 1
        if interior_hits:
            report.add("5", f"wall {w.id} passes through a branch point")
        if w.start_branch is not None:
            if w.start != tuple(net.branch_points[w.start_branch]):
                report.add("5", f"wall {w.id} does not start at its branch point")

    # (3) interior endpoints must be branch points with the Y local model
    for w in net.walls:
        if w.start_branch is None and poly.contains(w.start) >= 0 \
                and poly.contains(w.start) == 1:
            report.add("3", f"wall {w.id} starts at an undeclared joint", w.start)
    for b in range(len(net.branch_points)):
        arms = net.walls_of_branch(b)
        if len(arms) != 3:
            report.add("3", f"branch point {b} has {len(arms)} walls, not 3", b)
    if not walls_pairwise_disjoint(net):
        report.add("3", "walls intersect away from branch points "
                        "(joint local models not realized here)")

    # (4) finiteness / local finiteness: a finite wall list with distinct ids
    ids = [w.id for w in net.walls]
    if len(set(ids)) != len(ids):
        report.add("4", "duplicate wall ids")

    # (6) boundary endpoints and the slope condition
    try:
        lift = sheet_lift_map(tms, cover)
    except Exception as exc:  # report, do not raise: validators collect
        report.add("6", f"sheet/lift matching failed: {exc}")
        lift = None
    for w in net.walls:
        he = half_edge_of_boundary_point(poly, w.end)
        if he is None:
            report.add("6",
                       f"wall {w.id} endpoint is not in the relative interior "
                       "of a boundary half-edge", w.end)
            continue
        e, cone = he
        if (e, cone) != (w.end_edge, w.end_cone):
            report.add("6", f"wall {w.id} endpoint data disagrees with geometry",
                       (e, cone))
            continue
        if lift is not None:
            a, b = w.label
            ma = tms.slope(lift[(cone, a)])
            mb = tms.slope(lift[(cone, b)])
            v = fan.ray(e)
            pairing = geom.dot(geom.sub(mb, ma), v)
            if pairing < 0:
                report.add("6",
                           f"wall {w.id} label {w.label} violates the slope "
                           f"condition on ray {e} (pairing {pairing})", w.id)
            elif pairing == 0:
                report.add("6",
                           f"wall {w.id} label pairs to zero on ray {e} "
                           "(separatedness should forbid this)", w.id)
    # branch points must sit strictly inside maximal-cone regions
    for bi, bp in enumerate(net.branch_points):
        try:
            net.disk.region_of_interior_point(bp)
        except Exception:
            report.add("1", f"branch point {bi} is not interior to a region", bp)
    return report
