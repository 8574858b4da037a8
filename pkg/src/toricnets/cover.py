"""Sheeted covers of the polygon with branch points and cuts.

The cover of the disk-model polygon is presented in a cut trivialization:
away from the branch cuts the r sheets are globally labelled 0..r-1, and
crossing a cut permutes labels by that cut's transposition.  A cut is a
polyline from its branch point (inside a single region) to the barycenter
of one boundary edge; its relative interior avoids all spokes, so sheet
labels are constant on every region minus its cut.

Rank-1 local systems are stored in the gauge where all transport weights
sit on the cuts: crossing cut k positively from the lower sheet of its
transposition multiplies by t_k, from the upper sheet by 1/t_k, and fixed
sheets are unaffected.  Every loop around a ramification point then has
holonomy 1 automatically, so the data descends to an honest local system
on the covering surface.  Moduli: (t_1, ..., t_B) modulo a common rescale,
which matches b_1 = B - 1 for a connected 2-fold cover.

Winding data for solitons is bookkept as an integer count of full tangent
turns; the sign convention is pinned by the branch-point consistency
identity (see ``toricnets.nonabelian``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import geom
from .errors import (CutEndpointNotBarycenter, CutHitsRay, InvalidPath,
                     NoSharedLift, OpenPath, OverlappingCuts, WrongCount,
                     ZeroHolonomy)


@dataclass(frozen=True)
class Cut:
    """Branch cut: polyline from a branch point to an edge barycenter."""
    branch_point: tuple       # rational point, first polyline vertex
    polyline: tuple           # tuple of points, [branch_point, ..., barycenter]
    transposition: tuple      # pair of swapped sheets (lo, hi)
    edge: int                 # index of the landed edge (= its dual ray)

    @property
    def lo(self):
        return min(self.transposition)

    @property
    def hi(self):
        return max(self.transposition)


@dataclass
class BranchCutLayout:
    branch_points: list       # list of points
    cuts: list                # list of Cut, one per branch point, same order


class SheetedSurface:
    """The r-sheeted branched cover in its cut trivialization."""

    def __init__(self, disk, layout: BranchCutLayout, r: int):
        self.disk = disk
        self.layout = layout
        self.r = int(r)
        self.cuts = list(layout.cuts)
        self.branch_points = list(layout.branch_points)
        self.cut_region = [
            disk.region_of_interior_point(c.branch_point) for c in self.cuts
        ]
        self.cut_at_edge = {}
        for k, c in enumerate(self.cuts):
            self.cut_at_edge.setdefault(c.edge, []).append(k)

    # -- topology ---------------------------------------------------------

    def sheet_orbits(self):
        """Connected components of the cover, as sheet-label orbits."""
        parent = list(range(self.r))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.cuts:
            a, b = find(c.transposition[0]), find(c.transposition[1])
            if a != b:
                parent[a] = b
        orbits = {}
        for s in range(self.r):
            orbits.setdefault(find(s), []).append(s)
        return list(orbits.values())

    def component_count(self):
        return len(self.sheet_orbits())

    def euler_characteristic(self):
        # chi = r * chi(disk) - sum over branch points of (r - #orbits(tau));
        # every transposition has deficiency exactly 1.
        return self.r - len(self.cuts)

    def apply_cut(self, k, sheet):
        a, b = self.cuts[k].transposition
        if sheet == a:
            return b
        if sheet == b:
            return a
        return sheet


def betti_one(cover: SheetedSurface) -> int:
    """First Betti number of the covering surface (with boundary)."""
    return cover.component_count() - cover.euler_characteristic()


def _validate_cut_geometry(disk, cut: Cut):
    poly = disk.polytope
    pts = list(cut.polyline)
    if len(pts) < 2:
        raise CutEndpointNotBarycenter("cut polyline needs two points")
    if pts[0] != tuple(cut.branch_point):
        raise CutEndpointNotBarycenter("cut must start at its branch point")
    end = pts[-1]
    target = poly.edge_barycenter(cut.edge)
    if end != target:
        raise CutEndpointNotBarycenter(
            f"cut ends at {end}, not at barycenter {target} of edge {cut.edge}")
    for p in pts[:-1]:
        if poly.contains(p) != 1:
            raise CutHitsRay(f"cut vertex {p} is not interior to the polygon")
    # Relative interior must avoid every spoke; contact with the landing
    # spoke is allowed exactly at the shared barycenter endpoint.
    for si in range(disk.fan.n):
        s1, s2 = disk.spoke(si)
        for j in range(len(pts) - 1):
            a, b = pts[j], pts[j + 1]
            if not geom.segments_cross(a, b, s1, s2):
                continue
            last = j == len(pts) - 2
            if last and si == cut.edge and geom.orient(s1, s2, a) != 0:
                # proper contact at the barycenter only
                continue
            raise CutHitsRay(
                f"cut segment {a}-{b} meets the spoke of ray {si}")


def build_cover(disk, layout: BranchCutLayout, r: int) -> SheetedSurface:
    """Assemble and validate the branched cover over the disk model."""
    if len(layout.cuts) != len(layout.branch_points):
        raise OverlappingCuts("one cut per branch point required")
    for c in layout.cuts:
        if not (0 <= c.transposition[0] < r and 0 <= c.transposition[1] < r
                and c.transposition[0] != c.transposition[1]):
            raise OverlappingCuts(
                f"cut transposition {c.transposition} is not a valid swap")
        _validate_cut_geometry(disk, c)
    for i, a in enumerate(layout.cuts):
        for b in layout.cuts[i + 1:]:
            if a.edge == b.edge:
                raise OverlappingCuts(
                    f"two cuts land on the barycenter of edge {a.edge}")
            if not geom.polyline_pairwise_disjoint(
                    list(a.polyline), list(b.polyline),
                    skip_shared_endpoints=False):
                raise OverlappingCuts("cut polylines intersect")
    cover = SheetedSurface(disk, layout, r)
    return cover


# -- paths and transport ----------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    kind: str        # 'spoke' | 'cut' | 'wall'
    index: int       # spoke/ray index, cut index, or wall index
    direction: int   # +1 right-to-left of the oriented curve, -1 reverse


@dataclass
class SurfacePath:
    """Combinatorial path on the cover.

    The path starts at a basepoint on a given sheet inside a given region
    and performs the listed crossings in order.  Sheet changes happen only
    at cut crossings (by the cut's transposition); region changes only at
    spoke crossings.  ``turns`` is the accumulated count of full tangent
    turns of the closed-up tangent loop, when the path carries one.
    """
    start_region: int
    start_sheet: int
    crossings: list = field(default_factory=list)
    turns: int | None = None

    def reversed(self, cover):
        rev = [Crossing(c.kind, c.index, -c.direction)
               for c in reversed(self.crossings)]
        region, sheet = self.states(cover)[-1]
        return SurfacePath(region, sheet, rev, self.turns)

    def concat(self, other, cover):
        if self.states(cover)[-1] != (other.start_region, other.start_sheet):
            raise InvalidPath("paths are not composable")
        turns = None
        if self.turns is not None and other.turns is not None:
            turns = self.turns + other.turns
        return SurfacePath(self.start_region, self.start_sheet,
                           list(self.crossings) + list(other.crossings), turns)

    def states(self, cover):
        n = cover.disk.fan.n
        states = [(self.start_region % n, self.start_sheet)]
        region, sheet = self.start_region % n, self.start_sheet
        for c in self.crossings:
            if c.kind == "spoke":
                expect = c.index % n if c.direction > 0 else (c.index - 1) % n
                if region != ((c.index - 1) % n if c.direction > 0 else c.index % n):
                    raise InvalidPath(
                        f"spoke {c.index} crossed from region {region}")
                region = expect
            elif c.kind == "cut":
                if not (0 <= c.index < len(cover.cuts)):
                    raise InvalidPath(f"unknown cut {c.index}")
                if region != cover.cut_region[c.index]:
                    raise InvalidPath(
                        f"cut {c.index} lives in region "
                        f"{cover.cut_region[c.index]}, path is in {region}")
                sheet = cover.apply_cut(c.index, sheet)
            elif c.kind == "wall":
                pass
            else:
                raise InvalidPath(f"unknown crossing kind {c.kind!r}")
            states.append((region, sheet))
        return states

    def is_closed(self, cover):
        states = self.states(cover)
        return states[0] == states[-1]


class RankOneLocalSystem:
    """Rank-1 local system in the cuts-carry-the-weights gauge."""

    def __init__(self, cover: SheetedSurface, cut_weights):
        if len(cut_weights) != len(cover.cuts):
            raise WrongCount("one weight per cut required")
        for w in cut_weights:
            if w == 0:
                raise ZeroHolonomy("cut weight must be invertible")
        self.cover = cover
        self.cut_weights = [Fraction(w) for w in cut_weights]

    def cut_crossing_weight(self, k, from_sheet, direction):
        """Scalar picked up crossing cut k from a given sheet.

        Positive crossings from the lower sheet of the transposition carry
        t_k, from the upper sheet 1/t_k; fixed sheets carry 1.  Reverse
        crossings are the inverses of the crossings they undo.
        """
        cut = self.cover.cuts[k]
        t = self.cut_weights[k]
        if direction > 0:
            if from_sheet == cut.lo:
                return t
            if from_sheet == cut.hi:
                return Fraction(1) / t
            return Fraction(1)
        # reverse of the positive crossing from apply_cut(from_sheet)
        src = self.cover.apply_cut(k, from_sheet)
        if src == cut.lo:
            return Fraction(1) / t
        if src == cut.hi:
            return t
        return Fraction(1)


def parallel_transport(ls: RankOneLocalSystem, path: SurfacePath):
    """Product of edge weights along the path (cuts are the only carriers)."""
    states = path.states(ls.cover)
    total = Fraction(1)
    for c, (region, sheet) in zip(path.crossings, states[:-1]):
        if c.kind == "cut":
            total *= ls.cut_crossing_weight(c.index, sheet, c.direction)
    return total


def make_local_system(cover: SheetedSurface, holonomies) -> RankOneLocalSystem:
    """Local system with prescribed holonomies on the generator loops.

    The k-th generator loop crosses cut k+1 positively and then cut 0
    positively (see ``generator_loops``); in the cut gauge with t_0 = 1 its
    holonomy is exactly t_{k+1}, so the weights are [1, h_1, ..., h_{b1}].
    """
    b1 = betti_one(cover)
    holonomies = [Fraction(h) for h in holonomies]
    if len(holonomies) != b1:
        raise WrongCount(f"need {b1} holonomies, got {len(holonomies)}")
    if any(h == 0 for h in holonomies):
        raise ZeroHolonomy("holonomies must be nonzero")
    if not cover.cuts:
        return RankOneLocalSystem(cover, [])
    weights = [Fraction(1)] + holonomies
    if len(weights) != len(cover.cuts):
        # disconnected or higher-rank covers fall outside the b1 = B - 1
        # bookkeeping; only the trivial system is supported there
        if b1 == 0:
            weights = [Fraction(1)] * len(cover.cuts)
        else:
            raise WrongCount(
                "generator-loop gauge needs a connected 2-fold cover")
    return RankOneLocalSystem(cover, weights)


def _spoke_run(cover, start_region, end_region):
    """Ccw spoke crossings leading from one region to another."""
    n = cover.disk.fan.n
    crossings = []
    region = start_region % n
    while region != end_region % n:
        nxt = (region + 1) % n
        crossings.append(Crossing("spoke", nxt, +1))
        region = nxt
    return crossings


def generator_loops(cover: SheetedSurface):
    """Loops whose holonomies coordinatize the local-system moduli.

    Loop k encircles branch points k+1 and 0: it crosses cut k+1
    positively from the lower sheet, walks ccw back to cut 0's region,
    crosses cut 0 positively, and returns.  Requires a connected 2-fold
    cover (the only case with more than one cut in this package).
    """
    loops = []
    if not cover.cuts:
        return loops
    for k in range(1, len(cover.cuts)):
        cut = cover.cuts[k]
        r_k = cover.cut_region[k]
        r_0 = cover.cut_region[0]
        crossings = [Crossing("cut", k, +1)]
        crossings += _spoke_run(cover, r_k, r_0)
        crossings.append(Crossing("cut", 0, +1))
        crossings += _spoke_run(cover, r_0, r_k)
        loops.append(SurfacePath(r_k, cut.lo, crossings, turns=0))
    return loops


def winding_sign(path: SurfacePath) -> int:
    """Parity sign (-1)^w of the path's tangent-loop turn count."""
    if path.turns is None:
        raise OpenPath("path carries no closed tangent-loop data")
    return -1 if path.turns % 2 else 1


def sheet_lift_map(tms, cover: SheetedSurface):
    """Match cover sheets with multi-section lifts, per region.

    Returns lift[(region, sheet)] = lifted-cone id, determined by sending
    sheet s over region 0 to the s-th listed lift and propagating ccw: the
    lifted-ray matching over ray i pairs the deep tail of (region i-1,
    sheet s) with the deep tail of (region i, tau_i(s)), where tau_i is the
    transposition of the cut landing at the barycenter of edge i (identity
    when there is none).  Raises NoSharedLift when the cut transpositions
    do not realize the multi-section's monodromy.
    """
    n = cover.disk.fan.n
    if tms.degree != cover.r:
        raise NoSharedLift(
            f"cover has {cover.r} sheets, multi-section degree {tms.degree}")

    def tau(i, sheet):
        for k in cover.cut_at_edge.get(i % n, []):
            sheet = cover.apply_cut(k, sheet)
        return sheet

    lift = {}
    base_lifts = tms.lifts_of_cone(0)
    for s in range(cover.r):
        lift[(0, s)] = base_lifts[s].id
    for i in range(1, n):
        match = tms.matching(i)
        for s in range(cover.r):
            prev = lift[(i - 1, s)]
            if prev not in match:
                raise NoSharedLift(f"no lifted ray over ray {i} from {prev}")
            lift[(i, tau(i, s))] = match[prev]
    # closure across ray 0
    match = tms.matching(0)
    for s in range(cover.r):
        prev = lift[(n - 1, s)]
        if match.get(prev) != lift[(0, tau(0, s))]:
            raise NoSharedLift(
                "cut transpositions do not realize the multi-section "
                f"monodromy (mismatch at ray 0, sheet {s})")
    return lift
