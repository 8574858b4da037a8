"""Tropical Lagrangian multi-sections over a complete smooth fan.

A degree-r multi-section is a branched cover of the fan's cone complex,
ramified at most over the origin, together with an integral slope vector
per lifted maximal cone.  We store the lifted cones, the perfect matching
of lifts across every ray (the lifted rays), and the slopes; continuity
and separatedness are checkable equations:

  continuity     <m(lift) - m(matched lift), v_ray> == 0
  separatedness  the r values <m, v_ray> over a ray are pairwise distinct

For 2-fold covers the lifted maximal cones form either a single cycle of
length 2n (case O, connected double cover of the circle of directions) or
two disjoint n-cycles (case E).  The transverse intersection count N of
the two sheets of the support function is computed by counting sign
changes of the antipodal (O) or cross-sheet (E) value differences around
the cyclic ray sequence.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import geom
from .errors import NotTwoFold
from .reporting import ValidationReport


@dataclass(frozen=True)
class LiftedCone:
    id: str
    base: int            # index of the base maximal cone
    slope: tuple         # lattice vector in M

    def __post_init__(self):
        object.__setattr__(self, "slope",
                           (int(self.slope[0]), int(self.slope[1])))


@dataclass(frozen=True)
class LiftedRay:
    ray: int             # base ray index; links cones (ray-1) and (ray)
    src: str             # lift of maximal cone ray-1
    dst: str             # lift of maximal cone ray


@dataclass(frozen=True)
class CoverClass:
    tag: str             # 'O' or 'E'
    cycles: tuple        # cyclic sequences of lifted-cone ids


class TropicalMultiSection:
    def __init__(self, fan, degree, lifted_cones, lifted_rays):
        self.fan = fan
        self.degree = int(degree)
        self.lifted_cones = [LiftedCone(c.id, c.base, c.slope)
                             if isinstance(c, LiftedCone) else LiftedCone(*c)
                             for c in lifted_cones]
        self.lifted_rays = [r if isinstance(r, LiftedRay) else LiftedRay(*r)
                            for r in lifted_rays]
        self.by_id = {c.id: c for c in self.lifted_cones}

    def lifts_of_cone(self, i):
        return [c for c in self.lifted_cones if c.base == i % self.fan.n]

    def rays_over(self, i):
        return [r for r in self.lifted_rays if r.ray == i % self.fan.n]

    def slope(self, cone_id):
        return self.by_id[cone_id].slope

    def matching(self, i):
        """Lift matching across ray i as a dict src_id -> dst_id."""
        return {r.src: r.dst for r in self.rays_over(i)}

    def ray_value(self, lifted_ray: LiftedRay):
        """<m, v_ray> along a lifted ray (same for both adjacent lifts)."""
        v = self.fan.ray(lifted_ray.ray)
        return geom.dot(self.slope(lifted_ray.src), v)


def validate(tms: TropicalMultiSection) -> ValidationReport:
    """Check multiplicities, matchings, continuity, and separatedness."""
    report = ValidationReport()
    fan = tms.fan
    ids = [c.id for c in tms.lifted_cones]
    if len(set(ids)) != len(ids):
        report.add("structure", "duplicate lifted cone ids")
        return report
    for c in tms.lifted_cones:
        if not (0 <= c.base < fan.n):
            report.add("structure", f"lifted cone {c.id} over unknown cone {c.base}")
            return report
    for i in range(fan.n):
        if len(tms.lifts_of_cone(i)) != tms.degree:
            report.add("multiplicity",
                       f"cone {i} has {len(tms.lifts_of_cone(i))} lifts, "
                       f"expected {tms.degree}", i)
    for i in range(fan.n):
        over = tms.rays_over(i)
        srcs = [r.src for r in over]
        dsts = [r.dst for r in over]
        want_src = sorted(c.id for c in tms.lifts_of_cone(i - 1))
        want_dst = sorted(c.id for c in tms.lifts_of_cone(i))
        if sorted(srcs) != want_src or sorted(dsts) != want_dst:
            report.add("matching",
                       f"lifted rays over ray {i} are not a perfect matching", i)
            continue
        v = fan.ray(i)
        for r in over:
            diff = geom.sub(tms.slope(r.dst), tms.slope(r.src))
            if geom.dot(diff, v) != 0:
                report.add("continuity",
                           f"slopes across lifted ray {r.src}->{r.dst} "
                           f"pair to {geom.dot(diff, v)} with ray {i}", r)
        values = [tms.ray_value(r) for r in over]
        if len(set(values)) != len(values):
            report.add("separatedness",
                       f"ray {i} carries repeated slope values {values}", i)
    return report


def classify_two_fold(tms: TropicalMultiSection) -> CoverClass:
    """Case O (one lifted circle of length 2n) or E (two of length n)."""
    if tms.degree != 2:
        raise NotTwoFold(f"degree is {tms.degree}")
    rep = validate(tms)
    if not rep.ok:
        raise NotTwoFold(f"invalid multi-section: {rep}")
    succ = {}
    for i in range(tms.fan.n):
        for r in tms.rays_over(i):
            succ[r.src] = r.dst
    cycles = []
    seen = set()
    for c in tms.lifted_cones:
        if c.id in seen:
            continue
        cyc = [c.id]
        seen.add(c.id)
        nxt = succ[c.id]
        while nxt != c.id:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = succ[nxt]
        cycles.append(tuple(cyc))
    if len(cycles) == 1 and len(cycles[0]) == 2 * tms.fan.n:
        return CoverClass("O", tuple(cycles))
    if len(cycles) == 2 and all(len(c) == tms.fan.n for c in cycles):
        return CoverClass("E", tuple(cycles))
    raise NotTwoFold(f"unexpected lifted circle structure {cycles}")


def _cyclic_sign_changes(signs):
    n = len(signs)
    return sum(1 for i in range(n) if signs[i] != signs[(i + 1) % n])


def _lifted_ray_between(tms, a_id, b_id):
    for r in tms.lifted_rays:
        if r.src == a_id and r.dst == b_id:
            return r
    raise NotTwoFold(f"no lifted ray from {a_id} to {b_id}")


def n_genericity(tms: TropicalMultiSection) -> int:
    """Transverse intersection count N of the two sheet graphs.

    Case O: walk the single lifted circle; at each of the 2n lifted rays
    take d = (value here) - (value at the antipodal lifted ray); N is half
    the number of cyclic sign changes.  Case E: d = (value on circle 1) -
    (value on circle 2) over each of the n base rays; N is the number of
    cyclic sign changes.  Separatedness makes every d nonzero.
    """
    cls = classify_two_fold(tms)
    if cls.tag == "O":
        cyc = cls.cycles[0]
        n2 = len(cyc)
        values = []
        for k in range(n2):
            r = _lifted_ray_between(tms, cyc[k], cyc[(k + 1) % n2])
            values.append(tms.ray_value(r))
        half = n2 // 2
        diffs = [values[k] - values[(k + half) % n2] for k in range(n2)]
        assert all(d != 0 for d in diffs), "separatedness should forbid ties"
        changes = _cyclic_sign_changes([d > 0 for d in diffs])
        assert changes % 2 == 0
        return changes // 2
    c1, c2 = cls.cycles
    n = tms.fan.n
    diffs = []
    for i in range(n):
        over = tms.rays_over(i)
        val = {}
        for r in over:
            which = 1 if r.dst in c1 else 2
            val[which] = tms.ray_value(r)
        diffs.append(val[1] - val[2])
    assert all(d != 0 for d in diffs), "separatedness should forbid ties"
    return _cyclic_sign_changes([d > 0 for d in diffs])


def intersection_cones(tms: TropicalMultiSection):
    """Base maximal cones where the two sheet graphs cross.

    These are the cones whose two bounding lifted rays (along one lift)
    carry opposite d-signs; there are exactly N of them.
    """
    cls = classify_two_fold(tms)
    n = tms.fan.n
    if cls.tag == "O":
        cyc = cls.cycles[0]
        n2 = len(cyc)
        half = n2 // 2
        values = []
        for k in range(n2):
            r = _lifted_ray_between(tms, cyc[k], cyc[(k + 1) % n2])
            values.append((r.ray, tms.ray_value(r)))
        diffs = [values[k][1] - values[(k + half) % n2][1] for k in range(n2)]
        cones = []
        for k in range(n2):
            if (diffs[k] > 0) != (diffs[(k + 1) % n2] > 0):
                # flip happens inside the base cone between these rays
                cone = values[(k + 1) % n2][0] - 1
                cones.append(cone % n)
        return sorted(set(cones))
    c1, c2 = cls.cycles
    diffs = []
    for i in range(n):
        val = {}
        for r in tms.rays_over(i):
            which = 1 if r.dst in c1 else 2
            val[which] = tms.ray_value(r)
        diffs.append(val[1] - val[2])
    cones = []
    for i in range(n):
        if (diffs[i] > 0) != (diffs[(i + 1) % n] > 0):
            cones.append(i)
    return sorted(cones)


@dataclass(frozen=True)
class RealizabilityResult:
    parity_ok: bool
    realizable: bool
    betti_one: int | None


def parity_and_realizability(tms: TropicalMultiSection, n_value: int) -> RealizabilityResult:
    """Parity theorem check, N >= 3 realizability, and b_1 of the domain.

    For a realizable connected 2-fold multi-section the domain surface is a
    double cover of the disk with N-2 simple branch points, so chi = 4 - N
    and b_1 = N - 3.  Below the realizability threshold there is no such
    surface and b_1 is reported as None.
    """
    cls = classify_two_fold(tms)
    parity_ok = (n_value % 2 == 1) if cls.tag == "O" else (n_value % 2 == 0)
    realizable = n_value >= 3
    betti = n_value - 3 if realizable else None
    return RealizabilityResult(parity_ok, realizable, betti)
