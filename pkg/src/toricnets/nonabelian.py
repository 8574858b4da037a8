"""Non-abelianization: from a rank-1 system on the cover to a Kaneyama cocycle.

All factors are r x r Laurent matrices acting target-from-source: entry
(row, col) = (target sheet, source sheet), with every monomial exponent of
the form m(lift at target) - m(lift at source).  A path-ordered product
multiplies later factors on the left, so the cocycle matrix G_{ij}
(product along the ccw boundary track from the vertex chamber of cone i to
that of cone j) composes as G_ki * G_jk * G_ij = Id over closed triangles.

Factor inventory, for a positive (right-to-left) crossing:

* spoke i: diagonal, entry (s, s) = z^(m(lift(i, s)) - m(lift(i-1, s))),
  the semi-flat part of the transition data;
* wall w with label (a, b), crossed in region R: unipotent
  Id + eps * lambda * z^(m(lift(R, b)) - m(lift(R, a))) E_{b a}, where
  lambda is the soliton's rank-1 transport and eps its winding sign;
* cut k: the signed monomial permutation forced by the branch-point
  consistency identity: the inverse of the ordered product of the three
  wall unipotents around the cut's branch point.

The last point pins the sign convention: winding counts are the ccw arm
positions after the cut, so the three wall factors carry signs +, -, +,
their product is anti-diagonal, and the loop around every branch point is
exactly the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geom
from .cover import parallel_transport, sheet_lift_map, winding_sign
from .errors import (LoopIdentityFailed, NonTransverseCrossing, NoSharedLift,
                     NotSupported, PathHitsJointRegion)
from .laurent import (LaurentMatrix, LaurentPoly, cocycle_check, mat_mul,
                      monomial_inverse, regular_on, is_invertible_on)
from .network import (boundary_loop, branch_point_arms, enumerate_solitons,
                      track_path)
from .reporting import ValidationReport


@dataclass(frozen=True)
class SemiflatFactor:
    ray: int
    matrix: LaurentMatrix


@dataclass(frozen=True)
class WallFactor:
    wall_id: int
    region: int
    matrix: LaurentMatrix


def _monomial(slope_to, slope_from):
    e = (slope_to[0] - slope_from[0], slope_to[1] - slope_from[1])
    return LaurentPoly.monomial(1, e)


def semiflat_factor(ray, tms, cover, ls, lift=None) -> SemiflatFactor:
    """Factor for the ccw crossing of the spoke of a ray.

    In the cut trivialization the crossing preserves sheets, so the matrix
    is diagonal with entries z^(m(lift(i, s)) - m(lift(i-1, s))); the
    underlying lifted cones share a lifted ray exactly when no cut lands
    on this spoke's barycenter, which is what makes the entries regular
    there.  Transports are 1 in the cuts-carry-weights gauge.
    """
    if lift is None:
        lift = sheet_lift_map(tms, cover)
    n = tms.fan.n
    i = ray % n
    r = cover.r
    rows = [[LaurentPoly.zero()] * r for _ in range(r)]
    for s in range(r):
        src = lift[((i - 1) % n, s)]
        dst = lift[(i, s)]
        rows[s][s] = _monomial(tms.slope(dst), tms.slope(src))
    return SemiflatFactor(i, LaurentMatrix(rows))


def wall_factor(wall, net, tms, cover, ls, region=None, solitons=None,
                lift=None) -> WallFactor:
    """Unipotent wall-crossing factor at a given region of the wall.

    Defaults to the wall's landing region (where boundary-track paths
    cross it).  The soliton list may be injected for experiments; by
    default it is enumerated from the network.
    """
    if lift is None:
        lift = sheet_lift_map(tms, cover)
    if wall.start_branch is None:
        raise NotSupported("joint-fed walls are outside this regime")
    if region is None:
        region = wall.end_cone
    if solitons is None:
        solitons = enumerate_solitons(net, cover, wall)
    r = cover.r
    m = LaurentMatrix.identity(r)
    for sol in solitons:
        path = sol.transport_path(cover)
        lam = parallel_transport(ls, path)
        eps = winding_sign(path)
        a, b = sol.source_sheet, sol.target_sheet
        term = _monomial(tms.slope(lift[(region, b)]),
                         tms.slope(lift[(region, a)])) * Fraction(eps * 1) * lam
        m = m.with_entry(b, a, m.entry(b, a) + term)
    return WallFactor(wall.id, region, m)


def cut_factor(k, net, tms, cover, ls, lift=None) -> LaurentMatrix:
    """Signed monomial permutation for the positive crossing of cut k.

    Defined as the inverse of the ordered product of the three wall
    factors around the cut's branch point, so the branch-point loop is the
    identity by construction; the result is asserted to be supported on
    the cut's transposition with the expected monomials.
    """
    if lift is None:
        lift = sheet_lift_map(tms, cover)
    region = cover.cut_region[k]
    arms = branch_point_arms(net, k)
    if len(arms) != 3:
        raise NotSupported(f"branch point {k} does not carry a Y-graph")
    product = LaurentMatrix.identity(cover.r)
    for w in arms:
        f = wall_factor(w, net, tms, cover, ls, region=region, lift=lift)
        product = mat_mul(f.matrix, product)
    c = monomial_inverse(product)
    cut = cover.cuts[k]
    for i in range(cover.r):
        for j in range(cover.r):
            expected_nonzero = i == cover.apply_cut(k, j) and i != j \
                or (i == j and i not in cut.transposition)
            entry = c.entry(i, j)
            assert entry.is_zero() != expected_nonzero, \
                f"cut factor of cut {k} has unexpected support at {(i, j)}"
    return c


def _factor_for(crossing, state_region, net, tms, cover, ls, lift, caches):
    kind, index, direction = crossing.kind, crossing.index, crossing.direction
    if direction not in (1, -1):
        raise NonTransverseCrossing(
            f"crossing of {kind} {index} with direction {direction}")
    if kind == "spoke":
        key = ("spoke", index % tms.fan.n)
        if key not in caches:
            caches[key] = semiflat_factor(index, tms, cover, ls, lift).matrix
    elif kind == "cut":
        key = ("cut", index)
        if key not in caches:
            caches[key] = cut_factor(index, net, tms, cover, ls, lift)
    elif kind == "wall":
        wall = next(w for w in net.walls if w.id == index)
        if wall.start_branch is None:
            raise PathHitsJointRegion(
                f"wall {index} is joint-fed; paths must avoid joint regions")
        key = ("wall", index, state_region)
        if key not in caches:
            caches[key] = wall_factor(wall, net, tms, cover, ls,
                                      region=state_region, lift=lift).matrix
    else:
        raise NonTransverseCrossing(f"unknown crossing kind {kind!r}")
    m = caches[key]
    if direction < 0:
        inv_key = key + ("inv",)
        if inv_key not in caches:
            caches[inv_key] = monomial_inverse(m)
        m = caches[inv_key]
    return m


def path_ordered(net, tms, cover, ls, path, lift=None,
                 caches=None) -> LaurentMatrix:
    """Ordered product of crossing factors along a surface path."""
    if lift is None:
        lift = sheet_lift_map(tms, cover)
    if caches is None:
        caches = {}
    for c in path.crossings:
        if c.direction not in (1, -1):
            raise NonTransverseCrossing(
                f"crossing of {c.kind} {c.index} with direction {c.direction}")
    states = path.states(cover)
    total = LaurentMatrix.identity(cover.r)
    for crossing, (region, _) in zip(path.crossings, states[:-1]):
        f = _factor_for(crossing, region, net, tms, cover, ls, lift, caches)
        total = mat_mul(f, total)
    return total


def branch_point_loop(net, cover, b) -> "SurfacePath":
    """Small ccw loop around branch point b, starting just after its cut."""
    from .cover import Crossing, SurfacePath

    region = cover.cut_region[b]
    arms = branch_point_arms(net, b)
    crossings = [Crossing("wall", w.id, +1) for w in arms]
    crossings.append(Crossing("cut", b, +1))
    return SurfacePath(region, 0, crossings, turns=1)


def loop_identity_check(net, tms, cover, ls, wall_factor_fn=None) -> bool:
    """Path-ordered products around all generator loops equal the identity.

    The fundamental group of the polygon minus the branch-point
    neighborhoods is generated by the small loop around each branch point
    together with the boundary-parallel loop; all must multiply to Id.
    ``wall_factor_fn`` may replace the wall factor (used to demonstrate
    that a flipped soliton sign breaks the identity).
    """
    lift = sheet_lift_map(tms, cover)
    caches = {}
    if wall_factor_fn is not None:
        for w in net.walls:
            for region in {w.end_cone} | {cover.cut_region[w.start_branch]}:
                caches[("wall", w.id, region)] = wall_factor_fn(
                    w, net, tms, cover, ls, region=region, lift=lift).matrix
    ident = LaurentMatrix.identity(cover.r)
    for b in range(len(cover.cuts)):
        loop = branch_point_loop(net, cover, b)
        if path_ordered(net, tms, cover, ls, loop, lift, caches) != ident:
            return False
    for base in range(tms.fan.n):
        loop = boundary_loop(net, cover, base, ccw=True)
        if path_ordered(net, tms, cover, ls, loop, lift, caches) != ident:
            return False
    return True


@dataclass
class KaneyamaCocycle:
    tms: object
    cover: object
    matrices: dict       # (i, j) -> LaurentMatrix, all ordered cone pairs

    def pair(self, i, j):
        return self.matrices[(i % self.tms.fan.n, j % self.tms.fan.n)]


def kaneyama_cocycle(net, tms, cover, ls) -> KaneyamaCocycle:
    """Transition matrices between all vertex chambers.

    G_{ij} is the path-ordered product along the ccw boundary track from
    the vertex chamber of cone i to that of cone j; the loop identities
    make this independent of the chosen representative path.
    """
    if not loop_identity_check(net, tms, cover, ls):
        raise LoopIdentityFailed("a generator loop is not the identity")
    lift = sheet_lift_map(tms, cover)
    caches = {}
    n = tms.fan.n
    matrices = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                matrices[(i, j)] = LaurentMatrix.identity(cover.r)
                continue
            p = track_path(net, cover, i, j, ccw=True)
            matrices[(i, j)] = path_ordered(net, tms, cover, ls, p, lift,
                                            caches)
    return KaneyamaCocycle(tms, cover, matrices)


def boundary_restriction(matrix: LaurentMatrix, ray_vector) -> LaurentMatrix:
    """Keep the terms whose exponents pair to zero with the ray.

    For a transition matrix over an adjacent cone pair this extracts the
    semi-flat monomial permutation (the restriction of the bundle to the
    toric boundary divisor of the shared ray).
    """
    rows = []
    for row in matrix.rows:
        out = []
        for p in row:
            kept = {e: c for e, c in p.terms.items()
                    if e[0] * ray_vector[0] + e[1] * ray_vector[1] == 0}
            out.append(LaurentPoly(kept))
        rows.append(out)
    return LaurentMatrix(rows)


def _recovered_slopes(coc: KaneyamaCocycle):
    """Slope vectors read back from the transition matrices.

    Every term of every entry of G_{ij} carries the exponent
    m(lift(j, row)) - m(lift(i, col)) (the z-twists telescope through all
    factors), so each nonzero entry pins one slope difference.  The
    remaining ambiguity is a translate per connected component of the
    cover, anchored at the input slope of one sheet per component.
    """
    tms, cover = coc.tms, coc.cover
    lift = sheet_lift_map(tms, cover)
    n = tms.fan.n
    r = cover.r
    rec = {}
    for comp in cover.sheet_orbits():
        s0 = min(comp)
        rec[(0, s0)] = tms.slope(lift[(0, s0)])
    edges = []
    for (i, j), m in coc.matrices.items():
        for row in range(r):
            for col in range(r):
                p = m.entry(row, col)
                if p.is_zero():
                    continue
                if not p.is_monomial():
                    raise NoSharedLift(
                        "transition entries must be scalar multiples of a "
                        "single monomial")
                _, e = p.monomial_parts()
                edges.append(((i, col), (j, row), e))
    for _ in range(2 * n + 2):
        progress = False
        for src, dst, e in edges:
            if src in rec and dst not in rec:
                rec[dst] = geom.add(rec[src], e)
                progress = True
            elif dst in rec and src not in rec:
                rec[src] = geom.sub(rec[dst], e)
                progress = True
        if not progress:
            break
    return rec


def verify_bundle(coc: KaneyamaCocycle, tms) -> ValidationReport:
    """Full verification sweep over a Kaneyama cocycle."""
    from .fans import ray_cone

    report = ValidationReport()
    fan = tms.fan
    n = fan.n
    r = coc.cover.r
    ident = LaurentMatrix.identity(r)
    for i in range(n):
        if coc.pair(i, i) != ident:
            report.add("identity", f"G_({i},{i}) is not the identity", i)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if mat_mul(coc.pair(i, j), coc.pair(j, i)) != ident:
                report.add("inverses", f"G_({i},{j}) G_({j},{i}) != Id", (i, j))
    for i in range(n):
        g = coc.pair((i - 1) % n, i)
        cone = ray_cone(i)
        if not regular_on(g, fan, cone):
            report.add("regularity",
                       f"G over the ray-{i} overlap has negative exponents", i)
            continue
        if not is_invertible_on(g, fan, cone):
            report.add("invertibility",
                       f"G over the ray-{i} overlap is not a unit there", i)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) != 3:
                    continue
                if not cocycle_check(coc.pair(k, i), coc.pair(j, k),
                                     coc.pair(i, j)):
                    report.add("cocycle",
                               f"triple ({i},{j},{k}) fails the cocycle "
                               "condition", (i, j, k))
    # tropicalization round-trip
    try:
        rec = _recovered_slopes(coc)
        lift = sheet_lift_map(tms, coc.cover)
        for i in range(n):
            got = sorted(rec.get((i, s)) for s in range(r))
            want = sorted(tms.slope(lift[(i, s)]) for s in range(r))
            if got != want:
                report.add("tropicalization",
                           f"recovered slopes {got} != input {want} "
                           f"over cone {i}", i)
    except NoSharedLift as exc:
        report.add("tropicalization", str(exc))
    return report


def boundary_restriction_equiv(c1: KaneyamaCocycle, c2: KaneyamaCocycle) -> bool:
    """Gauge equivalence of the boundary restrictions of two cocycles.

    True iff nonzero per-(cone, sheet) frame rescalings h make every
    semi-flat transport entry of c1 equal that of c2: the coefficient
    ratios force h along the support graph, and equivalence is exactly
    consistency of those ratios around cycles.
    """
    tms = c1.tms
    n = tms.fan.n
    r = c1.cover.r
    ratio_edges = []
    for i in range(n):
        v = tms.fan.ray(i)
        m1 = boundary_restriction(c1.pair((i - 1) % n, i), v)
        m2 = boundary_restriction(c2.pair((i - 1) % n, i), v)
        for row in range(r):
            for col in range(r):
                p1, p2 = m1.entry(row, col), m2.entry(row, col)
                if p1.is_zero() != p2.is_zero():
                    return False
                if p1.is_zero():
                    continue
                c1_, e1 = p1.monomial_parts()
                c2_, e2 = p2.monomial_parts()
                if e1 != e2:
                    return False
                # h[(i-1, col)] / h[(i, row)] = c2_/c1_
                ratio_edges.append((((i - 1) % n, col), (i, row),
                                    Fraction(c2_) / Fraction(c1_)))
    h = {}
    adj = {}
    for a, b, q in ratio_edges:
        adj.setdefault(a, []).append((b, q))
        adj.setdefault(b, []).append((a, Fraction(1) / q))
    for start in sorted(adj):
        if start in h:
            continue
        h[start] = Fraction(1)
        stack = [start]
        while stack:
            node = stack.pop()
            for other, q in adj[node]:
                # h[node] / h[other] = q
                val = h[node] / q
                if other in h:
                    if h[other] != val:
                        return False
                else:
                    h[other] = val
                    stack.append(other)
    return True
