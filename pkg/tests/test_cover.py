from fractions import Fraction

import pytest

from toricnets.cover import (BranchCutLayout, Crossing, Cut, SurfacePath,
                             betti_one, build_cover, generator_loops,
                             make_local_system, parallel_transport,
                             sheet_lift_map, winding_sign)
from toricnets.errors import (CutEndpointNotBarycenter, CutHitsRay,
                              InvalidPath, NoSharedLift, OpenPath,
                              OverlappingCuts, WrongCount, ZeroHolonomy)
from toricnets.fans import SupportFunction, disk_model, dual_polytope, make_fan
from toricnets.geom import lerp


def p1p1_disk():
    fan = make_fan([(1, 0), (0, 1), (-1, 0), (0, -1)])
    poly = dual_polytope(fan, SupportFunction(fan, [-1, -1, -1, -1]))
    return fan, poly, disk_model(fan, poly)


def straight_cut(disk, region, edge, depth=Fraction(1, 4)):
    """Cut hanging below the landing barycenter of its region."""
    poly = disk.polytope
    target = poly.edge_barycenter(edge)
    anchor = lerp(poly.vertex(region), target, Fraction(1, 2))
    b = lerp(anchor, disk.center, depth)
    return Cut(b, (b, target), (0, 1), edge)


def test_single_branch_point_cover():
    fan, poly, disk = p1p1_disk()
    cut = straight_cut(disk, 0, 1)
    cover = build_cover(disk, BranchCutLayout([cut.branch_point], [cut]), 2)
    assert cover.component_count() == 1
    assert betti_one(cover) == 0


def test_two_branch_points_cover():
    fan, poly, disk = p1p1_disk()
    c1 = straight_cut(disk, 0, 1)
    c2 = straight_cut(disk, 2, 3)
    cover = build_cover(disk,
                        BranchCutLayout([c1.branch_point, c2.branch_point],
                                        [c1, c2]), 2)
    assert cover.component_count() == 1
    assert betti_one(cover) == 1


def test_three_branch_points_cover():
    fan, poly, disk = p1p1_disk()
    cuts = [straight_cut(disk, 0, 1), straight_cut(disk, 1, 2),
            straight_cut(disk, 2, 3)]
    cover = build_cover(disk,
                        BranchCutLayout([c.branch_point for c in cuts], cuts),
                        2)
    assert betti_one(cover) == 2


def test_no_branch_points_splits():
    fan, poly, disk = p1p1_disk()
    cover = build_cover(disk, BranchCutLayout([], []), 2)
    assert cover.component_count() == 2
    assert betti_one(cover) == 0


def test_cut_must_end_at_barycenter():
    fan, poly, disk = p1p1_disk()
    target = lerp(*poly.edge(1), Fraction(1, 3))
    b = lerp(target, disk.center, Fraction(1, 4))
    cut = Cut(b, (b, target), (0, 1), 1)
    with pytest.raises(CutEndpointNotBarycenter):
        build_cover(disk, BranchCutLayout([b], [cut]), 2)


def test_cut_may_not_cross_a_spoke():
    fan, poly, disk = p1p1_disk()
    # from inside region 2 straight to the barycenter of edge 1: crosses
    # the spoke of ray 2
    target = poly.edge_barycenter(1)
    b = lerp(poly.vertex(2), disk.center, Fraction(1, 4))
    cut = Cut(b, (b, target), (0, 1), 1)
    with pytest.raises(CutHitsRay):
        build_cover(disk, BranchCutLayout([b], [cut]), 2)


def test_cuts_may_not_share_a_barycenter():
    fan, poly, disk = p1p1_disk()
    c1 = straight_cut(disk, 0, 1)
    c2 = straight_cut(disk, 1, 1)
    with pytest.raises(OverlappingCuts):
        build_cover(disk, BranchCutLayout([c1.branch_point, c2.branch_point],
                                          [c1, c2]), 2)


def two_cut_cover():
    fan, poly, disk = p1p1_disk()
    c1 = straight_cut(disk, 0, 1)
    c2 = straight_cut(disk, 2, 3)
    return build_cover(disk,
                       BranchCutLayout([c1.branch_point, c2.branch_point],
                                       [c1, c2]), 2)


def test_transport_constant_path_is_one():
    cover = two_cut_cover()
    ls = make_local_system(cover, [Fraction(5)])
    path = SurfacePath(0, 0, [])
    assert parallel_transport(ls, path) == 1


def test_transport_reversal_inverts():
    cover = two_cut_cover()
    ls = make_local_system(cover, [Fraction(5)])
    path = SurfacePath(0, 0, [Crossing("cut", 0, +1),
                              Crossing("spoke", 1, +1),
                              Crossing("spoke", 2, +1),
                              Crossing("cut", 1, +1)])
    there = parallel_transport(ls, path)
    back = parallel_transport(ls, path.reversed(cover))
    assert there * back == 1
    loop = path.concat(path.reversed(cover), cover)
    assert parallel_transport(ls, loop) == 1


def test_generator_loop_holonomy():
    cover = two_cut_cover()
    ls = make_local_system(cover, [Fraction(5)])
    loops = generator_loops(cover)
    assert len(loops) == 1
    assert loops[0].is_closed(cover)
    assert parallel_transport(ls, loops[0]) == 5


def test_make_local_system_errors():
    cover = two_cut_cover()
    with pytest.raises(WrongCount):
        make_local_system(cover, [])
    with pytest.raises(WrongCount):
        make_local_system(cover, [Fraction(1), Fraction(2)])
    with pytest.raises(ZeroHolonomy):
        make_local_system(cover, [0])


def test_trivial_local_system_on_trivial_cover():
    fan, poly, disk = p1p1_disk()
    cover = build_cover(disk, BranchCutLayout([], []), 2)
    ls = make_local_system(cover, [])
    assert parallel_transport(ls, SurfacePath(1, 0, [])) == 1


def test_sheet_changes_only_at_cuts():
    cover = two_cut_cover()
    path = SurfacePath(0, 0, [Crossing("cut", 0, +1)])
    assert path.states(cover)[-1] == (0, 1)
    with pytest.raises(InvalidPath):
        # cut 1 lives in region 2, not region 0
        SurfacePath(0, 0, [Crossing("cut", 1, +1)]).states(cover)
    with pytest.raises(InvalidPath):
        # spoke 3 is not adjacent to region 0
        SurfacePath(0, 0, [Crossing("spoke", 3, +1)]).states(cover)


def test_gauge_rescaling_preserves_loop_holonomy():
    # rescaling all weights at one node by lambda and its co-edges by
    # 1/lambda is realized by changing the unit cut weight; generator-loop
    # holonomies are unchanged because each loop crosses both cut sides
    cover = two_cut_cover()
    base = make_local_system(cover, [Fraction(7, 3)])
    from toricnets.cover import RankOneLocalSystem
    lam = Fraction(11)
    rescaled = RankOneLocalSystem(
        cover, [w * lam for w in base.cut_weights])
    for loop in generator_loops(cover):
        assert parallel_transport(base, loop) == \
            parallel_transport(rescaled, loop)


def test_winding_sign():
    p = SurfacePath(0, 0, [], turns=0)
    assert winding_sign(p) == 1
    p = SurfacePath(0, 0, [], turns=1)
    assert winding_sign(p) == -1
    p = SurfacePath(0, 0, [], turns=3)
    assert winding_sign(p) == -1
    with pytest.raises(OpenPath):
        winding_sign(SurfacePath(0, 0, []))


def test_winding_extra_full_turn_flips():
    base = SurfacePath(0, 0, [], turns=0)
    bumped = SurfacePath(0, 0, [], turns=base.turns + 1)
    assert winding_sign(base) == -winding_sign(bumped)


def test_sheet_lift_map_closure_failure():
    # the P2 N=3 multi-section has monodromy, so a cover with no cuts
    # cannot match it
    from support import load
    spec = load("p2_n3")
    cover = build_cover(spec.disk, BranchCutLayout([], []), 2)
    with pytest.raises(NoSharedLift):
        sheet_lift_map(spec.tms, cover)
