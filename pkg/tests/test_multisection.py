import random

import pytest

from support import circle_sampling_n, random_two_fold

from toricnets.errors import NotTwoFold
from toricnets.fans import make_fan
from toricnets.multisection import (LiftedCone, LiftedRay,
                                    TropicalMultiSection, classify_two_fold,
                                    intersection_cones, n_genericity,
                                    parity_and_realizability, validate)

P2 = make_fan([(1, 0), (0, 1), (-1, -1)])
P1P1 = make_fan([(1, 0), (0, 1), (-1, 0), (0, -1)])
FAN5 = make_fan([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)])


def section(fan, slopes):
    cones = [LiftedCone(f"s{i}", i, slopes[i]) for i in range(fan.n)]
    rays = [LiftedRay(i, f"s{(i - 1) % fan.n}", f"s{i}") for i in range(fan.n)]
    return TropicalMultiSection(fan, 1, cones, rays)


def test_constant_section_valid():
    tms = section(P2, [(0, 0)] * 3)
    assert validate(tms).ok


def test_equal_slopes_double_cover_not_separated():
    cones = [LiftedCone(f"a{i}", i, (0, 0)) for i in range(3)] + \
            [LiftedCone(f"b{i}", i, (0, 0)) for i in range(3)]
    rays = []
    for i in range(3):
        rays.append(LiftedRay(i, f"a{(i - 1) % 3}", f"a{i}"))
        rays.append(LiftedRay(i, f"b{(i - 1) % 3}", f"b{i}"))
    tms = TropicalMultiSection(P2, 2, cones, rays)
    rep = validate(tms)
    assert not rep.ok
    assert any(v.condition == "separatedness" for v in rep.violations)


def test_p2_quoted_slopes_are_valid_and_give_n1(p2_n1):
    # slopes (0,0),(1,0),(-1,2),(-1,1),(-1,1),(0,0) on the 6-cycle: the six
    # continuity pairings and three separatedness inequalities all hold,
    # and the antipodal value differences flip sign twice, so N = 1
    tms = p2_n1.tms
    assert validate(tms).ok
    assert classify_two_fold(tms).tag == "O"
    assert n_genericity(tms) == 1
    res = parity_and_realizability(tms, 1)
    assert res.parity_ok and not res.realizable and res.betti_one is None


def test_p2_n3_fixture(p2):
    tms = p2.tms
    assert validate(tms).ok
    assert classify_two_fold(tms).tag == "O"
    assert n_genericity(tms) == 3
    assert intersection_cones(tms) == [0, 1, 2]
    res = parity_and_realizability(tms, 3)
    assert res.parity_ok and res.realizable and res.betti_one == 0


def test_split_cover_classifies_e(split_e):
    tms = split_e.tms
    assert validate(tms).ok
    assert classify_two_fold(tms).tag == "E"
    assert n_genericity(tms) == 0
    res = parity_and_realizability(tms, 0)
    assert res.parity_ok and not res.realizable


def test_e_type_n4_fixture(p1p1):
    tms = p1p1.tms
    assert classify_two_fold(tms).tag == "E"
    assert n_genericity(tms) == 4
    res = parity_and_realizability(tms, 4)
    assert res.parity_ok and res.realizable and res.betti_one == 1


def test_o_type_n5_fixture(fan5):
    tms = fan5.tms
    assert classify_two_fold(tms).tag == "O"
    assert n_genericity(tms) == 5
    res = parity_and_realizability(tms, 5)
    assert res.parity_ok and res.realizable and res.betti_one == 2


def test_not_two_fold(r1):
    with pytest.raises(NotTwoFold):
        classify_two_fold(r1.tms)
    with pytest.raises(NotTwoFold):
        n_genericity(r1.tms)


def test_n_genericity_matches_circle_sampling_on_fixtures(p2, p1p1, fan5, p2_n1,
                                                          split_e):
    for spec in (p2, p1p1, fan5, p2_n1, split_e):
        assert n_genericity(spec.tms) == circle_sampling_n(spec.tms)


def test_parity_theorem_randomized():
    rng = random.Random(20240817)
    for fan in (P2, P1P1, FAN5):
        for _ in range(30):
            tms = random_two_fold(fan, rng)
            tag = classify_two_fold(tms).tag
            n_value = n_genericity(tms)
            if tag == "O":
                assert n_value % 2 == 1
            else:
                assert n_value % 2 == 0


def test_random_sections_match_sampling_oracle():
    rng = random.Random(7)
    for fan in (P2, P1P1):
        for _ in range(10):
            tms = random_two_fold(fan, rng)
            assert n_genericity(tms) == circle_sampling_n(tms)
