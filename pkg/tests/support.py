"""Shared test helpers: fixture loading, oracles, random multi-sections."""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from toricnets import schema
from toricnets.geom import cross, dot, rot90, sub
from toricnets.multisection import (LiftedCone, LiftedRay,
                                    TropicalMultiSection, classify_two_fold,
                                    validate)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return schema.load_problem(FIXTURES / f"{name}.json")


def solve_2x2(a, b, target):
    """Integer (x, y) with x*a + y*b == target for unimodular a, b."""
    det = cross(a, b)
    assert det in (1, -1)
    x = Fraction(cross(target, b), det)
    y = Fraction(cross(a, target), det)
    assert x.denominator == 1 and y.denominator == 1
    return int(x), int(y)


def random_two_fold(fan, rng, force_class=None, max_tries=200):
    """Random valid (continuous, separated) 2-fold multi-section.

    Matchings across each ray are coin flips (their parity decides case O
    versus E); slopes are random integer steps along each lifted circle
    with the last two steps solved exactly for closure.  Separatedness is
    enforced by rejection.
    """
    n = fan.n
    for _ in range(max_tries):
        swaps = [rng.random() < 0.5 for _ in range(n)]
        if force_class == "O" and sum(swaps) % 2 == 0:
            swaps[rng.randrange(n)] ^= True
        if force_class == "E" and sum(swaps) % 2 == 1:
            swaps[rng.randrange(n)] ^= True
        tms = _assemble(fan, swaps, rng)
        if tms is None:
            continue
        if validate(tms).ok:
            if force_class is not None and \
                    classify_two_fold(tms).tag != force_class:
                continue
            return tms
    raise AssertionError("could not sample a valid multi-section")


def _assemble(fan, swaps, rng):
    n = fan.n
    # lifted cones: two per base cone
    cones = {}
    for i in range(n):
        for s in (0, 1):
            cones[(i, s)] = LiftedCone(f"x{i}_{s}", i, (0, 0))
    # matching across ray i links sheet tracks
    succ = {}
    for i in range(n):
        prev = (i - 1) % n
        for s in (0, 1):
            t = 1 - s if swaps[i] else s
            succ[(prev, s, i)] = t
    # walk the cycles and assign slopes with exact closure
    rays = []
    slopes = {}
    visited = set()
    for start_sheet in (0, 1):
        if (0, start_sheet) in visited:
            continue
        cycle = [(0, start_sheet)]
        visited.add((0, start_sheet))
        cur = (0, start_sheet)
        while True:
            i = (cur[0] + 1) % n
            nxt = (i, succ[(cur[0], cur[1], i)])
            if nxt == cycle[0]:
                break
            cycle.append(nxt)
            visited.add(nxt)
            cur = nxt
        steps = len(cycle)
        m = (rng.randint(-3, 3), rng.randint(-3, 3))
        slopes[cycle[0]] = m
        moves = []
        for k in range(steps):
            a = cycle[k]
            b = cycle[(k + 1) % steps]
            ray = b[0] % n
            moves.append((a, b, ray))
        acc = (0, 0)
        for k, (a, b, ray) in enumerate(moves[:-2]):
            w = rot90(fan.ray(ray))
            coef = rng.randint(-3, 3)
            nm = (slopes[a][0] + coef * w[0], slopes[a][1] + coef * w[1])
            slopes[b] = nm
        # close with the final two moves
        (a1, b1, r1), (a2, b2, r2) = moves[-2], moves[-1]
        w1, w2 = rot90(fan.ray(r1)), rot90(fan.ray(r2))
        target = sub(slopes[cycle[0]], slopes[a1])
        try:
            k1, k2 = solve_2x2(w1, w2, target)
        except AssertionError:
            return None
        slopes[b1] = (slopes[a1][0] + k1 * w1[0], slopes[a1][1] + k1 * w1[1])
        back = (slopes[b1][0] + k2 * w2[0], slopes[b1][1] + k2 * w2[1])
        assert back == tuple(slopes[cycle[0]])
    lifted_cones = [LiftedCone(f"x{i}_{s}", i, slopes[(i, s)])
                    for i in range(n) for s in (0, 1)]
    lifted_rays = []
    for i in range(n):
        prev = (i - 1) % n
        for s in (0, 1):
            t = succ[(prev, s, i)]
            lifted_rays.append(LiftedRay(i, f"x{prev}_{s}", f"x{i}_{t}"))
    return TropicalMultiSection(fan, 2, lifted_cones, lifted_rays)


def circle_sampling_n(tms, samples_per_cone=9):
    """Brute-force transverse-crossing count of the two sheet graphs.

    Walks the circle of directions through sample points strictly inside
    every cone, tracking which lift is which sheet through the matchings,
    and counts sign changes of the sheet-value difference.  Independent of
    the ray-difference computation in ``n_genericity``.
    """
    fan = tms.fan
    n = fan.n
    cls = classify_two_fold(tms)
    laps = 2 if cls.tag == "O" else 1
    # current sheet assignment: pair of lifted-cone ids over the cone
    current = [c.id for c in tms.lifts_of_cone(0)]
    values = []
    for lap in range(laps):
        for i in range(n):
            if lap > 0 or i > 0:
                match = tms.matching(i)
                current = [match[c] for c in current]
            v1, v2 = fan.ray(i), fan.ray((i + 1) % n)
            for k in range(1, samples_per_cone + 1):
                t = Fraction(k, samples_per_cone + 1)
                p = ((1 - t) * v1[0] + t * v2[0], (1 - t) * v1[1] + t * v2[1])
                d = dot(sub(tms.slope(current[0]), tms.slope(current[1])), p)
                values.append(d)
    signs = [v > 0 for v in values if v != 0]
    flips = sum(1 for a, b in zip(signs, signs[1:] + signs[:1]) if a != b)
    return flips // laps


def brute_force_polytope_vertices(fan, phi):
    """Vertex enumeration by pairwise linear systems plus feasibility."""
    n = fan.n
    pts = set()
    for i in range(n):
        for j in range(i + 1, n):
            vi, vj = fan.ray(i), fan.ray(j)
            det = cross(vi, vj)
            if det == 0:
                continue
            x = Fraction(phi[i] * vj[1] - phi[j] * vi[1], det)
            y = Fraction(phi[j] * vi[0] - phi[i] * vj[0], det)
            if all(x * fan.ray(k)[0] + y * fan.ray(k)[1] >= phi[k]
                   for k in range(n)):
                pts.add((x, y))
    return pts
