"""Versioned JSON schema for problems, networks, cocycles, and reports.

One self-describing document format (``toricnets/problem.v1``) carries the
fan, the support function, the multi-section, optional holonomies, and an
optional explicit network+layout.  All rationals are strings accepted by
``Fraction`` ("p/q" or "p"), so round-trips are exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cover import BranchCutLayout, Cut
from .errors import ParseError, SchemaError
from .fans import Fan, SupportFunction, dual_polytope, disk_model, make_fan
from .laurent import LaurentMatrix, LaurentPoly
from .multisection import LiftedCone, LiftedRay, TropicalMultiSection
from .network import SpectralNetwork, Wall

PROBLEM_SCHEMA = "toricnets/problem.v1"
NETWORK_SCHEMA = "toricnets/network.v1"
COCYCLE_SCHEMA = "toricnets/cocycle.v1"
REPORT_SCHEMA = "toricnets/report.v1"


def _frac(x):
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {x!r}: {exc}")


def _frac_str(x):
    return str(Fraction(x))


def _point(obj):
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError(f"bad point {obj!r}")
    return (_frac(obj[0]), _frac(obj[1]))


def _point_out(p):
    return [_frac_str(p[0]), _frac_str(p[1])]


@dataclass
class ProblemSpec:
    fan: Fan
    phi: SupportFunction
    tms: TropicalMultiSection | None = None
    holonomies: list = field(default_factory=list)
    network: SpectralNetwork | None = None
    layout: BranchCutLayout | None = None
    raw: dict = field(default_factory=dict)

    @property
    def polytope(self):
        return dual_polytope(self.fan, self.phi)

    @property
    def disk(self):
        return disk_model(self.fan, self.polytope)


def load_problem(path) -> ProblemSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read problem file {path}: {exc}")
    return parse_problem(data)


def parse_problem(data) -> ProblemSpec:
    if not isinstance(data, dict):
        raise SchemaError("problem document must be an object")
    if data.get("schema") != PROBLEM_SCHEMA:
        raise SchemaError(
            f"unknown schema {data.get('schema')!r}; expected {PROBLEM_SCHEMA}")
    try:
        fan = make_fan(data["fan"]["rays"])
        phi = SupportFunction(fan, data["support"])
    except KeyError as exc:
        raise SchemaError(f"missing required field {exc}")
    tms = None
    if "multisection" in data:
        ms = data["multisection"]
        cones = [LiftedCone(str(c["id"]), int(c["cone"]),
                            (int(c["slope"][0]), int(c["slope"][1])))
                 for c in ms["lifted_cones"]]
        ids = {c.id for c in cones}
        rays = []
        for r in ms["lifted_rays"]:
            src, dst = str(r["from"]), str(r["to"])
            if src not in ids or dst not in ids:
                raise SchemaError(f"lifted ray references unknown cone "
                                  f"{src!r} or {dst!r}")
            rays.append(LiftedRay(int(r["ray"]), src, dst))
        tms = TropicalMultiSection(fan, int(ms["degree"]), cones, rays)
    holonomies = [_frac(h) for h in data.get("holonomies", [])]
    spec = ProblemSpec(fan, phi, tms, holonomies, raw=data)
    if "layout" in data:
        spec.layout = parse_layout(data["layout"])
    if "network" in data:
        if spec.layout is None:
            raise SchemaError("an explicit network requires a layout")
        spec.network = parse_network(data["network"], spec)
    return spec


def emit_problem(spec: ProblemSpec) -> dict:
    out = {
        "schema": PROBLEM_SCHEMA,
        "fan": {"rays": [list(v) for v in spec.fan.rays]},
        "support": list(spec.phi.values),
    }
    if spec.tms is not None:
        out["multisection"] = {
            "degree": spec.tms.degree,
            "lifted_cones": [
                {"id": c.id, "cone": c.base, "slope": list(c.slope)}
                for c in spec.tms.lifted_cones],
            "lifted_rays": [
                {"ray": r.ray, "from": r.src, "to": r.dst}
                for r in spec.tms.lifted_rays],
        }
    if spec.holonomies:
        out["holonomies"] = [_frac_str(h) for h in spec.holonomies]
    if spec.layout is not None:
        out["layout"] = emit_layout(spec.layout)
    if spec.network is not None:
        out["network"] = emit_network(spec.network)
    return out


def parse_layout(data) -> BranchCutLayout:
    points = [_point(p) for p in data["branch_points"]]
    cuts = []
    for c in data["cuts"]:
        poly = tuple(_point(p) for p in c["polyline"])
        cuts.append(Cut(poly[0], poly,
                        (int(c["transposition"][0]), int(c["transposition"][1])),
                        int(c["edge"])))
    if len(points) != len(cuts):
        raise SchemaError("layout needs one cut per branch point")
    return BranchCutLayout(points, cuts)


def emit_layout(layout: BranchCutLayout) -> dict:
    return {
        "branch_points": [_point_out(p) for p in layout.branch_points],
        "cuts": [
            {"polyline": [_point_out(p) for p in c.polyline],
             "transposition": list(c.transposition),
             "edge": c.edge}
            for c in layout.cuts],
    }


def parse_network(data, spec: ProblemSpec) -> SpectralNetwork:
    walls = []
    for w in data["walls"]:
        poly = tuple(_point(p) for p in w["polyline"])
        walls.append(Wall(
            int(w["id"]), poly,
            (int(w["label"][0]), int(w["label"][1])),
            None if w.get("branch") is None else int(w["branch"]),
            int(w["end_edge"]), int(w["end_cone"])))
    return SpectralNetwork(spec.fan, spec.polytope, spec.disk, walls,
                           spec.layout)


def emit_network(net: SpectralNetwork) -> dict:
    return {
        "schema": NETWORK_SCHEMA,
        "walls": [
            {"id": w.id,
             "label": list(w.label),
             "branch": w.start_branch,
             "end_edge": w.end_edge,
             "end_cone": w.end_cone,
             "polyline": [_point_out(p) for p in w.polyline]}
            for w in net.walls],
        "layout": emit_layout(net.layout),
    }


def emit_matrix(m: LaurentMatrix) -> list:
    """Flat term list [row, col, num, den, ex, ey], sorted."""
    terms = []
    for i in range(m.size):
        for j in range(m.size):
            for e, c in m.entry(i, j).terms.items():
                terms.append([i, j, c.numerator, c.denominator, e[0], e[1]])
    terms.sort()
    return terms


def parse_matrix(terms, size) -> LaurentMatrix:
    rows = [[dict() for _ in range(size)] for _ in range(size)]
    for row, col, num, den, ex, ey in terms:
        rows[row][col][(ex, ey)] = Fraction(num, den)
    return LaurentMatrix([[LaurentPoly(cell) for cell in r] for r in rows])


def emit_cocycle(coc) -> dict:
    pairs = {}
    n = coc.tms.fan.n
    for i in range(n):
        for j in range(n):
            pairs[f"{i},{j}"] = emit_matrix(coc.pair(i, j))
    return {"schema": COCYCLE_SCHEMA, "size": coc.cover.r, "pairs": pairs}


def dump_json(data, path):
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    with open(path, "w") as fh:
        fh.write(text)
    return text
