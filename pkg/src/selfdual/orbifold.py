"""Fundamental regions for the ten antipodal pairings, doodles, and
expansion of a doodle to a full spherical map by the group action.

Coordinates are fixed once: vertical mirrors pass through the z-axis,
the equator is the horizontal mirror, and the tetrahedral/octahedral
pairings use cube-aligned planes.  A region is stored as one or more
convex cells, each an intersection of half-spaces n.x >= 0; the larger
region R1 is fundamental for the color-preserving subgroup and contains
the half-area region R2, fundamental for the full two-color group.  The
tiling checks in the test suite validate every catalog entry, so the
figures' unspecified metric details cannot silently go wrong.

Doodle points carry primal/dual/crossing colors and optional wall tags;
arcs are geodesic segments.  Expansion places one copy of the doodle
per group element, swapping the two colors under color-reversing
elements, merges coincident features, and reads rotation systems off
the geometry by sorting arc directions counterclockwise in each tangent
plane.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import coxeter
from .coxeter import (
    ANTIPODAL,
    EQUATOR,
    matrix_key,
    mirror_az,
    reflection,
    rotation,
    rotz,
)
from .errors import (
    BadParams,
    EmptyDoodle,
    MergeAmbiguity,
    NotAntipodalPairing,
    PointOutsideRegion,
    UnsupportedMap,
)
from .families import (
    HYPERWHEEL,
    MULTIWHEEL,
    WHEEL,
    FamilyParams,
    LabeledMap,
    family_involution,
)
from .maps import SphericalMap, map_from_neighbor_rotations

PRIMAL = "primal"
DUAL = "dual"
CROSSING = "crossing"

MERGE_TOL = 3e-7
MIN_SEPARATION = 1e-3
REGION_TOL = 1e-9

AUT_MIRROR = "aut-mirror"
ISO_MIRROR = "iso-mirror"
DOTTED = "dotted"
ROTATION_CENTER = "rotation-center"
ROTARY_MARK = "rotatory-reflection-mark"


def latlong(lat: float, lon: float) -> tuple:
    c = math.cos(lat)
    return (c * math.cos(lon), c * math.sin(lon), math.sin(lat))


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class RegionWall:
    """One wall arc or orbifold mark of a fundamental region."""

    kind: str
    normal: Optional[tuple] = None   # for mirror and dotted walls
    point: Optional[tuple] = None    # for rotation / rotary marks
    angle: Optional[float] = None


@dataclass(frozen=True)
class FundamentalRegion:
    aut_symbol: str
    dual_symbol: str
    q: Optional[int]
    walls: tuple
    aut_generators: tuple   # matrices
    iso_generators: tuple   # matrices, color-reversing
    r1_cells: tuple         # cells of half-space normals, doodle region
    r2_cells: tuple         # half-area region, fundamental for the pair
    r1_area: float
    r2_area: float

    def _in_cells(self, cells, xyz, tol: float) -> bool:
        p = np.asarray(xyz, dtype=float)
        for cell in cells:
            if all(np.dot(n, p) >= -tol for n in cell):
                return True
        return False

    def contains_r1(self, xyz, tol: float = REGION_TOL) -> bool:
        return self._in_cells(self.r1_cells, xyz, tol)

    def contains_r2(self, xyz, tol: float = REGION_TOL) -> bool:
        return self._in_cells(self.r2_cells, xyz, tol)

    def group_elements(self) -> list:
        """All elements of the two-color group as (matrix, reverses)
        pairs, shortest generator words first."""
        tagged = ([(np.asarray(g), False) for g in self.aut_generators]
                  + [(np.asarray(g), True) for g in self.iso_generators])
        elems = [(coxeter.IDENTITY, False)]
        seen = {matrix_key(coxeter.IDENTITY): False}
        frontier = [(coxeter.IDENTITY, False)]
        while frontier:
            new = []
            for m, t in frontier:
                for g, gt in tagged:
                    p = m @ g
                    tag = t != gt
                    k = matrix_key(p)
                    if k in seen:
                        if seen[k] != tag:
                            raise MergeAmbiguity(
                                "group element is both color preserving "
                                "and color reversing")
                        continue
                    seen[k] = tag
                    elems.append((p, tag))
                    new.append((p, tag))
            frontier = new
        return elems

    @property
    def pairing_name(self) -> str:
        return f"{self.aut_symbol} < {self.dual_symbol}"


def _norm(*v) -> tuple:
    return tuple(_unit(v))


_N = (0.0, 0.0, 1.0)
_S = (0.0, 0.0, -1.0)


def _lune_cells(width: float) -> tuple:
    """Lune between azimuth 0 and `width` as one convex cell."""
    return ((
        (0.0, 1.0, 0.0),
        (math.sin(width), -math.cos(width), 0.0),
    ),)


def _with(cells, extra) -> tuple:
    return tuple(tuple(cell) + (extra,) for cell in cells)


def _meridian_wall(kind: str, azimuth: float) -> RegionWall:
    return RegionWall(kind, normal=(-math.sin(azimuth), math.cos(azimuth), 0.0))


def _equator_wall(kind: str) -> RegionWall:
    return RegionWall(kind, normal=(0.0, 0.0, 1.0))


def _rot_mark(point, angle: float) -> RegionWall:
    return RegionWall(ROTATION_CENTER, point=tuple(point), angle=angle)


ANTIPODAL_PAIRINGS = (
    ("[q]", "[2,q]", "even"),
    ("[q]+", "[2,q+]", "even"),
    ("[q]", "[2+,2q]", "odd"),
    ("[q]+", "[2+,2q+]", "odd"),
    ("[2,2]+", "[2,2]", None),
    ("[2+,4]", "[2,4]", None),
    ("[2+,4+]", "[2,4+]", None),
    ("[1]", "[2,2+]", None),
    ("[3,3]", "[3,4]", None),
    ("[3,3]+", "[3+,4]", None),
)


def _resolve_pairing(pairing, q: Optional[int]) -> tuple:
    """Normalize a requested pairing to (aut template, dual template, q)."""
    if isinstance(pairing, str):
        parts = pairing.replace(">", "<").split("<")
        if len(parts) != 2:
            raise NotAntipodalPairing(f"cannot parse pairing {pairing!r}")
        a, b = parts[0].strip(), parts[1].strip()
    else:
        a, b = (str(x).strip() for x in pairing)
    for aut_t, dual_t, parity in ANTIPODAL_PAIRINGS:
        candidates = [(a, b), (b, a)]
        for x, y in candidates:
            if (x, y) == (aut_t, dual_t):
                qq = q
            elif "q" in aut_t and q is None:
                # concrete symbols: try to recover q from the aut symbol
                try:
                    qq = int(x.strip("[]+").split(",")[-1])
                except ValueError:
                    continue
                if (coxeter._subst(aut_t, qq), coxeter._subst(dual_t, qq)) != (x, y):
                    continue
            else:
                continue
            if parity == "even" and (qq is None or qq % 2):
                raise NotAntipodalPairing(
                    f"{aut_t} < {dual_t} is antipodal for even q only")
            if parity == "odd" and (qq is None or qq % 2 == 0):
                raise NotAntipodalPairing(
                    f"{aut_t} < {dual_t} is antipodal for odd q only")
            return aut_t, dual_t, qq
    raise NotAntipodalPairing(f"{pairing!r} is not one of the ten antipodal pairings")


def region_catalog(pairing, q: Optional[int] = None) -> FundamentalRegion:
    """Fundamental region, walls, and generators for an antipodal
    pairing.  ``pairing`` may use templates ("[q] < [2,q]") with ``q``
    given separately, or concrete symbols ("[4] < [2,4]")."""
    aut_t, dual_t, q = _resolve_pairing(pairing, q)
    key = (aut_t, dual_t)

    if key == ("[q]", "[2,q]"):
        a = math.pi / q
        r1 = _lune_cells(a)
        return FundamentalRegion(
            coxeter._subst("[q]", q), coxeter._subst("[2,q]", q), q,
            walls=(
                _meridian_wall(AUT_MIRROR, 0.0),
                _meridian_wall(AUT_MIRROR, a),
                _equator_wall(ISO_MIRROR),
            ),
            aut_generators=(mirror_az(0.0), mirror_az(a)),
            iso_generators=(EQUATOR,),
            r1_cells=r1, r2_cells=_with(r1, _N),
            r1_area=2 * math.pi / q, r2_area=math.pi / q)

    if key == ("[q]+", "[2,q+]"):
        a = 2 * math.pi / q
        r1 = _lune_cells(a)
        return FundamentalRegion(
            coxeter._subst("[q]+", q), coxeter._subst("[2,q+]", q), q,
            walls=(
                _meridian_wall(DOTTED, 0.0),
                _meridian_wall(DOTTED, a),
                _equator_wall(ISO_MIRROR),
                _rot_mark(_N, 2 * math.pi / q),
            ),
            aut_generators=(rotz(2 * math.pi / q),),
            iso_generators=(EQUATOR,),
            r1_cells=r1, r2_cells=_with(r1, _N),
            r1_area=4 * math.pi / q, r2_area=2 * math.pi / q)

    if key == ("[q]", "[2+,2q]"):
        a = math.pi / q
        r1 = _lune_cells(a)
        center = latlong(0.0, a / 2)
        return FundamentalRegion(
            coxeter._subst("[q]", q), coxeter._subst("[2+,2q]", q), q,
            walls=(
                _meridian_wall(AUT_MIRROR, 0.0),
                _meridian_wall(AUT_MIRROR, a),
                _equator_wall(DOTTED),
                _rot_mark(center, math.pi),
            ),
            aut_generators=(mirror_az(0.0), mirror_az(a)),
            iso_generators=(rotation(center, math.pi),),
            r1_cells=r1, r2_cells=_with(r1, _N),
            r1_area=2 * math.pi / q, r2_area=math.pi / q)

    if key == ("[q]+", "[2+,2q+]"):
        a = 2 * math.pi / q
        north = _with(_lune_cells(a), _N)[0]
        # the second cell is the southern half-lune between azimuth
        # pi/q and 3pi/q, the rotatory-reflection image of the first
        lo, hi = math.pi / q, 3 * math.pi / q
        south = (
            (-math.sin(lo), math.cos(lo), 0.0),
            (math.sin(hi), -math.cos(hi), 0.0),
            (0.0, 0.0, -1.0),
        )
        return FundamentalRegion(
            coxeter._subst("[q]+", q), coxeter._subst("[2+,2q+]", q), q,
            walls=(
                _meridian_wall(DOTTED, 0.0),
                _meridian_wall(DOTTED, a),
                _equator_wall(DOTTED),
                RegionWall(ROTARY_MARK, point=_N, angle=math.pi / q),
            ),
            aut_generators=(rotz(2 * math.pi / q),),
            iso_generators=(rotz(math.pi / q) @ EQUATOR,),
            r1_cells=(north, south), r2_cells=(north,),
            r1_area=4 * math.pi / q, r2_area=2 * math.pi / q)

    if key == ("[2,2]+", "[2,2]"):
        r1 = ((_norm(0, 1, -1), _norm(1, 0, -1), _norm(1, 1, 0)),)
        r2 = (((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, -1.0)),)
        return FundamentalRegion(
            "[2,2]+", "[2,2]", None,
            walls=(
                RegionWall(ISO_MIRROR, normal=(1.0, 0.0, 0.0)),
                RegionWall(ISO_MIRROR, normal=(0.0, 1.0, 0.0)),
                RegionWall(ISO_MIRROR, normal=(0.0, 0.0, 1.0)),
                _rot_mark((1.0, 0.0, 0.0), math.pi),
                _rot_mark((0.0, 1.0, 0.0), math.pi),
                _rot_mark((0.0, 0.0, -1.0), math.pi),
            ),
            aut_generators=(rotation((1, 0, 0), math.pi),
                            rotation((0, 1, 0), math.pi),
                            rotz(math.pi)),
            iso_generators=(EQUATOR,),
            r1_cells=r1, r2_cells=r2,
            r1_area=math.pi, r2_area=math.pi / 2)

    if key == ("[2+,4]", "[2,4]"):
        a = math.pi / 4
        r1 = _lune_cells(a)
        return FundamentalRegion(
            "[2+,4]", "[2,4]", None,
            walls=(
                _meridian_wall(ISO_MIRROR, 0.0),
                _meridian_wall(AUT_MIRROR, a),
                _equator_wall(ISO_MIRROR),
            ),
            aut_generators=(mirror_az(a), rotation((1, 0, 0), math.pi)),
            iso_generators=(EQUATOR,),
            r1_cells=r1, r2_cells=_with(r1, _N),
            r1_area=math.pi / 2, r2_area=math.pi / 4)

    if key == ("[2+,4+]", "[2,4+]"):
        r1 = (((0.0, 1.0, 0.0), _N),)
        r2 = (((0.0, 1.0, 0.0), (1.0, 0.0, 0.0), _N),)
        return FundamentalRegion(
            "[2+,4+]", "[2,4+]", None,
            walls=(
                _meridian_wall(DOTTED, 0.0),
                _meridian_wall(DOTTED, math.pi / 2),
                _equator_wall(ISO_MIRROR),
                RegionWall(ROTARY_MARK, point=_N, angle=math.pi / 2),
                _rot_mark(_N, math.pi / 2),
            ),
            aut_generators=(rotz(math.pi / 2) @ EQUATOR,),
            iso_generators=(EQUATOR,),
            r1_cells=r1, r2_cells=r2,
            r1_area=math.pi, r2_area=math.pi / 2)

    if key == ("[1]", "[2,2+]"):
        r1 = ((_N,),)
        r2 = ((_N, (0.0, 1.0, 0.0)),)
        return FundamentalRegion(
            "[1]", "[2,2+]", None,
            walls=(
                _equator_wall(AUT_MIRROR),
                _meridian_wall(DOTTED, 0.0),
                _rot_mark(_N, math.pi),
            ),
            aut_generators=(EQUATOR,),
            iso_generators=(rotz(math.pi),),
            r1_cells=r1, r2_cells=r2,
            r1_area=2 * math.pi, r2_area=math.pi)

    if key == ("[3,3]", "[3,4]"):
        r2 = ((_norm(1, -1, 0), (0.0, 1.0, 0.0), _norm(-1, 0, 1)),)
        r1 = ((_norm(1, -1, 0), _norm(1, 1, 0), _norm(-1, 0, 1)),)
        return FundamentalRegion(
            "[3,3]", "[3,4]", None,
            walls=(
                RegionWall(AUT_MIRROR, normal=_norm(1, -1, 0)),
                RegionWall(AUT_MIRROR, normal=_norm(-1, 0, 1)),
                RegionWall(ISO_MIRROR, normal=(0.0, 1.0, 0.0)),
            ),
            aut_generators=(reflection((1, -1, 0)), reflection((0, 1, -1)),
                            reflection((1, 1, 0))),
            iso_generators=(reflection((0, 1, 0)),),
            r1_cells=r1, r2_cells=r2,
            r1_area=math.pi / 6, r2_area=math.pi / 12)

    if key == ("[3,3]+", "[3+,4]"):
        r2 = ((_norm(1, -1, 0), _norm(0, -1, 1), (0.0, 1.0, 0.0)),)
        r1 = ((_norm(1, -1, 0), _norm(1, 1, 0), _norm(0, -1, 1),
               _norm(0, 1, 1)),)
        c3 = rotation((1, 1, 1), 2 * math.pi / 3)
        return FundamentalRegion(
            "[3,3]+", "[3+,4]", None,
            walls=(
                RegionWall(DOTTED, normal=_norm(1, -1, 0)),
                RegionWall(DOTTED, normal=_norm(0, -1, 1)),
                RegionWall(ISO_MIRROR, normal=(0.0, 1.0, 0.0)),
                _rot_mark(_N, math.pi),
                _rot_mark(tuple(_unit((1, 1, 1))), 2 * math.pi / 3),
                _rot_mark((1.0, 0.0, 0.0), math.pi),
            ),
            aut_generators=(c3, rotz(math.pi)),
            iso_generators=(reflection((0, 1, 0)),),
            r1_cells=r1, r2_cells=r2,
            r1_area=math.pi / 3, r2_area=math.pi / 6)

    raise NotAntipodalPairing(f"{key} missing from the region catalog")


# --- doodles ---------------------------------------------------------------------

@dataclass(frozen=True)
class DoodlePoint:
    label: str
    xyz: tuple
    color: str
    wall: Optional[str] = None


@dataclass(frozen=True)
class ColoredDoodle:
    points: tuple
    arcs: tuple  # (label, label) pairs

    def point(self, label: str) -> DoodlePoint:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(label)

    def validate(self, region: FundamentalRegion) -> None:
        if not self.points or not self.arcs:
            raise EmptyDoodle("doodle has no content")
        index = {}
        for p in self.points:
            if p.color not in (PRIMAL, DUAL, CROSSING):
                raise MergeAmbiguity(f"unknown color {p.color!r}")
            if p.label in index:
                raise MergeAmbiguity(f"duplicate point label {p.label!r}")
            if not region.contains_r1(p.xyz, tol=REGION_TOL):
                raise PointOutsideRegion(
                    f"point {p.label!r} at {p.xyz} leaves the region")
            index[p.label] = np.asarray(p.xyz, dtype=float)
        labels = list(index)
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                if np.linalg.norm(index[a] - index[b]) < MIN_SEPARATION:
                    raise MergeAmbiguity(
                        f"points {a!r} and {b!r} are closer than the "
                        f"placement grid allows")
        for a, b in self.arcs:
            if a not in index or b not in index:
                raise MergeAmbiguity(f"arc ({a!r}, {b!r}) misses a point")
            pa, pb = self.point(a), self.point(b)
            if pa.color == CROSSING and pb.color == CROSSING:
                raise MergeAmbiguity(
                    f"arc ({a!r}, {b!r}) joins two crossings; its color "
                    f"would be undefined")

    def to_json(self) -> dict:
        return {
            "points": [{"label": p.label, "xyz": list(p.xyz),
                        "color": p.color, "wall": p.wall}
                       for p in self.points],
            "arcs": [{"ends": [a, b]} for a, b in self.arcs],
        }

    @staticmethod
    def from_json(obj: dict) -> "ColoredDoodle":
        pts = tuple(DoodlePoint(str(p["label"]),
                                tuple(float(x) for x in p["xyz"]),
                                str(p["color"]), p.get("wall"))
                    for p in obj["points"])
        arcs = tuple((str(a["ends"][0]), str(a["ends"][1]))
                     for a in obj["arcs"])
        return ColoredDoodle(pts, arcs)


def save_doodle(doodle: ColoredDoodle, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doodle.to_json(), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_doodle(path) -> ColoredDoodle:
    with open(path, "r", encoding="utf-8") as fh:
        return ColoredDoodle.from_json(json.load(fh))


def region_for_family(family: str, q: int) -> FundamentalRegion:
    if family == HYPERWHEEL:
        return region_catalog(("[q]", "[2,q]"), q)
    return region_catalog(("[q]", "[2+,2q]"), q)


def doodle_for_family(family: str, q: int, l: int = 1) -> ColoredDoodle:
    """The doodle whose expansion under the Dual group rebuilds the
    family instance together with its dual and crossings.

    Both doodles live in the lune between azimuth 0 and pi/q.  For
    multi wheels the cusp chain runs up the azimuth-0 wall and the dual
    chain sits on the far wall, half-turned; for hyperwheels both walls
    carry a primal and a dual ladder and the rim contributes two
    diagonal arcs crossing in the interior.
    """
    FamilyParams(q, l).check(family if family != WHEEL else MULTIWHEEL)
    w = math.pi / q
    if family in (WHEEL, MULTIWHEEL):
        delta = (math.pi / 2) / (2 * l + 2)
        lam = [0.0] + [(2 * j - l - 0.5) * delta for j in range(1, l + 1)]
        pts = [DoodlePoint("c", latlong(-math.pi / 2, 0.0), PRIMAL, "pole"),
               DoodlePoint("o", latlong(math.pi / 2, 0.0), DUAL, "pole")]
        for j in range(1, l + 1):
            pts.append(DoodlePoint(f"a^{j}", latlong(lam[j], 0.0), PRIMAL, "w0"))
            pts.append(DoodlePoint(f"d^{j}", latlong(-lam[j], w), DUAL, "w1"))
            pts.append(DoodlePoint(f"x^{j}", latlong(lam[j], w), CROSSING, "w1"))
            pts.append(DoodlePoint(f"y^{j}", latlong(-lam[j], 0.0), CROSSING, "w0"))
        arcs = []
        chain0 = ["c"]
        for t in range(1, l + 1):
            chain0 += [f"y^{l + 1 - t}", f"a^{t}"]
        arcs += list(zip(chain0, chain0[1:]))
        chain1 = ["o"]
        for t in range(1, l + 1):
            chain1 += [f"x^{l + 1 - t}", f"d^{t}"]
        arcs += list(zip(chain1, chain1[1:]))
        for j in range(1, l + 1):
            arcs.append((f"a^{j}", f"x^{j}"))
            arcs.append((f"d^{j}", f"y^{j}"))
        return ColoredDoodle(tuple(pts), tuple(arcs))

    # hyperwheel
    delta = (math.pi / 2) / (2 * l + 1)
    pts = [DoodlePoint("c", latlong(-math.pi / 2, 0.0), PRIMAL, "pole"),
           DoodlePoint("o", latlong(math.pi / 2, 0.0), DUAL, "pole")]
    for j in range(1, l + 1):
        pts.append(DoodlePoint(f"a^{j}", latlong(2 * j * delta, 0.0), PRIMAL, "w0"))
        pts.append(DoodlePoint(f"da^{j}", latlong(-2 * j * delta, 0.0), DUAL, "w0"))
        pts.append(DoodlePoint(f"b^{j}", latlong(-(2 * j - 1) * delta, w), PRIMAL, "w1"))
        pts.append(DoodlePoint(f"db^{j}", latlong((2 * j - 1) * delta, w), DUAL, "w1"))
        pts.append(DoodlePoint(f"xb^{j}", latlong(-2 * j * delta, w), CROSSING, "w1"))
        pts.append(DoodlePoint(f"xdb^{j}", latlong(2 * j * delta, w), CROSSING, "w1"))
    for m in range(2, l + 1):
        pts.append(DoodlePoint(f"xa^{m}", latlong((2 * m - 1) * delta, 0.0),
                               CROSSING, "w0"))
        pts.append(DoodlePoint(f"xda^{m}", latlong(-(2 * m - 1) * delta, 0.0),
                               CROSSING, "w0"))
    z = _geodesic_intersection(latlong(2 * delta, 0.0), latlong(-delta, w),
                               latlong(-2 * delta, 0.0), latlong(delta, w))
    pts.append(DoodlePoint("z", z, CROSSING, None))

    arcs = []
    chain = ["c"]
    for j in range(l, 0, -1):
        chain += [f"xb^{j}", f"b^{j}"]
    arcs += list(zip(chain, chain[1:]))          # b-spokes up the far wall
    chain = ["o"]
    for j in range(l, 0, -1):
        chain += [f"xdb^{j}", f"db^{j}"]
    arcs += list(zip(chain, chain[1:]))          # dual spokes down to the rim
    for m in range(l, 1, -1):                    # a-spokes, both colors
        arcs.append((f"a^{m - 1}", f"xa^{m}"))
        arcs.append((f"xa^{m}", f"a^{m}"))
        arcs.append((f"da^{m}", f"xda^{m}"))
        arcs.append((f"xda^{m}", f"da^{m - 1}"))
    for j in range(1, l + 1):                    # ring stubs to the far wall
        arcs.append((f"a^{j}", f"xdb^{j}"))
        arcs.append((f"da^{j}", f"xb^{j}"))
    for m in range(2, l + 1):                    # ring stubs to the near wall
        arcs.append((f"b^{m}", f"xda^{m}"))
        arcs.append((f"db^{m}", f"xa^{m}"))
    arcs += [("a^1", "z"), ("z", "b^1"), ("da^1", "z"), ("z", "db^1")]
    return ColoredDoodle(tuple(pts), tuple(arcs))


def _geodesic_intersection(a, b, c, d) -> tuple:
    """Intersection of great-circle segments ab and cd (the one between
    the endpoints)."""
    n1 = np.cross(a, b)
    n2 = np.cross(c, d)
    line = np.cross(n1, n2)
    line = _unit(line)
    for cand in (line, -line):
        if (np.dot(cand, np.asarray(a) + np.asarray(b)) > 0
                and np.dot(cand, np.asarray(c) + np.asarray(d)) > 0):
            return tuple(cand)
    raise MergeAmbiguity("geodesic segments do not cross")


# --- expansion -------------------------------------------------------------------

@dataclass
class ExpandedMaps:
    squares: SphericalMap
    colors: tuple            # per squares-vertex color
    positions: tuple         # per squares-vertex xyz
    primal: SphericalMap
    dual: SphericalMap


class _PointMerger:
    """Spatial clustering with the merge tolerance; distinct features
    stay far apart by the placement-grid rule, so a small uniform grid
    suffices."""

    def __init__(self):
        self.cell = 1e-5
        self.grid = {}
        self.positions = []
        self.colors = []

    def _cell_of(self, p):
        return tuple(int(math.floor(c / self.cell)) for c in p)

    def add(self, p, color: str) -> int:
        cx, cy, cz = self._cell_of(p)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for idx in self.grid.get((cx + dx, cy + dy, cz + dz), ()):
                        if np.linalg.norm(self.positions[idx] - p) <= MERGE_TOL:
                            if self.colors[idx] != color:
                                raise MergeAmbiguity(
                                    f"colors {self.colors[idx]} and {color} "
                                    f"collide at {tuple(p)}")
                            return idx
        idx = len(self.positions)
        self.positions.append(np.asarray(p, dtype=float))
        self.colors.append(color)
        self.grid.setdefault((cx, cy, cz), []).append(idx)
        return idx


def _swap(color: str) -> str:
    if color == PRIMAL:
        return DUAL
    if color == DUAL:
        return PRIMAL
    return color


def expand_doodle(doodle: ColoredDoodle,
                  region: FundamentalRegion) -> ExpandedMaps:
    """Apply every element of the two-color group to the doodle and
    rebuild the overlay map, its primal part and its dual part.

    Color-preserving elements keep point colors, color-reversing ones
    exchange primal and dual; coincident placements must agree after
    that rule, anything else raises MergeAmbiguity.
    """
    doodle.validate(region)
    elements = region.group_elements()
    merger = _PointMerger()
    arc_nodes = {}
    arc_geometry = {}

    point_xyz = {p.label: np.asarray(p.xyz, dtype=float) for p in doodle.points}
    point_color = {p.label: p.color for p in doodle.points}
    arc_colors = {}
    for a, b in doodle.arcs:
        ca, cb = point_color[a], point_color[b]
        color = ca if ca != CROSSING else cb
        if ca != CROSSING and cb != CROSSING and ca != cb:
            raise MergeAmbiguity(f"arc ({a!r}, {b!r}) joins different colors")
        arc_colors[(a, b)] = color

    for m, reverses in elements:
        node_of = {}
        for p in doodle.points:
            color = _swap(p.color) if reverses else p.color
            node_of[p.label] = merger.add(m @ point_xyz[p.label], color)
        for a, b in doodle.arcs:
            na, nb = node_of[a], node_of[b]
            if na == nb:
                raise MergeAmbiguity(f"arc ({a!r}, {b!r}) collapses")
            key = (na, nb) if na < nb else (nb, na)
            color = _swap(arc_colors[(a, b)]) if reverses else arc_colors[(a, b)]
            prev = arc_nodes.get(key)
            if prev is None:
                arc_nodes[key] = color
                arc_geometry[key] = (m @ point_xyz[a], m @ point_xyz[b])
            elif prev != color:
                raise MergeAmbiguity(f"arc colors collide on {key}")

    positions = merger.positions
    colors = merger.colors
    n = len(positions)
    width = len(str(max(n - 1, 1)))
    names = [f"n{idx:0{width}d}" for idx in range(n)]

    incident = [[] for _ in range(n)]
    for (na, nb) in arc_nodes:
        incident[na].append(nb)
        incident[nb].append(na)

    rotation = {}
    for idx in range(n):
        p = positions[idx]
        e1 = _unit(np.cross(p, [0.41, 0.13, 0.89])
                   if abs(np.dot(_unit(p), _unit([0.41, 0.13, 0.89]))) < 0.99
                   else np.cross(p, [1.0, 0.0, 0.0]))
        e2 = np.cross(p, e1)

        def angle_to(other_idx, p=p, e1=e1, e2=e2, idx=idx):
            key = (idx, other_idx) if idx < other_idx else (other_idx, idx)
            ga, gb = arc_geometry[key]
            far = gb if np.linalg.norm(ga - p) <= MERGE_TOL else ga
            t = far - np.dot(far, p) * p
            norm = np.linalg.norm(t)
            if norm < 1e-12:
                raise MergeAmbiguity("arc endpoint degenerates at a pole")
            t = t / norm
            return math.atan2(np.dot(t, e2), np.dot(t, e1))

        rotation[names[idx]] = [names[j] for j in
                                sorted(incident[idx], key=angle_to)]

    squares = map_from_neighbor_rotations(rotation, labels=names)
    color_by_name = {names[i]: colors[i] for i in range(n)}
    squares_colors = tuple(color_by_name[squares.label_of(v)]
                           for v in range(squares.vertex_count))
    squares_positions = tuple(tuple(positions[int(squares.label_of(v)[1:])])
                              for v in range(squares.vertex_count))

    primal = _extract_monochrome(rotation, color_by_name, arc_nodes, names, PRIMAL)
    dual = _extract_monochrome(rotation, color_by_name, arc_nodes, names, DUAL)
    return ExpandedMaps(squares, squares_colors, squares_positions, primal, dual)


def _extract_monochrome(rotation, color_by_name, arc_nodes, names, keep: str):
    """Restrict the overlay to one color class, smoothing the degree-2
    crossing vertices out of the edges."""
    def arc_color(a, b):
        ia, ib = int(a[1:]), int(b[1:])
        key = (ia, ib) if ia < ib else (ib, ia)
        return arc_nodes[key]

    def resolve(prev, node):
        # walk through crossings until a kept vertex appears
        while color_by_name[node] == CROSSING:
            nxt = [x for x in rotation[node]
                   if arc_color(node, x) == keep and x != prev]
            if len(nxt) != 1:
                raise MergeAmbiguity(
                    f"crossing {node} has {len(nxt) + 1} {keep} arcs")
            prev, node = node, nxt[0]
        return node

    rot = {}
    for name in names:
        if color_by_name[name] != keep:
            continue
        nbrs = [x for x in rotation[name] if arc_color(name, x) == keep]
        rot[name] = [resolve(name, x) for x in nbrs]
    return map_from_neighbor_rotations(rot)


# --- symmetric embeddings of the families ------------------------------------------

@dataclass(frozen=True)
class EmbeddedFamily:
    vertex_xyz: dict   # vertex label -> xyz
    face_xyz: dict     # face index -> xyz (dual vertex positions)


def embed_on_sphere(lm: LabeledMap) -> EmbeddedFamily:
    """Concentric-circle coordinates with the cusp at the south pole;
    the catalog generators act as exact isometries of the vertex set
    and dual vertices sit at the antipodes of primal ones."""
    if not isinstance(lm, LabeledMap) or lm.family not in (WHEEL, MULTIWHEEL,
                                                           HYPERWHEEL):
        raise UnsupportedMap("only family instances have symmetric embeddings")
    q, l = lm.q, lm.l
    coords = {"c": latlong(-math.pi / 2, 0.0)}
    if lm.family in (WHEEL, MULTIWHEEL):
        delta = (math.pi / 2) / (2 * l + 2)
        for i in range(1, q + 1):
            lon = 2 * math.pi * (i - 1) / q
            for j in range(1, l + 1):
                coords[f"a_{i}^{j}"] = latlong((2 * j - l - 0.5) * delta, lon)
    else:
        delta = (math.pi / 2) / (2 * l + 1)
        for i in range(1, q + 1):
            lon = 2 * math.pi * (i - 1) / q
            for j in range(1, l + 1):
                coords[f"a_{i}^{j}"] = latlong(2 * j * delta, lon)
                coords[f"b_{i}^{j}"] = latlong(-(2 * j - 1) * delta,
                                               lon + math.pi / q)
    tau = family_involution(lm)
    g = lm.map
    face_xyz = {}
    for label, cycle in tau.items():
        f = g.face_by_vertex_set({g.vertex_by_label(x) for x in cycle})
        face_xyz[f] = tuple(-c for c in coords[label])
    return EmbeddedFamily(coords, face_xyz)
