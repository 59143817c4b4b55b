"""The two layered families of self-dual polyhedra and their explicit
strong involutions.

Both families are rings of vertices around a cusp vertex ``c``:

* multi wheel, levels l, ring size q (odd in strict mode): concentric
  q-cycles ``a_i^j`` joined by radial spokes, cusp in the center.  The
  1-level instance is the ordinary q-wheel.
* multi hyperwheel, ring size q (even in strict mode): a-cycles and
  b-cycles interleaved, an alternating rim (a_1^1 b_1^1 a_2^1 ... b_q^1),
  b-spokes running to the cusp and a-spokes between consecutive
  a-cycles.

Vertex labels follow the ``a_i^j`` scheme with i taken mod q.  The
rotation systems encode the symmetric embedding with the cusp at the
south pole and levels increasing northward.

The involution assignments are written in closed form and then checked
against the actual face set of the built map; a formula error raises
FaceNotFound instead of producing a wrong assignment.  See
docs/involution_formulas.md for how the closed forms were derived and
cross-checked against the exhaustive involution search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BadParams, FaceNotFound, QTooSmall
from .maps import SphericalMap, map_from_neighbor_rotations

WHEEL = "wheel"
MULTIWHEEL = "multiwheel"
HYPERWHEEL = "hyperwheel"
FAMILIES = (WHEEL, MULTIWHEEL, HYPERWHEEL)


@dataclass(frozen=True)
class FamilyParams:
    q: int
    l: int = 1

    def check(self, family: str, strict: bool = True) -> None:
        if self.l < 1:
            raise BadParams("level count must be >= 1")
        if self.q < 3:
            raise QTooSmall("ring size must be >= 3")
        if strict and family == MULTIWHEEL and self.q % 2 == 0:
            raise BadParams("multi wheels need odd q (strict mode)")
        if family == HYPERWHEEL:
            if self.q < 4:
                raise QTooSmall("hyperwheels need q >= 4")
            if strict and self.q % 2 == 1:
                raise BadParams("hyperwheels need even q (strict mode)")


@dataclass(frozen=True)
class LabeledMap:
    """A family instance; vertex labels identify ring positions."""

    map: SphericalMap
    family: str
    q: int
    l: int
    strict: bool = True

    @property
    def cusp(self) -> str:
        return "c"


def _a(i: int, j: int, q: int) -> str:
    return f"a_{(i - 1) % q + 1}^{j}"


def _b(i: int, j: int, q: int) -> str:
    return f"b_{(i - 1) % q + 1}^{j}"


def build_wheel(q: int) -> LabeledMap:
    """q-cycle plus a hub adjacent to every ring vertex."""
    if q < 3:
        raise QTooSmall("wheels need q >= 3")
    lm = build_multi_wheel(q, 1, strict=False)
    return LabeledMap(lm.map, WHEEL, q, 1, strict=(q % 2 == 1))


def build_multi_wheel(q: int, l: int = 1, strict: bool = True) -> LabeledMap:
    """Concentric q-cycles with radial spokes and a central cusp;
    V = ql + 1, E = 2ql, F = ql + 1."""
    params = FamilyParams(q, l)
    params.check(MULTIWHEEL, strict=strict)
    rot = {}
    rot["c"] = [_a(i, 1, q) for i in range(q, 0, -1)]
    for j in range(1, l + 1):
        for i in range(1, q + 1):
            inward = "c" if j == 1 else _a(i, j - 1, q)
            if j < l:
                rot[_a(i, j, q)] = [_a(i + 1, j, q), _a(i, j + 1, q),
                                    _a(i - 1, j, q), inward]
            else:
                rot[_a(i, j, q)] = [_a(i + 1, j, q), _a(i - 1, j, q), inward]
    g = map_from_neighbor_rotations(rot)
    assert g.vertex_count == q * l + 1 and g.edge_count == 2 * q * l
    return LabeledMap(g, MULTIWHEEL, q, l, strict=strict)


def build_multi_hyperwheel(q: int, l: int = 1, strict: bool = True) -> LabeledMap:
    """Interleaved a/b rings with an alternating rim and a cusp;
    V = 2ql + 1, E = 4ql, F = 2ql + 1."""
    params = FamilyParams(q, l)
    params.check(HYPERWHEEL, strict=strict)
    rot = {}
    rot["c"] = [_b(i, l, q) for i in range(q, 0, -1)]
    for i in range(1, q + 1):
        # a-ring vertices, level 1 carries the rim
        if l == 1:
            rot[_a(i, 1, q)] = [_a(i + 1, 1, q), _a(i - 1, 1, q),
                                _b(i - 1, 1, q), _b(i, 1, q)]
            rot[_b(i, 1, q)] = [_a(i + 1, 1, q), _a(i, 1, q), "c"]
            continue
        rot[_a(i, 1, q)] = [_a(i + 1, 1, q), _a(i, 2, q), _a(i - 1, 1, q),
                            _b(i - 1, 1, q), _b(i, 1, q)]
        rot[_b(i, 1, q)] = [_a(i + 1, 1, q), _a(i, 1, q), _b(i, 2, q)]
        for j in range(2, l + 1):
            if j < l:
                rot[_a(i, j, q)] = [_a(i + 1, j, q), _a(i, j + 1, q),
                                    _a(i - 1, j, q), _a(i, j - 1, q)]
                rot[_b(i, j, q)] = [_b(i + 1, j, q), _b(i, j - 1, q),
                                    _b(i - 1, j, q), _b(i, j + 1, q)]
            else:
                rot[_a(i, j, q)] = [_a(i + 1, j, q), _a(i - 1, j, q),
                                    _a(i, j - 1, q)]
                rot[_b(i, j, q)] = [_b(i + 1, j, q), _b(i, j - 1, q),
                                    _b(i - 1, j, q), "c"]
    g = map_from_neighbor_rotations(rot)
    assert g.vertex_count == 2 * q * l + 1 and g.edge_count == 4 * q * l
    return LabeledMap(g, HYPERWHEEL, q, l, strict=strict)


def build_family(family: str, q: int, l: int = 1, strict: bool = True) -> LabeledMap:
    if family == WHEEL:
        return build_wheel(q)
    if family == MULTIWHEEL:
        return build_multi_wheel(q, l, strict=strict)
    if family == HYPERWHEEL:
        return build_multi_hyperwheel(q, l, strict=strict)
    raise BadParams(f"unknown family {family!r}")


def _face_cycle(lm: LabeledMap, names) -> tuple:
    """Resolve a vertex-label set to the actual face cycle of the map."""
    g = lm.map
    try:
        f = g.face_by_vertex_set({g.vertex_by_label(n) for n in names})
    except (KeyError, ValueError) as exc:
        raise FaceNotFound(f"{sorted(names)}: {exc}") from exc
    return tuple(g.label_of(v) for v in g.face_vertices(f))


def multiwheel_involution(q: int, l: int = 1,
                          lm: Optional[LabeledMap] = None) -> dict:
    """The closed-form strong involution of the q-multi wheel, q odd.

    Ring vertices map to the quadrilateral (or innermost triangle) on
    the far side, shifted half way around the ring; the cusp maps to
    the outer face."""
    if q % 2 == 0:
        raise BadParams("the closed form needs odd q")
    if lm is None:
        lm = build_multi_wheel(q, l)
    k = (q - 1) // 2
    tau = {}
    for i in range(1, q + 1):
        for j in range(1, l):
            tau[_a(i, j, q)] = _face_cycle(lm, {
                _a(i + k, l - j, q), _a(i + k, l - j + 1, q),
                _a(i - k, l - j, q), _a(i - k, l - j + 1, q)})
        tau[_a(i, l, q)] = _face_cycle(lm, {
            _a(i + k, 1, q), _a(i - k, 1, q), "c"})
    tau["c"] = _face_cycle(lm, {_a(i, l, q) for i in range(1, q + 1)})
    return tau


def hyperwheel_involution(q: int, l: int = 1,
                          lm: Optional[LabeledMap] = None) -> dict:
    """The closed-form strong involution of the q-multi hyperwheel,
    q = 2k even.

    a-vertices map to faces on the b side and vice versa, shifted k
    steps around the ring.  The one-level case degenerates: the cusp
    quadrilaterals absorb the roles of the two innermost face rings."""
    if q % 2 == 1:
        raise BadParams("the closed form needs even q")
    if lm is None:
        lm = build_multi_hyperwheel(q, l)
    k = q // 2
    tau = {}
    for i in range(1, q + 1):
        if l == 1:
            tau[_a(i, 1, q)] = _face_cycle(lm, {
                "c", _b(i + k - 1, 1, q), _a(i + k, 1, q), _b(i + k, 1, q)})
        else:
            tau[_a(i, l, q)] = _face_cycle(lm, {
                _b(i + k - 1, l, q), _b(i + k, l, q), "c"})
            for j in range(2, l):
                tau[_a(i, j, q)] = _face_cycle(lm, {
                    _b(i + k - 1, j, q), _b(i + k, j, q),
                    _b(i + k, j + 1, q), _b(i + k - 1, j + 1, q)})
            tau[_a(i, 1, q)] = _face_cycle(lm, {
                _b(i + k - 1, 2, q), _b(i + k, 2, q), _b(i + k, 1, q),
                _a(i + k, 1, q), _b(i + k - 1, 1, q)})
            for j in range(2, l + 1):
                tau[_b(i, j, q)] = _face_cycle(lm, {
                    _a(i + k, j - 1, q), _a(i + k + 1, j - 1, q),
                    _a(i + k + 1, j, q), _a(i + k, j, q)})
        tau[_b(i, 1, q)] = _face_cycle(lm, {
            _a(i + k, 1, q), _b(i + k, 1, q), _a(i + k + 1, 1, q)})
    tau["c"] = _face_cycle(lm, {_a(i, l, q) for i in range(1, q + 1)})
    return tau


def family_involution(lm: LabeledMap) -> dict:
    if lm.family == HYPERWHEEL:
        return hyperwheel_involution(lm.q, lm.l, lm)
    return multiwheel_involution(lm.q, lm.l, lm)
