"""Symmetries of spherical maps.

Automorphisms and dualities are found by flag propagation: the image of
one dart plus a global orientation determines the whole dart bijection,
so trying all 2E * 2 candidates enumerates the full groups exactly.
Each symmetry also carries its incidence permutation on the combined
index space  vertices | edges | faces,  which is what composes, what
has an order, and what a strong involution squares on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional

from . import coxeter
from .errors import (
    AmbiguousMatch,
    NoCatalogMatch,
    NotPolyhedral,
    NotSelfDual,
    UnknownFace,
    UnknownVertex,
)
from .maps import SphericalMap, validate_polyhedral

AUTOMORPHISM = "automorphism"
DUALITY = "duality"
PRESERVING = "preserving"
REVERSING = "reversing"


@dataclass(frozen=True)
class MapSymmetry:
    """A dart bijection realizing an automorphism (G -> G) or a duality
    (G -> dual of G), with its incidence permutation."""

    kind: str
    orientation: str
    dart_image: tuple
    incidence: tuple

    @property
    def order(self) -> int:
        n = len(self.incidence)
        seen = [False] * n
        result = 1
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.incidence[x]
                length += 1
            result = result * length // gcd(result, length)
        return result

    def is_involution(self) -> bool:
        return all(self.incidence[self.incidence[i]] == i
                   for i in range(len(self.incidence)))


def _require_polyhedral(g: SphericalMap) -> None:
    rep = validate_polyhedral(g)
    if not rep.polyhedral:
        raise NotPolyhedral(
            f"map is {'' if rep.simple else 'not '}simple and "
            f"{'' if rep.three_connected else 'not '}3-connected")


def _propagate(g: SphericalMap, t_sigma, t_sigma_inv, image: int,
               reverse: bool) -> Optional[list]:
    """Extend dart 0 -> image to a structure map, or fail."""
    n = g.dart_count
    f = [-1] * n
    f[0] = image
    stack = [0]
    sig = g.sigma
    while stack:
        x = stack.pop()
        fx = f[x]
        y = x ^ 1
        fy = fx ^ 1
        if f[y] < 0:
            f[y] = fy
            stack.append(y)
        elif f[y] != fy:
            return None
        y = sig[x]
        fy = t_sigma_inv[fx] if reverse else t_sigma[fx]
        if f[y] < 0:
            f[y] = fy
            stack.append(y)
        elif f[y] != fy:
            return None
    return f if len(set(f)) == n else None


def _aut_incidence(g: SphericalMap, f, reverse: bool) -> tuple:
    # a mirror maps the face left of a dart to the face right of its
    # image, hence the twin flip in the reversing case
    nv, ne, nf = g.vertex_count, g.edge_count, g.face_count
    pi = [0] * (nv + ne + nf)
    for v in range(nv):
        pi[v] = g.origin[f[g.rotations[v][0]]]
    for e in range(ne):
        pi[nv + e] = nv + f[2 * e] // 2
    flip = 1 if reverse else 0
    for j in range(nf):
        pi[nv + ne + j] = nv + ne + g.face_of[f[g.faces[j][0]] ^ flip]
    return tuple(pi)


def _duality_incidence(g: SphericalMap, f, reverse: bool) -> tuple:
    nv, ne, nf = g.vertex_count, g.edge_count, g.face_count
    pi = [0] * (nv + ne + nf)
    for v in range(nv):
        pi[v] = nv + ne + g.face_of[f[g.rotations[v][0]]]
    for e in range(ne):
        pi[nv + e] = nv + f[2 * e] // 2
    flip = 0 if reverse else 1
    for j in range(nf):
        pi[nv + ne + j] = g.origin[f[g.faces[j][0]] ^ flip]
    return tuple(pi)


def enumerate_automorphisms(g: SphericalMap) -> list:
    """All map automorphisms, base-flag images in increasing order.
    Complete because a 3-connected planar map is uniquely embedded."""
    _require_polyhedral(g)
    base_deg = g.vertex_degree(g.origin[0])
    out = []
    for image in range(g.dart_count):
        if g.vertex_degree(g.origin[image]) != base_deg:
            continue
        for reverse in (False, True):
            f = _propagate(g, g.sigma, g.sigma_inv, image, reverse)
            if f is not None:
                out.append(MapSymmetry(
                    AUTOMORPHISM,
                    REVERSING if reverse else PRESERVING,
                    tuple(f),
                    _aut_incidence(g, f, reverse)))
    return out


def enumerate_dualities(g: SphericalMap) -> list:
    """All duality isomorphisms onto the dual map; empty iff the map is
    not self-dual.  The dual shares the dart set, so images are darts."""
    _require_polyhedral(g)
    if g.vertex_count != g.face_count:
        return []
    face_next, face_prev = g.face_next, g.face_prev
    base_deg = g.vertex_degree(g.origin[0])
    out = []
    for image in range(g.dart_count):
        if len(g.faces[g.face_of[image]]) != base_deg:
            continue
        for reverse in (False, True):
            f = _propagate(g, face_next, face_prev, image, reverse)
            if f is not None:
                out.append(MapSymmetry(
                    DUALITY,
                    REVERSING if reverse else PRESERVING,
                    tuple(f),
                    _duality_incidence(g, f, reverse)))
    return out


@dataclass(frozen=True)
class DualityGroup:
    """Aut(G) together with its duality coset, closed under composition."""

    elements: tuple
    aut_count: int
    iso_count: int


def compose_incidence(p: tuple, q: tuple) -> tuple:
    """Permutation applying q first, then p."""
    return tuple(p[x] for x in q)


def dual_group(g: SphericalMap) -> DualityGroup:
    auts = enumerate_automorphisms(g)
    isos = enumerate_dualities(g)
    if not isos:
        raise NotSelfDual("map admits no duality isomorphism")
    if len(isos) != len(auts):
        raise AssertionError("duality coset size differs from Aut size")
    elements = tuple(auts + isos)
    table = {s.incidence: s.kind for s in elements}
    if len(table) != len(elements):
        raise AssertionError("incidence permutations are not distinct")
    for a in elements:
        for b in elements:
            c = compose_incidence(a.incidence, b.incidence)
            kind = table.get(c)
            if kind is None:
                raise AssertionError("group is not closed under composition")
            expected = AUTOMORPHISM if (a.kind == b.kind) else DUALITY
            if kind != expected:
                raise AssertionError("composition has the wrong kind")
    return DualityGroup(elements, len(auts), len(isos))


# --- strong involutions -----------------------------------------------------


def _resolve_vertex(g: SphericalMap, key) -> int:
    if isinstance(key, int):
        if 0 <= key < g.vertex_count:
            return key
        raise UnknownVertex(f"vertex {key} out of range")
    try:
        return g.vertex_by_label(str(key))
    except (KeyError, ValueError) as exc:
        raise UnknownVertex(f"unknown vertex {key!r}") from exc


def _resolve_face(g: SphericalMap, value) -> int:
    if isinstance(value, int):
        if 0 <= value < g.face_count:
            return value
        raise UnknownFace(f"face {value} out of range")
    try:
        vset = {_resolve_vertex(g, x) for x in value}
    except TypeError as exc:
        raise UnknownFace(f"cannot interpret face {value!r}") from exc
    try:
        return g.face_by_vertex_set(vset)
    except (KeyError, ValueError) as exc:
        raise UnknownFace(str(exc)) from exc


def resolve_assignment(g: SphericalMap, assignment: dict) -> dict:
    """Normalize a vertex -> face assignment to integer ids."""
    tau = {}
    for k, v in assignment.items():
        tau[_resolve_vertex(g, k)] = _resolve_face(g, v)
    if set(tau) != set(range(g.vertex_count)):
        missing = sorted(set(range(g.vertex_count)) - set(tau))
        raise UnknownVertex(f"assignment not total, missing {missing}")
    return tau


def _duality_for_assignment(g: SphericalMap, tau: dict) -> Optional[MapSymmetry]:
    """The unique dart bijection realizing the vertex -> face map, if
    the map is simple and the assignment lifts to a map isomorphism."""
    face_of_twin = [g.face_of[d ^ 1] for d in range(g.dart_count)]
    f = [-1] * g.dart_count
    for d in range(g.dart_count):
        u, v = g.origin[d], g.origin[d ^ 1]
        fu, fv = tau[u], tau[v]
        hits = [e for e in g.faces[fu] if face_of_twin[e] == fv]
        if len(hits) != 1:
            return None
        f[d] = hits[0]
    if len(set(f)) != g.dart_count:
        return None
    for reverse, target in ((False, g.face_next), (True, g.face_prev)):
        if all(f[g.sigma[d]] == target[f[d]] for d in range(g.dart_count)):
            return MapSymmetry(DUALITY, REVERSING if reverse else PRESERVING,
                               tuple(f), _duality_incidence(g, f, reverse))
    return None


@dataclass(frozen=True)
class StrongInvolutionReport:
    is_duality: bool
    cond_i: bool
    cond_ii: bool
    is_involution: bool
    vertex_to_face: dict
    symmetry: Optional[MapSymmetry]

    @property
    def strong(self) -> bool:
        return self.is_duality and self.cond_i and self.cond_ii


@dataclass(frozen=True)
class StrongInvolution:
    """A duality satisfying the exchange and off-diagonal conditions."""

    vertex_to_face: dict
    underlying: MapSymmetry


def _conditions(g: SphericalMap, tau: dict) -> tuple:
    fsets = [frozenset(g.face_vertices(f)) for f in range(g.face_count)]
    cond_i = all((u in fsets[tau[v]]) == (v in fsets[tau[u]])
                 for u in range(g.vertex_count)
                 for v in range(u, g.vertex_count))
    cond_ii = all(v not in fsets[tau[v]] for v in range(g.vertex_count))
    return cond_i, cond_ii


def verify_strong_involution(g: SphericalMap, assignment: dict) -> StrongInvolutionReport:
    """Check the four defining properties of a strong involution
    independently: lifts to a duality, symmetric membership, no vertex
    on its own image face, and the induced incidence permutation is an
    involution."""
    tau = resolve_assignment(g, assignment)
    cond_i, cond_ii = _conditions(g, tau)

    is_duality = len(set(tau.values())) == g.face_count
    if is_duality:
        face_adj = {(g.face_of[2 * e], g.face_of[2 * e + 1])
                    for e in range(g.edge_count)}
        face_adj |= {(b, a) for a, b in face_adj}
        for e in range(g.edge_count):
            u, v = g.edge_endpoints(e)
            if (tau[u], tau[v]) not in face_adj:
                is_duality = False
                break

    symmetry = _duality_for_assignment(g, tau) if is_duality else None
    if is_duality and symmetry is None:
        # adjacency-preserving bijection that does not lift to a map
        # isomorphism cannot happen for 3-connected maps
        is_duality = False
    is_involution = bool(symmetry) and symmetry.is_involution()
    return StrongInvolutionReport(
        is_duality=is_duality, cond_i=cond_i, cond_ii=cond_ii,
        is_involution=is_involution, vertex_to_face=tau, symmetry=symmetry)


def iter_strong_involutions(g: SphericalMap) -> Iterator[StrongInvolution]:
    """Exhaustive filter of the duality list by the two conditions."""
    nv, ne = g.vertex_count, g.edge_count
    fsets = [frozenset(g.face_vertices(f)) for f in range(g.face_count)]
    for sym in enumerate_dualities(g):
        tau = {v: sym.incidence[v] - nv - ne for v in range(nv)}
        if any(v in fsets[tau[v]] for v in range(nv)):
            continue
        if all((u in fsets[tau[v]]) == (v in fsets[tau[u]])
               for u in range(nv) for v in range(u + 1, nv)):
            yield StrongInvolution(tau, sym)


def find_strong_involutions(g: SphericalMap) -> list:
    return list(iter_strong_involutions(g))


def involution_to_json(g: SphericalMap, si: StrongInvolution) -> dict:
    """Vertex label -> face vertex cycle, the on-disk involution format."""
    return {g.label_of(v): [g.label_of(u) for u in g.face_vertices(f)]
            for v, f in sorted(si.vertex_to_face.items())}


# --- pairing identification ---------------------------------------------------

@dataclass(frozen=True)
class PairingSignature:
    dual_order: int
    aut_order: int
    element_profile: tuple  # sorted (order, sign, side) triples
    central_free_in_aut: bool
    central_free_in_iso: bool


def map_signature(g: SphericalMap, auts=None, isos=None) -> PairingSignature:
    if auts is None:
        auts = enumerate_automorphisms(g)
    if isos is None:
        isos = enumerate_dualities(g)
    elements = list(auts) + list(isos)
    profile = []
    central = {("aut", True): False, ("iso", True): False}
    n = len(elements[0].incidence)
    for s in elements:
        side = "aut" if s.kind == AUTOMORPHISM else "iso"
        sign = 1 if s.orientation == PRESERVING else -1
        profile.append((s.order, sign, side))
        if s.is_involution() and all(s.incidence[i] != i for i in range(n)):
            if all(compose_incidence(s.incidence, t.incidence)
                   == compose_incidence(t.incidence, s.incidence)
                   for t in elements):
                central[(side, True)] = True
    return PairingSignature(
        dual_order=len(elements),
        aut_order=len(auts),
        element_profile=tuple(sorted(profile)),
        central_free_in_aut=central[("aut", True)],
        central_free_in_iso=central[("iso", True)],
    )


@dataclass(frozen=True)
class IdentifiedPairing:
    """Concrete pairing symbols for a self-dual map, aut < dual."""

    aut: str
    dual: str
    record: coxeter.PairingRecord
    q: int
    antipodal: bool

    def __str__(self) -> str:
        return f"{self.aut} < {self.dual}"


def identify_pairing(g: SphericalMap, auts=None, isos=None) -> IdentifiedPairing:
    """Match the map's symmetry signature against the 24 catalog rows.

    The match is on group orders, the (element order, orientation, side)
    multiset, and the two free-central-involution bits; this separates
    every catalog entry over the instantiated parameter range.
    """
    if auts is None:
        auts = enumerate_automorphisms(g)
    if isos is None:
        isos = enumerate_dualities(g)
    if not isos:
        raise NotSelfDual("map admits no duality isomorphism")
    sig = map_signature(g, auts, isos)
    target = coxeter.GroupSignature(
        sig.dual_order, sig.aut_order, sig.element_profile,
        sig.central_free_in_aut, sig.central_free_in_iso)
    matches = []
    for rec in coxeter.pairing_catalog():
        q = coxeter.resolve_q(rec, sig.dual_order)
        if q is None:
            continue
        cs = coxeter.catalog_signature(rec, q if rec.is_parameterized else None)
        if cs == target:
            matches.append((rec, q))
    if not matches:
        raise NoCatalogMatch(f"no pairing with signature {target}")
    if len(matches) > 1:
        # a q = 1 instantiation of an infinite class can alias a special
        # row; the special row is the canonical name
        special = [(r, q) for r, q in matches if not r.is_parameterized]
        if len(special) == 1:
            matches = special
    if len(matches) > 1:
        names = [r.printed_name for r, _ in matches]
        raise AmbiguousMatch(f"signature matches {names}")
    rec, q = matches[0]
    inst = rec.instantiate(q if rec.is_parameterized else None)
    return IdentifiedPairing(
        aut=str(inst.aut_symbol), dual=str(inst.dual_symbol),
        record=rec, q=q, antipodal=inst.antipodal)
