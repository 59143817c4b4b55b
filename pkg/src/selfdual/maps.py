"""Embedded spherical maps as rotation systems.

A map is stored as a permutation pair on darts (directed half-edges).
Darts are dense integers 0..2E-1 and the twin of dart d is d ^ 1, so
edge i owns darts 2i and 2i+1.  The rotation at a vertex lists its
outgoing darts in counterclockwise order as seen from outside the
sphere.  Faces are traced with one fixed convention used everywhere:

    next dart of the face containing d  =  twin(predecessor of d in the
                                            rotation at origin(d))

With this convention the dual of the dual is the original map up to the
twin relabeling, which tests rely on.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    DisconnectedMap,
    EulerViolation,
    FormatError,
    NonInvolutiveTwin,
)

PRESERVING = "preserving-only"
FULL = "full"
_ORIENTATION_CLASSES = (PRESERVING, FULL)


@dataclass(frozen=True)
class Dart:
    """Read-only view of one dart."""

    id: int
    origin: int
    twin: int


@dataclass(frozen=True)
class CanonicalCode:
    """Comparable isomorphism key.  Equal codes mean isomorphic maps
    over the chosen orientation class."""

    code: tuple
    orientation_class: str


@dataclass(frozen=True)
class PolyhedralityReport:
    simple: bool
    three_connected: bool

    @property
    def polyhedral(self) -> bool:
        return self.simple and self.three_connected


class SphericalMap:
    """Connected genus-0 map given by a rotation system.

    Immutable after construction; all derived structure (twin, face
    orbits, labels) is computed once.  Use :func:`from_rotation_system`
    or the JSON loader instead of calling the constructor directly.
    """

    __slots__ = (
        "vertex_count",
        "rotations",
        "labels",
        "dart_count",
        "origin",
        "sigma",
        "sigma_inv",
        "face_next",
        "face_prev",
        "faces",
        "face_of",
        "primal_face_cycles",
        "_adjacency",
        "_canonical",
    )

    def __init__(self, vertex_count, rotations, labels=None,
                 primal_face_cycles=None):
        rotations = tuple(tuple(r) for r in rotations)
        darts = [d for rot in rotations for d in rot]
        n = len(darts)
        if n % 2 != 0 or sorted(darts) != list(range(n)):
            raise NonInvolutiveTwin(
                "rotations must partition the dart set 0..2E-1")
        if vertex_count != len(rotations):
            raise FormatError("one rotation cycle per vertex required")
        if any(len(r) == 0 for r in rotations):
            raise DisconnectedMap("isolated vertex")

        origin = [0] * n
        sigma = [0] * n
        sigma_inv = [0] * n
        for v, rot in enumerate(rotations):
            k = len(rot)
            for i, d in enumerate(rot):
                origin[d] = v
                nxt = rot[(i + 1) % k]
                sigma[d] = nxt
                sigma_inv[nxt] = d

        # connectivity over the dart graph generated by twin and sigma
        if n:
            seen = [False] * n
            stack = [0]
            seen[0] = True
            reached = 1
            while stack:
                d = stack.pop()
                for e in (d ^ 1, sigma[d]):
                    if not seen[e]:
                        seen[e] = True
                        reached += 1
                        stack.append(e)
            if reached != n:
                raise DisconnectedMap("map is not connected")

        # next dart of the face containing d is twin(sigma_inv(d))
        face_next = [sigma_inv[d] ^ 1 for d in range(n)]
        face_prev = [0] * n
        for d in range(n):
            face_prev[face_next[d]] = d

        face_of = [-1] * n
        faces = []
        for d in range(n):
            if face_of[d] >= 0:
                continue
            idx = len(faces)
            orbit = []
            e = d
            while face_of[e] < 0:
                face_of[e] = idx
                orbit.append(e)
                e = face_next[e]
            faces.append(tuple(orbit))

        v_count = vertex_count
        e_count = n // 2
        f_count = len(faces)
        if n and v_count - e_count + f_count != 2:
            raise EulerViolation(
                f"V-E+F = {v_count}-{e_count}+{f_count} != 2 (genus > 0)")

        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != vertex_count or len(set(labels)) != vertex_count:
                raise FormatError("labels must be distinct, one per vertex")

        self.vertex_count = vertex_count
        self.rotations = rotations
        self.labels = labels
        self.dart_count = n
        self.origin = tuple(origin)
        self.sigma = tuple(sigma)
        self.sigma_inv = tuple(sigma_inv)
        self.face_next = tuple(face_next)
        self.face_prev = tuple(face_prev)
        self.faces = tuple(faces)
        self.face_of = tuple(face_of)
        self.primal_face_cycles = (
            tuple(tuple(c) for c in primal_face_cycles)
            if primal_face_cycles is not None else None)
        self._adjacency = None
        self._canonical = {}

    # --- basic accessors ---------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self.dart_count // 2

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def dart(self, d: int) -> Dart:
        return Dart(d, self.origin[d], d ^ 1)

    def twin(self, d: int) -> int:
        return d ^ 1

    def edge_of(self, d: int) -> int:
        return d // 2

    def edge_endpoints(self, e: int) -> tuple:
        return (self.origin[2 * e], self.origin[2 * e + 1])

    def face_vertices(self, f: int) -> tuple:
        """Vertex cycle of face f in boundary order."""
        return tuple(self.origin[d] for d in self.faces[f])

    def vertex_degree(self, v: int) -> int:
        return len(self.rotations[v])

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels else f"v{v}"

    def vertex_by_label(self, label: str) -> int:
        if self.labels is None:
            if label.startswith("v") and label[1:].isdigit():
                return int(label[1:])
            raise KeyError(label)
        return self.labels.index(label)

    def adjacency(self):
        """Neighbor sets, computed once."""
        if self._adjacency is None:
            adj = [set() for _ in range(self.vertex_count)]
            for e in range(self.edge_count):
                u, v = self.edge_endpoints(e)
                adj[u].add(v)
                adj[v].add(u)
            self._adjacency = tuple(frozenset(s) for s in adj)
        return self._adjacency

    def faces_at_vertex(self, v: int) -> tuple:
        return tuple(sorted({self.face_of[d] for d in self.rotations[v]}))

    def face_by_vertex_set(self, vertex_set) -> int:
        """Face whose vertex set equals ``vertex_set``; raises KeyError if
        missing, ValueError if two faces share the set."""
        target = frozenset(vertex_set)
        hits = [f for f in range(self.face_count)
                if frozenset(self.face_vertices(f)) == target]
        if not hits:
            raise KeyError(f"no face with vertices {sorted(target)}")
        if len(hits) > 1:
            raise ValueError(f"vertex set {sorted(target)} names several faces")
        return hits[0]

    def __repr__(self):
        return (f"SphericalMap(V={self.vertex_count}, E={self.edge_count}, "
                f"F={self.face_count})")

    # --- canonical form ------------------------------------------------------

    def _traversal(self, d0: int, reverse: bool):
        """Deterministic dart order from start dart d0.

        Vertices are processed breadth-first; when a vertex is first
        entered through dart d its whole rotation is read starting at d,
        in reversed order when ``reverse``.  Every dart gets a position.
        """
        new = [-1] * self.dart_count
        order = []
        done = [False] * self.vertex_count
        queue = deque([d0])
        while queue:
            d = queue.popleft()
            v = self.origin[d]
            if done[v]:
                continue
            done[v] = True
            rot = self.rotations[v]
            k = len(rot)
            i = rot.index(d)
            step = -1 if reverse else 1
            for j in range(k):
                e = rot[(i + step * j) % k]
                new[e] = len(order)
                order.append(e)
                queue.append(e ^ 1)
        return new, order

    def _code_from(self, d0: int, reverse: bool):
        new, order = self._traversal(d0, reverse)
        code = [self.vertex_count]
        pos = 0
        while pos < len(order):
            deg = len(self.rotations[self.origin[order[pos]]])
            code.append(deg)
            for j in range(pos, pos + deg):
                code.append(new[order[j] ^ 1])
            pos += deg
        return tuple(code)

    def canonical_code(self, orientation_class: str = FULL) -> CanonicalCode:
        """Minimal traversal code over all start darts (and both global
        orientations for class ``full``).  Equal codes are equivalent to
        the existence of an isomorphism."""
        if orientation_class not in _ORIENTATION_CLASSES:
            raise ValueError(f"unknown orientation class {orientation_class}")
        if orientation_class not in self._canonical:
            reversals = (False,) if orientation_class == PRESERVING else (False, True)
            best = None
            for rev in reversals:
                for d0 in range(self.dart_count):
                    c = self._code_from(d0, rev)
                    if best is None or c < best:
                        best = c
            self._canonical[orientation_class] = CanonicalCode(best, orientation_class)
        return self._canonical[orientation_class]


def from_rotation_system(vertex_count: int,
                         rotations: Sequence[Sequence[int]],
                         labels: Optional[Sequence[str]] = None) -> SphericalMap:
    """Validate and build a :class:`SphericalMap` from per-vertex dart cycles."""
    return SphericalMap(vertex_count, rotations, labels=labels)


def dual_map(g: SphericalMap) -> SphericalMap:
    """Dual map on the same dart set.

    The dual has one vertex per face of ``g``; its rotation at that
    vertex is the face orbit itself, and twin is unchanged, so edge i of
    the dual crosses edge i of ``g``.  Each dual vertex keeps the primal
    face's vertex cycle for O(face degree) incidence tests.
    """
    cycles = tuple(g.face_vertices(f) for f in range(g.face_count))
    labels = tuple(f"f{f}" for f in range(g.face_count))
    return SphericalMap(g.face_count, g.faces, labels=labels,
                        primal_face_cycles=cycles)


def validate_polyhedral(g: SphericalMap) -> PolyhedralityReport:
    """Exact simplicity and 3-connectivity report.

    3-connectivity is decided by exhaustive 2-vertex-cut search, which
    is exact and fast enough for maps up to a few hundred vertices.
    """
    if g.vertex_count > 200:
        raise ValueError("exhaustive cut search is limited to V <= 200")
    simple = True
    seen_pairs = set()
    for e in range(g.edge_count):
        u, v = g.edge_endpoints(e)
        if u == v:
            simple = False
            break
        key = (u, v) if u < v else (v, u)
        if key in seen_pairs:
            simple = False
            break
        seen_pairs.add(key)

    three = simple and g.vertex_count >= 4
    if three:
        adj = [sorted(s) for s in g.adjacency()]
        nv = g.vertex_count

        def connected_without(skip):
            start = next((x for x in range(nv) if x not in skip), None)
            if start is None:
                return True
            seen = [False] * nv
            seen[start] = True
            stack = [start]
            count = 1
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in skip or seen[y]:
                        continue
                    seen[y] = True
                    count += 1
                    stack.append(y)
            return count == nv - len(skip)

        for a in range(nv):
            if not three:
                break
            for b in range(a + 1, nv):
                if not connected_without({a, b}):
                    three = False
                    break
    return PolyhedralityReport(simple=simple, three_connected=three)


def canonical_code(g: SphericalMap, orientation_class: str = FULL) -> CanonicalCode:
    return g.canonical_code(orientation_class)


def is_isomorphic(g: SphericalMap, h: SphericalMap,
                  orientation_class: str = FULL) -> Optional[dict]:
    """Witness dart bijection g -> h commuting with twin and rotation
    (rotation reversed for mirror witnesses under class ``full``), or
    None.  Consistent with canonical-code equality."""
    if orientation_class not in _ORIENTATION_CLASSES:
        raise ValueError(f"unknown orientation class {orientation_class}")
    if (g.dart_count != h.dart_count or g.vertex_count != h.vertex_count
            or g.face_count != h.face_count):
        return None
    target = g.canonical_code(orientation_class).code
    # recover a start achieving g's canonical code
    g_best = None
    reversals = (False,) if orientation_class == PRESERVING else (False, True)
    for rev in reversals:
        for d0 in range(g.dart_count):
            if g._code_from(d0, rev) == target:
                g_best = (d0, rev)
                break
        if g_best:
            break
    for rev in reversals:
        for d0 in range(h.dart_count):
            if h._code_from(d0, rev) == target:
                _, g_order = g._traversal(*g_best)
                _, h_order = h._traversal(d0, rev)
                return {g_order[i]: h_order[i] for i in range(len(g_order))}
    return None


# --- label-based construction and the map JSON format ------------------------


def map_from_neighbor_rotations(rotation: dict,
                                labels: Optional[Sequence[str]] = None) -> SphericalMap:
    """Build a map from {vertex label: [neighbor labels ccw]}.

    Only simple maps can be written this way (a repeated neighbor would
    be ambiguous).  Raises FormatError on asymmetric adjacency.
    """
    rot = {str(k): [str(x) for x in v] for k, v in rotation.items()}
    if labels is None:
        labels = sorted(rot.keys())
    labels = [str(x) for x in labels]
    if set(labels) != set(rot.keys()) or len(set(labels)) != len(labels):
        raise FormatError("vertex list and rotation keys disagree")

    edges = set()
    for u, nbrs in rot.items():
        if len(set(nbrs)) != len(nbrs):
            raise FormatError(f"parallel edges at {u!r} are not supported")
        for v in nbrs:
            if v not in rot:
                raise FormatError(f"unknown neighbor {v!r} of {u!r}")
            if u == v:
                raise FormatError(f"loop at {u!r} is not supported")
            edges.add((min(u, v), max(u, v)))
    for u, v in edges:
        if v not in rot[u] or u not in rot[v]:
            raise FormatError(f"asymmetric adjacency between {u!r} and {v!r}")

    edge_list = sorted(edges)
    dart_at = {}
    for i, (u, v) in enumerate(edge_list):
        dart_at[(u, v)] = 2 * i
        dart_at[(v, u)] = 2 * i + 1
    rotations = []
    for lab in labels:
        rotations.append([dart_at[(lab, v)] for v in rot[lab]])
    return SphericalMap(len(labels), rotations, labels=labels)


def map_to_json(g: SphericalMap) -> dict:
    """Serialize to the map JSON object (simple maps only)."""
    rep = validate_polyhedral(g)
    if not rep.simple:
        raise FormatError("map JSON cannot encode loops or parallel edges")
    labels = [g.label_of(v) for v in range(g.vertex_count)]
    rot = {}
    for v in range(g.vertex_count):
        rot[labels[v]] = [labels[g.origin[d ^ 1]] for d in g.rotations[v]]
    return {"vertices": labels, "rotation": rot}


def map_from_json(obj: dict) -> SphericalMap:
    if not isinstance(obj, dict) or "vertices" not in obj or "rotation" not in obj:
        raise FormatError("expected an object with 'vertices' and 'rotation'")
    vertices = obj["vertices"]
    rotation = obj["rotation"]
    if not isinstance(vertices, list) or not isinstance(rotation, dict):
        raise FormatError("'vertices' must be a list and 'rotation' an object")
    return map_from_neighbor_rotations(rotation, labels=vertices)


def save_map(g: SphericalMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(map_to_json(g), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_map(path) -> SphericalMap:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
    return map_from_json(obj)
