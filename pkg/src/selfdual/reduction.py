"""Delete-contraction reduction of strongly involutive polyhedra.

One step contracts an edge e and deletes the edge matched to e by the
strong involution, then demands that the result is again a strongly
involutive polyhedron.  Candidate edges are scanned in a fixed order
(sorted label pairs) and the first success is taken, so traces are
reproducible.  A step exists unless the map is already an odd wheel,
which is where the iteration stops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import NotStronglyInvolutive, SelfDualError, StepFailed
from .families import build_wheel
from .maps import (
    SphericalMap,
    canonical_code,
    map_from_neighbor_rotations,
    map_to_json,
    validate_polyhedral,
)
from .symmetry import (
    StrongInvolution,
    identify_pairing,
    iter_strong_involutions,
    verify_strong_involution,
)


@dataclass(frozen=True)
class ReductionStep:
    contracted: tuple  # (label, label)
    deleted: tuple
    code: tuple        # canonical code of the resulting map
    pairing: str

    def to_json(self) -> dict:
        return {"contracted": list(self.contracted),
                "deleted": list(self.deleted),
                "canonical_code": list(self.code),
                "pairing": self.pairing}


@dataclass
class ReductionTrace:
    initial_pairing: str
    steps: list
    terminal: SphericalMap
    terminal_wheel_q: int

    def to_json(self) -> dict:
        return {"initial_pairing": self.initial_pairing,
                "steps": [s.to_json() for s in self.steps],
                "terminal_wheel_q": self.terminal_wheel_q,
                "terminal_map": map_to_json(self.terminal)}


def _rotation_dict(g: SphericalMap) -> dict:
    rot = {}
    for v in range(g.vertex_count):
        rot[g.label_of(v)] = [g.label_of(g.origin[d ^ 1])
                              for d in g.rotations[v]]
    return rot


def _contract_delete(rot: dict, contract: tuple, delete: tuple) -> Optional[dict]:
    """Contract edge `contract` and delete edge `delete` in a neighbor
    rotation dict; None if the result is degenerate."""
    u, v = contract
    merged = min(u, v)
    ru = rot[u]
    rv = rot[v]
    iu = ru.index(v)
    iv = rv.index(u)
    # walk u's rotation from just after v, then v's from just after u
    new_rot = ([ru[(iu + 1 + t) % len(ru)] for t in range(len(ru) - 1)]
               + [rv[(iv + 1 + t) % len(rv)] for t in range(len(rv) - 1)])
    out = {}
    for x, nbrs in rot.items():
        if x in (u, v):
            continue
        out[x] = [merged if y in (u, v) else y for y in nbrs]
    out[merged] = [merged if y in (u, v) else y for y in new_rot]

    p, q = delete
    p = merged if p in (u, v) else p
    q = merged if q in (u, v) else q
    if p == q:
        return None
    if q not in out.get(p, ()) or p not in out.get(q, ()):
        return None
    out[p] = [y for y in out[p] if y != q]
    out[q] = [y for y in out[q] if y != p]

    for x, nbrs in out.items():
        if not nbrs or x in nbrs or len(set(nbrs)) != len(nbrs):
            return None
    return out


def _edge_labels(g: SphericalMap, e: int) -> tuple:
    a, b = g.edge_endpoints(e)
    la, lb = g.label_of(a), g.label_of(b)
    return (la, lb) if la <= lb else (lb, la)


def reduce_step(g: SphericalMap, si: StrongInvolution):
    """One delete-contraction step, or None when no edge works.

    Returns (reduced map, a strong involution of it, ReductionStep).
    Candidates are scanned by sorted endpoint labels; a candidate
    survives only if the result is a simple 3-connected genus-0 map
    that still has a strong involution.
    """
    rep = verify_strong_involution(g, si.vertex_to_face)
    if not rep.strong:
        raise NotStronglyInvolutive("witness fails verification")
    nv = g.vertex_count
    pi = si.underlying.incidence
    rot = _rotation_dict(g)
    order = sorted(range(g.edge_count), key=lambda e: _edge_labels(g, e))
    for e in order:
        partner = pi[nv + e] - nv
        if partner == e:
            continue
        candidate = _contract_delete(rot, _edge_labels(g, e),
                                     _edge_labels(g, partner))
        if candidate is None:
            continue
        try:
            g2 = map_from_neighbor_rotations(candidate)
        except SelfDualError:
            continue
        if g2.vertex_count != nv - 1 or g2.edge_count != g.edge_count - 2:
            continue
        if not validate_polyhedral(g2).polyhedral:
            continue
        si2 = next(iter_strong_involutions(g2), None)
        if si2 is None:
            continue
        step = ReductionStep(
            contracted=_edge_labels(g, e),
            deleted=_edge_labels(g, partner),
            code=canonical_code(g2).code,
            pairing=str(identify_pairing(g2)))
        return g2, si2, step
    return None


def _is_odd_wheel(g: SphericalMap) -> int:
    """Ring size if the map is an odd wheel, else 0."""
    q = g.vertex_count - 1
    if q < 3 or q % 2 == 0:
        return 0
    if g.edge_count != 2 * q:
        return 0
    wheel = build_wheel(q).map
    if canonical_code(g).code == canonical_code(wheel).code:
        return q
    return 0


def reduce_to_wheel(g: SphericalMap,
                    si: Optional[StrongInvolution] = None) -> ReductionTrace:
    """Iterate delete-contraction until no step applies; the terminal
    map must be an odd wheel, anything else raises StepFailed."""
    if si is None:
        si = next(iter_strong_involutions(g), None)
        if si is None:
            raise NotStronglyInvolutive("map has no strong involution")
    trace = []
    initial = str(identify_pairing(g))
    current, witness = g, si
    while True:
        result = reduce_step(current, witness)
        if result is None:
            q = _is_odd_wheel(current)
            if not q:
                raise StepFailed(
                    f"stuck at V={current.vertex_count}, not an odd wheel")
            return ReductionTrace(initial, trace, current, q)
        current, witness, step = result
        trace.append(step)


def pairing_trace_experiment(corpus) -> dict:
    """Reduce each family instance and record the pairing sequence.

    ``corpus`` holds (family, q, l) triples.  The report states the
    observed sequences and nothing more.
    """
    from .families import build_family

    runs = []
    for family, q, l in corpus:
        lm = build_family(family, q, l)
        trace = reduce_to_wheel(lm.map)
        runs.append({
            "family": family, "q": q, "l": l,
            "pairings": [trace.initial_pairing] + [s.pairing for s in trace.steps],
            "terminal_wheel_q": trace.terminal_wheel_q,
            "steps": len(trace.steps),
        })
    return {"runs": runs,
            "note": "observed pairing sequences along reductions; "
                    "no general rule is claimed"}
