"""Finite spherical reflection groups in bracket notation, and the
catalog of the 24 self-dual pairing types.

Groups are realized as explicit sets of 3x3 orthogonal matrices in a
fixed coordinate convention: vertical mirror planes pass through the
z-axis, the third mirror of [2,q] is the equatorial plane, and the
octahedral/tetrahedral groups use cube-aligned mirror planes.  Elements
are deduplicated on a 1e-6 rounding grid, which is collision-free for
the group orders that occur here.

Plus markers follow the usual subgroup conventions:

    [q]+     rotations of [q]
    [p,q]+   rotations of [p,q]
    [p+,q]   index-2 subgroup generated by the order-p rotation and the
             third mirror (requires q even, or (p,q) = (3,4))
    [p,q+]   generated by the first mirror and the order-q rotation
             (requires p even)
    [p+,q+]  cyclic, generated by a rotatory reflection (p = 2, q even)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import ClosureOverflow, InvalidSymbol

MATRIX_TOL = 1e-6
DEDUP_DECIMALS = 6
ELEMENT_CAP = 500

IDENTITY = np.eye(3)
ANTIPODAL = -np.eye(3)


# --- elementary isometries ----------------------------------------------------

def reflection(normal) -> np.ndarray:
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    return np.eye(3) - 2.0 * np.outer(n, n)


def rotation(axis, angle: float) -> np.ndarray:
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    c, s = math.cos(angle), math.sin(angle)
    cross = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return c * np.eye(3) + s * cross + (1 - c) * np.outer(a, a)


def rotz(angle: float) -> np.ndarray:
    return rotation((0.0, 0.0, 1.0), angle)


def mirror_az(azimuth: float) -> np.ndarray:
    """Reflection in the vertical plane through the z-axis at the given
    azimuth (the plane contains the direction (cos az, sin az, 0))."""
    return reflection((-math.sin(azimuth), math.cos(azimuth), 0.0))


EQUATOR = reflection((0.0, 0.0, 1.0))


def matrix_key(m: np.ndarray) -> bytes:
    r = np.round(m, DEDUP_DECIMALS) + 0.0  # normalize -0.0
    return r.tobytes()


def matrix_order(m: np.ndarray, cap: int = 1000) -> int:
    p = np.array(m)
    for k in range(1, cap + 1):
        if np.allclose(p, IDENTITY, atol=MATRIX_TOL):
            return k
        p = p @ m
    raise ClosureOverflow("element order exceeds cap")


@dataclass(frozen=True)
class Isometry:
    """Orthogonal 3x3 matrix with cached sign and order."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if not np.allclose(m.T @ m, IDENTITY, atol=1e-9):
            raise ValueError("matrix is not orthogonal")
        object.__setattr__(self, "matrix", m)

    @property
    def det(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1

    @property
    def order(self) -> int:
        return matrix_order(self.matrix)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix)


# --- bracket symbols -----------------------------------------------------------

_SYMBOL_RE = re.compile(
    r"^\[\s*(\d+)(\+?)\s*(?:,\s*(\d+)(\+?)\s*)?\](\+?)$")


@dataclass(frozen=True)
class CoxeterSymbol:
    """Bracket symbol such as [q], [q]+, [p,q], [p+,q], [p,q+], [p+,q+]."""

    entries: tuple  # ((n, plus), ...) with 1 or 2 items
    global_plus: bool = False

    @staticmethod
    def parse(text: str) -> "CoxeterSymbol":
        m = _SYMBOL_RE.match(text.strip())
        if not m:
            raise InvalidSymbol(f"cannot parse symbol {text!r}")
        p, pp, q, qp, gp = m.groups()
        if q is None:
            entries = ((int(p), pp == "+"),)
        else:
            entries = ((int(p), pp == "+"), (int(q), qp == "+"))
        sym = CoxeterSymbol(entries, gp == "+")
        sym.validate()
        return sym

    def validate(self) -> None:
        if len(self.entries) == 1:
            (n, plus), = self.entries
            if n < 1:
                raise InvalidSymbol("entry must be >= 1")
            if plus:
                raise InvalidSymbol(
                    "use a trailing + for the rotation subgroup of [q]")
            return
        if len(self.entries) != 2:
            raise InvalidSymbol("one or two entries required")
        (p, pp), (q, qp) = self.entries
        if not (p == 2 and q >= 1 or (p, q) in ((3, 3), (3, 4), (3, 5))):
            raise InvalidSymbol(f"[{p},{q}] is not a spherical symbol")
        if self.global_plus and (pp or qp):
            raise InvalidSymbol("mixed plus markers")
        if pp and not (q % 2 == 0 or (p, q) == (3, 4)):
            raise InvalidSymbol(f"[{p}+,{q}] requires q even")
        if qp and p % 2 != 0:
            raise InvalidSymbol(f"[{p},{q}+] requires p even")
        if pp and qp and p != 2:
            raise InvalidSymbol("[p+,q+] requires p = 2")

    def __str__(self) -> str:
        inner = ",".join(f"{n}{'+' if plus else ''}" for n, plus in self.entries)
        return f"[{inner}]{'+' if self.global_plus else ''}"

    @property
    def rank(self) -> int:
        return len(self.entries)


def _sym(text: str) -> CoxeterSymbol:
    return CoxeterSymbol.parse(text)


# --- group construction ---------------------------------------------------------

@dataclass
class IsometryGroup:
    """Closure of a generator list, with the source symbol attached."""

    symbol: Optional[CoxeterSymbol]
    generators: list
    elements: list = field(default_factory=list)

    def __post_init__(self):
        if not self.elements:
            self.elements = close_generators(self.generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, matrix: np.ndarray) -> bool:
        return any(np.allclose(m, matrix, atol=MATRIX_TOL) for m in self.elements)


def close_generators(generators, cap: int = ELEMENT_CAP) -> list:
    """Breadth-first closure, deduplicated on the rounding grid.
    Element order is deterministic (shortest word first)."""
    gens = [np.asarray(g, dtype=float) for g in generators]
    elems = [IDENTITY]
    seen = {matrix_key(IDENTITY)}
    frontier = [IDENTITY]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                p = m @ g
                k = matrix_key(p)
                if k not in seen:
                    seen.add(k)
                    elems.append(p)
                    new.append(p)
                    if len(elems) > cap:
                        raise ClosureOverflow(f"more than {cap} elements")
        frontier = new
    return elems


def generators_for(symbol: CoxeterSymbol) -> list:
    """Standard generator matrices for a bracket symbol."""
    symbol.validate()
    if symbol.rank == 1:
        (q, _), = symbol.entries
        if symbol.global_plus:
            return [rotz(2 * math.pi / q)] if q > 1 else []
        return [mirror_az(0.0), mirror_az(math.pi / q)]

    (p, pp), (q, qp) = symbol.entries
    if p == 2:
        g1, g2, g3 = EQUATOR, mirror_az(0.0), mirror_az(math.pi / q)
    elif (p, q) == (3, 3):
        g1 = reflection((1, -1, 0))
        g2 = reflection((0, 1, -1))
        g3 = reflection((1, 1, 0))
    elif (p, q) == (3, 4):
        g1 = reflection((1, -1, 0))
        g2 = reflection((0, 1, -1))
        g3 = reflection((0, 0, 1))
    elif (p, q) == (3, 5):
        c5 = math.cos(math.pi / 5)
        s5 = math.sin(math.pi / 5)
        g1 = reflection((1.0, 0.0, 0.0))
        g2 = reflection((-c5, s5, 0.0))
        b = -1.0 / (2.0 * s5)
        g3 = reflection((0.0, b, math.sqrt(1.0 - b * b)))
    else:  # pragma: no cover - validate() forbids this
        raise InvalidSymbol(str(symbol))

    if symbol.global_plus:
        return [g1 @ g2, g2 @ g3]
    if pp and qp:
        return [g1 @ g2 @ g3]
    if pp:
        return [g1 @ g2, g3]
    if qp:
        return [g1, g2 @ g3]
    return [g1, g2, g3]


@lru_cache(maxsize=None)
def _build_group_cached(text: str) -> IsometryGroup:
    symbol = _sym(text)
    return IsometryGroup(symbol, generators_for(symbol))


def build_group(symbol) -> IsometryGroup:
    if isinstance(symbol, str):
        symbol = _sym(symbol)
    symbol.validate()
    return _build_group_cached(str(symbol))


def contains_antipodal(group: IsometryGroup) -> bool:
    return group.contains(ANTIPODAL)


# --- the antipodal-membership predicate (closed form) ---------------------------

def lemma1_clause(symbol) -> int:
    """Clause label used by the classification table, by symbol form."""
    if isinstance(symbol, str):
        symbol = _sym(symbol)
    if symbol.rank == 1:
        return 2 if symbol.global_plus else 1
    (_, pp), (_, qp) = symbol.entries
    if symbol.global_plus:
        return 4
    if pp and qp:
        return 6
    if pp or qp:
        return 5
    return 3


def lemma1_predicate(symbol) -> bool:
    """Closed-form test for whether the group contains the antipodal
    map, matching matrix membership for every catalog symbol."""
    if isinstance(symbol, str):
        symbol = _sym(symbol)
    symbol.validate()
    if symbol.rank == 1:
        return False
    (p, pp), (q, qp) = symbol.entries
    if symbol.global_plus:
        return False
    if pp and qp:
        return q % 2 == 0 and (q // 2) % 2 == 1
    if pp:
        if (p, q) == (3, 4):
            return True
        return p == 2 and q % 2 == 0 and (q // 2) % 2 == 1
    if qp:
        # [2,q+] adds the equatorial mirror to the order-q rotation, so
        # the central inversion appears exactly when q is even.
        return p == 2 and q % 2 == 0
    if (p, q) == (3, 4):
        return True
    return p == 2 and q % 2 == 0


# --- the 24 self-dual pairing types ---------------------------------------------

def _subst(template: str, q: int) -> str:
    return template.replace("2q", str(2 * q)).replace("q", str(q))


@dataclass(frozen=True)
class PairingRecord:
    """One row of the pairing classification.

    ``aut_printed`` reproduces the historical table labels; for the two
    rotary rows those labels name a group of the wrong order and
    ``aut_template`` carries the actual index-2 subgroup.
    """

    dual_template: str
    aut_template: str
    aut_printed: str
    parity: str  # "none" | "even" | "odd"
    clause_dual: int
    clause_aut: int
    realization: Callable[[int], tuple]  # q -> (dual_gens, aut_gens)

    def instantiate(self, q: Optional[int] = None) -> "InstantiatedPairing":
        # parity is the table qualifier marking the antipodal sub-case;
        # the class itself exists for every q >= 1
        if self.is_parameterized and (q is None or q < 1):
            raise InvalidSymbol(f"{self.printed_name} needs q >= 1")
        qq = 0 if q is None else q
        dual = _sym(_subst(self.dual_template, qq))
        aut = _sym(_subst(self.aut_template, qq))
        return InstantiatedPairing(self, qq, dual, aut)

    @property
    def is_parameterized(self) -> bool:
        return "q" in self.dual_template

    @property
    def printed_name(self) -> str:
        name = f"{self.dual_template} > {self.aut_printed}"
        if self.parity != "none":
            name += f", q {self.parity}"
        return name


@dataclass(frozen=True)
class InstantiatedPairing:
    record: PairingRecord
    q: int
    dual_symbol: CoxeterSymbol
    aut_symbol: CoxeterSymbol

    @property
    def alpha_in_dual(self) -> bool:
        return lemma1_predicate(self.dual_symbol)

    @property
    def alpha_in_aut(self) -> bool:
        return lemma1_predicate(self.aut_symbol)

    @property
    def antipodal(self) -> bool:
        # recomputed, never stored
        return self.alpha_in_dual and not self.alpha_in_aut

    def groups(self) -> tuple:
        """(dual IsometryGroup, aut IsometryGroup) in shared coordinates."""
        dual_gens, aut_gens = self.record.realization(self.q)
        return (IsometryGroup(self.dual_symbol, list(dual_gens)),
                IsometryGroup(self.aut_symbol, list(aut_gens)))

    def __str__(self) -> str:
        return f"{self.aut_symbol} < {self.dual_symbol}"


def _half_x():
    return rotation((1, 0, 0), math.pi)


def _r(*normal):
    return reflection(normal)


def _real_inf1(q):
    m0, m1 = mirror_az(0.0), mirror_az(math.pi / q)
    return ([EQUATOR, m0, m1], [m0, m1])


def _real_inf2(q):
    return ([rotz(2 * math.pi / q), _half_x()], [rotz(2 * math.pi / q)])


def _real_inf3(q):
    m0, m1 = mirror_az(0.0), mirror_az(math.pi / q)
    axis = (math.cos(math.pi / (2 * q)), math.sin(math.pi / (2 * q)), 0.0)
    return ([m0, m1, rotation(axis, math.pi)], [m0, m1])


def _real_inf4(q):
    return ([rotz(2 * math.pi / q), EQUATOR], [rotz(2 * math.pi / q)])


def _real_inf5(q):
    return ([rotz(math.pi / q) @ EQUATOR], [rotz(2 * math.pi / q)])


_C3 = rotation((1, 1, 1), 2 * math.pi / 3)
_T_ROT = rotation((1, -1, -1), 2 * math.pi / 3)  # second rotation of [3,3]+


def _fixed(dual_gens, aut_gens):
    return lambda q: (dual_gens, aut_gens)


PAIRING_ROWS: tuple = (
    PairingRecord("[2,q]", "[q]", "[q]", "even", 3, 1, _real_inf1),
    PairingRecord("[2,q]+", "[q]+", "[q]+", "none", 4, 2, _real_inf2),
    PairingRecord("[2+,2q]", "[q]", "[2q]", "odd", 5, 1, _real_inf3),
    PairingRecord("[2,q+]", "[q]+", "[q]+", "even", 5, 2, _real_inf4),
    PairingRecord("[2+,2q+]", "[q]+", "[2q]+", "odd", 6, 2, _real_inf5),
    PairingRecord("[2]", "[1]", "[1]", "none", 1, 1,
                  _fixed([mirror_az(0.0), mirror_az(math.pi / 2)],
                         [mirror_az(0.0)])),
    PairingRecord("[2]", "[2]+", "[2]+", "none", 1, 2,
                  _fixed([mirror_az(0.0), mirror_az(math.pi / 2)],
                         [rotz(math.pi)])),
    PairingRecord("[4]", "[2]", "[2]", "none", 1, 1,
                  _fixed([mirror_az(0.0), mirror_az(math.pi / 4)],
                         [mirror_az(0.0), mirror_az(math.pi / 2)])),
    PairingRecord("[2]+", "[1]+", "[1]+", "none", 2, 1,
                  _fixed([rotz(math.pi)], [])),
    PairingRecord("[4]+", "[2]+", "[2]+", "none", 2, 2,
                  _fixed([rotz(math.pi / 2)], [rotz(math.pi)])),
    PairingRecord("[2,2]", "[2,2]+", "[2,2]+", "none", 3, 4,
                  _fixed([EQUATOR, mirror_az(0.0), mirror_az(math.pi / 2)],
                         [rotz(math.pi), _half_x()])),
    PairingRecord("[2,4]", "[2+,4]", "[2+,4]", "none", 3, 5,
                  _fixed([EQUATOR, mirror_az(0.0), mirror_az(math.pi / 4)],
                         [_half_x(), mirror_az(math.pi / 4)])),
    PairingRecord("[2,2]", "[2,2+]", "[2,2+]", "none", 3, 5,
                  _fixed([EQUATOR, mirror_az(0.0), mirror_az(math.pi / 2)],
                         [rotz(math.pi), EQUATOR])),
    PairingRecord("[2,4]", "[2,2]", "[2,2]", "none", 3, 3,
                  _fixed([EQUATOR, mirror_az(0.0), mirror_az(math.pi / 4)],
                         [EQUATOR, mirror_az(0.0), mirror_az(math.pi / 2)])),
    PairingRecord("[2,4]+", "[2,2]+", "[2,2]+", "none", 4, 4,
                  _fixed([rotz(math.pi / 2), _half_x()],
                         [rotz(math.pi), _half_x()])),
    PairingRecord("[2+,4]", "[2,2]+", "[2,2]+", "none", 5, 4,
                  _fixed([_half_x(), mirror_az(math.pi / 4)],
                         [rotz(math.pi), _half_x()])),
    PairingRecord("[2+,4]", "[2+,4+]", "[2+,4+]", "none", 5, 6,
                  _fixed([_half_x(), mirror_az(math.pi / 4)],
                         [rotz(math.pi / 2) @ EQUATOR])),
    PairingRecord("[2,4+]", "[2+,4+]", "[2+,4+]", "none", 5, 6,
                  _fixed([rotz(math.pi / 2), EQUATOR],
                         [rotz(math.pi / 2) @ EQUATOR])),
    PairingRecord("[2,2+]", "[2+,2+]", "[2+,2+]", "none", 5, 6,
                  _fixed([rotz(math.pi), EQUATOR], [ANTIPODAL])),
    PairingRecord("[2,4+]", "[2,2+]", "[2,2+]", "none", 5, 5,
                  _fixed([rotz(math.pi / 2), EQUATOR],
                         [rotz(math.pi), EQUATOR])),
    PairingRecord("[2,2+]", "[1]", "[1]", "none", 5, 1,
                  _fixed([rotz(math.pi), EQUATOR], [EQUATOR])),
    PairingRecord("[3,4]", "[3,3]", "[3,3]", "none", 3, 3,
                  _fixed([_r(1, -1, 0), _r(0, 1, -1), _r(0, 0, 1)],
                         [_r(1, -1, 0), _r(0, 1, -1), _r(1, 1, 0)])),
    PairingRecord("[3,4]+", "[3,3]+", "[3,3]+", "none", 4, 4,
                  _fixed([_C3, rotation((1, 0, 0), math.pi / 2)],
                         [_C3, _T_ROT])),
    PairingRecord("[3+,4]", "[3,3]+", "[3,3]+", "none", 5, 4,
                  _fixed([_C3, _r(0, 0, 1)], [_C3, _T_ROT])),
)


def pairing_catalog() -> tuple:
    """The 24 pairing rows (5 parameterized classes, 19 special)."""
    return PAIRING_ROWS


def antipodal_records() -> tuple:
    """The ten rows whose stored table booleans mark them antipodal."""
    return tuple(r for r in PAIRING_ROWS
                 if _stored_alpha(r) == (True, False))


def _stored_alpha(record: PairingRecord) -> tuple:
    """(alpha_in_dual, alpha_in_aut) as printed: evaluate the templates
    under the row's parity with a representative q."""
    if not record.is_parameterized:
        inst = record.instantiate()
        return inst.alpha_in_dual, inst.alpha_in_aut
    q = {"even": 4, "odd": 3, "none": 4}[record.parity]
    inst = record.instantiate(q)
    return inst.alpha_in_dual, inst.alpha_in_aut


@dataclass(frozen=True)
class ClassificationRow:
    pairing: str
    alpha_in_dual: bool
    alpha_in_aut: bool
    lemma_clause_dual: int
    lemma_clause_aut: int
    antipodal: bool
    q_checked: tuple

    def to_json(self) -> dict:
        return {
            "pairing": self.pairing,
            "alpha_in_dual": self.alpha_in_dual,
            "alpha_in_aut": self.alpha_in_aut,
            "lemma_clause_dual": self.lemma_clause_dual,
            "lemma_clause_aut": self.lemma_clause_aut,
            "antipodal": self.antipodal,
            "q_checked": list(self.q_checked),
        }


def classify_all_pairings(q_min: int = 3, q_max: int = 12,
                          matrix_check: bool = True) -> list:
    """All 24 rows with antipodal-membership columns.

    Parameterized rows are instantiated over q in [q_min, q_max]
    (restricted to the row's parity); every instance is double-checked
    by matrix membership of -I in both realized groups.
    """
    rows = []
    for rec in PAIRING_ROWS:
        if rec.is_parameterized:
            qs = [q for q in range(q_min, q_max + 1)
                  if rec.parity == "none"
                  or (rec.parity == "even") == (q % 2 == 0)]
            if not qs:
                raise ValueError(f"no q in [{q_min},{q_max}] fits {rec.printed_name}")
        else:
            qs = [None]
        in_dual, in_aut = _stored_alpha(rec)
        for q in qs:
            inst = rec.instantiate(q)
            if (inst.alpha_in_dual, inst.alpha_in_aut) != (in_dual, in_aut):
                raise AssertionError(
                    f"membership not constant over {rec.printed_name}")
            if matrix_check:
                dual_g, aut_g = inst.groups()
                if contains_antipodal(dual_g) != inst.alpha_in_dual:
                    raise AssertionError(
                        f"matrix oracle disagrees on {inst.dual_symbol}")
                if contains_antipodal(aut_g) != inst.alpha_in_aut:
                    raise AssertionError(
                        f"matrix oracle disagrees on {inst.aut_symbol}")
        rows.append(ClassificationRow(
            pairing=rec.printed_name,
            alpha_in_dual=in_dual,
            alpha_in_aut=in_aut,
            lemma_clause_dual=rec.clause_dual,
            lemma_clause_aut=rec.clause_aut,
            antipodal=in_dual and not in_aut,
            q_checked=tuple(q for q in qs if q is not None),
        ))
    return rows


def classification_text(rows) -> str:
    """Aligned text table, stable across runs."""
    header = ("Dual(G) > Aut(G)", "alpha in Dual?", "alpha in Aut?", "antipodal")
    body = []
    for r in rows:
        body.append((
            r.pairing,
            f"{'yes' if r.alpha_in_dual else 'no'} ({r.lemma_clause_dual})",
            f"{'yes' if r.alpha_in_aut else 'no'} ({r.lemma_clause_aut})",
            "ANTIPODAL" if r.antipodal else "",
        ))
    widths = [max(len(row[i]) for row in [header] + body) for i in range(4)]
    lines = []
    sep = "  "
    lines.append(sep.join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip())
    lines.append("-" * (sum(widths) + 3 * len(sep)))
    for row in body:
        lines.append(sep.join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    n_anti = sum(1 for r in rows if r.antipodal)
    lines.append("-" * (sum(widths) + 3 * len(sep)))
    lines.append(f"{len(rows)} pairings, {n_anti} antipodal")
    return "\n".join(lines) + "\n"


# --- signatures used to identify a map's pairing ---------------------------------

@dataclass(frozen=True)
class GroupSignature:
    """Fingerprint of a pairing realization: group orders, the multiset
    of (element order, orientation sign, side), and whether the free
    central involution sits on either side."""

    dual_order: int
    aut_order: int
    profile: tuple
    central_free_in_aut: bool
    central_free_in_iso: bool


@lru_cache(maxsize=None)
def _catalog_signature(row_index: int, q: int) -> GroupSignature:
    rec = PAIRING_ROWS[row_index]
    inst = rec.instantiate(q if rec.is_parameterized else None)
    dual_g, aut_g = inst.groups()
    aut_keys = {matrix_key(m) for m in aut_g.elements}
    if not all(matrix_key(m) in {matrix_key(x) for x in dual_g.elements}
               for m in aut_g.elements):
        raise AssertionError(f"{inst}: aut group escapes dual group")
    profile = []
    central_aut = False
    central_iso = False
    for m in dual_g.elements:
        side = "aut" if matrix_key(m) in aut_keys else "iso"
        sign = 1 if np.linalg.det(m) > 0 else -1
        profile.append((matrix_order(m), sign, side))
        if np.allclose(m, ANTIPODAL, atol=MATRIX_TOL):
            if side == "aut":
                central_aut = True
            else:
                central_iso = True
    if 2 * aut_g.order != dual_g.order:
        raise AssertionError(f"{inst}: index is not 2")
    return GroupSignature(dual_g.order, aut_g.order, tuple(sorted(profile)),
                          central_aut, central_iso)


def catalog_signature(record: PairingRecord, q: Optional[int]) -> GroupSignature:
    return _catalog_signature(PAIRING_ROWS.index(record), q or 0)


def resolve_q(record: PairingRecord, dual_order: int) -> Optional[int]:
    """Parameter value making the row's dual group have the given order,
    or None."""
    if not record.is_parameterized:
        inst = record.instantiate()
        dual_g, _ = inst.groups()
        return 0 if dual_g.order == dual_order else None
    per_q = {"[2,q]": 4, "[2,q]+": 2, "[2+,2q]": 4, "[2,q+]": 2,
             "[2+,2q+]": 2}[record.dual_template]
    if dual_order % per_q:
        return None
    q = dual_order // per_q
    return q if q >= 1 else None


def signature_distinctness(q_max: int = 24) -> None:
    """Assert signatures separate the catalog for every q up to q_max.

    The classes exist for every q >= 1; at q = 1 a parameterized row may
    degenerate to the same abstract pairing as a special row (for
    example [2,1] > [1] is [2] > [1]).  Those aliases are the only
    collisions allowed, and identification prefers the special row."""
    seen = {}
    for idx, rec in enumerate(PAIRING_ROWS):
        qs = range(1, q_max + 1) if rec.is_parameterized else (0,)
        for q in qs:
            sig = _catalog_signature(idx, q)
            prev = seen.get(sig)
            if prev is not None and prev[0] != idx:
                prec = PAIRING_ROWS[prev[0]]
                degenerate = ((q == 1 and not prec.is_parameterized)
                              or (prev[1] == 1 and not rec.is_parameterized))
                if not degenerate:
                    raise AssertionError(
                        f"signature collision: {rec.printed_name} q={q} vs "
                        f"{prec.printed_name} q={prev[1]}")
                continue
            seen[sig] = (idx, q)
