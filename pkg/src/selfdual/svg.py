"""Write-only SVG rendering of spherical maps.

Family instances are drawn from their symmetric spherical coordinates
through stereographic projection from the north pole, so the cusp sits
in the middle and the outer face opens to infinity; its dual vertex is
drawn as the customary dotted circle around the picture.  Arbitrary
maps fall back to a Tutte barycentric layout.  With the dual overlay
enabled, dual vertices sit inside their faces, dual edges cross primal
ones, and each crossing gets a filled dot.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .families import LabeledMap
from .maps import SphericalMap
from .orbifold import embed_on_sphere

VIEW = 1000.0
PRIMAL_STYLE = "stroke:#1f4e9c;stroke-width:3;fill:none"
DUAL_STYLE = "stroke:#c03b2d;stroke-width:2;fill:none;stroke-dasharray:7 4"
CROSSING_STYLE = "fill:#111111"
OUTER_STYLE = "stroke:#c03b2d;stroke-width:2;fill:none;stroke-dasharray:2 6"


def _stereographic(p) -> tuple:
    x, y, z = p
    z = min(z, 0.999)
    return (x / (1 - z), y / (1 - z))


def _tutte_layout(g: SphericalMap) -> dict:
    """Planar straight-line layout: outer face pinned to a circle, the
    rest at the average of their neighbors."""
    outer = max(range(g.face_count), key=lambda f: (len(g.faces[f]), -f))
    cycle = [g.origin[d] for d in g.faces[outer]]
    pos = {}
    m = len(cycle)
    for i, v in enumerate(cycle):
        t = 2 * math.pi * i / m
        pos[v] = (math.cos(t), math.sin(t))
    interior = [v for v in range(g.vertex_count) if v not in pos]
    if interior:
        idx = {v: i for i, v in enumerate(interior)}
        n = len(interior)
        a = np.zeros((n, n))
        bx = np.zeros(n)
        by = np.zeros(n)
        adj = g.adjacency()
        for v in interior:
            i = idx[v]
            deg = len(adj[v])
            a[i, i] = deg
            for u in adj[v]:
                if u in idx:
                    a[i, idx[u]] -= 1
                else:
                    bx[i] += pos[u][0]
                    by[i] += pos[u][1]
        xs = np.linalg.solve(a, bx)
        ys = np.linalg.solve(a, by)
        for v in interior:
            pos[v] = (float(xs[idx[v]]), float(ys[idx[v]]))
    return pos


def _family_layout(lm: LabeledMap) -> tuple:
    emb = embed_on_sphere(lm)
    g = lm.map
    pos = {g.vertex_by_label(lab): _stereographic(xyz)
           for lab, xyz in emb.vertex_xyz.items()}
    face_pos = {f: _stereographic(xyz) for f, xyz in emb.face_xyz.items()}
    return pos, face_pos


def _face_centroids(g: SphericalMap, pos: dict) -> dict:
    out = {}
    for f in range(g.face_count):
        cyc = [pos[v] for v in g.face_vertices(f)]
        out[f] = (sum(p[0] for p in cyc) / len(cyc),
                  sum(p[1] for p in cyc) / len(cyc))
    return out


def _segment_intersection(p1, p2, p3, p4) -> Optional[tuple]:
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-12:
        return None
    t = ((p3[0] - p1[0]) * d2[1] - (p3[1] - p1[1]) * d2[0]) / den
    s = ((p3[0] - p1[0]) * d1[1] - (p3[1] - p1[1]) * d1[0]) / den
    if 0 < t < 1 and 0 < s < 1:
        return (p1[0] + t * d1[0], p1[1] + t * d1[1])
    return None


def render_svg(target, with_dual: bool = False) -> str:
    """SVG text for a map or family instance (1000 x 1000 viewbox)."""
    if isinstance(target, LabeledMap):
        g = target.map
        pos, face_pos = _family_layout(target)
        outer = max(face_pos, key=lambda f: math.hypot(*face_pos[f]))
    else:
        g = target
        pos = _tutte_layout(g)
        face_pos = _face_centroids(g, pos)
        outer = max(range(g.face_count), key=lambda f: (len(g.faces[f]), -f))

    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    span = max(max(map(abs, xs)), max(map(abs, ys)), 1e-9)
    outer_r = 1.25 * span
    scale = (VIEW / 2 - 40) / outer_r

    def to_screen(p):
        return (VIEW / 2 + scale * p[0], VIEW / 2 - scale * p[1])

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'viewBox="0 0 {VIEW:.0f} {VIEW:.0f}">',
             f'<rect width="{VIEW:.0f}" height="{VIEW:.0f}" fill="white"/>']

    segments = {}
    for e in range(g.edge_count):
        u, v = g.edge_endpoints(e)
        a, b = to_screen(pos[u]), to_screen(pos[v])
        segments[e] = (a, b)
        lines.append(f'<line x1="{a[0]:.2f}" y1="{a[1]:.2f}" '
                     f'x2="{b[0]:.2f}" y2="{b[1]:.2f}" style="{PRIMAL_STYLE}"/>')

    if with_dual:
        lines.append(f'<circle cx="{VIEW/2:.2f}" cy="{VIEW/2:.2f}" '
                     f'r="{scale*outer_r:.2f}" style="{OUTER_STYLE}"/>')

        def dual_point(f):
            if f == outer:
                return None
            return to_screen(face_pos[f])

        for e in range(g.edge_count):
            f1, f2 = g.face_of[2 * e], g.face_of[2 * e + 1]
            p1, p2 = dual_point(f1), dual_point(f2)
            a, b = segments[e]
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            if p1 is None or p2 is None:
                inner = p2 if p1 is None else p1
                # ray from the inner dual vertex through the crossed
                # edge out to the dotted circle
                dx, dy = mid[0] - inner[0], mid[1] - inner[1]
                norm = math.hypot(dx, dy) or 1.0
                far = (mid[0] + dx / norm * scale * outer_r,
                       mid[1] + dy / norm * scale * outer_r)
                cx, cy = VIEW / 2, VIEW / 2
                vx, vy = far[0] - cx, far[1] - cy
                vn = math.hypot(vx, vy) or 1.0
                far = (cx + vx / vn * scale * outer_r,
                       cy + vy / vn * scale * outer_r)
                p1, p2 = inner, far
            lines.append(f'<line x1="{p1[0]:.2f}" y1="{p1[1]:.2f}" '
                         f'x2="{p2[0]:.2f}" y2="{p2[1]:.2f}" style="{DUAL_STYLE}"/>')
            dot = _segment_intersection(a, b, p1, p2) or mid
            lines.append(f'<circle cx="{dot[0]:.2f}" cy="{dot[1]:.2f}" '
                         f'r="5" style="{CROSSING_STYLE}"/>')
        for f in range(g.face_count):
            if f == outer:
                continue
            p = to_screen(face_pos[f])
            lines.append(f'<circle cx="{p[0]:.2f}" cy="{p[1]:.2f}" r="6" '
                         f'fill="#c03b2d"/>')

    for v in range(g.vertex_count):
        p = to_screen(pos[v])
        lines.append(f'<circle cx="{p[0]:.2f}" cy="{p[1]:.2f}" r="7" '
                     f'fill="#1f4e9c"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
