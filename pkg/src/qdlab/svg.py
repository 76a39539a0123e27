"""Developed-net SVG rendering of a surface, with singularity glyphs.

Triangles are developed by breadth-first gluing from the first triangle
(a net, not an embedding: distant triangles may overlap).  Vertices carry
the classification glyphs: circle = non-orientable singularity, square =
orientable singularity, cross = free marked point; marked singular points
combine the glyph with the cross.
"""

from __future__ import annotations

from .cover import classify_points
from .surface import FlatSurface


def _develop(s: FlatSurface):
    """Place each triangle in the plane: map edge -> (start, end) points."""
    pos = {}
    placed_tri = set()
    for comp_root in range(len(s.triangles)):
        if comp_root in placed_tri:
            continue
        p = complex(0.0, 0.0) if not pos else complex(0.0, min(
            q.imag for pair in pos.values() for q in pair) - 2.0)
        for e in s.triangles[comp_root]:
            v = complex(s.vec[e])
            pos[e] = (p, p + v)
            p += v
        placed_tri.add(comp_root)
        queue = [comp_root]
        while queue:
            t = queue.pop(0)
            for e in s.triangles[t]:
                f = s.glue[e]
                t2 = s.triangle_of(f)
                if t2 in placed_tri:
                    continue
                a, b = pos[e]
                # develop t2 so that f covers the segment b -> a: the chart of
                # t2 starts f at 0, so map z -> b + smap*z with smap*vec(f)=a-b
                smap = (a - b) / complex(s.vec[f])
                pcur = 0j
                for g in _rotate_to(s.triangles[t2], f):
                    vg = complex(s.vec[g])
                    pos[g] = (b + smap * pcur, b + smap * (pcur + vg))
                    pcur += vg
                placed_tri.add(t2)
                queue.append(t2)
    return pos


def _rotate_to(tri, first):
    i = tri.index(first)
    return tri[i:] + tri[:i]


def surface_svg(s: FlatSurface, width=640):
    pos = _develop(s)
    xs = [p.real for pair in pos.values() for p in pair]
    ys = [p.imag for pair in pos.values() for p in pair]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (width - 40) / span
    height = int((y1 - y0) * scale) + 40

    def pt(z):
        return (20 + (z.real - x0) * scale,
                height - 20 - (z.imag - y0) * scale)

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">']
    for e, (a, b) in sorted(pos.items()):
        ax, ay = pt(a)
        bx, by = pt(b)
        dash = ' stroke-dasharray="4 3"' if s.sign[e] < 0 else ""
        lines.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" '
                     f'y2="{by:.2f}" stroke="#334" stroke-width="1"{dash}/>')
    cls = classify_points(s) if s.is_connected() else None
    orders = s.orders()
    drawn = set()
    for e, (a, _b) in sorted(pos.items()):
        v = s.vertex_at_tail(e)
        key = (v, round(a.real, 6), round(a.imag, 6))
        if key in drawn:
            continue
        drawn.add(key)
        x, y = pt(a)
        o = orders[v]
        if cls is not None and v in cls.sigma_o:
            lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" '
                         f'fill="none" stroke="#b00" stroke-width="1.5"/>')
        elif cls is not None and v in cls.sigma_e:
            lines.append(f'<rect x="{x - 4:.2f}" y="{y - 4:.2f}" width="8" '
                         f'height="8" fill="none" stroke="#070" stroke-width="1.5"/>')
        if v in s.marked:
            lines.append(f'<path d="M {x - 4:.2f} {y - 4:.2f} L {x + 4:.2f} '
                         f'{y + 4:.2f} M {x - 4:.2f} {y + 4:.2f} L {x + 4:.2f} '
                         f'{y - 4:.2f}" stroke="#00b" stroke-width="1.5"/>')
        if o != 0:
            lines.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" '
                         f'font-size="10" fill="#555">{o}</text>')
    lines.append("</svg>")
    return "\n".join(lines)


def save_svg(s: FlatSurface, path, width=640):
    with open(path, "w") as fh:
        fh.write(surface_svg(s, width))
