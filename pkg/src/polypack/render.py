"""SVG depiction of a layout: container circle, polygons, center of mass."""

from __future__ import annotations

from os import PathLike
from pathlib import Path

from .model import Instance, Layout, center_of_mass, layout_radius, world_coordinates

_PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
            "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


def _f(v: float) -> str:
    return f"{v:.6f}"


def svg_string(inst: Instance, L: Layout, size: int = 600, margin: float = 0.05) -> str:
    """The container is drawn with radius ``layout_radius`` around the center of mass.

    World y points up; the SVG flips it with a group transform so coordinates
    in the file are the layout's own.
    """
    com = center_of_mass(inst, L)
    rad = layout_radius(inst, L)
    W = world_coordinates(inst, L)
    half = rad * (1.0 + margin)
    x0, y0 = com.x - half, -(com.y + half)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(2 * half)} {_f(2 * half)}">',
        f"<title>{inst.name}: r = {rad:.6f}</title>",
        '<g transform="scale(1,-1)">',
        f'<circle class="container" cx="{_f(com.x)}" cy="{_f(com.y)}" r="{_f(rad)}" '
        f'fill="none" stroke="black" stroke-width="{_f(rad / 200)}"/>',
    ]
    for i, p in enumerate(inst.polygons):
        pts = W[i, : p.vertex_count]
        d = "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in pts) + " Z"
        lines.append(
            f'<path class="polygon" data-index="{i}" d="{d}" fill="{_PALETTE[i % len(_PALETTE)]}" '
            f'fill-opacity="0.6" stroke="black" stroke-width="{_f(rad / 300)}"/>')
    arm = rad / 30
    sw = _f(rad / 200)
    lines.append(f'<line class="com" x1="{_f(com.x - arm)}" y1="{_f(com.y)}" x2="{_f(com.x + arm)}" '
                 f'y2="{_f(com.y)}" stroke="red" stroke-width="{sw}"/>')
    lines.append(f'<line class="com" x1="{_f(com.x)}" y1="{_f(com.y - arm)}" x2="{_f(com.x)}" '
                 f'y2="{_f(com.y + arm)}" stroke="red" stroke-width="{sw}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(inst: Instance, L: Layout, out_path: str | PathLike) -> Path:
    path = Path(out_path)
    path.write_text(svg_string(inst, L), encoding="utf-8")
    return path
