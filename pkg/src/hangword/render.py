"""Static SVG pictures of words.

Nails are black dots on a baseline.  Letter ``j`` of the word gets its own
horizontal lane below the baseline: the wire enters the lane from the left,
loops once around a copy of its nail (clockwise for ``x_i``,
counterclockwise for ``x_i^-1``) and drops to the next lane.  The drawing
is faithful to the homotopy class only, not to a physical wire.
"""

from __future__ import annotations

from .errors import RankMismatch
from .words import Word

SPACING = 60
LANE = 28
RADIUS = 10
MARGIN = 40


def _loop_path(cx: float, cy: float, clockwise: bool) -> str:
    sweep = 1 if clockwise else 0  # y grows downward, so sweep=1 is clockwise on screen
    r = RADIUS
    return (
        f"M {cx - r:g} {cy:g} A {r} {r} 0 1 {sweep} {cx + r:g} {cy:g} "
        f"A {r} {r} 0 1 {sweep} {cx - r:g} {cy:g}"
    )


def render_svg(w: Word, rank: int | None = None) -> str:
    if rank is not None and rank != w.rank:
        raise RankMismatch(f"word file has rank {w.rank}, --rank says {rank}")
    n = max(w.rank, 1)
    width = 2 * MARGIN + (n + 1) * SPACING
    lanes = max(len(w), 1)
    base_y = MARGIN
    height = base_y + (lanes + 2) * LANE + MARGIN

    def nail_x(i):
        return MARGIN + i * SPACING

    hook = (MARGIN / 2, base_y + LANE)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g class="nails">',
    ]
    for i in range(1, w.rank + 1):
        out.append(f'<circle class="nail" cx="{nail_x(i)}" cy="{base_y}" r="6" fill="black"/>')
        out.append(
            f'<text x="{nail_x(i)}" y="{base_y - 12}" font-size="11" text-anchor="middle">x{i}</text>'
        )
    out.append("</g>")

    if not w.letters:
        y = base_y + LANE
        out.append(
            f'<line class="wire" x1="{hook[0]:g}" y1="{y}" x2="{width - MARGIN / 2:g}" y2="{y}" '
            'stroke="#1f4fd1" stroke-width="3"/>'
        )
    else:
        points = [hook]
        loops = []
        for j, a in enumerate(w.letters):
            y = base_y + (j + 1) * LANE
            cx = nail_x(abs(a))
            points += [(hook[0], y), (cx - RADIUS, y)]
            loops.append(
                f'<path class="loop {"positive" if a > 0 else "inverse"}" data-letter="{a}" '
                f'd="{_loop_path(cx, y, a > 0)}" fill="none" stroke="#1f4fd1" stroke-width="2"/>'
            )
            loops.append(f'<circle class="ghost" cx="{cx}" cy="{y}" r="2" fill="#888"/>')
        points.append((hook[0], base_y + (len(w) + 1) * LANE))
        poly = " ".join(f"{x:g},{y:g}" for x, y in points)
        out.append(
            f'<polyline class="wire" points="{poly}" fill="none" stroke="#1f4fd1" '
            'stroke-width="1.5" stroke-dasharray="4 3"/>'
        )
        out.extend(loops)
    out.append("</svg>")
    return "\n".join(out) + "\n"
