"""Schematic SVG of the region as a helix over the circle of directions.

The drawing is a fixed-parameter cartoon, not a computed plot: d stacked
ellipses for the turns (one per standard orbit), connecting arcs on the left
for the wall families between consecutive turns, a dashed base circle for
the image of the charge map, and a labeled projection arrow. Output is
deterministic: fixed layout, all coordinates formatted to two decimals, no
timestamps, so equal input gives byte-identical documents.
"""

from __future__ import annotations

from .charges import check_dimension

WIDTH, HEIGHT = 640.0, 480.0
CX = 230.0  # helix axis
RX, RY = 130.0, 32.0  # turn ellipse radii
Y_BOTTOM, Y_TOP = 320.0, 80.0  # centers of the lowest and highest turns
BASE_Y, BASE_RX, BASE_RY = 425.0, 130.0, 26.0


def _f(x: float) -> str:
    return f"{x:.2f}"


def _text(x: float, y: float, s: str, anchor: str = "start", size: int = 14) -> str:
    return (
        f'<text x="{_f(x)}" y="{_f(y)}" font-size="{size}" '
        f'font-family="serif" text-anchor="{anchor}" fill="#1a1a1a">{s}</text>'
    )


def helix_svg(d: int, labels: bool = True) -> str:
    """Render the d-turn helix schematic as a standalone SVG document."""
    check_dimension(d)
    dy = (Y_BOTTOM - Y_TOP) / (d - 1)

    def turn_y(p: int) -> float:
        return Y_BOTTOM - p * dy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_f(WIDTH)} '
        f'{_f(HEIGHT)}" width="640" height="480">',
        f'<rect x="0" y="0" width="{_f(WIDTH)}" height="{_f(HEIGHT)}" fill="#ffffff"/>',
        # the image of the charge map, a circle of directions
        f'<ellipse cx="{_f(CX)}" cy="{_f(BASE_Y)}" rx="{_f(BASE_RX)}" '
        f'ry="{_f(BASE_RY)}" fill="none" stroke="#555555" stroke-dasharray="6 4"/>',
    ]
    # turns, bottom to top
    for p in range(d):
        y = turn_y(p)
        parts.append(
            f'<ellipse cx="{_f(CX)}" cy="{_f(y)}" rx="{_f(RX)}" ry="{_f(RY)}" '
            f'fill="none" stroke="#1a1a1a" stroke-width="1.5"/>'
        )
        if labels:
            parts.append(_text(CX + RX + 12, y + 4, f"σ_({p})"))
    # wall arcs joining consecutive turns on the left
    edge_x = CX - RX * 0.9
    bulge_x = 48.0
    for p in range(1, d):
        y1, y2 = turn_y(p - 1), turn_y(p)
        mid = (y1 + y2) / 2
        parts.append(
            f'<path d="M {_f(edge_x)} {_f(y1)} Q {_f(bulge_x)} {_f(mid)} '
            f'{_f(edge_x)} {_f(y2)}" fill="none" stroke="#333333"/>'
        )
        if labels:
            parts.append(_text(bulge_x - 4, mid + 4, f"σ_({p})^γ", anchor="end"))
    # projection arrow onto the base circle
    ax = CX + RX + 60
    parts.append(
        f'<line x1="{_f(ax)}" y1="355.00" x2="{_f(ax)}" y2="392.00" '
        f'stroke="#1a1a1a" stroke-width="1.5"/>'
    )
    parts.append(
        f'<polygon points="{_f(ax)},399.00 {_f(ax - 4)},391.00 {_f(ax + 4)},391.00" '
        f'fill="#1a1a1a"/>'
    )
    if labels:
        parts.append(_text(ax + 10, 380, "Z", size=16))
        parts.append(_text(CX + RX + 12, Y_TOP - 24, "≅ universal cover"))
        parts.append(_text(CX + RX + 12, BASE_Y + 4, "fundamental group Z"))
    parts.append("</svg>")
    return "\n".join(parts)
