"""Static SVG rendering of barcodes.

Fixed 800 x (40 * rows) canvas, one horizontal bar per interval row, the
scale axis linear from 0 to the cyclicity threshold.  Ephemeral summary
rows are dotted; closed endpoints are filled dots, open endpoints hollow.
"""

from __future__ import annotations

from .predictor import Barcode

_W = 800
_ROW = 40
_LEFT = 90
_RIGHT = 30

_DIM_COLORS = [
    "#555555", "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
]


def barcode_svg(bc: Barcode) -> str:
    rows = list(bc.intervals)
    height = _ROW * max(len(rows), 1)
    span = _W - _LEFT - _RIGHT

    def x(r: float) -> float:
        return _LEFT + span * r / bc.rn

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
        f'height="{height}" viewBox="0 0 {_W} {height}">',
        f'<rect width="{_W}" height="{height}" fill="white"/>',
    ]
    for i, iv in enumerate(rows):
        y = _ROW * i + _ROW // 2
        color = _DIM_COLORS[iv.dim % len(_DIM_COLORS)]
        dash = ' stroke-dasharray="5,5"' if iv.ephemeral else ""
        x0, x1 = x(iv.birth), x(iv.death)
        label = f"H{iv.dim}"
        if iv.multiplicity != 1:
            label += f" x{iv.multiplicity}"
        out.append(
            f'<text x="8" y="{y + 5}" font-family="monospace" '
            f'font-size="14" fill="{color}">{label}</text>'
        )
        if x1 - x0 < 2.0:  # point-like (ephemeral at a single scale)
            out.append(
                f'<circle cx="{x0:.2f}" cy="{y}" r="4" fill="none" '
                f'stroke="{color}" stroke-width="2"/>'
            )
        else:
            out.append(
                f'<line x1="{x0:.2f}" y1="{y}" x2="{x1:.2f}" y2="{y}" '
                f'stroke="{color}" stroke-width="5"{dash}/>'
            )
            for xe, closed in ((x0, iv.birth_closed), (x1, iv.death_closed)):
                fill = color if closed else "white"
                out.append(
                    f'<circle cx="{xe:.2f}" cy="{y}" r="4" fill="{fill}" '
                    f'stroke="{color}" stroke-width="1.5"/>'
                )
        if iv.clipped_at_rn:
            out.append(
                f'<text x="{x1 + 6:.2f}" y="{y + 5}" font-family="monospace" '
                f'font-size="12" fill="{color}">|r_n</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
