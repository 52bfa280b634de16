"""Minimal self-contained SVG rendering of survival curves.

No plotting dependency: the output is a single SVG document with inline
styles, one polyline per target height.
"""

from __future__ import annotations

from .analysis import SurvivalCurve

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def curve_to_svg(curve: SurvivalCurve, width: int = 640, height: int = 420,
                 title: str | None = None) -> str:
    """Render survival probability against drift, one line per height."""
    ml, mr, mt, mb = 56, 16, 34, 44
    pw, ph = width - ml - mr, height - mt - mb
    cs = sorted({pt.c for pt in curve.points})
    if not cs:
        raise ValueError("curve has no points")
    c_lo, c_hi = min(cs), max(cs)
    span = (c_hi - c_lo) or 1.0

    def px(c: float) -> float:
        return ml + (c - c_lo) / span * pw

    def py(p: float) -> float:
        return mt + (1.0 - p) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
        'stroke="#444" stroke-width="1"/>',
    ]
    # horizontal grid + y labels at 0, .25, .5, .75, 1
    for k in range(5):
        p = k / 4.0
        y = py(p)
        parts.append(
            f'<line x1="{ml}" y1="{_fmt(y)}" x2="{ml + pw}" y2="{_fmt(y)}" '
            'stroke="#ddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{ml - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="#333">{p:g}</text>'
        )
    # x ticks at ends and middle
    for c in (c_lo, (c_lo + c_hi) / 2, c_hi):
        x = px(c)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{mt + ph}" x2="{_fmt(x)}" y2="{mt + ph + 5}" '
            'stroke="#444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{mt + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11" fill="#333">{c:g}</text>'
        )
    parts.append(
        f'<text x="{ml + pw / 2}" y="{height - 8}" text-anchor="middle" '
        'font-family="sans-serif" font-size="12" fill="#111">drift c</text>'
    )
    parts.append(
        f'<text x="14" y="{mt + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 14 {mt + ph / 2})" '
        'font-family="sans-serif" font-size="12" fill="#111">survival probability</text>'
    )
    ttl = title or f"{curve.family}  {curve.distribution}  runs={curve.runs}"
    parts.append(
        f'<text x="{ml}" y="20" font-family="sans-serif" font-size="13" '
        f'fill="#111">{ttl}</text>'
    )
    for idx, h in enumerate(sorted({pt.height for pt in curve.points})):
        color = _COLORS[idx % len(_COLORS)]
        pts = curve.at(h)
        coords = " ".join(f"{_fmt(px(pt.c))},{_fmt(py(pt.p_hat))}" for pt in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            'stroke-width="1.8"/>'
        )
        for pt in pts:
            parts.append(
                f'<circle cx="{_fmt(px(pt.c))}" cy="{_fmt(py(pt.p_hat))}" r="2.2" '
                f'fill="{color}"/>'
            )
        lx = ml + pw - 10
        ly = mt + 14 + 16 * idx
        parts.append(
            f'<text x="{lx}" y="{ly}" text-anchor="end" font-family="sans-serif" '
            f'font-size="11" fill="{color}">H={h}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
