"""Two-panel SVG rendering of a persistence diagram.

Left panel: ordinary pairs (min-saddle in red, saddle-max in blue, the
global pair in black). Right panel: cycle pairs in purple. Every pair is
drawn at ``(f(birth node), f(death node))``, so min-saddle points sit above
the diagonal while saddle-max and cycle points sit below it.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .diagram import PairClass, PersistenceDiagram

__all__ = ["COLORS", "render_svg"]

COLORS = {
    PairClass.MIN_SADDLE: "#d62728",
    PairClass.SADDLE_MAX: "#1f77b4",
    PairClass.CYCLE: "#7b2fbe",
    "global": "#000000",
}

_PANEL = 320
_MARGIN = 44


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _panel(pairs, title: str, x0: float, lo: float, hi: float) -> list[str]:
    span = hi - lo or 1.0
    inner = _PANEL - 2 * _MARGIN

    def sx(v):
        return x0 + _MARGIN + (v - lo) / span * inner

    def sy(v):
        return _PANEL - _MARGIN - (v - lo) / span * inner

    out = [
        '<g class="panel">',
        f'<rect x="{_fmt(x0 + _MARGIN)}" y="{_MARGIN}" width="{inner}" height="{inner}" '
        f'fill="none" stroke="#999"/>',
        f'<line class="diagonal" x1="{_fmt(sx(lo))}" y1="{_fmt(sy(lo))}" x2="{_fmt(sx(hi))}" '
        f'y2="{_fmt(sy(hi))}" stroke="#bbb" stroke-dasharray="4 3"/>',
        f'<text x="{_fmt(x0 + _PANEL / 2)}" y="{_MARGIN - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(title)}</text>',
        f'<text x="{_fmt(x0 + _PANEL / 2)}" y="{_PANEL - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">f(birth)</text>',
        f'<text x="{_fmt(x0 + 14)}" y="{_PANEL / 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="11" transform="rotate(-90 {_fmt(x0 + 14)} {_PANEL / 2})">f(death)</text>',
    ]
    for p in pairs:
        color = COLORS["global"] if p.is_global else COLORS[p.kind]
        label = f"{p.kind.value} {p.birth} -> {p.death}"
        out.append(
            f'<circle class="pair" data-class={quoteattr(p.kind.value)} cx="{_fmt(sx(p.birth_value))}" '
            f'cy="{_fmt(sy(p.death_value))}" r="4" fill="{color}" fill-opacity="0.8">'
            f"<title>{escape(label)}</title></circle>"
        )
    out.append("</g>")
    return out


def render_svg(diagram: PersistenceDiagram, title: str = "") -> str:
    """SVG document with one ``circle.pair`` element per pair."""
    values = [v for p in diagram for v in (p.birth_value, p.death_value)] or [0.0, 1.0]
    lo, hi = min(values), max(values)
    pad = 0.05 * (hi - lo) if hi > lo else 0.5
    lo, hi = lo - pad, hi + pad
    width = 2 * _PANEL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{_PANEL}" '
        f'viewBox="0 0 {width} {_PANEL}">',
    ]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append(f'<rect width="{width}" height="{_PANEL}" fill="white"/>')
    parts += _panel(diagram.ordinary, "Dg0 (ordinary)", 0.0, lo, hi)
    parts += _panel(diagram.extended, "eDg1 (cycles)", float(_PANEL), lo, hi)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
