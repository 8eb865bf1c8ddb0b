"""SVG line charts for benchmark report series.

Deliberately dependency-free and deterministic: fixed size, fixed palette,
one polyline per series (nothing else uses the polyline element, which keeps
the output mechanically checkable).
"""

from __future__ import annotations

from .results import ReportSeries

WIDTH, HEIGHT = 760, 440
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 170, 50, 55

PALETTE = [
    "#2563eb", "#dc2626", "#16a34a", "#9333ea",
    "#ea580c", "#0891b2", "#ca8a04", "#db2777",
]


def _esc(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def _fmt(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:g}"


def _numeric(value) -> float:
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return float(value)
    except (TypeError, ValueError):
        return 0.0


def line_chart(series: list[ReportSeries], metric: str, param_key: str, title: str) -> str:
    points = [(s, [( _numeric(p.param), p.value) for p in s.points]) for s in series]
    xs = [x for _, pts in points for x, _ in pts]
    ys = [y for _, pts in points for _, y in pts]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys + [0.0]), max(ys)
    if x_max == x_min:
        x_max = x_min + 1.0
    if y_max == y_min:
        y_max = y_min + 1.0

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return MARGIN_TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h

    unit = next((s.points[0].unit for s in series if s.points), "")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'font-family="sans-serif">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="26" text-anchor="middle" font-size="16" '
        f'fill="#111">{_esc(title)}</text>',
    ]

    ticks = 5
    for i in range(ticks + 1):
        y_val = y_min + (y_max - y_min) * i / ticks
        y = sy(y_val)
        out.append(
            f'<line x1="{MARGIN_LEFT}" y1="{y:.1f}" x2="{MARGIN_LEFT + plot_w}" '
            f'y2="{y:.1f}" stroke="#e5e5e5" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-size="11" fill="#555">{_fmt(y_val)}</text>'
        )
    x_tick_vals = sorted({x for x in xs})
    if len(x_tick_vals) > 8:
        x_tick_vals = [x_min + (x_max - x_min) * i / 6 for i in range(7)]
    for x_val in x_tick_vals:
        x = sx(x_val)
        out.append(
            f'<text x="{x:.1f}" y="{MARGIN_TOP + plot_h + 18}" text-anchor="middle" '
            f'font-size="11" fill="#555">{_fmt(x_val)}</text>'
        )

    out.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 12}" '
        f'text-anchor="middle" font-size="12" fill="#333">{_esc(param_key)}</text>'
    )
    y_label = f"{metric} [{unit}]" if unit else metric
    out.append(
        f'<text x="18" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-size="12" fill="#333" transform="rotate(-90, 18, '
        f'{MARGIN_TOP + plot_h / 2:.1f})">{_esc(y_label)}</text>'
    )

    for i, (s, pts) in enumerate(points):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in pts)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for x, y in pts:
            out.append(
                f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="3" fill="{color}"/>'
            )
        ly = MARGIN_TOP + 16 * i
        lx = MARGIN_LEFT + plot_w + 14
        out.append(f'<rect x="{lx}" y="{ly}" width="12" height="12" fill="{color}"/>')
        out.append(
            f'<text x="{lx + 17}" y="{ly + 10}" font-size="11" '
            f'fill="#333">{_esc(s.label)}</text>'
        )

    out.append(
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{MARGIN_TOP + plot_h}" stroke="#333" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP + plot_h}" '
        f'x2="{MARGIN_LEFT + plot_w}" y2="{MARGIN_TOP + plot_h}" '
        f'stroke="#333" stroke-width="1"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
