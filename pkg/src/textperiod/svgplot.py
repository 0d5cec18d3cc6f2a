"""Minimal deterministic SVG line plots.

Hand-rolled on purpose: output bytes depend only on the data and labels
(no timestamps, no library version strings), so rerunning a command
reproduces the file exactly. The companion CSV written by the CLI carries
the same data points.
"""
from __future__ import annotations

from dataclasses import dataclass, field

WIDTH, HEIGHT = 800, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 28, 44
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


@dataclass
class LinePlot:
    title: str
    x_label: str
    y_label: str
    series: list = field(default_factory=list)  # (name, xs, ys, kind)

    def add_line(self, name, xs, ys):
        self.series.append((name, list(xs), list(ys), "line"))

    def add_hline(self, name, y):
        self.series.append((name, [], [y], "hline"))

    def add_marks(self, name, xs, ys, symbol="circle"):
        self.series.append((name, list(xs), list(ys), symbol))

    def add_bars(self, name, edges, counts):
        self.series.append((name, list(edges), list(counts), "bars"))

    def _limits(self):
        xs, ys = [], []
        for _, sx, sy, kind in self.series:
            if kind == "bars":
                xs.extend(sx)
                ys.extend(sy)
                ys.append(0.0)
            elif kind == "hline":
                ys.extend(sy)
            else:
                xs.extend(sx)
                ys.extend(sy)
        if not xs:
            xs = [0.0, 1.0]
        if not ys:
            ys = [0.0, 1.0]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        if x1 == x0:
            x1 = x0 + 1.0
        if y1 == y0:
            y1 = y0 + 1.0
        pad = 0.04 * (y1 - y0)
        return x0, x1, y0 - pad, y1 + pad

    def render(self) -> str:
        x0, x1, y0, y1 = self._limits()
        pw = WIDTH - MARGIN_L - MARGIN_R
        ph = HEIGHT - MARGIN_T - MARGIN_B

        def sx(v):
            return MARGIN_L + (v - x0) / (x1 - x0) * pw

        def sy(v):
            return MARGIN_T + ph - (v - y0) / (y1 - y0) * ph

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2:.0f}" y="18" text-anchor="middle" font-size="14" '
            f'font-family="sans-serif">{self.title}</text>',
        ]
        # axes + ticks
        out.append(
            f'<line x1="{MARGIN_L}" y1="{MARGIN_T + ph}" x2="{MARGIN_L + pw}" '
            f'y2="{MARGIN_T + ph}" stroke="black"/>'
        )
        out.append(
            f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
            f'y2="{MARGIN_T + ph}" stroke="black"/>'
        )
        for i in range(6):
            xv = x0 + i * (x1 - x0) / 5
            yv = y0 + i * (y1 - y0) / 5
            out.append(
                f'<text x="{sx(xv):.1f}" y="{MARGIN_T + ph + 16}" text-anchor="middle" '
                f'font-size="10" font-family="sans-serif">{_fmt(xv)}</text>'
            )
            out.append(
                f'<text x="{MARGIN_L - 6}" y="{sy(yv) + 3:.1f}" text-anchor="end" '
                f'font-size="10" font-family="sans-serif">{_fmt(yv)}</text>'
            )
        out.append(
            f'<text x="{MARGIN_L + pw / 2:.0f}" y="{HEIGHT - 8}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{self.x_label}</text>'
        )
        out.append(
            f'<text x="14" y="{MARGIN_T + ph / 2:.0f}" text-anchor="middle" font-size="12" '
            f'font-family="sans-serif" transform="rotate(-90 14 {MARGIN_T + ph / 2:.0f})">'
            f"{self.y_label}</text>"
        )

        legend_y = MARGIN_T + 4
        for idx, (name, xs, ys, kind) in enumerate(self.series):
            color = PALETTE[idx % len(PALETTE)]
            if kind == "line":
                pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(xs, ys))
                out.append(
                    f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>'
                )
            elif kind == "hline":
                out.append(
                    f'<line x1="{MARGIN_L}" y1="{sy(ys[0]):.2f}" x2="{MARGIN_L + pw}" '
                    f'y2="{sy(ys[0]):.2f}" stroke="{color}" stroke-width="1" '
                    f'stroke-dasharray="6,4"/>'
                )
            elif kind == "bars":
                # xs are bin edges (len = len(ys) + 1)
                for lo, hi, c in zip(xs[:-1], xs[1:], ys):
                    out.append(
                        f'<rect x="{sx(lo):.2f}" y="{sy(c):.2f}" '
                        f'width="{max(sx(hi) - sx(lo) - 1, 1):.2f}" '
                        f'height="{max(sy(0) - sy(c), 0):.2f}" fill="{color}" '
                        f'fill-opacity="0.55"/>'
                    )
            else:  # point markers
                for a, b in zip(xs, ys):
                    out.append(
                        f'<circle cx="{sx(a):.2f}" cy="{sy(b):.2f}" r="3.5" fill="{color}"/>'
                    )
            out.append(
                f'<text x="{MARGIN_L + pw - 6}" y="{legend_y + 12 * idx}" text-anchor="end" '
                f'font-size="10" font-family="sans-serif" fill="{color}">{name}</text>'
            )
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())
