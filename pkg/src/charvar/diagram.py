"""SVG drawings of configurations inside the ``r x r`` square."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .gl import GlConfiguration
from .quadratic import OverlappingConfiguration, QuadConfiguration

SIZE = 720
MARGIN = 20
MIN_LABEL = 14


class _Canvas:
    def __init__(self, rank: int):
        self.scale = SIZE / rank
        self.items: list[str] = []

    def _xy(self, v: float) -> str:
        return f"{MARGIN + v * self.scale:.3f}".rstrip("0").rstrip(".")

    def _len(self, v: float) -> str:
        return f"{v * self.scale:.3f}".rstrip("0").rstrip(".")

    def square(self, x: int, y: int, size: int, label: str, kind: str | None = None) -> None:
        self.items.append(
            f'<rect class="part" x="{self._xy(x)}" y="{self._xy(y)}" '
            f'width="{self._len(size)}" height="{self._len(size)}"/>'
        )
        if size * self.scale < MIN_LABEL:
            return
        cx, cy = self._xy(x + size / 2), self._xy(y + size / 2)
        sup = f'<tspan class="type" baseline-shift="super">{kind}</tspan>' if kind else ""
        self.items.append(f'<text x="{cx}" y="{cy}">{escape(label)}{sup}</text>')

    def vline(self, x: int) -> None:
        self.items.append(
            f'<line class="sep" x1="{self._xy(x)}" y1="{self._xy(0)}" x2="{self._xy(x)}" y2="{self._xy(SIZE / self.scale)}"/>'
        )

    def dashed(self, x: int, y: int, w: int, h: int, label: str) -> None:
        self.items.append(
            f'<rect class="overlap" x="{self._xy(x)}" y="{self._xy(y)}" width="{self._len(w)}" height="{self._len(h)}"/>'
        )
        self.items.append(f'<text x="{self._xy(x + w / 2)}" y="{self._xy(y + h / 2)}">{escape(label)}</text>')

    def render(self, title: str) -> str:
        full = SIZE + 2 * MARGIN
        head = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}">',
            f"<title>{escape(title)}</title>",
            "<style>"
            ".part{fill:#e6e6e6;stroke:#000;stroke-width:1.5}"
            ".frame{fill:none;stroke:#000;stroke-width:3}"
            ".sep{stroke:#888;stroke-width:1}"
            ".overlap{fill:#fff;stroke:#000;stroke-width:1.5;stroke-dasharray:6 4}"
            "text{font-family:sans-serif;font-size:14px;text-anchor:middle;dominant-baseline:middle}"
            ".type{font-size:10px}"
            "</style>",
            f'<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/>',
        ]
        return "\n".join(head + self.items + ["</svg>"]) + "\n"


def _stack(canvas: _Canvas, x: int, y: int, parts, typed: bool) -> None:
    for p in parts:
        if typed:
            canvas.square(x, y, p.size, str(p.size), p.kind)
            y += p.size
        else:
            canvas.square(x, y, p, str(p))
            y += p


def render_svg(cfg: GlConfiguration | QuadConfiguration | OverlappingConfiguration) -> str:
    """Standalone SVG: one shaded square per part, columns left to right."""
    r = cfg.rank
    canvas = _Canvas(r)
    if isinstance(cfg, OverlappingConfiguration):
        free = cfg.columns[cfg._free]
        a, b = (cfg.columns[i] for i in cfg.overlap)
        q1 = free.width
        _stack(canvas, 0, 0, free.parts, True)
        canvas.vline(q1)
        top_a = max(a.of_kind("e"))
        top_b = max(b.of_kind("e"))
        rest_a = list(a.parts)
        rest_a.remove(next(p for p in a.parts if p.kind == "e" and p.size == top_a))
        rest_b = list(b.parts)
        rest_b.remove(next(p for p in b.parts if p.kind == "e" and p.size == top_b))
        canvas.square(q1, 0, top_a, str(top_a), "e")
        _stack(canvas, q1, top_a, rest_a, True)
        canvas.square(r - top_b, r - top_b, top_b, str(top_b), "e")
        _stack(canvas, r - b.width, 0, rest_b, True)
        canvas.dashed(r - top_b, top_a, cfg.mu, r - top_b - top_a, "μ×ν")
        title = f"overlapping configuration, rank {r}, mu {cfg.mu}"
    elif isinstance(cfg, QuadConfiguration):
        x = 0
        for i, col in enumerate(cfg.columns):
            if i:
                canvas.vline(x)
            _stack(canvas, x, 0, col.parts, True)
            x += col.width
        title = f"quadratic configuration, rank {r}, epsilon {cfg.epsilon:+d}"
    else:
        x = 0
        for i, (q, col) in enumerate(zip(cfg.widths, cfg.columns)):
            if i:
                canvas.vline(x)
            _stack(canvas, x, 0, col.parts, False)
            x += q
        title = f"configuration, rank {r}, widths {cfg.widths}"
    return canvas.render(title)
