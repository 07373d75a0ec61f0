"""
Deterministic diagram rendering: plain-text and SVG.

Strand slots sit on fixed columns; every event occupies a band of rows.
Classical crossings keep the over strand unbroken (the centre glyph shows
its direction), virtual crossings carry a small circle on transversal arcs,
flat crossings a plain intersection.  Identical input yields byte-identical
output, so renders can be pinned by golden files.
"""

from __future__ import annotations

from .diagrams import Cap, Cross, Cup, MorseDiagram, trace
from .words import BraidWord

_CENTER = {"x+": "\\", "x-": "/", "v": "O", "f": "x"}


def _col(slot: int) -> int:
    return 4 * (slot - 1)


def _strand_row(width: int, skip: tuple[int, ...] = ()) -> list[str]:
    row = [" "] * (_col(width) + 1 if width else 1)
    for s in range(1, width + 1):
        if s not in skip:
            row[_col(s)] = "|"
    return row


def _render_events(start_width: int, events) -> str:
    lines: list[str] = []
    width = start_width
    lines.append("".join(_strand_row(width)).rstrip())
    for ev in events:
        if isinstance(ev, Cup):
            width += 2
            row = _strand_row(width, skip=(ev.pos, ev.pos + 1))
            row[_col(ev.pos)] = "."
            row[_col(ev.pos + 1)] = "."
            for x in range(_col(ev.pos) + 1, _col(ev.pos + 1)):
                row[x] = "-"
            mark = _col(ev.pos) if ev.up_leg == "L" else _col(ev.pos + 1)
            lines.append("".join(row).rstrip())
            arrow_row = _strand_row(width)
            arrow_row[mark] = "^"
            lines.append("".join(arrow_row).rstrip())
        elif isinstance(ev, Cap):
            row = _strand_row(width, skip=(ev.pos, ev.pos + 1))
            row[_col(ev.pos)] = "'"
            row[_col(ev.pos + 1)] = "'"
            for x in range(_col(ev.pos) + 1, _col(ev.pos + 1)):
                row[x] = "-"
            lines.append("".join(row).rstrip())
            width -= 2
            lines.append("".join(_strand_row(width)).rstrip())
        else:
            a, b = _col(ev.pos), _col(ev.pos + 1)
            top = _strand_row(width, skip=(ev.pos, ev.pos + 1))
            top[a + 1] = "\\"
            top[b - 1] = "/"
            mid = _strand_row(width, skip=(ev.pos, ev.pos + 1))
            mid[(a + b) // 2] = _CENTER[ev.code]
            bot = _strand_row(width, skip=(ev.pos, ev.pos + 1))
            bot[a + 1] = "/"
            bot[b - 1] = "\\"
            lines.append("".join(top).rstrip())
            lines.append("".join(mid).rstrip())
            lines.append("".join(bot).rstrip())
            lines.append("".join(_strand_row(width)).rstrip())
    return "\n".join(lines) + "\n"


def render_ascii(obj: MorseDiagram | BraidWord) -> str:
    """Text rendering; braid words render as open tangles on n strands."""
    if isinstance(obj, BraidWord):
        from .diagrams import _LETTER_CODE

        events = [Cross(g.index, _LETTER_CODE[(g.family, g.inverse)]) for g in obj.letters]
        return _render_events(obj.n, events)
    trace(obj)
    return _render_events(0, obj.events)


_XSTEP = 32
_YSTEP = 28


def _svg_events(start_width: int, events) -> str:
    def x(slot: int) -> int:
        return 20 + _XSTEP * (slot - 1)

    parts: list[str] = []
    width = start_width
    y = 10
    max_width = width
    for ev in events:
        y2 = y + _YSTEP
        if isinstance(ev, Cup):
            width += 2
            p = ev.pos
            parts.append(
                f'<path d="M {x(p)} {y2} Q {(x(p) + x(p + 1)) // 2} {y} {x(p + 1)} {y2}" class="s"/>'
            )
            passthrough = [s for s in range(1, width + 1) if s not in (p, p + 1)]
            for s in passthrough:
                old = s if s < p else s - 2
                parts.append(f'<line x1="{x(old)}" y1="{y}" x2="{x(s)}" y2="{y2}" class="s"/>')
        elif isinstance(ev, Cap):
            p = ev.pos
            parts.append(
                f'<path d="M {x(p)} {y} Q {(x(p) + x(p + 1)) // 2} {y2} {x(p + 1)} {y}" class="s"/>'
            )
            for s in range(1, width + 1):
                if s in (p, p + 1):
                    continue
                new = s if s < p else s - 2
                parts.append(f'<line x1="{x(s)}" y1="{y}" x2="{x(new)}" y2="{y2}" class="s"/>')
            width -= 2
        else:
            p = ev.pos
            for s in range(1, width + 1):
                if s in (p, p + 1):
                    continue
                parts.append(f'<line x1="{x(s)}" y1="{y}" x2="{x(s)}" y2="{y2}" class="s"/>')
            xm, ym = (x(p) + x(p + 1)) // 2, (y + y2) // 2
            if ev.code in ("x+", "x-"):
                over_left = ev.code == "x+"
                # under strand drawn in two pieces around the centre
                if over_left:
                    parts.append(f'<line x1="{x(p + 1)}" y1="{y}" x2="{xm + 5}" y2="{ym - 4}" class="s"/>')
                    parts.append(f'<line x1="{xm - 5}" y1="{ym + 4}" x2="{x(p)}" y2="{y2}" class="s"/>')
                    parts.append(f'<line x1="{x(p)}" y1="{y}" x2="{x(p + 1)}" y2="{y2}" class="s"/>')
                else:
                    parts.append(f'<line x1="{x(p)}" y1="{y}" x2="{xm - 5}" y2="{ym - 4}" class="s"/>')
                    parts.append(f'<line x1="{xm + 5}" y1="{ym + 4}" x2="{x(p + 1)}" y2="{y2}" class="s"/>')
                    parts.append(f'<line x1="{x(p + 1)}" y1="{y}" x2="{x(p)}" y2="{y2}" class="s"/>')
            else:
                parts.append(f'<line x1="{x(p)}" y1="{y}" x2="{x(p + 1)}" y2="{y2}" class="s"/>')
                parts.append(f'<line x1="{x(p + 1)}" y1="{y}" x2="{x(p)}" y2="{y2}" class="s"/>')
                if ev.code == "v":
                    parts.append(f'<circle cx="{xm}" cy="{ym}" r="6" class="v"/>')
        max_width = max(max_width, width)
        y = y2
    w = 40 + _XSTEP * max(max_width - 1, 0)
    h = y + 10
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">'
        '<style>.s{stroke:#000;fill:none;stroke-width:2}'
        ".v{stroke:#000;fill:#fff;stroke-width:2}</style>"
    )
    return head + "".join(parts) + "</svg>\n"


def render_svg(obj: MorseDiagram | BraidWord) -> str:
    """SVG rendering; braid words render as open tangles on n strands."""
    if isinstance(obj, BraidWord):
        from .diagrams import _LETTER_CODE

        events = [Cross(g.index, _LETTER_CODE[(g.family, g.inverse)]) for g in obj.letters]
        return _svg_events(obj.n, events)
    trace(obj)
    return _svg_events(0, obj.events)
