"""DOT export for open and closed strand diagrams. Presentation only."""

from __future__ import annotations

from .closed import ClosedDiagram
from .diagrams import StrandDiagram, kind_of

_PALETTE = (
    "red",
    "blue",
    "green",
    "orange",
    "purple",
    "brown",
    "cyan",
    "magenta",
    "gold",
    "gray",
)

_LITERAL = {"R": "red", "B": "blue", "G": "green"}


def _colors(vertex_ids):
    table = {}
    spare = [c for c in _PALETTE if c not in _LITERAL.values()]
    for i, v in enumerate(sorted(vertex_ids)):
        table[v] = _LITERAL.get(v, spare[i % len(spare)])
    return table


_SHAPES = {
    "source": "invtriangle",
    "sink": "triangle",
    "split-source": "invtriangle",
    "merge-sink": "triangle",
    "split": "circle",
    "merge": "circle",
    "degenerate": "diamond",
}


def diagram_dot(d: StrandDiagram, name: str = "strand_diagram") -> str:
    """DOT text; rotation order is carried by out-slot labels and ordering."""
    table = _colors(set(d.point_color.values()) | set(d.strand_color.values()))
    lines = [f"digraph {name} {{", '  rankdir="TB";']
    for p in sorted(d.point_color):
        kind = kind_of(d, p)
        shape = _SHAPES.get(kind, "circle")
        label = d.point_color[p]
        lines.append(
            f'  p{p} [shape={shape}, ordering="out", label="{label}",'
            f" color={table[d.point_color[p]]}];"
        )
    for s in sorted(d.strand_color):
        p, q = d.strand_from[s], d.strand_to[s]
        attrs = [f"color={table[d.strand_color[s]]}"]
        if len(d.out_slots[p]) > 1:
            attrs.append(f'taillabel="{d.out_slots[p].index(s)}"')
        if len(d.in_slots[q]) > 1:
            attrs.append(f'headlabel="{d.in_slots[q].index(s)}"')
        lines.append(f"  p{p} -> p{q} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def closed_dot(c: ClosedDiagram, name: str = "closed_diagram") -> str:
    """DOT text; the base line is drawn as a dashed chain through the base points."""
    table = _colors(set(c.point_color.values()) | set(c.strand_color.values()))
    lines = [f"digraph {name} {{", '  rankdir="TB";']
    for p in sorted(c.point_color):
        if p in c.base_set:
            shape, style = "square", ', style="filled", fillcolor="lightgray"'
        else:
            shape, style = ("circle", "") if len(c.out_slots[p]) >= 2 or len(c.in_slots[p]) >= 2 else ("diamond", "")
        lines.append(
            f'  p{p} [shape={shape}, ordering="out", label="{c.point_color[p]}",'
            f" color={table[c.point_color[p]]}{style}];"
        )
    for s in sorted(c.strand_color):
        p, q = c.strand_from[s], c.strand_to[s]
        attrs = [f"color={table[c.strand_color[s]]}"]
        if len(c.out_slots[p]) > 1:
            attrs.append(f'taillabel="{c.out_slots[p].index(s)}"')
        if len(c.in_slots[q]) > 1:
            attrs.append(f'headlabel="{c.in_slots[q].index(s)}"')
        lines.append(f"  p{p} -> p{q} [{', '.join(attrs)}];")
    for a, b in zip(c.base_line, c.base_line[1:]):
        lines.append(f'  p{a} -> p{b} [style="dashed", color="gray", constraint=false, arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
