"""Graphviz output for drawings and solutions."""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping, Sequence

from .graph import Instance, Path, Vertex, format_rational

PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gold3", "gray40"]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def instance_dot(
    inst: Instance,
    solution: Sequence[Path] | None = None,
    names: Mapping[Vertex, str] | None = None,
    graph_name: str = "drawing",
) -> str:
    """DOT text with one rank per distinct y-coordinate, lowest at the bottom.

    Exact coordinates are kept in ``pos`` (usable with ``neato -n``); the
    vertices of the i-th solution path and its edges get the i-th colour.
    """
    d = inst.drawing
    colour: dict[Vertex, str] = {}
    edge_colour: dict[tuple[Vertex, Vertex], str] = {}
    for i, path in enumerate(solution or ()):
        c = PALETTE[i % len(PALETTE)]
        for v in path:
            colour[v] = c
        for e in zip(path, path[1:]):
            edge_colour[e] = c
    terminals = {v for pair in inst.pairs for v in pair}

    lines = [f"digraph {_quote(graph_name)} {{", "  rankdir=BT;", "  node [shape=circle, fontsize=8];"]
    for v in d.vertices:
        p = d.coords[v]
        attrs = [
            f"label={_quote(names.get(v, str(v)) if names else str(v))}",
            f'pos="{float(p.x):g},{float(p.y):g}!"',
            f'comment="{format_rational(p.x)} {format_rational(p.y)}"',
        ]
        if v in colour:
            attrs.append(f"color={colour[v]}")
        if v in terminals:
            attrs.append("shape=doublecircle")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    by_y: dict = defaultdict(list)
    for v in d.vertices:
        by_y[d.coords[v].y].append(v)
    for y in sorted(by_y):
        lines.append("  { rank=same; " + " ".join(f"{v};" for v in by_y[y]) + " }")
    for u, v in sorted(d.edges):
        c = edge_colour.get((u, v))
        attr = f" [color={c}, penwidth=2]" if c else ""
        lines.append(f"  {u} -> {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_paths(paths: Sequence[Path]) -> str:
    return "".join(f"path {i}: {' '.join(map(str, p))}\n" for i, p in enumerate(paths))


def parse_paths(text: str) -> list[Path]:
    """Read ``path <i>: v v v`` lines (or bare vertex lists), in file order."""
    paths: list[Path] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            head, line = line.split(":", 1)
            if not head.strip().startswith("path"):
                raise ValueError(f"line {lineno}: expected 'path <i>: ...'")
        try:
            path = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ValueError(f"line {lineno}: vertex ids must be integers") from None
        if not path:
            raise ValueError(f"line {lineno}: empty path")
        paths.append(path)
    return paths
