"""Routing gadget, crossing gadget, rows and columns of crossing gadgets.

Layouts are written in a left-to-right frame (every edge points in the
positive x direction) and rotated a quarter turn counter-clockwise at the
end, so that edges point upward in the emitted drawing. Edges that the
reference layouts draw with bends are subdivided by fresh vertices named ``bend*``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .geometry import Point
from .graph import Drawing, Instance, Path, Vertex


class Drop(enum.Enum):
    NONE = "none"
    E_PLUS = "e+"
    E_MINUS = "e-"


class Entry(enum.Enum):
    PLUS = "+"  # variable path enters through H^in
    MINUS = "-"  # ... through L^in


# routing gadget, left-to-right frame; names follow the reference layout (r1..r9 are
# the unlabelled vertices, "k_" is the underlined target of source k)
ROUTING_LAYOUT: dict[str, tuple[int, int]] = {
    "1": (-5, 6), "2": (-2, 4), "3": (-2, -4), "4": (-5, -6),
    "r1": (-4, 2), "r2": (-4, 0),
    "r3": (0, 6), "r4": (0, 2), "r5": (0, 0), "r6": (0, -2), "r7": (0, -6),
    "1_": (2, 4), "4_": (2, -4),
    "2_": (5, 6), "r8": (4, 0), "r9": (4, -2), "3_": (5, -6),
}
ROUTING_EDGES: list[tuple[str, str]] = [
    ("r1", "r5"), ("1", "r1"), ("r1", "r4"), ("r2", "r6"), ("r2", "r5"),
    ("4", "r2"), ("4", "r7"), ("1", "r3"),
    ("2", "r3"), ("2", "r4"), ("3", "r6"), ("3", "r7"),
    ("r3", "1_"), ("r3", "2_"), ("r4", "1_"), ("r4", "r8"), ("r5", "r8"),
    ("r5", "r9"), ("r6", "r9"), ("r6", "4_"), ("r7", "4_"), ("r7", "3_"),
    ("r8", "2_"), ("r8", "e_r"), ("r9", "3_"), ("r9", "e_b"),
]
ROUTING_PAIRS = [("1", "1_"), ("2", "2_"), ("3", "3_"), ("4", "4_")]
# where the four boundary connections attach inside the gadget
ROUTING_PORTS = {"e_t": "r1", "e_l": "r2", "e_r": "r8", "e_b": "r9"}
# stub vertices placed at the box corners when a box is embedded
STUB_OFFSETS = {"t": (-8, 8), "l": (-8, 0), "r": (8, 0), "b": (8, -8)}

F = 40  # crossing gadget grid unit
BOX_SHIFT = 12  # a box sits right of its reference position so inputs stay upward

# crossing gadget main vertices in the left-to-right frame
CROSSING_LAYOUT: dict[str, tuple[int, int]] = {
    "H^in": (-6 * F, 2 * F), "L^in": (-6 * F, -2 * F),
    "T": (-5 * F - 4, 4 * F), "m1": (-5 * F, 3 * F),
    "bendA": (-5 * F + 24, -F),
    "X": (-4 * F, 0), "m2": (-4 * F + 4, 2 * F), "m3": (-4 * F + 24, -2 * F),
    "bendB1": (-3 * F, -F), "bendB2": (-3 * F + 4, F),
    "m4": (-2 * F, 2 * F), "W": (-2 * F + 24, 0), "m5": (-2 * F, -2 * F),
    "bendC1": (-F, F), "bendC2": (-F + 4, 0),
    "bendD": (0, 3 * F), "m0": (24, 0), "m6": (28, -2 * F), "bendE": (32, -3 * F),
    "bendF1": (F, 0), "bendF2": (F + 4, -F),
    "Z": (2 * F, 0), "m7": (2 * F + 4, 2 * F), "m8": (2 * F + 24, -2 * F),
    "bendG1": (3 * F, -F), "bendG2": (3 * F + 4, F),
    "m9": (4 * F, 2 * F), "Y": (4 * F + 24, 0), "m10": (4 * F, -2 * F),
    "bendH": (5 * F, F), "m11": (5 * F + 4, -2 * F), "m12": (5 * F + 8, -3 * F), "B": (5 * F + 12, -4 * F),
    "H^out": (6 * F + 20, 2 * F), "L^out": (6 * F + 20, -2 * F),
}
BOX_CENTERS: dict[str, tuple[int, int]] = {
    "b1": (-5 * F, 2 * F), "b2": (-4 * F, -F), "b3": (-2 * F, F),
    "b4": (0, 2 * F), "b5": (2 * F, -F), "b6": (4 * F, F),
}
# box ports: "b1.t" is the stub feeding e_t of box b1, and so on
CROSSING_EDGES: list[tuple[str, str]] = [
    ("H^in", "b1.l"), ("L^in", "m3"), ("T", "m1"),
    ("m1", "b1.t"),  # e^-
    ("m1", "bendD"),  # e^+
    ("bendD", "b4.t"),
    ("b1.r", "m2"), ("b1.b", "bendA"), ("bendA", "b2.l"),
    ("m2", "m4"), ("X", "m2"), ("X", "b2.t"), ("b2.b", "m3"),
    ("b2.r", "bendB1"), ("bendB1", "bendB2"), ("bendB2", "b3.l"), ("m3", "m5"),
    ("m4", "b3.t"), ("m4", "b4.l"), ("b3.b", "W"),
    ("b3.r", "bendC1"), ("bendC1", "bendC2"), ("bendC2", "m0"),
    ("m5", "W"), ("m5", "m6"),
    ("b4.b", "m0"), ("b4.r", "m7"), ("m0", "m6"),
    ("m0", "bendF1"), ("bendF1", "bendF2"), ("bendF2", "b5.l"),
    ("m6", "m8"), ("m6", "bendE"), ("bendE", "m12"),
    ("m7", "m9"), ("Z", "m7"), ("Z", "b5.t"),
    ("b5.r", "bendG1"), ("bendG1", "bendG2"), ("bendG2", "b6.l"), ("b5.b", "m8"), ("m8", "m10"),
    ("m9", "H^out"), ("m9", "b6.t"), ("b6.r", "bendH"), ("bendH", "m11"), ("b6.b", "Y"),
    ("m10", "Y"), ("m10", "m11"),
    ("m11", "m12"), ("m11", "L^out"), ("m12", "B"),
]
E_PLUS = ("m1", "bendD")
E_MINUS = ("m1", "b1.t")

CROSSING_WIDTH = CROSSING_LAYOUT["H^out"][0] - CROSSING_LAYOUT["H^in"][0]
ROW_STEP = 14 * F  # horizontal distance between neighbouring gadgets of a row
COLUMN_STEP = (12 * F, -12 * F)  # offset between neighbouring gadgets of a column


def rotate(p: tuple[int, int]) -> Point:
    """Quarter turn counter-clockwise: the left-to-right frame becomes upward."""
    x, y = p
    return Point(-y, x)


@dataclass
class Gadget:
    """A drawing fragment with named vertices, ports and terminal pairs.

    ``labels`` maps names to vertex ids; names of vertices inside a routing
    box are prefixed by the box (``"b3.r5"``) and, in composites, everything
    is prefixed by the gadget (``"G2.m4"``). ``pairs`` lists the structural
    pairs first and the routing-box pairs after them; ``main_pairs`` is the
    number of structural ones.
    """

    coords: dict[Vertex, Point] = field(default_factory=dict)
    edges: set[tuple[Vertex, Vertex]] = field(default_factory=set)
    labels: dict[str, Vertex] = field(default_factory=dict)
    ports: dict[str, Vertex] = field(default_factory=dict)
    pairs: list[tuple[Vertex, Vertex]] = field(default_factory=list)
    main_pairs: int = 0

    def __post_init__(self) -> None:
        self._names: dict[Vertex, str] | None = None

    def add_vertex(self, name: str, pos: tuple[int, int]) -> Vertex:
        if name in self.labels:
            raise ValueError(f"duplicate vertex name {name}")
        v = len(self.coords)
        self.coords[v] = rotate(pos)
        self.labels[name] = v
        self._names = None
        return v

    def add_edge(self, u: str, v: str) -> None:
        self.edges.add((self.labels[u], self.labels[v]))

    @property
    def names(self) -> dict[Vertex, str]:
        if self._names is None:
            self._names = {v: k for k, v in self.labels.items()}
        return self._names

    def __getitem__(self, name: str) -> Vertex:
        return self.labels[name]

    def drawing(self) -> Drawing:
        return Drawing(self.coords, self.edges)

    def instance(self, extra: Iterable[tuple[str, str]] = ()) -> Instance:
        pairs = list(self.pairs) + [(self[s], self[t]) for s, t in extra]
        return Instance(self.drawing(), tuple(pairs))

    def label_path(self, path: Sequence[Vertex]) -> list[str]:
        """Collapse routing-box internals and bends into gadget-level labels."""
        out: list[str] = []
        for v in path:
            name = self.names[v]
            label = _gadget_label(name)
            if label is None:
                continue
            if not out or out[-1] != label:
                out.append(label)
        return out


def _gadget_label(name: str) -> str | None:
    parts = name.split(".")
    # "G2.b3.r5" -> box "G2.b3"; "G2.m4" -> "G2.m4"; bends vanish
    for i, part in enumerate(parts):
        if part.startswith("bend"):
            return None
        if len(part) == 2 and part[0] == "b" and part[1].isdigit() and i + 1 < len(parts):
            return ".".join(parts[: i + 1])
    return name


def _add_routing(g: Gadget, prefix: str, center: tuple[int, int], stubs: bool) -> list[tuple[Vertex, Vertex]]:
    cx, cy = center
    for name, (x, y) in ROUTING_LAYOUT.items():
        g.add_vertex(prefix + name, (cx + x, cy + y))
    if stubs:
        for side, (x, y) in STUB_OFFSETS.items():
            g.add_vertex(prefix[:-1] + "." + side if prefix else side, (cx + x, cy + y))
    for u, v in ROUTING_EDGES:
        if v in ("e_r", "e_b"):
            if stubs:
                g.add_edge(prefix + u, prefix[:-1] + "." + v[-1])
            continue
        g.add_edge(prefix + u, prefix + v)
    if stubs:
        g.add_edge(prefix[:-1] + ".t", prefix + ROUTING_PORTS["e_t"])
        g.add_edge(prefix[:-1] + ".l", prefix + ROUTING_PORTS["e_l"])
    return [(g[prefix + s], g[prefix + t]) for s, t in ROUTING_PAIRS]


def build_routing_gadget() -> Gadget:
    """The 17-vertex routing gadget with its four internal pairs.

    Ports name the vertices where the boundary connections attach:
    ``e_t`` and ``e_l`` enter at r1 and r2, ``e_r`` and ``e_b`` leave from
    r8 and r9.
    """
    g = Gadget()
    g.pairs = _add_routing(g, "", (0, 0), stubs=False)
    g.ports = {port: g[name] for port, name in ROUTING_PORTS.items()}
    return g


def _add_crossing(g: Gadget, prefix: str, offset: tuple[int, int], drop: Drop) -> list[tuple[Vertex, Vertex]]:
    """Add one crossing gadget under *prefix*; returns its routing-box pairs."""
    ox, oy = offset
    for name, (x, y) in CROSSING_LAYOUT.items():
        g.add_vertex(prefix + name, (ox + x, oy + y))
    box_pairs = []
    for box, (x, y) in BOX_CENTERS.items():
        box_pairs += _add_routing(g, f"{prefix}{box}.", (ox + x + BOX_SHIFT, oy + y), stubs=True)
    dropped = {Drop.E_PLUS: E_PLUS, Drop.E_MINUS: E_MINUS}.get(drop)
    for u, v in CROSSING_EDGES:
        if (u, v) == dropped:
            continue
        g.add_edge(prefix + u, prefix + v)
    return box_pairs


def _ports(g: Gadget, prefix: str = "") -> dict[str, Vertex]:
    return {name: g[prefix + name] for name in ("H^in", "L^in", "T", "H^out", "L^out", "B")}


def build_crossing_gadget(drop: Drop = Drop.NONE, entry: Entry | None = None, through: bool = True) -> Gadget:
    """A crossing gadget, optionally with one of the edges e^+ / e^- removed.

    With *entry* set, the structural pairs are the variable path
    ``(H^in or L^in, W)``, then ``(T, B)`` when *through*, then ``(X, Y)``;
    without it only ``(X, Y)`` is structural. Box pairs follow.
    """
    g = Gadget()
    box_pairs = _add_crossing(g, "", (0, 0), drop)
    main = []
    if entry is not None:
        main.append((g["H^in" if entry is Entry.PLUS else "L^in"], g["W"]))
        if through:
            main.append((g["T"], g["B"]))
    main.append((g["X"], g["Y"]))
    g.pairs = main + box_pairs
    g.main_pairs = len(main)
    g.ports = _ports(g)
    return g


def crossing_edge(g: Gadget, which: Drop, prefix: str = "") -> tuple[Vertex, Vertex]:
    u, v = E_PLUS if which is Drop.E_PLUS else E_MINUS
    return g[prefix + u], g[prefix + v]


def build_row(s: int, variant: Entry, drops: Sequence[Drop] | None = None) -> Gadget:
    """*s* crossing gadgets chained left to right through H and L.

    Structural pairs: the entry pair ``(H_1^in or L_1^in, W_1)``, then
    ``(X_j, Y_j)`` for every gadget, then ``(Z_j, W_{j+1})`` for j < s.
    """
    if s < 1:
        raise ValueError("a row needs at least one gadget")
    drops = list(drops) if drops is not None else [Drop.NONE] * s
    g = Gadget()
    box_pairs = []
    for j in range(1, s + 1):
        box_pairs += _add_crossing(g, f"G{j}.", ((j - 1) * ROW_STEP, 0), drops[j - 1])
    for j in range(1, s):
        g.add_edge(f"G{j}.H^out", f"G{j + 1}.H^in")
        g.add_edge(f"G{j}.L^out", f"G{j + 1}.L^in")
    entry = "G1.H^in" if variant is Entry.PLUS else "G1.L^in"
    main = [(g[entry], g["G1.W"])]
    main += [(g[f"G{j}.X"], g[f"G{j}.Y"]) for j in range(1, s + 1)]
    main += [(g[f"G{j}.Z"], g[f"G{j + 1}.W"]) for j in range(1, s)]
    g.pairs = main + box_pairs
    g.main_pairs = len(main)
    g.ports = {"H^in": g["G1.H^in"], "L^in": g["G1.L^in"], "H^out": g[f"G{s}.H^out"], "L^out": g[f"G{s}.L^out"]}
    return g


def build_column(t: int, drops: Sequence[Drop], starts: Sequence[Entry]) -> Gadget:
    """*t* crossing gadgets chained top to bottom through B_i -> T_{i+1}.

    Structural pairs: ``(T_1, B_t)`` first, then the entry paths
    ``(H_i^in or L_i^in, W_i)`` and ``(X_i, Y_i)`` for every gadget.
    """
    if len(drops) != t or len(starts) != t:
        raise ValueError("drops and starts must have one entry per gadget")
    g = Gadget()
    box_pairs = []
    dx, dy = COLUMN_STEP
    for i in range(1, t + 1):
        box_pairs += _add_crossing(g, f"G{i}.", ((i - 1) * dx, (i - 1) * dy), drops[i - 1])
    for i in range(1, t):
        g.add_edge(f"G{i}.B", f"G{i + 1}.T")
    main = [(g["G1.T"], g[f"G{t}.B"])]
    for i in range(1, t + 1):
        entry = "H^in" if starts[i - 1] is Entry.PLUS else "L^in"
        main.append((g[f"G{i}.{entry}"], g[f"G{i}.W"]))
        main.append((g[f"G{i}.X"], g[f"G{i}.Y"]))
    g.pairs = main + box_pairs
    g.main_pairs = len(main)
    g.ports = {"T": g["G1.T"], "B": g[f"G{t}.B"]}
    return g


def uses_edge(path: Path, edge: tuple[Vertex, Vertex]) -> bool:
    return any((u, v) == edge for u, v in zip(path, path[1:]))
