"""
Oriented link diagrams as Morse event sequences.

A diagram is a vertical list of elementary events read top to bottom, each
acting on numbered slots (1-based, left to right):

* ``Cup(p, up_leg)``  inserts two new strand ends at slots p, p+1 (a local
  extremum joining them); ``up_leg`` says which leg carries upward flow.
* ``Cap(p)``          joins the strand ends at slots p, p+1 and removes them;
  one end must flow down and the other up.
* ``Cross(p, code)``  crosses the strands at slots p, p+1.  ``code`` is one
  of ``x+``/``x-`` (classical with sign), ``v`` (virtual), ``f`` (flat).

For a classical crossing the strand entering at slot p (the NW-SE diagonal)
passes over when the code is ``x+`` and under when it is ``x-``; this is
independent of orientation.  The orientation-aware sign recorded in Gauss
codes and linking numbers flips when exactly one of the two strands flows
upward.

A diagram is closed: it starts and ends at width zero.  Categories constrain
which crossing codes may appear:

=================  =====================
category           allowed crossings
=================  =====================
classical          x+, x-
virtual            x+, x-, v
welded             x+, x-, v
unrestricted       x+, x-, v
flat               f, v
flat-unrestricted  f, v
=================  =====================
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .words import BraidWord, GroupKind, Permutation, WordError, permutation_image


class DiagramError(ValueError):
    """Raised for structurally invalid diagrams or malformed diagram text."""


@dataclass(frozen=True)
class Cup:
    pos: int
    up_leg: str  # "L" | "R"


@dataclass(frozen=True)
class Cap:
    pos: int


@dataclass(frozen=True)
class Cross:
    pos: int
    code: str  # "x+" | "x-" | "v" | "f"


MorseEvent = Cup | Cap | Cross

CATEGORIES = (
    "classical",
    "virtual",
    "flat",
    "welded",
    "unrestricted",
    "flat-unrestricted",
)

_ALLOWED_CODES = {
    "classical": {"x+", "x-"},
    "virtual": {"x+", "x-", "v"},
    "welded": {"x+", "x-", "v"},
    "unrestricted": {"x+", "x-", "v"},
    "flat": {"f", "v"},
    "flat-unrestricted": {"f", "v"},
}

KIND_CATEGORY = {
    GroupKind.B: "classical",
    GroupKind.S: "virtual",
    GroupKind.VB: "virtual",
    GroupKind.WB: "welded",
    GroupKind.UB: "unrestricted",
    GroupKind.FV: "flat",
    GroupKind.FU: "flat-unrestricted",
}

CATEGORY_KIND = {
    "classical": GroupKind.B,
    "virtual": GroupKind.VB,
    "welded": GroupKind.WB,
    "unrestricted": GroupKind.UB,
    "flat": GroupKind.FV,
    "flat-unrestricted": GroupKind.FU,
}


@dataclass(frozen=True)
class MorseDiagram:
    category: str
    events: tuple[MorseEvent, ...]

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise DiagramError(f"unknown category {self.category!r}")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    event_index: int | None = None
    message: str = ""


class _Wire:
    """One strand segment between two events.

    ``top`` and ``bottom`` are (event index, port) anchors; ``flow`` is
    "down" when the strand travels from top to bottom and "up" otherwise.
    """

    __slots__ = ("idx", "top", "bottom", "flow")

    def __init__(self, idx: int, top: tuple[int, str], flow: str):
        self.idx = idx
        self.top = top
        self.bottom: tuple[int, str] | None = None
        self.flow = flow


class _Traced:
    """The wire graph of a valid diagram plus per-event width bookkeeping."""

    def __init__(self, d: MorseDiagram):
        self.diagram = d
        self.wires: list[_Wire] = []
        self.width_before: list[int] = []
        open_slots: list[_Wire] = []
        allowed = _ALLOWED_CODES[d.category]

        def new_wire(anchor: tuple[int, str], flow: str) -> _Wire:
            w = _Wire(len(self.wires), anchor, flow)
            self.wires.append(w)
            return w

        for idx, ev in enumerate(d.events):
            width = len(open_slots)
            self.width_before.append(width)
            if isinstance(ev, Cup):
                if not 1 <= ev.pos <= width + 1:
                    raise DiagramError(f"event {idx}: cup position {ev.pos} outside 1..{width + 1}")
                if ev.up_leg not in ("L", "R"):
                    raise DiagramError(f"event {idx}: bad cup chirality {ev.up_leg!r}")
                lflow, rflow = ("up", "down") if ev.up_leg == "L" else ("down", "up")
                left = new_wire((idx, "l"), lflow)
                right = new_wire((idx, "r"), rflow)
                open_slots[ev.pos - 1 : ev.pos - 1] = [left, right]
            elif isinstance(ev, Cap):
                if not 1 <= ev.pos <= width - 1:
                    raise DiagramError(f"event {idx}: cap position {ev.pos} outside 1..{width - 1}")
                wl, wr = open_slots[ev.pos - 1], open_slots[ev.pos]
                if wl.flow == wr.flow:
                    raise DiagramError(
                        f"event {idx}: cap joins two {wl.flow}ward ends at slot {ev.pos}"
                    )
                wl.bottom = (idx, "l")
                wr.bottom = (idx, "r")
                del open_slots[ev.pos - 1 : ev.pos + 1]
            elif isinstance(ev, Cross):
                if ev.code not in ("x+", "x-", "v", "f"):
                    raise DiagramError(f"event {idx}: unknown crossing code {ev.code!r}")
                if ev.code not in allowed:
                    raise DiagramError(
                        f"event {idx}: crossing {ev.code} not allowed in category {d.category}"
                    )
                if not 1 <= ev.pos <= width - 1:
                    raise DiagramError(
                        f"event {idx}: crossing position {ev.pos} outside 1..{width - 1}"
                    )
                tl, tr = open_slots[ev.pos - 1], open_slots[ev.pos]
                tl.bottom = (idx, "tl")
                tr.bottom = (idx, "tr")
                # the tl strand continues at br and vice versa
                bl = new_wire((idx, "bl"), tr.flow)
                br = new_wire((idx, "br"), tl.flow)
                open_slots[ev.pos - 1] = bl
                open_slots[ev.pos] = br
            else:  # pragma: no cover
                raise DiagramError(f"event {idx}: unknown event {ev!r}")
        if open_slots:
            raise DiagramError(f"diagram ends with width {len(open_slots)}, not 0")

        self.by_top = {w.top: w for w in self.wires}
        self.by_bottom = {w.bottom: w for w in self.wires}
        self._components: tuple[int, ...] | None = None

    # -- components ---------------------------------------------------------

    def component_labels(self) -> tuple[int, ...]:
        """Component label per wire, numbered by first appearance."""
        if self._components is not None:
            return self._components
        parent = list(range(len(self.wires)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            parent[find(x)] = find(y)

        for idx, ev in enumerate(self.diagram.events):
            if isinstance(ev, Cup):
                union(self.by_top[(idx, "l")].idx, self.by_top[(idx, "r")].idx)
            elif isinstance(ev, Cap):
                union(self.by_bottom[(idx, "l")].idx, self.by_bottom[(idx, "r")].idx)
            else:
                union(self.by_bottom[(idx, "tl")].idx, self.by_top[(idx, "br")].idx)
                union(self.by_bottom[(idx, "tr")].idx, self.by_top[(idx, "bl")].idx)
        roots: dict[int, int] = {}
        labels = []
        for w in self.wires:
            r = find(w.idx)
            if r not in roots:
                roots[r] = len(roots) + 1
            labels.append(roots[r])
        self._components = tuple(labels)
        return self._components

    def component_count(self) -> int:
        labels = self.component_labels()
        return max(labels) if labels else 0

    # -- traversal ------------------------------------------------------------

    def walk(self, start: _Wire):
        """Follow the strand through the diagram starting along start's flow.

        Yields (event index, port) pairs for every crossing passage, where
        the port identifies which strand of the crossing is being ridden:
        "tl" for the NW-SE strand, "tr" for the NE-SW strand.
        """
        wire, travel = start, start.flow
        while True:
            anchor = wire.bottom if travel == "down" else wire.top
            idx, port = anchor
            ev = self.diagram.events[idx]
            if isinstance(ev, Cup):
                other = "r" if port == "l" else "l"
                wire = self.by_top[(idx, other)]
                travel = "down"
            elif isinstance(ev, Cap):
                other = "r" if port == "l" else "l"
                wire = self.by_bottom[(idx, other)]
                travel = "up"
            else:
                if travel == "down":
                    yield idx, port  # port is tl or tr
                    out = "br" if port == "tl" else "bl"
                    wire = self.by_top[(idx, out)]
                else:
                    strand = "tl" if port == "br" else "tr"
                    yield idx, strand
                    wire = self.by_bottom[(idx, strand)]
            if wire is start:
                return

    def crossing_strands(self, idx: int) -> tuple[_Wire, _Wire]:
        """(NW-SE wire, NE-SW wire) entering crossing event idx from above."""
        return self.by_bottom[(idx, "tl")], self.by_bottom[(idx, "tr")]


def trace(d: MorseDiagram) -> _Traced:
    """Simulate the diagram, raising DiagramError on any invariant violation."""
    return _Traced(d)


def validate(d: MorseDiagram) -> ValidationReport:
    """Check all structural invariants; reports the first violation."""
    try:
        trace(d)
    except DiagramError as exc:
        msg = str(exc)
        m = re.match(r"^event (\d+): (.*)$", msg)
        if m:
            return ValidationReport(False, int(m.group(1)), m.group(2))
        return ValidationReport(False, None, msg)
    return ValidationReport(True)


_LETTER_CODE = {("s", False): "x+", ("s", True): "x-", ("v", False): "v", ("c", False): "f"}


def closure(w: BraidWord) -> MorseDiagram:
    """The standard braid closure as a Morse diagram.

    n nested cups on top (braid strand on the left leg, upward return arc on
    the right), the braid letters as crossings on slots 1..n, and n nested
    caps below; return arcs nest to the right with strand 1's outermost.
    """
    n = w.n
    events: list[MorseEvent] = [Cup(i, "R") for i in range(1, n + 1)]
    for g in w.letters:
        events.append(Cross(g.index, _LETTER_CODE[(g.family, g.inverse)]))
    events.extend(Cap(i) for i in range(n, 0, -1))
    return MorseDiagram(KIND_CATEGORY[w.kind], tuple(events))


@dataclass(frozen=True)
class ComponentMap:
    count: int
    wire_labels: tuple[int, ...]


def components(d: MorseDiagram) -> ComponentMap:
    """Count components and label every strand segment deterministically."""
    t = trace(d)
    return ComponentMap(t.component_count(), t.component_labels())


# ---------------------------------------------------------------------------
# Gauss codes


class GaussEntry(NamedTuple):
    label: int
    passing: str  # "o" | "u" | "f"
    sign: int  # +1 / -1 for classical, 0 for flat


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[GaussEntry, ...], ...]

    def __post_init__(self) -> None:
        seen: dict[int, list[GaussEntry]] = {}
        for comp in self.components:
            for e in comp:
                seen.setdefault(e.label, []).append(e)
        for label, entries in seen.items():
            if len(entries) != 2:
                raise DiagramError(f"label {label} appears {len(entries)} times, not 2")
            kinds = sorted(e.passing for e in entries)
            if kinds == ["f", "f"]:
                continue
            if kinds != ["o", "u"]:
                raise DiagramError(f"label {label} needs one over and one under pass")
            if entries[0].sign != entries[1].sign or entries[0].sign == 0:
                raise DiagramError(f"label {label} has inconsistent signs")

    @property
    def crossing_count(self) -> int:
        return sum(len(c) for c in self.components) // 2


def _gauss_sign(code: str, flow_a: str, flow_b: str) -> int:
    base = 1 if code == "x+" else -1
    return base if flow_a == flow_b else -base


def gauss_code(d: MorseDiagram) -> GaussCode:
    """Per-component cyclic crossing records, virtual crossings omitted.

    Traversal starts each component on its earliest strand segment and
    follows the orientation; labels are assigned in first-encounter order.
    """
    t = trace(d)
    labels = t.component_labels()
    crossing_label: dict[int, int] = {}
    comps: list[tuple[GaussEntry, ...]] = []
    for comp in range(1, t.component_count() + 1):
        start = t.wires[labels.index(comp)]
        entries: list[GaussEntry] = []
        for idx, port in t.walk(start):
            ev = t.diagram.events[idx]
            assert isinstance(ev, Cross)
            if ev.code == "v":
                continue
            if idx not in crossing_label:
                crossing_label[idx] = len(crossing_label) + 1
            label = crossing_label[idx]
            if ev.code == "f":
                entries.append(GaussEntry(label, "f", 0))
                continue
            over_port = "tl" if ev.code == "x+" else "tr"
            wa, wb = t.crossing_strands(idx)
            entries.append(
                GaussEntry(
                    label,
                    "o" if port == over_port else "u",
                    _gauss_sign(ev.code, wa.flow, wb.flow),
                )
            )
        comps.append(tuple(entries))
    return GaussCode(tuple(comps))


_GAUSS_TOKEN = re.compile(r"(o|u)(\d+)(\+|-)|f(\d+)")


def parse_gauss(text: str) -> GaussCode:
    """Parse codes like ``o1+u2+u1+o2+``; components separated by ``/``."""
    comps = []
    for part in text.strip().split("/"):
        entries = []
        pos = 0
        while pos < len(part):
            m = _GAUSS_TOKEN.match(part, pos)
            if m is None:
                raise DiagramError(f"bad gauss code at {part[pos:]!r}")
            if m.group(4) is not None:
                entries.append(GaussEntry(int(m.group(4)), "f", 0))
            else:
                entries.append(
                    GaussEntry(int(m.group(2)), m.group(1), 1 if m.group(3) == "+" else -1)
                )
            pos = m.end()
        comps.append(tuple(entries))
    return GaussCode(tuple(comps))


def format_gauss(g: GaussCode) -> str:
    parts = []
    for comp in g.components:
        toks = []
        for e in comp:
            if e.passing == "f":
                toks.append(f"f{e.label}")
            else:
                toks.append(f"{e.passing}{e.label}{'+' if e.sign > 0 else '-'}")
        parts.append("".join(toks))
    return "/".join(parts)


def gauss_equivalent(g1: GaussCode, g2: GaussCode) -> bool:
    """Equality up to crossing relabeling, per-component rotation, and
    permutation of components.  Orientation is not reversed."""
    comps1 = [list(c) for c in g1.components]
    comps2 = [list(c) for c in g2.components]
    if len(comps1) != len(comps2):
        return False
    if sorted(map(len, comps1)) != sorted(map(len, comps2)):
        return False

    def compatible(e1: GaussEntry, e2: GaussEntry, bij: dict[int, int], rev: dict[int, int]) -> bool:
        if e1.passing != e2.passing or e1.sign != e2.sign:
            return False
        if e1.label in bij:
            return bij[e1.label] == e2.label
        if e2.label in rev:
            return False
        return True

    def match(k: int, used: list[bool], bij: dict[int, int], rev: dict[int, int]) -> bool:
        if k == len(comps1):
            return True
        c1 = comps1[k]
        for t2, c2 in enumerate(comps2):
            if used[t2] or len(c2) != len(c1):
                continue
            rotations = range(len(c2)) if c2 else [0]
            for rot in rotations:
                rotated = c2[rot:] + c2[:rot]
                trial_bij = dict(bij)
                trial_rev = dict(rev)
                okay = True
                for e1, e2 in zip(c1, rotated):
                    if not compatible(e1, e2, trial_bij, trial_rev):
                        okay = False
                        break
                    trial_bij[e1.label] = e2.label
                    trial_rev[e2.label] = e1.label
                if okay:
                    used[t2] = True
                    if match(k + 1, used, trial_bij, trial_rev):
                        return True
                    used[t2] = False
        return False

    return match(0, [False] * len(comps2), {}, {})


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class InvariantReport:
    """Component count, linking matrix, and virtual-parity matrix.

    lk[a][b] (0-based in the tuple, components numbered from 1) is the sum
    of orientation signs of classical crossings where component a+1 passes
    over component b+1; the diagonal is zero by convention.  vparity is the
    symmetric mod-2 count of virtual crossings between distinct components.
    """

    component_count: int
    lk: tuple[tuple[int, ...], ...]
    vparity: tuple[tuple[int, ...], ...]


def invariants(d: MorseDiagram) -> InvariantReport:
    t = trace(d)
    labels = t.component_labels()
    nc = t.component_count()
    lk = [[0] * nc for _ in range(nc)]
    vpar = [[0] * nc for _ in range(nc)]
    for idx, ev in enumerate(d.events):
        if not isinstance(ev, Cross):
            continue
        wa, wb = t.crossing_strands(idx)
        ca, cb = labels[wa.idx], labels[wb.idx]
        if ev.code == "v":
            if ca != cb:
                vpar[ca - 1][cb - 1] ^= 1
                vpar[cb - 1][ca - 1] ^= 1
        elif ev.code in ("x+", "x-"):
            over, under = (ca, cb) if ev.code == "x+" else (cb, ca)
            if over != under:
                lk[over - 1][under - 1] += _gauss_sign(ev.code, wa.flow, wb.flow)
    return InvariantReport(
        nc,
        tuple(tuple(row) for row in lk),
        tuple(tuple(row) for row in vpar),
    )


def crossing_multiset(d: MorseDiagram) -> dict[str, int]:
    """Multiset of crossings by kind and orientation-aware sign.

    Keys: ``classical+``, ``classical-``, ``virtual``, ``flat``.
    """
    t = trace(d)
    out = {"classical+": 0, "classical-": 0, "virtual": 0, "flat": 0}
    for idx, ev in enumerate(d.events):
        if not isinstance(ev, Cross):
            continue
        if ev.code == "v":
            out["virtual"] += 1
        elif ev.code == "f":
            out["flat"] += 1
        else:
            wa, wb = t.crossing_strands(idx)
            s = _gauss_sign(ev.code, wa.flow, wb.flow)
            out["classical+" if s > 0 else "classical-"] += 1
    return out


def rotate_half_turn(d: MorseDiagram) -> MorseDiagram:
    """The diagram rotated by a half turn in the plane.

    Event order reverses, slots mirror, cups and caps exchange roles, and
    every strand's flow flips; the underlying oriented link is unchanged.
    Useful for building fixtures whose crossings all point upward.
    """
    t = trace(d)
    events: list[MorseEvent] = []
    open_flows: list[list[str]] = []
    # recompute the open-slot flow profile before each event
    slots: list[str] = []
    for ev in d.events:
        open_flows.append(list(slots))
        if isinstance(ev, Cup):
            lf, rf = ("up", "down") if ev.up_leg == "L" else ("down", "up")
            slots[ev.pos - 1 : ev.pos - 1] = [lf, rf]
        elif isinstance(ev, Cap):
            del slots[ev.pos - 1 : ev.pos + 1]
        else:
            slots[ev.pos - 1], slots[ev.pos] = slots[ev.pos], slots[ev.pos - 1]
    for idx in range(len(d.events) - 1, -1, -1):
        ev = d.events[idx]
        w_pre = len(open_flows[idx])
        if isinstance(ev, Cup):
            events.append(Cap(w_pre + 2 - ev.pos))
        elif isinstance(ev, Cap):
            right_flow = open_flows[idx][ev.pos]
            # the mirrored left leg is the old right end with flipped flow
            events.append(Cup(w_pre - ev.pos, "L" if right_flow == "down" else "R"))
        else:
            events.append(Cross(w_pre - ev.pos, ev.code))
    return MorseDiagram(d.category, tuple(events))


# ---------------------------------------------------------------------------
# diagram file format


def format_diagram(d: MorseDiagram) -> str:
    lines = [f"category {d.category}"]
    for ev in d.events:
        if isinstance(ev, Cup):
            lines.append(f"cup {ev.up_leg} {ev.pos}")
        elif isinstance(ev, Cap):
            lines.append(f"cap {ev.pos}")
        else:
            lines.append(f"{ev.code} {ev.pos}")
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> MorseDiagram:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("category "):
        raise DiagramError("diagram file must start with a category line")
    category = lines[0][len("category ") :].strip()
    if category not in CATEGORIES:
        raise DiagramError(f"unknown category {category!r}")
    events: list[MorseEvent] = []
    for ln in lines[1:]:
        parts = ln.split()
        try:
            if parts[0] == "cup" and len(parts) == 3 and parts[1] in ("L", "R"):
                events.append(Cup(int(parts[2]), parts[1]))
            elif parts[0] == "cap" and len(parts) == 2:
                events.append(Cap(int(parts[1])))
            elif parts[0] in ("x+", "x-", "v", "f") and len(parts) == 2:
                events.append(Cross(int(parts[1]), parts[0]))
            else:
                raise DiagramError(f"bad diagram line: {ln!r}")
        except ValueError:
            raise DiagramError(f"bad diagram line: {ln!r}") from None
    return MorseDiagram(category, tuple(events))


def closure_component_permutation(w: BraidWord) -> Permutation:
    return permutation_image(w)
