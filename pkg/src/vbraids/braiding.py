"""
The general braiding algorithm: turn any closed diagram into a braid whose
closure is isotopic to it.

Two stages.  ``rotate_crossings`` replaces every crossing with an upward
strand by a small equivalent block (cups, caps and one same-crossing) so that
afterwards every strand points downward through every crossing; a single pass
reaches the fixed point.  ``braid_up_arcs`` then eliminates the upward arcs
one at a time, in left-to-right order of their cut points (ties broken top
to bottom): each runs crossing-free from a cap up to a cup and is cut just
above its cap; the upper piece is pulled straight up to the top boundary and
the lower piece straight down, each travelling vertically in the corridor of
its own column and dodging whatever is in the way with virtual crossings
(uniformly over, or under, classical ones in the classical category).

Pulling vertically rather than out to a side margin is what makes every pull
an isotopy of the closure: the two pieces together with the old arc body
form a full-height monotone curve, so its signed crossings with any closed
component cancel and all linking data survive.  Dodges at cups and caps
always cross the downward leg, never another arc's body, so the remaining
up-arcs stay free.  Braiding the standard closure of a braid word returns
that word unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import (
    CATEGORY_KIND,
    Cap,
    Cross,
    Cup,
    DiagramError,
    MorseDiagram,
    MorseEvent,
    trace,
)
from .words import BraidWord, Generator, GroupKind


@dataclass(frozen=True)
class BraidingResult:
    """A braid word plus its strand count (0 for the empty diagram)."""

    word: BraidWord
    strands: int


def rotate_crossings(d: MorseDiagram) -> MorseDiagram:
    """Rotate crossings so both incident strands point downward.

    A crossing with one upward strand becomes a quarter-turn block (one cup,
    the crossing, one cap); with both upward a half-turn block (two cups,
    the crossing, two caps).  The multiset of crossings by kind and
    orientation-aware sign is unchanged, and the output is idempotent under
    this map.
    """
    trace(d)  # validate
    events: list[MorseEvent] = []
    flows: list[str] = []
    for ev in d.events:
        if isinstance(ev, Cup):
            lf, rf = ("up", "down") if ev.up_leg == "L" else ("down", "up")
            flows[ev.pos - 1 : ev.pos - 1] = [lf, rf]
            events.append(ev)
        elif isinstance(ev, Cap):
            del flows[ev.pos - 1 : ev.pos + 1]
            events.append(ev)
        else:
            p = ev.pos
            fa, fb = flows[p - 1], flows[p]  # NW-SE strand, NE-SW strand
            flows[p - 1], flows[p] = fb, fa
            flipped = {"x+": "x-", "x-": "x+"}.get(ev.code, ev.code)
            if (fa, fb) == ("down", "down"):
                events.append(ev)
            elif (fa, fb) == ("up", "down"):
                # quarter turn: the NW-SE strand turns over a max on the
                # right, crosses downward, and feeds the old top-left end
                events.extend([Cup(p + 2, "R"), Cross(p + 1, flipped), Cap(p)])
            elif (fa, fb) == ("down", "up"):
                events.extend([Cup(p, "L"), Cross(p + 1, flipped), Cap(p + 2)])
            else:
                # half turn: both strands turn over maxima, cross downward,
                # and feed the old top ends; risers exit at the bottom
                events.extend(
                    [Cup(p + 2, "R"), Cup(p + 3, "R"), Cross(p + 2, ev.code), Cap(p + 1), Cap(p)]
                )
    return MorseDiagram(d.category, tuple(events))


class _Tangle:
    """An open tangle: ``top`` boundary strands (all downward) plus events."""

    def __init__(self, top: int, events: list[MorseEvent]):
        self.top = top
        self.events = events

    def flow_profiles(self) -> list[list[str]]:
        """The open-slot flow list before every event."""
        flows = ["down"] * self.top
        out = []
        for ev in self.events:
            out.append(list(flows))
            if isinstance(ev, Cup):
                lf, rf = ("up", "down") if ev.up_leg == "L" else ("down", "up")
                flows[ev.pos - 1 : ev.pos - 1] = [lf, rf]
            elif isinstance(ev, Cap):
                del flows[ev.pos - 1 : ev.pos + 1]
            else:
                flows[ev.pos - 1], flows[ev.pos] = flows[ev.pos], flows[ev.pos - 1]
        return out


@dataclass
class _Arc:
    cup_idx: int
    cup_pos: int
    up_leg: str
    cap_idx: int = -1
    cap_pos: int = -1
    cut_slot: int = -1


def _find_up_arcs(t: _Tangle) -> list[_Arc]:
    """The free upward arcs of a tangle whose crossings all point down."""
    arcs: list[_Arc] = []
    slots: list[int | None] = [None] * t.top  # arc id for upward slots
    for idx, ev in enumerate(t.events):
        if isinstance(ev, Cup):
            aid = len(arcs)
            arcs.append(_Arc(idx, ev.pos, ev.up_leg))
            lf, rf = (aid, None) if ev.up_leg == "L" else (None, aid)
            slots[ev.pos - 1 : ev.pos - 1] = [lf, rf]
        elif isinstance(ev, Cap):
            a, b = slots[ev.pos - 1], slots[ev.pos]
            aid = a if a is not None else b
            if aid is None or (a is not None and b is not None):
                raise DiagramError(f"event {idx}: cap does not join one up and one down end")
            arcs[aid].cap_idx = idx
            arcs[aid].cap_pos = ev.pos
            arcs[aid].cut_slot = ev.pos if a is not None else ev.pos + 1
            del slots[ev.pos - 1 : ev.pos + 1]
        else:
            if slots[ev.pos - 1] is not None or slots[ev.pos] is not None:
                raise DiagramError(
                    f"event {idx}: crossing on an upward strand; run rotate_crossings first"
                )
    return [a for a in arcs if a.cap_idx >= 0]


def _pull_arc(t: _Tangle, arc: _Arc, category: str, under: bool) -> _Tangle:
    """Cut one free up-arc and pull its halves vertically to the boundaries."""
    events = t.events
    uc, cc = arc.cup_idx, arc.cap_idx
    flows = t.flow_profiles()

    def wire_cross(pos: int, wire_left: bool) -> Cross:
        # the wire is the NW-SE entrant when it sits on the left; x+ puts
        # the NW-SE entrant on top, so over-routing uses x+ exactly then
        if category != "classical":
            return Cross(pos, "v")
        code = "x+" if (not under) == wire_left else "x-"
        return Cross(pos, code)

    # --- upward walk: the wire's gap before each event above the cup -------
    # gap g means the wire sits between old slots g and g+1
    gaps = [0] * (uc + 1)
    gaps[uc] = arc.cup_pos - 1
    g = gaps[uc]
    for i in range(uc - 1, -1, -1):
        ev = events[i]
        q = ev.pos
        if isinstance(ev, Cup):
            if g == q:
                g = q - 1  # dodge across the downward leg
            elif g >= q + 1:
                g -= 2
        elif isinstance(ev, Cap):
            if g >= q:
                g += 2
        # crossings with g == q dodge in place; others leave g unchanged
        gaps[i] = g

    out: list[MorseEvent] = []

    # --- the top horizontal: enter as the new rightmost strand and cross
    # the existing boundary wires leftward to reach the corridor ------------
    for c in range(t.top, gaps[0], -1):
        out.append(wire_cross(c, wire_left=False))

    # --- events above the cup, with the wire slot woven in -----------------
    for i in range(uc):
        ev = events[i]
        q = ev.pos
        g_pre, g_post = gaps[i], gaps[i + 1]
        if isinstance(ev, Cup):
            if g_post == q:  # dodge into the cup region
                if ev.up_leg == "R":  # downward leg on the left
                    out.append(Cup(q + 1, ev.up_leg))
                    out.append(wire_cross(q, wire_left=True))
                else:
                    out.append(Cup(q, ev.up_leg))
                    out.append(wire_cross(q + 1, wire_left=False))
            else:
                out.append(Cup(q if g_post >= q + 1 else q + 1, ev.up_leg))
        elif isinstance(ev, Cap):
            out.append(Cap(q if q + 1 <= g_pre else q + 1))
        else:
            if g_pre == q:  # dodge around the crossing point
                out.append(wire_cross(q, wire_left=False))
                out.append(Cross(q + 1, ev.code))
                out.append(wire_cross(q, wire_left=True))
            else:
                out.append(Cross(q if q + 1 <= g_pre else q + 1, ev.code))

    # --- between cup and cap: drop the cup, erase the arc's body slot ------
    body = arc.cup_pos if arc.up_leg == "L" else arc.cup_pos + 1
    for i in range(uc + 1, cc):
        ev = events[i]
        q = ev.pos
        if isinstance(ev, Cup):
            out.append(Cup(q if q <= body else q - 1, ev.up_leg))
            if q <= body:
                body += 2
        elif isinstance(ev, Cap):
            out.append(Cap(q if q + 1 < body else q - 1))
            if q + 1 < body:
                body -= 2
        else:
            out.append(Cross(q if q + 1 < body else q - 1, ev.code))

    # --- below the cap: the freed end continues as the lower wire ----------
    g = arc.cap_pos - 1  # gap where the cap's pair was removed
    for i in range(cc + 1, len(events)):
        ev = events[i]
        q = ev.pos
        if isinstance(ev, Cup):
            out.append(Cup(q if q <= g else q + 1, ev.up_leg))
            if q <= g:
                g += 2
        elif isinstance(ev, Cap):
            if g == q:  # wire inside the closing cap: cross the down leg
                if flows[i][q - 1] == "down":
                    out.append(wire_cross(q, wire_left=False))
                    out.append(Cap(q + 1))
                else:
                    out.append(wire_cross(q + 1, wire_left=True))
                    out.append(Cap(q))
                g = q - 1
            elif q + 1 <= g:
                out.append(Cap(q))
                g -= 2
            else:
                out.append(Cap(q + 1))
        else:
            if g == q:  # dodge around the crossing point
                out.append(wire_cross(q, wire_left=False))
                out.append(Cross(q + 1, ev.code))
                out.append(wire_cross(q, wire_left=True))
            else:
                out.append(Cross(q if q + 1 <= g else q + 1, ev.code))

    # --- the bottom horizontal: cross the remaining boundary wires
    # rightward so the pair exits aligned as the rightmost strand -----------
    for c in range(g + 1, t.top + 1):
        out.append(wire_cross(c, wire_left=True))
    return _Tangle(t.top + 1, out)


def braid_up_arcs(d: MorseDiagram, under: bool = False) -> BraidingResult:
    """Cut every free upward arc and read off the braid word.

    Precondition: every crossing points downward (rotate_crossings output).
    Arcs are pulled one at a time in left-to-right order of their cut slots,
    ties top-to-bottom; each pull adds one braid strand.
    """
    kind = CATEGORY_KIND[d.category]
    tangle = _Tangle(0, list(d.events))
    strands = 0
    while True:
        arcs = _find_up_arcs(tangle)
        if not arcs:
            break
        arc = min(arcs, key=lambda a: (a.cut_slot, a.cap_idx))
        tangle = _pull_arc(tangle, arc, d.category, under)
        strands += 1
    letters = []
    code_letter = {"x+": ("s", False), "x-": ("s", True), "v": ("v", False), "f": ("c", False)}
    for ev in tangle.events:
        assert isinstance(ev, Cross)
        fam, inv = code_letter[ev.code]
        letters.append(Generator(fam, ev.pos, inv))
    word = BraidWord(kind, max(strands, 1), tuple(letters))
    return BraidingResult(word, strands)


def to_braid(d: MorseDiagram, category: str | None = None, under: bool = False) -> BraidingResult:
    """Braid a diagram: rotate all crossings downward, then cut the up-arcs.

    ``category`` defaults to the diagram's own; passing one re-checks that
    the diagram's crossings are admissible in it.  ``under`` selects
    under-routing for the classical category (over is the default).
    """
    if category is not None and category != d.category:
        d = MorseDiagram(category, d.events)  # re-validated below
    trace(d)
    return braid_up_arcs(rotate_crossings(d), under=under)


def kind_for_category(category: str) -> GroupKind:
    return CATEGORY_KIND[category]
