"""
The homomorphism lattice between the seven groups.

The arrow catalog is the ten edges of the commutative diagram relating the
braid-like groups: quotient arrows keep every generator, flattening arrows
send braiding generators (and their inverses) to the involutive flat
generator, and everything eventually maps onto the symmetric group, where a
word's image is computed exactly as a permutation.

    B -> VB -> WB -> UB        B -> S
         VB -> FV              FV -> S
         WB -> FU              FU -> S
         UB -> FU
         FV -> FU

``check_well_defined`` certifies an arrow by mapping every relator of the
source's full presentation and establishing the equality in the target by a
chain of sound mechanisms; a relator no mechanism certifies is reported
UNCERTIFIED (the checker certifies, never refutes, except for the exact
permutation decision when the target is S).
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import full_presentation
from .rewrite import (
    EquivalenceResult,
    SearchBudget,
    bounded_equivalence,
    prove_pure_virtual,
)
from .words import (
    BraidWord,
    Generator,
    GroupKind,
    Permutation,
    WordError,
    free_reduce,
    permutation_image,
)


class MapError(ValueError):
    """Raised for unknown arrows or mismatched words."""


@dataclass(frozen=True)
class GroupArrow:
    source: GroupKind
    target: GroupKind

    @property
    def name(self) -> str:
        return f"{self.source.value}->{self.target.value}"


ARROWS: tuple[GroupArrow, ...] = tuple(
    GroupArrow(GroupKind(s), GroupKind(t))
    for s, t in (
        ("B", "VB"),
        ("B", "S"),
        ("VB", "WB"),
        ("VB", "FV"),
        ("WB", "UB"),
        ("WB", "FU"),
        ("UB", "FU"),
        ("FV", "FU"),
        ("FV", "S"),
        ("FU", "S"),
    )
)


def arrow(source: GroupKind, target: GroupKind) -> GroupArrow:
    for a in ARROWS:
        if a.source is source and a.target is target:
            return a
    raise MapError(f"{source.value}->{target.value} is not an arrow of the lattice")


def _map_letter(g: Generator, target: GroupKind) -> Generator:
    if target in (GroupKind.FV, GroupKind.FU) and g.family == "s":
        # the flat quotient sets the squares of braiding generators to 1,
        # so sigma and its inverse agree there
        return Generator("c", g.index)
    return g


def map_word(w: BraidWord, a: GroupArrow) -> BraidWord | Permutation:
    """Apply an arrow letterwise; the S-target returns a Permutation.

    The map to S takes the same value on virtual and braiding generators:
    every index-i letter goes to the transposition (i, i+1).
    """
    if w.kind is not a.source:
        raise MapError(f"word of kind {w.kind.value} fed to arrow {a.name}")
    if a.target is GroupKind.S:
        return permutation_image(w)
    return BraidWord(a.target, w.n, tuple(_map_letter(g, a.target) for g in w.letters))


def compose_path(w: BraidWord, path: list[GroupArrow]) -> BraidWord | Permutation:
    """Apply a chain of arrows; the empty path is the identity."""
    out: BraidWord | Permutation = w
    for a in path:
        if isinstance(out, Permutation):
            raise MapError("path continues past the symmetric group")
        out = map_word(out, a)
    return out


def find_path(source: GroupKind, target: GroupKind) -> list[GroupArrow]:
    """A deterministic arrow path from source to target (BFS, sorted edges).

    All paths between the same endpoints induce the same letterwise map, so
    the choice only fixes the reported route.
    """
    if source is target:
        return []
    frontier = [(source, [])]
    seen = {source}
    while frontier:
        nxt = []
        for kind, path in frontier:
            for a in ARROWS:
                if a.source is kind and a.target not in seen:
                    new_path = path + [a]
                    if a.target is target:
                        return new_path
                    seen.add(a.target)
                    nxt.append((a.target, new_path))
        frontier = nxt
    raise MapError(f"no path {source.value}->{target.value} in the lattice")


def all_paths(source: GroupKind, target: GroupKind) -> list[list[GroupArrow]]:
    """Every simple arrow path between two kinds."""
    out: list[list[GroupArrow]] = []

    def grow(kind: GroupKind, path: list[GroupArrow]) -> None:
        if kind is target:
            out.append(list(path))
            return
        for a in ARROWS:
            if a.source is kind:
                path.append(a)
                grow(a.target, path)
                path.pop()

    grow(source, [])
    return out


@dataclass(frozen=True)
class ArrowCheckEntry:
    relator_id: str
    mechanism: str
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.mechanism != "UNCERTIFIED"


@dataclass(frozen=True)
class ArrowCheckReport:
    arrow: GroupArrow
    n: int
    entries: tuple[ArrowCheckEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.certified for e in self.entries)

    @property
    def uncertified(self) -> tuple[str, ...]:
        return tuple(e.relator_id for e in self.entries if not e.certified)


def _reversed_word(w: BraidWord) -> BraidWord:
    """The letterwise-inverted reversal; reversal is an anti-automorphism."""
    return w.replace_letters(g.inverted() for g in reversed(w.letters))


def check_well_defined(
    a: GroupArrow, n: int, budget: SearchBudget | None = None
) -> ArrowCheckReport:
    """Certify that mapping every source relator yields a target equality.

    Mechanisms, in order: exact permutation decision (target S); syntactic
    equality after free reduction; membership in the target's relator set
    (directly, with sides swapped, or reversed, reversal being a sound
    anti-automorphism); the pure-virtual permutation oracle; bounded search
    over the target's full presentation.
    """
    source_p = full_presentation(a.source, n)
    entries: list[ArrowCheckEntry] = []
    if a.target is GroupKind.S:
        for rel in source_p.relators:
            ok = permutation_image(rel.lhs) == permutation_image(rel.rhs)
            entries.append(
                ArrowCheckEntry(rel.id, "exact-permutation" if ok else "UNCERTIFIED")
            )
        return ArrowCheckReport(a, n, tuple(entries))

    target_p = full_presentation(a.target, n)
    target_pairs = {(r.lhs.letters, r.rhs.letters) for r in target_p.relators}
    target_pairs |= {(r.rhs.letters, r.lhs.letters) for r in target_p.relators}

    for rel in source_p.relators:
        lhs = free_reduce(map_word(rel.lhs, a))
        rhs = free_reduce(map_word(rel.rhs, a))
        if lhs == rhs:
            entries.append(ArrowCheckEntry(rel.id, "free-reduction"))
            continue
        if (lhs.letters, rhs.letters) in target_pairs:
            entries.append(ArrowCheckEntry(rel.id, "relator-membership"))
            continue
        if (_reversed_word(lhs).letters, _reversed_word(rhs).letters) in target_pairs:
            entries.append(ArrowCheckEntry(rel.id, "reversed-relator-membership"))
            continue
        if all(g.family == "v" for g in lhs.letters + rhs.letters):
            if prove_pure_virtual(lhs, rhs):
                entries.append(ArrowCheckEntry(rel.id, "pure-virtual"))
                continue
        result = bounded_equivalence(lhs, rhs, target_p, budget)
        if result.status == EquivalenceResult.EQUIVALENT:
            entries.append(ArrowCheckEntry(rel.id, "bounded-equivalence"))
        else:
            entries.append(
                ArrowCheckEntry(rel.id, "UNCERTIFIED", f"search: {result.status}")
            )
    return ArrowCheckReport(a, n, tuple(entries))


def check_hypothetical_arrow(
    source: GroupKind, target: GroupKind, n: int, budget: SearchBudget | None = None
) -> ArrowCheckReport:
    """Run the certification pipeline for an arrow outside the catalog.

    Useful as a negative control: absence of certification is not a
    disproof, but a genuinely ill-defined assignment (such as the reverse
    of a quotient arrow) will come back UNCERTIFIED within budget.
    """
    return check_well_defined(GroupArrow(source, target), n, budget)
