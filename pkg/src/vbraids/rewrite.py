"""
Relation-application engine.

A :class:`RewriteStep` applies one named relator at one position, in one
direction.  A :class:`DerivationScript` is a machine-checkable equality
proof: a start word, a step sequence, and a target word; replaying the steps
must land exactly on the target (after free reduction when the script says
``auto_reduce``).  The trusted kernel is deliberately tiny:``apply_step``
plus ``free_reduce``.

The module also houses the permutation oracle for pure-virtual words (sound
and complete on the subgroup generated by the v letters), the pure-virtual
identities used throughout the reduction proofs, a bounded bidirectional
search for word equivalence, and the certification pipeline that re-derives
every full-presentation relator from the reduced presentation.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from . import _staircase
from .presentations import (
    FULL,
    REDUCED,
    SINGLE_WELDED,
    Presentation,
    PresentationError,
    Relator,
    derived_detour_relations,
    expand_word,
    full_presentation,
    reduced_presentation,
)
from .words import (
    BraidWord,
    GroupKind,
    WordError,
    format_word,
    free_reduce,
    parse_word,
    permutation_image,
    v,
)


class ScriptError(ValueError):
    """Raised when a step cannot be applied or a script file is malformed."""


@dataclass(frozen=True)
class RewriteStep:
    """One positioned relator application.

    ``forward`` means the relator is read left to right (its lhs is matched
    and replaced by its rhs); ``position`` is the 0-based letter offset where
    the matched side begins.
    """

    relator_id: str
    forward: bool
    position: int
    note: str = ""

    @property
    def direction(self) -> str:
        return "L2R" if self.forward else "R2L"


@dataclass(frozen=True)
class DerivationScript:
    name: str
    kind: GroupKind
    n: int
    start: BraidWord
    steps: tuple[RewriteStep, ...]
    target: BraidWord
    auto_reduce: bool = False
    relation_set: tuple[str, ...] = (REDUCED, "derived")


@dataclass(frozen=True)
class StepRecord:
    step: RewriteStep
    word: BraidWord


@dataclass(frozen=True)
class ReplayReport:
    script: str
    ok: bool
    steps_applied: int
    final_word: BraidWord | None
    message: str = ""
    trace: tuple[StepRecord, ...] = ()


def relation_table(
    kind: GroupKind, n: int, sets: tuple[str, ...] = (REDUCED, "derived")
) -> dict[str, Relator]:
    """Resolve named relation sets into an id -> relator map.

    Recognised set names: ``full``, ``reduced``, ``derived``,
    ``reduced-single-welded``.  Sets that do not exist for the kind (for
    example ``reduced`` for B) are skipped.
    """
    table: dict[str, Relator] = {}
    for name in sets:
        if name == FULL:
            table.update(full_presentation(kind, n).relator_map())
        elif name == REDUCED:
            try:
                table.update(reduced_presentation(kind, n).relator_map())
            except PresentationError:
                pass
        elif name == SINGLE_WELDED:
            if kind is GroupKind.WB:
                table.update(reduced_presentation(kind, n, SINGLE_WELDED).relator_map())
        elif name == "derived":
            table.update({r.id: r for r in derived_detour_relations(kind, n)})
        else:
            raise ScriptError(f"unknown relation set {name!r}")
    return table


def apply_step(w: BraidWord, step: RewriteStep, sets: dict[str, Relator]) -> BraidWord:
    """Replace one matched relator side by the other.

    The designated side must match letter-for-letter at ``step.position``;
    a mismatch raises :class:`ScriptError` reporting expected vs found.
    """
    rel = sets.get(step.relator_id)
    if rel is None:
        raise ScriptError(f"unknown relator id {step.relator_id!r}")
    src, dst = (rel.lhs, rel.rhs) if step.forward else (rel.rhs, rel.lhs)
    p = step.position
    if p < 0 or p + len(src.letters) > len(w.letters):
        raise ScriptError(
            f"{step.relator_id} {step.direction} @{p}: out of range in word of length {len(w)}"
        )
    found = w.letters[p : p + len(src.letters)]
    if found != src.letters:
        raise ScriptError(
            f"{step.relator_id} {step.direction} @{p}: expected "
            f"{format_word(src)!r}, found {' '.join(g.token for g in found) or 'e'!r}"
        )
    return w.replace_letters(w.letters[:p] + dst.letters + w.letters[p + len(src.letters) :])


def verify_script(script: DerivationScript, trace: bool = False) -> ReplayReport:
    """Replay every step of a script and compare with its target.

    With ``auto_reduce`` the word is freely reduced after each step and the
    final comparison is up to free reduction; otherwise both are exact.
    """
    table = relation_table(script.kind, script.n, script.relation_set)
    word = script.start
    records: list[StepRecord] = []
    for idx, step in enumerate(script.steps):
        try:
            word = apply_step(word, step, table)
        except ScriptError as exc:
            return ReplayReport(
                script.name, False, idx, word,
                f"step {idx} failed: {exc}", tuple(records),
            )
        if script.auto_reduce:
            word = free_reduce(word)
        if trace:
            records.append(StepRecord(step, word))
    target = free_reduce(script.target) if script.auto_reduce else script.target
    final = free_reduce(word) if script.auto_reduce else word
    if final != target:
        return ReplayReport(
            script.name, False, len(script.steps), final,
            f"final word {format_word(final)!r} != target {format_word(target)!r}",
            tuple(records),
        )
    return ReplayReport(script.name, True, len(script.steps), final, "", tuple(records))


def prove_pure_virtual(w1: BraidWord, w2: BraidWord) -> bool:
    """Decide equality of pure-virtual words by their permutation images.

    The virtual generators present S_n, so this is sound and complete on
    the pure-virtual subgroup.  Raises WordError if a non-virtual letter is
    present or the strand counts differ.
    """
    for w in (w1, w2):
        for g in w.letters:
            if g.family != "v":
                raise WordError(f"non-virtual letter {g.token} in pure-virtual check")
    if w1.n != w2.n:
        raise WordError("pure-virtual check needs equal strand counts")
    return permutation_image(w1) == permutation_image(w2)


# ---------------------------------------------------------------------------
# pure-virtual identities used in the reduction proofs


def dagger_words(i: int, j: int, n: int, kind: GroupKind = GroupKind.S) -> tuple[BraidWord, BraidWord]:
    """The valley/mountain identity on virtual letters, for 1 <= j < i <= n-1:

        v_i v_{i-1}..v_{j+1} v_j v_{j+1}..v_i  =  v_j v_{j+1}..v_i v_{i-1}..v_j
    """
    if not 1 <= j < i <= n - 1:
        raise WordError(f"need 1 <= j < i <= n-1, got i={i}, j={j}, n={n}")
    left = [v(k) for k in range(i, j - 1, -1)] + [v(k) for k in range(j + 1, i + 1)]
    right = [v(k) for k in range(j, i + 1)] + [v(k) for k in range(i - 1, j - 1, -1)]
    return BraidWord(kind, n, tuple(left)), BraidWord(kind, n, tuple(right))


def ddagger_words(i: int, n: int, kind: GroupKind = GroupKind.S) -> tuple[BraidWord, BraidWord]:
    """The block-reshuffling identity, for 2 <= i <= n-3:

        (v4 v3 v2 v1)..(v_{i+2} v_{i+1} v_i v_{i-1})
            = (v4..v_{i+2}) (v3..v_{i+1}) (v2..v_i) (v1..v_{i-1})
    """
    if not 2 <= i <= n - 3:
        raise WordError(f"need 2 <= i <= n-3, got i={i}, n={n}")
    left = []
    for k in range(1, i):
        left += [v(t) for t in range(k + 3, k - 1, -1)]
    right = (
        [v(t) for t in range(4, i + 3)]
        + [v(t) for t in range(3, i + 2)]
        + [v(t) for t in range(2, i + 1)]
        + [v(t) for t in range(1, i)]
    )
    return BraidWord(kind, n, tuple(left)), BraidWord(kind, n, tuple(right))


def dagger_instances(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(2, n) for j in range(1, i)]


def ddagger_instances(n: int) -> list[int]:
    return list(range(2, n - 2))


def compile_pure_virtual_rewrite(
    w1: BraidWord, w2: BraidWord, name: str = "pure-virtual-rewrite"
) -> DerivationScript:
    """An explicit elementary derivation between equal pure-virtual words.

    This is the helper that compiles invocations of the valley/mountain and
    block-reshuffling identities (or any other true pure-virtual equality)
    down to sequences of virt-inv / virt-braid / virt-comm steps, so the
    replayer only ever applies presentation relators.
    """
    if not prove_pure_virtual(w1, w2):
        raise WordError("words are not equal in S_n")
    moves = _staircase.derive(
        [g.index for g in w1.letters], [g.index for g in w2.letters], w1.n
    )
    steps = tuple(RewriteStep(rid, fwd, pos) for rid, fwd, pos in moves)
    # the virtual relators live in the full presentation of every kind with v's
    return DerivationScript(name, w1.kind, w1.n, w1, steps, w2, relation_set=(FULL,))


# ---------------------------------------------------------------------------
# bounded equivalence search


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 2_000_000
    max_len_slack: int = 8


@dataclass(frozen=True)
class SearchStats:
    states_expanded: int
    max_frontier: int
    elapsed: float


@dataclass(frozen=True)
class EquivalenceResult:
    status: str  # "equivalent" | "distinct" | "unknown"
    witness: DerivationScript | None
    stats: SearchStats

    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


def _expansions(word: BraidWord, relators: list[Relator], max_len: int):
    """All single-step successors of a freely reduced word, in fixed order."""
    for rel in relators:
        for forward in (True, False):
            src, dst = (rel.lhs, rel.rhs) if forward else (rel.rhs, rel.lhs)
            if len(word.letters) - len(src.letters) + len(dst.letters) > max_len:
                continue
            s = src.letters
            for p in range(len(word.letters) - len(s) + 1):
                if word.letters[p : p + len(s)] == s:
                    nxt = word.replace_letters(
                        word.letters[:p] + dst.letters + word.letters[p + len(s) :]
                    )
                    yield RewriteStep(rel.id, forward, p), nxt


def bounded_equivalence(
    w1: BraidWord,
    w2: BraidWord,
    relators: Presentation | list[Relator] | dict[str, Relator],
    budget: SearchBudget | None = None,
) -> EquivalenceResult:
    """Bidirectional breadth-first search for a derivation from w1 to w2.

    States are freely reduced words; every relator applies in both
    directions at every matching position.  Returns ``equivalent`` with a
    replayable witness script when the frontiers meet, ``distinct`` when the
    permutation images differ (a certificate of inequality), and ``unknown``
    on budget exhaustion.  Fully deterministic: relators expand in id order,
    then direction, then position, and the witness returned is the first
    meeting found scanning layers in that order (minimal step count).
    """
    if w1.kind is not w2.kind or w1.n != w2.n:
        raise WordError("bounded_equivalence needs words of the same kind and n")
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    if isinstance(relators, Presentation):
        rel_list = list(relators.relators)
    elif isinstance(relators, dict):
        rel_list = list(relators.values())
    else:
        rel_list = list(relators)
    rel_list.sort(key=lambda r: r.id)
    table = {r.id: r for r in rel_list}

    a = free_reduce(w1)
    b = free_reduce(w2)
    stats = lambda expanded, frontier: SearchStats(  # noqa: E731
        expanded, frontier, time.perf_counter() - t0
    )
    if permutation_image(a) != permutation_image(b):
        return EquivalenceResult(EquivalenceResult.DISTINCT, None, stats(0, 0))

    def make_witness(fwd_steps: list[RewriteStep], bwd_steps: list[RewriteStep]) -> DerivationScript:
        steps = tuple(fwd_steps) + tuple(
            RewriteStep(s.relator_id, not s.forward, s.position) for s in reversed(bwd_steps)
        )
        return DerivationScript(
            "bounded-equivalence-witness", w1.kind, w1.n, a, steps, b,
            auto_reduce=True, relation_set=(FULL, REDUCED, "derived"),
        )

    max_len = max(len(a), len(b)) + budget.max_len_slack
    # parents map a word to (parent word, step from parent); roots map to None
    sides: list[dict[tuple, tuple | None]] = [{a.letters: None}, {b.letters: None}]
    frontiers: list[list[BraidWord]] = [[a], [b]]
    words_by_key: list[dict[tuple, BraidWord]] = [{a.letters: a}, {b.letters: b}]

    def path_from(side: int, key: tuple) -> list[RewriteStep]:
        steps: list[RewriteStep] = []
        while sides[side][key] is not None:
            parent_key, step = sides[side][key]
            steps.append(step)
            key = parent_key
        steps.reverse()
        return steps

    if a.letters == b.letters:
        return EquivalenceResult(
            EquivalenceResult.EQUIVALENT, make_witness([], []), stats(0, 1)
        )

    expanded = 0
    max_frontier = 2
    while frontiers[0] and frontiers[1]:
        # expand the smaller frontier; ties go to the w1 side
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        other = 1 - side
        new_frontier: list[BraidWord] = []
        for word in frontiers[side]:
            expanded += 1
            if expanded > budget.max_states:
                return EquivalenceResult(
                    EquivalenceResult.UNKNOWN, None, stats(expanded, max_frontier)
                )
            for step, nxt_pre in _expansions(word, rel_list, max_len):
                nxt = free_reduce(nxt_pre)
                key = nxt.letters
                if key in sides[side]:
                    continue
                if side == 1:
                    # backward edges must replay in reverse for the witness;
                    # only keep the edge if the inverted step verifies
                    inv = RewriteStep(step.relator_id, not step.forward, step.position)
                    try:
                        back = free_reduce(apply_step(nxt, inv, table))
                    except ScriptError:
                        continue
                    if back.letters != word.letters:
                        continue
                sides[side][key] = (word.letters, step)
                words_by_key[side][key] = nxt
                if key in sides[other]:
                    fwd_key, bwd_key = (key, key) if side == 0 else (key, key)
                    fwd = path_from(0, fwd_key)
                    bwd = path_from(1, bwd_key)
                    return EquivalenceResult(
                        EquivalenceResult.EQUIVALENT,
                        make_witness(fwd, bwd),
                        stats(expanded, max_frontier),
                    )
                new_frontier.append(nxt)
        frontiers[side] = new_frontier
        max_frontier = max(max_frontier, len(new_frontier))
    return EquivalenceResult(EquivalenceResult.UNKNOWN, None, stats(expanded, max_frontier))


# ---------------------------------------------------------------------------
# certification of the reduced presentations


@dataclass(frozen=True)
class CertifiedRelator:
    relator_id: str
    mechanism: str  # "free-reduction" | "pure-virtual" | "script:<name>" |
    #                 "bounded-equivalence" | "UNCERTIFIED"
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.mechanism != "UNCERTIFIED"


@dataclass(frozen=True)
class CertificationReport:
    kind: GroupKind
    n: int
    entries: tuple[CertifiedRelator, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(e.certified for e in self.entries)

    @property
    def uncertified(self) -> tuple[str, ...]:
        return tuple(e.relator_id for e in self.entries if not e.certified)


def certify_reduction(
    kind: GroupKind, n: int, budget: SearchBudget | None = None
) -> CertificationReport:
    """Re-derive every full-presentation relator from the reduced one.

    Both sides of each relator are expanded over the reduced generators and
    their equality is established by, in order: free reduction, the
    pure-virtual permutation oracle, a built-in derivation script, and the
    bounded search as a fallback.  Nothing is silently passed: a relator
    certified by no mechanism is reported UNCERTIFIED.
    """
    from . import scripts  # deferred: scripts imports this module

    full = full_presentation(kind, n)
    entries: list[CertifiedRelator] = []
    for rel in full.relators:
        lhs = expand_word(rel.lhs)
        rhs = expand_word(rel.rhs)
        if lhs == rhs:
            entries.append(CertifiedRelator(rel.id, "free-reduction"))
            continue
        if all(g.family == "v" for g in lhs.letters + rhs.letters):
            if prove_pure_virtual(lhs, rhs):
                entries.append(CertifiedRelator(rel.id, "pure-virtual"))
            else:  # pragma: no cover - relators are permutation-checked
                entries.append(CertifiedRelator(rel.id, "UNCERTIFIED", "perm mismatch"))
            continue
        script = scripts.certification_script(kind, n, rel.id)
        if script is not None:
            report = verify_script(script)
            if report.ok and script.start == lhs and script.target == rhs:
                entries.append(CertifiedRelator(rel.id, f"script:{script.name}"))
                continue
            entries.append(
                CertifiedRelator(
                    rel.id, "UNCERTIFIED", f"script {script.name} failed: {report.message}"
                )
            )
            continue
        table = relation_table(kind, n, (REDUCED, "derived"))
        result = bounded_equivalence(lhs, rhs, table, budget)
        if result.status == EquivalenceResult.EQUIVALENT:
            entries.append(CertifiedRelator(rel.id, "bounded-equivalence"))
        else:
            entries.append(CertifiedRelator(rel.id, "UNCERTIFIED", f"search: {result.status}"))
    return CertificationReport(kind, n, tuple(entries))


# ---------------------------------------------------------------------------
# script file format


_HEADER_RE = re.compile(
    r"^script\s+(?P<name>\S+)\s+kind=(?P<kind>\w+)\s+n=(?P<n>\d+)\s+autoreduce=(?P<ar>[01])$"
)
_STEP_RE = re.compile(r"^step:\s+(?P<rid>\S+)\s+(?P<dir>L2R|R2L)\s+@(?P<pos>\d+)$")


def format_script(s: DerivationScript) -> str:
    lines = [
        f"script {s.name} kind={s.kind.value} n={s.n} autoreduce={int(s.auto_reduce)}",
        f"start: {format_word(s.start)}",
    ]
    for st in s.steps:
        lines.append(f"step: {st.relator_id} {st.direction} @{st.position}")
    lines.append(f"target: {format_word(s.target)}")
    return "\n".join(lines) + "\n"


def parse_script(text: str) -> DerivationScript:
    """Parse the line-oriented script format (blank and # lines ignored)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ScriptError("empty script file")
    m = _HEADER_RE.match(lines[0])
    if m is None:
        raise ScriptError(f"bad script header: {lines[0]!r}")
    kind = GroupKind.parse(m.group("kind"))
    n = int(m.group("n"))
    auto = m.group("ar") == "1"
    start: BraidWord | None = None
    target: BraidWord | None = None
    steps: list[RewriteStep] = []
    for ln in lines[1:]:
        if ln.startswith("start:"):
            start = parse_word(ln[len("start:") :].strip(), kind, n)
        elif ln.startswith("target:"):
            target = parse_word(ln[len("target:") :].strip(), kind, n)
        else:
            sm = _STEP_RE.match(ln)
            if sm is None:
                raise ScriptError(f"bad script line: {ln!r}")
            steps.append(
                RewriteStep(sm.group("rid"), sm.group("dir") == "L2R", int(sm.group("pos")))
            )
    if start is None or target is None:
        raise ScriptError("script file is missing start: or target:")
    return DerivationScript(
        m.group("name"), kind, n, start, tuple(steps), target,
        auto_reduce=auto, relation_set=(FULL, REDUCED, "derived"),
    )
