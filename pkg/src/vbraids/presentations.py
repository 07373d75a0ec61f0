"""
Presentations of the braid-like groups: full defining relation sets, the
reduced presentations on a single braiding (or flat) generator, the reduced
welded presentation on a single welded generator, and the expansion maps
rewriting every sigma_t (resp. c_t, v_t) in terms of the first one.

Relator ids are stable strings such as ``braid(2)``, ``virt-comm(1,3)``,
``special-detour(1)`` or ``F1(2)``; derivation scripts reference relators by
these ids, so they must not change between versions.

All values are immutable; constructors are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import (
    BraidWord,
    Generator,
    GroupKind,
    WordError,
    c,
    format_word,
    free_reduce,
    permutation_image,
    sigma,
    v,
)

FULL = "full"
REDUCED = "reduced"
SINGLE_WELDED = "reduced-single-welded"

#: Kinds whose reduced presentation uses c1 as the braiding-like generator.
FLAT_KINDS = frozenset({GroupKind.FV, GroupKind.FU})

#: The provenance note for the single-welded-generator expansion; the paper's
#: display of this expansion has an inconsistent first factor, and the form
#: used here is the one forced by the inductive relation
#: v_{i+1} = s_i^-1 s_{i+1}^-1 v_i s_{i+1} s_i.
WELDED_EXPANSION_NOTE = (
    "note: the single-welded expansion of v_t uses the form "
    "(s_{t-1}^-1...s_1^-1)(s_t^-1...s_2^-1) v1 (s_2...s_t)(s_1...s_{t-1}), "
    "the unique one consistent with the inductive relation "
    "v_{i+1} = s_i^-1 s_{i+1}^-1 v_i s_{i+1} s_i."
)


class PresentationError(ValueError):
    """Raised for unsupported (kind, n, flavor) requests."""


@dataclass(frozen=True)
class Relator:
    """A defining equality lhs = rhs between words of one (kind, n).

    Every relator of every presentation here is permutation-compatible:
    both sides have the same image in S_n.  This is checked at construction
    as a cheap guard against transcription slips.
    """

    id: str
    lhs: BraidWord
    rhs: BraidWord

    def __post_init__(self) -> None:
        if self.lhs.kind is not self.rhs.kind or self.lhs.n != self.rhs.n:
            raise PresentationError(f"relator {self.id}: mismatched sides")
        if permutation_image(self.lhs) != permutation_image(self.rhs):
            raise PresentationError(
                f"relator {self.id}: sides have different permutation images"
            )


@dataclass(frozen=True)
class Presentation:
    kind: GroupKind
    n: int
    generators: tuple[Generator, ...]
    relators: tuple[Relator, ...]
    flavor: str

    def relator_map(self) -> dict[str, Relator]:
        return {r.id: r for r in self.relators}


@dataclass(frozen=True)
class CheckReport:
    """Result of a relator sanity check; violators lists failing relator ids."""

    passed: bool
    violations: tuple[str, ...]


def _asc(fam: str, a: int, b: int) -> list[Generator]:
    """Letters fam_a fam_{a+1} ... fam_b (empty when a > b)."""
    return [Generator(fam, i) for i in range(a, b + 1)]


def _desc(fam: str, b: int, a: int) -> list[Generator]:
    """Letters fam_b fam_{b-1} ... fam_a (empty when b < a)."""
    return [Generator(fam, i) for i in range(b, a - 1, -1)]


def _word(kind: GroupKind, n: int, letters: list[Generator]) -> BraidWord:
    return BraidWord(kind, n, tuple(letters))


def _braid_family(
    kind: GroupKind, n: int, fam: str, braid_id: str, comm_id: str
) -> list[Relator]:
    """x_i x_{i+1} x_i = x_{i+1} x_i x_{i+1} plus far commutations, x = fam."""
    out = []
    for i in range(1, n - 1):
        out.append(
            Relator(
                braid_id.format(i),
                _word(kind, n, [Generator(fam, i), Generator(fam, i + 1), Generator(fam, i)]),
                _word(kind, n, [Generator(fam, i + 1), Generator(fam, i), Generator(fam, i + 1)]),
            )
        )
    for i in range(1, n - 1):
        for j in range(i + 2, n):
            out.append(
                Relator(
                    comm_id.format(i, j),
                    _word(kind, n, [Generator(fam, i), Generator(fam, j)]),
                    _word(kind, n, [Generator(fam, j), Generator(fam, i)]),
                )
            )
    return out


def _involution_family(kind: GroupKind, n: int, fam: str, id_fmt: str) -> list[Relator]:
    return [
        Relator(
            id_fmt.format(i),
            _word(kind, n, [Generator(fam, i), Generator(fam, i)]),
            _word(kind, n, []),
        )
        for i in range(1, n)
    ]


def _mixed_comm_family(kind: GroupKind, n: int, fam: str, prefix: str) -> list[Relator]:
    """fam_i v_j = v_j fam_i for |i - j| >= 2 (both orders of i, j)."""
    out = []
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) < 2:
                continue
            out.append(
                Relator(
                    f"{prefix}({i},{j})",
                    _word(kind, n, [Generator(fam, i), v(j)]),
                    _word(kind, n, [v(j), Generator(fam, i)]),
                )
            )
    return out


def _special_detour_family(kind: GroupKind, n: int, fam: str, prefix: str) -> list[Relator]:
    """v_i fam_{i+1} v_i = v_{i+1} fam_i v_{i+1}."""
    return [
        Relator(
            f"{prefix}({i})",
            _word(kind, n, [v(i), Generator(fam, i + 1), v(i)]),
            _word(kind, n, [v(i + 1), Generator(fam, i), v(i + 1)]),
        )
        for i in range(1, n - 1)
    ]


def full_presentation(kind: GroupKind, n: int) -> Presentation:
    """The complete defining relator families for the given kind.

    The three detour variants that are easy consequences of the mixed
    relations are deliberately not relators; see
    :func:`derived_detour_relations`.
    """
    if n < 1:
        raise PresentationError(f"n must be >= 1, got {n}")
    rels: list[Relator] = []
    gens: list[Generator] = []
    if "s" in kind.families:
        gens += [sigma(i) for i in range(1, n)]
    if "c" in kind.families:
        gens += [c(i) for i in range(1, n)]
    if "v" in kind.families:
        gens += [v(i) for i in range(1, n)]

    if kind is GroupKind.B:
        rels += _braid_family(kind, n, "s", "braid({})", "braid-comm({},{})")
    if kind is GroupKind.S:
        rels += _virtual_relators(kind, n)
    if kind in (GroupKind.VB, GroupKind.WB, GroupKind.UB):
        rels += _braid_family(kind, n, "s", "braid({})", "braid-comm({},{})")
        rels += _virtual_relators(kind, n)
        rels += _mixed_comm_family(kind, n, "s", "mixed-comm")
        rels += _special_detour_family(kind, n, "s", "special-detour")
    if kind in (GroupKind.FV, GroupKind.FU):
        rels += _braid_family(kind, n, "c", "flat-braid({})", "flat-comm({},{})")
        rels += _involution_family(kind, n, "c", "flat-inv({})")
        rels += _virtual_relators(kind, n)
        rels += _mixed_comm_family(kind, n, "c", "mixed-flat-comm")
        rels += _special_detour_family(kind, n, "c", "special-flat-detour")
    if kind in (GroupKind.WB, GroupKind.UB):
        # first forbidden move: sliding an over arc across a virtual crossing
        for i in range(1, n - 1):
            rels.append(
                Relator(
                    f"F1({i})",
                    _word(kind, n, [v(i), sigma(i + 1), sigma(i)]),
                    _word(kind, n, [sigma(i + 1), sigma(i), v(i + 1)]),
                )
            )
    if kind is GroupKind.UB:
        for i in range(1, n - 1):
            rels.append(
                Relator(
                    f"F2({i})",
                    _word(kind, n, [sigma(i), sigma(i + 1), v(i)]),
                    _word(kind, n, [v(i + 1), sigma(i), sigma(i + 1)]),
                )
            )
    if kind is GroupKind.FU:
        for i in range(1, n - 1):
            rels.append(
                Relator(
                    f"flat-forbidden({i})",
                    _word(kind, n, [c(i), c(i + 1), v(i)]),
                    _word(kind, n, [v(i + 1), c(i), c(i + 1)]),
                )
            )
    return Presentation(kind, n, tuple(gens), tuple(rels), FULL)


def _virtual_relators(kind: GroupKind, n: int) -> list[Relator]:
    return (
        _braid_family(kind, n, "v", "virt-braid({})", "virt-comm({},{})")
        + _involution_family(kind, n, "v", "virt-inv({})")
    )


def _core(kind: GroupKind) -> Generator:
    return c(1) if kind in FLAT_KINDS else sigma(1)


def _sandwich_words(kind: GroupKind, n: int) -> tuple[BraidWord, BraidWord]:
    """(v1 x v1)(v2 x v2)(v1 x v1) = (v2 x v2)(v1 x v1)(v2 x v2), x the core."""
    x = _core(kind)

    def block(i: int) -> list[Generator]:
        return [v(i), x, v(i)]

    return (
        _word(kind, n, block(1) + block(2) + block(1)),
        _word(kind, n, block(2) + block(1) + block(2)),
    )


def _long_comm_words(kind: GroupKind, n: int) -> tuple[BraidWord, BraidWord]:
    """x (v2 v3 v1 v2 x v2 v1 v3 v2) = (v2 v3 v1 v2 x v2 v1 v3 v2) x."""
    x = _core(kind)
    inner = [v(2), v(3), v(1), v(2), x, v(2), v(1), v(3), v(2)]
    return _word(kind, n, [x] + inner), _word(kind, n, inner + [x])


def reduced_presentation(
    kind: GroupKind, n: int, flavor: str = REDUCED
) -> Presentation:
    """The reduced presentations of the paper's main theorems.

    For VB, WB, UB the generators are {sigma_1, v_1..v_{n-1}}; for FV, FU
    they are {c_1, v_1..v_{n-1}}; the single-welded flavor (WB only) uses
    {v_1, sigma_1..sigma_{n-1}}.  Relators whose generator indices do not
    exist at small n are dropped.
    """
    if flavor == SINGLE_WELDED:
        if kind is not GroupKind.WB:
            raise PresentationError(f"{SINGLE_WELDED} is only defined for WB")
        return _single_welded(n)
    if flavor != REDUCED:
        raise PresentationError(f"unknown flavor {flavor!r}")
    if kind not in (GroupKind.VB, GroupKind.FV, GroupKind.WB, GroupKind.UB, GroupKind.FU):
        raise PresentationError(f"no reduced presentation for kind {kind.value}")
    if n < 1:
        raise PresentationError(f"n must be >= 1, got {n}")

    core = _core(kind)
    fam = core.family
    gens: list[Generator] = ([core] if n >= 2 else []) + [v(i) for i in range(1, n)]
    rels: list[Relator] = _virtual_relators(kind, n)
    if kind in FLAT_KINDS and n >= 2:
        rels.append(
            Relator("c1-inv", _word(kind, n, [core, core]), _word(kind, n, []))
        )
    comm_id = "c1-comm({})" if kind in FLAT_KINDS else "sigma1-comm({})"
    for j in range(3, n):
        rels.append(
            Relator(
                comm_id.format(j),
                _word(kind, n, [core, v(j)]),
                _word(kind, n, [v(j), core]),
            )
        )
    main_braid_id = "main-flat-braid" if kind in FLAT_KINDS else "main-braid"
    main_comm_id = "main-flat-comm" if kind in FLAT_KINDS else "main-comm"
    if n >= 3:
        rels.append(Relator(main_braid_id, *_sandwich_words(kind, n)))
    if n >= 4:
        rels.append(Relator(main_comm_id, *_long_comm_words(kind, n)))
    if kind in (GroupKind.WB, GroupKind.UB) and n >= 3:
        # v1 (v2 s1 v2 v1 s1) = (v2 s1 v2 v1 s1) v2
        tail = [v(2), sigma(1), v(2), v(1), sigma(1)]
        rels.append(
            Relator(
                "F1-basic",
                _word(kind, n, [v(1)] + tail),
                _word(kind, n, tail + [v(2)]),
            )
        )
    if kind is GroupKind.UB and n >= 3:
        # (s1 v1 v2 s1 v2) v1 = v2 (s1 v1 v2 s1 v2)
        mid = [sigma(1), v(1), v(2), sigma(1), v(2)]
        rels.append(
            Relator(
                "F2-basic",
                _word(kind, n, mid + [v(1)]),
                _word(kind, n, [v(2)] + mid),
            )
        )
    if kind is GroupKind.FU and n >= 3:
        # v1 (v2 c1 v2 v1 c1) = (v2 c1 v2 v1 c1) v2
        tail = [v(2), c(1), v(2), v(1), c(1)]
        rels.append(
            Relator(
                "flat-forbidden-basic",
                _word(kind, n, [v(1)] + tail),
                _word(kind, n, tail + [v(2)]),
            )
        )
    return Presentation(kind, n, tuple(gens), tuple(rels), REDUCED)


def _single_welded(n: int) -> Presentation:
    kind = GroupKind.WB
    gens: list[Generator] = ([v(1)] if n >= 2 else []) + [sigma(i) for i in range(1, n)]
    rels: list[Relator] = _braid_family(kind, n, "s", "braid({})", "braid-comm({},{})")
    if n >= 2:
        rels.append(
            Relator("v1-inv", _word(kind, n, [v(1), v(1)]), _word(kind, n, []))
        )
    for j in range(3, n):
        rels.append(
            Relator(
                f"v1-comm({j})",
                _word(kind, n, [v(1), sigma(j)]),
                _word(kind, n, [sigma(j), v(1)]),
            )
        )
    if n >= 3:
        # conjugated copies of the virtual braid relation v1 v2 v1 = v2 v1 v2
        a = [sigma(1), v(1), sigma(1, True)]
        b = [sigma(2, True), v(1), sigma(2)]
        rels.append(
            Relator(
                "welded-conj-braid",
                _word(kind, n, a + b + a),
                _word(kind, n, b + a + b),
            )
        )
    if n >= 4:
        inner = (
            [sigma(2, True), sigma(1, True), sigma(3, True), sigma(2, True), v(1)]
            + [sigma(2), sigma(3), sigma(1), sigma(2)]
        )
        rels.append(
            Relator(
                "welded-conj-comm",
                _word(kind, n, [v(1)] + inner),
                _word(kind, n, inner + [v(1)]),
            )
        )
    return Presentation(kind, n, tuple(gens), tuple(rels), SINGLE_WELDED)


def derived_detour_relations(kind: GroupKind, n: int) -> tuple[Relator, ...]:
    """The detour variants that are easy consequences of the mixed relations.

    These are not presentation relators but are exposed as a named relation
    set for the rewrite engine and derivation scripts.
    """
    rels: list[Relator] = []
    if "s" in kind.families and "v" in kind.families:
        for i in range(1, n - 1):
            rels.append(
                Relator(
                    f"detour-var1({i})",
                    _word(kind, n, [sigma(i, True), v(i + 1), v(i)]),
                    _word(kind, n, [v(i + 1), v(i), sigma(i + 1, True)]),
                )
            )
            for sign, tag in ((False, "+"), (True, "-")):
                rels.append(
                    Relator(
                        f"detour-var2{tag}({i})",
                        _word(kind, n, [v(i), v(i + 1), sigma(i, sign)]),
                        _word(kind, n, [sigma(i + 1, sign), v(i), v(i + 1)]),
                    )
                )
                rels.append(
                    Relator(
                        f"detour-var3{tag}({i})",
                        _word(kind, n, [sigma(i, sign), v(i + 1), v(i)]),
                        _word(kind, n, [v(i + 1), v(i), sigma(i + 1, sign)]),
                    )
                )
    if "c" in kind.families:
        for i in range(1, n - 1):
            rels.append(
                Relator(
                    f"flat-detour-var2({i})",
                    _word(kind, n, [v(i), v(i + 1), c(i)]),
                    _word(kind, n, [c(i + 1), v(i), v(i + 1)]),
                )
            )
            rels.append(
                Relator(
                    f"flat-detour-var3({i})",
                    _word(kind, n, [c(i), v(i + 1), v(i)]),
                    _word(kind, n, [v(i + 1), v(i), c(i + 1)]),
                )
            )
    return tuple(rels)


def expand_sigma(t: int, n: int, kind: GroupKind) -> BraidWord:
    """The word for sigma_t (or c_t for flat kinds) over the reduced generators.

    For t = 1 this is the single core letter; for t >= 2 it is

        (v_{t-1}..v_1)(v_t..v_2) core (v_2..v_t)(v_1..v_{t-1})

    which has length 4(t-1)+1 and exactly one core letter.
    """
    if kind not in (GroupKind.VB, GroupKind.WB, GroupKind.UB, GroupKind.FV, GroupKind.FU):
        raise PresentationError(f"kind {kind.value} has no reduced presentation")
    if not 1 <= t <= n - 1:
        raise PresentationError(f"index {t} out of range 1..{n - 1}")
    core = _core(kind)
    letters = (
        _desc("v", t - 1, 1) + _desc("v", t, 2) + [core] + _asc("v", 2, t) + _asc("v", 1, t - 1)
    )
    return _word(kind, n, letters)


def expand_word(w: BraidWord) -> BraidWord:
    """Rewrite every braiding letter of index >= 2 via :func:`expand_sigma`.

    v letters are untouched; sigma inverses expand to the inverse word
    (same conjugator, inverted core).  The result is freely reduced.
    """
    out: list[Generator] = []
    for g in w.letters:
        if g.family == "v" or g.index == 1 and not g.inverse:
            out.append(g)
        elif g.family in ("s", "c"):
            exp = list(expand_sigma(g.index, w.n, w.kind).letters)
            if g.inverse:
                mid = (len(exp) - 1) // 2
                exp[mid] = exp[mid].inverted()
            out.extend(exp)
        else:  # pragma: no cover - v handled above
            raise PresentationError(f"cannot expand letter {g.token}")
    return free_reduce(_word(w.kind, w.n, out))


def expand_v_welded(t: int, n: int) -> BraidWord:
    """The welded word for v_t over {v_1, sigma_1..sigma_{n-1}}.

    For t = 1 the letter v1; for t >= 2 the word

        (s_{t-1}^-1..s_1^-1)(s_t^-1..s_2^-1) v1 (s_2..s_t)(s_1..s_{t-1})

    (see WELDED_EXPANSION_NOTE for the provenance of this form).
    """
    if not 1 <= t <= n - 1:
        raise PresentationError(f"index {t} out of range 1..{n - 1}")
    kind = GroupKind.WB
    letters = (
        [sigma(i, True) for i in range(t - 1, 0, -1)]
        + [sigma(i, True) for i in range(t, 1, -1)]
        + [v(1)]
        + [sigma(i) for i in range(2, t + 1)]
        + [sigma(i) for i in range(1, t)]
    )
    return _word(kind, n, letters)


def relator_symmetric_check(p: Presentation) -> CheckReport:
    """Necessary-condition check: both sides of every relator agree in S_n."""
    bad = tuple(
        r.id
        for r in p.relators
        if permutation_image(r.lhs) != permutation_image(r.rhs)
    )
    return CheckReport(passed=not bad, violations=bad)


def serialize_presentation(p: Presentation) -> str:
    """Line-oriented text form: generator and relator lines."""
    lines = [f"presentation {p.kind.value} n={p.n} flavor={p.flavor}"]
    for g in p.generators:
        lines.append(f"generator {g.token}")
    for r in p.relators:
        lines.append(f"relator {r.id}: {format_word(r.lhs)} = {format_word(r.rhs)}")
    return "\n".join(lines) + "\n"


def presentation_to_json(p: Presentation) -> dict:
    return {
        "schema": 1,
        "kind": p.kind.value,
        "n": p.n,
        "flavor": p.flavor,
        "generators": [g.token for g in p.generators],
        "relators": [
            {"id": r.id, "lhs": format_word(r.lhs), "rhs": format_word(r.rhs)}
            for r in p.relators
        ],
    }
