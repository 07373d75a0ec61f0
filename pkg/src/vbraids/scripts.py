"""
Built-in derivation-script families.

These parameterised builders generate machine-checkable proof scripts over
the reduced presentations:

* ``lemma1_script(i, j, n)``: sigma_i v_j = v_j sigma_i for i > 1, |i-j| >= 2.
* ``lemma2_script(i, n)``:    sigma_i sigma_{i+1} sigma_i = ... for i >= 2.
* ``lemma3_script(i, j, n)``: sigma_i sigma_j = sigma_j sigma_i for j >= i+2.
* ``f1_script`` / ``f2_script`` / ``flat_forbidden_script``: the forbidden-move
  relators of the welded, unrestricted and flat unrestricted groups.
* ``braid1_script``: sigma_1 sigma_2 sigma_1 = sigma_2 sigma_1 sigma_2 via the
  main reduced relation, in its conjugated "sandwich" form.
* ``special_detour_script``: v_i sigma_{i+1} v_i = v_{i+1} sigma_i v_{i+1}.
* ``welded_substitution_script``: the two-step equivalence between the basic
  forbidden relation and its single-generator substituted form.

Every family has a flat variant (kinds FV, FU) with c_1 as the core letter.

Structure of the builders: a script word always has the shape

    zone_0  x  zone_1  x  ...  x  zone_k

with x the core letter and the zones pure-virtual.  Three primitives
suffice: rewriting a zone to any word equal to it in S_n (compiled to
elementary virtual moves by the staircase engine), carrying a batch of
v_j letters with j >= 3 across a core (one mixed commutation each), and
applying a named relator outright.  Pure-zone targets that the paper leaves
implicit are recovered from the permutation quotients they must satisfy;
every phase is verified against the live word while the script is built, so
a transcription slip cannot produce a silently wrong script.
"""

from __future__ import annotations

import re

from ._staircase import derive, perm_of, staircase_of
from .presentations import FLAT_KINDS, REDUCED, expand_word
from .rewrite import DerivationScript, RewriteStep, relation_table
from .words import BraidWord, Generator, GroupKind, WordError, parse_word


def _pcompose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation "a then b" on 1..n tuples."""
    return tuple(b[x - 1] for x in a)


def _pinv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for x, y in enumerate(a, start=1):
        out[y - 1] = x
    return tuple(out)


def _fixes_low(perm: tuple[int, ...]) -> bool:
    return perm[0] == 1 and perm[1] == 2


def _desc(b: int, a: int) -> list[int]:
    return list(range(b, a - 1, -1))


def _asc(a: int, b: int) -> list[int]:
    return list(range(a, b + 1))


class _Builder:
    """Accumulates steps while maintaining the live word they produce."""

    def __init__(self, name: str, kind: GroupKind, n: int, start: BraidWord):
        self.name = name
        self.kind = kind
        self.n = n
        self.start = start
        self.word: list[Generator] = list(start.letters)
        self.steps: list[RewriteStep] = []
        self.table = relation_table(kind, n, (REDUCED,))
        self.flat = kind in FLAT_KINDS
        self.core_fam = "c" if self.flat else "s"
        self.comm_id = "c1-comm({})" if self.flat else "sigma1-comm({})"
        self.main_braid_id = "main-flat-braid" if self.flat else "main-braid"
        self.main_comm_id = "main-flat-comm" if self.flat else "main-comm"

    # -- kernel ------------------------------------------------------------

    def emit(self, relator_id: str, forward: bool, pos: int) -> None:
        rel = self.table[relator_id]
        src, dst = (rel.lhs, rel.rhs) if forward else (rel.rhs, rel.lhs)
        seg = tuple(self.word[pos : pos + len(src.letters)])
        assert seg == src.letters, (
            f"{self.name}: {relator_id} {'L2R' if forward else 'R2L'} @{pos} "
            f"does not match"
        )
        self.word[pos : pos + len(src.letters)] = list(dst.letters)
        self.steps.append(RewriteStep(relator_id, forward, pos))

    # -- primitives --------------------------------------------------------

    def core_positions(self) -> list[int]:
        return [p for p, g in enumerate(self.word) if g.family == self.core_fam]

    def zones(self) -> list[tuple[int, int]]:
        """(start, length) of the pure-virtual zones between core letters."""
        cuts = [-1] + self.core_positions() + [len(self.word)]
        return [
            (cuts[t] + 1, cuts[t + 1] - cuts[t] - 1) for t in range(len(cuts) - 1)
        ]

    def zone_indices(self, zone: int) -> list[int]:
        start, length = self.zones()[zone]
        seg = self.word[start : start + length]
        assert all(g.family == "v" for g in seg), f"{self.name}: zone {zone} not pure"
        return [g.index for g in seg]

    def rewrite_zone(self, zone: int, target: list[int]) -> None:
        """Rewrite a pure-virtual zone to any S_n-equal word."""
        start, _ = self.zones()[zone]
        src = self.zone_indices(zone)
        for rid, fwd, pos in derive(src, target, self.n):
            self.emit(rid, fwd, start + pos)

    def cross_left(self, core_index: int, count: int) -> None:
        """Carry ``count`` letters from just after a core to just before it."""
        pos = self.core_positions()[core_index]
        for _ in range(count):
            j = self.word[pos + 1].index
            self.emit(self.comm_id.format(j), True, pos)
            pos += 1

    def cross_right(self, core_index: int, count: int) -> None:
        """Carry ``count`` letters from just before a core to just after it."""
        pos = self.core_positions()[core_index]
        for _ in range(count):
            j = self.word[pos - 1].index
            self.emit(self.comm_id.format(j), False, pos - 1)
            pos -= 1

    def sandwich(self, core_index: int) -> None:
        """Apply x(v1 v2 x v2 v1)x = (v1 v2 x v2 v1) x (v1 v2 x v2 v1).

        The conjugated form of the main reduced braid relation, compiled to
        two involution insertions plus the relator itself.
        """
        q = self.core_positions()[core_index]
        self.emit("virt-inv(1)", False, q)
        self.emit("virt-inv(1)", False, q + 9)
        self.emit(self.main_braid_id, True, q + 1)

    def apply_reversed(self, relator_id: str, pos: int) -> None:
        """Apply the reversed relator rev(lhs) -> rev(rhs) at pos.

        Valid because reversal is an anti-automorphism fixing the involutive
        generators; compiled to involution insertions, one forward relator
        application, and involution deletions.
        """
        rel = self.table[relator_id]
        xs = list(rel.lhs.letters)
        ys = list(rel.rhs.letters)
        assert all(g.family in ("v", "c") for g in xs + ys)
        for t, g in enumerate(reversed(ys)):
            self.emit(self._inv_id(g), False, pos + t)
        self.emit(relator_id, False, pos + len(ys))
        for t in range(len(xs)):
            g = xs[len(xs) - 1 - t]
            self.emit(self._inv_id(g), True, pos + len(ys) + len(xs) - 1 - t)

    def _inv_id(self, g: Generator) -> str:
        if g.family == "v":
            return f"virt-inv({g.index})"
        assert g.family == "c" and g.index == 1
        return "c1-inv"

    # -- permutation-quotient helpers ---------------------------------------

    def _zone_perm(self, zone: int) -> tuple[int, ...]:
        return perm_of(self.zone_indices(zone), self.n)

    def tail_after_head(self, zone: int, head: list[int], low_fixed: bool) -> list[int]:
        """The canonical tail T with zone = head . T in S_n."""
        t_perm = _pcompose(_pinv(perm_of(head, self.n)), self._zone_perm(zone))
        if low_fixed:
            assert _fixes_low(t_perm), f"{self.name}: tail not supported on v3.."
        return staircase_of(t_perm)

    def head_before_tail(self, zone: int, tail: list[int], low_fixed: bool) -> list[int]:
        """The canonical head H with zone = H . tail in S_n."""
        h_perm = _pcompose(self._zone_perm(zone), _pinv(perm_of(tail, self.n)))
        if low_fixed:
            assert _fixes_low(h_perm), f"{self.name}: head not supported on v3.."
        return staircase_of(h_perm)

    # -- finish --------------------------------------------------------------

    def build(self, target: BraidWord) -> DerivationScript:
        assert tuple(self.word) == target.letters, (
            f"{self.name}: built word does not equal target"
        )
        return DerivationScript(
            self.name, self.kind, self.n, self.start, tuple(self.steps), target,
            auto_reduce=False, relation_set=(REDUCED,),
        )


def _invert_steps(steps: list[RewriteStep]) -> list[RewriteStep]:
    return [
        RewriteStep(s.relator_id, not s.forward, s.position) for s in reversed(steps)
    ]


def _expansion(letters: str, kind: GroupKind, n: int) -> BraidWord:
    return expand_word(parse_word(letters, kind, n))


def _check_kind(kind: GroupKind, flat_ok: bool = True) -> None:
    allowed = {GroupKind.VB, GroupKind.WB, GroupKind.UB}
    if flat_ok:
        allowed |= FLAT_KINDS
    if kind not in allowed:
        raise WordError(f"no script family for kind {kind.value}")


def _p_letters(t: int) -> list[int]:
    return _desc(t - 1, 1) + _desc(t, 2)


def _q_letters(t: int) -> list[int]:
    return _asc(2, t) + _asc(1, t - 1)


def _core_token(kind: GroupKind) -> str:
    return "c1" if kind in FLAT_KINDS else "s1"


def lemma1_script(i: int, j: int, n: int, kind: GroupKind = GroupKind.VB) -> DerivationScript:
    """sigma_i v_j = v_j sigma_i (expanded) from the reduced relators.

    For j >= i+2 the letter commutes through the whole expansion; for
    j <= i-2 it bumps up to v_{j+2} inside the right conjugator, crosses the
    core by the reduced mixed relation, and bumps back down on the left.
    """
    _check_kind(kind)
    if i < 2 or abs(i - j) < 2 or not 1 <= j <= n - 1 or not i <= n - 1:
        raise WordError(f"lemma1 needs 2 <= i <= n-1, |i-j| >= 2, got i={i}, j={j}")
    tok = _core_token(kind)
    start = _expansion(f"{tok[0]}{i} v{j}", kind, n)
    target = _expansion(f"v{j} {tok[0]}{i}", kind, n)
    b = _Builder(f"lemma1({i},{j})", kind, n, start)
    carried = j if j >= i + 2 else j + 2
    b.rewrite_zone(1, [carried] + _q_letters(i))
    b.cross_left(0, 1)
    b.rewrite_zone(0, [j] + _p_letters(i))
    return b.build(target)


def special_detour_script(i: int, n: int, kind: GroupKind = GroupKind.VB) -> DerivationScript:
    """v_i sigma_{i+1} v_i = v_{i+1} sigma_i v_{i+1} (expanded), i >= 2.

    At i = 1 the two sides expand to the same freely reduced word, so the
    interesting cases are pure commutations of v_{i+1} past the conjugators.
    """
    _check_kind(kind)
    if i < 2 or i + 1 > n - 1:
        raise WordError(f"special-detour script needs 2 <= i <= n-2, got i={i}")
    tok = _core_token(kind)
    start = _expansion(f"v{i} {tok[0]}{i + 1} v{i}", kind, n)
    target = _expansion(f"v{i + 1} {tok[0]}{i} v{i + 1}", kind, n)
    b = _Builder(f"special-detour-exp({i})", kind, n, start)
    b.rewrite_zone(0, [i + 1] + _p_letters(i))
    b.rewrite_zone(1, _q_letters(i) + [i + 1])
    return b.build(target)


def braid1_script(n: int, kind: GroupKind = GroupKind.VB) -> DerivationScript:
    """sigma_1 sigma_2 sigma_1 = sigma_2 sigma_1 sigma_2 (expanded)."""
    _check_kind(kind)
    if n < 3:
        raise WordError("braid relation needs n >= 3")
    tok = _core_token(kind)
    s = tok[0]
    start = _expansion(f"{s}1 {s}2 {s}1", kind, n)
    target = _expansion(f"{s}2 {s}1 {s}2", kind, n)
    b = _Builder("braid1", kind, n, start)
    b.sandwich(0)
    return b.build(target)


def lemma2_script(i: int, n: int, kind: GroupKind = GroupKind.VB) -> DerivationScript:
    """sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}, i >= 2.

    Both sides are normalised to the common three-core sandwich form; the
    left side needs one application of the main reduced braid relation, the
    right side only commutations, and the ends are reconciled by pure
    virtual rewriting.
    """
    _check_kind(kind)
    if i < 2 or i + 1 > n - 1:
        raise WordError(f"lemma2 needs 2 <= i <= n-2, got i={i}")
    tok = _core_token(kind)
    s = tok[0]
    start = _expansion(f"{s}{i} {s}{i + 1} {s}{i}", kind, n)
    target = _expansion(f"{s}{i + 1} {s}{i} {s}{i + 1}", kind, n)
    u1 = _desc(i + 1, 3)
    v1 = _asc(3, i + 1)

    left = _Builder(f"lemma2({i})", kind, n, start)
    left.rewrite_zone(1, u1 + [1, 2] + v1)
    left.cross_left(0, len(u1))
    left.cross_right(1, len(v1))
    w2 = left.tail_after_head(2, [2, 1], low_fixed=True)
    left.rewrite_zone(2, [2, 1] + w2)
    left.cross_right(2, len(w2))
    left.sandwich(0)

    right = _Builder(f"lemma2({i})-rhs", kind, n, target)
    right.rewrite_zone(1, u1 + [2, 1] + v1)
    right.cross_left(0, len(u1))
    right.cross_right(1, len(v1))
    w2r = right.tail_after_head(2, [1, 2], low_fixed=True)
    right.rewrite_zone(2, [1, 2] + w2r)
    right.cross_right(2, len(w2r))

    # reconcile the outer zones; the middles already agree
    left.rewrite_zone(0, right.zone_indices(0))
    left.rewrite_zone(3, right.zone_indices(3))
    assert left.word == right.word, f"lemma2({i}): sides did not meet"

    script_steps = tuple(left.steps) + tuple(_invert_steps(right.steps))
    return DerivationScript(
        left.name, kind, n, start, script_steps, target,
        auto_reduce=False, relation_set=(REDUCED,),
    )


def lemma3_script(i: int, j: int, n: int, kind: GroupKind = GroupKind.VB) -> DerivationScript:
    """sigma_i sigma_j = sigma_j sigma_i (expanded) for j >= i+2.

    The middle zone is reorganised so the main reduced commuting relation
    applies; afterwards the conjugators are redistributed to land exactly on
    the expansion of sigma_j sigma_i.  i = 1 is allowed (and used to certify
    the plain commutations with sigma_1), the paper's lemma is i > 1.
    """
    _check_kind(kind)
    if i < 1 or j < i + 2 or j > n - 1:
        raise WordError(f"lemma3 needs 1 <= i, i+2 <= j <= n-1, got i={i}, j={j}")
    tok = _core_token(kind)
    s = tok[0]
    start = _expansion(f"{s}{i} {s}{j}", kind, n)
    target = _expansion(f"{s}{j} {s}{i}", kind, n)
    u = _desc(j - 1, i + 2) + _desc(j, i + 3) + _desc(i + 1, 3) + _desc(i + 2, 4)
    vv = _asc(4, i + 2) + _asc(3, i + 1)

    b = _Builder(f"lemma3({i},{j})", kind, n, start)
    b.rewrite_zone(1, u + [2, 3, 1, 2] + vv)
    b.cross_left(0, len(u))
    b.cross_right(1, len(vv))
    r = b.tail_after_head(2, [2, 1, 3, 2], low_fixed=False)
    b.rewrite_zone(2, [2, 1, 3, 2] + r)
    b.emit(b.main_comm_id, True, b.core_positions()[0])
    u2 = b.tail_after_head(0, _p_letters(j), low_fixed=True)
    b.rewrite_zone(0, _p_letters(j) + u2)
    b.cross_right(0, len(u2))
    v2 = b.head_before_tail(2, _q_letters(i), low_fixed=True)
    b.rewrite_zone(2, v2 + _q_letters(i))
    b.cross_left(1, len(v2))
    b.rewrite_zone(1, _q_letters(j) + _p_letters(i))
    return b.build(target)


def _forbidden_script(
    i: int,
    n: int,
    kind: GroupKind,
    name: str,
    start_text: str,
    target_text: str,
    head_zone1: list[int],
    z0_tail: list[int] | None,
    z2_head: list[int] | None,
    z1_post: list[int],
    z0_target: list[int],
    z2_target_tail: list[int],
    apply_basic,
) -> DerivationScript:
    """Common two-core plan for the forbidden-move relators F1, F2 and their
    flat analogue: normalise the middle zone, squeeze one end against the
    basic reduced relator, apply it, and redistribute onto the target.
    """
    start = _expansion(start_text, kind, n)
    target = _expansion(target_text, kind, n)
    u1 = _desc(i + 1, 3)
    v1 = _asc(3, i + 1)
    b = _Builder(name, kind, n, start)
    b.rewrite_zone(1, u1 + head_zone1 + v1)
    b.cross_left(0, len(u1))
    b.cross_right(1, len(v1))
    if z0_tail is not None:
        w0 = b.head_before_tail(0, z0_tail, low_fixed=False)
        b.rewrite_zone(0, w0 + z0_tail)
    if z2_head is not None:
        r = b.tail_after_head(2, z2_head, low_fixed=False)
        b.rewrite_zone(2, z2_head + r)
    apply_basic(b)
    u2 = b.tail_after_head(0, z0_target, low_fixed=True)
    b.rewrite_zone(0, z0_target + u2)
    b.cross_right(0, len(u2))
    v2 = b.head_before_tail(2, z2_target_tail, low_fixed=True)
    b.rewrite_zone(2, v2 + z2_target_tail)
    b.cross_left(1, len(v2))
    b.rewrite_zone(1, z1_post)
    return b.build(target)


def f1_script(i: int, n: int, kind: GroupKind = GroupKind.WB) -> DerivationScript:
    """The welded relator v_i s_{i+1} s_i = s_{i+1} s_i v_{i+1} (expanded)."""
    if kind not in (GroupKind.WB, GroupKind.UB):
        raise WordError("F1 lives in WB and UB")
    if i < 1 or i + 1 > n - 1:
        raise WordError(f"F1 needs 1 <= i <= n-2, got i={i}")

    def basic(b: _Builder) -> None:
        b.emit("F1-basic", True, b.core_positions()[0] - 2)

    return _forbidden_script(
        i, n, kind, f"f1({i})",
        f"v{i} s{i + 1} s{i}", f"s{i + 1} s{i} v{i + 1}",
        head_zone1=[2, 1],
        z0_tail=[1, 2],
        z2_head=None,
        z1_post=_q_letters(i + 1) + _p_letters(i),
        z0_target=_p_letters(i + 1),
        z2_target_tail=_q_letters(i) + [i + 1],
        apply_basic=basic,
    )


def f2_script(i: int, n: int, kind: GroupKind = GroupKind.UB) -> DerivationScript:
    """The unrestricted relator s_i s_{i+1} v_i = v_{i+1} s_i s_{i+1}."""
    if kind is not GroupKind.UB:
        raise WordError("F2 lives in UB")
    if i < 1 or i + 1 > n - 1:
        raise WordError(f"F2 needs 1 <= i <= n-2, got i={i}")

    def basic(b: _Builder) -> None:
        b.emit("F2-basic", True, b.core_positions()[0])

    return _forbidden_script(
        i, n, kind, f"f2({i})",
        f"s{i} s{i + 1} v{i}", f"v{i + 1} s{i} s{i + 1}",
        head_zone1=[1, 2],
        z0_tail=None,
        z2_head=[2, 1],
        z1_post=_q_letters(i) + _p_letters(i + 1),
        z0_target=[i + 1] + _p_letters(i),
        z2_target_tail=_q_letters(i + 1),
        apply_basic=basic,
    )


def flat_forbidden_script(i: int, n: int) -> DerivationScript:
    """The flat forbidden relator c_i c_{i+1} v_i = v_{i+1} c_i c_{i+1}.

    The reduced presentation carries the relator in the form with the v
    letter in front, so the reversed relator (valid since all letters are
    involutive) is applied via the insert/apply/delete compilation.
    """
    kind = GroupKind.FU
    if i < 1 or i + 1 > n - 1:
        raise WordError(f"flat forbidden needs 1 <= i <= n-2, got i={i}")

    def basic(b: _Builder) -> None:
        b.apply_reversed("flat-forbidden-basic", b.core_positions()[0])

    return _forbidden_script(
        i, n, kind, f"flat-forbidden-exp({i})",
        f"c{i} c{i + 1} v{i}", f"v{i + 1} c{i} c{i + 1}",
        head_zone1=[1, 2],
        z0_tail=None,
        z2_head=[2, 1],
        z1_post=_q_letters(i) + _p_letters(i + 1),
        z0_target=[i + 1] + _p_letters(i),
        z2_target_tail=_q_letters(i + 1),
        apply_basic=basic,
    )


def mixed_comm1_script(j: int, n: int, kind: GroupKind = GroupKind.VB) -> DerivationScript:
    """sigma_1 v_j = v_j sigma_1 for j > 2: the reduced relator itself."""
    _check_kind(kind)
    tok = _core_token(kind)
    start = parse_word(f"{tok} v{j}", kind, n)
    target = parse_word(f"v{j} {tok}", kind, n)
    b = _Builder(f"mixed-comm1({j})", kind, n, start)
    b.cross_left(0, 1)
    return b.build(target)


def welded_substitution_script(n: int = 3, kind: GroupKind = GroupKind.WB) -> DerivationScript:
    """The two-step equivalence between the substituted forms of the basic
    forbidden relation: v2 s1 v2 v1 s1 = v1 v2 s1 v2 v1 s1 v2."""
    if kind not in (GroupKind.WB, GroupKind.UB):
        raise WordError("the welded substitution lives in WB and UB")
    if n < 3:
        raise WordError("needs n >= 3")
    start = _expansion("v1 s2 s1", kind, n)
    target = _expansion("s2 s1 v2", kind, n)
    b = _Builder("welded-substitution", kind, n, start)
    b.emit("virt-inv(1)", False, 0)
    b.emit("F1-basic", True, 1)
    return b.build(target)


def welded_substitution_pair(n: int = 3) -> tuple[BraidWord, BraidWord]:
    """The freely reduced substituted sides of v1 s2 s1 = s2 s1 v2."""
    kind = GroupKind.WB
    return _expansion("v1 s2 s1", kind, n), _expansion("s2 s1 v2", kind, n)


# ---------------------------------------------------------------------------
# family enumeration and certification dispatch


def lemma1_instances(n: int) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(2, n)
        for j in range(1, n)
        if abs(i - j) >= 2
    ]


def lemma2_instances(n: int) -> list[int]:
    return list(range(2, n - 1))


def lemma3_instances(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(2, n) for j in range(i + 2, n)]


def lemma_family_scripts(n: int, kind: GroupKind = GroupKind.VB):
    """All built-in lemma scripts at the given n, in a fixed order."""
    for i, j in lemma1_instances(n):
        yield lemma1_script(i, j, n, kind)
    for i in lemma2_instances(n):
        yield lemma2_script(i, n, kind)
    for i, j in lemma3_instances(n):
        yield lemma3_script(i, j, n, kind)


def certification_script(kind: GroupKind, n: int, relator_id: str) -> DerivationScript | None:
    """The built-in script certifying one full-presentation relator, if any."""
    m = re.match(r"^([a-zA-Z0-9-]+)\(([0-9]+)(?:,([0-9]+))?\)$", relator_id)
    if m is None:
        return None
    fam, i = m.group(1), int(m.group(2))
    j = int(m.group(3)) if m.group(3) else None
    if fam in ("braid", "flat-braid"):
        return braid1_script(n, kind) if i == 1 else lemma2_script(i, n, kind)
    if fam in ("braid-comm", "flat-comm"):
        return lemma3_script(i, j, n, kind)
    if fam in ("mixed-comm", "mixed-flat-comm"):
        return mixed_comm1_script(j, n, kind) if i == 1 else lemma1_script(i, j, n, kind)
    if fam in ("special-detour", "special-flat-detour"):
        return None if i == 1 else special_detour_script(i, n, kind)
    if fam == "F1":
        return f1_script(i, n, kind)
    if fam == "F2":
        return f2_script(i, n, kind)
    if fam == "flat-forbidden":
        return flat_forbidden_script(i, n)
    return None
