"""
Braid words over the virtual braid group and its relatives.

A word is a finite sequence of generator letters read left to right, which
corresponds to reading a braid diagram top to bottom.  Seven group kinds are
supported:

====  =======================================  ==================
kind  group                                    generator families
====  =======================================  ==================
B     classical braid group                    s (with inverses)
S     symmetric group                          v (involutive)
VB    virtual braid group                      s, v
WB    welded braid group                       s, v
UB    unrestricted virtual braid group         s, v
FV    flat virtual braid group                 c, v (involutive)
FU    flat unrestricted braid group            c, v (involutive)
====  =======================================  ==================

Tokens are ASCII: ``s2``, ``s2^-1``, ``v1``, ``c3``; the empty word prints as
``e``.  Indices are 1-based and run over 1..n-1 for a word on n strands.

Everything in this module is immutable and all operations are pure functions,
so values can be shared freely between threads.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class WordError(ValueError):
    """Raised for malformed tokens or letters illegal for a (kind, n)."""


class GroupKind(enum.Enum):
    """One of the seven braid-like groups handled by this package."""

    B = "B"
    S = "S"
    VB = "VB"
    FV = "FV"
    WB = "WB"
    UB = "UB"
    FU = "FU"

    @property
    def families(self) -> frozenset[str]:
        """Generator families allowed in words of this kind."""
        return _FAMILIES[self]

    @property
    def involutive_families(self) -> frozenset[str]:
        """Families x with x_i^2 = 1; always v where present, plus c."""
        return _INVOLUTIVE[self]

    @staticmethod
    def parse(text: str) -> GroupKind:
        try:
            return GroupKind(text.upper())
        except ValueError:
            raise WordError(f"unknown group kind {text!r}") from None


_FAMILIES = {
    GroupKind.B: frozenset({"s"}),
    GroupKind.S: frozenset({"v"}),
    GroupKind.VB: frozenset({"s", "v"}),
    GroupKind.WB: frozenset({"s", "v"}),
    GroupKind.UB: frozenset({"s", "v"}),
    GroupKind.FV: frozenset({"c", "v"}),
    GroupKind.FU: frozenset({"c", "v"}),
}

_INVOLUTIVE = {
    GroupKind.B: frozenset(),
    GroupKind.S: frozenset({"v"}),
    GroupKind.VB: frozenset({"v"}),
    GroupKind.WB: frozenset({"v"}),
    GroupKind.UB: frozenset({"v"}),
    GroupKind.FV: frozenset({"c", "v"}),
    GroupKind.FU: frozenset({"c", "v"}),
}


class Generator(NamedTuple):
    """A single letter: family "s", "v" or "c" plus 1-based index.

    ``inverse`` is only meaningful for the s family; v and c are their own
    inverses and always carry ``inverse=False``.
    """

    family: str
    index: int
    inverse: bool = False

    def inverted(self) -> Generator:
        if self.family == "s":
            return Generator("s", self.index, not self.inverse)
        return self

    @property
    def token(self) -> str:
        suffix = "^-1" if self.inverse else ""
        return f"{self.family}{self.index}{suffix}"


def sigma(i: int, inverse: bool = False) -> Generator:
    return Generator("s", i, inverse)


def v(i: int) -> Generator:
    return Generator("v", i)


def c(i: int) -> Generator:
    return Generator("c", i)


_TOKEN_RE = re.compile(r"^(s|v|c)([0-9]+)(\^-1)?$")


@dataclass(frozen=True)
class BraidWord:
    """A word in one of the seven groups, on ``n`` strands.

    The empty letter sequence is the group identity.  Words compare by
    syntactic equality; group equality is the business of the rewrite
    module's bounded search and certification machinery.
    """

    kind: GroupKind
    n: int
    letters: tuple[Generator, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise WordError(f"strand count must be >= 1, got {self.n}")
        for g in self.letters:
            _check_letter(g, self.kind, self.n)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def replace_letters(self, letters: Iterable[Generator]) -> BraidWord:
        return BraidWord(self.kind, self.n, tuple(letters))

    def is_identity(self) -> bool:
        return not self.letters


def _check_letter(g: Generator, kind: GroupKind, n: int) -> None:
    if g.family not in kind.families:
        raise WordError(f"letter {g.token} not in the {kind.value} signature")
    if g.inverse and g.family != "s":
        raise WordError(f"{g.family}-letters are involutive, {g.token} is malformed")
    if not 1 <= g.index <= n - 1:
        raise WordError(f"index of {g.token} out of range 1..{n - 1} for n={n}")


def identity(kind: GroupKind, n: int) -> BraidWord:
    return BraidWord(kind, n, ())


def parse_word(text: str, kind: GroupKind, n: int) -> BraidWord:
    """Parse a whitespace-separated token string into a word.

    The empty string and the literal ``e`` both denote the identity.
    """
    tokens = text.split()
    if tokens == ["e"]:
        tokens = []
    letters = []
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise WordError(f"unknown token {tok!r}")
        fam, idx, inv = m.group(1), int(m.group(2)), m.group(3) is not None
        if inv and fam != "s":
            raise WordError(f"unknown token {tok!r}")
        letters.append(Generator(fam, idx, inv))
    return BraidWord(kind, n, tuple(letters))


def format_word(w: BraidWord) -> str:
    """Inverse of :func:`parse_word`; the identity prints as ``e``."""
    if not w.letters:
        return "e"
    return " ".join(g.token for g in w.letters)


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    """Concatenate two words (attach the bottom of w1 to the top of w2)."""
    if w1.kind is not w2.kind or w1.n != w2.n:
        raise WordError(
            f"cannot compose ({w1.kind.value}, n={w1.n}) with ({w2.kind.value}, n={w2.n})"
        )
    return BraidWord(w1.kind, w1.n, w1.letters + w2.letters)


def concat(words: Iterable[BraidWord]) -> BraidWord:
    """Compose a nonempty sequence of words left to right."""
    out: BraidWord | None = None
    for w in words:
        out = w if out is None else compose(out, w)
    if out is None:
        raise WordError("concat of an empty sequence is ambiguous (kind/n unknown)")
    return out


def inverse(w: BraidWord) -> BraidWord:
    """Group inverse: reversed sequence with each letter inverted."""
    return w.replace_letters(g.inverted() for g in reversed(w.letters))


def _cancels(a: Generator, b: Generator, kind: GroupKind) -> bool:
    if a.index != b.index:
        return False
    if a.family == "s" and b.family == "s":
        return a.inverse != b.inverse
    return a == b and a.family in kind.involutive_families


def free_reduce(w: BraidWord) -> BraidWord:
    """Delete adjacent cancelling pairs until none remain.

    Cancelling pairs are (s_i, s_i^-1) either way round and, per the kind's
    signature, (v_i, v_i) and (c_i, c_i).  These rules are length-reducing
    and confluent, so the result is a unique normal form.
    """
    stack: list[Generator] = []
    for g in w.letters:
        if stack and _cancels(stack[-1], g, w.kind):
            stack.pop()
        else:
            stack.append(g)
    return w.replace_letters(stack)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple (image of 1, ..., image of n)."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise WordError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images, start=1))

    def then(self, other: Permutation) -> Permutation:
        """The permutation "self first, then other"."""
        if self.n != other.n:
            raise WordError("cannot compose permutations of different degree")
        return Permutation(tuple(other.images[im - 1] for im in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, im in enumerate(self.images, start=1):
            inv[im - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (including fixed points), each starting at its minimum."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out


def permutation_image(w: BraidWord) -> Permutation:
    """The image of a word in S_n.

    Every letter of index i, of any family and either s sign, maps to the
    transposition (i, i+1); letters act left to right (first letter first),
    so the map is a homomorphism under :func:`compose`.
    """
    images = list(range(1, w.n + 1))
    for g in w.letters:
        i = g.index - 1
        images[i], images[i + 1] = images[i + 1], images[i]
    # images currently tracks slot contents top-to-bottom; invert to get
    # "strand x ends at slot images[x]".
    out = [0] * w.n
    for slot, strand in enumerate(images, start=1):
        out[strand - 1] = slot
    return Permutation(tuple(out))
