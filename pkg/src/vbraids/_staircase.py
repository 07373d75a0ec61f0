"""
Explicit word rewriting in the symmetric group on the virtual generators.

Words here are plain lists of 1-based indices i, standing for v_i.  The three
move families are exactly the virtual relators of the presentations module:

* ``virt-inv(i)``:   v_i v_i = 1
* ``virt-braid(i)``: v_i v_{i+1} v_i = v_{i+1} v_i v_{i+1}
* ``virt-comm(i,j)``: v_i v_j = v_j v_i  for j >= i+2

The central routine :func:`derive` produces, for any two words equal in S_n,
an explicit sequence of positioned moves transforming one into the other.  It
works by combing both words into the staircase normal form

    c_2 c_3 ... c_n   with   c_m = v_{m-1} v_{m-2} ... v_{lo_m},

which is the classical coset normal form for the tower S_1 < S_2 < ... < S_n,
recording every elementary move along the way.  The derivation from word A to
word B is then comb(A) followed by comb(B) reversed and inverted.

Emitted moves are triples (relator_id, forward, position) where forward means
the relator is applied left-to-right.  Positions refer to the word the move is
applied to, 0-based.
"""

from __future__ import annotations

Move = tuple[str, bool, int]


def comm_move(a: int, b: int, pos: int) -> Move:
    """Move swapping adjacent letters v_a v_b -> v_b v_a at pos (|a-b| >= 2)."""
    if abs(a - b) < 2:
        raise ValueError(f"v{a} and v{b} do not commute")
    lo, hi = min(a, b), max(a, b)
    # relator lhs is (v_lo, v_hi); a == lo means the segment matches the lhs
    return (f"virt-comm({lo},{hi})", a == lo, pos)


def braid_move(i: int, pos: int, from_lhs: bool) -> Move:
    """Move rewriting v_i v_{i+1} v_i <-> v_{i+1} v_i v_{i+1} at pos."""
    return (f"virt-braid({i})", from_lhs, pos)


def inv_delete(i: int, pos: int) -> Move:
    return (f"virt-inv({i})", True, pos)


def inv_insert(i: int, pos: int) -> Move:
    return (f"virt-inv({i})", False, pos)


def invert_moves(moves: list[Move]) -> list[Move]:
    """The reversed move list, each move applied in the opposite direction."""
    return [(rid, not forward, pos) for rid, forward, pos in reversed(moves)]


def perm_of(word: list[int], n: int) -> tuple[int, ...]:
    """Image in S_n as the tuple (slot of strand 1, ..., slot of strand n)."""
    slots = list(range(n))
    for i in word:
        slots[i - 1], slots[i] = slots[i], slots[i - 1]
    out = [0] * n
    for slot, strand in enumerate(slots):
        out[strand] = slot + 1
    return tuple(out)


def staircase_of(perm: tuple[int, ...]) -> list[int]:
    """The staircase normal-form word of a permutation.

    Peels strands off from the top: the last block is v_{n-1} ... v_{perm(n)},
    after which the remaining permutation fixes n and recursion applies.
    """
    images = list(perm)
    word: list[int] = []
    for m in range(len(images), 1, -1):
        lo = images[m - 1]
        word = list(range(m - 1, lo - 1, -1)) + word
        images = [x if x < lo else x - 1 for x in images[: m - 1]]
    return word


class _Comber:
    """Incremental staircase normalisation of a word, recording moves.

    The object maintains ``word`` (the full live word) where the prefix of
    length ``self.length`` is in staircase form described by ``self.lo``
    (lo[m] is the bottom index of block c_m, or 0 for an empty block).
    """

    def __init__(self, n: int, letters: list[int]):
        self.n = n
        self.word = list(letters)
        self.lo = [0] * (n + 1)  # lo[m] for m in 2..n; 0 = empty block
        self.length = 0
        self.moves: list[Move] = []

    def _emit(self, move: Move) -> None:
        # Apply the move to the live word, verifying the match; this keeps
        # the generated scripts honest by construction.
        rid, forward, pos = move
        w = self.word
        if rid.startswith("virt-comm"):
            a, b = w[pos], w[pos + 1]
            assert abs(a - b) >= 2, (rid, pos, w)
            w[pos], w[pos + 1] = b, a
        elif rid.startswith("virt-braid"):
            i = int(rid[rid.index("(") + 1 : -1])
            seg = w[pos : pos + 3]
            assert seg in ([i, i + 1, i], [i + 1, i, i + 1]), (rid, pos, w)
            w[pos : pos + 3] = [i + 1, i, i + 1] if seg == [i, i + 1, i] else [i, i + 1, i]
        elif rid.startswith("virt-inv"):
            i = int(rid[rid.index("(") + 1 : -1])
            if forward:
                assert w[pos : pos + 2] == [i, i], (rid, pos, w)
                del w[pos : pos + 2]
            else:
                w[pos:pos] = [i, i]
        else:  # pragma: no cover - internal move vocabulary is closed
            raise AssertionError(rid)
        self.moves.append(move)

    def _block_start(self, m: int) -> int:
        start = 0
        for mm in range(2, m):
            if self.lo[mm]:
                start += mm - self.lo[mm]
        return start

    def insert_next(self) -> None:
        """Absorb the letter at position self.length into the staircase."""
        k = self.word[self.length]
        pos = self.length  # current position of the walking letter
        for m in range(self.n, 1, -1):
            lo = self.lo[m]
            if lo == 0:
                if m == k + 1:
                    # the walker becomes the (empty) block c_{k+1} in place
                    self.lo[m] = k
                    self.length += 1
                    return
                continue
            blk_len = m - lo
            if k <= lo - 2:
                for t in range(blk_len):
                    self._emit(comm_move(self.word[pos - 1], k, pos - 1))
                    pos -= 1
                continue
            if k == lo - 1:
                self.lo[m] = k
                self.length += 1
                return
            if k == lo:
                self._emit(inv_delete(k, pos - 1))
                self.lo[m] = lo + 1 if lo + 1 <= m - 1 else 0
                self.length -= 1
                return
            # lo + 1 <= k <= m - 1: commute below v_{k-1}, braid, walk out
            for _ in range(k - 1 - lo):
                self._emit(comm_move(self.word[pos - 1], k, pos - 1))
                pos -= 1
            self._emit(braid_move(k - 1, pos - 2, from_lhs=False))
            pos -= 2
            k -= 1
            for _ in range(m - 2 - k):  # letters v_{k+2} .. v_{m-1} of the block
                self._emit(comm_move(self.word[pos - 1], k, pos - 1))
                pos -= 1
        raise AssertionError("letter fell off the staircase")  # pragma: no cover

    def run(self) -> None:
        while self.length < len(self.word):
            self.insert_next()


def comb(letters: list[int], n: int) -> tuple[list[Move], list[int]]:
    """Moves bringing ``letters`` into staircase normal form, plus the form."""
    comber = _Comber(n, letters)
    comber.run()
    return comber.moves, comber.word


def derive(src: list[int], dst: list[int], n: int) -> list[Move]:
    """An explicit elementary-move derivation from src to dst.

    Both words must represent the same permutation of 1..n; raises
    ValueError otherwise.
    """
    if src == dst:
        return []
    if perm_of(src, n) != perm_of(dst, n):
        raise ValueError(f"words are not equal in S_{n}: {src} vs {dst}")
    moves1, nf1 = comb(src, n)
    moves2, nf2 = comb(dst, n)
    assert nf1 == nf2
    return moves1 + invert_moves(moves2)


def shift_moves(moves: list[Move], offset: int) -> list[Move]:
    return [(rid, forward, pos + offset) for rid, forward, pos in moves]
