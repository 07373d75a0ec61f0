import random

import pytest

from vbraids.words import (
    BraidWord,
    GroupKind,
    Permutation,
    WordError,
    compose,
    format_word,
    free_reduce,
    identity,
    inverse,
    parse_word,
    permutation_image,
)

ALL_KINDS = list(GroupKind)


def random_word(rng, kind, n, max_len=12):
    fams = sorted(kind.families)
    letters = []
    for _ in range(rng.randint(0, max_len)):
        if n < 2:
            break
        fam = rng.choice(fams)
        tok = f"{fam}{rng.randint(1, n - 1)}"
        if fam == "s" and rng.random() < 0.3:
            tok += "^-1"
        letters.append(tok)
    return parse_word(" ".join(letters), kind, n)


def test_parse_basic():
    w = parse_word("v1 s1 s1", GroupKind.VB, 2)
    assert [g.token for g in w.letters] == ["v1", "s1", "s1"]
    assert parse_word("", GroupKind.VB, 3).is_identity()
    assert parse_word("e", GroupKind.VB, 3).is_identity()


@pytest.mark.parametrize(
    "text,kind,n",
    [
        ("c1", GroupKind.VB, 3),
        ("s1", GroupKind.S, 3),
        ("s1^-1", GroupKind.FV, 3),
        ("v1^-1", GroupKind.VB, 3),
        ("v3", GroupKind.VB, 3),
        ("v0", GroupKind.VB, 3),
        ("q1", GroupKind.VB, 3),
    ],
)
def test_parse_rejects(text, kind, n):
    with pytest.raises(WordError):
        parse_word(text, kind, n)


def test_format_round_trip_random():
    rng = random.Random(0)
    for _ in range(300):
        kind = rng.choice(ALL_KINDS)
        n = rng.randint(1, 6)
        w = random_word(rng, kind, n)
        assert parse_word(format_word(w), kind, n) == w
    assert format_word(identity(GroupKind.VB, 3)) == "e"


def test_compose_and_identity():
    a = parse_word("v1", GroupKind.VB, 2)
    b = parse_word("s1", GroupKind.VB, 2)
    assert format_word(compose(a, b)) == "v1 s1"
    assert compose(a, identity(GroupKind.VB, 2)) == a
    with pytest.raises(WordError):
        compose(a, parse_word("v1", GroupKind.VB, 3))
    with pytest.raises(WordError):
        compose(a, parse_word("v1", GroupKind.WB, 2))


def test_inverse():
    w = parse_word("v1 s1", GroupKind.VB, 2)
    assert format_word(inverse(w)) == "s1^-1 v1"
    assert inverse(identity(GroupKind.VB, 2)).is_identity()
    rng = random.Random(1)
    for _ in range(200):
        kind = rng.choice(ALL_KINDS)
        n = rng.randint(2, 6)
        w = random_word(rng, kind, n)
        assert free_reduce(compose(w, inverse(w))).is_identity()
        assert free_reduce(inverse(inverse(w))) == free_reduce(w)


def test_free_reduce():
    assert free_reduce(parse_word("v1 v1", GroupKind.VB, 2)).is_identity()
    assert free_reduce(parse_word("s1 s1^-1", GroupKind.VB, 2)).is_identity()
    kept = parse_word("s1 s1", GroupKind.VB, 2)
    assert free_reduce(kept) == kept
    assert free_reduce(parse_word("c1 c1", GroupKind.FV, 3)).is_identity()


def test_free_reduce_idempotent_and_shortening():
    rng = random.Random(2)
    for _ in range(300):
        kind = rng.choice(ALL_KINDS)
        n = rng.randint(2, 6)
        w = random_word(rng, kind, n)
        r = free_reduce(w)
        assert len(r) <= len(w)
        assert free_reduce(r) == r
        # no reducible adjacent pair survives
        for a, b in zip(r.letters, r.letters[1:]):
            if a.index != b.index:
                continue
            if a.family == "s":
                assert not (b.family == "s" and a.inverse != b.inverse)
            else:
                assert a != b or a.family not in kind.involutive_families
        assert permutation_image(r) == permutation_image(w)


def test_permutation_image_examples():
    assert permutation_image(parse_word("v1", GroupKind.VB, 2)).images == (2, 1)
    assert permutation_image(identity(GroupKind.VB, 4)).is_identity()
    assert permutation_image(parse_word("s1 v2", GroupKind.VB, 3)).images == (3, 1, 2)
    assert permutation_image(parse_word("v1 s1", GroupKind.VB, 2)).is_identity()


def test_permutation_image_homomorphism():
    rng = random.Random(3)
    for _ in range(200):
        kind = rng.choice(ALL_KINDS)
        n = rng.randint(2, 6)
        a = random_word(rng, kind, n)
        b = random_word(rng, kind, n)
        assert permutation_image(compose(a, b)) == permutation_image(a).then(
            permutation_image(b)
        )


def test_torsion_witness():
    w = parse_word("v1 v1", GroupKind.VB, 2)
    assert free_reduce(w).is_identity()
    assert not permutation_image(parse_word("v1", GroupKind.VB, 2)).is_identity()


def test_permutation_type():
    p = Permutation((2, 3, 1))
    assert p(1) == 2 and p.inverse()(2) == 1
    assert p.cycles() == [(1, 2, 3)]
    with pytest.raises(WordError):
        Permutation((1, 1, 2))


def test_trivial_group_n1():
    w = parse_word("", GroupKind.VB, 1)
    assert w.is_identity()
    assert permutation_image(w).images == (1,)
    with pytest.raises(WordError):
        parse_word("v1", GroupKind.VB, 1)
