import pytest

from vbraids.presentations import (
    REDUCED,
    SINGLE_WELDED,
    PresentationError,
    derived_detour_relations,
    expand_sigma,
    expand_v_welded,
    expand_word,
    full_presentation,
    presentation_to_json,
    reduced_presentation,
    relator_symmetric_check,
    serialize_presentation,
)
from vbraids.words import GroupKind, format_word, parse_word, permutation_image

REDUCIBLE = [GroupKind.VB, GroupKind.FV, GroupKind.WB, GroupKind.UB, GroupKind.FU]


def test_full_vb3_relators():
    p = full_presentation(GroupKind.VB, 3)
    ids = sorted(r.id for r in p.relators)
    assert ids == [
        "braid(1)",
        "special-detour(1)",
        "virt-braid(1)",
        "virt-inv(1)",
        "virt-inv(2)",
    ]
    assert len(p.relators) == 5
    assert [g.token for g in p.generators] == ["s1", "s2", "v1", "v2"]


def test_full_fv2_is_free_product_of_s2s():
    p = full_presentation(GroupKind.FV, 2)
    assert sorted(r.id for r in p.relators) == ["flat-inv(1)", "virt-inv(1)"]


def test_full_s2():
    p = full_presentation(GroupKind.S, 2)
    assert [g.token for g in p.generators] == ["v1"]
    assert [r.id for r in p.relators] == ["virt-inv(1)"]


def test_forbidden_families():
    wb = full_presentation(GroupKind.WB, 4)
    assert {r.id for r in wb.relators} >= {"F1(1)", "F1(2)"}
    ub = full_presentation(GroupKind.UB, 4)
    assert {r.id for r in ub.relators} >= {"F1(1)", "F2(1)", "F2(2)"}
    fu = full_presentation(GroupKind.FU, 4)
    assert {r.id for r in fu.relators} >= {"flat-forbidden(1)", "flat-forbidden(2)"}
    f1 = wb.relator_map()["F1(1)"]
    assert format_word(f1.lhs) == "v1 s2 s1" and format_word(f1.rhs) == "s2 s1 v2"


def test_reduced_vb():
    p = reduced_presentation(GroupKind.VB, 4)
    ids = {r.id for r in p.relators}
    assert ids == {
        "virt-braid(1)",
        "virt-braid(2)",
        "virt-comm(1,3)",
        "virt-inv(1)",
        "virt-inv(2)",
        "virt-inv(3)",
        "sigma1-comm(3)",
        "main-braid",
        "main-comm",
    }
    main_comm = p.relator_map()["main-comm"]
    assert format_word(main_comm.lhs) == "s1 v2 v3 v1 v2 s1 v2 v1 v3 v2"
    assert format_word(main_comm.rhs) == "v2 v3 v1 v2 s1 v2 v1 v3 v2 s1"
    assert [g.token for g in p.generators] == ["s1", "v1", "v2", "v3"]


def test_reduced_vb2_minimal():
    p = reduced_presentation(GroupKind.VB, 2)
    assert [r.id for r in p.relators] == ["virt-inv(1)"]
    assert [g.token for g in p.generators] == ["s1", "v1"]


def test_reduced_small_n_filtering():
    for kind in REDUCIBLE:
        for n in (1, 2, 3):
            p = reduced_presentation(kind, n)
            for r in p.relators:
                for g in r.lhs.letters + r.rhs.letters:
                    assert g.index <= n - 1


def test_reduced_forbidden_basics():
    wb = reduced_presentation(GroupKind.WB, 4).relator_map()
    assert format_word(wb["F1-basic"].lhs) == "v1 v2 s1 v2 v1 s1"
    assert format_word(wb["F1-basic"].rhs) == "v2 s1 v2 v1 s1 v2"
    ub = reduced_presentation(GroupKind.UB, 4).relator_map()
    assert format_word(ub["F2-basic"].lhs) == "s1 v1 v2 s1 v2 v1"
    assert format_word(ub["F2-basic"].rhs) == "v2 s1 v1 v2 s1 v2"
    fu = reduced_presentation(GroupKind.FU, 4).relator_map()
    assert format_word(fu["flat-forbidden-basic"].lhs) == "v1 v2 c1 v2 v1 c1"


def test_single_welded():
    p = reduced_presentation(GroupKind.WB, 4, SINGLE_WELDED)
    assert [g.token for g in p.generators] == ["v1", "s1", "s2", "s3"]
    ids = {r.id for r in p.relators}
    assert {"welded-conj-braid", "welded-conj-comm", "v1-inv", "v1-comm(3)"} <= ids
    with pytest.raises(PresentationError):
        reduced_presentation(GroupKind.VB, 4, SINGLE_WELDED)
    with pytest.raises(PresentationError):
        reduced_presentation(GroupKind.B, 4)


def test_symmetric_check_all_presentations():
    for kind in GroupKind:
        for n in range(1, 8):
            assert relator_symmetric_check(full_presentation(kind, n)).passed
    for kind in REDUCIBLE:
        for n in range(1, 8):
            assert relator_symmetric_check(reduced_presentation(kind, n)).passed
    for n in range(1, 8):
        assert relator_symmetric_check(
            reduced_presentation(GroupKind.WB, n, SINGLE_WELDED)
        ).passed


def test_relator_counts_monotone():
    for kind in GroupKind:
        prev = 0
        for n in range(2, 8):
            cnt = len(full_presentation(kind, n).relators)
            assert cnt >= prev
            prev = cnt


def test_expand_sigma():
    assert format_word(expand_sigma(1, 4, GroupKind.VB)) == "s1"
    assert format_word(expand_sigma(2, 4, GroupKind.VB)) == "v1 v2 s1 v2 v1"
    assert format_word(expand_sigma(3, 4, GroupKind.VB)) == "v2 v1 v3 v2 s1 v2 v3 v1 v2"
    assert format_word(expand_sigma(2, 4, GroupKind.FV)) == "v1 v2 c1 v2 v1"
    for t in range(1, 7):
        w = expand_sigma(t, 8, GroupKind.VB)
        assert len(w) == 4 * (t - 1) + 1
        assert sum(1 for g in w.letters if g.family == "s") == 1
    with pytest.raises(PresentationError):
        expand_sigma(4, 4, GroupKind.VB)
    with pytest.raises(PresentationError):
        expand_sigma(2, 4, GroupKind.B)


def test_expand_word():
    w = parse_word("s2", GroupKind.VB, 3)
    assert format_word(expand_word(w)) == "v1 v2 s1 v2 v1"
    assert format_word(expand_word(parse_word("v1", GroupKind.VB, 3))) == "v1"
    inv = expand_word(parse_word("s2^-1", GroupKind.VB, 3))
    assert format_word(inv) == "v1 v2 s1^-1 v2 v1"


def test_expand_word_preserves_permutation():
    import random

    rng = random.Random(4)
    for _ in range(200):
        kind = rng.choice(REDUCIBLE)
        n = rng.randint(2, 6)
        fams = sorted(kind.families)
        toks = []
        for _ in range(rng.randint(0, 10)):
            fam = rng.choice(fams)
            tok = f"{fam}{rng.randint(1, n - 1)}"
            if fam == "s" and rng.random() < 0.3:
                tok += "^-1"
            toks.append(tok)
        w = parse_word(" ".join(toks), kind, n)
        assert permutation_image(expand_word(w)) == permutation_image(w)


def test_expand_v_welded():
    assert format_word(expand_v_welded(1, 4)) == "v1"
    assert format_word(expand_v_welded(2, 4)) == "s1^-1 s2^-1 v1 s2 s1"
    for n in range(2, 7):
        for t in range(1, n):
            img = permutation_image(expand_v_welded(t, n))
            want = list(range(1, n + 1))
            want[t - 1], want[t] = want[t], want[t - 1]
            assert img.images == tuple(want)


def test_main_relators_reflect_braid_relations():
    # substituting the expansion into s1 s2 s1 = s2 s1 s2 and into
    # s1 s3 = s3 s1 matches the main reduced relations at the permutation level
    n = 4
    red = reduced_presentation(GroupKind.VB, n).relator_map()
    lhs = expand_word(parse_word("s1 s2 s1", GroupKind.VB, n))
    rhs = expand_word(parse_word("s2 s1 s2", GroupKind.VB, n))
    assert permutation_image(lhs) == permutation_image(red["main-braid"].lhs)
    assert permutation_image(rhs) == permutation_image(red["main-braid"].rhs)
    lhs2 = expand_word(parse_word("s1 s3", GroupKind.VB, n))
    assert permutation_image(lhs2) == permutation_image(red["main-comm"].lhs)


def test_derived_detour_relations():
    rels = {r.id: r for r in derived_detour_relations(GroupKind.VB, 4)}
    assert format_word(rels["detour-var1(1)"].lhs) == "s1^-1 v2 v1"
    assert format_word(rels["detour-var1(1)"].rhs) == "v2 v1 s2^-1"
    assert "detour-var2+(2)" in rels and "detour-var3-(1)" in rels
    flat = {r.id for r in derived_detour_relations(GroupKind.FV, 4)}
    assert "flat-detour-var2(1)" in flat


def test_serialization():
    p = reduced_presentation(GroupKind.VB, 3)
    text = serialize_presentation(p)
    assert "generator s1" in text and "relator main-braid:" in text
    js = presentation_to_json(p)
    assert js["schema"] == 1 and js["kind"] == "VB" and js["flavor"] == REDUCED
