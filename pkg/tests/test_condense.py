import random

import pytest

from lexorder.condense import (
    ClassificationSignature,
    CondensationClass,
    DenseBlock,
    FINITE,
    OMEGA,
    OMEGA_STAR,
    SingleBlock,
    ZETA,
    class_invariant,
    condense,
    format_signature,
    merged_atoms,
    normalize_signature,
    single_class_coordinates,
)
from lexorder.orderdsl import ChainColor, ValueSeq, normalize, parse_term
from lexorder.oracle import interval_is_finite, random_term
from lexorder.supernat import INF, ONE, Supernatural, SupernaturalPair, mul, pair_equiv

TWO_INF = Supernatural({2: INF})
THREE_INF = Supernatural({3: INF})


def single(sig, i=0):
    block = sig.blocks[i]
    assert isinstance(block, SingleBlock)
    return block.cls


def test_two_sided_merge_collects_middle():
    sig = condense(parse_term("omega*([](2)^w) + fin[3] + omega([](2)^w)"))
    assert len(sig.blocks) == 1
    cls = single(sig)
    assert cls.kind == ZETA
    assert cls.pair == SupernaturalPair(mul(Supernatural.from_int(3), TWO_INF), TWO_INF)


def test_finite_class():
    sig = condense(parse_term("fin[2,2]"))
    cls = single(sig)
    assert cls.kind == FINITE and cls.size == 2
    assert cls.pair == SupernaturalPair(Supernatural.from_int(4), ONE)


def test_omega_then_omega_star_stay_apart():
    sig = condense(parse_term("omega([](2)^w) + omega*([](3)^w)"))
    assert len(sig.blocks) == 2
    assert single(sig, 0).pair == SupernaturalPair(TWO_INF, ONE)
    assert single(sig, 1).pair == SupernaturalPair(ONE, THREE_INF)


def test_alternating_class():
    sig = condense(parse_term("zeta([](2)^w;[](2)^w)"))
    assert single(sig).pair == SupernaturalPair(TWO_INF, TWO_INF)


def test_class_invariant_defined_up_to_equivalence():
    cls = single(condense(parse_term("omega*([](2)^w) + fin[3] + omega([](2)^w)")))
    flipped = SupernaturalPair(TWO_INF, mul(Supernatural.from_int(3), TWO_INF))
    assert pair_equiv(class_invariant(cls), flipped).equivalent


def test_simple_class_invariants():
    assert single(condense(parse_term("fin[2,3]"))).pair == \
        SupernaturalPair(Supernatural.from_int(6), ONE)
    assert single(condense(parse_term("omega([](2)^w)"))).pair == SupernaturalPair(TWO_INF, ONE)


def test_dense_merge_rule_a():
    sig = condense(parse_term("eta{2} + eta{2}"))
    assert sig.blocks == (DenseBlock(frozenset({ChainColor(2)})),)


def test_dense_absorbs_matching_finite_point():
    sig = condense(parse_term("eta{2,3} + fin[3] + eta{2,3}"))
    assert sig.blocks == (DenseBlock(frozenset({ChainColor(2), ChainColor(3)})),)


def test_dense_keeps_unmatched_finite_point():
    sig = condense(parse_term("eta{2} + fin[3] + eta{2}"))
    assert len(sig.blocks) == 3


def test_dense_product_rule_uses_class_product():
    # a two-element finite class of product 6 may land on a dense 6-color
    sig = condense(parse_term("eta{6} + fin[2,3] + eta{6}"))
    assert sig.blocks == (DenseBlock(frozenset({ChainColor(6)})),)


def test_rewrites_cascade_to_fixpoint():
    sig = condense(parse_term("eta{2} + fin[2] + eta{2} + eta{2}"))
    assert sig.blocks == (DenseBlock(frozenset({ChainColor(2)})),)


def test_trivial_term_has_empty_signature():
    assert condense(parse_term("fin[1,1]")) == ClassificationSignature(())
    assert format_signature(condense(parse_term("fin[]"))) == "(empty)"


def test_signature_of_normalized_term_is_unchanged():
    rng = random.Random(5)
    for _ in range(200):
        t = random_term(rng)
        assert condense(t) == condense(normalize(t))


def test_adjacency_sanity_on_corpus():
    rng = random.Random(6)
    for _ in range(200):
        sig = condense(random_term(rng))
        for i in range(len(sig.blocks) - 1):
            a, b = sig.blocks[i], sig.blocks[i + 1]
            if isinstance(a, SingleBlock) and isinstance(b, SingleBlock):
                assert not (a.cls.kind in (FINITE, OMEGA_STAR)
                            and b.cls.kind in (FINITE, OMEGA))


def test_merge_matches_interval_oracle():
    term = normalize(parse_term("omega*([](2)^w) + fin[3] + omega([](2)^w)"))
    groups = merged_atoms(term)
    assert len(groups) == 1 and set(groups[0][1]) == {0, 1, 2}
    assert interval_is_finite(term, (0, -1), (2, 4))
    unmerged = normalize(parse_term("omega([](2)^w) + omega*([](3)^w)"))
    assert len(merged_atoms(unmerged)) == 2
    assert not interval_is_finite(unmerged, (0, 3), (1, -2))


def test_kind_pair_consistency_enforced():
    with pytest.raises(ValueError):
        CondensationClass(OMEGA, SupernaturalPair(ONE, ONE))
    with pytest.raises(ValueError):
        CondensationClass(FINITE, SupernaturalPair(TWO_INF, ONE), size=1)
    with pytest.raises(ValueError):
        CondensationClass(ZETA, SupernaturalPair(TWO_INF, ONE))


def test_normalize_signature_validates_output():
    dense = DenseBlock(frozenset({ChainColor(2)}))
    assert normalize_signature([dense, dense]).blocks == (dense,)
    with pytest.raises(ValueError):
        ClassificationSignature((dense, dense))


def test_single_class_coordinates():
    left, right = single_class_coordinates(parse_term("omega*([](2)^w) + fin[3] + omega([](2)^w)"))
    assert left == ValueSeq((), (2,))
    assert right == ValueSeq((3,), (2,))
    left, right = single_class_coordinates(parse_term("fin[2,3]"))
    assert left is None and right == (2, 3)
    left, right = single_class_coordinates(parse_term("omega*([](2)^w)"))
    assert left == ValueSeq((), (2,)) and right is None
    assert single_class_coordinates(parse_term("fin[1]")) == (None, ())
    with pytest.raises(ValueError):
        single_class_coordinates(parse_term("omega([](2)^w) + omega*([](2)^w)"))
    with pytest.raises(ValueError):
        single_class_coordinates(parse_term("eta{2}"))


def test_format_signature_shapes():
    text = format_signature(condense(parse_term("eta{2,3} + fin[2,3] + eta{5}")))
    assert text == "[dense:{2,3}] [fin:6] [dense:{5}]"
    text = format_signature(condense(parse_term("eta{poset(3;1<3,2<3)}")))
    assert text == "[dense:{poset(3;2<1,3<1)}]"  # canonical relabeling of the V shape


def test_two_sided_classes_block_finite_absorption_across():
    # a finite class between two-sided classes touches neither
    sig = condense(parse_term("zeta([](2)^w;[](2)^w) + fin[3] + zeta([](2)^w;[](2)^w)"))
    assert len(sig.blocks) == 3
    assert single(sig, 1).kind == FINITE
