import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexorder.supernat import (
    INF,
    EquivWitness,
    Supernatural,
    SupernaturalPair,
    aut_rank,
    divides,
    equals,
    format_pair,
    format_supernatural,
    from_seq,
    mul,
    pair_equiv,
    pair_equiv_oracle,
    parse_pair,
    parse_supernatural,
)
from lexorder.orderdsl import ValueSeq


def sn(**kw):
    return Supernatural({int(k[1:]): v for k, v in kw.items()})


def pair(r, s):
    return SupernaturalPair(r, s)


TWO_INF = sn(p2=INF)
THREE_INF = sn(p3=INF)
FIVE_INF = sn(p5=INF)
ONE = Supernatural.one()


def test_from_seq_absorbs_prefix_into_infinite_exponent():
    assert from_seq(ValueSeq((4,), (2,))) == TWO_INF


def test_from_seq_finite_product():
    assert from_seq(ValueSeq((2, 3), ())) == Supernatural({2: 1, 3: 1})


def test_from_seq_cycle_primes_all_infinite():
    assert from_seq(ValueSeq((), (2, 3))) == mul(TWO_INF, THREE_INF)


def test_mul_absorption():
    assert mul(TWO_INF, Supernatural.from_int(4)) == TWO_INF
    assert mul(Supernatural.from_int(6), Supernatural.from_int(10)) == Supernatural.from_int(60)
    assert mul(TWO_INF, THREE_INF) == Supernatural({2: INF, 3: INF})


def test_equals_and_divides():
    assert equals(TWO_INF, mul(Supernatural.from_int(2), TWO_INF))
    assert divides(Supernatural.from_int(12), mul(TWO_INF, THREE_INF))
    assert not divides(Supernatural.from_int(5), mul(TWO_INF, THREE_INF))
    assert not divides(TWO_INF, Supernatural.from_int(8))


def test_pair_equiv_transfer_witness():
    a = pair(mul(Supernatural.from_int(2), THREE_INF), FIVE_INF)
    b = pair(THREE_INF, mul(Supernatural.from_int(2), FIVE_INF))
    v = pair_equiv(a, b)
    assert v.equivalent and v.witness == EquivWitness(2, 1)


def test_pair_equiv_infinity_obstruction():
    v = pair_equiv(pair(TWO_INF, THREE_INF), pair(THREE_INF, TWO_INF))
    assert not v.equivalent
    assert "prime 2" in v.reason


def test_pair_equiv_finite_pairs():
    v = pair_equiv(pair(Supernatural.from_int(2), Supernatural.from_int(3)),
                   pair(Supernatural.from_int(6), ONE))
    assert v.equivalent and v.witness == EquivWitness(1, 3)


def test_pair_equiv_identity():
    p = pair(TWO_INF, Supernatural.from_int(7))
    v = pair_equiv(p, p)
    assert v.equivalent and v.witness == EquivWitness(1, 1)


def test_oracle_finds_small_witness():
    v = pair_equiv_oracle(pair(Supernatural.from_int(2), Supernatural.from_int(3)),
                          pair(Supernatural.from_int(6), ONE), bound=10)
    assert v.equivalent and v.witness == EquivWitness(1, 3)


def test_oracle_identity_with_unit_bound():
    p = pair(TWO_INF, THREE_INF)
    v = pair_equiv_oracle(p, p, bound=1)
    assert v.equivalent and v.witness == EquivWitness(1, 1)


def test_oracle_inconclusive_on_infinite_mismatch():
    v = pair_equiv_oracle(pair(TWO_INF, THREE_INF), pair(THREE_INF, TWO_INF), bound=100)
    assert not v.equivalent and v.witness is None


def test_aut_rank():
    assert aut_rank(pair(TWO_INF, TWO_INF)) == 1
    both = mul(TWO_INF, THREE_INF)
    assert aut_rank(pair(both, both)) == 2
    assert aut_rank(pair(TWO_INF, THREE_INF)) == 0
    assert aut_rank(pair(ONE, ONE)) == 0


def test_witness_must_be_coprime():
    with pytest.raises(ValueError):
        EquivWitness(2, 4)


exponents = st.sampled_from([0, 1, 2, INF])


@st.composite
def pairs(draw):
    def one_supernatural():
        return Supernatural({p: e for p in (2, 3, 5)
                             if (e := draw(exponents)) != 0})
    return SupernaturalPair(one_supernatural(), one_supernatural())


@settings(max_examples=200, deadline=None)
@given(pairs(), pairs())
def test_pair_equiv_symmetric_and_product_necessary(a, b):
    ab = pair_equiv(a, b)
    assert ab.equivalent == pair_equiv(b, a).equivalent
    if ab.equivalent:
        assert mul(a.r, a.s) == mul(b.r, b.s)
        w = ab.witness
        wa, wb = Supernatural.from_int(w.a), Supernatural.from_int(w.b)
        assert mul(wb, a.r) == mul(wa, b.r)
        assert mul(wa, a.s) == mul(wb, b.s)


@settings(max_examples=100, deadline=None)
@given(pairs())
def test_pair_equiv_reflexive(a):
    assert pair_equiv(a, a).equivalent


def test_transitive_on_constructed_chain():
    rng = random.Random(7)
    for _ in range(50):
        base = SupernaturalPair(
            Supernatural({2: rng.choice([0, 1, INF]), 3: rng.choice([0, 2, INF])}),
            Supernatural({3: rng.choice([0, 1, INF]), 5: rng.choice([0, 1, INF])}))
        a = SupernaturalPair(mul(Supernatural.from_int(2), base.r),
                             mul(Supernatural.from_int(3), base.s))
        b = SupernaturalPair(mul(Supernatural.from_int(3), base.r),
                             mul(Supernatural.from_int(2), base.s))
        assert pair_equiv(a, base).equivalent or pair_equiv(a, b).equivalent
        if pair_equiv(a, b).equivalent and pair_equiv(b, base).equivalent:
            assert pair_equiv(a, base).equivalent


def test_text_round_trip():
    for text in ["1", "2^inf*3", "2*3^2*5^inf", "7"]:
        assert format_supernatural(parse_supernatural(text)) == text
    p = parse_pair("(2^inf*3, 5^inf)")
    assert p.r == mul(TWO_INF, Supernatural.from_int(3))
    assert format_pair(p) == "(2^inf*3, 5^inf)"


def test_parse_composite_base():
    assert parse_supernatural("12") == Supernatural.from_int(12)
    assert parse_supernatural("6^inf") == Supernatural({2: INF, 3: INF})


def test_rejects_bad_values():
    with pytest.raises(ValueError):
        Supernatural({4: 1})
    with pytest.raises(ValueError):
        Supernatural({2: -1})
    with pytest.raises(ValueError):
        parse_supernatural("1*2")
