import pytest

from regperm import _bits as B
from regperm.errors import NotInF
from regperm.jirr import (
    JirrTriple, canonical, enumerate_jirr, find_triple, iter_f_triples, jirr_masks, lower_cover,
    open_witnesses, realize,
)
from regperm.relcore import SubRel, b2, chain, classify, full, is_open_mask

from conftest import naive_join_irreducibles, naive_reg, pairs_set


def T(a, b, *U):
    return JirrTriple(a, b, frozenset(U))


def test_realize_examples():
    assert set(realize(full(2), T(1, 1, 2)).pairs()) == {(1, 1), (1, 2)}
    assert set(realize(full(2), T(1, 1)).pairs()) == {(1, 1), (2, 1)}
    assert set(realize(chain(3), T(1, 3, 3)).pairs()) == {(1, 3), (2, 3)}


def test_lower_cover_examples():
    assert set(lower_cover(full(2), T(1, 1, 2)).pairs()) == {(1, 2)}
    assert lower_cover(chain(3), T(1, 2, 2)).pairs() == []
    assert lower_cover(full(3), T(1, 2, 2, 3)).pairs() == []


@pytest.mark.parametrize("t", [T(2, 1, 1), T(1, 3, 2), T(1, 3, 1, 3), T(1, 3, 4), T(1, 4, 4)])
def test_not_in_f(t):
    with pytest.raises(NotInF):
        realize(chain(3), t)


def test_clepsydra_canonical():
    assert canonical(T(1, 1, 1, 2)) == T(1, 1, 2)
    e = full(2)
    assert realize(e, T(1, 1, 1, 2)) == realize(e, T(1, 1, 2))
    assert str(T(1, 3, 2, 3)) == "<1,3,{2,3}>"


def test_chain3_list():
    got = {pairs_set(j.p) for j in enumerate_jirr(chain(3))}
    assert got == {
        frozenset({(1, 2)}), frozenset({(2, 3)}),
        frozenset({(1, 3), (2, 3)}), frozenset({(1, 2), (1, 3)}),
    }


def test_b2_list_matches_named_elements():
    # labels 0, a, b, 1 become 1, 2, 3, 4
    named = {
        "a0": {(1, 2)}, "a1": {(2, 4)}, "b0": {(1, 3)}, "b1": {(3, 4)},
        "c00": {(1, 2), (1, 3), (1, 4)}, "c01": {(1, 2), (3, 4), (1, 4)},
        "c10": {(2, 4), (1, 3), (1, 4)}, "c11": {(2, 4), (3, 4), (1, 4)},
    }
    got = {pairs_set(j.p) for j in enumerate_jirr(b2())}
    assert got == {frozenset(v) for v in named.values()}


def test_full2_list_matches_named_elements():
    named = [
        {(1, 2)}, {(1, 1), (1, 2)}, {(2, 2), (1, 2)},
        {(2, 1)}, {(1, 1), (2, 1)}, {(2, 2), (2, 1)},
    ]
    js = enumerate_jirr(full(2))
    assert {pairs_set(j.p) for j in js} == {frozenset(v) for v in named}
    assert sum(j.clepsydra for j in js) == 4


def test_enumeration_sorted_and_canonical(rel3):
    for e in rel3:
        js = enumerate_jirr(e)
        masks = [j.p.mask for j in js]
        assert masks == sorted(set(masks))
        for j in js:
            assert canonical(j.triple) == j.triple
            assert realize(e, j.triple) == j.p
            assert find_triple(e, j.triple) == masks.index(j.p.mask)


def test_realized_sets_clopen_with_clopen_cover(rel3, rand4):
    for e in list(rel3) + list(rand4[:60]):
        for t in iter_f_triples(e):
            p, ps = realize(e, t), lower_cover(e, t)
            assert classify(e, p).clopen
            assert classify(e, ps).clopen
            assert ps < p
            assert (t.a, t.b) in set(p.pairs())
            assert any(x == y for x, y in p.pairs()) == t.clepsydra


def test_matches_lattice_scan(small_corpus):
    """Join-irreducibles of the brute-force Reg(e) are exactly the enumerated ones."""
    for e in small_corpus:
        reg = naive_reg(e.pairs())
        expected = set(naive_join_irreducibles(reg))
        got = {pairs_set(j.p) for j in enumerate_jirr(e)}
        assert got == expected, e


def test_lower_cover_is_unique_cover(small_corpus):
    for e in small_corpus:
        reg = naive_reg(e.pairs())
        for j in enumerate_jirr(e):
            p = pairs_set(j.p)
            below = [y for y in reg if y < p]
            assert max(below, key=len) == pairs_set(j.p_star)
            assert all(y <= pairs_set(j.p_star) for y in below)


def test_open_sets_are_unions_of_jirr(rel3):
    for e in rel3:
        if len(e) > 5:
            continue
        bits = list(B.iter_bits(e.mask))
        for k in range(1 << len(bits)):
            u = sum(1 << b for i, b in enumerate(bits) if k >> i & 1)
            if not is_open_mask(e, u):
                continue
            wit = open_witnesses(e, u)
            assert set(wit) == set(B.iter_bits(u))
            for bit, t in wit.items():
                p = realize(e, t).mask
                assert p >> bit & 1 and p & ~u == 0


def test_realize_injective_on_enumerated(rel3):
    for e in rel3:
        masks = jirr_masks(e)
        assert len(masks) == len(set(masks))


def test_empty_relation():
    from regperm.relcore import empty
    assert enumerate_jirr(empty(3)) == []
    assert SubRel.empty(empty(3)).pairs() == []
