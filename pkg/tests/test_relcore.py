import random

import pytest
from hypothesis import given, settings, strategies as st

from regperm import _bits as B
from regperm.errors import BadSpec, EnvMismatch, InputError, NotOrthogonal, NotTransitive
from regperm.relcore import (
    Relation, SubRel, TransRel, b2, chain, classify, components, full, generate, interior,
    interval, is_square_free, orthogonal, square_witness, structural_condition_iv,
    transitive_closure, closure,
)

from conftest import naive_interior, naive_tcl


def test_transitive_closure_examples():
    assert set(transitive_closure(Relation(3, [(1, 2), (2, 3)]))) == {(1, 2), (2, 3), (1, 3)}
    assert set(transitive_closure(Relation(2, [(1, 2), (2, 1)]))) == {(1, 2), (2, 1), (1, 1), (2, 2)}
    assert len(transitive_closure(Relation(4))) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(1, n), st.integers(1, n))))))
def test_closure_matches_naive(data):
    n, pairs = data
    r = Relation(n, pairs)
    c = transitive_closure(r)
    assert set(c) == naive_tcl(pairs)
    assert transitive_closure(c) == c


def test_relation_validation():
    with pytest.raises(InputError):
        Relation(3, [(0, 1)])
    with pytest.raises(InputError):
        Relation(3, [(1, 4)])
    with pytest.raises(InputError):
        Relation(0)
    with pytest.raises(InputError):
        Relation(65)
    assert len(Relation(2, [(1, 2), (1, 2)])) == 1


def test_transrel_rejects_and_closes():
    with pytest.raises(NotTransitive):
        TransRel(3, [(1, 2), (2, 3)])
    e = TransRel(3, [(1, 2), (2, 3)], close=True)
    assert (1, 3) in e
    assert e.base == Relation(3, [(1, 2), (2, 3), (1, 3)])


def test_equivalence_classes_and_preorder():
    e = TransRel(4, [(1, 2), (2, 1), (1, 1), (2, 2), (1, 3), (2, 3)])
    assert e.equiv_classes == [frozenset({1, 2}), frozenset({3}), frozenset({4})]
    assert e.leq(1, 3) and e.leq(3, 3) and not e.leq(3, 1)
    assert e.equiv(1, 2) and not e.equiv(1, 3)


def test_interior_examples():
    e = chain(3)
    assert interior(e, SubRel.from_pairs(e, [(1, 3)])).pairs() == []
    a = SubRel.from_pairs(e, [(1, 2), (1, 3)])
    assert interior(e, a) == a
    assert interior(e, SubRel.whole(e)) == SubRel.whole(e)


def test_orthogonal_examples():
    e = chain(3)
    assert set(orthogonal(e, SubRel.from_pairs(e, [(1, 2)])).pairs()) == {(2, 3), (1, 3)}
    assert orthogonal(e, SubRel.empty(e)) == SubRel.whole(e)
    assert orthogonal(e, SubRel.whole(e)) == SubRel.empty(e)


def test_env_mismatch():
    e, f = chain(3), full(3)
    with pytest.raises(EnvMismatch):
        interior(e, SubRel.whole(f))
    with pytest.raises(InputError):
        SubRel.from_pairs(e, [(2, 1)])


def test_classify_examples():
    e = chain(3)
    r = classify(e, SubRel.from_pairs(e, [(1, 3)]))
    assert r.closed and not r.open and not r.regular_closed
    r = classify(e, SubRel.empty(e))
    assert all([r.closed, r.open, r.clopen, r.regular_closed, r.regular_open])
    e = b2()
    u = SubRel.from_pairs(e, [(1, 2), (2, 4), (1, 4)])
    r = classify(e, u)
    assert r.regular_closed and not r.clopen


def _all_subsets(e):
    bits = list(B.iter_bits(e.mask))
    for k in range(1 << len(bits)):
        yield SubRel(e, sum(1 << b for i, b in enumerate(bits) if k >> i & 1))


def test_operator_laws_exhaustive(rel3):
    for e in rel3:
        if len(e) > 5:
            continue
        for a in _all_subsets(e):
            c, t = closure(e, a), interior(e, a)
            assert a <= c and closure(e, c) == c
            assert t <= a and interior(e, t) == t
            assert set(t.pairs()) == naive_interior(e.pairs(), a.pairs())
            ct = closure(e, t)
            assert closure(e, interior(e, ct)) == ct
            tc = interior(e, c)
            assert interior(e, closure(e, tc)) == tc
            r = classify(e, a)
            rc = classify(e, a.complement())
            assert r.closed == rc.open
            assert r.regular_closed == rc.regular_open
            assert r.consistent()
            if r.closed:
                # complement of a closed set is open, and the closure of an open set is regular closed
                assert classify(e, orthogonal(e, a)).regular_closed


def test_operator_monotone_random():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(3, 6)
        e = TransRel.from_mask(n, B.tcl(rng.getrandbits(n * n), n))
        a = SubRel(e, e.mask & rng.getrandbits(n * n))
        b = a | SubRel(e, e.mask & rng.getrandbits(n * n))
        assert closure(e, a) <= closure(e, b)
        assert interior(e, a) <= interior(e, b)


def test_square_free_interior_of_closed_is_closed(rel3):
    for e in rel3:
        if len(e) > 5 or not is_square_free(e):
            continue
        for a in _all_subsets(e):
            r = classify(e, a)
            if r.closed:
                assert classify(e, interior(e, a)).closed
            if r.open:
                assert classify(e, closure(e, a)).open


def test_interval_examples():
    e = chain(3)
    assert interval(e, 1, 3).members == {1, 2, 3}
    assert interval(e, 1, 3, "oc").members == {2, 3}
    assert interval(e, 1, 3, "co").members == {1, 2}
    assert interval(full(3), 1, 1).members == {1, 2, 3}


def test_square_free_examples():
    assert not is_square_free(b2())
    assert square_witness(b2())[:2] == (1, 4)
    for n in range(1, 5):
        assert is_square_free(full(n))
        assert is_square_free(chain(n))


def test_components_examples():
    assert components(TransRel(3, [(1, 2)])) == [frozenset({1, 2}), frozenset({3})]
    assert components(full(3)) == [frozenset({1, 2, 3})]
    assert components(generate("sum:(chain:2,loop2)")) == [frozenset({1, 2}), frozenset({3, 4})]


def test_structural_condition_iv_examples():
    assert structural_condition_iv(chain(4))
    assert structural_condition_iv(b2())
    assert structural_condition_iv(full(2))
    assert not structural_condition_iv(full(3))
    assert structural_condition_iv(generate("sum:(full:2,chain:3,full:2)"))


def test_generate_examples():
    assert set(generate("chain:3")) == {(1, 2), (2, 3), (1, 3)}
    assert set(generate("full:2")) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    assert set(generate("b2")) == {(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)}
    assert generate("loop2") == full(2)
    assert set(generate("diag:3:1,3")) == {(1, 1), (3, 3)}
    assert set(generate("poset:4:1<2<4,1<3<4")) == set(b2())
    assert set(generate("sum:(chain:2,diag:1)")) == {(1, 2), (3, 3)}
    assert set(generate("union:(chain:2,diag:3:3)")) == {(1, 2), (3, 3)}


def test_generate_errors():
    for bad in ["chain:x", "nope", "sum:chain:2", "poset:3:1<2,2<1", "sum:(chain:2", "chain:0"]:
        with pytest.raises(BadSpec):
            generate(bad)
    with pytest.raises(NotOrthogonal):
        generate("union:(chain:2,poset:3:2<3)")
    with pytest.raises(NotOrthogonal):
        generate("union:(chain:2,chain:2)")
    # loops do not break orthogonality: p ≠ q ≠ r is required
    assert set(generate("union:(chain:2,diag:2)")) == {(1, 1), (1, 2), (2, 2)}
