import numpy as np
import pytest

from regperm import _bits as B
from regperm.errors import CapExceeded, InputError
from regperm.latbuild import (
    Lattice, Poset, boolean_lattice, build_clop, build_reg, build_reg_bruteforce, chain_lattice,
    dual, find_isomorphism, hasse_dot, is_dually_isomorphic, is_isomorphic, is_lattice,
    is_order_isomorphism, orth_index, product, verify_macneille, verify_ortholattice, verify_spatial,
)
from regperm.relcore import b2, chain, empty, full, generate
from regperm.relcore import SubRel, is_closed_mask, is_open_mask

from conftest import naive_reg, naive_tcl, naive_interior, pairs_set


def as_sets(L):
    return {frozenset(L.element(i).pairs()) for i in range(L.size)}


@pytest.mark.parametrize("spec, size", [("chain:3", 6), ("b2", 20), ("full:3", 74), ("empty:3", 1),
                                        ("full:2", 10), ("chain:4", 24)])
def test_reg_sizes(spec, size):
    L = build_reg(generate(spec))
    assert L.size == size
    assert L.masks[L.bottom] == 0
    assert L.masks[L.top] == L.env.mask


def test_reg_matches_subset_scan(small_corpus):
    for e in small_corpus:
        assert as_sets(build_reg(e)) == set(naive_reg(e.pairs()))


def test_reg_matches_bruteforce_builder(rel3, rand4):
    for e in list(rel3) + [e for e in rand4 if len(e) <= 12]:
        assert build_reg(e).masks == build_reg_bruteforce(e).masks


def test_cap():
    with pytest.raises(CapExceeded):
        build_reg(full(3), cap=50)
    with pytest.raises(CapExceeded):
        build_reg_bruteforce(full(5))


@pytest.mark.parametrize("spec, size, lattice", [("b2", 18, False), ("full:3", 74, True), ("chain:3", 6, True)])
def test_clop(spec, size, lattice):
    e = generate(spec)
    reg = build_reg(e)
    clop = build_clop(e, reg)
    assert clop.size == size
    assert clop.is_lattice == lattice
    assert is_lattice(clop) == lattice
    if lattice:
        assert clop.masks == reg.masks


def test_b2_nonclopen_pair():
    e = b2()
    reg = build_reg(e)
    clop = build_clop(e, reg)
    extra = {frozenset(SubRel(e, m).pairs()) for m in set(reg.masks) - set(clop.masks)}
    assert extra == {frozenset({(1, 2), (2, 4), (1, 4)}), frozenset({(1, 3), (3, 4), (1, 4)})}


def _lattices(rel3):
    return [build_reg(e) for e in rel3 if len(e) <= 6] + [build_reg(b2()), build_reg(full(2))]


def test_formula_ops_match_order(rel3):
    for L in _lattices(rel3):
        J, M = L.join_table, L.meet_table
        for i in range(L.size):
            for j in range(L.size):
                assert J[i, j] == L.join_of(i, j)
                assert M[i, j] == L.meet_of(i, j)


def test_meet_is_largest_common_lower_bound_set_level(small_corpus):
    for e in small_corpus[:80]:
        reg = naive_reg(e.pairs())
        L = build_reg(e)
        for x in reg:
            for y in reg:
                lower = [z for z in reg if z <= x and z <= y]
                upper = [z for z in reg if x <= z and y <= z]
                m = L.meet_sets(SubRel.from_pairs(e, x), SubRel.from_pairs(e, y))
                j = L.join_sets(SubRel.from_pairs(e, x), SubRel.from_pairs(e, y))
                assert pairs_set(m) == max(lower, key=len)
                assert pairs_set(j) == min(upper, key=len)
                assert pairs_set(j) == naive_tcl(x | y)
                assert pairs_set(m) == naive_tcl(naive_interior(e.pairs(), x & y))


def test_lattice_axioms_small(rel3):
    for L in _lattices(rel3)[::7]:
        J, M = L.join_table, L.meet_table
        idx = np.arange(L.size)
        assert np.array_equal(J, J.T) and np.array_equal(M, M.T)
        assert np.array_equal(J[idx, idx], idx)
        assert np.array_equal(J[idx[:, None], M], np.broadcast_to(idx[:, None], J.shape))  # absorption
        for a in range(L.size):
            for b in range(L.size):
                assert (J[a, J[b]] == J[J[a, b]]).all()


def test_orth_and_self_duality(rel3, rand4):
    for e in list(rel3) + list(rand4[:80]):
        L = build_reg(e)
        rep = verify_ortholattice(L)
        assert rep.ok, rep.failures
        o = orth_index(L)
        assert is_order_isomorphism(L, dual(L), [L.size - 1 - int(o[i]) for i in range(L.size)])


def test_orth_matches_set_formula():
    e = chain(3)
    L = build_reg(e)
    o = orth_index(L)
    for i in range(L.size):
        x = pairs_set(L.element(i))
        assert pairs_set(L.element(int(o[i]))) == naive_tcl(set(e.pairs()) - x)


def test_spatial_and_macneille(rel3, rand4):
    for e in list(rel3) + list(rand4[:80]):
        reg = build_reg(e)
        clop = build_clop(e, reg)
        assert verify_spatial(reg, e).ok
        assert verify_macneille(e, reg, clop).ok


def test_verify_detects_broken_structure():
    e = chain(3)
    reg = build_reg(e)
    # drop a middle element: orth then leaves the set
    bad = Lattice(masks=np.array([m for m in reg.masks if m != reg.masks[2]], dtype=reg.array.dtype),
                  env=e, kind="reg")
    assert not verify_ortholattice(bad).ok
    assert not verify_spatial(bad, e).ok


def test_clop_meet_is_interior_when_clopen(rel3):
    for e in list(rel3) + [b2()]:
        clop = build_clop(e)
        for i in range(clop.size):
            for j in range(i + 1, clop.size):
                t = B.tin(clop.masks[i] & clop.masks[j], e.mask, e.n)
                clopen = is_closed_mask(e, t) and is_open_mask(e, t)
                m = clop.meet_of(i, j)
                assert (m is not None) == clopen
                if clopen:
                    assert clop.masks[m] == t


def test_covers_are_transitive_reduction(rel3):
    for e in rel3[::5]:
        L = build_reg(e)
        ms = L.masks
        expected = set()
        for i, x in enumerate(ms):
            for j, y in enumerate(ms):
                if x != y and x & y == x and not any(
                    z not in (x, y) and x & z == x and z & y == z for z in ms
                ):
                    expected.add((i, j))
        assert set(L.covers) == expected


def test_ji_mi_counts():
    L = build_reg(b2())
    assert len(L.ji_index) == 8 and len(L.mi_index) == 8
    assert L.height[L.top] == max(L.height)
    with pytest.raises(InputError):
        L.find(1 << 30)


def test_iso_examples():
    P3 = build_reg(chain(3))
    assert is_isomorphic(P3, dual(P3))
    assert is_dually_isomorphic(P3, P3)
    assert not is_isomorphic(chain_lattice(2), chain_lattice(3))
    assert is_isomorphic(product(chain_lattice(2), chain_lattice(2)), boolean_lattice(2))
    assert not is_isomorphic(chain_lattice(4), boolean_lattice(2))
    f = find_isomorphism(P3, dual(P3))
    assert is_order_isomorphism(P3, dual(P3), f)


def test_iso_rejects_same_profile():
    # M3 and N5: five elements each
    m3 = Poset(down=[1, 3, 5, 9, 31])
    n5 = Poset(down=[1, 3, 7, 9, 31])
    assert not is_isomorphic(m3, n5)
    assert is_isomorphic(m3, dual(m3))
    assert is_isomorphic(n5, dual(n5))


def test_poset_rejects_bad_down_sets():
    with pytest.raises(InputError):
        Poset(down=[1, 3, 5, 9, 15])
    with pytest.raises(InputError):
        Poset(down=[3, 2])


def test_product_laws():
    r2 = build_reg(chain(2))
    assert is_isomorphic(build_reg(generate("sum:(chain:2,chain:2)")), product(r2, r2))
    assert is_isomorphic(build_reg(generate("union:(chain:2,diag:3:3)")), product(r2, boolean_lattice(1)))


def test_product_order():
    P = product(chain_lattice(2), chain_lattice(3))
    assert P.size == 6 and isinstance(P, Lattice)
    assert P.leq(0, 5) and not P.leq(2, 3)


def test_hasse_dot():
    e = b2()
    reg = build_reg(e)
    dot = hasse_dot(reg, mark_nonclopen=True)
    assert dot.count("label=") == 20
    assert dot.count("peripheries=2") == 2
    assert dot.count("->") == len(reg.covers)
    assert hasse_dot(reg) == hasse_dot(build_reg(b2()))
    assert "peripheries" not in hasse_dot(reg)


def test_empty_relation_lattice():
    L = build_reg(empty(2))
    assert L.size == 1 and L.bottom == L.top
    assert verify_ortholattice(L).ok
