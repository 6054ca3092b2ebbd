"""Shared fixtures and pure-Python oracles (sets of tuples, no bit tricks)."""

from itertools import product

import pytest

from regperm.propcheck import all_transitive_relations, random_antisymmetric, random_corpus
from regperm.relcore import TransRel


def naive_tcl(pairs):
    out = set(pairs)
    while True:
        extra = {(x, z) for (x, y) in out for (y2, z) in out if y == y2} - out
        if not extra:
            return frozenset(out)
        out |= extra


def naive_interior(e, a):
    """Pairs (x,y) of e such that every e-path from x to y uses a step of a."""
    free = set(e) - set(a)
    succ = {}
    for x, y in free:
        succ.setdefault(x, set()).add(y)
    out = set()
    for x, y in e:
        # look for a path of length ≥ 1 using only steps outside a
        stack, seen, found = [x], set(), False
        while stack and not found:
            v = stack.pop()
            for w in succ.get(v, ()):
                if w == y:
                    found = True
                    break
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if not found:
            out.add((x, y))
    return frozenset(out)


def naive_reg(e):
    """All regular closed subsets of e, by scanning every subset."""
    e = sorted(e)
    out = []
    for bits in product((0, 1), repeat=len(e)):
        a = frozenset(p for p, b in zip(e, bits) if b)
        if naive_tcl(naive_interior(e, a)) == a:
            out.append(a)
    return out


def naive_join_irreducibles(elements):
    """Elements with exactly one lower cover under inclusion."""
    out = []
    for x in elements:
        below = [y for y in elements if y < x]
        maximal = [y for y in below if not any(y < z for z in below)]
        if len(maximal) == 1:
            out.append(x)
    return out


def pairs_set(sub):
    return frozenset(sub.pairs())


@pytest.fixture(scope="session")
def rel3():
    return all_transitive_relations(3)


@pytest.fixture(scope="session")
def rand4():
    return random_corpus(4, 200, seed=20240611)


@pytest.fixture(scope="session")
def small_corpus(rel3):
    """Relations with at most 6 pairs: small enough for subset scans."""
    return [e for e in all_transitive_relations(3) if len(e) <= 6] + [
        e for e in random_corpus(4, 60, seed=7) if len(e) <= 6
    ]


@pytest.fixture(scope="session")
def antisym_corpus():
    import random

    rng = random.Random(99)
    out = []
    for k in range(60):
        n = 3 + k % 3
        out.append(random_antisymmetric(n, (0.3, 0.5, 0.7)[k % 3], rng))
    return out


def make(n, pairs, close=False):
    return TransRel(n, pairs, close=close)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
