"""Completely join-irreducible elements of Reg(e), parameterised by triples (a, b, U).

A triple names the clopen set ``e ∩ (({a} ∪ Uᶜ) × ({b} ∪ U))`` where
``Uᶜ = ⟦a,b⟧ ∖ U``.  Triples with ``a == b`` are clepsydras; for those only
``U ∖ {a}`` matters and that is what the canonical form stores.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import _bits as B
from .errors import NotInF
from .relcore import SubRel, TransRel


@dataclass(frozen=True, order=True)
class JirrTriple:
    a: int
    b: int
    U: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "U", frozenset(self.U))

    @property
    def clepsydra(self) -> bool:
        return self.a == self.b

    def key(self):
        return (self.a, self.b, tuple(sorted(self.U)))

    def __str__(self):
        inner = ",".join(map(str, sorted(self.U)))
        return f"<{self.a},{self.b},{{{inner}}}>"


@dataclass(frozen=True)
class JirrElement:
    triple: JirrTriple
    p: SubRel
    p_star: SubRel

    @property
    def clepsydra(self) -> bool:
        return self.triple.clepsydra


def _parts(e: TransRel, t: JirrTriple):
    """0-based (a, b, U-bits, Uᶜ-bits) after validating membership in F(e)."""
    n = e.n
    if not (1 <= t.a <= n and 1 <= t.b <= n):
        raise NotInF(f"{t}: endpoints out of range")
    a, b = t.a - 1, t.b - 1
    if not e.mask >> (a * n + b) & 1:
        raise NotInF(f"{t}: ({t.a},{t.b}) is not in e")
    span = e.cc(a, b)
    u = 0
    for x in t.U:
        if not (isinstance(x, int) and 1 <= x <= n):
            raise NotInF(f"{t}: bad element {x!r} in U")
        u |= 1 << (x - 1)
    if u & ~span:
        raise NotInF(f"{t}: U is not inside the interval [{t.a},{t.b}]")
    if a != b:
        if u >> a & 1:
            raise NotInF(f"{t}: a must not lie in U")
        if not u >> b & 1:
            raise NotInF(f"{t}: b must lie in U")
    return a, b, u, span & ~u


def _realize_bits(e: TransRel, a, b, u, uc):
    left = (1 << a) | uc
    right = (1 << b) | u
    return e.mask & B.product_mask(left, right, e.n)


def _star_bits(e: TransRel, a, b, p):
    if a == b:
        return p & ~B.pair_bit(a, a, e.n)
    return p & ~B.product_mask(e.block(a), e.block(b), e.n)


def realize(e: TransRel, t: JirrTriple) -> SubRel:
    a, b, u, uc = _parts(e, t)
    return SubRel(e, _realize_bits(e, a, b, u, uc))


def lower_cover(e: TransRel, t: JirrTriple) -> SubRel:
    a, b, u, uc = _parts(e, t)
    p = _realize_bits(e, a, b, u, uc)
    return SubRel(e, _star_bits(e, a, b, p))


def canonical(t: JirrTriple) -> JirrTriple:
    if t.clepsydra:
        return JirrTriple(t.a, t.b, t.U - {t.a})
    return t


def iter_f_triples(e: TransRel):
    """Every triple of F(e) in row-major (a, b) order, U by binary counter.

    Clepsydra triples are produced once per ``U ∖ {a}``.
    """
    for a, b in B.pairs_of(e.mask, e.n):
        span = e.cc(a, b)
        if a == b:
            forced, free = 0, span & ~(1 << a)
        else:
            forced, free = 1 << b, span & ~((1 << a) | (1 << b))
        free_elems = list(B.iter_bits(free))
        for k in range(1 << len(free_elems)):
            u = forced
            for i, x in enumerate(free_elems):
                if k >> i & 1:
                    u |= 1 << x
            yield JirrTriple(a + 1, b + 1, frozenset(x + 1 for x in B.iter_bits(u)))


@lru_cache(maxsize=256)
def _enumerate_cached(n, mask):
    e = TransRel.from_mask(n, mask)
    best: dict[int, JirrTriple] = {}
    for t in iter_f_triples(e):
        a, b, u, uc = _parts(e, t)
        p = _realize_bits(e, a, b, u, uc)
        old = best.get(p)
        if old is None or t.key() < old.key():
            best[p] = t
    out = []
    for p in sorted(best):
        t = best[p]
        a, b = t.a - 1, t.b - 1
        out.append((t, p, _star_bits(e, a, b, p)))
    return tuple(out)


def enumerate_jirr(e: TransRel) -> list[JirrElement]:
    """All completely join-irreducible elements of Reg(e), sorted by bit encoding."""
    return [
        JirrElement(t, SubRel(e, p), SubRel(e, ps)) for t, p, ps in _enumerate_cached(e.n, e.mask)
    ]


def jirr_masks(e: TransRel) -> list[int]:
    return [p for _, p, _ in _enumerate_cached(e.n, e.mask)]


def find_triple(e: TransRel, t: JirrTriple) -> int:
    """Index of the element realized by ``t`` in :func:`enumerate_jirr` order."""
    p = realize(e, t).mask
    for i, (_, m, _) in enumerate(_enumerate_cached(e.n, e.mask)):
        if m == p:
            return i
    raise NotInF(f"{t} does not realize a join-irreducible")


def open_witnesses(e: TransRel, u_mask: int):
    """For open ``u``: map each pair of u to a join-irreducible p with pair ∈ p ⊆ u."""
    out = {}
    table = _enumerate_cached(e.n, e.mask)
    for bit in B.iter_bits(u_mask):
        for t, p, _ in table:
            if p >> bit & 1 and p & ~u_mask == 0:
                out[bit] = t
                break
    return out


__all__ = [
    "JirrTriple",
    "JirrElement",
    "realize",
    "lower_cover",
    "canonical",
    "iter_f_triples",
    "enumerate_jirr",
    "jirr_masks",
    "find_triple",
    "open_witnesses",
]
