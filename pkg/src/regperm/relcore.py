"""Relations on [n], transitive relations, and the closure/interior calculus.

Elements are labelled 1..n in every public signature; bitmasks are 0-based
(see :mod:`regperm._bits`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import _bits as B
from .errors import BadSpec, EnvMismatch, InputError, NotOrthogonal, NotTransitive


class Relation:
    """A binary relation on {1..n}, stored as a dense row-major bitmask."""

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]] = ()):
        _check_n(n)
        mask = 0
        for pair in pairs:
            try:
                i, j = pair
            except (TypeError, ValueError):
                raise InputError(f"not a pair: {pair!r}") from None
            if not (isinstance(i, int) and isinstance(j, int)):
                raise InputError(f"pair entries must be integers: {pair!r}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError(f"pair {pair!r} out of range for n={n}")
            mask |= B.pair_bit(i - 1, j - 1, n)
        self.n = n
        self.mask = mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Relation":
        _check_n(n)
        if mask < 0 or mask >> (n * n):
            raise InputError("mask has bits outside [n]x[n]")
        r = cls.__new__(cls)
        r.n = n
        r.mask = mask
        return r

    def pairs(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in B.pairs_of(self.mask, self.n)]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __len__(self):
        return B.popcount(self.mask)

    def __contains__(self, pair):
        i, j = pair
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            return False
        return bool(self.mask >> ((i - 1) * self.n + j - 1) & 1)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and self.mask == other.mask

    def __hash__(self):
        return hash((self.n, self.mask))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, pairs={self.pairs()})"

    def is_transitive(self) -> bool:
        return B.is_transitive(self.mask, self.n)

    def is_antisymmetric(self) -> bool:
        sym = self.mask & B.transpose(self.mask, self.n)
        return sym & ~B.diagonal(self.n) == 0

    def opposite(self) -> "Relation":
        return Relation.from_mask(self.n, B.transpose(self.mask, self.n))


class TransRel(Relation):
    """A transitive relation e with its preorder and equivalence classes cached.

    Construction fails on non-transitive input unless ``close=True``, in which
    case the transitive closure is taken first.
    """

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]] = (), close: bool = False):
        super().__init__(n, pairs)
        self._settle(close)

    @classmethod
    def of(cls, r: Relation, close: bool = False) -> "TransRel":
        return cls.from_mask(r.n, r.mask, close=close)

    @classmethod
    def from_mask(cls, n: int, mask: int, close: bool = False) -> "TransRel":
        e = super().from_mask(n, mask)
        e._settle(close)
        return e

    def _settle(self, close):
        closed = B.tcl(self.mask, self.n)
        if closed != self.mask:
            if not close:
                missing = Relation.from_mask(self.n, closed & ~self.mask).pairs()
                raise NotTransitive(f"relation is not transitive; closure adds {missing[:6]}")
            self.mask = closed
        n = self.n
        self.lt_rows = B.rows(self.mask, n)
        self.lt_cols = B.rows(B.transpose(self.mask, n), n)
        self.le_rows = [r | (1 << i) for i, r in enumerate(self.lt_rows)]
        self.le_cols = [c | (1 << i) for i, c in enumerate(self.lt_cols)]
        self.equiv_classes = _classes(self)

    @property
    def base(self) -> Relation:
        return Relation.from_mask(self.n, self.mask)

    def lt(self, x: int, y: int) -> bool:
        return bool(self.lt_rows[x - 1] >> (y - 1) & 1)

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.lt(x, y)

    def equiv(self, x: int, y: int) -> bool:
        return self.leq(x, y) and self.leq(y, x)

    def opposite(self) -> "TransRel":
        return TransRel.from_mask(self.n, B.transpose(self.mask, self.n))

    def cc(self, a: int, b: int) -> int:
        """⟦a,b⟧ as a 0-based bitset."""
        return self.le_rows[a] & self.le_cols[b]

    def co(self, a: int, b: int) -> int:
        return self.le_rows[a] & self.lt_cols[b]

    def oc(self, a: int, b: int) -> int:
        return self.lt_rows[a] & self.le_cols[b]

    def block(self, a: int) -> int:
        """⟦a⟧, the ≡-class of the 0-based element a, as a bitset."""
        return self.le_rows[a] & self.le_cols[a]


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise InputError(f"ground set size must be a positive integer, got {n!r}")
    if n > B.MAX_N:
        raise InputError(f"ground set size {n} exceeds the hard cap {B.MAX_N}")


def _classes(e: TransRel) -> list[frozenset[int]]:
    seen = 0
    out = []
    for i in range(e.n):
        if seen >> i & 1:
            continue
        cls = e.block(i)
        seen |= cls
        out.append(frozenset(x + 1 for x in B.iter_bits(cls)))
    return out


class SubRel:
    """A subset of the pairs of a transitive relation ``env``."""

    __slots__ = ("env", "mask")

    def __init__(self, env: TransRel, mask: int):
        if mask & ~env.mask:
            raise InputError("subset contains pairs outside its environment")
        self.env = env
        self.mask = mask

    @classmethod
    def from_pairs(cls, env: TransRel, pairs: Iterable[tuple[int, int]]) -> "SubRel":
        r = Relation(env.n, pairs)
        if r.mask & ~env.mask:
            bad = Relation.from_mask(env.n, r.mask & ~env.mask).pairs()
            raise InputError(f"pairs {bad} are not in the environment")
        return cls(env, r.mask)

    @classmethod
    def whole(cls, env: TransRel) -> "SubRel":
        return cls(env, env.mask)

    @classmethod
    def empty(cls, env: TransRel) -> "SubRel":
        return cls(env, 0)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in B.pairs_of(self.mask, self.env.n)]

    @property
    def bits(self) -> int:
        """Bit vector over the row-major enumeration of the environment's pairs."""
        out = 0
        for k, b in enumerate(B.iter_bits(self.env.mask)):
            if self.mask >> b & 1:
                out |= 1 << k
        return out

    def complement(self) -> "SubRel":
        return SubRel(self.env, self.env.mask & ~self.mask)

    def _other(self, other):
        if not isinstance(other, SubRel):
            return NotImplemented
        if other.env != self.env:
            raise EnvMismatch("subsets live in different environments")
        return other.mask

    def __or__(self, other):
        return SubRel(self.env, self.mask | self._other(other))

    def __and__(self, other):
        return SubRel(self.env, self.mask & self._other(other))

    def __sub__(self, other):
        return SubRel(self.env, self.mask & ~self._other(other))

    def __le__(self, other):
        return self.mask & ~self._other(other) == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __len__(self):
        return B.popcount(self.mask)

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, pair):
        i, j = pair
        n = self.env.n
        return 1 <= i <= n and 1 <= j <= n and bool(self.mask >> ((i - 1) * n + j - 1) & 1)

    def __eq__(self, other):
        if not isinstance(other, SubRel):
            return NotImplemented
        return self.mask == other.mask and self.env == other.env

    def __hash__(self):
        return hash((self.env.n, self.env.mask, self.mask))

    def __repr__(self):
        return f"SubRel({self.pairs()})"


@dataclass(frozen=True)
class Interval:
    kind: str
    lo: int
    hi: int
    members: frozenset


@dataclass(frozen=True)
class ClassReport:
    closed: bool
    open: bool
    clopen: bool
    regular_closed: bool
    regular_open: bool

    def consistent(self) -> bool:
        if self.clopen != (self.closed and self.open):
            return False
        if self.clopen and not (self.regular_closed and self.regular_open):
            return False
        return True


def _env_check(e: TransRel, a: SubRel):
    if a.env is not e and a.env != e:
        raise EnvMismatch("subset belongs to a different transitive relation")


def transitive_closure(r: Relation) -> Relation:
    return Relation.from_mask(r.n, B.tcl(r.mask, r.n))


def closure(e: TransRel, a: SubRel) -> SubRel:
    _env_check(e, a)
    return SubRel(e, B.tcl(a.mask, e.n))


def interior(e: TransRel, a: SubRel) -> SubRel:
    """Largest open subset of ``a``: ``e ∖ tcl(e ∖ a)``."""
    _env_check(e, a)
    return SubRel(e, B.tin(a.mask, e.mask, e.n))


def orthogonal(e: TransRel, x: SubRel) -> SubRel:
    _env_check(e, x)
    return SubRel(e, B.tcl(e.mask & ~x.mask, e.n))


def is_closed_mask(e: TransRel, m: int) -> bool:
    return B.tcl(m, e.n) == m


def is_open_mask(e: TransRel, m: int) -> bool:
    c = e.mask & ~m
    return B.tcl(c, e.n) == c


def is_regular_closed_mask(e: TransRel, m: int) -> bool:
    return B.tcl(B.tin(m, e.mask, e.n), e.n) == m


def is_regular_open_mask(e: TransRel, m: int) -> bool:
    return B.tin(B.tcl(m, e.n), e.mask, e.n) == m


def classify(e: TransRel, a: SubRel) -> ClassReport:
    _env_check(e, a)
    m = a.mask
    closed = is_closed_mask(e, m)
    opened = is_open_mask(e, m)
    return ClassReport(
        closed=closed,
        open=opened,
        clopen=closed and opened,
        regular_closed=is_regular_closed_mask(e, m),
        regular_open=is_regular_open_mask(e, m),
    )


def interval(e: TransRel, lo: int, hi: int, kind: str = "cc") -> Interval:
    if not (1 <= lo <= e.n and 1 <= hi <= e.n):
        raise InputError(f"interval bounds out of range: {lo}, {hi}")
    a, b = lo - 1, hi - 1
    if kind == "cc":
        bits = e.cc(a, b)
    elif kind == "co":
        bits = e.co(a, b)
    elif kind == "oc":
        bits = e.oc(a, b)
    else:
        raise InputError(f"unknown interval kind {kind!r}")
    return Interval(kind, lo, hi, frozenset(x + 1 for x in B.iter_bits(bits)))


def is_square_free(e: TransRel) -> bool:
    for a, b in B.pairs_of(e.mask, e.n):
        span = e.cc(a, b)
        for x in B.iter_bits(span):
            if span & ~(e.le_rows[x] | e.le_cols[x]):
                return False
    return True


def square_witness(e: TransRel):
    """A pair (a,b) of e and incomparable u,v in ⟦a,b⟧, 1-based, or None."""
    for a, b in B.pairs_of(e.mask, e.n):
        span = e.cc(a, b)
        for x in B.iter_bits(span):
            bad = span & ~(e.le_rows[x] | e.le_cols[x])
            if bad:
                y = next(B.iter_bits(bad))
                return (a + 1, b + 1, x + 1, y + 1)
    return None


def components(e: TransRel) -> list[frozenset[int]]:
    """Connected components of the symmetrised preorder; isolated points are singletons."""
    parent = list(range(e.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in B.pairs_of(e.mask, e.n):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, set[int]] = {}
    for x in range(e.n):
        groups.setdefault(find(x), set()).add(x + 1)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def restrict(e: TransRel, part: Iterable[int]) -> int:
    """Mask of ``e ∩ (part × part)``."""
    s = B.set_to_bits(x - 1 for x in part)
    return e.mask & B.product_mask(s, s, e.n)


def structural_condition_iv(e: TransRel) -> bool:
    """Every component is antisymmetric or a two-element full relation."""
    n = e.n
    for comp in components(e):
        m = restrict(e, comp)
        sym = m & B.transpose(m, n) & ~B.diagonal(n)
        if not sym:
            continue
        if len(comp) == 2:
            a, b = sorted(comp)
            if (a, b) in e and (b, a) in e:
                continue
        return False
    return True


# --- generators -----------------------------------------------------------


def chain(n: int) -> TransRel:
    return TransRel(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def full(n: int) -> TransRel:
    return TransRel(n, [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)])


def empty(n: int) -> TransRel:
    return TransRel(n)


def b2() -> TransRel:
    """Strict order of the square 1 < {2, 3} < 4."""
    return TransRel(4, [(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)])


def diag(n: int, elements: Iterable[int] | None = None) -> TransRel:
    elements = range(1, n + 1) if elements is None else elements
    return TransRel(n, [(a, a) for a in elements])


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]]) -> TransRel:
    e = TransRel(n, covers, close=True)
    if e.mask & B.diagonal(n):
        raise BadSpec("cover list contains a cycle; not a strict order")
    return e


def is_orthogonal_family(rels: list[Relation]) -> bool:
    """Pairwise disjoint, and no p≠q≠r chains (p,q)∈e_i, (q,r)∈e_j across i≠j."""
    n = rels[0].n
    off = ~B.diagonal(n)
    for i, ei in enumerate(rels):
        for j, ej in enumerate(rels):
            if i == j:
                continue
            if i < j and ei.mask & ej.mask:
                return False
            left = B.rows(B.transpose(ei.mask & off, n), n)   # left[q]: p with (p,q)
            right = B.rows(ej.mask & off, n)                  # right[q]: r with (q,r)
            for q in range(n):
                if left[q] and right[q]:
                    return False
    return True


def orthogonal_union(rels: list[Relation]) -> TransRel:
    if not rels:
        raise BadSpec("empty family")
    n = max(r.n for r in rels)
    lifted = [Relation.from_mask(n, _lift(r.mask, r.n, n, 0)) for r in rels]
    if not is_orthogonal_family(lifted):
        raise NotOrthogonal("relations are not pairwise disjoint and orthogonal")
    mask = 0
    for r in lifted:
        mask |= r.mask
    return TransRel.from_mask(n, mask)


def disjoint_sum(rels: list[Relation]) -> TransRel:
    if not rels:
        raise BadSpec("empty family")
    n = sum(r.n for r in rels)
    if n > B.MAX_N:
        raise InputError(f"sum has {n} elements, above the cap {B.MAX_N}")
    lifted = []
    shift = 0
    for r in rels:
        lifted.append(Relation.from_mask(n, _lift(r.mask, r.n, n, shift)))
        shift += r.n
    if not is_orthogonal_family(lifted):
        raise NotOrthogonal("summands are not orthogonal")
    mask = 0
    for r in lifted:
        mask |= r.mask
    return TransRel.from_mask(n, mask)


def _lift(mask, n, big, shift):
    out = 0
    for i, j in B.pairs_of(mask, n):
        out |= B.pair_bit(i + shift, j + shift, big)
    return out


_INT = re.compile(r"^\d+$")


def _split_top(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise BadSpec("unbalanced parentheses")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise BadSpec("unbalanced parentheses")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _int(tok, what):
    tok = tok.strip()
    if not _INT.match(tok):
        raise BadSpec(f"{what} must be a positive integer, got {tok!r}")
    v = int(tok)
    if v < 1:
        raise BadSpec(f"{what} must be positive")
    return v


def generate(spec: str) -> TransRel:
    """Build a transitive relation from a generator spec string.

    Grammar::

        chain:N | full:N | empty:N | b2 | loop2
        diag:N | diag:N:a,b,...           identity on [N] or on {a,b,...} ⊆ [N]
        poset:N:1<2,1<3,2<4               strict order generated by covers (a<b<c allowed)
        sum:(S1,S2,...)                   disjoint sum, later summands relabelled upward
        union:(S1,S2,...)                 union on a shared ground set; must be orthogonal
    """
    s = spec.strip()
    try:
        if s == "b2":
            return b2()
        if s == "loop2":
            return full(2)
        head, _, rest = s.partition(":")
        if head in ("sum", "union"):
            if not (rest.startswith("(") and rest.endswith(")")):
                raise BadSpec(f"{head} needs a parenthesised list: {spec!r}")
            parts = _split_top(rest[1:-1])
            rels = [generate(p) for p in parts if p]
            return disjoint_sum(rels) if head == "sum" else orthogonal_union(rels)
        if head == "chain":
            return chain(_int(rest, "chain length"))
        if head == "full":
            return full(_int(rest, "size"))
        if head == "empty":
            return empty(_int(rest, "size"))
        if head == "diag":
            n_tok, _, elems = rest.partition(":")
            n = _int(n_tok, "size")
            if not elems:
                return diag(n)
            return diag(n, [_int(t, "element") for t in elems.split(",")])
        if head == "poset":
            n_tok, _, body = rest.partition(":")
            n = _int(n_tok, "size")
            covers = []
            for item in filter(None, (t.strip() for t in body.split(","))):
                chain_elems = [_int(t, "element") for t in item.split("<")]
                if len(chain_elems) < 2:
                    raise BadSpec(f"cover item needs '<': {item!r}")
                covers.extend(zip(chain_elems, chain_elems[1:]))
            return poset_from_covers(n, covers)
    except (BadSpec, NotOrthogonal):
        raise
    except InputError as exc:
        raise BadSpec(f"{spec!r}: {exc}") from exc
    raise BadSpec(f"unknown generator spec {spec!r}")
