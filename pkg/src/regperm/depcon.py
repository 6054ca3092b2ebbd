"""Arrow relations, join-dependency, congruence classes and subdirect factors of Reg(e)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import _bits as B
from .errors import CapExceeded, ConsistencyError, InputError, NotAntisymmetric, NotBipartite, NotDUpper
from .jirr import JirrElement, JirrTriple, _parts, enumerate_jirr
from .latbuild import DEFAULT_CAP, Lattice, Poset, build_reg, dual, sub_lattice
from .relcore import TransRel

CLASS_CAP = 24


@dataclass(frozen=True)
class ArrowRecord:
    p: int
    q: int
    up: bool


# --- arrows between join-irreducibles of Reg(e) ------------------------------


def arrow_up(e: TransRel, jp: JirrElement, jq: JirrElement) -> bool:
    """p ↗ orth(q), evaluated on the realized sets."""
    return bool(jp.p.mask & jq.p.mask) and not jp.p.mask & jq.p_star.mask


def arrow_up_closed_form(e: TransRel, tp: JirrTriple, tq: JirrTriple) -> bool:
    """p ↗ orth(q) from the triples alone, by the three case formulas."""
    a, b, u, uc = _parts(e, tp)
    c, d, v, vc = _parts(e, tq)
    if c == d:
        if not (a == b == c):
            return False
        return (u & v) & ~(1 << a) == 0 and (uc & vc) & ~(1 << a) == 0
    if a == b:
        blk = e.block(a)
        if not (blk >> c & 1 and blk >> d & 1):
            return False
        return bool(((1 << a) | u) & v) and bool(((1 << a) | uc) & vc)
    cd, ab = e.cc(c, d), e.cc(a, b)
    if cd & ~ab:
        return False
    cross = e.mask & B.product_mask(uc & vc, u & v, e.n)
    if not cross:
        return False
    return cross & ~B.product_mask(e.block(c), e.block(d), e.n) == 0


def arrow_rows(elems: list[JirrElement]) -> list[int]:
    """``rows[i]`` has bit j set iff elems[i] ↗ orth(elems[j])."""
    rows = []
    for jp in elems:
        p = jp.p.mask
        r = 0
        for j, jq in enumerate(elems):
            if p & jq.p.mask and not p & jq.p_star.mask:
                r |= 1 << j
        rows.append(r)
    return rows


def d_rows_from_arrows(arrows: list[int]) -> list[int]:
    out = []
    for i, row in enumerate(arrows):
        acc = 0
        for r in B.iter_bits(row):
            acc |= arrows[r]
        out.append(acc & ~(1 << i))
    return out


def join_dependency(e: TransRel, jp: JirrElement, jq: JirrElement) -> bool:
    if jp.p == jq.p:
        return False
    for jr in enumerate_jirr(e):
        if arrow_up(e, jp, jr) and arrow_up(e, jr, jq):
            return True
    return False


def res(e: TransRel, U, c: int, d: int) -> frozenset:
    """(U ∩ ⟦c,d⟧ ∖ {c}) ∪ {d}.

    Dropping c matters when c ◁ c: otherwise c could land in the result and
    (c, d, result) would leave F(e).
    """
    span = e.cc(c - 1, d - 1) & ~(1 << (c - 1))
    return frozenset(x for x in U if span >> (x - 1) & 1) | {d}


def d_char_antisym(e: TransRel, t0: JirrTriple, t1: JirrTriple) -> bool:
    """Join-dependency between bipartite triples of an antisymmetric relation."""
    if not e.is_antisymmetric():
        raise NotAntisymmetric("relation is not antisymmetric")
    if t0.clepsydra or t1.clepsydra:
        raise NotBipartite("both triples must have a ≠ b")
    _parts(e, t0)
    _parts(e, t1)
    i0 = e.cc(t0.a - 1, t0.b - 1)
    i1 = e.cc(t1.a - 1, t1.b - 1)
    if i1 & ~i0 or i1 == i0:
        return False
    return frozenset(t1.U) == res(e, t0.U, t1.a, t1.b)


# --- dependency graph and congruences ----------------------------------------


def _star(rows):
    """Reflexive-transitive closure of a bitset relation (Warshall)."""
    n = len(rows)
    star = [r | (1 << i) for i, r in enumerate(rows)]
    for k in range(n):
        bit = 1 << k
        sk = star[k]
        for i in range(n):
            if star[i] & bit:
                star[i] |= sk
    return star


@dataclass
class DepGraph:
    vertices: list
    d_rows: list[int]
    star: list[int] = field(init=False)
    classes: list[list[int]] = field(init=False)
    class_of: list[int] = field(init=False)
    class_up: list[int] = field(init=False)

    def __post_init__(self):
        self.star = _star(self.d_rows)
        n = len(self.d_rows)
        self.class_of = [-1] * n
        self.classes = []
        for i in range(n):
            if self.class_of[i] >= 0:
                continue
            members = [j for j in B.iter_bits(self.star[i]) if self.star[j] >> i & 1]
            for j in members:
                self.class_of[j] = len(self.classes)
            self.classes.append(members)
        # class_up[c]: classes reachable from c (c included)
        self.class_up = []
        for members in self.classes:
            reach = 0
            for j in B.iter_bits(self.star[members[0]]):
                reach |= 1 << self.class_of[j]
            self.class_up.append(reach)

    def d(self, i, j) -> bool:
        return bool(self.d_rows[i] >> j & 1)

    def d_star(self, i, j) -> bool:
        return bool(self.star[i] >> j & 1)

    def edges(self):
        return [(i, j) for i, row in enumerate(self.d_rows) for j in B.iter_bits(row)]

    def is_acyclic(self) -> bool:
        return all(len(c) == 1 for c in self.classes) and not any(
            row >> i & 1 for i, row in enumerate(self.d_rows)
        )

    def is_transitive(self) -> bool:
        for i, row in enumerate(self.d_rows):
            for j in B.iter_bits(row):
                if self.d_rows[j] & ~row:
                    return False
        return True

    def minimal_classes(self) -> list[int]:
        """Classes that no other class reaches under D★."""
        out = []
        for c in range(len(self.classes)):
            if not any(o != c and self.class_up[o] >> c & 1 for o in range(len(self.classes))):
                out.append(c)
        return out

    def upper_set(self, i) -> int:
        """S_p = {q : p D★ q} as a bitset of vertex indices."""
        return self.star[i]

    def is_d_upper(self, s: int) -> bool:
        for i in B.iter_bits(s):
            if self.d_rows[i] & ~s:
                return False
        return True


def dep_graph(e: TransRel) -> DepGraph:
    elems = enumerate_jirr(e)
    return DepGraph(elems, d_rows_from_arrows(arrow_rows(elems)))


def count_down_sets(class_up: list[int]) -> int:
    """Number of down-sets of a finite poset given by up-set bitsets (reflexive)."""
    n = len(class_up)
    class_down = [0] * n
    for c, up in enumerate(class_up):
        for o in B.iter_bits(up):
            class_down[o] |= 1 << c

    @lru_cache(maxsize=None)
    def count(alive):
        if not alive:
            return 1
        # no order relations left among alive: every subset is a down-set
        if all(class_up[c] & alive == 1 << c for c in B.iter_bits(alive)):
            return 1 << B.popcount(alive)
        x = max(B.iter_bits(alive), key=lambda c: B.popcount(class_up[c] & alive) + B.popcount(class_down[c] & alive))
        return count(alive & ~class_up[x]) + count(alive & ~class_down[x])

    return count((1 << n) - 1)


@dataclass
class FactorDescriptor:
    representative: int
    triple: JirrTriple
    generators: int
    lattice: Lattice | None

    @property
    def size(self):
        return None if self.lattice is None else len(self.lattice)


@dataclass
class CongruenceSummary:
    graph: DepGraph
    class_sizes: list[int]
    class_up: list[int]
    dstar_minimal: list[int]
    congruence_count: int | None
    class_cap_exceeded: bool
    factors: list[FactorDescriptor]
    injective: bool | None

    def to_dict(self):
        g = self.graph
        return {
            "join_irreducibles": len(g.vertices),
            "classes": len(self.class_sizes),
            "class_sizes": self.class_sizes,
            "minimal": [str(g.vertices[i].triple) for i in self.dstar_minimal],
            "congruence_count": self.congruence_count,
            "class_cap_exceeded": self.class_cap_exceeded,
            "factor_sizes": [f.size for f in self.factors],
            "subdirect_injective": self.injective,
        }


def _ji_below(L: Lattice, gens: list[int]) -> list[int]:
    """For every element x of L, the bitset of generator indices q with q ⊆ x."""
    arr = L.array
    out = [0] * L.size
    for k, g in enumerate(gens):
        inside = B.pack_bool(B.superset_vector(arr, g))
        bit = 1 << k
        for x in B.iter_bits(inside):
            out[x] |= bit
    return out


def congruence_summary(
    e: TransRel,
    reg: Lattice | None = None,
    class_cap: int = CLASS_CAP,
    build_factors: bool = True,
    cap: int = DEFAULT_CAP,
) -> CongruenceSummary:
    g = dep_graph(e)
    reg = reg if reg is not None else build_reg(e, cap=cap)
    cls = g.classes
    too_many = len(cls) > class_cap
    count = None if too_many else count_down_sets(g.class_up)
    minimal_classes = g.minimal_classes()
    reps = [cls[c][0] for c in minimal_classes]
    gens = [v.p.mask for v in g.vertices]
    factors = []
    injective = None
    if build_factors:
        for r in reps:
            s = g.upper_set(r)
            masks = [gens[q] for q in B.iter_bits(s)]
            factors.append(FactorDescriptor(r, g.vertices[r].triple, s, sub_lattice(e, masks, cap=cap)))
        below = _ji_below(reg, gens)
        keys = {tuple(b & f.generators for f in factors) for b in below}
        injective = len(keys) == reg.size
        if not injective:
            raise ConsistencyError("minimal subdirect decomposition map is not injective")
    else:
        for r in reps:
            factors.append(FactorDescriptor(r, g.vertices[r].triple, g.upper_set(r), None))
    return CongruenceSummary(
        graph=g,
        class_sizes=[len(c) for c in cls],
        class_up=g.class_up,
        dstar_minimal=reps,
        congruence_count=count,
        class_cap_exceeded=too_many,
        factors=factors,
        injective=injective,
    )


def theta_quotient(e: TransRel, S, graph: DepGraph | None = None, cap: int = DEFAULT_CAP) -> Lattice:
    """The (∨,0)-subsemilattice generated by a D-upper set S of join-irreducible indices."""
    g = graph if graph is not None else dep_graph(e)
    s = 0
    for i in S:
        if not (0 <= i < len(g.vertices)):
            raise InputError(f"join-irreducible index {i} out of range")
        s |= 1 << i
    if not g.is_d_upper(s):
        raise NotDUpper("set is not closed under D")
    return sub_lattice(e, [g.vertices[i].p.mask for i in B.iter_bits(s)], cap=cap)


def kernel_is_congruence(L: Lattice, keys: list) -> bool:
    """Whether x ~ y iff keys[x] == keys[y] is compatible with ∨ and ∧ (definition scan)."""
    groups: dict = {}
    for x, k in enumerate(keys):
        groups.setdefault(k, []).append(x)
    J, M = L.join_table, L.meet_table
    for members in groups.values():
        if len(members) < 2:
            continue
        x0 = members[0]
        for y in members[1:]:
            for z in range(L.size):
                if keys[J[x0, z]] != keys[J[y, z]] or keys[M[x0, z]] != keys[M[y, z]]:
                    return False
    return True


def theta_keys(L: Lattice, gens: list[int], s: int) -> list[int]:
    return [b & s for b in _ji_below(L, gens)]


# --- generic (abstract lattice) arrows and D ---------------------------------


def lattice_arrows(L: Poset):
    """Join-irreducibles J, meet-irreducibles M, and arrow bitsets for a finite lattice.

    ``up_rows[i]``: bits k with J[i] ↗ M[k]; ``down_rows[k]``: bits i with M[k] ↘ J[i].
    """
    J = L.ji_index
    M = L.mi_index
    lower = [L.lower_covers[p][0] for p in J]
    upper = [L.upper_covers[u][0] for u in M]
    up_rows = []
    for p in J:
        r = 0
        for k, u in enumerate(M):
            if L.leq(p, upper[k]) and not L.leq(p, u):
                r |= 1 << k
        up_rows.append(r)
    down_rows = []
    for k, u in enumerate(M):
        r = 0
        for i, q in enumerate(J):
            if L.leq(lower[i], u) and not L.leq(q, u):
                r |= 1 << i
        down_rows.append(r)
    return J, M, up_rows, down_rows


def lattice_d_rows(L: Poset) -> tuple[list[int], list[int]]:
    """Join-irreducible indices of L and D as bitsets over their positions."""
    J, M, up_rows, down_rows = lattice_arrows(L)
    out = []
    for i, row in enumerate(up_rows):
        acc = 0
        for k in B.iter_bits(row):
            acc |= down_rows[k]
        out.append(acc & ~(1 << i))
    return J, out


def lattice_d_definitional(L: Lattice) -> tuple[list[int], list[int]]:
    """D from its definition: p ≠ q and some x has p ≤ q ∨ x but p ≰ q★ ∨ x."""
    J = L.ji_index
    rows = []
    for i, p in enumerate(J):
        r = 0
        for k, q in enumerate(J):
            if p == q:
                continue
            qs = L.lower_covers[q][0]
            for x in range(L.size):
                if L.leq(p, L.join(q, x)) and not L.leq(p, L.join(qs, x)):
                    r |= 1 << k
                    break
        rows.append(r)
    return J, rows


def has_d_cycle(rows: list[int]) -> bool:
    star = _star(rows)
    for i, row in enumerate(rows):
        if row >> i & 1:
            return True
        for j in B.iter_bits(row):
            if star[j] >> i & 1:
                return True
    return False


def is_bounded_homomorphic_image(L: Poset) -> bool:
    """D on L and on its dual are both cycle-free."""
    if L.size > 5_000:
        raise CapExceeded("lattice too large for the arrow scan")
    _, rows = lattice_d_rows(L)
    if has_d_cycle(rows):
        return False
    _, rows = lattice_d_rows(dual(L))
    return not has_d_cycle(rows)
