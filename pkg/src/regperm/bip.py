"""Bipartition lattices Bip(n) = Reg([n]×[n]) and their subdirect factors S(n, ⟨a,U⟩)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import _bits as B
from .depcon import congruence_summary, dep_graph
from .errors import CapExceeded, ConsistencyError, ConstructionMismatch, InputError
from .jirr import JirrElement
from .latbuild import DEFAULT_CAP, Lattice, build_reg, find_isomorphism, dual, join_closure
from .relcore import SubRel, full

BIP_MAX = 6
_BIP_CACHE: dict[int, Lattice] = {}


def wagner(n: int) -> int:
    """Number of bipartitions of an n-element set."""
    if n < 0:
        raise InputError("n must be non-negative")
    m = [1]
    for k in range(1, n + 1):
        m.append(2 * sum(comb(k, j) * m[k - j] for j in range(1, k + 1)))
    return m[n]


def bip(n: int, allow_large: bool = False, cap: int = DEFAULT_CAP) -> Lattice:
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer")
    if n > BIP_MAX and not allow_large:
        raise CapExceeded(f"Bip({n}) is beyond the default budget (n ≤ {BIP_MAX})")
    if n not in _BIP_CACHE:
        _BIP_CACHE[n] = build_reg(full(n), cap=cap)
    return _BIP_CACHE[n]


def _set_bits(elements) -> int:
    return B.set_to_bits(x - 1 for x in elements)


@dataclass(frozen=True)
class BipJirr:
    """⟨U⟩ = Uᶜ × U (bipartite) or ⟨a,U⟩ = ([n]∖U) × ({a} ∪ U) with a ∉ U (clepsydra)."""

    n: int
    variant: str
    U: frozenset
    a: int | None = None

    def __post_init__(self):
        U = frozenset(self.U)
        object.__setattr__(self, "U", U)
        full_set = frozenset(range(1, self.n + 1))
        if not U <= full_set:
            raise InputError("U must be a subset of [n]")
        if self.variant == "bipartite":
            if not U or U == full_set:
                raise InputError("bipartite join-irreducibles need ∅ ≠ U ≠ [n]")
        elif self.variant == "clepsydra":
            if self.a not in full_set:
                raise InputError("clepsydra needs a point a in [n]")
            object.__setattr__(self, "U", U - {self.a})
        else:
            raise InputError(f"unknown variant {self.variant!r}")

    @property
    def mask(self) -> int:
        n = self.n
        u = _set_bits(self.U)
        comp = ((1 << n) - 1) & ~u
        if self.variant == "bipartite":
            return B.product_mask(comp, u, n)
        a = 1 << (self.a - 1)
        return B.product_mask(comp | a, u | a, n)

    def realized(self) -> SubRel:
        return SubRel(full(self.n), self.mask)

    def __str__(self):
        inner = ",".join(map(str, sorted(self.U)))
        if self.variant == "bipartite":
            return f"<{{{inner}}}>"
        return f"<{self.a},{{{inner}}}>"


def bipartite(n, U) -> BipJirr:
    return BipJirr(n, "bipartite", frozenset(U))


def clepsydra(n, a, U=()) -> BipJirr:
    return BipJirr(n, "clepsydra", frozenset(U), a)


def from_jirr(n: int, j: JirrElement) -> BipJirr:
    t = j.triple
    if t.clepsydra:
        return clepsydra(n, t.a, t.U)
    return bipartite(n, t.U)


def all_bip_jirr(n: int) -> list[BipJirr]:
    out = []
    for r in range(1, n):
        for U in combinations(range(1, n + 1), r):
            out.append(bipartite(n, U))
    for a in range(1, n + 1):
        rest = [x for x in range(1, n + 1) if x != a]
        for r in range(n):
            for U in combinations(rest, r):
                out.append(clepsydra(n, a, U))
    return out


def bip_d_closed_form(n: int, j1: BipJirr, j2: BipJirr) -> bool:
    if j2.variant == "clepsydra":
        return False
    if j1.variant == "clepsydra":
        return True
    U, V = j1.U, j2.U
    if U == V:
        return False
    partition = not (U & V) and len(U | V) == n
    return not (partition and (len(U) == 1 or len(V) == 1))


# --- isolated points, K(n), S(n, <a,U>) ---------------------------------------


def _mask_of(x) -> int:
    return x.mask if isinstance(x, SubRel) else int(x)


def isolated_points(n: int, x) -> frozenset:
    """Points a whose only two-way partner in x is a itself (and (a,a) ∈ x)."""
    m = _mask_of(x)
    rows = B.rows(m, n)
    cols = B.rows(B.transpose(m, n), n)
    return frozenset(a + 1 for a in range(n) if rows[a] & cols[a] == 1 << a)


def isolated_vector(arr, n):
    """Bitset of isolated points for every element of a mask array."""
    zero = B._const(0, arr)
    out = np.zeros(arr.shape, dtype=np.int64)
    for a in range(n):
        iso = (arr & B._const(B.pair_bit(a, a, n), arr)) != zero
        for i in range(n):
            if i == a:
                continue
            both = ((arr & B._const(B.pair_bit(a, i, n), arr)) != zero) & (
                (arr & B._const(B.pair_bit(i, a, n), arr)) != zero
            )
            iso &= ~both
        out |= iso.astype(np.int64) << a
    return out


def member_K(n: int, x) -> bool:
    return not isolated_points(n, x)


def _s_condition_masks(n, a, U):
    if not (1 <= a <= n):
        raise InputError("a must lie in [n]")
    u = _set_bits(U)
    comp = ((1 << n) - 1) & ~u
    need = B.product_mask(comp, 1 << (a - 1), n) | B.product_mask(1 << (a - 1), u, n)
    return need


def member_S(n: int, a: int, U, x) -> bool:
    iso = isolated_points(n, x)
    if not iso <= {a}:
        return False
    if iso == {a}:
        need = _s_condition_masks(n, a, U)
        return need & ~_mask_of(x) == 0
    return True


def member_S_vector(arr, n, a, U):
    iso = isolated_vector(arr, n)
    abit = 1 << (a - 1)
    ok = (iso & ~abit) == 0
    need = B._const(_s_condition_masks(n, a, U), arr)
    has = (need & ~arr) == B._const(0, arr)
    return ok & ((iso == 0) | has)


def generators_G(n: int) -> list[int]:
    return [bipartite(n, U).mask for U in _proper_subsets(n)]


def _proper_subsets(n):
    for r in range(1, n):
        yield from combinations(range(1, n + 1), r)


def k_lattice(n: int) -> Lattice:
    e = full(n)
    return Lattice(masks=join_closure(n, generators_G(n)), env=e, kind="sub")


@dataclass
class IsolCheck:
    """Counts joins seen during closure whose isolated points are not inherited."""

    n: int
    joins: int = 0
    violations: int = 0

    def __call__(self, xs, gs, res):
        n = self.n
        bad = isolated_vector(res, n) & ~(isolated_vector(xs, n) | isolated_vector(gs, n))
        self.joins += len(res)
        self.violations += int(np.count_nonzero(bad))


def s_lattice(n: int, a: int, U, check_isol: bool = True, filter_check: bool = True,
              cap: int = DEFAULT_CAP) -> Lattice:
    """S(n, ⟨a,U⟩) by join-closure, cross-checked against the membership filter of Bip(n)."""
    p = clepsydra(n, a, U)
    e = full(n)
    hook = IsolCheck(n) if check_isol else None
    arr = join_closure(n, generators_G(n) + [p.mask], cap=cap, on_join=hook)
    if hook is not None and hook.violations:
        raise ConsistencyError(f"{hook.violations} joins created an isolated point")
    if filter_check:
        big = bip(n, cap=cap).array
        filtered = big[member_S_vector(big, n, a, p.U)]
        if not np.array_equal(filtered, arr):
            raise ConstructionMismatch(
                f"S({n},{p}): closure has {arr.size} elements, filter has {filtered.size}"
            )
    return Lattice(masks=arr, env=e, kind="sub")


def s_nk(n: int, k: int, **kw) -> Lattice:
    if not (0 <= k < n):
        raise InputError("need 0 ≤ k < n")
    return s_lattice(n, 1, range(2, k + 2), **kw)


@dataclass(frozen=True)
class FactorId:
    n: int
    k: int

    def canonical(self) -> "FactorId":
        k = min(self.k, self.n - 1 - self.k)
        return FactorId(self.n, k)


def relabel_mask(m: int, n: int, perm) -> int:
    """Image of a relation under the point map i ↦ perm[i] (0-based)."""
    out = 0
    for i, j in B.pairs_of(m, n):
        out |= B.pair_bit(perm[i], perm[j], n)
    return out


def _relabelling(n, a, U):
    """0-based permutation sending a ↦ 1 and U ↦ {2, ..., |U|+1}."""
    order = [a] + sorted(U) + sorted(set(range(1, n + 1)) - {a} - set(U))
    perm = [0] * n
    for new, old in enumerate(order):
        perm[old - 1] = new
    return perm


@dataclass
class CensusRow:
    n: int
    k: int
    size: int
    instances: int
    self_dual: bool | None
    mirror_isomorphic: bool | None
    sizes_uniform: bool

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "size": self.size,
            "self_dual": self.self_dual,
            "isomorphic_to_mirror": self.mirror_isomorphic,
            "instances": self.instances,
            "sizes_uniform": self.sizes_uniform,
        }


def factor_census(n: int, all_instances: bool | None = None, iso_checks: bool | None = None) -> list[CensusRow]:
    """S(n,k) for 0 ≤ 2k < n, with relabelling, mirror and self-duality checks.

    Every S(n, ⟨a,U⟩) is built and mapped onto S(n, |U|) by a point relabelling;
    isomorphism searches are used for S(n,k) ≅ S(n,n−1−k) and self-duality.
    """
    if n < 1:
        raise InputError("n must be positive")
    all_instances = n <= 5 if all_instances is None else all_instances
    iso_checks = n <= 5 if iso_checks is None else iso_checks
    canon = {k: s_nk(n, k) for k in range(n)}
    canon_sets = {k: set(L.masks) for k, L in canon.items()}
    sizes_by_k: dict[int, set[int]] = {k: {len(L)} for k, L in canon.items()}
    counts = {k: 0 for k in range(n)}
    if all_instances:
        for a in range(1, n + 1):
            rest = [x for x in range(1, n + 1) if x != a]
            for r in range(n):
                for U in combinations(rest, r):
                    L = s_lattice(n, a, U)
                    sizes_by_k[r].add(len(L))
                    counts[r] += 1
                    perm = _relabelling(n, a, U)
                    image = {relabel_mask(m, n, perm) for m in L.masks}
                    if image != canon_sets[r]:
                        raise ConsistencyError(f"S({n},<{a},{set(U)}>) does not relabel onto S({n},{r})")
                    opp = {B.transpose(m, n) for m in L.masks}
                    mirror = s_lattice(n, a, set(rest) - set(U), filter_check=False, check_isol=False)
                    if opp != set(mirror.masks):
                        raise ConsistencyError("opposite map does not carry S(n,<a,U>) onto its mirror")
    else:
        for k in range(n):
            counts[k] = n * comb(n - 1, k)
    rows = []
    for k in range(0, (n - 1) // 2 + 1):
        mirror_k = n - 1 - k
        self_dual = mirror_iso = None
        if iso_checks:
            self_dual = find_isomorphism(canon[k], dual(canon[k])) is not None
            mirror_iso = find_isomorphism(canon[k], canon[mirror_k]) is not None
        uniform = len(sizes_by_k[k] | sizes_by_k[mirror_k]) == 1
        inst = counts[k] + (counts[mirror_k] if mirror_k != k else 0)
        rows.append(CensusRow(n, k, len(canon[k]), inst, self_dual, mirror_iso, uniform))
    return rows


@dataclass
class ConShape:
    n: int
    status: str
    atoms: int = 0
    top_class_size: int = 0
    atoms_incomparable: bool = False
    atoms_below_top: bool = False
    congruence_count: int | None = None
    count_symbolic: str = ""
    detail: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "OK"

    def to_dict(self):
        return {
            "n": self.n,
            "status": self.status,
            "atoms": self.atoms,
            "top_class_size": self.top_class_size,
            "atoms_pairwise_incomparable": self.atoms_incomparable,
            "atoms_below_single_top": self.atoms_below_top,
            "congruence_count": self.congruence_count,
            "congruence_count_symbolic": self.count_symbolic,
        }


def con_bip_shape(n: int, class_cap: int = 24) -> ConShape:
    """Shape of the congruence class poset of Bip(n): clepsydra atoms under one top."""
    if n < 3:
        return ConShape(n, "NOT_APPLICABLE")
    if n > 5:
        raise CapExceeded("congruence shape check limited to n ≤ 5")
    e = full(n)
    summary = congruence_summary(e, reg=bip(n), class_cap=class_cap, build_factors=False)
    g = summary.graph
    clep = [i for i, v in enumerate(g.vertices) if v.clepsydra]
    bipart = [i for i, v in enumerate(g.vertices) if not v.clepsydra]
    atom_classes = sorted({g.class_of[i] for i in clep})
    top_classes = {g.class_of[i] for i in bipart}
    singletons = all(len(g.classes[c]) == 1 for c in atom_classes)
    incomparable = all(
        g.class_up[c] & (1 << d) == 0 for c in atom_classes for d in atom_classes if c != d
    )
    below_top = len(top_classes) == 1 and all(
        g.class_up[c] >> next(iter(top_classes)) & 1 for c in atom_classes
    )
    atoms = len(atom_classes)
    ok = (
        singletons and incomparable and below_top
        and len(g.classes) == atoms + 1
        and atoms == n * 2 ** (n - 1)
        and sorted(summary.dstar_minimal) == sorted(clep)
    )
    shape = ConShape(
        n, "OK" if ok else "MISMATCH", atoms=atoms,
        top_class_size=len(bipart) if below_top else 0,
        atoms_incomparable=incomparable, atoms_below_top=below_top,
        congruence_count=summary.congruence_count,
        count_symbolic=f"2^{atoms} + 1",
    )
    if summary.congruence_count is not None and summary.congruence_count != 2 ** atoms + 1:
        shape.status = "MISMATCH"
    return shape


def check_bip_d(n: int) -> int:
    """Number of join-irreducible pairs where the closed form and the generic D differ."""
    g = dep_graph(full(n))
    labels = [from_jirr(n, v) for v in g.vertices]
    bad = 0
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            if bip_d_closed_form(n, x, y) != g.d(i, j):
                bad += 1
    return bad


__all__ = [
    "wagner", "bip", "BipJirr", "bipartite", "clepsydra", "from_jirr", "all_bip_jirr",
    "bip_d_closed_form", "isolated_points", "isolated_vector", "member_K", "member_S",
    "member_S_vector", "k_lattice", "s_lattice", "s_nk", "FactorId", "factor_census",
    "CensusRow", "con_bip_shape", "ConShape", "check_bip_d", "relabel_mask",
]
