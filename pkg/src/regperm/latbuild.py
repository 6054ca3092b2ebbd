"""Explicit finite posets and lattices: Reg(e), Clop(e), subsemilattices, products, duals.

Elements are numbered so that index order is a linear extension of the
order (for set families, sorting bitmasks by integer value does this).
The order is kept as bitsets over indices: ``down[i]`` holds every j ≤ i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _bits as B
from .errors import CapExceeded, ConsistencyError, InputError
from .jirr import jirr_masks
from .relcore import SubRel, TransRel, is_open_mask

DEFAULT_CAP = 2_000_000
ISO_CAP = 5_000


def _low(x):
    return (x & -x).bit_length() - 1


def _high(x):
    return x.bit_length() - 1


class Poset:
    """A finite poset given by down-set bitsets in a linear-extension numbering.

    When ``masks`` is given the order is containment of those bitmasks and
    ``down`` is computed on first use.
    """

    def __init__(self, down=None, masks=None, env: TransRel | None = None, kind="abstract"):
        if down is None and masks is None:
            raise ValueError("need either down sets or masks")
        self.env = env
        self.kind = kind
        if masks is not None:
            arr = masks if isinstance(masks, np.ndarray) else B.as_array(sorted(masks), env.n if env else 8)
            self.array = arr
            self.masks = [int(m) for m in arr]
            self.index = {m: i for i, m in enumerate(self.masks)}
            self.size = len(self.masks)
        else:
            self.array = None
            self.masks = None
            self.index = None
            self.size = len(down)
        if down is not None:
            down = list(down)
            for i, d in enumerate(down):
                if not d >> i & 1 or d >> (i + 1):
                    raise InputError(f"down set {i} must contain {i} and only smaller indices")
            self.__dict__["down"] = down

    def __len__(self):
        return self.size

    @cached_property
    def down(self) -> list[int]:
        if self.size > 60_000:
            raise CapExceeded(f"order table for {self.size} elements is too large")
        arr = self.array
        return [B.pack_bool(B.subset_vector(arr, m)) for m in self.masks]

    @cached_property
    def up(self) -> list[int]:
        if self.masks is not None:
            arr = self.array
            return [B.pack_bool(B.superset_vector(arr, m)) for m in self.masks]
        up = [0] * self.size
        for j, d in enumerate(self.down):
            bit = 1 << j
            for i in B.iter_bits(d):
                up[i] |= bit
        return up

    def leq(self, i, j) -> bool:
        return bool(self.down[j] >> i & 1)

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        out = []
        for i, d in enumerate(self.down):
            rest = d & ~(1 << i)
            covers = []
            while rest:
                h = _high(rest)
                covers.append(h)
                rest &= ~self.down[h]
            out.append(sorted(covers))
        return out

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        out = [[] for _ in range(self.size)]
        for i, lc in enumerate(self.lower_covers):
            for c in lc:
                out[c].append(i)
        return out

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        return [(c, i) for i, lc in enumerate(self.lower_covers) for c in lc]

    @cached_property
    def height(self) -> list[int]:
        h = [0] * self.size
        for i, lc in enumerate(self.lower_covers):
            if lc:
                h[i] = 1 + max(h[c] for c in lc)
        return h

    @cached_property
    def depth(self) -> list[int]:
        d = [0] * self.size
        for i in range(self.size - 1, -1, -1):
            uc = self.upper_covers[i]
            if uc:
                d[i] = 1 + max(d[c] for c in uc)
        return d

    @property
    def ji_index(self) -> list[int]:
        return [i for i, lc in enumerate(self.lower_covers) if len(lc) == 1]

    @property
    def mi_index(self) -> list[int]:
        return [i for i, uc in enumerate(self.upper_covers) if len(uc) == 1]

    @property
    def minimal(self) -> list[int]:
        return [i for i, lc in enumerate(self.lower_covers) if not lc]

    @property
    def maximal(self) -> list[int]:
        return [i for i, uc in enumerate(self.upper_covers) if not uc]

    def element(self, i) -> SubRel:
        return SubRel(self.env, self.masks[i])

    def find(self, x) -> int:
        m = x.mask if isinstance(x, SubRel) else int(x)
        try:
            return self.index[m]
        except (KeyError, TypeError):
            raise InputError("element is not in this structure") from None

    def join_of(self, i, j):
        """Least upper bound by order search, or None when it does not exist."""
        common = self.up[i] & self.up[j]
        if not common:
            return None
        m = _low(common)
        return m if self.up[m] & common == common else None

    def meet_of(self, i, j):
        common = self.down[i] & self.down[j]
        if not common:
            return None
        m = _high(common)
        return m if self.down[m] & common == common else None


class Lattice(Poset):
    """A finite lattice.  ``bottom`` is index 0 and ``top`` the last index."""

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    def join(self, i, j) -> int:
        if self.kind in ("reg", "sub"):
            return self.index[B.tcl(self.masks[i] | self.masks[j], self.env.n)]
        return _low(self.up[i] & self.up[j])

    def meet(self, i, j) -> int:
        if self.kind == "reg":
            e = self.env
            return self.index[B.tcl(B.tin(self.masks[i] & self.masks[j], e.mask, e.n), e.n)]
        return _high(self.down[i] & self.down[j])

    def join_row(self, i) -> np.ndarray:
        """``join(i, j)`` for every j, as an int array."""
        if self.kind in ("reg", "sub"):
            arr = self.array
            res = B.tcl(arr | B._const(self.masks[i], arr), self.env.n)
            return self._locate(res)
        return np.array([self.join(i, j) for j in range(self.size)], dtype=np.int64)

    def meet_row(self, i) -> np.ndarray:
        if self.kind == "reg":
            arr = self.array
            e = self.env
            x = arr & B._const(self.masks[i], arr)
            ecst = B._const(e.mask, arr)
            res = B.tcl(ecst & ~B.tcl(ecst & ~x, e.n), e.n)
            return self._locate(res)
        return np.array([self.meet(i, j) for j in range(self.size)], dtype=np.int64)

    def _locate(self, res):
        if self.array.dtype == object:
            return np.array([self.index[int(m)] for m in res], dtype=np.int64)
        pos = np.searchsorted(self.array, res)
        pos = np.minimum(pos, self.size - 1)
        if not np.array_equal(self.array[pos], res):
            raise ConsistencyError("operation left the element set")
        return pos.astype(np.int64)

    @cached_property
    def join_table(self) -> np.ndarray:
        _table_cap(self.size)
        return np.vstack([self.join_row(i) for i in range(self.size)]) if self.size else np.zeros((0, 0), int)

    @cached_property
    def meet_table(self) -> np.ndarray:
        _table_cap(self.size)
        if self.kind == "reg" and self.size:
            # x ∧ y = orth(orth x ∨ orth y)
            o = orth_index(self)
            return o[self.join_table[np.ix_(o, o)]]
        return np.vstack([self.meet_row(i) for i in range(self.size)]) if self.size else np.zeros((0, 0), int)

    # SubRel-level convenience for Reg(e)
    def join_sets(self, x: SubRel, y: SubRel) -> SubRel:
        return self.element(self.join(self.find(x), self.find(y)))

    def meet_sets(self, x: SubRel, y: SubRel) -> SubRel:
        return self.element(self.meet(self.find(x), self.find(y)))


def _table_cap(size):
    if size > 5_000:
        raise CapExceeded(f"operation table for {size} elements exceeds the cap 5000")


# --- construction -----------------------------------------------------------


def join_closure(n, gens, cap=DEFAULT_CAP, on_join=None, chunk=4096):
    """Sorted array of all joins ``tcl(∪ S)`` of subsets S of ``gens`` (∅ included).

    Breadth-first: every new element is joined with every generator.
    ``on_join(xs, gs, results)`` receives each batch of operand/result arrays.
    """
    gen_arr = np.unique(B.as_array(list(gens), n))
    seen = np.unique(np.concatenate([B.as_array([0], n), gen_arr]))
    frontier = gen_arr
    zero = B._const(0, gen_arr)
    while frontier.size:
        fresh = []
        for start in range(0, frontier.size, chunk):
            xs = frontier[start:start + chunk]
            X = xs[:, None]
            G = gen_arr[None, :]
            keep = (G & ~X) != zero
            xi, gi = np.nonzero(keep)
            if xi.size == 0:
                continue
            xv, gv = xs[xi], gen_arr[gi]
            res = B.tcl(xv | gv, n)
            if on_join is not None:
                on_join(xv, gv, res)
            fresh.append(np.unique(res))
        if not fresh:
            break
        cand = np.unique(np.concatenate(fresh))
        cand = cand[~_member(cand, seen)]
        seen = np.union1d(seen, cand) if seen.dtype != object else np.array(sorted(set(seen.tolist()) | set(cand.tolist())), dtype=object)
        if seen.size > cap:
            raise CapExceeded(f"more than {cap} elements generated")
        frontier = cand
    return seen


def _member(values, sorted_arr):
    if sorted_arr.dtype == object:
        s = set(sorted_arr.tolist())
        return np.array([v in s for v in values], dtype=bool)
    pos = np.searchsorted(sorted_arr, values)
    pos = np.minimum(pos, max(sorted_arr.size - 1, 0))
    return sorted_arr[pos] == values


def _sorted_array(arr):
    if arr.dtype == object:
        out = np.empty(len(arr), dtype=object)
        out[:] = sorted(int(v) for v in arr)
        return out
    return np.sort(arr)


def is_regular_closed_vector(e: TransRel, arr):
    ecst = B._const(e.mask, arr)
    interior = ecst & ~B.tcl(ecst & ~arr, e.n)
    return B.tcl(interior, e.n) == arr


def is_open_vector(e: TransRel, arr):
    comp = B._const(e.mask, arr) & ~arr
    return B.tcl(comp, e.n) == comp


def joins_below(e: TransRel, arr, gens):
    """For each x: tcl of the union of the generators contained in x."""
    acc = arr & B._const(0, arr)
    for g in gens:
        gc = B._const(g, arr)
        inside = (gc & ~arr) == B._const(0, arr)
        acc = np.where(inside, acc | gc, acc)
    return B.tcl(acc, e.n)


def meets_above(e: TransRel, arr, gens):
    """For each x: tcl∘tin of the intersection of the generators containing x."""
    ecst = B._const(e.mask, arr)
    acc = np.full_like(arr, ecst) if arr.dtype != object else np.array([e.mask] * len(arr), dtype=object)
    for g in gens:
        gc = B._const(g, arr)
        over = (arr & ~gc) == B._const(0, arr)
        acc = np.where(over, acc & gc, acc)
    interior = ecst & ~B.tcl(ecst & ~acc, e.n)
    return B.tcl(interior, e.n)


def build_reg(e: TransRel, cap: int = DEFAULT_CAP, verify: bool = True) -> Lattice:
    """Reg(e), generated from the join-irreducibles by joins."""
    gens = jirr_masks(e)
    arr = join_closure(e.n, gens, cap=cap)
    if verify:
        if not np.all(is_regular_closed_vector(e, arr)):
            raise ConsistencyError("a generated element is not regular closed")
        if not np.array_equal(joins_below(e, arr, gens), arr):
            raise ConsistencyError("Reg(e) is not spatial on the enumerated join-irreducibles")
        if int(arr[-1]) != e.mask or int(arr[0]) != 0:
            raise ConsistencyError("bounds of Reg(e) are not ∅ and e")
    return Lattice(masks=arr, env=e, kind="reg")


def build_reg_bruteforce(e: TransRel, max_pairs: int = 20) -> Lattice:
    """Reg(e) by scanning every subset of e; the oracle for :func:`build_reg`."""
    bits = list(B.iter_bits(e.mask))
    if len(bits) > max_pairs:
        raise CapExceeded(f"|e| = {len(bits)} is too large for the subset scan")
    k = np.arange(1 << len(bits), dtype=np.uint64)
    if B.dtype_for(e.n) is object:
        masks = [sum(1 << b for i, b in enumerate(bits) if v >> i & 1) for v in range(1 << len(bits))]
        arr = B.as_array(masks, e.n)
    else:
        arr = np.zeros_like(k)
        for i, b in enumerate(bits):
            arr |= ((k >> np.uint64(i)) & np.uint64(1)) << np.uint64(b)
    keep = arr[is_regular_closed_vector(e, arr)]
    return Lattice(masks=_sorted_array(keep), env=e, kind="reg")


class ClopPoset(Poset):
    @cached_property
    def is_lattice(self) -> bool:
        return is_lattice(self)


def build_clop(e: TransRel, reg: Lattice | None = None, cap: int = DEFAULT_CAP) -> ClopPoset:
    reg = reg if reg is not None else build_reg(e, cap=cap)
    arr = reg.array[is_open_vector(e, reg.array)]
    return ClopPoset(masks=arr, env=e, kind="clop")


def _bitset_matrix(rows, n):
    """Python-int bitsets as an (len(rows), words) uint64 array, bit k in word k // 64."""
    words = max(1, (n + 63) // 64)
    buf = b"".join(r.to_bytes(words * 8, "little") for r in rows)
    return np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(len(rows), words)


def join_failure(P: Poset, bounded_only: bool = False, budget: int = 1 << 18):
    """First pair (i, j) whose join does not exist, as (i, j, m, u), or None.

    ``m`` is the lowest-index common upper bound (always minimal) and ``u`` a
    common upper bound not above it; both are None when i, j have no upper
    bound at all.  With ``bounded_only`` such unbounded pairs are skipped.
    """
    n = P.size
    up = _bitset_matrix(P.up, n)
    one = np.uint64(1)
    i0 = 0
    while i0 < n:
        # take rows i0..i1-1 so that the pair block stays within budget
        i1, count = i0, 0
        while i1 < n and (count == 0 or count + n - i1 - 1 <= budget):
            count += n - i1 - 1
            i1 += 1
        I = np.repeat(np.arange(i0, i1), [n - i - 1 for i in range(i0, i1)])
        starts = np.cumsum([0] + [n - i - 1 for i in range(i0, i1 - 1)])
        J = np.arange(I.size) - np.repeat(starts, [n - i - 1 for i in range(i0, i1)]) + I + 1
        i0 = i1
        if I.size == 0:
            continue
        C = up[I] & up[J]
        nz = C != 0
        has = nz.any(axis=1)
        if not bounded_only and not has.all():
            k = int(np.argmin(has))
            return (int(I[k]), int(J[k]), None, None)
        rows = np.nonzero(has)[0]
        if rows.size == 0:
            continue
        C = C[rows]
        w = nz[rows].argmax(axis=1)
        word = C[np.arange(rows.size), w]
        low = word & (~word + one)
        m = w * 64 + np.log2(low.astype(np.float64)).astype(np.int64)
        bad = (C & ~up[m]).any(axis=1)
        if bad.any():
            k = int(np.argmax(bad))
            i, j, mk = int(I[rows[k]]), int(J[rows[k]]), int(m[k])
            rest = P.up[i] & P.up[j] & ~P.up[mk]
            return (i, j, mk, _low(rest))
    return None


def is_lattice(P: Poset) -> bool:
    """A finite poset with a least element is a lattice iff every pair has a join."""
    if P.size == 0 or len(P.minimal) != 1:
        return False
    return join_failure(P) is None


def sub_lattice(e: TransRel, gens, cap: int = DEFAULT_CAP, on_join=None) -> Lattice:
    """(∨,0)-subsemilattice of Reg(e) generated by ``gens`` (bitmasks)."""
    arr = join_closure(e.n, gens, cap=cap, on_join=on_join)
    return Lattice(masks=arr, env=e, kind="sub")


def lattice_from_masks(e: TransRel, masks, kind="sub") -> Lattice:
    arr = _sorted_array(B.as_array(list(masks), e.n))
    return Lattice(masks=arr, env=e, kind=kind)


# --- verification -----------------------------------------------------------


@dataclass
class CheckReport:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, what, detail=None):
        self.ok = False
        if len(self.failures) < 10:
            self.failures.append((what, detail))

    def to_dict(self):
        return {"ok": self.ok, "failures": [[w, d] for w, d in self.failures]}


def orth_index(L: Lattice) -> np.ndarray:
    e = L.env
    arr = L.array
    res = B.tcl(B._const(e.mask, arr) & ~arr, e.n)
    return L._locate(res)


def verify_ortholattice(L: Lattice, e: TransRel | None = None) -> CheckReport:
    """Check that x ↦ orth(x) is an orthocomplementation, with both de Morgan laws."""
    rep = CheckReport()
    try:
        o = orth_index(L)
    except ConsistencyError:
        rep.fail("closure", "orth maps outside the lattice")
        return rep
    for i in range(L.size):
        if o[o[i]] != i:
            rep.fail("involution", L.masks[i])
            break
    for c, i in L.covers:
        if not L.leq(int(o[i]), int(o[c])):
            rep.fail("antitone", (L.masks[c], L.masks[i]))
            break
    for i in range(L.size):
        if L.meet(i, int(o[i])) != L.bottom:
            rep.fail("x ∧ orth(x) = 0", L.masks[i])
            break
        if L.join(i, int(o[i])) != L.top:
            rep.fail("x ∨ orth(x) = 1", L.masks[i])
            break
    if L.size <= 5_000:
        for i in range(L.size):
            jr = L.join_row(i)
            mr = L.meet_row(i)
            lhs_j = o[jr]
            rhs_j = L.meet_row(int(o[i]))[o]
            if not np.array_equal(lhs_j, rhs_j):
                rep.fail("orth(x ∨ y) = orth x ∧ orth y", L.masks[i])
                break
            lhs_m = o[mr]
            rhs_m = L.join_row(int(o[i]))[o]
            if not np.array_equal(lhs_m, rhs_m):
                rep.fail("orth(x ∧ y) = orth x ∨ orth y", L.masks[i])
                break
    return rep


def verify_spatial(L: Lattice, e: TransRel) -> CheckReport:
    rep = CheckReport()
    gens = jirr_masks(e)
    found = sorted(L.masks[i] for i in L.ji_index)
    if found != sorted(gens):
        rep.fail("join-irreducibles", "order-theoretic scan differs from the enumeration")
    if not np.array_equal(joins_below(e, L.array, gens), L.array):
        rep.fail("spatial", "some element is not the join of the join-irreducibles below it")
    return rep


def verify_macneille(e: TransRel, reg: Lattice, clop: Poset) -> CheckReport:
    """Reg(e) is join- and meet-generated by Clop(e), and its join-irreducibles are clopen."""
    rep = CheckReport()
    clopens = clop.masks
    if not np.array_equal(joins_below(e, reg.array, clopens), reg.array):
        rep.fail("join-dense", "an element is not a join of clopens")
    if not np.array_equal(meets_above(e, reg.array, clopens), reg.array):
        rep.fail("meet-dense", "an element is not a meet of clopens")
    clop_set = set(clopens)
    for i in reg.ji_index:
        if reg.masks[i] not in clop_set:
            rep.fail("join-irreducible not clopen", reg.masks[i])
    for i in reg.mi_index:
        if reg.masks[i] not in clop_set:
            rep.fail("meet-irreducible not clopen", reg.masks[i])
    return rep


# --- abstract constructions --------------------------------------------------


def chain_lattice(k: int) -> Lattice:
    return Lattice(down=[(1 << (i + 1)) - 1 for i in range(k)])


def boolean_lattice(m: int) -> Lattice:
    size = 1 << m
    down = []
    for s in range(size):
        d = 0
        sub = s
        while True:
            d |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & s
        down.append(d)
    return Lattice(down=down)


def dual(P: Poset) -> Poset:
    n = P.size
    down = []
    for i in range(n - 1, -1, -1):
        d = 0
        for j in B.iter_bits(P.up[i]):
            d |= 1 << (n - 1 - j)
        down.append(d)
    return (Lattice if isinstance(P, Lattice) else Poset)(down=down)


def product(P: Poset, Q: Poset, cap: int = ISO_CAP * 4) -> Poset:
    n1, n2 = P.size, Q.size
    if n1 * n2 > cap:
        raise CapExceeded(f"product of {n1} and {n2} elements exceeds {cap}")
    down = []
    for i in range(n1):
        for j in range(n2):
            d = 0
            for k in B.iter_bits(P.down[i]):
                d |= Q.down[j] << (k * n2)
            down.append(d)
    both = isinstance(P, Lattice) and isinstance(Q, Lattice)
    return (Lattice if both else Poset)(down=down)


# --- isomorphism ----------------------------------------------------------


def _refine(posets):
    """Joint colour refinement over Hasse diagrams; returns one colour list per poset."""
    colours = []
    for P in posets:
        colours.append([
            (P.height[i], P.depth[i], len(P.lower_covers[i]), len(P.upper_covers[i]))
            for i in range(P.size)
        ])
    colours = _relabel(colours)
    while True:
        sigs = []
        for P, col in zip(posets, colours):
            sigs.append([
                (col[i], tuple(sorted(col[c] for c in P.lower_covers[i])),
                 tuple(sorted(col[c] for c in P.upper_covers[i])))
                for i in range(P.size)
            ])
        new = _relabel(sigs)
        if sum(len(set(c)) for c in new) == sum(len(set(c)) for c in colours):
            return new
        colours = new


def _relabel(sig_lists):
    table = {}
    for sig in sorted({s for sl in sig_lists for s in sl}):
        table[sig] = len(table)
    return [[table[s] for s in sl] for sl in sig_lists]


def find_isomorphism(P: Poset, Q: Poset, cap: int = ISO_CAP, node_budget: int = 5_000_000):
    """An order isomorphism P → Q as a list, or None.  Exact backtracking."""
    if max(P.size, Q.size) > cap:
        raise CapExceeded(f"isomorphism test limited to {cap} elements")
    if P.size != Q.size or len(P.covers) != len(Q.covers):
        return None
    n = P.size
    if n == 0:
        return []
    cp, cq = _refine([P, Q])
    if sorted(cp) != sorted(cq):
        return None
    by_colour: dict[int, list[int]] = {}
    for j in range(n):
        by_colour.setdefault(cq[j], []).append(j)
    qlc = [frozenset(lc) for lc in Q.lower_covers]

    def candidates(i, f):
        lc = P.lower_covers[i]
        if not lc:
            return [j for j in by_colour[cp[i]] if not qlc[j]]
        target = frozenset(f[c] for c in lc)
        return [j for j in Q.upper_covers[f[lc[0]]] if cq[j] == cp[i] and qlc[j] == target]

    f = [-1] * n
    used = [False] * n
    stack = [iter(candidates(0, f))]
    nodes = 0
    i = 0
    while stack:
        advanced = False
        for j in stack[-1]:
            if used[j]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise CapExceeded("isomorphism search exceeded its node budget")
            f[i] = j
            used[j] = True
            i += 1
            if i == n:
                return f
            stack.append(iter(candidates(i, f)))
            advanced = True
            break
        if not advanced:
            stack.pop()
            i -= 1
            if i >= 0:
                used[f[i]] = False
                f[i] = -1
    return None


def is_isomorphic(P: Poset, Q: Poset, cap: int = ISO_CAP) -> bool:
    return find_isomorphism(P, Q, cap) is not None


def is_dually_isomorphic(P: Poset, Q: Poset, cap: int = ISO_CAP) -> bool:
    return find_isomorphism(P, dual(Q), cap) is not None


def is_order_isomorphism(P: Poset, Q: Poset, f) -> bool:
    if len(f) != P.size or sorted(f) != list(range(Q.size)):
        return False
    for i in range(P.size):
        image = 0
        for j in B.iter_bits(P.down[i]):
            image |= 1 << f[j]
        if image != Q.down[f[i]]:
            return False
    return True


# --- export ---------------------------------------------------------------


def hasse_dot(P: Poset, mark_nonclopen: bool = False, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle, fontsize=9];"]
    open_flags = None
    if mark_nonclopen and P.env is not None and P.masks is not None:
        open_flags = [is_open_mask(P.env, m) for m in P.masks]
    for i in range(P.size):
        if P.masks is not None and P.env is not None:
            pairs = " ".join(f"{a+1}{b+1}" for a, b in B.pairs_of(P.masks[i], P.env.n))
            label = pairs or "∅"
        else:
            label = str(i)
        attrs = [f'label="{label}"']
        if open_flags is not None and not open_flags[i]:
            attrs.append("peripheries=2")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for c, i in P.covers:
        lines.append(f"  n{c} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
