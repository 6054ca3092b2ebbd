"""Lattice property deciders and executable replays of the two equivalence theorems."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import _bits as B
from .depcon import is_bounded_homomorphic_image
from .errors import CapExceeded
from .latbuild import DEFAULT_CAP, Lattice, Poset, build_clop, build_reg, is_lattice, join_failure
from .relcore import TransRel, is_closed_mask, is_open_mask, is_square_free, structural_condition_iv

SD_CAP = 2_000
INTERP_CAP = 20_000


def is_semidistributive(L: Lattice, cap: int = SD_CAP) -> bool:
    """Join- and meet-semidistributivity.

    For fixed z, x ~ y iff x ∨ z = y ∨ z.  Join-semidistributivity at z holds
    iff every ~-class is closed under meets, iff the meet of each class lies in
    the class.  The meet side is dual.
    """
    if L.size > cap:
        raise CapExceeded(f"semidistributivity scan limited to {cap} elements")
    J = L.join_table.tolist()
    M = L.meet_table.tolist()
    return _half_sd(J, M, L.size) and _half_sd(M, J, L.size)


def _half_sd(J, M, n):
    for z in range(n):
        col = J[z]
        acc: dict[int, int] = {}
        for x in range(n):
            v = col[x]
            m = acc.get(v)
            acc[v] = x if m is None else M[m][x]
        for v, m in acc.items():
            if col[m] != v:
                return False
    return True


def is_pseudocomplemented(L: Lattice) -> bool:
    """Every x has a largest y with x ∧ y = 0."""
    bottom = L.bottom
    J, M = L.join_table, L.meet_table
    for x in range(L.size):
        acc = bottom
        for y in np.nonzero(M[x] == bottom)[0]:
            acc = J[acc, y]
        if M[x, acc] != bottom:
            return False
    return True


def interpolation_property(P: Poset, cap: int = INTERP_CAP) -> bool:
    """x0, x1 ≤ y0, y1 always admits z with x0, x1 ≤ z ≤ y0, y1.

    Taking y0, y1 to be two minimal common upper bounds shows this holds iff
    the common upper bounds of any two elements have at most one minimal
    element, that is, iff every pair with an upper bound has a join.
    """
    if P.size > cap:
        raise CapExceeded(f"interpolation scan limited to {cap} elements")
    return join_failure(P, bounded_only=True) is None


def interpolation_witness(P: Poset):
    """(x0, x1, y0, y1) with no interpolant, or None."""
    return join_failure(P, bounded_only=True)


# --- theorem replays --------------------------------------------------------


@dataclass
class TheoremReport:
    theorem: str
    conditions: dict
    verdict: bool
    witness: object = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "conditions": dict(self.conditions),
            "verdict": self.verdict,
            "witness": self.witness,
            **self.extra,
        }


def _report(theorem, conditions, witness=None, extra=None):
    values = list(conditions.values())
    verdict = all(v == values[0] for v in values)
    return TheoremReport(theorem, conditions, verdict, None if verdict else witness, extra or {})


def check_theorem_sqfree(e: TransRel, reg: Lattice | None = None, clop: Poset | None = None,
                         cap: int = DEFAULT_CAP) -> TheoremReport:
    reg = reg if reg is not None else build_reg(e, cap=cap)
    clop = clop if clop is not None else build_clop(e, reg)
    conditions = {
        "square_free": is_square_free(e),
        "clop_equals_reg": clop.masks == reg.masks,
        "clop_is_lattice": is_lattice(clop),
        "interpolation": interpolation_property(clop),
    }
    witness = {"relation": e.pairs()}
    return _report("sqfree", conditions, witness, {"reg": reg.size, "clop": clop.size})


def check_theorem_regesd(e: TransRel, reg: Lattice | None = None, cap: int = DEFAULT_CAP) -> TheoremReport:
    reg = reg if reg is not None else build_reg(e, cap=cap)
    conditions = {
        "bounded_homomorphic_image": is_bounded_homomorphic_image(reg),
        "semidistributive": is_semidistributive(reg),
        "pseudocomplemented": is_pseudocomplemented(reg),
        "structural_iv": structural_condition_iv(e),
    }
    witness = {"relation": e.pairs()}
    return _report("regesd", conditions, witness, {"reg": reg.size})


def nonpseudo_witness(e: TransRel):
    """Clopen sets (a0, a1, c) with c ≠ ∅, a0 ∧ c = a1 ∧ c = ∅ and c ⊆ a0 ∨ a1.

    Needs pairwise distinct a0 ≡ a1 and b with a0 ◁ b or b ◁ a0; returns
    None when no such configuration exists.  Masks refer to e itself (the
    opposite case is transposed back).
    """
    n = e.n
    for a0 in range(n):
        for a1 in range(n):
            if a1 == a0 or not (e.block(a0) >> a1 & 1):
                continue
            for b in range(n):
                if b in (a0, a1):
                    continue
                if e.lt_rows[a0] >> b & 1:
                    return _np_sets(e, a0, a1, b), (a0 + 1, a1 + 1, b + 1, "up")
                if e.lt_cols[a0] >> b & 1:
                    op = e.opposite()
                    sets = _np_sets(op, a0, a1, b)
                    return tuple(B.transpose(m, n) for m in sets), (a0 + 1, a1 + 1, b + 1, "down")
    return None


def _np_sets(e, a0, a1, b):
    n = e.n
    span = e.cc(a0, b)
    x0 = B.product_mask(1 << a0, span & ~(1 << a0), n)
    x1 = B.product_mask(1 << a1, span & ~(1 << a1), n)
    pair = (1 << a0) | (1 << a1)
    c = B.product_mask(pair, span & ~pair, n)
    return x0 & e.mask, x1 & e.mask, c & e.mask


def check_nonpseudo(e: TransRel, found=None) -> bool:
    found = found if found is not None else nonpseudo_witness(e)
    if found is None:
        return True
    (x0, x1, c), _ = found
    n = e.n
    for m in (x0, x1, c):
        if not (is_closed_mask(e, m) and is_open_mask(e, m)):
            return False
    if c == 0:
        return False

    def meet(x, y):
        return B.tcl(B.tin(x & y, e.mask, n), n)

    join = B.tcl(x0 | x1, n)
    return meet(x0, c) == 0 and meet(x1, c) == 0 and c & ~join == 0


# --- corpora -------------------------------------------------------------


def all_transitive_relations(n: int) -> list[TransRel]:
    """Every transitive relation on [n] (brute force over all 2^(n²) relations)."""
    if n > 4:
        raise CapExceeded("exhaustive generation limited to n ≤ 4")
    return [TransRel.from_mask(n, m) for m in range(1 << (n * n)) if B.is_transitive(m, n)]


def random_transitive(n: int, density: float, rng: random.Random) -> TransRel:
    mask = 0
    for bit in range(n * n):
        if rng.random() < density:
            mask |= 1 << bit
    return TransRel.from_mask(n, B.tcl(mask, n))


def random_corpus(n: int, count: int, seed: int, densities=(0.2, 0.4, 0.6)) -> list[TransRel]:
    rng = random.Random(seed)
    return [random_transitive(n, densities[k % len(densities)], rng) for k in range(count)]


def random_antisymmetric(n: int, density: float, rng: random.Random) -> TransRel:
    """Random strict order (with optional loops), via a random linear order."""
    order = list(range(n))
    rng.shuffle(order)
    mask = 0
    for x in range(n):
        for y in range(x + 1, n):
            if rng.random() < density:
                mask |= B.pair_bit(order[x], order[y], n)
    for x in range(n):
        if rng.random() < 0.3:
            mask |= B.pair_bit(x, x, n)
    return TransRel.from_mask(n, B.tcl(mask, n))


def canonical_form(e: TransRel) -> int:
    """Least mask among all relabellings; a cache key for relabelling-invariant checks."""
    n = e.n
    pairs = B.pairs_of(e.mask, n)
    best = None
    for perm in permutations(range(n)):
        m = 0
        for i, j in pairs:
            m |= 1 << (perm[i] * n + perm[j])
        if best is None or m < best:
            best = m
    return best
