"""Dense bitmask kernel for relations on {0..n-1}.

A relation is an int whose bit ``i*n + j`` is set iff ``(i, j)`` belongs to it.
Row-major bit order makes integer comparison agree with the row-major
enumeration of pairs, and ``x & ~y == 0`` is set inclusion.

Every routine works on plain Python ints and, elementwise, on numpy arrays.
For ``n <= 8`` a relation fits in ``uint64``; above that, object arrays of
Python ints are used.
"""

from functools import lru_cache

import numpy as np

MAX_N = 64


def pair_bit(i, j, n):
    return 1 << (i * n + j)


@lru_cache(maxsize=None)
def row_mask(n):
    return (1 << n) - 1


@lru_cache(maxsize=None)
def col_masks(n):
    """``col_masks(n)[k]`` has bit ``i*n + k`` set for every row i."""
    out = []
    for k in range(n):
        m = 0
        for i in range(n):
            m |= 1 << (i * n + k)
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def diagonal(n):
    m = 0
    for i in range(n):
        m |= 1 << (i * n + i)
    return m


def dtype_for(n):
    return np.uint64 if n * n <= 64 else object


def as_array(masks, n):
    dt = dtype_for(n)
    if dt is object:
        arr = np.empty(len(masks), dtype=object)
        arr[:] = [int(m) for m in masks]
        return arr
    return np.asarray([int(m) for m in masks], dtype=np.uint64)


_U64 = (1 << 64) - 1


def _const(value, like):
    if isinstance(like, np.ndarray) and like.dtype == np.uint64:
        return np.uint64(value & _U64)
    return value


def tcl(m, n):
    """Transitive closure (Warshall over packed rows).

    For pivot k, every row i holding (i, k) absorbs row k.  The rows that need
    it are picked out by the column mask; multiplying the spread indicator bits
    by row k places a copy of row k into each selected row without carries.
    """
    cols = col_masks(n)
    rm = _const(row_mask(n), m)
    for k in range(n):
        sel = (m & _const(cols[k], m)) >> _const(k, m)
        row = (m >> _const(k * n, m)) & rm
        m = m | (sel * row)
    return m


def tin(a, e, n):
    """Interior of ``a`` inside the transitive relation ``e``."""
    return e & ~tcl(e & ~a, n)


def is_transitive(m, n):
    return tcl(m, n) == m


def transpose(m, n):
    out = 0
    for i in range(n):
        row = (m >> (i * n)) & row_mask(n)
        while row:
            low = row & -row
            j = low.bit_length() - 1
            out |= 1 << (j * n + i)
            row ^= low
    return out


def rows(m, n):
    rm = row_mask(n)
    return [(m >> (i * n)) & rm for i in range(n)]


def from_rows(rs, n):
    m = 0
    for i, r in enumerate(rs):
        m |= r << (i * n)
    return m


def product_mask(rowset, colset, n):
    """Mask of ``rowset x colset`` (both given as n-bit sets)."""
    m = 0
    r = rowset
    while r:
        low = r & -r
        i = low.bit_length() - 1
        m |= colset << (i * n)
        r ^= low
    return m


def iter_bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def popcount(x):
    return bin(x).count("1")


def pairs_of(m, n):
    """0-based pairs in row-major order."""
    return [(b // n, b % n) for b in iter_bits(m)]


def set_to_bits(elements):
    out = 0
    for x in elements:
        out |= 1 << x
    return out


def bits_to_set(x):
    return frozenset(iter_bits(x))


def pack_bool(vec):
    """Boolean numpy vector -> int bitset (bit i set iff vec[i])."""
    if vec.size == 0:
        return 0
    return int.from_bytes(np.packbits(vec, bitorder="little").tobytes(), "little")


def subset_vector(arr, m):
    """Boolean vector: ``arr[i] ⊆ m``."""
    return (arr & _const(~m, arr)) == 0


def superset_vector(arr, m):
    """Boolean vector: ``m ⊆ arr[i]``."""
    return (_const(m, arr) & ~arr) == 0
