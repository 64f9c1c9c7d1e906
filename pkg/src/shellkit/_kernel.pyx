# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled level expansion for the subset DP.

A level is a pair ``(masks, counts)``: ``masks`` a sorted uint64 vector of
setments, ``counts`` a (len, limbs) uint64 matrix holding each exact count
little-endian in 64-bit limbs.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset, memcpy

cnp.import_array()


cdef class Tables:
    """Packed rows of a PssRowFamily."""
    cdef int n
    cdef int64_t *row_start      # per suffix, n + 1 entries
    cdef uint64_t *zeros
    cdef uint64_t *ones
    cdef int64_t *bub_start      # per row, nrows + 1 entries
    cdef uint64_t *bubbles
    cdef object _keep

    def __cinit__(self, int n, row_start, zeros, ones, bub_start, bubbles):
        self.n = n
        a = np.ascontiguousarray(row_start, dtype=np.int64)
        b = np.ascontiguousarray(zeros, dtype=np.uint64)
        c = np.ascontiguousarray(ones, dtype=np.uint64)
        d = np.ascontiguousarray(bub_start, dtype=np.int64)
        e = np.ascontiguousarray(bubbles, dtype=np.uint64)
        if e.shape[0] == 0:
            e = np.zeros(1, dtype=np.uint64)
        if b.shape[0] == 0:
            b = np.zeros(1, dtype=np.uint64)
            c = np.zeros(1, dtype=np.uint64)
        self._keep = (a, b, c, d, e)
        self.row_start = <int64_t *> cnp.PyArray_DATA(a)
        self.zeros = <uint64_t *> cnp.PyArray_DATA(b)
        self.ones = <uint64_t *> cnp.PyArray_DATA(c)
        self.bub_start = <int64_t *> cnp.PyArray_DATA(d)
        self.bubbles = <uint64_t *> cnp.PyArray_DATA(e)

    def contains(self, uint64_t a, int k):
        return bool(is_member(self, a, k - 1))


cdef inline bint is_member(Tables t, uint64_t a, int k) noexcept nogil:
    cdef int64_t r, q
    cdef bint ok
    for r in range(t.row_start[k], t.row_start[k + 1]):
        if a & t.zeros[r]:
            continue
        if (a & t.ones[r]) != t.ones[r]:
            continue
        ok = True
        for q in range(t.bub_start[r], t.bub_start[r + 1]):
            if not (a & t.bubbles[q]):
                ok = False
                break
        if ok:
            return True
    return False


cdef inline uint64_t mix(uint64_t x) noexcept nogil:
    x ^= x >> 30
    x *= 0xbf58476d1ce4e5b9ULL
    x ^= x >> 27
    x *= 0x94d049bb133111ebULL
    x ^= x >> 31
    return x


cdef struct Table:
    int64_t *slots
    uint64_t *keys
    uint64_t *vals
    int64_t cap
    int64_t size
    int64_t entries_cap
    int limbs
    bint failed


cdef int table_init(Table *h, int64_t hint, int limbs) noexcept nogil:
    cdef int64_t cap = 64
    while cap < 2 * hint:
        cap <<= 1
    h.cap = cap
    h.size = 0
    h.limbs = limbs
    h.entries_cap = cap // 2 + 1
    h.failed = False
    h.slots = <int64_t *> malloc(cap * sizeof(int64_t))
    h.keys = <uint64_t *> malloc(h.entries_cap * sizeof(uint64_t))
    h.vals = <uint64_t *> calloc(h.entries_cap * limbs, sizeof(uint64_t))
    if h.slots == NULL or h.keys == NULL or h.vals == NULL:
        h.failed = True
        return -1
    memset(h.slots, 0xff, cap * sizeof(int64_t))
    return 0


cdef void table_free(Table *h) noexcept nogil:
    free(h.slots)
    free(h.keys)
    free(h.vals)
    h.slots = NULL
    h.keys = NULL
    h.vals = NULL


cdef int table_grow(Table *h) noexcept nogil:
    cdef int64_t newcap = h.cap * 2
    cdef int64_t newentries = newcap // 2 + 1
    cdef int64_t *slots = <int64_t *> malloc(newcap * sizeof(int64_t))
    cdef uint64_t *keys = <uint64_t *> malloc(newentries * sizeof(uint64_t))
    cdef uint64_t *vals = <uint64_t *> calloc(newentries * h.limbs, sizeof(uint64_t))
    cdef int64_t i, pos
    cdef uint64_t mask = <uint64_t> (newcap - 1)
    if slots == NULL or keys == NULL or vals == NULL:
        free(slots)
        free(keys)
        free(vals)
        h.failed = True
        return -1
    memset(slots, 0xff, newcap * sizeof(int64_t))
    memcpy(keys, h.keys, h.size * sizeof(uint64_t))
    memcpy(vals, h.vals, h.size * h.limbs * sizeof(uint64_t))
    for i in range(h.size):
        pos = <int64_t> (mix(keys[i]) & mask)
        while slots[pos] >= 0:
            pos = (pos + 1) & <int64_t> mask
        slots[pos] = i
    free(h.slots)
    free(h.keys)
    free(h.vals)
    h.slots = slots
    h.keys = keys
    h.vals = vals
    h.cap = newcap
    h.entries_cap = newentries
    return 0


cdef int table_add(Table *h, uint64_t key, const uint64_t *val) noexcept nogil:
    cdef uint64_t mask = <uint64_t> (h.cap - 1)
    cdef int64_t pos = <int64_t> (mix(key) & mask)
    cdef int64_t e
    cdef int j
    cdef uint64_t carry, s, s2, *dst
    cdef bint c1, c2
    while True:
        e = h.slots[pos]
        if e < 0:
            break
        if h.keys[e] == key:
            dst = h.vals + e * h.limbs
            carry = 0
            for j in range(h.limbs):
                s = dst[j] + val[j]
                c1 = s < dst[j]
                s2 = s + carry
                c2 = s2 < s
                dst[j] = s2
                carry = c1 | c2
            return 0
        pos = (pos + 1) & <int64_t> mask
    if h.size + 1 >= h.entries_cap:
        if table_grow(h) < 0:
            return -1
        return table_add(h, key, val)
    e = h.size
    h.size += 1
    h.slots[pos] = e
    h.keys[e] = key
    memcpy(h.vals + e * h.limbs, val, h.limbs * sizeof(uint64_t))
    return 0


cdef object table_export(Table *h):
    """Sorted (masks, counts) arrays; frees the table."""
    cdef int64_t m = h.size
    keys = np.empty(m, dtype=np.uint64)
    vals = np.empty((m, h.limbs), dtype=np.uint64)
    cdef uint64_t[::1] kv = keys
    cdef uint64_t[:, ::1] vv = vals
    cdef int64_t i
    cdef int j
    for i in range(m):
        kv[i] = h.keys[i]
        for j in range(h.limbs):
            vv[i, j] = h.vals[i * h.limbs + j]
    table_free(h)
    order = np.argsort(keys, kind="stable")
    return keys[order], vals[order]


def expand(const uint64_t[::1] masks, const uint64_t[:, ::1] counts,
           Tables tables, int n, bint up):
    """One DP step.

    Rising: each setment ``S`` sends its count to ``S | b`` for every
    ``b`` outside ``S`` with ``(S, b)`` a PSS.  Falling: ``S`` sends to
    ``S - b`` for every ``b`` in ``S`` with ``(S - b, b)`` a PSS.
    """
    cdef int64_t m = masks.shape[0]
    cdef int limbs = counts.shape[1] if counts.shape[0] else 1
    cdef Table h
    cdef int64_t i
    cdef int b
    cdef uint64_t s, bit, full, other
    cdef int rc = 0
    if n == 64:
        full = 0xffffffffffffffffULL
    else:
        full = ((<uint64_t> 1) << n) - 1
    if table_init(&h, m, limbs) < 0:
        table_free(&h)
        raise MemoryError("level hash table")
    with nogil:
        for i in range(m):
            s = masks[i]
            for b in range(n):
                bit = (<uint64_t> 1) << b
                if up:
                    if s & bit:
                        continue
                    if is_member(tables, s, b):
                        rc = table_add(&h, s | bit, &counts[i, 0])
                else:
                    if not (s & bit):
                        continue
                    other = s & ~bit
                    if is_member(tables, other, b):
                        rc = table_add(&h, other, &counts[i, 0])
                if rc < 0:
                    break
            if rc < 0:
                break
    if rc < 0 or h.failed:
        table_free(&h)
        raise MemoryError("level hash table")
    return table_export(&h)


def accumulate(const uint64_t[::1] masks, const uint64_t[:, ::1] counts):
    """Sum counts of equal masks; returns a sorted level."""
    cdef int64_t m = masks.shape[0]
    cdef int limbs = counts.shape[1] if counts.shape[0] else 1
    cdef Table h
    cdef int64_t i
    cdef int rc = 0
    if table_init(&h, m, limbs) < 0:
        table_free(&h)
        raise MemoryError("level hash table")
    with nogil:
        for i in range(m):
            rc = table_add(&h, masks[i], &counts[i, 0])
            if rc < 0:
                break
    if rc < 0 or h.failed:
        table_free(&h)
        raise MemoryError("level hash table")
    return table_export(&h)


def member_mask(Tables tables, uint64_t s, int n, bint up):
    """Bitmask of the letters ``b`` a setment ``s`` extends or shrinks by."""
    cdef uint64_t out = 0, bit
    cdef int b
    for b in range(n):
        bit = (<uint64_t> 1) << b
        if up:
            if not (s & bit) and is_member(tables, s, b):
                out |= bit
        elif s & bit and is_member(tables, s & ~bit, b):
            out |= bit
    return out
