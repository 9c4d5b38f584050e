# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled evaluation of the root-deletion recursion.

A line-for-line port of ``_pyengine.run`` and ``_pyengine.run_dmrw`` over C
arrays.  Keys, values and visiting order are identical, so both backends
produce the same memo table for the same problem.
"""
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free
from libcpp.vector cimport vector

cimport cython

cdef extern from *:
    void __builtin_prefetch(const void *addr) nogil

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    RIGHT = 0
    LEFT = 1
    KIND_MATCH = 3
    KIND_DEL_F = 1
    KIND_DEL_G = 2
    MODE_RIGHT = 0
    MODE_KLEIN_F = 1
    MODE_KLEIN_G = 2
    MODE_RANDOM = 4


# -- open-addressing table: a zero slot key means empty, stored keys are key + 1

cdef inline uint64_t _mix(uint64_t x) noexcept nogil:
    x ^= x >> 33
    x *= 0xff51afd7ed558ccdULL
    x ^= x >> 33
    return x


cdef inline uint64_t _splitmix(uint64_t x) noexcept nogil:
    x += 0x9E3779B97F4A7C15ULL
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef inline int random_direction(uint64_t seed, int64_t fa, int64_t fb, int64_t ga, int64_t gb) noexcept nogil:
    cdef uint64_t h = _splitmix(seed)
    h = _splitmix(h ^ <uint64_t> fa)
    h = _splitmix(h ^ <uint64_t> fb)
    h = _splitmix(h ^ <uint64_t> ga)
    h = _splitmix(h ^ <uint64_t> gb)
    return <int> (h & 1)


cdef struct Slot:
    uint64_t key
    int64_t val


@cython.final
cdef class Memo:
    cdef Slot *slots
    cdef uint64_t cap
    cdef uint64_t mask
    cdef readonly uint64_t count
    cdef readonly int64_t n, m
    cdef uint64_t nf1, ng1, gspan

    def __cinit__(self, int64_t n, int64_t m):
        self.n = n
        self.m = m
        self.nf1 = n + 1
        self.ng1 = m + 1
        self.gspan = self.ng1 * self.ng1
        self.cap = 1 << 10
        self.mask = self.cap - 1
        self.count = 0
        self.slots = <Slot *> calloc(self.cap, sizeof(Slot))
        if self.slots == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.slots)

    cdef int _grow(self) except -1:
        cdef uint64_t old_cap = self.cap
        cdef Slot *old = self.slots
        cdef uint64_t i, j, k
        cdef uint64_t new_cap = old_cap * 2
        cdef Slot *fresh = <Slot *> calloc(new_cap, sizeof(Slot))
        if fresh == NULL:
            raise MemoryError("memo table does not fit in memory")
        self.slots = fresh
        self.cap = new_cap
        self.mask = new_cap - 1
        for i in range(old_cap):
            k = old[i].key
            if k:
                j = _mix(k) & self.mask
                while fresh[j].key:
                    j = (j + 1) & self.mask
                fresh[j] = old[i]
        free(old)
        return 0

    cdef inline int64_t get(self, uint64_t key) noexcept nogil:
        """Stored value, or -1 when absent (values are never negative)."""
        cdef uint64_t k = key + 1
        cdef uint64_t j = _mix(k) & self.mask
        cdef uint64_t s
        while True:
            s = self.slots[j].key
            if s == k:
                return self.slots[j].val
            if s == 0:
                return -1
            j = (j + 1) & self.mask

    cdef inline int put(self, uint64_t key, int64_t val) except -1:
        cdef uint64_t k = key + 1
        cdef uint64_t j
        if (self.count + 1) * 10 > self.cap * 7:
            self._grow()
        j = _mix(k) & self.mask
        while self.slots[j].key and self.slots[j].key != k:
            j = (j + 1) & self.mask
        if self.slots[j].key == 0:
            self.count += 1
        self.slots[j].key = k
        self.slots[j].val = val
        return 0

    cdef inline void prefetch(self, uint64_t key) noexcept nogil:
        __builtin_prefetch(&self.slots[_mix(key + 1) & self.mask])

    cdef inline uint64_t key(self, int64_t fa, int64_t fb, int64_t ga, int64_t gb) noexcept nogil:
        return (<uint64_t> fa * self.nf1 + <uint64_t> fb) * self.gspan + <uint64_t> ga * self.ng1 + <uint64_t> gb

    # -- Python-facing view, same surface as PyMemo -------------------------

    def lookup(self, fa, fb, ga, gb):
        cdef int64_t v = self.get(self.key(fa, fb, ga, gb))
        if v < 0:
            return None
        return v >> 3, v & 7

    def __len__(self):
        return self.count

    def __contains__(self, quad):
        fa, fb, ga, gb = quad
        return self.get(self.key(fa, fb, ga, gb)) >= 0

    def key_array(self):
        """All stored keys as a uint64 array, in table order."""
        out = np.empty(self.count, dtype=np.uint64)
        cdef uint64_t[::1] view = out
        cdef uint64_t i, j = 0
        for i in range(self.cap):
            if self.slots[i].key:
                view[j] = self.slots[i].key - 1
                j += 1
        return out

    def keys(self):
        ks = self.key_array()
        fk, gk = np.divmod(ks, np.uint64(self.gspan))
        fa, fb = np.divmod(fk, np.uint64(self.nf1))
        ga, gb = np.divmod(gk, np.uint64(self.ng1))
        return list(zip(fa.tolist(), fb.tolist(), ga.tolist(), gb.tolist()))

    def side_counts(self):
        """Distinct F-side and G-side subforests among the stored keys."""
        fseen = np.zeros(self.nf1 * self.nf1, dtype=np.uint8)
        gseen = np.zeros(self.gspan, dtype=np.uint8)
        cdef unsigned char[::1] fv = fseen
        cdef unsigned char[::1] gv = gseen
        cdef uint64_t i, k
        cdef uint64_t fc = 0, gc = 0
        for i in range(self.cap):
            k = self.slots[i].key
            if k:
                k -= 1
                if not fv[k // self.gspan]:
                    fv[k // self.gspan] = 1
                    fc += 1
                if not gv[k % self.gspan]:
                    gv[k % self.gspan] = 1
                    gc += 1
        return fc, gc


# -- per-side arrays ----------------------------------------------------------

cdef struct SideArr:
    int64_t n
    const int64_t *size
    const int64_t *post
    const int64_t *post_node
    const int64_t *parent
    const int64_t *pre_sum
    const int64_t *label
    const int64_t *delete
    const int64_t *tl_ptr
    const int64_t *tl


cdef inline const int64_t *_ptr(cnp.ndarray a):
    return <const int64_t *> cnp.PyArray_DATA(a)


cdef SideArr _side(object s, list keep):
    cdef SideArr out
    arrays = [np.ascontiguousarray(getattr(s, name), dtype=np.int64) for name in
              ("size", "post", "post_node", "parent", "pre_sum", "label", "delete",
               "toplight_ptr", "toplight")]
    keep.extend(arrays)
    out.n = s.n
    out.size = _ptr(arrays[0])
    out.post = _ptr(arrays[1])
    out.post_node = _ptr(arrays[2])
    out.parent = _ptr(arrays[3])
    out.pre_sum = _ptr(arrays[4])
    out.label = _ptr(arrays[5])
    out.delete = _ptr(arrays[6])
    out.tl_ptr = _ptr(arrays[7])
    out.tl = _ptr(arrays[8])
    return out


cdef inline void minus_root(const SideArr *S, int64_t v, int64_t *a, int64_t *b) noexcept nogil:
    if S.size[v] == 1:
        a[0] = S.n
        b[0] = 0
    else:
        a[0] = v + 1
        b[0] = S.n - S.post[v]


cdef inline void del_left(const SideArr *S, int64_t a, int64_t b, int64_t r,
                          int64_t *oa, int64_t *ob) noexcept nogil:
    cdef int64_t x
    if a == r:
        minus_root(S, a, oa, ob)
        return
    if S.size[a] > 1:
        oa[0] = a + 1
        ob[0] = b
        return
    x = a + 1
    while x < r and r < x + S.size[x]:
        x += 1
    oa[0] = x
    ob[0] = b


cdef inline void del_right(const SideArr *S, int64_t a, int64_t b, int64_t r,
                           int64_t *oa, int64_t *ob) noexcept nogil:
    cdef int64_t y
    if a == r:
        minus_root(S, r, oa, ob)
        return
    if S.size[r] > 1:
        oa[0] = a
        ob[0] = b + 1
        return
    y = S.post_node[S.post[r] - 1]
    while y < a and a < y + S.size[y]:
        y = S.post_node[S.post[y] - 1]
    oa[0] = a
    ob[0] = S.n - 1 - S.post[y]


cdef inline void drop_left(const SideArr *S, int64_t a, int64_t b, int64_t r,
                           int64_t *oa, int64_t *ob) noexcept nogil:
    cdef int64_t x
    if a == r:
        oa[0] = S.n
        ob[0] = 0
        return
    x = a + S.size[a]
    while x < r and r < x + S.size[x]:
        x += 1
    oa[0] = x
    ob[0] = b


cdef inline void drop_right(const SideArr *S, int64_t a, int64_t b, int64_t r,
                            int64_t *oa, int64_t *ob) noexcept nogil:
    cdef int64_t y
    if a == r:
        oa[0] = S.n
        ob[0] = 0
        return
    y = S.post_node[S.post[r] - S.size[r]]
    while y < a and a < y + S.size[y]:
        y = S.post_node[S.post[y] - 1]
    oa[0] = a
    ob[0] = S.n - 1 - S.post[y]


cdef inline int64_t forest_cost(const SideArr *S, int64_t a, int64_t b) noexcept nogil:
    cdef int64_t r, total, u
    if a == S.n:
        return 0
    r = S.post_node[S.n - 1 - b]
    total = S.pre_sum[r + S.size[r]] - S.pre_sum[a]
    u = S.parent[r]
    while u > a:
        total -= S.pre_sum[u + 1] - S.pre_sum[u]
        u = S.parent[u]
    return total


cdef struct Frame:
    int64_t fa, fb, ga, gb, d


cdef int run(Memo memo, const SideArr *F, const SideArr *G, const int64_t *rel,
             int64_t rel_cols, int64_t fa0, int64_t fb0, int64_t ga0, int64_t gb0,
             int mode, uint64_t seed=0) except -1:
    cdef vector[Frame] stack
    cdef Frame fr_, push
    cdef int64_t n = F.n, m = G.n
    cdef int64_t fa, fb, ga, gb, d, fr, gr, x, y
    cdef int64_t fa1, fb1, ga2, gb2, fa3, fb3, ga3, gb3, fa4, fb4, ga4, gb4
    cdef int64_t v1, v2, v3, v4, best, c
    cdef int kind
    cdef uint64_t key, k1, k2, k3, k4

    fr_.fa = fa0; fr_.fb = fb0; fr_.ga = ga0; fr_.gb = gb0; fr_.d = -1
    stack.push_back(fr_)
    while stack.size():
        fr_ = stack.back()
        stack.pop_back()
        fa = fr_.fa; fb = fr_.fb; ga = fr_.ga; gb = fr_.gb; d = fr_.d
        key = memo.key(fa, fb, ga, gb)
        if d < 0:
            if memo.get(key) >= 0:
                continue
            if fa == n:
                memo.put(key, forest_cost(G, ga, gb) << 3)
                continue
            if ga == m:
                memo.put(key, forest_cost(F, fa, fb) << 3)
                continue
        fr = F.post_node[n - 1 - fb]
        gr = G.post_node[m - 1 - gb]
        if d < 0:
            if mode == MODE_RIGHT:
                d = RIGHT
            elif mode == MODE_KLEIN_F:
                d = LEFT if F.size[fa] <= F.size[fr] else RIGHT
            elif mode == MODE_KLEIN_G:
                d = LEFT if G.size[ga] <= G.size[gr] else RIGHT
            else:
                d = random_direction(seed, fa, fb, ga, gb)
        if d == RIGHT:
            x = fr
            y = gr
            del_right(F, fa, fb, fr, &fa1, &fb1)
            del_right(G, ga, gb, gr, &ga2, &gb2)
            drop_right(F, fa, fb, fr, &fa4, &fb4)
            drop_right(G, ga, gb, gr, &ga4, &gb4)
        else:
            x = fa
            y = ga
            del_left(F, fa, fb, fr, &fa1, &fb1)
            del_left(G, ga, gb, gr, &ga2, &gb2)
            drop_left(F, fa, fb, fr, &fa4, &fb4)
            drop_left(G, ga, gb, gr, &ga4, &gb4)
        minus_root(F, x, &fa3, &fb3)
        minus_root(G, y, &ga3, &gb3)
        k1 = memo.key(fa1, fb1, ga, gb)
        k2 = memo.key(fa, fb, ga2, gb2)
        k3 = memo.key(fa3, fb3, ga3, gb3)
        k4 = memo.key(fa4, fb4, ga4, gb4)
        # overlap the four cache misses
        memo.prefetch(k1)
        memo.prefetch(k2)
        memo.prefetch(k3)
        memo.prefetch(k4)
        v1 = memo.get(k1)
        v2 = memo.get(k2)
        v3 = memo.get(k3)
        v4 = memo.get(k4)
        if v1 < 0 or v2 < 0 or v3 < 0 or v4 < 0:
            fr_.d = d
            stack.push_back(fr_)
            push.d = -1
            if v4 < 0:
                push.fa = fa4; push.fb = fb4; push.ga = ga4; push.gb = gb4
                stack.push_back(push)
            if v3 < 0:
                push.fa = fa3; push.fb = fb3; push.ga = ga3; push.gb = gb3
                stack.push_back(push)
            if v2 < 0:
                push.fa = fa; push.fb = fb; push.ga = ga2; push.gb = gb2
                stack.push_back(push)
            if v1 < 0:
                push.fa = fa1; push.fb = fb1; push.ga = ga; push.gb = gb
                stack.push_back(push)
            continue
        best = (v3 >> 3) + (v4 >> 3) + rel[F.label[x] * rel_cols + G.label[y]]
        kind = KIND_MATCH
        c = (v1 >> 3) + F.delete[x]
        if c < best:
            best = c
            kind = KIND_DEL_F
        c = (v2 >> 3) + G.delete[y]
        if c < best:
            best = c
            kind = KIND_DEL_G
        memo.put(key, (best << 3) | kind | (d << 2))
    return 0


cdef struct Call:
    int64_t v, w, drive


cdef int run_dmrw(Memo memo, const SideArr *F, const SideArr *G, const int64_t *rel,
                  int64_t rel_cols) except -1:
    cdef vector[Call] calls
    cdef Call c, push
    cdef int64_t fa, fb, ga, gb, k
    if F.n == 0 or G.n == 0:
        return run(memo, F, G, rel, rel_cols, 0, 0, 0, 0, MODE_RIGHT)
    c.v = 0; c.w = 0; c.drive = -1
    calls.push_back(c)
    while calls.size():
        c = calls.back()
        calls.pop_back()
        fa = c.v
        fb = F.n - 1 - F.post[c.v]
        ga = c.w
        gb = G.n - 1 - G.post[c.w]
        if c.drive < 0:
            if memo.get(memo.key(fa, fb, ga, gb)) >= 0:
                continue
            push.drive = -1
            if F.size[c.v] >= G.size[c.w]:
                c.drive = MODE_KLEIN_F
                calls.push_back(c)
                push.w = c.w
                k = F.tl_ptr[c.v + 1] - 1
                while k >= F.tl_ptr[c.v]:
                    push.v = F.tl[k]
                    calls.push_back(push)
                    k -= 1
            else:
                c.drive = MODE_KLEIN_G
                calls.push_back(c)
                push.v = c.v
                k = G.tl_ptr[c.w + 1] - 1
                while k >= G.tl_ptr[c.w]:
                    push.w = G.tl[k]
                    calls.push_back(push)
                    k -= 1
        else:
            run(memo, F, G, rel, rel_cols, fa, fb, ga, gb, <int> c.drive)
    return 0


def fits(n, m):
    """Whether keys for an ``n`` by ``m`` problem fit in 64 bits."""
    return (n + 1) * (m + 1) < 2 ** 32


def solve(problem, str algorithm, uint64_t seed=0):
    cdef list keep = []
    cdef SideArr F = _side(problem.f, keep)
    cdef SideArr G = _side(problem.g, keep)
    rel_arr = np.ascontiguousarray(problem.rel, dtype=np.int64)
    cdef const int64_t *rel = _ptr(rel_arr)
    cdef int64_t rel_cols = rel_arr.shape[1]
    if not fits(F.n, G.n):
        raise OverflowError("problem too large for 64-bit memo keys")
    memo = Memo(F.n, G.n)
    if algorithm == "sz":
        run(memo, &F, &G, rel, rel_cols, 0, 0, 0, 0, MODE_RIGHT)
    elif algorithm == "klein":
        run(memo, &F, &G, rel, rel_cols, 0, 0, 0, 0,
            MODE_KLEIN_F if F.n >= G.n else MODE_KLEIN_G)
    elif algorithm == "dmrw":
        run_dmrw(memo, &F, &G, rel, rel_cols)
    elif algorithm == "random":
        run(memo, &F, &G, rel, rel_cols, 0, 0, 0, 0, MODE_RANDOM, seed)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return memo
