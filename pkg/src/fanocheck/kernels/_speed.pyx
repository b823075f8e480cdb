# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: degrevlex normal-form reduction and point enumeration.

Behavioural mirror of ``pure.py``.  Monomials are packed into one 64-bit
word (8 bits per variable, at most 8 variables, homogeneous total degree at
most 127); the degrevlex-monotone code is derived on the fly.
"""

from libc.stdlib cimport malloc, realloc, free

ctypedef unsigned long long u64
ctypedef long long i64

IMPLEMENTATION = "compiled"

DEF MAXVARS = 8

cdef u64 HIGH = 0x8080808080808080u
cdef u64 EMPTY = 0xFFFFFFFFFFFFFFFFu


class KernelLimit(Exception):
    """Input outside the packed-representation limits; use the pure kernel."""


cdef inline u64 _code_of(u64 exps, int nv):
    cdef int i
    cdef u64 code = 0, deg = 0, e
    for i in range(nv):
        e = (exps >> (8 * i)) & 0xFFu
        deg += e
        code |= (127u - e) << (7 * i)
    return code | (deg << 56)


cdef inline bint _divides(u64 a, u64 b):
    # Bytewise a_i <= b_i; valid because all bytes stay <= 127.
    return (((b | HIGH) - a) & HIGH) == HIGH


cdef u64 _pack(exp, int nv) except *:
    cdef u64 out = 0
    cdef int i, deg = 0, e
    if len(exp) != nv:
        raise ValueError("exponent length mismatch")
    for i in range(nv):
        e = exp[i]
        if e < 0 or e > 127:
            raise KernelLimit("exponent out of packed range")
        deg += e
        out |= (<u64> e) << (8 * i)
    if deg > 127:
        raise KernelLimit("degree out of packed range")
    return out


cdef tuple _unpack(u64 exps, int nv):
    cdef int i
    return tuple((exps >> (8 * i)) & 0xFFu for i in range(nv))


# ---------------------------------------------------------------------------
# hash map u64 -> coefficient, linear probing
# ---------------------------------------------------------------------------

cdef struct HMap:
    u64* keys
    i64* vals
    size_t cap
    size_t used


cdef void hm_init(HMap* h, size_t cap):
    cdef size_t i
    h.cap = cap
    h.used = 0
    h.keys = <u64*> malloc(cap * sizeof(u64))
    h.vals = <i64*> malloc(cap * sizeof(i64))
    for i in range(cap):
        h.keys[i] = EMPTY


cdef void hm_free(HMap* h):
    free(h.keys)
    free(h.vals)


cdef inline size_t hm_slot(HMap* h, u64 key):
    cdef size_t mask = h.cap - 1
    cdef size_t i = (<size_t> (key * 0x9E3779B97F4A7C15u)) & mask
    while h.keys[i] != EMPTY and h.keys[i] != key:
        i = (i + 1) & mask
    return i


cdef void hm_grow(HMap* h):
    cdef HMap fresh
    cdef size_t i, j
    hm_init(&fresh, h.cap * 2)
    for i in range(h.cap):
        if h.keys[i] != EMPTY and h.vals[i] != 0:
            j = hm_slot(&fresh, h.keys[i])
            fresh.keys[j] = h.keys[i]
            fresh.vals[j] = h.vals[i]
            fresh.used += 1
    hm_free(h)
    h[0] = fresh


cdef void hm_set(HMap* h, u64 key, i64 val):
    cdef size_t i = hm_slot(h, key)
    if h.keys[i] == EMPTY:
        h.keys[i] = key
        h.vals[i] = val
        h.used += 1
        if h.used * 10 > h.cap * 7:
            hm_grow(h)
    else:
        h.vals[i] = val


cdef inline i64 hm_get(HMap* h, u64 key):
    cdef size_t i = hm_slot(h, key)
    if h.keys[i] == EMPTY:
        return 0
    return h.vals[i]


# ---------------------------------------------------------------------------
# max-heap of packed monomials ordered by degrevlex code
# ---------------------------------------------------------------------------

cdef struct Heap:
    u64* data
    size_t size
    size_t cap
    int nv


cdef void heap_init(Heap* h, int nv):
    h.cap = 64
    h.size = 0
    h.nv = nv
    h.data = <u64*> malloc(h.cap * sizeof(u64))


cdef void heap_free(Heap* h):
    free(h.data)


cdef void heap_push(Heap* h, u64 exps):
    cdef size_t i, parent
    cdef u64 code
    if h.size == h.cap:
        h.cap *= 2
        h.data = <u64*> realloc(h.data, h.cap * sizeof(u64))
    i = h.size
    h.data[i] = exps
    h.size += 1
    code = _code_of(exps, h.nv)
    while i > 0:
        parent = (i - 1) // 2
        if _code_of(h.data[parent], h.nv) >= code:
            break
        h.data[i] = h.data[parent]
        h.data[parent] = exps
        i = parent


cdef u64 heap_pop(Heap* h):
    cdef u64 top = h.data[0]
    cdef u64 last, lcode
    cdef size_t i = 0, child
    h.size -= 1
    if h.size == 0:
        return top
    last = h.data[h.size]
    lcode = _code_of(last, h.nv)
    while True:
        child = 2 * i + 1
        if child >= h.size:
            break
        if child + 1 < h.size and _code_of(h.data[child + 1], h.nv) > _code_of(h.data[child], h.nv):
            child += 1
        if _code_of(h.data[child], h.nv) <= lcode:
            break
        h.data[i] = h.data[child]
        i = child
    h.data[i] = last
    return top


# ---------------------------------------------------------------------------
# Reducer
# ---------------------------------------------------------------------------

cdef class Reducer:
    """Normal-form reduction against a growing basis over F_p (degrevlex)."""

    cdef public long long p
    cdef public int nvars
    cdef list _leads      # u64 per basis element
    cdef list _exps       # list of u64-lists (lead first)
    cdef list _coeffs     # list of i64-lists, monic

    def __init__(self, p, nvars):
        if nvars > MAXVARS:
            raise KernelLimit("too many variables for the packed kernel")
        if p >= (1 << 31):
            raise KernelLimit("modulus too large for the packed kernel")
        self.p = p
        self.nvars = nvars
        self._leads = []
        self._exps = []
        self._coeffs = []

    def add(self, terms):
        if not terms:
            raise ValueError("cannot add the zero polynomial")
        cdef int nv = self.nvars
        p = self.p
        packed = []
        for e, c in terms.items():
            c = c % p
            if c:
                pe = _pack(e, nv)
                packed.append((_code_of(pe, nv), pe, c))
        if not packed:
            raise ValueError("cannot add the zero polynomial")
        packed.sort(reverse=True)
        inv = pow(packed[0][2], p - 2, p)
        self._leads.append(packed[0][1])
        self._exps.append([pe for _, pe, _ in packed])
        self._coeffs.append([(c * inv) % p for _, _, c in packed])

    def reduce(self, terms):
        cdef int nv = self.nvars
        cdef i64 p = self.p
        cdef HMap hm
        cdef Heap heap
        cdef u64 lead, shift, te, be
        cdef i64 c, v, bc, m
        cdef size_t bi, ti, nbasis, hit
        cdef int found
        hm_init(&hm, 256)
        heap_init(&heap, nv)
        try:
            for e, cc in terms.items():
                cc = cc % self.p
                if cc == 0:
                    continue
                pe = _pack(e, nv)
                v = hm_get(&hm, pe)
                if v == 0:
                    heap_push(&heap, pe)
                hm_set(&hm, pe, (v + cc) % p)
            out = {}
            leads = self._leads
            nbasis = len(leads)
            while heap.size > 0:
                lead = heap_pop(&heap)
                c = hm_get(&hm, lead)
                if c == 0:
                    continue
                hm_set(&hm, lead, 0)
                found = 0
                hit = 0
                for bi in range(nbasis):
                    be = <u64> leads[bi]
                    if _divides(be, lead):
                        found = 1
                        hit = bi
                        break
                if not found:
                    out[_unpack(lead, nv)] = c
                    continue
                be = <u64> leads[hit]
                shift = lead - be
                bexps = self._exps[hit]
                bcoeffs = self._coeffs[hit]
                for ti in range(1, len(bexps)):
                    te = (<u64> bexps[ti]) + shift
                    bc = <i64> bcoeffs[ti]
                    v = hm_get(&hm, te)
                    m = (v - c * bc) % p
                    if m < 0:
                        m += p
                    if v == 0 and m != 0:
                        heap_push(&heap, te)
                    hm_set(&hm, te, m)
            return out
        finally:
            hm_free(&hm)
            heap_free(&heap)


# ---------------------------------------------------------------------------
# point enumeration
# ---------------------------------------------------------------------------

cdef inline i64 _fmul(i64 x, i64 y, i64 p, i64 r, int ext):
    cdef i64 a, b, cc, d
    if ext == 1:
        return (x * y) % p
    a = x % p
    b = x // p
    cc = y % p
    d = y // p
    return (a * cc + r * b * d) % p + p * ((a * d + b * cc) % p)


cdef inline i64 _fadd(i64 x, i64 y, i64 p, int ext):
    if ext == 1:
        return (x + y) % p
    return (x + y) % p + p * ((x // p + y // p) % p)


def zeros_projective(gens, nvars, p, ext, limit):
    """Mirror of pure.zeros_projective; see that docstring."""
    from .common import smallest_nonresidue
    if nvars > MAXVARS:
        raise KernelLimit("too many variables for the compiled enumerator")
    cdef i64 cp = p
    cdef int cext = ext
    cdef i64 r = 0
    if ext == 2:
        r = smallest_nonresidue(p)
    cdef i64 q = cp if cext == 1 else cp * cp

    polys = []
    cdef int maxdeg = 0
    for g in gens:
        terms = [(e, c % p) for e, c in g.items() if c % p]
        if not terms:
            continue
        for e, _ in terms:
            for comp in e:
                if comp > maxdeg:
                    maxdeg = comp
        polys.append(terms)

    cdef int npolys = len(polys)
    cdef int nv = nvars
    cdef int* tcounts = <int*> malloc(max(npolys, 1) * sizeof(int))
    cdef u64** pexps = <u64**> malloc(max(npolys, 1) * sizeof(u64*))
    cdef i64** pcoeffs = <i64**> malloc(max(npolys, 1) * sizeof(i64*))
    cdef int pi, ti2, vi
    for pi in range(npolys):
        terms = polys[pi]
        tcounts[pi] = len(terms)
        pexps[pi] = <u64*> malloc(len(terms) * sizeof(u64))
        pcoeffs[pi] = <i64*> malloc(len(terms) * sizeof(i64))
        for ti2, (e, c) in enumerate(terms):
            pexps[pi][ti2] = _pack(e, nv)
            pcoeffs[pi][ti2] = c

    cdef i64* coords = <i64*> malloc(nv * sizeof(i64))
    cdef i64* pows = <i64*> malloc(nv * (maxdeg + 1) * sizeof(i64))
    cdef i64* idx = <i64*> malloc(max(nv, 1) * sizeof(i64))

    cdef long long count = 0
    points = []
    cdef int lead, tail, j, pos, ok, i
    cdef i64 total, v
    cdef u64 pe
    cdef int ee
    try:
        for lead in range(nv):
            tail = nv - lead - 1
            for i in range(nv):
                coords[i] = 0
            coords[lead] = 1
            for j in range(tail):
                idx[j] = 0
            while True:
                for j in range(tail):
                    coords[lead + 1 + j] = idx[j]
                for i in range(nv):
                    pows[i * (maxdeg + 1)] = 1
                    for j in range(1, maxdeg + 1):
                        pows[i * (maxdeg + 1) + j] = _fmul(
                            pows[i * (maxdeg + 1) + j - 1], coords[i], cp, r, cext)
                ok = 1
                for pi in range(npolys):
                    total = 0
                    for ti2 in range(tcounts[pi]):
                        pe = pexps[pi][ti2]
                        v = pcoeffs[pi][ti2]
                        for vi in range(nv):
                            ee = <int> ((pe >> (8 * vi)) & 0xFFu)
                            if ee:
                                v = _fmul(v, pows[vi * (maxdeg + 1) + ee], cp, r, cext)
                        total = _fadd(total, v, cp, cext)
                    if total != 0:
                        ok = 0
                        break
                if ok:
                    count += 1
                    if limit < 0 or len(points) < limit:
                        points.append(tuple(coords[i] for i in range(nv)))
                pos = tail - 1
                while pos >= 0:
                    idx[pos] += 1
                    if idx[pos] < q:
                        break
                    idx[pos] = 0
                    pos -= 1
                if pos < 0:
                    break
        return count, points
    finally:
        for pi in range(npolys):
            free(pexps[pi])
            free(pcoeffs[pi])
        free(pexps)
        free(pcoeffs)
        free(tcounts)
        free(coords)
        free(pows)
        free(idx)
