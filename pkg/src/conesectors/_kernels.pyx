# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exact integer cone-membership scans and symplectic loops.

Callers must keep coordinates within the guard bounds checked in
geometry.kernel_safe; squared comparisons are carried out in 128-bit
integers so no intermediate can overflow under those bounds.
"""

cdef extern from *:
    ctypedef long long int128 "__int128_t"
    int _popcll "__builtin_popcountll" (unsigned long long) nogil

from libc.stdint cimport int64_t, uint64_t


cdef inline bint _member(int64_t pnx, int64_t pny, int64_t den,
                         int64_t tx, int64_t ty, int64_t cn, int64_t cd,
                         int64_t x, int64_t y) nogil:
    cdef int64_t vx = den * x - pnx
    cdef int64_t vy = den * y - pny
    cdef int128 lhs, rad, l2, r2
    if vx == 0 and vy == 0:
        return False
    lhs = (<int128> vx * tx + <int128> vy * ty) * cd
    if cn == 0:
        return lhs > 0
    rad = (<int128> vx * vx + <int128> vy * vy) * (<int128> tx * tx + <int128> ty * ty)
    l2 = lhs * lhs
    r2 = (<int128> cn * cn) * rad
    if cn > 0:
        return lhs > 0 and l2 > r2
    return lhs >= 0 or l2 < r2


def scan_cone_2d(int64_t pnx, int64_t pny, int64_t den,
                 int64_t tx, int64_t ty, int64_t cn, int64_t cd,
                 int64_t x0, int64_t x1, int64_t y0, int64_t y1):
    cdef int64_t x, y
    out = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if _member(pnx, pny, den, tx, ty, cn, cd, x, y):
                out.append((x, y))
    return out


def first_common_2d(int64_t pnx1, int64_t pny1, int64_t den1,
                    int64_t tx1, int64_t ty1, int64_t cn1, int64_t cd1,
                    int64_t pnx2, int64_t pny2, int64_t den2,
                    int64_t tx2, int64_t ty2, int64_t cn2, int64_t cd2,
                    int64_t x0, int64_t x1, int64_t y0, int64_t y1):
    cdef int64_t x, y
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if _member(pnx1, pny1, den1, tx1, ty1, cn1, cd1, x, y) and \
                    _member(pnx2, pny2, den2, tx2, ty2, cn2, cd2, x, y):
                return (x, y)
    return None


def first_in_a_not_in_b_2d(int64_t pnx1, int64_t pny1, int64_t den1,
                           int64_t tx1, int64_t ty1, int64_t cn1, int64_t cd1,
                           int64_t pnx2, int64_t pny2, int64_t den2,
                           int64_t tx2, int64_t ty2, int64_t cn2, int64_t cd2,
                           int64_t x0, int64_t x1, int64_t y0, int64_t y1):
    cdef int64_t x, y
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if _member(pnx1, pny1, den1, tx1, ty1, cn1, cd1, x, y) and \
                    not _member(pnx2, pny2, den2, tx2, ty2, cn2, cd2, x, y):
                return (x, y)
    return None


def commutation_violations(x1, z1, x2, z2, int limit=16):
    """Anticommuting index pairs between two families of Pauli bitmasks.

    Masks are Python ints; they are unpacked into 64-bit words once, then
    the pairwise symplectic loop runs in C.
    """
    cdef int n1 = len(x1)
    cdef int n2 = len(x2)
    if n1 == 0 or n2 == 0:
        return []
    cdef int words = 1
    for m in list(x1) + list(z1) + list(x2) + list(z2):
        b = (int(m).bit_length() + 63) // 64
        if b > words:
            words = b

    import array
    cdef object buf = array.array("Q", bytes(8 * words * 2 * (n1 + n2)))
    mv = memoryview(buf)
    cdef uint64_t[::1] w = mv
    cdef uint64_t mask = <uint64_t> 0xFFFFFFFFFFFFFFFF
    cdef int i, j, k

    def _pack(masks, int base):
        for idx, m in enumerate(masks):
            mi = int(m)
            for k2 in range(words):
                w[base + idx * words + k2] = (mi >> (64 * k2)) & 0xFFFFFFFFFFFFFFFF

    cdef int ox1 = 0
    cdef int oz1 = n1 * words
    cdef int ox2 = 2 * n1 * words
    cdef int oz2 = 2 * n1 * words + n2 * words
    _pack(x1, ox1)
    _pack(z1, oz1)
    _pack(x2, ox2)
    _pack(z2, oz2)

    out = []
    cdef int acc
    for i in range(n1):
        for j in range(n2):
            acc = 0
            for k in range(words):
                acc ^= _popcll(w[ox1 + i * words + k] & w[oz2 + j * words + k])
                acc ^= _popcll(w[oz1 + i * words + k] & w[ox2 + j * words + k])
            if acc & 1:
                out.append((i, j))
                if len(out) >= limit:
                    return out
    return out
