# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive groundstate kernel (Gray-code scan with incremental
energy updates).  Contract mirrors trising._kernels_py.scan_block."""

from libc.stdint cimport int64_t, uint64_t

COMPILED = True

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define TRI_POPCOUNT(x) __builtin_popcountll(x)
    #else
    static int TRI_POPCOUNT(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; c++; }
        return c;
    }
    #endif
    """
    int TRI_POPCOUNT(uint64_t x) nogil


cdef inline int64_t _energy(uint64_t state, uint64_t* masks, int n) nogil:
    cdef int64_t total = 0
    cdef int v, deg, ones, equal
    for v in range(n):
        deg = TRI_POPCOUNT(masks[v])
        ones = TRI_POPCOUNT(state & masks[v])
        equal = ones if (state >> v) & 1 else deg - ones
        total += 2 * equal - deg
    return total // 2


def scan_block(int nbits, masks, degrees, uint64_t start, uint64_t stop,
               int shift, int rep_cap):
    """Scan Gray-code states gray(start)..gray(stop-1) shifted by `shift`."""
    cdef int n = len(masks)
    if n > 62:
        raise ValueError("compiled kernel supports at most 62 vertices")
    cdef uint64_t cmasks[64]
    cdef int cdeg[64]
    cdef int v
    for v in range(n):
        cmasks[v] = masks[v]
        cdeg[v] = degrees[v]

    cdef uint64_t gray = (start ^ (start >> 1)) << shift
    cdef int64_t energy = _energy(gray, cmasks, n)
    cdef int64_t best = energy
    cdef uint64_t count = 1
    cdef uint64_t reps[64]
    cdef int nreps = 0, cap = rep_cap if rep_cap < 64 else 64
    cdef int k, ones, equal, j
    cdef uint64_t i, bit

    if cap > 0:
        reps[0] = gray
        nreps = 1

    with nogil:
        i = start + 1
        while i < stop:
            # flipped bit index = count of trailing zeros of i
            bit = i & (~i + 1)
            k = TRI_POPCOUNT(bit - 1) + shift
            ones = TRI_POPCOUNT(gray & cmasks[k])
            equal = ones if (gray >> k) & 1 else cdeg[k] - ones
            energy -= 2 * (2 * equal - cdeg[k])
            gray ^= (<uint64_t>1) << k
            if energy < best:
                best = energy
                count = 1
                if cap > 0:
                    reps[0] = gray
                    nreps = 1
                else:
                    nreps = 0
            elif energy == best:
                count += 1
                if nreps < cap or (nreps and gray < reps[nreps - 1]):
                    # insertion sort into the bounded ascending buffer
                    j = nreps if nreps < cap else cap - 1
                    while j > 0 and reps[j - 1] > gray:
                        reps[j] = reps[j - 1]
                        j -= 1
                    reps[j] = gray
                    if nreps < cap:
                        nreps += 1
            i += 1

    return best, count, [reps[j] for j in range(nreps)]
