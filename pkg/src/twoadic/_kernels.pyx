# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``_kernels_py``."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset


def adic_scan(x, int n):
    if n < 1 or n > 62:
        raise ValueError("compiled scan supports 1 <= n <= 62")
    cdef uint64_t mod = (<uint64_t>1) << n
    cdef uint64_t mask = mod - 1
    cdef uint64_t half = mod >> 1
    cdef uint64_t xv = <uint64_t>(x & mask)
    cdef uint64_t q = 1, r, af, v
    cdef uint64_t best = mod + 1, best_q = 0
    cdef int64_t f, best_f = 0
    while q < best:
        r = (q * xv) & mask
        if r > half:
            f = -<int64_t>(mod - r)
            af = mod - r
        else:
            f = <int64_t>r
            af = r
        v = q if q > af else af
        if v < best:
            best = v
            best_f = f
            best_q = q
        q += 2
    return int(best), int(best_f), int(best_q)


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long)


cdef inline uint64_t _word_at(const uint64_t *a, Py_ssize_t pos):
    # 64 bits of a starting at bit pos (a is zero-padded past the end)
    cdef Py_ssize_t k = pos >> 6
    cdef int b = pos & 63
    if b == 0:
        return a[k]
    return (a[k] >> b) | (a[k + 1] << (64 - b))


def bm_profile(bits):
    """Berlekamp-Massey on packed 64-bit words.

    The sequence is stored reversed (bit n_total-1-j holds s_j) so that the
    discrepancy sum_i c_i s_(n-i) is an AND of conn with a shifted window.
    """
    cdef const unsigned char[:] s = bytes(bits)
    cdef Py_ssize_t n_total = s.shape[0]
    cdef Py_ssize_t W = n_total // 64 + 3
    cdef uint64_t *rev
    cdef uint64_t *conn
    cdef uint64_t *prev
    cdef uint64_t *tmp
    cdef uint64_t acc, v
    cdef Py_ssize_t n, j, w, ws, bs, shift, words, length = 0, last = -1, prev_len = 0
    out = [0] * n_total
    if n_total == 0:
        return out
    rev = <uint64_t *>malloc(W * sizeof(uint64_t))
    conn = <uint64_t *>malloc(W * sizeof(uint64_t))
    prev = <uint64_t *>malloc(W * sizeof(uint64_t))
    tmp = <uint64_t *>malloc(W * sizeof(uint64_t))
    if rev == NULL or conn == NULL or prev == NULL or tmp == NULL:
        free(rev); free(conn); free(prev); free(tmp)
        raise MemoryError()
    try:
        memset(rev, 0, W * sizeof(uint64_t))
        memset(conn, 0, W * sizeof(uint64_t))
        memset(prev, 0, W * sizeof(uint64_t))
        for j in range(n_total):
            if s[j]:
                rev[(n_total - 1 - j) >> 6] |= (<uint64_t>1) << ((n_total - 1 - j) & 63)
        conn[0] = 1
        prev[0] = 1
        for n in range(n_total):
            acc = 0
            words = (length >> 6) + 1
            for w in range(words):
                acc ^= conn[w] & _word_at(rev, n_total - 1 - n + 64 * w)
            if popcount64(acc) & 1:
                memcpy(tmp, conn, words * sizeof(uint64_t))
                shift = n - last
                ws = shift >> 6
                bs = shift & 63
                for w in range((prev_len >> 6) + 1):
                    v = prev[w]
                    conn[w + ws] ^= v << bs
                    if bs:
                        conn[w + ws + 1] ^= v >> (64 - bs)
                if 2 * length <= n:
                    memcpy(prev, tmp, words * sizeof(uint64_t))
                    prev_len = length
                    length = n + 1 - length
                    last = n
            out[n] = length
    finally:
        free(rev); free(conn); free(prev); free(tmp)
    return out
