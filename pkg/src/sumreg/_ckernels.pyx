# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_pykernels`` for the reference semantics."""
from cpython.array cimport array, clone
from libc.stdlib cimport malloc, calloc, free

ctypedef unsigned long long u64

NAME = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline int bit_length(u64 x) nogil:
    if x == 0:
        return 0
    return 64 - __builtin_clzll(x)


def traverse(int n, const unsigned char[:] g):
    cdef u64 size = (<u64>1) << n
    cdef u64 mask = size - 1
    cdef u64 low = mask >> 1
    cdef int top = n - 1
    cdef u64 start, s, pos = 0, first
    cdef unsigned char *seen = <unsigned char *>calloc(size, 1)
    if seen == NULL:
        raise MemoryError()
    cdef array order = clone(array("I"), size, zero=False)
    cdef unsigned int[:] out = order
    lengths = []
    try:
        for start in range(size):
            if seen[start]:
                continue
            s = start
            first = pos
            while not seen[s]:
                seen[s] = 1
                out[pos] = <unsigned int>s
                pos += 1
                s = ((s << 1) & mask) | ((s >> top) ^ g[s & low])
            lengths.append(pos - first)
    finally:
        free(seen)
    return order, lengths


cdef long long _omega(int n, const unsigned char[:] table, bint symmetric):
    cdef u64 size = (<u64>1) << n
    cdef u64 mask = size - 1
    cdef u64 low = mask >> 1
    cdef int top = n - 1
    cdef int period = n + 1
    cdef u64 start, s, head, bit
    cdef int w, length
    cdef long long result = -1
    cdef unsigned char *seen = <unsigned char *>calloc(size, 1)
    if seen == NULL:
        raise MemoryError()
    try:
        for start in range(size):
            if seen[start]:
                continue
            s = start
            w = popcount(start)
            length = 0
            while True:
                seen[s] = 1
                head = s >> top
                if symmetric:
                    bit = head ^ table[w - head]
                else:
                    bit = head ^ table[s & low]
                s = ((s << 1) & mask) | bit
                w += <int>bit - <int>head
                length += 1
                if s == start:
                    break
                if length > period:
                    result = start
                    break
            if result >= 0:
                break
            if period % length:
                result = start
                break
    finally:
        free(seen)
    return result


def omega_violation(int n, const unsigned char[:] g):
    return _omega(n, g, False)


def omega_violation_symmetric(int n, const unsigned char[:] v):
    return _omega(n, v, True)


cdef inline u64 rot_down(u64 x, int width) nogil:
    return (x >> 1) | ((x & 1) << (width - 1))


cdef inline int c_longest_run(u64 e, int width) nogil:
    cdef u64 full = ((<u64>1) << width) - 1
    cdef int t = 0
    if e == full:
        return width
    while e:
        e &= rot_down(e, width)
        t += 1
    return t


cdef inline bint c_is_run(u64 e, int width) nogil:
    cdef u64 full = ((<u64>1) << width) - 1
    if e == full:
        return True
    return popcount(e & ~rot_down(e, width) & full) == 1


cdef inline int lead_run(u64 r, int width, u64 full) nogil:
    cdef int z = width - bit_length(r)
    return width - bit_length(~(r << z) & full)


cdef bint c_is_preferred_ext(u64 e, int width) nogil:
    cdef u64 full = ((<u64>1) << width) - 1
    cdef u64 r
    cdef int t, j
    if (e & 3) != 2 or c_is_run(e, width):
        return False
    t = c_longest_run(e, width)
    if lead_run(e, width, full) != t:
        return False
    r = e
    for j in range(width - 1):
        r = rot_down(r, width)
        if r > e and (r & 3) == 2 and lead_run(r, width, full) == t:
            return False
    return True


def longest_run(u64 e, int width):
    return c_longest_run(e, width)


def is_run(u64 e, int width):
    return c_is_run(e, width)


def is_preferred_ext(u64 e, int width):
    return c_is_preferred_ext(e, width)


def debruijn(int n, utable, u64 s0):
    cdef u64 size = (<u64>1) << n
    cdef u64 mask = size - 1
    cdef u64 low = mask >> 1
    cdef int top = n - 1
    cdef int width = n + 1
    cdef int nk = len(utable)
    cdef u64 *ut = <u64 *>malloc(nk * sizeof(u64))
    if ut == NULL:
        raise MemoryError()
    cdef int k
    for k in range(nk):
        ut[k] = utable[k]
    cdef bytearray buf = bytearray(size + 1)
    cdef unsigned char *out = buf
    cdef u64 s = s0, a, suffix, bit, p, steps = 0
    cdef int w = popcount(s0)
    cdef bint swap
    p = w & 1
    try:
        with nogil:
            while True:
                a = s >> top
                suffix = s & low
                if p ^ a:
                    swap = ut[(w - a + 1) >> 1] == ((suffix << 1) | 1)
                else:
                    swap = c_is_preferred_ext((suffix << 2) | 2, width)
                if swap:
                    bit = p
                    p = a
                else:
                    bit = p ^ 1
                    p = a ^ 1
                w += <int>bit - <int>a
                s = ((s << 1) & mask) | bit
                out[steps] = <unsigned char>bit
                steps += 1
                if s == s0 or steps > size:
                    break
    finally:
        free(ut)
    return bytes(buf[:steps]), steps


def first_repeat(const unsigned char[:] bits, int n):
    cdef Py_ssize_t length = bits.shape[0]
    cdef Py_ssize_t i, j
    cdef u64 mask = ((<u64>1) << n) - 1
    cdef u64 s = 0
    cdef long long result = -1
    if length == 0:
        return -1
    cdef unsigned char *seen = <unsigned char *>calloc(mask + 1, 1)
    if seen == NULL:
        raise MemoryError()
    try:
        for j in range(n - 1):
            s = (s << 1) | bits[j % length]
        for i in range(length):
            s = ((s << 1) & mask) | bits[(i + n - 1) % length]
            if seen[s]:
                result = s
                break
            seen[s] = 1
    finally:
        free(seen)
    return result
