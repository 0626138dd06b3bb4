# cython: boundscheck=False, wraparound=False
"""Compiled word rewriting kernel; same contract as ``_kernel_py``."""

from array import array


def sort_word(word, colour, rl_next, rl_sq, Py_ssize_t n_edges):
    cdef list flips = []
    cdef Py_ssize_t i, j, n
    cdef long key, packed
    cdef const long[:] col = colour
    cdef const long[:] nxt = rl_next
    cdef const long[:] sq = rl_sq
    cdef long[:] buf
    arr = array("l", word)
    n = len(arr)
    if n < 2:
        return arr.tolist(), flips
    buf = arr
    for i in range(1, n):
        j = i
        while j > 0 and col[buf[j - 1]] > col[buf[j]]:
            key = buf[j - 1] * n_edges + buf[j]
            packed = nxt[key]
            buf[j - 1] = packed // n_edges
            buf[j] = packed % n_edges
            flips.append(sq[key])
            j -= 1
    return arr.tolist(), flips


def rewrite_word(word, target, colour, lr_next, rl_next, Py_ssize_t n_edges):
    cdef Py_ssize_t p, q, n
    cdef long a, b, key, packed, want
    cdef const long[:] col = colour
    cdef const long[:] lr = lr_next
    cdef const long[:] rl = rl_next
    cdef long[:] buf
    cdef long[:] t
    arr = array("l", word)
    n = len(arr)
    if n < 2:
        return arr.tolist()
    tgt = array("l", target)
    t = tgt
    buf = arr
    for p in range(n):
        q = p
        want = t[p]
        while col[buf[q]] != want:
            q += 1
        while q > p:
            a = buf[q - 1]
            b = buf[q]
            key = a * n_edges + b
            if col[a] < col[b]:
                packed = lr[key]
            else:
                packed = rl[key]
            buf[q - 1] = packed // n_edges
            buf[q] = packed % n_edges
            q -= 1
    return arr.tolist()
