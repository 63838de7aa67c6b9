# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stable-set kernels. Mirrors ``_kernel_py`` node for node."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

import time

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"
cdef int TIME_CHECK_EVERY = 256


def pack(rows, int n):
    """Adjacency bitsets as a C-contiguous ``(n, words)`` uint64 array."""
    cdef int nw = max(1, (n + 63) // 64)
    buf = b"".join(int(r).to_bytes(nw * 8, "little") for r in rows)
    return np.frombuffer(buf, dtype="<u8").reshape(n, nw).copy() if n else np.zeros((1, nw), dtype="<u8")


cdef inline object _words_to_int(const uint64_t* w, int nw):
    return int.from_bytes((<char*>w)[:nw * 8], "little")


cdef inline void _int_to_words(object x, uint64_t* w, int nw) except *:
    cdef bytes b = x.to_bytes(nw * 8, "little")
    memcpy(w, <const char*>b, nw * 8)


cdef inline int _popcount(const uint64_t* a, int nw) nogil:
    cdef int i, c = 0
    for i in range(nw):
        c += __builtin_popcountll(a[i])
    return c


cdef inline int _popcount_and(const uint64_t* a, const uint64_t* b, int nw) nogil:
    cdef int i, c = 0
    for i in range(nw):
        c += __builtin_popcountll(a[i] & b[i])
    return c


cdef inline bint _any(const uint64_t* a, int nw) nogil:
    cdef int i
    for i in range(nw):
        if a[i]:
            return True
    return False


cdef int _cover_bound(const uint64_t* rows, int nw, const uint64_t* cand, int limit,
                      uint64_t* rest, uint64_t* q) nogil:
    cdef int i, count = 0, start = 0, qstart, v, u
    cdef const uint64_t* row
    for i in range(nw):
        rest[i] = cand[i]
    while True:
        while start < nw and rest[start] == 0:
            start += 1
        if start == nw:
            return count
        count += 1
        if count > limit:
            return count
        v = start * 64 + __builtin_ctzll(rest[start])
        rest[start] &= rest[start] - 1
        row = rows + <Py_ssize_t>v * nw
        for i in range(start, nw):
            q[i] = rest[i] & row[i]
        qstart = start
        while True:
            while qstart < nw and q[qstart] == 0:
                qstart += 1
            if qstart == nw:
                break
            u = qstart * 64 + __builtin_ctzll(q[qstart])
            rest[qstart] &= ~(<uint64_t>1 << (u & 63))
            row = rows + <Py_ssize_t>u * nw
            for i in range(qstart, nw):
                q[i] &= row[i]


def cover_bound(rows, int n, cand, int limit):
    cdef const uint64_t[:, ::1] r = rows
    cdef int nw = r.shape[1]
    cdef uint64_t* buf = <uint64_t*>malloc(3 * nw * sizeof(uint64_t))
    try:
        _int_to_words(cand, buf, nw)
        return _cover_bound(&r[0, 0], nw, buf, limit, buf + nw, buf + 2 * nw)
    finally:
        free(buf)


def greedy_mis(rows, int n, allowed):
    cdef const uint64_t[:, ::1] r = rows
    cdef int nw = r.shape[1]
    cdef const uint64_t* rp = &r[0, 0]
    cdef uint64_t* residual = <uint64_t*>malloc(3 * nw * sizeof(uint64_t))
    cdef uint64_t* chosen = residual + nw
    cdef uint64_t* removed = residual + 2 * nw
    cdef int* deg = <int*>malloc((n + 1) * sizeof(int))
    cdef int i, j, v, u, best_v, best_d
    cdef uint64_t w, y
    cdef const uint64_t* row
    try:
        _int_to_words(allowed, residual, nw)
        for i in range(nw):
            chosen[i] = 0
            w = residual[i]
            while w:
                v = i * 64 + __builtin_ctzll(w)
                w &= w - 1
                deg[v] = _popcount_and(rp + <Py_ssize_t>v * nw, residual, nw)
        with nogil:
            while _any(residual, nw):
                best_v = -1
                best_d = n + 1
                for i in range(nw):
                    w = residual[i]
                    while w:
                        v = i * 64 + __builtin_ctzll(w)
                        w &= w - 1
                        if deg[v] < best_d:
                            best_v = v
                            best_d = deg[v]
                chosen[best_v >> 6] |= <uint64_t>1 << (best_v & 63)
                row = rp + <Py_ssize_t>best_v * nw
                for i in range(nw):
                    removed[i] = row[i] & residual[i]
                removed[best_v >> 6] |= <uint64_t>1 << (best_v & 63)
                for i in range(nw):
                    residual[i] &= ~removed[i]
                for i in range(nw):
                    w = removed[i]
                    while w:
                        u = i * 64 + __builtin_ctzll(w)
                        w &= w - 1
                        row = rp + <Py_ssize_t>u * nw
                        for j in range(nw):
                            y = row[j] & residual[j]
                            while y:
                                deg[j * 64 + __builtin_ctzll(y)] -= 1
                                y &= y - 1
        return _words_to_int(chosen, nw)
    finally:
        free(residual)
        free(deg)


cdef int _partition(const uint64_t* rows, int nw, const uint64_t* cand,
                    int* verts, int* labels, uint64_t* rest, uint64_t* q) nogil:
    cdef int i, count = 0, start = 0, qstart, v, u, k = 0
    cdef const uint64_t* row
    for i in range(nw):
        rest[i] = cand[i]
    while True:
        while start < nw and rest[start] == 0:
            start += 1
        if start == nw:
            return k
        count += 1
        v = start * 64 + __builtin_ctzll(rest[start])
        rest[start] &= rest[start] - 1
        verts[k] = v
        labels[k] = count
        k += 1
        row = rows + <Py_ssize_t>v * nw
        for i in range(start, nw):
            q[i] = rest[i] & row[i]
        qstart = start
        while True:
            while qstart < nw and q[qstart] == 0:
                qstart += 1
            if qstart == nw:
                break
            u = qstart * 64 + __builtin_ctzll(q[qstart])
            rest[qstart] &= ~(<uint64_t>1 << (u & 63))
            verts[k] = u
            labels[k] = count
            k += 1
            row = rows + <Py_ssize_t>u * nw
            for i in range(qstart, nw):
                q[i] &= row[i]


def partition(rows, cand):
    cdef const uint64_t[:, ::1] r = rows
    cdef int nw = r.shape[1], k, i
    cdef int n = r.shape[0]
    cdef uint64_t* buf = <uint64_t*>malloc(3 * nw * sizeof(uint64_t))
    cdef int* order = <int*>malloc(2 * (n + 1) * sizeof(int))
    try:
        _int_to_words(cand, buf, nw)
        k = _partition(&r[0, 0], nw, buf, order, order + n + 1, buf + nw, buf + 2 * nw)
        return [order[i] for i in range(k)], [order[n + 1 + i] for i in range(k)]
    finally:
        free(buf)
        free(order)


cdef struct Frame:
    int size
    int pos
    Py_ssize_t off


def branch_and_bound(rows, int n, cand, cur, best, long long cap,
                     long long node_limit, double time_limit):
    """See ``_kernel_py.branch_and_bound``; same contract and node order."""
    cdef const uint64_t[:, ::1] r = rows
    cdef int nw = r.shape[1]
    cdef const uint64_t* rp = &r[0, 0]
    cdef Py_ssize_t fw = 2 * nw
    cdef Py_ssize_t capacity = 64, top = 0
    cdef Py_ssize_t ocap = 4 * (n + 1), oused = 0
    cdef uint64_t* sets = <uint64_t*>malloc(capacity * fw * sizeof(uint64_t))
    cdef Frame* frames = <Frame*>malloc(capacity * sizeof(Frame))
    cdef int* verts = <int*>malloc(ocap * sizeof(int))
    cdef int* labels = <int*>malloc(ocap * sizeof(int))
    cdef uint64_t* work = <uint64_t*>malloc(5 * nw * sizeof(uint64_t))
    cdef uint64_t* bestw = work
    cdef uint64_t* nc = work + nw
    cdef uint64_t* tmp1 = work + 3 * nw
    cdef uint64_t* tmp2 = work + 4 * nw
    cdef uint64_t* fc
    cdef const uint64_t* row
    cdef Frame* f
    cdef long long nodes = 0, best_size, upper
    cdef int i, v, pos, size, cnt
    cdef uint64_t bit
    cdef bint exhausted = False, nonempty
    cdef double deadline = 0.0
    try:
        if sets == NULL or frames == NULL or verts == NULL or labels == NULL or work == NULL:
            raise MemoryError()
        _int_to_words(best, bestw, nw)
        best_size = _popcount(bestw, nw)
        _int_to_words(cand, sets, nw)
        _int_to_words(cur, sets + nw, nw)
        size = _popcount(sets + nw, nw)
        if size > best_size:
            memcpy(bestw, sets + nw, nw * sizeof(uint64_t))
            best_size = size
        if best_size >= cap:
            return _words_to_int(bestw, nw), best_size, 0, False
        if time_limit > 0:
            deadline = time.monotonic() + time_limit
        cnt = _partition(rp, nw, sets, verts, labels, tmp1, tmp2)
        frames[0].size = size
        frames[0].pos = cnt - 1
        frames[0].off = 0
        oused = cnt
        top = 1
        nodes = 1
        while top > 0:
            f = &frames[top - 1]
            fc = sets + (top - 1) * fw
            pos = f.pos
            if pos < 0 or f.size + labels[f.off + pos] <= best_size:
                oused = f.off
                top -= 1
                continue
            v = verts[f.off + pos]
            bit = <uint64_t>1 << (v & 63)
            row = rp + <Py_ssize_t>v * nw
            nonempty = False
            for i in range(nw):
                nc[i] = fc[i] & ~row[i]
                nc[nw + i] = fc[nw + i]
            nc[v >> 6] &= ~bit
            nc[nw + (v >> 6)] |= bit
            for i in range(nw):
                if nc[i]:
                    nonempty = True
                    break
            size = f.size + 1
            if size > best_size:
                memcpy(bestw, nc + nw, nw * sizeof(uint64_t))
                best_size = size
                if best_size >= cap:
                    top = 0
                    break
            if nonempty:
                if (node_limit >= 0 and nodes >= node_limit) or (
                    deadline > 0 and nodes % TIME_CHECK_EVERY == 0 and time.monotonic() > deadline
                ):
                    exhausted = True
                    break
                nodes += 1
            fc[v >> 6] &= ~bit
            f.pos = pos - 1
            if nonempty:
                if top + 1 > capacity:
                    capacity *= 2
                    sets = <uint64_t*>realloc(sets, capacity * fw * sizeof(uint64_t))
                    frames = <Frame*>realloc(frames, capacity * sizeof(Frame))
                    if sets == NULL or frames == NULL:
                        raise MemoryError()
                if oused + n + 1 > ocap:
                    ocap = 2 * ocap + n + 1
                    verts = <int*>realloc(verts, ocap * sizeof(int))
                    labels = <int*>realloc(labels, ocap * sizeof(int))
                    if verts == NULL or labels == NULL:
                        raise MemoryError()
                memcpy(sets + top * fw, nc, fw * sizeof(uint64_t))
                cnt = _partition(rp, nw, nc, verts + oused, labels + oused, tmp1, tmp2)
                frames[top].size = size
                frames[top].pos = cnt - 1
                frames[top].off = oused
                oused += cnt
                top += 1

        best_out = _words_to_int(bestw, nw)
        if not exhausted:
            return best_out, best_size, nodes, False
        upper = best_size
        for i in range(top):
            if frames[i].pos >= 0:
                upper = max(upper, frames[i].size + labels[frames[i].off + frames[i].pos])
        return best_out, min(upper, cap), nodes, True
    finally:
        free(sets)
        free(frames)
        free(verts)
        free(labels)
        free(work)
