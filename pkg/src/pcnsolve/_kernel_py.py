"""Pure-Python stable-set kernels over int bitsets.

This is the reference implementation; ``_kernel.pyx`` mirrors it step for
step so that both backends visit the same nodes and return identical sets.
"""

from __future__ import annotations

import time

BACKEND = "python"
TIME_CHECK_EVERY = 256


def pack(rows, n: int) -> list[int]:
    return list(rows)


def greedy_mis(rows: list[int], n: int, allowed: int) -> int:
    """Minimum-residual-degree greedy, ties broken by lowest vertex id."""
    residual = allowed
    deg = {}
    x = residual
    while x:
        low = x & -x
        v = low.bit_length() - 1
        x ^= low
        deg[v] = (rows[v] & residual).bit_count()
    chosen = 0
    while residual:
        best_v, best_d = -1, n + 1
        x = residual
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            if deg[v] < best_d:
                best_v, best_d = v, deg[v]
        chosen |= 1 << best_v
        removed = (rows[best_v] & residual) | (1 << best_v)
        residual &= ~removed
        while removed:
            low = removed & -removed
            u = low.bit_length() - 1
            removed ^= low
            y = rows[u] & residual
            while y:
                lowy = y & -y
                deg[lowy.bit_length() - 1] -= 1
                y ^= lowy
    return chosen


def cover_bound(rows: list[int], n: int, cand: int, limit: int) -> int:
    """Size of a greedy clique partition of ``cand``, counting past ``limit`` stops early."""
    count = 0
    rest = cand
    while rest:
        count += 1
        if count > limit:
            return count
        low = rest & -rest
        rest ^= low
        q = rest & rows[low.bit_length() - 1]
        while q:
            lowq = q & -q
            rest ^= lowq
            q &= rows[lowq.bit_length() - 1]
    return count


def partition(rows: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy clique partition of ``cand`` as parallel lists (vertex, clique number).

    Cliques are numbered from 1; each grows from its lowest free vertex by
    repeatedly adding the lowest compatible one.
    """
    verts: list[int] = []
    labels: list[int] = []
    count = 0
    rest = cand
    while rest:
        count += 1
        low = rest & -rest
        rest ^= low
        v = low.bit_length() - 1
        verts.append(v)
        labels.append(count)
        q = rest & rows[v]
        while q:
            lowq = q & -q
            rest ^= lowq
            u = lowq.bit_length() - 1
            verts.append(u)
            labels.append(count)
            q &= rows[u]
    return verts, labels


def branch_and_bound(
    rows: list[int],
    n: int,
    cand: int,
    cur: int,
    best: int,
    cap: int,
    node_limit: int,
    time_limit: float,
) -> tuple[int, int, int, bool]:
    """Depth-first search for a maximum stable set, branching in clique-partition order.

    Each node partitions its candidates into cliques and tries candidates
    from the last clique backwards; a candidate labelled ``c`` can add at
    most ``c`` vertices, which prunes the rest of the node once
    ``size + c <= best``. ``cand``/``cur`` describe the root subproblem and
    ``best`` the incumbent. ``cap`` is a known upper bound on the answer;
    ``node_limit`` < 0 and ``time_limit`` <= 0 mean unlimited.

    Returns ``(best, upper, nodes, exhausted)``.
    """
    best_size = best.bit_count()
    cs = cur.bit_count()
    if cs > best_size:
        best, best_size = cur, cs
    if best_size >= cap:
        return best, best_size, 0, False
    deadline = time.monotonic() + time_limit if time_limit > 0 else 0.0
    verts, labels = partition(rows, cand)
    # frame: [cand, cur, size, verts, labels, pos]
    stack = [[cand, cur, cs, verts, labels, len(verts) - 1]]
    nodes = 1
    exhausted = False
    while stack:
        top = stack[-1]
        pos = top[5]
        if pos < 0 or top[2] + top[4][pos] <= best_size:
            stack.pop()
            continue
        v = top[3][pos]
        bit = 1 << v
        new_cand = top[0] & ~bit & ~rows[v]
        new_cur = top[1] | bit
        size = top[2] + 1
        if size > best_size:
            best, best_size = new_cur, size
            if best_size >= cap:
                stack.clear()
                break
        if new_cand:
            if (node_limit >= 0 and nodes >= node_limit) or (
                deadline and nodes % TIME_CHECK_EVERY == 0 and time.monotonic() > deadline
            ):
                exhausted = True
                break
            nodes += 1
        top[0] &= ~bit
        top[5] = pos - 1
        if new_cand:
            verts, labels = partition(rows, new_cand)
            stack.append([new_cand, new_cur, size, verts, labels, len(verts) - 1])

    if not exhausted:
        return best, best_size, nodes, False
    upper = best_size
    for _c, _cur, size, _v, labels, pos in stack:
        if pos >= 0:
            upper = max(upper, size + labels[pos])
    return best, min(upper, cap), nodes, True
