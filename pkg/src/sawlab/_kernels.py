"""Compiled depth-first search kernels.

Every kernel continues a fixed prefix (given as coordinate arrays, prefix
already validated) and tallies only walks strictly longer than the prefix.
Occupancy is a flat bitmap over a window known in advance.  Direction index
order is E, N, W, S throughout.
"""

import numpy as np
from numba import njit

_DX = np.array([1, 0, -1, 0], dtype=np.int64)
_DY = np.array([0, 1, 0, -1], dtype=np.int64)


@njit(cache=True, nogil=True)
def saw_tail(px, py, n_max, out):
    """Full-plane SAWs: ``out[n]`` += number of n-step extensions of the prefix."""
    k = px.shape[0] - 1
    if k >= n_max:
        return
    R = n_max + 1
    S = 2 * R + 1
    grid = np.zeros(S * S, dtype=np.uint8)
    xs = np.empty(n_max + 1, dtype=np.int64)
    ys = np.empty(n_max + 1, dtype=np.int64)
    nxt = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(k + 1):
        xs[i] = px[i]
        ys[i] = py[i]
        grid[(px[i] + R) * S + py[i] + R] = 1
    d = k
    last = n_max - 1
    while True:
        if d == last:
            # leaf level: count free neighbours without descending
            c = 0
            for j in range(4):
                if grid[(xs[d] + _DX[j] + R) * S + ys[d] + _DY[j] + R] == 0:
                    c += 1
            out[d + 1] += c
            nxt[d] = 4
        if nxt[d] == 4:
            if d == k:
                break
            grid[(xs[d] + R) * S + ys[d] + R] = 0
            d -= 1
            continue
        j = nxt[d]
        nxt[d] += 1
        x = xs[d] + _DX[j]
        y = ys[d] + _DY[j]
        cell = (x + R) * S + y + R
        if grid[cell]:
            continue
        out[d + 1] += 1
        grid[cell] = 1
        d += 1
        xs[d] = x
        ys[d] = y
        nxt[d] = 0


@njit(cache=True, nogil=True)
def half_plane_tail(px, py, n_max, out):
    """Walks in y >= 0 anchored at the origin.

    ``out[n, i, m, x + off]`` (``off`` centres the last axis) += number of n-step extensions with ``i``
    non-origin vertices on y = 0, ``m`` non-bonded nearest-neighbour contacts
    and end-point abscissa ``x``.
    """
    k = px.shape[0] - 1
    if k >= n_max:
        return
    off = (out.shape[3] - 1) // 2
    R = n_max + 1
    S = 2 * R + 1
    grid = np.zeros(S * S, dtype=np.uint8)
    xs = np.empty(n_max + 1, dtype=np.int64)
    ys = np.empty(n_max + 1, dtype=np.int64)
    wall = np.zeros(n_max + 1, dtype=np.int64)
    cont = np.zeros(n_max + 1, dtype=np.int64)
    nxt = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(k + 1):
        xs[i] = px[i]
        ys[i] = py[i]
        grid[(px[i] + R) * S + py[i] + R] = 1
    # statistics of the prefix itself
    for i in range(1, k + 1):
        wall[i] = wall[i - 1] + (1 if ys[i] == 0 else 0)
        c = 0
        for j in range(4):
            qx = xs[i] + _DX[j]
            qy = ys[i] + _DY[j]
            for t in range(i - 1):
                if xs[t] == qx and ys[t] == qy:
                    c += 1
        cont[i] = cont[i - 1] + c
    d = k
    while True:
        if nxt[d] == 4:
            if d == k:
                break
            grid[(xs[d] + R) * S + ys[d] + R] = 0
            d -= 1
            continue
        j = nxt[d]
        nxt[d] += 1
        x = xs[d] + _DX[j]
        y = ys[d] + _DY[j]
        if y < 0:
            continue
        cell = (x + R) * S + y + R
        if grid[cell]:
            continue
        # contacts: occupied neighbours of the new site other than its predecessor
        c = -1
        for t in range(4):
            qy = y + _DY[t]
            if qy >= 0 and grid[(x + _DX[t] + R) * S + qy + R]:
                c += 1
        w = wall[d] + (1 if y == 0 else 0)
        m = cont[d] + c
        out[d + 1, w, m, x + off] += 1
        if d + 1 < n_max:
            grid[cell] = 1
            d += 1
            xs[d] = x
            ys[d] = y
            wall[d] = w
            cont[d] = m
            nxt[d] = 0


@njit(cache=True, nogil=True)
def polygon_tail(px, py, m_max, out):
    """Polygons rooted at their least vertex in (y, x) order.

    Walks start with an East step, stay strictly above the origin in (y, x)
    order, and close when they reach (0, 1).  ``out[m, a]`` += number of
    polygons of perimeter ``m`` and area ``a``.  Each polygon arises exactly
    once.
    """
    k = px.shape[0] - 1
    n_max = m_max - 1
    if k >= n_max:
        return
    R = m_max // 2 + 2
    S = 2 * R + 1
    grid = np.zeros(S * S, dtype=np.uint8)
    xs = np.empty(n_max + 1, dtype=np.int64)
    ys = np.empty(n_max + 1, dtype=np.int64)
    acc = np.zeros(n_max + 1, dtype=np.int64)
    nxt = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(k + 1):
        xs[i] = px[i]
        ys[i] = py[i]
        grid[(px[i] + R) * S + py[i] + R] = 1
    for i in range(1, k + 1):
        acc[i] = acc[i - 1] + xs[i - 1] * ys[i] - xs[i] * ys[i - 1]
    if xs[k] == 0 and ys[k] == 1:
        return
    d = k
    while True:
        if nxt[d] == 4:
            if d == k:
                break
            grid[(xs[d] + R) * S + ys[d] + R] = 0
            d -= 1
            continue
        j = nxt[d]
        nxt[d] += 1
        x = xs[d] + _DX[j]
        y = ys[d] + _DY[j]
        if y < 0 or (y == 0 and x <= 0):
            continue
        # must still be able to get back to (0, 1)
        if abs(x) + abs(y - 1) > n_max - d - 1:
            continue
        cell = (x + R) * S + y + R
        if grid[cell]:
            continue
        a = acc[d] + xs[d] * y - x * ys[d]
        if x == 0 and y == 1:
            if d + 1 >= 3:
                out[d + 2, abs(a) // 2] += 1
            continue
        if d + 1 < n_max:
            grid[cell] = 1
            d += 1
            xs[d] = x
            ys[d] = y
            acc[d] = a
            nxt[d] = 0


@njit(cache=True, nogil=True)
def _target_reachable(grid, S, L, x0, y0, queue, seen, stamp):
    # flood fill from the target (L, L) through free cells; success if it
    # touches a neighbour of the current end (x0, y0)
    t = L * S + L
    if grid[t]:
        return False
    head = 0
    tail = 0
    queue[tail] = t
    tail += 1
    seen[t] = stamp
    while head < tail:
        c = queue[head]
        head += 1
        cx = c // S
        cy = c - cx * S
        for j in range(4):
            qx = cx + _DX[j]
            qy = cy + _DY[j]
            if qx == x0 and qy == y0:
                return True
            if qx < 0 or qy < 0 or qx > L or qy > L:
                continue
            q = qx * S + qy
            if grid[q] or seen[q] == stamp:
                continue
            seen[q] = stamp
            queue[tail] = q
            tail += 1
    return False


@njit(cache=True, nogil=True)
def crossing_tail(px, py, L, n_limit, out):
    """Walks in [0, L]^2 from the prefix end to (L, L) of at most ``n_limit``
    steps; ``out[n]`` by length."""
    k = px.shape[0] - 1
    S = L + 1
    nv = S * S
    n_max = min(nv - 1, n_limit)
    grid = np.zeros(nv, dtype=np.uint8)
    seen = np.zeros(nv, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    xs = np.empty(nv, dtype=np.int64)
    ys = np.empty(nv, dtype=np.int64)
    nxt = np.zeros(nv, dtype=np.int64)
    for i in range(k + 1):
        xs[i] = px[i]
        ys[i] = py[i]
        grid[px[i] * S + py[i]] = 1
    if xs[k] == L and ys[k] == L:
        return
    stamp = 1
    if not _target_reachable(grid, S, L, xs[k], ys[k], queue, seen, stamp):
        return
    d = k
    while True:
        if nxt[d] == 4:
            if d == k:
                break
            grid[xs[d] * S + ys[d]] = 0
            d -= 1
            continue
        j = nxt[d]
        nxt[d] += 1
        x = xs[d] + _DX[j]
        y = ys[d] + _DY[j]
        if x < 0 or y < 0 or x > L or y > L:
            continue
        cell = x * S + y
        if grid[cell]:
            continue
        if x == L and y == L:
            out[d + 1] += 1
            continue
        if d + 1 >= n_max:
            continue
        grid[cell] = 1
        # only a site touching an obstacle (wall or earlier vertex, other
        # than the predecessor) can cut the free region
        touch = False
        for a in range(-1, 2):
            for b in range(-1, 2):
                if a == 0 and b == 0:
                    continue
                qx = x + a
                qy = y + b
                if qx < 0 or qy < 0 or qx > L or qy > L:
                    touch = True
                elif grid[qx * S + qy] and not (qx == xs[d] and qy == ys[d]):
                    touch = True
        if touch:
            stamp += 1
            if not _target_reachable(grid, S, L, x, y, queue, seen, stamp):
                grid[cell] = 0
                continue
        d += 1
        xs[d] = x
        ys[d] = y
        nxt[d] = 0


@njit(cache=True, nogil=True)
def honeycomb_tail(nbr, heading, wall, medge, start_vertex, start_heading,
                   n_vertices, out):
    """Walks from a boundary mid-edge on a finite honeycomb domain.

    ``nbr[v, s]`` is the neighbour through slot ``s`` (-1 when outside),
    ``heading[v, s]`` its direction in units of pi/3, ``medge[v, s]`` the
    mid-edge id and ``wall[v]`` 1 for weighted wall vertices.  For every walk
    ending at mid-edge p after visiting ``nv`` vertices with turn sum ``t``
    and ``nw`` wall visits, ``out[p, nv, t + n_vertices, nw]`` += 1.
    """
    nV = n_vertices
    visited = np.zeros(nV, dtype=np.uint8)
    vs = np.empty(nV + 1, dtype=np.int64)
    hin = np.empty(nV + 1, dtype=np.int64)
    turns = np.zeros(nV + 1, dtype=np.int64)
    walls = np.zeros(nV + 1, dtype=np.int64)
    nxt = np.zeros(nV + 1, dtype=np.int64)
    d = 1
    vs[1] = start_vertex
    hin[1] = start_heading
    visited[start_vertex] = 1
    walls[1] = wall[start_vertex]
    turns[0] = 0
    while True:
        if nxt[d] == 3:
            visited[vs[d]] = 0
            if d == 1:
                break
            d -= 1
            continue
        s = nxt[d]
        nxt[d] += 1
        v = vs[d]
        h = heading[v, s]
        diff = (h - hin[d]) % 6
        if diff == 1:
            t = turns[d - 1] + 1
        elif diff == 5:
            t = turns[d - 1] - 1
        else:
            # the slot we came in through
            continue
        out[medge[v, s], d, t + nV, walls[d]] += 1
        u = nbr[v, s]
        if u < 0 or visited[u]:
            continue
        visited[u] = 1
        turns[d] = t
        d += 1
        vs[d] = u
        hin[d] = h
        walls[d] = walls[d - 1] + wall[u]
        nxt[d] = 0


@njit(cache=True, nogil=True)
def pivot_run(xs, ys, sites, ops, thin, n_samples, out_r2):
    """Naive pivot algorithm on a square-lattice SAW held in ``xs, ys``.

    Proposal ``i`` pivots the part of the walk after ``sites[i]`` with the
    point-group element ``ops[i]`` (0 is the identity).  After every
    ``thin`` proposals the squared end-to-end distance is recorded.  Returns
    the number of accepted proposals.
    """
    n = xs.shape[0] - 1
    R = 2 * n + 2
    S = 2 * R + 1
    # grid stores (index + 1) of the occupying site, 0 when free
    grid = np.zeros(S * S, dtype=np.int64)
    for i in range(n + 1):
        grid[(xs[i] - xs[0] + R) * S + ys[i] - ys[0] + R] = i + 1
    newx = np.empty(n + 1, dtype=np.int64)
    newy = np.empty(n + 1, dtype=np.int64)
    accepted = 0
    p = 0
    for s in range(n_samples):
        for _ in range(thin):
            k = sites[p]
            g = ops[p]
            p += 1
            if g == 0:
                accepted += 1
                continue
            cx = xs[k]
            cy = ys[k]
            ok = True
            for i in range(k + 1, n + 1):
                dx = xs[i] - cx
                dy = ys[i] - cy
                if g == 1:
                    tx, ty = -dy, dx
                elif g == 2:
                    tx, ty = -dx, -dy
                elif g == 3:
                    tx, ty = dy, -dx
                elif g == 4:
                    tx, ty = dx, -dy
                elif g == 5:
                    tx, ty = -dx, dy
                elif g == 6:
                    tx, ty = dy, dx
                else:
                    tx, ty = -dy, -dx
                nx = cx + tx
                ny = cy + ty
                occ = grid[(nx - xs[0] + R) * S + ny - ys[0] + R]
                if occ != 0 and occ - 1 <= k:
                    ok = False
                    break
                newx[i] = nx
                newy[i] = ny
            if not ok:
                continue
            accepted += 1
            for i in range(k + 1, n + 1):
                grid[(xs[i] - xs[0] + R) * S + ys[i] - ys[0] + R] = 0
            for i in range(k + 1, n + 1):
                xs[i] = newx[i]
                ys[i] = newy[i]
                grid[(xs[i] - xs[0] + R) * S + ys[i] - ys[0] + R] = i + 1
        ex = xs[n] - xs[0]
        ey = ys[n] - ys[0]
        out_r2[s] = ex * ex + ey * ey
    return accepted


@njit(cache=True, nogil=True)
def crossing_tail_bits(px, py, L, n_limit, out):
    """Bitboard version of :func:`crossing_tail` for (L + 1) * (L + 2) <= 64.

    Cell (x, y) is bit y * W + x with W = L + 2; column x = L + 1 is a
    permanently blocked guard so that horizontal shifts cannot wrap.
    """
    k = px.shape[0] - 1
    W = L + 2
    nv = (L + 1) * (L + 1)
    n_max = min(nv - 1, n_limit)
    one = np.uint64(1)
    inside = np.uint64(0)
    for y in range(L + 1):
        for x in range(L + 1):
            inside |= one << np.uint64(y * W + x)
    # neighbour masks and boundary flags per cell
    nb4 = np.zeros(W * (L + 1), dtype=np.uint64)
    nb8 = np.zeros(W * (L + 1), dtype=np.uint64)
    edge = np.zeros(W * (L + 1), dtype=np.uint8)
    for y in range(L + 1):
        for x in range(L + 1):
            c = y * W + x
            if x == 0 or y == 0 or x == L or y == L:
                edge[c] = 1
            for a in range(-1, 2):
                for b in range(-1, 2):
                    if a == 0 and b == 0:
                        continue
                    qx = x + a
                    qy = y + b
                    if 0 <= qx <= L and 0 <= qy <= L:
                        bit = one << np.uint64(qy * W + qx)
                        nb8[c] |= bit
                        if a == 0 or b == 0:
                            nb4[c] |= bit
    target = one << np.uint64(L * W + L)
    sW = np.uint64(W)
    s1 = np.uint64(1)
    xs = np.empty(nv, dtype=np.int64)
    ys = np.empty(nv, dtype=np.int64)
    nxt = np.zeros(nv, dtype=np.int64)
    visited = np.uint64(0)
    for i in range(k + 1):
        xs[i] = px[i]
        ys[i] = py[i]
        visited |= one << np.uint64(py[i] * W + px[i])
    if xs[k] == L and ys[k] == L:
        return
    d = k
    check_first = True
    while True:
        if check_first:
            check_first = False
            cur = ys[d] * W + xs[d]
            free = inside & ~visited
            reach = target
            goal = nb4[cur]
            ok = (reach & goal) != 0
            while not ok:
                grown = (reach | (reach << s1) | (reach >> s1) | (reach << sW) | (reach >> sW)) & free
                if grown == reach:
                    break
                reach = grown
                ok = (reach & goal) != 0
            if not ok:
                return
        if nxt[d] == 4:
            if d == k:
                break
            visited &= ~(one << np.uint64(ys[d] * W + xs[d]))
            d -= 1
            continue
        j = nxt[d]
        nxt[d] += 1
        x = xs[d] + _DX[j]
        y = ys[d] + _DY[j]
        if x < 0 or y < 0 or x > L or y > L:
            continue
        c = y * W + x
        bit = one << np.uint64(c)
        if visited & bit:
            continue
        if bit == target:
            out[d + 1] += 1
            continue
        if d + 1 >= n_max:
            continue
        visited |= bit
        pred = one << np.uint64(ys[d] * W + xs[d])
        if edge[c] or (nb8[c] & visited & ~pred & ~bit) != 0:
            free = inside & ~visited
            reach = target
            goal = nb4[c]
            ok = (reach & goal) != 0
            while not ok:
                grown = (reach | (reach << s1) | (reach >> s1) | (reach << sW) | (reach >> sW)) & free
                if grown == reach:
                    break
                reach = grown
                ok = (reach & goal) != 0
            if not ok:
                visited &= ~bit
                continue
        d += 1
        xs[d] = x
        ys[d] = y
        nxt[d] = 0
