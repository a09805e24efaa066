"""Compiled geometry and annealing kernels.

Everything here works on plain float64 arrays so numba can compile it. A
packed instance is five arrays: vertex radii ``R`` and angles ``TH`` of shape
``(k, nmax)``, vertex counts ``NV``, masses ``M`` and polygon radii ``RAD``.
A layout is a ``(k, 3)`` array of ``(x, y, alpha)`` rows.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

EPS = 1e-12
TWO_PI = 2.0 * math.pi


@njit(cache=True)
def cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit(cache=True)
def orient(ox, oy, ax, ay, bx, by, eps):
    c = cross(ox, oy, ax, ay, bx, by)
    if c > eps:
        return 1
    if c < -eps:
        return -1
    return 0


@njit(cache=True)
def on_segment(px, py, ax, ay, bx, by, eps):
    """Closed-segment membership for a point already known to be collinear."""
    if px < min(ax, bx) - eps or px > max(ax, bx) + eps:
        return False
    if py < min(ay, by) - eps or py > max(ay, by) + eps:
        return False
    return True


@njit(cache=True)
def point_on_segment(px, py, ax, ay, bx, by, eps):
    if orient(ax, ay, bx, by, px, py, eps) != 0:
        return False
    return on_segment(px, py, ax, ay, bx, by, eps)


@njit(cache=True)
def segments_intersect(ax, ay, bx, by, cx, cy, dx, dy, eps):
    """Closed segments ab and cd share at least one point."""
    o1 = orient(ax, ay, bx, by, cx, cy, eps)
    o2 = orient(ax, ay, bx, by, dx, dy, eps)
    o3 = orient(cx, cy, dx, dy, ax, ay, eps)
    o4 = orient(cx, cy, dx, dy, bx, by, eps)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_segment(cx, cy, ax, ay, bx, by, eps):
        return True
    if o2 == 0 and on_segment(dx, dy, ax, ay, bx, by, eps):
        return True
    if o3 == 0 and on_segment(ax, ay, cx, cy, dx, dy, eps):
        return True
    if o4 == 0 and on_segment(bx, by, cx, cy, dx, dy, eps):
        return True
    return False


@njit(cache=True)
def segments_cross(ax, ay, bx, by, cx, cy, dx, dy, eps):
    """Segments cross at a single point interior to both."""
    o1 = orient(ax, ay, bx, by, cx, cy, eps)
    o2 = orient(ax, ay, bx, by, dx, dy, eps)
    o3 = orient(cx, cy, dx, dy, ax, ay, eps)
    o4 = orient(cx, cy, dx, dy, bx, by, eps)
    return o1 * o2 < 0 and o3 * o4 < 0


@njit(cache=True)
def locate_point(px, py, P, n, eps):
    """1 strictly inside, 0 on the boundary, -1 outside."""
    for a in range(n):
        b = a + 1 if a + 1 < n else 0
        if point_on_segment(px, py, P[a, 0], P[a, 1], P[b, 0], P[b, 1], eps):
            return 0
    inside = False
    for a in range(n):
        b = a + 1 if a + 1 < n else 0
        ay = P[a, 1]
        by = P[b, 1]
        if (ay > py) != (by > py):
            xint = P[a, 0] + (py - ay) * (P[b, 0] - P[a, 0]) / (by - ay)
            if px < xint:
                inside = not inside
    return 1 if inside else -1


@njit(cache=True)
def world_into(r, th, n, x, y, alpha, out):
    for v in range(n):
        ang = th[v] + alpha
        out[v, 0] = x + r[v] * math.cos(ang)
        out[v, 1] = y + r[v] * math.sin(ang)


@njit(cache=True)
def overlap_closed(P, n, Q, m, eps):
    """Closed polygons share a point: boundaries meet or one contains the other."""
    for a in range(n):
        b = a + 1 if a + 1 < n else 0
        for c in range(m):
            d = c + 1 if c + 1 < m else 0
            if segments_intersect(P[a, 0], P[a, 1], P[b, 0], P[b, 1],
                                  Q[c, 0], Q[c, 1], Q[d, 0], Q[d, 1], eps):
                return True
    if locate_point(P[0, 0], P[0, 1], Q, m, eps) >= 0:
        return True
    if locate_point(Q[0, 0], Q[0, 1], P, n, eps) >= 0:
        return True
    return False


@njit(cache=True)
def _boundary_pieces(P, n, Q, m, eps):
    """Classify pieces of P's boundary against Q.

    Each edge of P is split at the vertices of Q lying on it; the midpoint of
    every piece is located in Q. Returns (any piece strictly inside Q,
    any piece strictly outside Q).
    """
    ts = np.empty(m + 2)
    any_in = False
    any_out = False
    for a in range(n):
        b = a + 1 if a + 1 < n else 0
        ax = P[a, 0]
        ay = P[a, 1]
        ex = P[b, 0] - ax
        ey = P[b, 1] - ay
        ll = ex * ex + ey * ey
        cnt = 2
        ts[0] = 0.0
        ts[1] = 1.0
        for c in range(m):
            qx = Q[c, 0]
            qy = Q[c, 1]
            if point_on_segment(qx, qy, ax, ay, P[b, 0], P[b, 1], eps):
                t = ((qx - ax) * ex + (qy - ay) * ey) / ll
                if 0.0 < t < 1.0:
                    ts[cnt] = t
                    cnt += 1
        # insertion sort; cnt is tiny
        for s in range(1, cnt):
            key = ts[s]
            u = s - 1
            while u >= 0 and ts[u] > key:
                ts[u + 1] = ts[u]
                u -= 1
            ts[u + 1] = key
        for s in range(cnt - 1):
            t0 = ts[s]
            t1 = ts[s + 1]
            if t1 - t0 <= 1e-15:
                continue
            tm = 0.5 * (t0 + t1)
            loc = locate_point(ax + tm * ex, ay + tm * ey, Q, m, eps)
            if loc > 0:
                any_in = True
                return any_in, any_out
            if loc < 0:
                any_out = True
    return any_in, any_out


@njit(cache=True)
def overlap_interior(P, n, Q, m, eps):
    """Polygons share positive area; touching along boundaries does not count."""
    for a in range(n):
        b = a + 1 if a + 1 < n else 0
        for c in range(m):
            d = c + 1 if c + 1 < m else 0
            if segments_cross(P[a, 0], P[a, 1], P[b, 0], P[b, 1],
                              Q[c, 0], Q[c, 1], Q[d, 0], Q[d, 1], eps):
                return True
    p_in, p_out = _boundary_pieces(P, n, Q, m, eps)
    if p_in:
        return True
    q_in, q_out = _boundary_pieces(Q, m, P, n, eps)
    if q_in:
        return True
    # no piece of either boundary is inside the other polygon; the interiors
    # meet only if the boundaries coincide
    return not p_out or not q_out


@njit(cache=True)
def pair_measure(i, j, W, NV, RAD, S, eps):
    dx = S[i, 0] - S[j, 0]
    dy = S[i, 1] - S[j, 1]
    dist = math.sqrt(dx * dx + dy * dy)
    reach = RAD[i] + RAD[j]
    if dist >= reach:
        return 0.0
    if overlap_interior(W[i], NV[i], W[j], NV[j], eps):
        return reach - dist
    return 0.0


@njit(cache=True)
def fill_world(R, TH, NV, S, W):
    for i in range(S.shape[0]):
        world_into(R[i], TH[i], NV[i], S[i, 0], S[i, 1], S[i, 2], W[i])


@njit(cache=True)
def fill_pairs(W, NV, RAD, S, O, eps):
    k = S.shape[0]
    for i in range(k):
        O[i, i] = 0.0
        for j in range(i + 1, k):
            v = pair_measure(i, j, W, NV, RAD, S, eps)
            O[i, j] = v
            O[j, i] = v


@njit(cache=True)
def total_overlap(O):
    # ordered pairs, each unordered pair counted twice
    k = O.shape[0]
    s = 0.0
    for i in range(k):
        for j in range(k):
            if j != i:
                s += O[i, j]
    return s


@njit(cache=True)
def center_of_mass(M, S):
    sm = 0.0
    sx = 0.0
    sy = 0.0
    for i in range(S.shape[0]):
        sm += M[i]
        sx += M[i] * S[i, 0]
        sy += M[i] * S[i, 1]
    return sx / sm, sy / sm


@njit(cache=True)
def layout_radius(W, NV, M, S):
    cx, cy = center_of_mass(M, S)
    best = 0.0
    for i in range(S.shape[0]):
        for v in range(NV[i]):
            dx = W[i, v, 0] - cx
            dy = W[i, v, 1] - cy
            d2 = dx * dx + dy * dy
            if d2 > best:
                best = d2
    return math.sqrt(best)


@njit(cache=True)
def evaluate(R, TH, NV, M, RAD, S, eps):
    """Full evaluation: (total overlap, layout radius)."""
    k = S.shape[0]
    W = np.empty((k, R.shape[1], 2))
    O = np.empty((k, k))
    fill_world(R, TH, NV, S, W)
    fill_pairs(W, NV, RAD, S, O, eps)
    return total_overlap(O), layout_radius(W, NV, M, S)


@njit(cache=True)
def wrap_angle(a):
    a = a - TWO_PI * math.floor(a / TWO_PI)
    if a >= TWO_PI:
        a -= TWO_PI
    return a


@njit(cache=True, nogil=True)
def anneal_loop(R, TH, NV, M, RAD, S, U, imax, cmax, t0, d, emax,
                lam1, lam2, r0, absolute, trace_every, eps):
    """Run the annealing loop in place on ``S``.

    ``U`` holds ``imax`` rows of four uniforms on [0, 1): three for the move
    and one for the acceptance test. Returns the best layout, its energy,
    iterations used, final temperature, the sampled trace and uphill
    acceptance counters for the first and last tenth of the budget.
    """
    k = S.shape[0]
    nmax = R.shape[1]
    W = np.empty((k, nmax, 2))
    O = np.empty((k, k))
    fill_world(R, TH, NV, S, W)
    fill_pairs(W, NV, RAD, S, O, eps)
    energy = lam1 * total_overlap(O) + lam2 * layout_radius(W, NV, M, S)

    best_S = S.copy()
    best_e = energy
    old_w = np.empty((nmax, 2))
    old_row = np.empty(k)

    ntrace = imax // trace_every + 2
    trace_i = np.empty(ntrace, dtype=np.int64)
    trace_e = np.empty(ntrace)
    trace_b = np.empty(ntrace)
    nt = 0
    # uphill proposals/acceptances in the first and last tenth
    stats = np.zeros(4, dtype=np.int64)
    early = imax // 10
    late = imax - imax // 10

    t = t0
    ncool = 0
    i = 0
    while i < imax and energy > emax:
        j = i % k
        scale = imax / (i - 2.0 * imax) + 1.05
        ox = S[j, 0]
        oy = S[j, 1]
        oa = S[j, 2]
        u1 = 2.0 * U[i, 0] - 1.0
        u2 = 2.0 * U[i, 1] - 1.0
        u3 = 2.0 * U[i, 2] - 1.0
        if absolute:
            S[j, 0] = scale * r0 * u1
            S[j, 1] = scale * r0 * u2
            S[j, 2] = wrap_angle(scale * math.pi * u3)
        else:
            S[j, 0] = ox + scale * r0 * u1
            S[j, 1] = oy + scale * r0 * u2
            S[j, 2] = wrap_angle(oa + scale * math.pi * u3)
        for v in range(NV[j]):
            old_w[v, 0] = W[j, v, 0]
            old_w[v, 1] = W[j, v, 1]
        for q in range(k):
            old_row[q] = O[j, q]
        world_into(R[j], TH[j], NV[j], S[j, 0], S[j, 1], S[j, 2], W[j])
        for q in range(k):
            if q != j:
                val = pair_measure(j, q, W, NV, RAD, S, eps)
                O[j, q] = val
                O[q, j] = val
        cand = lam1 * total_overlap(O) + lam2 * layout_radius(W, NV, M, S)
        delta = cand - energy
        if delta < 0.0:
            accepted = True
        else:
            accepted = U[i, 3] < math.exp(-delta / t)
            if delta > 0.0:
                if i < early:
                    stats[0] += 1
                    if accepted:
                        stats[1] += 1
                elif i >= late:
                    stats[2] += 1
                    if accepted:
                        stats[3] += 1
        if accepted:
            energy = cand
            if energy < best_e:
                best_e = energy
                for q in range(k):
                    best_S[q, 0] = S[q, 0]
                    best_S[q, 1] = S[q, 1]
                    best_S[q, 2] = S[q, 2]
        else:
            S[j, 0] = ox
            S[j, 1] = oy
            S[j, 2] = oa
            for v in range(NV[j]):
                W[j, v, 0] = old_w[v, 0]
                W[j, v, 1] = old_w[v, 1]
            for q in range(k):
                O[j, q] = old_row[q]
                O[q, j] = old_row[q]
        if i % cmax == cmax - 1:
            ncool += 1
            t = t0 * d ** float(ncool)
        if i % trace_every == 0:
            trace_i[nt] = i
            trace_e[nt] = energy
            trace_b[nt] = best_e
            nt += 1
        i += 1
    trace_i[nt] = i
    trace_e[nt] = energy
    trace_b[nt] = best_e
    nt += 1
    return best_S, best_e, i, t, trace_i[:nt], trace_e[:nt], trace_b[:nt], stats
