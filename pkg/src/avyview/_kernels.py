"""Hot numeric kernels behind the geometry module.

Two execution paths compute identical results:

* a scalar-loop path compiled with numba ``@njit`` (the default when
  numba imports cleanly), and
* a vectorized pure-numpy path, selected by setting ``AVYVIEW_NO_NUMBA=1``
  in the environment (or automatically when numba is unavailable).

Both paths enumerate packing candidates in the same order and evaluate
the same floating-point expressions elementwise, so layouts are
bit-identical across paths; a regression test pins that equivalence and
``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import math
import os

import numpy as np

# Relative slack accepted when testing a tangency candidate against the
# already-placed circles; far below the public 1e-6 packing tolerance.
_CONTACT_SLACK = 1e-9

# Relative epsilon for "weakly encloses" in the enclosing-circle basis
# walk (absolute floor of 1 keeps degenerate zero-radius inputs stable).
_ENCLOSE_EPS = 1e-10


def _env_disables_numba() -> bool:
    return os.environ.get("AVYVIEW_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")


try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    numba = None
    _HAVE_NUMBA = False

USING_NUMBA = _HAVE_NUMBA and not _env_disables_numba()


def _njit(func):
    if USING_NUMBA:
        return numba.njit(cache=True)(func)
    return func


# ---------------------------------------------------------------------------
# Front-chain sibling packing
#
# First circle at the origin, second tangent along +x. Every later circle
# is placed tangent to an adjacent pair on the advancing front chain,
# taking the candidate centre nearest the origin among all placements
# that overlap nothing already placed. Ties keep the earliest candidate
# in chain order, which makes the layout fully deterministic.
# ---------------------------------------------------------------------------


@_njit
def _pack_front_chain_loops(radii):
    n = radii.shape[0]
    centers = np.zeros((n, 2), dtype=np.float64)
    if n <= 1:
        return centers
    centers[1, 0] = radii[0] + radii[1]
    if n == 2:
        return centers

    chain = np.empty(n, dtype=np.int64)
    chain[0] = 0
    chain[1] = 1
    clen = 2

    for i in range(2, n):
        r = radii[i]
        best_d2 = np.inf
        best_x = 0.0
        best_y = 0.0
        best_link = -1
        for t in range(clen):
            a = chain[t]
            b = chain[(t + 1) % clen]
            ax = centers[a, 0]
            ay = centers[a, 1]
            dx = centers[b, 0] - ax
            dy = centers[b, 1] - ay
            d2ab = dx * dx + dy * dy
            if d2ab <= 0.0:
                continue
            d = math.sqrt(d2ab)
            da = radii[a] + r
            db = radii[b] + r
            al = (da * da - db * db + d2ab) / (2.0 * d)
            h2 = da * da - al * al
            if h2 < 0.0:
                continue
            h = math.sqrt(h2)
            ux = dx / d
            uy = dy / d
            px = ax + al * ux
            py = ay + al * uy
            for side in range(2):
                if side == 0:
                    cx = px - h * uy
                    cy = py + h * ux
                else:
                    cx = px + h * uy
                    cy = py - h * ux
                ok = True
                for j in range(i):
                    ddx = cx - centers[j, 0]
                    ddy = cy - centers[j, 1]
                    m = (radii[j] + r) * (1.0 - _CONTACT_SLACK)
                    if ddx * ddx + ddy * ddy < m * m:
                        ok = False
                        break
                if ok:
                    key = cx * cx + cy * cy
                    if key < best_d2:
                        best_d2 = key
                        best_x = cx
                        best_y = cy
                        best_link = t

        if best_link < 0:
            # No tangency candidate is free (pathological inputs only):
            # slide outward off the circle whose far edge is outermost,
            # which can never collide with anything.
            far = 0
            far_key = -np.inf
            for j in range(i):
                key = math.sqrt(
                    centers[j, 0] * centers[j, 0] + centers[j, 1] * centers[j, 1]
                ) + radii[j]
                if key > far_key:
                    far_key = key
                    far = j
            fx = centers[far, 0]
            fy = centers[far, 1]
            norm = math.sqrt(fx * fx + fy * fy)
            if norm <= 0.0:
                ux = 1.0
                uy = 0.0
            else:
                ux = fx / norm
                uy = fy / norm
            best_x = fx + (radii[far] + r) * ux
            best_y = fy + (radii[far] + r) * uy
            for t in range(clen):
                if chain[t] == far:
                    best_link = t
                    break

        centers[i, 0] = best_x
        centers[i, 1] = best_y
        pos = best_link + 1
        for t in range(clen, pos, -1):
            chain[t] = chain[t - 1]
        chain[pos] = i
        clen += 1

    return centers


def _pack_front_chain_numpy(radii: np.ndarray) -> np.ndarray:
    """Vectorized equivalent of :func:`_pack_front_chain_loops`."""
    n = radii.shape[0]
    centers = np.zeros((n, 2), dtype=np.float64)
    if n <= 1:
        return centers
    centers[1, 0] = radii[0] + radii[1]
    if n == 2:
        return centers

    chain = [0, 1]

    for i in range(2, n):
        r = radii[i]
        a = np.asarray(chain, dtype=np.int64)
        b = np.roll(a, -1)
        ax, ay = centers[a, 0], centers[a, 1]
        dx = centers[b, 0] - ax
        dy = centers[b, 1] - ay
        d2ab = dx * dx + dy * dy
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.sqrt(d2ab)
            da = radii[a] + r
            db = radii[b] + r
            al = (da * da - db * db + d2ab) / (2.0 * d)
            h2 = da * da - al * al
            h = np.sqrt(np.where(h2 < 0.0, np.nan, h2))
            ux = dx / d
            uy = dy / d
        px = ax + al * ux
        py = ay + al * uy

        nl = len(chain)
        cand_x = np.empty(2 * nl)
        cand_y = np.empty(2 * nl)
        cand_x[0::2] = px - h * uy
        cand_y[0::2] = py + h * ux
        cand_x[1::2] = px + h * uy
        cand_y[1::2] = py - h * ux

        ddx = cand_x[:, None] - centers[None, :i, 0]
        ddy = cand_y[:, None] - centers[None, :i, 1]
        m = (radii[:i] + r) * (1.0 - _CONTACT_SLACK)
        with np.errstate(invalid="ignore"):
            valid = np.all(ddx * ddx + ddy * ddy >= m * m, axis=1)

        key = np.where(valid, cand_x * cand_x + cand_y * cand_y, np.inf)
        pick = int(np.argmin(key))

        if not np.isfinite(key[pick]):
            far_key = np.sqrt(
                centers[:i, 0] ** 2 + centers[:i, 1] ** 2
            ) + radii[:i]
            far = int(np.argmax(far_key))
            fx, fy = centers[far]
            norm = math.sqrt(fx * fx + fy * fy)
            ux_f, uy_f = (1.0, 0.0) if norm <= 0.0 else (fx / norm, fy / norm)
            centers[i, 0] = fx + (radii[far] + r) * ux_f
            centers[i, 1] = fy + (radii[far] + r) * uy_f
            chain.insert(chain.index(far) + 1, i)
        else:
            centers[i, 0] = cand_x[pick]
            centers[i, 1] = cand_y[pick]
            chain.insert(pick // 2 + 1, i)

    return centers


def pack_centers(radii: np.ndarray) -> np.ndarray:
    """Front-chain packing centers, numba or numpy path per ``USING_NUMBA``."""
    radii = np.ascontiguousarray(radii, dtype=np.float64)
    if USING_NUMBA:
        return _pack_front_chain_loops(radii)
    return _pack_front_chain_numpy(radii)


# ---------------------------------------------------------------------------
# Smallest circle enclosing a set of circles.
#
# Incremental basis walk over support sets of at most three circles.
# Input order is the (deterministic) scan order; no shuffling, so the
# result is bit-stable for identical inputs.
# ---------------------------------------------------------------------------


@_njit
def _encloses_weak(ax, ay, ar, bx, by, br):
    dr = ar - br + max(ar, max(br, 1.0)) * _ENCLOSE_EPS
    dx = bx - ax
    dy = by - ay
    return dr > 0.0 and dr * dr > dx * dx + dy * dy


@_njit
def _encloses_not(ax, ay, ar, bx, by, br):
    dr = ar - br
    dx = bx - ax
    dy = by - ay
    return dr < 0.0 or dr * dr < dx * dx + dy * dy


@_njit
def _basis2(ax, ay, ar, bx, by, br):
    x21 = bx - ax
    y21 = by - ay
    r21 = br - ar
    l = math.sqrt(x21 * x21 + y21 * y21)
    return (
        (ax + bx + x21 / l * r21) / 2.0,
        (ay + by + y21 / l * r21) / 2.0,
        (l + ar + br) / 2.0,
    )


@_njit
def _basis3(x1, y1, r1, x2, y2, r2, x3, y3, r3):
    a2 = 2.0 * (x1 - x2)
    b2 = 2.0 * (y1 - y2)
    c2 = 2.0 * (r2 - r1)
    d2 = x1 * x1 + y1 * y1 - r1 * r1 - x2 * x2 - y2 * y2 + r2 * r2
    a3 = 2.0 * (x1 - x3)
    b3 = 2.0 * (y1 - y3)
    c3 = 2.0 * (r3 - r1)
    d3 = x1 * x1 + y1 * y1 - r1 * r1 - x3 * x3 - y3 * y3 + r3 * r3
    ab = a3 * b2 - a2 * b3
    xa = (b2 * d3 - b3 * d2) / ab - x1
    xb = (b3 * c2 - b2 * c3) / ab
    ya = (a3 * d2 - a2 * d3) / ab - y1
    yb = (a2 * c3 - a3 * c2) / ab
    qa = xb * xb + yb * yb - 1.0
    qb = 2.0 * (r1 + xa * xb + ya * yb)
    qc = xa * xa + ya * ya - r1 * r1
    if abs(qa) > 1e-6:
        r = -(qb + math.sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa)
    else:
        r = -qc / qb
    return (x1 + xa + xb * r, y1 + ya + yb * r, r)


@_njit
def _basis_circle(bx, by, br, bn):
    if bn == 1:
        return (bx[0], by[0], br[0])
    if bn == 2:
        return _basis2(bx[0], by[0], br[0], bx[1], by[1], br[1])
    return _basis3(bx[0], by[0], br[0], bx[1], by[1], br[1], bx[2], by[2], br[2])


@_njit
def _weak_all(cx, cy, cr, bx, by, br, bn):
    for k in range(bn):
        if not _encloses_weak(cx, cy, cr, bx[k], by[k], br[k]):
            return False
    return True


@_njit
def enclose_circles(xs, ys, rs):
    """Smallest enclosing circle of circles; returns (cx, cy, r)."""
    n = xs.shape[0]
    if n == 0:
        return (0.0, 0.0, 0.0)

    bx = np.zeros(3, dtype=np.float64)
    by = np.zeros(3, dtype=np.float64)
    br = np.zeros(3, dtype=np.float64)
    bn = 0
    ex = 0.0
    ey = 0.0
    er = -1.0

    i = 0
    while i < n:
        px = xs[i]
        py = ys[i]
        pr = rs[i]
        if er >= 0.0 and _encloses_weak(ex, ey, er, px, py, pr):
            i += 1
            continue

        # extend the basis with circle i
        nbx = np.zeros(3, dtype=np.float64)
        nby = np.zeros(3, dtype=np.float64)
        nbr = np.zeros(3, dtype=np.float64)
        nbn = 0
        if _weak_all(px, py, pr, bx, by, br, bn):
            nbx[0] = px
            nby[0] = py
            nbr[0] = pr
            nbn = 1
        if nbn == 0:
            for k in range(bn):
                if _encloses_not(px, py, pr, bx[k], by[k], br[k]):
                    cx2, cy2, cr2 = _basis2(bx[k], by[k], br[k], px, py, pr)
                    if _weak_all(cx2, cy2, cr2, bx, by, br, bn):
                        nbx[0] = bx[k]
                        nby[0] = by[k]
                        nbr[0] = br[k]
                        nbx[1] = px
                        nby[1] = py
                        nbr[1] = pr
                        nbn = 2
                        break
        if nbn == 0:
            for k in range(bn):
                for l in range(k + 1, bn):
                    ckl = _basis2(bx[k], by[k], br[k], bx[l], by[l], br[l])
                    ckp = _basis2(bx[k], by[k], br[k], px, py, pr)
                    clp = _basis2(bx[l], by[l], br[l], px, py, pr)
                    if (
                        _encloses_not(ckl[0], ckl[1], ckl[2], px, py, pr)
                        and _encloses_not(ckp[0], ckp[1], ckp[2], bx[l], by[l], br[l])
                        and _encloses_not(clp[0], clp[1], clp[2], bx[k], by[k], br[k])
                    ):
                        c3 = _basis3(
                            bx[k], by[k], br[k], bx[l], by[l], br[l], px, py, pr
                        )
                        if _weak_all(c3[0], c3[1], c3[2], bx, by, br, bn):
                            nbx[0] = bx[k]
                            nby[0] = by[k]
                            nbr[0] = br[k]
                            nbx[1] = bx[l]
                            nby[1] = by[l]
                            nbr[1] = br[l]
                            nbx[2] = px
                            nby[2] = py
                            nbr[2] = pr
                            nbn = 3
                            break
                if nbn == 3:
                    break
        if nbn == 0:
            raise ValueError("enclosing-circle basis extension failed")

        bx = nbx
        by = nby
        br = nbr
        bn = nbn
        ex, ey, er = _basis_circle(bx, by, br, bn)
        i = 0

    return (ex, ey, er)


# ---------------------------------------------------------------------------
# Polygon centroid (shoelace)
# ---------------------------------------------------------------------------


@_njit
def ring_centroid(xs, ys):
    """Area-weighted centroid of one ring; (cx, cy, degenerate_flag).

    ``degenerate_flag`` is 1.0 when the ring area is numerically zero,
    in which case (cx, cy) is the vertex mean instead.
    """
    n = xs.shape[0]
    area2 = 0.0
    sx = 0.0
    sy = 0.0
    span = 0.0
    for i in range(n):
        j = (i + 1) % n
        cross = xs[i] * ys[j] - xs[j] * ys[i]
        area2 += cross
        sx += (xs[i] + xs[j]) * cross
        sy += (ys[i] + ys[j]) * cross
        a = abs(xs[i]) + abs(ys[i])
        if a > span:
            span = a
    floor = 1e-12 * (span * span + 1.0)
    if abs(area2) <= floor:
        mx = 0.0
        my = 0.0
        for i in range(n):
            mx += xs[i]
            my += ys[i]
        return (mx / n, my / n, 1.0)
    return (sx / (3.0 * area2), sy / (3.0 * area2), 0.0)
