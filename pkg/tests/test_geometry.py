from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from avyview import _kernels
from avyview.geometry import (
    PACK_TOLERANCE,
    Circle,
    interval_to_arc,
    min_enclosing_circle,
    pack_circles,
    polygon_centroid,
)
from avyview.model import AspectInterval, OperationTenure


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def enclose_two_oracle(a: Circle, b: Circle) -> Circle:
    """Independent smallest circle containing two circles."""
    d = math.hypot(b.cx - a.cx, b.cy - a.cy)
    if d + b.r <= a.r:
        return a
    if d + a.r <= b.r:
        return b
    r = (d + a.r + b.r) / 2.0
    t = (r - a.r) / d
    return Circle(a.cx + (b.cx - a.cx) * t, a.cy + (b.cy - a.cy) * t, r)


def enclose_three_oracle(circles) -> Circle | None:
    """Circle internally tangent to three circles via least squares."""
    from scipy.optimize import least_squares

    cx = np.array([c.cx for c in circles])
    cy = np.array([c.cy for c in circles])
    cr = np.array([c.r for c in circles])

    def residuals(v):
        x, y, r = v
        return np.hypot(x - cx, y - cy) + cr - r

    x0 = [cx.mean(), cy.mean(), float(np.hypot(cx - cx.mean(), cy - cy.mean()).max() + cr.max() + 1.0)]
    sol = least_squares(residuals, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    if not sol.success or np.abs(sol.fun).max() > 1e-7:
        return None
    x, y, r = sol.x
    if r < 0:
        return None
    return Circle(float(x), float(y), float(r))


def mec_support_oracle(circles) -> Circle:
    """Exhaustive minimization over all single/pair/triple support sets."""
    def encloses_all(c: Circle) -> bool:
        slack = 1e-9 * max(c.r, 1.0)
        return all(
            math.hypot(m.cx - c.cx, m.cy - c.cy) + m.r <= c.r + slack for m in circles
        )

    candidates = [c for c in circles if encloses_all(c)]
    for a, b in itertools.combinations(circles, 2):
        c = enclose_two_oracle(a, b)
        if encloses_all(c):
            candidates.append(c)
    for trio in itertools.combinations(circles, 3):
        c = enclose_three_oracle(trio)
        if c is not None and encloses_all(c):
            candidates.append(c)
    assert candidates, "support-set oracle found no enclosing candidate"
    return min(candidates, key=lambda c: c.r)


def mec_convex_oracle(circles) -> float:
    """Direct convex minimization of max(dist + r): an independent radius."""
    from scipy.optimize import minimize

    cx = np.array([c.cx for c in circles])
    cy = np.array([c.cy for c in circles])
    cr = np.array([c.r for c in circles])

    def objective(v):
        return v[2]

    def constraints(v):
        return v[2] - (np.hypot(v[0] - cx, v[1] - cy) + cr)

    r_hi = float(np.hypot(cx - cx.mean(), cy - cy.mean()).max() + cr.max() + 1.0)
    starts = [[cx.mean(), cy.mean(), r_hi]]
    starts += [[float(x), float(y), r_hi] for x, y in zip(cx, cy)]
    best = math.inf
    for x0 in starts:
        sol = minimize(
            objective,
            x0,
            constraints=[{"type": "ineq", "fun": constraints}],
            method="SLSQP",
            options={"maxiter": 500, "ftol": 1e-12},
        )
        # SLSQP sometimes stops with status 8 right at the optimum; any
        # feasible point still upper-bounds the radius.
        if constraints(sol.x).min() > -1e-8:
            best = min(best, float(sol.x[2]))
    assert math.isfinite(best)
    return best


def star_polygon(rng, n_vertices=8, scale=1.0, center=(0.0, 0.0)):
    """Random simple polygon: jittered even angles around a center."""
    step = 2 * np.pi / n_vertices
    angles = step * np.arange(n_vertices) + rng.uniform(-0.3 * step, 0.3 * step, n_vertices)
    radii = rng.uniform(0.3 * scale, scale, n_vertices)
    return tuple(
        (center[0] + r * math.cos(a), center[1] + r * math.sin(a))
        for a, r in zip(angles, radii)
    )


def centroid_monte_carlo(ring, n_samples=1_000_000, seed=7):
    """Rejection-sampling centroid estimate over the ring's bbox."""
    from matplotlib.path import Path

    rng = np.random.default_rng(seed)
    xs = np.array([p[0] for p in ring])
    ys = np.array([p[1] for p in ring])
    pts = np.column_stack(
        [
            rng.uniform(xs.min(), xs.max(), n_samples),
            rng.uniform(ys.min(), ys.max(), n_samples),
        ]
    )
    inside = Path(np.column_stack([xs, ys])).contains_points(pts)
    assert inside.sum() > 1000, "polygon too thin for the sampling oracle"
    return pts[inside].mean(axis=0)


# ---------------------------------------------------------------------------
# packing
# ---------------------------------------------------------------------------


class TestPackCircles:
    def test_empty(self):
        layout = pack_circles([])
        assert layout.members == ()
        assert layout.enclosing == Circle(0.0, 0.0, 0.0)

    def test_two_equal_circles(self):
        layout = pack_circles([1.0, 1.0])
        assert [(c.cx, c.cy) for c in layout.members] == [(-1.0, 0.0), (1.0, 0.0)]
        assert layout.enclosing.r == 2.0
        assert (layout.enclosing.cx, layout.enclosing.cy) == (0.0, 0.0)

    def test_three_equal_circles_equilateral(self):
        layout = pack_circles([1.0, 1.0, 1.0])
        ms = layout.members
        for a, b in itertools.combinations(ms, 2):
            assert math.hypot(a.cx - b.cx, a.cy - b.cy) == pytest.approx(2.0, abs=1e-9)
        # side-2 equilateral triangle has circumradius 2/sqrt(3)
        assert layout.enclosing.r == pytest.approx(1.0 + 2.0 / math.sqrt(3.0), abs=1e-9)

    def test_single_circle_centered(self):
        layout = pack_circles([3.5])
        assert layout.members[0] == Circle(0.0, 0.0, 3.5)
        assert layout.enclosing.r == 3.5

    @pytest.mark.parametrize("seed", range(12))
    def test_no_overlap_and_containment(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 51))
        radii = rng.uniform(0.3, 4.0, n)
        layout = pack_circles(radii)
        tol = PACK_TOLERANCE * radii.max()
        for a, b in itertools.combinations(layout.members, 2):
            d = math.hypot(a.cx - b.cx, a.cy - b.cy)
            assert d >= a.r + b.r - tol
        for m in layout.members:
            assert math.hypot(m.cx, m.cy) + m.r <= layout.enclosing.r + tol

    def test_member_order_matches_input(self):
        radii = [3.0, 1.0, 2.0]
        layout = pack_circles(radii)
        assert [m.r for m in layout.members] == radii

    def test_bit_identical_across_runs(self):
        rng = np.random.default_rng(99)
        radii = rng.uniform(0.5, 3.0, 40)
        a = pack_circles(radii)
        b = pack_circles(radii.copy())
        assert a == b

    def test_numba_and_numpy_paths_agree(self):
        rng = np.random.default_rng(4242)
        for _ in range(40):
            n = int(rng.integers(1, 45))
            radii = rng.uniform(0.2, 5.0, n)
            loops = _kernels._pack_front_chain_loops(np.ascontiguousarray(radii))
            vect = _kernels._pack_front_chain_numpy(radii)
            assert np.array_equal(loops, vect)

    def test_rejects_nonpositive_radii(self):
        with pytest.raises(ValueError):
            pack_circles([1.0, 0.0])


# ---------------------------------------------------------------------------
# smallest enclosing circle
# ---------------------------------------------------------------------------


def random_circles(rng, n):
    return [
        Circle(float(x), float(y), float(r))
        for x, y, r in zip(
            rng.uniform(-10, 10, n), rng.uniform(-10, 10, n), rng.uniform(0.1, 4.0, n)
        )
    ]


class TestMinEnclosingCircle:
    def test_empty(self):
        assert min_enclosing_circle([]) == Circle(0.0, 0.0, 0.0)

    def test_single_circle_is_itself(self):
        c = Circle(2.0, -3.0, 1.5)
        assert min_enclosing_circle([c]) == c

    def test_two_equal_tangent(self):
        got = min_enclosing_circle([Circle(-1, 0, 1), Circle(1, 0, 1)])
        assert (got.cx, got.cy) == (0.0, 0.0)
        assert got.r == pytest.approx(2.0, abs=1e-12)

    def test_contained_circle_is_ignored(self):
        got = min_enclosing_circle([Circle(0, 0, 5), Circle(1, 1, 0.5)])
        assert got == Circle(0.0, 0.0, 5.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_support_set_oracle(self, seed):
        rng = np.random.default_rng(seed)
        circles = random_circles(rng, int(rng.integers(1, 9)))
        got = min_enclosing_circle(circles)
        want = mec_support_oracle(circles)
        assert got.r == pytest.approx(want.r, abs=1e-6)

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_convex_program(self, seed):
        rng = np.random.default_rng(100 + seed)
        circles = random_circles(rng, int(rng.integers(2, 9)))
        got = min_enclosing_circle(circles)
        assert got.r == pytest.approx(mec_convex_oracle(circles), abs=1e-6)

    @pytest.mark.parametrize("seed", range(10))
    def test_monotone_under_superset(self, seed):
        rng = np.random.default_rng(200 + seed)
        circles = random_circles(rng, 10)
        prev = 0.0
        for k in range(1, 11):
            r = min_enclosing_circle(circles[:k]).r
            assert r >= prev - 1e-9 * max(prev, 1.0)
            prev = r

    def test_encloses_every_member(self):
        rng = np.random.default_rng(77)
        for _ in range(20):
            circles = random_circles(rng, int(rng.integers(1, 30)))
            got = min_enclosing_circle(circles)
            slack = 1e-9 * max(got.r, 1.0)
            for m in circles:
                assert math.hypot(m.cx - got.cx, m.cy - got.cy) + m.r <= got.r + slack

    def test_deterministic(self):
        rng = np.random.default_rng(5)
        circles = random_circles(rng, 12)
        assert min_enclosing_circle(circles) == min_enclosing_circle(list(circles))


# ---------------------------------------------------------------------------
# polygon centroid
# ---------------------------------------------------------------------------


def _tenure(ring):
    return OperationTenure("op-x", (tuple(ring),), "X")


class TestPolygonCentroid:
    def test_unit_square(self):
        got = polygon_centroid(_tenure([(0, 0), (1, 0), (1, 1), (0, 1)]))
        assert got == pytest.approx((0.5, 0.5), abs=1e-12)

    def test_right_triangle(self):
        got = polygon_centroid(_tenure([(0, 0), (3, 0), (0, 3)]))
        assert got == pytest.approx((1.0, 1.0), abs=1e-12)

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_monte_carlo(self, seed):
        rng = np.random.default_rng(300 + seed)
        ring = star_polygon(rng, n_vertices=int(rng.integers(5, 12)))
        got = polygon_centroid(_tenure(ring))
        want = centroid_monte_carlo(ring, n_samples=1_000_000, seed=seed)
        assert got == pytest.approx(tuple(want), abs=1e-2)

    @pytest.mark.parametrize("seed", range(6))
    def test_translation_equivariance(self, seed):
        rng = np.random.default_rng(400 + seed)
        ring = star_polygon(rng, n_vertices=7)
        tx, ty = rng.uniform(-50, 50, 2)
        base = polygon_centroid(_tenure(ring))
        moved = polygon_centroid(_tenure([(x + tx, y + ty) for x, y in ring]))
        assert moved[0] == pytest.approx(base[0] + tx, abs=1e-9 * (1 + abs(tx)))
        assert moved[1] == pytest.approx(base[1] + ty, abs=1e-9 * (1 + abs(ty)))

    def test_degenerate_ring_falls_back_to_vertex_mean(self):
        # collinear: zero area, centroid = vertex mean
        ring = ((0.0, 0.0), (1.0, 1.0), (2.0, 2.0))
        got = polygon_centroid(OperationTenure("op-x", (ring,), "X"))
        assert got == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_holes_ignored(self):
        outer = ((0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0))
        hole = ((3.0, 3.0), (3.5, 3.0), (3.5, 3.5), (3.0, 3.5))
        got = polygon_centroid(OperationTenure("op-x", (outer, hole), "X"))
        assert got == pytest.approx((2.0, 2.0), abs=1e-12)


class TestIntervalToArc:
    def test_wraparound(self):
        assert interval_to_arc(AspectInterval(315, 45)) == (315.0, 90.0)

    def test_zero_length(self):
        assert interval_to_arc(AspectInterval(90, 90)) == (90.0, 0.0)

    def test_full_circle(self):
        assert interval_to_arc(AspectInterval(10, 20, True)) == (0.0, 360.0)

    def test_never_splits_at_north(self):
        start, sweep = interval_to_arc(AspectInterval(350, 10))
        assert (start, sweep) == (350.0, 20.0)
