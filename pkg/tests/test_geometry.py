import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dido.geometry import (
    ConvexFigure,
    DirectionGrid,
    SupportVector,
    breadth,
    contains,
    contains_up_to_translation,
    disk,
    equilateral_triangle,
    hausdorff_distance,
    integral_breadth,
    minkowski_combination,
    minkowski_sum,
    point,
    polygon_from_support,
    regular_polygon,
    sample_support,
    scale,
    segment,
    square,
    support_eval,
    unit_ball,
)
from dido.extremal import stadium
from oracles import shoelace, support_brute
from strategies import polygons

GRID = DirectionGrid(360)


# ------------------------------------------------------------------ construction


def test_grid_invariants():
    g = DirectionGrid(8)
    assert g.n == 8 and g.opposite(1) == 5
    assert g.index(math.pi / 4) == 1 and g.index(0.3) is None
    assert g.index(2 * math.pi - 1e-12) == 0
    with pytest.raises(ValueError):
        DirectionGrid(7)
    with pytest.raises(ValueError):
        DirectionGrid(6)


def test_canonical_form_merges_duplicates_and_collinear_points():
    x = ConvexFigure([(0, 0), (0.5, 0), (1, 0), (1, 0), (1, 1), (0, 1)])
    assert len(x) == 4
    assert x.allclose(ConvexFigure([(1, 1), (0, 1), (0, 0), (1, 0)]))


def test_nonconvex_or_clockwise_chain_is_rejected():
    with pytest.raises(ValueError, match="convex"):
        ConvexFigure([(0, 0), (1, 0), (0.2, 0.2), (0, 1)])
    with pytest.raises(ValueError, match="convex"):
        ConvexFigure([(0, 0), (0, 1), (1, 1), (1, 0)])


def test_empty_figure_is_rejected():
    with pytest.raises(ValueError, match="empty figure"):
        ConvexFigure([])


def test_hull_and_degenerate_figures():
    assert ConvexFigure.hull([(0, 0), (1, 1), (2, 2)]).dim == 1
    assert ConvexFigure.hull([(1, 1), (1, 1)]).dim == 0
    s = segment((2, 0), (-1, 0))
    assert s.dim == 1 and s.perimeter() == pytest.approx(6.0) and s.area() == 0


# ------------------------------------------------------------------ support function


def test_support_eval_examples():
    sq = square(1.0)
    assert support_eval(sq, (1, 0)) == 1
    tri = equilateral_triangle(1.0)
    for nrm in tri.edge_normals():
        # inradius of the unit equilateral triangle
        assert support_eval(tri, nrm) == pytest.approx(1 / (2 * math.sqrt(3)), abs=1e-15)
        assert support_eval(tri, nrm) == pytest.approx(support_brute(tri.vertices, nrm), abs=1e-15)


def test_sample_support_examples():
    g = DirectionGrid(8)
    p = point((2.0, -1.0))
    assert np.allclose(sample_support(p, g).values, g.units @ [2.0, -1.0])
    assert np.allclose(sample_support(unit_ball(g), g).values, 1.0)
    sq = sample_support(square(1.0), g)
    assert sq.values[1] == pytest.approx(math.sqrt(2))
    assert sq.is_consistent()


def test_support_vector_consistency_detects_invalid_values():
    g = DirectionGrid(8)
    bad = SupportVector(g, np.array([1, 1, 1, 1, 5, 1, 1, 1.0]))
    assert not bad.is_consistent()


@given(polygons(), st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 2 * math.pi))
def test_translation_equivariance(x, tx, ty, th):
    u = np.array([math.cos(th), math.sin(th)])
    lhs = support_eval(x.translate((tx, ty)), u) - support_eval(x, u)
    assert lhs == pytest.approx(tx * u[0] + ty * u[1], abs=1e-12)


@given(polygons(), st.floats(0, 5), st.floats(0, 2 * math.pi))
def test_positive_homogeneity(x, lam, th):
    u = np.array([math.cos(th), math.sin(th)])
    assert support_eval(scale(x, lam), u) == pytest.approx(lam * support_eval(x, u), abs=1e-12)


# ------------------------------------------------------------------ Minkowski structure


@given(polygons(), polygons())
def test_support_additivity(x, y):
    hs = sample_support(minkowski_sum(x, y), GRID).values
    h = sample_support(x, GRID).values + sample_support(y, GRID).values
    assert np.allclose(hs, h, rtol=1e-9, atol=1e-12)


@given(polygons(), polygons())
def test_minkowski_sum_matches_hull_of_pairwise_sums(x, y):
    ref = ConvexFigure.hull([a + b for a in x.vertices for b in y.vertices])
    s = minkowski_sum(x, y)
    assert s.area() == pytest.approx(shoelace(ref.vertices), rel=1e-12)
    assert hausdorff_distance(s, ref) <= 1e-12 * ref.diameter


def test_minkowski_sum_examples():
    x = equilateral_triangle(1.0)
    assert minkowski_sum(x, point((1.0, 2.0))).allclose(x.translate((1.0, 2.0)))
    assert minkowski_sum(square(1.0), square(1.0)).allclose(square(2.0))
    st_ = minkowski_sum(disk(1.0, segments=64), segment((-1, 0), (1, 0)))
    assert st_.area() == pytest.approx(math.pi + 4, rel=5e-3)


def test_scale_examples():
    x = equilateral_triangle(1.0)
    assert scale(x, 1.0).allclose(x)
    z = scale(x, 0.0)
    assert z.dim == 0 and np.allclose(z.vertices, 0)
    with pytest.raises(ValueError):
        scale(x, -1.0)


@given(polygons(), st.floats(0.01, 10))
def test_scale_area(x, lam):
    assert scale(x, lam).area() == pytest.approx(lam * lam * shoelace(x.vertices), rel=1e-12)


def test_minkowski_combination():
    c = minkowski_combination([square(1.0), segment((0, 0), (1, 0))], [2.0, 1.0])
    assert c.area() == pytest.approx(6.0)


# ------------------------------------------------------------------ containment


def test_contains_examples():
    x = square(1.0)
    assert contains(x, x)
    assert not contains(x, square(2.0))
    tri = equilateral_triangle(1.0)
    assert contains(disk(1 / math.sqrt(3), segments=360), tri)


@given(polygons(), polygons())
def test_mutual_containment_means_equal(x, y):
    if contains(x, y) and contains(y, x):
        assert hausdorff_distance(x, y) <= 1e-8 * max(x.diameter, 1.0)


def test_contains_up_to_translation_examples():
    x = equilateral_triangle(1.0)
    t = contains_up_to_translation(x, x)
    assert t is not None and np.allclose(t, 0)
    big = square(100.0, (10.0, -50.0))
    small = disk(1.0, segments=64)
    t = contains_up_to_translation(big, small)
    assert t is not None and contains(big, small.translate(t))
    # every translate of a width-2 disk is too wide for a side-1.9 square
    assert contains_up_to_translation(square(1.9), disk(1.0, segments=360)) is None


def test_contains_up_to_translation_against_grid_search():
    # oracle: scan translations on a fine lattice
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = ConvexFigure.hull(rng.normal(size=(6, 2)) * 2)
        y = ConvexFigure.hull(rng.normal(size=(5, 2)) * 0.6)
        found = contains_up_to_translation(x, y)
        lo = x.vertices.min(0) - y.vertices.min(0)
        hi = x.vertices.max(0) - y.vertices.max(0)
        grid_hit = False
        if np.all(hi >= lo):
            for tx in np.linspace(lo[0], hi[0], 60):
                for ty in np.linspace(lo[1], hi[1], 60):
                    if contains(x, y.translate((tx, ty)), tol=0.0):
                        grid_hit = True
                        break
                if grid_hit:
                    break
        if grid_hit:
            assert found is not None
        if found is not None:
            assert contains(x, y.translate(found))


@given(polygons(), polygons(), polygons())
def test_translation_containment_is_transitive(x, y, z):
    y = scale(y, 0.5)
    z = scale(z, 0.25)
    t1 = contains_up_to_translation(x, y)
    t2 = contains_up_to_translation(y, z)
    if t1 is not None and t2 is not None:
        assert contains(x, z.translate(t1 + t2), tol=1e-8 * x.diameter)


# ------------------------------------------------------------------ breadths


def test_breadth_examples():
    assert breadth(square(1.0), (1, 0)) == 1
    assert breadth(point((3, 4)), (0, 1)) == 0
    assert breadth(stadium(0.7, 2.0, GRID), (0, 1)) == pytest.approx(1.4, rel=1e-12)


def test_integral_breadth_examples():
    assert integral_breadth(square(1.0), GRID) == pytest.approx(2.0, rel=1e-12)
    assert integral_breadth(disk(1.5, segments=360), GRID) == pytest.approx(1.5 * math.pi, rel=1e-4)
    assert integral_breadth(point((1, 1)), GRID) == pytest.approx(0.0, abs=1e-12)


@given(polygons())
def test_integral_breadth_is_half_perimeter_in_the_limit(x):
    g = DirectionGrid(720)
    assert integral_breadth(x, g) == pytest.approx(x.perimeter() / 2, rel=1e-4)


def test_integral_breadth_exact_for_grid_normals():
    x = regular_polygon(12, apothem=1.3)
    assert integral_breadth(x, GRID) == pytest.approx(x.perimeter() / 2, rel=1e-13)


# ------------------------------------------------------------------ support projection


@given(polygons())
def test_polygon_from_support_inverts_sampling_on_grid_polygons(x):
    g = DirectionGrid(72)
    p = polygon_from_support(sample_support(x, g).values, g)
    # circumscribed grid polygon: contains x, and its support agrees with x on the grid
    assert contains(p, x, tol=1e-9 * x.diameter)
    assert np.allclose(p.support_many(g.units), x.support_many(g.units), atol=1e-9 * x.diameter)


def test_polygon_from_support_projects_below_arbitrary_values():
    g = DirectionGrid(36)
    rng = np.random.default_rng(1)
    for _ in range(20):
        v = rng.uniform(0.5, 2.0, g.n)
        p = polygon_from_support(v, g)
        h = p.support_many(g.units)
        assert np.all(h <= v + 1e-9)
        # largest such: at least one grid constraint is tight on each side of every vertex
        assert np.sum(np.isclose(h, v, atol=1e-9)) >= 3


def test_disk_is_circumscribed_grid_polygon():
    d = disk(2.0, segments=360)
    assert np.allclose(d.support_many(GRID.units), 2.0)
    assert d.area() == pytest.approx(360 * math.tan(math.pi / 360) * 4.0)
