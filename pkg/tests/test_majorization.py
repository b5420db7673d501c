import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dido.geometry import ConvexFigure, contains_up_to_translation, disk, scale, square
from dido.majorization import (
    ConvexTestFunction,
    PointMeasure,
    SublinearFunction,
    affinely_majorizes,
    cfm_check,
    decomposition_complete,
    decomposition_hypothesis,
    linear_majorization_residual,
    linearly_majorizes,
    random_convex,
    random_sublinear,
    reshetnyak_gap,
)
from dido.measures import DiscreteMeasure, dirac, surface_measure
from oracles import convex_violation
from strategies import polygons
from test_acceptance import cfm_instance, decomposition_instance


def check_linear_certificate(cert, mu, nu, atol=1e-9):
    plan, free = cert.plan, cert.free
    assert plan.shape == (len(nu), len(mu))
    assert np.all(plan >= -atol) and np.all(free >= -atol)
    scale_ = max(mu.mass, 1.0)
    assert np.allclose(plan.sum(axis=0) + free, mu.weights, atol=atol * scale_)
    assert np.allclose(plan @ mu.units, nu.weights[:, None] * nu.units, atol=atol * scale_)
    assert np.allclose(free @ mu.units, 0, atol=atol * scale_)


# ------------------------------------------------------------------ test functions


def test_function_types():
    p = SublinearFunction([[1, 0], [0, 1]])
    assert np.allclose(p(np.array([[1, -2], [-1, 3]])), [1, 3])
    f = ConvexTestFunction([[1, 0], [-1, 0]], [0, 0])
    assert np.allclose(f(np.array([[-2, 5]])), [2])
    with pytest.raises(ValueError):
        SublinearFunction(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        ConvexTestFunction([[1, 0]], [0, 1])


# ------------------------------------------------------------------ linear majorization


def test_measure_majorizes_itself():
    mu = surface_measure(square(1.0))
    cert = linearly_majorizes(mu, mu)
    assert cert is not None
    check_linear_certificate(cert, mu, mu)


def test_container_majorizes_inscribed_square():
    big = surface_measure(square(2.0))
    small = surface_measure(ConvexFigure([(1, 0), (2, 1), (1, 2), (0, 1)]))
    cert = linearly_majorizes(big, small)
    assert cert is not None
    check_linear_certificate(cert, big, small)


def test_disk_does_not_majorize_larger_square():
    d = disk(1.0, segments=64)
    sq = square(3.0)
    assert contains_up_to_translation(d, sq) is None
    cert, resid = linear_majorization_residual(surface_measure(d), surface_measure(sq))
    assert cert is None and resid > 0


def test_empty_target():
    mu = surface_measure(square(1.0))
    assert linearly_majorizes(mu, DiscreteMeasure()) is not None
    # a measure with a nonzero resultant cannot be split into pieces with zero resultant
    assert linearly_majorizes(dirac(0.0), DiscreteMeasure()) is None


def test_single_atom_needs_enough_mass_in_a_cone():
    mu = dirac(0.0) + dirac(math.pi / 2)
    assert linearly_majorizes(mu, dirac(math.pi / 4, math.sqrt(2))) is not None
    assert linearly_majorizes(mu, dirac(math.pi / 4, 1.5)) is None
    assert linearly_majorizes(mu, dirac(math.pi, 0.1)) is None


def test_reshetnyak_gap_examples():
    rng = np.random.default_rng(0)
    mu = surface_measure(square(1.0))
    nu = surface_measure(disk(0.3, segments=12))
    assert reshetnyak_gap(mu, mu, random_sublinear(rng)) == 0
    lin = SublinearFunction([[0.3, -1.7]])
    assert reshetnyak_gap(mu, nu, lin) == pytest.approx(0, abs=1e-12)


@settings(max_examples=30)
@given(polygons(), polygons(), st.floats(0.05, 1.5))
def test_linear_majorization_matches_translative_containment(x, y, lam):
    y = scale(y, lam)
    mu, nu = surface_measure(x), surface_measure(y)
    cert = linearly_majorizes(mu, nu)
    t = contains_up_to_translation(x, y)
    if t is not None:
        assert cert is not None
    if cert is not None:
        check_linear_certificate(cert, mu, nu)
        assert contains_up_to_translation(x, y, tol=1e-7 * x.diameter) is not None
        rng = np.random.default_rng(0)
        for _ in range(100):
            assert reshetnyak_gap(mu, nu, random_sublinear(rng)) >= -1e-9 * mu.mass


# ------------------------------------------------------------------ affine majorization


def test_affine_examples():
    mu = PointMeasure([[0, 0], [2, 0], [0, 2]], [1, 1, 1])
    bary = PointMeasure([mu.barycenter()], [mu.mass])
    assert affinely_majorizes(mu, bary) is not None
    assert affinely_majorizes(mu, mu) is not None
    assert affinely_majorizes(mu, PointMeasure([[0, 0]], [6])) is None
    assert affinely_majorizes(mu, PointMeasure([[1, 1]], [3])) is None


def test_affine_is_exact_on_rationals():
    third = Fraction(1, 3)
    mu = PointMeasure([[Fraction(0), Fraction(0)], [Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]],
                      [third, third, third])
    nu = PointMeasure([[third, third]], [Fraction(1)])
    cert = affinely_majorizes(mu, nu)
    assert cert is not None
    assert list(cert.plan[0]) == [third, third, third]


def test_cfm_examples():
    mu = PointMeasure([[-1, 0], [1, 0]], [1, 1])
    assert cfm_check(mu, mu, [])
    off = PointMeasure([[0.5, 0]], [2])
    assert affinely_majorizes(mu, off) is None
    # |q_x + 5| tilts toward the side the Dirac moved to
    f = ConvexTestFunction([[1, 0], [-1, 0]], [5, -5])
    assert not cfm_check(mu, off, [f])


@pytest.mark.parametrize("seed", range(0, 40, 3))
def test_affine_majorization_against_convex_function_search(seed):
    mu_p, mu_w, nu_p, nu_w = cfm_instance(seed)
    mu, nu = PointMeasure(mu_p, mu_w), PointMeasure(nu_p, nu_w)
    cert = affinely_majorizes(mu, nu)
    violation = convex_violation(mu_p, mu_w, nu_p, nu_w)
    assert (cert is None) == (violation is not None)
    if cert is not None:
        rng = np.random.default_rng(seed)
        assert cfm_check(mu, nu, [random_convex(rng) for _ in range(100)])


@pytest.mark.parametrize("seed", range(12))
def test_affine_implies_linear(seed):
    mu_p, mu_w, nu_p, nu_w = cfm_instance(seed)
    shift = np.array([1.0, 1.0])  # keep atoms away from the origin

    def as_vectors(pts, w):
        q = np.asarray(pts, dtype=float) + shift
        return DiscreteMeasure(np.arctan2(q[:, 1], q[:, 0]), np.asarray(w, dtype=float) * np.hypot(*q.T))

    if affinely_majorizes(PointMeasure(mu_p, mu_w), PointMeasure(nu_p, nu_w)) is not None:
        assert linearly_majorizes(as_vectors(mu_p, mu_w), as_vectors(nu_p, nu_w)) is not None


# ------------------------------------------------------------------ decomposition


def test_decomposition_examples():
    parts = decomposition_complete([2, 2], [[1, 1]], [[[1, 0], [0, 1]]])
    assert parts is not None and np.allclose(parts[0], [2, 2])
    f = [Fraction(1), Fraction(2), Fraction(3)]
    g = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(2), Fraction(2)]]
    cones = [[[1, -1, 0]], [[0, 1, -1]]]
    assert decomposition_complete(f, g, cones) is not None
    with pytest.raises(ValueError, match="dimension"):
        decomposition_complete([1, 2], [[1, 2, 3]], [[[1, 0, 0]]])
    with pytest.raises(ValueError, match="one cone"):
        decomposition_complete([1, 2], [[1, 2]], [])


def test_decomposition_hypothesis_examples():
    cones = [[[1, -1], [0, 1]], [[-1, 2]]]
    assert decomposition_hypothesis([3, 2], [1, 2], cones)
    assert decomposition_hypothesis([1, 2], [1, 2], cones)
    # f = (1, 0), g = (0, 1) with both cones containing (0, 1)
    cones = [[[1, 0], [0, 1]], [[0, 1]]]
    assert not decomposition_hypothesis([1, 0], [0, 1], cones, mode="samples")
    assert decomposition_complete([1, 0], [[0, 1], [0, 0]], cones) is None


def test_cone_mode_sees_joins_the_samples_miss():
    f, g = [2, 0], [0, 1]
    cones = [[[2, -1], [0, 1]], [[1, -1], [1, 1]]]
    assert decomposition_hypothesis(f, g, cones, mode="samples")
    assert not decomposition_hypothesis(f, g, cones, mode="cone")
    # witness: h1 = (0, 1), h2 = 0.1 * (1, 1); the join is (0.1, 1)
    h = np.maximum([0, 1], [0.1, 0.1])
    assert np.dot(np.subtract(f, g), h) < 0
    # the decomposition of g that follows the argmax of the witness has no partner
    assert decomposition_complete(f, [[0, 1], [0, 0]], cones) is None


def _argmax_split(g, hs):
    hs = np.array(hs, dtype=float)
    parts = np.zeros_like(hs)
    for c, k in enumerate(np.argmax(hs, axis=0)):
        parts[k, c] = g[c]
    return parts


@pytest.mark.parametrize("seed", range(50))
def test_decomposition_theorem_both_directions(seed):
    f, g, cones = decomposition_instance(seed)
    if decomposition_hypothesis(f, g, cones):
        rng = np.random.default_rng(seed)
        for _ in range(10):
            g1 = [int(rng.integers(0, v + 1)) for v in g]
            g2 = [a - b for a, b in zip(g, g1)]
            assert decomposition_complete(f, [g1, g2], cones) is not None
    else:
        # converse: a violating join gives a decomposition of g with no partner
        d = np.subtract(f, g)
        rng = np.random.default_rng(seed)
        for _ in range(4000):
            hs = [rng.exponential(size=len(H)) @ np.array(H, dtype=float) for H in cones]
            if d @ np.max(hs, axis=0) < -1e-9:
                parts = _argmax_split(g, hs)
                assert decomposition_complete(f, list(parts), cones) is None
                break


@settings(max_examples=40)
@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.lists(st.integers(-1, 2), min_size=2, max_size=2),
       st.lists(st.lists(st.lists(st.integers(-1, 2), min_size=2, max_size=2), min_size=1, max_size=3),
                min_size=2, max_size=2))
def test_cone_mode_is_no_weaker_than_samples(g, d, cones):
    f = [max(0, a + b) for a, b in zip(g, d)]
    if decomposition_hypothesis(f, g, cones, mode="cone"):
        assert decomposition_hypothesis(f, g, cones, mode="samples")
    # cone mode agrees with a dense random sweep of cone coefficients
    diff = np.subtract(f, g)
    rng = np.random.default_rng(0)
    found = False
    for a in itertools.product(*[[rng.exponential(size=len(H)) for _ in range(60)] for H in cones]):
        hs = [ak @ np.array(H, dtype=float) for ak, H in zip(a, cones)]
        if diff @ np.max(hs, axis=0) < -1e-9:
            found = True
            break
    if found:
        assert not decomposition_hypothesis(f, g, cones, mode="cone")
