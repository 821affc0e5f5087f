from fractions import Fraction as F
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gon.body import (
    box,
    centered_simplex,
    cross_polytope,
    cube,
    ellipsoid,
    generalized_hexagon,
    vpoly,
)
from gon.counting import EhrhartPoly, count_points, count_ratio_bounds, ehrhart
from gon.exactmath import QMat
from gon.lattice import kernel_lattice, make_lattice, standard_lattice


def brute_count(k, lat, interior=False, span=12):
    n = lat.dim
    total = 0
    for coeff in product(range(-span, span + 1), repeat=lat.rank):
        pt = tuple(
            sum(F(c) * lat.basis[i, j] for i, c in enumerate(coeff))
            for j in range(n)
        )
        if k.contains(pt, strict=interior):
            total += 1
    return total


# -- counts -------------------------------------------------------------------


@pytest.mark.parametrize("n,k", [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_cube_dilate_counts(n, k):
    assert count_points(cube(n, k), standard_lattice(n)) == (2 * k + 1) ** n


def test_cross_polytope_count():
    assert count_points(cross_polytope(2), standard_lattice(2)) == 5


def test_simplex_count_matches_brute_force():
    t = centered_simplex(2)
    z2 = standard_lattice(2)
    assert count_points(t, z2) == brute_count(t, z2) == 10
    assert count_points(t, z2, interior=True) == brute_count(t, z2, interior=True)


def test_interior_counts():
    z2 = standard_lattice(2)
    assert count_points(cube(2), z2, interior=True) == 1
    for k in (1, 2, 3):
        assert count_points(cube(2, k), z2, interior=True) == (2 * k - 1) ** 2


def test_ellipsoid_count():
    e = ellipsoid([[1, 0], [0, 4]])
    z2 = standard_lattice(2)
    assert count_points(e, z2) == 3
    assert count_points(e, z2, interior=True) == 1


def test_kernel_lattice_count():
    lat = kernel_lattice([[1, 2, 3]])
    assert count_points(cube(3), lat) == 3
    assert count_points(cube(3), lat, interior=True) == 1


def test_span_misses_body():
    lat = kernel_lattice([[1, 2, 3]])
    shifted = cube(3, F(1, 4)).translate([2, 2, 2])
    assert count_points(shifted, lat) == 0


def test_symmetric_counts_are_odd():
    z2 = standard_lattice(2)
    for k in [cube(2), cross_polytope(2, 2), generalized_hexagon([F(1, 2), 1])]:
        assert count_points(k, z2) % 2 == 1


def test_count_monotone_under_inclusion():
    z2 = standard_lattice(2)
    inner = cross_polytope(2, 2)
    outer = cube(2, 2)
    assert count_points(inner, z2) <= count_points(outer, z2)


def test_count_unimodular_invariance():
    z2 = standard_lattice(2)
    u = QMat.from_rows([[1, 1], [0, 1]])
    for k in [cube(2), cross_polytope(2, 2)]:
        img = vpoly([u.mul_vec(v) for v in k.vertices()])
        assert count_points(img, z2) == count_points(k, z2)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(-2, 2))
@settings(max_examples=25)
def test_count_matches_brute_force_on_sublattices(d1, d2, off):
    lat = make_lattice([[d1, off], [0, d2]])
    k = generalized_hexagon([F(1, 2), 1]).dilate(2)
    assert count_points(k, lat) == brute_count(k, lat)


# -- Ehrhart ------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ehrhart_cube(n):
    poly = ehrhart(cube(n), standard_lattice(n))
    assert poly.coefficients == tuple(F(comb(n, i) * 2 ** i) for i in range(n + 1))


def test_ehrhart_cross_polytope():
    poly = ehrhart(cross_polytope(2), standard_lattice(2))
    assert poly.coefficients == (1, 2, 2)


def test_ehrhart_centered_simplex():
    poly = ehrhart(centered_simplex(2), standard_lattice(2))
    assert poly.coefficients == (1, F(9, 2), F(9, 2))
    assert poly.evaluate(2) == count_points(centered_simplex(2).dilate(2),
                                            standard_lattice(2))


def test_ehrhart_codimension_one_ratio():
    for n in (2, 3):
        poly = ehrhart(cube(n), standard_lattice(n))
        assert poly.coefficients[n - 1] == n * 2 ** (n - 1)
        assert poly.coefficients[n - 1] / poly.coefficients[n] == F(n, 2)


def test_ehrhart_sublattice():
    lat = make_lattice([[2, 0], [0, 1]])
    k = vpoly([(2, 1), (-2, 1), (2, -1), (-2, -1)])
    poly = ehrhart(k, lat)
    assert poly.coefficients[2] == k.volume() / lat.det()
    assert poly.evaluate(1) == count_points(k, lat)


def test_ehrhart_rejects_non_lattice_polytope():
    with pytest.raises(ValueError):
        ehrhart(cube(2, F(1, 2)), standard_lattice(2))
    with pytest.raises(ValueError):
        ehrhart(ellipsoid([[1, 0], [0, 1]]), standard_lattice(2))
    with pytest.raises(ValueError):
        ehrhart(cube(3), kernel_lattice([[1, 2, 3]]))


@given(st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=15, deadline=None)
def test_ehrhart_evaluations_match_counts(a1, a2):
    sides = sorted([a1, a2], reverse=True)
    b = box(sides)
    poly = ehrhart(b, standard_lattice(2))
    for k in range(1, 5):
        assert poly.evaluate(k) == count_points(b.dilate(k), standard_lattice(2))


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                min_size=3, max_size=6))
@settings(max_examples=40)
def test_pick_formula_on_lattice_polygons(points):
    try:
        k = vpoly(points)
    except ValueError:
        return
    z2 = standard_lattice(2)
    g = count_points(k, z2)
    i = count_points(k, z2, interior=True)
    boundary = g - i
    assert k.volume() == i + F(boundary, 2) - 1


def test_ehrhart_poly_evaluate():
    p = EhrhartPoly((F(1), F(2), F(3)))
    assert p.evaluate(2) == 1 + 4 + 12
    assert p.degree == 2


# -- dilate ratios ---------------------------------------------------------------


def test_count_ratio_cube():
    rows = count_ratio_bounds(cube(2), standard_lattice(2), [1, 2, 4])
    assert rows == [(1, F(9, 4)), (2, F(25, 16)), (4, F(81, 64))]
    ratios = [r for _, r in rows]
    assert ratios == sorted(ratios, reverse=True)


def test_count_ratio_cube3():
    rows = count_ratio_bounds(cube(3), standard_lattice(3), [1])
    assert rows == [(1, F(27, 8))]


def test_count_ratio_cross():
    rows = count_ratio_bounds(cross_polytope(2), standard_lattice(2), [3])
    assert rows == [(3, F(25, 18))]


def test_count_ratio_rejects_bad_dilation():
    with pytest.raises(ValueError):
        count_ratio_bounds(cube(2), standard_lattice(2), [0])
