"""Orbit closure, winding classification, and closure-ratio bookkeeping."""

import math

import numpy as np
import pytest

from rho_planes import (ClassificationError, DomainError, build_polygon,
                        classify, closure_ratios, natural_param,
                        polygon_to_dict, rho_from_kn, wedge_sum)

from conftest import EUCLID, IPS_SPECS, QUAD14, SQUARE, spec_ids

TWO_PI = 2.0 * math.pi


def test_rho_from_kn_values():
    assert rho_from_kn(1, 3) == pytest.approx(0.5, abs=1e-15)
    assert rho_from_kn(1, 4) == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    # half-angle identity: sqrt((1 + cos(2a))/2) = cos(a)
    assert rho_from_kn(2, 7) == pytest.approx(math.cos(2 * math.pi / 7), abs=1e-14)
    assert rho_from_kn(2, 7) == pytest.approx(0.6234898, abs=1e-7)


def test_rho_from_kn_domain():
    for k, n in ((2, 4), (3, 6), (0, 5), (1, 2)):
        with pytest.raises(DomainError):
            rho_from_kn(k, n)


def test_rho_from_kn_decreasing_in_k():
    for n in (5, 7, 9, 11):
        rhos = [rho_from_kn(k, n) for k in range(1, (n - 1) // 2 + 1)]
        assert all(a > b for a, b in zip(rhos, rhos[1:]))


def test_closure_ratios_enumeration():
    assert [(e.k, e.m) for e in closure_ratios(1)] == [(1, 1)]
    assert closure_ratios(1)[0].rho == pytest.approx(0.5, abs=1e-15)

    two = closure_ratios(2)
    assert {(e.k, e.m) for e in two} == {(1, 1), (1, 2), (2, 2)}
    by_km = {(e.k, e.m): e.rho for e in two}
    assert by_km[(1, 2)] == pytest.approx(math.cos(math.pi / 5), abs=1e-14)
    assert by_km[(2, 2)] == pytest.approx(math.cos(2 * math.pi / 5), abs=1e-14)

    assert len(closure_ratios(3)) == 6
    rhos = [e.rho for e in closure_ratios(3)]
    assert rhos == sorted(rhos, reverse=True)
    assert all(e.n == 2 * e.m + 1 for e in closure_ratios(3))


def test_euclid_pentagon_closure():
    poly = build_polygon(EUCLID, (1, 0), math.cos(math.pi / 5), 100)
    assert poly.status == "closed"
    assert (poly.n, poly.k) == (5, 1)
    for j, v in enumerate(poly.vertices):
        assert v.theta == pytest.approx(TWO_PI * j / 5, abs=1e-9)
    assert classify(poly).kind == "convex"


def test_square_axis_polygon():
    poly = build_polygon(SQUARE, (1, 0), 0.5, 100)
    assert poly.status == "closed"
    assert (poly.n, poly.k) == (4, 1)
    expected = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for v, (ex, ey) in zip(poly.vertices, expected):
        assert v.x == pytest.approx(ex, abs=1e-8)
        assert v.y == pytest.approx(ey, abs=1e-8)


def test_square_generic_seed_accumulates_at_axes():
    poly = build_polygon(SQUARE, natural_param(SQUARE, 0.35), 0.5, 2000)
    assert poly.status == "non_closing"
    assert poly.steps == 2000
    assert len(poly.accumulation_points) == 4
    axes = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for pt in poly.accumulation_points:
        assert min(math.hypot(pt[0] - ax, pt[1] - ay) for ax, ay in axes) <= 1e-3


@pytest.mark.parametrize("k,n", [(1, 3), (1, 5), (2, 5), (2, 7), (3, 7)])
def test_star_polygon_windings_on_euclid(k, n):
    rho = rho_from_kn(k, n)
    poly = build_polygon(EUCLID, natural_param(EUCLID, 0.123), rho, 200)
    assert poly.status == "closed"
    assert (poly.n, poly.k) == (n, k)
    cls = classify(poly)
    assert cls.kind == ("convex" if k == 1 else "star_shaped")
    assert cls.k == k
    assert poly.coprime is (math.gcd(n, k) == 1)
    assert poly.total_turning == pytest.approx(TWO_PI * k, abs=1e-8)


def test_antipodal_orbit_is_negated(rng):
    rho = rho_from_kn(2, 7)
    for spec in IPS_SPECS:
        seed = natural_param(spec, float(rng.uniform(0, TWO_PI)))
        a = build_polygon(spec, seed, rho, 100)
        b = build_polygon(spec, seed.negated(), rho, 100)
        assert a.status == b.status == "closed"
        worst = max(
            min(math.hypot(-va.x - vb.x, -va.y - vb.y) for vb in b.vertices)
            for va in a.vertices)
        assert worst <= 1e-9


@pytest.mark.parametrize("spec", IPS_SPECS, ids=spec_ids(IPS_SPECS))
def test_odd_orbit_disjoint_from_antipode(spec):
    rho = rho_from_kn(1, 5)
    a = build_polygon(spec, natural_param(spec, 0.77), rho, 100)
    assert a.status == "closed"
    worst = min(
        min(math.hypot(-va.x - vb.x, -va.y - vb.y) for vb in a.vertices)
        for va in a.vertices)
    assert worst > 0.1


@pytest.mark.parametrize("spec", IPS_SPECS, ids=spec_ids(IPS_SPECS))
def test_vertex_count_stable_across_seeds(spec, rng):
    rho = rho_from_kn(2, 5)
    shapes = set()
    sums = []
    for theta in rng.uniform(0.0, TWO_PI, 32):
        poly = build_polygon(spec, natural_param(spec, float(theta)), rho, 100)
        assert poly.status == "closed"
        shapes.add((poly.n, poly.k))
        sums.append(wedge_sum(poly))
    assert shapes == {(5, 2)}
    assert max(sums) - min(sums) <= 1e-8


def test_wedge_sum_examples():
    pent = build_polygon(EUCLID, (1, 0), math.cos(math.pi / 5), 100)
    assert wedge_sum(pent) == pytest.approx(5 * math.sin(2 * math.pi / 5), abs=1e-9)

    tri = build_polygon(EUCLID, (1, 0), 0.5, 100)
    assert wedge_sum(tri) == pytest.approx(3 * math.sin(2 * math.pi / 3), abs=1e-9)

    sq = build_polygon(SQUARE, (1, 0), 0.5, 100)
    assert wedge_sum(sq) == pytest.approx(4.0, abs=1e-8)


def test_non_closing_inputs_rejected_downstream():
    poly = build_polygon(SQUARE, natural_param(SQUARE, 0.35), 0.5, 50)
    assert poly.status == "non_closing"
    with pytest.raises(ClassificationError):
        classify(poly)
    with pytest.raises(DomainError):
        wedge_sum(poly)


def test_build_polygon_validates_steps():
    with pytest.raises(DomainError):
        build_polygon(EUCLID, (1, 0), 0.5, max_steps=2)


def test_polygon_serialization_shape():
    poly = build_polygon(EUCLID, (1, 0), 0.5, 100)
    doc = polygon_to_dict(poly)
    assert doc["status"] == "closed"
    assert doc["n"] == 3 and doc["k"] == 1
    assert len(doc["vertices"]) == 3
    theta, x, y = doc["vertices"][1]
    assert theta == pytest.approx(2 * math.pi / 3, abs=1e-9)
    assert (x, y) == (pytest.approx(-0.5, abs=1e-9),
                      pytest.approx(math.sqrt(3) / 2, abs=1e-9))
