"""Shared specs and independent oracles for the test suite."""

import math

import numpy as np
import pytest

from rho_planes import NormSpec

EUCLID = NormSpec.euclidean()
QUAD14 = NormSpec.quadratic(1, 0, 4)
QUAD213 = NormSpec.quadratic(2, 1, 3)
LP4 = NormSpec.lp(4)
LP15 = NormSpec.lp(1.5)
SQUARE = NormSpec.polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])
DIAMOND = NormSpec.polygon([(1, 0), (0, 1)])

SMOOTH_SPECS = [EUCLID, QUAD14, QUAD213, LP4, LP15]
IPS_SPECS = [EUCLID, QUAD14, QUAD213]
ALL_SPECS = SMOOTH_SPECS + [SQUARE, DIAMOND, NormSpec.lp(1)]


def spec_ids(specs):
    return [s.spec_id for s in specs]


@pytest.fixture
def rng():
    return np.random.default_rng(20240307)


# -- independent oracles -----------------------------------------------------


def grid_min_along(spec, u, d, radius=2.0, n=200001):
    """Brute-force min of ||u + lam*d|| over a dense symmetric lambda grid."""
    lams = np.linspace(-radius, radius, n)
    ux, uy = u
    return float(spec.value_many(ux + lams * d[0], uy + lams * d[1]).min())


def grid_chord_min(spec, u, v, n=200001):
    """Brute-force min of ||(1-t)u + t*v|| over a dense t grid."""
    ts = np.linspace(0.0, 1.0, n)
    x = (1 - ts) * u[0] + ts * v[0]
    y = (1 - ts) * u[1] + ts * v[1]
    vals = spec.value_many(x, y)
    i = int(np.argmin(vals))
    return float(vals[i]), float(ts[i])


def quad_transform(spec):
    """Matrix T with ||w||_quad = |T w|_2, from the Cholesky factor."""
    a, b, c = spec.params["a"], spec.params["b"], spec.params["c"]
    m = np.array([[a, b / 2.0], [b / 2.0, c]])
    return np.linalg.cholesky(m).T


def euclid_star_angle(theta, rho):
    """On the round circle the star map is rotation by 2*arccos(rho)."""
    return theta + 2.0 * math.acos(rho)


def quad_star_oracle(spec, u, rho):
    """Star image of u under a quadratic gauge via the Euclidean substitution."""
    t = quad_transform(spec)
    uh = t @ np.array(u)
    ang = 2.0 * math.acos(rho)
    rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
    img = np.linalg.solve(t, rot @ uh)
    return float(img[0]), float(img[1])
