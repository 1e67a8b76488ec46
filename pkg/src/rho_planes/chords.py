"""Chord minima, the star map, and midpoint diagnostics.

A chord [u, v] of the unit circle carries the convex function
t -> ||(1-t)u + t*v|| on [0, 1].  The star map sends u to the unique
counterclockwise-next unit point u* such that the chord [u, u*] supports
the scaled circle rho*S, i.e. its minimum gauge value equals rho.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChordError, DomainError, NumericalError
from .norms import (TWO_PI, NormSpec, UnitPoint, as_unit_point,
                    birkhoff_successor, natural_param, perp_points,
                    unit_points, _require_smooth)
from .solve1d import MAX_BISECT_ITERS, illinois_root

ANTIPODAL_GUARD = 1e-9


@dataclass(frozen=True)
class ChordReport:
    """A chord with its minimum gauge value and midpoint diagnostics.

    argmin_lo/argmin_hi bound the minimizer set; they coincide (to solver
    precision) for strictly convex gauges and span the flat piece for
    polygonal ones.
    """

    u: UnitPoint
    v: UnitPoint
    min_value: float
    argmin_lo: float
    argmin_hi: float
    midpoint_norm: float


@dataclass(frozen=True)
class ChordFrame:
    """The symmetric chord through rho*s(theta) in the tangent direction.

    mu is the positive solution of ||rho*(s + mu*s_perp)|| = 1; for norms
    with the midpoint-support property the mirrored endpoint rho*(s - mu*
    s_perp) lies on the unit circle with the same mu.
    """

    theta: float
    base: UnitPoint
    perp: UnitPoint
    mu: float
    left: tuple[float, float]
    right: tuple[float, float]


def _as_two_points(spec, u, v):
    up = as_unit_point(spec, u)
    vp = as_unit_point(spec, v)
    if abs(up.x - vp.x) < 1e-15 and abs(up.y - vp.y) < 1e-15:
        raise DegenerateChordError("chord endpoints coincide")
    return up, vp


def _poly_chord_min(normals, ux, uy, dx, dy):
    """Exact minimum of t -> max_i <n_i, u + t*d> on [0, 1].

    The restriction of a polygonal gauge to a segment is an upper envelope
    of affine functions, so its minimum and flat argmin piece sit on
    pairwise line intersections (or the segment ends); no iteration needed.
    """
    lines = [(nx * ux + ny * uy, nx * dx + ny * dy) for nx, ny in normals]

    def envelope(t):
        return max(al + be * t for al, be in lines)

    cands = [0.0, 1.0]
    m = len(lines)
    for i in range(m):
        ai, bi = lines[i]
        for j in range(i + 1, m):
            aj, bj = lines[j]
            if bi != bj:
                t = (aj - ai) / (bi - bj)
                if 0.0 < t < 1.0:
                    cands.append(t)
    vals = [envelope(t) for t in cands]
    best = min(vals)
    cut = best + 1e-13 * (1.0 if best < 1.0 else best)
    flat = [t for t, v in zip(cands, vals) if v <= cut]
    return best, min(flat), max(flat)


def chord_min(spec: NormSpec, u, v) -> ChordReport:
    """Minimum of t -> ||(1-t)u + t*v|| over [0, 1] with its minimizer interval.

    The interval endpoints are located by bisecting the signs of the exact
    one-sided derivatives, so flat minima of polygonal gauges are resolved
    to solver precision rather than smeared by value comparisons.
    """
    up, vp = _as_two_points(spec, u, v)
    ux, uy = up.coords
    dx, dy = vp.x - ux, vp.y - uy

    normals = getattr(spec, "normals", None)
    if normals is not None:
        min_value, lo, hi = _poly_chord_min(normals, ux, uy, dx, dy)
        mid_norm = spec.value(0.5 * (up.x + vp.x), 0.5 * (up.y + vp.y))
        return ChordReport(up, vp, min_value, lo, hi, mid_norm)

    dplus = spec.dplus
    dminus = spec.dminus

    def dp(t):
        return dplus(ux + t * dx, uy + t * dy, dx, dy)

    def dm(t):
        return dminus(ux + t * dx, uy + t * dy, dx, dy)

    # argmin_lo = inf{t : D+(t) >= 0}; the predicate is monotone because
    # one-sided derivatives of a convex function are nondecreasing.
    if dp(0.0) >= 0.0:
        lo = 0.0
    else:
        a, b = 0.0, 1.0
        for _ in range(MAX_BISECT_ITERS):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if dp(mid) >= 0.0:
                b = mid
            else:
                a = mid
        lo = 0.5 * (a + b)

    # argmin_hi = sup{t : D-(t) <= 0}
    if dm(1.0) <= 0.0:
        hi = 1.0
    else:
        a, b = max(0.0, lo - 1e-12), 1.0
        for _ in range(MAX_BISECT_ITERS):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if dm(mid) <= 0.0:
                a = mid
            else:
                b = mid
        hi = 0.5 * (a + b)

    if hi < lo:
        lo = hi = 0.5 * (lo + hi)
    tm = 0.5 * (lo + hi)
    min_value = spec.value(ux + tm * dx, uy + tm * dy)
    mid_norm = spec.value(0.5 * (up.x + vp.x), 0.5 * (up.y + vp.y))
    return ChordReport(up, vp, min_value, lo, hi, mid_norm)


def _chord_min_value(spec: NormSpec, ux, uy, vx, vy) -> float:
    """Minimum gauge value along the segment, without the interval bookkeeping."""
    dx, dy = vx - ux, vy - uy
    normals = getattr(spec, "normals", None)
    if normals is not None:
        return _poly_chord_min(normals, ux, uy, dx, dy)[0]
    dplus = spec.dplus

    def dp(t):
        return dplus(ux + t * dx, uy + t * dy, dx, dy)

    d0 = dp(0.0)
    if d0 >= 0.0:
        return spec.value(ux, uy)
    d1 = spec.dminus(vx, vy, dx, dy)
    if d1 <= 0.0:
        return spec.value(vx, vy)
    t = illinois_root(dp, 0.0, 1.0, d0, d1)
    return spec.value(ux + t * dx, uy + t * dy)


def _chord_supports_at_least(spec: NormSpec, ux, uy, vx, vy, rho: float) -> bool:
    """Certified test of min_t ||(1-t)u + t*v|| >= rho.

    Walks the same derivative-sign root search as `_chord_min_value` but
    stops as soon as either a gauge value below rho is seen (min < rho) or
    the Lipschitz lower bound over the remaining bracket clears rho.
    """
    dx, dy = vx - ux, vy - uy
    value = spec.value
    normals = getattr(spec, "normals", None)
    if normals is not None:
        return _poly_chord_min(normals, ux, uy, dx, dy)[0] >= rho
    dplus = spec.dplus
    dminus = spec.dminus
    d0 = dplus(ux, uy, dx, dy)
    if d0 >= 0.0:
        return value(ux, uy) >= rho
    d1 = dminus(vx, vy, dx, dy)
    if d1 <= 0.0:
        return value(vx, vy) >= rho

    lip = value(dx, dy)
    a, b, fa, fb = 0.0, 1.0, d0, d1
    side = 0
    for _ in range(120):
        denom = fb - fa
        t = 0.5 * (a + b) if denom == 0.0 else b - fb * (b - a) / denom
        if not a < t < b:
            t = 0.5 * (a + b)
        if t <= a or t >= b:
            break
        wx, wy = ux + t * dx, uy + t * dy
        fw = value(wx, wy)
        if fw < rho:
            return False
        if fw - lip * max(t - a, b - t) >= rho:
            return True
        dpv = dplus(wx, wy, dx, dy)
        dm = dpv if spec.smooth else dminus(wx, wy, dx, dy)
        if dm <= 0.0 <= dpv:
            return fw >= rho  # t is itself a minimizer
        if dpv < 0.0:
            a, fa = t, dpv
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb = t, dm
            if side == 1:
                fa *= 0.5
            side = 1
        if b - a <= 1e-15:
            return fw >= rho
    tm = 0.5 * (a + b)
    return value(ux + tm * dx, uy + tm * dy) >= rho


def _check_rho(rho: float):
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must lie strictly between 0 and 1, got {rho}")


def star_map(spec: NormSpec, u, rho: float) -> UnitPoint:
    """The next unit point whose chord from u supports rho*S.

    Bisects the predicate "chord minimum >= rho" over angles in
    (theta_u, theta_u + pi); the truth region is an initial interval
    because chords from u dip monotonically deeper as they open up.  At a
    plateau boundary the supremum angle of the truth region is returned.
    """
    _check_rho(rho)
    up = as_unit_point(spec, u)
    ux, uy = up.coords
    value = spec.value

    def supports(phi):
        c, s = math.cos(phi), math.sin(phi)
        n = value(c, s)
        return _chord_supports_at_least(spec, ux, uy, c / n, s / n, rho)

    lo = up.theta
    hi = up.theta + math.pi - ANTIPODAL_GUARD
    if supports(hi):
        raise NumericalError(
            f"star-map bracket failure: chords from theta={up.theta:.6f} "
            f"never dip below rho={rho}")
    for _ in range(MAX_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if supports(mid):
            lo = mid
        else:
            hi = mid
    if lo == up.theta:
        raise NumericalError("star-map bisection could not leave the seed angle")
    return natural_param(spec, lo)


def midpoint_check(spec: NormSpec, u, rho: float) -> ChordReport:
    """Chord report of [u, star_map(u)]; |midpoint_norm - rho| is the
    midpoint-support deviation of this chord."""
    _check_rho(rho)
    up = as_unit_point(spec, u)
    return chord_min(spec, up, star_map(spec, up, rho))


def chord_frame(spec: NormSpec, theta: float, rho: float) -> ChordFrame:
    """Frame of the supporting chord through rho*s(theta): mu and endpoints.

    mu is found by bisection on mu -> ||rho*(s + mu*s_perp)|| - 1, which is
    convex, negative at 0 and positive at (1 + 1/rho).
    """
    _check_rho(rho)
    _require_smooth(spec)
    base = natural_param(spec, theta)
    perp = birkhoff_successor(spec, base)
    mu = _solve_mu(spec, base.coords, perp.coords, rho)
    left = (rho * (base.x - mu * perp.x), rho * (base.y - mu * perp.y))
    right = (rho * (base.x + mu * perp.x), rho * (base.y + mu * perp.y))
    return ChordFrame(base.theta, base, perp, mu, left, right)


def _solve_mu(spec, s, t, rho):
    sx, sy = s
    tx, ty = t

    def g(mu):
        return spec.value(rho * (sx + mu * tx), rho * (sy + mu * ty)) - 1.0

    hi = 1.0 + 1.0 / rho
    ghi = g(hi)
    if ghi < 0.0:
        raise NumericalError("mu bracket failure: upper bound does not clear the circle")
    return illinois_root(g, 0.0, hi, rho - 1.0, ghi)


def frame_grid(spec: NormSpec, thetas: np.ndarray, rho: float):
    """Vectorized chord frames on a theta grid.

    Returns (sx, sy, tx, ty, mu) arrays: unit points, successor directions
    and half-widths.  The scalar `chord_frame` is the reference
    implementation; agreement is covered by tests.
    """
    _check_rho(rho)
    sx, sy = unit_points(spec, thetas)
    tx, ty = perp_points(spec, thetas)
    lo = np.zeros_like(thetas)
    hi = np.full_like(thetas, 1.0 + 1.0 / rho)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        val = spec.value_many(rho * (sx + mid * tx), rho * (sy + mid * ty))
        above = val > 1.0
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    mu = 0.5 * (lo + hi)
    return sx, sy, tx, ty, mu
