"""Norm families on the plane and their basic geometry.

A `NormSpec` is a symmetric convex gauge: Euclidean, a positive-definite
quadratic form, an lp norm with finite p >= 1, or the Minkowski functional
of a centrally symmetric convex polygon.  The unit circle of the gauge is
parametrized by angle through `natural_param`, and points of the unit
circle are always reconstructed from their angle so that coordinates and
parameters never drift apart.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, UnsupportedSpecError
from .solve1d import MAX_BISECT_ITERS, golden_min

TWO_PI = 2.0 * math.pi

UNIT_TOL = 1e-10
ORTHO_TOL = 1e-9


def _fmt_num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _xy(v) -> tuple[float, float]:
    """Accept a plane point as a tuple/list or anything with .coords."""
    c = getattr(v, "coords", v)
    return float(c[0]), float(c[1])


@dataclass(frozen=True)
class UnitPoint:
    """A point of the unit circle with its parameter angle in [0, 2*pi)."""

    theta: float
    coords: tuple[float, float]

    @property
    def x(self) -> float:
        return self.coords[0]

    @property
    def y(self) -> float:
        return self.coords[1]

    def negated(self) -> "UnitPoint":
        return UnitPoint((self.theta + math.pi) % TWO_PI,
                         (-self.coords[0], -self.coords[1]))


@dataclass(frozen=True)
class TangentCheck:
    """Finite-difference tangent of the unit circle versus the orthogonal direction."""

    theta: float
    fd_tangent: tuple[float, float]
    perp_dir: tuple[float, float]
    collinearity_residual: float
    p_estimate: float


class NormSpec:
    """A symmetric convex gauge on the plane.

    Construct through the factory classmethods or `parse`.  Instances are
    immutable and safe to share across threads; every operation in the
    library is a pure function of its arguments.
    """

    def __init__(self, kind, params, value, grad, dplus, dminus,
                 value_many, grad_many, smooth, strictly_convex, spec_id):
        self.kind = kind
        self.params = params
        self.value = value            # (x, y) -> gauge
        self.grad = grad              # (x, y) -> gradient tuple, smooth only
        self.dplus = dplus            # right derivative of t -> N(w + t*d) at t=0
        self.dminus = dminus          # left derivative
        self.value_many = value_many  # vectorized gauge on numpy arrays
        self.grad_many = grad_many    # vectorized gradient, smooth only
        self.smooth = smooth
        self.strictly_convex = strictly_convex
        self.spec_id = spec_id

    def __repr__(self):
        return f"NormSpec({self.spec_id!r})"

    def __eq__(self, other):
        return isinstance(other, NormSpec) and self.spec_id == other.spec_id

    def __hash__(self):
        return hash(self.spec_id)

    @property
    def is_ips_family(self) -> bool:
        """True for norms induced by an inner product (round/elliptic circles)."""
        return self.kind in ("euclid", "quad")

    # -- factories ---------------------------------------------------------

    @classmethod
    def euclidean(cls) -> "NormSpec":
        def value(x, y):
            return math.hypot(x, y)

        def grad(x, y):
            n = math.hypot(x, y)
            return x / n, y / n

        def deriv(x, y, dx, dy):
            n = math.hypot(x, y)
            if n == 0.0:
                return None
            return (x * dx + y * dy) / n

        def value_many(x, y):
            return np.hypot(x, y)

        def grad_many(x, y):
            n = np.hypot(x, y)
            return x / n, y / n

        dplus, dminus = _smooth_onesided(value, deriv)
        return cls("euclid", {}, value, grad, dplus, dminus, value_many,
                   grad_many, True, True, "euclid")

    @classmethod
    def quadratic(cls, a: float, b: float, c: float) -> "NormSpec":
        a, b, c = float(a), float(b), float(c)
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
            raise ConfigurationError("quadratic coefficients must be finite")
        if not (a > 0.0 and 4.0 * a * c - b * b > 0.0):
            raise ConfigurationError(
                f"quadratic form {a}x^2+{b}xy+{c}y^2 is not positive definite")

        def value(x, y):
            ax, ay = abs(x), abs(y)
            m = ax if ax > ay else ay
            if m == 0.0:
                return 0.0
            x, y = x / m, y / m  # keeps squares away from under/overflow
            return m * math.sqrt(a * x * x + b * x * y + c * y * y)

        def grad(x, y):
            n = value(x, y)
            return (2.0 * a * x + b * y) / (2.0 * n), (b * x + 2.0 * c * y) / (2.0 * n)

        def deriv(x, y, dx, dy):
            n = value(x, y)
            if n == 0.0:
                return None
            return ((2.0 * a * x + b * y) * dx + (b * x + 2.0 * c * y) * dy) / (2.0 * n)

        def value_many(x, y):
            return np.sqrt(a * x * x + b * x * y + c * y * y)

        def grad_many(x, y):
            n = value_many(x, y)
            return (2.0 * a * x + b * y) / (2.0 * n), (b * x + 2.0 * c * y) / (2.0 * n)

        dplus, dminus = _smooth_onesided(value, deriv)
        spec_id = f"quad:{_fmt_num(a)},{_fmt_num(b)},{_fmt_num(c)}"
        return cls("quad", {"a": a, "b": b, "c": c}, value, grad, dplus,
                   dminus, value_many, grad_many, True, True, spec_id)

    @classmethod
    def lp(cls, p: float) -> "NormSpec":
        p = float(p)
        if not (math.isfinite(p) and p >= 1.0):
            raise ConfigurationError(f"lp exponent must be a finite real >= 1, got {p}")

        def value(x, y):
            ax, ay = abs(x), abs(y)
            m = ax if ax > ay else ay
            if m == 0.0:
                return 0.0
            return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)

        def value_many(x, y):
            ax, ay = np.abs(x), np.abs(y)
            m = np.maximum(ax, ay)
            m = np.where(m == 0.0, 1.0, m)
            return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)

        if p > 1.0:
            def grad(x, y):
                n = value(x, y)
                s = n ** (p - 1.0)
                gx = math.copysign(abs(x) ** (p - 1.0), x) / s
                gy = math.copysign(abs(y) ** (p - 1.0), y) / s
                return gx, gy

            def deriv(x, y, dx, dy):
                n = value(x, y)
                if n == 0.0:
                    return None
                s = n ** (p - 1.0)
                return (math.copysign(abs(x) ** (p - 1.0), x) * dx
                        + math.copysign(abs(y) ** (p - 1.0), y) * dy) / s

            def grad_many(x, y):
                n = value_many(x, y)
                s = n ** (p - 1.0)
                return (np.sign(x) * np.abs(x) ** (p - 1.0) / s,
                        np.sign(y) * np.abs(y) ** (p - 1.0) / s)

            dplus, dminus = _smooth_onesided(value, deriv)
            smooth = True
        else:
            grad = None
            grad_many = None
            dplus, dminus = _l1_onesided(value)
            smooth = False

        spec = cls("lp", {"p": p}, value, grad, dplus, dminus, value_many,
                   grad_many, smooth, smooth, f"lp:{_fmt_num(p)}")
        if not smooth:
            # the diamond is a polygonal gauge: max of four facet functionals
            spec.normals = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
            spec.corner_angles = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
        return spec

    @classmethod
    def polygon(cls, vertices) -> "NormSpec":
        verts = _symmetric_hull([(float(x), float(y)) for x, y in vertices])
        normals = _edge_normals(verts)
        nx = np.array([n[0] for n in normals])
        ny = np.array([n[1] for n in normals])

        def value(x, y):
            best = -math.inf
            for px, py in normals:
                d = px * x + py * y
                if d > best:
                    best = d
            return best

        def value_many(x, y):
            return np.max(np.multiply.outer(nx, x) + np.multiply.outer(ny, y), axis=0)

        dplus, dminus = _polygon_onesided(value, normals)
        spec_id = "poly:" + ";".join(f"{_fmt_num(x)},{_fmt_num(y)}" for x, y in verts)
        spec = cls("poly", {"vertices": verts}, value, None, dplus, dminus,
                   value_many, None, False, False, spec_id)
        spec.normals = normals
        spec.corner_angles = [math.atan2(y, x) % TWO_PI for x, y in verts]
        return spec

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse the norm-spec grammar.

        "euclid" | "lp:<p>" | "quad:<a>,<b>,<c>" | "poly:<x1>,<y1>;<x2>,<y2>;..."
        Polygon vertices are auto-symmetrized under v -> -v.
        """
        text = text.strip()
        if text == "euclid":
            return cls.euclidean()
        head, sep, rest = text.partition(":")
        if not sep:
            raise ConfigurationError(f"unrecognized norm spec {text!r}")
        try:
            if head == "lp":
                return cls.lp(float(rest))
            if head == "quad":
                a, b, c = (float(t) for t in rest.split(","))
                return cls.quadratic(a, b, c)
            if head == "poly":
                verts = []
                for chunk in rest.split(";"):
                    x, y = (float(t) for t in chunk.split(","))
                    verts.append((x, y))
                return cls.polygon(verts)
        except ConfigurationError:
            raise
        except ValueError as exc:
            raise ConfigurationError(f"malformed norm spec {text!r}: {exc}") from None
        raise ConfigurationError(f"unrecognized norm spec {text!r}")


def _smooth_onesided(value, deriv):
    """One-sided directional derivatives for a smooth norm.

    Away from the origin the two sides agree with the gradient; at the
    origin the norm has a cone kink with slopes -N(d), +N(d).
    """
    def dplus(x, y, dx, dy):
        d = deriv(x, y, dx, dy)
        return value(dx, dy) if d is None else d

    def dminus(x, y, dx, dy):
        d = deriv(x, y, dx, dy)
        return -value(dx, dy) if d is None else d

    return dplus, dminus


def _l1_onesided(value):
    def dplus(x, y, dx, dy):
        out = 0.0
        out += math.copysign(dx, x) if x != 0.0 else abs(dx)
        out += math.copysign(dy, y) if y != 0.0 else abs(dy)
        return out

    def dminus(x, y, dx, dy):
        out = 0.0
        out += math.copysign(dx, x) if x != 0.0 else -abs(dx)
        out += math.copysign(dy, y) if y != 0.0 else -abs(dy)
        return out

    return dplus, dminus


def _polygon_onesided(value, normals):
    """Max/min of active-facet slopes; exact at gauge corners."""
    def active_slopes(x, y, dx, dy):
        n = value(x, y)
        if n == 0.0:
            nd = value(dx, dy)
            return -nd, nd
        cut = n - 1e-12 * (1.0 if n < 1.0 else n)
        lo = math.inf
        hi = -math.inf
        for px, py in normals:
            if px * x + py * y >= cut:
                s = px * dx + py * dy
                if s < lo:
                    lo = s
                if s > hi:
                    hi = s
        return lo, hi

    def dplus(x, y, dx, dy):
        return active_slopes(x, y, dx, dy)[1]

    def dminus(x, y, dx, dy):
        return active_slopes(x, y, dx, dy)[0]

    return dplus, dminus


def _symmetric_hull(points):
    """Closure under v -> -v, then the (strictly) convex hull, CCW.

    Raises ConfigurationError when the symmetrized points are not in convex
    position (some point strictly interior) or the hull is degenerate.
    """
    if not points:
        raise ConfigurationError("polygon gauge needs at least one vertex")
    sym = points + [(-x, -y) for x, y in points]
    scale = max(max(abs(x), abs(y)) for x, y in sym)
    if not (scale > 0.0 and math.isfinite(scale)):
        raise ConfigurationError("polygon vertices must be finite and not all zero")
    tol = 1e-12 * scale
    uniq = []
    for pt in sorted(sym):
        if not uniq or abs(pt[0] - uniq[-1][0]) > tol or abs(pt[1] - uniq[-1][1]) > tol:
            uniq.append(pt)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(pts):
        out = []
        for p in pts:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= tol * scale:
                out.pop()
            out.append(p)
        return out

    lower = half(uniq)
    upper = half(list(reversed(uniq)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 4:
        raise ConfigurationError("symmetrized vertices are collinear or degenerate")
    for pt in uniq:
        if _dist_to_boundary(pt, hull) > 1e-9 * scale:
            raise ConfigurationError(
                f"vertex {pt} lies strictly inside the symmetrized hull; not convex")
    start = min(range(len(hull)), key=lambda i: math.atan2(hull[i][1], hull[i][0]) % TWO_PI)
    return hull[start:] + hull[:start]


def _dist_to_boundary(pt, hull):
    best = math.inf
    for i in range(len(hull)):
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % len(hull)]
        ex, ey = bx - ax, by - ay
        t = ((pt[0] - ax) * ex + (pt[1] - ay) * ey) / (ex * ex + ey * ey)
        t = min(1.0, max(0.0, t))
        best = min(best, math.hypot(pt[0] - ax - t * ex, pt[1] - ay - t * ey))
    return best


def _edge_normals(verts):
    normals = []
    for i in range(len(verts)):
        (x0, y0), (x1, y1) = verts[i], verts[(i + 1) % len(verts)]
        det = x0 * y1 - y0 * x1
        if det <= 0.0:
            raise ConfigurationError("polygon does not wind counterclockwise around the origin")
        normals.append(((y1 - y0) / det, (x0 - x1) / det))
    return normals


# -- basic operations -------------------------------------------------------


def eval_norm(spec: NormSpec, v) -> float:
    """Gauge of a plane point: 0 iff v = 0, absolutely homogeneous."""
    x, y = _xy(v)
    return spec.value(x, y)


def natural_param(spec: NormSpec, theta: float) -> UnitPoint:
    """The unit-circle point in direction theta: (cos t, sin t) / gauge."""
    theta = float(theta) % TWO_PI
    cx, cy = math.cos(theta), math.sin(theta)
    n = spec.value(cx, cy)
    return UnitPoint(theta, (cx / n, cy / n))


def unit_points(spec: NormSpec, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized natural parametrization; returns coordinate arrays."""
    cx, cy = np.cos(thetas), np.sin(thetas)
    n = spec.value_many(cx, cy)
    return cx / n, cy / n


def wedge(u, v) -> float:
    """2D cross product u1*v2 - u2*v1 (twice the signed triangle area)."""
    ux, uy = _xy(u)
    vx, vy = _xy(v)
    return ux * vy - uy * vx


def precedes(u, v) -> bool:
    """True iff u comes before v within a positively oriented half-turn."""
    ux, uy = _xy(u)
    vx, vy = _xy(v)
    if (ux == 0.0 and uy == 0.0) or (vx == 0.0 and vy == 0.0):
        raise DomainError("orientation of the zero vector is undefined")
    return ux * vy - uy * vx > 0.0


def as_unit_point(spec: NormSpec, v, unit_tol: float = UNIT_TOL) -> UnitPoint:
    """Coerce a plane point to a UnitPoint, checking it lies on the unit circle."""
    if isinstance(v, UnitPoint):
        return v
    x, y = _xy(v)
    n = spec.value(x, y)
    if n == 0.0:
        raise DomainError("zero vector is not on the unit circle")
    if abs(n - 1.0) > unit_tol:
        raise DomainError(f"point {(x, y)} has gauge {n}, not on the unit circle")
    return UnitPoint(math.atan2(y, x) % TWO_PI, (x, y))


def is_birkhoff_orthogonal(spec: NormSpec, u, v, tol: float = ORTHO_TOL) -> bool:
    """Birkhoff orthogonality u _|_ v: no multiple of v pulls u closer to 0.

    Minimizes ||u + lambda*v|| over the bracket |lambda| <= 2||u||/||v||,
    which always contains the global minimizer, and compares against ||u||.
    """
    ux, uy = _xy(u)
    vx, vy = _xy(v)
    nu = spec.value(ux, uy)
    nv = spec.value(vx, vy)
    if nu == 0.0 or nv == 0.0:
        raise DomainError("Birkhoff orthogonality needs nonzero vectors")
    r = 2.0 * nu / nv
    _, fmin = golden_min(lambda lam: spec.value(ux + lam * vx, uy + lam * vy), -r, r)
    return fmin >= nu - tol


def birkhoff_orthogonality_defect(spec: NormSpec, u, v) -> float:
    """||u|| minus the best achievable ||u + lambda*v||; 0 means orthogonal."""
    ux, uy = _xy(u)
    vx, vy = _xy(v)
    nu = spec.value(ux, uy)
    nv = spec.value(vx, vy)
    if nu == 0.0 or nv == 0.0:
        raise DomainError("Birkhoff orthogonality needs nonzero vectors")
    r = 2.0 * nu / nv
    _, fmin = golden_min(lambda lam: spec.value(ux + lam * vx, uy + lam * vy), -r, r)
    return nu - fmin


def _require_smooth(spec: NormSpec):
    if not (spec.smooth and spec.strictly_convex):
        raise UnsupportedSpecError(
            f"{spec.spec_id} is not smooth and strictly convex; "
            "only the orthogonality predicate is defined for such norms")


def birkhoff_successor(spec: NormSpec, u) -> UnitPoint:
    """The unique unit point after u (within a half-turn) orthogonal to u.

    Bisects the sign of the directional derivative of ||u + t*s(phi)|| at
    t=0 over phi in (theta_u, theta_u + pi); requires a smooth, strictly
    convex gauge.
    """
    _require_smooth(spec)
    up = as_unit_point(spec, u)
    gx, gy = spec.grad(up.x, up.y)

    lo, hi = up.theta, up.theta + math.pi
    for _ in range(MAX_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if gx * math.cos(mid) + gy * math.sin(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return natural_param(spec, 0.5 * (lo + hi))


def perp_points(spec: NormSpec, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Birkhoff-orthogonal successors of s(theta) for smooth gauges.

    For a smooth norm the successor direction is the gradient rotated a
    quarter turn; agreement with `birkhoff_successor` is covered by tests.
    """
    _require_smooth(spec)
    sx, sy = unit_points(spec, thetas)
    gx, gy = spec.grad_many(sx, sy)
    n = spec.value_many(-gy, gx)
    return -gy / n, gx / n


def tangent_check(spec: NormSpec, theta: float, h: float) -> TangentCheck:
    """Compare the finite-difference tangent of s with the orthogonal direction.

    The unit circle of a smooth gauge has s'(theta) parallel to the
    Birkhoff successor direction; the residual is the Euclidean norm of the
    component of the centered difference orthogonal to it.
    """
    _require_smooth(spec)
    if not 0.0 < h <= 1e-2:
        raise DomainError(f"step h must lie in (0, 1e-2], got {h}")
    sp = natural_param(spec, theta + h)
    sm = natural_param(spec, theta - h)
    fx = (sp.x - sm.x) / (2.0 * h)
    fy = (sp.y - sm.y) / (2.0 * h)
    tx, ty = birkhoff_successor(spec, natural_param(spec, theta)).coords
    tlen2 = tx * tx + ty * ty
    residual = abs(fx * ty - fy * tx) / math.sqrt(tlen2)
    p_estimate = (fx * tx + fy * ty) / tlen2
    return TangentCheck(float(theta) % TWO_PI, (fx, fy), (tx, ty), residual, p_estimate)
