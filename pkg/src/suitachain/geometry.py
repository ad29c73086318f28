"""Bounded planar domains and closed-form C^n domains.

Every solver in the library sees domains only through the small surface
defined here: membership, distance to the boundary, area, and weighted
boundary samples.  Canonical kinds (disc, annulus, ellipse) use closed
forms; polygon and fourier-curve kinds fall back to exact polyline
geometry or a dense polyline proxy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainSpecError, InvalidCount, PointOutsideDomain

__all__ = [
    "PlanarDomain", "Disc", "Annulus", "Ellipse", "Polygon", "FourierCurve",
    "MultiDomain", "Ball", "Polydisc", "BoundarySample",
    "contains", "boundary_distance", "area", "boundary_sample",
    "domain_to_spec", "domain_from_spec", "load_domain", "save_domain",
]


@dataclass(frozen=True)
class BoundarySample:
    """One boundary collocation/quadrature node.

    point  : position on the boundary
    normal : outward unit normal
    weight : arc-length weight; weights of one component sum to its length
    """

    point: complex
    normal: complex
    weight: float


class PlanarDomain:
    """Base class for bounded planar domains.  Boundary points are outside."""

    kind = "abstract"

    def contains(self, z) -> bool:
        return bool(self.contains_many(np.asarray([z], dtype=complex))[0])

    def contains_many(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def boundary_distance(self, z: complex) -> float:
        if not self.contains(z):
            raise PointOutsideDomain(f"{z} is not strictly inside the {self.kind}")
        return self._interior_distance(complex(z))

    def _interior_distance(self, z: complex) -> float:
        raise NotImplementedError

    def area(self) -> float:
        raise NotImplementedError

    def diameter(self) -> float:
        raise NotImplementedError

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(xmin, xmax, ymin, ymax)"""
        raise NotImplementedError

    def boundary_components(self, count: int) -> list[list[BoundarySample]]:
        """Boundary samples split per component; count is the total budget."""
        raise NotImplementedError

    def boundary_sample(self, count: int) -> list[BoundarySample]:
        return [s for comp in self.boundary_components(count) for s in comp]


def _circle_samples(center: complex, r: float, n: int, outward: bool) -> list[BoundarySample]:
    th = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    e = np.exp(1j * th)
    sgn = 1.0 if outward else -1.0
    w = 2.0 * np.pi * r / n
    return [BoundarySample(complex(center + r * ei), complex(sgn * ei), w) for ei in e]


@dataclass(frozen=True)
class Disc(PlanarDomain):
    center: complex
    radius: float
    kind = "disc"

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainSpecError("disc radius must be positive")

    def contains_many(self, z):
        return np.abs(np.asarray(z) - self.center) < self.radius

    def _interior_distance(self, z):
        return self.radius - abs(z - self.center)

    def area(self):
        return np.pi * self.radius ** 2

    def diameter(self):
        return 2.0 * self.radius

    def bounding_box(self):
        c, r = self.center, self.radius
        return (c.real - r, c.real + r, c.imag - r, c.imag + r)

    def boundary_components(self, count):
        if count < 8:
            raise InvalidCount("need at least 8 samples on the circle")
        return [_circle_samples(self.center, self.radius, count, outward=True)]


@dataclass(frozen=True)
class Annulus(PlanarDomain):
    center: complex
    inner_radius: float
    outer_radius: float
    kind = "annulus"

    def __post_init__(self):
        if not (0 < self.inner_radius < self.outer_radius):
            raise DomainSpecError("annulus needs 0 < inner < outer")

    def contains_many(self, z):
        d = np.abs(np.asarray(z) - self.center)
        return (d > self.inner_radius) & (d < self.outer_radius)

    def _interior_distance(self, z):
        d = abs(z - self.center)
        return min(d - self.inner_radius, self.outer_radius - d)

    def area(self):
        return np.pi * (self.outer_radius ** 2 - self.inner_radius ** 2)

    def diameter(self):
        return 2.0 * self.outer_radius

    def bounding_box(self):
        c, r = self.center, self.outer_radius
        return (c.real - r, c.real + r, c.imag - r, c.imag + r)

    def boundary_components(self, count):
        lo = self.inner_radius / (self.inner_radius + self.outer_radius)
        n_in = max(8, int(round(count * lo)))
        n_out = count - n_in
        if n_out < 8:
            raise InvalidCount("need at least 8 samples per boundary circle")
        return [
            _circle_samples(self.center, self.outer_radius, n_out, outward=True),
            _circle_samples(self.center, self.inner_radius, n_in, outward=False),
        ]


@dataclass(frozen=True)
class Ellipse(PlanarDomain):
    center: complex
    semi_major: float
    semi_minor: float
    rotation: float = 0.0
    kind = "ellipse"

    def __post_init__(self):
        if not (self.semi_major >= self.semi_minor > 0):
            raise DomainSpecError("ellipse needs a >= b > 0")

    def _to_local(self, z):
        return (np.asarray(z) - self.center) * np.exp(-1j * self.rotation)

    def contains_many(self, z):
        w = self._to_local(z)
        return (w.real / self.semi_major) ** 2 + (w.imag / self.semi_minor) ** 2 < 1.0

    def _interior_distance(self, z):
        # bracketed root of the standard point-to-ellipse function; exact
        # for interior points up to solver tolerance ~1e-14
        w = self._to_local(z)
        a, b = self.semi_major, self.semi_minor
        p, q = abs(w.real), abs(w.imag)
        if p < 1e-15 and q < 1e-15:
            return b
        lo, hi = -b * b, 0.0
        # F is decreasing in t; F(-b^2+) = +inf (or sign check), F(0) = (p/a)^2+(q/b)^2 - 1 < 0
        lo += (hi - lo) * 1e-12
        for _ in range(200):
            t = 0.5 * (lo + hi)
            f = (a * p / (t + a * a)) ** 2 + (b * q / (t + b * b)) ** 2 - 1.0
            if f > 0:
                lo = t
            else:
                hi = t
            if hi - lo < 1e-16 * b * b:
                break
        t = 0.5 * (lo + hi)
        x = a * a * p / (t + a * a)
        y = b * b * q / (t + b * b)
        return float(np.hypot(x - p, y - q))

    def area(self):
        return np.pi * self.semi_major * self.semi_minor

    def diameter(self):
        return 2.0 * self.semi_major

    def bounding_box(self):
        a, b, phi = self.semi_major, self.semi_minor, self.rotation
        hx = np.hypot(a * np.cos(phi), b * np.sin(phi))
        hy = np.hypot(a * np.sin(phi), b * np.cos(phi))
        c = self.center
        return (c.real - hx, c.real + hx, c.imag - hy, c.imag + hy)

    def parametrize(self, th):
        """Boundary point and d(point)/d(theta) for parameter array th."""
        rot = np.exp(1j * self.rotation)
        z = self.center + rot * (self.semi_major * np.cos(th) + 1j * self.semi_minor * np.sin(th))
        dz = rot * (-self.semi_major * np.sin(th) + 1j * self.semi_minor * np.cos(th))
        return z, dz

    def boundary_components(self, count):
        if count < 8:
            raise InvalidCount("need at least 8 samples on the ellipse")
        th = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        z, dz = self.parametrize(th)
        speed = np.abs(dz)
        nrm = -1j * dz / speed
        w = speed * 2.0 * np.pi / count
        return [[BoundarySample(complex(zi), complex(ni), float(wi))
                 for zi, ni, wi in zip(z, nrm, w)]]


def _segments_intersect(p, p2, q, q2):
    """Vectorized proper-intersection test between segment batches."""
    d1 = p2 - p
    d2 = q2 - q
    denom = d1.real * d2.imag - d1.imag * d2.real
    rel = q - p
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (rel.real * d2.imag - rel.imag * d2.real) / denom
        u = (rel.real * d1.imag - rel.imag * d1.real) / denom
    eps = 1e-12
    return (np.abs(denom) > eps) & (t > eps) & (t < 1 - eps) & (u > eps) & (u < 1 - eps)


def _polyline_is_simple(pts: np.ndarray) -> bool:
    """Pairwise proper-intersection scan over a closed polyline."""
    n = len(pts)
    a = pts
    b = np.roll(pts, -1)
    idx_i, idx_j = np.triu_indices(n, k=2)
    # skip the wrap-around adjacency (first vs last segment)
    keep = ~((idx_i == 0) & (idx_j == n - 1))
    idx_i, idx_j = idx_i[keep], idx_j[keep]
    hits = _segments_intersect(a[idx_i], b[idx_i], a[idx_j], b[idx_j])
    return not bool(np.any(hits))


def _point_in_polyline(pts_x, pts_y, zx, zy):
    """Even-odd crossing test; z arrays broadcast against polyline edges.

    Work is chunked so the (points x edges) intermediates stay near 64 MB
    even for dense proxy polylines against full evaluation grids.
    """
    x1, y1 = pts_x, pts_y
    x2, y2 = np.roll(pts_x, -1), np.roll(pts_y, -1)
    zx = np.asarray(zx, dtype=float)
    zy = np.asarray(zy, dtype=float)
    shape = zx.shape
    fx, fy = zx.ravel(), zy.ravel()
    out = np.empty(fx.shape, dtype=bool)
    step = max(1, 8_000_000 // max(len(x1), 1))
    for lo in range(0, len(fx), step):
        cx = fx[lo:lo + step, None]
        cy = fy[lo:lo + step, None]
        cond = (y1 > cy) != (y2 > cy)
        with np.errstate(divide="ignore", invalid="ignore"):
            xin = x1 + (cy - y1) * (x2 - x1) / (y2 - y1)
        out[lo:lo + step] = np.sum(cond & (cx < xin), axis=-1) % 2 == 1
    return out.reshape(shape)


def _distance_to_polyline(pts: np.ndarray, z: complex) -> float:
    a = pts
    b = np.roll(pts, -1)
    ab = b - a
    t = np.clip(((z - a).real * ab.real + (z - a).imag * ab.imag) / np.abs(ab) ** 2, 0.0, 1.0)
    proj = a + t * ab
    return float(np.min(np.abs(z - proj)))


@dataclass(frozen=True)
class Polygon(PlanarDomain):
    vertices: tuple  # complex vertices, counterclockwise
    kind = "polygon"

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex)
        if len(v) < 3:
            raise DomainSpecError("polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", tuple(complex(x) for x in v))
        if self._signed_area() <= 0:
            raise DomainSpecError("polygon vertices must be counterclockwise")
        if not _polyline_is_simple(v):
            raise DomainSpecError("polygon must be simple (non-self-intersecting)")

    def _vert(self):
        return np.asarray(self.vertices, dtype=complex)

    def _signed_area(self):
        v = np.asarray(self.vertices, dtype=complex)
        w = np.roll(v, -1)
        return 0.5 * float(np.sum(v.real * w.imag - v.imag * w.real))

    def contains_many(self, z):
        v = self._vert()
        z = np.asarray(z, dtype=complex)
        return _point_in_polyline(v.real, v.imag, z.real, z.imag)

    def _interior_distance(self, z):
        return _distance_to_polyline(self._vert(), z)

    def area(self):
        return self._signed_area()

    def diameter(self):
        v = self._vert()
        return float(np.max(np.abs(v[:, None] - v[None, :])))

    def bounding_box(self):
        v = self._vert()
        return (v.real.min(), v.real.max(), v.imag.min(), v.imag.max())

    def edge_lengths(self):
        v = self._vert()
        return np.abs(np.roll(v, -1) - v)

    def _edge_counts(self, count):
        lens = self.edge_lengths()
        raw = count * lens / lens.sum()
        counts = np.maximum(1, np.floor(raw).astype(int))
        # largest-remainder top-up so the total is exact
        while counts.sum() < count:
            counts[np.argmax(raw - counts)] += 1
        while counts.sum() > count:
            i = np.argmax(np.where(counts > 1, counts - raw, -np.inf))
            counts[i] -= 1
        return counts

    def boundary_components(self, count):
        if count < max(8, len(self.vertices)):
            raise InvalidCount("too few samples for this polygon")
        v = self._vert()
        out = []
        for k, m in enumerate(self._edge_counts(count)):
            a, b = v[k], v[(k + 1) % len(v)]
            e = b - a
            nrm = complex(-1j * e / abs(e))
            u = (np.arange(m) + 0.5) / m
            w = abs(e) / m
            out.extend(BoundarySample(complex(a + ui * e), nrm, w) for ui in u)
        return [out]

    def boundary_sample_graded(self, count):
        """Cosine-clustered samples (denser toward corners) for collocation.

        Weights integrate arc length with the clustering Jacobian; their sum
        tends to the perimeter only as count grows, so use boundary_sample
        for quadrature and this for corner-sensitive collocation.
        """
        v = self._vert()
        out = []
        for k, m in enumerate(self._edge_counts(count)):
            a, b = v[k], v[(k + 1) % len(v)]
            e = b - a
            nrm = complex(-1j * e / abs(e))
            xi = (np.arange(m) + 0.5) / m
            u = 0.5 * (1.0 - np.cos(np.pi * xi))
            w = abs(e) * (np.pi / 2.0) * np.sin(np.pi * xi) / m
            out.extend(BoundarySample(complex(a + ui * e), nrm, float(wi))
                       for ui, wi in zip(u, w))
        return out


@dataclass(frozen=True)
class FourierCurve(PlanarDomain):
    """Domain bounded by z(theta) = sum_k c_k e^{ik theta}, k = -m..m, ccw."""

    coefficients: tuple  # complex c_k, index -m..m
    proxy_resolution: int = 2048  # polyline proxy density for membership/distance
    kind = "fourier"

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if len(c) % 2 != 1:
            raise DomainSpecError("fourier coefficients must run k = -m..m (odd length)")
        object.__setattr__(self, "coefficients", tuple(complex(x) for x in c))
        if self._fourier_area() <= 0:
            raise DomainSpecError("fourier curve must be counterclockwise with positive area")
        if not _polyline_is_simple(self.polyline(512)):
            raise DomainSpecError("fourier curve must be a simple closed curve")

    @property
    def order(self):
        return (len(self.coefficients) - 1) // 2

    def parametrize(self, th):
        th = np.asarray(th, dtype=float)
        m = self.order
        ks = np.arange(-m, m + 1)
        c = np.asarray(self.coefficients, dtype=complex)
        ph = np.exp(1j * np.outer(th, ks))
        z = ph @ c
        dz = ph @ (1j * ks * c)
        return z, dz

    def polyline(self, n=None):
        n = n or self.proxy_resolution
        th = 2.0 * np.pi * np.arange(n) / n
        return self.parametrize(th)[0]

    def contains_many(self, z):
        p = self.polyline()
        z = np.asarray(z, dtype=complex)
        return _point_in_polyline(p.real, p.imag, z.real, z.imag)

    def _interior_distance(self, z):
        return _distance_to_polyline(self.polyline(), z)

    def _fourier_area(self):
        m = self.order
        ks = np.arange(-m, m + 1)
        c = np.asarray(self.coefficients, dtype=complex)
        return float(np.pi * np.sum(ks * np.abs(c) ** 2))

    def area(self):
        # exact: area = pi * sum_k k |c_k|^2
        return self._fourier_area()

    def diameter(self):
        p = self.polyline(1024)
        return float(np.max(np.abs(p[:, None] - p[None, :])))

    def bounding_box(self):
        p = self.polyline()
        return (p.real.min(), p.real.max(), p.imag.min(), p.imag.max())

    def boundary_components(self, count):
        if count < 8:
            raise InvalidCount("need at least 8 samples on the curve")
        th = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        z, dz = self.parametrize(th)
        speed = np.abs(dz)
        nrm = -1j * dz / speed
        w = speed * 2.0 * np.pi / count
        return [[BoundarySample(complex(zi), complex(ni), float(wi))
                 for zi, ni, wi in zip(z, nrm, w)]]


# ---------------------------------------------------------------------------
# C^n closed-form domains


class MultiDomain:
    """Base class for the closed-form C^n kinds."""

    kind = "abstract"

    @property
    def dimension(self) -> int:
        raise NotImplementedError

    def contains(self, z) -> bool:
        raise NotImplementedError

    def boundary_distance(self, z) -> float:
        if not self.contains(z):
            raise PointOutsideDomain(f"point is not strictly inside the {self.kind}")
        return self._interior_distance(np.asarray(z, dtype=complex))


@dataclass(frozen=True)
class Ball(MultiDomain):
    center: tuple  # point in C^n
    radius: float
    kind = "ball"

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.center, dtype=complex))
        if not self.radius > 0:
            raise DomainSpecError("ball radius must be positive")
        object.__setattr__(self, "center", tuple(complex(x) for x in c))

    @property
    def dimension(self):
        return len(self.center)

    def contains(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return bool(np.linalg.norm(z - np.asarray(self.center)) < self.radius)

    def _interior_distance(self, z):
        return self.radius - float(np.linalg.norm(np.atleast_1d(z) - np.asarray(self.center)))


@dataclass(frozen=True)
class Polydisc(MultiDomain):
    center: tuple
    radii: tuple
    kind = "polydisc"

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.center, dtype=complex))
        r = np.atleast_1d(np.asarray(self.radii, dtype=float))
        if len(c) != len(r):
            raise DomainSpecError("polydisc center and radii lengths differ")
        if not np.all(r > 0):
            raise DomainSpecError("polydisc radii must all be positive")
        object.__setattr__(self, "center", tuple(complex(x) for x in c))
        object.__setattr__(self, "radii", tuple(float(x) for x in r))

    @property
    def dimension(self):
        return len(self.center)

    def contains(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        gaps = np.abs(z - np.asarray(self.center)) < np.asarray(self.radii)
        return bool(np.all(gaps))

    def _interior_distance(self, z):
        z = np.atleast_1d(z)
        return float(np.min(np.asarray(self.radii) - np.abs(z - np.asarray(self.center))))


# ---------------------------------------------------------------------------
# spec-level operations (thin functional surface over the domain methods)


def contains(domain, z) -> bool:
    """True iff z lies in the open domain; boundary points count as outside."""
    return domain.contains(z)


def boundary_distance(domain, z) -> float:
    """Distance from an interior point to the boundary."""
    return domain.boundary_distance(z)


def area(domain: PlanarDomain) -> float:
    return domain.area()


def boundary_sample(domain: PlanarDomain, count: int) -> list[BoundarySample]:
    return domain.boundary_sample(count)


# ---------------------------------------------------------------------------
# domain-spec JSON (bit-exact round trip)


def _c2j(z: complex):
    return [z.real, z.imag]


def _j2c(v) -> complex:
    return complex(v[0], v[1])


def domain_to_spec(domain) -> dict:
    k = domain.kind
    if k == "disc":
        return {"kind": k, "center": _c2j(domain.center), "radius": domain.radius}
    if k == "annulus":
        return {"kind": k, "center": _c2j(domain.center),
                "inner_radius": domain.inner_radius, "outer_radius": domain.outer_radius}
    if k == "ellipse":
        return {"kind": k, "center": _c2j(domain.center), "semi_major": domain.semi_major,
                "semi_minor": domain.semi_minor, "rotation": domain.rotation}
    if k == "polygon":
        return {"kind": k, "vertices": [_c2j(v) for v in domain.vertices]}
    if k == "fourier":
        return {"kind": k, "coefficients": [_c2j(c) for c in domain.coefficients]}
    if k == "ball":
        return {"kind": k, "center": [_c2j(c) for c in domain.center], "radius": domain.radius}
    if k == "polydisc":
        return {"kind": k, "center": [_c2j(c) for c in domain.center],
                "radii": list(domain.radii)}
    raise DomainSpecError(f"unknown domain kind {k!r}")


def domain_from_spec(spec: dict):
    try:
        k = spec["kind"]
        if k == "disc":
            return Disc(_j2c(spec["center"]), float(spec["radius"]))
        if k == "annulus":
            return Annulus(_j2c(spec["center"]), float(spec["inner_radius"]),
                           float(spec["outer_radius"]))
        if k == "ellipse":
            return Ellipse(_j2c(spec["center"]), float(spec["semi_major"]),
                           float(spec["semi_minor"]), float(spec.get("rotation", 0.0)))
        if k == "polygon":
            return Polygon(tuple(_j2c(v) for v in spec["vertices"]))
        if k == "fourier":
            return FourierCurve(tuple(_j2c(c) for c in spec["coefficients"]))
        if k == "ball":
            return Ball(tuple(_j2c(c) for c in spec["center"]), float(spec["radius"]))
        if k == "polydisc":
            return Polydisc(tuple(_j2c(c) for c in spec["center"]),
                            tuple(float(r) for r in spec["radii"]))
    except DomainSpecError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise DomainSpecError(f"malformed domain spec: {exc}") from exc
    raise DomainSpecError(f"unknown domain kind {spec.get('kind')!r}")


def load_domain(path):
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainSpecError(f"invalid JSON in {path}: {exc}") from exc
    return domain_from_spec(spec)


def save_domain(domain, path):
    with open(path, "w") as fh:
        json.dump(domain_to_spec(domain), fh, indent=2)
        fh.write("\n")
