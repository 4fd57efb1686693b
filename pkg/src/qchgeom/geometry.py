"""Local coordinate models of the warped circle-bundle construction.

Charts
------
* base chart: an affine chart of CP^m carrying the Fubini-Study metric with
  holomorphic sectional curvature c0 (real coordinates u_1..u_m, v_1..v_m).
* circle-bundle chart (psi, z): the odd-dimensional bundle metric
  alpha^2 theta x theta + beta^2 h with theta = dpsi + s sigma, d sigma = Omega.
* total-space chart (t, psi, z): the warped metric
  dt^2 + f(t)^2 theta^2 + r(t)^2 h, and its product-mode variant
  dt^2 + f(t)^2 dpsi^2 + h (pitch s = 0, base block unscaled).

All metric and complex-structure components are jet-evaluable so the
curvature layer sees exact first and second derivatives.  The connection
potential is fixed in the rotation-invariant gauge sigma = -(1/4) dK o J for
the Kaehler potential K, which vanishes at the chart origin and satisfies
d sigma = Omega componentwise (this pins its sign).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .jets import Jet2, reciprocal, seed_chart
from .profile import ProfileSolution

CHART_RADIUS_DEFAULT = 4.0
END_MARGIN_FRAC_DEFAULT = 1e-3


class ChartBoundsError(ValueError):
    """Point lies outside the valid region of its chart."""


class ChartKind(enum.Enum):
    TOTAL_WARPED = "total-warped"
    TOTAL_PRODUCT = "total-product"
    BASE = "base"
    CIRCLE_BUNDLE = "circle-bundle"


@dataclass(frozen=True)
class BundleParams:
    """Construction parameters of the total space.

    n is half the real dimension (so dim M = 2n >= 6), the base is complex
    m = n - 1 dimensional with holomorphic sectional curvature c0, and s is
    the fiber pitch d theta = s Omega.  When the integers (k, q) are given
    they must record s = 2k/q; q equals n for the projective-space base.
    """

    n: int
    c0: float
    s: float
    k: int | None = None
    q: int | None = None
    L: float | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need n >= 3 (real dimension >= 6), got n={self.n}")
        if self.c0 <= 0.0:
            raise ValueError(f"base curvature c0 must be positive, got {self.c0}")
        if self.k is not None and self.q is not None:
            if abs(self.s - 2.0 * self.k / self.q) > 1e-12:
                raise ValueError(
                    f"s={self.s} does not match 2k/q = {2.0 * self.k / self.q}")

    @property
    def m(self) -> int:
        return self.n - 1


@dataclass
class ChartPoint:
    """A point of one of the local models."""

    t: float = 0.0
    psi: float = 0.0
    z: np.ndarray = dataclass_field(default_factory=lambda: np.zeros(0))
    chart: ChartKind = ChartKind.TOTAL_WARPED

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=float)


# -- base models --------------------------------------------------------------


class FubiniStudy:
    """Fubini-Study metric on an affine chart of CP^m, curvature c0.

    Real layout (u_1..u_m, v_1..v_m) for complex w_a = u_a + i v_a.  With
    K = (4/c0) log(1 + |w|^2) the components are the real/imaginary parts of
    d_a d_bbar K, which gives holomorphic sectional curvature exactly c0.
    """

    def __init__(self, m: int, c0: float, chart_radius: float = CHART_RADIUS_DEFAULT):
        if m < 1:
            raise ValueError(f"base complex dimension must be >= 1, got {m}")
        if c0 <= 0.0:
            raise ValueError(f"holomorphic sectional curvature must be positive, got {c0}")
        self.m = m
        self.c0 = c0
        self.dim = 2 * m
        self.chart_radius = chart_radius
        j0 = np.zeros((self.dim, self.dim))
        for a in range(m):
            j0[m + a, a] = 1.0   # J du_a = dv_a
            j0[a, m + a] = -1.0  # J dv_a = -du_a
        self.j0 = j0

    def check_bounds(self, z: np.ndarray) -> None:
        rad = float(np.linalg.norm(z))
        if rad >= self.chart_radius:
            raise ChartBoundsError(
                f"|z| = {rad} exceeds chart radius {self.chart_radius}")

    def metric_jets(self, z: list[Jet2]) -> list[list[Jet2]]:
        m = self.m
        u, v = z[:m], z[m:]
        w2 = 1.0 + sum(c * c for c in z)
        inv_w2 = reciprocal(w2)
        inv_w2_sq = inv_w2 * inv_w2
        scale = 4.0 / self.c0
        h = [[None] * self.dim for _ in range(self.dim)]
        for a in range(m):
            for b in range(m):
                re = -(u[a] * u[b] + v[a] * v[b]) * inv_w2_sq
                if a == b:
                    re = re + inv_w2
                re = scale * re
                im = (v[a] * u[b] - u[a] * v[b]) * inv_w2_sq * scale
                h[a][b] = re
                h[m + a][m + b] = re
                h[a][m + b] = im
                h[m + b][a] = im
        return h

    def connection_potential_jets(self, z: list[Jet2]) -> list[Jet2]:
        """sigma with d sigma = Omega, sigma(origin) = 0.

        sigma = -(1/4) dK o J = (2/c0) (u dv - v du) / (1 + |w|^2).
        """
        m = self.m
        w2 = 1.0 + sum(c * c for c in z)
        coef = (2.0 / self.c0) * reciprocal(w2)
        sigma = [None] * self.dim
        for a in range(m):
            sigma[a] = -(z[m + a] * coef)   # du_a slot carries -v_a
            sigma[m + a] = z[a] * coef      # dv_a slot carries +u_a
        return sigma

    def kahler_form_jets(self, z: list[Jet2]) -> list[list[Jet2]]:
        """Omega_ij = Omega(e_i, e_j) = h(J e_i, e_j)."""
        h = self.metric_jets(z)
        d = self.dim
        omega = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                acc = None
                for k in range(d):
                    if self.j0[k, i] == 0.0:
                        continue
                    term = h[k][j] * self.j0[k, i]
                    acc = term if acc is None else acc + term
                omega[i][j] = acc
        return omega


class ProductBase:
    """Block product of Fubini-Study factors (coordinates concatenated).

    With equal-curvature CP^1 factors this is Einstein but does not have
    constant holomorphic sectional curvature: the negative-control base
    showing that Einstein alone does not make the total space QCH.
    """

    def __init__(self, factors: list[FubiniStudy]):
        self.factors = factors
        self.m = sum(f.m for f in factors)
        self.dim = 2 * self.m
        self.chart_radius = min(f.chart_radius for f in factors)
        blocks = [f.j0 for f in factors]
        j0 = np.zeros((self.dim, self.dim))
        off = 0
        for blk in blocks:
            k = blk.shape[0]
            j0[off:off + k, off:off + k] = blk
            off += k
        self.j0 = j0
        self.c0 = factors[0].c0  # reference scale only; not constant curvature

    def check_bounds(self, z: np.ndarray) -> None:
        rad = float(np.linalg.norm(z))
        if rad >= self.chart_radius:
            raise ChartBoundsError(
                f"|z| = {rad} exceeds chart radius {self.chart_radius}")

    def _split(self, z):
        out, off = [], 0
        for f in self.factors:
            out.append(z[off:off + f.dim])
            off += f.dim
        return out

    def metric_jets(self, z: list[Jet2]) -> list[list[Jet2]]:
        d = len(z)
        zero = Jet2.constant(0.0, z[0].dim)
        h = [[zero] * d for _ in range(d)]
        off = 0
        for f, zf in zip(self.factors, self._split(z)):
            hf = f.metric_jets(zf)
            for i in range(f.dim):
                for j in range(f.dim):
                    h[off + i][off + j] = hf[i][j]
            off += f.dim
        return h

    def connection_potential_jets(self, z: list[Jet2]) -> list[Jet2]:
        sigma = []
        for f, zf in zip(self.factors, self._split(z)):
            sigma.extend(f.connection_potential_jets(zf))
        return sigma

    def kahler_form_jets(self, z: list[Jet2]) -> list[list[Jet2]]:
        d = len(z)
        zero = Jet2.constant(0.0, z[0].dim)
        omega = [[zero] * d for _ in range(d)]
        off = 0
        for f, zf in zip(self.factors, self._split(z)):
            of = f.kahler_form_jets(zf)
            for i in range(f.dim):
                for j in range(f.dim):
                    omega[off + i][off + j] = of[i][j]
            off += f.dim
        return omega


# -- frames -------------------------------------------------------------------


@dataclass(frozen=True)
class FrameBasis:
    """g-orthonormal frame rows, plus the structural vectors they come from.

    For total-space charts the rows are ordered (H, JH = xi/f, E_1..E_2m);
    xi is the unnormalized fiber field with theta(xi) = 1 exactly.
    """

    vectors: np.ndarray                 # (d, d) rows = orthonormal frame
    h_vec: np.ndarray | None = None     # unit t-direction
    xi: np.ndarray | None = None        # fiber field, theta(xi) = 1
    jh: np.ndarray | None = None        # xi / f (or xi / alpha on the bundle)

    @property
    def horizontal(self) -> np.ndarray:
        skip = 2 if self.h_vec is not None else (1 if self.jh is not None else 0)
        return self.vectors[skip:]


def _gram_schmidt(rows: list[np.ndarray], g: np.ndarray) -> np.ndarray:
    out = []
    for vec in rows:
        w = vec.astype(float).copy()
        for e in out:
            w -= (e @ g @ w) * e
        nrm = float(np.sqrt(w @ g @ w))
        w /= nrm
        out.append(w)
    return np.vstack(out)


# -- metric fields -------------------------------------------------------------


@dataclass(frozen=True)
class MetricSample:
    """Metric, complex structure and frame at one chart point."""

    g: list                       # (d, d) nested list of Jet2
    J: np.ndarray | None          # (d, d) complex-structure values, if any
    frame: FrameBasis

    def g_values(self) -> np.ndarray:
        return np.array([[j.value for j in row] for row in self.g])


class WarpedBundleMetric:
    """dt^2 + f(t)^2 (dpsi + s sigma)^2 + r(t)^2 h on (0, L) x bundle chart.

    ``product_mode`` drops the pitch (s = 0, theta = dpsi) and the r^2 scaling
    of the base block.  ``warp_scale`` multiplies f everywhere (metric and
    complex structure); any value other than 1 breaks the parallel-J condition
    and serves as a negative control.
    """

    def __init__(self, params: BundleParams, profile: ProfileSolution, base=None,
                 *, product_mode: bool = False, warp_scale: float = 1.0,
                 end_margin_frac: float = END_MARGIN_FRAC_DEFAULT):
        self.params = params
        self.profile = profile
        self.base = base if base is not None else FubiniStudy(params.m, params.c0)
        if 2 * (1 + self.base.m) != 2 * params.n:
            raise ValueError("base dimension does not match bundle parameters")
        self.product_mode = product_mode
        self.warp_scale = warp_scale
        self.s = 0.0 if product_mode else params.s
        self.dim = 2 + self.base.dim
        self.end_margin_frac = end_margin_frac
        self.chart = ChartKind.TOTAL_PRODUCT if product_mode else ChartKind.TOTAL_WARPED
        self._base_cache: dict[bytes, tuple] = {}

    # coordinates are (t, psi, z_1..z_2m)
    def coords(self, point: ChartPoint) -> np.ndarray:
        return np.concatenate(([point.t, point.psi], point.z))

    def point(self, coords: np.ndarray) -> ChartPoint:
        return ChartPoint(t=coords[0], psi=coords[1], z=coords[2:], chart=self.chart)

    def check_bounds(self, point: ChartPoint) -> None:
        margin = self.end_margin_frac * self.profile.L
        if not (margin <= point.t <= self.profile.L - margin):
            raise ChartBoundsError(
                f"t = {point.t} outside interior margin [{margin}, {self.profile.L - margin}]")
        self.base.check_bounds(point.z)

    def _base_at(self, coords: list[Jet2]):
        """Base metric + potential at the z-slice, memoised on the z values.

        Base components depend only on z, so points sharing z (e.g. samples
        along one t-geodesic) reuse one evaluation.
        """
        z = coords[2:]
        key = np.array([c.value for c in z]).tobytes()
        hit = self._base_cache.get(key)
        if hit is None:
            hit = (self.base.metric_jets(z), self.base.connection_potential_jets(z))
            if len(self._base_cache) > 256:
                self._base_cache.clear()
            self._base_cache[key] = hit
        return hit

    def warp_jets(self, t_jet: Jet2) -> tuple[Jet2, Jet2]:
        """(r, f) at a jet-seeded t, with the control scale applied to f."""
        r = self.profile.r_jet(t_jet)
        f = self.profile.warp_jet(t_jet)
        if self.warp_scale != 1.0:
            f = f * self.warp_scale
        return r, f

    def metric_jets(self, coords: list[Jet2]) -> list[list[Jet2]]:
        d = self.dim
        dj = coords[0].dim
        zero = Jet2.constant(0.0, dj)
        r, f = self.warp_jets(coords[0])
        h, sigma = self._base_at(coords)
        f2 = f * f
        g = [[zero] * d for _ in range(d)]
        g[0][0] = Jet2.constant(1.0, dj)
        g[1][1] = f2
        s = self.s
        if s != 0.0:
            f2s = f2 * s
            for i in range(self.base.dim):
                cross = f2s * sigma[i]
                g[1][2 + i] = cross
                g[2 + i][1] = cross
        scale = None if self.product_mode else r * r
        for i in range(self.base.dim):
            for j in range(i, self.base.dim):
                entry = h[i][j] if scale is None else scale * h[i][j]
                if s != 0.0:
                    entry = entry + (f2 * (s * s)) * (sigma[i] * sigma[j])
                g[2 + i][2 + j] = entry
                g[2 + j][2 + i] = entry
        return g

    def complex_structure_jets(self, coords: list[Jet2]) -> list[list[Jet2]]:
        """J with J H = xi/f, J xi = -f H, and the base structure on lifts."""
        d = self.dim
        dj = coords[0].dim
        zero = Jet2.constant(0.0, dj)
        _, f = self.warp_jets(coords[0])
        _, sigma = self._base_at(coords)
        j0 = self.base.j0
        J = [[zero] * d for _ in range(d)]
        J[1][0] = reciprocal(f)
        J[0][1] = -f
        s = self.s
        for i in range(self.base.dim):
            if s != 0.0:
                J[0][2 + i] = -(f * (s * sigma[i]))
                sig_j0 = None
                for k in range(self.base.dim):
                    if j0[k, i] == 0.0:
                        continue
                    term = sigma[k] * j0[k, i]
                    sig_j0 = term if sig_j0 is None else sig_j0 + term
                J[1][2 + i] = -(s * sig_j0)
            for k in range(self.base.dim):
                if j0[k, i] != 0.0:
                    J[2 + k][2 + i] = Jet2.constant(j0[k, i], dj)
        return J

    # -- jet-evaluable fields used by divergence and identity checks ---------

    def h_field(self):
        """The unit t-direction as a constant coordinate field."""
        def field(coords):
            dj = coords[0].dim
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[0] = Jet2.constant(1.0, dj)
            return out
        return field

    def fiber_field(self):
        """The fiber rotation field (theta of it is 1 exactly)."""
        def field(coords):
            dj = coords[0].dim
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[1] = Jet2.constant(1.0, dj)
            return out
        return field

    def jh_field(self):
        """The unit fiber direction xi / f as a jet field."""
        def field(coords):
            dj = coords[0].dim
            _, f = self.warp_jets(coords[0])
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[1] = reciprocal(f)
            return out
        return field

    def section_field(self, c1: float, c2: float):
        """c1 * H + c2 * JH with constant coefficients (a rotated unit section)."""
        def field(coords):
            dj = coords[0].dim
            _, f = self.warp_jets(coords[0])
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[0] = Jet2.constant(c1, dj)
            out[1] = c2 * reciprocal(f)
            return out
        return field

    def lift_field(self, i: int, *, base_unit: bool = False):
        """Horizontal lift of the i-th base coordinate vector as a jet field.

        With ``base_unit`` the lift is scaled to unit length in the base
        metric h (so its g-length is r in warped mode).
        """
        def field(coords):
            dj = coords[0].dim
            h, sigma = self._base_at(coords)
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[2 + i] = Jet2.constant(1.0, dj)
            if self.s != 0.0:
                out[1] = -(self.s * sigma[i])
            if base_unit:
                from .jets import sqrt as jet_sqrt
                scale = reciprocal(jet_sqrt(h[i][i]))
                out = [c * scale for c in out]
            return out
        return field

    def potential_field(self):
        """The Killing potential r(t)^2 / s as a jet scalar field."""
        if self.s == 0.0:
            raise ValueError("the Killing potential r^2/s needs a nonzero pitch")
        def field(coords):
            r, _ = self.warp_jets(coords[0])
            return (r * r) / self.s
        return field

    def frame_at(self, point: ChartPoint, g_values: np.ndarray) -> FrameBasis:
        d = self.dim
        f = self.profile.warp(point.t) * self.warp_scale
        h_vec = np.zeros(d); h_vec[0] = 1.0
        xi = np.zeros(d); xi[1] = 1.0
        jh = xi / f
        lifts = []
        if self.s != 0.0:
            zj = seed_chart(self.coords(point))[2:]
            sigma_vals = [sj.value for sj in self.base.connection_potential_jets(zj)]
        else:
            sigma_vals = [0.0] * self.base.dim
        for i in range(self.base.dim):
            vec = np.zeros(d)
            vec[2 + i] = 1.0
            vec[1] = -self.s * sigma_vals[i]
            lifts.append(vec)
        horizontals = _gram_schmidt(lifts, g_values)
        vectors = np.vstack([h_vec, jh, horizontals])
        return FrameBasis(vectors=vectors, h_vec=h_vec, xi=xi, jh=jh)

    def sample(self, point: ChartPoint) -> MetricSample:
        self.check_bounds(point)
        coords = seed_chart(self.coords(point))
        g = self.metric_jets(coords)
        J = self.complex_structure_jets(coords)
        g_values = np.array([[j.value for j in row] for row in g])
        np.linalg.cholesky(g_values)  # positive definiteness gate
        J_values = np.array([[j.value for j in row] for row in J])
        return MetricSample(g=g, J=J_values, frame=self.frame_at(point, g_values))


class CircleBundleMetric:
    """Odd-dimensional bundle metric alpha^2 theta x theta + beta^2 h on (psi, z)."""

    def __init__(self, alpha: float, beta: float, s: float, base: FubiniStudy):
        if alpha <= 0.0 or beta <= 0.0:
            raise ValueError(f"fiber/base scales must be positive, got {alpha}, {beta}")
        self.alpha = alpha
        self.beta = beta
        self.s = s
        self.base = base
        self.dim = 1 + base.dim
        self.chart = ChartKind.CIRCLE_BUNDLE

    def coords(self, point: ChartPoint) -> np.ndarray:
        return np.concatenate(([point.psi], point.z))

    def point(self, coords: np.ndarray) -> ChartPoint:
        return ChartPoint(psi=coords[0], z=coords[1:], chart=self.chart)

    def check_bounds(self, point: ChartPoint) -> None:
        self.base.check_bounds(point.z)

    def metric_jets(self, coords: list[Jet2]) -> list[list[Jet2]]:
        d = self.dim
        dj = coords[0].dim
        zero = Jet2.constant(0.0, dj)
        z = coords[1:]
        h = self.base.metric_jets(z)
        sigma = self.base.connection_potential_jets(z)
        a2 = self.alpha ** 2
        b2 = self.beta ** 2
        s = self.s
        g = [[zero] * d for _ in range(d)]
        g[0][0] = Jet2.constant(a2, dj)
        for i in range(self.base.dim):
            if s != 0.0:
                cross = (a2 * s) * sigma[i]
                g[0][1 + i] = cross
                g[1 + i][0] = cross
            for j in range(i, self.base.dim):
                entry = b2 * h[i][j]
                if s != 0.0:
                    entry = entry + (a2 * s * s) * (sigma[i] * sigma[j])
                g[1 + i][1 + j] = entry
                g[1 + j][1 + i] = entry
        return g

    complex_structure_jets = None  # no complex structure on the odd-dim chart

    def fiber_field(self):
        def field(coords):
            dj = coords[0].dim
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[0] = Jet2.constant(1.0, dj)
            return out
        return field

    def lift_field(self, i: int):
        """Horizontal lift of the i-th base coordinate vector as a jet field."""
        def field(coords):
            dj = coords[0].dim
            sigma = self.base.connection_potential_jets(coords[1:])
            out = [Jet2.constant(0.0, dj) for _ in range(self.dim)]
            out[1 + i] = Jet2.constant(1.0, dj)
            if self.s != 0.0:
                out[0] = -(self.s * sigma[i])
            return out
        return field

    def frame_at(self, point: ChartPoint, g_values: np.ndarray) -> FrameBasis:
        d = self.dim
        xi = np.zeros(d); xi[0] = 1.0
        xihat = xi / self.alpha
        zj = seed_chart(self.coords(point))[1:]
        sigma_vals = [sj.value for sj in self.base.connection_potential_jets(zj)]
        lifts = []
        for i in range(self.base.dim):
            vec = np.zeros(d)
            vec[1 + i] = 1.0
            vec[0] = -self.s * sigma_vals[i]
            lifts.append(vec)
        horizontals = _gram_schmidt(lifts, g_values)
        return FrameBasis(vectors=np.vstack([xihat, horizontals]),
                          h_vec=None, xi=xi, jh=xihat)

    def sample(self, point: ChartPoint) -> MetricSample:
        self.check_bounds(point)
        coords = seed_chart(self.coords(point))
        g = self.metric_jets(coords)
        g_values = np.array([[j.value for j in row] for row in g])
        np.linalg.cholesky(g_values)
        return MetricSample(g=g, J=None, frame=self.frame_at(point, g_values))


class BaseChartMetric:
    """The base model alone, as a metric field on its own chart."""

    def __init__(self, base):
        self.base = base
        self.dim = base.dim
        self.chart = ChartKind.BASE

    def coords(self, point: ChartPoint) -> np.ndarray:
        return np.asarray(point.z, dtype=float)

    def point(self, coords: np.ndarray) -> ChartPoint:
        return ChartPoint(z=coords, chart=self.chart)

    def check_bounds(self, point: ChartPoint) -> None:
        self.base.check_bounds(point.z)

    def metric_jets(self, coords: list[Jet2]) -> list[list[Jet2]]:
        return self.base.metric_jets(coords)

    def complex_structure_jets(self, coords: list[Jet2]) -> list[list[Jet2]]:
        dj = coords[0].dim
        j0 = self.base.j0
        return [[Jet2.constant(j0[k, i], dj) for i in range(self.dim)]
                for k in range(self.dim)]

    def frame_at(self, point: ChartPoint, g_values: np.ndarray) -> FrameBasis:
        rows = [np.eye(self.dim)[i] for i in range(self.dim)]
        return FrameBasis(vectors=_gram_schmidt(rows, g_values))

    def sample(self, point: ChartPoint) -> MetricSample:
        self.check_bounds(point)
        coords = seed_chart(self.coords(point))
        g = self.metric_jets(coords)
        g_values = np.array([[j.value for j in row] for row in g])
        np.linalg.cholesky(g_values)
        J_values = self.base.j0.copy()
        return MetricSample(g=g, J=J_values, frame=self.frame_at(point, g_values))


class EuclideanMetric:
    """Flat R^d, for oracle tests of the curvature and flow layers."""

    def __init__(self, dim: int):
        self.dim = dim
        self.chart = ChartKind.BASE

    def coords(self, point) -> np.ndarray:
        if isinstance(point, ChartPoint):
            return np.asarray(point.z, dtype=float)
        return np.asarray(point, dtype=float)

    def point(self, coords: np.ndarray):
        return ChartPoint(z=coords, chart=self.chart)

    def check_bounds(self, point) -> None:
        pass

    def metric_jets(self, coords: list[Jet2]) -> list[list[Jet2]]:
        dj = coords[0].dim
        one = Jet2.constant(1.0, dj)
        zero = Jet2.constant(0.0, dj)
        return [[one if i == j else zero for j in range(self.dim)]
                for i in range(self.dim)]

    complex_structure_jets = None

    def frame_at(self, point, g_values) -> FrameBasis:
        return FrameBasis(vectors=np.eye(self.dim))

    def sample(self, point) -> MetricSample:
        coords = seed_chart(self.coords(point))
        g = self.metric_jets(coords)
        return MetricSample(g=g, J=None,
                            frame=self.frame_at(point, np.eye(self.dim)))


# -- module-level operation wrappers -------------------------------------------


def fubini_study(m: int, c0: float, z: np.ndarray):
    """Metric and Kaehler-form components of the curvature-c0 base at z."""
    base = FubiniStudy(m, c0)
    base.check_bounds(np.asarray(z, dtype=float))
    zj = seed_chart(np.asarray(z, dtype=float))
    return base.metric_jets(zj), base.kahler_form_jets(zj)


def connection_form(m: int, c0: float, s: float, z: np.ndarray):
    """(sigma, theta) components on the bundle chart (psi, z).

    sigma carries no dpsi component; theta = dpsi + s sigma, so d theta is s
    times the pulled-back Kaehler form.
    """
    base = FubiniStudy(m, c0)
    base.check_bounds(np.asarray(z, dtype=float))
    coords = seed_chart(np.concatenate(([0.0], np.asarray(z, dtype=float))))
    dj = len(coords)
    sigma_z = base.connection_potential_jets(coords[1:])
    zero = Jet2.constant(0.0, dj)
    sigma = [zero] + sigma_z
    theta = [Jet2.constant(1.0, dj)] + [s * sj for sj in sigma_z]
    return sigma, theta


def assemble_metric(params: BundleParams, profile: ProfileSolution,
                    point: ChartPoint, *, base=None,
                    product_mode: bool = False) -> MetricSample:
    """One-shot warped/product metric sample at a chart point."""
    model = WarpedBundleMetric(params, profile, base, product_mode=product_mode)
    return model.sample(point)


def circle_bundle_metric(alpha: float, beta: float, m: int, c0: float, s: float,
                         point: ChartPoint) -> MetricSample:
    """One-shot odd-dimensional bundle metric sample."""
    model = CircleBundleMetric(alpha, beta, s, FubiniStudy(m, c0))
    return model.sample(point)


def exterior_derivative_2form(form_jets) -> np.ndarray:
    """(d omega)_{ijk} = cyclic sum of jet gradients of a 2-form's components."""
    vals = np.array([[j.value for j in row] for row in form_jets])
    d = vals.shape[0]
    grads = np.array([[form_jets[i][j].gradient for j in range(d)] for i in range(d)])
    dw = np.empty((d, d, d))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                dw[i, j, k] = grads[j, k, i] - grads[i, k, j] + grads[i, j, k]
    return dw


def exterior_derivative_1form(form_jets) -> np.ndarray:
    """(d sigma)_{ij} = d_i sigma_j - d_j sigma_i from jet gradients."""
    d = len(form_jets)
    grads = np.stack([fj.gradient[:d] for fj in form_jets])
    return grads.T - grads
