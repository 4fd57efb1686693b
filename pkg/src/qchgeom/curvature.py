"""Levi-Civita connection and curvature from jet-evaluable metric fields.

Everything here is pointwise: the metric components arrive as second-order
jets, so Christoffel symbols come from the gradient slots and their first
derivatives from the Hessian slots.  No nested finite differencing appears
anywhere on the Riemann path.

Index conventions (fixed once, used everywhere):

    gamma[k, i, j]      = Gamma^k_{ij}
    dgamma[k, i, j, l]  = d_l Gamma^k_{ij}
    riemann[i, j, k, l] = g( R(e_i, e_j) e_k , e_l ),
                          R(X, Y)Z = ([nabla_X, nabla_Y] - nabla_[X,Y]) Z
    ricci[j, k]         = g^{il} riemann[i, j, k, l]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .jets import Jet2, pack_matrix, seed_chart


@dataclass(frozen=True)
class Connection:
    """Christoffel symbols and their first derivatives at a point."""

    gamma: np.ndarray    # (d, d, d)
    dgamma: np.ndarray   # (d, d, d, d), last slot = derivative direction


@dataclass(frozen=True)
class Curvature4:
    """Fully lowered curvature tensor at a point."""

    components: np.ndarray  # (d, d, d, d)

    def apply(self, X, Y, Z, W) -> float:
        return float(np.einsum("ijkl,i,j,k,l->", self.components, X, Y, Z, W))


class PointAnalysis:
    """Lazy bundle of pointwise data for one (field, point) pair.

    Expensive pieces (metric jets, curvature) are computed once and shared by
    all downstream checks at the point.
    """

    def __init__(self, field, point):
        self.field = field
        self.point = point

    @cached_property
    def coords(self) -> list[Jet2]:
        return seed_chart(self.field.coords(self.point))

    @cached_property
    def metric(self):
        """(values, grads, hessians) of the metric components."""
        return pack_matrix(self.field.metric_jets(self.coords))

    @property
    def g(self) -> np.ndarray:
        return self.metric[0]

    @cached_property
    def g_inv(self) -> np.ndarray:
        return np.linalg.inv(self.g)

    @cached_property
    def connection(self) -> Connection:
        g, dg, d2g = self.metric
        ginv = self.g_inv
        # brackets[l, i, j] = d_i g_{jl} + d_j g_{il} - d_l g_{ij}
        brackets = (np.einsum("jli->lij", dg) + np.einsum("ilj->lij", dg)
                    - np.einsum("ijl->lij", dg))
        gamma = 0.5 * np.einsum("kl,lij->kij", ginv, brackets)
        dbrackets = (np.einsum("jlim->lijm", d2g) + np.einsum("iljm->lijm", d2g)
                     - np.einsum("ijlm->lijm", d2g))
        dginv = -np.einsum("ka,abm,bl->klm", ginv, dg, ginv)
        dgamma = 0.5 * (np.einsum("klm,lij->kijm", dginv, brackets)
                        + np.einsum("kl,lijm->kijm", ginv, dbrackets))
        return Connection(gamma=gamma, dgamma=dgamma)

    @cached_property
    def riemann(self) -> Curvature4:
        conn = self.connection
        gamma, dgamma = conn.gamma, conn.dgamma
        # R^b_{ijk} = d_i Gamma^b_{jk} - d_j Gamma^b_{ik}
        #             + Gamma^b_{ia} Gamma^a_{jk} - Gamma^b_{ja} Gamma^a_{ik}
        r_up = (np.einsum("bjki->bijk", dgamma) - np.einsum("bikj->bijk", dgamma)
                + np.einsum("bia,ajk->bijk", gamma, gamma)
                - np.einsum("bja,aik->bijk", gamma, gamma))
        return Curvature4(np.einsum("bl,bijk->ijkl", self.g, r_up))

    @cached_property
    def ricci(self) -> np.ndarray:
        return np.einsum("il,ijkl->jk", self.g_inv, self.riemann.components)

    @cached_property
    def complex_structure(self):
        """(values, grads) of J, or None when the chart has no J."""
        builder = getattr(self.field, "complex_structure_jets", None)
        if builder is None:
            return None
        jets = builder(self.coords)
        values, grads, _ = pack_matrix(jets)
        return values, grads

    @cached_property
    def frame(self):
        return self.field.frame_at(self.point, self.g)


# -- operations ----------------------------------------------------------------


def christoffel(field, point) -> Connection:
    """Levi-Civita Christoffel symbols (and first derivatives) at a point."""
    return PointAnalysis(field, point).connection


def riemann(field, point) -> Curvature4:
    return PointAnalysis(field, point).riemann


def ricci(field, point) -> np.ndarray:
    return PointAnalysis(field, point).ricci


def sectional_curvature(R4: Curvature4, g: np.ndarray, X, Y) -> float:
    """K(X, Y) = R(X, Y, Y, X) / (|X|^2 |Y|^2 - g(X, Y)^2)."""
    gxx = float(X @ g @ X)
    gyy = float(Y @ g @ Y)
    gxy = float(X @ g @ Y)
    area2 = gxx * gyy - gxy * gxy
    if area2 <= 0.0:
        raise ValueError("sectional curvature of a degenerate plane")
    return R4.apply(X, Y, Y, X) / area2


def holomorphic_sectional_curvature(R4: Curvature4, g: np.ndarray,
                                    J: np.ndarray, X) -> float:
    """R(X, JX, JX, X) / |X|^4."""
    norm2 = float(X @ g @ X)
    if norm2 <= 0.0:
        raise ValueError("holomorphic sectional curvature of a null vector")
    JX = J @ X
    return R4.apply(X, JX, JX, X) / norm2 ** 2


def nabla_j(analysis: PointAnalysis) -> np.ndarray:
    """(nabla J)[j, k, i] = component k of (nabla_{e_j} J)(e_i)."""
    J, dJ = analysis.complex_structure
    gamma = analysis.connection.gamma
    return (np.einsum("kij->jki", dJ)
            + np.einsum("kja,ai->jki", gamma, J)
            - np.einsum("aji,ka->jki", gamma, J))


def max_frame_component_3tensor(T: np.ndarray, frame: np.ndarray,
                                g: np.ndarray) -> float:
    """max |T| over orthonormal frame slots; middle slot is contravariant."""
    lowered = frame @ g  # frame covectors as rows
    vals = np.einsum("aj,jki,bi,ck->abc", frame, T, frame, lowered)
    return float(np.abs(vals).max())


def covariant_vector_derivative(analysis: PointAnalysis, x_field) -> tuple:
    """(X values, nabla X) with (nabla X)[k, i] = nabla_i X^k, from a jet field."""
    jets = x_field(analysis.coords)
    values = np.array([j.value for j in jets])
    grads = np.stack([j.gradient for j in jets])  # grads[k, i] = d_i X^k
    nabla = grads + np.einsum("kia,a->ki", analysis.connection.gamma, values)
    return values, nabla


def killing_deviation(analysis: PointAnalysis, x_field) -> np.ndarray:
    """(L_X g)_{ij} = g(nabla_i X, e_j) + g(nabla_j X, e_i) in coordinates."""
    _, nabla = covariant_vector_derivative(analysis, x_field)
    lowered = np.einsum("kj,ki->ij", analysis.g, nabla)
    return lowered + lowered.T


def hessian_form(analysis: PointAnalysis, scalar_field) -> np.ndarray:
    """(nabla d tau)_{ij} = d_i d_j tau - Gamma^k_{ij} d_k tau."""
    tau = scalar_field(analysis.coords)
    return tau.hessian - np.einsum("kij,k->ij", analysis.connection.gamma,
                                   tau.gradient)


def div_e(analysis: PointAnalysis, x_field, e_frame: np.ndarray) -> float:
    """Trace of (nabla X)^flat over an orthonormal frame of the complement E."""
    _, nabla = covariant_vector_derivative(analysis, x_field)
    lowered = np.einsum("kj,ki->ij", analysis.g, nabla)  # (nabla_i X)^flat_j
    return float(np.einsum("ai,aj,ij->", e_frame, e_frame, lowered))


def div_e_vector(analysis: PointAnalysis, values: np.ndarray,
                 grads: np.ndarray, e_frame: np.ndarray) -> float:
    """div_E for a field given directly by values and first derivatives."""
    nabla = grads + np.einsum("kia,a->ki", analysis.connection.gamma, values)
    lowered = np.einsum("kj,ki->ij", analysis.g, nabla)
    return float(np.einsum("ai,aj,ij->", e_frame, e_frame, lowered))


def constant_vector_field(values: np.ndarray):
    """A coordinate-constant vector field as a jet field."""
    vals = np.asarray(values, dtype=float)

    def field(coords):
        dj = coords[0].dim
        return [Jet2.constant(v, dj) for v in vals]

    return field


def metric_inverse_jets(analysis: PointAnalysis):
    """(values, grads) of g^{-1} by differentiating the inverse relation."""
    _, dg, _ = analysis.metric
    ginv = analysis.g_inv
    dginv = -np.einsum("ka,abm,bl->klm", ginv, dg, ginv)
    return ginv, dginv


def j_gradient_field(analysis: PointAnalysis, scalar_field):
    """First-order jets of X = J grad(tau) at the analysis point.

    Only values and first derivatives are propagated (the Hessian slots of the
    returned jets are zero); sufficient for Killing-deviation checks, which
    read first derivatives of the field.
    """
    tau = scalar_field(analysis.coords)
    ginv, dginv = metric_inverse_jets(analysis)
    J, dJ = analysis.complex_structure
    grad_v = ginv @ tau.gradient
    grad_d = (np.einsum("klm,l->km", dginv, tau.gradient)
              + np.einsum("kl,lm->km", ginv, tau.hessian))
    x_vals = J @ grad_v
    x_grads = np.einsum("kam,a->km", dJ, grad_v) + np.einsum("ka,am->km", J, grad_d)
    dj = analysis.coords[0].dim
    zero_h = np.zeros((dj, dj))
    return [Jet2(x_vals[k], x_grads[k], zero_h) for k in range(x_vals.shape[0])]


def second_bianchi_residual(field, point, directions, step: float = 1e-5) -> float:
    """Cyclic covariant-derivative sum over three directions, by differencing.

    nabla_a R_{ijkl} is assembled from central differences of the curvature at
    coordinate-displaced points plus the Christoffel correction terms; this is
    the one check that consumes third derivatives of the metric, so it runs at
    a looser tolerance than the jet-exact identities.
    """
    base = PointAnalysis(field, point)
    R0 = base.riemann.components
    gamma = base.connection.gamma
    coords0 = field.coords(point)
    d = coords0.shape[0]

    dR = np.empty((d,) + R0.shape)
    for a in range(d):
        plus = coords0.copy(); plus[a] += step
        minus = coords0.copy(); minus[a] -= step
        Rp = PointAnalysis(field, field.point(plus)).riemann.components
        Rm = PointAnalysis(field, field.point(minus)).riemann.components
        dR[a] = (Rp - Rm) / (2.0 * step)
    covR = (dR
            - np.einsum("mai,mjkl->aijkl", gamma, R0)
            - np.einsum("maj,imkl->aijkl", gamma, R0)
            - np.einsum("mak,ijml->aijkl", gamma, R0)
            - np.einsum("mal,ijkm->aijkl", gamma, R0))

    A, B, C = directions
    cyc = (np.einsum("aijkl,a,i,j->kl", covR, A, B, C)
           + np.einsum("aijkl,a,i,j->kl", covR, B, C, A)
           + np.einsum("aijkl,a,i,j->kl", covR, C, A, B))
    return float(np.abs(cyc).max())
