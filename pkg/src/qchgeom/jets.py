"""Second-order forward-mode jets.

A ``Jet2`` is a scalar together with its exact gradient and Hessian with
respect to a fixed set of chart coordinates.  Arithmetic propagates both
derivative orders through the exact product, quotient and chain rules, so any
quantity assembled from jet-seeded coordinates (metric components, connection
potentials, warp factors) carries machine-precision first and second
derivatives.  Curvature needs second derivatives of the metric; nested finite
differencing cannot reach the tolerances used downstream, jets can.
"""

from __future__ import annotations

import math

import numpy as np


class JetDomainError(ValueError):
    """Raised when a lifted function is evaluated outside its domain."""


def _check_same_dim(a: "Jet2", b: "Jet2") -> None:
    if a.gradient.shape[0] != b.gradient.shape[0]:
        raise ValueError(
            f"jet dimension mismatch: {a.gradient.shape[0]} vs {b.gradient.shape[0]}"
        )


class Jet2:
    """Truncated second-order jet: value, gradient (d,), symmetric Hessian (d, d).

    Instances are immutable values; every operation returns a new jet.  All
    Hessians produced by the arithmetic below are symmetric by construction
    (they are built from outer-product pairs and symmetric combinations), so
    downstream consumers may rely on exact symmetry.
    """

    __slots__ = ("value", "gradient", "hessian")

    def __init__(self, value: float, gradient: np.ndarray, hessian: np.ndarray):
        self.value = float(value)
        self.gradient = gradient
        self.hessian = hessian

    # -- constructors -------------------------------------------------------

    @classmethod
    def variable(cls, index: int, value: float, dim: int) -> "Jet2":
        """Seed coordinate ``index`` of a ``dim``-dimensional chart at ``value``."""
        if not 0 <= index < dim:
            raise IndexError(f"coordinate index {index} out of range for dim {dim}")
        g = np.zeros(dim)
        g[index] = 1.0
        return cls(value, g, np.zeros((dim, dim)))

    @classmethod
    def constant(cls, value: float, dim: int) -> "Jet2":
        return cls(float(value), np.zeros(dim), np.zeros((dim, dim)))

    @property
    def dim(self) -> int:
        return self.gradient.shape[0]

    def __repr__(self) -> str:
        return f"Jet2({self.value!r}, grad={self.gradient!r})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            _check_same_dim(self, other)
            return Jet2(self.value + other.value, self.gradient + other.gradient,
                        self.hessian + other.hessian)
        return Jet2(self.value + other, self.gradient, self.hessian)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            _check_same_dim(self, other)
            return Jet2(self.value - other.value, self.gradient - other.gradient,
                        self.hessian - other.hessian)
        return Jet2(self.value - other, self.gradient, self.hessian)

    def __rsub__(self, other):
        return Jet2(other - self.value, -self.gradient, -self.hessian)

    def __neg__(self):
        return Jet2(-self.value, -self.gradient, -self.hessian)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            _check_same_dim(self, other)
            cross = np.outer(self.gradient, other.gradient)
            return Jet2(
                self.value * other.value,
                self.value * other.gradient + other.value * self.gradient,
                self.value * other.hessian + other.value * self.hessian
                + cross + cross.T,
            )
        return Jet2(self.value * other, self.gradient * other, self.hessian * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            _check_same_dim(self, other)
            if other.value == 0.0:
                raise JetDomainError("jet division by zero value")
            q = self.value / other.value
            qg = (self.gradient - q * other.gradient) / other.value
            cross = np.outer(qg, other.gradient)
            qh = (self.hessian - q * other.hessian - cross - cross.T) / other.value
            return Jet2(q, qg, qh)
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("jet exponent must be an integer; use sqrt/exp/log otherwise")
        return powi(self, exponent)


def seed_chart(x: np.ndarray) -> list[Jet2]:
    """Seed every entry of ``x`` as an independent coordinate of one chart."""
    x = np.asarray(x, dtype=float)
    d = x.shape[0]
    return [Jet2.variable(i, x[i], d) for i in range(d)]


def compose(a: Jet2, value: float, d1: float, d2: float) -> Jet2:
    """Chain rule through a scalar function with supplied derivatives at ``a.value``."""
    outer = np.outer(a.gradient, a.gradient)
    return Jet2(value, d1 * a.gradient, d1 * a.hessian + d2 * outer)


def sqrt(a: Jet2) -> Jet2:
    if a.value <= 0.0:
        raise JetDomainError(f"sqrt of non-positive jet value {a.value}")
    v = math.sqrt(a.value)
    d1 = 0.5 / v
    return compose(a, v, d1, -0.5 * d1 / a.value)


def log(a: Jet2) -> Jet2:
    if a.value <= 0.0:
        raise JetDomainError(f"log of non-positive jet value {a.value}")
    inv = 1.0 / a.value
    return compose(a, math.log(a.value), inv, -inv * inv)


def exp(a: Jet2) -> Jet2:
    v = math.exp(a.value)
    return compose(a, v, v, v)


def reciprocal(a: Jet2) -> Jet2:
    if a.value == 0.0:
        raise JetDomainError("reciprocal of zero jet value")
    inv = 1.0 / a.value
    return compose(a, inv, -inv * inv, 2.0 * inv ** 3)


def powi(a: Jet2, k: int) -> Jet2:
    """Integer power by the monomial chain rule."""
    if k < 0:
        return powi(reciprocal(a), -k)
    if k == 0:
        return Jet2.constant(1.0, a.dim)
    if k == 1:
        return a
    v = a.value
    return compose(a, v ** k, k * v ** (k - 1), k * (k - 1) * v ** (k - 2))


# -- bulk packing helpers ----------------------------------------------------


def pack_vector(jets) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack a sequence of jets into (values (k,), grads (k,d), hessians (k,d,d))."""
    values = np.array([j.value for j in jets])
    grads = np.stack([j.gradient for j in jets])
    hess = np.stack([j.hessian for j in jets])
    return values, grads, hess


def pack_matrix(jets) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack a matrix of jets into (values (k,k), grads (k,k,d), hessians (k,k,d,d))."""
    values = np.array([[j.value for j in row] for row in jets])
    grads = np.stack([np.stack([j.gradient for j in row]) for row in jets])
    hess = np.stack([np.stack([j.hessian for j in row]) for row in jets])
    return values, grads, hess
