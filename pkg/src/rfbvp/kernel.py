"""Riesz-Feller difference weights and their closed-form exterior sums.

The discrete operator at node ``i`` is ``h**-alpha * sum_k T[i+k] * w[k]``.
Weights come in two branches: a first-derivative based scheme for
``0 < alpha < 1`` (weighting parameter ``lambda1``) and a second-derivative
based scheme for ``1 < alpha <= 2`` (weighting parameter ``lambda2``).
Both branches are second/third-difference stencils of ``|k|**(1-alpha)`` or
``|k|**(2-alpha)``, so the sums over a semi-infinite run of offsets
telescope to the closed forms in :func:`tail_sum_left` /
:func:`tail_sum_right`.

Example
-------
>>> from rfbvp.kernel import validate_params, SchemeWeights, weight
>>> p = validate_params(2.0, 0.0)
>>> [weight(k, p, SchemeWeights()) for k in (-1, 0, 1, 2)]
[1.0, -2.0, 1.0, 0.0]
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    ConditioningWarning,
    DomainError,
    OrderOutOfRange,
    OrderSingular,
    SkewnessOutOfRange,
)

#: |alpha - 1| below this is rejected outright.
SINGULAR_BAND = 1e-6
#: |alpha - 1| below this triggers a :class:`ConditioningWarning`.
CONDITIONING_BAND = 5e-3
SKEWNESS_SLACK = 1e-12


@dataclass(frozen=True)
class FractionalParams:
    """Validated order ``alpha`` and skewness ``theta`` of the operator.

    Construction enforces ``0 < alpha <= 2``, ``alpha != 1`` and
    ``|theta| <= min(alpha, 2 - alpha)``.
    """

    alpha: float
    theta: float = 0.0

    def __post_init__(self):
        alpha = float(self.alpha)
        theta = float(self.theta)
        if not (math.isfinite(alpha) and 0.0 < alpha <= 2.0):
            raise OrderOutOfRange(f"order alpha={alpha!r} must satisfy 0 < alpha <= 2")
        if abs(alpha - 1.0) < SINGULAR_BAND:
            raise OrderSingular(
                f"order alpha={alpha!r}: the Riesz-Feller operator is singular at alpha = 1"
            )
        bound = min(alpha, 2.0 - alpha)
        if not math.isfinite(theta) or abs(theta) > bound + SKEWNESS_SLACK:
            raise SkewnessOutOfRange(
                f"skewness theta={theta!r} violates |theta| <= min(alpha, 2 - alpha) = {bound!r}"
            )
        if abs(alpha - 1.0) < CONDITIONING_BAND:
            warnings.warn(
                f"alpha={alpha!r} is within {CONDITIONING_BAND} of the singular order 1; "
                "side coefficients are large and the system may be ill conditioned",
                ConditioningWarning,
                stacklevel=3,
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "theta", theta)

    @property
    def mirrored(self) -> FractionalParams:
        """The same order with skewness negated."""
        return FractionalParams(self.alpha, -self.theta)


@dataclass(frozen=True)
class SchemeWeights:
    """Weighting parameters of the underlying difference schemes.

    ``lambda1`` is used for ``alpha < 1`` and ``lambda2`` for ``alpha > 1``.
    ``lambda2 = 0`` is required for the classical ``[1, -2, 1]`` stencil at
    ``alpha = 2``.
    """

    lambda1: float = 0.0
    lambda2: float = 0.0

    def __post_init__(self):
        for name in ("lambda1", "lambda2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name}={value!r} must be finite")
            object.__setattr__(self, name, value)


class SideCoefficients(NamedTuple):
    cL: float
    cR: float


def validate_params(alpha: float, theta: float) -> FractionalParams:
    return FractionalParams(alpha, theta)


def side_coefficients(params: FractionalParams) -> SideCoefficients:
    """Left/right weights of the Weyl derivatives in the Riesz-Feller operator.

    ``cL = sin((alpha - theta) pi / 2) / sin(alpha pi)`` and likewise ``cR``
    with ``alpha + theta``. At ``alpha = 2`` both numerator and denominator
    vanish and the limit ``-1/2`` is returned.
    """
    alpha, theta = params.alpha, params.theta
    if alpha == 2.0:
        return SideCoefficients(-0.5, -0.5)
    denom = math.sin(alpha * math.pi)
    cL = math.sin((alpha - theta) * math.pi / 2.0) / denom
    cR = math.sin((alpha + theta) * math.pi / 2.0) / denom
    return SideCoefficients(cL, cR)


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma_fn requires x > 0, got {x!r}")
    return math.gamma(x)


def _pow(base, p):
    # 0**p = 0 for p > 0 and 0**0 = 1; numpy already follows this convention.
    return np.power(np.asarray(base, dtype=float), p)


def _far_stencil(m, params: FractionalParams, scheme: SchemeWeights):
    """Bracketed factor of the |k| >= 2 weight formula, before the side coefficient."""
    alpha = params.alpha
    if alpha < 1.0:
        p, l1 = 1.0 - alpha, scheme.lambda1
        return (
            _pow(m + 2, p) * l1
            + _pow(m + 1, p) * (2.0 - 3.0 * l1)
            + _pow(m, p) * (3.0 * l1 - 4.0)
            + _pow(m - 1, p) * (2.0 - l1)
        )
    p, l2 = 2.0 - alpha, scheme.lambda2
    return (
        _pow(m + 2, p) * (2.0 - l2)
        + _pow(m + 1, p) * (4.0 * l2 - 6.0)
        + _pow(m, p) * (6.0 - 6.0 * l2)
        + _pow(m - 1, p) * (4.0 * l2 - 2.0)
        + _pow(m - 2, p) * (-l2)
    )


def _prefactor(alpha: float) -> float:
    if alpha < 1.0:
        return -1.0 / (2.0 * gamma_fn(2.0 - alpha))
    return -1.0 / (2.0 * gamma_fn(3.0 - alpha))


def _near_terms(params: FractionalParams, scheme: SchemeWeights, c: SideCoefficients):
    """Bracketed factors for k = -1, 0, 1."""
    alpha = params.alpha
    cL, cR = c
    if alpha < 1.0:
        p, l1 = 1.0 - alpha, scheme.lambda1
        one = 3.0**p * l1 + 2.0**p * (2.0 - 3.0 * l1) + 3.0 * l1 - 4.0
        zero = (2.0**p * l1 - 3.0 * l1 + 2.0) * (cL + cR)
        return one * cL + l1 * cR, zero, one * cR + l1 * cL
    p, l2 = 2.0 - alpha, scheme.lambda2
    one = 3.0**p * (2.0 - l2) + 2.0**p * (4.0 * l2 - 6.0) - 6.0 * l2 + 6.0
    zero = (2.0**p * (2.0 - l2) + 4.0 * l2 - 6.0) * (cL + cR)
    return one * cL + (2.0 - l2) * cR, zero, one * cR + (2.0 - l2) * cL


def weights(ks, params: FractionalParams, scheme: SchemeWeights | None = None) -> np.ndarray:
    """Vectorised :func:`weight` over an integer array of offsets."""
    scheme = scheme or SchemeWeights()
    ks = np.asarray(ks)
    if ks.dtype.kind not in "iu":
        raise TypeError("offsets must be integers")
    c = side_coefficients(params)
    minus_one, zero, plus_one = _near_terms(params, scheme, c)
    m = np.abs(ks).astype(float)
    far = _far_stencil(np.maximum(m, 2.0), params, scheme)
    bracket = np.select(
        [ks <= -2, ks == -1, ks == 0, ks == 1],
        [far * c.cL, minus_one, zero, plus_one],
        default=far * c.cR,
    )
    return _prefactor(params.alpha) * bracket


def weight(k: int, params: FractionalParams, scheme: SchemeWeights | None = None) -> float:
    """Weight ``w_k`` multiplying ``T[i+k]`` in the discrete operator at node ``i``."""
    return float(weights(np.array([int(k)]), params, scheme)[0])


def _tail_factor(js, params: FractionalParams, scheme: SchemeWeights) -> np.ndarray:
    """Shared factor r_j of both exterior sums (multiplied by cL or cR)."""
    j = np.asarray(js, dtype=float)
    alpha = params.alpha
    if alpha < 1.0:
        p, l1 = 1.0 - alpha, scheme.lambda1
        num = _pow(j + 2, p) * l1 + _pow(j + 1, p) * (2.0 - 2.0 * l1) + _pow(j, p) * (l1 - 2.0)
        return num / (2.0 * gamma_fn(2.0 - alpha))
    p, l2 = 2.0 - alpha, scheme.lambda2
    num = (
        _pow(j + 2, p) * (2.0 - l2)
        + _pow(j + 1, p) * (3.0 * l2 - 4.0)
        + _pow(j, p) * (2.0 - 3.0 * l2)
        + _pow(j - 1, p) * l2
    )
    return num / (2.0 * gamma_fn(3.0 - alpha))


def _check_tail_index(j) -> None:
    if np.any(np.asarray(j) < 1):
        raise IndexError(f"tail sums are defined for j >= 1, got {j!r}")


def tail_sum_left(j: int, params: FractionalParams, scheme: SchemeWeights | None = None) -> float:
    """``sum(w_k for k <= -j-1)`` in closed form."""
    _check_tail_index(j)
    scheme = scheme or SchemeWeights()
    return side_coefficients(params).cL * float(_tail_factor(j, params, scheme))


def tail_sum_right(j: int, params: FractionalParams, scheme: SchemeWeights | None = None) -> float:
    """``sum(w_k for k >= j+1)`` in closed form."""
    _check_tail_index(j)
    scheme = scheme or SchemeWeights()
    return side_coefficients(params).cR * float(_tail_factor(j, params, scheme))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class WeightTable:
    """Weights ``w[-kmax..kmax]`` and exterior sums ``sL[1..kmax]``, ``sR[1..kmax]``.

    Arrays are stored 0-based and read-only: ``w[k + kmax]`` is ``w_k`` and
    ``sL[j - 1]`` is the left sum for index ``j``. Use :meth:`w_at`,
    :meth:`sL_at` and :meth:`sR_at` for offset-based access.
    """

    params: FractionalParams
    scheme: SchemeWeights
    kmax: int
    w: np.ndarray = field(repr=False)
    sL: np.ndarray = field(repr=False)
    sR: np.ndarray = field(repr=False)

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.kmax, self.kmax + 1)

    def w_at(self, k):
        k = np.asarray(k)
        if np.any(np.abs(k) > self.kmax):
            raise IndexError(f"offset {k!r} outside table range +-{self.kmax}")
        return self.w[k + self.kmax]

    def sL_at(self, j):
        j = np.asarray(j)
        if np.any((j < 1) | (j > self.kmax)):
            raise IndexError(f"tail index {j!r} outside 1..{self.kmax}")
        return self.sL[j - 1]

    def sR_at(self, j):
        j = np.asarray(j)
        if np.any((j < 1) | (j > self.kmax)):
            raise IndexError(f"tail index {j!r} outside 1..{self.kmax}")
        return self.sR[j - 1]


def build_weight_table(
    params: FractionalParams, scheme: SchemeWeights | None = None, kmax: int = 2
) -> WeightTable:
    scheme = scheme or SchemeWeights()
    kmax = int(kmax)
    if kmax < 2:
        raise ValueError(f"kmax={kmax} must be >= 2")
    w = weights(np.arange(-kmax, kmax + 1), params, scheme)
    js = np.arange(1, kmax + 1)
    r = _tail_factor(js, params, scheme)
    c = side_coefficients(params)
    return WeightTable(
        params=params,
        scheme=scheme,
        kmax=kmax,
        w=_frozen(w),
        # + 0.0 turns -0.0 into 0.0
        sL=_frozen(c.cL * r + 0.0),
        sR=_frozen(c.cR * r + 0.0),
    )
