"""Direct dense solve of the assembled system with residual diagnostics."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .discretize import (
    AssembledSystem,
    DirichletBC,
    Domain1D,
    exterior_terms,
    assemble,
    build_grid,
    toeplitz_apply,
)
from .errors import DimensionMismatch, NonFinite, SingularMatrix
from .kernel import FractionalParams, SchemeWeights

PIVOT_FLOOR = 1e-300


@dataclass(frozen=True)
class Solution:
    domain: Domain1D
    values: np.ndarray = field(repr=False)
    residual_inf: float
    params: FractionalParams
    scheme: SchemeWeights
    bc: DirichletBC

    @property
    def nodes(self) -> np.ndarray:
        return build_grid(self.domain)

    def boundedness_excess(self, rel_tol: float = 0.02) -> float:
        """How far the profile leaves ``[min(g), max(g)]`` widened by ``rel_tol*|gL-gR|``.

        Zero means the profile stays inside the band. Nothing guarantees a
        maximum principle for this scheme, so callers report a positive value
        as a diagnostic.
        """
        lo, hi = sorted((self.bc.gL, self.bc.gR))
        slack = rel_tol * (hi - lo)
        below = (lo - slack) - self.values.min()
        above = self.values.max() - (hi + slack)
        return float(max(0.0, below, above))


def residual_inf(system: AssembledSystem, values) -> float:
    """``max |A @ values - rhs|`` evaluated without the dense matrix."""
    values = np.asarray(values, dtype=float)
    N = system.domain.N
    if values.shape != (N + 1,):
        raise DimensionMismatch(f"expected {N + 1} values, got shape {values.shape}")
    r = np.empty(N + 1)
    r[0] = values[0] - system.rhs[0]
    r[N] = values[N] - system.rhs[N]
    r[1:N] = toeplitz_apply(system.table, values)[1:N] + exterior_terms(system.table, system.bc, N)
    return float(np.max(np.abs(r)))


def lu_solve(system: AssembledSystem) -> Solution:
    """Gaussian elimination with partial pivoting (LAPACK ``getrf``/``getrs``)."""
    A, b = system.matrix, system.rhs
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise NonFinite("assembled system contains NaN or Inf entries")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.any(pivots < PIVOT_FLOOR):
        k = int(np.argmin(pivots))
        raise SingularMatrix(f"pivot {k} has magnitude {pivots[k]:.3e}")
    values = scipy.linalg.lu_solve((lu, piv), b, check_finite=False)
    if not np.all(np.isfinite(values)):
        raise NonFinite("solution contains NaN or Inf")
    # identity boundary rows: the exact values are known
    N = system.domain.N
    values[0] = b[0]
    values[N] = b[N]
    values.setflags(write=False)
    return Solution(
        domain=system.domain,
        values=values,
        residual_inf=residual_inf(system, values),
        params=system.params,
        scheme=system.scheme,
        bc=system.bc,
    )


def solve_bvp(
    alpha: float,
    theta: float = 0.0,
    *,
    L: float = 0.0,
    R: float = 1.0,
    N: int = 200,
    gL: float = 2.0,
    gR: float = 1.0,
    lambda1: float = 0.0,
    lambda2: float = 0.0,
) -> Solution:
    """Convenience wrapper: validate, assemble and solve in one call.

    >>> sol = solve_bvp(2.0, 0.0, N=4, gL=2.0, gR=1.0)
    >>> [round(float(v), 12) for v in sol.values]
    [2.0, 1.75, 1.5, 1.25, 1.0]
    """
    system = assemble(
        Domain1D(L, R, N),
        FractionalParams(alpha, theta),
        SchemeWeights(lambda1, lambda2),
        DirichletBC(gL, gR),
    )
    return lu_solve(system)
