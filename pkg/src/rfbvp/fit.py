"""Least-squares estimation of (alpha, theta) from an observed profile.

The objective solves the boundary value problem on a fixed grid, linearly
interpolates the nodal solution at the observation abscissae and sums the
squared misfits. Minimisation is a two-stage search: an exhaustive coarse
grid over the admissible region, then Nelder-Mead from the best sample with
every trial point projected back into the region.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .discretize import DirichletBC, Domain1D, assemble, build_grid
from .errors import (
    ConditioningWarning,
    NoFeasiblePoint,
    ParameterError,
    ProfileError,
    SolverError,
)
from .kernel import CONDITIONING_BAND, FractionalParams, SchemeWeights
from .solve import lu_solve

ALPHA_FLOOR = 1e-3


@dataclass(frozen=True)
class ObservedProfile:
    """Observations ``T_obs`` at strictly increasing abscissae inside ``[L, R]``."""

    x: np.ndarray
    T_obs: np.ndarray
    L: float
    R: float

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        T = np.asarray(self.T_obs, dtype=float)
        if x.ndim != 1 or x.shape != T.shape:
            raise ProfileError("x and T_obs must be 1-d arrays of equal length")
        if x.size < 3:
            raise ProfileError(f"a profile needs at least 3 points, got {x.size}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(T))):
            raise ProfileError("profile contains non-finite values")
        if np.any(np.diff(x) <= 0):
            raise ProfileError("profile x values must be strictly increasing")
        L, R = float(self.L), float(self.R)
        if not R > L:
            raise ProfileError(f"profile bounds need R > L, got L={L!r}, R={R!r}")
        if x[0] < L or x[-1] > R:
            raise ProfileError(f"profile x values must lie within [{L}, {R}]")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "T_obs", T)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "R", R)

    @classmethod
    def from_points(cls, points, L: float | None = None, R: float | None = None):
        """Build from ``(x, T_obs)`` pairs; bounds default to the extreme abscissae."""
        arr = np.asarray(list(points), dtype=float).reshape(-1, 2)
        x, T = arr[:, 0], arr[:, 1]
        if x.size == 0:
            raise ProfileError("empty profile")
        return cls(x, T, x[0] if L is None else L, x[-1] if R is None else R)

    def infer_bc(self) -> DirichletBC:
        """Boundary values read off the first/last observation when they sit on L and R."""
        if self.x[0] != self.L or self.x[-1] != self.R:
            raise ProfileError(
                "boundary values cannot be inferred: the profile does not include both endpoints"
            )
        return DirichletBC(self.T_obs[0], self.T_obs[-1])


@dataclass(frozen=True)
class FitConfig:
    N_fit: int = 200
    n_alpha: int = 40
    n_theta: int = 21
    alpha_min: float = 0.04
    ftol: float = 1e-6
    xtol: float = 1e-6
    max_iter: int = 400
    scheme: SchemeWeights = field(default_factory=SchemeWeights)

    def __post_init__(self):
        if self.N_fit < 16:
            raise ValueError(f"N_fit={self.N_fit} must be >= 16")
        if self.n_alpha < 2 or self.n_theta < 1:
            raise ValueError("coarse grid needs n_alpha >= 2 and n_theta >= 1")
        if not (self.ftol > 0 and self.xtol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not 0 < self.alpha_min < 2:
            raise ValueError("alpha_min must lie in (0, 2)")


@dataclass(frozen=True)
class FitResult:
    alpha_star: float
    theta_star: float
    sse: float
    iterations: int
    converged: bool
    n_evaluations: int = 0
    # rows of (alpha, theta, loss) for every coarse sample
    coarse: np.ndarray = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "alpha_star": self.alpha_star,
            "theta_star": self.theta_star,
            "sse": self.sse,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def solve_on_grid(alpha, theta, domain: Domain1D, bc: DirichletBC, scheme=None) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        params = FractionalParams(alpha, theta)
    return lu_solve(assemble(domain, params, scheme, bc)).values


def loss(alpha, theta, profile: ObservedProfile, bc: DirichletBC | None = None, config=None) -> float:
    """Sum of squared misfits; ``inf`` when (alpha, theta) is inadmissible or the solve fails."""
    config = config or FitConfig()
    bc = bc or profile.infer_bc()
    domain = Domain1D(profile.L, profile.R, config.N_fit)
    try:
        values = solve_on_grid(alpha, theta, domain, bc, config.scheme)
    except (ParameterError, SolverError):
        return math.inf
    model = np.interp(profile.x, build_grid(domain), values)
    sse = float(np.sum((model - profile.T_obs) ** 2))
    return sse if math.isfinite(sse) else math.inf


def coarse_grid(config: FitConfig) -> list[tuple[float, float]]:
    """Samples covering the admissible region, skipping the alpha = 1 band.

    theta runs over ``s * min(alpha, 2 - alpha)`` for ``s`` evenly spaced in
    ``[-1, 1]``, so every sample is admissible by construction.
    """
    samples = []
    s = np.linspace(-1.0, 1.0, config.n_theta) if config.n_theta > 1 else np.zeros(1)
    for alpha in np.linspace(config.alpha_min, 2.0, config.n_alpha):
        if abs(alpha - 1.0) < CONDITIONING_BAND:
            continue
        bound = min(alpha, 2.0 - alpha)
        samples.extend((float(alpha), float(si * bound)) for si in s)
    return samples


def project(alpha: float, theta: float) -> tuple[float, float]:
    """Nearest admissible point (alpha first, then theta clamped to its bound)."""
    alpha = min(max(alpha, ALPHA_FLOOR), 2.0)
    if abs(alpha - 1.0) < CONDITIONING_BAND:
        alpha = 1.0 + CONDITIONING_BAND if alpha >= 1.0 else 1.0 - CONDITIONING_BAND
    bound = min(alpha, 2.0 - alpha)
    return alpha, min(max(theta, -bound), bound) + 0.0


def fit(profile: ObservedProfile, bc: DirichletBC | None = None, config: FitConfig | None = None) -> FitResult:
    config = config or FitConfig()
    bc = bc or profile.infer_bc()
    n_eval = 0

    def objective(a, t):
        nonlocal n_eval
        n_eval += 1
        return loss(a, t, profile, bc, config)

    coarse = np.array([(a, t, objective(a, t)) for a, t in coarse_grid(config)])
    finite = np.isfinite(coarse[:, 2])
    if not finite.any():
        raise NoFeasiblePoint("every coarse-grid sample was infeasible or failed to solve")
    # lexsort: last key is primary -> loss, then alpha, then theta
    order = np.lexsort((coarse[:, 1], coarse[:, 0], coarse[:, 2]))
    a0, t0, f0 = coarse[order[0]]

    def penalised(z):
        a, t = project(*z)
        return objective(a, t) + (z[0] - a) ** 2 + (z[1] - t) ** 2

    da = (2.0 - config.alpha_min) / max(config.n_alpha - 1, 1) / 2
    dt = max(min(a0, 2.0 - a0) / max(config.n_theta - 1, 1), 0.01)
    simplex = np.array([[a0, t0], [a0 - da, t0], [a0, t0 + dt]])
    res = scipy.optimize.minimize(
        penalised,
        np.array([a0, t0]),
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": config.xtol,
            "fatol": config.ftol,
            "maxiter": config.max_iter,
        },
    )
    a_star, t_star = project(*res.x)
    sse = objective(a_star, t_star)
    if not sse <= f0:
        a_star, t_star, sse = float(a0), float(t0), float(f0)
    return FitResult(
        alpha_star=float(a_star),
        theta_star=float(t_star),
        sse=float(sse),
        iterations=int(res.nit),
        converged=bool(res.success),
        n_evaluations=n_eval,
        coarse=coarse,
    )


def synthetic_profile(
    alpha: float,
    theta: float,
    *,
    n_points: int = 21,
    L: float = 0.0,
    R: float = 1.0,
    gL: float = 2.0,
    gR: float = 1.0,
    N: int = 200,
    noise: float = 0.0,
    seed: int | None = None,
    scheme: SchemeWeights | None = None,
) -> ObservedProfile:
    """Profile sampled from a solve at ``n_points`` evenly spaced grid nodes.

    Sampling sits exactly on nodes when ``n_points - 1`` divides ``N``.
    Optional Gaussian noise is added to interior points only.
    """
    domain = Domain1D(L, R, N)
    values = solve_on_grid(alpha, theta, domain, DirichletBC(gL, gR), scheme)
    idx = np.unique(np.round(np.linspace(0, N, n_points)).astype(int))
    x = build_grid(domain)[idx]
    T = values[idx].copy()
    if noise:
        rng = np.random.default_rng(seed)
        T[1:-1] += rng.normal(0.0, noise, size=T.size - 2)
    return ObservedProfile(x, T, L, R)
