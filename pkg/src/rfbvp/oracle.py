"""Independent checks of the kernel closed forms and of solver properties.

Each check returns a :class:`VerificationReport`; ``passed`` is exactly
``max_error <= tolerance``. Brute-force tails sum the weight formula
directly and never touch the closed-form exterior sums they are checking.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .discretize import DirichletBC, Domain1D, assemble
from .errors import ParameterError
from .kernel import (
    FractionalParams,
    SchemeWeights,
    build_weight_table,
    tail_sum_left,
    tail_sum_right,
    weights,
)
from .solve import lu_solve

PINNED_ALPHAS = (0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0)
PINNED_TAIL_INDICES = (1, 2, 5, 20)
DEFAULT_K = 10**6
EXACT_REGIME_TOL = 1e-10
# successive-difference ratio must sit below 1 by more than rounding noise
CONVERGENCE_RATIO_TOL = 1.0 - 1e-9


@dataclass(frozen=True)
class VerificationReport:
    check: str
    parameters: dict
    max_error: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def pinned_sweep() -> list[FractionalParams]:
    """(alpha, theta) pairs with theta in {0, +-min(alpha, 2-alpha)/2}."""
    out = []
    for alpha in PINNED_ALPHAS:
        half = min(alpha, 2.0 - alpha) / 2.0
        for theta in sorted({0.0, -half, half}):
            out.append(FractionalParams(alpha, theta))
    return out


def truncation_tolerance(alpha: float, K: int) -> float:
    return max(1e-6, 10.0 * K ** (-alpha))


def bruteforce_tail(
    j: int,
    params: FractionalParams,
    scheme: SchemeWeights | None = None,
    K: int = DEFAULT_K,
    side: str = "right",
) -> float:
    """Partial sum of the weights over offsets ``j+1..K`` (right) or ``-K..-j-1`` (left)."""
    if j < 1:
        raise IndexError(f"j={j} must be >= 1")
    if K < j + 10:
        raise ValueError(f"truncation K={K} must be at least j + 10 = {j + 10}")
    if side == "right":
        ks = np.arange(j + 1, K + 1)
    elif side == "left":
        ks = np.arange(-K, -j)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return float(math.fsum(weights(ks, params, scheme)))


def tails_check(
    params: FractionalParams,
    scheme: SchemeWeights | None = None,
    js=PINNED_TAIL_INDICES,
    K: int = DEFAULT_K,
) -> VerificationReport:
    errors = {}
    for j in js:
        left = abs(tail_sum_left(j, params, scheme) - bruteforce_tail(j, params, scheme, K, "left"))
        right = abs(tail_sum_right(j, params, scheme) - bruteforce_tail(j, params, scheme, K, "right"))
        errors[str(j)] = {"left": left, "right": right}
    worst = max(max(e.values()) for e in errors.values())
    return VerificationReport(
        check="tails",
        parameters=_param_dict(params, scheme, K=K, js=list(js)),
        max_error=worst,
        tolerance=truncation_tolerance(params.alpha, K),
        details={"errors": errors},
    )


def tails_sweep(scheme: SchemeWeights | None = None, K: int = DEFAULT_K) -> list[VerificationReport]:
    return [tails_check(p, scheme, K=K) for p in pinned_sweep()]


def reduction_check(
    scheme: SchemeWeights | None = None, theta: float = 0.0, kmax: int = 50, N: int = 10
) -> VerificationReport:
    """Compare the alpha = 2 weights and system to the classical central scheme."""
    scheme = scheme or SchemeWeights()
    parameters = {"alpha": 2.0, "theta": theta, "lambda2": scheme.lambda2, "kmax": kmax, "N": N}
    try:
        params = FractionalParams(2.0, theta)
    except ParameterError as exc:
        return VerificationReport("reduction", parameters, math.inf, 1e-12, {"error": str(exc)})

    table = build_weight_table(params, scheme, kmax)
    classical = np.zeros(2 * kmax + 1)
    classical[kmax - 1 : kmax + 2] = (1.0, -2.0, 1.0)
    weight_err = float(np.max(np.abs(table.w - classical)))

    bc = DirichletBC(2.0, 1.0)
    system = assemble(Domain1D(0.0, 1.0, N), params, scheme, bc)
    hand = np.eye(N + 1)
    for i in range(1, N):
        hand[i, i - 1 : i + 2] = (1.0, -2.0, 1.0)
    hand_rhs = np.zeros(N + 1)
    hand_rhs[0], hand_rhs[N] = bc.gL, bc.gR
    system_err = float(
        max(np.max(np.abs(system.matrix - hand)), np.max(np.abs(system.rhs - hand_rhs)))
    )
    return VerificationReport(
        "reduction",
        parameters,
        max(weight_err, system_err),
        1e-12,
        {"weight_error": weight_err, "system_error": system_err, "w0": float(table.w_at(0))},
    )


def symmetry_check(
    params: FractionalParams,
    bc: DirichletBC,
    N: int,
    scheme: SchemeWeights | None = None,
    L: float = 0.0,
    R: float = 1.0,
) -> VerificationReport:
    """Solve with (theta, gL, gR) and (-theta, gR, gL); compare node-reversed."""
    domain = Domain1D(L, R, N)
    forward = lu_solve(assemble(domain, params, scheme, bc)).values
    mirrored = lu_solve(assemble(domain, params.mirrored, scheme, bc.swapped)).values
    err = float(np.max(np.abs(forward[::-1] - mirrored)))
    return VerificationReport(
        "symmetry",
        _param_dict(params, scheme, N=N, gL=bc.gL, gR=bc.gR),
        err,
        1e-9,
    )


def convergence_study(
    params: FractionalParams,
    bc: DirichletBC,
    Ns=(32, 64, 128, 256),
    scheme: SchemeWeights | None = None,
    L: float = 0.0,
    R: float = 1.0,
) -> VerificationReport:
    """Self-convergence over nested grids.

    ``d_k`` is the max difference between the solutions on ``Ns[k]`` and
    ``Ns[k+1]`` at the coarse nodes. Passing means the ``d_k`` strictly
    decrease, or all lie below ``1e-10`` (the scheme is exact, e.g. alpha = 2).
    """
    Ns = [int(n) for n in Ns]
    if len(Ns) < 3:
        raise ValueError("need at least three grid sizes")
    for a, b in zip(Ns, Ns[1:]):
        if b <= a or b % a:
            raise ValueError(f"grid sizes must increase and divide one another, got {Ns}")
    sols = [lu_solve(assemble(Domain1D(L, R, n), params, scheme, bc)).values for n in Ns]
    diffs = [
        float(np.max(np.abs(coarse - fine[:: nf // nc])))
        for (coarse, nc), (fine, nf) in zip(zip(sols, Ns), zip(sols[1:], Ns[1:]))
    ]
    orders = [
        math.log2(a / b) if a > 0 and b > 0 else math.nan for a, b in zip(diffs, diffs[1:])
    ]
    details = {"Ns": Ns, "differences": diffs, "empirical_orders": orders}
    if max(diffs) <= EXACT_REGIME_TOL:
        return VerificationReport(
            "convergence",
            _param_dict(params, scheme, gL=bc.gL, gR=bc.gR),
            max(diffs),
            EXACT_REGIME_TOL,
            {**details, "regime": "exact"},
        )
    ratio = max(b / a if a > 0 else math.inf for a, b in zip(diffs, diffs[1:]))
    return VerificationReport(
        "convergence",
        _param_dict(params, scheme, gL=bc.gL, gR=bc.gR),
        ratio,
        CONVERGENCE_RATIO_TOL,
        {**details, "regime": "refinement", "metric": "max successive difference ratio"},
    )


def _param_dict(params: FractionalParams, scheme: SchemeWeights | None, **extra) -> dict:
    scheme = scheme or SchemeWeights()
    return {
        "alpha": params.alpha,
        "theta": params.theta,
        "lambda1": scheme.lambda1,
        "lambda2": scheme.lambda2,
        **extra,
    }
