"""Uniform grid, bounded-domain operator and linear-system assembly.

Nodes outside ``[L, R]`` are virtual: they carry the nearest boundary value,
so their contribution collapses into ``gL * sL_i + gR * sR_{N-i}``. Interior
rows of the assembled matrix are Toeplitz (``A[i, j] = w_{j-i}``), bordered
by identity rows that pin ``T_0 = gL`` and ``T_N = gR``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidDomain
from .kernel import FractionalParams, SchemeWeights, WeightTable, build_weight_table


@dataclass(frozen=True)
class Domain1D:
    L: float
    R: float
    N: int

    def __post_init__(self):
        L, R = float(self.L), float(self.R)
        if not (math.isfinite(L) and math.isfinite(R)) or not R > L:
            raise InvalidDomain(f"domain requires finite R > L, got L={L!r}, R={R!r}")
        if int(self.N) != self.N or self.N < 2:
            raise InvalidDomain(f"domain requires an integer N >= 2 sub-intervals, got N={self.N!r}")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return (self.R - self.L) / self.N


@dataclass(frozen=True)
class DirichletBC:
    gL: float
    gR: float

    def __post_init__(self):
        for name in ("gL", "gR"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"boundary value {name}={value!r} must be finite")
            object.__setattr__(self, name, value)

    @property
    def swapped(self) -> DirichletBC:
        return DirichletBC(self.gR, self.gL)


@dataclass(frozen=True)
class GridFunction:
    domain: Domain1D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.domain.N + 1,):
            raise DimensionMismatch(
                f"grid function needs {self.domain.N + 1} values, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class AssembledSystem:
    """Dense bordered-Toeplitz system ``matrix @ T = rhs``."""

    domain: Domain1D
    params: FractionalParams
    scheme: SchemeWeights
    bc: DirichletBC
    table: WeightTable = field(repr=False)
    matrix: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.domain.N + 1


def build_grid(domain: Domain1D) -> np.ndarray:
    """Node coordinates ``L + i*h``; the last node is set to ``R`` exactly."""
    x = domain.L + np.arange(domain.N + 1) * domain.h
    x[-1] = domain.R
    return x


def _table_for(domain: Domain1D, params, scheme) -> WeightTable:
    return build_weight_table(params, scheme, kmax=max(domain.N, 2))


def toeplitz_apply(table: WeightTable, values: np.ndarray) -> np.ndarray:
    """``sum_{k=-i}^{N-i} T[i+k] w_k`` for every node ``i`` (no exterior terms).

    ``table.kmax`` must be at least ``len(values) - 1``.
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    if table.kmax < n - 1:
        raise DimensionMismatch(f"weight table kmax={table.kmax} too small for {n} nodes")
    padded = np.zeros(n + 2 * table.kmax)
    padded[table.kmax : table.kmax + n] = values
    return np.correlate(padded, table.w, mode="valid")


def exterior_terms(table: WeightTable, bc: DirichletBC, N: int) -> np.ndarray:
    i = np.arange(1, N)
    return bc.gL * table.sL_at(i) + bc.gR * table.sR_at(N - i)


def apply_rf_operator(
    fn: GridFunction,
    params: FractionalParams,
    scheme: SchemeWeights | None,
    bc: DirichletBC,
    table: WeightTable | None = None,
) -> np.ndarray:
    """Discrete Riesz-Feller derivative at the ``N - 1`` interior nodes.

    Values at virtual nodes left of ``L`` equal ``bc.gL`` and right of ``R``
    equal ``bc.gR``; ``fn.values`` supplies the in-domain nodes (including the
    endpoints, which normally coincide with the boundary values).
    """
    scheme = scheme or SchemeWeights()
    domain = fn.domain
    N = domain.N
    if table is None:
        table = _table_for(domain, params, scheme)
    elif table.params != params or table.scheme != scheme or table.kmax < N:
        raise DimensionMismatch("weight table does not match params/scheme or is too short")
    inner = toeplitz_apply(table, fn.values)[1:N]
    return (inner + exterior_terms(table, bc, N)) / domain.h**params.alpha


def assemble(
    domain: Domain1D,
    params: FractionalParams,
    scheme: SchemeWeights | None,
    bc: DirichletBC,
) -> AssembledSystem:
    scheme = scheme or SchemeWeights()
    N = domain.N
    table = _table_for(domain, params, scheme)

    rows = np.arange(1, N)[:, None]
    cols = np.arange(N + 1)[None, :]
    matrix = np.zeros((N + 1, N + 1))
    matrix[1:N] = table.w_at(cols - rows)
    matrix[0, 0] = 1.0
    matrix[N, N] = 1.0

    rhs = np.empty(N + 1)
    rhs[0] = bc.gL
    rhs[N] = bc.gR
    rhs[1:N] = -exterior_terms(table, bc, N)

    matrix.setflags(write=False)
    rhs.setflags(write=False)
    return AssembledSystem(domain, params, scheme, bc, table, matrix, rhs)
