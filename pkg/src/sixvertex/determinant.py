"""Determinant, reduction, recursion and permutation-sum formulas.

All functions take a :class:`~sixvertex.model.SpectralParams` with pairwise
distinct lambdas and nus.  ``M`` (the row of a boundary correlator) is
1-based and counts rows from the top, as in the operator definitions.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Literal

from . import numeric as nm
from .errors import DegenerateNormalizationError, DimensionError, NearSingularWarning, SingularParameterError
from .model import SpectralParams, a_eig, f_fun, phi, ratio_gf

NEAR_COINCIDENT = 1e-6
MAX_PERM_N = 8


@dataclass(frozen=True)
class CorrelatorResult:
    value: complex
    quantity: Literal["Z", "G", "H"]
    n: int
    m: int | None
    method: str
    precision_bits: int

    def __complex__(self):
        return complex(self.value)

    def to_dict(self) -> dict:
        v = complex(self.value)
        return {"quantity": self.quantity, "n": self.n, "m": self.m, "method": self.method,
                "value_re": v.real, "value_im": v.imag, "precision_bits": self.precision_bits}


@dataclass(frozen=True)
class KernelColumn:
    """First column of the correlator matrices: ``h_M`` or ``g_M`` at each lambda."""

    kind: Literal["h_M", "g_M"]
    m: int
    values: tuple


def _result(value, quantity, params, m, method) -> CorrelatorResult:
    nm.ensure_finite(value, f"{quantity}_{params.n}")
    return CorrelatorResult(value, quantity, params.n, m, method, nm.working_bits())


def _check_generic(params: SpectralParams) -> None:
    params.require_distinct()
    if params.min_separation() < NEAR_COINCIDENT:
        warnings.warn("nearly coincident spectral parameters; consider the homogeneous "
                      "evaluators in sixvertex.homogeneous", NearSingularWarning, stacklevel=3)


def _check_m(params: SpectralParams, m: int) -> None:
    if not 1 <= m <= params.n:
        raise DimensionError(f"M = {m} outside 1..{params.n}")


def s(x):
    return nm.sinh(x)


def phi_matrix(params: SpectralParams) -> list[list]:
    lam, nu, eta = params.scalars()
    return [[phi(x, y, eta) for y in nu] for x in lam]


def _z_det_value(params: SpectralParams):
    lam, nu, eta = params.scalars()
    n = params.n
    num = nm.product(s(l - v + eta) * s(l - v - eta) for l in lam for v in nu)
    den = nm.product(s(lam[b] - lam[a]) for a in range(n) for b in range(a + 1, n))
    den *= nm.product(s(nu[k] - nu[j]) for k in range(n) for j in range(k + 1, n))
    return num / den * nm.det(phi_matrix(params))


def z_det(params: SpectralParams) -> CorrelatorResult:
    """Partition function from the determinant of ``phi(lambda_alpha, nu_k)``."""
    _check_generic(params)
    return _result(_z_det_value(params), "Z", params, None, "det")


def z_perm(params: SpectralParams) -> CorrelatorResult:
    """Partition function as the sum over all N! permutations of the lambdas."""
    n = params.n
    if n > MAX_PERM_N:
        raise DimensionError(f"permutation sum is capped at N = {MAX_PERM_N}")
    params.require_distinct()
    lam, nu, eta = params.scalars()
    total = nm.zero()
    for perm in itertools.permutations(range(n)):
        term = nm.one()
        for a in range(n):
            for b in range(a + 1, n):
                lp_a, lp_b = lam[perm[a]], lam[perm[b]]
                term *= f_fun(lp_a, lp_b, eta) * s(lp_b - nu[a] - eta) * s(lp_a - nu[b] + eta)
        total += term
    return _result(s(2 * eta) ** n * total, "Z", params, None, "perm")


def recursion_rhs(params: SpectralParams, j: int):
    """Right-hand side of the recursion expressing Z_N through Z_{N-1}.

    ``j`` is the 1-based column removed from the lattice.
    """
    n = params.n
    if n < 2:
        raise DimensionError("the recursion needs N >= 2")
    if not 1 <= j <= n:
        raise DimensionError(f"column j = {j} outside 1..{n}")
    lam, nu, eta = params.scalars()
    jj = j - 1
    total = nm.zero()
    for beta in range(n):
        term = nm.product(s(lam[a] - nu[jj] - eta) for a in range(n) if a != beta)
        term *= nm.product(s(lam[beta] - nu[k] + eta) for k in range(n) if k != jj)
        term *= nm.product(f_fun(lam[beta], lam[g], eta) for g in range(n) if g != beta)
        total += term * _z_det_value(params.without(row=beta, col=jj))
    return s(2 * eta) * total


def recursion_residual(params: SpectralParams, j: int) -> float:
    """``|Z_N - RHS| / |Z_N|`` for the recursion removing column ``j``."""
    _check_generic(params)
    rhs = recursion_rhs(params, j)
    lhs = _z_det_value(params)
    return float(abs(lhs - rhs) / abs(lhs))


# --------------------------------------------------------------- correlators


def h_function(params: SpectralParams, m: int, x):
    """``h_M(x)``: vanishes at ``x = lambda_{M+1}, ..., lambda_N``."""
    (lam, nu, eta), n = params.scalars(), params.n
    x = nm.scalar(x)
    num = nm.product(s(lam[g] - x + 2 * eta) for g in range(m - 1))
    num *= nm.product(s(lam[g] - x) for g in range(m, n))
    return num / nm.product(s(x - nu[k] - eta) for k in range(1, n))


def g_function(params: SpectralParams, m: int, x):
    """``g_M(x)``; at ``M = N`` there are no zeros among the lambdas."""
    (lam, nu, eta), n = params.scalars(), params.n
    x = nm.scalar(x)
    num = nm.product(s(lam[g] - x + 2 * eta) for g in range(m))
    num *= nm.product(s(lam[g] - x) for g in range(m, n))
    return num / nm.product(s(x - nu[k] - eta) for k in range(n))


def h_kernel(params: SpectralParams, m: int) -> KernelColumn:
    return KernelColumn("h_M", m, tuple(h_function(params, m, x) for x in params.scalars()[0]))


def g_kernel(params: SpectralParams, m: int) -> KernelColumn:
    return KernelColumn("g_M", m, tuple(g_function(params, m, x) for x in params.scalars()[0]))


def _replace_first_column(matrix: list[list], column) -> list[list]:
    return [[c] + row[1:] for row, c in zip(matrix, column)]


def h_prefactor(params: SpectralParams, m: int):
    """Scalar in front of ``det H / det Z``.

    The second product of the denominator runs over rows ``M..N``, so row
    ``M`` contributes both ``sinh(lambda_M - nu_1 +/- eta)``.
    """
    (lam, nu, eta), n = params.scalars(), params.n
    num = s(2 * eta) * nm.product(s(nu[0] - nu[k]) for k in range(1, n))
    den = nm.product(s(lam[a] - nu[0] + eta) for a in range(m))
    den *= nm.product(s(lam[a] - nu[0] - eta) for a in range(m - 1, n))
    return num / den


def g_prefactor(params: SpectralParams, m: int):
    (lam, nu, eta), n = params.scalars(), params.n
    num = nm.product(s(nu[0] - nu[k]) for k in range(1, n))
    den = nm.product(s(lam[a] - nu[0] + eta) for a in range(m))
    den *= nm.product(s(lam[a] - nu[0] - eta) for a in range(m, n))
    return num / den


def _correlator_det(params, m, kernel, prefactor):
    _check_generic(params)
    _check_m(params, m)
    zmat = phi_matrix(params)
    dz = nm.det(zmat)
    if abs(dz) == 0:
        raise DegenerateNormalizationError("det of the phi matrix vanishes")
    dk = nm.det(_replace_first_column(zmat, kernel(params, m).values))
    return prefactor(params, m) * dk / dz


def h_det(params: SpectralParams, m: int) -> CorrelatorResult:
    """Probability that the boundary line turns at row ``m``, determinant form."""
    return _result(_correlator_det(params, m, h_kernel, h_prefactor), "H", params, m, "det")


def g_det(params: SpectralParams, m: int) -> CorrelatorResult:
    """Boundary polarization at row ``m``, determinant form."""
    return _result(_correlator_det(params, m, g_kernel, g_prefactor), "G", params, m, "det")


def _reduced_z(params: SpectralParams, beta: int):
    return _z_det_value(params.without(row=beta, col=0))


def _z_normalizer(params: SpectralParams):
    z = _z_det_value(params)
    if abs(z) == 0:
        raise DegenerateNormalizationError("partition function vanishes")
    return z


def h_reduction(params: SpectralParams, m: int) -> CorrelatorResult:
    """H_N^(M) as a sum of M partition functions on (N-1)x(N-1) sublattices."""
    _check_generic(params)
    _check_m(params, m)
    n = params.n
    if n < 2:
        raise DimensionError("reduction formulas need N >= 2")
    lam, nu, eta = params.scalars()
    pre = s(2 * eta)
    pre *= nm.product(s(lam[a] - nu[0] - eta) for a in range(m - 1))
    pre *= nm.product(s(lam[a] - nu[0] + eta) for a in range(m, n))
    rest = range(1, n)
    total = nm.zero()
    for beta in range(m):
        term = a_eig(lam[beta], params, rest) * ratio_gf(lam[beta], lam[m - 1], eta)
        term *= nm.product(f_fun(lam[beta], lam[g], eta) for g in range(m) if g != beta)
        total += term * _reduced_z(params, beta)
    return _result(pre * total / _z_normalizer(params), "H", params, m, "reduction")


def g_reduction(params: SpectralParams, m: int) -> CorrelatorResult:
    """G_N^(M) as a sum of M partition functions on (N-1)x(N-1) sublattices."""
    _check_generic(params)
    _check_m(params, m)
    n = params.n
    if n < 2:
        raise DimensionError("reduction formulas need N >= 2")
    lam, nu, eta = params.scalars()
    pre = nm.product(s(lam[a] - nu[0] - eta) for a in range(m))
    pre *= nm.product(s(lam[a] - nu[0] + eta) for a in range(m, n))
    rest = range(1, n)
    total = nm.zero()
    for beta in range(m):
        den = s(lam[beta] - nu[0] - eta)
        if abs(den) < 1e-300:
            raise SingularParameterError("sinh(lambda_beta - nu_1 - eta) vanishes")
        term = a_eig(lam[beta], params, rest) * s(2 * eta) / den
        term *= nm.product(f_fun(lam[beta], lam[g], eta) for g in range(m) if g != beta)
        total += term * _reduced_z(params, beta)
    return _result(pre * total / _z_normalizer(params), "G", params, m, "reduction")


def partial_fraction_check(params: SpectralParams, alpha: int) -> float:
    """Residual of the partial-fraction expansion in the nus at row ``alpha`` (1-based).

    Left side: ``prod_{g != alpha} sinh(lambda_g - lambda_alpha + 2 eta)``
    over ``prod_j sinh(lambda_alpha - nu_j - eta)``; right side: its
    expansion in simple fractions ``1 / sinh(lambda_alpha - nu_k - eta)``.
    """
    (lam, nu, eta), n = params.scalars(), params.n
    a = alpha - 1
    x = lam[a]
    others = [lam[g] for g in range(n) if g != a]
    lhs = nm.product(s(y - x + 2 * eta) for y in others)
    lhs /= nm.product(s(x - v - eta) for v in nu)
    rhs = nm.zero()
    for k in range(n):
        term = nm.product(s(y - nu[k] + eta) for y in others)
        term /= nm.product(s(nu[k] - nu[j]) for j in range(n) if j != k)
        rhs += term / s(x - nu[k] - eta)
    return float(abs(lhs - rhs))
