"""Closed forms at the free-fermion point ``eta = i pi / 4``.

Real variables ``x`` here correspond to the generic spectral parameters
``i x``; after multiplying every weight by ``-i`` the weights become

    a = sin(lambda - nu + pi/4),  b = sin(lambda - nu - pi/4),  c = 1,

and with ``nu = -pi/4`` the homogeneous weights are ``cos(lambda)``,
``sin(lambda)`` and 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import SpectralParams

ETA_FF = 1j * math.pi / 4
NU_HOMOGENEOUS = -math.pi / 4
LOG_SPACE_ABOVE = 50


@dataclass(frozen=True)
class FreeFermionParams:
    lambdas: tuple
    nus: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))
        object.__setattr__(self, "nus", tuple(float(x) for x in self.nus))
        if len(self.lambdas) != len(self.nus):
            raise ValueError("lambdas and nus must have equal length")

    @classmethod
    def homogeneous(cls, n: int, lam: float) -> "FreeFermionParams":
        return cls([lam] * n, [NU_HOMOGENEOUS] * n)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def to_spectral(self) -> SpectralParams:
        """The generic parameters ``(i lambda, i nu, i pi/4)``."""
        return SpectralParams([1j * x for x in self.lambdas], [1j * x for x in self.nus], ETA_FF)

    def weights(self, alpha: int, k: int) -> tuple[float, float, float]:
        x = self.lambdas[alpha] - self.nus[k]
        return math.sin(x + math.pi / 4), math.sin(x - math.pi / 4), 1.0


def weight_rescaling(n: int) -> complex:
    """Factor ``(-i)^(N^2)`` taking a generic partition function at the
    mapped parameters to the rescaled free-fermion one."""
    return (-1j) ** ((n * n) % 4)


def from_generic_z(z: complex, n: int) -> complex:
    return weight_rescaling(n) * z


def z_ff(p: FreeFermionParams) -> float:
    """Product of ``cos`` over ordered pairs of lambdas and of nus."""
    out = 1.0
    for xs in (p.lambdas, p.nus):
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                out *= math.cos(xs[i] - xs[j])
    return out


def _log_binom(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def h_ff(n: int, m: int, lam: float) -> float:
    """Binomial law: ``C(N-1, M-1) cos^2(lam)^(N-M) sin^2(lam)^(M-1)``."""
    if not 1 <= m <= n:
        raise ValueError(f"M = {m} outside 1..{n}")
    c2, s2 = math.cos(lam) ** 2, math.sin(lam) ** 2
    if n <= LOG_SPACE_ABOVE:
        return math.comb(n - 1, m - 1) * c2 ** (n - m) * s2 ** (m - 1)
    if (c2 == 0 and n - m > 0) or (s2 == 0 and m - 1 > 0):
        return 0.0
    log_val = _log_binom(n - 1, m - 1)
    if n - m:
        log_val += (n - m) * math.log(c2)
    if m - 1:
        log_val += (m - 1) * math.log(s2)
    return math.exp(log_val)


def h_ff_all(n: int, lam: float) -> list[float]:
    return [h_ff(n, m, lam) for m in range(1, n + 1)]


def g_ff(n: int, m: int, lam: float) -> float:
    """Cumulative sum of :func:`h_ff` over rows ``1..M`` (compensated summation)."""
    if not 1 <= m <= n:
        raise ValueError(f"M = {m} outside 1..{n}")
    return math.fsum(h_ff(n, k, lam) for k in range(1, m + 1))


def g_ff_all(n: int, lam: float) -> list[float]:
    hs = h_ff_all(n, lam)
    return [math.fsum(hs[:m]) for m in range(1, n + 1)]


def g_thermo(x: float, lam: float, n: int) -> float:
    """Finite-``N`` polarization at relative height ``x = M / N``.

    Tends to the step ``theta(x - sin^2 lam)`` as ``N`` grows.
    """
    if not 0 < x < 1:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    m = min(max(round(x * n), 1), n)
    return g_ff(n, m, lam)


def homogeneous_spectral(n: int, lam: float) -> SpectralParams:
    """Generic parameters whose rescaled weights are ``cos(lam), sin(lam), 1``."""
    return FreeFermionParams.homogeneous(n, lam).to_spectral()


def homogeneous_lambda(lam: float) -> complex:
    """Homogeneous-module spectral parameter (with ``nu = 0``) for free-fermion ``lam``."""
    return 1j * (lam - NU_HOMOGENEOUS)


def free_fermion_defect(p: FreeFermionParams) -> float:
    """Largest ``|a^2 + b^2 - c^2|`` over the lattice (zero up to roundoff)."""
    worst = 0.0
    for alpha in range(p.n):
        for k in range(p.n):
            a, b, c = p.weights(alpha, k)
            worst = max(worst, abs(a * a + b * b - c * c))
    return worst


def generic_weight_map(lam: float, nu: float) -> tuple[complex, complex, complex]:
    """Generic weights at ``(i lam, i nu, i pi/4)`` multiplied by ``-i``."""
    x = 1j * (lam - nu)
    return (-1j * cmath.sinh(x + ETA_FF), -1j * cmath.sinh(x - ETA_FF), -1j * cmath.sinh(2 * ETA_FF))
