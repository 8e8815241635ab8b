"""Partition function and boundary correlators of the homogeneous lattice.

All rows share ``lambda``, all columns have ``nu = 0``; the weights are
``a = sinh(lambda + eta)``, ``b = sinh(lambda - eta)``, ``c = sinh(2 eta)``.
The determinants are Hankel matrices of derivatives of

    phi(lambda) = sinh(2 eta) / (sinh(lambda + eta) sinh(lambda - eta))

with, for the correlators, the last column replaced by derivatives in
``e`` (at ``e = 0``) of a ratio of ``sinh`` powers.  Derivatives come from
jet arithmetic.

These determinants cancel roughly ``log2 prod_{n<N} (n!)^2`` bits, so the
evaluation runs at a raised precision (see :func:`required_bits`) and the
result is returned at the caller's precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import numeric as nm
from .errors import DimensionError, PrecisionWarning, SingularParameterError
from .numeric import Jet, jet_sinh

MAX_HOMOGENEOUS_N = 40
GUARD_BITS = 20
ICE_ETA = 1j * math.pi / 6
ICE_LAMBDA = 1j * math.pi / 2


@dataclass(frozen=True)
class HomogeneousParams:
    lam: complex
    eta: complex
    n: int
    m: int | None = None

    def __post_init__(self):
        if not 1 <= self.n <= MAX_HOMOGENEOUS_N:
            raise DimensionError(f"N = {self.n} outside 1..{MAX_HOMOGENEOUS_N}")
        if self.m is not None and not 1 <= self.m <= self.n:
            raise DimensionError(f"M = {self.m} outside 1..{self.n}")


def digits_lost(n: int) -> float:
    """Estimated decimal digits cancelled in the order-``n`` Hankel determinant."""
    return 2 * sum(math.lgamma(k + 1) for k in range(1, n)) / math.log(10)


def required_bits(n: int) -> int:
    """Working precision used for an order-``n`` evaluation.

    53 bits plus the estimated cancellation plus a guard; never below 128
    bits once ``n > 10``.
    """
    lost = digits_lost(n) * math.log2(10)
    bits = 53 + math.ceil(lost) + (GUARD_BITS if n > 3 else 0)
    if n > 10:
        bits = max(bits, 128)
    return bits


def _eval_bits(n: int, bits: int | None) -> int:
    if bits is not None:
        if bits < required_bits(n):
            warnings.warn(f"{bits} bits may be insufficient at N = {n} "
                          f"(about {digits_lost(n):.0f} digits cancel)", PrecisionWarning, stacklevel=3)
        return bits
    return max(nm.working_bits(), required_bits(n))


def _weights(lam, eta):
    a, b, c = nm.sinh(lam + eta), nm.sinh(lam - eta), nm.sinh(2 * eta)
    for name, w in (("sinh(lambda + eta)", a), ("sinh(lambda - eta)", b)):
        if abs(w) < 1e-12:
            raise SingularParameterError(f"{name} vanishes")
    return a, b, c


def phi_derivatives(lam, eta, order: int) -> list:
    """``phi^(k)(lambda)`` for ``k = 0..order``."""
    lam, eta = nm.scalar(lam), nm.scalar(eta)
    e = Jet.variable(0, order)
    jet = nm.sinh(2 * eta) / (jet_sinh(e + (lam + eta)) * jet_sinh(e + (lam - eta)))
    return jet.derivatives()


def hankel_matrix(lam, eta, n: int) -> list[list]:
    """``(Z_hom)[alpha, k] = phi^(alpha + k)(lambda)``, zero-based indices."""
    d = phi_derivatives(lam, eta, 2 * n - 2)
    return [[d[i + k] for k in range(n)] for i in range(n)]


def psi_column(lam, eta, n: int, m: int, kind: str) -> list:
    """Derivatives ``d^j/de^j`` at ``e = 0``, ``j = 0..n-1``, of the last-column kernels.

    ``kind="G"``: ``-sinh(e)^(N-M) sinh(e - 2 eta)^M / sinh(e + lambda - eta)^N``
    ``kind="H"``: ``sinh(e)^(N-M) sinh(e - 2 eta)^(M-1) / sinh(e + lambda - eta)^(N-1)``
    """
    lam, eta = nm.scalar(lam), nm.scalar(eta)
    e = Jet.variable(0, n - 1)
    if kind == "G":
        psi = jet_sinh(e) ** (n - m) * jet_sinh(e - 2 * eta) ** m / jet_sinh(e + (lam - eta)) ** n
        return [-c for c in psi.derivatives()]
    if kind == "H":
        psi = jet_sinh(e) ** (n - m) * jet_sinh(e - 2 * eta) ** (m - 1) / jet_sinh(e + (lam - eta)) ** (n - 1)
        return psi.derivatives()
    raise ValueError(f"unknown kernel kind {kind!r}")


def _z_hom(lam, eta, n):
    a, b, _ = _weights(lam, eta)
    phase, log_mod = nm.logdet(hankel_matrix(lam, eta, n))
    if phase == 0:
        raise SingularParameterError("homogeneous determinant vanishes")
    ab = a * b
    # integer power: the branch of log(ab) drops out
    phase = phase * (ab / abs(ab)) ** (n * n)
    denom = math.prod(math.factorial(k) for k in range(1, n)) ** 2
    log_denom = math.log(denom) if nm.working_bits() == nm.DEFAULT_BITS else nm.log(nm.scalar(denom)).real
    log_mod = log_mod + n * n * nm.log(abs(ab)).real - log_denom
    return phase * nm.exp(log_mod)


def z_hom(lam, eta, n: int, bits: int | None = None):
    """Homogeneous partition function ``Z_N`` at ``(lambda, eta)`` with ``nu = 0``."""
    HomogeneousParams(lam, eta, n)
    with nm.precision(_eval_bits(n, bits)):
        value = _z_hom(nm.scalar(lam), nm.scalar(eta), n)
    return nm.ensure_finite(nm.scalar(value), f"Z_{n}")


def _correlator(lam, eta, n, m, kind):
    a, b, c = _weights(lam, eta)
    zmat = hankel_matrix(lam, eta, n)
    col = psi_column(lam, eta, n, m, kind)
    kmat = [row[:-1] + [col[i]] for i, row in enumerate(zmat)]
    dz = nm.det(zmat)
    if dz == 0:
        raise SingularParameterError("homogeneous determinant vanishes")
    if kind == "G":
        pre = math.factorial(n - 1) / (a ** m * b ** (n - m))
    else:
        pre = math.factorial(n - 1) * c / (a ** m * b ** (n - m + 1))
    return pre * nm.det(kmat) / dz


def g_hom(lam, eta, n: int, m: int, bits: int | None = None):
    """Homogeneous boundary polarization ``G_N^(M)``."""
    HomogeneousParams(lam, eta, n, m)
    with nm.precision(_eval_bits(n, bits)):
        value = _correlator(nm.scalar(lam), nm.scalar(eta), n, m, "G")
    return nm.ensure_finite(nm.scalar(value), f"G_{n}^({m})")


def h_hom(lam, eta, n: int, m: int, bits: int | None = None):
    """Homogeneous probability ``H_N^(M)`` that the boundary line turns at row ``M``."""
    HomogeneousParams(lam, eta, n, m)
    with nm.precision(_eval_bits(n, bits)):
        value = _correlator(nm.scalar(lam), nm.scalar(eta), n, m, "H")
    return nm.ensure_finite(nm.scalar(value), f"H_{n}^({m})")


def ice_point_weight() -> complex:
    """Common value ``i sqrt(3)/2`` of a, b and c at the ice point."""
    return complex(nm.sinh(ICE_LAMBDA + ICE_ETA))


def ice_point_asm(n: int, bits: int | None = None) -> float:
    """Number of ``n x n`` alternating sign matrices from the determinant.

    At ``eta = i pi/6``, ``lambda = i pi/2`` every weight equals
    ``w = i sqrt(3)/2``, so ``Z_N / w^(N^2)`` counts the configurations.
    """
    with nm.precision(_eval_bits(n, bits)):
        lam = nm.scalar(1j) * nm.pi() / 2
        eta = nm.scalar(1j) * nm.pi() / 6
        z = _z_hom(lam, eta, n)
        w = nm.sinh(lam + eta)
        value = z / w ** (n * n)
    value = complex(value)
    if abs(value.imag) > 1e-6 * max(1.0, abs(value.real)):
        raise SingularParameterError(f"ice-point count is not real: {value}")
    return value.real


# ------------------------------------------------- inhomogeneous collapse oracle


def collapsed_params(lam, eta, n: int, delta: float, reverse: bool = False):
    """``lambda_alpha = lambda + alpha delta``, ``nu_k = k delta`` (1-based alpha, k)."""
    from .model import SpectralParams

    lams = [complex(lam) + (a + 1) * delta for a in range(n)]
    nus = [(k + 1) * delta for k in range(n)]
    if reverse:
        lams, nus = lams[::-1], nus[::-1]
    return SpectralParams(lams, nus, eta)


def richardson(values, deltas):
    """Extrapolate ``values[i] ~ F(deltas[i])`` to ``delta = 0`` (Neville, polynomial in delta)."""
    t = list(values)
    h = list(deltas)
    for level in range(1, len(t)):
        for i in range(len(t) - 1, level - 1, -1):
            t[i] = (h[i - level] * t[i] - h[i] * t[i - 1]) / (h[i - level] - h[i])
    return t[-1]


def collapse_limit(evaluate, lam, eta, n: int, delta: float = 1e-3, levels: int = 5,
                   reverse: bool = False, bits: int | None = None):
    """Homogeneous limit of an inhomogeneous evaluator by step halving and extrapolation.

    ``evaluate`` maps :class:`~sixvertex.model.SpectralParams` to a scalar (or
    an object convertible with ``complex``-style arithmetic).  The nearly
    coincident parameters make the inhomogeneous determinants cancel about
    ``N (N - 1) log2(1 / delta)`` bits, which sets the default precision.
    """
    deltas = [delta / 2 ** i for i in range(levels)]
    if bits is None:
        bits = 64 + math.ceil(n * (n - 1) * math.log2(1 / deltas[-1]))
    with warnings.catch_warnings(), nm.precision(max(bits, nm.working_bits())):
        warnings.simplefilter("ignore", category=UserWarning)
        values = []
        for d in deltas:
            v = evaluate(collapsed_params(lam, eta, n, d, reverse))
            values.append(nm.scalar(getattr(v, "value", v)))
        value = richardson(values, deltas)
    return nm.scalar(value)
