"""Spectral parameters, vertex weights and the scalar functions built on them.

Index conventions used throughout the package (zero-based in code):

* ``lambdas[0]`` belongs to the top row, ``lambdas[N-1]`` to the bottom row;
* ``nus[0]`` belongs to the rightmost column, ``nus[N-1]`` to the leftmost.

The weight of the vertex at row ``alpha`` and column ``k`` is

    a = sinh(lambda_alpha - nu_k + eta)
    b = sinh(lambda_alpha - nu_k - eta)
    c = sinh(2 eta)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import numeric as nm
from .errors import InvalidInputError, SingularParameterError

POLE_THRESHOLD = 1e-12


def _guard(den, what: str, scale: float = 1.0):
    if abs(den) < POLE_THRESHOLD * scale:
        raise SingularParameterError(f"{what} vanishes (|{what}| = {abs(den):.3g})")
    return den


@dataclass(frozen=True)
class SpectralParams:
    """Row variables ``lambdas``, column variables ``nus`` and crossing parameter ``eta``."""

    lambdas: tuple
    nus: tuple
    eta: complex

    def __post_init__(self):
        lam = tuple(complex(x) for x in self.lambdas)
        nu = tuple(complex(x) for x in self.nus)
        if len(lam) != len(nu):
            raise InvalidInputError(f"{len(lam)} row variables but {len(nu)} column variables")
        if not lam:
            raise InvalidInputError("lattice size must be at least 1")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "nus", nu)
        object.__setattr__(self, "eta", complex(self.eta))

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def scalars(self) -> tuple[list, list, complex]:
        """``(lambdas, nus, eta)`` converted to the working precision.

        Differences of nearly equal parameters must be formed from these, not
        from the stored doubles.
        """
        sc = nm.scalar
        return [sc(x) for x in self.lambdas], [sc(x) for x in self.nus], sc(self.eta)

    def min_separation(self) -> float:
        """Smallest pairwise distance within the lambdas and within the nus."""
        gaps = [abs(x - y) for xs in (self.lambdas, self.nus)
                for i, x in enumerate(xs) for y in xs[i + 1:]]
        return min(gaps, default=float("inf"))

    def require_distinct(self, threshold: float = POLE_THRESHOLD) -> None:
        """Raise if two lambdas or two nus coincide (``sinh`` of the gap below threshold)."""
        for name, xs in (("lambda", self.lambdas), ("nu", self.nus)):
            for i in range(len(xs)):
                for j in range(i + 1, len(xs)):
                    if abs(nm.sinh(nm.scalar(xs[i]) - nm.scalar(xs[j]))) < threshold:
                        raise SingularParameterError(
                            f"{name}_{i + 1} and {name}_{j + 1} coincide modulo i*pi")

    def without(self, row: int | None = None, col: int | None = None) -> "SpectralParams":
        """Drop row ``row`` and/or column ``col`` (zero-based)."""
        lam = [x for i, x in enumerate(self.lambdas) if i != row]
        nu = [x for k, x in enumerate(self.nus) if k != col]
        return SpectralParams(lam, nu, self.eta)

    def reversed(self) -> "SpectralParams":
        return SpectralParams(self.lambdas[::-1], self.nus[::-1], self.eta)


class VertexWeights(NamedTuple):
    a: complex
    b: complex
    c: complex


def vertex_weights(lam, nu, eta) -> VertexWeights:
    lam, nu, eta = nm.scalar(lam), nm.scalar(nu), nm.scalar(eta)
    x = lam - nu
    return VertexWeights(nm.sinh(x + eta), nm.sinh(x - eta), nm.sinh(2 * eta))


def phi(lam, nu, eta):
    """``sinh(2 eta) / (sinh(lam - nu + eta) sinh(lam - nu - eta))``, i.e. ``c / (a b)``."""
    w = vertex_weights(lam, nu, eta)
    _guard(w.a, "sinh(lambda - nu + eta)")
    _guard(w.b, "sinh(lambda - nu - eta)")
    return w.c / (w.a * w.b)


def f_fun(lam_p, lam, eta):
    """``f(lam', lam) = sinh(lam - lam' + 2 eta) / sinh(lam - lam')``."""
    lam_p, lam, eta = nm.scalar(lam_p), nm.scalar(lam), nm.scalar(eta)
    d = lam - lam_p
    return nm.sinh(d + 2 * eta) / _guard(nm.sinh(d), "sinh(lambda - lambda')")


def g_fun(lam_p, lam, eta):
    """``g(lam', lam) = sinh(2 eta) / sinh(lam - lam')``."""
    lam_p, lam, eta = nm.scalar(lam_p), nm.scalar(lam), nm.scalar(eta)
    d = lam - lam_p
    return nm.sinh(2 * eta) / _guard(nm.sinh(d), "sinh(lambda - lambda')")


def ratio_gf(lam_p, lam, eta):
    """``g(lam', lam) / f(lam', lam) = sinh(2 eta) / sinh(lam - lam' + 2 eta)``.

    Regular at ``lam' == lam`` where it equals 1 (for ``sinh(2 eta) != 0``).
    """
    lam_p, lam, eta = nm.scalar(lam_p), nm.scalar(lam), nm.scalar(eta)
    d = lam - lam_p
    return nm.sinh(2 * eta) / _guard(nm.sinh(d + 2 * eta), "sinh(lambda - lambda' + 2 eta)")


def _columns(params: SpectralParams, columns: Iterable[int] | None) -> list:
    nus = [nm.scalar(x) for x in params.nus]
    return nus if columns is None else [nus[k] for k in columns]


def a_eig(lam, params: SpectralParams, columns: Iterable[int] | None = None):
    """Vacuum eigenvalue ``prod_k sinh(lam - nu_k + eta)``, optionally over a column subset.

    ``columns`` holds zero-based column indices; ``range(1, n)`` gives the
    two-site eigenvalue that omits the first column.
    """
    lam, eta = nm.scalar(lam), nm.scalar(params.eta)
    return nm.product(nm.sinh(lam - nu + eta) for nu in _columns(params, columns))


def d_eig(lam, params: SpectralParams, columns: Iterable[int] | None = None):
    lam, eta = nm.scalar(lam), nm.scalar(params.eta)
    return nm.product(nm.sinh(lam - nu - eta) for nu in _columns(params, columns))


# ------------------------------------------------------------- parameter sets

# seeded parameters: uniform in a rectangle, resampled until every pole of the
# formulas used in this package is at least SAFE_MARGIN away
RANDOM_RE = (-0.8, 0.8)
RANDOM_IM = (-0.8, 0.8)
RANDOM_ETA_RE = (0.2, 0.7)
RANDOM_ETA_IM = (-0.4, 0.4)
SAFE_MARGIN = 0.05


def _clear_of_poles(lams: Sequence[complex], nus: Sequence[complex], eta: complex) -> bool:
    def ok(z):
        return abs(np.sinh(z)) > SAFE_MARGIN

    for xs in (lams, nus):
        for i, x in enumerate(xs):
            for y in xs[i + 1:]:
                if not ok(x - y) or not ok(x - y + 2 * eta) or not ok(x - y - 2 * eta):
                    return False
    for lam in lams:
        for nu in nus:
            if not (ok(lam - nu + eta) and ok(lam - nu - eta)):
                return False
    return ok(2 * eta)


def random_params(n: int, seed: int | None = None, rng: np.random.Generator | None = None,
                  eta=None) -> SpectralParams:
    """Draw a generic parameter set of size ``n``.

    Real and imaginary parts of the lambdas and nus are uniform on
    ``RANDOM_RE x RANDOM_IM``; ``eta`` (unless given) is uniform on
    ``RANDOM_ETA_RE x RANDOM_ETA_IM``.  Draws are repeated until all the
    relevant ``sinh`` factors exceed ``SAFE_MARGIN`` in modulus.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    for _ in range(10_000):
        lams = rng.uniform(*RANDOM_RE, n) + 1j * rng.uniform(*RANDOM_IM, n)
        nus = rng.uniform(*RANDOM_RE, n) + 1j * rng.uniform(*RANDOM_IM, n)
        e = complex(eta) if eta is not None else complex(
            rng.uniform(*RANDOM_ETA_RE) + 1j * rng.uniform(*RANDOM_ETA_IM))
        if _clear_of_poles(lams, nus, e):
            return SpectralParams(lams, nus, e)
    raise SingularParameterError("could not draw parameters clear of the singular set")
