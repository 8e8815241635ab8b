"""Monodromy-matrix operators realised on the 2^N space of vertical spins.

States of the vertical lines are numpy arrays of length ``2**N``.  Bit ``k``
of the basis index is the spin of column ``k`` (zero-based, column 0 is the
rightmost one): 0 for spin up, 1 for spin down.  The auxiliary (horizontal)
space is carried as a leading axis of length 2, index 0 = up, 1 = down.

Operators are applied matrix-free; nothing of size ``2^N x 2^N`` is built.
This module works in double precision only.

Residuals of operator identities are reported as ``|lhs - rhs|`` divided by
``max(1, |lhs|, |rhs|)``: products of several monodromy entries easily reach
norms of 1e5, and an absolute residual would only measure that scale.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import DegenerateNormalizationError, DimensionError, ResourceError
from .model import SpectralParams, a_eig, f_fun, g_fun

Kind = Literal["A", "B", "C", "D"]

MAX_SITES = 12
MAX_SITES_RTT = 6
RESIDUAL_VECTORS = 32

# (out, in) aux indices selecting a monodromy entry: T = [[A, B], [C, D]]
_ENTRY = {"A": (0, 0), "B": (0, 1), "C": (1, 0), "D": (1, 1)}


def l_matrix(lam, nu, eta) -> np.ndarray:
    """The L-operator as a 4x4 matrix on aux (x) site, basis uu, ud, du, dd.

    Built from its operator form: diagonal blocks ``sinh(x +/- eta sigma^z)``,
    off-diagonal blocks ``sinh(2 eta) sigma^-`` (top right) and
    ``sinh(2 eta) sigma^+`` (bottom left), ``x = lam - nu``.
    """
    x = complex(lam - nu)
    eta = complex(eta)
    c = cmath.sinh(2 * eta)
    sz = np.diag([1.0, -1.0])
    sigma_minus = np.array([[0, 0], [1, 0]], dtype=complex)  # |up> -> |down>
    sigma_plus = sigma_minus.T.copy()
    plus = np.diag([cmath.sinh(x + eta * s) for s in np.diag(sz)])
    minus = np.diag([cmath.sinh(x - eta * s) for s in np.diag(sz)])
    return np.block([[plus, c * sigma_minus], [c * sigma_plus, minus]])


def r_matrix(lam, lam_p, eta) -> np.ndarray:
    """The R-matrix ``R(lam, lam')`` on two auxiliary spaces (basis uu, ud, du, dd)."""
    f = complex(f_fun(lam_p, lam, eta))
    g = complex(g_fun(lam_p, lam, eta))
    return np.array([[f, 0, 0, 0], [0, 1, g, 0], [0, g, 1, 0], [0, 0, 0, f]], dtype=complex)


def basis_state(n: int, down: Sequence[int] = ()) -> np.ndarray:
    """Unit vector with the listed (zero-based) columns down, the rest up."""
    v = np.zeros(2 ** n, dtype=complex)
    v[sum(1 << k for k in down)] = 1.0
    return v


def all_up(n: int) -> np.ndarray:
    return basis_state(n)


def all_down(n: int) -> np.ndarray:
    return basis_state(n, range(n))


def _site_axis(n: int, k: int) -> int:
    # axis of column k in a state reshaped to (2,)*n (C order: bit n-1 first)
    return n - 1 - k


def apply_l_operator(aux_state: np.ndarray, lam, k: int, params: SpectralParams) -> np.ndarray:
    """Apply ``L_k(lam, nu_k)`` to an array of shape ``(2, 2**N)`` (aux, vertical).

    Raises:
        DimensionError: if ``k`` is not a valid zero-based column or the state
            has the wrong shape.
    """
    n = params.n
    if not 0 <= k < n:
        raise DimensionError(f"site {k} out of range for N = {n}")
    if aux_state.shape != (2, 2 ** n):
        raise DimensionError(f"expected a state of shape (2, {2 ** n}), got {aux_state.shape}")
    lmat = l_matrix(lam, params.nus[k], params.eta).reshape(2, 2, 2, 2)
    psi = aux_state.reshape((2,) + (2,) * n)
    ax = 1 + _site_axis(n, k)
    out = np.tensordot(lmat, psi, axes=([2, 3], [0, ax]))
    # tensordot puts (aux, site) first; move the site axis back into place
    out = np.moveaxis(out, 1, ax)
    return out.reshape(2, 2 ** n)


def monodromy_apply(lam, params: SpectralParams, aux_state: np.ndarray) -> np.ndarray:
    """``T(lam) = L_N ... L_1`` applied to an (aux, vertical) state."""
    out = aux_state
    for k in range(params.n):
        out = apply_l_operator(out, lam, k, params)
    return out


@dataclass(frozen=True)
class MonodromyEntry:
    kind: Kind
    spectral: complex
    params: SpectralParams = field(repr=False)

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return apply_monodromy_entry(self, v)


def apply_monodromy_entry(entry: MonodromyEntry, v: np.ndarray) -> np.ndarray:
    """Apply A, B, C or D of the monodromy matrix to a vertical state ``v``."""
    n = entry.params.n
    if v.shape != (2 ** n,):
        raise DimensionError(f"state of length {v.shape} does not match N = {n}")
    out_aux, in_aux = _ENTRY[entry.kind]
    psi = np.zeros((2, 2 ** n), dtype=complex)
    psi[in_aux] = v
    return monodromy_apply(entry.spectral, entry.params, psi)[out_aux]


def op(kind: Kind, lam, params: SpectralParams) -> MonodromyEntry:
    return MonodromyEntry(kind, complex(lam), params)


def project_site(v: np.ndarray, k: int, spin: Literal["up", "down"]) -> np.ndarray:
    """Projector ``p_k`` (spin up) or ``q_k`` (spin down) on column ``k``."""
    idx = np.arange(v.shape[0])
    keep = ((idx >> k) & 1) == (1 if spin == "down" else 0)
    return np.where(keep, v, 0)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ResourceError(f"N = {n} exceeds the operator oracle cap {cap}")


def b_string(params: SpectralParams, rows: Sequence[int], v: np.ndarray) -> np.ndarray:
    """Apply ``B(lambda_r)`` for ``r`` in ``rows``, first element first."""
    for r in rows:
        v = apply_monodromy_entry(op("B", params.lambdas[r], params), v)
    return v


def z_via_monodromy(params: SpectralParams, order: Sequence[int] | None = None,
                    cap: int = MAX_SITES) -> complex:
    """``<down| B(lambda_N) ... B(lambda_1) |up>``.

    ``order`` optionally permutes the sequence in which the B operators are
    applied (they commute, so the value does not depend on it).
    """
    n = params.n
    _check_cap(n, cap)
    rows = range(n) if order is None else order
    return complex(b_string(params, rows, all_up(n))[-1])


def _correlator(params: SpectralParams, m: int, turn: bool, cap: int) -> complex:
    n = params.n
    _check_cap(n, cap)
    if not 1 <= m <= n:
        raise DimensionError(f"M = {m} outside 1..{n}")
    z = z_via_monodromy(params, cap=cap)
    if abs(z) < 1e-300:
        raise DegenerateNormalizationError("partition function vanishes")
    v = b_string(params, range(m - 1), all_up(n))
    if turn:
        v = project_site(v, 0, "up")
    v = b_string(params, [m - 1], v)
    v = project_site(v, 0, "down")
    v = b_string(params, range(m, n), v)
    return complex(v[-1]) / z


def g_via_monodromy(params: SpectralParams, m: int, cap: int = MAX_SITES) -> complex:
    """Boundary polarization: ``q_1`` inserted after the first ``m`` B operators."""
    return _correlator(params, m, turn=False, cap=cap)


def h_via_monodromy(params: SpectralParams, m: int, cap: int = MAX_SITES) -> complex:
    """Probability that the boundary line turns at row ``m``: ``q_1 B(lambda_m) p_1``."""
    return _correlator(params, m, turn=True, cap=cap)


# --------------------------------------------------------------- algebra checks


def _random_unit(rng: np.random.Generator, shape) -> np.ndarray:
    v = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return v / np.linalg.norm(v)


def _scaled_norm(x: np.ndarray, y: np.ndarray) -> float:
    """``|x - y|`` relative to the larger of ``|x|``, ``|y|`` (absolute below 1)."""
    scale = max(1.0, float(np.linalg.norm(x)), float(np.linalg.norm(y)))
    return float(np.linalg.norm(x - y)) / scale


def _max_residual(lhs, rhs, vectors) -> float:
    return max(_scaled_norm(lhs(v), rhs(v)) for v in vectors)


def _kron_apply(mat: np.ndarray, v: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Apply ``mat`` (acting on the listed binary axes, in order) to tensor ``v``."""
    k = len(axes)
    t = mat.reshape((2,) * (2 * k))
    out = np.tensordot(t, v, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def yang_baxter_residual(l1, l2, l3, eta) -> float:
    """Max entry of ``R12 R13 R23 - R23 R13 R12`` on the 8-dim triple auxiliary space."""
    eye = np.eye(8, dtype=complex).reshape(8, 2, 2, 2)

    def apply(seq):
        out = np.moveaxis(eye, 0, -1)
        for mat, axes in seq:
            out = _kron_apply(mat, out, axes)
        return out

    r12 = (r_matrix(l1, l2, eta), (0, 1))
    r13 = (r_matrix(l1, l3, eta), (0, 2))
    r23 = (r_matrix(l2, l3, eta), (1, 2))
    # operators act right-to-left: apply the rightmost factor first
    lhs = apply([r23, r13, r12])
    rhs = apply([r12, r13, r23])
    return float(np.max(np.abs(lhs - rhs)))


def rll_residual(l1, l2, nu, eta) -> float:
    """Max entry of ``R_ab L_a L_b - L_b L_a R_ab`` on aux_a (x) aux_b (x) site."""
    eye = np.moveaxis(np.eye(8, dtype=complex).reshape(8, 2, 2, 2), 0, -1)
    r = r_matrix(l1, l2, eta)
    la = l_matrix(l1, nu, eta)
    lb = l_matrix(l2, nu, eta)
    lhs = _kron_apply(r, _kron_apply(la, _kron_apply(lb, eye, (1, 2)), (0, 2)), (0, 1))
    rhs = _kron_apply(lb, _kron_apply(la, _kron_apply(r, eye, (0, 1)), (0, 2)), (1, 2))
    return float(np.max(np.abs(lhs - rhs)))


def _t_on_pair(lam, params: SpectralParams, which: int, v: np.ndarray) -> np.ndarray:
    """``T(lam)`` acting on auxiliary factor ``which`` of a (2, 2, 2**N) state."""
    moved = np.moveaxis(v, which, 0)
    out = np.stack([monodromy_apply(lam, params, moved[:, j, :]) for j in range(2)], axis=1)
    return np.moveaxis(out, 0, which)


def rtt_residual(params: SpectralParams, l1, l2, rng: np.random.Generator,
                 n_vectors: int = RESIDUAL_VECTORS, cap: int = MAX_SITES_RTT) -> float:
    """``R(l1,l2) T_a(l1) T_b(l2) - T_b(l2) T_a(l1) R(l1,l2)`` on random unit vectors."""
    _check_cap(params.n, cap)
    dim = 2 ** params.n
    r = r_matrix(l1, l2, params.eta)

    def apply_r(v):
        return (r @ v.reshape(4, dim)).reshape(2, 2, dim)

    def lhs(v):
        return apply_r(_t_on_pair(l1, params, 0, _t_on_pair(l2, params, 1, v)))

    def rhs(v):
        return _t_on_pair(l2, params, 1, _t_on_pair(l1, params, 0, apply_r(v)))

    vectors = [_random_unit(rng, (2, 2, dim)) for _ in range(n_vectors)]
    return _max_residual(lhs, rhs, vectors)


def comm_ab_residual(params: SpectralParams, lam, lam_p, rng: np.random.Generator,
                     n_vectors: int = RESIDUAL_VECTORS) -> float:
    """``A(l) B(l') - f(l,l') B(l') A(l) - g(l',l) B(l) A(l')`` on random vectors."""
    A = lambda x: op("A", x, params)
    B = lambda x: op("B", x, params)
    f = complex(f_fun(lam, lam_p, params.eta))
    g = complex(g_fun(lam_p, lam, params.eta))

    def lhs(v):
        return A(lam)(B(lam_p)(v))

    def rhs(v):
        return f * B(lam_p)(A(lam)(v)) + g * B(lam)(A(lam_p)(v))

    vectors = [_random_unit(rng, 2 ** params.n) for _ in range(n_vectors)]
    return _max_residual(lhs, rhs, vectors)


def comm_bb_residual(params: SpectralParams, lam, lam_p, rng: np.random.Generator,
                     n_vectors: int = RESIDUAL_VECTORS) -> float:
    B = lambda x: op("B", x, params)
    vectors = [_random_unit(rng, 2 ** params.n) for _ in range(n_vectors)]
    return _max_residual(lambda v: B(lam)(B(lam_p)(v)), lambda v: B(lam_p)(B(lam)(v)), vectors)


def abbb_residual(params: SpectralParams, lam, m: int) -> float:
    """Residual of the expansion of ``A(lam) B(lambda_m) ... B(lambda_1) |up>``.

    The right-hand side is ``Lambda * B...B|up>`` plus, for every ``beta``,
    ``Lambda_beta * B(lam) prod_{alpha != beta} B(lambda_alpha) |up>``.
    """
    n, eta = params.n, params.eta
    lams = params.lambdas[:m]
    up = all_up(n)
    lhs = apply_monodromy_entry(op("A", lam, params), b_string(params, range(m), up))
    big_lambda = complex(a_eig(lam, params))
    for lg in lams:
        big_lambda *= complex(f_fun(lam, lg, eta))
    rhs = big_lambda * b_string(params, range(m), up)
    for beta in range(m):
        coeff = complex(a_eig(lams[beta], params)) * complex(g_fun(lams[beta], lam, eta))
        for gamma in range(m):
            if gamma != beta:
                coeff *= complex(f_fun(lams[beta], lams[gamma], eta))
        rest = [r for r in range(m) if r != beta]
        rhs = rhs + coeff * apply_monodromy_entry(op("B", lam, params), b_string(params, rest, up))
    return _scaled_norm(lhs, rhs)


def eigenvalue_residuals(params: SpectralParams, lam) -> dict[str, float]:
    """Vacuum relations: A, D on both reference states, B on all-down, C on all-up."""
    n = params.n
    up, down = all_up(n), all_down(n)
    a = complex(a_eig(lam, params))
    d = complex(np.prod([cmath.sinh(lam - nu - params.eta) for nu in params.nus]))
    apply = lambda kind, v: apply_monodromy_entry(op(kind, lam, params), v)
    return {
        "A_up": float(np.linalg.norm(apply("A", up) - a * up)),
        "D_up": float(np.linalg.norm(apply("D", up) - d * up)),
        "A_down": float(np.linalg.norm(apply("A", down) - d * down)),
        "D_down": float(np.linalg.norm(apply("D", down) - a * down)),
        "B_down": float(np.linalg.norm(apply("B", down))),
        "C_up": float(np.linalg.norm(apply("C", up))),
    }


@dataclass
class ResidualReport:
    yang_baxter: float
    rll: float
    rtt: float
    comm_ab: float
    comm_bb: float
    abbb: float
    eigen: float

    def max(self) -> float:
        return max(vars(self).values())


def algebra_residuals(params: SpectralParams, sample_size: int = 3, seed: int = 0,
                      abbb_max_m: int = 4) -> ResidualReport:
    """Largest residual of each algebraic relation over ``sample_size`` random spectral points."""
    rng = np.random.default_rng(seed)
    eta = params.eta
    worst = dict(yang_baxter=0.0, rll=0.0, rtt=0.0, comm_ab=0.0, comm_bb=0.0, abbb=0.0, eigen=0.0)

    def draw():
        return complex(rng.uniform(-0.8, 0.8) + 1j * rng.uniform(-0.8, 0.8))

    def bump(key, value):
        worst[key] = max(worst[key], value)

    for _ in range(sample_size):
        l1, l2, l3 = draw(), draw(), draw()
        bump("yang_baxter", yang_baxter_residual(l1, l2, l3, eta))
        for nu in params.nus:
            bump("rll", rll_residual(l1, l2, nu, eta))
        if params.n <= MAX_SITES_RTT:
            bump("rtt", rtt_residual(params, l1, l2, rng))
        bump("comm_ab", comm_ab_residual(params, l1, l2, rng))
        bump("comm_bb", comm_bb_residual(params, l1, l2, rng))
        for m in range(1, min(abbb_max_m, params.n) + 1):
            bump("abbb", abbb_residual(params, l3, m))
        bump("eigen", max(eigenvalue_residuals(params, l1).values()))
    return ResidualReport(**worst)
