"""Complex scalars at a configurable precision, LU determinants and jets.

At the default precision (53 bits) scalars are plain Python ``complex``
values.  Inside a ``with precision(bits):`` block with ``bits > 53`` every
library function produces ``mpmath`` ``mpc`` values of that precision
instead.  The active precision lives in a context variable, so different
threads (or asyncio tasks) may use different precisions at the same time.

Jets are truncated Taylor series ``c_0 + c_1 e + ... + c_K e^K``; they carry
exact high order derivatives through arithmetic and through ``sinh``,
``cosh`` and ``exp``.
"""

from __future__ import annotations

import cmath
import contextvars
import functools
import math
from contextlib import contextmanager
from typing import Iterable, Sequence

import mpmath

from .errors import DimensionError, InvalidInputError, SingularJetError, SingularParameterError

DEFAULT_BITS = 53
SINGULAR_JET_THRESHOLD = 1e-300

_bits: contextvars.ContextVar[int] = contextvars.ContextVar("sixvertex_bits", default=DEFAULT_BITS)


@functools.lru_cache(maxsize=None)
def _mp_context(bits: int) -> mpmath.ctx_mp.MPContext:
    # one private context per precision; never mutated after creation
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def working_bits() -> int:
    """Return the precision (in mantissa bits) currently in effect."""
    return _bits.get()


@contextmanager
def precision(bits: int):
    """Evaluate the enclosed block with ``bits`` of mantissa precision."""
    bits = int(bits)
    if bits < DEFAULT_BITS:
        raise InvalidInputError(f"precision below {DEFAULT_BITS} bits is not supported: {bits}")
    token = _bits.set(bits)
    try:
        yield bits
    finally:
        _bits.reset(token)


def _extended() -> mpmath.ctx_mp.MPContext | None:
    bits = _bits.get()
    return None if bits == DEFAULT_BITS else _mp_context(bits)


def scalar(z) -> complex:
    """Convert ``z`` to a complex scalar at the working precision.

    Accepts ints, floats, complex numbers and mpmath numbers.
    """
    ctx = _extended()
    return complex(z) if ctx is None else ctx.mpc(z)


def to_complex(z) -> complex:
    return complex(z)


def is_finite(z) -> bool:
    if isinstance(z, complex):
        return cmath.isfinite(z)
    if isinstance(z, (int, float)):
        return math.isfinite(z)
    return bool(mpmath.isfinite(z))


def is_nan(z) -> bool:
    if isinstance(z, complex):
        return cmath.isnan(z)
    if isinstance(z, (int, float)):
        return math.isnan(z)
    return bool(mpmath.isnan(z))


def ensure_finite(z, what: str = "result"):
    if not is_finite(z):
        raise SingularParameterError(f"{what} is not finite: {z!r}")
    return z


def sinh(z):
    ctx = _extended()
    return cmath.sinh(complex(z)) if ctx is None else ctx.sinh(ctx.mpc(z))


def cosh(z):
    ctx = _extended()
    return cmath.cosh(complex(z)) if ctx is None else ctx.cosh(ctx.mpc(z))


def exp(z):
    ctx = _extended()
    return cmath.exp(complex(z)) if ctx is None else ctx.exp(ctx.mpc(z))


def log(z):
    ctx = _extended()
    return cmath.log(complex(z)) if ctx is None else ctx.log(ctx.mpc(z))


def pi():
    ctx = _extended()
    return complex(math.pi) if ctx is None else ctx.mpc(ctx.pi)


def zero():
    return scalar(0)


def one():
    return scalar(1)


def product(values: Iterable):
    """Product of ``values`` at working precision; the empty product is 1."""
    out = one()
    for v in values:
        out = out * v
    return out


# ---------------------------------------------------------------- determinants


def _square_copy(m) -> list[list]:
    rows = [list(r) for r in m]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise DimensionError(f"determinant needs a square matrix, got {n} rows of length {len(r)}")
    out = []
    for r in rows:
        row = []
        for v in r:
            s = scalar(v)
            if not is_finite(s):
                raise InvalidInputError(f"matrix entry is not finite: {v!r}")
            row.append(s)
        out.append(row)
    return out


def _lu_pivots(a: list[list]):
    """Eliminate ``a`` in place; yield (row swap parity flips, pivot) per column.

    Partial pivoting by largest modulus, ties resolved towards the lowest row.
    """
    n = len(a)
    for col in range(n):
        best = col
        best_abs = abs(a[col][col])
        for r in range(col + 1, n):
            v = abs(a[r][col])
            if v > best_abs:
                best, best_abs = r, v
        swapped = best != col
        if swapped:
            a[col], a[best] = a[best], a[col]
        pivot = a[col][col]
        yield swapped, pivot
        if best_abs == 0:
            return
        prow = a[col]
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            if factor != 0:
                row = a[r]
                for c in range(col + 1, n):
                    row[c] -= factor * prow[c]


def det(m: Sequence[Sequence]) -> complex:
    """Determinant of a square complex matrix by LU with partial pivoting.

    The 0x0 matrix has determinant 1.

    Raises:
        DimensionError: if ``m`` is not square.
        InvalidInputError: if an entry is NaN or infinite.
    """
    a = _square_copy(m)
    result = one()
    for swapped, pivot in _lu_pivots(a):
        if swapped:
            result = -result
        result = result * pivot
        if pivot == 0:
            return zero()
    return result


def logdet(m: Sequence[Sequence]):
    """Return ``(phase, log_modulus)`` with ``det(m) == phase * exp(log_modulus)``.

    ``phase`` has unit modulus.  A singular matrix gives ``(0, -inf)``.
    Useful where the determinant itself would overflow a double.
    """
    a = _square_copy(m)
    ctx = _extended()
    phase = one()
    log_mod = 0.0 if ctx is None else ctx.mpf(0)
    for swapped, pivot in _lu_pivots(a):
        if pivot == 0:
            return zero(), float("-inf")
        if swapped:
            phase = -phase
        mod = abs(pivot)
        phase = phase * (pivot / mod)
        log_mod += math.log(mod) if ctx is None else ctx.log(mod)
    return phase, log_mod


# ------------------------------------------------------------------------ jets


class Jet:
    """Truncated Taylor series with coefficients ``coeffs[0..order]``.

    Supports ``+ - * /`` with other jets and scalars and integer powers.
    Operating on jets of different orders truncates to the smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(scalar(c) for c in coeffs)
        if not cs:
            raise InvalidInputError("a jet needs at least one coefficient")
        self.coeffs = cs

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        return cls([value] + [0] * order)

    @classmethod
    def variable(cls, point, order: int) -> "Jet":
        """The identity jet ``point + e`` truncated at ``order``."""
        if order == 0:
            return cls([point])
        return cls([point, 1] + [0] * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, k: int):
        """k-th derivative at the expansion point, ``k! c_k``."""
        return self.coeffs[k] * math.factorial(k)

    def derivatives(self) -> list:
        return [self.derivative(k) for k in range(len(self.coeffs))]

    def truncate(self, order: int) -> "Jet":
        return Jet(self.coeffs[: order + 1])

    def _coerce(self, other) -> tuple[tuple, tuple]:
        if isinstance(other, Jet):
            k = min(len(self.coeffs), len(other.coeffs))
            return self.coeffs[:k], other.coeffs[:k]
        return self.coeffs, (scalar(other),) + (zero(),) * (len(self.coeffs) - 1)

    def __add__(self, other):
        a, b = self._coerce(other)
        return Jet(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return Jet(x - y for x, y in zip(a, b))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return Jet(y - x for x, y in zip(a, b))

    def __neg__(self):
        return Jet(-c for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            s = scalar(other)
            return Jet(c * s for c in self.coeffs)
        return jet_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return jet_div(self, Jet.constant(other, self.order))
        return jet_div(self, other)

    def __rtruediv__(self, other):
        return jet_div(Jet.constant(other, self.order), self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Jet.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = jet_mul(result, base)
            n >>= 1
            if n:
                base = jet_mul(base, base)
        return result

    def __repr__(self):
        return f"Jet({list(self.coeffs)!r})"


def jet_mul(x: Jet, y: Jet) -> Jet:
    a, b = x._coerce(y)
    k = len(a)
    out = []
    for n in range(k):
        acc = zero()
        for j in range(n + 1):
            acc += a[j] * b[n - j]
        out.append(acc)
    return Jet(out)


def jet_div(num: Jet, den: Jet, threshold: float = SINGULAR_JET_THRESHOLD) -> Jet:
    """Truncated Taylor quotient ``num / den``.

    Raises:
        SingularJetError: if ``|den.coeffs[0]|`` is below ``threshold``.
    """
    a, b = num._coerce(den)
    if abs(b[0]) < threshold:
        raise SingularJetError(f"jet division by a jet with leading coefficient {b[0]!r}")
    q = []
    for n in range(len(a)):
        acc = a[n]
        for j in range(1, n + 1):
            acc -= b[j] * q[n - j]
        q.append(acc / b[0])
    return Jet(q)


def jet_sinh_cosh(x: Jet) -> tuple[Jet, Jet]:
    """``(sinh o x, cosh o x)`` from the coupled recurrences s' = c x', c' = s x'."""
    xs = x.coeffs
    s = [sinh(xs[0])]
    c = [cosh(xs[0])]
    for n in range(1, len(xs)):
        sn = zero()
        cn = zero()
        for j in range(1, n + 1):
            w = j * xs[j]
            sn += w * c[n - j]
            cn += w * s[n - j]
        s.append(sn / n)
        c.append(cn / n)
    return Jet(s), Jet(c)


def jet_sinh(x: Jet) -> Jet:
    return jet_sinh_cosh(x)[0]


def jet_cosh(x: Jet) -> Jet:
    return jet_sinh_cosh(x)[1]


def jet_exp(x: Jet) -> Jet:
    xs = x.coeffs
    e = [exp(xs[0])]
    for n in range(1, len(xs)):
        acc = zero()
        for j in range(1, n + 1):
            acc += j * xs[j] * e[n - j]
        e.append(acc / n)
    return Jet(e)
