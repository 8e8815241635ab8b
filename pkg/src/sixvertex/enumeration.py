"""Exhaustive enumeration of domain-wall configurations.

Configurations are generated row by row as alternating sign matrices: after
row ``alpha`` (counted from the top) exactly ``alpha`` vertical edges carry a
down spin, and the set of down columns grows by a row of the ASM.  Reading a
row from the rightmost column (column 0) leftwards, the horizontal spin starts
down and flips up at a ``+1`` entry and back down at a ``-1`` entry.

Vertex types, in terms of (horizontal spin, vertical spin) on the right/top
edges entering the vertex:

* ``a1``: all spins up, ``a2``: all spins down  -> weight ``a``
* ``b1``: vertical up, horizontal down, ``b2``: vertical down, horizontal up -> ``b``
* ``c1``: ASM entry +1, ``c2``: ASM entry -1 -> ``c``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import ResourceError
from .model import SpectralParams, vertex_weights

MAX_ENUMERATION_N = 7
VERTEX_TYPES = ("a1", "a2", "b1", "b2", "c1", "c2")


def _check_cap(n: int) -> None:
    if n < 1:
        raise ValueError(f"lattice size must be positive, got {n}")
    if n > MAX_ENUMERATION_N:
        raise ResourceError(f"enumeration is capped at N = {MAX_ENUMERATION_N}, got {n}")


def _row_transitions(n: int) -> dict[int, list[tuple[int, tuple[int, ...]]]]:
    """For each bitmask of down columns, the admissible next masks and ASM rows.

    A transition ``prev -> nxt`` is admissible when ``nxt`` has one more
    down column and the partial sums of ``nxt - prev`` from column 0 stay in
    {0, 1}; the difference is the ASM row.
    """
    table: dict[int, list] = {}
    for prev in range(1 << n):
        for nxt in range(1 << n):
            if bin(nxt).count("1") != bin(prev).count("1") + 1:
                continue
            row = []
            partial = 0
            for k in range(n):
                e = ((nxt >> k) & 1) - ((prev >> k) & 1)
                partial += e
                if partial not in (0, 1):
                    break
                row.append(e)
            else:
                table.setdefault(prev, []).append((nxt, tuple(row)))
    return table


def _vertex_types(asm: np.ndarray) -> np.ndarray:
    n = asm.shape[0]
    types = np.empty((n, n), dtype=object)
    down = np.zeros(n, dtype=int)  # vertical spins above the current row
    for alpha in range(n):
        horiz_up = 0  # horizontal spin entering column k from the right
        for k in range(n):
            e = asm[alpha, k]
            if e == 1:
                types[alpha, k] = "c1"
            elif e == -1:
                types[alpha, k] = "c2"
            elif down[k] == 0:
                types[alpha, k] = "a1" if horiz_up else "b1"
            else:
                types[alpha, k] = "b2" if horiz_up else "a2"
            horiz_up += e
            down[k] += e
    return types


@dataclass(frozen=True)
class Configuration:
    """One domain-wall configuration, stored as its alternating sign matrix.

    ``asm[alpha, k]`` uses the package conventions: row 0 on top, column 0
    on the right.
    """

    asm: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.asm.shape[0]

    @property
    def vertex_type(self) -> np.ndarray:
        return _vertex_types(self.asm)

    @property
    def vertical_spins(self) -> np.ndarray:
        """``(N+1, N)`` array; row ``r`` holds the spins below row ``r-1`` (1 = down)."""
        return np.vstack([np.zeros(self.n, dtype=int), np.cumsum(self.asm, axis=0)])

    @property
    def horizontal_spins(self) -> np.ndarray:
        """``(N, N+1)`` array; entry ``[alpha, k]`` is the spin right of column ``k`` (1 = up)."""
        return np.hstack([np.zeros((self.n, 1), dtype=int), np.cumsum(self.asm, axis=1)])

    def turn_row(self) -> int:
        """Row (1-based) of the c-vertex in the boundary column 0."""
        return int(np.flatnonzero(self.asm[:, 0])[0]) + 1

    def weight(self, params: SpectralParams) -> complex:
        w = 1.0 + 0j
        for (alpha, k), t in np.ndenumerate(self.vertex_type):
            vw = vertex_weights(params.lambdas[alpha], params.nus[k], params.eta)
            w *= vw["abc".index(t[0])]
        return w


def enumerate_configs(n: int) -> Iterator[Configuration]:
    """Yield every domain-wall configuration of the ``n x n`` lattice once.

    Order is deterministic: depth-first over rows, candidate rows in
    increasing bitmask order.
    """
    _check_cap(n)
    table = _row_transitions(n)
    rows: list[tuple[int, ...]] = []

    def dfs(mask: int) -> Iterator[Configuration]:
        if len(rows) == n:
            yield Configuration(np.array(rows, dtype=int))
            return
        for nxt, row in table.get(mask, ()):
            rows.append(row)
            yield from dfs(nxt)
            rows.pop()

    yield from dfs(0)


def count_configs(n: int) -> int:
    return sum(1 for _ in enumerate_configs(n))


@dataclass
class WeightedTally:
    """Weighted sums over all configurations.

    ``per_row_turn[M-1]`` collects configurations whose boundary line turns at
    row ``M``; ``per_row_down[M-1]`` those whose boundary-column edge below
    row ``M`` is down.
    """

    total: complex
    per_row_turn: list[complex]
    per_row_down: list[complex]
    count: int = 0

    @property
    def h(self) -> list[complex]:
        return [x / self.total for x in self.per_row_turn]

    @property
    def g(self) -> list[complex]:
        return [x / self.total for x in self.per_row_down]

    def merge(self, other: "WeightedTally") -> "WeightedTally":
        return WeightedTally(
            self.total + other.total,
            [x + y for x, y in zip(self.per_row_turn, other.per_row_turn)],
            [x + y for x, y in zip(self.per_row_down, other.per_row_down)],
            self.count + other.count,
        )

    def to_dict(self) -> dict:
        pair = lambda z: [z.real, z.imag]
        return {
            "n": len(self.per_row_turn),
            "count": self.count,
            "total": pair(self.total),
            "per_row_turn": [pair(z) for z in self.per_row_turn],
            "per_row_down": [pair(z) for z in self.per_row_down],
            "H": [pair(z) for z in self.h],
            "G": [pair(z) for z in self.g],
        }


def _weight_tables(params: SpectralParams) -> np.ndarray:
    """``w[alpha, k, j]`` with ``j`` = 0, 1, 2 for weights a, b, c."""
    n = params.n
    w = np.empty((n, n, 3), dtype=complex)
    for alpha in range(n):
        for k in range(n):
            w[alpha, k] = vertex_weights(params.lambdas[alpha], params.nus[k], params.eta)
    return w


def _row_weight(w_row: np.ndarray, prev: int, row: tuple[int, ...]) -> complex:
    out = 1.0 + 0j
    horiz_up = 0
    for k, e in enumerate(row):
        if e:
            out *= w_row[k, 2]
        else:
            vert_down = (prev >> k) & 1
            # equal spins on the two incoming edges: weight a, otherwise b
            out *= w_row[k, 0] if horiz_up != vert_down else w_row[k, 1]
        horiz_up += e
    return out


def correlators_by_enumeration(params: SpectralParams) -> WeightedTally:
    """Sum the products of vertex weights over all configurations, classified
    by the behaviour of the boundary column."""
    n = params.n
    _check_cap(n)
    table = _row_transitions(n)
    w = _weight_tables(params)
    row_w = [{(prev, nxt): _row_weight(w[alpha], prev, row)
              for prev, succ in table.items() for nxt, row in succ}
             for alpha in range(n)]

    total = 0j
    turn = [0j] * n
    down = [0j] * n
    count = 0

    # depth-first; the boundary column turns at the first row whose mask has bit 0
    def dfs(alpha: int, mask: int, weight: complex, turned_at: int):
        nonlocal total, count
        if alpha == n:
            total += weight
            count += 1
            turn[turned_at] += weight
            for m in range(turned_at, n):
                down[m] += weight
            return
        for nxt, _row in table.get(mask, ()):
            t = turned_at if (mask & 1) else (alpha if nxt & 1 else -1)
            dfs(alpha + 1, nxt, weight * row_w[alpha][(mask, nxt)], t)

    dfs(0, 0, 1.0 + 0j, -1)
    return WeightedTally(total, turn, down, count)


def z_by_enumeration(params: SpectralParams) -> complex:
    return correlators_by_enumeration(params).total
