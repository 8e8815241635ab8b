import math

import numpy as np
import pytest

from sixvertex import enumeration as en
from sixvertex.errors import ResourceError
from sixvertex.free_fermion import h_ff, homogeneous_spectral
from sixvertex.model import SpectralParams, random_params, vertex_weights
from sixvertex.qism import z_via_monodromy

from _util import rel, seeded

ASM_COUNTS = [1, 2, 7, 42, 429, 7436]


def is_asm(a: np.ndarray) -> bool:
    for line in list(a) + list(a.T):
        partial = np.cumsum(line)
        if line.sum() != 1 or partial.min() < 0 or partial.max() > 1:
            return False
    return True


@pytest.mark.parametrize("n, count", list(enumerate(ASM_COUNTS, start=1)))
def test_counts_are_asm_numbers(n, count):
    assert en.count_configs(n) == count


def test_configurations_are_distinct_asms():
    seen = set()
    for cfg in en.enumerate_configs(4):
        assert is_asm(cfg.asm)
        seen.add(cfg.asm.tobytes())
    assert len(seen) == 42


def test_enumeration_order_is_deterministic():
    first = [c.asm.tobytes() for c in en.enumerate_configs(4)]
    second = [c.asm.tobytes() for c in en.enumerate_configs(4)]
    assert first == second


def test_cap():
    with pytest.raises(ResourceError):
        next(en.enumerate_configs(en.MAX_ENUMERATION_N + 1))
    with pytest.raises(ResourceError):
        en.correlators_by_enumeration(random_params(8, seed=0))


def test_vertex_type_census():
    # per configuration: c-vertices = 2 * (#-1) + N, and every row has an odd number of them
    for cfg in en.enumerate_configs(5):
        types = cfg.vertex_type
        n_minus = int((cfg.asm == -1).sum())
        assert (types == "c1").sum() == 5 + n_minus
        assert (types == "c2").sum() == n_minus


def test_spin_arrays_respect_boundary():
    for cfg in en.enumerate_configs(4):
        v = cfg.vertical_spins
        h = cfg.horizontal_spins
        assert v[0].sum() == 0 and v[-1].sum() == 4   # all up on top, all down at the bottom
        assert h[:, 0].sum() == 0 and h[:, -1].sum() == 4  # down on the right, up on the left


def test_single_site():
    p = SpectralParams([0.2 + 0.3j], [-0.1], 0.45)
    tally = en.correlators_by_enumeration(p)
    assert rel(tally.total, np.sinh(0.9)) < 1e-15
    assert tally.h == [1] and tally.g == [1]


def test_two_sites_homogeneous():
    p = SpectralParams([0.5, 0.5], [0.0, 0.0], 0.3 - 0.1j)
    a, b, c = vertex_weights(0.5, 0.0, p.eta)
    assert rel(en.z_by_enumeration(p), c * c * (a * a + b * b)) < 1e-14


def test_weight_from_configuration_matches_tally():
    p = random_params(4, seed=12)
    tally = en.correlators_by_enumeration(p)
    total = sum(cfg.weight(p) for cfg in en.enumerate_configs(4))
    turns = [0j] * 4
    for cfg in en.enumerate_configs(4):
        turns[cfg.turn_row() - 1] += cfg.weight(p)
    assert rel(total, tally.total) < 1e-13
    for x, y in zip(turns, tally.per_row_turn):
        assert rel(x, y) < 1e-13


@pytest.mark.parametrize("n", range(1, 6))
def test_matches_operator_oracle(n):
    for p in seeded(n, 3):
        assert rel(en.z_by_enumeration(p), z_via_monodromy(p)) < 1e-10


def test_free_fermion_half():
    # eta = i pi/4 with rescaled weights cos, sin, 1 at lambda = pi/4
    tally = en.correlators_by_enumeration(homogeneous_spectral(3, math.pi / 4))
    assert abs(tally.h[1] - 0.5) < 1e-12


def test_connection_exact():
    tally = en.correlators_by_enumeration(random_params(5, seed=4))
    g_prev = 0
    for m in range(5):
        assert abs(tally.h[m] - (tally.g[m] - g_prev)) < 1e-13
        g_prev = tally.g[m]
    assert abs(tally.g[-1] - 1) < 1e-13


def test_merge_and_dict():
    p = random_params(3, seed=5)
    t = en.correlators_by_enumeration(p)
    doubled = t.merge(t)
    assert doubled.count == 2 * t.count
    assert rel(doubled.total, 2 * t.total) == 0
    assert doubled.h == pytest.approx(t.h)
    d = t.to_dict()
    assert d["n"] == 3 and d["count"] == 7
    assert len(d["H"]) == 3 and len(d["per_row_down"]) == 3


def test_refined_counts_at_ice_point():
    # equal weights: per_row_turn / w^(N^2) are the refined ASM numbers
    refined = {4: [7, 14, 14, 7], 5: [42, 105, 135, 105, 42]}
    for n, want in refined.items():
        p = SpectralParams([1j * math.pi / 2] * n, [0] * n, 1j * math.pi / 6)
        w = vertex_weights(1j * math.pi / 2, 0, 1j * math.pi / 6).a
        tally = en.correlators_by_enumeration(p)
        got = [x / w ** (n * n) for x in tally.per_row_turn]
        assert [round(x.real) for x in got] == want
        assert max(abs(x - round(x.real)) for x in got) < 1e-9


def test_free_fermion_binomial_law():
    for n in range(1, 6):
        tally = en.correlators_by_enumeration(homogeneous_spectral(n, 0.4))
        for m in range(1, n + 1):
            assert rel(tally.h[m - 1], h_ff(n, m, 0.4)) < 1e-10
