import math
from fractions import Fraction

import numpy as np
import pytest

from blockperm.bounds import (
    ball_lower_bound,
    ball_size,
    gv_bound,
    ratio_report,
    ratio_row,
    removed_edges,
    sphere_profile,
    sphere_witnesses,
    witness,
)
from blockperm.errors import BudgetExceeded, ParameterError
from blockperm.perm import (
    CyclicCoset,
    canonical_rep,
    cyclic_char_set,
    cyclic_norm,
    d_cyclic,
    enumerate_cosets,
    identity,
)


@pytest.fixture(scope="module")
def profiles():
    return {n: sphere_profile(n) for n in range(3, 10)}


def test_small_profiles(profiles):
    assert profiles[3].sizes == (1, 0, 0, 1)
    assert profiles[4].sizes == (1, 0, 0, 4, 1)


def test_profile_invariants(profiles):
    for n, prof in profiles.items():
        assert sum(prof.sizes) == math.factorial(n - 1)
        assert prof.sizes[:3] == (1, 0, 0)
        for d in range(3, n + 1):
            assert prof.sizes[d] >= math.comb(n, d)


def test_profile_matches_direct_norms():
    counts = [0] * 8
    for c in enumerate_cosets(7):
        counts[cyclic_norm(c)] += 1
    assert tuple(counts) == sphere_profile(7).sizes
    assert sphere_profile(7, workers=3) == sphere_profile(7)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_profile_is_center_independent(n):
    base = sphere_profile(n).sizes
    rng = np.random.default_rng(n)
    for _ in range(50):
        center = canonical_rep(tuple(int(v) + 1 for v in rng.permutation(n)))
        assert sphere_profile(n, center=center).sizes == base
        # cross-check against direct pairwise distances
        direct = [0] * (n + 1)
        for c in enumerate_cosets(n):
            direct[d_cyclic(center, c)] += 1
        assert tuple(direct) == base


def test_profile_errors():
    with pytest.raises(ParameterError):
        sphere_profile(2)
    with pytest.raises(BudgetExceeded):
        sphere_profile(9, budget=1000)


def test_ball_size(profiles):
    p4 = profiles[4]
    assert ball_size(p4, 3) == 5 == p4.ball(3)
    assert ball_size(p4, 0) == 1
    assert ball_size(p4, 4) == 6
    with pytest.raises(ParameterError):
        ball_size(p4, 5)


def test_gv_bound(profiles):
    assert gv_bound(4, 4) == 2
    assert gv_bound(4, 3) == 6
    for n in range(3, 8):
        assert gv_bound(n, 1, profiles[n]) == math.factorial(n - 1)
    with pytest.raises(ParameterError):
        gv_bound(4, 0)


def test_witness_examples():
    assert witness((1, 2, 3, 4), 4) == (1, 4, 3, 2)
    assert canonical_rep(witness((1, 2, 3, 4), 4)) == CyclicCoset((1, 4, 3, 2))
    cosets = [c for _, c in sphere_witnesses(4, 3)]
    assert len(cosets) == 4 == len(set(cosets))
    assert all(cyclic_norm(c) >= 3 for c in cosets)
    assert removed_edges((1, 4), 4) == {(1, 2), (4, 1)}
    with pytest.raises(ParameterError):
        list(sphere_witnesses(4, 2))
    with pytest.raises(ParameterError):
        witness((1, 1, 2), 4)


@pytest.mark.parametrize("n", range(3, 10))
def test_witnesses_remove_exactly_dj(n):
    base = cyclic_char_set(identity(n))
    for d in range(3, n + 1):
        seen = set()
        for subset, coset in sphere_witnesses(n, d):
            assert base - cyclic_char_set(coset.canonical) == removed_edges(subset, n)
            assert cyclic_norm(coset) == d
            seen.add(coset)
        assert len(seen) == math.comb(n, d)


def test_ratio_rows_exact():
    rows = ratio_report(4, range(5, 10), mode="exact")
    assert all(r.ratio > 0 and r.gv is not None for r in rows)
    r8 = rows[3]
    assert (r8.n, r8.p, r8.construction) == (8, 11, Fraction(5040, 121))
    assert r8.ratio == r8.construction / r8.gv


def test_ratio_bound_mode_floor():
    row = ratio_row(100, 4, "bound")
    assert row.ball == ball_lower_bound(100, 4) == 1 + math.comb(100, 3)
    assert row.ratio >= row.linear_floor == Fraction(math.comb(100, 3), 200 ** 2)
    rows = ratio_report(4, [50, 100, 1000, 10_000], mode="bound")
    assert [r.flagged for r in rows] == [False] * 4
    assert rows[-1].ratio > 100


def test_ratio_report_default_modes():
    rows = ratio_report(4, [9, 11])
    assert [r.mode for r in rows] == ["exact", "bound"]
    with pytest.raises(ParameterError):
        ratio_report(3, [5])
    with pytest.raises(ParameterError):
        ratio_row(8, 4, "guess")
