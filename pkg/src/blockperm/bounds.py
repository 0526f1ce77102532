"""Sphere sizes under the cyclic metric and the Gilbert-Varshamov comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from .algebra import smallest_prime_geq
from .errors import ParameterError
from .parallel import merge_counts, pmap, shard_bounds
from .perm import (
    CyclicCoset,
    Perm,
    canonical_rep,
    check_budget,
    coset_count,
    cyclic_char_set,
    enumerate_cosets,
    identity,
    successor_table,
)

# Largest n profiled exhaustively by default: (n-1)! = 362,880 cosets.
EXACT_MAX_N = 10


@dataclass(frozen=True)
class SphereProfile:
    n: int
    sizes: Tuple[int, ...]

    def ball(self, r: int) -> int:
        return ball_size(self, r)


def _profile_shard(args) -> List[int]:
    n, center, start, stop = args
    counts = [0] * (n + 1)
    if center is None:
        for c in enumerate_cosets(n, start, stop, budget=math.inf):
            t = c.canonical
            r = sum(1 for i in range(n) if t[(i + 1) % n] != t[i] % n + 1)
            counts[r] += 1
    else:
        nxt = successor_table(center)
        for c in enumerate_cosets(n, start, stop, budget=math.inf):
            t = c.canonical
            r = sum(1 for i in range(n) if nxt[t[i]] != t[(i + 1) % n])
            counts[r] += 1
    return counts


def sphere_profile(
    n: int,
    center: Optional[CyclicCoset] = None,
    workers: int = 1,
    budget: Optional[int] = None,
) -> SphereProfile:
    """Exact count of cosets at each cyclic distance 0..n from ``center`` (default identity)."""
    if n < 3:
        raise ParameterError("n must be at least 3")
    check_budget(coset_count(n), budget, f"profiling S_{n}/<omega>")
    rep = None if center is None else center.canonical
    bounds = shard_bounds(coset_count(n), max(1, workers) * 4)
    parts = pmap(_profile_shard, [(n, rep, a, b) for a, b in bounds], workers)
    return SphereProfile(n, tuple(merge_counts(parts)))


def ball_size(profile: SphereProfile, r: int) -> int:
    if not 0 <= r <= profile.n:
        raise ParameterError(f"radius {r} outside 0..{profile.n}")
    return sum(profile.sizes[: r + 1])


def gv_bound(n: int, d: int, profile: Optional[SphereProfile] = None, workers: int = 1,
             budget: Optional[int] = None) -> int:
    """ceil((n-1)! / |B(d-1)|)."""
    if not 1 <= d <= n + 1:
        raise ParameterError(f"d={d} outside 1..{n + 1}")
    if profile is None:
        profile = sphere_profile(n, workers=workers, budget=budget)
    total = coset_count(n)
    vol = ball_size(profile, min(d - 1, n))
    return -(-total // vol)


# -- constructive sphere witnesses ------------------------------------------------------

def removed_edges(subset: Sequence[int], n: int) -> frozenset:
    """D_J = {(j, j+1) : j in J} with n + 1 read as 1."""
    return frozenset((j, j % n + 1) for j in subset)


def witness(subset: Sequence[int], n: int) -> Perm:
    """A permutation whose cyclic edge set misses exactly D_J from the identity's.

    Cutting the identity cycle after each j in J leaves runs F_j ending at j
    (the run for j_1 wraps past n).  The runs are then laid out in the order
    F_{j_1}, F_{j_d}, F_{j_(d-1)}, ..., F_{j_2}.
    """
    js = sorted(subset)
    d = len(js)
    if d < 3 or d > n or len(set(js)) != d or js[0] < 1 or js[-1] > n:
        raise ParameterError(f"need a subset of 1..{n} with 3 <= |J| <= n")
    runs = []
    for s, j in enumerate(js):
        start = js[s - 1] % n + 1          # i_s = j_(s-1) + 1, cyclically
        run, v = [start], start
        while v != j:
            v = v % n + 1
            run.append(v)
        runs.append(run)
    order = [runs[0]] + runs[:0:-1]
    return tuple(v for run in order for v in run)


def sphere_witnesses(n: int, d: int) -> Iterator[Tuple[Tuple[int, ...], CyclicCoset]]:
    """One coset at cyclic norm exactly d per d-subset J of 1..n.

    Raises if a witness does not remove exactly D_J from the identity's edges.
    """
    if not 3 <= d <= n:
        raise ParameterError(f"need 3 <= d <= n, got d={d}, n={n}")
    base = cyclic_char_set(identity(n))
    for subset in combinations(range(1, n + 1), d):
        sigma = witness(subset, n)
        if base - cyclic_char_set(sigma) != removed_edges(subset, n):
            raise AssertionError(f"witness for J={subset} removes the wrong edges")
        yield subset, canonical_rep(sigma)


# -- construction vs GV -----------------------------------------------------------------

@dataclass(frozen=True)
class RatioRow:
    n: int
    d: int
    mode: str                 # "exact" or "bound"
    p: int
    construction: Fraction    # (n-1)!/p^(d-2)
    ball: int                 # exact |B(d-1)|, or its lower bound 1 + sum C(n, r), 3 <= r <= d-1
    gv: Optional[int]         # exact-mode only
    ratio: Fraction
    linear_floor: Fraction    # C(n, d-1) / (2n)^(d-2)
    flagged: bool = False


def ball_lower_bound(n: int, d: int) -> int:
    return 1 + sum(math.comb(n, r) for r in range(3, min(d - 1, n) + 1))


def ratio_row(n: int, d: int, mode: str, workers: int = 1, budget: Optional[int] = None) -> RatioRow:
    p = smallest_prime_geq(n)
    construction = Fraction(math.factorial(n - 1), p ** (d - 2))
    floor = Fraction(math.comb(n, d - 1), (2 * n) ** (d - 2))
    if mode == "exact":
        profile = sphere_profile(n, workers=workers, budget=budget)
        ball = ball_size(profile, min(d - 1, n))
        gv = gv_bound(n, d, profile)
        ratio = construction / gv
    elif mode == "bound":
        # M_GV <= (n-1)!/ball, so construction/M_GV >= ball / p^(d-2); ceiling dropped
        ball = ball_lower_bound(n, d)
        gv = None
        ratio = Fraction(ball, p ** (d - 2))
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    return RatioRow(n, d, mode, p, construction, ball, gv, ratio, floor)


def ratio_report(
    d: int,
    n_values: Sequence[int],
    mode: Optional[str] = None,
    workers: int = 1,
    budget: Optional[int] = None,
) -> List[RatioRow]:
    """Rows for each n; mode defaults to exact up to EXACT_MAX_N, bound beyond.

    A row is flagged when its ratio drops below the previous row of the same mode.
    """
    if d < 4:
        raise ParameterError("the comparison needs d >= 4")
    rows: List[RatioRow] = []
    last = {}
    for n in n_values:
        if n < 4:
            raise ParameterError("n must be at least 4")
        m = mode or ("exact" if n <= EXACT_MAX_N else "bound")
        row = ratio_row(n, d, m, workers, budget)
        prev = last.get(m)
        if prev is not None and row.ratio < prev:
            row = RatioRow(**{**row.__dict__, "flagged": True})
        last[m] = row.ratio
        rows.append(row)
    return rows


REPORT_FOOTER = (
    "GV bound uses ceil((n-1)!/|B(d-1)|), since code sizes are integers.\n"
    "bound-mode ratio = ball lower bound / p^(d-2), a lower bound on construction/GV."
)
