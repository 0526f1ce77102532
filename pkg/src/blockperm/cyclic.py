"""Cyclic block permutation codes as fibers of the residue-group key map.

Each coset ``sigma <omega>`` of S_n is sent to the class of

    prod_{i in Z_n} (x - alpha_{sigma(i)}) ** sigma(i + 1)

in G/G^p, G = (F_p[x]/(f^2))^x with deg f = d - 2, identified with F_p^(d-2)
through :func:`blockperm.algebra.quotient_map`.  Every non-empty fiber of this
map has minimum cyclic distance at least d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Poly, PolyResidue, find_irreducible, is_irreducible, quotient_map, smallest_prime_geq
from .codebook import Codebook
from .errors import BudgetExceeded, ParameterError, SizeMismatch, VacuousDistance
from .parallel import pmap, shard_bounds
from .perm import (
    CyclicCoset,
    Perm,
    check_budget,
    coset_count,
    enumerate_cosets,
    successor_table,
)

Key = Tuple[int, ...]

# Pairwise distance evaluations allowed per certification run.
PAIR_BUDGET = 10 ** 9


@dataclass(frozen=True)
class CodeParams:
    n: int
    d: int
    p: int
    f: Poly
    alphas: Tuple[int, ...]

    @property
    def key_length(self) -> int:
        return self.f.degree

    def describe(self) -> str:
        return f"n={self.n}:d={self.d}:p={self.p}:f={self.f.to_list_string()}"


def make_params(n: int, d: int, f: Optional[Poly] = None) -> CodeParams:
    """Deterministic parameters: least prime p >= n, alpha_i = i - 1, first irreducible f."""
    if n < 4 or d < 4:
        raise ParameterError(f"need n >= 4 and d >= 4, got n={n}, d={d}")
    p = smallest_prime_geq(n)
    if f is None:
        f = find_irreducible(p, d - 2)
    else:
        if f.p != p:
            raise ParameterError(f"f must be over F_{p}")
        if f.degree != d - 2:
            raise ParameterError(f"f must have degree d-2 = {d - 2}, got {f.degree}")
        if not is_irreducible(f):
            raise ParameterError(f"f = {f} is reducible over F_{p}")
    return CodeParams(n, d, p, f, tuple(range(n)))


@lru_cache(maxsize=64)
def factor_keys(params: CodeParams) -> Tuple[Key, ...]:
    """``factor_keys(params)[a]`` is the key of ``x - alpha_a`` (index 0 unused).

    The key map is a homomorphism into (F_p^m, +), so the key of a product of
    powers is the matching integer combination of these vectors.
    """
    m = params.key_length
    out: List[Key] = [(0,) * m]
    for a in range(1, params.n + 1):
        h = PolyResidue.of(Poly.x_minus(params.alphas[a - 1], params.p), params.f)
        out.append(quotient_map(h))
    return tuple(out)


def _check_size(coset: CyclicCoset, params: CodeParams) -> None:
    if coset.n != params.n:
        raise SizeMismatch(f"coset has n={coset.n}, parameters have n={params.n}")


def key_of_perm(sigma: Perm, params: CodeParams) -> Key:
    """Key of any representative; rotation invariant by construction."""
    vecs = factor_keys(params)
    p, m, n = params.p, params.key_length, len(sigma)
    acc = [0] * m
    for i in range(n):
        e = sigma[(i + 1) % n]
        v = vecs[sigma[i]]
        for j in range(m):
            acc[j] += e * v[j]
    return tuple(x % p for x in acc)


def delta_key(coset: CyclicCoset, params: CodeParams) -> Key:
    _check_size(coset, params)
    return key_of_perm(coset.canonical, params)


def delta_key_by_product(sigma: Perm, params: CodeParams) -> Key:
    """Reference route: build the product in F_p[x]/(f^2) and map it."""
    if len(sigma) != params.n:
        raise SizeMismatch("permutation size does not match parameters")
    n = len(sigma)
    acc = PolyResidue.one(params.f)
    for i in range(n):
        base = PolyResidue.of(Poly.x_minus(params.alphas[sigma[i] - 1], params.p), params.f)
        acc = acc * base ** sigma[(i + 1) % n]
    return quotient_map(acc)


# -- fibers --------------------------------------------------------------------------

@dataclass
class FiberTable:
    params: CodeParams
    fibers: Dict[Key, List[CyclicCoset]] = field(default_factory=dict)

    def sizes(self) -> Dict[Key, int]:
        return {k: len(v) for k, v in self.fibers.items()}

    def total(self) -> int:
        return sum(len(v) for v in self.fibers.values())

    def codebook(self, key: Key) -> Codebook:
        return Codebook.from_cosets(self.fibers[key], self.params.d, fiber_label(self.params, key))


def format_key(key: Sequence[int]) -> str:
    return ",".join(str(v) for v in key)


def parse_key(text: str) -> Key:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParameterError(f"bad key {text!r}") from None


def fiber_label(params: CodeParams, key: Key) -> str:
    return f"delta:{params.describe()}:key={format_key(key)}"


def _fiber_shard(args) -> List[Tuple[Key, Perm]]:
    params, start, stop = args
    return [(key_of_perm(c.canonical, params), c.canonical)
            for c in enumerate_cosets(params.n, start, stop, budget=math.inf)]


def build_fibers(params: CodeParams, workers: int = 1, budget: Optional[int] = None) -> FiberTable:
    """Assign every coset to its key; shards are contiguous and merged in order."""
    total = coset_count(params.n)
    check_budget(total, budget, f"building fibers over S_{params.n}/<omega>")
    bounds = shard_bounds(total, max(1, workers) * 4)
    parts = pmap(_fiber_shard, [(params, a, b) for a, b in bounds], workers)
    fibers: Dict[Key, List[CyclicCoset]] = {}
    for part in parts:
        for key, rep in part:
            fibers.setdefault(key, []).append(CyclicCoset(rep))
    return FiberTable(params, dict(sorted(fibers.items())))


def best_fiber(table: FiberTable) -> Codebook:
    """Largest fiber; ties go to the lexicographically smallest key."""
    if not table.fibers:
        raise ParameterError("empty fiber table")
    key = min(table.fibers, key=lambda k: (-len(table.fibers[k]), k))
    return table.codebook(key)


# -- certification ----------------------------------------------------------------------

def min_distance(members: Sequence[Perm], metric: str) -> Optional[int]:
    """Exact minimum pairwise distance, or None for fewer than two members."""
    if len(members) < 2:
        return None
    cyclic = metric == "cyclic"
    tables = [successor_table(m, cyclic=cyclic) for m in members]
    if cyclic:
        edges = [list(zip(m, m[1:] + m[:1])) for m in members]
    else:
        edges = [list(zip(m, m[1:])) for m in members]
    best = None
    for i in range(len(members)):
        ei = edges[i]
        for j in range(i + 1, len(members)):
            tj = tables[j]
            dist = sum(1 for a, b in ei if tj[a] != b)
            if best is None or dist < best:
                best = dist
    return best


def certify_min_distance(book: Codebook, budget: Optional[int] = None) -> int:
    """Exact minimum distance of ``book`` under its own metric."""
    if len(book) < 2:
        raise VacuousDistance("minimum distance of a code with fewer than two members is vacuous")
    pairs = len(book) * (len(book) - 1) // 2
    limit = PAIR_BUDGET if budget is None else budget
    if pairs > limit:
        raise BudgetExceeded(f"{pairs} pairwise distances exceed budget {limit}")
    return min_distance(book.members, book.metric)


@dataclass(frozen=True)
class FiberCertificate:
    key: Key
    size: int
    min_distance: Optional[int]


def _certify_chunk(args) -> List[FiberCertificate]:
    metric, items = args
    return [FiberCertificate(k, len(ms), min_distance(ms, metric)) for k, ms in items]


def certify_fibers(
    fibers: Dict[Key, Sequence[Perm]],
    metric: str = "cyclic",
    workers: int = 1,
) -> List[FiberCertificate]:
    """Exact minimum distance of every fiber, in key order."""
    items = sorted(fibers.items())
    bounds = shard_bounds(len(items), max(1, workers) * 4)
    parts = pmap(_certify_chunk, [(metric, items[a:b]) for a, b in bounds], workers)
    return [c for part in parts for c in part]


def table_members(table: FiberTable) -> Dict[Key, List[Perm]]:
    return {k: [c.canonical for c in v] for k, v in table.fibers.items()}


def pigeonhole_floor(n: int, d: int, p: int) -> int:
    """ceil((n-1)! / p^(d-2)), the guaranteed size of the largest fiber."""
    total, buckets = math.factorial(n - 1), p ** (d - 2)
    return -(-total // buckets)


def summarize(certs: Iterable[FiberCertificate], d: int) -> dict:
    certs = list(certs)
    dists = [c.min_distance for c in certs if c.min_distance is not None]
    return {
        "fibers": len(certs),
        "members": sum(c.size for c in certs),
        "max_fiber": max((c.size for c in certs), default=0),
        "singletons": sum(1 for c in certs if c.min_distance is None),
        "min_distance": min(dists) if dists else None,
        "violations": sum(1 for x in dists if x < d),
    }
