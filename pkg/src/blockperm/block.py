"""Block permutation codes: the nabla partition of S_n and a systematic encoder.

The partition labels each permutation by the key of its coset (built with
polynomial degree d - 1, i.e. a cyclic code of distance d + 1) and the slot
where the value 1 sits.  Permutations sharing a label are at block distance at
least d.

The systematic encoder appends 3d - 1 symbols n+1, ..., n+3d-1 to a
permutation, inserting each after a value chosen by a Reed-Solomon codeword
that encodes the permutation's label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import smallest_prime_geq, smallest_prime_geq_half
from .codebook import Codebook
from .cyclic import CodeParams, Key, format_key, key_of_perm, make_params
from .errors import ParameterError, SizeMismatch
from .parallel import chunk_seeds, pmap, shard_bounds
from .perm import (
    CyclicCoset,
    Perm,
    check_budget,
    check_perm,
    coset_count,
    coset_slot,
    d_block,
    embed,
    enumerate_cosets,
)


@dataclass(frozen=True, order=True)
class NablaLabel:
    key: Key
    slot: int

    def __str__(self) -> str:
        return f"key={format_key(self.key)}:slot={self.slot}"


@lru_cache(maxsize=64)
def nabla_params(n: int, d: int) -> CodeParams:
    """Key parameters for block distance d: the cyclic construction at d + 1."""
    return make_params(n, d + 1)


def nabla(sigma: Perm, n: int, d: int) -> NablaLabel:
    if len(sigma) != n:
        raise SizeMismatch(f"permutation has length {len(sigma)}, expected {n}")
    return NablaLabel(key_of_perm(sigma, nabla_params(n, d)), coset_slot(sigma))


def _partition_shard(args) -> List[Tuple[Key, Perm]]:
    params, start, stop = args
    return [(key_of_perm(c.canonical, params), c.canonical)
            for c in enumerate_cosets(params.n, start, stop, budget=math.inf)]


def partition_blocks(
    n: int, d: int, workers: int = 1, budget: Optional[int] = None
) -> Dict[NablaLabel, Codebook]:
    """Split S_n into classes of equal nabla label, each a block code of distance >= d."""
    check_budget(math.factorial(n), budget, f"partitioning S_{n}")
    params = nabla_params(n, d)
    bounds = shard_bounds(coset_count(n), max(1, workers) * 4)
    parts = pmap(_partition_shard, [(params, a, b) for a, b in bounds], workers)
    classes: Dict[NablaLabel, List[Perm]] = {}
    for part in parts:
        for key, rep in part:
            coset = CyclicCoset(rep)
            for s in range(1, n + 1):
                classes.setdefault(NablaLabel(key, s), []).append(embed(coset, s))
    return {
        label: Codebook("block", n, d, tuple(members), f"nabla:n={n}:d={d}:{label}")
        for label, members in sorted(classes.items())
    }


# -- extension -------------------------------------------------------------------------

def extend(sigma: Perm, seq: Sequence[int]) -> Perm:
    """Insert n+1, ..., n+K one at a time, n+m right after the value seq[m-1].

    Symbols inserted after the same value therefore end up in descending order.
    """
    n = len(sigma)
    out = list(sigma)
    for m, s in enumerate(seq, 1):
        if not 1 <= s <= n:
            raise ParameterError(f"extension entry {s} at position {m} outside 1..{n}")
        out.insert(out.index(s) + 1, n + m)
    return tuple(out)


def project(word: Perm, n: int) -> Perm:
    """Drop every value above n."""
    return tuple(v for v in word if v <= n)


def hamming_set(s1: Sequence[int], s2: Sequence[int]) -> FrozenSet[int]:
    if len(s1) != len(s2):
        raise SizeMismatch(f"length mismatch: {len(s1)} vs {len(s2)}")
    return frozenset(a for a, b in zip(s1, s2) if a != b)


def hamming_distance(s1: Sequence[int], s2: Sequence[int]) -> int:
    if len(s1) != len(s2):
        raise SizeMismatch(f"length mismatch: {len(s1)} vs {len(s2)}")
    return sum(1 for a, b in zip(s1, s2) if a != b)


# -- Reed-Solomon auxiliary sets ----------------------------------------------------------

@dataclass(frozen=True)
class ReedSolomonSet:
    """Evaluation code RS_q[length, dimension] on the points 0..length-1.

    Member ``t`` is the polynomial whose base-q digits are t (lowest first),
    evaluated at each point and shifted by +1 into {1..q}.
    """

    q: int
    length: int
    dimension: int

    def __post_init__(self):
        if self.length > self.q:
            raise ParameterError(f"length {self.length} exceeds field size {self.q}")
        if not 1 <= self.dimension <= self.length:
            raise ParameterError("need 1 <= dimension <= length")

    @property
    def size(self) -> int:
        return self.q ** self.dimension

    @property
    def designed_distance(self) -> int:
        return self.length - self.dimension + 1

    def message(self, t: int) -> Tuple[int, ...]:
        if not 0 <= t < self.size:
            raise ParameterError(f"message index {t} outside 0..{self.size - 1}")
        digits = []
        for _ in range(self.dimension):
            t, r = divmod(t, self.q)
            digits.append(r)
        return tuple(digits)

    def encode(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        q = self.q
        out = []
        for x in range(self.length):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % q
            out.append(acc + 1)
        return tuple(out)

    def member(self, t: int) -> Tuple[int, ...]:
        return self.encode(self.message(t))


@dataclass(frozen=True)
class AuxiliarySet(ReedSolomonSet):
    n: int = 0
    d: int = 0
    p: int = 0


def rs_auxiliary_set(n: int, d: int) -> AuxiliarySet:
    """RS_q[3d-1, 2d] with q the least prime >= floor(n/2), as a set of length-(3d-1) sequences."""
    violated = []
    if n < 12:
        violated.append(f"n >= 12 (n={n})")
    if d < 4:
        violated.append(f"d >= 4 (d={d})")
    if n < 6 * d:
        violated.append(f"n >= 6d ({n} < {6 * d})")
    if violated:
        raise ParameterError("auxiliary set hypotheses violated: " + "; ".join(violated))
    p = smallest_prime_geq(n)
    q = smallest_prime_geq_half(n)
    if 3 * d - 1 > q:
        raise ParameterError(f"3d-1 <= q violated ({3 * d - 1} > {q})")
    if 4 * q + 4 < p:
        raise ParameterError(f"4q+4 >= p violated ({4 * q + 4} < {p})")
    if q ** (2 * d) < n * p ** (d - 1):
        raise ParameterError(f"q^(2d) >= n p^(d-1) violated ({q ** (2 * d)} < {n * p ** (d - 1)})")
    return AuxiliarySet(q=q, length=3 * d - 1, dimension=2 * d, n=n, d=d, p=p)


def label_rank(label: NablaLabel, n: int, p: int) -> int:
    """Mixed-radix rank (sum key_i p^i) * n + (slot - 1); injective on F_p^(d-1) x Z_n."""
    key_int = 0
    for i, v in enumerate(label.key):
        key_int += v * p ** i
    return key_int * n + (label.slot - 1)


# -- systematic encoder --------------------------------------------------------------------

@dataclass(frozen=True)
class SystematicEncoder:
    n: int
    d: int
    aux: AuxiliarySet

    @property
    def length(self) -> int:
        return self.n + self.aux.length

    def label(self, sigma: Perm) -> NablaLabel:
        return nabla(sigma, self.n, self.d)

    def extension(self, sigma: Perm) -> Tuple[int, ...]:
        return self.aux.member(label_rank(self.label(sigma), self.n, self.aux.p))

    def encode(self, sigma: Perm) -> Perm:
        return extend(sigma, self.extension(sigma))

    def project(self, word: Perm) -> Perm:
        return project(word, self.n)


@lru_cache(maxsize=16)
def systematic_encoder(n: int, d: int) -> SystematicEncoder:
    return SystematicEncoder(n, d, rs_auxiliary_set(n, d))


def encode_systematic(sigma: Perm, n: int, d: int) -> Perm:
    sigma = check_perm(sigma)
    if len(sigma) != n:
        raise SizeMismatch(f"permutation has length {len(sigma)}, expected {n}")
    return systematic_encoder(n, d).encode(sigma)


@dataclass(frozen=True)
class PairReport:
    distance: int
    required: int

    @property
    def passed(self) -> bool:
        return self.distance >= self.required


def verify_pair(a: Perm, b: Perm, d: int) -> PairReport:
    return PairReport(d_block(a, b), d)


# -- seeded sampling verifiers --------------------------------------------------------------

SAMPLE_CHUNK = 5000


def _aux_chunk(args) -> dict:
    n, d, seed, count = args
    aux = rs_auxiliary_set(n, d)
    rng = np.random.default_rng(seed)
    min_ham = min_set = None
    violations = equal = 0
    for _ in range(count):
        t1, t2 = (int(v) for v in rng.integers(0, aux.size, size=2))
        if t1 == t2:
            equal += 1
            continue
        c1, c2 = aux.member(t1), aux.member(t2)
        h = hamming_distance(c1, c2)
        s = len(hamming_set(c1, c2))
        min_ham = h if min_ham is None else min(min_ham, h)
        min_set = s if min_set is None else min(min_set, s)
        if h < d:
            violations += 1
    return {"pairs": count, "equal_draws": equal, "min_hamming": min_ham,
            "min_hamming_set": min_set, "violations": violations}


def _merge_min(values):
    values = [v for v in values if v is not None]
    return min(values) if values else None


def sample_aux_pairs(n: int, d: int, pairs: int, seed: int, workers: int = 1) -> dict:
    """Hamming distance of random distinct member pairs of the auxiliary set."""
    tasks = [(n, d, ss, c) for ss, c in chunk_seeds(seed, pairs, SAMPLE_CHUNK)]
    parts = pmap(_aux_chunk, tasks, workers)
    return {
        "n": n, "d": d, "seed": seed,
        "pairs": sum(p["pairs"] for p in parts),
        "equal_draws": sum(p["equal_draws"] for p in parts),
        "min_hamming": _merge_min(p["min_hamming"] for p in parts),
        "min_hamming_set": _merge_min(p["min_hamming_set"] for p in parts),
        "violations": sum(p["violations"] for p in parts),
    }


def _sys_chunk(args) -> dict:
    n, d, seed, count = args
    enc = systematic_encoder(n, d)
    rng = np.random.default_rng(seed)
    min_dist = None
    violations = projection_failures = same_label = identical = 0
    for _ in range(count):
        a = tuple(int(v) + 1 for v in rng.permutation(n))
        b = tuple(int(v) + 1 for v in rng.permutation(n))
        if a == b:
            identical += 1
            continue
        wa, wb = enc.encode(a), enc.encode(b)
        if enc.project(wa) != a or enc.project(wb) != b:
            projection_failures += 1
        if enc.label(a) == enc.label(b):
            same_label += 1
        dist = d_block(wa, wb)
        min_dist = dist if min_dist is None else min(min_dist, dist)
        if dist < d:
            violations += 1
    return {"pairs": count, "identical": identical, "min_distance": min_dist,
            "violations": violations, "projection_failures": projection_failures,
            "same_label": same_label}


def sample_systematic_pairs(n: int, d: int, pairs: int, seed: int, workers: int = 1) -> dict:
    """Block distance of encodings of random permutation pairs, plus projection checks."""
    enc = systematic_encoder(n, d)
    tasks = [(n, d, ss, c) for ss, c in chunk_seeds(seed, pairs, SAMPLE_CHUNK)]
    parts = pmap(_sys_chunk, tasks, workers)
    return {
        "n": n, "d": d, "N": enc.length, "seed": seed,
        "pairs": sum(p["pairs"] for p in parts),
        "identical": sum(p["identical"] for p in parts),
        "min_distance": _merge_min(p["min_distance"] for p in parts),
        "violations": sum(p["violations"] for p in parts),
        "projection_failures": sum(p["projection_failures"] for p in parts),
        "same_label": sum(p["same_label"] for p in parts),
    }
