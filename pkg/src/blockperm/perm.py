"""Permutations on {1..n}, cyclic arithmetic and the two adjacency metrics.

Permutations are plain tuples in one-line notation: ``sigma[i - 1]`` is the
image of ``i``.  Cosets of the subgroup generated by the n-cycle
``omega = (2, 3, ..., n, 1)`` are represented by their unique member that
fixes 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice, permutations
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, ParameterError, SizeMismatch

Perm = Tuple[int, ...]
Edge = Tuple[int, int]

# (n - 1)! for n = 11; larger exhaustive runs need an explicit override.
DEFAULT_BUDGET = math.factorial(10)


# -- Z_n with representatives {1, ..., n} ------------------------------------

def zn_add(i: int, j: int, n: int) -> int:
    return (i + j - 1) % n + 1


def zn_sub(i: int, j: int, n: int) -> int:
    return (i - j - 1) % n + 1


@dataclass(frozen=True)
class Zn:
    """Element of Z_n where the zero class is written as ``n``."""

    value: int
    n: int

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.value <= self.n:
            raise ParameterError(f"{self.value} is not in {{1..{self.n}}}")

    def _check(self, other: "Zn") -> None:
        if not isinstance(other, Zn):
            raise TypeError("Zn operand expected")
        if other.n != self.n:
            raise SizeMismatch(f"modulus mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Zn") -> "Zn":
        self._check(other)
        return Zn(zn_add(self.value, other.value, self.n), self.n)

    def __sub__(self, other: "Zn") -> "Zn":
        self._check(other)
        return Zn(zn_sub(self.value, other.value, self.n), self.n)


# -- permutations -------------------------------------------------------------

def check_perm(images: Sequence[int]) -> Perm:
    """Return ``images`` as a tuple, raising if it is not a permutation."""
    perm = tuple(int(v) for v in images)
    n = len(perm)
    seen = [0] * (n + 1)
    for pos, v in enumerate(perm, 1):
        if not 1 <= v <= n:
            raise ParameterError(f"value {v} at position {pos} is outside 1..{n}")
        if seen[v]:
            raise ParameterError(
                f"value {v} at position {pos} repeats position {seen[v]}")
        seen[v] = pos
    return perm


def parse_perm(text: str) -> Perm:
    """Parse whitespace or comma separated one-line notation."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise ParameterError("empty permutation")
    values = []
    for pos, tok in enumerate(tokens, 1):
        try:
            values.append(int(tok))
        except ValueError:
            raise ParameterError(f"token {pos} ({tok!r}) is not an integer") from None
    return check_perm(values)


def format_perm(perm: Sequence[int]) -> str:
    return " ".join(str(v) for v in perm)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def omega(n: int) -> Perm:
    """The n-cycle (1 2 ... n) in one-line form (2, 3, ..., n, 1)."""
    return tuple(range(2, n + 1)) + (1,)


def _same_size(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise SizeMismatch(f"length mismatch: {len(a)} vs {len(b)}")
    return len(a)


def compose(sigma: Perm, tau: Perm) -> Perm:
    """``(sigma o tau)(i) = sigma(tau(i))``."""
    _same_size(sigma, tau)
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma, 1):
        inv[v - 1] = i
    return tuple(inv)


def power(sigma: Perm, k: int) -> Perm:
    result = identity(len(sigma))
    base = sigma if k >= 0 else inverse(sigma)
    for _ in range(abs(k)):
        result = compose(result, base)
    return result


# -- characteristic sets -------------------------------------------------------

def char_set(sigma: Perm) -> FrozenSet[Edge]:
    return frozenset(zip(sigma, sigma[1:]))


def cyclic_char_set(sigma: Perm) -> FrozenSet[Edge]:
    return frozenset(zip(sigma, sigma[1:] + sigma[:1]))


def successor_table(sigma: Perm, cyclic: bool = True) -> List[int]:
    """Direct-indexed edge table: ``table[a] = b`` for each edge ``(a, b)``.

    Index 0 is unused.  Without ``cyclic`` the last value has no successor
    and maps to 0.
    """
    table = [0] * (len(sigma) + 1)
    for a, b in zip(sigma, sigma[1:]):
        table[a] = b
    if cyclic:
        table[sigma[-1]] = sigma[0]
    return table


def d_block(sigma: Perm, tau: Perm) -> int:
    """Block permutation distance ``|A(sigma) minus A(tau)|``."""
    _same_size(sigma, tau)
    nxt = successor_table(tau, cyclic=False)
    return sum(1 for a, b in zip(sigma, sigma[1:]) if nxt[a] != b)


def _d_cyclic_raw(sigma: Perm, tau: Perm) -> int:
    nxt = successor_table(tau)
    return sum(1 for a, b in zip(sigma, sigma[1:] + sigma[:1]) if nxt[a] != b)


# -- cosets of <omega> -----------------------------------------------------------

def _rotate_one_to(sigma: Perm, slot: int) -> Perm:
    """The member of ``sigma <omega>`` with value 1 at position ``slot``."""
    k = sigma.index(1) - (slot - 1)
    return sigma[k:] + sigma[:k]


@dataclass(frozen=True, order=True)
class CyclicCoset:
    """Left coset ``sigma <omega>``, stored as the member fixing 1."""

    canonical: Perm

    def __post_init__(self):
        if not self.canonical or self.canonical[0] != 1:
            raise ParameterError("canonical coset member must fix 1")

    @classmethod
    def of(cls, sigma: Sequence[int]) -> "CyclicCoset":
        return canonical_rep(tuple(sigma))

    @property
    def n(self) -> int:
        return len(self.canonical)

    def members(self) -> List[Perm]:
        """All n members ``canonical o omega^k`` for k = 0..n-1."""
        c = self.canonical
        return [c[k:] + c[:k] for k in range(self.n)]

    def __str__(self) -> str:
        return format_perm(self.canonical)


def canonical_rep(sigma: Perm) -> CyclicCoset:
    return CyclicCoset(_rotate_one_to(tuple(sigma), 1))


def coset_slot(sigma: Perm) -> int:
    """Position of the value 1, so ``embed(canonical_rep(s), coset_slot(s)) == s``."""
    return sigma.index(1) + 1


def embed(coset: CyclicCoset, slot: int) -> Perm:
    if not 1 <= slot <= coset.n:
        raise ParameterError(f"slot {slot} outside 1..{coset.n}")
    return _rotate_one_to(coset.canonical, slot)


def d_cyclic(a: CyclicCoset, b: CyclicCoset) -> int:
    """Cyclic block permutation distance ``|A_c(a) minus A_c(b)|`` on cosets."""
    _same_size(a.canonical, b.canonical)
    return _d_cyclic_raw(a.canonical, b.canonical)


def cyclic_norm(a: CyclicCoset) -> int:
    c = a.canonical
    n = len(c)
    return sum(1 for i in range(n) if c[(i + 1) % n] != c[i] % n + 1)


# -- enumeration ----------------------------------------------------------------

def coset_count(n: int) -> int:
    return math.factorial(n - 1)


def check_budget(count: int, budget: Optional[int], what: str) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if count > limit:
        raise BudgetExceeded(
            f"{what} needs {count} items, budget is {limit} (raise with --budget)")


def enumerate_cosets(
    n: int,
    start: int = 0,
    stop: Optional[int] = None,
    budget: Optional[int] = None,
) -> Iterator[CyclicCoset]:
    """Yield cosets of S_n/<omega> in lexicographic order of their canonical member.

    ``start``/``stop`` select a contiguous index range so callers can shard.
    """
    if n < 2:
        raise ParameterError("n must be at least 2")
    check_budget(coset_count(n), budget, f"enumerating S_{n}/<omega>")
    for rest in islice(permutations(range(2, n + 1)), start, stop):
        yield CyclicCoset((1,) + rest)


def enumerate_perms(n: int, budget: Optional[int] = None) -> Iterator[Perm]:
    check_budget(math.factorial(n), budget, f"enumerating S_{n}")
    return permutations(range(1, n + 1))
