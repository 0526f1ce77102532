"""Permutation codes under the block and cyclic block permutation metrics."""

from .codebook import Codebook, read_codebook
from .errors import BlockPermError, BudgetExceeded, ParameterError, SizeMismatch, VacuousDistance
from .perm import (
    CyclicCoset,
    Zn,
    canonical_rep,
    char_set,
    compose,
    coset_slot,
    cyclic_char_set,
    cyclic_norm,
    d_block,
    d_cyclic,
    embed,
    enumerate_cosets,
    identity,
    inverse,
    omega,
)

__version__ = "0.1.0"
