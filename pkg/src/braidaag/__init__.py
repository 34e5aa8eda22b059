"""Braid-group commutator key exchange with Mihailova-subgroup private keys."""

from .braid import (
    BraidError,
    BraidWord,
    CanonicalFactor,
    NormalForm,
    conjugate,
    delta,
    equals,
    factor_from_permutation,
    finishing_set,
    free_reduce,
    invert,
    make_word,
    meet,
    multiply,
    normalize,
    parse_word,
    project,
    starting_set,
    tau,
)
from .summit import SummitSetResult, cycling, decycling, super_summit_set

__version__ = "0.1.0"
