"""Finite semigroups, the left-annihilation congruence tower, and the
fiber-and-family construction that rebuilds a semigroup from its quotient."""

from .core import (
    NonAssociative,
    Semigroup,
    TableFormatError,
    format_table,
    is_left_reductive,
    left_reductive_witness,
    left_translation,
    parse_table,
    power_set,
    read_table,
    validate,
)
from .congruence import (
    Congruence,
    Partition,
    ThetaTower,
    is_congruence,
    quotient,
    star,
    theta,
    theta_n_direct,
    tower,
)
from .construction import FiberSystem, MappingFamily, build, validate_family
from .reconstruction import (
    canonical_derivation,
    exhaustive_pairwise_search,
    pairwise_obstruction,
    rebuild_and_compare,
)
from .classification import collapse_criterion_holds, leftzero_nilpotent_extension, tower_reaches_universal
from .isomorphism import are_isomorphic, canonical_key

__version__ = "0.1.0"
