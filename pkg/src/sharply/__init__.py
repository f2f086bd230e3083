"""Sharply n-transitive permutation groups, near-fields and near-domains,
and a finite-stage model of the free-product construction of non-split
sharply 2-transitive groups in characteristic 2."""

from sharply.kernels import BACKEND
from sharply.perm import (
    FiniteGroup,
    GroupError,
    Permutation,
    catalog,
    compose,
    generate_group,
    is_n_transitive,
    is_sharply_n_transitive,
    stabilizer,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FiniteGroup",
    "GroupError",
    "Permutation",
    "catalog",
    "compose",
    "generate_group",
    "is_n_transitive",
    "is_sharply_n_transitive",
    "stabilizer",
]
