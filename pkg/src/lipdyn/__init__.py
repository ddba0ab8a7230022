"""Lipschitz spaces on rooted trees, their sequence-space coordinates, and
the operators and dynamics that live on them."""

from .errors import ContractError, DomainError, LipdynError, SpecError, TruncationError, VerificationError
from .scalars import EXACT, FLOATING
from .spaces import (
    LipFunc, SeqVec, Weights, basis_del, basis_e, chi_sector, chi_singleton, from_sequence,
    in_sigma00, lip_norm, plus_norm, sup_norm, to_sequence, weighted_lip_norm, weighted_plus_norm,
    weighted_sup_norm,
)
from .trees import ExplicitTree, PathN0, RootedTree, ZLine, sector_tail_tree, tree_from_json, uniform_tree

__version__ = "0.1.0"

__all__ = [
    "ContractError", "DomainError", "LipdynError", "SpecError", "TruncationError", "VerificationError",
    "EXACT", "FLOATING",
    "LipFunc", "SeqVec", "Weights", "basis_del", "basis_e", "chi_sector", "chi_singleton",
    "from_sequence", "in_sigma00", "lip_norm", "plus_norm", "sup_norm", "to_sequence",
    "weighted_lip_norm", "weighted_plus_norm", "weighted_sup_norm",
    "ExplicitTree", "PathN0", "RootedTree", "ZLine", "sector_tail_tree", "tree_from_json", "uniform_tree",
]
