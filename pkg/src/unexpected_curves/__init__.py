"""Exact computations on plane line arrangements and the unexpected curves of their dual points."""

from .arrangement import (
    LineArrangement,
    PointConfiguration,
    dual_arrangement,
    is_nearly_supersolvable,
    is_supersolvable,
    max_multiplicity,
    sing_at_least,
    singular_locus,
)
from .certifier import UnexpectedVerdict, certify, certify_degree, certify_problem_b, certify_supersolvable
from .fields import CyclotomicEmbedding, Fp
from .geometry import ProjLine, ProjPoint
from .interpolation import FatPoint, ideal_dimension, multiplicity_index, t_index
from .splitting import (
    SplittingType,
    addition_chain,
    empirical_splitting,
    nearly_supersolvable_splitting,
    supersolvable_splitting,
)

__all__ = [
    "CyclotomicEmbedding", "FatPoint", "Fp", "LineArrangement", "PointConfiguration", "ProjLine",
    "ProjPoint", "SplittingType", "UnexpectedVerdict", "addition_chain", "certify", "certify_degree",
    "certify_problem_b", "certify_supersolvable", "dual_arrangement", "empirical_splitting",
    "ideal_dimension", "is_nearly_supersolvable", "is_supersolvable", "max_multiplicity",
    "multiplicity_index", "nearly_supersolvable_splitting", "sing_at_least", "singular_locus",
    "supersolvable_splitting", "t_index",
]
__version__ = "0.1.0"
