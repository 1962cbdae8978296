"""Exact integral-lattice engine: HNF, trace-form Grams, LLL, enumeration."""

from .ball import BallQuery, Threshold
from .hnf import hnf
from .lattice import (
    DEFAULT_DIM_CAP,
    IntegralLattice,
    ball_histogram,
    block_form,
    count_in_ball,
    counts_for_queries,
    gram,
    lll_reduce,
    short_vectors,
    shortest_vector,
)
from .lll import gso, is_lll_reduced, lll_gram
from .scale import ONE, Scale

__all__ = [
    "BallQuery",
    "Threshold",
    "hnf",
    "DEFAULT_DIM_CAP",
    "IntegralLattice",
    "ball_histogram",
    "block_form",
    "count_in_ball",
    "counts_for_queries",
    "gram",
    "lll_reduce",
    "short_vectors",
    "shortest_vector",
    "gso",
    "is_lll_reduced",
    "lll_gram",
    "ONE",
    "Scale",
]
