"""Free resolutions, Betti tables, regularity, projective dimension, Hilbert series."""

from .betti import (
    BettiTable,
    betti_table,
    projective_dimension,
    projective_dimension_lower_bound,
    regularity,
    regularity_lower_bound,
)
from .hilbert import HilbertSeries, dimension_and_degree, hilbert_series, monomial_numerator
from .resolution import FreeResolution, GradedMap, betti_by_ranks, free_resolution

__all__ = [
    "BettiTable",
    "FreeResolution",
    "GradedMap",
    "HilbertSeries",
    "betti_by_ranks",
    "betti_table",
    "dimension_and_degree",
    "free_resolution",
    "hilbert_series",
    "monomial_numerator",
    "projective_dimension",
    "projective_dimension_lower_bound",
    "regularity",
    "regularity_lower_bound",
]
