"""Graded ideals with extreme regularity.

Polynomial rings and Groebner bases (:mod:`extremereg.polyring`,
:mod:`extremereg.groebner`), minimal free resolutions and Hilbert series
(:mod:`extremereg.invariants`), the amplifier and Rees-like constructions
(:mod:`extremereg.constructions`), exact bound arithmetic
(:mod:`extremereg.bounds`) and a command line front end
(:mod:`extremereg.cli`).
"""

from .constructions import amplify, recipe_pd, recipe_prime, recipe_three_gen, rees_like_prime
from .groebner import buchberger, is_member, normal_form, syzygy_basis
from .invariants import betti_table, free_resolution, hilbert_series, projective_dimension, regularity
from .polyring import GF, QQ, Ideal, Polynomial, PolynomialRing

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Ideal",
    "Polynomial",
    "PolynomialRing",
    "amplify",
    "betti_table",
    "buchberger",
    "free_resolution",
    "hilbert_series",
    "is_member",
    "normal_form",
    "projective_dimension",
    "recipe_pd",
    "recipe_prime",
    "recipe_three_gen",
    "rees_like_prime",
    "regularity",
    "syzygy_basis",
]
