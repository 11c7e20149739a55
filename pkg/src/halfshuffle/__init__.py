"""Exact algebra of the half shuffle product on words.

Submodules: ``words`` (elements and pairing), ``products`` (shuffle, half
shuffle, area), ``magma`` (binary trees), ``hall`` (Hall sets), ``pbw`` (PBW
and dual bases), ``areas`` (iterated-area rewriting), ``identities``,
``elimination`` and ``signature`` (numerical path signatures).
"""

from .areas import beta, eval_area_poly, rewrite_area_of_monomial, word_to_area_poly
from .elimination import decompose_series
from .hall import factor_string, generate_hall, hall_factorize, witt_dimension
from .magma import eval_tree, parse_tree
from .pbw import dual_basis_element, dual_basis_via_integrals, expand_in_dual_basis, pbw_element
from .products import area, half_shuffle, shuffle, tensor
from .signature import PiecewisePath, pair_path, worked_example
from .words import FreeElement, pairing, parse_element, parse_word

# the signature() function stays in its submodule so that the name
# halfshuffle.signature keeps referring to the module

__all__ = [
    "FreeElement",
    "PiecewisePath",
    "area",
    "beta",
    "decompose_series",
    "dual_basis_element",
    "dual_basis_via_integrals",
    "eval_area_poly",
    "eval_tree",
    "expand_in_dual_basis",
    "factor_string",
    "generate_hall",
    "half_shuffle",
    "hall_factorize",
    "pair_path",
    "pairing",
    "parse_element",
    "parse_tree",
    "parse_word",
    "pbw_element",
    "rewrite_area_of_monomial",
    "shuffle",
    "tensor",
    "witt_dimension",
    "word_to_area_poly",
    "worked_example",
]

__version__ = "0.1.0"
