"""Additive posets over GF(2): construction, structure, invariants and realization."""

from __future__ import annotations

from .errors import AxiomError, NotPlainError, ParseError, PosetError, TooLargeError
from .gf2 import BitMatrix, BitVec
from .homology import ChainComplex, Graph, h1_poset, hn_poset
from .kernels import BACKEND
from .poset import (AdditivePoset, direct_sum, even_powerset, from_boolean_ring,
                    from_functionals, from_relations, is_isomorphic, pointed_poset, powerset,
                    subspace_pointed_poset, trivial_poset, verify_axioms)

__all__ = [
    "AdditivePoset", "AxiomError", "BACKEND", "BitMatrix", "BitVec", "ChainComplex", "Graph",
    "NotPlainError", "ParseError", "PosetError", "TooLargeError", "direct_sum", "even_powerset",
    "from_boolean_ring", "from_functionals", "from_relations", "h1_poset", "hn_poset",
    "is_isomorphic", "pointed_poset", "powerset", "subspace_pointed_poset", "trivial_poset",
    "verify_axioms",
]
