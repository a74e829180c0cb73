"""Exhaustive, desk-scale constructions from the polynomial method and friends.

Subpackages by topic: :mod:`field` and :mod:`poly` for finite-field algebra,
:mod:`kakeya`, :mod:`extract`, :mod:`lcc`, :mod:`addcomb`, :mod:`incidence`,
:mod:`sgdesign` (with :mod:`scaling`) and the :mod:`cli` front end.
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec, get_field
from .poly import MultiPoly, UniPoly

__version__ = "0.1.0"

__all__ = ["FieldSpec", "FieldElement", "get_field", "MultiPoly", "UniPoly", "__version__"]
