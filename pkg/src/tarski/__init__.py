"""Computational workbench for Boolean inverse meet-monoids.

Finite instances (partial bijections, products, local bisections of
finite groupoids) get exact Stone-type duality and classification; the
prefix-map monoids on Cantor space get exact arithmetic and constructive
witness extraction.
"""

from .core import (AlgebraError, Incompatible, Monoid, NotAUnit, NotBalanced,
                   NotInfinitesimal)
from .cuntz import CuntzMonoid, EPPoint, PrefixMap
from .finite import (Arrow, FiniteGroupoid, LocalBisectionMonoid,
                     PartialBijection, ProductMonoid, SymmetricInverseMonoid)

__all__ = [
    "AlgebraError", "Incompatible", "Monoid", "NotAUnit", "NotBalanced",
    "NotInfinitesimal", "CuntzMonoid", "EPPoint", "PrefixMap", "Arrow",
    "FiniteGroupoid", "LocalBisectionMonoid", "PartialBijection",
    "ProductMonoid", "SymmetricInverseMonoid",
]

__version__ = "0.1.0"
