"""Equivariant mod 2 homology of finite G-CW complexes, equivariant virtual
Poincare series, and exact invariant theory for linear finite-group actions."""

from .gf2 import BACKEND, BitMatrix, Subspace
from .groups import FiniteGroup, cyclic, direct_product, from_generators, trivial_group
from .gcw import GCWComplex, homology_dims, validate
from .equiv_homology import (
    cohomology_dims,
    equivariant_homology_dims,
    group_homology_dims,
    spectral_pages,
)
from .series import TruncSeries

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitMatrix",
    "Subspace",
    "FiniteGroup",
    "cyclic",
    "direct_product",
    "from_generators",
    "trivial_group",
    "GCWComplex",
    "homology_dims",
    "validate",
    "cohomology_dims",
    "equivariant_homology_dims",
    "group_homology_dims",
    "spectral_pages",
    "TruncSeries",
]
