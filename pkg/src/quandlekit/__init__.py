"""Exact computations with quandle cocycles, knot shadow colorings and group cycles."""
__version__ = "0.1.0"

from .errors import (AssumptionViolated, InternalError, InvalidInput, InvalidParameter,
                     ParseError, QuandleKitError, ResourceLimit)
from .grouprings import GroupRingValue
from .groups import FiniteGroup, build_cyclic, build_dihedral, build_symmetric
from .quandles import FiniteQuandle, conj_quandle, dihedral_quandle, trivial_quandle
from .chains import Cochain, FormalChain, HomogeneousCochain, is_coboundary, is_cocycle, \
    quandle_homology
from .cocycles import b1, b2, cup_product, d, theta
from .knots import KnotDiagram, builtin_diagram, parse_pd, shadow_cocycle_invariant, torus_2p
from .covers import cyclic_cover_presentation, dw_lens, torus_lens_comparison, wirtinger

__all__ = [
    "AssumptionViolated", "InternalError", "InvalidInput", "InvalidParameter", "ParseError",
    "QuandleKitError", "ResourceLimit", "GroupRingValue", "FiniteGroup", "build_cyclic",
    "build_dihedral", "build_symmetric", "FiniteQuandle", "conj_quandle", "dihedral_quandle",
    "trivial_quandle", "Cochain", "FormalChain", "HomogeneousCochain", "is_coboundary",
    "is_cocycle", "quandle_homology", "b1", "b2", "cup_product", "d", "theta", "KnotDiagram",
    "builtin_diagram", "parse_pd", "shadow_cocycle_invariant", "torus_2p",
    "cyclic_cover_presentation", "dw_lens", "torus_lens_comparison", "wirtinger",
]
