"""Exact arithmetic toolkit for the ten square-free Mathieu classes on the Leech lattice.

Reconstructs, in exact rational arithmetic, the fixed-point and coinvariant
lattices of the Leech lattice for each square-free-order class of its
point-stabilising Mathieu symmetries, their discriminant forms, the
vector-valued modular form lifted from the reciprocal eta product, the
orbifold characters that equal it, and the root data (multiplicities,
simple roots, Weyl vector) of the associated Borcherds-Kac-Moody algebras.
"""

from .qseries import (
    CycleShape,
    FracPowerSeries,
    InsufficientTruncation,
    ZeroLeadingCoefficient,
    TEN_CLASS_ORDERS,
    cycle_shape_for_order,
    eta,
    eta_product,
    eta_quotient,
    inv_eta_nu,
    t_eigencomponents,
)
from .lattices import (
    DegenerateLattice,
    FiniteQuadraticSpace,
    IsometryAction,
    Lattice,
    TooLarge,
    char_chi_s,
    classify_elements,
    coinvariant_sublattice,
    direct_sum,
    discriminant_form,
    fixed_sublattice,
    hyperbolic_plane,
    milgram_defect,
    rescale,
)
from .shortvec import IndefiniteLattice, count_by_norm, vectors_up_to
from .golay import GolayCode, build_golay
from .leech import (
    ClassData,
    ConstructionInvariantViolated,
    PermutationIsometry,
    SearchExhausted,
    build_leech,
    class_data,
    find_class_element,
)

__version__ = "0.1.0"
