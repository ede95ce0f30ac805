"""Fundamental heaps, heap colorings and cocycle invariants of surface ribbons."""

from .groups import (
    AbelianGroup,
    FiniteGroup,
    cyclic_coefficients,
    cyclic_group,
    dihedral_group,
)
from .heaps import (
    FiniteHeap,
    TernaryOp,
    check_op_conditions,
    extension_tsd,
    group_heap,
    is_heap,
    is_tsd,
)
from .cochains import (
    Cochain2,
    check_cocycle_conditions,
    coboundary,
    is_cocycle,
    is_mutually_distributive,
    phi_i,
    phi_vec,
    psi_i_dihedral,
    psi_vec,
    ring_cocycle,
    zero_cochain,
)
from .diagram import (
    BoundaryStructure,
    DiagramError,
    RibbonDiagram,
    TopologySummary,
    boundary,
    srd_dumps,
    srd_loads,
    validate,
)

__version__ = "0.1.0"
