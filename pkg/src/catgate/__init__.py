"""Simulation of a beamsplitter gate that prepares squeezed cat states.

A vacuum signal and a cubic-phase (or number-state) resource are mixed on a
real beamsplitter and the resource momentum is measured.  The package
computes the conditional output state, its outcome probability, fidelity
to a reference squeezed cat and Wigner functions.
"""
__version__ = "0.1.0"

from .errors import (
    AiryOverflowError,
    BranchError,
    CatGateError,
    GridMismatchError,
    ParameterRangeError,
    QuadratureError,
)
from .gate import (
    ConditionalState,
    FockGateConfig,
    GateConfig,
    GateTemplate,
    fock_output_wf,
    output_wf_closed,
    output_wf_integral,
    success_probability,
)
from .states import GridSpec, PerfectCatSpec, QuadratureGrid, perfect_cat_wf
from .gate import gate_grid, unnormalized_closed, unnormalized_integral
from .semiclassical import map_cubic, map_fock, perfect_cat_from_semiclassics, ym_for_half_spacing
from .analysis import (
    REFERENCE_TABLE,
    cat_fidelity,
    fidelity,
    fidelity_map,
    find_optimal_gamma,
    infidelity_slice,
    probability_curve,
    refine_reference_cell,
    wigner,
)
