"""Exact integral-closure computations for submodules of free modules.

The package computes, over the rational polynomial ring as a model of the
local ring at the origin: integral closures and reductions of submodules of
free modules, Newton non-degeneracy certificates, analytic spreads through
polyhedral formulas, and Hilbert-Samuel / mixed / Buchsbaum-Rim
multiplicities via local colengths.
"""

from .closure import (
    ArcReport,
    ClosureResult,
    DecomposabilityReport,
    NNDReport,
    NotCertifiedError,
    analytic_spread_module,
    analytic_spread_monomial,
    closure_by_polyhedra,
    closure_via_minors,
    curve_pullback_membership,
    integral_membership,
    integrally_decomposable,
    minors_match_row_products,
    newton_nondegenerate_ideal,
    newton_nondegenerate_module,
    row_products_ideal,
    spread_of_direct_sum,
)
from .grobner import (
    DEFAULT_ORDER,
    GroebnerBasis,
    ModuleOrder,
    TruncationCapError,
    colength,
    groebner_basis,
    groebner_ideal,
    intersect_modules,
    local_colength,
    membership,
    saturate,
    syzygy_kernel,
)
from .modtools import (
    Submodule,
    all_minors,
    fitting_ideal,
    ideal,
    ideal_power,
    ideal_product,
    ideal_sum,
    lambda_set,
    rank,
    rank_preserving_module,
    reduction_matrix,
    to_monomial_ideal,
    vertex_alternation_reduction,
)
from .multiplicity import (
    MultiplicityValue,
    RandomSpec,
    ReductionWitness,
    buchsbaum_rim,
    hilbert_samuel,
    ideal_reduction_check,
    mixed_multiplicity,
    mixed_multiplicity_sum,
    monomial_multiplicity,
)
from .poly import (
    Polynomial,
    PolyParseError,
    RingMismatchError,
    parse_poly,
    serialize_poly,
)
from .polyhedra import (
    Face,
    MonomialIdeal,
    NewtonPolyhedron,
    contains_point,
    covolume,
    minkowski_sum,
    monomial_ideal,
    newton_polyhedron,
    newton_polyhedron_of,
    polyhedra_equal,
    term_ideal,
)

__version__ = "0.1.0"
