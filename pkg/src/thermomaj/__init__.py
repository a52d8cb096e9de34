"""Exact thermomajorization: curves, orders, polytopes and processes.

The package decides d-majorization between real vectors with exact
rational arithmetic, enumerates the thermomajorization polytope M_d(y) and
the Gibbs-stochastic polytope s_d(n), constructs beta-permutation process
matrices, and diagnoses degeneracy, stability and well-structuredness of
Gibbs vectors.  See the ``thermo`` command-line tool for the same
functionality from a shell.
"""

from .curve import (
    ThermoCurve,
    build_curve,
    eval_curve,
    legendre_dual,
    legendre_norm_form,
    min_form_value,
    set_debug,
)
from .errors import DimensionError, DomainError, ParseError, ResourceLimitError
from .exact import (
    Mat,
    Perm,
    Vec,
    all_perms,
    apply_permutation,
    compose,
    mat_mul,
    mat_vec,
    one_norm,
    parse_vector,
    perm_matrix,
    rat_parse,
    total,
    vec,
)
from .order import (
    ConjectureProbe,
    FeasibilityResult,
    conjecture_probe,
    find_transfer,
    gibbs_point,
    norm_criterion,
    thermomajorizes,
    zero_temp_check,
)
from .polytope import (
    Facet,
    VertexSet,
    affine_dim,
    classical_vertex_count,
    enumerate_vertices,
    extreme_point,
    facet_description,
    member,
    polytope_dim,
)
from .process import (
    beta_five_case,
    beta_permutation,
    beta_permutation_sparse,
    beta_profile,
    is_extreme_of_sdn,
    permuted_form,
    support_edges,
    transfer_to_extreme,
    verify_gibbs_stochastic,
)
from .sdn import count_non_beta, enumerate_sdn_vertices, non_beta_vertices, sdn_vertex_count
from .structure import (
    DegeneracyReport,
    StructureReport,
    critical_temperature,
    cycle_witness,
    degeneracy_report,
    is_stable,
    is_well_structured,
    same_extreme,
    slope_cells,
    sorting_preimage_count,
    structure_at_temperature,
    structure_report,
    subchamber_classify,
    virtual_temperatures,
    well_structured_margin,
)

__all__ = [name for name in dir() if not name.startswith("_")]
