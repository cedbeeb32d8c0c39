# BSD 3-Clause License; see LICENSE

"""
Exact secondary fans of point configurations, with the hypersimplices
``Δ(k, n)`` and finite metric spaces as the main examples.

All arithmetic is exact (:class:`fractions.Fraction`). Regular subdivisions,
secondary cones and their rays, tight spans, enumeration of regular
triangulations up to symmetry, metric cones and fans, coherency indices and
split decompositions are available at the top level; file formats live in
:mod:`secfan.io`.
"""

from __future__ import annotations

from . import io
from ._configuration import (
    DissimilarityMap,
    HeightFunction,
    PointConfiguration,
    coerce_heights,
    pair_index,
    pairs,
)
from ._enumeration import (
    OrbitCatalog,
    affine_lineality,
    collect_coarsest_orbits,
    enumerate_regular_triangulations,
    seed_triangulation,
)
from ._envelope import (
    Envelope,
    TightSpan,
    dual_cell,
    envelope,
    tight_span,
    tight_span_dimension,
)
from ._errors import (
    DegenerateInputError,
    InputError,
    InvariantViolation,
    NotNestedError,
    NotRegularError,
    ResourceLimitError,
    SecfanError,
    TrivialSubdivisionError,
)
from ._exactgeom import (
    HCone,
    VCone,
    cone_dim,
    dd_rays,
    hrep,
    lattice_volume,
    reduce_hcone,
    strict_interior_point,
)
from ._hypersimplex import (
    HypersimplexSpec,
    center_index,
    center_vertex,
    eulerian,
    gr_ray_bound,
    hypersimplex_edges,
    kappa_lift,
    lambda_lift,
    speyer_bound,
    split_pseudometric,
    split_type,
    splits,
    thrackle,
    vertex_index,
    vertex_label,
    vertex_subsets,
    vertices,
)
from ._metrics import (
    MetricConeRays,
    RayOrbit,
    RayType,
    SplitDecomposition,
    classify_ray,
    coherency_index,
    decomposition_report,
    default_split_representatives,
    is_metric,
    is_pseudometric,
    metric_cone,
    metric_cone_rays,
    metric_fan_rays,
    metric_representative,
    parse_decimal_metric,
    secondary_metric_cone,
    split_decompose,
)
from ._secondary import (
    SecondaryCone,
    SecondaryRay,
    flips,
    gkz_vector,
    is_coarsest,
    is_coarsest_subdivision,
    is_regular_triangulation,
    secondary_cone,
    secondary_rays,
)
from ._subdivide import (
    MultisplitResult,
    Subdivision,
    SubdivisionReport,
    all_cells_matroidal,
    coarsening_is_contraction,
    coarsening_map,
    common_refinement,
    describe,
    dual_graph,
    is_coarsest_by_complete_dual,
    is_coherent_decomposition,
    is_coherent_sum,
    is_matroidal_cell,
    is_multisplit,
    is_split,
    is_tropical_pluecker,
    is_valid_subdivision,
    label_cells,
    regular_subdivision,
    satisfies_three_term_pluecker,
    spread,
    subdivision_edges,
    trivial_subdivision,
)
from ._symmetry import (
    GroupSpec,
    VertexGroup,
    act_on_cells,
    act_on_vector,
    canonical_subdivision,
    canonical_vector,
    default_group,
    induced_vertex_permutation,
    orbit_size,
    parse_group,
    subdivision_orbit,
    symmetric_group,
    trivial_group,
    vertex_group,
)

try:
    from ._version import version as __version__
except ModuleNotFoundError:  # not built by hatch-vcs
    __version__ = "unknown"

__all__ = [
    "__version__",
    "io",
    # _configuration
    "DissimilarityMap",
    "HeightFunction",
    "PointConfiguration",
    "coerce_heights",
    "pair_index",
    "pairs",
    # _enumeration
    "OrbitCatalog",
    "affine_lineality",
    "collect_coarsest_orbits",
    "enumerate_regular_triangulations",
    "seed_triangulation",
    # _envelope
    "Envelope",
    "TightSpan",
    "dual_cell",
    "envelope",
    "tight_span",
    "tight_span_dimension",
    # _errors
    "DegenerateInputError",
    "InputError",
    "InvariantViolation",
    "NotNestedError",
    "NotRegularError",
    "ResourceLimitError",
    "SecfanError",
    "TrivialSubdivisionError",
    # _exactgeom
    "HCone",
    "VCone",
    "cone_dim",
    "dd_rays",
    "hrep",
    "lattice_volume",
    "reduce_hcone",
    "strict_interior_point",
    # _hypersimplex
    "HypersimplexSpec",
    "center_index",
    "center_vertex",
    "eulerian",
    "gr_ray_bound",
    "hypersimplex_edges",
    "kappa_lift",
    "lambda_lift",
    "speyer_bound",
    "split_pseudometric",
    "split_type",
    "splits",
    "thrackle",
    "vertex_index",
    "vertex_label",
    "vertex_subsets",
    "vertices",
    # _metrics
    "MetricConeRays",
    "RayOrbit",
    "RayType",
    "SplitDecomposition",
    "classify_ray",
    "coherency_index",
    "decomposition_report",
    "default_split_representatives",
    "is_metric",
    "is_pseudometric",
    "metric_cone",
    "metric_cone_rays",
    "metric_fan_rays",
    "metric_representative",
    "parse_decimal_metric",
    "secondary_metric_cone",
    "split_decompose",
    # _secondary
    "SecondaryCone",
    "SecondaryRay",
    "flips",
    "gkz_vector",
    "is_coarsest",
    "is_coarsest_subdivision",
    "is_regular_triangulation",
    "secondary_cone",
    "secondary_rays",
    # _subdivide
    "MultisplitResult",
    "Subdivision",
    "SubdivisionReport",
    "all_cells_matroidal",
    "coarsening_is_contraction",
    "coarsening_map",
    "common_refinement",
    "describe",
    "dual_graph",
    "is_coarsest_by_complete_dual",
    "is_coherent_decomposition",
    "is_coherent_sum",
    "is_matroidal_cell",
    "is_multisplit",
    "is_split",
    "is_tropical_pluecker",
    "is_valid_subdivision",
    "label_cells",
    "regular_subdivision",
    "satisfies_three_term_pluecker",
    "spread",
    "subdivision_edges",
    "trivial_subdivision",
    # _symmetry
    "GroupSpec",
    "VertexGroup",
    "act_on_cells",
    "act_on_vector",
    "canonical_subdivision",
    "canonical_vector",
    "default_group",
    "induced_vertex_permutation",
    "orbit_size",
    "parse_group",
    "subdivision_orbit",
    "symmetric_group",
    "trivial_group",
    "vertex_group",
]
