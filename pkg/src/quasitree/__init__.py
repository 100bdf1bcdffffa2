"""Quasi-tree-partitions: construction, validation and clustered colouring."""

from .colouring import (
    ColouringReport,
    ListAssignment,
    SetColouring,
    clean_bound,
    colour_clean_qtp,
    colour_fractional_qtp,
    colour_heavy_qtp,
    fractional_bound,
    heavy_bound,
    validate_colouring,
)
from .construct import (
    BuildParams,
    build_qtp_degeneracy,
    build_qtp_excluded,
    build_qtp_excluded_clean,
    build_qtp_kst_free,
    excluded_t,
)
from .errors import (
    BadParams,
    HeavyCapViolated,
    InvalidDecomposition,
    ListsTooSmall,
    NotClean,
    ParseError,
    PatternPresent,
    PreconditionViolation,
    QuasiTreeError,
    SearchCapExceeded,
    SelfLoop,
    TooLarge,
    UnknownFamily,
    VertexOutOfRange,
)
from .generators import generate
from .graph import (
    Graph,
    VertexSet,
    build_graph,
    common_neighbours,
    components,
    degeneracy_order,
    induced_subgraph,
    neighbours_at_least,
)
from .patterns import (
    PatternWitness,
    RhoResult,
    c_bound,
    extension_or_skewer,
    find_kst,
    find_kst_star,
    rho_oracle,
    verify_rho,
    verify_witness,
)
from .qtp import (
    QtpReport,
    QuasiTreePartition,
    RootedTree,
    heavy_children,
    loads_and_weight,
    to_treedec,
    validate_qtp,
    vertical_path_check,
)
from .treedec import (
    SeparatorSplit,
    TreeDecomposition,
    balanced_separator,
    heuristic_treedec,
    restrict,
    treewidth_exact_small,
    validate_treedec,
)
