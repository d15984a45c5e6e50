"""stablespan: weighted stable graph recognition with exact certificates.

A connected weighted graph is *stable* when its weighted spanning-tree
degree enumerator never vanishes on the open upper half-plane.  These are
exactly the graphs buildable from a single vertex by weight-preserving twin
copies, articulation gluings, and positive vertex scalings, and exactly the
weighted graphs of rank-width 1.  This package decides membership, emits
replayable construction traces, factors the enumerator into linear forms,
builds width-1 decompositions, and falsifies stability with exact
upper-half-plane zero certificates.  All arithmetic is exact rational.
"""

from .errors import (
    DisconnectedGraph,
    EmptySet,
    InvalidGraph,
    InvalidSubset,
    LeafMismatch,
    MalformedTrace,
    NonpositiveWeight,
    ParseError,
    SizeCapExceeded,
    StableSpanError,
    VariableMismatch,
    ZeroPolynomial,
    ZeroWeightEdge,
)
from .factorization import LinearFactorization, factor_from_trace, verify_factorization
from .graphs import (
    BlockDecomposition,
    ContractiblePair,
    MixedSignCertificate,
    WeightedGraph,
    biconnected_components,
    find_contractible_pairs,
    flip_blocks,
    induced_subgraph,
    normalize_signs,
    scale_vertex,
    star_polynomial,
)
from .polynomials import (
    GaussianRational,
    LinearForm,
    Polynomial,
    is_real_rooted,
    parse_polynomial,
)
from .probe import (
    FalsifyNotFound,
    RealRootednessViolation,
    ZeroCertificate,
    falsify,
    k4_discriminant,
    verify_certificate,
    verify_violation,
)
from .rankwidth import (
    CutRankResult,
    DecompositionTree,
    build_rank_decomposition,
    cut_rank,
    enumerate_cubic_trees,
    exhaustive_min_rankwidth,
    tree_width,
)
from .recognition import (
    ForbiddenSubgraph,
    Obstruction,
    RecognitionResult,
    ReductionTrace,
    RemovePendant,
    RemoveTwin,
    ScaleVertex,
    SignFlipBlock,
    is_distance_hereditary_oracle,
    recognize,
    replay_trace,
)
from .spanning import (
    SpanningTree,
    edge_span_poly,
    enumerate_spanning_trees,
    matrix_tree_check,
    spanning_tree_count,
    vertex_span_poly,
)

__version__ = "0.1.0"
