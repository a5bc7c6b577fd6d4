"""Layered edge colorings of complete graphs with no all-even K5.

The core coloring assigns each edge of a 2^(beta^3)-vertex complete graph a
stack of block-difference records plus per-block comparison signs; any K5
then meets some color class an odd number of times. Around it: subset
scanners for the forbidden structures, an exhaustive classifier of colored
K5 shapes, a Moser-Tardos construction for general K_p, and the parity-class
graph codes the coloring yields on few vertices.
"""

from ._kernel import available_backends, get_backend
from .coloring import (
    BitVector,
    BlockDiff,
    ColorCensus,
    EdgeColor,
    Params,
    ZERO_DIFF,
    block,
    count_colors,
    decode_color,
    derive_params,
    edge_color,
    encode_color,
    enumerate_vertices,
    first_diff,
    format_color,
    level_profile,
    order_sign,
)
from .codes import (
    CodeReport,
    CodeVerification,
    ParityClass,
    SmallGraph,
    build_parity_classes,
    clique_mask,
    graph_signatures,
    pairwise_verify,
    read_class_bitmap,
    verify_code,
    write_class_bitmap,
)
from .construct import (
    BadProbabilityBound,
    LLLCondition,
    MTResult,
    RandomColoring,
    bad_probability_bound,
    exact_bad_probability,
    initial_coloring,
    lll_condition,
    moser_tardos,
    read_coloring_csv,
    required_colors,
    write_coloring_csv,
)
from .errors import (
    CapacityError,
    ConfigurationError,
    MultiplicityError,
    NotSpecialError,
    ParameterError,
    ParityError,
    ParityRamseyError,
    SelfLoopError,
    ShapeError,
)
from .patterns import (
    ClassificationReport,
    Pattern,
    SpecialVertexProfile,
    canonical_from_colors,
    enumerate_2224,
    enumerate_2224_and_filter,
    enumerate_22222,
    enumerate_type,
    even_color_types,
    filter_and_classify,
    mono_k12_count,
    special_vertex_profile,
    watch_list,
)
from .verify import (
    ColoringOracle,
    ParityVector,
    ScanSummary,
    Violation,
    check_forbidden_configs,
    check_k4_type_222,
    check_k5_min_colors,
    check_mono_odd_cycle,
    check_parity_even,
    check_striped_k4,
    is_bad_clique,
    matrix_oracle,
    parity_vector,
    psi_oracle,
    scan,
)

__version__ = "0.1.0"
