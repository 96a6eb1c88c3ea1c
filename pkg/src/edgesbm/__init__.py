"""Edge-sampling stochastic block models with sequential code-length scoring.

A model is a node partition plus a block probability matrix normalized over
all n^2 ordered node pairs; multigraphs are i.i.d. edge draws from it.
Partitions are scored on an observed edge list by the mean per-edge length
of a sequential (predict-then-update) code, and inferred by exhaustive
argmin over explicit candidate families.
"""

from .errors import (
    EdgeSbmError,
    EmptyEdgeListError,
    ExhaustedStateError,
    MatrixError,
    NodeRangeError,
    ParseError,
    PartitionError,
    SizeMismatchError,
)
from .generate import (
    Seed,
    diagonal_model,
    heterogeneous_model,
    mixing_model,
    sample_edges,
    uniform_blocks,
)
from .kernels import BACKEND
from .model import (
    BlockMatrix,
    EdgeList,
    EdgeSbm,
    Partition,
    block_pair_counts,
    edge_list_log_probability,
    edge_probability,
    make_partition,
    renormalized,
    validate_block_matrix,
)
from .prequential import (
    AveragedCodeLength,
    EvaluationReport,
    PrequentialState,
    averaged_code_length,
    evaluate,
    mean_code_length,
    mean_prediction_probability,
)
from .search import (
    PartitionFamily,
    SearchResult,
    best_partition,
    cut_family,
    dyadic_family,
    inverse_partition,
    merge_split_inverse_sizes,
    offset_family,
    random_partition,
    random_refinement,
)

__version__ = "0.1.0"

__all__ = [
    "AveragedCodeLength",
    "BACKEND",
    "BlockMatrix",
    "EdgeList",
    "EdgeSbm",
    "EdgeSbmError",
    "EmptyEdgeListError",
    "EvaluationReport",
    "ExhaustedStateError",
    "MatrixError",
    "NodeRangeError",
    "ParseError",
    "Partition",
    "PartitionError",
    "PartitionFamily",
    "PrequentialState",
    "SearchResult",
    "Seed",
    "SizeMismatchError",
    "averaged_code_length",
    "best_partition",
    "block_pair_counts",
    "cut_family",
    "diagonal_model",
    "dyadic_family",
    "edge_list_log_probability",
    "edge_probability",
    "evaluate",
    "heterogeneous_model",
    "inverse_partition",
    "make_partition",
    "mean_code_length",
    "mean_prediction_probability",
    "merge_split_inverse_sizes",
    "mixing_model",
    "offset_family",
    "random_partition",
    "random_refinement",
    "renormalized",
    "sample_edges",
    "uniform_blocks",
    "validate_block_matrix",
    "__version__",
]
