"""Symmetric powers of the complex unit ball and their induced self-maps."""

from .ball import (
    Automorphism,
    as_ball_point,
    automorphism_compose,
    automorphism_distance,
    automorphism_eval,
    automorphism_inverse,
    mobius_eval,
    random_automorphism,
)
from .embedding import (
    EmbeddingCoords,
    elementary_symmetric,
    embedding_dimension,
    multi_indices,
    segre_whitney,
)
from .errors import (
    DimensionError,
    NotInducedError,
    OutsideBallError,
    SchemaError,
    TooLargeError,
)
from .induced import (
    InducedMap,
    TupleMap,
    check_sm_invariance,
    commutes_with_projection,
    extract_generator,
    induced_eval,
)
from .sympower import (
    OrderedConfig,
    Partition,
    SymConfig,
    classify_stratum,
    covering_degree,
    fiber,
    fiber_size,
    partitions,
    project,
    stratum_codimension,
    sym_distance,
)

__version__ = "0.1.0"
