"""Ordering bipartite quantum states by entanglement content."""

from entsort.entanglement import (
    EntropyRecord,
    entanglement_entropy,
    lsea_sort,
    von_neumann_entropy,
)
from entsort.errors import (
    DependentSystemError,
    DimensionError,
    DomainError,
    NumericError,
    StateError,
)
from entsort.order import (
    ChainMergeIndex,
    Comparison,
    PosetResult,
    QueryCounter,
    RankBucket,
    chain_insert,
    chain_merge_sort,
    query_counter,
    rank_partition,
    sd_query_oracle,
)
from entsort.schmidt import (
    CrossNorm,
    OperatorSchmidt,
    PureSchmidt,
    SchmidtData,
    cross_norm_check,
    hermitean_basis,
    schmidt_of,
    schmidt_operator,
    schmidt_pure,
)
from entsort.states import (
    DensityState,
    PureState,
    QuditGateSet,
    bell_state,
    bell_state_circuit,
    density_from_pure,
    mix,
    product_state,
    random_density,
    random_entangled_state,
    random_product_density,
    random_separable,
    random_pure_state,
)
from entsort.tolerances import Tolerances

__version__ = "0.1.0"
