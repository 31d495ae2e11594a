"""Finite-scale laboratory for Boolean algebras, their Stone-dual point
sets, separating families, and the min-max-order optimization."""

from .algebra import (
    Element,
    FiniteBooleanAlgebra,
    SubalgebraPartition,
    Ultrafilter,
    closure_of_ultrafilter_set,
    generated_subalgebra,
    generates_whole,
)
from .combinators import (
    PointedSystem,
    PorcupineResult,
    PorcupineSpec,
    alexandrov_duplication,
    porcupine,
    product_system,
    singleton_system,
    sum_with_point,
    system_from_sets,
)
from .errors import (
    AlgebraMismatchError,
    CapExceededError,
    LintWarning,
    OracleMismatchError,
    PoolInsufficientError,
    StonelabError,
    ValidationError,
)
from .families import (
    Member,
    OrderProfile,
    PointSet,
    SeparatingFamily,
    family_from_elements,
    family_from_sets,
    is_point_finite,
    is_t0_separating,
    order_at,
    order_profile,
    point_finiteness_bound,
    selection_value,
)
from .freealg import (
    Assignment,
    FreeAlgebra,
    FreeElement,
    dense_small_support_check,
    min_support_ultrafilter,
)
from .freeseq import (
    FreeSequence,
    SigmaTree,
    is_free_sequence,
    is_free_sequence_naive,
    longest_free_point_sequence,
    longest_free_sequence,
    sigma_squared,
    sigma_tree,
)
from .orders import (
    FilterLattice,
    FinalSegmentLattice,
    FinitePoset,
    MeetSemilattice,
    ModestReport,
    discrete_witness,
    filters,
    final_segments,
    generator_orientation,
    modest_analysis,
    poset_system,
    prime_clopen_filters,
    semilattice_system,
)
from .solver import (
    GeneratorPool,
    SolveResult,
    decision_max_order_at_most,
    min_max_order,
    preset_pool,
)
from .trees import (
    FiniteForest,
    PathSpace,
    initial_chain_algebra,
    paths,
    sigma_system,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
