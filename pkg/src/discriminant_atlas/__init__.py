"""Exact combinatorial analysis of sparse polynomial system supports.

Given a tuple of finite integer point sets, the package classifies it
(linearly dependent / BK / underdetermined), builds the canonical poset of
BK-subtuples, and enumerates every irreducible component of the
A-discriminant, the Cayley discriminant and the mixed discriminant with
codimensions and degrees.  All arithmetic is exact.
"""

from .classify import (
    BK,
    LINEARLY_DEPENDENT,
    UNDERDETERMINED,
    TupleClass,
    circuits,
    classify,
    is_essential,
    is_irreducible_bk,
    min_defect_scan,
    minimal_defect_subtuple,
)
from .bkposet import (
    BkPoset,
    LIR,
    NIR,
    PosetElement,
    build_poset,
    enumerate_bk_subtuples,
    maximal_filtration,
    poset_queries,
)
from .degrees import (
    EulerDatum,
    FlatTuple,
    Unsupported,
    cayley_degree,
    circuit_mixed_degree,
    component_degree,
    essential_resultant_degree,
    flat_tuple,
    lir_degree,
    matsui_takeuchi_degree,
    resultant_degree,
    signed_euler_obstruction,
)
from .intlinalg import (
    IntMatrix,
    Sublattice,
    hermite_columns,
    hermite_rows,
    quotient_map,
    saturate,
    smith_decompose,
    unimodular_coordinates,
)
from .reports import (
    AmbientFactor,
    BkMult,
    CayleyDiscOf,
    Component,
    DiscriminantReport,
    ResultantOf,
    a_discriminant,
    cayley_discriminant,
    mixed_discriminant,
)
from .supports import (
    IndexSubset,
    Normalization,
    Support,
    SupportTuple,
    cayley_set,
    defect,
    make_tuple,
    minkowski_sum,
    normalize,
    quotient_tuple,
)
from .volumes import (
    Face,
    cayley_volume_rhs,
    face_lattice,
    integer_simplex,
    mixed_volume,
    mixed_volume_fixed,
    mixed_volume_in_span,
    normalized_volume,
)
from .cli import bernstein_oracle, run_analyze

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
