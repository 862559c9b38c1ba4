"""Defect-based classification of support tuples.

A tuple is linearly dependent when some subtuple has negative defect,
BK when it is linearly independent with zero total defect, and
underdetermined otherwise.  For dependent tuples the unique inclusion-
minimal subtuple of minimal defect and the circuit list are computed by
exhaustive subset enumeration with memoized span dimensions; the hard cap
on the number of supports keeps this a desk-scale tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotLinearlyDependent, TooLarge
from .errors import InvariantViolation
from .supports import SupportTuple

MAX_SUPPORTS = 20

LINEARLY_DEPENDENT = "LinearlyDependent"
BK = "BK"
UNDERDETERMINED = "Underdetermined"


def _check_size(t: SupportTuple, max_supports: int):
    if len(t) > max_supports:
        raise TooLarge(
            f"{len(t)} supports exceed the subset-enumeration cap {max_supports}"
        )


def subset_dims(t: SupportTuple) -> dict:
    """Span dimension for every index subset, built incrementally.

    dims[S] is the dimension of the lattice spanned by the translated union
    of the supports indexed by S.
    """
    k = len(t)
    diffs = [t.supports[i].differences() for i in range(k)]
    dims = {frozenset(): 0}
    bases = {frozenset(): []}

    def extend(basis, vectors):
        basis = list(basis)
        for v in vectors:
            if not any(v):
                continue
            cand = basis + [v]
            if _rank(cand) == len(cand):
                basis = cand
        return basis

    for size in range(1, k + 1):
        for comb_idx in combinations(range(k), size):
            s = frozenset(comb_idx)
            parent = s - {max(comb_idx)}
            basis = extend(bases[parent], diffs[max(comb_idx)])
            bases[s] = basis
            dims[s] = len(basis)
    return dims


def _rank(vectors):
    from .intlinalg import rank_int

    return rank_int(vectors)


def min_defect_scan(t: SupportTuple, max_supports: int = MAX_SUPPORTS):
    """Exact minimum of the defect over non-empty subsets, with the complete
    list of inclusion-minimal minimizers (sorted lexicographically)."""
    _check_size(t, max_supports)
    dims = subset_dims(t)
    best = None
    for s, d in dims.items():
        if not s:
            continue
        df = d - len(s)
        if best is None or df < best:
            best = df
    minimizers = [s for s, d in dims.items() if s and d - len(s) == best]
    minimal = [
        s for s in minimizers if not any(o < s for o in minimizers)
    ]
    minimal.sort(key=sorted)
    return best, minimal


def minimal_defect_subtuple(t: SupportTuple, max_supports: int = MAX_SUPPORTS) -> frozenset:
    """The unique inclusion-minimal subtuple of minimal (negative) defect."""
    best, minimal = min_defect_scan(t, max_supports)
    if best >= 0:
        raise NotLinearlyDependent("tuple has no subtuple of negative defect")
    if len(minimal) != 1:
        raise InvariantViolation(
            "minimal-defect subtuple is not unique", payload=minimal
        )
    return minimal[0]


def circuits(t: SupportTuple, max_supports: int = MAX_SUPPORTS):
    """All inclusion-minimal subsets of negative defect; each has defect -1."""
    _check_size(t, max_supports)
    dims = subset_dims(t)
    negative = [s for s, d in dims.items() if s and d - len(s) < 0]
    minimal = [s for s in negative if not any(o < s for o in negative)]
    for c in minimal:
        if dims[c] - len(c) != -1:
            raise InvariantViolation(
                "a circuit with defect != -1 appeared", payload=sorted(c)
            )
    minimal.sort(key=sorted)
    return minimal


def is_essential(t: SupportTuple, max_supports: int = MAX_SUPPORTS) -> bool:
    """True when every subtuple of cardinality <= span dimension has defect >= 0."""
    _check_size(t, max_supports)
    dims = subset_dims(t)
    total_dim = dims[t.all_indices]
    for s, d in dims.items():
        if s and len(s) <= total_dim and d - len(s) < 0:
            return False
    return True


@dataclass(frozen=True)
class TupleClass:
    """Classification verdict for a support tuple."""

    kind: str
    min_defect: int
    essential: bool
    minimal_subtuple: frozenset | None = None
    circuits: tuple | None = None

    @property
    def unique_circuit(self) -> bool | None:
        if self.circuits is None:
            return None
        return len(self.circuits) == 1


def classify(t: SupportTuple, max_supports: int = MAX_SUPPORTS) -> TupleClass:
    """Classify a tuple as LinearlyDependent / BK / Underdetermined.

    For dependent tuples the minimal subtuple and the circuit list are
    attached, and the quotient by the minimal subtuple is asserted to be
    linearly independent.
    """
    _check_size(t, max_supports)
    dims = subset_dims(t)
    min_defect = min(d - len(s) for s, d in dims.items() if s)
    total_defect = dims[t.all_indices] - len(t)
    essential = True
    total_dim = dims[t.all_indices]
    for s, d in dims.items():
        if s and len(s) <= total_dim and d - len(s) < 0:
            essential = False
            break

    if min_defect < 0:
        minimizers = [s for s, d in dims.items() if s and d - len(s) == min_defect]
        minimal = [s for s in minimizers if not any(o < s for o in minimizers)]
        if len(minimal) != 1:
            raise InvariantViolation(
                "minimal-defect subtuple is not unique", payload=sorted(map(sorted, minimal))
            )
        m = minimal[0]
        circs = tuple(circuits(t, max_supports))
        _assert_quotient_independent(t, m, dims)
        return TupleClass(
            kind=LINEARLY_DEPENDENT,
            min_defect=min_defect,
            essential=essential,
            minimal_subtuple=m,
            circuits=circs,
        )
    if total_defect == 0:
        return TupleClass(kind=BK, min_defect=min_defect, essential=essential)
    return TupleClass(kind=UNDERDETERMINED, min_defect=min_defect, essential=essential)


def _assert_quotient_independent(t: SupportTuple, m: frozenset, dims: dict):
    if m == t.all_indices:
        return
    from .supports import quotient_tuple

    q = quotient_tuple(t, m)
    qdims = subset_dims(q)
    for s, d in qdims.items():
        if s and d - len(s) < 0:
            raise InvariantViolation(
                "quotient by the minimal subtuple is linearly dependent",
                payload=(sorted(m), sorted(s)),
            )


def is_irreducible_bk(t: SupportTuple, max_supports: int = MAX_SUPPORTS) -> bool:
    """Zero total defect and strictly positive defect on proper non-empty subtuples."""
    _check_size(t, max_supports)
    dims = subset_dims(t)
    if dims[t.all_indices] - len(t) != 0:
        return False
    for s, d in dims.items():
        if s and s != t.all_indices and d - len(s) <= 0:
            return False
    return True
