"""Component reports for the three discriminants of a support tuple.

Components are reported symbolically: a structure expression says how the
component is assembled from resultants, Cayley discriminants of poset
ideals and full coefficient-space factors.  Nothing here computes defining
equations; the reports carry the complete combinatorial answer
(which components exist, their codimension, their degree).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bkposet import BkPoset, LIR, NIR, build_poset, poset_queries
from .classify import BK, LINEARLY_DEPENDENT, TupleClass, classify
from .degrees import (
    Unsupported,
    circuit_mixed_degree,
    component_degree,
    resultant_degree,
)
from .errors import InvariantViolation, UnderdeterminedError
from .supports import SupportTuple

A_DISC = "ADisc"
CAYLEY_DISC = "CayleyDisc"
MIXED_DISC = "MixedDisc"


@dataclass(frozen=True)
class ResultantOf:
    indices: frozenset


@dataclass(frozen=True)
class CayleyDiscOf:
    """Cayley discriminant of the subtuple `indices`, after quotienting by
    the subtuple `modulo` (empty for a plain Cayley discriminant)."""

    indices: frozenset
    modulo: frozenset = frozenset()


@dataclass(frozen=True)
class AmbientFactor:
    """Full coefficient space of the subtuple `indices` (no condition)."""

    indices: frozenset


@dataclass(frozen=True)
class BkMult:
    factors: tuple


@dataclass(frozen=True)
class Component:
    label: str
    structure: object
    codim: object  # int | Unsupported
    degree: object  # int | Unsupported | None (None = not requested)
    absorbed_into: str | None = None


@dataclass(frozen=True)
class DiscriminantReport:
    kind: str
    components: tuple
    empty: bool
    complete_intersection_codim: int | None = None


def _label(ideal) -> str:
    return "s" + "_".join(str(i) for i in sorted(ideal))


def _stratum_structure(t: SupportTuple, ideal: frozenset):
    rest = t.all_indices - ideal
    cay = CayleyDiscOf(indices=frozenset(ideal))
    if rest:
        return BkMult((cay, AmbientFactor(frozenset(rest))))
    return cay


def _stratum_codim(element) -> int:
    return 2 if element.irr_class == LIR else 1


def _bk_strata(t: SupportTuple, p: BkPoset, compute_degrees: bool, warnings):
    strata = []
    n = len(p.elements)
    for i, e in enumerate(p.elements):
        absorbed_into = None
        if e.irr_class == LIR:
            above_nir = [
                j
                for j in p.order_filter(i)
                if j != i and p.elements[j].irr_class == NIR
            ]
            if above_nir:
                j = min(above_nir, key=lambda j: (p.heights[j], p.elements[j].id))
                absorbed_into = _label(p.elements[j].principal_ideal)
                covers_of_i = [b for a, b in p.covers if a == i]
                if not any(p.elements[c].irr_class == NIR for c in covers_of_i):
                    warnings.append(
                        f"stratum {_label(e.principal_ideal)} is absorbed by a "
                        f"non-covering element {absorbed_into}; the two published "
                        f"absorption readings could diverge here"
                    )
        degree = component_degree(p, e) if compute_degrees else None
        strata.append(
            Component(
                label=_label(e.principal_ideal),
                structure=_stratum_structure(t, e.principal_ideal),
                codim=_stratum_codim(e),
                degree=degree,
                absorbed_into=absorbed_into,
            )
        )
    if len({c.label for c in strata}) != n:
        raise InvariantViolation("stratum labels must be unique")
    return strata


def _require_determined(cls: TupleClass):
    if cls.kind not in (BK, LINEARLY_DEPENDENT):
        raise UnderdeterminedError(
            "discriminant reports are defined for square/overdetermined tuples only"
        )


def a_discriminant(
    t: SupportTuple,
    cls: TupleClass | None = None,
    poset: BkPoset | None = None,
    compute_degrees: bool = True,
    warnings: list | None = None,
) -> DiscriminantReport:
    """Components of the discriminant of the tuple itself."""
    warnings = warnings if warnings is not None else []
    cls = cls or classify(t)
    _require_determined(cls)
    if cls.kind == LINEARLY_DEPENDENT:
        m = cls.minimal_subtuple
        degree = resultant_degree(t, m) if compute_degrees else None
        comp = Component(
            label="r" + "_".join(str(i) for i in sorted(m)),
            structure=ResultantOf(frozenset(m)),
            codim=-cls.min_defect,
            degree=degree,
        )
        return DiscriminantReport(A_DISC, (comp,), empty=False)
    poset = poset or build_poset(t)
    strata = _bk_strata(t, poset, compute_degrees, warnings)
    if not any(c.absorbed_into is None for c in strata):
        raise InvariantViolation("a BK discriminant must keep at least one component")
    return DiscriminantReport(A_DISC, tuple(strata), empty=False)


def cayley_discriminant(
    t: SupportTuple,
    cls: TupleClass | None = None,
    poset: BkPoset | None = None,
    compute_degrees: bool = True,
    warnings: list | None = None,
) -> DiscriminantReport:
    """The Cayley discriminant: for BK input, the complete intersection of
    the maximal strata; for dependent input, a resultant (essential case) or
    a resultant multiplied by a quotient Cayley discriminant."""
    warnings = warnings if warnings is not None else []
    cls = cls or classify(t)
    _require_determined(cls)
    if cls.kind == LINEARLY_DEPENDENT:
        m = cls.minimal_subtuple
        if cls.essential:
            if m != t.all_indices:
                raise InvariantViolation(
                    "an essential dependent tuple must equal its minimal subtuple"
                )
            degree = resultant_degree(t, m) if compute_degrees else None
            comp = Component(
                label="r" + "_".join(str(i) for i in sorted(m)),
                structure=ResultantOf(frozenset(m)),
                codim=-cls.min_defect,
                degree=degree,
            )
            return DiscriminantReport(CAYLEY_DISC, (comp,), empty=False)
        rest = t.all_indices - m
        structure = BkMult(
            (
                ResultantOf(frozenset(m)),
                CayleyDiscOf(indices=frozenset(rest), modulo=frozenset(m)),
            )
        )
        reason = "codimension for a non-essential linearly dependent tuple is not stated in the paper"
        warnings.append(reason)
        comp = Component(
            label="r" + "_".join(str(i) for i in sorted(m)) + "_cay",
            structure=structure,
            codim=Unsupported(reason),
            degree=Unsupported(reason) if compute_degrees else None,
        )
        return DiscriminantReport(CAYLEY_DISC, (comp,), empty=False)
    poset = poset or build_poset(t)
    strata = _bk_strata(t, poset, compute_degrees, warnings)
    maximal = poset.maximal_elements()
    max_labels = {_label(poset.elements[i].principal_ideal) for i in maximal}
    factors = tuple(c for c in strata if c.label in max_labels)
    lir_count = sum(1 for i in maximal if poset.elements[i].irr_class == LIR)
    nir_count = len(maximal) - lir_count
    return DiscriminantReport(
        CAYLEY_DISC,
        factors,
        empty=False,
        complete_intersection_codim=2 * lir_count + nir_count,
    )


def mixed_discriminant(
    t: SupportTuple,
    cls: TupleClass | None = None,
    poset: BkPoset | None = None,
    compute_degrees: bool = True,
    warnings: list | None = None,
) -> DiscriminantReport:
    """The mixed discriminant: empty unless the poset has a unique maximal
    element (BK) or the tuple has a unique circuit (dependent)."""
    warnings = warnings if warnings is not None else []
    cls = cls or classify(t)
    _require_determined(cls)
    if cls.kind == LINEARLY_DEPENDENT:
        one_circuit = len(cls.circuits) == 1
        shallow = cls.min_defect == -1
        if one_circuit != shallow:
            raise InvariantViolation(
                "circuit-count and minimal-defect emptiness criteria disagree",
                payload=(cls.min_defect, [sorted(c) for c in cls.circuits]),
            )
        if not one_circuit:
            return DiscriminantReport(MIXED_DISC, (), empty=True)
        circuit = cls.circuits[0]
        degree = circuit_mixed_degree(t, circuit) if compute_degrees else None
        comp = Component(
            label="r" + "_".join(str(i) for i in sorted(circuit)),
            structure=ResultantOf(frozenset(circuit)),
            codim=1,
            degree=degree,
        )
        return DiscriminantReport(MIXED_DISC, (comp,), empty=False)
    poset = poset or build_poset(t)
    maximal = poset.maximal_elements()
    if len(maximal) != 1:
        return DiscriminantReport(MIXED_DISC, (), empty=True)
    strata = _bk_strata(t, poset, compute_degrees, warnings)
    top = poset.elements[maximal[0]]
    label = _label(top.principal_ideal)
    comp = next(c for c in strata if c.label == label)
    return DiscriminantReport(MIXED_DISC, (comp,), empty=False)
