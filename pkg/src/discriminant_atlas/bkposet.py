"""The canonical poset of a BK-tuple.

BK-subtuples of a BK-tuple are closed under union and intersection, so they
form a distributive lattice under inclusion.  By Birkhoff's theorem that
lattice is the lattice of order ideals of the poset of its join-irreducible
elements; the join-irreducibles, their blocks (element minus unique lower
cover) and the induced partition of the index set drive the entire
component analysis.

Every poset element carries the quotient of its principal ideal by the
ideal minus the block.  These quotients are irreducible BK-tuples (checked,
not assumed) and are stored in normalized coordinates so that the
unit-mixed-volume test for linearity applies verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .classify import BK, classify, is_irreducible_bk, subset_dims, MAX_SUPPORTS, _check_size
from .errors import NotBK, InvariantViolation
from .supports import SupportTuple, normalize, quotient_tuple
from .volumes import mixed_volume

LIR = "lir"
NIR = "nir"


def enumerate_bk_subtuples(t: SupportTuple, max_supports: int = MAX_SUPPORTS):
    """All BK-subtuples (including the empty set and the whole index set),
    sorted by (size, lexicographic).  The result is asserted to be closed
    under union and intersection."""
    _check_size(t, max_supports)
    if classify(t, max_supports).kind != BK:
        raise NotBK("BK-subtuple enumeration requires a BK-tuple")
    dims = subset_dims(t)
    ok = {frozenset(): True}
    k = len(t)
    for size in range(1, k + 1):
        for comb_idx in combinations(range(k), size):
            s = frozenset(comb_idx)
            ok[s] = dims[s] - size >= 0 and all(ok[s - {i}] for i in s)
    out = [s for s in ok if ok[s] and (not s or dims[s] == len(s))]
    out.sort(key=lambda s: (len(s), sorted(s)))
    members = set(out)
    for a in out:
        for b in out:
            if (a | b) not in members or (a & b) not in members:
                raise InvariantViolation(
                    "BK-subtuples are not a lattice", payload=(sorted(a), sorted(b))
                )
    return out


@dataclass(frozen=True)
class PosetElement:
    """One join-irreducible BK-subtuple with its block and quotient data.

    ``quotient`` is stored in normalized (generated-span) coordinates, which
    is the lattice in which linearity is judged: the element is lir exactly
    when mixed_volume(quotient) == 1.  ``block_mixed_volume`` is the other
    natural number attached to the element: the mixed volume of the raw
    quotient in the *saturated* span, the factor appearing in the
    mixed-volume decomposition (the product over all elements recovers the
    mixed volume of the whole tuple)."""

    id: str
    principal_ideal: frozenset
    block: frozenset
    quotient: SupportTuple  # normalized irreducible BK-tuple
    irr_class: str
    block_mixed_volume: int

    @property
    def is_prelinear(self) -> bool:
        return self.irr_class == LIR


@dataclass(frozen=True)
class BkPoset:
    """Join-irreducibles of the BK-subtuple lattice, ordered by inclusion."""

    base: SupportTuple
    elements: tuple
    covers: tuple  # (lower index, upper index) pairs into `elements`
    heights: tuple

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return self.elements[i].principal_ideal <= self.elements[j].principal_ideal

    def order_filter(self, i: int):
        """Indices of elements >= element i."""
        return [j for j in range(len(self.elements)) if self.leq(i, j)]

    def order_ideal(self, i: int):
        return [j for j in range(len(self.elements)) if self.leq(j, i)]

    def maximal_elements(self):
        n = len(self.elements)
        return [i for i in range(n) if not any(self.leq(i, j) for j in range(n) if j != i)]

    @property
    def is_simple(self) -> bool:
        return len(self.maximal_elements()) == 1

    def hasse_components(self):
        """Connected components of the Hasse diagram, as sorted index lists."""
        n = len(self.elements)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.covers:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())


def _element_quotient(t: SupportTuple, ideal: frozenset, block: frozenset):
    sub = t.subtuple(ideal)
    below = ideal - block
    if below:
        # positions of `below` within the sorted ideal
        order = sorted(ideal)
        rel = frozenset(order.index(i) for i in below)
        raw = quotient_tuple(sub, rel)
    else:
        raw = sub
    normalized, _ = normalize(raw)
    return normalized, mixed_volume(raw)


def build_poset(t: SupportTuple, max_supports: int = MAX_SUPPORTS) -> BkPoset:
    """Construct the canonical poset of a BK-tuple.

    Elements are the join-irreducible BK-subtuples; the block of an element
    is the element minus the union of all strictly smaller BK-subtuples
    (its unique lower cover in the distributive lattice).
    """
    lattice = enumerate_bk_subtuples(t, max_supports)
    join_irr = []
    for s in lattice:
        if not s:
            continue
        below = frozenset().union(*[o for o in lattice if o < s]) if any(o < s for o in lattice) else frozenset()
        if below != s:
            join_irr.append((s, s - below))

    join_irr.sort(key=lambda pair: sorted(pair[0]))
    elements = []
    for idx, (ideal, block) in enumerate(join_irr):
        quotient, block_mv = _element_quotient(t, ideal, block)
        if not is_irreducible_bk(quotient, max_supports):
            raise InvariantViolation(
                "poset element quotient is not an irreducible BK-tuple",
                payload=sorted(ideal),
            )
        irr_class = LIR if mixed_volume(quotient) == 1 else NIR
        elements.append(
            PosetElement(
                id=f"e{idx}",
                principal_ideal=ideal,
                block=block,
                quotient=quotient,
                irr_class=irr_class,
                block_mixed_volume=block_mv,
            )
        )

    blocks = [e.block for e in elements]
    covered = set()
    for b in blocks:
        if b & covered:
            raise InvariantViolation("blocks do not partition the index set")
        covered |= b
    if covered != t.all_indices:
        raise InvariantViolation("blocks do not partition the index set")

    n = len(elements)
    leq = [[elements[i].principal_ideal <= elements[j].principal_ideal for j in range(n)] for i in range(n)]
    covers = []
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j]:
                if not any(k != i and k != j and leq[i][k] and leq[k][j] for k in range(n)):
                    covers.append((i, j))
    heights = [0] * n
    for j in sorted(range(n), key=lambda j: len(elements[j].principal_ideal)):
        below = [i for i in range(n) if i != j and leq[i][j]]
        heights[j] = 1 + max((heights[i] for i in below), default=-1)

    return BkPoset(
        base=t,
        elements=tuple(elements),
        covers=tuple(sorted(covers)),
        heights=tuple(heights),
    )


def maximal_filtration(p: BkPoset):
    """A canonical linear extension of the poset.

    Prefix unions of blocks are BK-subtuples and the successive quotients
    are the irreducible element quotients; cheap shape invariants of that
    statement are asserted."""
    n = len(p.elements)
    order = sorted(range(n), key=lambda i: (p.heights[i], sorted(p.elements[i].principal_ideal)))
    dims = subset_dims(p.base)
    prefix = frozenset()
    for i in order:
        prefix = prefix | p.elements[i].block
        if dims[prefix] != len(prefix):
            raise InvariantViolation(
                "filtration prefix is not a BK-subtuple", payload=sorted(prefix)
            )
        quotient = p.elements[i].quotient
        if len(quotient) != len(p.elements[i].block):
            raise InvariantViolation("filtration quotient has wrong arity")
    return [p.elements[i] for i in order]


def poset_queries(p: BkPoset) -> dict:
    """Derived predicates used by the discriminant reports and the CLI."""
    maximal = p.maximal_elements()
    return {
        "maximal_elements": [p.elements[i].id for i in maximal],
        "is_simple": p.is_simple,
        "prelinear": {p.elements[i].id: p.elements[i].is_prelinear for i in range(len(p.elements))},
        "hasse_components": [[p.elements[i].id for i in comp] for comp in p.hasse_components()],
        "heights": {p.elements[i].id: p.heights[i] for i in range(len(p.elements))},
    }
