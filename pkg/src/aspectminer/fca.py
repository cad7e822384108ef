"""Formal concept analysis: contexts, concept enumeration, lattice order and
sparse labeling.

The enumeration is a Close-by-One variant over bitmask rows/columns,
run on the smaller side of the context and dualized back, so it stays fast on
the wide trace contexts (few traces, many methods) as well as the tall
identifier contexts. Output order is canonical: extent size ascending, then
the sorted extent tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, UnknownConcept


@dataclass(frozen=True)
class Context:
    """A triple (E, P, T): elements, properties, boolean incidence."""

    elements: tuple[str, ...]
    properties: tuple[str, ...]
    incidence: frozenset[tuple[str, str]]

    @classmethod
    def from_pairs(
        cls,
        elements: Iterable[str],
        properties: Iterable[str],
        pairs: Iterable[tuple[str, str]],
    ) -> "Context":
        elems = tuple(dict.fromkeys(elements))
        props = tuple(dict.fromkeys(properties))
        eset, pset = set(elems), set(props)
        inc = frozenset(pairs)
        for e, p in inc:
            if e not in eset:
                raise InputError(f"incidence references unknown element {e!r}")
            if p not in pset:
                raise InputError(f"incidence references unknown property {p!r}")
        return cls(elems, props, inc)

    @cached_property
    def _bits(self) -> "_BitView":
        return _BitView(self)


class _BitView:
    """Bitmask rows/columns over a context, index-addressed."""

    def __init__(self, ctx: Context):
        self.e_index = {e: i for i, e in enumerate(ctx.elements)}
        self.p_index = {p: j for j, p in enumerate(ctx.properties)}
        self.n_e = len(ctx.elements)
        self.n_p = len(ctx.properties)
        self.rows = [0] * self.n_e  # element -> property mask
        self.cols = [0] * self.n_p  # property -> element mask
        for e, p in ctx.incidence:
            i, j = self.e_index[e], self.p_index[p]
            self.rows[i] |= 1 << j
            self.cols[j] |= 1 << i
        self.full_e = (1 << self.n_e) - 1
        self.full_p = (1 << self.n_p) - 1

    def intent_of(self, extent_mask: int) -> int:
        out = self.full_p
        i = 0
        while extent_mask:
            if extent_mask & 1:
                out &= self.rows[i]
            extent_mask >>= 1
            i += 1
        return out

    def extent_of(self, intent_mask: int) -> int:
        out = self.full_e
        j = 0
        while intent_mask:
            if intent_mask & 1:
                out &= self.cols[j]
            intent_mask >>= 1
            j += 1
        return out


def _mask_to_names(mask: int, names: Sequence[str]) -> frozenset[str]:
    return frozenset(names[i] for i in range(len(names)) if mask >> i & 1)


def _names_to_mask(items: Iterable[str], index: dict[str, int], what: str) -> int:
    mask = 0
    for item in items:
        try:
            mask |= 1 << index[item]
        except KeyError:
            raise InputError(f"unknown {what} {item!r}") from None
    return mask


@dataclass(frozen=True)
class Concept:
    extent: frozenset[str]
    intent: frozenset[str]

    def sort_key(self) -> tuple[int, tuple[str, ...]]:
        return (len(self.extent), tuple(sorted(self.extent)))


def intent_closure(ctx: Context, elements: Iterable[str]) -> frozenset[str]:
    """Properties shared by every element of the given set (all of P for the
    empty set)."""
    bits = ctx._bits
    mask = _names_to_mask(elements, bits.e_index, "element")
    return _mask_to_names(bits.intent_of(mask), ctx.properties)


def extent_closure(ctx: Context, properties: Iterable[str]) -> frozenset[str]:
    """Elements carrying every property of the given set (all of E for the
    empty set)."""
    bits = ctx._bits
    mask = _names_to_mask(properties, bits.p_index, "property")
    return _mask_to_names(bits.extent_of(mask), ctx.elements)


def _closed_pairs(rows: list[int], cols: list[int]) -> list[tuple[int, int]]:
    """Close-by-One over the row side: all (extent_mask, intent_mask) pairs.

    Iterative so deep lattices cannot hit the recursion limit.
    """
    n_e = len(rows)
    full_p = (1 << len(cols)) - 1
    full_e = (1 << n_e) - 1

    def extent_of(intent_mask: int) -> int:
        out = full_e
        j = 0
        while intent_mask:
            if intent_mask & 1:
                out &= cols[j]
            intent_mask >>= 1
            j += 1
        return out

    start_intent = full_p
    start_extent = extent_of(start_intent)
    out: list[tuple[int, int]] = []
    stack: list[tuple[int, int, int]] = [(start_extent, start_intent, 0)]
    while stack:
        extent, intent, first = stack.pop()
        out.append((extent, intent))
        children: list[tuple[int, int, int]] = []
        for i in range(first, n_e):
            if extent >> i & 1:
                continue
            child_intent = intent & rows[i]
            child_extent = extent_of(child_intent)
            below = (1 << i) - 1
            if (child_extent & below) != (extent & below):
                continue  # canonical generator is elsewhere
            children.append((child_extent, child_intent, i + 1))
        stack.extend(reversed(children))
    return out


def concepts(ctx: Context) -> tuple[Concept, ...]:
    """All pairs (X, Y) with X the elements sharing all of Y and Y the
    properties common to all of X, in canonical order."""
    bits = ctx._bits
    if bits.n_p < bits.n_e:
        # enumerate on the property side, swap back
        pairs = [(e, i) for i, e in _closed_pairs(bits.cols, bits.rows)]
    else:
        pairs = _closed_pairs(bits.rows, bits.cols)
    found = [
        Concept(
            _mask_to_names(em, ctx.elements),
            _mask_to_names(im, ctx.properties),
        )
        for em, im in pairs
    ]
    found.sort(key=Concept.sort_key)
    return tuple(found)


@dataclass(frozen=True)
class ConceptLattice:
    """Concepts plus cover edges of the extent-inclusion order plus sparse
    labels (element label gamma, property label mu)."""

    context: Context
    concepts: tuple[Concept, ...]
    cover_edges: frozenset[tuple[int, int]]  # (subconcept index, superconcept index)
    element_label: dict[str, int]  # e -> index of gamma(e)
    property_label: dict[str, int]  # p -> index of mu(p)

    @cached_property
    def _index(self) -> dict[Concept, int]:
        return {c: i for i, c in enumerate(self.concepts)}

    @cached_property
    def _alpha(self) -> tuple[frozenset[str], ...]:
        buckets: list[set[str]] = [set() for _ in self.concepts]
        for p, idx in self.property_label.items():
            buckets[idx].add(p)
        return tuple(frozenset(b) for b in buckets)

    @cached_property
    def _beta(self) -> tuple[frozenset[str], ...]:
        buckets: list[set[str]] = [set() for _ in self.concepts]
        for e, idx in self.element_label.items():
            buckets[idx].add(e)
        return tuple(frozenset(b) for b in buckets)

    def __len__(self) -> int:
        return len(self.concepts)

    def index_of(self, c: Concept) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise UnknownConcept(f"concept not in lattice: {c}") from None

    def gamma(self, element: str) -> Concept:
        try:
            return self.concepts[self.element_label[element]]
        except KeyError:
            raise InputError(f"unknown element {element!r}") from None

    def mu(self, prop: str) -> Concept:
        try:
            return self.concepts[self.property_label[prop]]
        except KeyError:
            raise InputError(f"unknown property {prop!r}") from None

    def alpha(self, c: Concept) -> frozenset[str]:
        """Properties sparse-labeling c."""
        return self._alpha[self.index_of(c)]

    def beta(self, c: Concept) -> frozenset[str]:
        """Elements sparse-labeling c."""
        return self._beta[self.index_of(c)]

    def leq(self, c1: Concept, c2: Concept) -> bool:
        self.index_of(c1), self.index_of(c2)
        return c1.extent <= c2.extent

    def parents(self, c: Concept) -> tuple[Concept, ...]:
        i = self.index_of(c)
        return tuple(self.concepts[b] for a, b in sorted(self.cover_edges) if a == i)

    def children(self, c: Concept) -> tuple[Concept, ...]:
        i = self.index_of(c)
        return tuple(self.concepts[a] for a, b in sorted(self.cover_edges) if b == i)

    @property
    def top(self) -> Concept:
        return self.concepts[-1]

    @property
    def bottom(self) -> Concept:
        return self.concepts[0]


def lattice(ctx: Context) -> ConceptLattice:
    all_concepts = concepts(ctx)
    bits = ctx._bits
    extent_masks = [
        _names_to_mask(c.extent, bits.e_index, "element") for c in all_concepts
    ]
    by_extent = {mask: i for i, mask in enumerate(extent_masks)}

    # gamma(e): smallest concept containing e = closure of {e};
    # mu(p): largest concept whose intent contains p = all elements having p.
    element_label = {
        e: by_extent[bits.extent_of(bits.rows[i])] for e, i in bits.e_index.items()
    }
    property_label = {
        p: by_extent[bits.cols[j]] for p, j in bits.p_index.items()
    }

    # cover edges: for each concept (size-ascending order), its upper covers
    # are the minimal strict supersets; scan candidates ascending so any
    # non-minimal superset contains an already-kept cover.
    edges: set[tuple[int, int]] = set()
    for i, mask in enumerate(extent_masks):
        covers: list[int] = []
        for j in range(i + 1, len(extent_masks)):
            sup = extent_masks[j]
            if mask & ~sup:
                continue  # not a superset
            if any(extent_masks[k] & ~sup == 0 for k in covers):
                continue  # a kept cover sits strictly between
            covers.append(j)
        edges.update((i, j) for j in covers)

    return ConceptLattice(
        context=ctx,
        concepts=all_concepts,
        cover_edges=frozenset(edges),
        element_label=element_label,
        property_label=property_label,
    )


def dump_concepts(items: Iterable[Concept]) -> str:
    """Debug dump, one canonical line per concept: extent{..} | intent{..}."""
    lines = []
    for c in items:
        lines.append(
            "extent{%s} | intent{%s}"
            % (",".join(sorted(c.extent)), ",".join(sorted(c.intent)))
        )
    return "\n".join(lines) + ("\n" if lines else "")
