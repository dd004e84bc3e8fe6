"""Concept lattices: batch enumeration and incremental construction.

Two independent routes produce the same lattice:

* :func:`enumerate_concepts` walks every closed attribute set in lectic
  order (the batch route, also exposed through the ``verify`` command);
* :func:`build_lattice` inserts objects one at a time, maintaining the
  Hasse diagram as it goes (the route used for indexing, because it also
  supports inserting a query as a pseudo-object later).

Concept extents and intents are bit masks over a frozen universe; the
attribute universe is fixed when the lattice is created and objects may
be appended but never removed.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .context import FormalContext, _mask_bits
from .errors import DuplicateIdentifierError, InvalidArgumentError, UnknownIdentifierError


@dataclass(frozen=True)
class FormalConcept:
    """A closed (extent, intent) pair."""

    extent: frozenset
    intent: frozenset

    def is_subconcept_of(self, other: "FormalConcept") -> bool:
        """True iff this concept's extent is contained in ``other``'s.

        Equivalently, this concept's intent contains the other's.
        """
        return self.extent <= other.extent


def is_subconcept(c: FormalConcept, d: FormalConcept) -> bool:
    return c.is_subconcept_of(d)


class ConceptLattice:
    """All concepts of a context plus the cover (Hasse) edges.

    Concepts are addressed by integer index. ``top`` is the supremum (the
    concept whose extent is every object), ``bottom`` the infimum (the one
    whose intent is every attribute); in a one-concept lattice they
    coincide. Indices are stable under object insertion: existing concepts
    whose extent merely grows keep their index, new concepts are appended.
    """

    __slots__ = (
        "objects",
        "attributes",
        "_extents",
        "_intents",
        "_parents",
        "_children",
        "_by_intent",
        "top",
        "bottom",
    )

    def __init__(self, attributes: Sequence[str]):
        self.objects: list = []
        self.attributes = tuple(attributes)
        full = (1 << len(self.attributes)) - 1
        # the infimum (∅, M) exists in every lattice over this universe
        self._extents = [0]
        self._intents = [full]
        self._parents = [set()]
        self._children = [set()]
        self._by_intent = {full: 0}
        self.top = 0
        self.bottom = 0

    # -- read access ------------------------------------------------------

    def __len__(self) -> int:
        return len(self._extents)

    def __iter__(self) -> Iterator[FormalConcept]:
        return (self.concept(i) for i in range(len(self)))

    def concept(self, index: int) -> FormalConcept:
        self._check_index(index)
        return FormalConcept(self.extent_ids(index), self.intent_ids(index))

    def extent_ids(self, index: int) -> frozenset:
        self._check_index(index)
        return frozenset(self.objects[j] for j in _mask_bits(self._extents[index]))

    def intent_ids(self, index: int) -> frozenset:
        self._check_index(index)
        return frozenset(self.attributes[i] for i in _mask_bits(self._intents[index]))

    def neighbors(self, index: int):
        """Cover parents and cover children of one concept.

        Returns ``(upper, lower)`` as frozensets of concept indices. The
        supremum has no upper neighbors, the infimum no lower ones.
        """
        self._check_index(index)
        return frozenset(self._parents[index]), frozenset(self._children[index])

    def covers(self) -> frozenset:
        """All Hasse edges as (child index, parent index) pairs."""
        return frozenset(
            (child, parent)
            for child in range(len(self))
            for parent in self._parents[child]
        )

    def index_of_intent(self, attrs: Iterable[str]):
        """Index of the concept whose intent is exactly ``attrs``, or None."""
        return self._by_intent.get(self.attribute_mask(attrs))

    def attribute_mask(self, attrs: Iterable[str]) -> int:
        pos = {m: i for i, m in enumerate(self.attributes)}
        mask = 0
        for m in attrs:
            if m not in pos:
                raise UnknownIdentifierError(f"unknown attribute: {m!r}")
            mask |= 1 << pos[m]
        return mask

    def _check_index(self, index: int) -> None:
        if not isinstance(index, int) or not 0 <= index < len(self._extents):
            raise InvalidArgumentError(f"invalid concept index: {index!r}")

    # -- canonical form -----------------------------------------------------

    def canonical_order(self) -> list:
        """Concept indices sorted by (intent size, intent identifiers).

        The intent is the concept's canonical key; this order is identical
        for any two lattices with equal concept sets, whatever the object
        insertion order was.
        """
        return sorted(
            range(len(self)),
            key=lambda i: (
                bin(self._intents[i]).count("1"),
                tuple(sorted(self.intent_ids(i))),
            ),
        )

    def canonical_form(self) -> dict:
        """An order-insensitive, JSON-ready description of the lattice."""
        order = self.canonical_order()
        rank = {old: new for new, old in enumerate(order)}
        return {
            "concepts": [
                {
                    "extent": sorted(self.extent_ids(i)),
                    "intent": sorted(self.intent_ids(i)),
                }
                for i in order
            ],
            "covers": sorted(
                [rank[child], rank[parent]] for child, parent in self.covers()
            ),
            "top": rank[self.top],
            "bottom": rank[self.bottom],
        }

    def reordered(self, order: Sequence[int]) -> "ConceptLattice":
        """A copy with concepts renumbered so that index i is ``order[i]``."""
        if sorted(order) != list(range(len(self))):
            raise InvalidArgumentError("order must be a permutation of all indices")
        rank = {old: new for new, old in enumerate(order)}
        out = ConceptLattice.__new__(ConceptLattice)
        out.objects = list(self.objects)
        out.attributes = self.attributes
        out._extents = [self._extents[i] for i in order]
        out._intents = [self._intents[i] for i in order]
        out._parents = [{rank[p] for p in self._parents[i]} for i in order]
        out._children = [{rank[c] for c in self._children[i]} for i in order]
        out._by_intent = {mask: rank[i] for mask, i in self._by_intent.items()}
        out.top = rank[self.top]
        out.bottom = rank[self.bottom]
        return out

    def copy(self) -> "ConceptLattice":
        out = ConceptLattice.__new__(ConceptLattice)
        out.objects = list(self.objects)
        out.attributes = self.attributes
        out._extents = list(self._extents)
        out._intents = list(self._intents)
        out._parents = [set(s) for s in self._parents]
        out._children = [set(s) for s in self._children]
        out._by_intent = dict(self._by_intent)
        out.top = self.top
        out.bottom = self.bottom
        return out

    # -- incremental construction -------------------------------------------

    def _insert_object(self, obj, intent_mask: int) -> int:
        """Insert one object with the given attribute mask.

        Creates whatever concepts the new object forces, rewires cover
        edges around them, then adds the object to the extent of its
        object concept and every concept above it. Returns the index of
        the object concept (the one whose intent is the closure of
        ``intent_mask`` in the grown context).
        """
        self.objects.append(obj)
        obj_bit = 1 << (len(self.objects) - 1)
        target = self._add_intent(intent_mask, self.bottom)

        pending = [target]
        seen = {target}
        while pending:
            c = pending.pop()
            self._extents[c] |= obj_bit
            for parent in self._parents[c]:
                if parent not in seen:
                    seen.add(parent)
                    pending.append(parent)

        all_objects = (1 << len(self.objects)) - 1
        for i, extent in enumerate(self._extents):
            if extent == all_objects:
                self.top = i
                break
        return target

    def _add_intent(self, intent: int, generator: int) -> int:
        """Find or create the concept with this intent below ``generator``.

        Recursive insertion: walks up to the maximal concept whose intent
        contains ``intent``; if that concept's intent is not an exact
        match, materializes the new concept, recursing to materialize any
        missing meets with the generator's parents, and relinks cover
        edges so the diagram stays transitively reduced.
        """
        generator = self._maximal_concept(intent, generator)
        if self._intents[generator] == intent:
            return generator

        new_parents = []
        for candidate in sorted(self._parents[generator]):
            if self._intents[candidate] & ~intent:
                candidate = self._add_intent(self._intents[candidate] & intent, candidate)
            grafted = True
            for i, parent in enumerate(new_parents):
                c_int = self._intents[candidate]
                p_int = self._intents[parent]
                if c_int & ~p_int == 0:
                    # candidate is weakly more general than a kept parent
                    grafted = False
                    break
                if p_int & ~c_int == 0:
                    new_parents[i] = None
            new_parents = [p for p in new_parents if p is not None]
            if grafted:
                new_parents.append(candidate)

        new_index = len(self._extents)
        self._extents.append(self._extents[generator])
        self._intents.append(intent)
        self._parents.append(set())
        self._children.append(set())
        self._by_intent[intent] = new_index

        for parent in new_parents:
            self._parents[generator].discard(parent)
            self._children[parent].discard(generator)
            self._parents[new_index].add(parent)
            self._children[parent].add(new_index)
        self._parents[generator].add(new_index)
        self._children[new_index].add(generator)
        return new_index

    def _maximal_concept(self, intent: int, start: int) -> int:
        """Climb cover edges to the largest concept whose intent ⊇ intent."""
        current = start
        climbing = True
        while climbing:
            climbing = False
            for parent in sorted(self._parents[current]):
                if intent & ~self._intents[parent] == 0:
                    current = parent
                    climbing = True
                    break
        return current


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    """Build the full concept lattice of a context incrementally.

    Objects are inserted one at a time in context order; the result is
    independent of that order (asserted by the test suite against the
    batch enumeration).
    """
    lattice = ConceptLattice(ctx.attributes)
    for obj in ctx.objects:
        lattice._insert_object(obj, ctx.row_mask(obj))
    return lattice


def add_object(
    lattice: ConceptLattice,
    ctx: FormalContext,
    obj,
    intent: Iterable[str],
) -> ConceptLattice:
    """Insert one new object into a copy of ``lattice``.

    ``ctx`` is the context the lattice was built from; the object must not
    exist in it and the intent must use its (frozen) attribute universe.
    The input lattice is left untouched; in the returned copy, surviving
    concepts keep their indices and new concepts are appended.
    """
    if obj in ctx.objects or obj in lattice.objects:
        raise DuplicateIdentifierError(f"object already present: {obj!r}")
    intent_mask = ctx.attribute_mask(intent)
    grown = lattice.copy()
    grown._insert_object(obj, intent_mask)
    return grown


def enumerate_concepts(ctx: FormalContext) -> frozenset:
    """Every formal concept of the context, via lectic closure enumeration.

    Walks the closed attribute sets in lectic order, starting from the
    closure of the empty set; each closed set B yields the concept
    (B', B). Serves as the batch cross-check for the incremental builder.
    """
    concepts = []
    for intent_mask in _iter_closed_attribute_masks(ctx):
        extent_mask = ctx.extent_mask(intent_mask)
        concepts.append(
            FormalConcept(ctx.object_ids(extent_mask), ctx.attribute_ids(intent_mask))
        )
    return frozenset(concepts)


def _iter_closed_attribute_masks(ctx: FormalContext) -> Iterator[int]:
    full = ctx.all_attributes_mask
    width = ctx.attribute_count

    def closure(mask):
        return ctx.intent_mask(ctx.extent_mask(mask))

    current = closure(0)
    yield current
    while current != full:
        current = _next_closure(current, width, closure)
        if current is None:
            return
        yield current


def _next_closure(mask: int, width: int, closure) -> int:
    """The lectically next closed set after ``mask``, or None at the end."""
    for i in reversed(range(width)):
        bit = 1 << i
        if mask & bit:
            mask &= ~bit
        else:
            candidate = closure(mask | bit)
            if candidate & (bit - 1) == mask & (bit - 1):
                return candidate
    return None


def covers_from_extents(extents: Sequence[int]):
    """Cover pairs (child, parent) recomputed from extents alone.

    For each concept the parents are the minimal strict supersets of its
    extent. Used to validate persisted lattices and by the ``verify``
    command, independently of the edges the incremental builder kept.
    """
    n = list(range(len(extents)))
    by_size = sorted(n, key=lambda i: bin(extents[i]).count("1"))
    edges = set()
    for child in n:
        ext = extents[child]
        accepted = []
        # by_size order guarantees any witness below a non-cover is seen first
        for d in by_size:
            sup = extents[d]
            if sup == ext or ext & ~sup:
                continue
            if any(extents[e] & ~sup == 0 for e in accepted):
                continue
            accepted.append(d)
            edges.add((child, d))
    return frozenset(edges)
