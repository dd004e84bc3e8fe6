"""Formal contexts: objects, attributes, and a binary incidence relation.

The incidence relation is stored twice, as one bit mask per object row and
one per attribute column, so derivation reduces to AND-ing machine words.
Bit ``i`` of a row mask corresponds to ``attributes[i]``; bit ``j`` of a
column mask corresponds to ``objects[j]``.
"""

import json
from typing import Iterable, Mapping, Sequence

from .errors import (
    CorpusFormatError,
    DuplicateIdentifierError,
    UnknownIdentifierError,
)


def _mask_bits(mask):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FormalContext:
    """An immutable objects-by-attributes binary relation.

    ``objects`` and ``attributes`` keep their given order; identifiers must
    be unique within each list. All set-valued results are frozensets of
    identifiers.
    """

    __slots__ = ("objects", "attributes", "_obj_index", "_attr_index", "_rows", "_cols")

    def __init__(
        self,
        objects: Sequence[str],
        attributes: Sequence[str],
        incidence: Mapping[str, Iterable[str]],
    ):
        self.objects = tuple(objects)
        self.attributes = tuple(attributes)
        self._obj_index = {g: i for i, g in enumerate(self.objects)}
        self._attr_index = {m: i for i, m in enumerate(self.attributes)}
        if len(self._obj_index) != len(self.objects):
            raise DuplicateIdentifierError("duplicate object identifier")
        if len(self._attr_index) != len(self.attributes):
            raise DuplicateIdentifierError("duplicate attribute identifier")

        rows = [0] * len(self.objects)
        for obj, attrs in incidence.items():
            if obj not in self._obj_index:
                raise UnknownIdentifierError(f"unknown object: {obj!r}")
            mask = 0
            for attr in attrs:
                if attr not in self._attr_index:
                    raise UnknownIdentifierError(
                        f"unknown attribute {attr!r} for object {obj!r}"
                    )
                mask |= 1 << self._attr_index[attr]
            rows[self._obj_index[obj]] = mask
        self._rows = tuple(rows)

        cols = [0] * len(self.attributes)
        for j, row in enumerate(self._rows):
            for i in _mask_bits(row):
                cols[i] |= 1 << j
        self._cols = tuple(cols)

    # -- basic shape ----------------------------------------------------

    @property
    def object_count(self) -> int:
        return len(self.objects)

    @property
    def attribute_count(self) -> int:
        return len(self.attributes)

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.attributes == other.attributes
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.objects, self.attributes, self._rows))

    def __repr__(self):
        return (
            f"FormalContext({len(self.objects)} objects, "
            f"{len(self.attributes)} attributes)"
        )

    def has(self, obj: str, attr: str) -> bool:
        """True iff the object carries the attribute."""
        row = self._rows[self._object_position(obj)]
        return bool(row >> self._attribute_position(attr) & 1)

    def row(self, obj: str) -> frozenset:
        """Attribute set of one object."""
        return self.attribute_ids(self._rows[self._object_position(obj)])

    def column(self, attr: str) -> frozenset:
        """Object set of one attribute."""
        return self.object_ids(self._cols[self._attribute_position(attr)])

    # -- derivation and closure -----------------------------------------

    def derive_intent(self, objs: Iterable[str]) -> frozenset:
        """Attributes shared by every object in ``objs``.

        The empty object set derives to the full attribute set.
        """
        return self.attribute_ids(self.intent_mask(self.object_mask(objs)))

    def derive_extent(self, attrs: Iterable[str]) -> frozenset:
        """Objects carrying every attribute in ``attrs``.

        The empty attribute set derives to the full object set.
        """
        return self.object_ids(self.extent_mask(self.attribute_mask(attrs)))

    def closure_attributes(self, attrs: Iterable[str]) -> frozenset:
        """The closure of an attribute set under the two derivations.

        Always a superset of the input; applying it twice is a fixed point.
        """
        mask = self.attribute_mask(attrs)
        return self.attribute_ids(self.intent_mask(self.extent_mask(mask)))

    # -- mask-level operations (used by the lattice builder) -------------

    @property
    def all_objects_mask(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def all_attributes_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def object_mask(self, objs: Iterable[str]) -> int:
        mask = 0
        for g in objs:
            mask |= 1 << self._object_position(g)
        return mask

    def attribute_mask(self, attrs: Iterable[str]) -> int:
        mask = 0
        for m in attrs:
            mask |= 1 << self._attribute_position(m)
        return mask

    def object_ids(self, mask: int) -> frozenset:
        return frozenset(self.objects[j] for j in _mask_bits(mask))

    def attribute_ids(self, mask: int) -> frozenset:
        return frozenset(self.attributes[i] for i in _mask_bits(mask))

    def extent_mask(self, attr_mask: int) -> int:
        """Object mask of all objects carrying every attribute in the mask."""
        extent = self.all_objects_mask
        for i in _mask_bits(attr_mask):
            extent &= self._cols[i]
        return extent

    def intent_mask(self, obj_mask: int) -> int:
        """Attribute mask of all attributes shared by the masked objects."""
        intent = self.all_attributes_mask
        for j in _mask_bits(obj_mask):
            intent &= self._rows[j]
        return intent

    def row_mask(self, obj: str) -> int:
        return self._rows[self._object_position(obj)]

    # -- growth ----------------------------------------------------------

    def with_object(self, obj: str, attrs: Iterable[str]) -> "FormalContext":
        """A new context with one extra object appended.

        The attribute universe is frozen at creation; ``attrs`` must be a
        subset of it.
        """
        if obj in self._obj_index:
            raise DuplicateIdentifierError(f"object already present: {obj!r}")
        incidence = {g: self.row(g) for g in self.objects}
        incidence[obj] = frozenset(attrs)
        return FormalContext(self.objects + (obj,), self.attributes, incidence)

    # -- helpers ----------------------------------------------------------

    def _object_position(self, obj: str) -> int:
        try:
            return self._obj_index[obj]
        except KeyError:
            raise UnknownIdentifierError(f"unknown object: {obj!r}") from None

    def _attribute_position(self, attr: str) -> int:
        try:
            return self._attr_index[attr]
        except KeyError:
            raise UnknownIdentifierError(f"unknown attribute: {attr!r}") from None

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "attributes": list(self.attributes),
            "incidence": {g: sorted(self.row(g)) for g in self.objects},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FormalContext":
        if not isinstance(data, dict) or "objects" not in data:
            raise CorpusFormatError("context file must be an object with 'objects'")
        objects = data["objects"]
        incidence = data.get("incidence", {})
        attributes = data.get("attributes")
        if attributes is None:
            attributes = sorted({m for attrs in incidence.values() for m in attrs})
        return cls(objects, attributes, incidence)


def load_context(path) -> FormalContext:
    """Read a context from a JSON file (see README for the schema)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(
                f"invalid context JSON in {path}", exc.lineno, exc.colno
            ) from exc
    return FormalContext.from_dict(data)


def dump_context(ctx: FormalContext, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ctx.to_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")
