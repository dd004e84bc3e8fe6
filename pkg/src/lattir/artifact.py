"""Persisted indexes: versioned JSON artifacts and DOT export.

An artifact bundles the context, the lattice (concepts renumbered into a
canonical order so ids survive save/load), per-document display metadata,
the stop list the index was built with, and optionally the ontology.
Saving is deterministic: equal artifacts produce identical bytes.
"""

import json
from dataclasses import dataclass, field
from typing import Optional

from .context import FormalContext
from .corpus import Document, StopList
from .errors import (
    ArtifactCorruptionError,
    ArtifactFormatError,
    UnsupportedVersionError,
)
from .lattice import ConceptLattice, build_lattice, covers_from_extents
from .ontology import OntologyTree, ontology_from_dict, ontology_to_dict

FORMAT_VERSION = 1


@dataclass
class IndexArtifact:
    context: FormalContext
    lattice: ConceptLattice
    documents: dict = field(default_factory=dict)  # id -> {"title", "authors"}
    ontology: Optional[OntologyTree] = None
    stopwords: frozenset = frozenset()
    format_version: int = FORMAT_VERSION

    @classmethod
    def build(
        cls,
        ctx: FormalContext,
        documents=None,
        ontology: Optional[OntologyTree] = None,
        stops: Optional[StopList] = None,
    ) -> "IndexArtifact":
        """Index a context: build the lattice and canonicalize concept ids."""
        built = build_lattice(ctx)
        lattice = built.reordered(built.canonical_order())
        meta = {}
        for doc in documents or ():
            if isinstance(doc, Document):
                meta[doc.id] = {"title": doc.title, "authors": list(doc.authors)}
            else:
                raise ArtifactFormatError(f"unsupported document entry: {doc!r}")
        return cls(
            context=ctx,
            lattice=lattice,
            documents=meta,
            ontology=ontology,
            stopwords=frozenset(stops.words) if stops is not None else frozenset(),
        )

    def stoplist(self) -> StopList:
        return StopList(self.stopwords)

    def summary(self) -> dict:
        return {
            "objects": self.context.object_count,
            "attributes": self.context.attribute_count,
            "concepts": len(self.lattice),
            "covers": len(self.lattice.covers()),
            "has_ontology": self.ontology is not None,
            "format_version": self.format_version,
        }

    def to_dict(self) -> dict:
        lat = self.lattice
        return {
            "format_version": self.format_version,
            "context": self.context.to_dict(),
            "lattice": {
                "concepts": [
                    {
                        "extent": sorted(lat.extent_ids(i)),
                        "intent": sorted(lat.intent_ids(i)),
                    }
                    for i in range(len(lat))
                ],
                "covers": sorted([c, p] for c, p in lat.covers()),
                "top": lat.top,
                "bottom": lat.bottom,
            },
            "documents": {
                doc_id: {"title": meta["title"], "authors": list(meta["authors"])}
                for doc_id, meta in sorted(self.documents.items())
            },
            "ontology": ontology_to_dict(self.ontology.root) if self.ontology else None,
            "stopwords": sorted(self.stopwords),
        }

    def to_bytes(self) -> bytes:
        return (json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n").encode("utf-8")


def _lattice_from_parts(ctx: FormalContext, concepts, covers, top, bottom) -> ConceptLattice:
    lattice = ConceptLattice.__new__(ConceptLattice)
    lattice.objects = list(ctx.objects)
    lattice.attributes = ctx.attributes
    lattice._extents = [ctx.object_mask(c["extent"]) for c in concepts]
    lattice._intents = [ctx.attribute_mask(c["intent"]) for c in concepts]
    n = len(concepts)
    lattice._parents = [set() for _ in range(n)]
    lattice._children = [set() for _ in range(n)]
    for child, parent in covers:
        if not (0 <= child < n and 0 <= parent < n):
            raise ArtifactCorruptionError("cover-relation", f"edge ({child}, {parent}) out of range")
        lattice._parents[child].add(parent)
        lattice._children[parent].add(child)
    lattice._by_intent = {mask: i for i, mask in enumerate(lattice._intents)}
    lattice.top = top
    lattice.bottom = bottom
    return lattice


def validate_artifact(artifact: IndexArtifact) -> None:
    """Re-check every structural invariant; raise naming the failed one."""
    ctx, lat = artifact.context, artifact.lattice
    n = len(lat)
    if n == 0:
        raise ArtifactCorruptionError("concept-set", "a lattice holds at least one concept")
    if list(lat.objects) != list(ctx.objects) or lat.attributes != ctx.attributes:
        raise ArtifactCorruptionError("context-alignment", "lattice universe differs from context")

    seen_intents = {}
    seen_extents = {}
    for i in range(n):
        extent, intent = lat._extents[i], lat._intents[i]
        if ctx.intent_mask(extent) != intent or ctx.extent_mask(intent) != extent:
            raise ArtifactCorruptionError(
                "concept-closure", f"concept {i} is not closed under derivation"
            )
        if intent in seen_intents:
            raise ArtifactCorruptionError("unique-intents", f"concepts {seen_intents[intent]} and {i}")
        if extent in seen_extents:
            raise ArtifactCorruptionError("unique-extents", f"concepts {seen_extents[extent]} and {i}")
        seen_intents[intent] = i
        seen_extents[extent] = i

    expected = covers_from_extents(lat._extents)
    actual = lat.covers()
    if actual != expected:
        bad = sorted(actual ^ expected)[0]
        kind = "spurious" if bad in actual else "missing"
        raise ArtifactCorruptionError("cover-relation", f"{kind} edge {bad}")

    if lat._extents[lat.top] != ctx.all_objects_mask:
        raise ArtifactCorruptionError("top-bottom", "top concept does not span all objects")
    if lat._intents[lat.bottom] != ctx.all_attributes_mask:
        raise ArtifactCorruptionError("top-bottom", "bottom concept does not span all attributes")
    for doc_id in artifact.documents:
        if doc_id not in ctx.objects:
            raise ArtifactCorruptionError("documents-metadata", f"unknown document {doc_id!r}")


def save_index(artifact: IndexArtifact, destination) -> None:
    """Validate and write an artifact; identical artifacts yield identical bytes."""
    validate_artifact(artifact)
    payload = artifact.to_bytes()
    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        with open(destination, "wb") as fh:
            fh.write(payload)


def load_index(source) -> IndexArtifact:
    """Read an artifact back, re-checking version and every invariant."""
    if hasattr(source, "read"):
        raw = source.read()
    else:
        with open(source, "rb") as fh:
            raw = fh.read()
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ArtifactCorruptionError("json-syntax", f"not a readable index file: {exc}") from exc
    if not isinstance(data, dict) or "format_version" not in data:
        raise ArtifactFormatError("missing format_version; not an index file")
    version = data["format_version"]
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"index format version {version!r} is not supported (this build reads {FORMAT_VERSION})"
        )
    try:
        ctx = FormalContext.from_dict(data["context"])
        lat_data = data["lattice"]
        lattice = _lattice_from_parts(
            ctx,
            lat_data["concepts"],
            lat_data["covers"],
            lat_data["top"],
            lat_data["bottom"],
        )
        ontology = ontology_from_dict(data["ontology"]) if data.get("ontology") else None
        artifact = IndexArtifact(
            context=ctx,
            lattice=lattice,
            documents=data.get("documents", {}),
            ontology=ontology,
            stopwords=frozenset(data.get("stopwords", [])),
            format_version=version,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ArtifactFormatError):
            raise
        raise ArtifactCorruptionError("structure", str(exc)) from exc
    validate_artifact(artifact)
    return artifact


def reduced_labels(artifact: IndexArtifact):
    """Reduced labeling: each attribute at its maximal concept, each object
    at its minimal one. Returns (attr_labels, obj_labels) keyed by concept
    index."""
    ctx, lat = artifact.context, artifact.lattice
    by_extent = {lat._extents[i]: i for i in range(len(lat))}
    by_intent = {lat._intents[i]: i for i in range(len(lat))}
    attr_labels = {}
    for attr in ctx.attributes:
        home = by_extent[ctx.extent_mask(ctx.attribute_mask([attr]))]
        attr_labels.setdefault(home, []).append(attr)
    obj_labels = {}
    for obj in ctx.objects:
        home = by_intent[ctx.intent_mask(ctx.object_mask([obj]))]
        obj_labels.setdefault(home, []).append(obj)
    return (
        {i: sorted(v) for i, v in attr_labels.items()},
        {i: sorted(v) for i, v in obj_labels.items()},
    )


def export_dot(artifact: IndexArtifact, full_labels: bool = False) -> str:
    """Render the lattice as a DOT line diagram.

    One node per concept, reduced labeling by default, one edge per cover
    drawn from parent down to child, nodes ranked by intent size so the
    supremum sits on top.
    """
    lat = artifact.lattice
    attr_labels, obj_labels = reduced_labels(artifact)
    lines = [
        "digraph concept_lattice {",
        "  rankdir=TB;",
        '  node [shape=ellipse, fontsize=10, fontname="Helvetica"];',
        "  edge [arrowhead=none];",
    ]
    for i in range(len(lat)):
        if full_labels:
            upper = ", ".join(sorted(lat.intent_ids(i)))
            lower = ", ".join(sorted(lat.extent_ids(i)))
        else:
            upper = ", ".join(attr_labels.get(i, []))
            lower = ", ".join(obj_labels.get(i, []))
        label = "\\n".join(part for part in (upper, lower) if part)
        lines.append(f'  c{i} [label="{label}"];')

    layers = {}
    for i in range(len(lat)):
        layers.setdefault(bin(lat._intents[i]).count("1"), []).append(i)
    for size in sorted(layers):
        members = "; ".join(f"c{i}" for i in sorted(layers[size]))
        lines.append(f"  {{ rank=same; {members}; }}")

    for child, parent in sorted(lat.covers()):
        lines.append(f"  c{parent} -> c{child};")
    lines.append("}")
    return "\n".join(lines) + "\n"
