"""Domain taxonomies for query reformulation.

A tree of named concepts, each with optional synonyms and descriptive
name/type attributes. Generalization walks from a matched node up to the
root; specialization walks the subtree below it. Both leave unmatched
terms untouched, so reformulation never narrows a query.

File format (YAML): one root mapping with keys ``term`` (required),
``synonyms`` (list of strings), ``attributes`` (list of ``{name, type}``
mappings), and ``children`` (list of nested nodes). See the README for
the full grammar.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional

import yaml

from .corpus import normalize_phrase
from .errors import OntologyFormatError

_NODE_KEYS = {"term", "synonyms", "attributes", "children"}


@dataclass(frozen=True)
class OntologyNode:
    term: str
    synonyms: frozenset = field(default_factory=frozenset)
    attributes: tuple = ()  # (name, type) descriptor pairs, display-only
    children: tuple = ()


class OntologyTree:
    """A rooted, validated taxonomy with name-based node lookup."""

    __slots__ = ("root", "_by_name", "_parent_of")

    def __init__(self, root: OntologyNode):
        self.root = root
        self._by_name = {}
        self._parent_of = {}
        self._register(root, None)

    def _register(self, node: OntologyNode, parent: Optional[OntologyNode]):
        for name in (node.term, *node.synonyms):
            if name in self._by_name:
                raise OntologyFormatError(f"duplicate ontology term: {name!r}")
            self._by_name[name] = node
        self._parent_of[node.term] = parent
        for child in node.children:
            self._register(child, node)

    def locate(self, term: str) -> Optional[OntologyNode]:
        """The node whose term or synonym matches, after normalization."""
        return self._by_name.get(normalize_phrase(term))

    def parent(self, node: OntologyNode) -> Optional[OntologyNode]:
        return self._parent_of[node.term]

    def nodes(self):
        pending = [self.root]
        while pending:
            node = pending.pop()
            yield node
            pending.extend(reversed(node.children))

    def __len__(self):
        return sum(1 for _ in self.nodes())


def generalize(tree: Optional[OntologyTree], terms: Iterable[str]) -> frozenset:
    """Expand a query upward: add every ancestor term up to the root.

    Terms that do not match any node pass through unchanged; the result
    always contains the input.
    """
    result = set(terms)
    if tree is None:
        return frozenset(result)
    for term in list(result):
        node = tree.locate(term)
        while node is not None:
            node = tree.parent(node)
            if node is not None:
                result.add(node.term)
    return frozenset(result)


def specialize(
    tree: Optional[OntologyTree], terms: Iterable[str], leaves_only: bool = False
) -> frozenset:
    """Expand a query downward: add the subtree below each matched node.

    With ``leaves_only`` set, only leaf descendants are added instead of
    the whole subtree. The matched node itself is never duplicated and
    unmatched terms pass through.
    """
    result = set(terms)
    if tree is None:
        return frozenset(result)
    for term in list(result):
        node = tree.locate(term)
        if node is None:
            continue
        pending = list(node.children)
        while pending:
            sub = pending.pop()
            if not leaves_only or not sub.children:
                result.add(sub.term)
            pending.extend(sub.children)
    return frozenset(result)


def load_ontology(path) -> OntologyTree:
    """Parse the ontology file at ``path``."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ontology(fh.read())


def parse_ontology(source) -> OntologyTree:
    """Parse ontology YAML (text, bytes, or an open file).

    Terms and synonyms are normalized like query vocabulary (lowercased,
    whitespace collapsed). Rejects multiple roots, duplicate names,
    unknown keys, and nodes that contain themselves.
    """
    text = source if isinstance(source, (str, bytes)) else source.read()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise OntologyFormatError(f"invalid ontology YAML: {exc}") from exc
    return ontology_from_dict(data)


def ontology_from_dict(data) -> OntologyTree:
    if isinstance(data, list):
        raise OntologyFormatError("ontology must have a single root node, found a list")
    root = _build_node(data, path=())
    return OntologyTree(root)


def _build_node(data, path) -> OntologyNode:
    if not isinstance(data, dict):
        raise OntologyFormatError(f"ontology node must be a mapping, got {type(data).__name__}")
    if id(data) in path:
        raise OntologyFormatError(
            f"cycle detected: node {data.get('term')!r} is its own descendant"
        )
    unknown = set(data) - _NODE_KEYS
    if unknown:
        raise OntologyFormatError(f"unknown ontology node keys: {sorted(unknown)}")
    raw_term = data.get("term")
    if not raw_term or not isinstance(raw_term, str):
        raise OntologyFormatError("every ontology node needs a nonempty 'term' string")
    term = normalize_phrase(raw_term)

    synonyms = data.get("synonyms") or []
    if not isinstance(synonyms, list):
        raise OntologyFormatError(f"synonyms of {term!r} must be a list")
    attributes = []
    for entry in data.get("attributes") or []:
        if not isinstance(entry, dict) or "name" not in entry:
            raise OntologyFormatError(f"attribute of {term!r} must be a {{name, type}} mapping")
        attributes.append((str(entry["name"]), str(entry.get("type", ""))))

    child_path = path + (id(data),)
    children = tuple(_build_node(c, child_path) for c in data.get("children") or [])
    return OntologyNode(
        term=term,
        synonyms=frozenset(normalize_phrase(s) for s in synonyms),
        attributes=tuple(attributes),
        children=children,
    )


def ontology_to_dict(node: OntologyNode) -> dict:
    out = {"term": node.term}
    if node.synonyms:
        out["synonyms"] = sorted(node.synonyms)
    if node.attributes:
        out["attributes"] = [{"name": n, "type": t} for n, t in node.attributes]
    if node.children:
        out["children"] = [ontology_to_dict(c) for c in node.children]
    return out


def emit_ontology(tree: OntologyTree) -> str:
    """Serialize back to YAML; parse(emit(t)) reproduces t exactly."""
    return yaml.safe_dump(
        ontology_to_dict(tree.root), sort_keys=False, allow_unicode=True, width=100
    )
