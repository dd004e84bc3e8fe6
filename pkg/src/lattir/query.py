"""Query answering over a built lattice.

A query becomes a pseudo-object whose attributes are its terms, inserted
into a transient copy of the lattice. That insertion forces a concept
whose intent is exactly the query's terms; documents are then ranked by
the number of Hasse edges between that concept and the concept that first
reaches them, walking covers in both directions breadth-first. Concepts
whose intent shares nothing with the query, and the supremum and infimum,
are neither ranked nor traversed.
"""

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .context import FormalContext
from .corpus import StopList, normalize_phrase, tokenize
from .errors import InvalidQueryError, NoKnownTermsError
from .lattice import ConceptLattice, FormalConcept, add_object
from .ontology import OntologyTree, generalize, specialize

QUERY_OBJECT_ID = "__query__"
MODES = ("none", "generalize", "specialize")


@dataclass(frozen=True)
class Query:
    """Normalized query terms plus the chosen reformulation mode."""

    terms: frozenset
    mode: str = "none"

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidQueryError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not self.terms:
            raise InvalidQueryError("query is empty after normalization")

    @classmethod
    def from_raw(cls, raw_terms: Iterable[str], mode: str = "none",
                 stops: Optional[StopList] = None) -> "Query":
        """Build a query from raw user input.

        Each raw term is either a quoted or multi-word phrase, kept whole
        and matched as a single attribute, or a plain token that goes
        through the corpus pipeline (hyphen split, punctuation strip,
        stop-word removal).
        """
        if stops is None:
            stops = StopList.default()
        terms = set()
        for raw in raw_terms:
            text = raw.strip()
            if len(text) >= 2 and text[0] == text[-1] and text[0] in "'\"":
                phrase = normalize_phrase(text[1:-1])
                if phrase:
                    terms.add(phrase)
            elif any(ch.isspace() for ch in text):
                phrase = normalize_phrase(text)
                if phrase:
                    terms.add(phrase)
            else:
                terms.update(t for t in tokenize(text) if t not in stops)
        return cls(frozenset(terms), mode)


@dataclass(frozen=True)
class RankedResult:
    """Ranked documents plus bookkeeping about the effective query.

    ``entries`` is (rank, document) sorted by rank then id; each document
    appears once, at its smallest edge distance. ``dropped_terms`` are
    query terms absent from the attribute universe, ``effective_terms``
    the ones actually inserted.
    """

    entries: tuple
    dropped_terms: tuple = ()
    effective_terms: tuple = ()

    def documents(self) -> tuple:
        return tuple(doc for _, doc in self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": [{"rank": rank, "doc": doc} for rank, doc in self.entries],
            "dropped_terms": list(self.dropped_terms),
            "effective_terms": list(self.effective_terms),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class SearchReport:
    """A ranked result plus the traversal evidence behind it.

    ``overlay`` is the transient lattice with the query pseudo-object
    inserted; ``trail`` lists, per BFS level, the overlay concept indices
    that were ranked at that distance. ``base_concept_count`` marks where
    overlay-only concepts start (their indices are >= it).
    """

    result: RankedResult
    query_concept_index: int
    query_concept: FormalConcept
    trail: tuple
    overlay: ConceptLattice
    base_concept_count: int


def insert_query(lattice: ConceptLattice, ctx: FormalContext, terms: Iterable[str]):
    """Insert query terms as a pseudo-object into a lattice copy.

    Returns ``(overlay, index)`` where index addresses the concept whose
    intent is exactly the inserted terms; the pseudo-object forces that
    concept to exist. The base lattice and context are untouched.
    """
    terms = frozenset(terms)
    if not terms:
        raise InvalidQueryError("cannot insert an empty query")
    overlay = add_object(lattice, ctx, QUERY_OBJECT_ID, terms)
    index = overlay.index_of_intent(terms)
    assert index is not None, "query insertion must force its own concept"
    return overlay, index


def rank_documents(overlay: ConceptLattice, query_concept: int,
                   query_terms: Iterable[str], max_depth=None) -> RankedResult:
    """Rank documents by edge distance from the query concept.

    Breadth-first over cover edges in both directions. A concept is
    visited only if its intent intersects the query terms and it is
    neither the overlay's supremum nor its infimum; excluded concepts are
    not expanded through either. Rank 0 is the query concept's own extent
    (minus the pseudo-object); the query concept itself is always the
    seed, even in degenerate lattices where it coincides with top or
    bottom. ``max_depth`` caps the traversal radius; exclusion alone
    bounds it otherwise.
    """
    terms = tuple(sorted(query_terms))
    entries, _ = _traverse(overlay, query_concept, terms, max_depth)
    return RankedResult(entries=entries, effective_terms=terms)


def _traverse(overlay: ConceptLattice, query_concept: int, query_terms, max_depth=None):
    overlay._check_index(query_concept)
    query_mask = overlay.attribute_mask(query_terms)
    ranks = {}
    trail = []

    def take(concept, level):
        for doc in overlay.extent_ids(concept):
            if doc != QUERY_OBJECT_ID and doc not in ranks:
                ranks[doc] = level

    visited = {query_concept}
    frontier = [query_concept]
    take(query_concept, 0)
    trail.append((0, (query_concept,)))
    level = 0
    while frontier:
        if max_depth is not None and level >= max_depth:
            break
        level += 1
        reached = []
        for concept in frontier:
            upper, lower = overlay.neighbors(concept)
            for nb in sorted(upper | lower):
                if nb in visited:
                    continue
                visited.add(nb)
                if nb == overlay.top or nb == overlay.bottom:
                    continue
                if overlay._intents[nb] & query_mask == 0:
                    continue
                reached.append(nb)
        for concept in sorted(reached):
            take(concept, level)
        if reached:
            trail.append((level, tuple(sorted(reached))))
        frontier = reached

    entries = tuple(sorted((rank, doc) for doc, rank in ranks.items()))
    return entries, tuple(trail)


def search(
    ctx: FormalContext,
    lattice: ConceptLattice,
    query: Query,
    tree: Optional[OntologyTree] = None,
    max_depth=None,
) -> SearchReport:
    """End-to-end search: reformulate, filter, insert, rank.

    Reformulation terms that miss the indexed vocabulary are dropped with
    a record rather than failing; the query only errors when nothing at
    all is left. The inputs are never modified, so concurrent searches
    may share one index.
    """
    if query.mode == "generalize":
        effective = generalize(tree, query.terms)
    elif query.mode == "specialize":
        effective = specialize(tree, query.terms)
    else:
        effective = frozenset(query.terms)

    known = frozenset(ctx.attributes)
    kept = effective & known
    dropped = effective - known
    if not kept:
        raise NoKnownTermsError(dropped)

    overlay, index = insert_query(lattice, ctx, kept)
    entries, trail = _traverse(overlay, index, sorted(kept), max_depth)
    return SearchReport(
        result=RankedResult(
            entries=entries,
            dropped_terms=tuple(sorted(dropped)),
            effective_terms=tuple(sorted(kept)),
        ),
        query_concept_index=index,
        query_concept=overlay.concept(index),
        trail=trail,
        overlay=overlay,
        base_concept_count=len(lattice),
    )
