"""lattir: concept-lattice document retrieval.

Index a corpus as a binary document/term context, build its Galois
lattice incrementally, answer queries by inserting them as pseudo-objects
and ranking documents by Hasse-edge distance, and widen or narrow queries
along a domain taxonomy.
"""

from .artifact import (
    FORMAT_VERSION,
    IndexArtifact,
    export_dot,
    load_index,
    reduced_labels,
    save_index,
    validate_artifact,
)
from .context import FormalContext, dump_context, load_context
from .corpus import (
    Document,
    StopList,
    build_context,
    emit_corpus,
    extract_terms,
    fill_terms,
    ingest_corpus,
    normalize_phrase,
    parse_corpus,
    remove_stopwords,
    tokenize,
)
from .errors import (
    ArtifactCorruptionError,
    ArtifactFormatError,
    CorpusFormatError,
    DuplicateIdentifierError,
    InvalidArgumentError,
    InvalidQueryError,
    LattirError,
    NoKnownTermsError,
    OntologyFormatError,
    UnknownIdentifierError,
    UnsupportedVersionError,
)
from .lattice import (
    ConceptLattice,
    FormalConcept,
    add_object,
    build_lattice,
    covers_from_extents,
    enumerate_concepts,
    is_subconcept,
)
from .ontology import (
    OntologyNode,
    OntologyTree,
    emit_ontology,
    generalize,
    load_ontology,
    parse_ontology,
    specialize,
)
from .query import (
    MODES,
    QUERY_OBJECT_ID,
    Query,
    RankedResult,
    SearchReport,
    insert_query,
    rank_documents,
    search,
)

__version__ = "0.1.0"
