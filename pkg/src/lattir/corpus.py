"""Corpus ingestion: XML publication files to a document/term context.

Titles are segmented into terms (hyphenated tokens split, punctuation and
case dropped), stop words are removed, and the surviving term sets become
a binary document/term incidence relation. Only titles are indexed; term
frequency is deliberately not recorded.
"""

import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Iterable, Optional, Sequence

from .context import FormalContext
from .errors import CorpusFormatError

_TITLE_TAGS = ("titre", "title")  # canonical spelling first; alias accepted on input


@dataclass(frozen=True)
class Document:
    """One corpus entry: identifier, authors, raw title, normalized terms."""

    id: str
    authors: tuple = ()
    title: str = ""
    terms: frozenset = field(default_factory=frozenset)


class StopList:
    """A set of lowercase terms discarded during indexing."""

    __slots__ = ("words",)

    def __init__(self, words: Iterable[str] = ()):
        self.words = frozenset(w.lower() for w in words)

    def __contains__(self, word) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __eq__(self, other):
        return isinstance(other, StopList) and self.words == other.words

    @classmethod
    def default(cls) -> "StopList":
        """The built-in English function-word list shipped with the package."""
        text = resources.files("lattir").joinpath("data/stopwords.txt").read_text("utf-8")
        return cls.from_text(text)

    @classmethod
    def from_text(cls, text: str) -> "StopList":
        words = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                words.append(line)
        return cls(words)

    @classmethod
    def from_file(cls, path) -> "StopList":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


def tokenize(title: str) -> list:
    """Split a title into normalized terms, in order.

    Whitespace separates tokens, hyphens split tokens into their parts,
    every other non-alphanumeric character is stripped, and everything is
    lowercased. Digits and accented letters survive. Empty pieces vanish.
    """
    terms = []
    for chunk in title.lower().split():
        for piece in chunk.split("-"):
            word = "".join(ch for ch in piece if ch.isalnum())
            if word:
                terms.append(word)
    return terms


def normalize_phrase(text: str) -> str:
    """Lowercase and collapse whitespace, keeping everything else.

    Used for multi-word vocabulary entries (ontology concepts, quoted
    query terms) that are matched as whole attributes rather than being
    segmented like titles.
    """
    return " ".join(text.lower().split())


def remove_stopwords(terms: Iterable[str], stops: StopList) -> frozenset:
    """Drop stop words and duplicates from an already-normalized term list."""
    return frozenset(t for t in terms if t not in stops)


def extract_terms(title: str, stops: StopList) -> frozenset:
    return remove_stopwords(tokenize(title), stops)


def parse_corpus(source) -> list:
    """Parse corpus XML into documents, in file order.

    ``source`` may be bytes, a string of XML, or a path. The root element
    must be ``<documents>``; each ``<document>`` carries a unique ``nom``
    attribute, any number of ``<auteur>`` children, and exactly one title
    element (``<titre>``, with ``<title>`` accepted as an input alias).
    Terms are not filled in here; see :func:`extract_terms`.
    """
    try:
        if isinstance(source, bytes):
            root = ET.parse(io.BytesIO(source)).getroot()
        elif isinstance(source, str) and source.lstrip().startswith("<"):
            root = ET.parse(io.StringIO(source)).getroot()
        else:
            root = ET.parse(source).getroot()
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise CorpusFormatError(f"malformed corpus XML: {exc.msg}", line, column) from exc

    if root.tag != "documents":
        raise CorpusFormatError(f"expected <documents> root, found <{root.tag}>")

    docs = []
    seen = set()
    for ordinal, element in enumerate(root, start=1):
        if element.tag != "document":
            raise CorpusFormatError(
                f"unexpected <{element.tag}> element (position {ordinal})"
            )
        doc_id = element.get("nom")
        if doc_id is None:
            raise CorpusFormatError(f"document #{ordinal} is missing the nom attribute")
        if doc_id in seen:
            raise CorpusFormatError(f"duplicate document id: {doc_id!r}")
        seen.add(doc_id)

        titles = [el for el in element if el.tag in _TITLE_TAGS]
        if not titles:
            raise CorpusFormatError(f"document {doc_id!r} has no title element")
        if len(titles) > 1:
            raise CorpusFormatError(f"document {doc_id!r} has more than one title")
        authors = tuple(
            (el.text or "").strip() for el in element if el.tag == "auteur"
        )
        docs.append(Document(id=doc_id, authors=authors, title=(titles[0].text or "").strip()))
    return docs


def fill_terms(docs: Sequence[Document], stops: Optional[StopList] = None) -> list:
    """Return documents with their term sets computed from titles."""
    if stops is None:
        stops = StopList.default()
    return [replace(d, terms=extract_terms(d.title, stops)) for d in docs]


def build_context(docs: Sequence[Document]) -> FormalContext:
    """Binary document/term context: rows in corpus order, terms sorted.

    Incidence records presence only. An empty corpus yields the empty
    context.
    """
    attributes = sorted({t for d in docs for t in d.terms})
    return FormalContext(
        [d.id for d in docs], attributes, {d.id: d.terms for d in docs}
    )


def ingest_corpus(source, stops: Optional[StopList] = None):
    """Parse, normalize, and contextualize a corpus in one step.

    Returns ``(documents, context)`` with term sets filled in.
    """
    docs = fill_terms(parse_corpus(source), stops)
    return docs, build_context(docs)


def emit_corpus(docs: Sequence[Document]) -> str:
    """Serialize documents back to corpus XML (canonical <titre> spelling)."""
    root = ET.Element("documents")
    for d in docs:
        el = ET.SubElement(root, "document", nom=d.id)
        for author in d.authors:
            ET.SubElement(el, "auteur").text = author
        ET.SubElement(el, "titre").text = d.title
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
