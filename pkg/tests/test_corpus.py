import pytest

from lattir import (
    CorpusFormatError,
    Document,
    FormalContext,
    StopList,
    build_context,
    emit_corpus,
    extract_terms,
    fill_terms,
    ingest_corpus,
    parse_corpus,
    remove_stopwords,
    tokenize,
)

from .conftest import IMAGING_ATTRS, IMAGING_ROWS

FIRST_TITLE = "ga-svm and mutual information based frequency feature selection for face recognition"


class TestParseCorpus:
    def test_three_document_fixture(self, fixtures_dir):
        docs = parse_corpus(fixtures_dir / "publications.xml")
        assert [d.id for d in docs] == ["document_1", "document_2", "document_3"]
        assert len(docs[0].authors) == 4
        assert docs[0].title == FIRST_TITLE

    def test_title_alias_accepted(self, fixtures_dir):
        docs = parse_corpus(fixtures_dir / "publications.xml")
        # document_2 uses the <title> spelling in the fixture
        assert docs[1].title.startswith("the mixture of k-optimal-spanning-trees")

    def test_empty_corpus(self):
        assert parse_corpus("<documents/>") == []

    def test_duplicate_id_rejected(self):
        xml = (
            "<documents>"
            '<document nom="document_1"><titre>one</titre></document>'
            '<document nom="document_1"><titre>two</titre></document>'
            "</documents>"
        )
        with pytest.raises(CorpusFormatError, match="document_1"):
            parse_corpus(xml)

    def test_malformed_xml_reports_position(self):
        with pytest.raises(CorpusFormatError, match="line"):
            parse_corpus("<documents><document nom='x'></documents>")

    def test_missing_nom_reports_ordinal(self):
        xml = "<documents><document><titre>t</titre></document></documents>"
        with pytest.raises(CorpusFormatError, match="#1"):
            parse_corpus(xml)

    def test_missing_title_reports_id(self):
        xml = '<documents><document nom="doc_9"><auteur>A</auteur></document></documents>'
        with pytest.raises(CorpusFormatError, match="doc_9"):
            parse_corpus(xml)

    def test_wrong_root_rejected(self):
        with pytest.raises(CorpusFormatError, match="documents"):
            parse_corpus("<corpus/>")


class TestTokenize:
    def test_hyphen_split_and_lowercase(self):
        assert tokenize(FIRST_TITLE) == [
            "ga", "svm", "and", "mutual", "information", "based", "frequency",
            "feature", "selection", "for", "face", "recognition",
        ]

    def test_empty_title(self):
        assert tokenize("") == []

    def test_hyphenated_compound(self):
        assert tokenize("hos-based image sequence noise removal") == [
            "hos", "based", "image", "sequence", "noise", "removal",
        ]

    def test_punctuation_stripped_digits_kept(self):
        assert tokenize("the mixture of k-optimal-spanning-trees: 2nd edition!") == [
            "the", "mixture", "of", "k", "optimal", "spanning", "trees", "2nd", "edition",
        ]

    def test_accents_survive(self):
        assert tokenize("Réseaux de neurones") == ["réseaux", "de", "neurones"]

    def test_idempotent_on_own_output(self):
        once = tokenize(FIRST_TITLE)
        assert tokenize(" ".join(once)) == once


class TestStopWords:
    def test_default_list_removes_function_words(self):
        stops = StopList.default()
        terms = remove_stopwords(tokenize(FIRST_TITLE), stops)
        assert {"ga", "svm", "mutual", "information", "based", "frequency",
                "feature", "selection", "face", "recognition"} == terms

    def test_empty_input(self):
        assert remove_stopwords([], StopList.default()) == frozenset()

    def test_all_stopword_input(self):
        assert remove_stopwords(["of", "is", "and"], StopList.default()) == frozenset()

    def test_based_is_not_a_stop_word(self):
        assert "based" not in StopList.default()

    def test_custom_file_with_comments(self, tmp_path):
        f = tmp_path / "stops.txt"
        f.write_text("# comment\nfoo\nBAR  # trailing\n\n", encoding="utf-8")
        stops = StopList.from_file(f)
        assert "foo" in stops and "bar" in stops
        assert len(stops) == 2


class TestBuildContext:
    def test_document_rows_match_term_sets(self):
        docs = [
            Document(id=d, terms=IMAGING_ROWS[d]) for d in sorted(IMAGING_ROWS)
        ]
        ctx = build_context(docs)
        assert ctx.objects == tuple(sorted(IMAGING_ROWS))
        assert ctx.attributes == IMAGING_ATTRS
        for d in ctx.objects:
            assert ctx.row(d) == IMAGING_ROWS[d]
        for t in ctx.attributes:
            assert ctx.column(t) == {d for d in ctx.objects if t in IMAGING_ROWS[d]}

    def test_single_document_single_term(self):
        ctx = build_context([Document(id="a", terms=frozenset({"x"}))])
        assert ctx.objects == ("a",) and ctx.attributes == ("x",)
        assert ctx.has("a", "x")

    def test_disjoint_term_sets_give_diagonal(self):
        ctx = build_context([
            Document(id="a", terms=frozenset({"a-term"})),
            Document(id="b", terms=frozenset({"b-term"})),
        ])
        assert ctx.has("a", "a-term") and ctx.has("b", "b-term")
        assert not ctx.has("a", "b-term") and not ctx.has("b", "a-term")

    def test_empty_corpus_is_valid(self):
        ctx = build_context([])
        assert ctx.object_count == 0 and ctx.attribute_count == 0

    def test_imaging_fixture_reproduces_expected_context(self, fixtures_dir, imaging_ctx):
        _, ctx = ingest_corpus(fixtures_dir / "imaging_corpus.xml")
        assert set(ctx.objects) == set(imaging_ctx.objects)
        assert ctx.attributes == imaging_ctx.attributes
        for d in ctx.objects:
            assert ctx.row(d) == imaging_ctx.row(d)

    def test_no_attribute_is_a_stop_word_or_denormalized(self, fixtures_dir):
        _, ctx = ingest_corpus(fixtures_dir / "publications.xml")
        stops = StopList.default()
        for attr in ctx.attributes:
            assert attr not in stops
            assert attr == attr.lower()
            assert "-" not in attr
            assert all(ch.isalnum() for ch in attr)


class TestRoundTrip:
    def test_parse_emit_parse_preserves_documents(self, fixtures_dir):
        docs = parse_corpus(fixtures_dir / "publications.xml")
        again = parse_corpus(emit_corpus(docs))
        assert [(d.id, d.authors, d.title) for d in docs] == [
            (d.id, d.authors, d.title) for d in again
        ]

    def test_fill_terms_returns_new_documents(self, fixtures_dir):
        docs = parse_corpus(fixtures_dir / "publications.xml")
        filled = fill_terms(docs)
        assert docs[0].terms == frozenset()
        assert "ga" in filled[0].terms


def test_extract_terms_pipeline():
    stops = StopList(["the", "of"])
    assert extract_terms("The Detection of the Contour", stops) == {"detection", "contour"}
