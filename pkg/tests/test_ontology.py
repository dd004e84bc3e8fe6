import pytest

from lattir import (
    OntologyFormatError,
    emit_ontology,
    generalize,
    load_ontology,
    parse_ontology,
    specialize,
)

CHAIN = """
term: segmentation
children:
  - term: segmentation by approach (border)
    synonyms: [saf]
    children:
      - term: detection of contour
        synonyms: [dc]
        children:
          - term: canny filter
"""


@pytest.fixture
def tree():
    return parse_ontology(CHAIN)


@pytest.fixture
def sample_tree(fixtures_dir):
    return load_ontology(fixtures_dir / "segmentation_ontology.yaml")


class TestParse:
    def test_sample_file_contains_attested_chain(self, sample_tree):
        node = sample_tree.root
        chain = [node.term]
        while node.children:
            node = node.children[0]
            chain.append(node.term)
        assert chain == [
            "segmentation",
            "segmentation by approach (border)",
            "detection of contour",
            "canny filter",
        ]

    def test_single_node_file(self):
        t = parse_ontology("term: filtering")
        assert t.root.term == "filtering" and t.root.children == ()

    def test_terms_are_normalized(self):
        t = parse_ontology("term: '  Detection   Of Contour '")
        assert t.root.term == "detection of contour"

    def test_node_attributes_parsed(self, sample_tree):
        assert sample_tree.root.attributes == (("name", "string"), ("type", "string"))

    def test_cycle_rejected(self):
        cyclic = "&n\nterm: a\nchildren:\n- *n\n"
        with pytest.raises(OntologyFormatError, match="cycle|recursi"):
            parse_ontology(cyclic)

    def test_duplicate_term_rejected(self):
        doc = "term: a\nchildren:\n- term: b\n- term: b\n"
        with pytest.raises(OntologyFormatError, match="'b'"):
            parse_ontology(doc)

    def test_synonym_colliding_with_term_rejected(self):
        doc = "term: a\nchildren:\n- term: b\n  synonyms: [a]\n"
        with pytest.raises(OntologyFormatError, match="'a'"):
            parse_ontology(doc)

    def test_multiple_roots_rejected(self):
        with pytest.raises(OntologyFormatError, match="single root"):
            parse_ontology("- term: a\n- term: b\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(OntologyFormatError, match="childs"):
            parse_ontology("term: a\nchilds: []\n")


class TestLocate:
    def test_by_term(self, tree):
        node = tree.locate("detection of contour")
        assert node is not None and node.children[0].term == "canny filter"

    def test_missing_term(self, tree):
        assert tree.locate("wavelet") is None

    def test_leaf(self, tree):
        node = tree.locate("canny filter")
        assert node is not None and node.children == ()

    def test_by_synonym_case_insensitive(self, tree):
        assert tree.locate("DC").term == "detection of contour"
        assert tree.locate("saf").term == "segmentation by approach (border)"


class TestGeneralize:
    def test_adds_every_ancestor_up_to_root(self, tree):
        assert generalize(tree, {"detection of contour"}) == {
            "detection of contour",
            "segmentation by approach (border)",
            "segmentation",
        }

    def test_root_term_unchanged(self, tree):
        assert generalize(tree, {"segmentation"}) == {"segmentation"}

    def test_unknown_term_passes_through(self, tree):
        assert generalize(tree, {"wavelet"}) == {"wavelet"}

    def test_synonym_locates_node(self, tree):
        assert generalize(tree, {"dc"}) == {
            "dc",
            "segmentation by approach (border)",
            "segmentation",
        }

    def test_without_tree_is_identity(self):
        assert generalize(None, {"x"}) == {"x"}


class TestSpecialize:
    def test_adds_subtree(self, tree):
        assert specialize(tree, {"detection of contour"}) == {
            "detection of contour",
            "canny filter",
        }

    def test_leaf_unchanged(self, tree):
        assert specialize(tree, {"canny filter"}) == {"canny filter"}

    def test_root_collects_whole_tree(self, tree):
        assert specialize(tree, {"segmentation"}) == {
            "segmentation",
            "segmentation by approach (border)",
            "detection of contour",
            "canny filter",
        }

    def test_leaves_only_switch(self):
        bushy = parse_ontology(
            "term: r\nchildren:\n- term: mid\n  children:\n  - term: leaf1\n  - term: leaf2\n"
        )
        assert specialize(bushy, {"r"}, leaves_only=True) == {"r", "leaf1", "leaf2"}
        assert specialize(bushy, {"r"}) == {"r", "mid", "leaf1", "leaf2"}


class TestExpansionProperties:
    def test_expansion_never_removes_terms(self, tree):
        for terms in ({"dc"}, {"segmentation", "wavelet"}, {"canny filter"}):
            assert terms <= generalize(tree, terms)
            assert terms <= specialize(tree, terms)

    def test_idempotent(self, tree):
        for terms in ({"detection of contour"}, {"segmentation"}, {"saf", "noise"}):
            up = generalize(tree, terms)
            assert generalize(tree, up) == up
            down = specialize(tree, terms)
            assert specialize(tree, down) == down

    def test_ancestors_and_descendants_meet_only_at_the_node(self, tree):
        for term in ("segmentation", "detection of contour", "canny filter"):
            up = generalize(tree, {term})
            down = specialize(tree, {term})
            assert up & down == {term}


class TestRoundTrip:
    def test_emit_parse_stable(self, sample_tree):
        text = emit_ontology(sample_tree)
        again = parse_ontology(text)
        assert emit_ontology(again) == text
        assert again.root == sample_tree.root
