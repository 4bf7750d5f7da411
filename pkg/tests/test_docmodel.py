import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from procmine.docmodel import (DocNode, DocTree, HierarchyError, Kind,
                               SchemaError, parse_markdown, parse_sdjson,
                               tree_from_json, tree_to_json, validate_tree)

from conftest import make_tree, random_sdjson


def sdjson(elements, title="Doc"):
    return json.dumps({"version": "sdjson/1", "title": title,
                       "elements": elements})


class TestParseSdjson:
    def test_title_heading_ordered_list(self):
        tree = parse_sdjson(sdjson([
            {"type": "heading", "level": 1, "text": "Setup"},
            {"type": "list", "ordered": True,
             "items": [{"text": "a"}, {"text": "b"}, {"text": "c"}]},
        ]))
        kinds = [n.kind for n in tree.preorder()]
        assert kinds == [Kind.TITLE, Kind.HEADING, Kind.LIST_BLOCK,
                         Kind.LIST_ITEM, Kind.LIST_ITEM, Kind.LIST_ITEM]
        depths = [n.depth for n in tree.preorder()]
        assert depths == [0, 1, 2, 3, 3, 3]
        assert validate_tree(tree) == []

    def test_missing_title_is_schema_error(self):
        with pytest.raises(SchemaError, match="no root title"):
            parse_sdjson(json.dumps({"version": "sdjson/1", "elements": []}))

    def test_empty_elements_with_title_gives_bare_tree(self):
        tree = parse_sdjson(sdjson([]))
        assert [n.kind for n in tree.preorder()] == [Kind.TITLE]

    def test_nested_sublist_depths(self):
        tree = parse_sdjson(sdjson([
            {"type": "list", "ordered": True, "items": [
                {"text": "outer",
                 "sublist": {"ordered": False,
                             "items": [{"text": "x"}, {"text": "y"}]}},
            ]},
        ]))
        assert validate_tree(tree) == []
        blocks = [n for n in tree.preorder() if n.kind is Kind.LIST_BLOCK]
        assert len(blocks) == 2
        outer_item = next(n for n in tree.preorder()
                          if n.kind is Kind.LIST_ITEM and n.text == "outer")
        nested = tree.node(outer_item.children[0])
        assert nested.kind is Kind.LIST_BLOCK
        assert nested.depth == outer_item.depth + 1
        for item_id in nested.children:
            assert tree.node(item_id).depth == nested.depth + 1

    def test_outline_nesting_under_most_recent_lower_heading(self):
        tree = parse_sdjson(sdjson([
            {"type": "heading", "level": 1, "text": "H1"},
            {"type": "heading", "level": 2, "text": "H2"},
            {"type": "paragraph", "text": "under h2"},
            {"type": "heading", "level": 1, "text": "H1b"},
        ]))
        h1, h2, para, h1b = list(tree.preorder())[1:]
        assert tree.parent_of(h2.id) == h1.id
        assert tree.parent_of(para.id) == h2.id
        assert tree.parent_of(h1b.id) == tree.root

    def test_schema_error_carries_path(self):
        with pytest.raises(SchemaError, match=r"\$\.elements\[0\]"):
            parse_sdjson(sdjson([{"type": "heading", "text": "no level"}]))

    def test_unknown_version_rejected(self):
        with pytest.raises(SchemaError, match="version"):
            parse_sdjson(json.dumps({"version": "sdjson/2", "title": "t",
                                     "elements": []}))

    def test_nonpositive_heading_level_is_hierarchy_error(self):
        with pytest.raises(HierarchyError):
            parse_sdjson(sdjson([{"type": "heading", "level": 0, "text": "x"}]))

    def test_bad_item_reports_nested_path(self):
        with pytest.raises(SchemaError, match=r"items\[1\]"):
            parse_sdjson(sdjson([
                {"type": "list", "ordered": True,
                 "items": [{"text": "ok"}, {"image": True}]},
            ]))

    def test_element_image_flag(self):
        tree = parse_sdjson(sdjson([
            {"type": "paragraph", "text": "figure below", "image": True},
        ]))
        para = list(tree.preorder())[1]
        assert para.associated_image


class TestParseMarkdown:
    def test_title_and_two_step_headings(self):
        tree = parse_markdown("# T\n## Step 1\ntext\n## Step 2\ntext")
        root = tree.node(tree.root)
        assert root.kind is Kind.TITLE and root.text == "T"
        headings = [tree.node(c) for c in root.children]
        assert [h.kind for h in headings] == [Kind.HEADING, Kind.HEADING]
        assert [h.level for h in headings] == [2, 2]
        for heading in headings:
            children = [tree.node(c) for c in heading.children]
            assert [c.kind for c in children] == [Kind.PARAGRAPH]

    def test_ordered_list(self):
        tree = parse_markdown("# T\n1. a\n2. b")
        block = next(n for n in tree.preorder() if n.kind is Kind.LIST_BLOCK)
        assert block.ordered is True
        assert [tree.node(c).text for c in block.children] == ["a", "b"]

    def test_image_inside_list_item_sets_flag(self):
        tree = parse_markdown("# T\n- item one ![img](x.png)\n- item two")
        items = [n for n in tree.preorder() if n.kind is Kind.LIST_ITEM]
        assert items[0].associated_image is True
        assert items[0].text == "item one"
        assert items[1].associated_image is False

    def test_standalone_image_marks_previous_sibling(self):
        tree = parse_markdown("# T\nSome paragraph.\n\n![fig](a.png)\n")
        para = next(n for n in tree.preorder() if n.kind is Kind.PARAGRAPH)
        assert para.associated_image is True

    def test_nested_list_two_space_indent(self):
        tree = parse_markdown("# T\n1. outer\n  - inner a\n  - inner b\n2. second")
        outer_block = tree.node(tree.node(tree.root).children[0])
        assert len(outer_block.children) == 2
        outer_item = tree.node(outer_block.children[0])
        nested = tree.node(outer_item.children[0])
        assert nested.kind is Kind.LIST_BLOCK and nested.ordered is False
        assert len(nested.children) == 2

    def test_title_from_source_name_when_no_h1(self):
        tree = parse_markdown("## Only level two\ntext", source_name="fallback")
        assert tree.node(tree.root).text == "fallback"

    def test_tabs_normalize_to_two_spaces(self):
        tree = parse_markdown("# T\n1. outer\n\t- inner")
        outer_item = next(n for n in tree.preorder() if n.text == "outer")
        assert len(outer_item.children) == 1

    def test_node_count_elements_plus_list_blocks(self):
        # title + 2 headings + 2 paragraphs + 3 items + 1 synthesized block
        text = "# T\n## A\npara one.\n1. i1\n2. i2\n3. i3\n## B\npara two."
        tree = parse_markdown(text)
        assert len(tree.nodes) == 1 + 2 + 2 + 3 + 1

    @settings(max_examples=200, deadline=None)
    @given(st.text(max_size=400))
    def test_fuzzed_markdown_always_validates(self, text):
        tree = parse_markdown(text)
        assert validate_tree(tree) == []


class TestValidateTree:
    def test_valid_tree_no_violations(self):
        tree = parse_markdown("# T\n## A\ntext")
        assert validate_tree(tree) == []

    def test_multiple_parents_reported(self):
        nodes = [
            DocNode(id=0, kind=Kind.TITLE, text="t", depth=0, children=(1, 7)),
            DocNode(id=1, kind=Kind.HEADING, text="h", depth=1, children=(7,),
                    level=1),
            DocNode(id=7, kind=Kind.PARAGRAPH, text="p", depth=1),
        ]
        violations = validate_tree(make_tree(nodes))
        assert "node 7: multiple parents" in violations

    def test_heading_level_inversion_reported(self):
        nodes = [
            DocNode(id=0, kind=Kind.TITLE, text="t", depth=0, children=(1,)),
            DocNode(id=1, kind=Kind.HEADING, text="h1", depth=1, children=(2,),
                    level=1),
            DocNode(id=2, kind=Kind.HEADING, text="h3", depth=2, children=(3,),
                    level=3),
            DocNode(id=3, kind=Kind.HEADING, text="h2", depth=3, children=(),
                    level=2),
        ]
        violations = validate_tree(make_tree(nodes))
        assert any("heading level inversion" in v for v in violations)

    def test_depth_mismatch_reported(self):
        nodes = [
            DocNode(id=0, kind=Kind.TITLE, text="t", depth=0, children=(1,)),
            DocNode(id=1, kind=Kind.PARAGRAPH, text="p", depth=2),
        ]
        violations = validate_tree(make_tree(nodes))
        assert any("depth" in v for v in violations)

    def test_list_item_outside_block_reported(self):
        nodes = [
            DocNode(id=0, kind=Kind.TITLE, text="t", depth=0, children=(1,)),
            DocNode(id=1, kind=Kind.LIST_ITEM, text="i", depth=1),
        ]
        violations = validate_tree(make_tree(nodes))
        assert any("list item outside" in v for v in violations)


class TestRoundTrip:
    def test_tree_json_round_trip_preserves_shape(self):
        rng = random.Random(7)
        for _ in range(20):
            doc = random_sdjson(rng)
            tree = parse_sdjson(json.dumps(doc))
            clone = tree_from_json(tree_to_json(tree))
            assert [(n.kind, n.text, n.depth, n.level, n.ordered,
                     n.associated_image)
                    for n in tree.preorder()] == \
                   [(n.kind, n.text, n.depth, n.level, n.ordered,
                     n.associated_image)
                    for n in clone.preorder()]
            assert validate_tree(clone) == []

    def test_random_documents_validate(self):
        rng = random.Random(99)
        for _ in range(50):
            tree = parse_sdjson(json.dumps(random_sdjson(rng)))
            assert validate_tree(tree) == []
