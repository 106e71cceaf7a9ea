import re

import pytest
from hypothesis import given, settings

from conftest import caterpillar, naive_code, naive_isomorphic, shuffled, trees
from leafine.codes import CodeTable, canonical_code, is_isomorphic, is_valid_code
from leafine.errors import TreeSyntaxError, UnaryVertexError
from leafine.fibtrees import knuth_fibonacci, leaf_fibonacci
from leafine.trees import (
    LEAF,
    TopTree,
    height,
    iter_tree_lines,
    leaf_count,
    parse,
    serialize,
    vertex_count,
)


def test_parse_leaf():
    t = parse("L")
    assert t.is_leaf and leaf_count(t) == 1 and height(t) == 0


def test_parse_f2_shape():
    t = parse("((L,L),L)")
    assert leaf_count(t) == 3 and height(t) == 2
    assert is_isomorphic(t, leaf_fibonacci(2))


def test_parse_rejects_unary():
    with pytest.raises(UnaryVertexError):
        parse("((L),L)")
    with pytest.raises(UnaryVertexError):
        parse("(L)")


@pytest.mark.parametrize(
    "text",
    ["", "()", "(L,)", "(,L)", "(L,L", "L,L", "LL", "(L,L))", "(L;L)", "x", "(L,L);;", "(L,L) L"],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(TreeSyntaxError):
        parse(text)


def test_parse_whitespace_and_semicolon():
    t = parse("  ( ( L ,\tL ) ,\nL ) ; ")
    assert serialize(t) == "((L,L),L)"
    assert serialize(parse("L;")) == "L"


def test_unary_constructor():
    with pytest.raises(UnaryVertexError):
        TopTree([LEAF])


def test_tree_is_immutable():
    t = parse("(L,L)")
    with pytest.raises(AttributeError):
        t.children = ()


def test_serialize_examples():
    assert serialize(LEAF) == "L"
    assert serialize(leaf_fibonacci(2), canonical=True) == "(L,(L,L))"
    assert serialize(leaf_fibonacci(2)) == "((L,L),L)"


def test_canonical_code_examples():
    assert canonical_code(LEAF) == "L"
    assert canonical_code(leaf_fibonacci(1)) == "(L,L)"
    assert canonical_code(parse("((L,L),L)")) == canonical_code(parse("(L,(L,L))"))


def test_order_is_length_then_text():
    # "(L,L,L)" and "(L,(L,L))" have lengths 7 and 9; ties broken by text.
    t = parse("((L,(L,L)),(L,L,L),L,(L,L))")
    assert canonical_code(t) == "(L,(L,L),(L,L,L),(L,(L,L)))"
    # both branches have length 11; "(" sorts before "L"
    t = parse("((L,(L,L,L)),(L,L,(L,L)))")
    assert canonical_code(t) == "((L,(L,L,L)),(L,L,(L,L)))"


def test_is_isomorphic_examples():
    f2 = leaf_fibonacci(2)
    assert is_isomorphic(f2, TopTree(reversed(f2.children)))
    assert not is_isomorphic(leaf_fibonacci(1), LEAF)
    f3 = leaf_fibonacci(3)
    f3_swapped = TopTree((leaf_fibonacci(1), TopTree((LEAF, leaf_fibonacci(1)))))
    assert serialize(f3) != serialize(f3_swapped)
    assert canonical_code(f3) == canonical_code(f3_swapped)
    assert is_isomorphic(f3, f3_swapped)


def test_counts_on_generated_trees():
    assert leaf_count(leaf_fibonacci(5)) == 13
    assert leaf_count(knuth_fibonacci(5)) == 8
    assert vertex_count(knuth_fibonacci(5)) == 15


CODE_RE = re.compile(r"^(L|[L(),]+)$")


def _grammar_ok(code: str) -> bool:
    """Balanced parentheses, no single-member group, only the code alphabet."""
    if not CODE_RE.match(code):
        return False
    depth = 0
    members = []
    for ch in code:
        if ch == "(":
            depth += 1
            members.append(1)
        elif ch == ",":
            members[-1] += 1
        elif ch == ")":
            depth -= 1
            if members.pop() < 2:
                return False
        if depth < 0:
            return False
    return depth == 0


@settings(max_examples=300, deadline=None)
@given(trees)
def test_round_trip_and_grammar(t):
    text = serialize(t)
    back = parse(text)
    assert serialize(back) == text
    code = canonical_code(t)
    assert _grammar_ok(code)
    assert is_valid_code(code)
    assert serialize(parse(code), canonical=True) == code
    assert code == naive_code(t)


@settings(max_examples=200, deadline=None)
@given(trees, trees)
def test_isomorphism_matches_naive(a, b):
    assert is_isomorphic(a, b) == naive_isomorphic(a, b)


def test_canonical_invariant_under_shuffles(rng):
    base = leaf_fibonacci(6)
    code = canonical_code(base)
    for _ in range(50):
        assert canonical_code(shuffled(base, rng)) == code


def test_shared_table_gives_equal_ids(rng):
    table = CodeTable()
    t = leaf_fibonacci(5)
    assert table.intern_tree(t) == table.intern_tree(shuffled(t, rng))
    assert canonical_code(table.to_tree(table.intern_tree(t))) == canonical_code(t)


def test_is_valid_code_rejects():
    assert not is_valid_code("((L,L),L)")  # wrong child order
    assert not is_valid_code("(L, L)")
    assert not is_valid_code("(L,L);")
    assert is_valid_code("(L,(L,L))")


def test_deep_caterpillar_no_recursion_error():
    depth = 100_000
    t = caterpillar(depth + 1)
    assert height(t) == depth
    text = serialize(t)
    back = parse(text)
    assert leaf_count(back) == depth + 1
    code = canonical_code(back)
    assert len(code) == len(text)
    assert code.startswith("(L,(L,(L,")
    assert is_isomorphic(t, back)


def test_iter_tree_lines_skips_comments():
    lines = ["# header\n", "\n", "(L,L)\n", "  # indented comment\n", "((L,L),L);\n"]
    got = [(n, serialize(t)) for n, t in iter_tree_lines(lines)]
    assert got == [(3, "(L,L)"), (5, "((L,L),L)")]


def test_iter_tree_lines_reports_line():
    with pytest.raises(TreeSyntaxError, match="line 2"):
        list(iter_tree_lines(["L", "(L,"]))
