"""Shared helpers: random tree generators and oracles that share no code
with the package's canonicalization or induction paths."""
from __future__ import annotations

import random
from itertools import permutations

import pytest
from hypothesis import strategies as st

from leafine.trees import LEAF, TopTree


def random_tree(rng: random.Random, n_leaves: int, max_degree: int = 4) -> TopTree:
    """Random topological tree with exactly ``n_leaves`` leaves."""
    if n_leaves == 1:
        return LEAF
    d = rng.randint(2, min(max_degree, n_leaves))
    cuts = sorted(rng.sample(range(1, n_leaves), d - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n_leaves])]
    return TopTree(random_tree(rng, s, max_degree) for s in sizes)


def caterpillar(n_leaves: int) -> TopTree:
    t = LEAF
    for _ in range(n_leaves - 1):
        t = TopTree((LEAF, t))
    return t


def complete_binary(depth: int) -> TopTree:
    t = LEAF
    for _ in range(depth):
        t = TopTree((t, t))
    return t


def shuffled(tree: TopTree, rng: random.Random) -> TopTree:
    """Same tree with children permuted at random at every vertex."""
    if not tree.children:
        return tree
    kids = [shuffled(k, rng) for k in tree.children]
    rng.shuffle(kids)
    return TopTree(kids)


trees = st.recursive(
    st.just(LEAF),
    lambda kids: st.lists(kids, min_size=2, max_size=4).map(TopTree),
    max_leaves=12,
)


# -- naive oracles ------------------------------------------------------------


def naive_code(tree: TopTree) -> str:
    """Plain recursive canonical form, children sorted by (length, text)."""
    if not tree.children:
        return "L"
    parts = sorted((naive_code(k) for k in tree.children), key=lambda s: (len(s), s))
    return "(" + ",".join(parts) + ")"


def naive_isomorphic(a: TopTree, b: TopTree) -> bool:
    """Rooted isomorphism by trying every matching of children."""
    if len(a.children) != len(b.children):
        return False
    if not a.children:
        return True
    for perm in permutations(b.children):
        if all(naive_isomorphic(x, y) for x, y in zip(a.children, perm)):
            return True
    return False


def naive_induce(tree: TopTree, sel) -> TopTree:
    """Induced subtree via explicit parent pointers, LCA and suppression."""
    parent: list[int] = []
    kids: list[list[int]] = []
    leaves: list[int] = []

    def build(node, par):
        v = len(parent)
        parent.append(par)
        kids.append([])
        if par >= 0:
            kids[par].append(v)
        if not node.children:
            leaves.append(v)
        for k in node.children:
            build(k, v)

    build(tree, -1)
    chosen = [leaves[i] for i in sel]
    keep = set()
    paths = []
    for v in chosen:
        path = []
        while v >= 0:
            path.append(v)
            v = parent[v]
        paths.append(path[::-1])
        keep.update(path)
    # lowest common ancestor = last shared vertex of all root paths
    lca = 0
    for depth in range(min(len(p) for p in paths)):
        if len({p[depth] for p in paths}) == 1:
            lca = paths[0][depth]
        else:
            break

    def rebuild(v):
        live = [k for k in kids[v] if k in keep]
        if not live:
            return LEAF
        if len(live) == 1:
            return rebuild(live[0])
        return TopTree(rebuild(k) for k in live)

    return rebuild(lca)


@pytest.fixture
def rng():
    return random.Random(20261018)



# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
