"""Sparse suffix array, tree structure, and typed suffix links."""

import random

import pytest

from conftest import A, B, SENT, tree_leaf, tree_node_a
from psindex import oracle
from psindex.errors import InternalInvariantViolation
from psindex.index import build_index
from psindex.suffixtree import (
    block_links,
    build_sparse_suffix_array,
    build_suffix_tree,
    longest_match_loci,
    nodes_by_fixed_ordinal,
)
from psindex.text import encode_text


def test_desk_suffix_array(desk_index):
    assert desk_index.sa.sa == [3, 1, 0, 2]
    assert desk_index.sa.inv == [3, 2, 4, 1]
    assert desk_index.sa.ordinal_at(1) == 3
    assert desk_index.sa.rank_of(2) == 4


def test_single_block_text():
    text = encode_text("abc", 4)  # n == r: one boundary suffix
    sa = build_sparse_suffix_array(text)
    assert sa.sa == [0]
    tree = build_suffix_tree(text, sa)
    assert len(tree.root.children) == 1
    assert tree.leaf_by_ordinal[0].depth == 4


def test_desk_tree_structure(desk_index):
    tree = desk_index.tree
    root = tree.root
    assert root.depth == 0 and (root.min_rank, root.max_rank) == (1, 4)
    assert sorted(root.children) == [A, B]
    node_a = tree_node_a(desk_index)
    assert node_a.depth == 1
    assert (node_a.min_rank, node_a.max_rank) == (1, 3)
    assert sorted(node_a.children) == [SENT, A, B]
    leaves = [n for n in tree.iter_preorder() if n.is_leaf]
    assert len(leaves) == 4
    assert tree.node_count == 6


def test_desk_leaf_ranks_follow_dfs(desk_index):
    ranks = [n.rank for n in desk_index.tree.iter_preorder() if n.is_leaf]
    assert ranks == [1, 2, 3, 4]


def test_sa_matches_oracle_random():
    rng = random.Random(21)
    for _ in range(60):
        sigma = rng.choice([2, 4, 16])
        alpha = [chr(ord("a") + i) for i in range(sigma)]
        raw = "".join(rng.choice(alpha) for _ in range(rng.randint(1, 600)))
        r = rng.choice([1, 2, 4, 8])
        text = encode_text(raw, r)
        sa = build_sparse_suffix_array(text)
        assert sa.sa == oracle.naive_suffix_array(raw, r)


def test_tree_structure_invariants_random():
    rng = random.Random(22)
    for _ in range(30):
        sigma = rng.choice([2, 4])
        alpha = [chr(ord("a") + i) for i in range(sigma)]
        raw = "".join(rng.choice(alpha) for _ in range(rng.randint(1, 400)))
        r = rng.choice([1, 2, 4])
        idx = build_index(raw, r)
        tree = idx.tree
        boundaries = idx.text.n // r
        leaves = [n for n in tree.iter_preorder() if n.is_leaf]
        assert len(leaves) == boundaries
        internal = [n for n in tree.iter_preorder() if not n.is_leaf]
        assert len(internal) <= boundaries
        # distinct first letters, dfs rank order, rank span consistency
        ranks = []
        for node in tree.iter_preorder():
            letters = [
                idx.text.char_at(child.edge_start)
                for child in node.children.values()
            ]
            assert len(letters) == len(set(letters))
            if node.is_leaf:
                ranks.append(node.rank)
                assert node.min_rank == node.max_rank == node.rank
            elif node is not tree.root:
                assert len(node.children) >= 2
            if node.children:
                assert node.min_rank == min(c.min_rank for c in node.children.values())
                assert node.max_rank == max(c.max_rank for c in node.children.values())
        assert ranks == list(range(1, boundaries + 1))


def test_rank_interval_soundness_random():
    rng = random.Random(23)
    for _ in range(20):
        raw = "".join(rng.choice("ab") for _ in range(rng.randint(2, 120)))
        r = rng.choice([1, 2, 4])
        idx = build_index(raw, r)
        boracle = oracle.BoundaryOracle(raw, r)
        for node in idx.tree.iter_preorder():
            if node is idx.tree.root:
                continue
            j = idx.sa.ordinal_at(node.min_rank)
            label = boracle.label(j, node.depth)
            for rank in range(1, len(idx.sa) + 1):
                holds = boracle.label(idx.sa.ordinal_at(rank), node.depth) == label
                assert holds == (node.min_rank <= rank <= node.max_rank)


def test_desk_block_links(desk_index):
    tree = desk_index.tree
    links = block_links(tree)
    assert links[tree_leaf(desk_index, 0)] is tree_leaf(desk_index, 1)
    assert links[tree_leaf(desk_index, 2)] is tree_leaf(desk_index, 3)
    assert links[tree_node_a(desk_index)] is tree.root  # depth 1 <= r
    assert links[tree_leaf(desk_index, 3)] is tree.root  # depth 2 <= r


def test_desk_fixed_ordinal_groups(desk_index):
    groups = nodes_by_fixed_ordinal(desk_index.tree)
    named = [[n for n in g] for g in groups]
    assert named[0] == [tree_node_a(desk_index), tree_leaf(desk_index, 0)]
    assert named[1] == [tree_leaf(desk_index, 1)]
    assert named[2] == [tree_leaf(desk_index, 2)]
    assert named[3] == [tree_leaf(desk_index, 3)]


def test_desk_longest_match_loci(desk_index):
    tree = desk_index.tree
    links = block_links(tree)
    loci, _ = longest_match_loci(tree, links, 1)
    # suffix after boundary 0 shifted by 1: "baabaa$" -> longest match "baa"
    assert loci[0].anchor is tree.root
    assert loci[0].child is tree_leaf(desk_index, 2)
    assert loci[0].offset == 3
    # "abaa$" -> "abaa", one char below node "a" plus three on the leaf edge
    assert loci[1].anchor is tree_node_a(desk_index)
    assert loci[1].child is tree_leaf(desk_index, 0)
    assert loci[1].offset == 3
    # "aa$" -> "aa"
    assert loci[2].anchor is tree_node_a(desk_index)
    assert loci[2].child is tree_leaf(desk_index, 1)
    assert loci[2].offset == 1
    # "$" is not represented: empty match at the root
    assert loci[3].anchor is tree.root and loci[3].offset == 0


def test_desk_typed_links(desk_index):
    node_a = tree_node_a(desk_index)
    assert node_a.link.anchor is desk_index.tree.root
    assert node_a.link.offset == 0
    assert node_a.link_type == 1

    leaf0 = tree_leaf(desk_index, 0)  # "abaabaa$" -> "aabaa$", type 2
    assert leaf0.link_type == 2
    assert leaf0.link.offset == 0
    assert leaf0.link.anchor is tree_leaf(desk_index, 1)

    leaf3 = tree_leaf(desk_index, 3)  # "a$" -> root, type 2
    assert leaf3.link_type == 2
    assert leaf3.link.anchor is desk_index.tree.root


def test_links_match_oracle_random():
    rng = random.Random(24)
    for _ in range(40):
        sigma = rng.choice([2, 4, 16])
        alpha = [chr(ord("a") + i) for i in range(sigma)]
        raw = "".join(rng.choice(alpha) for _ in range(rng.randint(1, 500)))
        r = rng.choice([1, 2, 4, 8])
        idx = build_index(raw, r)
        boracle = oracle.BoundaryOracle(raw, r)
        for node in idx.tree.iter_preorder():
            if node is idx.tree.root:
                continue
            j = idx.sa.ordinal_at(node.min_rank)
            label = boracle.label(j, node.depth)
            want_tail, want_type = boracle.suffix_link(label)
            assert 1 <= node.link_type <= r
            assert node.link_type == want_type
            locus = node.link
            target = locus.child if locus.offset else locus.anchor
            tj = idx.sa.ordinal_at(target.min_rank)
            assert boracle.label(tj, locus.depth) == want_tail


def test_link_types_monotone_random():
    rng = random.Random(25)
    for _ in range(30):
        raw = "".join(rng.choice("ab") for _ in range(rng.randint(2, 300)))
        idx = build_index(raw, rng.choice([2, 4, 8]))
        for node in idx.tree.iter_preorder():
            parent = node.parent
            if parent is None or parent is idx.tree.root or node is idx.tree.root:
                continue
            assert parent.link_type <= node.link_type


def test_block_link_target_must_be_explicit():
    idx = build_index("abaabaa", 2)
    tree = idx.tree
    # corrupt one leaf depth so its stripped label lands mid-edge, where no
    # explicit node exists
    leaf = tree.leaf_by_ordinal[0]
    leaf.depth = 4  # stripped depth 2 falls inside the edge above leaf 1
    with pytest.raises(InternalInvariantViolation):
        block_links(tree)


def test_child_by_letter(desk_index):
    tree = desk_index.tree
    assert tree.child_by_letter(tree.root, A) is tree_node_a(desk_index)
    assert tree.child_by_letter(tree.root, SENT) is None
    assert tree.child_by_letter(tree.root, 3) is None  # pad never labels an edge
