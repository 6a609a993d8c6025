import pytest

from psindex.index import build_index
from psindex.text import encode_text

# Desk-check text used throughout: "abaabaa" with blocks of 2.
# Padded codes: a b a a b a a $  ($=0, a=1, b=2, pad=3).
DESK_RAW = "abaabaa"
DESK_R = 2
SENT, A, B, PAD = 0, 1, 2, 3


@pytest.fixture(scope="session")
def desk_text():
    return encode_text(DESK_RAW, DESK_R)


@pytest.fixture(scope="session")
def desk_index():
    return build_index(DESK_RAW, DESK_R, keep_ordinals=True)


def tree_leaf(index, ordinal):
    return index.tree.leaf_by_ordinal[ordinal]


def tree_node_a(index):
    """The internal node labeled "a" in the desk tree."""
    return index.tree.root.children[A]


def trie_child(trie, *letters):
    node = trie.root
    for letter in letters:
        node = node.children[letter]
    return node
