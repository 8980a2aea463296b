"""Build-time compacted trie over a sorted key array.

Nodes never store bit strings: every string attached to a node is a prefix
of ``keys[left_leaf]``, so a length is enough. The trie is only used to
extract the tables the query structures need and can be dropped afterwards.
"""
from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

from .bitkey import BitString, lcp_len, two_fattest


class BuildError(ValueError):
    pass


class TrieNode:
    __slots__ = ("name_len", "extent_len", "left_leaf", "right_leaf",
                 "children", "handle_len", "is_root", "_key", "_w")

    def __init__(self, name_len, extent_len, left_leaf, right_leaf, key, w,
                 children=None, is_root=False):
        self.name_len = name_len
        self.extent_len = extent_len
        self.left_leaf = left_leaf
        self.right_leaf = right_leaf
        self.children = children
        self.is_root = is_root
        self._key = key
        self._w = w
        lo, hi = self.skip_interval
        self.handle_len = two_fattest(lo - 1, hi) if lo <= hi else 0

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def skip_interval(self) -> Tuple[int, int]:
        return (1 if self.is_root else self.name_len), self.extent_len

    def _prefix(self, length: int) -> BitString:
        return BitString(self._key >> (self._w - length), length)

    @property
    def extent(self) -> BitString:
        return self._prefix(self.extent_len)

    @property
    def name(self) -> BitString:
        return self._prefix(self.name_len)

    @property
    def handle(self) -> BitString:
        return self._prefix(self.handle_len)

    @property
    def compacted_path(self) -> BitString:
        e = self.extent
        k = self.extent_len - self.name_len
        return BitString(e.value & ((1 << k) - 1), k)

    def __repr__(self) -> str:
        kind = "leaf" if self.is_leaf else "node"
        return (f"<{kind} name={self.name} extent={self.extent} "
                f"handle={self.handle} leaves=[{self.left_leaf}..{self.right_leaf}]>")


class CompactedTrie:
    def __init__(self, keys: Sequence[int], w: int):
        if not keys:
            raise BuildError("empty key set")
        for i, k in enumerate(keys):
            if not 0 <= k < (1 << w):
                raise BuildError(f"key #{i} does not fit in {w} bits")
            if i and keys[i - 1] >= k:
                raise BuildError(f"keys not strictly increasing at position {i}")
        self.keys = keys
        self.w = w
        self.n = len(keys)
        self.root = self._build(0, self.n - 1, 0, True)
        self.node_count = 2 * self.n - 1

    def _build(self, lo: int, hi: int, name_len: int, is_root: bool = False) -> TrieNode:
        keys, w = self.keys, self.w
        if lo == hi:
            return TrieNode(name_len, w, lo, hi, keys[lo], w, is_root=is_root)
        elen = lcp_len(keys[lo], keys[hi], w)
        # first rank whose bit at position elen is 1
        shift = w - 1 - elen
        a, b = lo + 1, hi
        while a < b:
            mid = (a + b) // 2
            if (keys[mid] >> shift) & 1:
                b = mid
            else:
                a = mid + 1
        node = TrieNode(name_len, elen, lo, hi, keys[lo], w, is_root=is_root)
        node.children = (self._build(lo, a - 1, elen + 1),
                         self._build(a, hi, elen + 1))
        return node

    def nodes(self) -> Iterator[TrieNode]:
        """Pre-order traversal."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.children:
                stack.append(node.children[1])
                stack.append(node.children[0])

    def internal_nodes(self) -> Iterator[TrieNode]:
        return (v for v in self.nodes() if not v.is_leaf)

    def leaves(self) -> Iterator[TrieNode]:
        return (v for v in self.nodes() if v.is_leaf)

    def dump(self) -> str:
        """DOT-like text rendering, one line per node and per edge."""
        lines = ["digraph trie {"]
        ids = {}
        for i, node in enumerate(self.nodes()):
            ids[id(node)] = i
            lo, hi = node.skip_interval
            lines.append(f'  n{i} [label="name={node.name} extent={node.extent} '
                         f'skip=[{lo}..{hi}] handle={node.handle} '
                         f'leaves=[{node.left_leaf}..{node.right_leaf}]"];')
        for node in self.nodes():
            for child in node.children or ():
                lines.append(f'  n{ids[id(node)]} -> n{ids[id(child)]} '
                             f'[label="{child.compacted_path}"];')
        lines.append("}")
        return "\n".join(lines)


def build(keys: Sequence[int], w: int) -> CompactedTrie:
    return CompactedTrie(keys, w)


def internal_extents(t: CompactedTrie) -> List[Tuple[BitString, BitString, int]]:
    return [(v.handle, v.extent, v.name_len) for v in t.internal_nodes()]


def exit_node(t: CompactedTrie, p: BitString) -> TrieNode:
    """Descend to the exit node of ``p``: the node whose name prefixes ``p``
    and whose extent is ``p`` itself or not a prefix of ``p``."""
    node = t.root
    while not node.is_leaf and node.extent.is_proper_prefix_of(p):
        node = node.children[p.bit(node.extent_len)]
    return node
