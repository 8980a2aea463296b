"""Static predecessor search over fixed-width integer keys.

Build a :class:`PredIndex` from sorted distinct keys and query it with any
of the search algorithms in :data:`ALGOS`::

    idx = PredIndex.build([2, 4, 7, 13], w=4)
    idx.query(6, "long")          # -> 1, the rank of key 4
"""
from .bitkey import BitString, ContractError, lcp, msb, pred_prefix, slice, succ_prefix, two_fattest
from .image import ImageError, load, save
from .index import ALGOS, PredIndex
from .trace import QueryTrace
from .trie import BuildError, CompactedTrie

__all__ = [
    "ALGOS", "BitString", "BuildError", "CompactedTrie", "ContractError", "ImageError",
    "PredIndex", "QueryTrace", "lcp", "load", "msb", "pred_prefix", "save", "slice",
    "succ_prefix", "two_fattest",
]
__version__ = "0.1.0"
