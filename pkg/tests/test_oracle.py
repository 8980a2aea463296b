import pytest

from conftest import FOUR, random_sets
from zpred.oracle import (DistancePair, bits, neighbor_prefix_holds, one_side_holds, lemma_chain,
                          naive_distances, naive_exit, naive_internal_extents, naive_pred,
                          naive_succ, naive_two_fattest, pref_set, sorted_pred)


def test_examples():
    assert naive_pred(FOUR, 0b0110) == 1
    assert naive_distances(FOUR, 0b0110) == DistancePair(1, 2)
    assert naive_two_fattest(7, 13) == 8
    assert naive_internal_extents(FOUR, 4) == ["", "0", "01"]
    assert naive_exit(FOUR, 4, "0110").name == "011"


def test_one_sided_distances():
    assert naive_distances([5], 9) == DistancePair(4, 4)
    assert naive_distances([5], 2) == DistancePair(3, 3)
    # a member: its successor is itself
    assert naive_distances([2, 5, 9], 5) == DistancePair(0, 3)


@pytest.mark.parametrize("keys", random_sets(14, seed=71))
def test_pred_oracles_agree(keys):
    for x in range(256):
        assert naive_pred(keys, x) == sorted_pred(keys, x) == naive_succ(keys, x) - 1


@pytest.mark.parametrize("keys", random_sets(14, seed=72, sizes=(2, 5, 17, 64, 200)))
def test_lemma_chain_shape(keys):
    internal = set(naive_internal_extents(keys, 8))
    for x in range(256):
        xs = bits(x, 8)
        chain = lemma_chain(keys, 8, xs)
        assert all(len(a) < len(b) for a, b in zip(chain, chain[1:]))
        assert all(e in internal and xs.startswith(e) for e in chain)


@pytest.mark.parametrize("keys", random_sets(21, seed=73))
def test_prefix_lemmas_hold(keys):
    pref = pref_set(keys, 8)
    for x in range(256):
        assert neighbor_prefix_holds(keys, 8, x, pref)
        assert one_side_holds(keys, 8, x)
