import pytest

from spinhecke import perms


def test_longest_element():
    w0 = perms.longest(4)
    assert w0 == (4, 3, 2, 1)
    assert perms.length(w0) == 6
    assert perms.compose(w0, w0) == perms.identity(4)


def test_reduced_word_round_trips_through_from_word():
    for w in perms.all_permutations(4):
        word = perms.reduced_word(w)
        assert len(word) == perms.length(w)
        assert perms.from_word(4, word) == w


def test_reduced_word_of_w0():
    assert perms.reduced_word((3, 2, 1)) == (1, 2, 1)
    assert perms.reduced_words((3, 2, 1)) == [(1, 2, 1), (2, 1, 2)]


def test_is_reduced():
    assert perms.is_reduced(3, (1, 2, 1))
    assert not perms.is_reduced(3, (1, 1))


def test_from_word_rejects_bad_index():
    with pytest.raises(ValueError):
        perms.from_word(3, (3,))


def test_inverse():
    w = (2, 4, 1, 3)
    assert perms.compose(w, perms.inverse(w)) == perms.identity(4)


def test_act_and_swap():
    assert perms.swap(("i", "j", "k"), 1) == ("j", "i", "k")
    assert perms.act((2, 1, 3), ("i", "j", "k")) == ("j", "i", "k")


def test_bruhat_order():
    e, s1, w0 = (1, 2, 3), (2, 1, 3), (3, 2, 1)
    assert perms.bruhat_le(e, s1)
    assert perms.bruhat_lt(s1, w0)
    assert not perms.bruhat_lt(w0, w0)
    assert not perms.bruhat_le((2, 1, 3), (1, 3, 2))


def test_all_permutations_sorted_by_length():
    lengths = [perms.length(w) for w in perms.all_permutations(4)]
    assert lengths == sorted(lengths)
    assert len(lengths) == 24
