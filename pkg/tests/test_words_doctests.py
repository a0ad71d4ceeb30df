"""The word-utility doctests double as unit tests."""

import doctest

import genlab.words


def test_words_doctests():
    results = doctest.testmod(genlab.words, verbose=False)
    assert results.attempted >= 10
    assert results.failed == 0
