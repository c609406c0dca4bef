import doctest

from concordance import laurent


def test_laurent_doctests():
    result = doctest.testmod(laurent)
    assert result.attempted > 0
    assert result.failed == 0
