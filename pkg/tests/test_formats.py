import random

import pytest

from treetropy.enumeration import random_pattern
from treetropy.errors import NotConnected, PatternSyntaxError
from treetropy.formats import (format_json, format_line, parse_json, parse_line, parse_many,
                               parse_pattern)
from treetropy.pattern import validate


def test_line_format():
    P = parse_line("8: 0 2 6 | 0 1 3 4 5 7")
    assert P == validate(8, [(0, 2, 6), (0, 1, 3, 4, 5, 7)])
    assert format_line(P) == "8: 0 1 3 4 5 7 | 0 2 6"


def test_json_format():
    P = parse_json('{"period": 4, "components": [[0, 2], [0, 1], [1, 3]]}')
    assert format_json(P) == '{"components": [[0, 1], [0, 2], [1, 3]], "period": 4}'


@pytest.mark.parametrize("text", ["4 0 1", "x: 0 1", "3: 0 1 || 1 2", "3: 0 a", "{", '{"period": 3}',
                                  '{"period": true, "components": [[0, 1, 2]]}'])
def test_syntax_errors(text):
    with pytest.raises(PatternSyntaxError):
        parse_pattern(text)


def test_semantic_errors_pass_through():
    with pytest.raises(NotConnected):
        parse_line("4: 0 1 | 2 3")


def test_round_trips():
    rng = random.Random(7)
    for _ in range(200):
        P = random_pattern(rng.randint(1, 14), rng)
        assert parse_pattern(format_line(P)) == P
        assert parse_pattern(format_json(P)) == P


def test_parse_many_skips_comments():
    pats = parse_many("# header\n4: 0 2 | 0 1 | 1 3\n\n3: 0 1 2  # rotation\n")
    assert [p.period for p in pats] == [4, 3]
