import pytest

from treetropy.collapse import (CollapseCertificate, audit_certificate, block_structure,
                                collapse_failure, combinatorial_collapse, hull_points,
                                is_separated, is_strongly_collapsible, maximal_trivial_structure,
                                trivial_block_divisors)
from treetropy.enumeration import enumerate_patterns, random_blocky_pattern, random_patterns
from treetropy.errors import CollapseInvalid
from treetropy.paths import is_zero_entropy_spectral
from treetropy.pattern import validate

CHAIN8 = validate(8, [(0, 2, 6), (0, 1, 3, 4, 5, 7)])
TWO_BLOCKS = validate(8, [(0, 2, 4, 6), (1, 3, 5, 7), (0, 1)])
POSITIVE_STAR6 = validate(6, [(0, 1), (4, 5), (1, 2, 3, 4)])
P2 = validate(4, [(0, 2), (0, 1), (1, 3)])


def test_divisors():
    assert trivial_block_divisors(CHAIN8) == [4]
    assert trivial_block_divisors(TWO_BLOCKS) == [2, 4]
    assert trivial_block_divisors(POSITIVE_STAR6) == []


def test_maximal_structure():
    S = maximal_trivial_structure(CHAIN8)
    assert S.p == 4 and S.blocks == ((0, 4), (1, 5), (2, 6), (3, 7)) and S.cardinality == 2
    S = maximal_trivial_structure(TWO_BLOCKS)
    assert S.p == 2 and S.blocks == ((0, 2, 4, 6), (1, 3, 5, 7))
    assert maximal_trivial_structure(POSITIVE_STAR6) is None
    assert not block_structure(TWO_BLOCKS, 4).maximal
    assert block_structure(TWO_BLOCKS, 4).trivial


def test_collapse_examples():
    assert combinatorial_collapse(CHAIN8) == validate(4, [(0, 2), (0, 1, 3)])
    small = validate(4, [(0, 1, 2), (1, 3)])
    assert combinatorial_collapse(small, block_structure(small, 2)) == validate(2, [(0, 1)])
    with pytest.raises(CollapseInvalid):
        combinatorial_collapse(TWO_BLOCKS, block_structure(TWO_BLOCKS, 4))
    with pytest.raises(CollapseInvalid):
        combinatorial_collapse(POSITIVE_STAR6)


def test_chain8_certificate():
    cert = is_strongly_collapsible(CHAIN8)
    assert [str(P) for P in cert.patterns] == ["2: 0 1", "4: 0 1 3 | 0 2", str(CHAIN8)]
    assert cert.factors == (2, 2, 2)
    audit_certificate(cert)


def test_p2_certificate():
    cert = is_strongly_collapsible(P2)
    assert cert.factors == (2, 2) and cert.valences == (2, 2)


def test_certificate_round_trip():
    cert = is_strongly_collapsible(CHAIN8)
    assert CollapseCertificate.from_dict(cert.to_dict()) == cert


def test_audit_rejects_tampering():
    cert = is_strongly_collapsible(CHAIN8)
    bad = CollapseCertificate(cert.patterns, (2, 4, 1))
    with pytest.raises(AssertionError):
        audit_certificate(bad)


def test_collapse_failure():
    assert collapse_failure(POSITIVE_STAR6) == POSITIVE_STAR6
    assert collapse_failure(CHAIN8) is None


@pytest.mark.parametrize("n", [5, 7])
def test_prime_periods_only_trivial_is_zero(n):
    zero = [P for P in enumerate_patterns(n) if is_strongly_collapsible(P) is not None]
    assert [P.is_trivial for P in zero] == [True]


def test_trivial_blocks_are_separated():
    import random

    rng = random.Random(2)
    for _ in range(300):
        P = random_blocky_pattern(rng.randint(4, 16), rng)
        for p in trivial_block_divisors(P):
            assert is_separated(P, p)
            for i in range(p):
                assert hull_points(P, range(i, P.period, p)) <= set(range(i, P.period, p))


def test_deciders_agree_on_random():
    for P in random_patterns(300, range(6, 13), seed=17):
        assert (is_strongly_collapsible(P) is not None) == is_zero_entropy_spectral(P)
