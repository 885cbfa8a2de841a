import random
from fractions import Fraction

import pytest

from fialg.errors import ParseError
from fialg.rings import INTEGERS, RATIONALS, ModRing, parse_ring


def brute_force_torsion_free(m, k):
    """Independent oracle: scan all residues of Z/m."""
    return all(r == 0 for r in range(m) if (k * r) % m == 0)


def test_mod5_add():
    r = ModRing(5)
    assert r.add(3, 4) == 2


def test_rational_mul():
    assert RATIONALS.mul(Fraction(1, 2), Fraction(2, 3)) == Fraction(1, 3)


def test_integer_additive_inverse():
    rng = random.Random(7)
    for _ in range(50):
        a = rng.randint(-1000, 1000)
        assert INTEGERS.add(a, INTEGERS.neg(a)) == 0


def test_characteristic():
    assert ModRing(2).characteristic() == 2
    assert RATIONALS.characteristic() == 0
    assert INTEGERS.characteristic() == 0
    assert ModRing(6).characteristic() == 6


def test_torsion_examples():
    assert ModRing(6).is_k_torsion_free(2) is False  # 2*3 = 0, 3 != 0
    assert ModRing(5).is_k_torsion_free(2) is brute_force_torsion_free(5, 2)
    assert ModRing(5).is_k_torsion_free(2) is True
    for ring in (INTEGERS, RATIONALS, ModRing(4), ModRing(9)):
        assert ring.is_k_torsion_free(1) is True


def test_torsion_matches_brute_force_scan():
    rng = random.Random(11)
    moduli = [2, 3, 4, 5, 6, 8, 9, 12, 30, 97] + [rng.randrange(2, 1000) for _ in range(20)]
    for m in moduli:
        ring = ModRing(m)
        for k in range(1, 13):
            assert ring.is_k_torsion_free(k) == brute_force_torsion_free(m, k), (m, k)


@pytest.mark.parametrize("ring", [INTEGERS, RATIONALS, ModRing(6), ModRing(7)])
def test_ring_axioms_randomized(ring):
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = ring.random(rng), ring.random(rng), ring.random(rng)
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.mul(a, ring.one) == a
        assert ring.add(a, ring.zero) == a
        assert ring.add(a, ring.neg(a)) == ring.zero


def test_canonical_forms():
    r = ModRing(7)
    assert r.canon(-1) == 6
    assert r.from_int(15) == 1
    q = RATIONALS
    assert q.canon(2) == Fraction(2)
    assert q.parse("4/6") == Fraction(2, 3)
    assert q.format(Fraction(2, 3)) == "2/3"
    assert q.format(Fraction(5, 1)) == "5"


def test_parse_ring_literals():
    assert parse_ring("int") is INTEGERS
    assert parse_ring("rat") is RATIONALS
    assert parse_ring("zmod:12") == ModRing(12)
    with pytest.raises(ParseError):
        parse_ring("zmod:1")
    with pytest.raises(ParseError):
        parse_ring("gf:4")
    with pytest.raises(ParseError):
        parse_ring("zmod:x")


def test_prime_modulus_detection():
    assert ModRing(2).is_prime_modulus()
    assert ModRing(97).is_prime_modulus()
    assert not ModRing(91).is_prime_modulus()  # 7 * 13
    assert not ModRing(4).is_prime_modulus()
