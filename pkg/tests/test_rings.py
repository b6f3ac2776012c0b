import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gcdim.errors import DivisionByNonUnit, GcdimError
from gcdim.rings import (
    DEFAULT_BASIS,
    PrimeBasis,
    RationalRing,
    Residues,
    ResidueRing,
    crt_lift,
    is_probable_prime,
)

SMALL = PrimeBasis((1048583, 1048589))  # two primes just above 2^20


def test_default_basis_properties():
    assert len(DEFAULT_BASIS.primes) == 20
    assert DEFAULT_BASIS.product_bits >= 490
    assert all(p % 2 == 1 for p in DEFAULT_BASIS.primes)
    assert all(1 << 20 < p < 1 << 62 for p in DEFAULT_BASIS.primes)


def test_basis_validation():
    with pytest.raises(GcdimError):
        PrimeBasis((4, 5))
    with pytest.raises(GcdimError):
        PrimeBasis((1048583, 1048583))
    with pytest.raises(GcdimError):
        PrimeBasis((3, 5))  # below 2^20
    with pytest.raises(GcdimError):
        PrimeBasis((1048584,))  # even


def test_miller_rabin_agrees_on_small_numbers():
    sieve = {2, 3, 5, 7, 11, 13}
    for n in range(2, 2000):
        is_p = all(n % d for d in range(2, int(n**0.5) + 1)) and n > 1
        assert is_probable_prime(n) == is_p, n


def test_rational_ring_ops():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    ring = RationalRing()
    with pytest.raises(DivisionByNonUnit):
        ring.scalar_inv(Fraction(0))


def test_residue_examples():
    basis = PrimeBasis.__new__(PrimeBasis)  # bypass range checks for the doc example
    object.__setattr__(basis, "primes", (5, 7))
    r = Residues(basis, (2, 3))
    inv = r.inverse()
    assert inv.vec == (3, 5)
    half = Residues.from_fraction(basis, Fraction(1, 2))
    assert half.vec == (3, 4)
    assert crt_lift(Residues(basis, (2, 3)), basis) == 17
    assert crt_lift(Residues(basis, (4, 6)), basis) == -1
    assert crt_lift(Residues(basis, (0, 0)), basis) == 0


def test_crt_round_trip_small_rationals():
    # |n| must stay below half the basis product (~1.1e12 for SMALL)
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(-5 * 10**11, 5 * 10**11)
        assert crt_lift(Residues.from_int(SMALL, n), SMALL) == n
    m = SMALL.product
    assert crt_lift(Residues.from_int(SMALL, m // 2), SMALL) == m // 2
    assert crt_lift(Residues.from_int(SMALL, m // 2 + 1), SMALL) == m // 2 + 1 - m


def test_division_by_non_unit():
    r = Residues.from_int(SMALL, SMALL.primes[0])
    with pytest.raises(DivisionByNonUnit):
        r.inverse()
    with pytest.raises(DivisionByNonUnit):
        Residues.from_fraction(SMALL, Fraction(1, SMALL.primes[1]))


@settings(max_examples=300, deadline=None)
@given(
    st.integers(-10**6, 10**6),
    st.integers(-10**6, 10**6),
    st.integers(-10**6, 10**6),
)
def test_ring_axioms_residues(a, b, c):
    ra, rb, rc = (Residues.from_int(SMALL, x) for x in (a, b, c))
    assert (ra + rb) * rc == ra * rc + rb * rc
    assert (ra * rb) * rc == ra * (rb * rc)
    assert ra + rb == rb + ra
    assert (ra - ra).is_zero()


@settings(max_examples=200, deadline=None)
@given(st.fractions(max_denominator=1000), st.fractions(max_denominator=1000))
def test_backends_agree_through_fractions(qa, qb):
    ra = Residues.from_fraction(DEFAULT_BASIS, qa)
    rb = Residues.from_fraction(DEFAULT_BASIS, qb)
    want = qa * qb + qa - qb
    got = ra * rb + ra - rb
    assert got == Residues.from_fraction(DEFAULT_BASIS, want)
    if want.denominator == 1:
        assert got.lift() == want.numerator
