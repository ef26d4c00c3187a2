import pytest

from prismcalc.core.exceptions import InvalidPrime, LengthUnderflow, NonWittGhost, SizeCapExceeded
from prismcalc.models.rings import RingModel
from prismcalc.models.witt import GhostVector, WittVector
from prismcalc.services.sampling import random_witt
from prismcalc.services.witt import (
    frobenius_char_p,
    ghost,
    teichmuller,
    unghost,
    witt_arith,
    witt_from_integer,
    witt_operator,
    witt_polynomials,
    witt_scale,
)

Z = RingModel.integers()


def test_polynomial_term_counts():
    table = witt_polynomials(2, 2)
    assert table.term_count("add") == [2, 3]
    assert table.term_count("mul") == [1, 3]
    assert len(table.families["F"]) == 1


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        witt_polynomials(2, 5)
    with pytest.raises(SizeCapExceeded):
        witt_polynomials(7, 1)


@pytest.mark.parametrize("p", [1, 4, 9])
def test_composite_primes_are_rejected(p):
    with pytest.raises(InvalidPrime):
        witt_polynomials(p, 1)


def test_addition_over_integers():
    one = WittVector.of(2, Z, [1, 0])
    assert one + one == WittVector.of(2, Z, [2, -1])
    assert witt_from_integer(2, 2, 2, Z) == one + one


def test_ghost_map_is_additive_and_multiplicative():
    x = WittVector.of(3, Z, [2, 5, -1])
    y = WittVector.of(3, Z, [-4, 1, 7])
    for op, combine in (("add", lambda a, b: a + b), ("mul", lambda a, b: a * b)):
        expected = [combine(a, b) for a, b in zip(ghost(x).components, ghost(y).components)]
        assert list(ghost(witt_arith(x, y, op)).components) == expected


def test_subtraction_inverts_addition():
    x = WittVector.of(2, Z, [3, 1, 4])
    y = WittVector.of(2, Z, [1, 5, 9])
    assert (x + y) - y == x


def test_operators():
    x = WittVector.of(2, Z, [3, 1])
    assert witt_operator(x, "F") == WittVector.of(2, Z, [11])
    assert witt_operator(x, "R") == WittVector.of(2, Z, [3])
    assert witt_operator(WittVector.of(2, Z, [3]), "V") == WittVector.of(2, Z, [0, 3])
    with pytest.raises(LengthUnderflow):
        witt_operator(WittVector.of(2, Z, [3]), "R")


def test_integers_with_torsion_base():
    F2 = RingModel.prime_field(2)
    assert witt_from_integer(3, 2, 2, F2) == WittVector.of(2, F2, [1, 1])


def test_unghost_rejects_non_witt_ghosts():
    with pytest.raises(NonWittGhost):
        unghost(GhostVector((Z.scalar(1), Z.scalar(2))), 2)


def test_teichmuller_is_multiplicative():
    a, b = Z.scalar(3), Z.scalar(-2)
    assert teichmuller(a, 3, 2) * teichmuller(b, 3, 2) == teichmuller(a * b, 3, 2)


@pytest.mark.parametrize("base", [RingModel.prime_field(3), RingModel.trunc_poly(3, 1, 4)])
def test_frobenius_is_componentwise_in_characteristic_p(base, rng):
    for _ in range(5):
        x = random_witt(3, 3, base, rng)
        assert witt_operator(x, "F") == frobenius_char_p(x)


def test_p_equals_vf_over_prime_field(rng):
    base = RingModel.prime_field(2)
    for _ in range(5):
        x = random_witt(2, 3, base, rng)
        assert witt_scale(x, 2) == witt_operator(witt_operator(x, "F"), "V")


GHOST_GRID = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3)]
IDENTITY_GRID = [(p, r) for p, r in GHOST_GRID if (p, r + 1) in GHOST_GRID]


def assert_matches_ghost_solving(p, r, rng, count):
    for _ in range(count):
        x, y = random_witt(p, r, Z, rng), random_witt(p, r, Z, rng)
        gx, gy = ghost(x), ghost(y)
        difference = GhostVector(tuple(a - b for a, b in zip(gx.components, gy.components)))
        assert witt_arith(x, y, "add") == unghost(gx + gy, p)
        assert witt_arith(x, y, "mul") == unghost(gx * gy, p)
        assert witt_arith(x, y, "sub") == unghost(difference, p)
        shifted = GhostVector((Z.zero(),) + tuple(w * p for w in gx.components))
        assert witt_operator(x, "V") == unghost(shifted, p)
        if r > 1:
            assert witt_operator(x, "F") == unghost(GhostVector(gx.components[1:]), p)


def assert_witt_identities(p, r, rng, count):
    for _ in range(count):
        x = random_witt(p, r, Z, rng)
        y = random_witt(p, r + 1, Z, rng)
        a = Z.scalar(int(rng.integers(-50, 51)))
        assert witt_operator(witt_operator(x, "V"), "F") == witt_scale(x, p)
        assert witt_operator(x * witt_operator(y, "F"), "V") == witt_operator(x, "V") * y
        assert witt_operator(teichmuller(a, r + 1, p), "F") == teichmuller(a ** p, r, p)
        if r > 1:
            assert witt_operator(witt_operator(y, "F"), "R") == witt_operator(witt_operator(y, "R"), "F")


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_universal_polynomials_match_ghost_solving(p, r, rng):
    assert_matches_ghost_solving(p, r, rng, 25)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_frobenius_verschiebung_identities(p, r, rng):
    assert_witt_identities(p, r, rng, 20)


@pytest.mark.slow
@pytest.mark.parametrize("p,r", GHOST_GRID)
def test_ghost_solving_full_grid(p, r, rng):
    assert_matches_ghost_solving(p, r, rng, 1000)


@pytest.mark.slow
@pytest.mark.parametrize("p,r", IDENTITY_GRID)
def test_witt_identities_full_grid(p, r, rng):
    assert_witt_identities(p, r, rng, 200)
