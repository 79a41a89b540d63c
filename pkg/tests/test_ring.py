import random

import pytest

from biliaison.errors import (
    NonHomogeneousError,
    PolynomialSyntaxError,
    UnknownVariableError,
)
from biliaison.ring import (
    FieldContext,
    Polynomial,
    RingContext,
    mono_key,
    mono_mul,
    monomial_compare,
    monomials_of_degree,
    parse_polynomial,
    print_polynomial,
)


def test_parse_basic(P3):
    f = parse_polynomial("x0^2*x1 + 3*x2*x3^2", P3)
    assert len(f.terms) == 2
    assert f.degree() == 3
    assert f.is_homogeneous()


def test_parse_cancellation(P3):
    assert parse_polynomial("x0 - x0", P3).is_zero()


def test_parse_modular_reduction(P3):
    f = parse_polynomial("32004*x1", P3)
    assert f == parse_polynomial("x1", P3)


def test_parse_coefficient_only(P3):
    f = parse_polynomial("7", P3)
    assert f == Polynomial.constant(P3, 7)


def test_parse_errors(P3):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("x0 + + x1", P3)
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("", P3)
    with pytest.raises(UnknownVariableError):
        parse_polynomial("x7", P3)
    with pytest.raises(NonHomogeneousError):
        parse_polynomial("x0 + x1^2", P3, require_homogeneous=True)


def test_monomial_compare():
    x0 = (1, 0, 0, 0)
    x1 = (0, 1, 0, 0)
    x3sq = (0, 0, 0, 2)
    assert monomial_compare(x0, x1) == 1
    assert monomial_compare(x3sq, x0) == 1
    assert monomial_compare(x1, x1) == 0


def test_monomial_order_properties():
    rng = random.Random(7)
    monos = [m for d in range(0, 5) for m in monomials_of_degree(4, d)]
    for _ in range(300):
        a, b, c = (rng.choice(monos) for _ in range(3))
        # antisymmetry
        assert monomial_compare(a, b) == -monomial_compare(b, a)
        # transitivity
        if monomial_compare(a, b) >= 0 and monomial_compare(b, c) >= 0:
            assert monomial_compare(a, c) >= 0
        # multiplicativity
        if monomial_compare(a, b) == 1:
            assert monomial_compare(mono_mul(a, c), mono_mul(b, c)) == 1


def test_field_axioms_small_prime():
    F = FieldContext(7)
    p = F.p
    for a in range(p):
        for b in range(p):
            assert (a + b) % p == (b + a) % p
            for c in range(p):
                assert ((a + b) % p * c) % p == (a * c + b * c) % p
        if a:
            assert a * F.inv(a) % p == 1


def test_field_axioms_random_large():
    F = FieldContext()
    p = F.p
    rng = random.Random(11)
    for _ in range(500):
        a, b, c = (rng.randrange(p) for _ in range(3))
        assert (a * (b * c) % p) == ((a * b) % p * c) % p
        assert (a * (b + c)) % p == (a * b + a * c) % p
        if a:
            assert a * F.inv(a) % p == 1


def test_parse_print_roundtrip(P3):
    rng = random.Random(42)
    for _ in range(1000):
        d = rng.randrange(0, 7)
        f = P3.random_homogeneous(d, rng)
        assert parse_polynomial(print_polynomial(f), P3) == f


def test_print_canonical_order(P3):
    f = parse_polynomial("x3^3 + x0*x1*x2", P3)
    # degrevlex descending: x0*x1*x2 > x3^3
    assert print_polynomial(f) == "x0*x1*x2 + x3^3"


def test_quadric_ring_constants(quadric_ring, P3):
    assert P3.canonical_twist == -4
    assert P3.dim == 4
    assert quadric_ring.canonical_twist == -3
    assert quadric_ring.dim == 4
    assert quadric_ring.slice_dim(2) == 15 - 1


def test_singular_quadric_rejected():
    with pytest.raises(Exception):
        RingContext(FieldContext(), 5, "x0*x1")  # rank-2 form, reducible


def test_mono_key_consistency():
    # key comparison must match monomial_compare on a sample
    monos = [m for d in range(4) for m in monomials_of_degree(3, d)]
    for a in monos:
        for b in monos:
            assert (mono_key(a) > mono_key(b)) == (monomial_compare(a, b) == 1)
