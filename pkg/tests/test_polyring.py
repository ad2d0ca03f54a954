from __future__ import annotations

import random

import pytest

from nichols_knots.polyring import (CycInt, DivisionError, LaurentPoly, RingMismatchError,
                                    UndefinedDegreeError, UnitRequiredError, cyclotomic_poly,
                                    degree_span, parse, q_binomial, q_multinomial, q_pochhammer)


def random_poly(rng: random.Random, ring: int = 0, names=("t", "q")) -> LaurentPoly:
    out = LaurentPoly.zero(ring)
    for _ in range(rng.randint(0, 5)):
        exps = {n: rng.randint(-3, 3) for n in names}
        if ring:
            exps["w"] = rng.randint(0, ring)
        out = out + LaurentPoly.monomial(exps, rng.randint(-4, 4), ring)
    return out


@pytest.mark.parametrize("ring", [0, 3, 5, 6])
def test_ring_axioms_on_random_polynomials(ring):
    rng = random.Random(ring)
    for _ in range(40):
        a, b, c = (random_poly(rng, ring) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == LaurentPoly.zero(ring)


def test_product_and_expansion():
    t = LaurentPoly.var("t")
    assert (1 + t) * (1 - t) == 1 - t * t
    assert (t + t.inverse_unit()) ** 2 == t ** 2 + 2 + t ** -2


def test_parse_accepts_juxtaposition_and_negative_exponents():
    assert parse("2u(1+2u)v") == parse("2*u*v + 4*u^2*v")
    assert parse("q^-1 - t**-2") == LaurentPoly.var("q") ** -1 - LaurentPoly.var("t") ** -2
    assert parse("−1 + s") == parse("s - 1")


def test_text_round_trip():
    rng = random.Random(7)
    for _ in range(30):
        p = random_poly(rng)
        assert parse(p.to_string()) == p


@pytest.mark.parametrize("ring", [0, 3, 4, 5])
def test_json_round_trip(ring):
    rng = random.Random(11 + ring)
    for _ in range(20):
        p = random_poly(rng, ring)
        assert LaurentPoly.from_json(p.to_json()) == p


def test_cyclotomic_reduction():
    w3 = LaurentPoly.root(3)
    assert 1 + w3 + w3 * w3 == LaurentPoly.zero(3)
    assert w3 ** 3 == LaurentPoly.const(1, 3)
    w4 = LaurentPoly.root(4)
    assert w4 * w4 == LaurentPoly.const(-1, 4)
    assert cyclotomic_poly(6) == (1, -1, 1)


def test_cycint_arithmetic_matches_polynomials():
    a = CycInt.root(5, 2)
    b = CycInt.root(5, 4)
    assert a * b == CycInt.root(5, 1)
    assert CycInt.from_list([1, 1, 1, 1, 1], 5).is_zero()


def test_units_and_non_units():
    t = LaurentPoly.var("t")
    assert (-(t ** 3)).inverse_unit() == -(t ** -3)
    w = LaurentPoly.root(5)
    u = w ** 3 * LaurentPoly.var("t", 5)
    assert u * u.inverse_unit() == LaurentPoly.const(1, 5)
    with pytest.raises(UnitRequiredError):
        (1 + t).inverse_unit()
    with pytest.raises(UnitRequiredError):
        (2 * t).inverse_unit()


def test_mixing_rings_is_an_error():
    with pytest.raises(RingMismatchError):
        LaurentPoly.var("t", 3) + LaurentPoly.var("t", 5)


def test_substitution():
    t, q = LaurentPoly.var("t"), LaurentPoly.var("q")
    p = t ** 2 + q * t ** -1
    assert p.substitute({"t": q}) == q ** 2 + 1
    assert p.substitute({"t": 1, "q": 1}) == LaurentPoly.const(2)
    assert p.substitute({"t": -t}) == t ** 2 - q * t ** -1


def test_exact_division():
    t = LaurentPoly.var("t")
    a = (1 + t) * (2 - t ** 3)
    assert a.divexact(1 + t) == 2 - t ** 3
    with pytest.raises(DivisionError):
        (1 + t * t).divexact(1 + t)


def test_degrees():
    p = parse("t^-2 + 3 t^5 q")
    assert p.degree("t") == 5 and p.low_degree("t") == -2
    assert degree_span(p, "t") == 7
    with pytest.raises(UndefinedDegreeError):
        degree_span(LaurentPoly.zero(), "t")


def test_gaussian_binomials():
    q = LaurentPoly.var("q")
    assert q_binomial(4, 2) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4
    assert q_binomial(3, 5) == LaurentPoly.zero()
    # [k m]_q (q;q)_m (q;q)_{k-m} = (q;q)_k
    for k in range(6):
        for m in range(k + 1):
            lhs = q_binomial(k, m) * q_pochhammer(q, q, m) * q_pochhammer(q, q, k - m)
            assert lhs == q_pochhammer(q, q, k)
    assert q_multinomial(3, 1, 1) == q_binomial(3, 2) * q_binomial(2, 1)


def test_gaussian_binomials_vanish_at_roots_of_unity():
    for N in (3, 4, 5):
        for k in range(1, N):
            assert q_binomial(N, k, "w", N) == LaurentPoly.zero(N)
