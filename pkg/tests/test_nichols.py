from __future__ import annotations

import dataclasses

import pytest

from nichols_knots.nichols import (build_rank1, build_rank1_generic, build_rank2_generic_truncated,
                                   build_rank2_root_of_unity, verify_hopf_axioms)
from nichols_knots.polyring import LaurentPoly


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_rank1_dimension(N):
    assert build_rank1(N).dim == N


@pytest.mark.parametrize("N", [1, 2, 3])
def test_rank2_dimension(N):
    assert build_rank2_root_of_unity(N).dim == 4 * N


def test_rank2_basis_at_minus_one():
    H = build_rank2_root_of_unity(2)
    expected = {(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1), (2, 1, 2), (1, 2, 1, 2)}
    assert set(H.basis) == expected


@pytest.mark.parametrize("builder,arg", [(build_rank1, 2), (build_rank1, 3), (build_rank1, 4),
                                         (build_rank2_root_of_unity, 1),
                                         (build_rank2_root_of_unity, 2),
                                         (build_rank2_root_of_unity, 3)])
def test_hopf_axioms_hold(builder, arg):
    rep = verify_hopf_axioms(builder(arg))
    assert rep.passed, rep.summary()


def test_hopf_axioms_on_generic_truncations():
    H = build_rank1_generic(6)
    low = [w for w in H.basis if len(w) <= 3]
    assert verify_hopf_axioms(H, low).passed
    H2 = build_rank2_generic_truncated(6)
    low2 = [w for w in H2.basis if len(w) <= 3]
    assert verify_hopf_axioms(H2, low2).passed


def test_corrupted_relation_breaks_axioms():
    H = build_rank2_root_of_unity(2)
    bad = dataclasses.replace(H, relation_coeff=H.relation_coeff * 2)
    assert not verify_hopf_axioms(bad).passed


def test_primitive_generator_and_braiding():
    H = build_rank1(3)
    x = (1,)
    one = LaurentPoly.const(1, 3)
    assert H.coproduct_word(x) == {(x, ()): one, ((), x): one}
    q = H.params["q"]
    assert H.braid_tensor({x: one}, {x: one}) == {(x, x): q}


def test_top_power_is_primitive_at_root_of_unity():
    # x^N is primitive at an N-th root of unity, which is why it can be quotiented out
    H = build_rank1_generic(4, q=LaurentPoly.const(-1))
    one = LaurentPoly.const(1)
    x2 = (1, 1)
    assert H.coproduct_word(x2) == {(x2, ()): one, ((), x2): one}


def test_automorphism_scales_by_degree():
    H = build_rank2_root_of_unity(2)
    t1, t2 = H.params["t1"], H.params["t2"]
    assert H.tpow((1, 2, 1)) == t1 * t1 * t2


def test_antipode_of_generators():
    H = build_rank2_root_of_unity(3)
    one = H.one
    assert H.antipode_word((1,)) == {(1,): -one}
    assert H.antipode_word(()) == {(): one}


def test_invalid_order():
    with pytest.raises(ValueError):
        build_rank1(0)
    with pytest.raises(ValueError):
        build_rank2_root_of_unity(0)
