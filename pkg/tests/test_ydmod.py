from __future__ import annotations

import pytest

from nichols_knots.nichols import build_rank1, build_rank1_generic, build_rank2_root_of_unity
from nichols_knots.polyring import LaurentPoly
from nichols_knots.ydmod import (ConstructionError, build_Yn, find_coinvariants,
                                 quotient_by_coinvariants, regular_left_module,
                                 regular_right_module, verify_yd_axioms)

ALGEBRAS = [(build_rank1, 2), (build_rank1, 3), (build_rank1, 4),
            (build_rank2_root_of_unity, 1), (build_rank2_root_of_unity, 2)]


@pytest.mark.parametrize("builder,arg", ALGEBRAS)
def test_regular_modules_are_yd(builder, arg):
    H = builder(arg)
    for M in (regular_left_module(H), regular_right_module(H)):
        assert M.dim == H.dim
        assert verify_yd_axioms(M).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_yn_dimension_and_axioms(n):
    M = build_Yn(n)
    assert M.dim == 4 * n
    if n <= 2:
        assert verify_yd_axioms(build_Yn(n, truncation=4 * n)).passed


def test_yn_needs_the_parameter_constraint():
    with pytest.raises(ConstructionError):
        build_Yn(2, bind=False)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_power_is_coinvariant_at_special_parameter(n):
    q = LaurentPoly.var("q")
    H = build_rank1_generic(n + 1, t=q ** (1 - n), q=q)
    M = regular_left_module(H)
    assert (1,) * n in find_coinvariants(M)


def test_power_is_not_coinvariant_for_generic_parameter():
    H = build_rank1_generic(3)
    assert (1, 1) not in find_coinvariants(regular_left_module(H))


@pytest.mark.parametrize("n", [2, 3])
def test_quotient_module(n):
    q = LaurentPoly.var("q")
    H = build_rank1_generic(n, t=q ** (1 - n), q=q)
    M = regular_left_module(H)
    gens = [w for w in find_coinvariants(M) if len(w) == n]
    Q = quotient_by_coinvariants(M, gens, keep_below=n)
    assert Q.dim == n
    assert verify_yd_axioms(Q).passed


def test_module_json_lists_every_basis_vector():
    import json
    M = regular_left_module(build_rank1(3))
    data = json.loads(M.to_json())
    assert data["dim"] == 3 and len(data["coaction"]) == 3


def test_corrupted_coaction_is_detected():
    import dataclasses
    M = regular_left_module(build_rank1(3))
    rows = [list(r) for r in M.coaction]
    h, j, c = rows[2][0]
    rows[2][0] = (h, j, c * 2)
    bad = dataclasses.replace(M, coaction=rows)
    assert not verify_yd_axioms(bad).passed
