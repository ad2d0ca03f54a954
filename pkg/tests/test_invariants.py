from __future__ import annotations

import json
import random

import pytest

from nichols_knots.invariants import (SymmetryError, compute, compute_ado, compute_colored_jones,
                                      compute_lambda, compute_vn, duality_ado_jones,
                                      duality_lambda_vn, expand_uq, expand_uv, golden_values,
                                      lambda_group_invariant, resolve_knot, rewrite_uq, rewrite_uv,
                                      run_checks)
from nichols_knots.knotdiag import UNKNOT
from nichols_knots.polyring import LaurentPoly, parse

# Classical Alexander polynomials, symmetrically normalized.
ALEXANDER = {
    "3_1": "t - 1 + t^-1",
    "4_1": "3 - t - t^-1",
    "5_1": "t^2 - t + 1 - t^-1 + t^-2",
    "5_2": "2t - 3 + 2t^-1",
    "6_1": "5 - 2t - 2t^-1",
    "7_1": "t^3 - t^2 + t - 1 + t^-1 - t^-2 + t^-3",
}


@pytest.mark.parametrize("name", sorted(ALEXANDER))
def test_ado_at_minus_one_is_alexander(name):
    assert compute_ado(name, 2).polynomial == parse(ALEXANDER[name])
    assert compute_ado("m" + name, 2).polynomial == parse(ALEXANDER[name])


def test_figure_eight_jones():
    # amphichiral, so the value does not depend on the orientation convention
    assert compute_colored_jones("4_1", 2).polynomial == parse("q^2 - q + 1 - q^-1 + q^-2")


def test_jones_mirror_inverts_q():
    q = LaurentPoly.var("q")
    j = compute_colored_jones("3_1", 2).polynomial
    jm = compute_colored_jones("m3_1", 2).polynomial
    assert j != jm and jm == j.substitute({"q": q.inverse_unit()})


@pytest.mark.parametrize("family,params", [("ado", (1, 2, 3, 4)), ("jones", (1, 2, 3)),
                                           ("lambda", (1, 2, 3)), ("vn", (1, 2))])
def test_unknot_normalization(family, params):
    for p in params:
        assert compute(UNKNOT, family, p).polynomial.change_ring(0) == LaurentPoly.const(1)


def test_first_color_is_trivial():
    for name in ("3_1", "5_2"):
        assert compute_colored_jones(name, 1).polynomial == LaurentPoly.const(1)


@pytest.mark.parametrize("name,uv", [("3_1", "1 + 4u + u^2 + v"),
                                     ("5_2", "1 + 10u + 6u^2 + 2v"),
                                     ("6_2", "1 - 8u - 15u^2 + 2u^3 + u^4 + (-1 - 9u + u^2)v - v^2")])
def test_lambda_uv_examples(name, uv):
    assert compute_lambda(name, 2).form == parse(uv)


def test_lambda_at_one_factorizes():
    t1, t2 = LaurentPoly.var("t1"), LaurentPoly.var("t2")
    alex = parse(ALEXANDER["5_2"])
    lam = compute("5_2", "lambda", 1).polynomial
    assert lam == alex.substitute({"t": t1}) * alex.substitute({"t": t2})


def test_v2_mirror_trefoil_example():
    expected = parse("1 + (q + 2q^3 - q^4 + q^5 - q^6)u + (q^2 + q^4 - q^5)u^2")
    assert compute_vn("m3_1", 2).form == expected


def test_v2_matches_reference_for_figure_eight():
    assert compute_vn("4_1", 2).form == golden_values()["v2_uq"]["4_1"]


def test_symbolic_gauge_cancels():
    res = compute("3_1", "lambda", 2, gauge=None)
    assert ("gauge_free", True, "") in res.checks
    assert res.polynomial == compute("3_1", "lambda", 2).polynomial


def test_inline_braid_matches_table_entry():
    e = resolve_knot("1 -2 1 -2")
    assert compute_ado(e, 2).polynomial == parse(ALEXANDER["4_1"])
    with pytest.raises(KeyError):
        resolve_knot("no_such_knot")


def test_uv_rewriting_round_trips():
    rng = random.Random(3)
    u, v = LaurentPoly.var("u"), LaurentPoly.var("v")
    assert rewrite_uv(LaurentPoly.const(1)) == LaurentPoly.const(1)
    assert rewrite_uv(expand_uv(u)) == u
    for _ in range(10):
        p = LaurentPoly.zero()
        for _ in range(4):
            p = p + rng.randint(-3, 3) * u ** rng.randint(0, 3) * v ** rng.randint(0, 2)
        expanded = expand_uv(p)
        assert lambda_group_invariant(expanded)
        assert rewrite_uv(expanded) == p


def test_uv_rewriting_rejects_asymmetric_input():
    with pytest.raises(SymmetryError):
        rewrite_uv(LaurentPoly.var("t1"))


def test_uq_rewriting_round_trips():
    rng = random.Random(5)
    u, q = LaurentPoly.var("u"), LaurentPoly.var("q")
    t = LaurentPoly.var("t")
    assert rewrite_uq(t + t.inverse_unit() - q - q.inverse_unit()) == u
    for _ in range(10):
        p = LaurentPoly.zero()
        for _ in range(4):
            p = p + rng.randint(-3, 3) * u ** rng.randint(0, 3) * q ** rng.randint(-4, 4)
        assert rewrite_uq(expand_uq(p)) == p
    with pytest.raises(SymmetryError):
        rewrite_uq(t)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2"])
def test_dualities(name):
    lam = compute_lambda(name, 2).polynomial
    v2 = compute_vn(name, 2).polynomial
    assert duality_lambda_vn(lam, v2)
    for n, N in ((2, 2), (2, 3), (3, 2), (3, 4)):
        assert duality_ado_jones(compute_ado(name, N).polynomial,
                                 compute_colored_jones(name, n).polynomial, N, n)


@pytest.mark.parametrize("name", ["3_1", "6_2"])
def test_check_suite_on_small_knots(name):
    rep = run_checks(name, compute_lambda(name, 2).polynomial, compute_vn(name, 2).polynomial,
                     compute_ado(name, 2).polynomial)
    assert rep.passed, rep.lines()


def test_result_json_and_parameter_validation():
    data = json.loads(compute_vn("3_1", 2).to_json())
    assert data["params"] == {"n": 2} and data["form"]["name"] == "uq"
    with pytest.raises(ValueError):
        compute_ado("3_1", 0)
    with pytest.raises(ValueError):
        compute_colored_jones("3_1", 0)
