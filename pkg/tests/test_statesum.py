from __future__ import annotations

import json

import pytest

from nichols_knots.invariants import rigid_rmatrix
from nichols_knots.knotdiag import (UNKNOT, LongDiagram, braid_to_long_diagram, kink, lookup,
                                    prepare)
from nichols_knots.polyring import LaurentPoly
from nichols_knots.statesum import (DiagramRejected, FrontierOverflowError, brute_force,
                                    check_scalar, contract)


def diagram(name: str) -> LongDiagram:
    return lookup(name).diagram()


TWO_DIM = [("ado2", lambda: rigid_rmatrix("ado", 2)), ("jones2", lambda: rigid_rmatrix("jones", 2))]


@pytest.mark.parametrize("label,make", TWO_DIM, ids=[t[0] for t in TWO_DIM])
@pytest.mark.parametrize("name", ["unknot", "3_1", "m3_1", "4_1"])
def test_contraction_matches_enumeration(label, make, name):
    R = make()
    d = UNKNOT.diagram() if name == "unknot" else diagram(name)
    assert contract(d, R, "all").matrix == brute_force(d, R, "all").matrix


def test_enumeration_on_curls_only():
    R = rigid_rmatrix("ado", 2)
    d = LongDiagram.from_slices(kink(1) + kink(-1))
    assert contract(d, R, "all").matrix == brute_force(d, R, "all").matrix


@pytest.mark.parametrize("family,param", [("ado", 3), ("lambda", 2), ("vn", 2)])
def test_backends_agree(family, param):
    R = rigid_rmatrix(family, param)
    d = diagram("4_1")
    fast = contract(d, R, backend="flint").scalar
    slow = contract(d, R, backend="python").scalar
    assert fast == slow


@pytest.mark.parametrize("family,param", [("ado", 2), ("ado", 3), ("lambda", 2)])
def test_opposite_curls_do_not_change_the_value(family, param):
    R = rigid_rmatrix(family, param)
    d = diagram("3_1")
    padded = LongDiagram.from_slices(d.slices + tuple(kink(1) + kink(-1)))
    assert contract(padded, R).scalar == contract(d, R).scalar


@pytest.mark.parametrize("family,param", [("ado", 2), ("ado", 3), ("lambda", 2)])
def test_connected_sum_is_multiplicative(family, param):
    R = rigid_rmatrix(family, param)
    a, b = diagram("3_1"), diagram("4_1")
    assert contract(a.then(b), R).scalar == contract(a, R).scalar * contract(b, R).scalar


@pytest.mark.parametrize("family,param", [("ado", 2), ("ado", 4), ("jones", 3), ("lambda", 2)])
def test_full_matrix_is_scalar(family, param):
    res = contract(diagram("5_2"), rigid_rmatrix(family, param), "all")
    chk = check_scalar(res)
    assert chk.scalar, chk.detail
    assert res.entry(1, 1) == res.scalar


def test_unbalanced_or_non_normal_diagrams_are_rejected():
    R = rigid_rmatrix("ado", 2)
    b = lookup("3_1").braid
    with pytest.raises(DiagramRejected):
        contract(braid_to_long_diagram(b), R)
    with pytest.raises(DiagramRejected):
        contract(braid_to_long_diagram(b, normalize=False), R, require_balanced=False)
    contract(braid_to_long_diagram(b), R, require_balanced=False)


def test_width_cap():
    R = rigid_rmatrix("ado", 2)
    d = prepare(lookup("4_1").braid)
    with pytest.raises(FrontierOverflowError):
        contract(d, R, max_width=d.max_width - 1)


def test_unknot_is_one():
    res = contract(UNKNOT.diagram(), rigid_rmatrix("lambda", 2), "all")
    assert res.scalar == LaurentPoly.const(1)
    assert check_scalar(res).scalar


def test_result_json():
    res = contract(diagram("3_1"), rigid_rmatrix("ado", 2))
    data = json.loads(res.to_json("3_1", "ado", {"N": 2}))
    assert data["knot"] == "3_1"
