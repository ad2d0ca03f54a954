from __future__ import annotations

import pytest

from nichols_knots.nichols import build_rank1, build_rank2_root_of_unity
from nichols_knots.polyring import LaurentPoly
from nichols_knots.rmatrix import (NotRigidError, RMatrix, build_rho_left, build_rho_right,
                                   build_rigid, check_grading, check_yang_baxter, identity, invert,
                                   partial_transpose, rotate_180, untranspose)
from nichols_knots.ydmod import build_Yn, regular_left_module, regular_right_module


def left_r(H):
    return build_rho_left(regular_left_module(H))


CASES = [("rank1 N=2", lambda: left_r(build_rank1(2))),
         ("rank1 N=3", lambda: left_r(build_rank1(3))),
         ("rank1 N=4 right", lambda: build_rho_right(regular_right_module(build_rank1(4)))),
         ("rank2 N=2", lambda: left_r(build_rank2_root_of_unity(2))),
         ("rank2 N=2 right", lambda: build_rho_right(regular_right_module(build_rank2_root_of_unity(2)))),
         ("Y_1", lambda: build_rho_right(build_Yn(1))),
         ("Y_2", lambda: build_rho_right(build_Yn(2)))]


@pytest.mark.parametrize("label,make", CASES, ids=[c[0] for c in CASES])
def test_yang_baxter_and_grading(label, make):
    r = make()
    assert check_yang_baxter(r).passed
    assert check_grading(r)


@pytest.mark.parametrize("label,make", CASES, ids=[c[0] for c in CASES])
def test_rigid_quadruple_inverts_exactly(label, make):
    r = make()
    R = build_rigid(r)
    assert R.r_neg.compose(r).is_identity()
    assert r.compose(R.r_neg).is_identity()
    assert R.rt_inv.compose(partial_transpose(r)).is_identity()
    assert R.rtinv_inv.compose(partial_transpose(R.r_neg)).is_identity()
    for det in R.dets.values():
        det.inverse_unit()


def test_rank2_sparsity():
    r = left_r(build_rank2_root_of_unity(2))
    assert r.dim == 8
    assert r.nonzero_count() == 157


def test_broken_r_matrix_fails_yang_baxter():
    r = left_r(build_rank1(3))
    entries = {k: dict(v) for k, v in r.entries.items()}
    key = next(k for k, v in entries.items() if len(v) > 1)
    dst = next(iter(entries[key]))
    entries[key][dst] = entries[key][dst] * 2
    bad = RMatrix(r.dim, entries, r.ring, r.degrees)
    assert not check_yang_baxter(bad).passed


def test_partial_transpose_round_trip_and_rotation():
    r = left_r(build_rank1(3))
    assert untranspose(partial_transpose(r)).entries == r.entries
    assert rotate_180(rotate_180(r)).entries == r.entries


def test_singular_matrix_is_rejected():
    one = LaurentPoly.const(1)
    m = RMatrix(2, {(0, 0): {(0, 0): one, (0, 1): one}, (0, 1): {(0, 0): one, (0, 1): one},
                    (1, 0): {(1, 0): one}, (1, 1): {(1, 1): one}})
    with pytest.raises(NotRigidError):
        invert(m)


def test_identity_inverts_to_itself():
    e = identity(3)
    assert invert(e).is_identity()


def test_rank2_determinant():
    R = build_rigid(left_r(build_rank2_root_of_unity(2)))
    t1, t2 = LaurentPoly.var("t1"), LaurentPoly.var("t2")
    assert R.dets["r"] == (t1 * t2) ** 64


def test_json_export():
    import json
    r = left_r(build_rank1(2))
    data = json.loads(r.to_json())
    assert data["dim"] == 2 and len(data["entries"]) == r.nonzero_count()
