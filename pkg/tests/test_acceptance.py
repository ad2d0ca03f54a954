"""Acceptance criteria: one PASS/FAIL line per criterion, all comparisons exact."""

from __future__ import annotations

import pytest

from nichols_knots import verify

CRITERIA = [
    (1, "two-variable table in (u,v)", (verify.table_lambda_uv,)),
    (2, "rank-2 R-matrix fingerprints", (verify.rank2_fingerprints,)),
    (3, "factorization at the trivial root", (verify.alexander_factorization,)),
    (4, "V2 reference values in (u,q)", (verify.v2_reference_values,)),
    (5, "specializations u=0 and q=1", (verify.specializations,)),
    (6, "duality identities", (verify.dualities,)),
    (7, "genus degrees", (verify.genus_degrees,)),
    (8, "mutation and chirality separations", (verify.separations, verify.symmetries)),
    (9, "algebraic property suites", verify.IDENTITY_CHECKS),
]


@pytest.mark.parametrize("number,title,checks", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, checks, capsys):
    reports = [check() for check in checks]
    passed = all(r.passed for r in reports)
    total = sum(len(r.items) for r in reports)
    failed = [line for r in reports for line in r.lines() if line.startswith("FAIL")]
    with capsys.disabled():
        print()
        for line in failed:
            print(f"    {line}")
        print(f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} "
              f"({total - len(failed)}/{total} items, exact)")
    assert passed, "\n".join(failed)
