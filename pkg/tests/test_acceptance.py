"""Acceptance criteria. Each test prints one PASS/FAIL line, bypassing output capture."""

from __future__ import annotations

import pytest

from vlplus import acceptance
from vlplus.scalars import parse_scalar

PRINTED_TABLE3_ERRORS = (
    "printed Table 3 has a column slip in row C7 and a wrong c2 entry in row C11; "
    "the computed determinant is -2835/(128k^8), not the printed one"
)
PRINTED_TABLE6_ERRORS = (
    "printed Table 6 has 1 where 2 belongs at (G9, g6); "
    "its printed determinant matches neither the printed nor the computed table"
)


@pytest.fixture
def report(capsys):
    def emit(result):
        with capsys.disabled():
            print()
            print(result.line())
        return result

    return emit


def test_criterion_1_table1(report):
    r = report(acceptance.criterion_1())
    assert r.passed, r.details


@pytest.mark.xfail(strict=True, reason=PRINTED_TABLE3_ERRORS)
def test_criterion_2_table3(report):
    r = report(acceptance.criterion_2())
    # the computed side is sound regardless of the printed values
    assert parse_scalar(r.details["determinant"], symbolic=True) == parse_scalar("-2835/(128*k^8)", symbolic=True)
    assert r.passed, r.details["mismatches"]


@pytest.mark.xfail(strict=True, reason=PRINTED_TABLE6_ERRORS)
def test_criterion_3_table6(report):
    r = report(acceptance.criterion_3())
    assert parse_scalar(r.details["determinant"], symbolic=True) == parse_scalar("-6144*(4*k-1)/k", symbolic=True)
    assert r.passed, r.details["mismatches"]


def test_criterion_4_inverse_tables(report):
    r = report(acceptance.criterion_4())
    assert r.passed, r.details
    assert all(d["orientation"] == "inverse" for d in r.details.values())


def test_criterion_5_beta(report):
    r = report(acceptance.criterion_5(3))
    assert r.passed, r.details
    assert r.details["beta_at_k"] == "170/11"


def test_criterion_6_rho_sigma_gamma(report):
    r = report(acceptance.criterion_6(3))
    assert r.passed, r.details
    assert r.details["constants"]["gamma"] == "64"


def test_criterion_7_charged_identities(report):
    r = report(acceptance.criterion_7())
    assert r.passed, r.details["failed"]


def test_criterion_8_axioms(report):
    r = report(acceptance.criterion_8(3))
    assert r.passed, r.details["failures"]
    assert r.details["counts"]["oracle"] >= 200


def test_criterion_9_spanning(report):
    r = report(acceptance.criterion_9(3, 20))
    assert r.passed, r.details
    assert r.details["total"] <= 15


def test_criterion_10_determinant_guards(report):
    r = report(acceptance.criterion_10())
    assert r.passed, r.details
