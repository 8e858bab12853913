import json
from fractions import Fraction

import pytest

from bimatroids.catalog import all_ones, bimatroids as catalog_bimatroids, matroids
from bimatroids.construct import from_matrix, zero
from bimatroids.errors import PreconditionError
from bimatroids.exactnum import FieldMatrix
from bimatroids.matroid import uniform
from bimatroids.morphism import MatroidMorphism, identity_morphism, to_point
from bimatroids.verify import (TheoremReport, basis_counts_direct, check_mason, check_theorem_A,
                               check_theorem_B, check_theorem_C, check_thmC_pipeline,
                               check_weak_basis_poly_lorentzian, rectangle_counts_via_poly,
                               regular_minor_counts_via_poly)

from corpus import bimatroid_corpus, morphism_corpus


def test_theorem_A_examples():
    rep = check_theorem_A(from_matrix(FieldMatrix.identity(2)))
    assert rep.verdict and rep.sequences["R"] == [1, 2, 1]
    assert rep.checks == [{"k": 1, "lhs": 1, "rhs": 1, "holds": True}]
    rep = check_theorem_A(all_ones(2, 2))
    assert rep.verdict and rep.sequences["R"] == [1, 4, 0]
    assert rep.checks[0]["lhs"] == 4 and rep.checks[0]["rhs"] == 0


def test_theorem_B_examples():
    rep = check_theorem_B(from_matrix(FieldMatrix.identity(1)))
    assert rep.verdict and rep.sequences["RR_vertical"] == [2, 1, 0]
    rep = check_theorem_B(zero(["e0"], ["f0"]))
    assert rep.verdict and rep.sequences["RR_vertical"] == [2, 0, 0]


def test_theorem_C_and_mason_examples():
    rep = check_mason(uniform(2, 3))
    assert rep.verdict and rep.sequences["B"] == [1, 3, 3] == rep.sequences["I"]
    assert rep.checks[0]["lhs"] == 9 and rep.checks[0]["rhs"] == 3
    for M in matroids().values():
        rep = check_theorem_C(identity_morphism(M))
        assert rep.verdict
        assert sum(1 for b in rep.sequences["B"] if b) == 1


def test_pipeline_example():
    rep = check_thmC_pipeline(to_point(uniform(2, 3)))
    assert rep.verdict and rep.sequences["weighted"] == [1, 6, 3]
    assert rep.checks[0]["lhs"] == 9 and rep.checks[0]["rhs"] == 3
    assert rep.properties["q_collapse_coefficients"] and rep.properties["tilde_exchange"]
    assert check_thmC_pipeline(identity_morphism(uniform(1, 2))).verdict


def test_weak_basis_examples():
    rep = check_weak_basis_poly_lorentzian(to_point(uniform(2, 3)), 2)
    assert rep.verdict and rep.sequences["w0_degrees"] == [0, 1, 2]
    rep = check_weak_basis_poly_lorentzian(identity_morphism(uniform(2, 4)), 0)
    assert rep.verdict and rep.sequences["w0_degrees"] == [0]
    with pytest.raises(PreconditionError):
        check_weak_basis_poly_lorentzian(to_point(uniform(2, 3)), 1)


def test_weak_basis_skips_over_caps():
    M = uniform(2, 12)
    rep = check_weak_basis_poly_lorentzian(to_point(M), 2)
    assert rep.skipped and rep.verdict and "lorentzian" not in rep.properties


def test_report_verdict_and_alarms():
    rep = TheoremReport("A", {})
    rep.add_inequality(1, Fraction(1), Fraction(2))
    assert not rep.verdict and rep.alarms
    rep = TheoremReport("A", {})
    rep.require("agree", False, "x")
    assert not rep and rep.alarms == ["agree failed: x"]


def test_forced_count_mismatch_raises_alarm(monkeypatch):
    from bimatroids import verify
    monkeypatch.setattr(verify, "basis_counts_direct", lambda phi: [0, 0, 0])
    rep = verify.check_mason(uniform(2, 3))
    assert not rep.verdict and any("counts_agree" in a for a in rep.alarms)


def test_json_schema():
    rep = check_theorem_A(from_matrix(FieldMatrix.identity(2)), seed=7).to_json()
    json.dumps(rep)
    assert {"theorem", "instance", "seed", "checks", "verdict"} <= set(rep)
    for c in rep["checks"]:
        assert set(c) >= {"k", "lhs", "rhs", "holds"}
        assert isinstance(c["lhs"], str) and isinstance(c["holds"], bool)
    rows = check_theorem_A(from_matrix(FieldMatrix.identity(2))).csv_rows()
    assert rows[0]["k"] == 1 and rows[0]["lhs"] == "1"


def test_ulc_records_are_exact_rationals():
    rep = check_theorem_B(from_matrix(FieldMatrix.identity(2)))
    assert all(isinstance(c["lhs"], Fraction) for c in rep.checks)
    assert any(c["lhs"].denominator > 1 for c in rep.checks)


@pytest.mark.parametrize("name,B", bimatroid_corpus(30, 10))
def test_count_paths_agree(name, B):
    s = min(B.m, B.n)
    direct = B.minor_counts()[:s + 1]
    direct += [0] * (s + 1 - len(direct))
    assert regular_minor_counts_via_poly(B) == direct
    from bimatroids.bimatroid import rectangle_counts
    assert rectangle_counts_via_poly(B) == rectangle_counts(B, "vertical")


@pytest.mark.parametrize("t", range(20))
def test_morphism_reports(t):
    phi = morphism_corpus()[t].morphism
    assert check_theorem_C(phi).verdict
    assert check_thmC_pipeline(phi).verdict
    from bimatroids.morphism import basis_counts
    assert basis_counts_direct(phi)[:len(basis_counts(phi))] == basis_counts(phi)
