from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trireach.graphs import Fn
from trireach.regions import (
    Relation,
    evaluate_point,
    predicate_catalog,
    raw_findings,
    scan_grid,
)

unit = st.fractions(min_value=F(1, 60), max_value=1, max_denominator=60)


def test_catalog_size_and_uniqueness():
    cat = predicate_catalog()
    assert len(cat) == 30
    ids = [p.id for p in cat]
    assert len(set(ids)) == 30


def test_catalog_groups():
    ids = {p.id for p in predicate_catalog()}
    level_34 = {i for i in ids if i.startswith("3/4") or i == "edgecounting"}
    level_25 = {i for i in ids if i.startswith("2/5")}
    level_35 = {i for i in ids if i.startswith("3/5")}
    general = ids - level_34 - level_25 - level_35
    assert len(general) == 8 and len(level_34) == 11 and len(level_25) == 6 and len(level_35) == 5


def test_suspect_branch_flag():
    cat = predicate_catalog(include_suspect_branch=False)
    assert len(cat) == 29
    assert "3/4ub3a" not in {p.id for p in cat}
    assert "3/4ub3b" in {p.id for p in cat}


def test_every_predicate_evaluates_without_error():
    for pred in predicate_catalog():
        conclusions = pred.conclusions(F(1, 2), F(1, 2))
        assert isinstance(conclusions, list)


def test_point_half_two_fifths():
    verdict = evaluate_point(F(1, 2), F(2, 5))
    sources = {f.source for f in verdict.findings}
    assert "2/5psiub1" in sources  # 3y - 2y^2 = 22/25 > 1/2
    assert not verdict.contradictions


def test_point_third_sixth_closure():
    verdict = evaluate_point(F(1, 3), F(1, 6))
    assert any(
        f.source == "2/5psilb" and f.function is Fn.PSI and f.relation is Relation.BELOW
        for f in verdict.findings
    )
    # the one-sided consequence arrives through closure
    assert any(
        f.source.startswith("2/5psilb+mono") and f.function is Fn.PHI
        for f in verdict.findings
    )
    assert not verdict.contradictions


def test_point_hundredth_pins_both_functions():
    verdict = evaluate_point(F(1, 100), F(1, 100))
    lower = max(verdict.levels(Fn.PHI, Relation.AT_LEAST))
    cap = min(verdict.levels(Fn.PHI, Relation.AT_MOST))
    assert lower == cap == F(1, 100)
    assert min(verdict.levels(Fn.PSI, Relation.AT_MOST)) == F(1, 100)
    assert not verdict.contradictions


def test_point_third_third_membership_below_two_fifths():
    verdict = evaluate_point(F(1, 3), F(1, 3))
    assert verdict.bucket(Fn.PHI, F(2, 5)) == "below"


def test_maxbound_is_point_dependent():
    verdict = evaluate_point(F(7, 11), F(2, 11))
    assert F(7, 11) in verdict.levels(Fn.PHI, Relation.AT_LEAST)


def test_irrational_threshold_exact_decision():
    (pred,) = [p for p in predicate_catalog() if p.id == "2/5phiub2"]
    # threshold (5 - sqrt(3))/11 = 0.2970865...; 30/101 = 0.2970297... sits a
    # hair below it: (5 - 11*30/101)^2 = 30625/10201 > 3 = 30603/10201
    assert not pred.conclusions(F(2, 5), F(30, 101))


def test_irrational_threshold_both_sides():
    (pred,) = [p for p in predicate_catalog() if p.id == "2/5phiub2"]
    assert pred.conclusions(F(2, 5), F(3, 10))  # (5-33/10)^2 = 2.89 <= 3
    assert pred.conclusions(F(2, 5), F(1, 2))
    assert not pred.conclusions(F(1, 4), F(1, 2))  # needs x > 1/3


def test_singularity_guard_keeps_philb_sound():
    # (1-x)/(2-3x) changes sign at x = 2/3; the rule must not fire beyond it
    verdict = evaluate_point(F(7, 10), F(3, 10))
    assert not any(f.source.startswith("3/5philb") for f in verdict.findings)
    assert not verdict.contradictions


@settings(max_examples=120, deadline=None)
@given(unit, unit)
def test_no_contradictions_at_random_points(x, y):
    assert not evaluate_point(x, y).contradictions


@settings(max_examples=80, deadline=None)
@given(unit, unit)
def test_phi_verdicts_symmetric(x, y):
    a = evaluate_point(x, y)
    b = evaluate_point(y, x)
    phi_a = {(f.relation, f.level) for f in a.findings if f.function is Fn.PHI}
    phi_b = {(f.relation, f.level) for f in b.findings if f.function is Fn.PHI}
    assert phi_a == phi_b


def test_raw_findings_have_no_closure_tags():
    for f in raw_findings(F(1, 3), F(1, 6), predicate_catalog()):
        assert "+mono" not in f.source and "+sym" not in f.source


def test_scan_tenth(tmp_path):
    report = scan_grid(F(1, 10), tmp_path / "grid.csv")
    assert report.n_points == 100
    assert not report.contradictions
    total = report.counts[("psi", F(3, 4))]
    assert total["at_least"] + total["below"] + total["unknown"] == 100
    header = (tmp_path / "grid.csv").read_text().splitlines()[0]
    assert header == "x,y,function,level,relation,source"


def test_scan_third_point_membership(tmp_path):
    report = scan_grid(F(1, 3), tmp_path / "grid.csv")
    assert report.n_points == 9
    assert not report.contradictions
    rows = (tmp_path / "grid.csv").read_text().splitlines()[1:]
    phi_below = [
        r
        for r in rows
        if r.startswith("1/3,1/3,phi,") and (",below," in r or ",at_most," in r)
    ]
    assert any(",1/3," in r for r in phi_below)  # pinned at 1/3, hence under 2/5


def test_scan_rejects_bad_step(tmp_path):
    with pytest.raises(ValueError):
        scan_grid(F(2, 5), tmp_path / "grid.csv")


def test_scan_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    scan_grid(F(1, 12), a)
    scan_grid(F(1, 12), b)
    assert a.read_bytes() == b.read_bytes()


@settings(max_examples=40, deadline=None)
@given(unit, unit)
def test_closure_edges_are_exactly_the_allowed_inferences(x, y):
    """Every derived finding must trace back to a direct rule firing through
    the three sound steps: one-sided-to-two-sided lifting of lower claims,
    two-sided-to-one-sided descent of upper claims, and the swap transfer of
    one-sided conclusions."""
    cat = predicate_catalog()
    raw_here = raw_findings(x, y, cat)
    raw_mirror = raw_findings(y, x, cat)
    for f in evaluate_point(x, y, cat).findings:
        rule_id, *steps = f.source.split("+")
        pool = raw_mirror if "sym" in steps else raw_here
        candidates = [(b.function, b.relation) for b in pool
                      if b.source == rule_id and b.level == f.level]
        assert candidates, f"{f.source}: no direct firing to derive from"
        derived = set(candidates)
        for step in steps:
            if step == "mono":
                out = set()
                for fn, rel in derived:
                    if fn is Fn.PHI and rel is Relation.AT_LEAST:
                        out.add((Fn.PSI, rel))
                    elif fn is Fn.PSI and rel in (Relation.BELOW, Relation.AT_MOST):
                        out.add((Fn.PHI, rel))
                derived = out
            else:
                assert step == "sym"
                derived = {(fn, rel) for fn, rel in derived if fn is Fn.PHI}
        assert (f.function, f.relation) in derived, f.source
