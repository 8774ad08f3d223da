from fractions import Fraction as F

import pytest

from trireach.graphs import ConstraintParams, Mode, verify
from trireach.witnesses import (
    CertificationError,
    ConstructionError,
    Witness,
    circulant_proof_conditions,
    circulant_witness,
    extend_phi,
    extend_psi_bottom,
    extend_psi_top,
    interval_witness,
    load_witness,
    save_witness,
)


class TestInterval:
    def test_unit_cases(self):
        w = interval_witness(3, 1, 1)
        assert (w.x, w.y, w.z, w.reach) == (F(1, 3), F(1, 3), F(1, 3), F(1, 3))
        assert not w.strict
        w = interval_witness(5, 3, 1)
        assert (w.x, w.y, w.reach) == (F(3, 5), F(1, 5), F(3, 5))
        w = interval_witness(1, 1, 1)
        assert w.reach == 1

    def test_reach_formula_small_range(self):
        for n in range(1, 8):
            for p in range(1, n + 1):
                for q in range(1, n + 1):
                    w = interval_witness(n, p, q)
                    assert w.reach == min(F(1), F(p + q - 1, n))

    def test_parameter_range(self):
        with pytest.raises(ConstructionError):
            interval_witness(4, 0, 2)
        with pytest.raises(ConstructionError):
            interval_witness(4, 5, 2)


class TestCirculant:
    def test_primary_branch(self):
        w = circulant_witness(F(1, 3), F(1, 6), 2, 5)
        assert w.z == F(2, 5)
        assert w.strict and w.reach < F(2, 5)
        assert w.mode is Mode.BICONSTRAINED
        # component sizes: N = 3 plus hub, m = 3 triples
        assert w.graph.structure.a_size == 7
        assert w.graph.structure.b_size == 6

    def test_mirror_branch(self):
        w = circulant_witness(F(1, 6), F(1, 3), 2, 5)
        assert w.strict and w.reach < F(2, 5)
        assert "branch=2" in w.provenance

    def test_all_proof_conditions_hold(self):
        for x, y in ((F(1, 3), F(1, 6)), (F(1, 6), F(1, 3)), (F(7, 20), F(1, 20))):
            for cond in circulant_proof_conditions(x, y, 2, 5):
                assert cond.holds, cond.description

    def test_hypothesis_violations(self):
        with pytest.raises(ConstructionError, match="b\\*x/a"):
            circulant_witness(F(1, 2), F(1, 2), 2, 5)
        with pytest.raises(ConstructionError, match="a/b"):
            circulant_witness(F(1, 10), F(1, 10), 3, 5)
        # both side conditions fail: 2y > x and 2x > y
        with pytest.raises(ConstructionError, match="a\\*y <= x or a\\*x <= y"):
            circulant_witness(F(1, 4), F(1, 5), 2, 5)

    def test_other_ratios(self):
        w = circulant_witness(F(1, 5), F(1, 10), 1, 3)
        assert w.z == F(1, 3) and w.strict
        w = circulant_witness(F(1, 4), F(1, 8), 1, 2)
        assert w.z == F(1, 2) and w.strict


class TestExtendPhi:
    def test_reference_chain(self):
        base = interval_witness(3, 1, 1)
        w = extend_phi(base, F(3, 5), F(1, 4), F(3, 4))
        assert w.function.value == "phi"
        assert w.mode is Mode.CONSTRAINED
        assert w.strict and w.reach < F(3, 4)
        # interior level: midpoint of (1/(2 - 1/3), 3/4)
        assert w.reach == F(27, 40)

    def test_base_level_too_high(self):
        base = interval_witness(3, 1, 1)  # reach 1/3
        # (2z-1)/z = 1/3 exactly at z = 3/5: not strictly above the base reach
        with pytest.raises(ConstructionError, match="base reach"):
            extend_phi(base, F(3, 5), F(1, 4), F(3, 5))

    def test_boundary_rejection(self):
        base = interval_witness(3, 1, 1)
        with pytest.raises(ConstructionError, match="x > 1/2"):
            extend_phi(base, F(1, 2), F(1, 4), F(3, 4))
        with pytest.raises(ConstructionError, match="y <= 1/2"):
            extend_phi(base, F(3, 5), F(3, 5), F(3, 4))

    def test_base_mismatch(self):
        base = interval_witness(4, 1, 1)
        with pytest.raises(ConstructionError, match="base mismatch"):
            extend_phi(base, F(3, 5), F(1, 4), F(3, 4))


class TestExtendPsiTop:
    def test_reference_target(self):
        base = interval_witness(5, 3, 1)
        w = extend_psi_top(base, F(2, 3), F(1, 6), F(3, 4))
        assert w.strict and w.reach < F(3, 4)
        assert w.reach == F(43, 60)

    def test_three_fifths_band(self):
        base = interval_witness(4, 1, 1)
        w = extend_psi_top(base, F(1, 2), F(1, 6), F(3, 5))
        assert w.strict and w.reach < F(3, 5)

    def test_condition_failure_names_the_pair(self):
        base = interval_witness(4, 1, 1)
        # x > 1/(2-x') = 4/7 makes the shared lower bound exceed 1-x
        with pytest.raises(ConstructionError) as err:
            extend_psi_top(base, F(3, 5), F(1, 10), F(3, 5))
        assert "(x-x')/(1-x')" in str(err.value) and "1-x" in str(err.value)

    def test_explicit_pq(self):
        base = interval_witness(5, 3, 1)
        # p at the window's lower endpoint: the new C-vertex reaches exactly z
        w = extend_psi_top(base, F(2, 3), F(1, 6), F(3, 4), pq=(F(1, 4), F(1, 6)))
        assert w.reach == F(3, 4) and not w.strict
        w = extend_psi_top(base, F(2, 3), F(1, 6), F(3, 4), pq=(F(7, 24), F(1, 6)))
        assert w.strict and w.reach < F(3, 4)
        with pytest.raises(ConstructionError, match="outside"):
            extend_psi_top(base, F(2, 3), F(1, 6), F(3, 4), pq=(F(1, 2), F(1, 6)))

    def test_requires_psi_base(self):
        base = interval_witness(3, 1, 1)
        phi_base = extend_phi(base, F(3, 5), F(1, 4), F(3, 4))
        with pytest.raises(ConstructionError, match="psi"):
            extend_psi_top(phi_base, F(1, 2), F(1, 6), F(3, 4))


class TestExtendPsiBottom:
    def test_reference_target(self):
        base = interval_witness(4, 1, 1)
        w = extend_psi_bottom(base, F(1, 7), F(1, 2), F(3, 5))
        assert w.strict and w.reach < F(3, 5)
        assert w.reach == F(41, 70)

    def test_base_point_check(self):
        base = interval_witness(4, 1, 1)
        with pytest.raises(ConstructionError, match="base mismatch"):
            extend_psi_bottom(
                base, F(1, 7), F(1, 2), F(3, 5), expected_base_point=(F(1, 5), F(3, 5))
            )

    def test_level_too_low_for_base(self):
        base = interval_witness(4, 1, 1)  # reach 1/4
        # z = 1/2 < 1/(2 - 1/4): the p-window closes
        with pytest.raises(ConstructionError) as err:
            extend_psi_bottom(base, F(1, 8), F(1, 3), F(1, 2))
        assert "1-z" in str(err.value)


def test_two_step_chain_certifies_end_to_end():
    base = interval_witness(4, 1, 1)
    mid = extend_psi_top(base, F(1, 2), F(1, 6), F(2, 3))
    assert mid.strict and mid.reach == F(7, 12)
    top = extend_psi_top(mid, F(1, 2), F(1, 7), F(3, 4))
    assert top.strict and top.reach < F(3, 4)
    assert verify(top.graph, ConstraintParams(F(1, 2), F(1, 7), Mode.BICONSTRAINED)).ok


def test_psi_witness_reach_at_least_x():
    for w in (
        interval_witness(5, 2, 3),
        circulant_witness(F(1, 3), F(1, 6), 2, 5),
        extend_psi_top(interval_witness(5, 3, 1), F(2, 3), F(1, 6), F(3, 4)),
    ):
        assert w.reach >= w.x


def test_save_load_round_trip(tmp_path):
    w = circulant_witness(F(1, 3), F(1, 6), 2, 5)
    path = tmp_path / "w.txt"
    save_witness(w, path)
    loaded = load_witness(path)
    assert loaded.graph == w.graph
    assert (loaded.x, loaded.y, loaded.z, loaded.strict, loaded.reach) == (
        w.x,
        w.y,
        w.z,
        w.strict,
        w.reach,
    )


def test_load_rejects_broken_claim(tmp_path):
    w = interval_witness(3, 1, 1)
    fake = Witness(w.graph, w.function, w.x, w.y, w.z, w.mode, True, w.reach, w.provenance)
    path = tmp_path / "bad.txt"
    save_witness(fake, path)  # claims strict, but reach equals z
    with pytest.raises(CertificationError):
        load_witness(path)


def test_phi_chain_output_serves_as_base():
    first = extend_phi(interval_witness(3, 1, 1), F(3, 5), F(1, 4), F(3, 4))
    # the next derived point lands exactly on the first target
    second = extend_phi(first, F(5, 7), F(1, 5), F(4, 5))
    assert second.strict and second.reach < F(4, 5)
    assert verify(second.graph, ConstraintParams(F(5, 7), F(1, 5), Mode.CONSTRAINED)).ok
