import math
from fractions import Fraction

import numpy as np
import pytest

from cantorsum.digitset import DigitSet, sumset_profile
from cantorsum.oracle import level_set
from cantorsum.structure import (
    NotApplicableError,
    StructureCase,
    cantor_sum_dimension,
    classify_structure,
    _children,
    _seed_states,
)

from conftest import canonical_sets, feasible_oracle_depth


class TestTrichotomyExamples:
    def test_steinhaus_full_interval(self):
        rep = classify_structure(DigitSet.of(3, [0, 2]))
        assert rep.case is StructureCase.FULL_INTERVAL
        assert rep.gap_witness is None
        assert rep.interval_witness == (Fraction(0), Fraction(2))

    def test_two_digits_cantor(self):
        rep = classify_structure(DigitSet.of(4, [0, 3]))
        assert rep.case is StructureCase.CANTOR_SET
        assert rep.gap_witness is not None
        assert rep.interval_witness is None

    def test_mixed_example(self):
        rep = classify_structure(DigitSet.of(5, [0, 1, 4]))
        assert rep.case is StructureCase.MIXED
        lo, hi = rep.gap_witness
        assert lo <= Fraction(7, 5) and Fraction(8, 5) <= hi
        ilo, ihi = rep.interval_witness
        assert Fraction(1) <= ilo and ihi <= Fraction(5, 4)
        assert rep.points_dim_lower_bound == pytest.approx(
            math.log(2) / math.log(5), abs=1e-12
        )

    def test_json_witnesses(self):
        rep = classify_structure(DigitSet.of(5, [0, 1, 4]))
        obj = rep.to_json_dict()
        assert obj["case"] == "Mixed"
        assert obj["gap_witness"]["lo"] == {"num": 7, "den": 5}
        assert obj["gap_witness"]["hi"] == {"num": 8, "den": 5}

    def test_rejects_general_mode(self):
        with pytest.raises(ValueError):
            classify_structure(DigitSet.of(5, [0, 1, 7, 8]))


class TestTrichotomyExhaustive:
    def test_exclusive_and_matches_goodness(self):
        seen = {case: 0 for case in StructureCase}
        for n in range(3, 13):
            for A in canonical_sets(n):
                profile = sumset_profile(A)
                rep = classify_structure(A, profile=profile)
                seen[rep.case] += 1
                good = bool(np.all(profile.gaps <= 2))
                assert (rep.case is StructureCase.FULL_INTERVAL) == good
                if rep.case is StructureCase.MIXED:
                    assert rep.gap_witness and rep.interval_witness
                    assert rep.points_dim_lower_bound >= math.log(2) / math.log(n) - 1e-12
                if rep.case is StructureCase.CANTOR_SET:
                    assert rep.interval_witness is None
        # all three cases actually occur in the sweep
        assert all(v > 0 for v in seen.values())


class TestWitnessesAgainstOracle:
    @pytest.mark.parametrize("n,digits", [(5, (0, 1, 4)), (7, (0, 1, 2, 6)),
                                          (7, (0, 3, 4, 6))])
    def test_mixed_witnesses_hold_at_depth(self, n, digits):
        A = DigitSet(n, digits)
        rep = classify_structure(A)
        if rep.case is not StructureCase.MIXED:
            pytest.skip("not a mixed instance")
        for m in range(1, feasible_oracle_depth(A, 8) + 1):
            ls = level_set(A, m)
            assert ls.misses_open_interval(*rep.gap_witness), m
            assert ls.covers_interval(*rep.interval_witness), m

    def test_witness_self_similarity(self):
        # pushing a witness through x -> (x + 2n-2)/n lands on another one
        A = DigitSet.of(5, [0, 1, 4])
        rep = classify_structure(A)
        glo, ghi = rep.gap_witness
        ilo, ihi = rep.interval_witness
        ls = level_set(A, 6)
        for _ in range(3):
            glo, ghi = (glo + 8) / 5, (ghi + 8) / 5
            ilo, ihi = (ilo + 8) / 5, (ihi + 8) / 5
            assert ls.misses_open_interval(glo, ghi)
            assert ls.covers_interval(ilo, ihi)

    def test_cantor_cases_never_fill_a_unit(self):
        # depth-6 unit fully surviving to depth 8 would refute the verdict
        checked = 0
        for n in range(4, 9):
            for A in canonical_sets(n):
                rep = classify_structure(A)
                if rep.case is not StructureCase.CANTOR_SET:
                    continue
                if feasible_oracle_depth(A, 8) < 8:
                    continue
                ls = level_set(A, 8)
                unit = n**2
                for lo, hi in ls.components:
                    assert hi // unit - (-(-lo // unit)) < 1, (A, lo, hi)
                checked += 1
        assert checked > 10


class TestCantorDimension:
    def test_exact_cases(self):
        for n, digits, expect in [
            (5, [0, 4], math.log(3) / math.log(5)),
            (4, [0, 3], math.log(3) / math.log(4)),
            (9, [0, 8], math.log(3) / math.log(9)),
        ]:
            cd = cantor_sum_dimension(DigitSet.of(n, digits))
            assert cd.exact
            assert float(cd) == pytest.approx(expect, abs=1e-12)
        assert cantor_sum_dimension(DigitSet.of(9, [0, 8])).value == pytest.approx(0.5)

    def test_bracket_case_agrees_with_transfer_matrix(self):
        # overlapping images: box-count bracket vs an independent
        # spectral computation on the covering automaton
        A = DigitSet(6, (0, 1, 5))
        cd = cantor_sum_dimension(A, depth=8)
        assert not cd.exact
        assert cd.lower <= cd.value <= cd.upper
        assert cd.width < 0.05
        profile = sumset_profile(A)
        B = frozenset(int(x) for x in profile.support)
        states = [(True, False), (False, True), (True, True)]
        T = np.zeros((3, 3))
        for i, s in enumerate(states):
            for child in _children(s, B, 6):
                if child in states:
                    T[i][states.index(child)] += 1
        rho = max(abs(np.linalg.eigvals(T)))
        truth = math.log(rho) / math.log(6)
        # upper is certified for box dimension; lower is an empirical
        # floor, so allow it a hair of slack
        assert truth <= cd.upper + 1e-9
        assert cd.lower - 1e-3 <= truth
        assert cd.value == pytest.approx(truth, abs=1e-3)

    def test_not_applicable(self):
        with pytest.raises(NotApplicableError):
            cantor_sum_dimension(DigitSet.of(3, [0, 2]))
        with pytest.raises(NotApplicableError):
            cantor_sum_dimension(DigitSet.of(5, [0, 1, 4]))


class TestAutomatonInternals:
    def test_seeding_matches_membership(self):
        A = DigitSet.of(5, [0, 1, 4])
        B = frozenset(int(x) for x in sumset_profile(A).support)
        seeds = _seed_states(B, 5)
        assert seeds[0] == (True, False)
        assert seeds[7] == (False, False)  # the gap unit
        assert seeds[5] == (True, True)

    def test_dead_state_absorbs(self):
        B = frozenset([0, 3, 6])
        assert all(c == (False, False) for c in _children((False, False), B, 4))
