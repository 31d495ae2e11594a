import random

import pytest

pytestmark = pytest.mark.filterwarnings("ignore::stonelab.errors.LintWarning")

from stonelab import FiniteBooleanAlgebra, LintWarning, ValidationError
from stonelab.families import (
    Member,
    PointSet,
    SeparatingFamily,
    family_from_elements,
    family_from_sets,
    is_point_finite,
    is_t0_separating,
    order_at,
    order_profile,
    point_finiteness_bound,
    selection_value,
)


def fam(size, sets):
    return family_from_sets(PointSet(size), sets)


def singletons(n):
    return fam(n, [1 << i for i in range(n)])


class TestOrd:
    def test_direct_count(self):
        f = fam(4, [{0, 1}, {1, 2}, {2, 3}])
        assert order_at(f, 1) == 2

    def test_empty_family(self):
        f = fam(3, [])
        for x in range(3):
            assert order_at(f, x) == 0

    def test_singletons(self):
        assert order_at(singletons(4), 2) == 1

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            order_at(singletons(3), 3)

    def test_monotone_under_member_addition(self):
        rng = random.Random(5)
        for _ in range(100):
            n = rng.randint(1, 10)
            sets = [rng.randrange(1 << n) for _ in range(rng.randint(0, 6))]
            before = order_profile(fam(n, sets)).per_point
            after = order_profile(fam(n, sets + [rng.randrange(1 << n)])).per_point
            assert all(b <= a for b, a in zip(before, after))


class TestT0:
    def test_singletons_separate(self):
        res = is_t0_separating(singletons(5))
        assert res.separating and res.witness is None

    def test_failure_with_witness(self):
        res = is_t0_separating(fam(3, [{0, 1}]))
        assert not res.separating
        assert res.witness == (0, 1)

    def test_two_singletons_over_three(self):
        # point 2 carries the empty pattern, still separated from 0 and 1
        assert is_t0_separating(fam(3, [{0}, {1}])).separating

    def test_singleton_family_every_n(self):
        for n in range(1, 12):
            f = singletons(n)
            assert is_t0_separating(f).separating
            assert order_profile(f).max_order == 1


class TestOrderProfile:
    def test_singletons(self):
        prof = order_profile(singletons(4))
        assert prof.per_point == (1, 1, 1, 1)
        assert prof.max_order == 1
        assert prof.argmax_points == (0, 1, 2, 3)

    def test_chain_upsets(self):
        f = fam(3, [{0, 1, 2}, {1, 2}, {2}])
        prof = order_profile(f)
        assert prof.per_point == (1, 2, 3)
        assert prof.max_order == 3
        assert prof.argmax_points == (2,)

    def test_empty(self):
        prof = order_profile(fam(3, []))
        assert prof.per_point == (0, 0, 0)
        assert prof.max_order == 0


class TestSelectionValue:
    def test_singletons_value_one(self):
        B = FiniteBooleanAlgebra(4)
        value, witness = selection_value(B, B.singletons())
        assert value == 1
        assert witness.atom == 0

    def test_chain_interval_generators(self):
        B = FiniteBooleanAlgebra(3)
        tails = [B.element({a for a in range(i, 3)}) for i in range(3)]
        value, witness = selection_value(B, tails)
        assert value == 3
        assert witness.atom == 2

    def test_constant_one_generator(self):
        B = FiniteBooleanAlgebra(5)
        with pytest.warns(LintWarning):
            value, _ = selection_value(B, [B.one])
        assert value == 1

    def test_matches_order_profile_max(self):
        rng = random.Random(9)
        for _ in range(200):
            n = rng.randint(1, 9)
            B = FiniteBooleanAlgebra(n)
            gens = [B.element(rng.randrange(1 << n)) for _ in range(rng.randint(1, 7))]
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                value, witness = selection_value(B, gens)
                prof = order_profile(family_from_elements(B, gens))
            assert value == prof.max_order
            assert prof.per_point[witness.atom] == value


class TestPointFiniteness:
    def test_singletons(self):
        assert point_finiteness_bound(singletons(6)) == 1

    def test_all_subsets_n3(self):
        f = fam(3, list(range(8)))
        assert point_finiteness_bound(f) == 4  # each point lies in 2^(n-1) members

    def test_empty(self):
        assert point_finiteness_bound(fam(4, [])) == 0

    def test_always_point_finite(self):
        with pytest.warns(LintWarning):
            f = fam(3, [7, 7, 7])
        assert is_point_finite(f)


class TestLint:
    def test_duplicates_flagged(self):
        pts = PointSet(3)
        with pytest.warns(LintWarning):
            f = SeparatingFamily(pts, (Member("a", 3), Member("b", 3)))
        # multiset semantics: duplicates count multiply
        assert order_at(f, 0) == 2

    def test_labels_preserved(self):
        f = family_from_sets(PointSet(2, ("p", "q")), [{0}], prefix="W")
        assert f.members[0].label == "W0"
        assert f.points.label(1) == "q"


def test_point_set_validation():
    with pytest.raises(ValidationError):
        PointSet(0)
    with pytest.raises(ValidationError):
        PointSet(2, ("only-one",))
    with pytest.raises(ValidationError):
        SeparatingFamily(PointSet(2), (Member("m", 0b100),))
