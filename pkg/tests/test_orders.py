import random

import pytest

from stonelab import (
    CapExceededError,
    FiniteBooleanAlgebra,
    FinitePoset,
    MeetSemilattice,
    ValidationError,
    discrete_witness,
    filters,
    final_segments,
    generated_subalgebra,
    generator_orientation,
    modest_analysis,
    poset_system,
    prime_clopen_filters,
    semilattice_system,
)
from stonelab.families import is_t0_separating
from stonelab.oracles import posets_up_to_iso, upsets_bruteforce
from stonelab.orders import compact_elements_by_sup, compact_elements_clopen, generator_mask


class TestPosetValidation:
    def test_not_transitive(self):
        with pytest.raises(ValidationError):
            FinitePoset((0b011, 0b110, 0b100))

    def test_not_antisymmetric(self):
        with pytest.raises(ValidationError):
            FinitePoset((0b11, 0b11))

    def test_not_reflexive(self):
        with pytest.raises(ValidationError):
            FinitePoset((0b10, 0b10))

    def test_from_pairs_closure(self):
        P = FinitePoset.from_pairs(3, [(0, 1), (1, 2)])
        assert P.leq(0, 2)

    def test_from_pairs_cycle_rejected(self):
        with pytest.raises(ValidationError):
            FinitePoset.from_pairs(2, [(0, 1), (1, 0)])


class TestFinalSegments:
    def test_antichain_two(self):
        assert final_segments(FinitePoset.antichain(2)).size == 4

    def test_chain_three_exact(self):
        L = final_segments(FinitePoset.chain(3))
        assert L.segments == (0b000, 0b100, 0b110, 0b111)

    def test_single_point(self):
        assert final_segments(FinitePoset.antichain(1)).size == 2

    def test_chain_counts(self):
        for n in range(1, 9):
            assert final_segments(FinitePoset.chain(n)).size == n + 1

    def test_matches_bruteforce_all_small_posets(self):
        for n in range(1, 5):
            for up in posets_up_to_iso(n):
                P = FinitePoset(up)
                L = final_segments(P)
                assert set(L.segments) == upsets_bruteforce(n, P.up)

    def test_matches_bruteforce_random(self):
        rng = random.Random(13)
        for _ in range(50):
            n = rng.randint(1, 7)
            pairs = [
                (rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, n))
            ]
            try:
                P = FinitePoset.from_pairs(n, pairs)
            except ValidationError:
                continue  # random pairs may create cycles
            L = final_segments(P)
            assert set(L.segments) == upsets_bruteforce(n, P.up)

    def test_closed_under_union_intersection(self):
        for n in range(1, 5):
            for up in posets_up_to_iso(n):
                L = final_segments(FinitePoset(up))
                segs = set(L.segments)
                for a in segs:
                    for b in segs:
                        assert a | b in segs and a & b in segs

    def test_cap(self):
        with pytest.raises(CapExceededError):
            final_segments(FinitePoset.antichain(5), cap=4)


class TestPosetSystem:
    def test_chain_two(self):
        sys_ = poset_system(final_segments(FinitePoset.chain(2)))
        assert sys_.points.size == 3
        sets = [m.bits for m in sys_.family.members]
        assert len(sets) == 2
        assert sets[0] & sets[1] in sets  # nested
        assert is_t0_separating(sys_.family).separating

    def test_antichain_two(self):
        sys_ = poset_system(final_segments(FinitePoset.antichain(2)))
        assert sys_.points.size == 4
        assert sys_.family.size == 2
        assert is_t0_separating(sys_.family).separating

    def test_single_point(self):
        sys_ = poset_system(final_segments(FinitePoset.antichain(1)))
        assert sys_.points.size == 2
        assert sys_.family.size == 1
        assert is_t0_separating(sys_.family).separating

    def test_duality_round_trip(self):
        # the generated subalgebra over the FS points is the full powerset
        for n in range(1, 5):
            for up in posets_up_to_iso(n):
                L = final_segments(FinitePoset(up))
                B = FiniteBooleanAlgebra(L.size)
                gens = [B.element(generator_mask(L, p)) for p in range(n)]
                assert generated_subalgebra(B, gens).is_full()

    def test_orientation_is_preserving(self):
        # p <= q iff a_p subset a_q; exactly one orientation on chains
        L = final_segments(FinitePoset.chain(2))
        assert generator_orientation(L) == "preserving"
        for n in range(1, 5):
            for up in posets_up_to_iso(n):
                L = final_segments(FinitePoset(up))
                assert generator_orientation(L) in ("preserving", "degenerate")


class TestPrimeFilters:
    def test_antichain_two(self):
        assert len(prime_clopen_filters(final_segments(FinitePoset.antichain(2)))) == 2

    def test_chain_three(self):
        assert len(prime_clopen_filters(final_segments(FinitePoset.chain(3)))) == 3

    def test_single_point(self):
        assert len(prime_clopen_filters(final_segments(FinitePoset.antichain(1)))) == 1

    def test_minima_are_principal_segments(self):
        for n in range(1, 5):
            for up in posets_up_to_iso(n):
                P = FinitePoset(up)
                L = final_segments(P)
                for pf in prime_clopen_filters(L):
                    assert L.segments[pf.minimum_index] == P.up[pf.poset_element]


class TestDiscreteWitness:
    def test_chain_middle(self):
        w = discrete_witness(FinitePoset.chain(3), 1)
        assert w.tau == (0,)

    def test_antichain(self):
        w = discrete_witness(FinitePoset.antichain(2), 0)
        assert w.tau == ()  # minimal equivalent of {b}: nothing below a

    def test_single_point(self):
        assert discrete_witness(FinitePoset.antichain(1), 0).tau == ()

    def test_isolation_via_segment_slab(self):
        # cross-check in FS(P): the slab contains min(a_q) only for q = p
        for n in range(1, 5):
            for up in posets_up_to_iso(n):
                P = FinitePoset(up)
                L = final_segments(P)
                for p in range(n):
                    tau = discrete_witness(P, p).tau
                    tau_mask = sum(1 << t for t in tau)
                    slab = [
                        seg
                        for seg in L.segments
                        if seg >> p & 1 and seg & tau_mask == 0
                    ]
                    hits = [q for q in range(n) if P.up[q] in slab]
                    assert hits == [p]


class TestMeetSemilattice:
    def test_validation(self):
        with pytest.raises(ValidationError):
            MeetSemilattice([[0, 0], [0, 0]])  # not idempotent at 1
        with pytest.raises(ValidationError):
            MeetSemilattice([[0, 1], [0, 1]])  # not commutative

    def test_chain_filters(self):
        L = filters(MeetSemilattice.chain(3))
        assert L.size == 4
        assert L.filters == (0b000, 0b100, 0b110, 0b111)

    def test_two_element_with_bottom(self):
        assert filters(MeetSemilattice.chain(2)).size == 3

    def test_single_element(self):
        assert filters(MeetSemilattice.chain(1)).size == 2

    def test_antichain_with_bottom(self):
        M = MeetSemilattice.antichain_with_bottom(2)
        L = filters(M)
        # empty, two principal atoms, principal bottom (= everything)
        assert L.size == 4

    def test_filters_are_principal_plus_empty(self):
        rng = random.Random(29)
        for n in range(1, 6):
            M = MeetSemilattice.chain(n)
            L = filters(M)
            expected = {0} | {M.up_mask(i) for i in range(n)}
            assert set(L.filters) == expected

    def test_system_t0(self):
        for M in (MeetSemilattice.chain(4), MeetSemilattice.antichain_with_bottom(3)):
            sys_ = semilattice_system(filters(M))
            assert is_t0_separating(sys_.family).separating


class TestModest:
    def test_filters_of_three_chain(self):
        L = filters(MeetSemilattice.chain(3))  # a 4-chain
        rep = modest_analysis(L)
        assert len(rep.compact_elements) == 3
        assert rep.witness_point == L.size - 1  # top
        assert rep.witness_compact_below == 3
        assert rep.witness_family_order == 3
        assert rep.is_modest
        assert rep.sup_definition_agrees

    def test_two_chain(self):
        L = filters(MeetSemilattice.chain(1))  # {empty, {0}}
        rep = modest_analysis(L)
        assert len(rep.compact_elements) == 1
        assert rep.witness_compact_below == 1

    def test_antichain_with_bottom(self):
        M = MeetSemilattice.antichain_with_bottom(2)
        L = filters(M)
        rep = modest_analysis(L)
        # four filters: empty, up(1), up(2), up(0)=everything
        assert len(rep.compact_elements) == 3
        assert rep.max_elements == (L.size - 1,)
        # chain-style counts by enumeration
        assert rep.witness_compact_below == sum(
            1
            for a in rep.compact_elements
            if L.filters[a] & ~L.filters[rep.witness_point] == 0
        )

    def test_clopen_family_is_separating(self):
        for M in (MeetSemilattice.chain(3), MeetSemilattice.antichain_with_bottom(3)):
            rep = modest_analysis(filters(M))
            assert is_t0_separating(rep.clopen_filter_family).separating

    def test_compact_cross_check(self):
        for M in (MeetSemilattice.chain(4), MeetSemilattice.antichain_with_bottom(2)):
            L = filters(M)
            assert compact_elements_by_sup(L) == compact_elements_clopen(L)

    def test_immediate_predecessors_of_chain(self):
        L = filters(MeetSemilattice.chain(4))
        rep = modest_analysis(L)
        assert rep.immediate_predecessor_counts == (1, 1, 1, 1)
