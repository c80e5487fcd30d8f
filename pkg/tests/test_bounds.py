from fractions import Fraction as F

import pytest

from entitled_cuts.bounds import (
    feasible_with_k_cuts,
    gen_lower_bound_instance,
    instance_digest,
    min_cuts,
)
from entitled_cuts.errors import BudgetExceeded, NotFoundWithin
from entitled_cuts.generate import random_instance
from entitled_cuts.model import ZERO, measure_of
from entitled_cuts.verifier import verify_allocation

from conftest import make_instance


class TestLowerBoundFamily:
    def test_two_agents(self):
        inst = gen_lower_bound_instance(2)
        assert inst.entitlements == (F(11, 20), F(9, 20))
        assert inst.valuations[0].breakpoints == (F(0), F(1, 3), F(2, 3), F(1))
        assert inst.valuations[0].densities[1] == ZERO  # middle cell empty for agent 1
        assert inst.valuations[1].densities[0] == ZERO
        assert inst.valuations[1].densities[1] > ZERO

    def test_three_agents(self):
        inst = gen_lower_bound_instance(3)
        assert inst.entitlements == (F(7, 10), F(3, 20), F(3, 20))
        assert len(inst.valuations[0].densities) == 5
        # agent 1 on odd cells (1-indexed), agents 2..3 on cells 2 and 4
        assert [d > ZERO for d in inst.valuations[0].densities] == [True, False, True, False, True]
        assert [d > ZERO for d in inst.valuations[1].densities] == [False, True, False, False, False]
        assert [d > ZERO for d in inst.valuations[2].densities] == [False, False, False, True, False]

    @pytest.mark.parametrize("n", range(2, 9))
    def test_entitlements_sum_to_one(self, n):
        # Instance construction enforces the sum; also pin the formulas
        inst = gen_lower_bound_instance(n)
        assert inst.entitlements[0] == F(10 * n - 9, 10 * n)
        assert set(inst.entitlements[1:]) == {F(9, 10 * n * (n - 1))}

    def test_needs_two_agents(self):
        with pytest.raises(ValueError):
            gen_lower_bound_instance(1)


class TestOracle:
    def test_single_cut_cannot_serve_the_family(self):
        cert = feasible_with_k_cuts(gen_lower_bound_instance(2), 1)
        assert not cert.feasible
        assert cert.allocation is None
        assert cert.systems_examined > 0

    def test_two_cuts_suffice_with_verified_witness(self):
        inst = gen_lower_bound_instance(2)
        cert = feasible_with_k_cuts(inst, 2)
        assert cert.feasible
        report = verify_allocation(inst, cert.allocation)
        assert report.passed and report.cut_count <= 2

    def test_single_agent_zero_cuts(self, uniform):
        cert = feasible_with_k_cuts(make_instance([uniform], [1]), 0)
        assert cert.feasible
        assert measure_of(uniform, cert.allocation.pieces[0]) == 1

    def test_zero_cuts_infeasible_for_two_agents(self, uniform):
        cert = feasible_with_k_cuts(make_instance([uniform, uniform], ["1/2", "1/2"]), 0)
        assert not cert.feasible

    def test_budget_exceeded_is_loud(self):
        with pytest.raises(BudgetExceeded):
            feasible_with_k_cuts(gen_lower_bound_instance(3), 4, budget=10)

    def test_certificate_digest_tracks_instance(self, uniform):
        a = gen_lower_bound_instance(2)
        b = gen_lower_bound_instance(3)
        assert instance_digest(a) != instance_digest(b)
        assert feasible_with_k_cuts(a, 2).instance_digest == instance_digest(a)

    def test_monotone_in_k(self):
        for seed in range(4):
            inst = random_instance(2, 300 + seed, max_cells=2, denom_bound=6)
            found = min_cuts(inst, 3)
            assert feasible_with_k_cuts(inst, found + 1).feasible

    def test_adjacency_pruning_preserves_decisions(self):
        # differential guard for the optional symmetry pruning
        cases = [random_instance(2, s, max_cells=2, denom_bound=6) for s in range(3)]
        cases += [random_instance(3, s, max_cells=2, denom_bound=6) for s in range(2)]
        cases.append(gen_lower_bound_instance(2))
        for inst in cases:
            for k in range(0, 3):
                pruned = feasible_with_k_cuts(inst, k, prune_adjacent=True)
                full = feasible_with_k_cuts(inst, k, prune_adjacent=False)
                assert pruned.feasible == full.feasible, (instance_digest(inst), k)

    def test_deterministic_certificates(self):
        inst = gen_lower_bound_instance(2)
        assert feasible_with_k_cuts(inst, 2) == feasible_with_k_cuts(inst, 2)


class TestMinCuts:
    def test_lower_bound_two_agents(self):
        assert min_cuts(gen_lower_bound_instance(2), 4) == 2

    def test_single_agent(self, uniform):
        assert min_cuts(make_instance([uniform], [1]), 2) == 0

    def test_not_found_within(self):
        with pytest.raises(NotFoundWithin) as info:
            min_cuts(gen_lower_bound_instance(2), 1)
        assert info.value.k_max == 1

    def test_never_beats_protocol_cut_counts(self):
        from entitled_cuts.protocols import recursive_divide

        for seed in range(3):
            inst = random_instance(2, 600 + seed, max_cells=2, denom_bound=6)
            achieved = len(recursive_divide(inst).cuts)
            assert min_cuts(inst, achieved) <= achieved
