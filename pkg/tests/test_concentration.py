"""Concentration verdicts, the h^1_ur ledger, and threshold arithmetic."""
from fractions import Fraction

import pytest

from tamecount import (abelian_normal_subgroups, classify, direct_product_condition,
                       h1ur_chain, weight_conductor_d4, weight_custom,
                       weight_discriminant, weight_product_ramified,
                       wreath_theta_bound, wreath_theta_from_params)
from tamecount.concentration import (FITTING_CONCENTRATED, FITTING_NILPOTENT,
                                     STATUS_CONCENTRATED, STATUS_NOT, STATUS_PROPER,
                                     abelian_invariants, analysis_witnesses)
from tamecount.errors import (ContractViolationError, UnsupportedHypothesisError,
                              ValidationError)
from tamecount.perm import PermutationGroup, subgroup_generated
from tamecount.ramtypes import tame_types


def cyclic(n, cap=100_000):
    return PermutationGroup(n, [tuple(range(2, n + 1)) + (1,)], name=f"C{n}",
                            element_cap=cap)


class TestAbelianNormalSubgroups:
    def test_d4_has_four(self, d4_quartic):
        subs = abelian_normal_subgroups(d4_quartic.group)
        assert sorted(len(s) for s in subs) == [2, 4, 4, 4]

    def test_q8c2_includes_the_three_order_four(self, q8c2_deg8, cyc_q):
        G = q8c2_deg8.group
        types = {t.label: t for t in q8c2_deg8.types(cyc_q)}
        subs = abelian_normal_subgroups(G)
        for lab in ("2B", "2C", "2D"):
            T = subgroup_generated(G, types[lab].members)
            assert len(T) == 4 and T in subs

    def test_cp_has_none(self):
        assert abelian_normal_subgroups(cyclic(5)) == []


class TestClassify:
    def test_d4_quartic_concentrated_in_tc(self, d4_quartic, d4_types):
        wt = weight_discriminant(d4_types, 4)
        v = classify(d4_quartic.group, wt, d4_types)
        assert v.status == STATUS_CONCENTRATED
        assert v.fitting_status == FITTING_NILPOTENT
        assert len(v.witnesses) == 1 and len(v.witnesses[0]) == 4
        tc = next(t for t in d4_types if t.label == "2C")
        assert tc.members <= v.witnesses[0]

    def test_d4_conductor_properly_semiconcentrated(self, d4_quartic, d4_types):
        wt = weight_conductor_d4(d4_types)
        v = classify(d4_quartic.group, wt, d4_types)
        assert v.status == STATUS_PROPER
        assert len(v.witnesses) == 2

    def test_c2_not_semiconcentrated(self, cyc_q):
        G = cyclic(2)
        types = tame_types(G, cyc_q)
        wt = weight_discriminant(types, 2)
        v = classify(G, wt, types)
        assert v.status == STATUS_NOT and v.witnesses == ()

    def test_s3_transpositions_break_semiconcentration(self, cyc_q):
        # min-index elements of 3T2 are the transpositions, which generate
        S3 = PermutationGroup(3, ["(1,2,3)", "(1,2)"], name="S3")
        types = tame_types(S3, cyc_q)
        for wt in (weight_discriminant(types, 3), weight_product_ramified(types)):
            v = classify(S3, wt, types)
            assert v.status == STATUS_NOT

    def test_a4_fitting_branch(self, cyc_q):
        # weight the 3-cycles heavily: the minimum sits inside V4 = Fitting(A4)
        A4 = PermutationGroup(4, ["(1,2,3)", "(1,2)(3,4)"], name="A4")
        types = tame_types(A4, cyc_q)
        table = {t.label: (Fraction(1) if t.order == 2 else Fraction(5)) for t in types}
        wt = weight_custom(table, types)
        v = classify(A4, wt, types)
        assert v.status == STATUS_CONCENTRATED
        assert v.fitting_status == FITTING_CONCENTRATED
        assert len(v.witnesses) == 1 and len(v.witnesses[0]) == 4

    def test_hexagonal_dihedral_nonabelian_concentration(self, cyc_q):
        # vertex reflections are minimal and generate the S3 copy: concentrated,
        # but no abelian normal subgroup covers them and Fitting = C6 misses them
        from tamecount.concentration import FITTING_NEITHER
        D6 = PermutationGroup(6, ["(1,2,3,4,5,6)", "(2,6)(3,5)"], name="D6hex")
        types = tame_types(D6, cyc_q)
        wt = weight_discriminant(types, 6)
        v = classify(D6, wt, types)
        assert v.status == STATUS_CONCENTRATED
        assert v.witnesses == ()
        assert v.fitting_status == FITTING_NEITHER

    def test_scaling_invariance(self, d4_quartic, d4_types):
        wt = weight_discriminant(d4_types, 4)
        scaled = weight_custom({lab: 7 * w for lab, w in wt.weights.items()}, d4_types)
        assert (classify(d4_quartic.group, wt, d4_types).status
                == classify(d4_quartic.group, scaled, d4_types).status)

    def test_nonminimum_perturbation_invariance(self, d4_quartic, d4_types):
        wt = weight_discriminant(d4_types, 4)
        bumped = dict(wt.weights)
        bumped["4A"] += Fraction(5, 3)
        bumped["2B"] += Fraction(1, 7)
        v1 = classify(d4_quartic.group, wt, d4_types)
        v2 = classify(d4_quartic.group, weight_custom(bumped, d4_types), d4_types)
        assert v1.status == v2.status and v1.witnesses == v2.witnesses

    def test_nilpotent_noncyclic_semiconcentrated(self, cyc_q):
        # every noncyclic nilpotent group is a union of proper normal subgroups
        from tamecount.perm import is_nilpotent, wreath_product
        groups = [PermutationGroup(4, ["(1,2,3,4)", "(1,3)"]),
                  wreath_product(cyclic(2), cyclic(2)),
                  PermutationGroup(4, ["(1,2)", "(3,4)"])]  # C2xC2, intransitive
        for G in groups[:2]:
            assert is_nilpotent(G)
            types = tame_types(G, cyc_q)
            wt = weight_discriminant(types, G.degree)
            assert classify(G, wt, types).status != STATUS_NOT


class TestAnalysisWitnesses:
    def test_d4_gets_all_four(self, d4_quartic, d4_types):
        wt = weight_discriminant(d4_types, 4)
        wits = analysis_witnesses(d4_quartic.group, d4_types, wt)
        assert sorted(len(W) for W in wits) == [2, 4, 4, 4]

    def test_16t11_covers_minimum_types(self, q8c2_deg16, t16_types):
        wt = weight_discriminant(t16_types, 16)
        wits = analysis_witnesses(q8c2_deg16.group, t16_types, wt)
        covered = set()
        for W in wits:
            covered |= W
        for t in t16_types:
            if wt(t) == 8:
                assert t.members <= covered

    def test_uncoverable_minimum_rejected(self, cyc_q):
        S3 = PermutationGroup(3, ["(1,2,3)", "(1,2)"], name="S3")
        types = tame_types(S3, cyc_q)
        wt = weight_product_ramified(types)
        with pytest.raises(ValidationError):
            analysis_witnesses(S3, types, wt)


class TestH1urChain:
    def test_central_single_layer(self, d4_quartic):
        G = d4_quartic.group
        Z = {g for g in G.elements if all(g * h == h * g for h in G.elements)}
        T = subgroup_generated(G, Z)
        chain = h1ur_chain(G, T, T)
        assert chain == [(2, (2,))]

    def test_q8c2_full_chain(self, q8c2_deg8):
        G = q8c2_deg8.group
        N = G.element_set()
        # T_B is abelian normal of order 4 meeting the center in order 2
        from tamecount.ramtypes import tame_types, CyclotomicProfile
        types = {t.label: t for t in tame_types(G, CyclotomicProfile.full_q())}
        T = subgroup_generated(G, types["2B"].members)
        chain = h1ur_chain(G, N, T)
        orders = [order for order, _ in chain]
        prod = 1
        for o in orders:
            prod *= o
        assert prod == len(T) == 4

    def test_quaternion_subgroup_chain(self, q8c2_deg8, cyc_q):
        # N = the Q8 inside the semidirect product, T = its center <2A>
        G = q8c2_deg8.group
        types = {t.label: t for t in tame_types(G, cyc_q)}
        N = subgroup_generated(G, types["4B"].members | types["4C"].members)
        assert len(N) == 8
        T = subgroup_generated(G, types["2A"].members)
        chain = h1ur_chain(G, N, T)
        prod = 1
        for order, _ in chain:
            prod *= order
        assert prod == len(T) == 2
        assert chain == [(2, (2,))]

    def test_layer_orders_multiply_catalog_sweep(self, d4_quartic, q8c2_deg8):
        for G in (d4_quartic.group, q8c2_deg8.group):
            N = G.element_set()
            for T in abelian_normal_subgroups(G):
                chain = h1ur_chain(G, N, T)
                prod = 1
                for order, _ in chain:
                    prod *= order
                assert prod == len(T)

    def test_hypercenter_containment_enforced(self, cyc_q):
        from tamecount.perm import parse_permutation
        S3 = PermutationGroup(3, ["(1,2,3)", "(1,2)"], name="S3")
        A3 = subgroup_generated(S3, [parse_permutation("(1,2,3)", 3)])
        # N = A3 has hypercenter A3 (abelian); T = A3 fine
        assert h1ur_chain(S3, A3, A3) == [(3, (3,))]
        # but T = A3 inside N = S3 fails: hypercenter of S3 is trivial
        with pytest.raises(ContractViolationError, match="hypercenter"):
            h1ur_chain(S3, S3.element_set(), A3)

    def test_abelian_invariants(self, q8c2_deg8):
        G = q8c2_deg8.group
        for T in abelian_normal_subgroups(G):
            inv = abelian_invariants(G, T)
            prod = 1
            for d in inv:
                prod *= d
            assert prod == len(T)


class TestWreathTheta:
    def test_8t4_shape(self, d4_octic, octic_types):
        G = d4_octic.group
        by_label = {t.label: t for t in octic_types}
        wits = [subgroup_generated(G, by_label["2B"].members),
                subgroup_generated(G, by_label["2C"].members)]
        for m in (1, 2, 3, 5):
            for d in (1, 2, 3):
                assert wreath_theta_bound(G, wits, m, d) == 1 + Fraction(1, m * d)

    def test_parameter_shapes(self):
        # the two families of exponent shapes from the wreath theorem
        for m in (1, 2, 4):
            for d in (1, 2):
                assert (wreath_theta_from_params(8, 2, 16, m, d)
                        == 2 + Fraction(2, m * d))
                assert (wreath_theta_from_params(16, 2, 256, m, d)
                        == 4 + Fraction(4, m * d))

    def test_central_order_two_witness(self):
        # n/a = 2 with |T| = 2: 2 - 1/2 + 1/(2 m d)
        assert (wreath_theta_from_params(4, 2, 2, 3, 2)
                == 2 - Fraction(1, 2) + Fraction(1, 12))

    def test_degree_16_order_4_witness(self):
        # n = 16, a = 4, |T| = 4: 4 - 1 + 1/(m d)
        for m, d in ((1, 1), (2, 3), (5, 2)):
            assert (wreath_theta_from_params(16, 4, 4, m, d)
                    == 3 + Fraction(1, m * d))

    def test_non_two_group_refused(self):
        G = PermutationGroup(3, ["(1,2,3)"], name="C3")
        with pytest.raises(UnsupportedHypothesisError):
            wreath_theta_bound(G, [G.element_set()], 2, 1)

    def test_non_power_of_two_witness_size(self):
        with pytest.raises(ValidationError):
            wreath_theta_from_params(8, 2, 12, 1, 1)


class TestDirectProductCondition:
    def test_strict_inequality(self):
        # a_B/m > a_N/n passes; equality fails
        assert direct_product_condition(8, 3, 4, 2).passes       # 2/3 > 1/2
        assert not direct_product_condition(8, 4, 4, 2).passes   # 1/2 = 1/2
        assert not direct_product_condition(8, 5, 4, 1).passes   # 1/5 < 1/2

    def test_cap_exponent(self):
        assert direct_product_condition(8, 3, 4, 2).cap_exponent == Fraction(2, 3)
        assert direct_product_condition(16, 2, 2, 1).cap_exponent == Fraction(4)

    def test_validation(self):
        with pytest.raises(ValidationError):
            direct_product_condition(0, 1, 1, 1)
