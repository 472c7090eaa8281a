"""Subconvexity matrix entries and the region recipe."""
import random
from fractions import Fraction

import pytest

from tamecount import (absolute_convergence_orthant, build_region, make_profile,
                       subconvexity_matrix)
from tamecount.errors import ContractViolationError, ValidationError
from tamecount.perm import subgroup_generated
from tamecount.regions import SubconvexityProfile, constraint, default_beta
from tamecount.hull_lp import hull_membership
from tamecount import _kernels as K


def canon(expr_pairs):
    """Set of canonicalized (coefficients, bound) pairs for comparison."""
    out = set()
    for coeffs, bound in expr_pairs:
        out.add(constraint(coeffs, bound).canonical())
    return out


@pytest.fixture(scope="module")
def d4_setup(d4_quartic, d4_types, cyc_q):
    G = d4_quartic.group
    by_label = {t.label: t for t in d4_types}
    TB = subgroup_generated(G, by_label["2B"].members)
    TC = subgroup_generated(G, by_label["2C"].members)
    prof = make_profile("burgess-yang", d4_types, cyc_q)
    return G, d4_types, TB, TC, prof


class TestSubconvexityMatrix:
    def test_d4_entry_2b_2c(self, d4_setup, cyc_q):
        G, types, _, _, prof = d4_setup
        M = subconvexity_matrix(G, types, prof, cyc_q)
        assert M[("2B", "2C")] == Fraction(3, 8)
        assert M[("4A", "2C")] == Fraction(3, 8)

    def test_central_column_zero(self, d4_setup, cyc_q):
        G, types, _, _, prof = d4_setup
        M = subconvexity_matrix(G, types, prof, cyc_q)
        assert all(M[(t.label, "2A")] == 0 for t in types)

    def test_lindelof_all_zero(self, d4_setup, cyc_q):
        G, types, _, _, _ = d4_setup
        prof = make_profile("lindelof", types, cyc_q)
        M = subconvexity_matrix(G, types, prof, cyc_q)
        assert all(v == 0 for v in M.values())

    def test_representative_sweep_invariance(self, q8c2_deg8, cyc_q):
        # the matrix entry must not depend on which member of tau acts
        from tamecount.regions import _conjugation_orbit_sorted
        G = q8c2_deg8.group
        types = q8c2_deg8.types(cyc_q)
        prof = make_profile("burgess-yang", types, cyc_q)
        M = subconvexity_matrix(G, types, prof, cyc_q)
        for kappa in types:
            orbit = _conjugation_orbit_sorted(G, kappa.representative)
            pos = {x: i for i, x in enumerate(orbit)}
            for tau in types:
                for rep in tau.members:
                    action = tuple(pos[K.conjugate(rep.images, x)] + 1 for x in orbit)
                    ind = len(orbit) - K.cycle_count(action)
                    entry = prof.alpha_of(kappa.label) * kappa.zeta_degree * ind
                    assert entry == M[(tau.label, kappa.label)]


class TestBuildRegion:
    def test_d4_tc_is_the_six_paper_constraints(self, d4_setup, cyc_q):
        G, types, _, TC, prof = d4_setup
        region = build_region(G, TC, types, prof, cyc_q)
        expected = canon([
            ({"2A": 1}, Fraction(1, 2)),
            ({"2C": 1}, Fraction(1, 2)),
            ({"2B": 1}, 1),
            ({"4A": 1}, 1),
            ({"2B": 1, "2C": Fraction(3, 8)}, Fraction(11, 8)),
            ({"4A": 1, "2C": Fraction(3, 8)}, Fraction(11, 8)),
        ])
        assert region.canonical_constraints() == frozenset(expected)

    def test_d4_tb_symmetric(self, d4_setup, cyc_q):
        G, types, TB, _, prof = d4_setup
        region = build_region(G, TB, types, prof, cyc_q)
        expected = canon([
            ({"2A": 1}, Fraction(1, 2)),
            ({"2B": 1}, Fraction(1, 2)),
            ({"2C": 1}, 1),
            ({"4A": 1}, 1),
            ({"2C": 1, "2B": Fraction(3, 8)}, Fraction(11, 8)),
            ({"4A": 1, "2B": Fraction(3, 8)}, Fraction(11, 8)),
        ])
        assert region.canonical_constraints() == frozenset(expected)

    def test_16t11_tb_has_four_mixed(self, q8c2_deg16, t16_types, cyc_q):
        G = q8c2_deg16.group
        by_label = {t.label: t for t in t16_types}
        TB = subgroup_generated(G, by_label["2B"].members)
        prof = make_profile("burgess-yang", t16_types, cyc_q)
        region = build_region(G, TB, types=t16_types, profile=prof, cyc=cyc_q)
        mixed = {c.canonical() for c in region.mixed_constraints()}
        expected = canon([
            ({"2C": 1, "2B": Fraction(3, 8)}, Fraction(11, 8)),
            ({"2D": 1, "2B": Fraction(3, 8)}, Fraction(11, 8)),
            ({"4C": 1, "2B": Fraction(3, 8)}, Fraction(11, 8)),
            ({"4D": 1, "2B": Fraction(3, 8)}, Fraction(11, 8)),
        ])
        assert mixed == frozenset(expected)
        assert region.pure_lower_bound("2A") == Fraction(1, 2)
        assert region.pure_lower_bound("2B") == Fraction(1, 2)
        for lab in ("2C", "2D", "4A", "4B", "4C", "4D"):
            assert region.pure_lower_bound(lab) == 1

    def test_lindelof_region_is_orthant(self, d4_setup, cyc_q):
        G, types, _, TC, _ = d4_setup
        prof = make_profile("lindelof", types, cyc_q, gamma=Fraction(1, 2))
        region = build_region(G, TC, types, prof, cyc_q)
        assert not region.mixed_constraints()
        assert region.pure_lower_bound("2C") == Fraction(1, 2)
        assert region.pure_lower_bound("2B") == 1

    def test_nonabelian_witness_rejected(self, d4_setup, cyc_q):
        G, types, _, _, prof = d4_setup
        with pytest.raises(ContractViolationError):
            build_region(G, G.element_set(), types, prof, cyc_q)

    def test_non_normal_witness_rejected(self, d4_setup, cyc_q):
        from tamecount.perm import parse_permutation
        G, types, _, _, prof = d4_setup
        H = subgroup_generated(G, [parse_permutation("(1,3)", 4)])
        with pytest.raises(ContractViolationError):
            build_region(G, H, types, prof, cyc_q)

    def test_common_t_type_bound_across_witnesses(self, q8c2_deg16, t16_types, cyc_q):
        # 2A is central, so every witness region gives it the gamma bound
        G = q8c2_deg16.group
        prof = make_profile("burgess-yang", t16_types, cyc_q)
        by_label = {t.label: t for t in t16_types}
        for lab in ("2B", "2C", "2D"):
            T = subgroup_generated(G, by_label[lab].members)
            region = build_region(G, T, t16_types, prof, cyc_q)
            assert region.pure_lower_bound("2A") == Fraction(1, 2)
            assert region.variables == tuple(t.label for t in t16_types)

    def test_alpha_monotonicity(self, d4_setup, cyc_q):
        # smaller alpha -> entrywise smaller M -> implied (superset) region
        G, types, _, TC, _ = d4_setup
        rng = random.Random(5)
        labels = [t.label for t in types]
        for _ in range(20):
            small, large = {}, {}
            for lab in labels:
                lo = Fraction(rng.randint(0, 8), 16)
                hi = lo + Fraction(rng.randint(0, 8), 16)
                small[lab], large[lab] = lo, hi
            p_small = SubconvexityProfile("s", Fraction(1, 2), small, None)
            p_large = SubconvexityProfile("l", Fraction(1, 2), large, None)
            r_small = build_region(G, TC, types, p_small, cyc_q)
            r_large = build_region(G, TC, types, p_large, cyc_q)
            for _ in range(12):
                point = {lab: Fraction(rng.randint(2, 10), 4) for lab in labels}
                if r_large.contains_strict(point):
                    assert r_small.contains_strict(point)

    def test_region_membership_matches_hull_on_single_region(self, d4_setup, cyc_q):
        G, types, _, TC, prof = d4_setup
        region = build_region(G, TC, types, prof, cyc_q)
        rng = random.Random(3)
        for _ in range(15):
            point = {t.label: Fraction(rng.randint(1, 10), 4) for t in types}
            member, _ = hull_membership(point, [region], mode="open")
            assert member == region.contains_strict(point)


class TestAbsoluteConvergence:
    def test_d4_four_constraints(self, d4_types):
        region = absolute_convergence_orthant(d4_types)
        assert len(region.constraints) == 4
        assert all(c.bound == 1 for c in region.constraints)

    def test_16t11_eight_constraints(self, t16_types):
        assert len(absolute_convergence_orthant(t16_types).constraints) == 8

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            absolute_convergence_orthant([])


class TestRegionInvariants:
    def test_recession_cone_enforced(self):
        from tamecount.regions import TubularRegion, LinearConstraint
        with pytest.raises(ValidationError, match="pure lower bound"):
            TubularRegion(("x", "y"), [constraint({"x": 1}, 1)])
        with pytest.raises(ValidationError, match="nonnegative"):
            TubularRegion(("x",), [LinearConstraint((("x", Fraction(-1)),), Fraction(0))])

    def test_beta_defaults(self, d4_types, cyc_q):
        alpha = {t.label: Fraction(3, 8) for t in d4_types}
        beta = default_beta(d4_types, alpha, cyc_q)
        assert beta["2A"] == Fraction(1, 3)   # size-1 rational L-function: Weyl
        assert beta["2B"] == Fraction(3, 4)   # 3/8 * size 2
        assert beta["4A"] == Fraction(3, 4)

    def test_gamma_range_validated(self, d4_types):
        with pytest.raises(ValidationError):
            SubconvexityProfile("bad", Fraction(1), {t.label: Fraction(0) for t in d4_types}, None)
