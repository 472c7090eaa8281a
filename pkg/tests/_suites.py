"""Shared property-suite machinery used by the unit tests and the
acceptance suite (dual-route oracles and exhaustive group checks)."""
import math
import random
from fractions import Fraction
from itertools import combinations

from tamecount import hull_membership, verify_certificate
from tamecount.perm import (PermutationGroup, all_subgroups, is_normal,
                            normal_subgroups, product_representation, wreath_product)
from tamecount.regions import TubularRegion, constraint


def cyclic(n):
    return PermutationGroup(n, [tuple(range(2, n + 1)) + (1,)], name=f"C{n}")


def d4_deg4():
    return PermutationGroup(4, ["(1,2,3,4)", "(1,3)"], name="D4")


def s4():
    return PermutationGroup(4, ["(1,2,3,4)", "(1,2)"], name="S4")


def s3():
    return PermutationGroup(3, ["(1,2,3)", "(1,2)"], name="S3")


# ---------------------------------------------------------------------------
# LP vs Caratheodory
# ---------------------------------------------------------------------------

def solve_square(matrix, rhs):
    """Gaussian elimination over Fractions; None if singular or inconsistent."""
    m = len(matrix)
    n = len(matrix[0])
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][c]
        aug[r] = [v / inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    if len(pivots) < n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def region_vertices(region):
    """Basic points of the closure: every d-subset of tight rows."""
    variables = region.variables
    d = len(variables)
    rows = [([c.coefficient(v) for v in variables], c.bound)
            for c in region.constraints]
    vertices = []
    for combo in combinations(range(len(rows)), d):
        x = solve_square([rows[i][0] for i in combo], [rows[i][1] for i in combo])
        if x is None:
            continue
        if region.contains_closed(dict(zip(variables, x))):
            vertices.append(tuple(x))
    return sorted(set(vertices))


def caratheodory_member(point, regions):
    """Closed-hull membership by direct linear solves over vertex/ray columns.

    A feasible convex-plus-ray combination has a basic solution supported
    on linearly independent columns, so enumerating all full-column-rank
    supports of size <= d+1 (with at least one vertex) is exhaustive.
    """
    variables = regions[0].variables
    d = len(variables)
    x = [point[v] for v in variables]
    columns = []
    for region in regions:
        for vert in region_vertices(region):
            columns.append((list(vert) + [Fraction(1)], "vertex"))
    for i in range(d):
        ray = [Fraction(0)] * (d + 1)
        ray[i] = Fraction(1)
        columns.append((ray, "ray"))
    target = x + [Fraction(1)]
    seen = set()
    dedup = []
    for col, kind in columns:
        key = tuple(col)
        if key not in seen:
            seen.add(key)
            dedup.append((col, kind))
    for k in range(1, d + 2):
        for combo in combinations(range(len(dedup)), k):
            if not any(dedup[i][1] == "vertex" for i in combo):
                continue
            matrix = [[dedup[i][0][r] for i in combo] for r in range(d + 1)]
            sol = solve_square(matrix, target)
            if sol is not None and all(v >= 0 for v in sol):
                return True
    return False


def random_region(rng, variables, max_mixed):
    cons = []
    for v in variables:
        cons.append(constraint({v: 1}, Fraction(rng.randint(0, 8), 4)))
    for _ in range(rng.randint(0, max_mixed)):
        subject = rng.choice(variables)
        others = [v for v in variables if v != subject]
        rng.shuffle(others)
        coeffs = {subject: Fraction(1)}
        for v in others[: rng.randint(1, len(others))]:
            coeffs[v] = rng.choice([Fraction(1, 4), Fraction(3, 8), Fraction(1, 2),
                                    Fraction(1), Fraction(3, 2)])
        cons.append(constraint(coeffs, Fraction(rng.randint(2, 12), 4)))
    return TubularRegion(variables, cons)


def random_query_point(rng, regions, variables):
    if rng.random() < 0.45:
        # convex combination of region points: guaranteed closed member
        weights = [Fraction(rng.randint(0, 4)) for _ in regions]
        if sum(weights) == 0:
            weights[0] = Fraction(1)
        total = sum(weights)
        point = {v: Fraction(0) for v in variables}
        for w, region in zip(weights, regions):
            corner = {v: region.pure_lower_bound(v) for v in variables}
            for c in region.mixed_constraints():
                subject = c.support()[0]
                deficit = c.bound - c.evaluate(corner)
                if deficit > 0:
                    corner[subject] += deficit / c.coefficient(subject)
            bump = Fraction(rng.randint(0, 3), 4)
            for v in variables:
                point[v] += (w / total) * (corner[v] + bump)
        return point
    return {v: Fraction(rng.randint(0, 14), 4) for v in variables}


ORACLE_CASES = [
    # (dimension, region_count, max_mixed, instances, seed)
    (2, 1, 2, 120, 11),
    (2, 2, 2, 130, 22),
    (2, 3, 1, 100, 33),
    (3, 1, 1, 80, 44),
    (3, 2, 1, 70, 55),
]


def run_oracle_case(dimension, region_count, max_mixed, instances, seed):
    """Returns (instances, disagreements) for one random-instance family."""
    rng = random.Random(seed)
    variables = tuple("xyz"[:dimension])
    disagreements = 0
    for _ in range(instances):
        regions = [random_region(rng, variables, max_mixed)
                   for _ in range(region_count)]
        point = random_query_point(rng, regions, variables)
        lp_member, cert = hull_membership(point, regions, mode="closed")
        if lp_member != caratheodory_member(point, regions):
            disagreements += 1
        if lp_member and not verify_certificate(cert, regions, point):
            disagreements += 1
    return instances, disagreements


def run_conditional_hull_draws(count, seed=99):
    """Lemma-containment property: formula membership implies Balas membership."""
    from tamecount import conditional_hull_point_check
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        n_cov = rng.randint(2, 4)
        n_unc = rng.randint(0, 2)
        covered = [f"c{i}" for i in range(n_cov)]
        uncovered = [f"u{i}" for i in range(n_unc)]
        variables = tuple(covered + uncovered)
        gamma = Fraction(rng.randint(0, 9), 10)
        regions = []
        for j in range(n_cov):
            cons = [constraint({v: 1}, gamma if v == covered[j] else Fraction(1))
                    for v in variables]
            regions.append(TubularRegion(variables, cons))
        witness_sets = [{covered[j]} for j in range(n_cov)]
        bound = 1 - Fraction(1 - gamma, n_cov)
        point = {v: bound + Fraction(rng.randint(1, 40), 40) for v in covered}
        point.update({v: 1 + Fraction(rng.randint(1, 40), 40) for v in uncovered})
        if not conditional_hull_point_check(point, witness_sets, gamma):
            failures += 1
            continue
        member, _ = hull_membership(point, regions, mode="open")
        if not member:
            failures += 1
    return count, failures


# ---------------------------------------------------------------------------
# exhaustive group suites
# ---------------------------------------------------------------------------

def class_index_groups_up_to_200():
    from tamecount import resolve_entry
    return [
        d4_deg4(),
        s4(),
        resolve_entry("8T11").group,
        resolve_entry("16T11").group,
        wreath_product(cyclic(2), cyclic(3)),
        wreath_product(d4_deg4(), cyclic(2)),          # order 128
        product_representation(d4_deg4(), cyclic(3)),  # order 24
    ]


def run_class_and_index_checks():
    """Class partitions and index invariance, exhaustive over |G| <= 200."""
    failures = 0
    checked = 0
    for G in class_index_groups_up_to_200():
        assert G.order <= 200
        classes = G.conjugacy_classes()
        if sum(c.size for c in classes) != G.order:
            failures += 1
        union = set()
        for c in classes:
            if union & c.members:
                failures += 1
            union |= c.members
        if union != set(G.elements):
            failures += 1
        from tamecount import index_of
        for g in G.elements:
            base = index_of(g)
            checked += 1
            for h in G.generators:
                if index_of(g.conjugate_by(h)) != base:
                    failures += 1
            for u in range(1, g.order() + 1):
                if math.gcd(u, g.order()) == 1 and index_of(g ** u) != base:
                    failures += 1
    return checked, failures


def normal_scan_groups_up_to_100():
    from tamecount import resolve_entry
    return [
        s3(),
        d4_deg4(),
        cyclic(12),
        wreath_product(cyclic(2), cyclic(2)),
        s4(),
        resolve_entry("8T11").group,
        product_representation(d4_deg4(), cyclic(3)),
        wreath_product(cyclic(2), cyclic(4)),          # order 64
    ]


def run_normal_join_vs_bruteforce():
    """Join-closure normal subgroups vs the brute-force subgroup scan."""
    failures = 0
    checked = 0
    for G in normal_scan_groups_up_to_100():
        assert G.order <= 100
        expected = {frozenset(H) for H in all_subgroups(G) if is_normal(G, H)}
        got = {frozenset(N) for N in normal_subgroups(G)}
        checked += len(expected)
        if got != expected:
            failures += 1
    return checked, failures


def run_wreath_additivity_checks():
    """Index additivity on base tuples and a(N) = a(N wr B) on catalog pairs."""
    from tamecount import index_of
    failures = 0
    checked = 0
    pairs = [(d4_deg4(), 2), (cyclic(2), 3), (cyclic(3), 2)]
    for N, m in pairs:
        B = cyclic(m)
        W = wreath_product(N, B)
        n = N.degree
        a_N = min(index_of(g) for g in N.elements if not g.is_identity())
        a_W = min(index_of(g) for g in W.elements if not g.is_identity())
        checked += 1
        if a_N != a_W:
            failures += 1
        from tamecount.perm import Permutation
        import itertools
        for combo in itertools.islice(itertools.product(N.elements, repeat=m), 64):
            images = []
            for block, g in enumerate(combo):
                images.extend(g(i) + block * n for i in range(1, n + 1))
            w = Permutation(images)
            checked += 1
            if index_of(w) != sum(index_of(g) for g in combo):
                failures += 1
    return checked, failures
