"""Concentration classification and the group-theoretic feasibility
thresholds for the twisted / wreath / direct-product counting theorems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ContractViolationError, UnsupportedHypothesisError, ValidationError
from .perm import (PermutationGroup, fitting_subgroup, index_of, is_abelian_set,
                   is_nilpotent, is_normal, normal_subgroups, quotient,
                   subgroup_as_group, subgroup_generated, upper_central_series)
from .ramtypes import WeightFunction, min_weight

STATUS_CONCENTRATED = "concentrated"
STATUS_PROPER = "properly-semiconcentrated"
STATUS_NOT = "not-semiconcentrated"

FITTING_NILPOTENT = "nilpotent"
FITTING_CONCENTRATED = "concentrated-in-fitting"
FITTING_NEITHER = "neither"


@dataclass(frozen=True)
class ConcentrationVerdict:
    status: str
    witnesses: tuple      # abelian normal subgroups covering the minimum-weight types
    fitting_status: str
    min_weight: Fraction
    min_type_labels: tuple


def abelian_normal_subgroups(G: PermutationGroup):
    """Proper nontrivial normal subgroups with abelian carrier."""
    out = []
    for N in normal_subgroups(G):
        if 1 < len(N) < G.order and is_abelian_set(N):
            out.append(N)
    return out


def _sort_key(subset):
    return (len(subset), sorted(g.images for g in subset))


def minimal_abelian_cover(G: PermutationGroup, min_elements):
    """Smallest family of abelian normal subgroups covering `min_elements`.

    Exhaustive subset search in deterministic order; ties broken by total
    subgroup order then canonical element order.  None when no cover exists.
    """
    candidates = sorted(abelian_normal_subgroups(G), key=_sort_key)
    useful = [c for c in candidates if any(x in c for x in min_elements)]
    targets = set(min_elements)
    for size in range(1, len(useful) + 1):
        best = None
        for combo in combinations(useful, size):
            covered = set()
            for c in combo:
                covered |= c
            if targets <= covered:
                key = tuple(_sort_key(c) for c in combo)
                if best is None or key < best[0]:
                    best = (key, combo)
        if best is not None:
            return list(best[1])
    return None


def classify(G: PermutationGroup, wt: WeightFunction, types) -> ConcentrationVerdict:
    """Concentration status of G for the given weight.

    Concentrated: the minimum-weight elements generate a proper (normal)
    subgroup.  Semiconcentrated: each minimum-weight class generates a
    proper normal subgroup, so the union of all proper normal subgroups
    covers the minimum-weight elements.
    """
    a, argmin = min_weight(wt, types)
    min_elements = set()
    for t in argmin:
        min_elements |= t.members
    generated = subgroup_generated(G, min_elements)
    concentrated = len(generated) < G.order
    semiconcentrated = all(
        len(subgroup_generated(G, t.members)) < G.order for t in argmin)
    if concentrated:
        status = STATUS_CONCENTRATED
    elif semiconcentrated:
        status = STATUS_PROPER
    else:
        status = STATUS_NOT
    cover = minimal_abelian_cover(G, min_elements) if status != STATUS_NOT else None
    if is_nilpotent(G):
        fitting_status = FITTING_NILPOTENT
    else:
        fitting_status = (FITTING_CONCENTRATED
                          if min_elements <= fitting_subgroup(G) else FITTING_NEITHER)
    return ConcentrationVerdict(status=status,
                                witnesses=tuple(cover or ()),
                                fitting_status=fitting_status,
                                min_weight=a,
                                min_type_labels=tuple(t.label for t in argmin))


def analysis_witnesses(G: PermutationGroup, types, wt: WeightFunction):
    """Default witness family for an analysis run.

    Takes the subgroup generated by each tame type whenever it is a proper
    nontrivial abelian normal subgroup, plus a minimal abelian cover of the
    minimum-weight types.  Extra regions only enlarge the hull, so this
    dominates any smaller admissible choice.
    """
    a, argmin = min_weight(wt, types)
    del a
    seen = set()
    out = []
    for t in types:
        S = subgroup_generated(G, t.members)
        if 1 < len(S) < G.order and is_abelian_set(S) and S not in seen:
            seen.add(S)
            out.append(S)
    min_elements = set()
    for t in argmin:
        min_elements |= t.members
    for S in minimal_abelian_cover(G, min_elements) or []:
        if S not in seen:
            seen.add(S)
            out.append(S)
    if not out:
        raise ValidationError("no abelian normal witnesses exist for this group")
    covered = set()
    for S in out:
        covered |= S
    if not min_elements <= covered:
        raise ValidationError(
            "the minimum-weight types admit no abelian normal cover; "
            "the hull machinery does not apply")
    return out


# ---------------------------------------------------------------------------
# the h^1_ur ledger
# ---------------------------------------------------------------------------

def abelian_invariants(G: PermutationGroup, subset):
    """Invariant factors [d_1 >= d_2 >= ...] of an abelian subgroup.

    A cyclic subgroup generated by an element of maximal order is a direct
    factor of a finite abelian group, so peeling one off and recursing on
    the quotient carrier yields the decomposition.
    """
    elems = frozenset(subset)
    if not is_abelian_set(elems):
        raise ContractViolationError("abelian invariants of a nonabelian set")
    invariants = []
    group = subgroup_as_group(G, elems)
    while group.order > 1:
        top = min(group.elements, key=lambda g: (-g.order(), g.images))
        invariants.append(top.order())
        q = quotient(group, subgroup_generated(group, [top]))
        group = q.carrier
    return invariants


def h1ur_chain(G: PermutationGroup, N, T):
    """Layers (order, invariant factors) of T along the upper central
    series of N, ending at the hypercenter; orders multiply to |T|."""
    N = frozenset(N)
    T = frozenset(T)
    if not (is_normal(G, N) and is_normal(G, T)):
        raise ContractViolationError("N and T must be normal in G")
    if not is_abelian_set(T):
        raise ContractViolationError("T must be abelian")
    N_group = subgroup_as_group(G, N, name="N")
    series = upper_central_series(N_group)
    hyper = series[-1]
    if not T <= hyper:
        raise ContractViolationError("T must lie in the hypercenter of N")
    chain = []
    prev = T & series[0]
    for Z in series[1:]:
        cur = T & Z
        order = len(cur) // len(prev)
        if order > 1:
            q = quotient(subgroup_as_group(G, cur), prev)
            inv = abelian_invariants(q.carrier, q.carrier.element_set())
            chain.append((order, tuple(inv)))
        prev = cur
    return chain


# ---------------------------------------------------------------------------
# wreath / direct-product threshold arithmetic
# ---------------------------------------------------------------------------

def _log2_exact(n: int) -> int:
    k = n.bit_length() - 1
    if 1 << k != n:
        raise ValidationError(f"{n} is not a power of two")
    return k


def wreath_theta_from_params(n: int, a, t_order: int, m: int, k_degree: int) -> Fraction:
    """n/a - log2|T|/2 + log2|T|/(2 m [k:Q]) for one witness size."""
    if m < 1 or k_degree < 1:
        raise ValidationError("block count and field degree must be positive")
    log2t = _log2_exact(t_order)
    return (Fraction(n, 1) / Fraction(a) - Fraction(log2t, 2)
            + Fraction(log2t, 2 * m * k_degree))


def wreath_theta_bound(N: PermutationGroup, witnesses, m: int, k_degree: int) -> Fraction:
    """Required growth cap for base counts in the wreath theorem: the count
    of top extensions must be O(X^(bound - delta)) for some delta > 0.

    Proven only for 2-groups; other primes are refused, not extrapolated.
    """
    order = N.order
    if order & (order - 1):
        raise UnsupportedHypothesisError("the wreath bound is proven for 2-groups only")
    if not witnesses:
        raise ValidationError("at least one witness is required")
    a = min(Fraction(index_of(g)) for g in N.elements if not g.is_identity())
    thetas = []
    for T in witnesses:
        T = frozenset(T)
        if not is_normal(N, T) or not is_abelian_set(T):
            raise ContractViolationError("witnesses must be abelian and normal in N")
        thetas.append(wreath_theta_from_params(N.degree, a, len(T), m, k_degree))
    return min(thetas)


@dataclass(frozen=True)
class DirectProductCondition:
    passes: bool
    cap_exponent: Fraction  # the general growth cap n/(m a(N))


def direct_product_condition(n: int, m: int, a_N, a_B) -> DirectProductCondition:
    """Sufficient condition a(B)/m > a(N)/n for nilpotent tops, plus the
    general cap exponent n/(m a(N)) on the top-group count."""
    a_N, a_B = Fraction(a_N), Fraction(a_B)
    if n < 1 or m < 1 or a_N <= 0 or a_B <= 0:
        raise ValidationError("degrees and minimal weights must be positive")
    return DirectProductCondition(passes=Fraction(a_B, m) > Fraction(a_N, n),
                                  cap_exponent=Fraction(n, 1) / (m * a_N))
