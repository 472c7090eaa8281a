"""Tame ramification types as k-conjugacy classes.

A tame type is a minimal subset of G\\{1} closed under conjugation and
under the powering action g -> g^u for u in U_e (e the element order).
The base field enters ONLY through the cyclotomic profile: the subgroups
U_e model the image of Gal(k(zeta_e)/k) inside (Z/eZ)^*; no number-field
arithmetic exists anywhere in the artifact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels as K
from .errors import ParseError, ValidationError
from .perm import Permutation, PermutationGroup, QuotientGroup, index_of, is_nilpotent


def _units(e: int):
    return frozenset(u for u in range(1, e + 1) if math.gcd(u, e) == 1)


class CyclotomicProfile:
    """Either full-Q (U_e = (Z/eZ)^* for all e) or a restricted table.

    A restricted table maps specific moduli e to subgroups U_e; moduli not
    listed default to the full unit group.  Compatibility under
    divisibility (reduction mod d maps U_e into U_d) is validated against
    the exponent of the group the profile is used with.
    """

    def __init__(self, restrictions=None, name=None):
        self.restrictions = {}
        for e, units in (restrictions or {}).items():
            units = frozenset(int(u) % e if int(u) % e else e for u in units)
            if e < 1:
                raise ValidationError("moduli must be positive")
            if not units or any(math.gcd(u, e) != 1 for u in units):
                raise ValidationError(f"U_{e} must consist of units mod {e}")
            if 1 not in units and e > 1:
                raise ValidationError(f"U_{e} must contain 1")
            for a in units:  # subgroup check
                for b in units:
                    if (a * b) % e not in units and not (e == 1):
                        raise ValidationError(f"U_{e} = {sorted(units)} is not closed under multiplication")
            self.restrictions[e] = units
        self.name = name or ("Q" if not self.restrictions else "restricted")

    @classmethod
    def full_q(cls) -> "CyclotomicProfile":
        return cls(name="Q")

    @property
    def is_full(self) -> bool:
        return not self.restrictions

    def units_for(self, e: int):
        if e in self.restrictions:
            return self.restrictions[e]
        return _units(e)

    def field_degree(self, e: int) -> int:
        """The modeled [k(zeta_e):k] = |U_e|."""
        return len(self.units_for(e))

    def validate_for_exponent(self, exponent: int):
        divisors = [d for d in range(1, exponent + 1) if exponent % d == 0]
        for e in divisors:
            for d in divisors:
                if d == e or e % d != 0:
                    continue
                reduced = {u % d if u % d else d for u in self.units_for(e)}
                if not reduced <= set(self.units_for(d)):
                    raise ValidationError(
                        f"profile incompatible: U_{e} reduces outside U_{d}")

    def __repr__(self):
        return f"CyclotomicProfile({self.name})"


def parse_profile_file(text: str, name=None) -> CyclotomicProfile:
    """Lines `e u1,u2,...` listing generators of U_e as residues."""
    restrictions = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'e u1,u2,...', got {line!r}")
        try:
            e = int(parts[0])
            gens = [int(tok) for tok in parts[1].split(",")]
        except ValueError:
            raise ParseError(f"line {lineno}: bad integer in {line!r}") from None
        units = {1 % e if 1 % e else e}
        frontier = list(units)
        gens = [g % e if g % e else e for g in gens]
        if any(math.gcd(g, e) != 1 for g in gens):
            raise ParseError(f"line {lineno}: non-unit residue for modulus {e}")
        while frontier:
            u = frontier.pop()
            for g in gens:
                v = (u * g) % e or e
                if v not in units:
                    units.add(v)
                    frontier.append(v)
        restrictions[e] = units
    return CyclotomicProfile(restrictions, name=name)


@dataclass(frozen=True)
class TameType:
    """One nontrivial tame k-ramification type of a transitive group."""
    label: str
    members: frozenset
    order: int
    size: int
    conj_orbit_size: int
    zeta_degree: int  # = size / conj_orbit_size: conjugation orbits merged by powering
    representative: Permutation = field(compare=False)

    def __repr__(self):
        return f"TameType({self.label}, order={self.order}, size={self.size})"


def _conjugation_orbit(G: PermutationGroup, g: Permutation):
    orbit = {g.images}
    frontier = [g.images]
    gens = [h.images for h in G.generators]
    while frontier:
        x = frontier.pop()
        for h in gens:
            y = K.conjugate(h, x)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def _type_orbit(G: PermutationGroup, g: Permutation, profile: CyclotomicProfile):
    e = g.order()
    units = profile.units_for(e)
    orbit = {g.images}
    frontier = [g.images]
    gens = [h.images for h in G.generators]
    while frontier:
        x = frontier.pop()
        new = [K.conjugate(h, x) for h in gens]
        xp = Permutation(x)
        new.extend((xp ** u).images for u in units)
        for y in new:
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def _merged_label(labels):
    prefix = labels[0]
    for lab in labels[1:]:
        while not lab.startswith(prefix):
            prefix = prefix[:-1]
    return prefix.rstrip("-")


def tame_types(G: PermutationGroup, profile: CyclotomicProfile, label_pins=None):
    """All nontrivial tame types of G under the given cyclotomic profile.

    Deterministic labels: within each element order, letters A, B, ... in
    canonical order (size, then minimal member).  `label_pins` maps chosen
    representative permutations to published labels; pins landing in one
    merged type collapse to their common stem (4A1, 4A-1 -> 4A).
    """
    if not G.is_transitive():
        raise ValidationError("tame types are defined for transitive groups only")
    profile.validate_for_exponent(G.exponent())
    remaining = {g.images for g in G.elements if not g.is_identity()}
    raw = []
    while remaining:
        g = Permutation(min(remaining))
        orbit = _type_orbit(G, g, profile)
        if not orbit <= remaining:
            raise AssertionError("type orbits must partition the nonidentity elements")
        remaining -= orbit
        members = frozenset(Permutation(t) for t in orbit)
        rep = min(members)
        conj = len(_conjugation_orbit(G, rep))
        size = len(members)
        if size % conj:
            raise AssertionError("conjugation orbits inside a type have equal size")
        raw.append((rep.order(), size, rep, members, conj))
    raw.sort(key=lambda r: (r[0], r[1], r[2].images))

    pins = label_pins or {}
    types = []
    counters = {}
    for order, size, rep, members, conj in raw:
        pinned = sorted({pins[p] for p in members if p in pins})
        if len(pinned) == 1:
            label = pinned[0]
        elif len(pinned) > 1:
            label = _merged_label(pinned)
        else:
            idx = counters.get(order, 0)
            counters[order] = idx + 1
            letters = ""
            i = idx
            while True:
                letters = chr(ord("A") + i % 26) + letters
                i = i // 26 - 1
                if i < 0:
                    break
            label = f"{order}{letters}"
        types.append(TameType(label=label, members=members, order=order, size=size,
                              conj_orbit_size=conj, zeta_degree=size // conj,
                              representative=rep))
    if len({t.label for t in types}) != len(types):
        raise AssertionError("type labels must be unique")
    return types


def zeta_degree(tau: TameType, profile: CyclotomicProfile) -> int:
    """Conjugation orbits merged into tau by the powering action."""
    return tau.zeta_degree


def type_of(types, g: Permutation) -> TameType:
    for t in types:
        if g in t.members:
            return t
    raise ValidationError(f"{g!r} lies in no tame type (is it the identity?)")


# ---------------------------------------------------------------------------
# weight functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFunction:
    """Positive rational weights on the nontrivial tame types."""
    name: str
    weights: dict  # label -> Fraction
    wild_policy: str = "irrelevant-to-regions"

    def __call__(self, tau) -> Fraction:
        label = tau.label if isinstance(tau, TameType) else tau
        return self.weights[label]

    def validate_total(self, types):
        missing = [t.label for t in types if t.label not in self.weights]
        if missing:
            raise ValidationError(f"weight function {self.name} misses types {missing}")
        bad = [lab for lab, w in self.weights.items() if w <= 0]
        if bad:
            raise ValidationError(f"weights must be positive; offending {bad}")


def weight_discriminant(types, degree: int) -> WeightFunction:
    """wt(tau) = ind_degree(representative); the discriminant exponents."""
    weights = {}
    for t in types:
        if t.representative.degree != degree:
            raise ValidationError("types and degree disagree")
        weights[t.label] = Fraction(index_of(t.representative))
    wt = WeightFunction(name=f"disc{degree}", weights=weights)
    wt.validate_total(types)
    return wt


_D4_CONDUCTOR = {"2A": Fraction(2), "2B": Fraction(1), "2C": Fraction(1), "4A": Fraction(2)}


def weight_conductor_d4(types) -> WeightFunction:
    labels = {t.label for t in types}
    if labels != set(_D4_CONDUCTOR):
        raise ValidationError("the conductor table is defined for the D4 type family only")
    wt = WeightFunction(name="cond-d4", weights=dict(_D4_CONDUCTOR))
    wt.validate_total(types)
    return wt


def weight_product_ramified(types) -> WeightFunction:
    wt = WeightFunction(name="prodram", weights={t.label: Fraction(1) for t in types})
    return wt


def weight_inv_gamma(types, gamma: Fraction) -> WeightFunction:
    """The D4 family interpolating conductor and quartic discriminant."""
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValidationError("gamma must be positive")
    labels = {t.label for t in types}
    if labels != set(_D4_CONDUCTOR):
        raise ValidationError("inv-gamma weights are defined for the D4 type family only")
    weights = {"2A": Fraction(2), "2B": 1 + gamma, "2C": Fraction(1), "4A": 2 + gamma}
    wt = WeightFunction(name=f"inv-gamma:{gamma}", weights=weights)
    wt.validate_total(types)
    return wt


def weight_custom(table, types, name="custom") -> WeightFunction:
    weights = {lab: Fraction(v) for lab, v in table.items()}
    wt = WeightFunction(name=name, weights=weights)
    wt.validate_total(types)
    return wt


def parse_weight_file(text: str, types, name="custom") -> WeightFunction:
    """Lines `label rational`, e.g. `2B 3/2`."""
    table = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'label rational', got {line!r}")
        try:
            table[parts[0]] = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: bad rational {parts[1]!r}") from None
    return weight_custom(table, types, name=name)


def min_weight(wt: WeightFunction, types):
    """(a_inv, tuple of attaining types in canonical order)."""
    wt.validate_total(types)
    a = min(wt(t) for t in types)
    argmin = tuple(t for t in types if wt(t) == a)
    return a, argmin


# ---------------------------------------------------------------------------
# pushforward and pole-order bounds
# ---------------------------------------------------------------------------

def pushforward_type(tau: TameType, q: QuotientGroup, profile: CyclotomicProfile):
    """Image of tau in the quotient, re-orbited there; None when trivial."""
    images = {q.push(g) for g in tau.members}
    nontrivial = {g for g in images if not g.is_identity()}
    if not nontrivial:
        return None
    quotient_types = tame_types(q.carrier, profile)
    return type_of(quotient_types, min(nontrivial))


def pole_order_bound(tau: TameType, G: PermutationGroup, profile: CyclotomicProfile) -> int:
    """Bound for the order of the polar divisor s_tau = 1.

    Prime-order types of nilpotent groups never split under twisting, so
    the bound is 1 there; otherwise the modeled [k(zeta_tau):k] applies.
    """
    if is_nilpotent(G) and _is_prime(tau.order):
        return 1
    return profile.field_degree(tau.order)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True
