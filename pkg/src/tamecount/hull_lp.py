"""Exact rational linear programming and convex hulls of region unions.

The solver is a two-phase tableau simplex over fractions.Fraction with
Bland's anti-cycling rule: slow, exact, and deterministic.  Membership
in the convex hull of a union of regions with a common recession cone
uses the Balas extended formulation; open regions are certified through
closed regions shrunk by a dyadic margin.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .ramtypes import min_weight
from .regions import subconvexity_matrix

Rational = Fraction

OPEN_EPSILONS = tuple(Fraction(1, 2 ** k) for k in range(1, 21))


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"bad rational literal {s!r}") from None


# ---------------------------------------------------------------------------
# LP problems and the exact simplex
# ---------------------------------------------------------------------------

@dataclass
class LPProblem:
    """min objective . x  subject to rows (coeffs, rel, bound), rel in {>=, ==}.

    Variables are free unless flagged nonnegative.  A None objective is a
    pure feasibility problem.
    """
    variables: tuple
    constraints: list  # (tuple[Fraction], ">=" | "==", Fraction)
    objective: tuple | None = None
    nonneg: tuple | None = None

    def __post_init__(self):
        n = len(self.variables)
        if self.nonneg is None:
            self.nonneg = tuple(False for _ in range(n))
        if len(self.nonneg) != n:
            raise ValidationError("nonneg flags must match the variable arity")
        if self.objective is not None and len(self.objective) != n:
            raise ValidationError("objective arity mismatch")
        for row, rel, _ in self.constraints:
            if len(row) != n:
                raise ValidationError("constraint arity mismatch")
            if rel not in (">=", "=="):
                raise ValidationError(f"unsupported relation {rel!r}")


@dataclass
class LPResult:
    status: str  # optimal | infeasible | unbounded
    value: Fraction | None = None
    assignment: dict | None = None


def lp_solve(problem: LPProblem) -> LPResult:
    """Exact two-phase simplex with Bland's rule."""
    n = len(problem.variables)
    # column layout: for each variable either one column (nonneg) or a +/- pair
    col_of_var = []  # (plus_col, minus_col | None)
    ncols = 0
    for flag in problem.nonneg:
        if flag:
            col_of_var.append((ncols, None))
            ncols += 1
        else:
            col_of_var.append((ncols, ncols + 1))
            ncols += 2
    rows = []
    rhs = []
    for row, rel, bound in problem.constraints:
        expanded = [Fraction(0)] * ncols
        for i, coef in enumerate(row):
            plus, minus = col_of_var[i]
            expanded[plus] += coef
            if minus is not None:
                expanded[minus] -= coef
        if rel == ">=":
            expanded.append(Fraction(-1))  # surplus
            for r in rows:
                r.append(Fraction(0))
            ncols += 1
        rows.append(expanded)
        rhs.append(Fraction(bound))
    for r in rows:  # pad rows added before later surplus columns
        while len(r) < ncols:
            r.append(Fraction(0))
    m = len(rows)
    for i in range(m):  # make rhs nonnegative
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: artificials
    art0 = ncols
    for i in range(m):
        for j in range(m):
            rows[i].append(Fraction(1) if i == j else Fraction(0))
    total = ncols + m
    basis = list(range(art0, art0 + m))
    tableau = [rows[i] + [rhs[i]] for i in range(m)]
    cost1 = [Fraction(0)] * (total + 1)
    for j in range(art0, art0 + m):
        cost1[j] = Fraction(1)
    _reduce_cost_row(cost1, tableau, basis)
    status = _pivot_until_optimal(tableau, cost1, basis, total)
    if status == "unbounded":  # impossible in phase 1 (costs bounded below by 0)
        raise AssertionError("phase 1 cannot be unbounded")
    if -cost1[-1] > 0:
        return LPResult(status="infeasible")
    _drive_out_artificials(tableau, basis, art0)
    keep = []
    for i, b in enumerate(basis):
        if b >= art0:
            # redundant row: all structural coefficients zero
            if any(tableau[i][j] != 0 for j in range(art0)):
                raise AssertionError("artificial not driven out of a non-redundant row")
            continue
        keep.append(i)
    tableau = [tableau[i] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    if problem.objective is None:
        objective = [Fraction(0)] * n
    else:
        objective = [Fraction(c) for c in problem.objective]
    cost2 = [Fraction(0)] * (total + 1)
    for i, coef in enumerate(objective):
        plus, minus = col_of_var[i]
        cost2[plus] += coef
        if minus is not None:
            cost2[minus] -= coef
    forbidden = set(range(art0, art0 + m))
    _reduce_cost_row(cost2, tableau, basis)
    status = _pivot_until_optimal(tableau, cost2, basis, total, forbidden=forbidden)
    if status == "unbounded":
        return LPResult(status="unbounded")
    values = [Fraction(0)] * total
    for i, b in enumerate(basis):
        values[b] = tableau[i][-1]
    assignment = {}
    for i, var in enumerate(problem.variables):
        plus, minus = col_of_var[i]
        assignment[var] = values[plus] - (values[minus] if minus is not None else 0)
    value = sum((objective[i] * assignment[v] for i, v in enumerate(problem.variables)),
                Fraction(0)) if problem.objective is not None else Fraction(0)
    return LPResult(status="optimal", value=value, assignment=assignment)


def _reduce_cost_row(cost, tableau, basis):
    for i, b in enumerate(basis):
        coef = cost[b]
        if coef:
            row = tableau[i]
            for j in range(len(cost)):
                cost[j] -= coef * row[j]


def _pivot_until_optimal(tableau, cost, basis, total, forbidden=frozenset()):
    while True:
        entering = None
        for j in range(total):
            if j in forbidden or j in basis:
                continue
            if cost[j] < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        leaving = None
        best = None
        for i, row in enumerate(tableau):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return "unbounded"
        _pivot(tableau, cost, basis, leaving, entering)


def _pivot(tableau, cost, basis, i, j):
    row = tableau[i]
    piv = row[j]
    tableau[i] = [v / piv for v in row]
    row = tableau[i]
    for k, other in enumerate(tableau):
        if k != i and other[j]:
            coef = other[j]
            tableau[k] = [ov - coef * rv for ov, rv in zip(other, row)]
    if cost[j]:
        coef = cost[j]
        for idx in range(len(cost)):
            cost[idx] -= coef * row[idx]
    basis[i] = j


def _drive_out_artificials(tableau, basis, art0):
    for i, b in enumerate(basis):
        if b < art0:
            continue
        row = tableau[i]
        pivot_col = None
        for j in range(art0):
            if row[j] != 0:
                pivot_col = j
                break
        if pivot_col is not None:
            _pivot(tableau, [Fraction(0)] * len(row), basis, i, pivot_col)


def verify_lp_assignment(problem: LPProblem, assignment: dict) -> bool:
    """Exact re-substitution check of every constraint."""
    x = [assignment[v] for v in problem.variables]
    for row, rel, bound in problem.constraints:
        lhs = sum((c * xi for c, xi in zip(row, x)), Fraction(0))
        if rel == ">=" and lhs < bound:
            return False
        if rel == "==" and lhs != bound:
            return False
    for flag, v in zip(problem.nonneg, problem.variables):
        if flag and assignment[v] < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Balas membership, certificates, thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HullCertificate:
    """Constructive witness: the query point as a convex combination of
    region points, each satisfying its region with slack >= epsilon."""
    lambdas: tuple           # one Fraction per region
    points: tuple            # dict per active region, None for inactive
    epsilon: Fraction        # certified shrink margin (0 in closed mode)

    def to_json_dict(self, variables):
        return {
            "lambdas": [rational_str(l) for l in self.lambdas],
            "points": [None if p is None else {v: rational_str(p[v]) for v in variables}
                       for p in self.points],
            "epsilon": rational_str(self.epsilon),
        }


def certificate_from_json(data) -> HullCertificate:
    lambdas = tuple(parse_rational(s) for s in data["lambdas"])
    points = tuple(None if p is None else {v: parse_rational(s) for v, s in p.items()}
                   for p in data["points"])
    return HullCertificate(lambdas=lambdas, points=points,
                           epsilon=parse_rational(data["epsilon"]))


def certificate_roundtrip(cert: HullCertificate, variables) -> HullCertificate:
    return certificate_from_json(json.loads(json.dumps(cert.to_json_dict(variables))))


def _common_variables(regions):
    if not regions:
        return None
    variables = regions[0].variables
    for r in regions[1:]:
        if r.variables != variables:
            raise ValidationError("regions carry mixed variable indices")
    return variables


def _as_point(point, variables) -> dict:
    if isinstance(point, dict):
        missing = [v for v in variables if v not in point]
        if missing:
            raise ValidationError(f"point misses coordinates {missing}")
        return {v: Fraction(point[v]) for v in variables}
    values = list(point)
    if len(values) != len(variables):
        raise ValidationError("point dimension does not match the variable index")
    return {v: Fraction(x) for v, x in zip(variables, values)}


def _balas_problem(regions, variables, *, point=None, wt=None):
    """Variables: lam_j, y_{j,v}, and s when a weight line is given."""
    # y >= 0 is valid only while the regions sit in the nonnegative
    # orthant (every pure bound >= 0); otherwise the y block must be free
    y_nonneg = all(r.pure_lower_bound(v) >= 0 for r in regions for v in variables)
    names = [f"lam{j}" for j in range(len(regions))]
    nonneg = [True] * len(names)
    for j in range(len(regions)):
        names.extend(f"y{j}.{v}" for v in variables)
        nonneg.extend([y_nonneg] * len(variables))
    if wt is not None:
        names.append("s")
        nonneg.append(False)
    index = {nm: i for i, nm in enumerate(names)}
    ncols = len(names)

    def row():
        return [Fraction(0)] * ncols

    constraints = []
    r = row()
    for j in range(len(regions)):
        r[index[f"lam{j}"]] = Fraction(1)
    constraints.append((tuple(r), "==", Fraction(1)))
    for j, region in enumerate(regions):
        for c in region.constraints:
            r = row()
            for lab, coef in c.coefficients:
                r[index[f"y{j}.{lab}"]] = coef
            r[index[f"lam{j}"]] = -c.bound
            constraints.append((tuple(r), ">=", Fraction(0)))
    for v in variables:
        r = row()
        for j in range(len(regions)):
            r[index[f"y{j}.{v}"]] = Fraction(1)
        if wt is not None:
            r[index["s"]] = -Fraction(wt[v])
            constraints.append((tuple(r), "==", Fraction(0)))
        else:
            constraints.append((tuple(r), "==", Fraction(point[v])))
    objective = None
    if wt is not None:
        obj = row()
        obj[index["s"]] = Fraction(1)
        objective = tuple(obj)
    return LPProblem(variables=tuple(names), constraints=constraints,
                     objective=objective, nonneg=tuple(nonneg))


def _certificate_from_assignment(assignment, regions, variables, epsilon) -> HullCertificate:
    lambdas = tuple(assignment[f"lam{j}"] for j in range(len(regions)))
    # inactive regions may carry recession-ray mass (A y >= 0 with lam = 0);
    # fold it into an active point, which stays feasible because the
    # recession cone is the nonnegative orthant
    stray = {v: Fraction(0) for v in variables}
    for j, lam in enumerate(lambdas):
        if lam == 0:
            for v in variables:
                stray[v] += assignment[f"y{j}.{v}"]
    points = []
    absorbed = False
    for j, lam in enumerate(lambdas):
        if lam == 0:
            points.append(None)
            continue
        point = {v: assignment[f"y{j}.{v}"] / lam for v in variables}
        if not absorbed and any(stray[v] for v in variables):
            point = {v: point[v] + stray[v] / lam for v in variables}
            absorbed = True
        points.append(point)
    return HullCertificate(lambdas=lambdas, points=tuple(points), epsilon=epsilon)


def _assert_orthant_recession(regions):
    # TubularRegion construction already guarantees this; re-assert rather
    # than trust the caller, since Balas validity depends on it.
    for region in regions:
        for v in region.variables:
            region.pure_lower_bound(v)
        for c in region.constraints:
            if any(coef < 0 for _, coef in c.coefficients):
                raise ValidationError("negative coefficient breaks the recession-cone contract")


def hull_membership(point, regions, mode="open"):
    """Membership of `point` in the hull of the union of the regions.

    Returns (True, HullCertificate) or (False, None).  Closed mode solves
    the Balas feasibility problem for the closures; open mode searches the
    dyadic shrink margins 2^-1..2^-20 and certifies through the largest
    margin that works.
    """
    if mode not in ("open", "closed"):
        raise ValidationError(f"unknown mode {mode!r}")
    if not regions:
        return False, None
    variables = _common_variables(regions)
    _assert_orthant_recession(regions)
    pt = _as_point(point, variables)
    if mode == "closed":
        problem = _balas_problem(regions, variables, point=pt)
        result = lp_solve(problem)
        if result.status != "optimal":
            return False, None
        cert = _certificate_from_assignment(result.assignment, regions, variables, Fraction(0))
        return True, cert
    for eps in OPEN_EPSILONS:
        shrunk = [r.shrunk(eps) for r in regions]
        problem = _balas_problem(shrunk, variables, point=pt)
        result = lp_solve(problem)
        if result.status == "optimal":
            cert = _certificate_from_assignment(result.assignment, regions, variables, eps)
            return True, cert
    return False, None


def verify_certificate(cert: HullCertificate, regions, point) -> bool:
    """Independent check: recompute the convex combination and all slacks."""
    variables = _common_variables(regions)
    pt = _as_point(point, variables)
    if any(l < 0 for l in cert.lambdas) or sum(cert.lambdas) != 1:
        return False
    if len(cert.lambdas) != len(regions):
        return False
    for v in variables:
        total = Fraction(0)
        for lam, p in zip(cert.lambdas, cert.points):
            if lam == 0:
                continue
            if p is None:
                return False
            total += lam * p[v]
        if total != pt[v]:
            return False
    for lam, p, region in zip(cert.lambdas, cert.points, regions):
        if lam == 0:
            continue
        for c in region.constraints:
            if c.evaluate(p) - c.bound < cert.epsilon:
                return False
    return True


def line_threshold(wt, regions) -> Fraction:
    """Infimum s with (wt(tau) * s) in the closed hull of the union.

    The open region of validity of the specialization is s > threshold.
    """
    if not regions:
        raise ValidationError("no regions given")
    variables = _common_variables(regions)
    _assert_orthant_recession(regions)
    weights = {v: Fraction(wt(v) if callable(wt) else wt[v]) for v in variables}
    if any(weights[v] <= 0 for v in variables):
        raise ValidationError("line thresholds need positive weights on all variables")
    problem = _balas_problem(regions, variables, wt=weights)
    result = lp_solve(problem)
    if result.status != "optimal":
        raise ValidationError(f"threshold LP is {result.status}; regions are malformed")
    return result.value


# ---------------------------------------------------------------------------
# the 2-dimensional shortcut and the conditional hull test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShortcutResult:
    applicable: bool
    reason: str
    tau: str | None = None
    kappa: str | None = None
    product: Fraction | None = None
    passes: bool | None = None


def shortcut_2d(G, T1, T2, wt, types, profile, cyc) -> ShortcutResult:
    """The pairwise product criterion deciding hull membership in 2-D.

    Requires the minimum-weight types to split as M\\{kappa} inside T1 and
    M\\{tau} inside T2 for distinct minimum types tau, kappa; then the
    point lies in the hull iff M[tau,kappa]*M[kappa,tau] < 1.
    """
    from .regions import witness_type_labels
    a, argmin = min_weight(wt, types)
    del a
    labels_min = [t.label for t in argmin]
    t1 = set(witness_type_labels(frozenset(T1), types))
    t2 = set(witness_type_labels(frozenset(T2), types))
    pair = None
    for tau in labels_min:
        for kappa in labels_min:
            if tau == kappa:
                continue
            rest = set(labels_min)
            if rest - {kappa} <= t1 and rest - {tau} <= t2:
                pair = (tau, kappa)
                break
        if pair:
            break
    if pair is None:
        return ShortcutResult(applicable=False,
                              reason="minimum-weight types do not split into the two witnesses")
    tau, kappa = pair
    matrix = subconvexity_matrix(G, types, profile, cyc)
    product = matrix[(tau, kappa)] * matrix[(kappa, tau)]
    return ShortcutResult(applicable=True, reason="", tau=tau, kappa=kappa,
                          product=product, passes=product < 1)


def conditional_hull_point_check(point, witness_type_sets, gamma) -> bool:
    """Lindelof-preset hull test: the hull of the one-relaxed-orthant family
    contains every point exceeding 1 - (1-gamma)/n on covered coordinates
    (n = number of covered types) and exceeding 1 on uncovered ones."""
    gamma = Fraction(gamma)
    if not (0 <= gamma < 1):
        raise ValidationError("gamma must lie in [0, 1)")
    covered = set()
    for s in witness_type_sets:
        covered |= set(s)
    if not covered:
        raise ValidationError("no covered coordinates")
    n = len(covered)
    bound = 1 - Fraction(1 - gamma, n)
    for label, value in point.items():
        value = Fraction(value)
        if label in covered:
            if not value > bound:
                return False
        else:
            if not value > 1:
                return False
    return True
