"""Exact Laurent-polynomial partition functions over matchings: the white
and black boundary-weight formulas, the twist expression, and exact
boundary measurements with Plücker-relation checking.

Laurent polynomials are stored sparsely: each term maps an integer exponent
vector (indexed by a declared basis, e.g. quiver vertices) to an integer
coefficient. All arithmetic is exact; rational evaluation uses Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Tuple

from .kclass_weights import kclass_of_matching, weights
from .lattice_maps import eta, lattice_point_of_matching
from .matchings import boundary_value, enumerate_matchings, matchings_with_boundary
from .model import BLACK, WHITE, DimerModel, is_standardised, type_of
from .strands import require_consistent

ExponentVector = Tuple[Tuple[int, int], ...]  # sorted (index, exponent) pairs


@dataclass(frozen=True)
class LaurentPoly:
    basis: str
    terms: Tuple[Tuple[ExponentVector, int], ...]  # sorted, no zero coeffs

    @staticmethod
    def from_terms(basis: str,
                   terms: Iterable[Tuple[Mapping[int, int], int]]) -> "LaurentPoly":
        acc: Dict[ExponentVector, int] = {}
        for exp, coeff in terms:
            key = tuple(sorted((i, e) for i, e in exp.items() if e != 0))
            acc[key] = acc.get(key, 0) + coeff
        cleaned = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
        return LaurentPoly(basis, cleaned)

    @staticmethod
    def zero(basis: str) -> "LaurentPoly":
        return LaurentPoly(basis, ())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.basis != other.basis:
            raise TypeError(f"cannot add polynomials over bases "
                            f"{self.basis!r} and {other.basis!r}")
        return LaurentPoly.from_terms(
            self.basis,
            [(dict(k), c) for k, c in self.terms + other.terms])

    def shifted(self, exp: Mapping[int, int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        out = []
        for key, coeff in self.terms:
            d = dict(key)
            for i, e in exp.items():
                d[i] = d.get(i, 0) + e
            out.append((d, coeff))
        return LaurentPoly.from_terms(self.basis, out)

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, coeff in self.terms:
            exp = "{" + ",".join(f"{i}:{e}" for i, e in key) + "}"
            parts.append(f"{coeff}*x^{exp}")
        return " + ".join(parts)


def _neg(exp: Mapping[int, int]) -> Dict[int, int]:
    return {i: -e for i, e in exp.items()}


VERTEX_BASIS = "vertices"


def ms_formula_white(model: DimerModel, I: Iterable[int]) -> LaurentPoly:
    """MS°[I] = x^{−wtD} Σ_{μ: ∂μ=I} x^{wt°(μ)}; the zero polynomial when
    no matching has boundary I. Requires a ∘-standardised model."""
    if not is_standardised(model, WHITE):
        raise ValueError("model is not standardised with white boundary faces")
    require_consistent(model)
    pool = matchings_with_boundary(model, I)
    terms = []
    for mu in pool:
        wt, wtd = weights(model, mu, WHITE)
        exp = dict(wt.as_dict())
        for v, e in wtd.as_dict().items():
            exp[v] = exp.get(v, 0) - e
        terms.append((exp, 1))
    return LaurentPoly.from_terms(VERTEX_BASIS, terms)


def ms_formula_white_v2(model: DimerModel, I: Iterable[int]) -> LaurentPoly:
    """MS°[I] = x^{[P_I°]} Σ_{∂μ=I} x^{−[N_μ]}, with
    [P_I°] = Σ_{i∈I} p_{h α_i}. Equals ms_formula_white exactly."""
    if not is_standardised(model, WHITE):
        raise ValueError("model is not standardised with white boundary faces")
    require_consistent(model)
    I = frozenset(I)
    p_I: Dict[int, int] = {}
    for i in I:
        h = model.boundary_arrow_with_label(i).head
        p_I[h] = p_I.get(h, 0) + 1
    terms = []
    for mu in matchings_with_boundary(model, I):
        exp = _neg(kclass_of_matching(model, mu).as_dict())
        for v, e in p_I.items():
            exp[v] = exp.get(v, 0) + e
        terms.append((exp, 1))
    return LaurentPoly.from_terms(VERTEX_BASIS, terms)


def ms_formula_black(model: DimerModel, I: Iterable[int]) -> LaurentPoly:
    """MS•[I] = x^{−wtD} Σ_{∂μ=I} x^{wt•(μ)} on a •-standardised model;
    satisfies MS°_D(I) = MS•_{D^op}(I^c) under the shared vertex ids."""
    if not is_standardised(model, BLACK):
        raise ValueError("model is not standardised with black boundary faces")
    require_consistent(model)
    pool = matchings_with_boundary(model, I)
    terms = []
    for mu in pool:
        wt, wtd = weights(model, mu, BLACK)
        exp = dict(wt.as_dict())
        for v, e in wtd.as_dict().items():
            exp[v] = exp.get(v, 0) - e
        terms.append((exp, 1))
    return LaurentPoly.from_terms(VERTEX_BASIS, terms)


def musp_twist_expression(model: DimerModel, I: Iterable[int]) -> LaurentPoly:
    """Σ_{μ: ∂μ=I} x^{−η(μ)}; raises when I is not a boundary value."""
    require_consistent(model)
    pool = matchings_with_boundary(model, I)
    if not pool:
        raise ValueError(f"{sorted(set(I))} is not in the positroid")
    terms = []
    for mu in pool:
        exp = _neg(eta(model, lattice_point_of_matching(model, mu)).as_dict())
        terms.append((exp, 1))
    return LaurentPoly.from_terms(VERTEX_BASIS, terms)


@dataclass(frozen=True)
class PluckerVector:
    k: int
    n: int
    values: Tuple[Tuple[Tuple[int, ...], Fraction], ...]  # (sorted subset, value)

    def __getitem__(self, subset: Iterable[int]) -> Fraction:
        return dict(self.values)[tuple(sorted(subset))]

    def as_dict(self) -> Dict[Tuple[int, ...], Fraction]:
        return dict(self.values)


def boundary_measurement(model: DimerModel,
                         arrow_weights: Mapping[int, Fraction]) -> PluckerVector:
    """Z_I = Σ_{∂μ=I} Π_{γ∈μ} w(γ) over all k-subsets I (zero entries for
    subsets outside the positroid). Weights must be positive rationals."""
    require_consistent(model)
    k, n = type_of(model)
    w = {a.id: Fraction(arrow_weights[a.id]) for a in model.arrows}
    if any(x <= 0 for x in w.values()):
        raise ValueError("arrow weights must be positive")
    totals: Dict[Tuple[int, ...], Fraction] = {
        tuple(sorted(I)): Fraction(0) for I in combinations(range(1, n + 1), k)}
    for mu in enumerate_matchings(model):
        prod = Fraction(1)
        for aid in mu.arrow_set:
            prod *= w[aid]
        key = tuple(sorted(boundary_value(model, mu)))
        totals[key] += prod
    return PluckerVector(k, n, tuple(sorted(totals.items())))


def unit_weights(model: DimerModel) -> Dict[int, Fraction]:
    return {a.id: Fraction(1) for a in model.arrows}


@dataclass
class PluckerReport:
    checked: int
    failures: List[Tuple[Tuple[int, ...], Tuple[int, int, int, int]]]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_plucker_relations(vec: PluckerVector, k: int, n: int) -> PluckerReport:
    """Verify every three-term relation
    Z_{S∪ac}·Z_{S∪bd} = Z_{S∪ab}·Z_{S∪cd} + Z_{S∪ad}·Z_{S∪bc}
    for a<b<c<d and (k−2)-subsets S disjoint from {a,b,c,d}."""
    vals = vec.as_dict()
    expected = {tuple(sorted(I)) for I in combinations(range(1, n + 1), k)}
    if set(vals) != expected:
        raise ValueError("vector keys are not exactly the k-subsets of 1..n")
    if k < 2:
        return PluckerReport(0, [])

    def z(S: Tuple[int, ...], pair: Tuple[int, int]) -> Fraction:
        return vals[tuple(sorted(S + pair))]

    checked = 0
    failures = []
    for quad in combinations(range(1, n + 1), 4):
        a, b, c, d = quad
        rest = [x for x in range(1, n + 1) if x not in quad]
        for S in combinations(rest, k - 2):
            checked += 1
            lhs = z(S, (a, c)) * z(S, (b, d))
            rhs = z(S, (a, b)) * z(S, (c, d)) + z(S, (a, d)) * z(S, (b, c))
            if lhs != rhs:
                failures.append((S, quad))
    return PluckerReport(checked, failures)


def specialize(poly: LaurentPoly, assignment: Mapping[int, Fraction]) -> Fraction:
    """Evaluate the polynomial at the given nonzero rational values."""
    total = Fraction(0)
    for key, coeff in poly.terms:
        prod = Fraction(coeff)
        for i, e in key:
            x = Fraction(assignment[i])
            if x == 0:
                raise ValueError(f"assignment for index {i} must be nonzero")
            prod *= x ** e
        total += prod
    return total
