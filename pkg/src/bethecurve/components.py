"""Per-component defining polynomials and the product decomposition.

When e = gcd(L, N) > 1 the branch equation splits into e family equations,
one per residue package, each a degree-L' equation whose u-coefficient picks
up a root-of-unity weight.  Subset products restricted to one component are
assembled family-wise: the power sum of a component is a sum over the
distinct rotations of its occupancy tuple of products of rectangular
monomial values of the family roots.  Newton identities then give the
component's elementary values and its defining polynomial in v, which must
descend to Z[zeta_e][w^-1].

The product of all component polynomials reproduces the full defining
polynomial exactly; this identity is checked, not assumed, whenever a full
factorization is computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Sequence

from ._fastpoly import CPoly
from .errors import BudgetError, ConsistencyError, DescentError
from .exactalg import CurvePolynomial, Cyclo, CycloLaurent
from .orbits import (
    OrbitLabel,
    all_labels,
    approx_classes,
    gm_power_components,
    orbit_cardinality,
    within_orbit_multiplicity,
)
from .symfun import (
    defining_polynomial,
    elementary_from_power_sums,
    monomial_rectangular,
    power_sums_from_elementary,
)

ORBIT_DEGREE_BUDGET_DEFAULT = 400


@dataclass(frozen=True)
class FamilyData:
    """Vieta data of one family equation omega^(k-1) w^(1/e) = t^N'/(1-t)^L'."""

    L: int
    N: int
    k: int
    elementary: tuple[CycloLaurent, ...]  # e_1 .. e_L'
    power_sums: tuple[CycloLaurent, ...]


def _family_elementary_fast(L: int, N: int, k: int) -> list[CPoly]:
    e = gcd(L, N)
    Lp, Np = L // e, N // e
    omega_vec = [f.numerator for f in Cyclo.omega(e, (1 - k) % e).coeffs]
    out = []
    for i in range(1, Lp + 1):
        terms = {0: [comb(Lp, i)] + [0] * (len(omega_vec) - 1)}
        if i == Lp - Np:
            sign = -((-1) ** Np)
            terms[1] = [sign * x for x in omega_vec]
        out.append(CPoly.from_cyclo_units(e, terms))
    return out


def family_data(L: int, N: int, k: int, depth: int | None = None) -> FamilyData:
    """Exact Vieta coefficients and power sums of the k-th family equation."""
    e = gcd(L, N)
    if e == 1:
        raise ValueError("families exist only when gcd(L, N) > 1; use the full-curve path")
    if not 1 <= k <= e:
        raise ValueError(f"family index must lie in 1..{e}")
    Lp = L // e
    elems = _family_elementary_fast(L, N, k)
    depth = depth if depth is not None else Lp
    ps = power_sums_from_elementary(elems, depth)
    return FamilyData(
        L,
        N,
        k,
        tuple(x.to_cyclolaurent() for x in elems),
        tuple(x.to_cyclolaurent() for x in ps),
    )


@dataclass(frozen=True)
class ComponentPolynomial:
    """Defining data of one connected component."""

    label: OrbitLabel
    f: CurvePolynomial  # degree = orbit cardinality, coefficients over Q(zeta_e)
    multiplicity_class: int  # index of the component's replacement class
    root_multiplicity: int  # uniform collapse of the value map on this component
    reduced: CurvePolynomial  # f = reduced ** root_multiplicity
    min_subfield_order: int  # smallest cyclotomic field containing the coefficients

    @property
    def degree(self) -> int:
        return self.f.degree


class _ComponentBuilder:
    """Shared family data for building every component of one (L, N)."""

    def __init__(self, L: int, N: int, budget: int):
        self.L, self.N, self.budget = L, N, budget
        self.e = gcd(L, N)
        self.Lp = L // self.e
        self.max_deg = max(orbit_cardinality(lbl, L, N) for lbl in all_labels(L, N))
        self.classes = approx_classes(L, N)
        self.class_of = {
            lbl: idx for idx, group in enumerate(self.classes) for lbl in group
        }
        self._family_ps: dict[int, list[CPoly]] = {}
        self._m_cache: dict[tuple[int, int, int], CPoly] = {}

    def family_power_sums(self, k: int, upto: int) -> list[CPoly]:
        have = self._family_ps.get(k)
        if have is None or len(have) < upto:
            elems = _family_elementary_fast(self.L, self.N, k)
            self._family_ps[k] = power_sums_from_elementary(elems, upto)
        return self._family_ps[k]

    def rect_monomial(self, k: int, A: int, n: int) -> CPoly:
        if A == 0:
            return CPoly.const(self.e, 1)
        key = (k, A, n)
        got = self._m_cache.get(key)
        if got is None:
            ps = self.family_power_sums(k, A * n)
            got = monomial_rectangular(ps, n, A) if A > 1 else ps[n - 1]
            self._m_cache[key] = got
        return got

    def orbit_power_sums(self, label: OrbitLabel, upto: int) -> list[CPoly]:
        rep = label.rep
        ell = label.shift_count
        out = []
        for n in range(1, upto + 1):
            acc = CPoly(self.e)
            for s in range(ell):
                prod = CPoly.const(self.e, 1)
                for j in range(self.e):
                    prod = prod * self.rect_monomial(j + 1, rep[(j + s) % self.e], n)
                acc = acc + prod
            out.append(acc)
        return out

    def build(self, label: OrbitLabel) -> ComponentPolynomial:
        deg = orbit_cardinality(label, self.L, self.N)
        if deg > self.budget:
            raise BudgetError(
                f"component degree {deg} exceeds the exact-construction budget {self.budget}"
            )
        P = self.orbit_power_sums(label, deg)
        E = elementary_from_power_sums(P, deg)
        coeffs = [CPoly.const(self.e, 1) if i == 0 else E[i - 1] * ((-1) ** i) for i in range(deg + 1)]
        coeffs.reverse()
        for c in coeffs:
            if not c.descends():
                raise ConsistencyError(
                    "component polynomial kept a fractional u-exponent; descent failed"
                )
        mult = within_orbit_multiplicity(label, self.L, self.N)
        if mult > 1:
            Q = [p.divexact(mult) for p in P[: deg // mult]]
            Er = elementary_from_power_sums(Q, deg // mult)
            red = [
                CPoly.const(self.e, 1) if i == 0 else Er[i - 1] * ((-1) ** i)
                for i in range(deg // mult + 1)
            ]
            red.reverse()
            if _vpoly_power(red, mult, self.e) != coeffs:
                raise ConsistencyError("reduced component polynomial failed the power identity")
        else:
            red = coeffs
        f = CurvePolynomial([c.to_cyclolaurent() for c in coeffs])
        reduced = CurvePolynomial([c.to_cyclolaurent() for c in red])
        field = 1
        for c in f.coeffs:
            d = c.min_subfield_order()
            field = field * d // gcd(field, d)
        return ComponentPolynomial(
            label, f, self.class_of[label], mult, reduced, field
        )


def _vpoly_mul(a: Sequence[CPoly], b: Sequence[CPoly], e: int) -> list[CPoly]:
    out = [CPoly(e) for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            if not cb.is_zero():
                out[i + j] = out[i + j] + ca * cb
    return out


def _vpoly_power(base: Sequence[CPoly], n: int, e: int) -> list[CPoly]:
    out = [CPoly.const(e, 1)]
    for _ in range(n):
        out = _vpoly_mul(out, base, e)
    return out


def component_polynomial(
    L: int, N: int, label: OrbitLabel, budget: int = ORBIT_DEGREE_BUDGET_DEFAULT
) -> ComponentPolynomial:
    """Defining polynomial of the component with the given label."""
    e = gcd(L, N)
    if label.e != e or sum(label.rep) != N:
        raise ValueError("label does not belong to this (L, N)")
    if e == 1:
        f = defining_polynomial(L, N)
        return ComponentPolynomial(label, f, 0, 1, f, 1)
    return _ComponentBuilder(L, N, budget).build(label)


@lru_cache(maxsize=None)
def _full_factorization_cached(L: int, N: int, budget: int) -> tuple[ComponentPolynomial, ...]:
    e = gcd(L, N)
    labels = all_labels(L, N)
    if e == 1:
        return (component_polynomial(L, N, labels[0]),)
    builder = _ComponentBuilder(L, N, budget)
    comps = tuple(builder.build(lbl) for lbl in labels)
    # master identity: the product of the component polynomials is the curve
    prod = [CPoly.const(e, 1)]
    for comp in comps:
        fac = [CPoly.from_cyclolaurent(c) for c in comp.f.coeffs]
        prod = _vpoly_mul(prod, fac, e)
    full = defining_polynomial(L, N).embed(e)
    got = CurvePolynomial([c.to_cyclolaurent() for c in prod])
    if got != full:
        raise ConsistencyError("component product does not reproduce the defining polynomial")
    # replacement-related labels share one irreducible image
    for group in builder.classes:
        members = [c for c in comps if c.label in group]
        if len(members) < 2:
            continue
        reduced = {m.reduced.to_json() for m in members}
        if len(reduced) != 1:
            raise ConsistencyError(
                "replacement-related components produced different irreducible images"
            )
    return comps


def full_factorization(
    L: int, N: int, budget: int = ORBIT_DEGREE_BUDGET_DEFAULT
) -> tuple[ComponentPolynomial, ...]:
    """All component polynomials, with the exact product identity verified."""
    return _full_factorization_cached(L, N, budget)


def eigenvalue_of_gm_component(L: int, N: int, label: OrbitLabel) -> Fraction:
    """Markov eigenvalue shared by every root on a power-of-(v-1) component."""
    qualifying = dict(gm_power_components(L, N))
    if label not in qualifying:
        raise ValueError(f"label {label} is not a power-of-(v-1) component for ({L}, {N})")
    e = gcd(L, N)
    Lp, Np = L // e, N // e
    h = sum(1 for v in label.rep if v == Lp)
    return Fraction(h * (Np - Lp))


def substitute_w_equals_v(P: CurvePolynomial) -> tuple[Cyclo, ...]:
    """Set w = v in a curve polynomial; returns ascending univariate coefficients.

    Requires descent (integer w-powers) and a polynomial outcome (no negative
    v-powers survive).
    """
    e = P.order
    low = 0
    acc: dict[int, Cyclo] = {}
    for j, lau in enumerate(P.coeffs):
        if not lau.descends():
            raise DescentError("fractional u-exponents cannot be substituted by w = v")
        for k, cy in lau.terms.items():
            deg = j - k // e
            low = min(low, deg)
            cur = acc.get(deg)
            t = cy if cur is None else cur + cy
            if t:
                acc[deg] = t
            elif cur is not None:
                del acc[deg]
    if low < 0:
        raise ConsistencyError("substitution w = v produced negative powers")
    top = max(acc) if acc else 0
    return tuple(acc.get(d, Cyclo.zero(e)) for d in range(top + 1))
