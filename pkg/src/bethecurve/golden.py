"""Frozen reference factorizations used by the regression harness.

The datasets were transcribed once into JSON files under ``golden/`` as exact
rationals; square roots of 5 are expressed through the fifth root of unity
(sqrt5 = 1 + 2*zeta5 + 2*zeta5^4) so every coefficient lives in a cyclotomic
field.  Two forms appear:

* ``vw`` -- factors of the full defining polynomial as polynomials in v with
  w^-1 coefficient lists;
* ``v`` -- factors of the curve after the substitution w = v (univariate).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .exactalg import CurvePolynomial, Cyclo, CycloLaurent

CASES = ("6,3", "8,4", "10,5", "9,3")


@dataclass(frozen=True)
class GoldenFactor:
    labels: tuple[tuple[int, ...], ...]
    power: int
    # exactly one of the two, depending on the dataset form
    poly_vw: CurvePolynomial | None
    poly_v: tuple[Cyclo, ...] | None


@dataclass(frozen=True)
class GoldenCase:
    L: int
    N: int
    form: str
    order: int
    factors: tuple[GoldenFactor, ...]


def _entry_to_cyclo(entry: list[str], order: int, basis: str) -> Cyclo:
    vals = [Fraction(s) for s in entry]
    if basis == "rational":
        return Cyclo.from_rational(order, vals[0])
    if basis == "omega":
        # the reference symbol is the negated primitive cube root: a + b*(-zeta3)
        a, b = vals
        return Cyclo(order, [a, -b])
    if basis == "sqrt5":
        a, b = vals
        return Cyclo(5, [a - b, 0, -2 * b, -2 * b])
    raise ValueError(f"unknown basis {basis!r}")


def _mul_univariate(a: list[Cyclo], b: list[Cyclo]) -> list[Cyclo]:
    order = a[0].order
    out = [Cyclo.zero(order) for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


def load_case(name: str) -> GoldenCase:
    L, N = (int(x) for x in name.split(","))
    fname = f"case_{L}_{N}.json"
    with resources.files("bethecurve").joinpath("golden_data", fname).open() as fh:
        data = json.load(fh)
    order = data["order"]
    basis = data["basis"]
    form = data["form"]
    factors = []
    for fac in data["factors"]:
        labels = tuple(tuple(lbl) for lbl in fac["labels"])
        if form == "vw":
            poly = None
            for part in fac["parts"]:
                coeffs = [
                    CycloLaurent(
                        order,
                        {m * order: _entry_to_cyclo([s], order, basis) for m, s in enumerate(wlist)},
                    )
                    for wlist in part
                ]
                p = CurvePolynomial(coeffs)
                poly = p if poly is None else poly * p
            factors.append(GoldenFactor(labels, fac["power"], poly, None))
        else:
            uni: list[Cyclo] | None = None
            for part in fac["parts"]:
                cs = [_entry_to_cyclo(entry, order, basis) for entry in part]
                uni = cs if uni is None else _mul_univariate(uni, cs)
            factors.append(GoldenFactor(labels, fac["power"], None, tuple(uni)))
    return GoldenCase(L, N, form, order, tuple(factors))


def expected_full_product(case: GoldenCase) -> CurvePolynomial:
    """Expand the factored reference data to the full defining polynomial (vw form only)."""
    if case.form != "vw":
        raise ValueError("full product available only for vw-form datasets")
    out: CurvePolynomial | None = None
    for fac in case.factors:
        p = fac.poly_vw**fac.power
        out = p if out is None else out * p
    return out
