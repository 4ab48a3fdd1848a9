"""Exact arithmetic foundation.

Three layers, all immutable and safe for concurrent use:

* ``Cyclo`` -- an element of the cyclotomic field Q(zeta_e), stored in the
  power basis 1, zeta, ..., zeta^(phi(e)-1) reduced modulo the e-th
  cyclotomic polynomial, with big-rational coordinates.  Reduction is
  canonical, so equality is coefficient-wise.
* ``CycloLaurent`` -- a sparse Laurent polynomial in the formal variable
  u = w^(-1/e) with ``Cyclo`` coefficients.  An element *descends* to
  Z[zeta_e][w^-1] when every stored u-exponent is divisible by e.
* ``CurvePolynomial`` -- a polynomial in v whose coefficients are
  ``CycloLaurent`` values; this is the container for plane-curve data.

The branch of the e-th root used by all numerical evaluation is fixed as

    u = |w|^(-1/e) * exp(-(arg w + 2*pi*branch) * i / e),

and every operation that consumes a branch takes it explicitly.
"""

from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConsistencyError, DescentError

Rat = Fraction | int


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Coefficients of the e-th cyclotomic polynomial, ascending, monic."""
    if e < 1:
        raise ValueError("order must be >= 1")
    # Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d, computed by exact division.
    num = [0] * (e + 1)
    num[0], num[e] = -1, 1
    for d in range(1, e):
        if e % d:
            continue
        phi_d = cyclotomic_polynomial(d)
        num = _polydiv_exact(num, list(phi_d))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # Monic integer divisor; division must be exact.
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(den) - 1]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                rem[k + j] -= c * dj
    if any(rem[: len(den) - 1]):
        raise ConsistencyError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(e: int, upto: int) -> tuple[tuple[int, ...], ...]:
    """Integer rows expressing zeta^k (k < upto) in the power basis mod Phi_e."""
    phi = euler_phi(e)
    mod = cyclotomic_polynomial(e)
    top = tuple(-c for c in mod[:phi])  # zeta^phi in the basis
    rows: list[tuple[int, ...]] = []
    for k in range(upto):
        if k < phi:
            row = tuple(1 if j == k else 0 for j in range(phi))
        else:
            prev = rows[k - 1]
            shifted = [0] + list(prev[: phi - 1])
            carry = prev[phi - 1]
            if carry:
                shifted = [s + carry * t for s, t in zip(shifted, top)]
            row = tuple(shifted)
        rows.append(row)
    return tuple(rows)


class Cyclo:
    """An element of Q(zeta_e) in the canonical power basis."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[Rat], _reduced: bool = False):
        self.order = order
        phi = euler_phi(order)
        if _reduced:
            self.coeffs = tuple(coeffs)
            return
        vec = [Fraction(0)] * phi
        rows = _reduction_rows(order, max(len(coeffs), phi))
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if not c:
                continue
            row = rows[k]
            for j in range(phi):
                if row[j]:
                    vec[j] += c * row[j]
        self.coeffs = tuple(vec)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Cyclo":
        return cls(order, (Fraction(0),) * euler_phi(order), _reduced=True)

    @classmethod
    def from_rational(cls, order: int, value: Rat) -> "Cyclo":
        phi = euler_phi(order)
        vec = [Fraction(0)] * phi
        vec[0] = Fraction(value)
        return cls(order, vec, _reduced=True)

    @classmethod
    def omega(cls, order: int, power: int = 1) -> "Cyclo":
        power %= order
        return cls(order, [0] * power + [1])

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    # -- ring operations ----------------------------------------------

    def _check(self, other: "Cyclo") -> None:
        if self.order != other.order:
            raise ValueError("mixed cyclotomic orders; embed first")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.from_rational(self.order, other)
        self._check(other)
        return Cyclo(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-a for a in self.coeffs), _reduced=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.from_rational(self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclo(self.order, tuple(a * q for a in self.coeffs), _reduced=True)
        self._check(other)
        phi = len(self.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    conv[i + j] += a * b
        return Cyclo(self.order, conv)

    __rmul__ = __mul__

    def __truediv__(self, other: Rat):
        q = Fraction(other)
        return Cyclo(self.order, tuple(a / q for a in self.coeffs), _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return isinstance(other, Cyclo) and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- embeddings and evaluation --------------------------------------

    def embed(self, new_order: int) -> "Cyclo":
        """Ring-homomorphic embedding Q(zeta_e) -> Q(zeta_{e*k}) via zeta_e = zeta_{ek}^k."""
        if new_order % self.order:
            raise ValueError("new order must be a multiple of the old order")
        k = new_order // self.order
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * k + 1 or 1)
        for j, c in enumerate(self.coeffs):
            raw[j * k] = c
        return Cyclo(new_order, raw)

    def to_complex(self) -> complex:
        root = cmath.exp(2j * math.pi / self.order)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * root + complex(c)
        return acc

    def __repr__(self):
        return f"Cyclo({self.order}, {self._pretty()})"

    def _pretty(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            sym = "" if j == 0 else (f"zeta{self.order}" if j == 1 else f"zeta{self.order}^{j}")
            if j == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(sym)
            elif c == -1:
                parts.append(f"-{sym}")
            else:
                parts.append(f"{c}*{sym}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def cyclo_reduce(raw: Sequence[Rat], e: int) -> Cyclo:
    """Reduce a polynomial in zeta (ascending coefficients) to canonical form mod Phi_e."""
    return Cyclo(e, [Fraction(c) for c in raw])


def branch_root(w: complex, e: int, branch: int = 0) -> complex:
    """The chosen value of u = w^(-1/e)."""
    if w == 0:
        raise ZeroDivisionError("u = w^(-1/e) has a pole at w = 0")
    r = abs(w) ** (-1.0 / e)
    theta = -(cmath.phase(w) + 2.0 * math.pi * branch) / e
    return r * cmath.exp(1j * theta)


class CycloLaurent:
    """Sparse Laurent polynomial in u = w^(-1/e) over Q(zeta_e)."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[int, Cyclo] | None = None):
        self.order = order
        clean: dict[int, Cyclo] = {}
        if terms:
            for k, c in terms.items():
                if not isinstance(c, Cyclo):
                    c = Cyclo.from_rational(order, c)
                if c:
                    clean[int(k)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "CycloLaurent":
        return cls(order)

    @classmethod
    def const(cls, order: int, value: Rat) -> "CycloLaurent":
        return cls(order, {0: Cyclo.from_rational(order, value)})

    @classmethod
    def w_power(cls, order: int, m: int, coeff: Rat = 1) -> "CycloLaurent":
        """coeff * w^(-m), i.e. coeff * u^(e*m)."""
        return cls(order, {m * order: Cyclo.from_rational(order, coeff)})

    @classmethod
    def u_power(cls, order: int, k: int, coeff: Cyclo | Rat = 1) -> "CycloLaurent":
        if not isinstance(coeff, Cyclo):
            coeff = Cyclo.from_rational(order, coeff)
        return cls(order, {k: coeff})

    @classmethod
    def from_w_coeffs(cls, order: int, coeffs: Sequence[Rat]) -> "CycloLaurent":
        """coeffs[m] is the coefficient of w^(-m)."""
        return cls(order, {m * order: Cyclo.from_rational(order, c) for m, c in enumerate(coeffs) if c})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def descends(self) -> bool:
        """True when the element lies in Q(zeta_e)[w^-1, w], i.e. e | k for all exponents."""
        return all(k % self.order == 0 for k in self.terms)

    def is_integral(self) -> bool:
        """True when the element lies in Z[w^-1, w]: descends, rational, integer."""
        return self.descends() and all(c.is_integer() for c in self.terms.values())

    def min_subfield_order(self) -> int:
        """Order of the smallest cyclotomic subfield containing all coefficients (1 = rational)."""
        if all(c.is_rational() for c in self.terms.values()):
            return 1
        divisors = [d for d in range(2, self.order + 1) if self.order % d == 0]
        for d in divisors:
            try:
                for c in self.terms.values():
                    _subfield_coords(c, d)
            except ValueError:
                continue
            return d
        return self.order

    def max_w_degree(self) -> int:
        """Largest m with a nonzero w^(-m) part (0 for constants); requires descent."""
        if not self.terms:
            return 0
        if not self.descends():
            raise DescentError("fractional u-exponents present")
        return max(k // self.order for k in self.terms)

    def coeff_of_w(self, m: int) -> Cyclo:
        return self.terms.get(m * self.order, Cyclo.zero(self.order))

    # -- ring operations ----------------------------------------------

    def _check(self, other: "CycloLaurent") -> None:
        if self.order != other.order:
            raise ValueError("mixed orders; embed first")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloLaurent.const(self.order, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            t = c if s is None else s + c
            if t:
                out[k] = t
            elif s is not None:
                del out[k]
        res = CycloLaurent(self.order)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = CycloLaurent(self.order)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloLaurent.const(self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycloLaurent.zero(self.order)
            q = Fraction(other)
            res = CycloLaurent(self.order)
            res.terms = {k: c * q for k, c in self.terms.items()}
            return res
        if isinstance(other, Cyclo):
            other = CycloLaurent(self.order, {0: other})
        self._check(other)
        out: dict[int, Cyclo] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = ka + kb
                p = ca * cb
                s = out.get(k)
                t = p if s is None else s + p
                if t:
                    out[k] = t
                elif s is not None:
                    del out[k]
        res = CycloLaurent(self.order)
        res.terms = out
        return res

    __rmul__ = __mul__

    def divexact(self, n: int) -> "CycloLaurent":
        res = CycloLaurent(self.order)
        res.terms = {k: c / n for k, c in self.terms.items()}
        return res

    def zero_like(self) -> "CycloLaurent":
        return CycloLaurent.zero(self.order)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloLaurent.const(self.order, other)
        return isinstance(other, CycloLaurent) and self.order == other.order and self.terms == other.terms

    def substitute_u_scale(self, factor: Cyclo) -> "CycloLaurent":
        """The map u -> factor * u (used to rotate between branch families)."""
        out: dict[int, Cyclo] = {}
        for k, c in self.terms.items():
            if k >= 0:
                scaled = c
                for _ in range(k):
                    scaled = scaled * factor
            else:
                raise ValueError("u-scale substitution needs nonnegative exponents")
            if scaled:
                out[k] = scaled
        res = CycloLaurent(self.order)
        res.terms = out
        return res

    # -- embedding and evaluation ---------------------------------------

    def embed(self, new_order: int) -> "CycloLaurent":
        if new_order % self.order:
            raise ValueError("new order must be a multiple of the old order")
        k = new_order // self.order
        res = CycloLaurent(new_order)
        res.terms = {exp * k: c.embed(new_order) for exp, c in self.terms.items()}
        return res

    def eval_u(self, u: complex) -> complex:
        acc = 0j
        for k, c in self.terms.items():
            acc += c.to_complex() * u**k
        return acc

    def eval_w(self, w: complex, branch: int = 0) -> complex:
        if w == 0:
            if any(k > 0 for k in self.terms):
                raise ZeroDivisionError("pole at w = 0")
            return self.eval_u(0j)
        return self.eval_u(branch_root(w, self.order, branch))

    def __repr__(self):
        if not self.terms:
            return "CycloLaurent(0)"
        bits = []
        for k in sorted(self.terms):
            bits.append(f"u^{k}*[{self.terms[k]._pretty()}]")
        return "CycloLaurent(" + " + ".join(bits) + f"; e={self.order})"


def _subfield_coords(c: Cyclo, d: int) -> list[Fraction]:
    """Coordinates of c in Q(zeta_d) under zeta_d = zeta_e^(e/d); ValueError if outside."""
    e = c.order
    step = e // d
    phi_d = euler_phi(d)
    probe = [Fraction(0)] * ((phi_d - 1) * step + 1 or 1)
    # Solve by expressing the candidate basis in the big field and matching: the basis
    # vectors zeta_e^(j*step) reduce to integer rows; solve the small linear system.
    rows = []
    for j in range(phi_d):
        probe_c = Cyclo.omega(e, (j * step) % e)
        rows.append(probe_c.coeffs)
    phi_e = euler_phi(e)
    # Gaussian elimination over Q for the phi_e x phi_d system rows^T x = c.coeffs.
    mat = [[rows[j][i] for j in range(phi_d)] + [c.coeffs[i]] for i in range(phi_e)]
    piv = []
    r = 0
    for col in range(phi_d):
        sel = next((i for i in range(r, phi_e) if mat[i][col]), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = Fraction(1) / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(phi_e):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv.append(col)
        r += 1
    sol = [Fraction(0)] * phi_d
    for i, col in enumerate(piv):
        sol[col] = mat[i][phi_d]
    for i in range(phi_e):
        if any(mat[i][:phi_d]):
            continue
        if mat[i][phi_d]:
            raise ValueError("not in subfield")
    check = Cyclo.zero(e)
    for j, s in enumerate(sol):
        if s:
            check = check + Cyclo.omega(e, (j * step) % e) * s
    if check != c:
        raise ValueError("not in subfield")
    return sol


class CurvePolynomial:
    """Polynomial in v with CycloLaurent coefficients (index = v-degree)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[CycloLaurent]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("empty coefficient list")
        order = coeffs[0].order
        for c in coeffs:
            if c.order != order:
                raise ValueError("mixed coefficient orders")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) == 1 and coeffs[0].is_zero():
            raise ValueError("zero polynomial is not a valid curve polynomial")
        self.order = order
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return (
            isinstance(other, CurvePolynomial)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __mul__(self, other: "CurvePolynomial") -> "CurvePolynomial":
        if self.order != other.order:
            raise ValueError("mixed orders; embed first")
        out = [CycloLaurent.zero(self.order) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return CurvePolynomial(out)

    def __pow__(self, n: int) -> "CurvePolynomial":
        out = CurvePolynomial([CycloLaurent.const(self.order, 1)])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def embed(self, new_order: int) -> "CurvePolynomial":
        return CurvePolynomial([c.embed(new_order) for c in self.coeffs])

    def descends(self) -> bool:
        return all(c.descends() for c in self.coeffs)

    def max_w_degree(self) -> int:
        return max(c.max_w_degree() for c in self.coeffs)

    def eval_complex(self, v: complex, w: complex, branch: int = 0) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * v + c.eval_w(w, branch)
        return acc

    # -- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        coeffs = []
        for lau in self.coeffs:
            entry = []
            for k in sorted(lau.terms):
                vec = [str(f) for f in lau.terms[k].coeffs]
                entry.append([k, vec])
            coeffs.append(entry)
        return {"e": self.order, "v_degree": self.degree, "coeffs": coeffs}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CurvePolynomial":
        e = int(data["e"])
        out = []
        for entry in data["coeffs"]:
            terms = {}
            for k, vec in entry:
                terms[int(k)] = Cyclo(e, [Fraction(s) for s in vec], _reduced=True)
            out.append(CycloLaurent(e, terms))
        poly = cls(out)
        if poly.degree != int(data["v_degree"]):
            raise ValueError("degree mismatch in serialized data")
        return poly

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "CurvePolynomial":
        return cls.from_json_dict(json.loads(text))

    # -- printing --------------------------------------------------------

    def canonical_str(self, latex: bool = False) -> str:
        parts: list[str] = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            sign, body, atomic = _coeff_text(c, latex)
            vpow = _v_text(j, latex)
            if vpow and body == "1":
                term = vpow
            elif vpow:
                body_txt = body if atomic else f"({body})"
                term = f"{body_txt}{'' if latex else '*'}{vpow}"
            else:
                term = body if atomic else f"({body})"
            if not parts:
                parts.append(term if sign > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if sign > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"CurvePolynomial<{self.canonical_str()}>"


def _v_text(j: int, latex: bool) -> str:
    if j == 0:
        return ""
    if j == 1:
        return "v"
    return f"v^{{{j}}}" if latex else f"v^{j}"


def _u_text(k: int, e: int, latex: bool) -> str:
    if k == 0:
        return ""
    if k % e == 0:
        m = k // e
        return (f"w^{{-{m}}}" if latex else f"w^-{m}") if m != 1 else ("w^{-1}" if latex else "w^-1")
    return f"w^{{-{k}/{e}}}" if latex else f"w^(-{k}/{e})"


def _coeff_text(c: CycloLaurent, latex: bool) -> tuple[int, str, bool]:
    """Render a coefficient; returns (sign, text-without-outer-sign, atomic?)."""
    items: list[tuple[int, int, Fraction]] = []
    for k in sorted(c.terms):
        cy = c.terms[k]
        for j, q in enumerate(cy.coeffs):
            if q:
                items.append((k, j, q))
    lead_sign = 1 if items[0][2] > 0 else -1
    bits: list[str] = []
    for idx, (k, j, q) in enumerate(items):
        q = q * lead_sign
        mag = -q if q < 0 else q
        sym_u = _u_text(k, c.order, latex)
        if j == 0:
            sym_z = ""
        elif j == 1:
            sym_z = f"\\omega_{{{c.order}}}" if latex else f"zeta{c.order}"
        else:
            sym_z = f"\\omega_{{{c.order}}}^{{{j}}}" if latex else f"zeta{c.order}^{j}"
        syms = [s for s in (sym_z, sym_u) if s]
        if not syms:
            body = str(mag)
        elif mag == 1:
            body = ("" if latex else "*").join(syms) if latex else "*".join(syms)
        else:
            body = ("" if latex else "*").join([str(mag)] + syms) if latex else "*".join([str(mag)] + syms)
        if idx == 0:
            bits.append(body)
        else:
            bits.append(("+ " if q > 0 else "- ") + body)
    atomic = len(items) == 1
    return lead_sign, " ".join(bits), atomic


def eval_complex(P: CurvePolynomial, v: complex, w: complex, branch: int = 0) -> complex:
    """Numerically evaluate a curve polynomial at (v, w) on the chosen u-branch."""
    return P.eval_complex(v, w, branch)


def substitute_fugacity_line(P: CurvePolynomial, L: int, N: int, gamma: complex) -> np.ndarray:
    """Restrict the curve to the line w = (-1)^(N+1) * exp(L*gamma) * v.

    Clears denominators by w^D (D the largest w^-1 power), substitutes, and
    strips the extraneous v^D factor after verifying -- exactly, coefficient
    by coefficient in the fugacity grading -- that it is present.  Returns the
    ascending complex coefficients of the residual degree-K polynomial whose
    root multiset is the v-spectrum of physical plus singular solutions.
    """
    e = P.order
    for c in P.coeffs:
        if not c.descends():
            raise DescentError("curve data does not descend to Z[zeta_e][w^-1]")
    D = P.max_w_degree()
    K = P.degree
    # graded[r][p] is the Cyclo multiplying s^p * v^r after clearing, s the line slope
    graded: list[dict[int, Cyclo]] = [dict() for _ in range(K + D + 1)]
    for j, lau in enumerate(P.coeffs):
        for k, cy in lau.terms.items():
            m = k // e
            r = j + D - m
            p = D - m
            slot = graded[r]
            cur = slot.get(p)
            t = cy if cur is None else cur + cy
            if t:
                slot[p] = t
            elif cur is not None:
                del slot[p]
    for r in range(D):
        if graded[r]:
            raise ConsistencyError("line substitution did not produce an exact v^D factor")
    s = (-1) ** (N + 1) * cmath.exp(L * complex(gamma))
    out = np.zeros(K + 1, dtype=complex)
    for r in range(D, K + D + 1):
        acc = 0j
        for p, cy in graded[r].items():
            acc += cy.to_complex() * s**p
        out[r - D] = acc
    # normalize away the s^D scale introduced by clearing; the top v-coefficient
    # of the curve is exactly 1, so this makes the residual polynomial monic
    out /= out[K]
    return out
