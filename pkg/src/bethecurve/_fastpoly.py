"""Dense integer polynomial kernels used by the symmetric-function pipelines.

Everything here is an implementation detail behind the public CycloLaurent
contracts.  Two representations:

* ``IPoly`` -- dense polynomial over Z, index = power of w^-1.
* ``CPoly`` -- dense polynomial in u = w^(-1/e) over Z[zeta_e], each
  coefficient a length-phi(e) integer vector in the canonical power basis.

Multiplication uses Kronecker substitution: coefficients are packed into a
single big integer (one fixed-width signed digit per slot), multiplied with
CPython's native big-int arithmetic, and unpacked.  All Newton-identity
divisions performed on these objects are exact in Z (the intermediates are
themselves integer symmetric functions); ``divexact`` checks that.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ConsistencyError
from .exactalg import Cyclo, CycloLaurent, _reduction_rows, euler_phi

_SCHOOLBOOK_CUTOFF = 24


def _offset(count: int, width: int) -> int:
    return ((1 << (width * count)) - 1) // ((1 << width) - 1) << (width - 1)


def _pack(coeffs: Sequence[int], width: int) -> int:
    nb = width // 8
    half = 1 << (width - 1)
    buf = bytearray(nb * len(coeffs))
    for i, c in enumerate(coeffs):
        buf[i * nb : (i + 1) * nb] = (c + half).to_bytes(nb, "little")
    return int.from_bytes(buf, "little") - _offset(len(coeffs), width)

def _unpack(n: int, count: int, width: int) -> list[int]:
    nb = width // 8
    half = 1 << (width - 1)
    raw = (n + _offset(count, width)).to_bytes(nb * count, "little")
    return [int.from_bytes(raw[i * nb : (i + 1) * nb], "little") - half for i in range(count)]


def conv_ints(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact convolution of integer sequences."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    out_len = la + lb - 1
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if ma == 0 or mb == 0:
        return [0] * out_len
    nza = sum(1 for c in a if c)
    nzb = sum(1 for c in b if c)
    if min(nza, nzb) <= 4 or la * lb <= _SCHOOLBOOK_CUTOFF:
        if nzb < nza:
            a, b = b, a
        out = [0] * out_len
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return out
    bits = ma.bit_length() + mb.bit_length() + min(la, lb).bit_length() + 3
    width = ((bits + 7) // 8) * 8
    return _unpack(_pack(a, width) * _pack(b, width), out_len, width)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class IPoly:
    """Dense integer polynomial; index = power of w^-1."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[int] = ()):  # takes ownership semantics: copies
        self.c = _trim(list(coeffs))

    @classmethod
    def const(cls, value: int) -> "IPoly":
        return cls([value])

    def zero_like(self) -> "IPoly":
        return IPoly()

    def is_zero(self) -> bool:
        return not self.c

    def degree(self) -> int:
        return len(self.c) - 1

    def __eq__(self, other):
        return isinstance(other, IPoly) and self.c == other.c

    def __add__(self, other: "IPoly") -> "IPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IPoly(out)

    def __neg__(self) -> "IPoly":
        return IPoly([-x for x in self.c])

    def __sub__(self, other: "IPoly") -> "IPoly":
        a, b = self.c, other.c
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, x in enumerate(b):
            out[i] -= x
        return IPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return IPoly()
            return IPoly([x * other for x in self.c])
        return IPoly(conv_ints(self.c, other.c))

    __rmul__ = __mul__

    def divexact(self, n: int) -> "IPoly":
        out = []
        for x in self.c:
            q, r = divmod(x, n)
            if r:
                raise ConsistencyError("inexact integer division in Newton recursion")
            out.append(q)
        return IPoly(out)

    def shift(self, m: int) -> "IPoly":
        """Multiply by w^-m."""
        if self.is_zero():
            return IPoly()
        return IPoly([0] * m + self.c)

    def to_cyclolaurent(self, order: int = 1) -> CycloLaurent:
        return CycloLaurent.from_w_coeffs(order, self.c)

    def __repr__(self):
        return f"IPoly({self.c})"


class CPoly:
    """Dense polynomial in u over Z[zeta_e]; coefficient = integer vector."""

    __slots__ = ("order", "phi", "c")

    def __init__(self, order: int, coeffs: Sequence[Sequence[int]] = ()):
        self.order = order
        self.phi = euler_phi(order)
        rows = [list(r) for r in coeffs]
        while rows and not any(rows[-1]):
            rows.pop()
        self.c = rows

    @classmethod
    def const(cls, order: int, value: int) -> "CPoly":
        phi = euler_phi(order)
        return cls(order, [[value] + [0] * (phi - 1)])

    @classmethod
    def from_cyclo_units(cls, order: int, terms: dict[int, Sequence[int]]) -> "CPoly":
        """terms: u-exponent -> integer coordinate vector."""
        phi = euler_phi(order)
        n = max(terms) + 1 if terms else 0
        rows = [[0] * phi for _ in range(n)]
        for k, vec in terms.items():
            for j, x in enumerate(vec):
                rows[k][j] = int(x)
        return cls(order, rows)

    def zero_like(self) -> "CPoly":
        return CPoly(self.order)

    def is_zero(self) -> bool:
        return not self.c

    def degree(self) -> int:
        return len(self.c) - 1

    def __eq__(self, other):
        return isinstance(other, CPoly) and self.order == other.order and self.c == other.c

    def __add__(self, other: "CPoly") -> "CPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = [list(r) for r in a]
        for i, row in enumerate(b):
            tr = out[i]
            for j, x in enumerate(row):
                tr[j] += x
        return CPoly(self.order, out)

    def __neg__(self) -> "CPoly":
        return CPoly(self.order, [[-x for x in r] for r in self.c])

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return CPoly(self.order)
            return CPoly(self.order, [[x * other for x in r] for r in self.c])
        if self.is_zero() or other.is_zero():
            return CPoly(self.order)
        phi = self.phi
        if phi == 1:
            flat = conv_ints([r[0] for r in self.c], [r[0] for r in other.c])
            return CPoly(self.order, [[x] for x in flat])
        W = 2 * phi - 1
        fa = [0] * (len(self.c) * W)
        for i, row in enumerate(self.c):
            fa[i * W : i * W + phi] = row
        fb = [0] * (len(other.c) * W)
        for i, row in enumerate(other.c):
            fb[i * W : i * W + phi] = row
        flat = conv_ints(fa, fb)
        n_out = len(self.c) + len(other.c) - 1
        rows = _reduction_rows(self.order, W)
        out = []
        for i in range(n_out):
            seg = flat[i * W : i * W + W]
            seg += [0] * (W - len(seg))
            vec = list(seg[:phi])
            for p in range(phi, W):
                x = seg[p]
                if x:
                    row = rows[p]
                    for j in range(phi):
                        if row[j]:
                            vec[j] += x * row[j]
            out.append(vec)
        return CPoly(self.order, out)

    __rmul__ = __mul__

    def divexact(self, n: int) -> "CPoly":
        out = []
        for row in self.c:
            new = []
            for x in row:
                q, r = divmod(x, n)
                if r:
                    raise ConsistencyError("inexact integer division in Newton recursion")
                new.append(q)
            out.append(new)
        return CPoly(self.order, out)

    def descends(self) -> bool:
        return all(not any(row) for i, row in enumerate(self.c) if i % self.order)

    def to_cyclolaurent(self) -> CycloLaurent:
        terms = {}
        for k, row in enumerate(self.c):
            if any(row):
                terms[k] = Cyclo(self.order, row)
        return CycloLaurent(self.order, terms)

    @classmethod
    def from_cyclolaurent(cls, lau: CycloLaurent) -> "CPoly":
        phi = euler_phi(lau.order)
        terms = {}
        for k, cy in lau.terms.items():
            if k < 0:
                raise ValueError("CPoly holds nonnegative u-exponents only")
            vec = []
            for f in cy.coeffs:
                if f.denominator != 1:
                    raise ValueError("CPoly holds integer coordinates only")
                vec.append(f.numerator)
            terms[k] = vec
        out = cls.from_cyclo_units(lau.order, terms)
        return out

    def __repr__(self):
        return f"CPoly(e={self.order}, {self.c})"
