"""Symmetric-function engine for the full spectral curve.

Pipeline: Vieta data of the branch equation -> ordinary power sums ->
rectangular monomial symmetric values m_{(a^N)} -> subset-product power sums
P_n -> subset-product elementary values E_n -> the defining polynomial

    v^K - E_1 v^(K-1) + E_2 v^(K-2) - ... + (-1)^K E_K,   K = binom(L, N).

The Newton recursions are generic over any coefficient ring exposing
``+``, ``-``, ``*`` (including int scalars), ``divexact`` and ``zero_like``;
the public entry points run them on a dense integer fast path and convert to
CycloLaurent at the boundary.  Every intermediate is itself an integer
symmetric function of the branch roots, so the divisions by n are exact; the
fast path checks this instead of assuming it.

All functions are pure; independent (L, N) jobs may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence, TypeVar

from ._fastpoly import IPoly
from .errors import BudgetError, ConsistencyError
from .exactalg import CurvePolynomial, CycloLaurent

T = TypeVar("T")

SIZE_BUDGET_DEFAULT = 1000


@dataclass(frozen=True)
class ElementarySeq:
    """Elementary symmetric values e_1..e_L of the L branch roots."""

    L: int
    N: int
    values: tuple[CycloLaurent, ...]

    def __getitem__(self, i: int) -> CycloLaurent:
        """1-based access: self[i] = e_i."""
        if not 1 <= i <= self.L:
            raise IndexError(i)
        return self.values[i - 1]


@dataclass(frozen=True)
class OmegaSymData:
    """Subset-product power sums P_n and elementary values E_n, n = 1..binom(L,N)."""

    L: int
    N: int
    P: tuple[CycloLaurent, ...]
    E: tuple[CycloLaurent, ...]


def vieta_elementary(L: int, N: int) -> ElementarySeq:
    """Vieta coefficients of t^L - e_1 t^(L-1) + ... + (-1)^L e_L = 0.

    Derived from w * (1 - t)^L = t^N:  e_i = binom(L, i) except at index
    i = L - N, where e_i = binom(L, i) - (-1)^N * w^-1.
    """
    _check_ln(L, N)
    vals = []
    for i in range(1, L + 1):
        if i == L - N:
            vals.append(CycloLaurent.from_w_coeffs(1, [comb(L, i), -((-1) ** N)]))
        else:
            vals.append(CycloLaurent.const(1, comb(L, i)))
    return ElementarySeq(L, N, tuple(vals))


def power_sums_from_elementary(elems: Sequence[T], upto: int) -> list[T]:
    """Newton recursion p_n = e_1 p_(n-1) - e_2 p_(n-2) + ... + (-1)^(n-1) n e_n.

    ``elems`` lists e_1..e_L; values beyond the list are treated as zero.
    """
    elems = list(elems)
    L = len(elems)
    zero = elems[0].zero_like()
    ps: list[T] = []
    for n in range(1, upto + 1):
        acc = zero
        for i in range(1, min(n - 1, L) + 1):
            term = elems[i - 1] * ps[n - i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        if n <= L:
            tail = elems[n - 1] * n
            acc = acc + tail if n % 2 == 1 else acc - tail
        ps.append(acc)
    return ps


def elementary_from_power_sums(ps: Sequence[T], upto: int) -> list[T]:
    """Inverse Newton recursion n e_n = sum_(j=1..n) (-1)^(j-1) p_j e_(n-j)."""
    es: list[T] = []
    for n in range(1, upto + 1):
        acc = ps[n - 1] if n % 2 == 1 else -ps[n - 1]
        for j in range(1, n):
            term = ps[j - 1] * es[n - j - 1]
            acc = acc + term if j % 2 == 1 else acc - term
        es.append(acc.divexact(n))
    return es


def monomial_rectangular(ps: Sequence[T], a: int, N: int) -> T:
    """m_{(a^N)}: the N-th elementary symmetric value of the a-th powers.

    ``ps`` holds ordinary power sums with ps[n-1] = p_n, available through
    degree N*a.  Computed by the inverse Newton recursion on p_(j*a), which
    is the determinant formula divided by N!.
    """
    if N == 0:
        raise ValueError("rectangular monomial needs N >= 1")
    qs = [ps[j * a - 1] for j in range(1, N + 1)]
    return elementary_from_power_sums(qs, N)[N - 1]


def _check_ln(L: int, N: int) -> None:
    if not 1 <= N < L:
        raise ValueError(f"need 1 <= N < L, got (L, N) = ({L}, {N})")


def _check_budget(L: int, N: int, budget: int) -> int:
    K = comb(L, N)
    if K > budget:
        raise BudgetError(
            f"binom({L},{N}) = {K} exceeds the size budget {budget}; "
            "raise the budget explicitly to proceed"
        )
    return K


@lru_cache(maxsize=None)
def _omega_fast(L: int, N: int) -> tuple[tuple[IPoly, ...], tuple[IPoly, ...]]:
    """(P_1..P_K, E_1..E_K) on the dense integer path."""
    K = comb(L, N)
    elems = []
    for i in range(1, L + 1):
        if i == L - N:
            elems.append(IPoly([comb(L, i), -((-1) ** N)]))
        else:
            elems.append(IPoly([comb(L, i)]))
    ps = power_sums_from_elementary(elems, N * K)
    P = [monomial_rectangular(ps, n, N) for n in range(1, K + 1)]
    if L == 2 * N:
        # At half filling the product of all branch roots is 1, so subset
        # complementation inverts the subset products; the multiset {t_I} is
        # closed under x -> 1/x and E_i = E_(K-i).  Compute the lower half,
        # mirror, and verify the top Newton row exactly.
        half = K // 2
        E = elementary_from_power_sums(P, half)
        for i in range(half + 1, K + 1):
            E.append(E[K - i - 1] if K - i >= 1 else IPoly([1]))
        top = IPoly()
        for j in range(1, K + 1):
            term = P[j - 1] * (E[K - j - 1] if K - j >= 1 else IPoly([1]))
            top = top + term if j % 2 == 1 else top - term
        if top != E[K - 1] * K:
            raise ConsistencyError("half-filling mirror failed the Newton identity")
    else:
        E = elementary_from_power_sums(P, K)
    return tuple(P), tuple(E)


def omega_elementary(L: int, N: int, budget: int = SIZE_BUDGET_DEFAULT) -> OmegaSymData:
    """Subset-product symmetric data over all N-subsets of the L branch roots."""
    _check_ln(L, N)
    _check_budget(L, N, budget)
    P, E = _omega_fast(L, N)
    return OmegaSymData(
        L,
        N,
        tuple(p.to_cyclolaurent() for p in P),
        tuple(e.to_cyclolaurent() for e in E),
    )


@lru_cache(maxsize=None)
def _defining_cached(L: int, N: int) -> CurvePolynomial:
    K = comb(L, N)
    _, E = _omega_fast(L, N)
    coeffs = []
    for j in range(K + 1):
        i = K - j
        if i == 0:
            coeffs.append(CycloLaurent.const(1, 1))
        else:
            sign = -1 if i % 2 else 1
            coeffs.append((E[i - 1] * sign).to_cyclolaurent())
    return CurvePolynomial(coeffs)


def defining_polynomial(L: int, N: int, budget: int = SIZE_BUDGET_DEFAULT) -> CurvePolynomial:
    """The defining polynomial of the spectral plane curve for (L, N)."""
    _check_ln(L, N)
    _check_budget(L, N, budget)
    return _defining_cached(L, N)
