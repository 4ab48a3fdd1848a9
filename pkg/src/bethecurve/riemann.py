"""Fixed-point characters, ramification profiles, and genus.

The covering map w has branch points only over 0, the critical value c*, and
infinity.  The local monodromies are the two block cycles (over 0), the full
cycle (over infinity), and -- composing the one with the inverse of the
other -- the transposition of sites N and L (over c*); note the two
compositions coincide because a transposition is an involution, so the
orientation ambiguity is vacuous.

Fiber structure is read off representation-theoretically: the permutation
character of the cyclic monodromy group on the subsets decomposes into
one-dimensional isotypic multiplicities, a point of ramification index r
contributing one copy of every character whose index is a multiple of d/r.
Block extraction walks the divisors from the most ramified block down and
must exhaust the multiplicities exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable

from .errors import BudgetError, ConsistencyError
from .exactalg import Cyclo
from .orbits import (
    ENUM_BUDGET_DEFAULT,
    OrbitLabel,
    all_labels,
    apply_perm_to_mask,
    count_components,
    divisors,
    euler_phi_int,
    iter_subset_masks,
    orbit_cardinality,
    orbit_subsets,
    permutation_pair,
)

FIBERS = ("0", "cstar", "inf")


def critical_fugacity(L: int, N: int) -> Fraction:
    """The finite nonzero critical value of t^N/(1-t)^L, exactly."""
    return Fraction((-1) ** N * N**N * (L - N) ** (L - N), L**L)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_power(p: tuple[int, ...], k: int) -> tuple[int, ...]:
    n = len(p)
    out = tuple(range(n))
    k %= _order_bound(p)
    for _ in range(k):
        out = _compose(p, out)
    return out


def _order_bound(p: tuple[int, ...]) -> int:
    from .orbits import perm_order

    return perm_order(p)


def _descriptor_perm(L: int, N: int, g) -> tuple[int, ...]:
    pair = permutation_pair(L, N)
    kind = g[0]
    if kind == "id":
        return tuple(range(L))
    if kind == "sigma":
        return _perm_power(pair.sigma, g[1])
    if kind == "tau":
        return _perm_power(pair.tau, g[1])
    if kind == "tau_inv_sigma":
        # tau^-1 sigma = sigma^-1 tau = the transposition of sites N and L
        out = list(range(L))
        out[N - 1], out[L - 1] = L - 1, N - 1
        return tuple(out)
    raise ValueError(f"unsupported group element descriptor {g!r}")


def char_formula(L: int, N: int, g) -> int:
    """Closed-form fixed-point count of the induced action on N-subsets."""
    kind = g[0]
    if kind == "id":
        return comb(L, N)
    if kind == "sigma":
        k = g[1]
        if k % lcm(N, L - N) == 0:
            return comb(L, N)
        e1, e2 = gcd(N, k), gcd(L - N, k)
        q1, q2 = N // e1, (L - N) // e2
        total = 0
        for p in range(e1 + 1):
            rem = N - p * q1
            if rem < 0 or rem % q2:
                continue
            q = rem // q2
            if q <= e2:
                total += comb(e1, p) * comb(e2, q)
        return total
    if kind == "tau":
        k = g[1]
        if k % L == 0:
            return comb(L, N)
        e = gcd(L, k)
        if (e * N) % L:
            return 0
        return comb(e, e * N // L)
    if kind == "tau_inv_sigma":
        return comb(L, N) - 2 * comb(L - 2, N - 1)
    raise ValueError(f"unsupported group element descriptor {g!r}")


def char_bruteforce(L: int, N: int, g, budget: int = ENUM_BUDGET_DEFAULT) -> int:
    """Literal fixed-point count by enumeration (the oracle for char_formula)."""
    K = comb(L, N)
    if K > budget:
        raise BudgetError(f"binom({L},{N}) = {K} exceeds the enumeration budget {budget}")
    perm = _descriptor_perm(L, N, g)
    return sum(1 for m in iter_subset_masks(L, N) if apply_perm_to_mask(m, perm) == m)


@dataclass(frozen=True)
class CharacterTable:
    """Fixed-point counts of the three monodromy generators' powers on a scope."""

    L: int
    N: int
    scope: OrbitLabel | None  # None = all subsets
    size: int
    sigma_fix: tuple[int, ...]  # index k = 0..d-1
    tau_fix: tuple[int, ...]  # index k = 0..L-1
    transposition_fix: int

    def inner_with_trivial(self, which: str) -> Fraction:
        if which == "sigma":
            return Fraction(sum(self.sigma_fix), len(self.sigma_fix))
        if which == "tau":
            return Fraction(sum(self.tau_fix), len(self.tau_fix))
        if which == "cstar":
            return Fraction(self.size + self.transposition_fix, 2)
        raise ValueError(which)


def character_table(
    L: int, N: int, scope: OrbitLabel | None = None, budget: int = ENUM_BUDGET_DEFAULT
) -> CharacterTable:
    d = lcm(N, L - N)
    if scope is None:
        sig = tuple(char_formula(L, N, ("sigma", k)) for k in range(d))
        tau = tuple(char_formula(L, N, ("tau", k)) for k in range(L))
        tr = char_formula(L, N, ("tau_inv_sigma",))
        return CharacterTable(L, N, None, comb(L, N), sig, tau, tr)
    masks = orbit_subsets(scope, L, N, budget)
    mask_set = set(masks)
    pair = permutation_pair(L, N)

    def fix_counts(perm, order):
        out = []
        cur = {m: m for m in masks}
        for k in range(order):
            out.append(sum(1 for m, x in cur.items() if m == x))
            cur = {m: apply_perm_to_mask(x, perm) for m, x in cur.items()}
        return tuple(out)

    sig = fix_counts(pair.sigma, d)
    tau = fix_counts(pair.tau, L)
    tperm = _descriptor_perm(L, N, ("tau_inv_sigma",))
    tr = sum(1 for m in masks if apply_perm_to_mask(m, tperm) == m)
    for m in masks:
        if apply_perm_to_mask(m, pair.sigma) not in mask_set:
            raise ConsistencyError("orbit not closed under the fiber monodromy")
    return CharacterTable(L, N, scope, len(masks), sig, tau, tr)


def cyclic_isotypic_multiplicities(fix_counts: Iterable[int]) -> list[int]:
    """Multiplicities of the d one-dimensional characters in a permutation
    module of a cyclic group, from the fixed-point counts of g^0..g^(d-1)."""
    fix = list(fix_counts)
    d = len(fix)
    out = []
    for i in range(d):
        acc = Cyclo.zero(d) if d > 1 else Cyclo.from_rational(1, 0)
        for j, f in enumerate(fix):
            acc = acc + Cyclo.omega(d, (-i * j) % d) * f
        val = acc / d
        if not val.is_integer():
            raise ConsistencyError("isotypic multiplicity was not a nonnegative integer")
        out.append(int(val.as_rational()))
    if any(v < 0 for v in out) or sum(out) != fix[0]:
        raise ConsistencyError("isotypic multiplicities are inconsistent")
    return out


@dataclass(frozen=True)
class RamificationProfile:
    """Point counts by ramification index over one branch point."""

    fiber: str
    scope: OrbitLabel | None
    entries: tuple[tuple[int, int], ...]  # (ramification index, count), index descending
    isotypic: tuple[int, ...]

    @property
    def point_count(self) -> int:
        return sum(c for _, c in self.entries)

    def sheet_count(self) -> int:
        return sum(r * c for r, c in self.entries)


def _extract_blocks(mult: list[int]) -> list[tuple[int, int]]:
    d = len(mult)
    remaining = list(mult)
    out = []
    for i in divisors(d):  # ascending i = most ramified block first (index d/i)
        m = remaining[i % d]
        if m < 0:
            raise ConsistencyError("negative block multiplicity")
        if m:
            out.append((d // i, m))
            for j in range(0, d, i):
                remaining[j] -= m
    if any(remaining):
        raise ConsistencyError("block extraction did not exhaust the multiplicities")
    return out


def ramification_profile(
    L: int,
    N: int,
    fiber: str,
    scope: OrbitLabel | None = None,
    budget: int = ENUM_BUDGET_DEFAULT,
) -> RamificationProfile:
    """Ramification structure of the covering over one branch point.

    fiber "0" uses the two-block cycle, "inf" the full cycle, "cstar" the
    transposition; scope restricts to one component's subsets.
    """
    if fiber not in FIBERS:
        raise ValueError(f"fiber must be one of {FIBERS}")
    table = character_table(L, N, scope, budget)
    if fiber == "0":
        fix = list(table.sigma_fix)
    elif fiber == "inf":
        fix = list(table.tau_fix)
    else:
        fix = [table.size, table.transposition_fix]
        if len(fix) > 1 and fix[0] == fix[1]:
            # involution acting trivially: every point unramified
            fix = [table.size]
    mult = cyclic_isotypic_multiplicities(fix)
    entries = _extract_blocks(mult)
    prof = RamificationProfile(fiber, scope, tuple(entries), tuple(mult))
    if prof.sheet_count() != table.size:
        raise ConsistencyError("ramification indices do not sum to the covering degree")
    return prof


def genus_component(
    L: int, N: int, label: OrbitLabel, budget: int = ENUM_BUDGET_DEFAULT
) -> int:
    """Genus of one connected component, by Riemann-Hurwitz over the three fibers."""
    table = character_table(L, N, label, budget)
    size = table.size
    total = (
        1
        + Fraction(size, 2)
        - Fraction(1, 2)
        * (
            table.inner_with_trivial("sigma")
            + table.inner_with_trivial("tau")
            + table.inner_with_trivial("cstar")
        )
    )
    if total.denominator != 1 or total < 0:
        raise ConsistencyError(f"component genus came out as {total}")
    return int(total)


def phi_gcd_table(m: int, n: int) -> dict[tuple[int, int], int]:
    """Counts of 1 <= k <= lcm(m, n) by the gcd pair (gcd(m,k), gcd(n,k))."""
    out: dict[tuple[int, int], int] = {}
    for k in range(1, lcm(m, n) + 1):
        key = (gcd(m, k), gcd(n, k))
        out[key] = out.get(key, 0) + 1
    return out


def _sigma_fix_sum(L: int, N: int) -> int:
    """Sum over k = 1..lcm(N, L-N) of the sigma^k fixed-point counts."""
    total = 0
    for (i, j), cnt in phi_gcd_table(N, L - N).items():
        q1, q2 = N // i, (L - N) // j
        val = 0
        for p in range(i + 1):
            rem = N - p * q1
            if rem < 0 or rem % q2:
                continue
            q = rem // q2
            if q <= j:
                val += comb(i, p) * comb(j, q)
        total += cnt * val
    return total


def _tau_fix_sum(L: int, N: int) -> int:
    """Sum over k = 1..L of the tau^k fixed-point counts."""
    return sum(
        euler_phi_int(L // i) * comb(i, i * N // L)
        for i in divisors(L)
        if (i * N) % L == 0
    )


@dataclass(frozen=True)
class TotalGenusReport:
    L: int
    N: int
    n_components: int
    sigma_fix_sum: int
    tau_fix_sum: int
    total: int


def total_genus_report(L: int, N: int) -> TotalGenusReport:
    """Total genus via the closed character sums (no enumeration)."""
    n_comp = count_components(L, N)
    s_sum = _sigma_fix_sum(L, N)
    t_sum = _tau_fix_sum(L, N)
    total = (
        n_comp
        + Fraction(comb(L - 2, N - 1), 2)
        - Fraction(1, 2) * (Fraction(s_sum, lcm(N, L - N)) + Fraction(t_sum, L))
    )
    if total.denominator != 1 or total < 0:
        raise ConsistencyError(f"total genus came out as {total}")
    return TotalGenusReport(L, N, n_comp, s_sum, t_sum, int(total))


def total_genus(L: int, N: int) -> int:
    return total_genus_report(L, N).total
