"""Orbit combinatorics of the covering monodromy.

Two permutations of the L branch indices drive everything: ``sigma`` (the
monodromy around w = 0, cycling 1..N and N+1..L separately) and ``tau`` (the
monodromy around infinity, the full L-cycle).  Their induced actions on the
set of N-element subsets split it into fiber points (orbits of <sigma>) and
connected components (orbits of <sigma, tau>), and the latter are classified
by package-occupancy tuples up to cyclic rotation.

Sites are 0-based internally (subsets are L-bit masks); the public surface
reports 1-based index tuples to match the usual labelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, gcd, lcm
from typing import Iterable, Iterator

from .errors import BudgetError, ConsistencyError

ENUM_BUDGET_DEFAULT = 10**6


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def euler_phi_int(n: int) -> int:
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


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def multinomial(n: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError("multinomial parts must be nonnegative and sum to n")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


@dataclass(frozen=True)
class PermutationPair:
    """The two generating permutations on 0-based sites."""

    L: int
    N: int
    sigma: tuple[int, ...]
    tau: tuple[int, ...]


def permutation_pair(L: int, N: int) -> PermutationPair:
    if not 1 <= N < L:
        raise ValueError(f"need 1 <= N < L, got ({L}, {N})")
    sigma = tuple((i + 1) % N if i < N else N + (i - N + 1) % (L - N) for i in range(L))
    tau = tuple((i + 1) % L for i in range(L))
    return PermutationPair(L, N, sigma, tau)


def perm_order(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    out = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        out = lcm(out, length)
    return out


def apply_perm_to_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def iter_subset_masks(L: int, N: int) -> Iterator[int]:
    for idx in combinations(range(L), N):
        m = 0
        for i in idx:
            m |= 1 << i
        yield m


def mask_to_sites(mask: int) -> tuple[int, ...]:
    """1-based site tuple of a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def sites_to_mask(sites: Iterable[int]) -> int:
    m = 0
    for s in sites:
        m |= 1 << (s - 1)
    return m


@dataclass(frozen=True)
class OrbitLabel:
    """Cyclic class [A_1, ..., A_e] of a package-occupancy tuple.

    ``rep`` is the lexicographically least rotation; ``shift_count`` is the
    number of distinct rotations (the length of the rotation orbit).
    """

    e: int
    rep: tuple[int, ...]

    @classmethod
    def from_tuple(cls, tup: Iterable[int]) -> "OrbitLabel":
        t = tuple(tup)
        e = len(t)
        rep = min(t[s:] + t[:s] for s in range(e))
        return cls(e, rep)

    @property
    def shift_count(self) -> int:
        t = self.rep
        for s in range(1, self.e + 1):
            if self.e % s == 0 and t[s:] + t[:s] == t:
                return s
        return self.e

    def rotations(self) -> list[tuple[int, ...]]:
        t = self.rep
        return [t[s:] + t[:s] for s in range(self.shift_count)]

    def value_counts(self, L_prime: int) -> tuple[int, ...]:
        """(a_0, ..., a_L') with a_i the number of entries equal to i."""
        counts = [0] * (L_prime + 1)
        for v in self.rep:
            counts[v] += 1
        return tuple(counts)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.rep) + "]"


@dataclass(frozen=True)
class G1Orbit:
    """One orbit of the fiber monodromy: a point of the fiber over w = 0."""

    size: int
    N1: int
    N2: int
    representative: tuple[int, ...]  # 1-based sites


def _check_enum_budget(L: int, N: int, budget: int) -> int:
    K = comb(L, N)
    if K > budget:
        raise BudgetError(f"binom({L},{N}) = {K} exceeds the enumeration budget {budget}")
    return K


def g1_orbits(L: int, N: int, budget: int = ENUM_BUDGET_DEFAULT) -> list[G1Orbit]:
    """Exhaustive orbit partition of the N-subsets under the fiber monodromy."""
    _check_enum_budget(L, N, budget)
    pair = permutation_pair(L, N)
    seen: set[int] = set()
    low_mask = (1 << N) - 1
    out = []
    for m in iter_subset_masks(L, N):
        if m in seen:
            continue
        orbit = [m]
        seen.add(m)
        x = apply_perm_to_mask(m, pair.sigma)
        while x != m:
            orbit.append(x)
            seen.add(x)
            x = apply_perm_to_mask(x, pair.sigma)
        n1 = (m & low_mask).bit_count()
        out.append(G1Orbit(len(orbit), n1, N - n1, mask_to_sites(min(orbit))))
    return out


def pole_order_sum(L: int, N: int, budget: int = ENUM_BUDGET_DEFAULT) -> Fraction:
    """Sum over fiber-0 points of the pole order of v/w; equals binom(L, N)."""
    total = Fraction(0)
    for o in g1_orbits(L, N, budget):
        total += o.size * (1 - Fraction(o.N1, N) + Fraction(o.N2, L - N))
    return total


def classify_g2(L: int, N: int, subset: Iterable[int] | int) -> OrbitLabel:
    """Component label of the subset: package occupancies up to rotation."""
    e = gcd(L, N)
    mask = subset if isinstance(subset, int) else sites_to_mask(subset)
    if mask.bit_count() != N:
        raise ValueError(f"subset must have exactly N = {N} elements")
    counts = [0] * e
    for i in range(L):
        if mask >> i & 1:
            counts[i % e] += 1
    return OrbitLabel.from_tuple(counts)


def orbit_cardinality(label: OrbitLabel, L: int, N: int) -> int:
    """shift_count * prod_i binom(L', i)^(a_i)."""
    e = gcd(L, N)
    if label.e != e or sum(label.rep) != N:
        raise ValueError("label does not belong to this (L, N)")
    Lp = L // e
    out = label.shift_count
    for v in label.rep:
        out *= comb(Lp, v)
    return out


def _compositions(total: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
    if slots == 1:
        if total <= cap:
            yield (total,)
        return
    for head in range(min(total, cap) + 1):
        for rest in _compositions(total - head, slots - 1, cap):
            yield (head,) + rest


@lru_cache(maxsize=None)
def all_labels(L: int, N: int) -> tuple[OrbitLabel, ...]:
    """Every component label for (L, N), sorted by representative tuple."""
    e = gcd(L, N)
    Lp = L // e
    found = {OrbitLabel.from_tuple(t) for t in _compositions(N, e, Lp)}
    return tuple(sorted(found, key=lambda lbl: lbl.rep))


def orbit_length_counts(a: Iterable[int], e: int) -> dict[int, int]:
    """Number m_l of rotation orbits of each length l among tuples with value
    profile (a_0, ..., a_L')."""
    a = list(a)
    if sum(a) != e:
        raise ValueError("value counts must sum to e")
    out: dict[int, int] = {}
    for ell in divisors(e):
        acc = 0
        for ellp in divisors(ell):
            if all((ai * ellp) % e == 0 for ai in a):
                acc += multinomial(ellp, [ai * ellp // e for ai in a]) * mobius(ell // ellp)
        if acc % ell:
            raise ConsistencyError("rotation-orbit count was not divisible by the length")
        m = acc // ell
        if m:
            out[ell] = m
    if sum(ell * m for ell, m in out.items()) != multinomial(e, a):
        raise ConsistencyError("orbit lengths do not exhaust the tuple class")
    return out


def count_components(L: int, N: int) -> int:
    """Number of connected components, by the totient-weighted partition formula."""
    total, _ = component_count_breakdown(L, N)
    return total


def component_count_breakdown(L: int, N: int) -> tuple[int, list[tuple[tuple[int, ...], Fraction]]]:
    """Total component count plus the per-value-profile contributions."""
    e = gcd(L, N)
    Lp = L // e
    rows = []
    total = Fraction(0)
    for a in _compositions(e, Lp + 1, e):
        # a = (a_0, ..., a_L') ; constraint sum_i i * a_i = N
        if sum(i * ai for i, ai in enumerate(a)) != N:
            continue
        acc = 0
        for d in divisors(e):
            if all((ai * d) % e == 0 for ai in a):
                acc += euler_phi_int(e // d) * multinomial(d, [ai * d // e for ai in a])
        contrib = Fraction(acc, e)
        rows.append((a, contrib))
        total += contrib
    if total.denominator != 1:
        raise ConsistencyError("component count did not come out integral")
    n = int(total)
    if comb(L, N) <= 10**4 and n != len(all_labels(L, N)):
        raise ConsistencyError("formula and label enumeration disagree")
    return n, rows


def _moves(label: OrbitLabel, Lp: int) -> Iterator[OrbitLabel]:
    rep = label.rep
    fulls = [i for i, v in enumerate(rep) if v == Lp]
    zeros = [i for i, v in enumerate(rep) if v == 0]
    for i in fulls:
        for j in zeros:
            moved = list(rep)
            moved[i], moved[j] = 0, Lp
            yield OrbitLabel.from_tuple(moved)


def approx_classes(L: int, N: int) -> list[tuple[OrbitLabel, ...]]:
    """Partition of the labels under the full-package replacement relation."""
    e = gcd(L, N)
    Lp = L // e
    labels = all_labels(L, N)
    parent = {lbl: lbl for lbl in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lbl in labels:
        for other in _moves(lbl, Lp):
            ra, rb = find(lbl), find(other)
            if ra != rb:
                parent[rb] = ra
    groups: dict[OrbitLabel, list[OrbitLabel]] = {}
    for lbl in labels:
        groups.setdefault(find(lbl), []).append(lbl)
    return sorted(
        (tuple(sorted(g, key=lambda l: l.rep)) for g in groups.values()),
        key=lambda g: g[0].rep,
    )


def is_self_degenerate(label: OrbitLabel, L: int, N: int) -> bool:
    """True when a full-package replacement maps the label class to itself."""
    Lp = L // gcd(L, N)
    return any(moved == label for moved in _moves(label, Lp))


def within_orbit_multiplicity(label: OrbitLabel, L: int, N: int) -> int:
    """How many subsets of one component share each generic subset-product value.

    A subset splits into full packages plus a remainder; the full packages
    contribute 1 to the product, so redistributing them among the full/empty
    slots preserves the value.  Redistributions whose occupancy tuple is a
    rotation of the label stay inside the component; their count is the
    uniform collapse multiplicity of the value map on this component.
    """
    e = gcd(L, N)
    Lp = L // e
    rep = label.rep
    free = [i for i, v in enumerate(rep) if v in (0, Lp)]
    h = sum(1 for i in free if rep[i] == Lp)
    if h == 0:
        return 1
    rotations = {rep[s:] + rep[:s] for s in range(e)}
    count = 0
    for chosen in combinations(free, h):
        cand = list(rep)
        for i in free:
            cand[i] = 0
        for i in chosen:
            cand[i] = Lp
        if tuple(cand) in rotations:
            count += 1
    return count


def gm_power_components(L: int, N: int) -> list[tuple[OrbitLabel, int]]:
    """Labels whose component polynomial is a power of (v - 1), with exponents.

    These are the labels built from h full packages and e - h empty ones,
    possible exactly when h = N / L' is an integer; the exponent is the orbit
    cardinality, which is just the rotation-orbit length.
    """
    e = gcd(L, N)
    Lp = L // e
    if N % Lp:
        return []
    h = N // Lp
    if h > e:
        return []
    out = []
    for lbl in all_labels(L, N):
        counts = lbl.value_counts(Lp)
        if counts[Lp] == h and counts[0] == e - h and sum(counts) == counts[0] + counts[Lp]:
            out.append((lbl, orbit_cardinality(lbl, L, N)))
    return out


def orbit_representative_mask(label: OrbitLabel, L: int, N: int) -> int:
    """A subset whose package occupancies realize the label representative."""
    e = gcd(L, N)
    mask = 0
    for k in range(e):
        for j in range(label.rep[k]):
            mask |= 1 << (k + j * e)
    return mask


def orbit_subsets(
    label: OrbitLabel, L: int, N: int, budget: int = ENUM_BUDGET_DEFAULT
) -> list[int]:
    """All subsets in the component's orbit, as masks, by closure under the
    two monodromy generators."""
    expected = orbit_cardinality(label, L, N)
    if expected > budget:
        raise BudgetError(f"orbit size {expected} exceeds the budget {budget}")
    pair = permutation_pair(L, N)
    start = orbit_representative_mask(label, L, N)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for m in frontier:
            for perm in (pair.sigma, pair.tau):
                x = apply_perm_to_mask(m, perm)
                if x not in seen:
                    seen.add(x)
                    new.append(x)
        frontier = new
    if len(seen) != expected:
        raise ConsistencyError(
            f"orbit enumeration found {len(seen)} subsets, cardinality formula says {expected}"
        )
    return sorted(seen)
