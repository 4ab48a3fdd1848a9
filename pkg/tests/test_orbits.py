"""Monodromy-orbit combinatorics tests."""

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, gcd, lcm

import pytest

from bethecurve.errors import BudgetError
from bethecurve.orbits import (
    G1Orbit,
    OrbitLabel,
    all_labels,
    approx_classes,
    apply_perm_to_mask,
    classify_g2,
    component_count_breakdown,
    count_components,
    g1_orbits,
    gm_power_components,
    is_self_degenerate,
    iter_subset_masks,
    mask_to_sites,
    multinomial,
    orbit_cardinality,
    orbit_length_counts,
    orbit_subsets,
    perm_order,
    permutation_pair,
    pole_order_sum,
    sites_to_mask,
)


def lbl(*t):
    return OrbitLabel.from_tuple(t)


def test_permutation_pair_invariants():
    for L, N in ((3, 2), (4, 2), (6, 3), (8, 4), (9, 3), (10, 4)):
        pair = permutation_pair(L, N)
        assert perm_order(pair.sigma) == lcm(N, L - N)
        assert perm_order(pair.tau) == L
        # tau^-1 o sigma is the transposition of sites N and L
        inv_tau = [0] * L
        for i, j in enumerate(pair.tau):
            inv_tau[j] = i
        composed = tuple(inv_tau[pair.sigma[i]] for i in range(L))
        expect = list(range(L))
        expect[N - 1], expect[L - 1] = L - 1, N - 1
        assert composed == tuple(expect)


def test_g1_orbits_3_2():
    orbits = sorted(g1_orbits(3, 2), key=lambda o: o.size)
    assert [o.size for o in orbits] == [1, 2]
    assert orbits[0].representative == (1, 2)
    assert orbits[0].N1 == 2 and orbits[0].N2 == 0
    assert orbits[1].representative == (1, 3)


def test_g1_orbits_4_2():
    sizes = sorted(o.size for o in g1_orbits(4, 2))
    assert sizes == [1, 1, 2, 2]


def test_g1_orbits_6_3():
    orbits = g1_orbits(6, 3)
    assert len(orbits) == 8
    assert sorted(o.size for o in orbits) == [1, 1, 3, 3, 3, 3, 3, 3]


def _bruteforce_pole_sum(L, N):
    # independent oracle on frozensets, no bitmask machinery
    def sig(i):
        return i % N + 1 if i <= N else (N + (i - N) % (L - N) + 1)

    subsets = {frozenset(c) for c in combinations(range(1, L + 1), N)}
    seen = set()
    total = Fraction(0)
    for s in subsets:
        if s in seen:
            continue
        orbit = {s}
        cur = frozenset(sig(i) for i in s)
        while cur != s:
            orbit.add(cur)
            cur = frozenset(sig(i) for i in cur)
        seen |= orbit
        n1 = sum(1 for i in s if i <= N)
        total += len(orbit) * (1 - Fraction(n1, N) + Fraction(N - n1, L - N))
    return total


@pytest.mark.parametrize("L,N", [(3, 2), (6, 3), (8, 4), (7, 3), (9, 4)])
def test_pole_order_sum(L, N):
    val = pole_order_sum(L, N)
    assert val == _bruteforce_pole_sum(L, N)
    assert val == comb(L, N)


def test_pole_order_sum_budget():
    with pytest.raises(BudgetError):
        pole_order_sum(30, 15, budget=10)


def test_classify_g2_examples():
    assert classify_g2(6, 3, (1, 2, 3)) == lbl(1, 1, 1)
    assert classify_g2(6, 3, (1, 2, 4)) == lbl(2, 1, 0)
    assert classify_g2(4, 2, (1, 3)) == lbl(2, 0)
    with pytest.raises(ValueError):
        classify_g2(6, 3, (1, 2))


def test_g2_classification_matches_goldstone_sets():
    # the (6,3) fiber-0 orbits split into components as in the worked example
    groups = {
        lbl(1, 1, 1): [(1, 2, 3), (1, 2, 6), (1, 5, 6), (4, 5, 6)],
        lbl(2, 1, 0): [(1, 2, 4), (1, 4, 5)],
        lbl(2, 0, 1): [(1, 2, 5), (1, 4, 6)],
    }
    for label, subsets in groups.items():
        for s in subsets:
            assert classify_g2(6, 3, s) == label


def test_orbit_cardinality_examples():
    assert orbit_cardinality(lbl(2, 0, 2, 0), 8, 4) == 2
    assert orbit_cardinality(lbl(1, 1, 1, 1), 8, 4) == 16
    assert orbit_cardinality(lbl(2, 2, 0, 0), 8, 4) == 4
    assert orbit_cardinality(lbl(1, 1, 1), 6, 3) == 8
    assert orbit_cardinality(lbl(2, 1, 0), 6, 3) == 6


def test_orbit_cardinalities_sum_to_binomial():
    for L in range(2, 17):
        for N in range(1, L):
            assert sum(orbit_cardinality(l, L, N) for l in all_labels(L, N)) == comb(L, N)


def test_count_components_examples():
    assert count_components(6, 3) == 3
    assert count_components(9, 3) == 4
    assert count_components(16, 4) == 10


def test_component_count_breakdown_6_3():
    total, rows = component_count_breakdown(6, 3)
    assert total == 3
    contribs = {a: c for a, c in rows}
    # value profiles (a_0, a_1, a_2): {1,1,1} -> 2 orbits, {3 ones} -> 1 orbit
    assert contribs[(1, 1, 1)] == 2
    assert contribs[(0, 3, 0)] == 1


def _bruteforce_g2_orbit_count(L, N):
    pair = permutation_pair(L, N)
    seen = set()
    count = 0
    for m in iter_subset_masks(L, N):
        if m in seen:
            continue
        count += 1
        frontier = [m]
        seen.add(m)
        while frontier:
            new = []
            for x in frontier:
                for p in (pair.sigma, pair.tau):
                    y = apply_perm_to_mask(x, p)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
    return count


def test_count_components_matches_enumeration():
    for L in range(2, 11):
        for N in range(1, L):
            assert count_components(L, N) == _bruteforce_g2_orbit_count(L, N)


def test_orbit_length_counts_examples():
    assert orbit_length_counts((1, 1, 1), 3) == {3: 2}
    assert orbit_length_counts((1, 0, 1), 2) == {2: 1}
    assert orbit_length_counts((0, 1), 1) == {1: 1}
    with pytest.raises(ValueError):
        orbit_length_counts((1, 1), 3)


def _bruteforce_length_counts(a, e):
    # rotation orbits of all tuples with the given value profile
    values = []
    for v, cnt in enumerate(a):
        values += [v] * cnt
    tuples = {t for t in permutations(values)}
    out = {}
    seen = set()
    for t in tuples:
        if t in seen:
            continue
        rots = {t[s:] + t[:s] for s in range(e)}
        seen |= rots
        out[len(rots)] = out.get(len(rots), 0) + 1
    return out


def test_orbit_length_counts_bruteforce():
    cases = [((1, 1, 1), 3), ((2, 0, 2), 4), ((1, 2, 1), 4), ((2, 2, 2), 6), ((0, 4, 0, 2), 6)]
    for a, e in cases:
        assert orbit_length_counts(a, e) == _bruteforce_length_counts(a, e)
        assert sum(l * m for l, m in orbit_length_counts(a, e).items()) == multinomial(e, a)


def test_fixed_point_counts_of_rotations():
    # rotation fixed points of order-l shifts match the multinomial closed form
    for a, e in [((1, 1, 1), 3), ((2, 0, 2), 4), ((2, 2, 2), 6)]:
        values = []
        for v, cnt in enumerate(a):
            values += [v] * cnt
        tuples = {t for t in permutations(values)}
        for ell in (d for d in range(1, e + 1) if e % d == 0):
            fixed = sum(1 for t in tuples if t[ell:] + t[:ell] == t)
            if all(ai * ell % e == 0 for ai in a):
                assert fixed == multinomial(ell, [ai * ell // e for ai in a])
            else:
                assert fixed == 0


def test_approx_classes_8_4():
    classes = approx_classes(8, 4)
    as_sets = [frozenset(c) for c in classes]
    assert frozenset({lbl(2, 2, 0, 0), lbl(2, 0, 2, 0)}) in as_sets
    assert frozenset({lbl(2, 1, 1, 0), lbl(2, 0, 1, 1)}) in as_sets
    assert frozenset({lbl(2, 1, 0, 1)}) in as_sets
    assert frozenset({lbl(1, 1, 1, 1)}) in as_sets
    assert len(classes) == 4


def test_approx_classes_6_3():
    # [2,1,0] carries a full package and an empty one, so the replacement move
    # identifies it with [2,0,1]; the two components share one plane-curve
    # image (the squared degree-6 factor of the reference factorization)
    as_sets = [frozenset(c) for c in approx_classes(6, 3)]
    assert frozenset({lbl(1, 1, 1)}) in as_sets
    assert frozenset({lbl(2, 1, 0), lbl(2, 0, 1)}) in as_sets
    assert len(as_sets) == 2


def test_approx_classes_coprime_single():
    classes = approx_classes(5, 2)
    assert classes == [(lbl(2),)]


def test_approx_classes_10_5_groups_match_reference():
    as_sets = [frozenset(c) for c in approx_classes(10, 5)]
    assert frozenset({lbl(1, 1, 1, 1, 1)}) in as_sets
    assert frozenset({lbl(2, 1, 1, 1, 0), lbl(2, 0, 1, 1, 1)}) in as_sets
    assert frozenset({lbl(2, 1, 1, 0, 1), lbl(2, 1, 0, 1, 1)}) in as_sets
    six = frozenset(
        {
            lbl(2, 2, 1, 0, 0),
            lbl(2, 2, 0, 1, 0),
            lbl(2, 2, 0, 0, 1),
            lbl(2, 1, 2, 0, 0),
            lbl(2, 0, 2, 1, 0),
            lbl(2, 0, 2, 0, 1),
        }
    )
    assert six in as_sets
    assert len(as_sets) == 4


def test_self_degenerate_labels():
    assert is_self_degenerate(lbl(2, 1, 0, 1), 8, 4)
    assert not is_self_degenerate(lbl(2, 1, 1, 0), 8, 4)
    assert not is_self_degenerate(lbl(1, 1, 1, 1), 8, 4)


def test_gm_power_components():
    assert gm_power_components(4, 2) == [(lbl(2, 0), 2)]
    got = dict(gm_power_components(8, 4))
    assert got == {lbl(2, 0, 2, 0): 2, lbl(2, 2, 0, 0): 4}
    assert gm_power_components(3, 2) == []
    assert gm_power_components(9, 3) == [(lbl(3, 0, 0), 3)]
    assert gm_power_components(6, 3) == []


def test_g2_group_order():
    # |G2| = e * (L'!)^e by explicit closure of the generated permutation group
    for L, N in ((4, 2), (6, 3), (6, 2), (8, 4), (5, 2), (8, 2)):
        pair = permutation_pair(L, N)
        gens = [pair.sigma, pair.tau]
        seen = {tuple(range(L))}
        frontier = [tuple(range(L))]
        while frontier:
            new = []
            for g in frontier:
                for h in gens:
                    comp = tuple(h[g[i]] for i in range(L))
                    if comp not in seen:
                        seen.add(comp)
                        new.append(comp)
            frontier = new
        e = gcd(L, N)
        assert len(seen) == e * factorial(L // e) ** e


def test_orbit_subsets_match_classification():
    for L, N in ((4, 2), (6, 3), (8, 4)):
        for label in all_labels(L, N):
            masks = orbit_subsets(label, L, N)
            assert len(masks) == orbit_cardinality(label, L, N)
            assert all(classify_g2(L, N, m) == label for m in masks)


def test_orbit_label_canonicalization():
    a = OrbitLabel.from_tuple((2, 1, 0))
    b = OrbitLabel.from_tuple((1, 0, 2))
    c = OrbitLabel.from_tuple((0, 2, 1))
    assert a == b == c
    assert a.rep == (0, 2, 1)
    assert a.shift_count == 3
    assert OrbitLabel.from_tuple((1, 1, 1)).shift_count == 1
    assert OrbitLabel.from_tuple((2, 0, 2, 0)).shift_count == 2


def test_mask_helpers_roundtrip():
    m = sites_to_mask((1, 3, 6))
    assert mask_to_sites(m) == (1, 3, 6)
