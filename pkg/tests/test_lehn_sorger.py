import random
from math import factorial

import pytest

from k3hilb.hilb_basis import an_z, canonical_class, hilb_base, pad_class
from k3hilb.lehn_sorger import (
    canonical_term,
    common_orbits,
    graph_defect,
    model_term,
    mult_an,
    mult_sn,
    to_sn,
)
from k3hilb.partitions import identity_perm, perm_from_cycles
import oracles


def test_common_orbits():
    ident = identity_perm(3)
    assert common_orbits(ident, ident) == [(0,), (1,), (2,)]
    p = perm_from_cycles(3, [(0, 1)])
    t = perm_from_cycles(3, [(1, 2)])
    assert common_orbits(p, t) == [(0, 1, 2)]
    p2 = perm_from_cycles(4, [(0, 1), (2, 3)])
    assert common_orbits(p2, identity_perm(4)) == [(0, 1), (2, 3)]


def test_graph_defect_examples():
    swap = perm_from_cycles(2, [(0, 1)])
    assert graph_defect(swap, swap, (0, 1)) == 0
    three = perm_from_cycles(3, [(0, 1, 2)])
    three_inv = perm_from_cycles(3, [(0, 2, 1)])
    assert graph_defect(three, three_inv, (0, 1, 2)) == 0
    assert graph_defect(three, three, (0, 1, 2)) == 1


def test_graph_defect_nonnegative_integral_random():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 6)
        p = tuple(rng.sample(range(n), n))
        t = tuple(rng.sample(range(n), n))
        for orbit in common_orbits(p, t):
            g = graph_defect(p, t, orbit)
            assert isinstance(g, int) and g >= 0


def test_to_sn_examples():
    # distinct labels on two fixed points: two conjugates, multiplicity 1
    terms, mult = to_sn(canonical_class((1, 1), (1, 2)), 2)
    assert mult == 1 and len(terms) == 2
    # equal labels: a single conjugate, multiplicity 2
    terms, mult = to_sn(canonical_class((1, 1), (1, 1)), 2)
    assert mult == 2 and len(terms) == 1
    with pytest.raises(ValueError):
        to_sn(canonical_class((3,), (0,)), 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_to_sn_single_cycle(n):
    terms, mult = to_sn(canonical_class((n,), (5,)), n)
    assert mult == n
    assert len(terms) == factorial(n) // n
    assert mult * len(terms) == factorial(n)


def test_to_sn_matches_brute_force():
    cases = [
        (canonical_class((2,), (0,)), 2),
        (canonical_class((2, 1), (7, 23)), 3),
        (canonical_class((1, 1, 1), (1, 1, 2)), 3),
        (canonical_class((2, 2), (0, 0)), 4),
        (canonical_class((2, 1, 1), (3, 0, 0)), 4),
        (canonical_class((3, 1, 1), (23, 4, 4)), 5),
    ]
    for sym, n in cases:
        terms, mult = to_sn(sym, n)
        base = model_term(*pad_class(sym, n))
        counts = oracles.naive_symmetrization(base, n, canonical_term)
        assert set(counts) == set(terms)
        assert all(c == mult for c in counts.values())
        assert mult == an_z(pad_class(sym, n))


def test_mult_sn_unit():
    unit = canonical_term([((i,), 0) for i in range(3)])
    other = canonical_term([((2, 0, 1), 7)])
    assert mult_sn(unit, other) == {other: 1}
    assert mult_sn(other, unit) == {other: 1}


def test_mult_sn_product_permutation_and_degree():
    # output terms always live on the product permutation; degree is additive
    def term_degree(term):
        return sum(2 * (len(c) - 1) + (0 if l == 0 else 4 if l == 23 else 2) for c, l in term)

    a = canonical_term([((1, 0), 3), ((2,), 0)])
    b = canonical_term([((2, 1), 0), ((0,), 4)])
    prod = mult_sn(a, b)
    assert prod
    for term, coeff in prod.items():
        assert term_degree(term) == term_degree(a) + term_degree(b)


def test_mult_sn_two_cycle_square():
    # the square of the labeled transposition lands on the identity with
    # comultiplied labels; pairing against the point classes gives -1 each
    t = canonical_term([((1, 0), 0)])
    prod = mult_sn(t, t)
    unit_x = canonical_term([((0,), 23), ((1,), 0)])
    x_unit = canonical_term([((0,), 0), ((1,), 23)])
    assert prod[unit_x] == -1
    assert prod[x_unit] == -1


def test_mult_an_unit_scaling():
    # the all-fixed-points creation symbol is n! times the ring unit
    for n in (2, 3, 4):
        unit_n = canonical_class((1,) * n, (0,) * n)
        rng = random.Random(n)
        for d in (2, 4):
            basis = hilb_base(n, d)
            for sym in rng.sample(basis, min(4, len(basis))):
                assert mult_an(unit_n, sym, n) == {sym: factorial(n)}
                assert mult_an(sym, unit_n, n) == {sym: factorial(n)}


def test_mult_an_matches_naive_oracle():
    cases = [
        (canonical_class((2,), (0,)), canonical_class((2,), (0,)), 2),
        (canonical_class((2,), (0,)), canonical_class((1,), (1,)), 2),
        (canonical_class((2,), (0,)), canonical_class((2,), (0,)), 3),
        (canonical_class((2,), (3,)), canonical_class((1, 1), (4, 0)), 3),
        (canonical_class((1, 1), (1, 2)), canonical_class((1,), (23,)), 3),
        (canonical_class((2, 1), (0, 0)), canonical_class((2, 1), (1, 0)), 3),
        (canonical_class((2, 2), (0, 0)), canonical_class((2, 1, 1), (1, 0, 0)), 4),
        (canonical_class((3, 1), (7, 0)), canonical_class((2, 1, 1), (0, 0, 0)), 4),
    ]
    for a, b, n in cases:
        pa, pb = pad_class(a, n), pad_class(b, n)
        assert mult_an(pa, pb, n) == oracles.naive_mult_an(a, b, n)


def test_mult_an_matches_naive_oracle_sampled_hilb2():
    # broad sweep at n=2: the shape-memoized product against the full
    # double-symmetrization for random basis pairs across all degrees
    rng = random.Random(97)
    pool = [s for d in range(0, 9, 2) for s in hilb_base(2, d)]
    for _ in range(120):
        a, b = rng.choice(pool), rng.choice(pool)
        assert mult_an(a, b, 2) == oracles.naive_mult_an(a, b, 2)


def test_mult_an_commutative_sampled():
    rng = random.Random(23)
    for n in (2, 3, 4):
        pool = [s for d in (2, 4) for s in hilb_base(n, d)]
        for _ in range(6):
            a, b = rng.choice(pool), rng.choice(pool)
            assert mult_an(a, b, n) == mult_an(b, a, n)


def test_mult_an_overweight_is_zero():
    heavy = canonical_class((3,), (0,))
    light = canonical_class((1,), (1,))
    assert mult_an(heavy, light, 2) == {}
