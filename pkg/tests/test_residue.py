import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat.errors import CapExceeded, NotPrime, RamifiedPrime
from modlat.numberfield import field_new, mul_int
from modlat.residue import (
    ResidueField,
    Subspace,
    enumerate_subspaces,
    grassmannian_count,
    is_irreducible,
    multiplicative_order,
    random_subspace,
    rank_fq,
    reduce_int,
    split_prime,
)


def gaussian_binomial(q, t, s):
    num = den = 1
    for i in range(s):
        num *= q ** (t - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("k,p", [(4, 5), (4, 7), (8, 17), (8, 3), (12, 7), (12, 13), (5, 11), (5, 2), (7, 2), (1, 3)])
def test_split_prime_shape(k, p):
    K = field_new(k)
    ideals = split_prime(K, p)
    f = multiplicative_order(p, k) if k > 2 else 1
    assert all(P.f == f and P.normQ == p**f for P in ideals)
    assert len(ideals) * f == K.d
    assert all(is_irreducible(P.g, p) for P in ideals)
    assert [P.index for P in ideals] == list(range(len(ideals)))


@pytest.mark.parametrize("k,p", [(4, 5), (8, 17), (12, 7), (5, 11)])
def test_reduction_is_ring_homomorphism(k, p):
    K = field_new(k)
    rng = np.random.default_rng(k * p)
    for P in split_prime(K, p):
        F = P.residue_field
        for _ in range(20):
            a = [int(x) for x in rng.integers(-9, 10, K.d)]
            b = [int(x) for x in rng.integers(-9, 10, K.d)]
            assert F.mul(reduce_int(P, a), reduce_int(P, b)) == reduce_int(P, mul_int(K, a, b))
            s = [x + y for x, y in zip(a, b)]
            assert F.add(reduce_int(P, a), reduce_int(P, b)) == reduce_int(P, s)
        assert reduce_int(P, [p] + [0] * (K.d - 1)) == F.zero()


def test_split_prime_errors():
    with pytest.raises(RamifiedPrime):
        split_prime(field_new(4), 2)
    with pytest.raises(NotPrime):
        split_prime(field_new(4), 15)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_residue_field_axioms(q):
    F = ResidueField.of_order(q)
    elems = list(F.elements())
    assert len(elems) == q == len(set(elems))
    for a in elems:
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one()
            assert F.pow(a, q - 1) == F.one()
    assert [F.index(F.from_index(i)) for i in range(q)] == list(range(q))


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_enumeration_matches_gaussian_binomial(q, t):
    for s in range(0, t + 1):
        subs = list(enumerate_subspaces(q, t, s))
        assert len(subs) == grassmannian_count(q, t, s) == gaussian_binomial(q, t, s)
        assert len({S.basis for S in subs}) == len(subs)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_subspaces(7, 4, 2, cap=10))


def test_subspace_membership_brute():
    F = ResidueField.of_order(3)
    S = Subspace.span(F, [[F.from_index(1), F.from_index(2), F.from_index(0)]])
    members = [v for v in itertools.product(F.elements(), repeat=3) if S.contains(v)]
    assert len(members) == 3


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 9]), st.integers(1, 4), st.data(), st.integers(0, 2**32))
def test_random_subspace_is_valid(q, t, data, seed):
    s = data.draw(st.integers(0, t))
    S = random_subspace(q, t, s, np.random.default_rng(seed))
    F = ResidueField.of_order(q)
    assert len(S.basis) == s and rank_fq(F, S.basis) == s
    assert S == Subspace.span(F, S.basis, t=t)


def test_random_subspace_roughly_uniform():
    rng = np.random.default_rng(7)
    counts = {}
    n = 3000
    for _ in range(n):
        lab = random_subspace(3, 2, 1, rng).label()
        counts[lab] = counts.get(lab, 0) + 1
    assert len(counts) == 4
    assert all(abs(c - n / 4) < 5 * (n * 3 / 16) ** 0.5 for c in counts.values())


@pytest.mark.parametrize("k,p", [(4, 5), (8, 3), (12, 7), (5, 2), (7, 2), (9, 2), (15, 2), (16, 3)])
def test_factor_divides_cyclotomic_and_frobenius(k, p):
    from modlat.numberfield import cyclotomic_poly
    from modlat.residue import poly_divmod

    for P in split_prime(field_new(k), p):
        _, rem = poly_divmod(list(cyclotomic_poly(k)), list(P.g), p)
        assert not any(rem)
        F = P.residue_field
        z = P.zeta_image()
        orbit = [z]
        for _ in range(P.f):
            orbit.append(F.pow(orbit[-1], p))
        assert orbit[P.f] == z and all(o != z for o in orbit[1 : P.f])
