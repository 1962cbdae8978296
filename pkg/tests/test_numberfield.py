import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat.numberfield import (
    conj,
    cyclotomic_poly,
    elem_mul,
    euler_phi,
    factorize,
    field_new,
    field_norm,
    mul_int,
    norm_int,
    ramanujan_sum,
    trace,
    trace_pairing,
)

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16]


def embeddings(k):
    return [cmath.exp(2j * math.pi * a / k) for a in range(1, k + 1) if math.gcd(a, k) == 1]


def evaluate(coeffs, z):
    return sum(float(c) * z**i for i, c in enumerate(coeffs))


def disc_formula(k):
    """|disc Q(zeta_k)| = k^phi / prod_{p | k} p^{phi/(p-1)}."""
    phi = euler_phi(k)
    num = k**phi
    den = 1
    for p in factorize(k):
        den *= p ** (phi // (p - 1))
    return num // den


@pytest.mark.parametrize("k", CONDUCTORS)
def test_degree_and_discriminant(k):
    K = field_new(k)
    assert K.d == euler_phi(k) == len(cyclotomic_poly(k)) - 1
    assert K.abs_disc == disc_formula(k)


@pytest.mark.parametrize("k", CONDUCTORS)
def test_trace_gram_matches_embeddings(k):
    K = field_new(k)
    embs = embeddings(k)
    for i in range(K.d):
        for j in range(K.d):
            val = sum(z**i * (z**j).conjugate() for z in embs)
            assert abs(val - K.trace_gram[i][j]) < 1e-9
            assert K.trace_gram[i][j] == ramanujan_sum(k, i - j)


@pytest.mark.parametrize("k", CONDUCTORS)
def test_minimal_polynomial_vanishes(k):
    for z in embeddings(k):
        assert abs(sum(c * z**i for i, c in enumerate(cyclotomic_poly(k)))) < 1e-9


def test_small_identities():
    K = field_new(8)
    z = K.zeta_pow(1)
    assert elem_mul(K, z, K.zeta_pow(3)).coeffs == tuple(Fraction(c) for c in (-1, 0, 0, 0))
    assert conj(K, z) == K.zeta_pow(-1)
    G = field_new(4)
    assert norm_int(G, (1, 1)) == 2
    assert trace(G, G.one()) == 2


coeff = st.integers(min_value=-6, max_value=6)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 8, 12]), st.data())
def test_multiplication_against_complex_embedding(k, data):
    K = field_new(k)
    a = data.draw(st.lists(coeff, min_size=K.d, max_size=K.d))
    b = data.draw(st.lists(coeff, min_size=K.d, max_size=K.d))
    ab = mul_int(K, a, b)
    for z in embeddings(k):
        assert abs(evaluate(ab, z) - evaluate(a, z) * evaluate(b, z)) < 1e-7
    vals = [evaluate(a, z) for z in embeddings(k)]
    expected_norm = 1
    for v in vals:
        expected_norm *= v
    assert abs(norm_int(K, a) - expected_norm.real) < 1e-6 * max(1, abs(expected_norm))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 5, 8]), st.data())
def test_trace_pairing_is_hermitian_trace(k, data):
    K = field_new(k)
    a = K.element(data.draw(st.lists(coeff, min_size=K.d, max_size=K.d)))
    b = K.element(data.draw(st.lists(coeff, min_size=K.d, max_size=K.d)))
    lhs = trace_pairing(K, a, b)
    assert lhs == trace(K, elem_mul(K, a, conj(K, b)))
    num = sum(evaluate(a.coeffs, z) * evaluate(b.coeffs, z).conjugate() for z in embeddings(k))
    assert abs(float(lhs) - num.real) < 1e-7
    assert field_norm(K, elem_mul(K, a, b)) == field_norm(K, a) * field_norm(K, b)


def test_discriminant_formula_all_conductors():
    from modlat.exact import det_int

    for k in range(1, 61):
        K = field_new(k)
        assert det_int(K.trace_gram) == K.abs_disc == disc_formula(k)


def test_random_invariants():
    import numpy as np

    rng = np.random.default_rng(0)
    for trial in range(1000):
        K = field_new([1, 4, 8, 12][trial % 4])
        a = [int(x) for x in rng.integers(-5, 6, K.d)]
        if not any(a):
            continue
        ea = K.element(a)
        assert trace_pairing(K, ea, ea) >= 1
        assert conj(K, conj(K, ea)) == ea
        if trial < 500:
            b = [int(x) for x in rng.integers(-5, 6, K.d)]
            assert norm_int(K, mul_int(K, a, b)) == norm_int(K, a) * norm_int(K, b)


def test_reference_examples():
    G = field_new(4)
    i = G.zeta_pow(1)
    assert trace_pairing(G, i, i) == 2 and trace_pairing(G, G.one(), i) == 0
    assert field_norm(field_new(8), field_new(8).zeta_pow(1)) == 1
    assert conj(field_new(8), field_new(8).zeta_pow(1)) == field_new(8).element([0, 0, 0, -1])


@pytest.mark.parametrize("k", CONDUCTORS)
def test_normalized_ok_has_unit_covolume(k):
    from modlat.zlattice import Scale

    K = field_new(k)
    c = Scale.module(K.abs_disc, K.d)
    assert c.rational_power(K.d) * K.abs_disc == 1
