import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altcf.confrac import GCF, convergents, equivalence_transform
from altcf.constructors import (
    build_from_M,
    cahen_bound_check,
    cahen_scf,
    cahen_scf_closed_form,
    cahen_series,
    decompose_to_M,
    kc_series,
    mn_steps,
    primes,
    sylvester,
    sylvester_stream,
)
from altcf.series import partial_sums, typeII_to_cf
from altcf.streams import DigitCapExceeded, LazySeq
from oracles import alt_sum_type2, engel_sum, euclid, sylvester_direct

A007704 = [1, 2, 3, 4, 9, 28, 225, 6076, 1361025]
D_SCF = [0, 1, 1, 1, 2, 3, 8, 27, 224, 6075, 1361024]


def test_build_from_constant_M():
    c = build_from_M(itertools.repeat(1), 10)
    assert list(c.A[:9]) == A007704
    assert list(c.scf) == D_SCF
    assert c.N[:5] == (1, 1, 2, 3, 8)


def test_build_single_step():
    c = build_from_M([5], 1)
    assert c.A == (5,) and c.scf == (0, 5)
    assert convergents(GCF.simple(list(c.scf)), 1)[1] == Fraction(1, 5)


def test_build_rejects_bad_M():
    with pytest.raises(ValueError, match="M_1"):
        build_from_M([1, 0, 1], 3)


def test_scaling_turns_type_II_into_the_scf():
    c = build_from_M([2, 3, 1, 4, 2, 1], 6)
    scaled = equivalence_transform(typeII_to_cf(c.series()), c.scaling())
    assert scaled.is_simple(6)
    assert [a for _, a in scaled.elements(6)] == list(c.scf[1:])


def test_decompose_examples():
    d = decompose_to_M(A007704, 9)
    assert d.ok and d.M == [1] * 9
    lam = [10**2, 10**4, 10**18, 10**96]
    d = decompose_to_M(lam, 4)
    assert d.failed_at == 1 and "9999" in d.reason
    d = decompose_to_M(LazySeq.from_function(lambda n: n + 2), 10)
    assert d.failed_at == 3 and d.M == [2, 1, 1] and d.N[3] == 8
    assert "N_4 = 8" in d.reason and "A_3 - 1 = 4" in d.reason


def test_decompose_is_lazy_past_failure():
    def A():
        yield 100
        yield 10**4
        raise AssertionError("read past the failing digit")

    assert decompose_to_M(LazySeq(A), 50).failed_at == 1


@settings(max_examples=100)
@given(st.lists(st.integers(1, 10), min_size=1, max_size=8))
def test_decompose_round_trip(M):
    c = build_from_M(M, len(M))
    d = decompose_to_M(list(c.A), len(M))
    assert d.ok and d.M == M
    assert d.N == list(c.N)


@settings(max_examples=100)
@given(st.lists(st.integers(1, 10), min_size=2, max_size=8))
def test_construction_invariants(M):
    c = build_from_M(M, len(M))
    N, A = c.N, c.A
    assert N[0] == 1 and N[1] == M[0]
    # N[i] holds N_{i+1}
    for n in range(1, len(M)):
        assert N[n + 1] == (M[n] * N[n] + 1) * N[n - 1]
        assert A[n] == M[n] * N[n] + 1
        if n >= 2:
            assert A[n] == M[n] * A[n - 1] * N[n - 2] + 1
        assert A[n] > A[n - 1]
    # the simple fraction has the series' partial sums as convergents
    conv = convergents(GCF.simple(list(c.scf)), len(M))
    assert conv[1:] == [alt_sum_type2(list(A), n) for n in range(len(M))]
    # the scf is the Euclid expansion of the last partial sum (a trailing 1 merges)
    q = list(c.scf)
    canonical = q[:-2] + [q[-2] + 1] if q[-1] == 1 and len(q) > 2 else q
    assert euclid(conv[-1]) == canonical


@settings(max_examples=50)
@given(st.lists(st.integers(1, 6), min_size=3, max_size=6), st.lists(st.integers(1, 6), min_size=3, max_size=6))
def test_distinct_M_give_distinct_scf(M1, M2):
    n = min(len(M1), len(M2))
    if M1[:n] != M2[:n]:
        assert build_from_M(M1, n).scf != build_from_M(M2, n).scf


def test_mn_steps_fields():
    steps = mn_steps(itertools.repeat(1)).take(4)
    assert [s.A for s in steps] == [1, 2, 3, 4]
    assert [s.quotient for s in steps] == [1, 1, 1, 2]
    assert all(steps[i].N_after == steps[i + 1].N_next for i in range(3))


def test_sylvester_sequences():
    assert sylvester(1, 1, 7).s[1:] == (2, 3, 7, 43, 1807, 3263443, 10650056950807)
    assert sylvester(1, 2, 5).s[1:] == (2, 5, 101, 1020101, 1061522231810040101)
    for k, ell in ((1, 1), (2, 1), (3, 2), (5, 1)):
        fam = sylvester(k, ell, 5)
        assert fam.s[0] == k
        assert list(fam.s) == sylvester_direct(k, ell, 6)
        assert fam.check().passed
    S = sylvester(1, 1, 7).s[1:]
    assert all(S[n + 1] == (S[n] - 1) * S[n] + 1 for n in range(len(S) - 1))


def test_sylvester_digit_cap(monkeypatch):
    monkeypatch.setenv("ALTCF_DIGIT_CAP", "50")
    with pytest.raises(DigitCapExceeded):
        sylvester(1, 1, 12)
    with pytest.raises(ValueError):
        sylvester_stream(0, 1)


def test_sylvester_check_detects_shared_factor():
    from altcf.constructors import SylvesterFamily
    bad = SylvesterFamily(1, 1, (1, 2, 3, 6))
    assert not bad.check().passed


def test_cahen_scf_examples():
    assert cahen_scf(1, 1, 9) == [0, 1, 1, 1, 2**2, 3**2, 14**2, 129**2, 25298**2, 420984147**2]
    assert cahen_scf(1, 2, 6) == [0, 1, 3, 6, 1632, 637563750, 1767398865801083661443214432]
    assert cahen_scf(2, 1, 8) == [0, 2, 1, 2**2, 3**2, 14**2, 129**2, 25298**2, 420984147**2]
    assert cahen_scf_closed_form(1, 5) == [0, 1, 1, 1, 4, 9]


@pytest.mark.parametrize("k,ell", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)])
def test_cahen_scf_agrees_with_euclid_on_partial_sums(k, ell):
    s = sylvester_direct(k, ell, 8)
    A = [v**ell for v in s]
    depth = 5
    quotients = cahen_scf(k, ell, depth)
    # a deep partial sum shares its leading quotients with the constant
    r = alt_sum_type2(A, 6)
    assert euclid(r)[: depth + 1] == quotients


def test_cahen_series_terms():
    s = cahen_series(1, 1)
    assert [s.term(n) for n in range(5)] == [1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 42), Fraction(1, 1806)]
    s = cahen_series(1, 2)
    assert [s.term(n) for n in range(4)] == [1, Fraction(1, 4), Fraction(1, 100), Fraction(1, 1020100)]
    for k, ell in ((2, 1), (3, 2)):
        assert cahen_series(k, ell).term(0) == Fraction(1, k**ell)


def test_kc_series():
    s = kc_series(1, 1)
    sums = partial_sums(s, 3)
    assert [s.product(n) for n in range(4)] == [1, 2, 6, 42]
    assert [ps.value for ps in sums] == [engel_sum([1, 2, 3, 7], n) for n in range(4)]
    assert sums[3].tail == Fraction(1, 42**2)
    for k, ell in ((2, 1), (3, 2)):
        assert partial_sums(kc_series(k, ell), 0)[0].value == Fraction(1, k**ell)
    # K = 1 + K_{2,1} at matching truncations
    k1 = partial_sums(kc_series(1, 1), 5)
    k2 = partial_sums(kc_series(2, 1), 4)
    assert all(k1[n + 1].value == 1 + k2[n].value for n in range(5))


def test_kc_tail_bound_is_true():
    s = kc_series(2, 1)
    sums = partial_sums(s, 5)
    deep = sums[5].value
    for ps in sums[:4]:
        assert 0 < deep - ps.value < ps.tail


@pytest.mark.parametrize("k,ell,depth", [(1, 1, 8), (1, 2, 6), (2, 1, 4), (1, 1, 11), (2, 1, 10)])
def test_cahen_bound(k, ell, depth):
    r = cahen_bound_check(k, ell, depth)
    assert r.passed
    a = cahen_scf(k, ell, depth)
    for n in range(4, depth + 1):
        assert a[n] > (k**ell + 1) ** ((ell + 1) ** (n - 4))


def test_cahen_bound_requires_depth():
    with pytest.raises(ValueError):
        cahen_bound_check(1, 1, 3)


def test_cahen_bound_example_index():
    # for (2,1) the quotient at index 4 is 9 (the list is 0, 2, 1, 4, 9, ...)
    assert cahen_scf(2, 1, 4)[4] == 9 > 3


def test_primes():
    assert list(itertools.islice(primes(), 10)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    ps = list(itertools.islice(primes(), 200))
    assert all(all(p % d for d in range(2, math.isqrt(p) + 1)) for p in ps)
