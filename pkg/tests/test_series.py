import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altcf.confrac import GCF, convergents, eval_finite
from altcf.constructors import kc_series
from altcf.series import (
    EngelSeries,
    TypeIISeries,
    TypeISeries,
    partial_sums,
    pierce_expand,
    pierce_value,
    scf_to_series,
    sharpness_identity,
    sierpinski_check,
    typeI_to_cf,
    typeII_monotone_check,
    typeII_to_cf,
)
from altcf.streams import LazySeq
from oracles import alt_sum_type1, alt_sum_type2, engel_sum, fold, pierce_greedy

FERMAT_B = [2 ** (2**n) - 1 for n in range(8)]


def test_partial_sums_fermat():
    sums = partial_sums(TypeISeries(FERMAT_B), 3)
    assert [ps.value for ps in sums] == [alt_sum_type1(FERMAT_B, n) for n in range(4)]
    assert sums[2].value == Fraction(11, 15)
    assert sums[3].value == Fraction(62, 85) == Fraction(186, 255)
    assert sums[3].tail == Fraction(1, 65535) and sums[3].strict


def test_partial_sums_finite_and_json():
    (ps,) = partial_sums(TypeIISeries([2]), 0)
    assert ps.value == Fraction(1, 2) and ps.tail == 0
    assert ps.to_json() == {"n": 0, "num": 1, "den": 2, "tail_num": 0, "tail_den": 1}


def test_partial_sums_kellogg_curtiss():
    sums = partial_sums(kc_series(1, 1), 3)
    assert [ps.value for ps in sums] == [1, Fraction(3, 2), Fraction(5, 3), Fraction(71, 42)]
    assert sums[2].tail == Fraction(1, 36) and sums[2].strict
    assert sums[3].tail == Fraction(1, 42**2)
    K = Fraction(16910302067, 10**10)
    assert sums[2].value < K < sums[2].value + sums[2].tail


def test_engel_geometric_bound():
    A = [2, 3, 3, 5, 7, 9]
    sums = partial_sums(EngelSeries(A), 3)
    for ps in sums:
        full = engel_sum(A, len(A) - 1)
        assert 0 <= full - ps.value <= ps.tail
        assert not ps.strict


def test_monotonicity_errors_name_index():
    with pytest.raises(ValueError, match="index 2"):
        partial_sums(TypeISeries([1, 3, 3]), 2)
    with pytest.raises(ValueError, match="A_1"):
        TypeIISeries([2, 1]).A(1)
    with pytest.raises(ValueError, match="index 1"):
        EngelSeries([3, 2]).A(1)


def test_typeI_to_cf_shapes():
    assert typeI_to_cf(TypeISeries(FERMAT_B[:4])).elements(4) == [(1, 1), (1, 2), (9, 12), (225, 240)]
    prim = [2, 6, 30, 210, 2310]
    assert typeI_to_cf(TypeISeries(prim)).elements(5) == [(1, 2), (4, 4), (36, 24), (900, 180), (210**2, 2100)]
    cf = typeI_to_cf(TypeISeries([1, 2]))
    assert cf.elements(2) == [(1, 1), (1, 1)]
    assert eval_finite(cf, 2) == Fraction(1, 2)


def test_typeII_to_cf_shapes():
    e = typeII_to_cf(TypeIISeries(LazySeq.from_function(lambda n: n + 2)))
    assert e.elements(4) == [(1, 2), (2, 2), (3, 3), (4, 4)]
    c = typeII_to_cf(TypeIISeries([1, 2, 3, 7, 43]))
    assert c.elements(5) == [(1, 1), (1, 1), (2, 2), (3, 6), (7, 42)]
    single = typeII_to_cf(TypeIISeries([7]))
    assert single.elements(1) == [(1, 7)] and eval_finite(single, 1) == Fraction(1, 7)


def test_typeII_to_cf_scaling_keeps_convergents():
    A = [1, 2, 3, 7, 43, 1807]
    s = TypeIISeries(A)
    plain = convergents(typeII_to_cf(s), 6)
    x = [1, Fraction(1, 2), Fraction(3, 5), 7, Fraction(2, 9), 4]
    assert convergents(typeII_to_cf(s, x), 6) == plain
    assert plain[1:] == [alt_sum_type2(A, n) for n in range(6)]
    with pytest.raises(ValueError):
        typeII_to_cf(s, [1, -1, 1, 1, 1, 1]).elements(3)


def test_sierpinski_examples():
    r = sierpinski_check(TypeISeries(FERMAT_B), 6)
    assert r.passed and "finite check to 6" in r.detail
    bad = sierpinski_check(TypeISeries([2, 5, 100]), 2)
    assert not bad.passed and bad.first_failure == 0
    B = [2]
    for _ in range(7):
        B.append(B[-1] * (B[-1] + 1) - 1)
    sharp = sierpinski_check(TypeISeries(B), 6)
    assert sharp.witnesses == list(range(6))
    assert all(B[n + 1] == B[n] * (B[n] + 1) - 1 for n in range(6))


def test_monotone_examples():
    e = typeII_monotone_check(TypeIISeries(LazySeq.from_function(lambda n: n + 2)), 20)
    assert e.passed
    const = typeII_monotone_check(TypeIISeries([3, 3, 3, 3]), 3)
    assert not const.passed
    assert const.witnesses == [{"closed_form": Fraction(1, 4)}]
    # the geometric sum really is 1/(A+1) in the limit: check the finite telescoped form
    assert alt_sum_type2([3] * 10, 9) == Fraction(1, 4) - Fraction(1, 4 * 3**10)
    assert typeII_monotone_check(TypeIISeries([1, 2]), 1).passed


def test_pierce_examples():
    pe = pierce_expand(Fraction(7, 10), 10)
    assert pe.A == (1, 3, 10) and pe.terminated
    assert pierce_value(pe.A) == Fraction(7, 10)
    for k in (1, 2, 9):
        assert pierce_expand(Fraction(1, k), 5).A == (k,)
    f = [0, 1]
    while len(f) < 33:
        f.append(f[-1] + f[-2])
    assert pierce_expand(Fraction(f[30], f[31]), 5).A == (1, 2, 4, 17, 19)
    with pytest.raises(ValueError):
        pierce_expand(Fraction(3, 2), 5)
    with pytest.raises(ValueError):
        pierce_expand(0, 5)


def test_scf_to_series_examples():
    a0, s = scf_to_series(LazySeq.from_function(lambda n: 0 if n == 0 else 1))
    assert a0 == 0 and s.prefix(5) == [1, 2, 6, 15, 40]
    a0, s = scf_to_series([0, 2, 1, 2])
    assert s.prefix(10) == [2, 6, 24]
    a0, s = scf_to_series([5])
    assert a0 == 5 and s.length(3) == 0
    _, bad = scf_to_series(GCF([(2, 1), (1, 1)]))
    with pytest.raises(ValueError, match="not simple"):
        bad.B(0)


def test_scf_to_series_partial_sums_are_convergents():
    q = [1, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8]
    a0, s = scf_to_series(q)
    conv = convergents(GCF.simple(q), 11)
    assert [a0 + ps.value for ps in partial_sums(s, 10)] == conv[1:]


@pytest.mark.parametrize("B0,N", [(2, 4), (1, 0), (3, 3)] + [(b, n) for b in (1, 2, 3) for n in range(6)])
def test_sharpness_identity(B0, N):
    r = sharpness_identity(B0, N)
    assert r.passed
    B = r.witnesses[0]["B"]
    assert alt_sum_type1(B, N) == Fraction(1, B0 + 1) + Fraction((-1) ** N, B[N + 1] + 1)


def test_sharpness_stream_and_trivial_case():
    assert sharpness_identity(2, 3).witnesses[0]["B"][:4] == [2, 5, 29, 869]
    w = sharpness_identity(1, 0).witnesses[0]
    assert w["lhs"] == 1 == Fraction(1, 2) + Fraction(1, 2)


# properties

increasing = st.lists(st.integers(1, 50), min_size=1, max_size=12).map(
    lambda gaps: [sum(gaps[: i + 1]) for i in range(len(gaps))])
pierce_like = st.lists(st.integers(2, 40), min_size=1, max_size=10).map(lambda a: [1] + a)


@settings(max_examples=200)
@given(increasing)
def test_typeI_equivalence(B):
    s = TypeISeries(B)
    conv = convergents(typeI_to_cf(s), len(B))
    assert conv[1:] == [alt_sum_type1(B, n) for n in range(len(B))]


@settings(max_examples=200)
@given(pierce_like, st.lists(st.fractions(min_value=Fraction(1, 20), max_value=20), min_size=12, max_size=12))
def test_typeII_equivalence_any_scaling(A, x):
    s = TypeIISeries(A)
    n = len(A)
    oracle = [alt_sum_type2(A, i) for i in range(n)]
    assert convergents(typeII_to_cf(s), n)[1:] == oracle
    assert convergents(typeII_to_cf(s, x), n)[1:] == oracle
    assert fold(typeII_to_cf(s).elements(n)) == oracle[-1]


@settings(max_examples=200)
@given(pierce_like)
def test_alternating_partial_sums_bracket(A):
    s = TypeIISeries(A)
    sums = partial_sums(s, len(A) - 1)
    for i in range(len(sums) - 1):
        assert abs(sums[i + 1].value - sums[i].value) == s.term(i + 1)
        for j in range(i + 1, len(sums)):
            assert abs(sums[j].value - sums[i].value) <= sums[i].tail


@settings(max_examples=1000)
@given(st.integers(1, 10**4).flatmap(lambda q: st.tuples(st.integers(1, q), st.just(q))))
def test_pierce_round_trip(pq):
    p, q = pq
    r = Fraction(p, q)
    pe = pierce_expand(r, 10**4)
    assert pe.terminated
    assert all(x < y for x, y in zip(pe.A, pe.A[1:]))
    assert pierce_value(pe.A) == r
    assert list(pe.A) == pierce_greedy(p, q)[0]
    assert pierce_expand(pierce_value(pe.A), 10**4).A == pe.A
    assert pe.series.is_pierce(len(pe.A))


def test_value_of_series_objects():
    s = TypeIISeries([2, 3, 4])
    assert s.product(2) == 24 and s.denominator(1) == 6
    assert s.as_type_i().prefix(3) == [2, 6, 24]
    assert s.signed_term(1) == Fraction(-1, 6)
    assert math.prod(s.prefix(3)) == 24
