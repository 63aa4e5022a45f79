import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghostdim.algebra import preset, regular_module, simple_module
from ghostdim.errors import InconclusiveError, InputError
from ghostdim.exactla import Field
from ghostdim.growth import (GradedMapData, LengthSequence, cx_estimate, dim_from_lengths, eventually_zero,
                             filter_regular_test, find_filter_regular, koszul_length_prediction,
                             random_polynomial_sequence)
from ghostdim.resolution import element_from_class, ext, ext_dims, resolve, yoneda_act

F2 = Field(2)


def seq(vals, start=0):
    return LengthSequence(tuple(vals), start)


def ones_action(n, lengths, degree=1, value=1):
    return GradedMapData(degree, {i: F2.array([[value]]) for i in range(n)}, lengths, F2)


@pytest.mark.parametrize("vals,expected", [
    ([1] * 12, "finite(1)"),
    ([n + 1 for n in range(12)], "finite(2)"),
    ([2 ** n for n in range(12)], "exponential"),
    ([4, 3, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0], "finite(0)"),
    ([0] * 12, "finite(0)"),
    ([1, 2] * 8, "finite(1)"),
    ([n // 2 + 1 for n in range(16)], "finite(2)"),
])
def test_cx_examples(vals, expected):
    assert str(cx_estimate(seq(vals))) == expected


def test_short_window_rejected():
    with pytest.raises(InputError):
        cx_estimate(seq([1, 2, 3]))


def test_negative_length_rejected():
    with pytest.raises(InputError):
        seq([1, -1, 2])


def test_dim_from_lengths_examples():
    E = preset("exterior", 3, 2)
    betti = resolve(simple_module(E, 0), 12).betti()[:13]
    assert dim_from_lengths(seq(betti)) == 3
    A = preset("nilpotent_loop", 2)
    k = simple_module(A, 0)
    assert dim_from_lengths(seq(ext_dims(k, k, 12))) == 1
    assert dim_from_lengths(seq([0] * 10)) == 0
    with pytest.raises(InconclusiveError):
        dim_from_lengths(seq([2 ** n for n in range(12)]))


def test_eventually_zero_examples():
    assert eventually_zero(seq([3, 1, 0, 0, 0, 0]), 4)
    assert not eventually_zero(seq([1] * 6), 4)
    A = preset("nilpotent_loop", 3)
    assert eventually_zero(seq(ext_dims(regular_module(A), simple_module(A, 0), 8)), 4)
    with pytest.raises(InputError):
        eventually_zero(seq([1, 2]), 3)


def test_filter_regular_examples():
    A = preset("nilpotent_loop", 2)
    k = simple_module(A, 0)
    g = ext(k, k, 12)
    xi = element_from_class(g, 1, [1], depth=10)
    lengths = seq(g.dims[:12])
    data = GradedMapData(1, yoneda_act(xi, g, 10), lengths, A.field, "xi")
    assert filter_regular_test(data, 2)
    zero = GradedMapData(1, {n: A.field.zeros((1, 1)) for n in range(11)}, lengths, A.field, "0")
    assert not filter_regular_test(zero, 2)
    # anything is filter-regular on an eventually-zero module
    tail_zero = seq([1, 1, 0, 0, 0, 0])
    m = {0: F2.zeros((1, 1)), 1: F2.zeros((0, 1)), 2: F2.zeros((0, 0)), 3: F2.zeros((0, 0))}
    assert filter_regular_test(GradedMapData(1, m, tail_zero, F2), 2)
    assert find_filter_regular([data], 2).index == 0
    assert find_filter_regular([zero, data], 2).index == 1


def test_find_filter_regular_combination_over_exterior():
    A = preset("exterior", 2, 2)
    F = A.field
    k = simple_module(A, 0)
    g = ext(k, k, 12)
    lengths = seq(g.dims[:13])
    cands = []
    for i in range(3):
        e = element_from_class(g, 2, [int(j == i) for j in range(3)], depth=10, label=f"c{i}")
        cands.append(GradedMapData(2, yoneda_act(e, g, 10), lengths, F, f"c{i}"))
    choice = find_filter_regular(cands, 1, seed=3)
    assert filter_regular_test(choice.data, 1)
    assert all(choice.data.kernel_dim(n) == 0 for n in range(1, 11))


def test_find_filter_regular_budget_exhausted():
    lengths = seq([1] * 10)
    zero = GradedMapData(1, {n: F2.zeros((1, 1)) for n in range(9)}, lengths, F2, "0")
    with pytest.raises(InconclusiveError, match="kernel_dims"):
        find_filter_regular([zero, zero], 2, budget=4)


def test_prediction_with_zero_action():
    M = seq([1, 2, 3, 4, 5, 6])
    r = GradedMapData(2, {n: F2.zeros((M[n + 2], M[n])) for n in range(4)}, M, F2)
    pred = koszul_length_prediction(M, r)
    assert pred[3:] == [M[n - 1] + M[n - 2] for n in range(3, 6)]


def test_prediction_with_invertible_action():
    M = seq([1] * 8)
    r = ones_action(7, M)
    # M^0 survives in the cokernel, everything above is killed
    assert koszul_length_prediction(M, r)[1:7] == [1, 0, 0, 0, 0, 0]


def test_prediction_marks_unknown_degrees():
    M = seq([1] * 6)
    r = ones_action(2, M, degree=2)
    assert None in koszul_length_prediction(M, r)


def test_json_round_trip():
    s = LengthSequence((1, 2, 3), 4, {"source": "x"})
    assert LengthSequence.from_json(s.to_json()) == s
    assert LengthSequence.from_json('{"values": [1, 2, 3], "start": 4}') == s
    with pytest.raises(InputError):
        LengthSequence.from_json({"start": 1})


polys = st.builds(lambda seed, t: random_polynomial_sequence(np.random.default_rng(seed), t, 16),
                  st.integers(0, 10 ** 6), st.integers(0, 4))


@settings(max_examples=200)
@given(polys, st.integers(1, 1000))
def test_scale_invariance(s, c):
    assert cx_estimate(s.scaled(c)).d == cx_estimate(s).d


@settings(max_examples=200)
@given(polys, polys)
def test_max_additivity(a, b):
    assert cx_estimate(a + b).d == max(cx_estimate(a).d, cx_estimate(b).d)


@given(st.integers(0, 10 ** 6), st.integers(0, 4))
def test_polynomial_degree(seed, t):
    est = cx_estimate(random_polynomial_sequence(np.random.default_rng(seed), t, 16))
    assert est.is_finite and est.d == t + 1


@given(st.lists(st.integers(0, 50), min_size=8, max_size=20), st.dictionaries(st.text(max_size=5),
                                                                              st.text(max_size=5)))
def test_provenance_never_matters(vals, prov):
    a, b = LengthSequence(tuple(vals), 0, prov), LengthSequence(tuple(vals), 0)
    assert cx_estimate(a) == cx_estimate(b)
